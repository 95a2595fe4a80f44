//! Integer sequence families, their generation and classification.

mod floor;

use serde::{Deserialize, Serialize};

use crate::poly::IntPoly;
use crate::rudinshapiro;
use crate::{Error, Result};
use floor::{FloorEvaluator, Formula};

/// Most values skipped while forcing strict increase before giving up.
const MAX_SKIPPED: u64 = 10_000_000;

/// Largest scan needed to find where a polynomial becomes increasing.
const MAX_POLY_SCAN: f64 = 1e7;

/// A sequence family with its parameters.
///
/// Serializes as `{"family": "<name>", "params": {...}}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", content = "params", rename_all = "snake_case")]
pub enum SequenceSpec {
    /// `a_n = n`.
    Kronecker {},
    /// `a_n = f(n + n0 - 1)` where `n0` is the first index from which `f` is
    /// nonnegative and strictly increasing. Coefficients lowest degree first.
    Polynomial { coefficients: Vec<i64> },
    /// `a_n = floor(n^c)`, `c > 1`.
    FloorPower { c: f64 },
    /// `a_n = floor(exp(gamma * ln(n)^beta))`, `gamma > 0`, `1 < beta <= 2`.
    /// Repeated values for small `n` are skipped.
    QuasiExponential { gamma: f64, beta: f64 },
    /// Indices `k >= 0` with Rudin-Shapiro sign `+1`.
    RudinShapiro {},
    /// Indices `k >= 0` with an even number of one bits (evil numbers).
    ThueMorse {},
    /// `a_n = floor(ratio^n)`, `ratio > 1`, repeated values skipped.
    Lacunary { ratio: f64 },
    /// A fixed strictly increasing list.
    ExplicitList { terms: Vec<u64> },
}

impl SequenceSpec {
    pub fn family_name(&self) -> &'static str {
        match self {
            SequenceSpec::Kronecker {} => "kronecker",
            SequenceSpec::Polynomial { .. } => "polynomial",
            SequenceSpec::FloorPower { .. } => "floor_power",
            SequenceSpec::QuasiExponential { .. } => "quasi_exponential",
            SequenceSpec::RudinShapiro {} => "rudin_shapiro",
            SequenceSpec::ThueMorse {} => "thue_morse",
            SequenceSpec::Lacunary { .. } => "lacunary",
            SequenceSpec::ExplicitList { .. } => "explicit_list",
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        match self {
            SequenceSpec::Polynomial { coefficients } => {
                let p = IntPoly::from_i64(coefficients);
                if p.degree().unwrap_or(0) < 1 || p.leading() <= 0 {
                    return bad("polynomial needs degree >= 1 and a positive leading coefficient".into());
                }
            }
            SequenceSpec::FloorPower { c } if !(c.is_finite() && *c > 1.0) => {
                return bad(format!("floor_power needs c > 1, got {c}"));
            }
            SequenceSpec::QuasiExponential { gamma, beta } => {
                if !(gamma.is_finite() && *gamma > 0.0) {
                    return bad(format!("quasi_exponential needs gamma > 0, got {gamma}"));
                }
                if !(*beta > 1.0 && *beta <= 2.0) {
                    return bad(format!("quasi_exponential needs 1 < beta <= 2, got {beta}"));
                }
            }
            SequenceSpec::Lacunary { ratio } if !(ratio.is_finite() && *ratio > 1.0) => {
                return bad(format!("lacunary needs ratio > 1, got {ratio}"));
            }
            SequenceSpec::ExplicitList { terms } => {
                if let Some(i) = terms.windows(2).position(|w| w[0] >= w[1]) {
                    return Err(Error::NotStrictlyIncreasing { index: i + 1 });
                }
            }
            _ => {}
        }
        Ok(())
    }
}

/// A generated prefix `a_1, ..., a_N` of a sequence family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntegerSequence {
    pub spec: SequenceSpec,
    pub terms: Vec<u64>,
    /// Argument at which the underlying formula was first evaluated
    /// (the polynomial offset `n0`; 1 for other formula families).
    pub first_index: u64,
    /// Formula values dropped because they did not exceed their predecessor.
    pub skipped: u64,
}

impl IntegerSequence {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn prefix(&self, n: usize) -> Result<&[u64]> {
        self.terms.get(..n).ok_or(Error::CheckpointOutOfRange {
            checkpoint: n,
            len: self.terms.len(),
        })
    }
}

/// Generates the first `count` terms of `spec`.
pub fn generate(spec: &SequenceSpec, count: usize) -> Result<IntegerSequence> {
    if count == 0 {
        return Err(Error::InvalidParameter("count must be at least 1".into()));
    }
    spec.validate()?;
    let family = spec.family_name();
    let mut first_index = 1;
    let mut skipped = 0;

    let terms = match spec {
        SequenceSpec::Kronecker {} => (1..=count as u64).collect(),
        SequenceSpec::Polynomial { coefficients } => {
            let p = IntPoly::from_i64(coefficients);
            first_index = increasing_from(&p)?;
            (0..count as u64)
                .map(|i| {
                    let n = first_index + i;
                    p.eval(i128::from(n))
                        .and_then(|v| u64::try_from(v).ok())
                        .ok_or(Error::Overflow { family, index: i + 1 })
                })
                .collect::<Result<Vec<_>>>()?
        }
        SequenceSpec::FloorPower { c } if c.fract() == 0.0 && *c <= 64.0 => {
            let exp = *c as u32;
            (1..=count as u64)
                .map(|n| n.checked_pow(exp).ok_or(Error::Overflow { family, index: n }))
                .collect::<Result<Vec<_>>>()?
        }
        SequenceSpec::FloorPower { c } => {
            floor_terms(Formula::Power { c: *c }, count, family, &mut skipped)?
        }
        SequenceSpec::QuasiExponential { gamma, beta } => floor_terms(
            Formula::QuasiExponential { gamma: *gamma, beta: *beta },
            count,
            family,
            &mut skipped,
        )?,
        SequenceSpec::Lacunary { ratio } => {
            floor_terms(Formula::Geometric { ratio: *ratio }, count, family, &mut skipped)?
        }
        SequenceSpec::RudinShapiro {} => rudinshapiro::rs_integers(count),
        SequenceSpec::ThueMorse {} => (0u64..)
            .filter(|k| k.count_ones() % 2 == 0)
            .take(count)
            .collect(),
        SequenceSpec::ExplicitList { terms } => {
            if terms.len() < count {
                return Err(Error::TooFewTerms { needed: count, got: terms.len() });
            }
            terms[..count].to_vec()
        }
    };

    debug_assert!(terms.windows(2).all(|w| w[0] < w[1]));
    Ok(IntegerSequence {
        spec: spec.clone(),
        terms,
        first_index,
        skipped,
    })
}

fn floor_terms(
    formula: Formula,
    count: usize,
    family: &'static str,
    skipped: &mut u64,
) -> Result<Vec<u64>> {
    let mut ev = FloorEvaluator::new()?;
    let mut terms: Vec<u64> = Vec::with_capacity(count);
    let mut n = 1u64;
    while terms.len() < count {
        let v = ev
            .floor(formula, n)?
            .ok_or(Error::Overflow { family, index: terms.len() as u64 + 1 })?;
        if terms.last().is_none_or(|&last| v > last) {
            terms.push(v);
        } else {
            *skipped += 1;
            if *skipped > MAX_SKIPPED {
                return Err(Error::InvalidParameter(format!(
                    "{family} did not increase within {MAX_SKIPPED} evaluations"
                )));
            }
        }
        n += 1;
    }
    Ok(terms)
}

/// Smallest `n0 >= 1` with `p(n) >= 0` and `p(n + 1) > p(n)` for all `n >= n0`.
fn increasing_from(p: &IntPoly) -> Result<u64> {
    let diff = p.forward_difference()?;
    let bound = p.root_bound().max(diff.root_bound()).ceil();
    if bound > MAX_POLY_SCAN {
        return Err(Error::InvalidParameter(
            "polynomial coefficients too large to locate its increasing range".into(),
        ));
    }
    let good = |n: i128| p.eval(n).is_some_and(|v| v >= 0) && diff.eval(n).is_some_and(|v| v > 0);
    let mut n0 = bound as i128 + 1;
    while n0 > 1 && good(n0 - 1) {
        n0 -= 1;
    }
    Ok(n0 as u64)
}

/// True iff successive gaps are strictly increasing.
pub fn is_convex(terms: &[u64]) -> Result<bool> {
    if terms.len() < 3 {
        return Err(Error::TooFewTerms { needed: 3, got: terms.len() });
    }
    Ok(terms.windows(3).all(|w| {
        let (a, b, c) = (i128::from(w[0]), i128::from(w[1]), i128::from(w[2]));
        c - b > b - a
    }))
}

/// Diagnostic growth constant `max_{n >= 2} ln(a_n) / ln(n)^2` (terms 1-indexed;
/// zero terms skipped).
pub fn growth_gamma(terms: &[u64]) -> Result<f64> {
    if terms.len() < 2 {
        return Err(Error::TooFewTerms { needed: 2, got: terms.len() });
    }
    Ok(terms
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, &a)| a > 0)
        .map(|(i, &a)| {
            let ln_n = ((i + 1) as f64).ln();
            (a as f64).ln() / (ln_n * ln_n)
        })
        .fold(0.0, f64::max))
}

/// Discrepancy exponent for floor families with `F'' ~ N^rho`:
/// `min(1/4, (1 + rho) / 2)`.
pub fn floor_family_tau(rho: f64) -> f64 {
    (0.25f64).min((1.0 + rho) / 2.0)
}

/// Exponent for convex sequences, from `E << N^{32/13} (log N)^{71/65}`.
pub const CONVEX_TAU: f64 = 7.0 / 26.0;

/// Exponent `(3 - kappa) / 2` implied by `E(A_N) << N^kappa`.
pub fn tau_from_kappa(kappa: f64) -> f64 {
    (3.0 - kappa) / 2.0
}

/// Predicted discrepancy exponent `tau` in `N D_N* = Omega(N^{tau - eps})`.
///
/// With `kappa` given this is `(3 - kappa) / 2`; otherwise the family's
/// known value.
pub fn predicted_tau(spec: &SequenceSpec, kappa: Option<f64>) -> Result<f64> {
    if let Some(k) = kappa {
        if !(2.0..=3.0).contains(&k) {
            return Err(Error::InvalidParameter(format!("kappa must lie in [2, 3], got {k}")));
        }
        return Ok(tau_from_kappa(k));
    }
    spec.validate()?;
    match spec {
        SequenceSpec::FloorPower { c } if *c < 2.0 => Ok(floor_family_tau(c - 2.0)),
        SequenceSpec::FloorPower { .. } | SequenceSpec::QuasiExponential { .. } => Ok(CONVEX_TAU),
        SequenceSpec::Polynomial { coefficients } => {
            match IntPoly::from_i64(coefficients).degree() {
                Some(d) if d >= 2 => Ok(0.5),
                _ => Ok(0.0),
            }
        }
        SequenceSpec::Kronecker {} => Ok(0.0),
        SequenceSpec::RudinShapiro {} | SequenceSpec::Lacunary { .. } => Ok(0.5),
        SequenceSpec::ThueMorse {} => Ok(0.4033),
        SequenceSpec::ExplicitList { .. } => Err(Error::NoPrediction(spec.family_name())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn terms(spec: SequenceSpec, n: usize) -> Vec<u64> {
        generate(&spec, n).unwrap().terms
    }

    #[test]
    fn generate_examples() {
        assert_eq!(terms(SequenceSpec::FloorPower { c: 1.5 }, 5), vec![1, 2, 5, 8, 11]);
        assert_eq!(terms(SequenceSpec::Kronecker {}, 4), vec![1, 2, 3, 4]);
        assert_eq!(terms(SequenceSpec::RudinShapiro {}, 6), vec![0, 1, 2, 4, 5, 7]);
        assert_eq!(terms(SequenceSpec::ThueMorse {}, 8), vec![0, 3, 5, 6, 9, 10, 12, 15]);
        assert_eq!(terms(SequenceSpec::Lacunary { ratio: 2.0 }, 5), vec![2, 4, 8, 16, 32]);
    }

    #[test]
    fn polynomial_offset_skips_decreasing_start() {
        // n^2 - 6n + 10: values 5,2,1,2,5,10,... increasing from n = 3
        let seq = generate(&SequenceSpec::Polynomial { coefficients: vec![10, -6, 1] }, 4).unwrap();
        assert_eq!(seq.first_index, 3);
        assert_eq!(seq.terms, vec![1, 2, 5, 10]);
        // n^2 - 20: negative until n = 5
        let seq = generate(&SequenceSpec::Polynomial { coefficients: vec![-20, 0, 1] }, 2).unwrap();
        assert_eq!(seq.first_index, 5);
        assert_eq!(seq.terms, vec![5, 16]);
    }

    #[test]
    fn invalid_parameters_rejected() {
        for spec in [
            SequenceSpec::FloorPower { c: 1.0 },
            SequenceSpec::QuasiExponential { gamma: 0.5, beta: 2.5 },
            SequenceSpec::QuasiExponential { gamma: 0.0, beta: 1.5 },
            SequenceSpec::Lacunary { ratio: 1.0 },
            SequenceSpec::Polynomial { coefficients: vec![3, -1] },
            SequenceSpec::ExplicitList { terms: vec![1, 1] },
        ] {
            assert!(generate(&spec, 3).is_err(), "{spec:?}");
        }
        assert!(generate(&SequenceSpec::Kronecker {}, 0).is_err());
        assert!(matches!(
            generate(&SequenceSpec::ExplicitList { terms: vec![1, 2] }, 3),
            Err(Error::TooFewTerms { .. })
        ));
    }

    #[test]
    fn overflow_fails_loudly() {
        let err = generate(&SequenceSpec::Lacunary { ratio: 2.0 }, 64).unwrap_err();
        assert!(matches!(err, Error::Overflow { index: 64, .. }), "{err}");
        let err = generate(&SequenceSpec::FloorPower { c: 3.0 }, 3_000_000).unwrap_err();
        assert!(matches!(err, Error::Overflow { .. }));
    }

    #[test]
    fn quasi_exponential_dedups() {
        let seq = generate(&SequenceSpec::QuasiExponential { gamma: 0.5, beta: 1.5 }, 50).unwrap();
        assert!(seq.skipped > 0);
        assert!(seq.terms.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(seq.terms[0], 1);
    }

    #[test]
    fn convexity() {
        assert!(is_convex(&[1, 4, 9, 16]).unwrap());
        assert!(!is_convex(&[1, 2, 3, 4]).unwrap());
        assert!(is_convex(&[1, 2, 4, 8]).unwrap());
        assert!(is_convex(&[1, 2]).is_err());
    }

    #[test]
    fn growth_gamma_examples() {
        let l2 = 2f64.ln();
        assert!((growth_gamma(&[1, 2]).unwrap() - 1.0 / l2).abs() < 1e-12);
        let first_hundred: Vec<u64> = (1..=100).collect();
        assert!((growth_gamma(&first_hundred).unwrap() - 1.0 / l2).abs() < 1e-12);
        assert!((growth_gamma(&[1, 1024]).unwrap() - 10.0 / l2).abs() < 1e-9);
        assert!(growth_gamma(&[5]).is_err());
    }

    #[test]
    fn predicted_tau_table() {
        let fp = |c| predicted_tau(&SequenceSpec::FloorPower { c }, None).unwrap();
        assert!((fp(1.2) - 0.1).abs() < 1e-12);
        assert_eq!(fp(1.5), 0.25);
        assert_eq!(fp(1.75), 0.25);
        assert_eq!(fp(2.0), 7.0 / 26.0);
        assert_eq!(fp(3.7), 7.0 / 26.0);
        assert_eq!(predicted_tau(&SequenceSpec::ExplicitList { terms: vec![1] }, Some(2.0)).unwrap(), 0.5);
        assert_eq!(
            predicted_tau(&SequenceSpec::QuasiExponential { gamma: 1.0, beta: 1.5 }, None).unwrap(),
            7.0 / 26.0
        );
        assert!(matches!(
            predicted_tau(&SequenceSpec::ExplicitList { terms: vec![1] }, None),
            Err(Error::NoPrediction(_))
        ));
        assert!(predicted_tau(&SequenceSpec::Kronecker {}, Some(3.5)).is_err());
    }

    #[test]
    fn spec_json_shape() {
        let spec = SequenceSpec::FloorPower { c: 1.5 };
        let json = serde_json::to_string(&spec).unwrap();
        assert_eq!(json, r#"{"family":"floor_power","params":{"c":1.5}}"#);
        let back: SequenceSpec =
            serde_json::from_str(r#"{"family":"kronecker","params":{}}"#).unwrap();
        assert_eq!(back, SequenceSpec::Kronecker {});
        let poly: SequenceSpec =
            serde_json::from_str(r#"{"family":"polynomial","params":{"coefficients":[0,0,1]}}"#).unwrap();
        assert_eq!(poly, SequenceSpec::Polynomial { coefficients: vec![0, 0, 1] });
    }
}

//! Exact `floor` of real-valued sequence formulas.
//!
//! A double-precision estimate is used when it is provably far from an
//! integer. Otherwise (near-integers, or values beyond 2^52 where doubles
//! cannot resolve units) the value is recomputed with 256-bit floats.

use astro_float::{BigFloat, Consts, RoundingMode};

use crate::{Error, Result};

const PRECISION: usize = 256;
const RM: RoundingMode = RoundingMode::ToEven;
const TWO_POW_52: f64 = 4_503_599_627_370_496.0;
const TWO_POW_64: f64 = 18_446_744_073_709_551_616.0;

/// Real formulas whose floor we take.
#[derive(Debug, Clone, Copy)]
pub(crate) enum Formula {
    /// `n^c`
    Power { c: f64 },
    /// `exp(gamma * ln(n)^beta)`
    QuasiExponential { gamma: f64, beta: f64 },
    /// `ratio^n`
    Geometric { ratio: f64 },
}

impl Formula {
    fn estimate(self, n: u64) -> f64 {
        let x = n as f64;
        match self {
            Formula::Power { c } => x.powf(c),
            Formula::QuasiExponential { gamma, beta } => (gamma * x.ln().powf(beta)).exp(),
            Formula::Geometric { ratio } => ratio.powf(x),
        }
    }

    fn precise(self, n: u64, cc: &mut Consts) -> BigFloat {
        let x = BigFloat::from_u64(n, PRECISION);
        match self {
            Formula::Power { c } => x.pow(&BigFloat::from_f64(c, PRECISION), PRECISION, RM, cc),
            Formula::QuasiExponential { gamma, beta } => {
                if n == 1 {
                    return BigFloat::from_u64(1, PRECISION);
                }
                let ln = x.ln(PRECISION, RM, cc);
                let powed = ln.pow(&BigFloat::from_f64(beta, PRECISION), PRECISION, RM, cc);
                powed
                    .mul(&BigFloat::from_f64(gamma, PRECISION), PRECISION, RM)
                    .exp(PRECISION, RM, cc)
            }
            Formula::Geometric { ratio } => {
                BigFloat::from_f64(ratio, PRECISION).powi(n as usize, PRECISION, RM)
            }
        }
    }
}

/// Evaluates `floor(formula(n))`, returning `Ok(None)` when the value does not fit in 64 bits.
pub(crate) struct FloorEvaluator {
    cc: Consts,
}

impl FloorEvaluator {
    pub(crate) fn new() -> Result<Self> {
        let cc = Consts::new()
            .map_err(|e| Error::InvalidParameter(format!("extended precision unavailable: {e:?}")))?;
        Ok(FloorEvaluator { cc })
    }

    pub(crate) fn floor(&mut self, formula: Formula, n: u64) -> Result<Option<u64>> {
        let est = formula.estimate(n);
        if est.is_nan() {
            return Err(Error::InvalidParameter(format!("formula is undefined at n = {n}")));
        }
        if est >= 2.0 * TWO_POW_64 {
            return Ok(None);
        }
        if est < TWO_POW_52 {
            let nearest = est.round();
            let guard = (est * f64::EPSILON * 256.0).max(2f64.powi(-30));
            if (est - nearest).abs() > guard {
                return Ok(Some(est.floor() as u64));
            }
        }
        self.floor_precise(formula, n, est)
    }

    fn floor_precise(&mut self, formula: Formula, n: u64, est: f64) -> Result<Option<u64>> {
        let value = formula.precise(n, &mut self.cc);
        if value.is_nan() {
            return Err(Error::InvalidParameter(format!("formula is undefined at n = {n}")));
        }
        let limit = BigFloat::from_u128(1u128 << 64, PRECISION);
        if value.cmp(&limit).is_none_or(|o| o >= 0) {
            return Ok(None);
        }

        // floor(value) lies within a few units of the estimate; bisect for the
        // largest k with k <= value.
        let width = (est * 2f64.powi(-40)).max(4.0);
        let le = |k: u128| BigFloat::from_u128(k, PRECISION).cmp(&value).is_some_and(|o| o <= 0);
        let mut lo = (est - width).max(0.0).floor() as u128;
        let mut hi = ((est + width).ceil() as u128).min(1u128 << 64);
        while !le(lo) {
            lo /= 2;
        }
        while le(hi) && hi < (1u128 << 64) {
            hi = (hi * 2).min(1u128 << 64);
        }
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if le(mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }

        // A value within 2^-100 below an integer is that integer evaluated with
        // rounding error (e.g. 4^1.5 = 8).
        let eps = BigFloat::from_f64(2f64.powi(-100), PRECISION);
        let gap_up = BigFloat::from_u128(lo + 1, PRECISION).sub(&value, PRECISION, RM);
        if gap_up.cmp(&eps).is_some_and(|o| o < 0) {
            lo += 1;
        }
        Ok(u64::try_from(lo).ok())
    }
}

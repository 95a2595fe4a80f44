//! Invariant suites with machine-readable pass/fail summaries.

use std::fmt;
use std::str::FromStr;

use rand_core::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::{Deserialize, Serialize};

use crate::discrepancy::{fractional_part_fixed, star_discrepancy, AlphaSampler};
use crate::energy::{
    difference_histogram, energy_bruteforce, energy_by_differences, energy_convolution,
    energy_histogram, representation_count, EnergyBudget, RepresentationMethod,
    DEFAULT_WINDOW_LIMIT,
};
use crate::expsum::{fourth_moment_check, holder_check, QuadratureBudget};
use crate::poly::IntPoly;
use crate::rudinshapiro as rs;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Energy,
    Discrepancy,
    Expsum,
    Rs,
    All,
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "energy" => Suite::Energy,
            "discrepancy" => Suite::Discrepancy,
            "expsum" => Suite::Expsum,
            "rs" => Suite::Rs,
            "all" => Suite::All,
            _ => return Err(Error::InvalidParameter(format!("unknown suite `{s}`"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct VerifySummary {
    pub checks: Vec<CheckResult>,
}

impl VerifySummary {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn record(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(CheckResult { name: name.to_string(), passed, detail: detail.into() });
    }

    fn record_result(&mut self, name: &str, outcome: Result<(bool, String)>) {
        match outcome {
            Ok((passed, detail)) => self.record(name, passed, detail),
            Err(e) => self.record(name, false, format!("error: {e}")),
        }
    }

    fn extend(&mut self, other: VerifySummary) {
        self.checks.extend(other.checks);
    }
}

impl fmt::Display for VerifySummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            writeln!(f, "{tag} {}: {}", c.name, c.detail)?;
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        write!(f, "{} checks, {} failed", self.checks.len(), failed)
    }
}

/// Distinct sorted values drawn below `bound`.
pub fn random_set(rng: &mut SplitMix64, size: usize, bound: u64) -> Vec<u64> {
    let mut v: Vec<u64> = Vec::with_capacity(size);
    while v.len() < size {
        v.push(rng.next_u64() % bound);
        v.sort_unstable();
        v.dedup();
    }
    v
}

pub fn verify(suite: Suite, seed: u64) -> VerifySummary {
    match suite {
        Suite::Energy => verify_energy(seed),
        Suite::Discrepancy => verify_discrepancy(seed),
        Suite::Expsum => verify_expsum(seed),
        Suite::Rs => rs_verify(12, 100_000, 100, seed),
        Suite::All => {
            let mut s = verify_energy(seed);
            s.extend(verify_discrepancy(seed));
            s.extend(verify_expsum(seed));
            s.extend(rs_verify(12, 100_000, 100, seed));
            s
        }
    }
}

fn verify_energy(seed: u64) -> VerifySummary {
    let mut out = VerifySummary::default();
    let mut rng = SplitMix64::seed_from_u64(seed);

    out.record_result("energy.backends_agree", (|| {
        for i in 0..50 {
            let size = 1 + (rng.next_u64() % 40) as usize;
            let set = random_set(&mut rng, size, 1 << 16);
            let b = energy_bruteforce(&set)?.value;
            let h = energy_histogram(&difference_histogram(&set)?).value;
            let c = energy_convolution(&set, DEFAULT_WINDOW_LIMIT)?.value;
            if b != h || h != c {
                return Ok((false, format!("set {i}: brute {b}, histogram {h}, convolution {c}")));
            }
        }
        Ok((true, "50 random sets".into()))
    })());

    out.record_result("energy.closed_form", (|| {
        for n in 1..=500u64 {
            let terms: Vec<u64> = (1..=n).collect();
            let e = energy_by_differences(&terms, &EnergyBudget::default())?.value;
            let n = u128::from(n);
            if e != (2 * n * n * n + n) / 3 {
                return Ok((false, format!("N = {n}: {e}")));
            }
        }
        Ok((true, "E({1..N}) = (2N^3 + N)/3 for N <= 500".into()))
    })());

    out.record_result("energy.bounds_and_progressions", (|| {
        for n in 2..=32u64 {
            let ap: Vec<u64> = (0..n).map(|i| 5 + 3 * i).collect();
            let e = energy_bruteforce(&ap)?.value;
            let n128 = u128::from(n);
            let ap_energy = (2 * n128.pow(3) + n128) / 3;
            if e != ap_energy {
                return Ok((false, format!("AP of length {n}: {e} != {ap_energy}")));
            }
            if n >= 3 {
                let mut bent = ap.clone();
                *bent.last_mut().unwrap() += 1;
                let e = energy_bruteforce(&bent)?.value;
                if e >= ap_energy || e < n128 * n128 {
                    return Ok((false, format!("perturbed AP of length {n}: {e}")));
                }
            }
        }
        Ok((true, "progressions attain (2N^3 + N)/3, perturbed sets lie in [N^2, that)".into()))
    })());

    out.record_result("energy.representation_divisor_vs_bruteforce", (|| {
        for _ in 0..100 {
            let degree = 2 + (rng.next_u64() % 3) as usize;
            let coeffs: Vec<i64> = (0..=degree).map(|_| 1 + (rng.next_u64() % 5) as i64).collect();
            let poly = IntPoly::from_i64(&coeffs);
            let n = 2 + rng.next_u64() % 60;
            let x = 1 + (rng.next_u64() % n) as i128;
            let y = 1 + (rng.next_u64() % n) as i128;
            let a = poly.eval(x).unwrap() - poly.eval(y).unwrap() + i128::from(rng.next_u64() % 2);
            let d = representation_count(&poly, n, a, RepresentationMethod::Divisor)?;
            let b = representation_count(&poly, n, a, RepresentationMethod::Bruteforce)?;
            if d != b {
                return Ok((false, format!("{coeffs:?}, N = {n}, a = {a}: {d} vs {b}")));
            }
        }
        Ok((true, "100 random instances".into()))
    })());
    out
}

/// `sup_b |A(b)/N - b|` over the finitely many places it can be attained.
pub fn star_discrepancy_by_candidates(points: &[f64]) -> f64 {
    let n = points.len() as f64;
    let mut best: f64 = 0.0;
    for &p in points {
        let below = points.iter().filter(|&&x| x < p).count() as f64;
        let upto = points.iter().filter(|&&x| x <= p).count() as f64;
        best = best.max((below / n - p).abs()).max((upto / n - p).abs());
    }
    best
}

fn verify_discrepancy(seed: u64) -> VerifySummary {
    let mut out = VerifySummary::default();
    let mut rng = SplitMix64::seed_from_u64(seed ^ 0xD15C);

    out.record_result("discrepancy.sorted_formula_vs_candidates", (|| {
        let mut worst: f64 = 0.0;
        for _ in 0..200 {
            let n = 1 + (rng.next_u64() % 100) as usize;
            let pts: Vec<f64> = (0..n).map(|_| (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64).collect();
            let d = star_discrepancy(&pts)?;
            worst = worst.max((d - star_discrepancy_by_candidates(&pts)).abs());
            if d < 0.5 / n as f64 - 1e-15 || d > 1.0 {
                return Ok((false, format!("D* = {d} outside [1/2N, 1] for N = {n}")));
            }
        }
        Ok((worst <= 1e-15, format!("max deviation {worst:e}")))
    })());

    out.record_result("discrepancy.reflection", (|| {
        for alpha in AlphaSampler::take(seed, 20) {
            for a in [1u64, 2, 3, 1 << 40, u64::MAX] {
                let f = fractional_part_fixed(a, alpha);
                let g = fractional_part_fixed(a, alpha.reflect());
                if f != 0 && f.wrapping_add(g) != 0 {
                    return Ok((false, format!("a = {a}, alpha = {alpha}")));
                }
            }
        }
        Ok((true, "{a(1-x)} = 1 - {ax} exactly".into()))
    })());

    out.record_result("discrepancy.permutation_invariance", (|| {
        let pts: Vec<f64> = (0..57).map(|i| ((i * 37) % 101) as f64 / 101.0).collect();
        let mut rev = pts.clone();
        rev.reverse();
        let (a, b) = (star_discrepancy(&pts)?, star_discrepancy(&rev)?);
        Ok((a == b, format!("{a} vs {b}")))
    })());
    out
}

fn verify_expsum(seed: u64) -> VerifySummary {
    let mut out = VerifySummary::default();
    let mut rng = SplitMix64::seed_from_u64(seed ^ 0xE5);
    out.record_result("expsum.fourth_moment_and_holder", (|| {
        let mut worst: f64 = 0.0;
        for _ in 0..5 {
            let n = 2 + (rng.next_u64() % 20) as usize;
            let set = random_set(&mut rng, n, 256);
            worst = worst.max(fourth_moment_check(&set, 1e-6)?);
            let h = holder_check(&set, 1e-6, &EnergyBudget::default(), QuadratureBudget::default())?;
            if !h.holds {
                return Ok((false, format!("I = {} < {}", h.estimate.l1, h.holder_bound)));
            }
        }
        Ok((worst < 1e-6, format!("max fourth-moment residual {worst:e}")))
    })());
    out
}

/// Rudin-Shapiro identity and bound suite.
///
/// `max_n` bounds the block exponents (identity, `sigma(n)`, geometric L1);
/// `max_l` bounds partial sums, recurrences and the `a_k <= 2k` sweep.
pub fn rs_verify(max_n: u32, max_l: u64, alpha_samples: usize, seed: u64) -> VerifySummary {
    let mut out = VerifySummary::default();

    out.record(
        "rs.listing",
        rs::rs_integers(6) == [0, 1, 2, 4, 5, 7],
        "first Rudin-Shapiro integers 0,1,2,4,5,7",
    );

    let ints = rs::rs_integers(max_l as usize);
    let bad = ints.iter().enumerate().find(|&(i, &a)| a > 2 * (i as u64 + 1));
    out.record(
        "rs.a_k_le_2k",
        bad.is_none(),
        match bad {
            Some((i, a)) => format!("a_{} = {a}", i + 1),
            None => format!("k <= {max_l}"),
        },
    );

    let mut s: i64 = 0;
    let mut violation = None;
    for l in 1..=max_l {
        s += i64::from(rs::rs_sign(l - 1));
        if !rs::partial_sum_within_bounds(l, s) {
            violation = Some((l, s));
            break;
        }
    }
    out.record(
        "rs.partial_sum_bounds",
        violation.is_none(),
        match violation {
            Some((l, s)) => format!("l = {l}: sum {s}"),
            None => format!("sqrt(3l/5) < s_l < sqrt(6l) for l <= {max_l}"),
        },
    );

    let rec = (0..=max_l).find(|&k| {
        let even = rs::rs_sign(2 * k) == rs::rs_sign(k);
        let odd_sign = if k % 2 == 0 { 1 } else { -1 };
        let odd = rs::rs_sign(2 * k + 1) == odd_sign * rs::rs_sign(k);
        !(even && odd)
    });
    out.record(
        "rs.recurrences",
        rec.is_none(),
        match rec {
            Some(k) => format!("fails at k = {k}"),
            None => format!("r_2k = r_k, r_2k+1 = (-1)^k r_k for k <= {max_l}"),
        },
    );

    let sigma_bad = (1..=max_n.min(20)).find(|&n| {
        let sigma = rs::block_summary(n).sigma as i64;
        sigma != (1 << (n - 1)) + rs::rs_partial_sum(1 << n) / 2
    });
    out.record(
        "rs.sigma",
        sigma_bad.is_none(),
        match sigma_bad {
            Some(n) => format!("fails at n = {n}"),
            None => format!("sigma(n) = 2^(n-1) + s_(2^n)/2 for n <= {}", max_n.min(20)),
        },
    );

    out.record_result("rs.block_sum_identity", (|| {
        let alphas = AlphaSampler::take(seed, alpha_samples);
        for n in 0..=max_n.min(rs::MAX_DIRECT_N) {
            let tol = 2f64.powi(n as i32) * 1e-12;
            for &a in &alphas {
                let r = rs::block_sum_identity_residual(n, a)?;
                if r >= tol {
                    return Ok((false, format!("n = {n}, alpha = {a}: residual {r:e}")));
                }
            }
        }
        Ok((true, format!("n <= {max_n}, {alpha_samples} alphas")))
    })());

    out.record_result("rs.geometric_l1_bound", (|| {
        for n in 0..=max_n.min(rs::MAX_L1_N) {
            let (v, bound) = rs::geometric_l1_bound_check(n, 1e-4)?;
            if v > bound {
                return Ok((false, format!("n = {n}: {v} > {bound}")));
            }
        }
        Ok((true, format!("integral <= 2 + 2n for n <= {}", max_n.min(rs::MAX_L1_N))))
    })());

    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn candidate_oracle_examples() {
        assert_eq!(star_discrepancy_by_candidates(&[0.5]), 0.5);
        assert_eq!(star_discrepancy_by_candidates(&[0.0, 0.0]), 1.0);
        assert_eq!(star_discrepancy_by_candidates(&[0.25, 0.75]), 0.25);
    }

    #[test]
    fn quick_suites_pass() {
        for suite in [Suite::Energy, Suite::Discrepancy, Suite::Expsum] {
            let s = verify(suite, 3);
            assert!(s.passed(), "{s}");
        }
        let s = rs_verify(8, 5000, 10, 3);
        assert!(s.passed(), "{s}");
        assert_eq!(s.checks.len(), 7);
    }

    #[test]
    fn suite_names() {
        assert_eq!("all".parse::<Suite>().unwrap(), Suite::All);
        assert!("bogus".parse::<Suite>().is_err());
    }
}

//! Rudin-Shapiro signs, integers and polynomials.
//!
//! `r_k = (-1)^{number of (possibly overlapping) "11" blocks in binary k}`.
//! The Rudin-Shapiro integers are the `k >= 0` with `r_k = +1`, listed from 0.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::discrepancy::{fixed_to_unit, fractional_part_fixed, AlphaValue};
use crate::expsum::{l1_norm, QuadratureBudget};
use crate::{Error, Result};

/// Largest `n` for which `rho_n` is summed directly.
pub const MAX_DIRECT_N: u32 = 22;
/// Largest `n` for which L1 norms are integrated.
pub const MAX_L1_N: u32 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RsSign {
    pub k: u64,
    pub sign: i8,
}

/// `r_k` as `+1` or `-1`.
#[inline]
pub fn rs_sign(k: u64) -> i8 {
    if (k & (k >> 1)).count_ones() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The first `count` Rudin-Shapiro integers.
pub fn rs_integers(count: usize) -> Vec<u64> {
    (0u64..).filter(|&k| rs_sign(k) == 1).take(count).collect()
}

/// Rudin-Shapiro integers strictly below `2^n`.
pub fn rs_integers_below_pow2(n: u32) -> Vec<u64> {
    (0..1u64 << n).filter(|&k| rs_sign(k) == 1).collect()
}

/// `sum_{k < l} r_k`.
pub fn rs_partial_sum(l: u64) -> i64 {
    (0..l).map(|k| i64::from(rs_sign(k))).sum()
}

/// The strict sandwich `sqrt(3l/5) < s < sqrt(6l)` for a partial sum `s` of length `l`.
pub fn partial_sum_within_bounds(l: u64, s: i64) -> bool {
    let (l, s) = (l as f64, s as f64);
    (3.0 * l / 5.0).sqrt() < s && s < (6.0 * l).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RsBlockSummary {
    pub n: u32,
    /// Number of `k < 2^n` with `r_k = +1`.
    pub sigma: u64,
}

pub fn block_summary(n: u32) -> RsBlockSummary {
    let sigma = (0..1u64 << n).filter(|&k| rs_sign(k) == 1).count() as u64;
    RsBlockSummary { n, sigma }
}

fn unit(phase_fixed: u128) -> Complex64 {
    Complex64::from_polar(1.0, TAU * fixed_to_unit(phase_fixed))
}

fn check_direct(n: u32) -> Result<()> {
    if n > MAX_DIRECT_N {
        return Err(Error::InvalidParameter(format!(
            "n = {n} exceeds the direct-summation budget {MAX_DIRECT_N}"
        )));
    }
    Ok(())
}

/// `rho_n(e(x)) = sum_{k < 2^n} r_k e(k x)`, summed directly.
pub fn rs_polynomial_eval(n: u32, alpha: AlphaValue) -> Result<Complex64> {
    check_direct(n)?;
    Ok((0..1u64 << n)
        .map(|k| f64::from(rs_sign(k)) * unit(fractional_part_fixed(k, alpha)))
        .sum())
}

/// Size of the defect in `Sigma(n) = (rho_n(e(x)) + sum_{k < 2^n} e(k x)) / 2`,
/// where `Sigma(n)` sums `e(a x)` over Rudin-Shapiro integers `a < 2^n`.
pub fn block_sum_identity_residual(n: u32, alpha: AlphaValue) -> Result<f64> {
    check_direct(n)?;
    let mut sigma_sum = Complex64::new(0.0, 0.0);
    let mut rho = Complex64::new(0.0, 0.0);
    let mut geometric = Complex64::new(0.0, 0.0);
    for k in 0..1u64 << n {
        let z = unit(fractional_part_fixed(k, alpha));
        geometric += z;
        if rs_sign(k) == 1 {
            sigma_sum += z;
            rho += z;
        } else {
            rho -= z;
        }
    }
    Ok((sigma_sum - 0.5 * (rho + geometric)).norm())
}

fn check_l1(n: u32) -> Result<()> {
    if n > MAX_L1_N {
        return Err(Error::InvalidParameter(format!("n = {n} exceeds {MAX_L1_N}")));
    }
    Ok(())
}

/// Quadrature value of `int_0^1 |sum_{k < 2^n} e(k x)| dx` and the bound `2 + 2n`.
pub fn geometric_l1_bound_check(n: u32, rel_tol: f64) -> Result<(f64, f64)> {
    check_l1(n)?;
    let terms: Vec<u64> = (0..1u64 << n).collect();
    let est = l1_norm(&terms, rel_tol, QuadratureBudget::default())?;
    Ok((est.l1, 2.0 + 2.0 * f64::from(n)))
}

/// `int_0^1 |Sigma(n)| dx / 2^{n/2}`.
pub fn rs_l1_ratio(n: u32, rel_tol: f64) -> Result<f64> {
    check_l1(n)?;
    let terms = rs_integers_below_pow2(n);
    let est = l1_norm(&terms, rel_tol, QuadratureBudget::default())?;
    Ok(est.l1 / 2f64.powf(f64::from(n) / 2.0))
}

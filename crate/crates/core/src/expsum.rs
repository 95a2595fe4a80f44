//! Norms of the exponential sum `S_N(x) = sum_{n <= N} e(a_n x)`.
//!
//! `I(N) = int_0^1 |S_N|` and the fourth moment `int_0^1 |S_N|^4` are
//! integrated with the composite midpoint rule on `P` panels, `P` a power of
//! two. The midpoints `(2j + 1) / 2P` lie on the 2^-128 grid, and
//! `S_N((2j + 1) / 2P) = sum_a e(a / 2P) e(a j / P)` is a length-`P` inverse
//! DFT of exactly pre-twiddled coefficients, so all panels cost one FFT.
//!
//! The fourth moment is a trigonometric polynomial of degree `2 span < P`, so
//! the rule reproduces it exactly up to roundoff: comparing it against the
//! integer energy certifies the grid.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::discrepancy::{fixed_to_unit, fractional_part_fixed, AlphaValue};
use crate::energy::{energy_auto, EnergyBudget};
use crate::sum::pairwise_sum;
use crate::{Error, Result};

pub const MIN_PANELS: usize = 4096;
pub const DEFAULT_PANEL_CAP: usize = 1 << 26;
pub const MIN_REL_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadratureBudget {
    /// Largest panel count tried before failing.
    pub max_panels: usize,
}

impl Default for QuadratureBudget {
    fn default() -> Self {
        QuadratureBudget { max_panels: DEFAULT_PANEL_CAP }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpSumEstimate {
    pub n_terms: usize,
    /// Estimate of `I(N)`.
    pub l1: f64,
    pub fourth_moment: f64,
    pub panels: usize,
    /// Relative change of the last panel doubling (larger of the two norms).
    pub rel_error_bound: f64,
}

/// `S_N(x)` summed directly, with phases reduced exactly on the grid.
pub fn exp_sum(terms: &[u64], alpha: AlphaValue) -> Complex64 {
    terms
        .iter()
        .map(|&a| Complex64::from_polar(1.0, TAU * fixed_to_unit(fractional_part_fixed(a, alpha))))
        .sum()
}

/// `(int |S|, int |S|^4)` by the midpoint rule on `panels` panels.
pub fn midpoint_norms(terms: &[u64], panels: usize) -> (f64, f64) {
    assert!(panels.is_power_of_two() && panels >= 2);
    // midpoint offset 1 / 2P on the grid: 2^128 / 2P
    let half_step = AlphaValue(1u128 << (127 - panels.trailing_zeros()));
    let mut buf = vec![Complex64::new(0.0, 0.0); panels];
    let mask = panels as u64 - 1;
    for &a in terms {
        let twiddle = TAU * fixed_to_unit(fractional_part_fixed(a, half_step));
        buf[(a & mask) as usize] += Complex64::from_polar(1.0, twiddle);
    }
    FftPlanner::new().plan_fft_inverse(panels).process(&mut buf);

    let mut abs: Vec<f64> = buf.iter().map(|z| z.norm()).collect();
    drop(buf);
    let l1 = pairwise_sum(&abs) / panels as f64;
    for v in abs.iter_mut() {
        *v = (*v * *v) * (*v * *v);
    }
    let l4 = pairwise_sum(&abs) / panels as f64;
    (l1, l4)
}

/// Integrates `I(N)` and the fourth moment, doubling the panel count from
/// `max(4096, 8 a_N)` until both change by less than `rel_tol`.
pub fn l1_norm(terms: &[u64], rel_tol: f64, budget: QuadratureBudget) -> Result<ExpSumEstimate> {
    if terms.is_empty() {
        return Err(Error::EmptyInput);
    }
    if !(rel_tol >= MIN_REL_TOL) {
        return Err(Error::InvalidParameter(format!("rel_tol must be >= {MIN_REL_TOL}, got {rel_tol}")));
    }
    let max_term = *terms.iter().max().unwrap() as u128;
    let start = (8 * max_term).max(MIN_PANELS as u128);
    if start > budget.max_panels as u128 {
        return Err(Error::QuadratureBudgetExceeded { panels: start as usize, cap: budget.max_panels });
    }
    let mut panels = (start as usize).next_power_of_two();
    let (mut l1, mut l4) = midpoint_norms(terms, panels);
    loop {
        let next = panels * 2;
        if next > budget.max_panels {
            return Err(Error::QuadratureBudgetExceeded { panels: next, cap: budget.max_panels });
        }
        let (l1_next, l4_next) = midpoint_norms(terms, next);
        let change = rel_change(l1, l1_next).max(rel_change(l4, l4_next));
        panels = next;
        l1 = l1_next;
        l4 = l4_next;
        if change < rel_tol {
            return Ok(ExpSumEstimate {
                n_terms: terms.len(),
                l1,
                fourth_moment: l4,
                panels,
                rel_error_bound: change,
            });
        }
    }
}

fn rel_change(old: f64, new: f64) -> f64 {
    if new == 0.0 && old == 0.0 {
        0.0
    } else {
        (new - old).abs() / new.abs().max(old.abs())
    }
}

/// `sqrt(N^3 / E)`, the lower bound on `I(N)` from Hölder's inequality.
pub fn holder_lower_bound(energy: u128, n: u64) -> Result<f64> {
    let n2 = u128::from(n) * u128::from(n);
    if n == 0 || energy < n2 {
        return Err(Error::InconsistentEnergy { energy, n });
    }
    let n = n as f64;
    Ok((n * n * n / energy as f64).sqrt())
}

/// Numerical slack allowed below the Hölder bound.
pub fn holder_slack(n: u64) -> f64 {
    1e-9 * n as f64
}

/// `|fourth moment by quadrature - E| / E` with `E` computed exactly.
pub fn fourth_moment_check(terms: &[u64], rel_tol: f64) -> Result<f64> {
    let energy = energy_auto(terms, &EnergyBudget::default())?.value as f64;
    let est = l1_norm(terms, rel_tol, QuadratureBudget::default())?;
    Ok((est.fourth_moment - energy).abs() / energy)
}

/// One row of the `N,I,fourth_moment,holder_bound,panels` table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HolderCheck {
    #[serde(rename = "N")]
    pub n: usize,
    pub energy: u128,
    pub estimate: ExpSumEstimate,
    pub holder_bound: f64,
    pub holds: bool,
}

impl HolderCheck {
    pub fn csv_header() -> &'static str {
        "N,I,fourth_moment,holder_bound,panels"
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.n, self.estimate.l1, self.estimate.fourth_moment, self.holder_bound, self.estimate.panels
        )
    }
}

/// Quadrature norms of `terms` with the Hölder bound from their exact energy.
pub fn holder_check(
    terms: &[u64],
    rel_tol: f64,
    energy_budget: &EnergyBudget,
    quad_budget: QuadratureBudget,
) -> Result<HolderCheck> {
    let energy = energy_auto(terms, energy_budget)?.value;
    let estimate = l1_norm(terms, rel_tol, quad_budget)?;
    let n = terms.len() as u64;
    let holder_bound = holder_lower_bound(energy, n)?;
    Ok(HolderCheck {
        n: terms.len(),
        energy,
        estimate,
        holder_bound,
        holds: estimate.l1 >= holder_bound - holder_slack(n),
    })
}

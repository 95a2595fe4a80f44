//! Power-law exponents by least squares on log-log scale.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExponentFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    /// Smallest and largest abscissa used.
    pub n_range: (f64, f64),
    pub points: usize,
}

/// Ordinary least squares of `ln(value)` on `ln(n)`.
pub fn fit_loglog(points: &[(f64, f64)]) -> Result<ExponentFit> {
    if points.len() < 3 {
        return Err(Error::TooFewTerms { needed: 3, got: points.len() });
    }
    if points.iter().any(|&(n, v)| !(n > 0.0 && v > 0.0 && n.is_finite() && v.is_finite())) {
        return Err(Error::DegenerateFit("abscissae and values must be positive and finite"));
    }
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::DegenerateFit("all abscissae coincide"));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    // A constant series is fitted perfectly by slope 0.
    let r_squared = if syy == 0.0 { 1.0 } else { (1.0 - sse / syy).clamp(0.0, 1.0) };
    let lo = points.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let hi = points.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
    Ok(ExponentFit { slope, intercept, r_squared, n_range: (lo, hi), points: points.len() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power_law() {
        let f = fit_loglog(&[(10.0, 100.0), (100.0, 1e4), (1000.0, 1e6)]).unwrap();
        assert!((f.slope - 2.0).abs() < 1e-12);
        assert!(f.intercept.abs() < 1e-10);
        assert!((f.r_squared - 1.0).abs() < 1e-12);
        assert_eq!(f.n_range, (10.0, 1000.0));
    }

    #[test]
    fn constant_series() {
        let f = fit_loglog(&[(10.0, 5.0), (100.0, 5.0), (1000.0, 5.0)]).unwrap();
        assert_eq!(f.slope, 0.0);
        assert_eq!(f.r_squared, 1.0);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(fit_loglog(&[(1.0, 1.0), (2.0, 2.0)]).is_err());
        assert!(fit_loglog(&[(1.0, 1.0), (2.0, 0.0), (3.0, 1.0)]).is_err());
        assert!(fit_loglog(&[(2.0, 1.0), (2.0, 2.0), (2.0, 3.0)]).is_err());
    }

    #[test]
    fn noisy_fit_has_partial_r_squared() {
        let f = fit_loglog(&[(1.0, 1.0), (2.0, 5.0), (4.0, 2.0), (8.0, 9.0)]).unwrap();
        assert!(f.r_squared > 0.0 && f.r_squared < 1.0);
    }
}

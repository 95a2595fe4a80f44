//! Integer polynomials in one variable, evaluated exactly in 128-bit arithmetic.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Polynomial with integer coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntPoly {
    coeffs: Vec<i128>,
}

impl IntPoly {
    pub fn new(coeffs: impl IntoIterator<Item = i128>) -> Self {
        let mut coeffs: Vec<i128> = coeffs.into_iter().collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| i128::from(c)))
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> i128 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    /// Horner evaluation; `None` on 128-bit overflow.
    pub fn eval(&self, x: i128) -> Option<i128> {
        self.coeffs
            .iter()
            .rev()
            .try_fold(0i128, |acc, &c| acc.checked_mul(x)?.checked_add(c))
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, &c| acc * x + c as f64)
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as i128),
        )
    }

    /// `f(x + 1) - f(x)`.
    pub fn forward_difference(&self) -> Result<IntPoly> {
        let mut out = vec![0i128; self.coeffs.len().saturating_sub(1)];
        for (k, &c) in self.coeffs.iter().enumerate() {
            let mut binom: i128 = 1;
            for (j, slot) in out.iter_mut().enumerate().take(k) {
                *slot = binom
                    .checked_mul(c)
                    .and_then(|t| slot.checked_add(t))
                    .ok_or_else(|| Error::InvalidParameter("polynomial coefficients too large".into()))?;
                binom = binom * (k - j) as i128 / (j + 1) as i128;
            }
        }
        Ok(IntPoly::new(out))
    }

    /// Cauchy bound: every real root has absolute value below the result.
    pub fn root_bound(&self) -> f64 {
        let lead = self.leading().unsigned_abs() as f64;
        let max_ratio = self.coeffs[..self.coeffs.len().saturating_sub(1)]
            .iter()
            .map(|c| c.unsigned_abs() as f64 / lead)
            .fold(0.0, f64::max);
        1.0 + max_ratio
    }

    /// `q(x, x - t)` where `f(x) - f(y) = (x - y) q(x, y)`, as a polynomial in `x`.
    ///
    /// Computed as `(f(x) - f(x - t)) / t`, which divides exactly coefficient by coefficient.
    pub fn difference_quotient_along(&self, t: i128) -> Result<IntPoly> {
        assert!(t != 0);
        let overflow = || Error::InvalidParameter("difference quotient overflows 128 bits".into());
        // f(x - t) expanded by the binomial theorem.
        let mut shifted = vec![0i128; self.coeffs.len()];
        for (k, &c) in self.coeffs.iter().enumerate() {
            let mut binom: i128 = 1;
            let mut neg_t_pow: i128 = 1;
            for j in (0..=k).rev() {
                // coefficient of x^j in (x - t)^k is C(k, j) (-t)^(k-j)
                let term = c
                    .checked_mul(binom)
                    .and_then(|v| v.checked_mul(neg_t_pow))
                    .ok_or_else(overflow)?;
                shifted[j] = shifted[j].checked_add(term).ok_or_else(overflow)?;
                if j > 0 {
                    binom = binom * j as i128 / (k - j + 1) as i128;
                    neg_t_pow = neg_t_pow.checked_mul(-t).ok_or_else(overflow)?;
                }
            }
        }
        let quotient = self
            .coeffs
            .iter()
            .zip(&shifted)
            .map(|(&a, &b)| {
                let diff = a.checked_sub(b).ok_or_else(overflow)?;
                debug_assert_eq!(diff % t, 0);
                Ok(diff / t)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(IntPoly::new(quotient))
    }

    /// Integer roots of `self` inside `[lo, hi]`, ascending.
    ///
    /// Real critical points are located recursively from the derivative, which
    /// splits the range into pieces on which the polynomial is monotone; each
    /// piece is then searched by bisection with exact evaluation.
    pub fn integer_roots(&self, lo: i128, hi: i128) -> Vec<i128> {
        if lo > hi {
            return Vec::new();
        }
        match self.degree() {
            None => return (lo..=hi).collect(),
            Some(0) => return Vec::new(),
            Some(1) => {
                let (b, a) = (self.coeffs[0], self.coeffs[1]);
                return if b % a == 0 && (lo..=hi).contains(&(-b / a)) {
                    vec![-b / a]
                } else {
                    Vec::new()
                };
            }
            Some(_) => {}
        }

        let crit = self.derivative().real_roots(lo as f64 - 1.0, hi as f64 + 1.0);
        let mut cuts = vec![lo];
        for c in crit {
            let c = c.floor() as i128;
            // integers adjacent to a critical point are checked directly
            for x in c - 1..=c + 2 {
                if x > *cuts.last().unwrap() && x <= hi {
                    cuts.push(x);
                }
            }
        }
        if *cuts.last().unwrap() != hi {
            cuts.push(hi);
        }

        let mut roots = Vec::new();
        for &x in &cuts {
            if self.eval(x) == Some(0) {
                roots.push(x);
            }
        }
        for w in cuts.windows(2) {
            if let Some(r) = self.bisect_integer(w[0], w[1]) {
                roots.push(r);
            }
        }
        roots.sort_unstable();
        roots.dedup();
        roots
    }

    /// Exact zero strictly inside `(a, b)` for a polynomial monotone on `[a, b]`.
    fn bisect_integer(&self, mut a: i128, mut b: i128) -> Option<i128> {
        let sign = |x: i128| self.eval(x).map(i128::signum);
        let (sa, sb) = (sign(a)?, sign(b)?);
        if sa == 0 || sb == 0 || sa == sb {
            return None;
        }
        while b - a > 1 {
            let m = a + (b - a) / 2;
            match sign(m)? {
                0 => return Some(m),
                s if s == sa => a = m,
                _ => b = m,
            }
        }
        None
    }

    /// Approximate real roots in `[lo, hi]`, ascending.
    fn real_roots(&self, lo: f64, hi: f64) -> Vec<f64> {
        match self.degree() {
            None | Some(0) => Vec::new(),
            Some(1) => {
                let r = -(self.coeffs[0] as f64) / self.coeffs[1] as f64;
                if (lo..=hi).contains(&r) {
                    vec![r]
                } else {
                    Vec::new()
                }
            }
            Some(_) => {
                let mut pts = vec![lo];
                pts.extend(self.derivative().real_roots(lo, hi));
                pts.push(hi);
                let mut roots = Vec::new();
                for w in pts.windows(2) {
                    let (mut a, mut b) = (w[0], w[1]);
                    let (fa, fb) = (self.eval_f64(a), self.eval_f64(b));
                    if fa == 0.0 {
                        roots.push(a);
                        continue;
                    }
                    if fa.signum() == fb.signum() {
                        continue;
                    }
                    for _ in 0..200 {
                        let m = 0.5 * (a + b);
                        if m <= a || m >= b {
                            break;
                        }
                        if self.eval_f64(m).signum() == fa.signum() {
                            a = m;
                        } else {
                            b = m;
                        }
                    }
                    roots.push(0.5 * (a + b));
                }
                roots
            }
        }
    }
}

//! Additive energy `E(A) = #{(x1, x2, x3, x4) in A^4 : x1 - x2 = x3 - x4}`.
//!
//! Three independent routes are provided: the quartic definition (oracle
//! scale only), the representation function `E = sum_d r(d)^2`, and the
//! autocorrelation of the indicator of `A` by real FFT.

use std::cell::RefCell;
use std::fmt;

use num_complex::Complex;
use realfft::num_traits::Float;
use realfft::{FftNum, RealFftPlanner};
use serde::{Deserialize, Serialize};

use crate::harness::fit::{fit_loglog, ExponentFit};
use crate::poly::IntPoly;
use crate::sequences::IntegerSequence;
use crate::{Error, Result};

/// Largest set the quartic brute force accepts.
pub const BRUTEFORCE_CAP: usize = 64;
/// Default bound on `max(A) - min(A)` for the convolution backend.
pub const DEFAULT_WINDOW_LIMIT: u64 = 1 << 26;
/// Autocorrelation coefficients must round to integers within this distance.
pub const ROUNDING_TOLERANCE: f64 = 0.25;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnergyBackend {
    Bruteforce,
    Histogram,
    Convolution,
}

impl fmt::Display for EnergyBackend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EnergyBackend::Bruteforce => "bruteforce",
            EnergyBackend::Histogram => "histogram",
            EnergyBackend::Convolution => "convolution",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnergyResult {
    pub n: u64,
    pub value: u128,
    pub backend: EnergyBackend,
}

/// Size limits for the automatic backend choice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnergyBudget {
    /// Largest span `max - min` handled by FFT autocorrelation.
    pub window_limit: u64,
    /// Largest span counted in a dense array by the histogram backend.
    pub dense_span_limit: u64,
    /// Largest number of pairwise differences sorted by the histogram backend
    /// when the span is too wide for a dense array.
    pub max_sorted_pairs: u128,
}

impl Default for EnergyBudget {
    fn default() -> Self {
        EnergyBudget {
            window_limit: DEFAULT_WINDOW_LIMIT,
            dense_span_limit: 1 << 26,
            max_sorted_pairs: 1 << 26,
        }
    }
}

fn check_increasing(terms: &[u64]) -> Result<()> {
    if terms.is_empty() {
        return Err(Error::EmptyInput);
    }
    match terms.windows(2).position(|w| w[0] >= w[1]) {
        Some(i) => Err(Error::NotStrictlyIncreasing { index: i + 1 }),
        None => Ok(()),
    }
}

/// The representation function `r(d) = #{(i, j) : a_i - a_j = d}` for `d >= 0`.
/// `r(-d) = r(d)` is implied.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferenceHistogram {
    pub n: u64,
    /// `(d, r(d))` sorted by `d`, only nonzero counts.
    pub counts: Vec<(u64, u64)>,
}

impl DifferenceHistogram {
    pub fn get(&self, d: u64) -> u64 {
        self.counts
            .binary_search_by_key(&d, |&(k, _)| k)
            .map_or(0, |i| self.counts[i].1)
    }

    /// `r(0) + 2 sum_{d > 0} r(d)`, which must equal `n^2`.
    pub fn total_pairs(&self) -> u128 {
        self.counts
            .iter()
            .map(|&(d, c)| if d == 0 { u128::from(c) } else { 2 * u128::from(c) })
            .sum()
    }
}

/// Calls `visit(d, r(d))` for every realised `d > 0`, in increasing `d`.
fn for_each_difference(
    terms: &[u64],
    budget: &EnergyBudget,
    mut visit: impl FnMut(u64, u64),
) -> Result<()> {
    let span = terms[terms.len() - 1] - terms[0];
    if span <= budget.dense_span_limit {
        let mut dense = vec![0u32; span as usize + 1];
        for (i, &hi) in terms.iter().enumerate() {
            for &lo in &terms[..i] {
                dense[(hi - lo) as usize] += 1;
            }
        }
        for (d, &c) in dense.iter().enumerate().skip(1) {
            if c > 0 {
                visit(d as u64, u64::from(c));
            }
        }
        return Ok(());
    }

    let n = terms.len() as u128;
    let pairs = n * (n - 1) / 2;
    if pairs > budget.max_sorted_pairs {
        return Err(Error::HistogramBudgetExceeded { pairs, cap: budget.max_sorted_pairs });
    }
    let mut diffs = Vec::with_capacity(pairs as usize);
    for (i, &hi) in terms.iter().enumerate() {
        diffs.extend(terms[..i].iter().map(|&lo| hi - lo));
    }
    diffs.sort_unstable();
    for run in diffs.chunk_by(|a, b| a == b) {
        visit(run[0], run.len() as u64);
    }
    Ok(())
}

pub fn difference_histogram(terms: &[u64]) -> Result<DifferenceHistogram> {
    difference_histogram_with(terms, &EnergyBudget::default())
}

pub fn difference_histogram_with(terms: &[u64], budget: &EnergyBudget) -> Result<DifferenceHistogram> {
    check_increasing(terms)?;
    let mut counts = vec![(0, terms.len() as u64)];
    for_each_difference(terms, budget, |d, c| counts.push((d, c)))?;
    Ok(DifferenceHistogram { n: terms.len() as u64, counts })
}

/// Counts all `|A|^4` quadruples directly.
pub fn energy_bruteforce(terms: &[u64]) -> Result<EnergyResult> {
    if terms.len() > BRUTEFORCE_CAP {
        return Err(Error::OracleCapExceeded { size: terms.len(), cap: BRUTEFORCE_CAP });
    }
    let count = if terms.iter().all(|&a| a < 1 << 63) {
        count_quadruples(terms)
    } else {
        count_quadruples(&terms.iter().map(|&a| u128::from(a)).collect::<Vec<_>>())
    };
    Ok(EnergyResult { n: terms.len() as u64, value: count, backend: EnergyBackend::Bruteforce })
}

fn count_quadruples<T: Copy + PartialEq + std::ops::Add<Output = T>>(t: &[T]) -> u128 {
    let mut count: u64 = 0;
    for &x1 in t {
        for &x2 in t {
            for &x3 in t {
                for &x4 in t {
                    // x1 - x2 = x3 - x4
                    count += u64::from(x1 + x4 == x3 + x2);
                }
            }
        }
    }
    u128::from(count)
}

/// `E = r(0)^2 + 2 sum_{d > 0} r(d)^2`.
pub fn energy_histogram(hist: &DifferenceHistogram) -> EnergyResult {
    let value = hist
        .counts
        .iter()
        .map(|&(d, c)| {
            let sq = u128::from(c) * u128::from(c);
            if d == 0 { sq } else { 2 * sq }
        })
        .sum();
    EnergyResult { n: hist.n, value, backend: EnergyBackend::Histogram }
}

/// Histogram-route energy without materialising the histogram.
pub fn energy_by_differences(terms: &[u64], budget: &EnergyBudget) -> Result<EnergyResult> {
    check_increasing(terms)?;
    let n = terms.len() as u128;
    let mut value = n * n;
    for_each_difference(terms, budget, |_, c| value += 2 * u128::from(c) * u128::from(c))?;
    Ok(EnergyResult { n: n as u64, value, backend: EnergyBackend::Histogram })
}

/// Buffers longer than this are freed after each call.
const RETAINED_WORKSPACE_LEN: usize = 1 << 22;

/// Plans and buffers reused across calls of the same length.
struct ConvolutionWorkspace<T: FftNum> {
    planner: RealFftPlanner<T>,
    len: usize,
    signal: Vec<T>,
    spectrum: Vec<Complex<T>>,
    scratch: Vec<Complex<T>>,
}

impl<T: FftNum + Float + Into<f64>> ConvolutionWorkspace<T> {
    fn new() -> Self {
        ConvolutionWorkspace {
            planner: RealFftPlanner::new(),
            len: 0,
            signal: Vec::new(),
            spectrum: Vec::new(),
            scratch: Vec::new(),
        }
    }

    /// Rounds the autocorrelation of the indicator of `offsets` at lags
    /// `0..=span` and sums the squared coefficients.
    fn energy(&mut self, offsets: impl Iterator<Item = usize>, len: usize, span: usize, n: u64) -> Result<EnergyResult> {
        let forward = self.planner.plan_fft_forward(len);
        let inverse = self.planner.plan_fft_inverse(len);
        if self.len != len {
            self.len = len;
            self.signal = forward.make_input_vec();
            self.spectrum = forward.make_output_vec();
            let scratch = forward.get_scratch_len().max(inverse.get_scratch_len());
            self.scratch = vec![Complex::new(T::zero(), T::zero()); scratch];
        } else {
            self.signal.fill(T::zero());
        }
        for i in offsets {
            self.signal[i] = T::one();
        }
        forward
            .process_with_scratch(&mut self.signal, &mut self.spectrum, &mut self.scratch)
            .expect("buffer sizes come from the planner");
        for z in self.spectrum.iter_mut() {
            *z = Complex::new(z.norm_sqr(), T::zero());
        }
        inverse
            .process_with_scratch(&mut self.spectrum, &mut self.signal, &mut self.scratch)
            .expect("buffer sizes come from the planner");
        let scale = 1.0 / len as f64;
        let out = sum_rounded_squares(&self.signal[..=span], scale, n);
        if len > RETAINED_WORKSPACE_LEN {
            *self = Self::new();
        }
        out
    }
}

thread_local! {
    static WORKSPACE_F32: RefCell<ConvolutionWorkspace<f32>> = RefCell::new(ConvolutionWorkspace::new());
    static WORKSPACE_F64: RefCell<ConvolutionWorkspace<f64>> = RefCell::new(ConvolutionWorkspace::new());
}

/// Whether single precision provably keeps every coefficient well inside the
/// rounding tolerance: `16 eps log2(len) n^1.5 <= 0.05`.
fn single_precision_suffices(n: usize, len: usize) -> bool {
    let bound = 16.0 * f64::from(f32::EPSILON) * f64::from(len.trailing_zeros()) * (n as f64).powf(1.5);
    bound <= 0.05
}

/// Energy from the autocorrelation of the 0/1 indicator of `A - min(A)`,
/// computed by real FFT of length the next power of two `>= 2 (span + 1)`.
///
/// Small sets use a single-precision transform and retry in double precision
/// on a rounding failure. Every coefficient must lie within
/// [`ROUNDING_TOLERANCE`] of an integer; otherwise [`Error::RoundingResidual`]
/// tells the caller to fall back to the histogram backend.
pub fn energy_convolution(terms: &[u64], window_limit: u64) -> Result<EnergyResult> {
    check_increasing(terms)?;
    let base = terms[0];
    let span = terms[terms.len() - 1] - base;
    if span > window_limit {
        return Err(Error::WindowExceeded { span, limit: window_limit });
    }
    let span = span as usize;
    let len = (2 * (span + 1)).next_power_of_two();
    let n = terms.len() as u64;
    let offsets = || terms.iter().map(|&a| (a - base) as usize);
    if single_precision_suffices(terms.len(), len) {
        let single = WORKSPACE_F32.with(|ws| ws.borrow_mut().energy(offsets(), len, span, n));
        if single.is_ok() {
            return single;
        }
    }
    WORKSPACE_F64.with(|ws| ws.borrow_mut().energy(offsets(), len, span, n))
}

/// Rounds `scale * coeffs[lag]` and sums the squares, lag 0 once and the rest
/// twice. Works a chunk at a time so the inner loop vectorises; a chunk with a
/// bad coefficient is rescanned to report the first offending lag.
fn sum_rounded_squares<T: Copy + Into<f64>>(coeffs: &[T], scale: f64, n: u64) -> Result<EnergyResult> {
    // (c + 1.5 * 2^52) - 1.5 * 2^52 rounds to nearest for |c| < 2^51
    const ROUND: f64 = 6_755_399_441_055_744.0;
    // no true coefficient exceeds n; chunk sums of squares stay below 2^53
    let ceiling = n as f64 + ROUNDING_TOLERANCE;
    let chunk = ((1u64 << 53) / n.saturating_mul(n).max(1)).clamp(1, 1024) as usize;
    let mut value: u128 = 0;
    for (k, block) in coeffs.chunks(chunk).enumerate() {
        let mut worst = 0.0f64;
        let mut top = 0.0f64;
        let mut sum = 0.0f64;
        for &v in block {
            let c = v.into() * scale;
            let r = (c + ROUND) - ROUND;
            let residual = (c - r).abs();
            worst = if residual > worst { residual } else { worst };
            top = if c > top { c } else { top };
            sum += r * r;
        }
        if worst > ROUNDING_TOLERANCE || top > ceiling || !sum.is_finite() {
            return Err(first_bad_coefficient(block, scale, ceiling, k * chunk));
        }
        value += sum as u128;
    }
    let r0 = (coeffs[0].into() * scale + ROUND) - ROUND;
    value = 2 * value - (r0 * r0) as u128;
    Ok(EnergyResult { n, value, backend: EnergyBackend::Convolution })
}

fn first_bad_coefficient<T: Copy + Into<f64>>(block: &[T], scale: f64, ceiling: f64, first_lag: usize) -> Error {
    for (i, &v) in block.iter().enumerate() {
        let c = v.into() * scale;
        let residual = (c - c.round()).abs();
        if !(residual <= ROUNDING_TOLERANCE && c <= ceiling) {
            let residual = if c > ceiling { c - ceiling + ROUNDING_TOLERANCE } else { residual };
            return Error::RoundingResidual { lag: first_lag + i, residual };
        }
    }
    unreachable!("caller saw a bad coefficient in this block")
}

/// Convolution when the span fits the window (falling back on a rounding
/// failure), histogram otherwise.
pub fn energy_auto(terms: &[u64], budget: &EnergyBudget) -> Result<EnergyResult> {
    check_increasing(terms)?;
    let span = terms[terms.len() - 1] - terms[0];
    if span <= budget.window_limit {
        match energy_convolution(terms, budget.window_limit) {
            Err(Error::RoundingResidual { .. }) => {}
            other => return other,
        }
    }
    energy_by_differences(terms, budget)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnergyCheckpoint {
    #[serde(rename = "N")]
    pub n: usize,
    pub result: EnergyResult,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnergyProfile {
    pub checkpoints: Vec<EnergyCheckpoint>,
}

impl EnergyProfile {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("N,E,backend\n");
        for c in &self.checkpoints {
            out.push_str(&format!("{},{},{}\n", c.n, c.result.value, c.result.backend));
        }
        out
    }
}

/// Exact energies of the prefixes `a_1..a_N` at each checkpoint.
pub fn energy_profile(
    seq: &IntegerSequence,
    checkpoints: &[usize],
    budget: &EnergyBudget,
) -> Result<EnergyProfile> {
    crate::discrepancy::check_checkpoints(checkpoints, seq.len())?;
    let checkpoints = checkpoints
        .iter()
        .map(|&n| Ok(EnergyCheckpoint { n, result: energy_auto(&seq.terms[..n], budget)? }))
        .collect::<Result<_>>()?;
    Ok(EnergyProfile { checkpoints })
}

/// Slope of `ln E` against `ln N`; not clamped to `[2, 3]`.
pub fn kappa_fit(profile: &EnergyProfile) -> Result<ExponentFit> {
    let pts: Vec<(f64, f64)> = profile
        .checkpoints
        .iter()
        .map(|c| (c.n as f64, c.result.value as f64))
        .collect();
    fit_loglog(&pts)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RepresentationMethod {
    Divisor,
    Bruteforce,
}

/// `#{(x, y) in [1, N]^2 : f(x) - f(y) = a}` for `f` of degree `>= 2`,
/// strictly increasing on `[1, N]`.
///
/// `a = 0` is the diagonal and returns `N` for either method.
pub fn representation_count(
    poly: &IntPoly,
    range_n: u64,
    a: i128,
    method: RepresentationMethod,
) -> Result<u64> {
    if poly.degree().unwrap_or(0) < 2 {
        return Err(Error::InvalidParameter("polynomial must have degree >= 2".into()));
    }
    check_poly_increasing(poly, range_n)?;
    match method {
        RepresentationMethod::Bruteforce => Ok(count_by_pairs(poly, range_n, a)),
        RepresentationMethod::Divisor if a == 0 => Ok(range_n),
        RepresentationMethod::Divisor => count_by_divisors(poly, range_n, a),
    }
}

fn check_poly_increasing(poly: &IntPoly, range_n: u64) -> Result<()> {
    let n = i128::from(range_n);
    let mut prev = poly.eval(1).ok_or(Error::PolynomialNotIncreasing(range_n))?;
    for x in 2..=n {
        let v = poly.eval(x).ok_or(Error::PolynomialNotIncreasing(range_n))?;
        if v <= prev {
            return Err(Error::PolynomialNotIncreasing(range_n));
        }
        prev = v;
    }
    Ok(())
}

fn count_by_pairs(poly: &IntPoly, range_n: u64, a: i128) -> u64 {
    let vals: Vec<i128> = (1..=i128::from(range_n)).map(|x| poly.eval(x).unwrap()).collect();
    let mut count = 0;
    for &fx in &vals {
        for &fy in &vals {
            count += u64::from(fx - fy == a);
        }
    }
    count
}

/// For each divisor `t` of `a` with `|t| < N`, writes `f(x) - f(x - t) = t q(x, x - t)`
/// and counts integer roots of `q(x, x - t) = a / t` with `x, x - t` in range.
pub fn count_by_divisors(poly: &IntPoly, range_n: u64, a: i128) -> Result<u64> {
    if a == 0 {
        return Err(Error::ZeroDifference);
    }
    let degree = poly.degree().unwrap_or(0);
    let n = i128::from(range_n);
    let max_t = (n - 1).min(a.abs());
    let mut count = 0u64;
    for t_abs in 1..=max_t {
        if a % t_abs != 0 {
            continue;
        }
        for t in [t_abs, -t_abs] {
            let q = poly.difference_quotient_along(t)?;
            let target = a / t;
            let shifted = IntPoly::new(
                q.coeffs()
                    .iter()
                    .enumerate()
                    .map(|(i, &c)| if i == 0 { c - target } else { c }),
            );
            // x in [1, N] and y = x - t in [1, N]
            let lo = 1.max(1 + t);
            let hi = n.min(n + t);
            let roots = shifted.integer_roots(lo, hi);
            debug_assert!(roots.len() < degree);
            count += roots.len() as u64;
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn closed_form(n: u128) -> u128 {
        (2 * n * n * n + n) / 3
    }

    #[test]
    fn histogram_examples() {
        let h = difference_histogram(&[0, 1, 2, 4]).unwrap();
        assert_eq!(h.counts, vec![(0, 4), (1, 2), (2, 2), (3, 1), (4, 1)]);
        assert_eq!(h.total_pairs(), 16);
        assert_eq!(h.get(3), 1);
        assert_eq!(h.get(5), 0);
        assert_eq!(difference_histogram(&[5]).unwrap().counts, vec![(0, 1)]);
        assert_eq!(difference_histogram(&[0, 1]).unwrap().counts, vec![(0, 2), (1, 1)]);
        assert!(difference_histogram(&[2, 1]).is_err());
        assert!(difference_histogram(&[1, 1]).is_err());
    }

    #[test]
    fn sparse_histogram_path_agrees_with_dense() {
        let terms = [3, 10, 11, 50, 1000, 1001, 5000];
        let dense = difference_histogram(&terms).unwrap();
        let tight = EnergyBudget { dense_span_limit: 10, ..EnergyBudget::default() };
        let sparse = difference_histogram_with(&terms, &tight).unwrap();
        assert_eq!(dense, sparse);
        let tiny = EnergyBudget { dense_span_limit: 10, max_sorted_pairs: 5, ..EnergyBudget::default() };
        assert!(matches!(
            energy_by_differences(&terms, &tiny),
            Err(Error::HistogramBudgetExceeded { .. })
        ));
    }

    #[test]
    fn bruteforce_examples() {
        assert_eq!(energy_bruteforce(&[5]).unwrap().value, 1);
        assert_eq!(energy_bruteforce(&[1, 2]).unwrap().value, 6);
        assert_eq!(energy_bruteforce(&[0, 1, 2, 4]).unwrap().value, 36);
        let big: Vec<u64> = (0..65).collect();
        assert!(matches!(energy_bruteforce(&big), Err(Error::OracleCapExceeded { .. })));
    }

    #[test]
    fn histogram_energy_examples() {
        let h = DifferenceHistogram { n: 2, counts: vec![(0, 2), (1, 1)] };
        assert_eq!(energy_histogram(&h).value, 6);
        assert_eq!(energy_histogram(&difference_histogram(&[1, 2, 3]).unwrap()).value, 19);
        assert_eq!(energy_histogram(&DifferenceHistogram { n: 1, counts: vec![(0, 1)] }).value, 1);
    }

    #[test]
    fn convolution_examples() {
        assert_eq!(energy_convolution(&[0, 1, 2, 4], DEFAULT_WINDOW_LIMIT).unwrap().value, 36);
        let hundred: Vec<u64> = (1..=100).collect();
        assert_eq!(energy_convolution(&hundred, DEFAULT_WINDOW_LIMIT).unwrap().value, 666_700);
        assert_eq!(closed_form(100), 666_700);
        assert!(matches!(
            energy_convolution(&[0, (1 << 26) + 1], DEFAULT_WINDOW_LIMIT),
            Err(Error::WindowExceeded { .. })
        ));
        assert_eq!(energy_convolution(&[7], 0).unwrap().value, 1);
    }

    #[test]
    fn auto_falls_back_outside_window() {
        let terms = [0, 1, 1 << 30];
        let r = energy_auto(&terms, &EnergyBudget::default()).unwrap();
        assert_eq!(r.backend, EnergyBackend::Histogram);
        assert_eq!(r.value, energy_bruteforce(&terms).unwrap().value);
    }

    #[test]
    fn profile_examples() {
        use crate::sequences::{generate, SequenceSpec};
        let k = generate(&SequenceSpec::Kronecker {}, 3).unwrap();
        let p = energy_profile(&k, &[2, 3], &EnergyBudget::default()).unwrap();
        let vals: Vec<(usize, u128)> = p.checkpoints.iter().map(|c| (c.n, c.result.value)).collect();
        assert_eq!(vals, vec![(2, 6), (3, 19)]);
        assert_eq!(p.to_csv(), "N,E,backend\n2,6,convolution\n3,19,convolution\n");
        assert!(energy_profile(&k, &[4], &EnergyBudget::default()).is_err());

        let sq = generate(&SequenceSpec::FloorPower { c: 2.0 }, 4).unwrap();
        let p = energy_profile(&sq, &[2, 4], &EnergyBudget::default()).unwrap();
        for c in &p.checkpoints {
            assert_eq!(c.result.value, energy_bruteforce(&sq.terms[..c.n]).unwrap().value);
        }
        assert!(kappa_fit(&p).is_err());
    }

    #[test]
    fn representation_examples() {
        let sq = IntPoly::from_i64(&[0, 0, 1]);
        for method in [RepresentationMethod::Divisor, RepresentationMethod::Bruteforce] {
            assert_eq!(representation_count(&sq, 10, 3, method).unwrap(), 1);
            assert_eq!(representation_count(&sq, 10, 5, method).unwrap(), 1);
            assert_eq!(representation_count(&sq, 10, 4, method).unwrap(), 0);
            assert_eq!(representation_count(&sq, 10, -5, method).unwrap(), 1);
            assert_eq!(representation_count(&sq, 10, 0, method).unwrap(), 10);
        }
        // 15 = 4^2 - 1^2 = 8^2 - 7^2
        assert_eq!(representation_count(&sq, 10, 15, RepresentationMethod::Divisor).unwrap(), 2);
        assert!(matches!(count_by_divisors(&sq, 10, 0), Err(Error::ZeroDifference)));
        let lin = IntPoly::from_i64(&[0, 1]);
        assert!(representation_count(&lin, 10, 1, RepresentationMethod::Divisor).is_err());
        let bumpy = IntPoly::from_i64(&[0, -10, 1]);
        assert!(matches!(
            representation_count(&bumpy, 10, 1, RepresentationMethod::Bruteforce),
            Err(Error::PolynomialNotIncreasing(10))
        ));
    }

    #[test]
    fn both_precisions_match_histogram() {
        assert!(single_precision_suffices(64, 1 << 21));
        assert!(!single_precision_suffices(1000, 1 << 21));
        let small: Vec<u64> = (0..60u64).map(|i| i * i * 7 + i).collect();
        let large: Vec<u64> = (0..1000u64).map(|i| i * i + 3 * i).collect();
        for set in [small, large] {
            let c = energy_convolution(&set, DEFAULT_WINDOW_LIMIT).unwrap().value;
            let h = energy_by_differences(&set, &EnergyBudget::default()).unwrap().value;
            assert_eq!(c, h, "N = {}", set.len());
        }
    }
}

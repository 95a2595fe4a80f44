//! Star-discrepancy of fractional parts `{a_n x}`.
//!
//! `x` lives on the dyadic grid `X / 2^128`. For 64-bit `a_n` the product
//! `a_n X mod 2^128` is then the exact fractional part in fixed point, so
//! every point is known exactly before it is rounded to a double.

use std::fmt;
use std::str::FromStr;

use rand_core::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::harness::fit::{fit_loglog, ExponentFit};
use crate::sequences::IntegerSequence;
use crate::{Error, Result};

const TWO_POW_NEG_128: f64 = 1.0 / 340_282_366_920_938_463_463_374_607_431_768_211_456.0;

/// A real number `x = numerator / 2^128` in `[0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AlphaValue(pub u128);

impl AlphaValue {
    pub const ZERO: AlphaValue = AlphaValue(0);
    pub const HALF: AlphaValue = AlphaValue(1 << 127);

    /// Golden-ratio fraction `(sqrt 5 - 1) / 2` rounded down to the grid.
    pub const GOLDEN: AlphaValue = AlphaValue(0x9E37_79B9_7F4A_7C15_F39C_C060_5CED_C834);

    pub fn numerator(self) -> u128 {
        self.0
    }

    pub fn is_degenerate(self) -> bool {
        self.0 == 0
    }

    /// `p / q` rounded to the nearest grid point (ties away from zero).
    pub fn from_ratio(p: u128, q: u128) -> Result<Self> {
        if q == 0 || p >= q {
            return Err(Error::InvalidParameter(format!("{p}/{q} is not in [0, 1)")));
        }
        // floor(p * 2^128 / q) by long division, one bit at a time
        let mut rem = p;
        let mut quot: u128 = 0;
        for _ in 0..128 {
            let carry = rem >> 127;
            rem <<= 1;
            quot <<= 1;
            if carry == 1 || rem >= q {
                rem = rem.wrapping_sub(q);
                quot |= 1;
            }
        }
        // round half up on the remainder
        let round_up = rem >= q - rem;
        Ok(AlphaValue(quot.wrapping_add(u128::from(round_up))))
    }

    /// Nearest grid point to a double in `[0, 1)`.
    pub fn from_f64(x: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&x) {
            return Err(Error::PointOutOfRange(x));
        }
        let scaled = x / TWO_POW_NEG_128;
        // x < 1 so scaled < 2^128; values within half an ulp of 2^128 clamp
        Ok(AlphaValue(if scaled >= 2f64.powi(128) { u128::MAX } else { scaled as u128 }))
    }

    pub fn to_f64(self) -> f64 {
        fixed_to_unit(self.0)
    }

    /// `1 - x` on the grid (`0` maps to itself).
    pub fn reflect(self) -> Self {
        AlphaValue(self.0.wrapping_neg())
    }
}

impl fmt::Display for AlphaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0x{:032x}", self.0)
    }
}

impl FromStr for AlphaValue {
    type Err = Error;

    /// Accepts `0x<hex numerator>`, `p/q`, or a decimal double in `[0, 1)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidParameter(format!("cannot parse alpha from `{s}`"));
        if let Some(hex) = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
            return u128::from_str_radix(hex, 16).map(AlphaValue).map_err(|_| bad());
        }
        if let Some((p, q)) = s.split_once('/') {
            let p = p.trim().parse().map_err(|_| bad())?;
            let q = q.trim().parse().map_err(|_| bad())?;
            return AlphaValue::from_ratio(p, q);
        }
        AlphaValue::from_f64(s.parse().map_err(|_| bad())?)
    }
}

impl Serialize for AlphaValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for AlphaValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `{a x}` in 128-bit fixed point; exact.
#[inline]
pub fn fractional_part_fixed(a: u64, alpha: AlphaValue) -> u128 {
    u128::from(a).wrapping_mul(alpha.0)
}

/// Fixed-point fraction to the nearest double, kept strictly below 1.
#[inline]
pub fn fixed_to_unit(v: u128) -> f64 {
    let x = v as f64 * TWO_POW_NEG_128;
    if x < 1.0 {
        x
    } else {
        1.0 - f64::EPSILON / 2.0
    }
}

/// `{a_n x}` for each term, rounded to doubles (error at most half an ulp of
/// the result, and exactly representable values are exact).
pub fn fractional_parts(terms: &[u64], alpha: AlphaValue) -> Vec<f64> {
    terms
        .iter()
        .map(|&a| fixed_to_unit(fractional_part_fixed(a, alpha)))
        .collect()
}

/// Exact star-discrepancy `sup_{0 < b <= 1} |#{x_i < b}/N - b|`.
///
/// Uses the sorted-point formula `max_i max(i/N - x_(i), x_(i) - (i-1)/N)`;
/// duplicates need no special handling.
pub fn star_discrepancy(points: &[f64]) -> Result<f64> {
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    if let Some(&p) = points.iter().find(|p| !(0.0..1.0).contains(*p)) {
        return Err(Error::PointOutOfRange(p));
    }
    let mut sorted = points.to_vec();
    sorted.sort_unstable_by(f64::total_cmp);
    Ok(sorted_star_discrepancy(&sorted))
}

fn sorted_star_discrepancy(sorted: &[f64]) -> f64 {
    let n = sorted.len() as f64;
    sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let above = (i + 1) as f64 / n - x;
            let below = x - i as f64 / n;
            above.max(below)
        })
        .fold(0.0, f64::max)
}

/// Star-discrepancy of fixed-point fractions (sorted exactly, then rounded).
pub fn star_discrepancy_fixed(fractions: &[u128]) -> Result<f64> {
    if fractions.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut sorted = fractions.to_vec();
    sorted.sort_unstable();
    let unit: Vec<f64> = sorted.into_iter().map(fixed_to_unit).collect();
    Ok(sorted_star_discrepancy(&unit))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiscrepancyCheckpoint {
    pub n: usize,
    pub d_star: f64,
    /// `n * d_star`
    pub weighted: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscrepancyProfile {
    pub alpha: AlphaValue,
    pub checkpoints: Vec<DiscrepancyCheckpoint>,
}

impl DiscrepancyProfile {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("N,Dstar,NDstar\n");
        for c in &self.checkpoints {
            out.push_str(&format!("{},{},{}\n", c.n, c.d_star, c.weighted));
        }
        out
    }
}

pub(crate) fn check_checkpoints(checkpoints: &[usize], len: usize) -> Result<()> {
    if checkpoints.is_empty() || checkpoints[0] == 0 || checkpoints.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::BadCheckpoints);
    }
    let last = *checkpoints.last().unwrap();
    if last > len {
        return Err(Error::CheckpointOutOfRange { checkpoint: last, len });
    }
    Ok(())
}

/// `D_N*` of the first `N` points `{a_n x}` for each checkpoint `N`.
pub fn discrepancy_profile(
    seq: &IntegerSequence,
    alpha: AlphaValue,
    checkpoints: &[usize],
) -> Result<DiscrepancyProfile> {
    profile_of_terms(&seq.terms, alpha, checkpoints)
}

pub fn profile_of_terms(
    terms: &[u64],
    alpha: AlphaValue,
    checkpoints: &[usize],
) -> Result<DiscrepancyProfile> {
    check_checkpoints(checkpoints, terms.len())?;
    let last = *checkpoints.last().unwrap();
    let fractions: Vec<u128> = terms[..last]
        .iter()
        .map(|&a| fractional_part_fixed(a, alpha))
        .collect();
    let checkpoints = checkpoints
        .iter()
        .map(|&n| {
            let d_star = star_discrepancy_fixed(&fractions[..n])?;
            Ok(DiscrepancyCheckpoint { n, d_star, weighted: n as f64 * d_star })
        })
        .collect::<Result<_>>()?;
    Ok(DiscrepancyProfile { alpha, checkpoints })
}

/// Seeded source of grid values.
///
/// Each value takes two SplitMix64 outputs, high word first:
/// `X = (next_u64() << 64) | next_u64()`. Zero draws are discarded.
pub struct AlphaSampler {
    rng: SplitMix64,
}

impl AlphaSampler {
    pub fn new(seed: u64) -> Self {
        AlphaSampler { rng: SplitMix64::seed_from_u64(seed) }
    }

    pub fn next_alpha(&mut self) -> AlphaValue {
        loop {
            let hi = u128::from(self.rng.next_u64());
            let lo = u128::from(self.rng.next_u64());
            let x = (hi << 64) | lo;
            if x != 0 {
                return AlphaValue(x);
            }
        }
    }

    pub fn take(seed: u64, m: usize) -> Vec<AlphaValue> {
        let mut s = AlphaSampler::new(seed);
        (0..m).map(|_| s.next_alpha()).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MedianRow {
    pub n: usize,
    pub median: f64,
    pub q25: f64,
    pub q75: f64,
}

/// Per-checkpoint median and quartiles of `N D_N*` over sampled `x`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MedianProfile {
    pub rows: Vec<MedianRow>,
}

impl MedianProfile {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("N,median_NDstar,q25,q75\n");
        for r in &self.rows {
            out.push_str(&format!("{},{},{},{}\n", r.n, r.median, r.q25, r.q75));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricExperiment {
    pub alphas: Vec<AlphaValue>,
    pub profile: MedianProfile,
    /// Slope of `ln(median N D_N*)` against `ln N`.
    pub fit: ExponentFit,
}

/// Linear-interpolation quantile of sorted data (`q` in `[0, 1]`).
pub fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let i = pos.floor() as usize;
    let frac = pos - i as f64;
    match sorted.get(i + 1) {
        Some(&next) if frac > 0.0 => sorted[i] + frac * (next - sorted[i]),
        _ => sorted[i],
    }
}

/// Samples `alpha_count` values of `x` from `seed` and summarises `N D_N*`
/// across them at each checkpoint.
pub fn metric_experiment(
    seq: &IntegerSequence,
    alpha_count: usize,
    seed: u64,
    checkpoints: &[usize],
) -> Result<MetricExperiment> {
    if alpha_count < 3 {
        return Err(Error::InvalidParameter("need at least 3 alpha samples".into()));
    }
    if checkpoints.len() < 3 {
        return Err(Error::InvalidParameter("need at least 3 checkpoints".into()));
    }
    check_checkpoints(checkpoints, seq.len())?;
    let alphas = AlphaSampler::take(seed, alpha_count);

    let run = |&alpha: &AlphaValue| profile_of_terms(&seq.terms, alpha, checkpoints);
    #[cfg(feature = "parallel")]
    let profiles: Vec<DiscrepancyProfile> = {
        use rayon::prelude::*;
        alphas.par_iter().map(run).collect::<Result<_>>()?
    };
    #[cfg(not(feature = "parallel"))]
    let profiles: Vec<DiscrepancyProfile> = alphas.iter().map(run).collect::<Result<_>>()?;

    let rows: Vec<MedianRow> = checkpoints
        .iter()
        .enumerate()
        .map(|(j, &n)| {
            let mut w: Vec<f64> = profiles.iter().map(|p| p.checkpoints[j].weighted).collect();
            w.sort_unstable_by(f64::total_cmp);
            MedianRow {
                n,
                median: quantile_sorted(&w, 0.5),
                q25: quantile_sorted(&w, 0.25),
                q75: quantile_sorted(&w, 0.75),
            }
        })
        .collect();
    let fit = fit_loglog(&rows.iter().map(|r| (r.n as f64, r.median)).collect::<Vec<_>>())?;
    Ok(MetricExperiment { alphas, profile: MedianProfile { rows }, fit })
}

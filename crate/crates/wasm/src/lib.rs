//! Browser bindings for the demo page in `www/`.
//!
//! Each exported function takes plain strings and numbers and returns JSON.
//! The `*_json` functions hold the logic and are what the native tests call.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use energy_discrepancy::discrepancy::{discrepancy_profile, AlphaValue};
use energy_discrepancy::energy::{energy_auto, EnergyBudget};
use energy_discrepancy::expsum::exp_sum;
use energy_discrepancy::rudinshapiro::{rs_integers_below_pow2, rs_polynomial_eval};
use energy_discrepancy::sequences::{generate, SequenceSpec};

/// Largest `n` offered by the Rudin-Shapiro curve.
pub const MAX_CURVE_N: u32 = 14;
/// Largest number of `x` samples along the curve.
pub const MAX_CURVE_SAMPLES: usize = 4096;
/// Largest checkpoint accepted from the page.
pub const MAX_CHECKPOINT: usize = 1 << 16;

#[derive(Serialize)]
struct Point {
    x: f64,
    y: f64,
}

#[derive(Serialize)]
struct DiscrepancyPlot {
    alpha: String,
    points: Vec<Point>,
}

#[derive(Serialize)]
struct RsCurve {
    n: u32,
    /// `|rho_n(e(x))|` and `|Sigma(n)(x)|`, sampled at `x = j / samples`.
    rho: Vec<Point>,
    sigma: Vec<Point>,
    sqrt_block: f64,
}

#[derive(Serialize)]
struct EnergyPlot {
    kappa: f64,
    /// `(N, E / N^kappa)`.
    points: Vec<Point>,
    skipped: Vec<usize>,
}

fn parse_spec(spec: &str) -> Result<SequenceSpec, String> {
    let spec: SequenceSpec = serde_json::from_str(spec).map_err(|e| format!("bad spec: {e}"))?;
    spec.validate().map_err(|e| e.to_string())?;
    Ok(spec)
}

fn parse_checkpoints(list: &str) -> Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for tok in list.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let n: usize = match tok.strip_prefix("2^") {
            Some(k) => k.parse::<u32>().ok().and_then(|k| 1usize.checked_shl(k)),
            None => tok.parse().ok(),
        }
        .ok_or(format!("bad checkpoint `{tok}`"))?;
        if n == 0 || n > MAX_CHECKPOINT {
            return Err(format!("checkpoints must lie in 1..={MAX_CHECKPOINT}"));
        }
        out.push(n);
    }
    if out.is_empty() || out.windows(2).any(|w| w[0] >= w[1]) {
        return Err("checkpoints must be strictly increasing".into());
    }
    Ok(out)
}

fn json<T: Serialize>(v: &T) -> Result<String, String> {
    serde_json::to_string(v).map_err(|e| e.to_string())
}

/// `N D_N*` of `({a_n x})` at each checkpoint.
pub fn discrepancy_json(spec: &str, alpha: &str, checkpoints: &str) -> Result<String, String> {
    let spec = parse_spec(spec)?;
    let alpha: AlphaValue = alpha.trim().parse().map_err(|e: energy_discrepancy::Error| e.to_string())?;
    let cps = parse_checkpoints(checkpoints)?;
    let seq = generate(&spec, *cps.last().unwrap()).map_err(|e| e.to_string())?;
    let profile = discrepancy_profile(&seq, alpha, &cps).map_err(|e| e.to_string())?;
    json(&DiscrepancyPlot {
        alpha: alpha.to_string(),
        points: profile.checkpoints.iter().map(|c| Point { x: c.n as f64, y: c.weighted }).collect(),
    })
}

/// `|rho_n|` and `|Sigma(n)|` over `x in [0, 1)`.
pub fn rs_curve_json(n: u32, samples: usize) -> Result<String, String> {
    if n > MAX_CURVE_N {
        return Err(format!("n must be at most {MAX_CURVE_N}"));
    }
    if !(2..=MAX_CURVE_SAMPLES).contains(&samples) {
        return Err(format!("samples must lie in 2..={MAX_CURVE_SAMPLES}"));
    }
    let block = rs_integers_below_pow2(n);
    let mut rho = Vec::with_capacity(samples);
    let mut sigma = Vec::with_capacity(samples);
    for j in 0..samples {
        let alpha = AlphaValue::from_ratio(j as u128, samples as u128).map_err(|e| e.to_string())?;
        let x = j as f64 / samples as f64;
        rho.push(Point { x, y: rs_polynomial_eval(n, alpha).map_err(|e| e.to_string())?.norm() });
        sigma.push(Point { x, y: exp_sum(&block, alpha).norm() });
    }
    json(&RsCurve { n, rho, sigma, sqrt_block: 2f64.powf(f64::from(n) / 2.0) })
}

/// `E(A_N) / N^kappa` at each checkpoint; checkpoints over budget are listed as skipped.
pub fn energy_json(spec: &str, checkpoints: &str, kappa: f64) -> Result<String, String> {
    if !(kappa.is_finite() && (0.0..=4.0).contains(&kappa)) {
        return Err("kappa must lie in [0, 4]".into());
    }
    let spec = parse_spec(spec)?;
    let cps = parse_checkpoints(checkpoints)?;
    let seq = generate(&spec, *cps.last().unwrap()).map_err(|e| e.to_string())?;
    let budget = EnergyBudget { window_limit: 1 << 22, dense_span_limit: 1 << 24, max_sorted_pairs: 1 << 24 };
    let mut points = Vec::new();
    let mut skipped = Vec::new();
    for &n in &cps {
        match energy_auto(&seq.terms[..n], &budget) {
            Ok(e) => points.push(Point { x: n as f64, y: e.value as f64 / (n as f64).powf(kappa) }),
            Err(e) if e.is_budget() => skipped.push(n),
            Err(e) => return Err(e.to_string()),
        }
    }
    json(&EnergyPlot { kappa, points, skipped })
}

#[wasm_bindgen]
pub fn discrepancy_plot(spec: &str, alpha: &str, checkpoints: &str) -> Result<String, JsValue> {
    discrepancy_json(spec, alpha, checkpoints).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn rs_curve(n: u32, samples: usize) -> Result<String, JsValue> {
    rs_curve_json(n, samples).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn energy_plot(spec: &str, checkpoints: &str, kappa: f64) -> Result<String, JsValue> {
    energy_json(spec, checkpoints, kappa).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    const KRONECKER: &str = r#"{"family":"kronecker","params":{}}"#;

    fn parse(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn discrepancy_points() {
        let v = parse(&discrepancy_json(KRONECKER, "1/3", "1,2,10").unwrap());
        let pts = v["points"].as_array().unwrap();
        assert_eq!(pts.len(), 3);
        assert!((pts[0]["y"].as_f64().unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert!((pts[2]["y"].as_f64().unwrap() - 10.0 / 3.0).abs() < 1e-12);
        assert!(discrepancy_json(KRONECKER, "nonsense", "1,2").is_err());
        assert!(discrepancy_json("{}", "1/3", "1,2").is_err());
    }

    #[test]
    fn rs_curve_values() {
        let v = parse(&rs_curve_json(3, 8).unwrap());
        let rho = v["rho"].as_array().unwrap();
        let sigma = v["sigma"].as_array().unwrap();
        assert_eq!(rho.len(), 8);
        // x = 0: rho_3(1) = 4, Sigma(3) counts the 6 integers below 8
        assert_eq!(rho[0]["y"].as_f64().unwrap(), 4.0);
        assert_eq!(sigma[0]["y"].as_f64().unwrap(), 6.0);
        for p in rho {
            // |rho_n|^2 <= 2^(n+1)
            assert!(p["y"].as_f64().unwrap() <= 4.0 + 1e-12);
        }
        assert!(rs_curve_json(MAX_CURVE_N + 1, 8).is_err());
        assert!(rs_curve_json(3, 1).is_err());
    }

    #[test]
    fn energy_normalised() {
        let v = parse(&energy_json(KRONECKER, "3,10,100", 3.0).unwrap());
        let pts = v["points"].as_array().unwrap();
        assert!((pts[0]["y"].as_f64().unwrap() - 19.0 / 27.0).abs() < 1e-15);
        assert!((pts[2]["y"].as_f64().unwrap() - 0.6667).abs() < 1e-12);
        assert!(energy_json(KRONECKER, "10,3", 3.0).is_err());
        assert!(energy_json(KRONECKER, "3,10", f64::NAN).is_err());
    }

    #[test]
    fn energy_budget_skips() {
        let squares = r#"{"family":"polynomial","params":{"coefficients":[0,0,1]}}"#;
        let v = parse(&energy_json(squares, "2^8,2^12,2^13", 2.0).unwrap());
        assert_eq!(v["points"].as_array().unwrap().len(), 2);
        assert_eq!(v["skipped"], serde_json::json!([8192]));
    }
}

//! Browser bindings: expected h-vector curves, a sampled algebra with its
//! verdicts, and the log-concavity witness.

use wasm_bindgen::prelude::*;

use randalg::closed_form::{expected_vector_er, expected_vector_level, logconcavity_witness_f};
use randalg::hilbert::hilbert_function;
use randalg::models::{sample_er_ideal, sample_level_socle, Cap, ErConfig, LevelConfig, Regime};
use randalg::wlp::{has_wlp, WlpOptions};
use serde_json::json;

fn js_err(e: impl std::fmt::Display) -> JsError {
    JsError::new(&e.to_string())
}

fn parse_regime(model: &str) -> Result<Option<Regime>, JsError> {
    match model {
        "level" => Ok(None),
        other => other.parse().map(Some).map_err(js_err),
    }
}

/// Expected h-vector as a JSON array. `model` is `level` or an ER regime
/// name (`raw`, `var-powers`, `max-power`).
#[wasm_bindgen]
pub fn expected_curve(model: &str, n: usize, degree: usize, p: f64, cap_d_plus_one: bool) -> Result<String, JsError> {
    let cap = if cap_d_plus_one { Cap::DegreePlusOne } else { Cap::Degree };
    let v = match parse_regime(model)? {
        None => expected_vector_level(n, degree, p).map_err(js_err)?,
        Some(regime) => {
            let c = cap.exponent(degree);
            let top = match regime {
                Regime::Raw => 2 * degree,
                Regime::VarPowers => n * (c - 1),
                Regime::MaxPower => c - 1,
            };
            expected_vector_er(n, degree, p, regime, cap, top).map_err(js_err)?
        }
    };
    serde_json::to_string(v.values()).map_err(js_err)
}

/// One draw from stream `stream`, with its h-vector, shape statistics and
/// WLP verdict, as JSON.
#[wasm_bindgen]
pub fn sample_and_analyze(
    model: &str,
    n: usize,
    degree: usize,
    p: f64,
    cap_d_plus_one: bool,
    seed: u32,
    stream: u32,
) -> Result<String, JsError> {
    let cap = if cap_d_plus_one { Cap::DegreePlusOne } else { Cap::Degree };
    let ideal = match parse_regime(model)? {
        None => {
            let mut cfg = LevelConfig::bernoulli(n, degree, p, seed.into());
            cfg.condition_nonempty = p > 0.0;
            let draw = sample_level_socle(&cfg, stream.into()).map_err(js_err)?;
            if draw.socle.is_empty() {
                return Ok(json!({ "empty": true }).to_string());
            }
            draw.socle.annihilator().map_err(js_err)?
        }
        Some(regime) => {
            let cfg = ErConfig {
                nvars: n,
                max_degree: degree,
                p,
                regime,
                cap,
                seed: seed.into(),
            };
            sample_er_ideal(&cfg, stream.into()).map_err(js_err)?
        }
    };
    let gens = ideal.to_json().generators;
    if !ideal.is_artinian() {
        return Ok(json!({ "generators": gens, "artinian": false }).to_string());
    }
    let h = hilbert_function(&ideal).map_err(js_err)?;
    let opts = WlpOptions {
        exact_limit: Some(150),
        ..WlpOptions::default()
    };
    let verdict = has_wlp(&ideal, &opts).map_err(js_err)?;
    Ok(json!({
        "generators": gens,
        "artinian": true,
        "h": h.values(),
        "unimodal": h.is_unimodal(),
        "peaks": h.count_peaks(),
        "log_concave": h.is_log_concave(),
        "wlp": verdict.has_wlp,
        "tier": verdict.tier.name(),
        "ranks": verdict.records.iter().map(|r| [r.dim_source, r.dim_target, r.rank]).collect::<Vec<_>>(),
    })
    .to_string())
}

/// `f(x)` on `points + 1` evenly spaced values of `x` in `[0, 1]`.
#[wasm_bindgen]
pub fn witness_curve(m: u32, k: u32, points: usize) -> Vec<f64> {
    let points = points.max(1);
    (0..=points)
        .map(|i| logconcavity_witness_f(i as f64 / points as f64, m.into(), k.into()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witness_nonnegative() {
        assert!(witness_curve(2, 3, 50).iter().all(|&y| y >= -1e-12));
    }

    #[test]
    fn curves_are_json() {
        let s = expected_curve("level", 2, 3, 0.5, true).unwrap();
        let v: Vec<f64> = serde_json::from_str(&s).unwrap();
        assert_eq!(v.len(), 4);
        assert!((v[1] - 1.75).abs() < 1e-12);
        let s = expected_curve("var-powers", 3, 4, 0.1, false).unwrap();
        let v: Vec<f64> = serde_json::from_str(&s).unwrap();
        assert_eq!(v.len(), 10);
    }

    #[test]
    fn analyze_full_socle() {
        let s = sample_and_analyze("level", 3, 3, 1.0, true, 1, 0).unwrap();
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["wlp"], true);
        assert_eq!(v["h"], json!([1, 3, 6, 10]));
    }
}

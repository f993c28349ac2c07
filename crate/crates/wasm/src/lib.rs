//! wasm-bindgen bindings for the static page in `www/`. Everything crosses the
//! boundary as JSON text.

use freecurve::generator::table1::{admissible_cases, random_factor_spec};
use freecurve::generator::{table1_curve, CurveCertificate};
use freecurve::grid::{count_components, count_hred, enumerate_maximal_segments, hred};
use freecurve::syzygy::solve_abc;
use freecurve::verify::checks::{run_checks, Check};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use wasm_bindgen::prelude::*;

const MAX_GRID: u32 = 40;
const MAX_DEGREE: u32 = 9;

pub fn grid_json(n: u32) -> Result<String, String> {
    if n > MAX_GRID {
        return Err(format!("n is capped at {MAX_GRID} in the browser"));
    }
    let (per, total) = count_hred(n).map_err(|e| e.to_string())?;
    let segments: Vec<_> = hred(n)
        .map_err(|e| e.to_string())?
        .into_iter()
        .map(|s| {
            let (p, q) = s.extremes();
            json!({"from": p.0, "to": q.0, "points": s.len(), "abc": solve_abc(&s).ok()})
        })
        .collect();
    Ok(json!({
        "n": n,
        "components": count_components(n).map_err(|e| e.to_string())?,
        "maximal_segments": enumerate_maximal_segments(n).map_err(|e| e.to_string())?.len(),
        "hred": {"total": total, "per_pair": per, "listed": segments.len()},
        "segments": segments,
    })
    .to_string())
}

pub fn cases_json(n: u32) -> Result<String, String> {
    if !(4..=MAX_DEGREE).contains(&n) {
        return Err(format!("degree must be in 4..={MAX_DEGREE}"));
    }
    let cases: Vec<_> = admissible_cases(n).into_iter().map(|(row, i)| json!({"row": row, "i": i})).collect();
    Ok(json!(cases).to_string())
}

pub fn generate_json(n: u32, row: u8, i: u32, seed: u64) -> Result<String, String> {
    if !(4..=MAX_DEGREE).contains(&n) {
        return Err(format!("degree must be in 4..={MAX_DEGREE}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spec = random_factor_spec(row, i, n, &mut rng).map_err(|e| e.to_string())?;
    let cert = table1_curve(&spec, n, true).map_err(|e| e.to_string())?;
    serde_json::to_string_pretty(&cert).map_err(|e| e.to_string())
}

pub fn verify_json(certificate: &str, checks: &str) -> Result<String, String> {
    let cert: CurveCertificate = serde_json::from_str(certificate).map_err(|e| format!("not a certificate: {e}"))?;
    if cert.n > MAX_DEGREE {
        return Err(format!("degree is capped at {MAX_DEGREE} in the browser"));
    }
    let checks = Check::parse_list(checks).map_err(|e| e.to_string())?;
    let v = run_checks(&cert, &checks);
    serde_json::to_string_pretty(&v).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn grid(n: u32) -> Result<String, JsError> {
    grid_json(n).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn cases(n: u32) -> Result<String, JsError> {
    cases_json(n).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn generate(n: u32, row: u8, i: u32, seed: u32) -> Result<String, JsError> {
    generate_json(n, row, i, seed as u64).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn verify(certificate: &str, checks: &str) -> Result<String, JsError> {
    verify_json(certificate, checks).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    #[test]
    fn grid_at_four() {
        let v: Value = serde_json::from_str(&grid_json(4).unwrap()).unwrap();
        assert_eq!(v["hred"]["total"], 24);
        assert_eq!(v["segments"].as_array().unwrap().len(), 24);
        assert!(grid_json(3).is_err());
    }

    #[test]
    fn generate_then_verify() {
        let cases: Value = serde_json::from_str(&cases_json(5).unwrap()).unwrap();
        let first = &cases[0];
        let cert = generate_json(5, first["row"].as_u64().unwrap() as u8, first["i"].as_u64().unwrap() as u32, 3)
            .unwrap();
        let v: Value = serde_json::from_str(&verify_json(&cert, "syzygy,curl,route").unwrap()).unwrap();
        assert_eq!(v["first_failure"], Value::Null);
        let broken = cert.replacen("\"g\": \"", "\"g\": \"x^5 + ", 1);
        let v: Value = serde_json::from_str(&verify_json(&broken, "syzygy").unwrap()).unwrap();
        assert_eq!(v["first_failure"], "syzygy");
        assert!(verify_json("{}", "syzygy").is_err());
        assert!(cases_json(12).is_err());
    }
}

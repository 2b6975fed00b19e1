//! WebAssembly bindings behind `www/index.html`.
//!
//! Everything crosses the boundary as strings or `f64` arrays so the same
//! functions run natively in tests.

use serde_json::json;
use wasm_bindgen::prelude::*;

use qset_core::hfs::Hfs;
use qset_core::interchange::element_to_json;
use qset_core::palev::contraction_residual;
use qset_core::syntax::{parse_element, print_canonical};

const EXPLORER_MAX_SERIAL: u32 = 4095;
const DEMO_RANK_LIMIT: u32 = 5;
const CURVE_MAX_J: u32 = 400;

/// JSON rows `{serial, rank, grade, set}` for serials `from..=to`.
#[wasm_bindgen]
pub fn serial_table(from: u32, to: u32) -> Result<String, String> {
    if from > to || to > EXPLORER_MAX_SERIAL {
        return Err(format!("choose 0 ≤ from ≤ to ≤ {EXPLORER_MAX_SERIAL}"));
    }
    let rows: Vec<_> = (from..=to)
        .map(|n| {
            let x = Hfs::from_serial_u64(n as u64);
            json!({ "serial": n, "rank": x.rank(), "grade": x.grade(), "set": x.to_string() })
        })
        .collect();
    Ok(serde_json::Value::from(rows).to_string())
}

/// Canonical form, rank, grade operator image and interchange JSON of an
/// expression such as `{1} ^ {{1}} + 1/2*e5`.
#[wasm_bindgen]
pub fn evaluate(expr: &str) -> Result<String, String> {
    let a = parse_element(expr, DEMO_RANK_LIMIT).map_err(|e| e.to_string())?;
    let serials: Vec<String> = a
        .terms()
        .rev()
        .map(|(m, _)| m.as_hfs().small_serial().map_or_else(|| "…".to_string(), |s| s.to_string()))
        .collect();
    Ok(json!({
        "canonical": print_canonical(&a),
        "rank": a.rank(),
        "terms": a.len(),
        "serials": serials,
        "grade": print_canonical(&a.grade_op()),
        "iota": a.iota_guarded(DEMO_RANK_LIMIT).map(|x| print_canonical(&x)).unwrap_or_else(|e| e.to_string()),
        "json": element_to_json(&a).map_err(|e| e.to_string())?,
    })
    .to_string())
}

/// Residuals `[j_0, r_0, j_1, r_1, …]` for `j = max(k, 1) ..= j_max`.
#[wasm_bindgen]
pub fn contraction_curve(k: u32, j_max: u32) -> Result<Vec<f64>, String> {
    if j_max > CURVE_MAX_J {
        return Err(format!("j_max is limited to {CURVE_MAX_J}"));
    }
    let mut out = Vec::new();
    for j in k.max(1)..=j_max {
        let r = contraction_residual(j as u64, k as u64).map_err(|e| e.to_string())?;
        out.push(j as f64);
        out.push(r);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_rows() {
        let rows: serde_json::Value = serde_json::from_str(&serial_table(0, 6).unwrap()).unwrap();
        assert_eq!(rows[6]["set"], "{{{1}},{1}}");
        assert_eq!(rows[3]["rank"], 2);
        assert!(serial_table(5, 4).is_err());
        assert!(serial_table(0, 5000).is_err());
    }

    #[test]
    fn evaluates_expressions() {
        let v: serde_json::Value = serde_json::from_str(&evaluate("{1} ^ {{1}}").unwrap()).unwrap();
        assert_eq!(v["canonical"], "-{{1},1}");
        assert_eq!(v["serials"][0], "3");
        assert_eq!(v["grade"], "-2*{{1},1}");
        assert!(evaluate("{1").unwrap_err().contains("byte"));
    }

    #[test]
    fn curve_follows_k_over_j() {
        let c = contraction_curve(2, 16).unwrap();
        assert_eq!(c.len(), 2 * 15);
        for pair in c.chunks(2) {
            assert!((pair[1] - 2.0 / pair[0]).abs() < 1e-12);
        }
        assert!(contraction_curve(1, 1000).is_err());
    }
}

//! Browser bindings for the engine: expression normalization, projector
//! entries, and the Berry-curvature field behind the Chern number.
//!
//! Build with `wasm-pack build --target web crates/ncsphere-wasm` and serve
//! `crates/ncsphere-wasm/www/` next to the generated `pkg/` directory.
//! The `imp` module is plain Rust so the logic also runs (and is tested)
//! off-wasm.

use wasm_bindgen::prelude::*;

mod imp {
    use ncsphere::bundle::{self, Projector};
    use ncsphere::expr::{parse_expr, print_expr};

    pub fn normalize(input: &str) -> Result<String, String> {
        parse_expr(input)
            .map(|e| print_expr(&e))
            .map_err(|e| e.to_string())
    }

    pub fn normalize_details(input: &str) -> Result<String, String> {
        let e = parse_expr(input).map_err(|e| e.to_string())?;
        let components: Vec<serde_json::Value> = e
            .degree_decompose()
            .into_iter()
            .map(|(d, comp)| serde_json::json!({ "degree": d, "text": print_expr(&comp) }))
            .collect();
        let value = serde_json::json!({
            "normal_form": print_expr(&e),
            "coinvariant": e.is_coinvariant(),
            "components": components,
        });
        Ok(value.to_string())
    }

    pub fn projector_details(charge: i64) -> String {
        let p = Projector::new(charge);
        let report = bundle::verify_projector(charge);
        serde_json::json!({
            "charge": charge,
            "size": p.size(),
            "entries": p.entries_in_base_alphabet(),
            "verified": report.passed(),
        })
        .to_string()
    }

    pub fn chern(charge: i64, grid: u32) -> Result<f64, String> {
        bundle::chern_number(charge, grid).map_err(|e| e.to_string())
    }

    pub fn curvature_field(charge: i64, grid: u32) -> Result<Vec<f64>, String> {
        bundle::curvature_field(charge, grid).map_err(|e| e.to_string())
    }
}

/// Normalize an expression; returns the canonical text form.
#[wasm_bindgen]
pub fn normalize(input: &str) -> Result<String, JsValue> {
    imp::normalize(input).map_err(|e| JsValue::from_str(&e))
}

/// Normalize an expression and describe it: canonical form, degree
/// components, and whether it lies in the base subalgebra. JSON-encoded.
#[wasm_bindgen]
pub fn normalize_details(input: &str) -> Result<String, JsValue> {
    imp::normalize_details(input).map_err(|e| JsValue::from_str(&e))
}

/// The charge-`n` projector: entries over the base alphabet plus the exact
/// verification verdict. JSON-encoded.
#[wasm_bindgen]
pub fn projector_details(charge: i32) -> String {
    imp::projector_details(charge as i64)
}

/// First Chern number of the charge-`n` projector on a `grid x grid` mesh.
#[wasm_bindgen]
pub fn chern(charge: i32, grid: u32) -> Result<f64, JsValue> {
    imp::chern(charge as i64, grid).map_err(|e| JsValue::from_str(&e))
}

/// Berry-curvature density at the cell midpoints of a `grid x grid` mesh,
/// row-major in `theta` (0..pi) then `psi` (0..2pi); the quadrature of this
/// field is the Chern number.
#[wasm_bindgen]
pub fn curvature_field(charge: i32, grid: u32) -> Result<Vec<f64>, JsValue> {
    imp::curvature_field(charge as i64, grid).map_err(|e| JsValue::from_str(&e))
}

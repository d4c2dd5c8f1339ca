//! Browser bindings for three operations. Each returns plain text so the page
//! needs no framework; the inner functions are ordinary Rust and tested natively.

use wasm_bindgen::prelude::*;

use hilbtaut::rroch::{self, SurfaceModel};
use hilbtaut::symrep;
use hilbtaut::toeplitz::{self, ToeplitzSpec};

fn parse_class(s: &str) -> Result<Vec<i64>, String> {
    s.split(',').map(|x| x.trim().parse::<i64>().map_err(|e| format!("bad class '{s}': {e}"))).collect()
}

/// One line `n<TAB>chi` for each `n` in `1..=n_max`.
pub fn chi_table_text(surface: &str, n_max: usize, k: usize, l: &str, a: &str) -> Result<String, String> {
    let s = SurfaceModel::builtin(surface).map_err(|e| e.to_string())?;
    let (l, a) = (parse_class(l)?, parse_class(a)?);
    let mut out = String::new();
    for n in 1..=n_max {
        let chi = rroch::chi_sym_power(&s, n, k, &l, &a).map_err(|e| e.to_string())?;
        out.push_str(&format!("{n}\t{chi}\n"));
    }
    Ok(out)
}

/// Determinant of `T_even(n,m)` (`even`) or `T_odd(n,m)`.
pub fn toeplitz_det_text(even: bool, n: usize, m: usize) -> Result<String, String> {
    let spec = if even { ToeplitzSpec::Even { n, m } } else { ToeplitzSpec::Odd { n, m } };
    let matrix = toeplitz::build(spec).map_err(|e| e.to_string())?;
    toeplitz::det_exact(&matrix).map(|d| d.to_string()).map_err(|e| e.to_string())
}

/// Anti-invariant series for the standard (or permutation) representation.
pub fn reps_series_text(k: usize, permutation: bool) -> Result<String, String> {
    let series = if permutation { symrep::antiinv_dims_r(k) } else { symrep::antiinv_dims_rho(k) };
    series.map(|s| s.to_string()).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn chi_table(surface: &str, n_max: usize, k: usize, l: &str, a: &str) -> Result<String, JsValue> {
    chi_table_text(surface, n_max, k, l, a).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn toeplitz_det(even: bool, n: usize, m: usize) -> Result<String, JsValue> {
    toeplitz_det_text(even, n, m).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn reps_series(k: usize, permutation: bool) -> Result<String, JsValue> {
    reps_series_text(k, permutation).map_err(|e| JsValue::from_str(&e))
}

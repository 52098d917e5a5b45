//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Every export takes a family as JSON, e.g. `{"kind":"hamming","N":3,"q":2}`
//! or `{"kind":"custom","b":[3,2,1],"c":[1,2,3]}`, and returns JSON.

use num_complex::Complex64;
use serde::Deserialize;
use serde_json::json;
use spinsolve::families;
use spinsolve::solver::{self, t_profile};
use spinsolve::{Family, IntersectionArray, SchemeInstance, SolverConfig};
use wasm_bindgen::prelude::*;

#[derive(Deserialize)]
#[serde(untagged)]
enum Input {
    Custom { b: Vec<f64>, c: Vec<f64> },
    Named(Family),
}

fn scheme(input: &str) -> Result<SchemeInstance, String> {
    let cfg = SolverConfig::default();
    let parsed: Input = serde_json::from_str(input).map_err(|e| format!("bad family: {e}"))?;
    let built = match parsed {
        Input::Custom { b, c } => families::build_custom(IntersectionArray::from_parts(b, c, None), &cfg),
        Input::Named(f) => families::build(f, &cfg),
    };
    built.map_err(|e| e.to_string())
}

/// Solution set for a family.
pub fn solve_json(input: &str) -> Result<String, String> {
    let s = scheme(input)?;
    let set = solver::solve(&s, &SolverConfig::default()).map_err(|e| e.to_string())?;
    serde_json::to_string(&set).map_err(|e| e.to_string())
}

/// Array, eigenvalues and eigenmatrix.
pub fn describe_json(input: &str) -> Result<String, String> {
    let s = scheme(input)?;
    serde_json::to_string(&s).map_err(|e| e.to_string())
}

/// `|t_i(x) t_i(1/x) - 1|` for `i = 0..=N` at the point `x = re + im i`.
/// A solution needs every entry to vanish.
pub fn reciprocity_json(input: &str, re: f64, im: f64) -> Result<String, String> {
    let s = scheme(input)?;
    let x = Complex64::new(re, im);
    if x.norm() == 0.0 {
        return Err("x must be nonzero".into());
    }
    let t = t_profile(s.array(), s.eigenvalues(), x);
    let u = t_profile(s.array(), s.eigenvalues(), x.inv());
    let defect: Vec<f64> = t.iter().zip(&u).map(|(a, b)| (a * b - 1.0).norm()).collect();
    Ok(json!({ "x": [re, im], "defect": defect }).to_string())
}

fn js(r: Result<String, String>) -> Result<String, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn solve(input: &str) -> Result<String, JsValue> {
    js(solve_json(input))
}

#[wasm_bindgen]
pub fn describe(input: &str) -> Result<String, JsValue> {
    js(describe_json(input))
}

#[wasm_bindgen]
pub fn reciprocity(input: &str, re: f64, im: f64) -> Result<String, JsValue> {
    js(reciprocity_json(input, re, im))
}

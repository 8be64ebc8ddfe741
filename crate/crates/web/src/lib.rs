//! Browser bindings for the universal cycle demo page.
//!
//! Every export returns a JSON string; the pure functions in [`demo`] build the
//! JSON and are what the native tests exercise.

use wasm_bindgen::prelude::*;

pub mod demo;

fn to_js(r: Result<String, String>) -> Result<String, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

/// Step-by-step walk of the cycle for order `n`.
#[wasm_bindgen]
pub fn cycle_walk(n: usize, method: &str) -> Result<String, JsValue> {
    to_js(demo::cycle_walk(n, method))
}

#[wasm_bindgen]
pub fn rank_of(perm: &str) -> Result<String, JsValue> {
    to_js(demo::rank_of(perm))
}

#[wasm_bindgen]
pub fn unrank_at(n: usize, rank: &str) -> Result<String, JsValue> {
    to_js(demo::unrank_at(n, rank))
}

/// Windows of the flattened permutation list read at each offset.
#[wasm_bindgen]
pub fn offset_table(n: usize) -> Result<String, JsValue> {
    to_js(demo::offset_table(n))
}

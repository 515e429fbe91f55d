//! WebAssembly bindings for the browser demo in `www/`.

pub mod demo;

use wasm_bindgen::prelude::*;

fn js(e: String) -> JsValue {
    JsValue::from_str(&e)
}

/// RGBA pixels (`n × n × 4` bytes) of the adjacency matrix of a variant.
#[wasm_bindgen]
pub fn adjacency_rgba(nu: usize, variant: &str) -> Result<Vec<u8>, JsValue> {
    demo::adjacency_rgba(nu, variant).map_err(js)
}

/// JSON: order, strong regularity, cells in drawing order and the switch.
#[wasm_bindgen]
pub fn graph_summary(nu: usize, variant: &str) -> Result<String, JsValue> {
    demo::summary_json(nu, variant).map_err(js)
}

#[wasm_bindgen]
pub fn neighbour_table(nu: usize, variant: &str) -> Result<String, JsValue> {
    demo::neighbour_table_json(nu, variant).map_err(js)
}

#[wasm_bindgen]
pub fn scan_minima(nu: usize, seed: u64) -> Result<String, JsValue> {
    demo::scan_minima_json(nu, seed).map_err(js)
}

//! Browser bindings for the demo page in `www/`.
//!
//! Each exported function takes and returns plain strings (graph text in,
//! JSON out) so the page needs no generated type glue. The `*_json`
//! functions hold the logic and are testable off the browser.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use fasd::decompose3::decompose3;
use fasd::fasd::{fasd_exact, FasdValue};
use fasd::generators as gen;
use fasd::io::{parse_digraph, write_digraph};
use fasd::Digraph;

/// Largest node budget a page request may ask for.
pub const MAX_BUDGET: u64 = 20_000_000;

fn arcs_json(d: &Digraph) -> Value {
    json!({ "n": d.n(), "arcs": d.arcs() })
}

/// Graph text for one of the demo families.
pub fn generate_text(family: &str, n: usize, seed: u64) -> Result<String, String> {
    let d = match family {
        "cycle" => gen::directed_cycle(n),
        "tournament" => gen::rotational_tournament(n),
        "degree4" => Ok(gen::random_orgraph(n, 4, 3, seed)),
        "two-regular" => gen::random_two_regular_orgraph(n, false, seed),
        "degree3-girth5" => Ok(gen::random_orgraph(n, 3, 5, seed)),
        "dg" => gen::gadget_dg(n),
        "h5" => Ok(gen::gadget_h5()),
        other => return Err(format!("unknown family `{other}`")),
    }
    .map_err(|e| e.to_string())?;
    Ok(write_digraph(&d))
}

/// Three orderings and the arc class (0, 1 or 2) of each arc.
pub fn decompose_json(text: &str) -> Result<Value, String> {
    let d = parse_digraph(text).map_err(|e| e.to_string())?;
    let dec = decompose3(&d).map_err(|e| e.to_string())?;
    let mut colors = vec![0usize; d.arc_count()];
    for (i, class) in dec.classes.iter().enumerate() {
        for &a in class {
            colors[a] = i;
        }
    }
    let sizes: Vec<usize> = dec.classes.iter().map(Vec::len).collect();
    Ok(json!({ "graph": arcs_json(&d), "colors": colors, "class_sizes": sizes, "orderings": dec.triple.orders() }))
}

/// `fasd` with a witness coloring when one was found.
pub fn fasd_json(text: &str, budget: u64) -> Result<Value, String> {
    let d = parse_digraph(text).map_err(|e| e.to_string())?;
    if d.arc_count() > 64 {
        return Err(format!("{} arcs; the page handles at most 64", d.arc_count()));
    }
    let cert = fasd_exact(&d, budget.min(MAX_BUDGET)).map_err(|e| e.to_string())?;
    let value = match cert.value {
        FasdValue::Exact(v) => json!(v),
        FasdValue::Infinite => json!("infinite (acyclic)"),
        FasdValue::Bracket { lo, hi } => json!(format!("between {lo} and {hi} (budget ran out)")),
    };
    let colors = cert.witness.as_ref().map(|w| w.colors.clone());
    Ok(json!({ "graph": arcs_json(&d), "value": value, "colors": colors, "girth": d.girth().finite() }))
}

fn to_js(r: Result<Value, String>) -> Result<String, JsError> {
    r.map(|v| v.to_string()).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn generate(family: &str, n: usize, seed: u64) -> Result<String, JsError> {
    generate_text(family, n, seed).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn decompose(text: &str) -> Result<String, JsError> {
    to_js(decompose_json(text))
}

#[wasm_bindgen]
pub fn fasd(text: &str, budget: u64) -> Result<String, JsError> {
    to_js(fasd_json(text, budget))
}

//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Every export returns a JSON string `{"ok": true, ...}` or
//! `{"ok": false, "error": "..."}` so the page never has to catch.

use eqcoh_core::analysis::{analyze, kernel_module, validate, AnalysisOptions, GroupDiagram};
use eqcoh_core::diagram::{bundled, parse_diagram, BUNDLED};
use eqcoh_core::graded::hilbert_series_ring;
use eqcoh_core::mvkernel::DEFAULT_SEED;
use eqcoh_core::report::render_text;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest truncation the page offers; keeps each call well under a second.
pub const MAX_DEGREE_LIMIT: u32 = 60;

fn failure(e: impl ToString) -> String {
    json!({ "ok": false, "error": e.to_string() }).to_string()
}

fn check_degree(max_degree: u32) -> Result<(), String> {
    if max_degree % 2 == 1 {
        return Err(format!("truncation degree must be even, got {max_degree}"));
    }
    if max_degree > MAX_DEGREE_LIMIT {
        return Err(format!("truncation degree is capped at {MAX_DEGREE_LIMIT} in the browser"));
    }
    Ok(())
}

/// Names and contents of the bundled diagram files.
#[wasm_bindgen]
pub fn bundled_diagrams() -> String {
    let list: Vec<Value> = BUNDLED
        .iter()
        .map(|(name, text)| json!({ "name": name, "text": text }))
        .collect();
    json!({ "ok": true, "diagrams": list }).to_string()
}

/// Full analysis of diagram-file text: the structured report plus its text
/// rendering.
#[wasm_bindgen]
pub fn analyze_diagram(text: &str, max_degree: u32, seed: u32) -> String {
    let run = || -> Result<Value, String> {
        check_degree(max_degree)?;
        let file = parse_diagram(text).map_err(|e| e.to_string())?;
        let opts = AnalysisOptions {
            max_degree,
            seed: u64::from(seed),
            hsop: file.options.hsop.clone(),
            oracle: false,
            skip_kernel: false,
        };
        let report = analyze(&file.diagram, &opts).map_err(|e| e.to_string())?;
        Ok(json!({
            "ok": true,
            "text": render_text(&report),
            "report": report,
        }))
    };
    run().map_or_else(failure, |v| v.to_string())
}

/// Slice dimensions of the kernel and of the three rings around it, for the
/// degree profile chart.
#[wasm_bindgen]
pub fn slice_profile(text: &str, max_degree: u32) -> String {
    let run = || -> Result<Value, String> {
        check_degree(max_degree)?;
        let file = parse_diagram(text).map_err(|e| e.to_string())?;
        let v = validate(&file.diagram).map_err(|e| e.to_string())?;
        let km = kernel_module(&v, max_degree).map_err(|e| e.to_string())?;
        let s = km.setup();
        let even = |hs: Vec<u64>| -> Vec<u64> { hs.into_iter().step_by(2).collect() };
        let freeness = km.free_basis_search();
        let hs = km.hilbert_series(&freeness);
        Ok(json!({
            "ok": true,
            "degrees": (0..=max_degree).step_by(2).collect::<Vec<u32>>(),
            "kernel": km.slices().iter().map(|x| x.dim()).collect::<Vec<usize>>(),
            "left": even(hilbert_series_ring(&s.left, max_degree).truncated),
            "right": even(hilbert_series_ring(&s.right, max_degree).truncated),
            "bottom": even(hilbert_series_ring(&s.bottom, max_degree).truncated),
            "closed_form": hs.closed_form.map(|c| c.to_string()),
            "freeness": freeness.label(),
        }))
    };
    run().map_or_else(failure, |v| v.to_string())
}

/// The join of the Poincaré sphere with `S^n` as diagram-file text.
#[wasm_bindgen]
pub fn example_diagram(n: u32) -> String {
    match bundled(&format!("example_n{n}.diagram")) {
        Some(text) => json!({ "ok": true, "text": text }).to_string(),
        None if (1..=12).contains(&n) => {
            let d = GroupDiagram::poincare_join(n);
            let file = eqcoh_core::diagram::DiagramFile {
                diagram: d,
                options: Default::default(),
            };
            json!({ "ok": true, "text": eqcoh_core::diagram::render_diagram(&file) }).to_string()
        }
        None => failure(format!("n must be between 1 and 12, got {n}")),
    }
}

/// Seed used when the page does not set one.
#[wasm_bindgen]
pub fn default_seed() -> u32 {
    DEFAULT_SEED as u32
}

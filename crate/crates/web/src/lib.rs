//! Browser bindings. Every entry point takes and returns JSON strings; errors
//! come back as `{"error": "..."}`.

use gpnet_core::generators::{attach_labeling, GraphSpec, LabelingScheme};
use gpnet_core::geodesy::verify_general_position;
use gpnet_core::io::GraphJson;
use gpnet_core::monotone::{check_monotone_geodesic_labeling, LABEL_CHECK_VERTEX_LIMIT};
use gpnet_core::solver::{max_general_position, SolveOptions};
use gpnet_core::{all_pairs_distances, Graph, Vertex};
use serde::Serialize;
use serde_json::json;
use wasm_bindgen::prelude::wasm_bindgen;

/// Largest patch the page will build.
pub const MAX_VERTICES: usize = 400;

type Reply = Result<serde_json::Value, String>;

fn build(spec: &str) -> Result<Graph, String> {
    let g = spec
        .parse::<GraphSpec>()
        .and_then(|s| s.build())
        .map_err(|e| e.to_string())?;
    if g.n() > MAX_VERTICES {
        return Err(format!(
            "{} has {} vertices; the demo allows {MAX_VERTICES}",
            g.name(),
            g.n()
        ));
    }
    Ok(g)
}

fn ids(set_json: &str) -> Result<Vec<Vertex>, String> {
    serde_json::from_str(set_json)
        .map_err(|e| format!("vertex set must be a JSON array of ids: {e}"))
}

fn finish(reply: Reply) -> String {
    match reply {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

fn value(x: impl Serialize) -> serde_json::Value {
    serde_json::to_value(x).expect("reply serializes")
}

pub fn graph(spec: &str) -> Reply {
    let g = build(spec)?;
    Ok(value(GraphJson::from(&g)))
}

/// Maximum general position set containing `forced`.
pub fn solve(spec: &str, forced_json: &str, node_limit: u64) -> Reply {
    let g = build(spec)?;
    let d = all_pairs_distances(&g);
    let opts = SolveOptions {
        forced: ids(forced_json)?,
        node_limit: (node_limit > 0).then_some(node_limit),
        ..Default::default()
    };
    let r = max_general_position(&g, &d, &opts).map_err(|e| e.to_string())?;
    Ok(value(r))
}

pub fn verify(spec: &str, set_json: &str) -> Reply {
    let g = build(spec)?;
    let set = ids(set_json)?;
    if set.is_empty() {
        return Ok(
            json!({ "verdict": "general_position", "violating_triple": null, "separation_k": null }),
        );
    }
    let cert =
        verify_general_position(&all_pairs_distances(&g), &set).map_err(|e| e.to_string())?;
    Ok(value(cert))
}

/// `scheme` is `natural` or `rotated`.
pub fn label_check(spec: &str, scheme: &str) -> Reply {
    let scheme: LabelingScheme = scheme
        .parse()
        .map_err(|e: gpnet_core::Error| e.to_string())?;
    let g = attach_labeling(&build(spec)?, scheme).map_err(|e| e.to_string())?;
    let d = all_pairs_distances(&g);
    let labels = g.labels().expect("labeling attached");
    let cert = check_monotone_geodesic_labeling(&g, &d, labels, LABEL_CHECK_VERTEX_LIMIT)
        .map_err(|e| e.to_string())?;
    let mut out = value(&cert);
    out["labels"] = value(labels.to_points());
    Ok(out)
}

#[wasm_bindgen(js_name = graph)]
pub fn graph_js(spec: &str) -> String {
    finish(graph(spec))
}

#[wasm_bindgen(js_name = solve)]
pub fn solve_js(spec: &str, forced_json: &str, node_limit: u64) -> String {
    finish(solve(spec, forced_json, node_limit))
}

#[wasm_bindgen(js_name = verify)]
pub fn verify_js(spec: &str, set_json: &str) -> String {
    finish(verify(spec, set_json))
}

#[wasm_bindgen(js_name = labelCheck)]
pub fn label_check_js(spec: &str, scheme: &str) -> String {
    finish(label_check(spec, scheme))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_with_forced_corner() {
        let r = solve("cartesian:5x5", "[0]", 0).unwrap();
        assert_eq!(r["size"], 3);
        assert_eq!(r["status"], "optimal");
        assert!(r["witness"].as_array().unwrap().contains(&json!(0)));
    }

    #[test]
    fn verify_clicked_sets() {
        assert_eq!(
            verify("cartesian:6x6", "[0,1,2]").unwrap()["verdict"],
            "violated"
        );
        assert_eq!(
            verify("torus:7x7", "[0,9,18,27,29,38,47]").unwrap()["verdict"],
            "general_position"
        );
        assert_eq!(
            verify("cartesian:3x3", "[]").unwrap()["verdict"],
            "general_position"
        );
    }

    #[test]
    fn labeling_verdicts() {
        assert_eq!(
            label_check("strong:6x6", "rotated").unwrap()["verdict"],
            "monotone_geodesic"
        );
        assert_eq!(
            label_check("strong:6x6", "natural").unwrap()["verdict"],
            "violated"
        );
    }

    #[test]
    fn errors_become_json() {
        let text = solve_js("cartesian:30x30", "[]", 0);
        assert!(text.contains("error"), "{text}");
        assert!(verify_js("bogus", "[]").contains("error"));
        assert!(verify_js("path:3", "[0, 9]").contains("error"));
        assert!(label_check_js("cartesian:3x3", "sideways").contains("error"));
    }

    #[test]
    fn graph_reply_has_labels() {
        let g = graph("triangular:3x3").unwrap();
        assert_eq!(g["n"], 9);
        assert_eq!(g["labels"][8], json!([2, 2]));
    }
}

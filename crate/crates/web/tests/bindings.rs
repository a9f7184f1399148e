use eqcoh_web::{analyze_diagram, bundled_diagrams, default_seed, example_diagram, slice_profile};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

fn n2() -> String {
    parse(example_diagram(2))["text"].as_str().unwrap().to_string()
}

#[test]
fn analyze_even_example() {
    let r = parse(analyze_diagram(&n2(), 40, default_seed()));
    assert_eq!(r["ok"], true);
    assert_eq!(r["report"]["kernel"]["freeness"]["basis_degrees"], serde_json::json!([0, 6]));
    assert!(r["text"].as_str().unwrap().contains("hilbert: (1 + t^6) / (1-t^4)^2"));
}

#[test]
fn profile_matches_dimension_identity() {
    let p = parse(slice_profile(&n2(), 20));
    assert_eq!(p["ok"], true);
    let get = |k: &str| -> Vec<i64> { p[k].as_array().unwrap().iter().map(|v| v.as_i64().unwrap()).collect() };
    let (k, l, r, b) = (get("kernel"), get("left"), get("right"), get("bottom"));
    assert_eq!(k.len(), 11);
    for i in 0..k.len() {
        assert_eq!(k[i] + b[i], l[i] + r[i]);
    }
    assert_eq!(&k[..5], &[1, 0, 2, 1, 3]);
    assert_eq!(p["closed_form"], "(1 + t^6) / (1-t^4)^2");
}

#[test]
fn errors_are_reported_as_json() {
    let r = parse(analyze_diagram("[diagram]\nG = SO(3)\n", 10, 1));
    assert_eq!(r["ok"], false);
    assert!(r["error"].as_str().unwrap().contains("missing key"));
    let r = parse(slice_profile(&n2(), 7));
    assert_eq!(r["ok"], false);
    let r = parse(analyze_diagram(&n2(), 80, 1));
    assert!(r["error"].as_str().unwrap().contains("capped"));
    let eq = parse(bundled_diagrams())["diagrams"]
        .as_array()
        .unwrap()
        .iter()
        .find(|d| d["name"] == "equal_rank.diagram")
        .unwrap()["text"]
        .as_str()
        .unwrap()
        .to_string();
    assert_eq!(parse(slice_profile(&eq, 10))["ok"], false);
    assert_eq!(parse(analyze_diagram(&eq, 10, 1))["ok"], true);
}

#[test]
fn examples_beyond_bundled_files() {
    let r = parse(example_diagram(6));
    assert!(r["text"].as_str().unwrap().contains("G = SU(2) x SO(7)"));
    assert_eq!(parse(example_diagram(0))["ok"], false);
    assert_eq!(parse(bundled_diagrams())["diagrams"].as_array().unwrap().len(), 8);
}

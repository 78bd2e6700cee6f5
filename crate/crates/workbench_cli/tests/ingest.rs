mod common;

use chart_core::{BiDegree, Chart};
use common::*;
use workbench::ingest;

#[test]
fn shipped_fixture_loads_cleanly() {
    let fx = fixture();
    assert!(fx.warnings.is_empty(), "{:?}", fx.warnings);
    assert_eq!(fx.table2.rows.len(), 15);
    assert_eq!(fx.chains.len(), 14);
    assert_eq!(fx.families.records.len(), 22);
    for name in ["KO", "TMF", "TMF0(3)"] {
        assert!(fx.chart(name).is_some(), "{name}");
    }
}

#[test]
fn relation_without_provenance_is_a_load_error() {
    let s = Scratch::new("noprov");
    s.edit("relations.json", |t| t.replacen(r#""synthetic": false, "provenance": "ass-sphere"}"#, r#""synthetic": false}"#, 1));
    let err = ingest(&s.0).unwrap_err();
    assert_eq!(err.file, "relations.json");
    assert!(err.line.is_some(), "{err}");
    assert!(err.message.contains("provenance"), "{err}");
}

#[test]
fn dangling_chart_reference_is_a_load_error() {
    let s = Scratch::new("dangling");
    s.edit("table2.json", |t| t.replacen("\"TMF\"", "\"TMF1\"", 1));
    let err = ingest(&s.0).unwrap_err();
    assert_eq!(err.file, "table2.json");
}

#[test]
fn malformed_json_names_the_line() {
    let s = Scratch::new("schema");
    s.edit("families.json", |t| t.replacen("\"count\"", "\"count\" ::", 1));
    let err = ingest(&s.0).unwrap_err();
    assert_eq!(err.file, "families.json");
    assert!(err.line.unwrap() > 1, "{err}");
}

#[test]
fn the_23_d5_has_consistent_arithmetic() {
    let fx = fixture();
    let d = fx.tmf.differentials.iter().find(|d| d.source == BiDegree::new(24, 0)).unwrap();
    assert_eq!(d.page, 5);
    assert_eq!(d.target, BiDegree::new(23, 5));
    assert_eq!((d.source.stem - 1, d.source.filtration + d.page as i64), (d.target.stem, d.target.filtration));
}

#[test]
fn broken_d5_arithmetic_is_a_load_error() {
    let s = Scratch::new("arith");
    let text = std::fs::read_to_string(s.path("charts/tmf.json")).unwrap();
    let mut chart: Chart = Chart::from_json(&text).unwrap();
    let d = chart.differentials.iter_mut().find(|d| d.source == BiDegree::new(24, 0)).unwrap();
    d.target = BiDegree::new(23, 6);
    std::fs::write(s.path("charts/tmf.json"), chart.to_json()).unwrap();
    let err = ingest(&s.0).unwrap_err();
    assert!(err.file.ends_with("tmf.json"), "{err}");
}

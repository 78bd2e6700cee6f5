mod common;

use chart_core::{Chart, Window};
use common::*;
use workbench::{render_chart, RenderError, RenderOptions};

fn window(s: (i64, i64), f: (i64, i64)) -> RenderOptions {
    RenderOptions { window: Some(Window::new(s, f)), ..Default::default() }
}

#[test]
fn ko_window_dots_and_arrows() {
    let fx = fixture();
    let svg = render_chart(&fx.ko, &window((0, 8), (0, 4))).unwrap();
    assert_eq!(svg.matches("<circle").count(), 11);
    assert_eq!(svg.matches(r#"class="arrow d3""#).count(), 2);
    assert!(svg.contains(r#"data-at="3,3""#));
    // d3 hits eta^3 and eta^4
    assert!(svg.contains(r#"data-at="3,3" data-label="eta^3" data-kill-page="3""#));
    assert_eq!(svg.matches("tau-torsion").count(), 2);
}

#[test]
fn empty_chart_is_an_empty_grid() {
    let c = Chart::new("empty", Window::new((0, 4), (0, 2)));
    let svg = render_chart(&c, &RenderOptions::default()).unwrap();
    assert!(svg.starts_with("<svg"));
    assert!(svg.contains(r#"class="grid""#));
    assert_eq!(svg.matches("<circle").count(), 0);
    assert_eq!(svg.matches("class=\"arrow").count(), 0);
}

#[test]
fn tmf_20_27_shows_h2g() {
    let fx = fixture();
    let svg = render_chart(&fx.tmf, &window((20, 27), (0, 10))).unwrap();
    let dot = svg.lines().find(|l| l.contains(r#"data-label="h2g""#)).expect("h2g dot");
    assert!(dot.contains(r#"data-at="23,5""#), "{dot}");
    assert!(svg.contains(r#"class="arrow d5""#));
}

#[test]
fn full_tmf_window_asks_for_a_split() {
    let fx = fixture();
    match render_chart(&fx.tmf, &RenderOptions::default()) {
        Err(RenderError::TooLarge { stems, suggestion, .. }) => {
            assert_eq!(stems, 201);
            assert!(suggestion.starts_with("stems 0..95, 96..191"), "{suggestion}");
        }
        other => panic!("{other:?}"),
    }
    assert_eq!(render_chart(&fx.tmf, &window((5, 4), (0, 1))), Err(RenderError::EmptyWindow));
}

#[test]
fn rendering_is_deterministic() {
    let fx = fixture();
    for (c, w) in [(&fx.ko, window((0, 8), (0, 4))), (&fx.tmf, window((40, 80), (0, 20)))] {
        assert_eq!(render_chart(c, &w).unwrap(), render_chart(c, &w).unwrap());
    }
    let mut shuffled = fx.ko.clone();
    shuffled.cells.reverse();
    shuffled.differentials.reverse();
    let w = window((0, 8), (0, 4));
    assert_eq!(render_chart(&shuffled, &w).unwrap(), render_chart(&fx.ko, &w).unwrap());
}

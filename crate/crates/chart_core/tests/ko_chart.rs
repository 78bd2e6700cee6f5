use chart_core::{
    min_kill_page, multiply, tau_power_nonzero, turn_page, validate, BiDegree, Chart, ChartError, Differential,
    Generator, Invariants, Page, ProductValue, ViolationKind,
};

fn ko() -> Chart {
    Chart::from_json(include_str!("../../../fixtures/charts/ko.json")).unwrap()
}

fn b(s: i64, f: i64) -> BiDegree {
    BiDegree::new(s, f)
}

#[test]
fn ko_validates() {
    let rep = validate(&ko());
    assert!(rep.pass(), "{rep}");
}

#[test]
fn e4_keeps_u4_and_kills_eta3() {
    let c = ko();
    let e4 = turn_page(&c, 4).unwrap();
    assert_eq!(e4.page, 4);
    let g = &e4.cell(b(8, 0)).unwrap().group;
    assert_eq!(g.invariants(Some(2)), Invariants { torsion: vec![], free_rank: 1 });
    assert!(e4.cell(b(3, 3)).is_none_or(|c| c.group.is_trivial(Some(2))));
    assert!(e4.cell(b(4, 4)).is_none());
    // 2u^2 survives the d3 on u^2
    assert_eq!(e4.cell(b(4, 0)).unwrap().group.names(), vec!["2*u^2".to_string()]);
    assert!(e4.cell(b(5, 1)).is_none());
}

#[test]
fn turning_twice_is_turning_once() {
    let c = ko();
    for r in 2..=4 {
        let once = turn_page(&c, r).unwrap();
        assert_eq!(turn_page(&once, r).unwrap(), once, "page {r}");
    }
}

#[test]
fn no_differentials_means_no_change() {
    let mut c = ko();
    c.differentials.clear();
    for r in 2..=4 {
        let t = turn_page(&c, r).unwrap();
        assert_eq!(t.cells, c.cells);
        assert_eq!(t.products, c.products);
    }
}

#[test]
fn kill_pages() {
    let c = ko();
    assert_eq!(min_kill_page(&c, b(3, 3), &[1]).unwrap(), Page::Finite(3));
    assert_eq!(min_kill_page(&c, b(8, 0), &[1]).unwrap(), Page::Infinite);
    assert!(tau_power_nonzero(&c, b(3, 3), &[1], 1).unwrap());
    assert!(!tau_power_nonzero(&c, b(3, 3), &[1], 2).unwrap());
    assert!(matches!(min_kill_page(&c, b(3, 3), &[2]), Err(ChartError::Domain(_))));
    let mut open = c.clone();
    open.max_page = None;
    assert!(matches!(min_kill_page(&open, b(3, 3), &[1]), Err(ChartError::Domain(_))));
}

#[test]
fn products() {
    let c = ko();
    match multiply(&c, "eta", "eta^2").unwrap() {
        ProductValue::Value { at, element, tau } => {
            assert_eq!((at, element, tau), (b(3, 3), vec![1], 0));
        }
        other => panic!("{other:?}"),
    }
    // reversed lookup picks up the sign (-1)^{1*2}
    assert!(matches!(multiply(&c, "eta^2", "eta").unwrap(), ProductValue::Value { .. }));
    assert_eq!(multiply(&c, "eta^2", "eta^2").unwrap(), ProductValue::Undeclared);
    assert!(matches!(multiply(&c, "u^4", "u^2"), Err(ChartError::Window(_))));
    assert!(matches!(multiply(&c, "nope", "eta"), Err(ChartError::UnknownGenerator(_))));
}

#[test]
fn bad_arithmetic_is_reported() {
    let mut c = ko();
    c.differentials[0].target = b(3, 2);
    let rep = validate(&c);
    assert!(rep.has(ViolationKind::Arithmetic), "{rep}");
}

#[test]
fn odd_total_degree_breaks_parity() {
    let mut c = ko();
    c.add_cell(chart_core::Cell::new(b(3, 2), vec![Generator::new("x", 2)]));
    let rep = validate(&c);
    assert!(rep.has(ViolationKind::Parity), "{rep}");
    let mut c = ko();
    c.max_page = Some(4);
    c.differentials.push(Differential::new(2, b(6, 2), vec![]));
    assert!(validate(&c).has(ViolationKind::Parity));
}

#[test]
fn every_even_differential_is_odd_page() {
    let c = ko();
    assert!(c.differentials.iter().all(|d| d.page % 2 == 1));
}

#[test]
fn leibniz_is_checked() {
    let mut bad = ko();
    // u^2 * eta = 0 contradicts d3(u^2 eta) = eta^4 = d3(u^2) eta
    for p in bad.products.iter_mut().filter(|p| p.left == "u^2" && p.right == "eta") {
        p.result.clear();
    }
    let rep = validate(&bad);
    assert!(rep.has(ViolationKind::Leibniz), "{rep}");
}

#[test]
fn json_round_trip() {
    let c = ko();
    assert_eq!(Chart::from_json(&c.to_json()).unwrap(), c);
}

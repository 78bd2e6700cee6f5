mod common;

use chart_core::{validate, Page, SyntheticClass};
use common::*;
use spectral_maps::{delete_differential_check, ChartMap, RefusalKind};

#[test]
fn fixtures_validate() {
    for c in [tmf(), tmf03()] {
        let rep = validate(&c);
        assert!(rep.pass(), "{}: {rep}", c.name);
    }
    qp3().check().unwrap();
}

#[test]
fn every_row_certifies_and_is_detected() {
    let f = qp3();
    let t = table2();
    assert_eq!(t.rows.len(), 15);
    for row in &t.rows {
        let v = row.check(&f).unwrap();
        let c = v.certificate().unwrap_or_else(|| panic!("row {}: {:?}", row.degree, v.refusal()));
        assert_eq!(c.page, row.page);
        assert_eq!(c.witness.source, row.source_at(&f.source).unwrap());
        assert!(c.detected, "row {}: {:?}", row.degree, c.below);
        assert!(!c.witness.image_a0.iter().all(|&x| x == 0));
    }
}

#[test]
fn row_23_both_signs() {
    let f = qp3();
    let x = &f.source;
    let at = b(23, 5);
    for e in [1, -1, 3] {
        let cls = SyntheticClass::of(x, at, vec![e]).unwrap();
        assert_eq!(cls.kill_page, Page::Finite(5));
        let v = delete_differential_check(&cls, 5, &f).unwrap();
        assert!(v.is_certificate(), "{e}");
    }
}

#[test]
fn row_119_coset() {
    let f = qp3();
    let row = table2().row(119).unwrap().clone();
    let v = row.check(&f).unwrap();
    let w = &v.certificate().unwrap().witness;
    assert_eq!(w.a0[0].rem_euclid(4), 2);
    assert_eq!(w.kernel, vec![vec![4]]);
}

#[test]
fn rows_with_a_multiple_of_delta_as_source() {
    let f = qp3();
    let t = table2();
    for (deg, a0_mod, k) in [(143, 4, 4), (167, 8, 8)] {
        let v = t.row(deg).unwrap().check(&f).unwrap();
        let w = &v.certificate().unwrap().witness;
        assert_eq!(w.a0[0].rem_euclid(a0_mod), a0_mod / 2, "{deg}");
        assert_eq!(w.kernel, vec![vec![k]], "{deg}");
    }
}

#[test]
fn row_48_needs_more_than_tau_4() {
    let mut spec = qp3_spec();
    for c in spec.components.iter_mut().filter(|c| c.tau_level.is_some()) {
        c.tau_level = Some(4);
    }
    let f = ChartMap::from_spec(&spec, &tmf(), &tmf03()).unwrap();
    let v = table2().row(48).unwrap().check(&f).unwrap();
    let r = v.refusal().unwrap();
    assert_eq!(r.kind, RefusalKind::TauLevel);
    assert!(r.detail.contains("tau^8"), "{}", r.detail);
    // the d5 rows only need tau^4
    assert!(table2().row(47).unwrap().check(&f).unwrap().is_certificate());
}

#[test]
fn printed_row_143_fails() {
    let f = qp3();
    let mut row = table2().row(143).unwrap().clone();
    row.page = row.printed_page.unwrap();
    let v = row.check(&f).unwrap();
    assert_eq!(v.refusal().unwrap().kind, RefusalKind::NotABoundary);
}

#[test]
fn discrepancies_are_exactly_143_and_145() {
    let x = tmf();
    let all: Vec<_> = table2().rows.iter().flat_map(|r| r.discrepancies(&x).unwrap()).collect();
    let keys: Vec<_> = all.iter().map(|d| (d.degree, d.field)).collect();
    assert_eq!(keys, vec![(143, "page"), (145, "filtration")]);
    assert_eq!(all[1].printed, "23");
    assert_eq!(all[1].actual, "25");
}

#[test]
fn page_is_close_to_target_filtration() {
    let x = tmf();
    for row in &table2().rows {
        let t = row.target_at(&x).unwrap();
        let r = i64::from(row.page);
        assert!(t.filtration - 2 <= r && r <= t.filtration, "row {}", row.degree);
        assert!(r <= t.filtration + 2);
    }
}

#[test]
fn killing_the_source_image_refuses() {
    let mut spec = qp3_spec();
    for c in spec.components.iter_mut().filter(|c| c.at == b(24, 0)) {
        c.matrix = vec![vec![0]];
    }
    let f = ChartMap::from_spec(&spec, &tmf(), &tmf03()).unwrap();
    let v = table2().row(23).unwrap().check(&f).unwrap();
    assert_eq!(v.refusal().unwrap().kind, RefusalKind::CosetMeetsKernel);
}

#[test]
fn image_in_the_kernel_direction_refuses() {
    // f(Delta^2) = 2 would make f(2 Delta^2) = 4 = f(4 Delta^2)
    let mut spec = qp3_spec();
    for c in spec.components.iter_mut().filter(|c| c.at == b(48, 0)) {
        c.matrix = vec![vec![0]];
    }
    let f = ChartMap::from_spec(&spec, &tmf(), &tmf03()).unwrap();
    assert!(!table2().row(47).unwrap().check(&f).unwrap().is_certificate());
}

#[test]
fn other_refusals() {
    let f = qp3();
    let x = &f.source;
    let cls = SyntheticClass::of(x, b(47, 5), vec![2]).unwrap();
    let v = delete_differential_check(&cls, 7, &f).unwrap();
    assert_eq!(v.refusal().unwrap().kind, RefusalKind::KilledEarlier);

    let zero = SyntheticClass {
        bidegree: b(47, 5),
        element: vec![4],
        kill_page: Page::Infinite,
        support_page: Page::Infinite,
    };
    let v = delete_differential_check(&zero, 5, &f).unwrap();
    assert_eq!(v.refusal().unwrap().kind, RefusalKind::ZeroOnE2);
}

#[test]
fn missing_component_is_reported() {
    let mut spec = qp3_spec();
    spec.components.retain(|c| c.at != b(23, 5));
    let f = ChartMap::from_spec(&spec, &tmf(), &tmf03()).unwrap();
    assert!(table2().row(23).unwrap().check(&f).is_err());
}

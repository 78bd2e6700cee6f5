mod common;

use chart_core::{Invariants, SyntheticClass};
use common::*;
use spectral_maps::{
    build_fiber_chart, delete_differential_check, ChartMap, Emptiness, FiberGroup, MapError, RefusalKind,
};

fn z(n: u64) -> Invariants {
    Invariants { torsion: vec![n], free_rank: 0 }
}

#[test]
fn psi3_is_a_map_of_charts() {
    let f = psi3();
    assert_eq!(f.components.len(), 11);
    f.check_differentials().unwrap();
}

#[test]
fn fiber_has_z8_boundary_at_3_1() {
    let f = psi3();
    let fib = build_fiber_chart(&f, f.source.window).unwrap();
    assert_eq!(fib.group_at(b(3, 1)), Some(FiberGroup::Known(z(8))));
    let cell = fib.chart.cell(b(3, 1)).unwrap();
    assert_eq!(cell.group.names(), vec!["∂(u^2)".to_string()]);
    let e = fib.boundaries.iter().find(|e| e.at == b(3, 1)).unwrap();
    assert_eq!(e.from, b(4, 0));
    // 80 = 16 * 5
    assert_eq!(fib.group_at(b(7, 1)), Some(FiberGroup::Known(z(16))));
    // psi^3 - 1 vanishes on the eta towers of the unit
    assert_eq!(fib.group_at(b(3, 3)), Some(FiberGroup::Known(z(2))));
    assert!(fib.ambiguous.is_empty());
}

#[test]
fn eta_cubed_survives_the_fiber() {
    let f = psi3();
    let eta3 = SyntheticClass::named(&f.source, "eta^3").unwrap();
    let v = delete_differential_check(&eta3, 3, &f).unwrap();
    let c = v.certificate().expect("certificate");
    assert_eq!(c.witness.source, b(4, 0));
    assert_eq!(c.witness.a0.iter().map(|x| x.rem_euclid(2)).collect::<Vec<_>>(), vec![1]);
    assert_eq!(c.witness.kernel, vec![vec![2]]);
    assert_eq!(c.witness.image_kernel, vec![vec![16]]);
    assert_eq!(c.below, vec![(b(4, -1), Emptiness::BelowZero)]);
    assert!(c.detected);
    assert!(v.transcript().iter().any(|l| l.contains("every preimage survives")));
}

#[test]
fn eta_cubed_refused_on_the_wrong_page() {
    let f = psi3();
    let eta3 = SyntheticClass::named(&f.source, "eta^3").unwrap();
    let v = delete_differential_check(&eta3, 2, &f).unwrap();
    assert_eq!(v.refusal().unwrap().kind, RefusalKind::NotABoundary);
}

#[test]
fn identity_map_has_zero_fiber() {
    let k = ko();
    let id = ChartMap::identity(&k);
    let fib = build_fiber_chart(&id, k.window).unwrap();
    assert!(fib.chart.cells.is_empty());
    assert!(fib.lifts.is_empty() && fib.boundaries.is_empty());
    for c in &k.cells {
        assert_eq!(fib.group_at(c.at), Some(FiberGroup::Known(Invariants { torsion: vec![], free_rank: 0 })));
    }
}

#[test]
fn identity_cannot_delete_anything() {
    let k = ko();
    let id = ChartMap::identity(&k);
    let eta3 = SyntheticClass::named(&k, "eta^3").unwrap();
    assert!(matches!(delete_differential_check(&eta3, 3, &id), Err(MapError::Inapplicable(_))));
}

fn two_cells() -> chart_core::Chart {
    use chart_core::{Cell, Chart, Generator, Window};
    let mut c = Chart::new("two", Window::new((0, 4), (0, 2)));
    c.prime = Some(2);
    c.add_cell(Cell::new(b(1, 1), vec![Generator::new("a", 2)]));
    c.add_cell(Cell::new(b(2, 0), vec![Generator::new("x", 4)]));
    c
}

#[test]
fn zero_map_fiber_splits() {
    let c = two_cells();
    let zero = ChartMap::zero(&c, &c);
    let fib = build_fiber_chart(&zero, c.window).unwrap();
    assert_eq!(fib.ambiguous, vec![b(1, 1)]);
    let g = fib.group_at(b(1, 1)).unwrap();
    assert_eq!(g, FiberGroup::UpToExtension { sub: z(4), quotient: z(2) });
    assert_eq!(g.order(), Some(8));
    let cell = fib.chart.cell(b(1, 1)).unwrap();
    assert_eq!(cell.group.names(), vec!["a".to_string(), "∂(x)".to_string()]);
    assert_eq!(cell.provenance.as_deref(), Some("split guess; extension open"));
    for k in c.nonzero_cells() {
        assert!(fib.lifts.iter().any(|e| e.at == k.at && e.group.ngens() == k.group.ngens()));
    }
}

#[test]
fn resolving_an_extension_checks_order() {
    let c = two_cells();
    let mut fib = build_fiber_chart(&ChartMap::zero(&c, &c), c.window).unwrap();
    assert!(fib.resolve(b(1, 1), z(4), "too small").is_err());
    assert!(fib.resolve(b(2, 0), z(4), "not open").is_err());
    fib.resolve(b(1, 1), z(8), "nonsplit").unwrap();
    assert_eq!(fib.group_at(b(1, 1)), Some(FiberGroup::Known(z(8))));
}

#[test]
fn fiber_window_must_fit() {
    let f = psi3();
    let w = chart_core::Window::new((0, 20), (0, 4));
    assert!(matches!(build_fiber_chart(&f, w), Err(MapError::Window(_))));
}

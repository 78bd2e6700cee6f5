mod common;

use chart_core::BiDegree;
use common::*;
use moore_lift::{
    boundary_of_v1_multiple, periodicity_apply, Element, MooreError, PeriodicClassTable, SigmaProduct, SphereModel,
};
use std::collections::BTreeMap;

#[test]
fn examples() {
    let s = sphere();
    let p = periodicity_apply(&s, 1, 1, entry("mu9")).unwrap();
    assert_eq!((p, p.bidegree()), (entry("mu17"), BiDegree::new(17, 9)));
    let p = periodicity_apply(&s, 3, 1, entry("j8")).unwrap();
    assert_eq!((p, p.bidegree()), (entry("j16"), BiDegree::new(16, 7)));
    for i in 1..=3 {
        assert_eq!(periodicity_apply(&s, i, 0, entry("j'47")).unwrap(), entry("j'47"));
        assert_eq!(periodicity_apply(&s, i, 0, entry("t^3 mu9")).unwrap(), entry("t^3 mu9"));
    }
}

#[test]
fn used_by_the_scripts() {
    let s = sphere();
    assert_eq!(periodicity_apply(&s, 3, 1, entry("t^12 j'47")).unwrap(), entry("t^12 j'55"));
    assert_eq!(periodicity_apply(&s, 3, 1, entry("j'71")).unwrap(), entry("j'79"));
    assert_eq!(periodicity_apply(&s, 1, 1, entry("t^23 j80")).unwrap(), entry("t^23 j88"));
}

#[test]
fn prime_entries_need_i_three() {
    let s = sphere();
    for i in 1..=2 {
        assert!(matches!(periodicity_apply(&s, i, 1, entry("j'47")), Err(MooreError::Precondition(_))));
    }
    // the full j_{8k-1} is never h0^3-torsion
    assert!(matches!(periodicity_apply(&s, 3, 1, entry("j47")), Err(MooreError::Precondition(_))));
    assert!(matches!(periodicity_apply(&s, 4, 1, entry("mu9")), Err(MooreError::Precondition(_))));
}

#[test]
fn iterated_operators() {
    let s = families_only(96);
    assert_eq!(periodicity_apply(&s, 3, 5, entry("j'7")).unwrap(), entry("j'47"));
    assert_eq!(periodicity_apply(&s, 3, 5, entry("j8")).unwrap(), entry("j48"));
    assert_eq!(periodicity_apply(&s, 2, 10, entry("mu1")).unwrap(), entry("mu81"));
}

#[test]
fn missing_cells_are_incomplete() {
    let s = sphere();
    // stem 16 is not declared complete in the sphere fixture
    let err = periodicity_apply(&s, 3, 1, entry("j'15")).unwrap_err();
    assert!(err.is_incomplete(), "{err}");
}

/// A toy model where `sigma * w` is declared nonzero for a class `w` of
/// order 4 in the stem after `mu9`.
fn with_indeterminacy() -> SphereModel {
    let mut spec = families_only(24).spec;
    spec.classes.push(class("w10", 10, 4, &[7, 8]));
    spec.classes.push(class("z17", 17, 2, &[9]));
    spec.sigma_products.push(SigmaProduct {
        class: "w10".into(),
        result: BTreeMap::from([("z17".to_string(), 1)]),
        provenance: "test".into(),
    });
    SphereModel::new(spec).unwrap()
}

#[test]
fn nonzero_indeterminacy_returns_the_span() {
    let s = with_indeterminacy();
    // (2 sigma) w10 = sigma (2 w10) is zero: z17 has order 2
    assert!(periodicity_apply(&s, 3, 1, entry("mu9")).is_ok());
    // (8 sigma) w10 = 0 as well
    assert!(periodicity_apply(&s, 1, 1, entry("mu9")).is_ok());
    let mut spec = s.spec.clone();
    spec.classes.retain(|c| c.name != "z17");
    spec.classes.push(class("z17", 17, 4, &[9]));
    let s = SphereModel::new(spec).unwrap();
    match periodicity_apply(&s, 3, 1, entry("mu9")) {
        Err(MooreError::Indeterminate { span }) => assert_eq!(span, vec!["2 z17".to_string()]),
        other => panic!("{other:?}"),
    }
}

#[test]
fn boundary_of_v1_multiples() {
    let s = sphere();
    let mu = Element::class(9, "mu9", 1);
    assert_eq!(boundary_of_v1_multiple(&s, &mu, 3).unwrap(), Element::zero(16));
    let one = Element::class(0, "1", 1);
    let b = boundary_of_v1_multiple(&s, &one, 3).unwrap();
    assert_eq!(b, s.entry_element(&entry("j'7")).unwrap());
    assert_eq!(entry("j'7").bidegree(), BiDegree::new(7, 2));
    assert!(s.in_filtration(&b, 2).unwrap());
    // 2 y47 != 0 and sigma y47 is not declared
    let y = Element::class(47, "y47", 1);
    assert!(boundary_of_v1_multiple(&s, &y, 3).unwrap_err().is_incomplete());
    assert!(matches!(boundary_of_v1_multiple(&s, &one, 2), Err(MooreError::Precondition(_))));
    assert!(matches!(
        boundary_of_v1_multiple(&s, &Element::class(3, "nope", 1), 3),
        Err(MooreError::UnknownClass(_))
    ));
}

#[test]
fn declared_products_are_used() {
    let mut spec = with_indeterminacy().spec;
    spec.classes.retain(|c| c.name != "z17");
    spec.classes.push(class("z17", 17, 4, &[9]));
    let s = SphereModel::new(spec).unwrap();
    let w = Element::class(10, "w10", 1);
    assert_eq!(boundary_of_v1_multiple(&s, &w, 3).unwrap(), Element::class(17, "z17", 2));
}

#[test]
fn fixture_families_match_the_table() {
    let s = sphere();
    for e in PeriodicClassTable::default().entries(96) {
        s.entry_element(&e).unwrap_or_else(|err| panic!("{e}: {err}"));
    }
    let mut spec = s.spec.clone();
    spec.classes.iter_mut().find(|c| c.name == "j63").unwrap().order = 64;
    let bad = SphereModel::new(spec).unwrap();
    assert!(matches!(bad.entry_element(&entry("j63")), Err(MooreError::Inconsistent(_))));
}

#[test]
fn self_maps() {
    let t = PeriodicClassTable::default();
    let names: Vec<_> = t.self_maps.iter().map(|m| (m.complex.as_str(), m.i, m.j, m.degree)).collect();
    assert_eq!(names, vec![("M(8,v1^8)", 3, 8, 192), ("M(2,v1^4)", 1, 4, 192), ("M(4,v1^4)", 2, 4, 192)]);
    assert_eq!(t.self_map(2, 4).unwrap().shift(63), 255);
    assert!(t.self_map(3, 4).is_none());
}

mod common;

use chart_core::{Cell, Chart, Differential, Generator, Invariants, SyntheticClass, Window};
use common::*;
use proptest::prelude::*;
use spectral_maps::{
    build_fiber_chart, delete_differential_check, ChartMap, Compat, Component, FiberGroup, RefusalKind,
};
use std::collections::BTreeMap;

fn v2(x: i64) -> u32 {
    if x == 0 {
        u32::MAX
    } else {
        x.trailing_zeros()
    }
}

/// `x` free at (2, 0) with `d_r(x) = d * y`, `y` of order `m` at (1, r);
/// the map sends `x` to `c` times a free class.
fn toy(r: u32, m: i64, d: i64, c: i64) -> ChartMap {
    let w = Window::new((0, 4), (0, 8));
    let mut x = Chart::new("X", w);
    x.prime = Some(2);
    x.connective = true;
    x.max_page = Some(r);
    x.add_cell(Cell::new(b(2, 0), vec![Generator::new("x", 0)]));
    x.add_cell(Cell::new(b(1, i64::from(r)), vec![Generator::new("y", m as u64)]));
    x.differentials.push(Differential::new(r, b(2, 0), vec![vec![d]]));
    let mut y = Chart::new("Y", w);
    y.prime = Some(2);
    y.connective = true;
    y.add_cell(Cell::new(b(2, 0), vec![Generator::new("fx", 0)]));
    let mut components = BTreeMap::new();
    components.insert(b(2, 0), Component::new(b(2, 0), vec![vec![c]]));
    components.insert(b(1, i64::from(r)), Component::new(b(1, i64::from(r)), vec![vec![]]));
    let f = ChartMap {
        name: "toy".into(),
        source: x,
        target: y,
        components,
        compat: Compat::default(),
        zero_line_injective: None,
    };
    f.check().unwrap();
    f
}

fn unimodular(ops: &[(bool, i64)]) -> Vec<Vec<i64>> {
    let mut a = vec![vec![1, 0], vec![0, 1]];
    for &(top, k) in ops {
        if top {
            let row: Vec<i64> = (0..2).map(|j| a[0][j] + k * a[1][j]).collect();
            a[0] = row;
        } else {
            let row: Vec<i64> = (0..2).map(|j| a[1][j] + k * a[0][j]).collect();
            a[1] = row;
        }
    }
    a
}

fn rank_two(name: &str) -> Chart {
    let mut c = Chart::new(name, Window::new((-2, 2), (0, 2)));
    c.prime = Some(2);
    c.add_cell(Cell::new(b(0, 0), vec![Generator::new("a", 0), Generator::new("b", 0)]));
    c
}

fn map_between(src: &Chart, tgt: &Chart, m: Vec<Vec<i64>>, name: &str) -> ChartMap {
    let mut components = BTreeMap::new();
    components.insert(b(0, 0), Component::new(b(0, 0), m));
    ChartMap {
        name: name.into(),
        source: src.clone(),
        target: tgt.clone(),
        components,
        compat: Compat::default(),
        zero_line_injective: None,
    }
}

fn fiber_invariants(f: &ChartMap) -> Vec<(chart_core::BiDegree, Option<FiberGroup>)> {
    let fib = build_fiber_chart(f, f.source.window).unwrap();
    [b(0, 0), b(-1, 1)].into_iter().map(|at| (at, fib.group_at(at))).collect()
}

proptest! {
    #[test]
    fn toy_verdicts_match_arithmetic(r in 2u32..6, j in 1u32..5, d in 1i64..17, e in 0i64..16, c in -3i64..4) {
        let m = 1i64 << j;
        let e = e % m;
        let f = toy(r, m, d, c);
        let cls = SyntheticClass {
            bidegree: b(1, i64::from(r)),
            element: vec![i128::from(e)],
            kill_page: chart_core::Page::Infinite,
            support_page: chart_core::Page::Infinite,
        };
        let v = delete_differential_check(&cls, r, &f).unwrap();
        let want = if e == 0 {
            Some(RefusalKind::ZeroOnE2)
        } else if v2(e) < v2(d).min(j) {
            Some(RefusalKind::NotABoundary)
        } else if c == 0 {
            Some(RefusalKind::CosetMeetsKernel)
        } else {
            None
        };
        prop_assert_eq!(v.refusal().map(|x| x.kind), want);
        if let Some(cert) = v.certificate() {
            prop_assert!(cert.detected);
        }
    }

    #[test]
    fn verdict_is_stable_under_representatives(t in -20i128..20, u in 0usize..2, row in 0usize..15) {
        let f = qp3();
        let tab = table2();
        let row = &tab.rows[row];
        let cls = row.target_class(&f.source).unwrap();
        let order = f.source.cell(cls.bidegree).unwrap().group.generators[0].order as i128;
        let unit = [1i128, 3][u];
        let e = cls.element[0] * unit + t * order;
        let moved = SyntheticClass::of(&f.source, cls.bidegree, vec![e]).unwrap();
        let a = delete_differential_check(&cls, row.page, &f).unwrap();
        let b = delete_differential_check(&moved, row.page, &f).unwrap();
        prop_assert_eq!(a.is_certificate(), b.is_certificate());
        let (ca, cb) = (a.certificate().unwrap(), b.certificate().unwrap());
        prop_assert_eq!(&ca.witness.kernel, &cb.witness.kernel);
        prop_assert_eq!(ca.detected, cb.detected);
    }

    #[test]
    fn fiber_invariant_under_automorphisms(
        m in proptest::collection::vec(proptest::collection::vec(-6i64..7, 2), 2),
        ops in proptest::collection::vec((any::<bool>(), -3i64..4), 0..5),
    ) {
        let x = rank_two("X");
        let y = rank_two("Y");
        let f = map_between(&x, &y, m, "f");
        let auto = map_between(&x, &x, unimodular(&ops), "a");
        let g = auto.then(&f).unwrap();
        prop_assert_eq!(fiber_invariants(&f), fiber_invariants(&g));
    }

    #[test]
    fn ko_fiber_invariant_under_unit_rescaling(units in proptest::collection::vec(prop_oneof![Just(1i64), Just(-1), Just(3), Just(5)], 11)) {
        let k = ko();
        let f = psi3();
        let mut auto = ChartMap::identity(&k);
        for (c, u) in auto.components.values_mut().zip(&units) {
            c.matrix[0][0] = *u;
        }
        auto.check().unwrap();
        let g = auto.then(&f).unwrap();
        let a = build_fiber_chart(&f, k.window).unwrap();
        let bb = build_fiber_chart(&g, k.window).unwrap();
        for c in a.chart.cells.iter().chain(bb.chart.cells.iter()) {
            prop_assert_eq!(a.group_at(c.at), bb.group_at(c.at));
        }
    }
}

#[test]
fn kernel_only_fiber() {
    let x = rank_two("X");
    let y = rank_two("Y");
    let f = map_between(&x, &y, vec![vec![1, 0], vec![0, 0]], "f");
    let inv = fiber_invariants(&f);
    let free1 = Invariants { torsion: vec![], free_rank: 1 };
    assert_eq!(inv[0].1, Some(FiberGroup::Known(free1.clone())));
    assert_eq!(inv[1].1, Some(FiberGroup::Known(free1)));
}

mod common;

use chart_core::{Cell, Chart, Generator, Window};
use common::*;
use oracles::weierstrass::level_three;
use proptest::prelude::*;
use spectral_maps::{psi_n_zero_line, qp_leading_term, zero_line_injective, LevelThreeRing, MapError};

/// `k = 2^r (2s + 1)` by repeated halving.
fn expected_exponents(k: u64) -> (u64, u64) {
    let (mut r, mut odd) = (0, k);
    while odd % 2 == 0 {
        odd /= 2;
        r += 1;
    }
    let s = (odd - 1) / 2;
    (3 * 2u64.pow(r + 1), 2u64.pow(r + 1) * (4 * s + 1))
}

#[test]
fn leading_terms_of_small_powers() {
    let t1 = qp_leading_term(1).unwrap();
    assert_eq!((t1.a1_exp, t1.a3_exp), (6, 2));
    assert_eq!(t1.to_string(), "a1^6a3^2 + O(a1^7)");
    let t2 = qp_leading_term(2).unwrap();
    assert_eq!((t2.a1_exp, t2.a3_exp), (12, 4));
    let t3 = qp_leading_term(3).unwrap();
    assert_eq!((t3.a1_exp, t3.a3_exp), (6, 10));
    assert!(matches!(qp_leading_term(0), Err(MapError::Domain(_))));
}

#[test]
fn leading_terms_match_oracle() {
    for k in 1..=64u64 {
        let t = qp_leading_term(k as i64).unwrap();
        let (a, c) = expected_exponents(k);
        assert_eq!((u64::from(t.a1_exp), u64::from(t.a3_exp)), (a, c), "k = {k}");
        assert_eq!(t.stem(), 24 * k);
        assert_eq!(t.poly().stem(), Some(24 * k as u32));
        assert!(t.is_nonzero());
        assert_eq!(t.error_order, t.a1_exp + 1);
    }
}

#[test]
fn tmf03_cells_are_leading_monomials() {
    let y = tmf03();
    for k in 1..=7 {
        let t = qp_leading_term(k).unwrap();
        let c = y.cell(b(24 * k, 0)).unwrap();
        assert_eq!(c.group.names(), vec![t.poly().to_string()]);
    }
}

#[test]
fn discriminant_matches_weierstrass() {
    let d = LevelThreeRing::delta();
    assert_eq!(d.to_string(), "a1^3a3^3-27a3^4");
    assert_eq!(d.stem(), Some(24));
    for a1 in -6..=6 {
        for a3 in -6..=6 {
            let e = level_three(a1, a3);
            assert_eq!(d.eval(a1, a3), e.discriminant());
            assert_eq!(LevelThreeRing::c4().eval(a1, a3), e.c4());
            assert_eq!(LevelThreeRing::c6().eval(a1, a3), e.c6());
        }
    }
}

#[test]
fn modular_identity() {
    let c4 = LevelThreeRing::c4();
    let c6 = LevelThreeRing::c6();
    let lhs = c4.pow(3) - c6.pow(2);
    assert_eq!(lhs, LevelThreeRing::delta().scale(1728));
    // mod 2 the discriminant is a1^3 a3^3 + a3^4
    let m = LevelThreeRing::delta().mod2();
    assert_eq!(m.terms().collect::<Vec<_>>(), vec![((0, 4), 1), ((3, 3), 1)]);
}

#[test]
fn psi3_on_the_tmf_zero_line() {
    let z = psi_n_zero_line(&tmf(), 3).unwrap();
    let c8 = z.cell(8).unwrap();
    assert_eq!(c8.factor, Some(81));
    assert_eq!(z.map.components[&b(8, 0)].matrix, vec![vec![16]]);
    let c0 = z.cell(0).unwrap();
    assert_eq!((c0.rank, c0.kernel_rank), (1, 1));
    assert_eq!(z.cell(24).unwrap().factor, Some(3i128.pow(12)));
    assert_eq!(z.cell(192).unwrap().exponent, 96);
    assert!(z.kernel_off_zero().is_empty());
    assert!(zero_line_injective(&tmf(), 3).unwrap());
    assert!(zero_line_injective(&tmf(), 5).unwrap());
}

#[test]
fn psi3_on_ko_matches_the_fixture() {
    let z = psi_n_zero_line(&ko(), 3).unwrap();
    let f = psi3();
    for at in [b(4, 0), b(8, 0)] {
        let ours = z.map.components[&at].matrix[0][0];
        let theirs = f.components[&at].matrix[0][0];
        // same 2-adic valuation
        assert_eq!(ours.trailing_zeros(), theirs.trailing_zeros(), "{at}");
    }
}

#[test]
fn psi_rejects_torsion_and_odd_stems() {
    let mut c = Chart::new("odd", Window::new((0, 4), (0, 1)));
    c.prime = Some(2);
    c.add_cell(Cell::new(b(3, 0), vec![Generator::new("x", 0)]));
    assert!(psi_n_zero_line(&c, 3).is_err());
    let mut t = Chart::new("tors", Window::new((0, 4), (0, 1)));
    t.prime = Some(2);
    t.add_cell(Cell::new(b(2, 0), vec![Generator::new("y", 2)]));
    assert!(psi_n_zero_line(&t, 3).is_err());
}

proptest! {
    #[test]
    fn leading_term_degree(k in 1i64..100_000) {
        let t = qp_leading_term(k).unwrap();
        prop_assert_eq!(t.stem(), 24 * k as u64);
        let (a, c) = expected_exponents(k as u64);
        prop_assert_eq!((u64::from(t.a1_exp), u64::from(t.a3_exp)), (a, c));
    }

    #[test]
    fn ring_is_commutative_and_graded(a in 0u32..4, b3 in 0u32..4, c in -5i128..5, d in -5i128..5) {
        let x = LevelThreeRing::monomial(c, a, b3) + LevelThreeRing::a1();
        let y = LevelThreeRing::monomial(d, b3, a) - LevelThreeRing::a3();
        prop_assert_eq!(x.clone() * y.clone(), y.clone() * x.clone());
        prop_assert_eq!((x.clone() * y.clone()).eval(2, 3), x.eval(2, 3) * y.eval(2, 3));
        prop_assert_eq!(LevelThreeRing::delta().pow(2).stem(), Some(48));
    }
}

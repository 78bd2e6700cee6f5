mod common;

use chart_core::BiDegree;
use common::*;
use moore_lift::{periodicity_apply, CofiberLadder, Completeness, Entry, Family, MooreError, SphereModel, SphereSpec};
use proptest::prelude::*;
use std::collections::BTreeSet;

fn family() -> impl Strategy<Value = Family> {
    prop::sample::select(Family::ALL.to_vec())
}

proptest! {
    #[test]
    fn periodicity_moves_by_whole_periods(fam in family(), k in 0u32..6, n in 0u32..5, i in 1u32..=3, tau in 0u32..4) {
        let s = families_only(100);
        let k = k.max(fam.min_k());
        let x = Entry::new(fam, k).unwrap().with_tau(tau);
        let torsion = match fam {
            Family::Mu1 | Family::Mu2 | Family::J0 | Family::J1 => true,
            Family::J3 | Family::J7Prime => i == 3,
            Family::J7 => false,
        };
        match periodicity_apply(&s, i, n, x) {
            Ok(y) => {
                prop_assert!(torsion || n == 0);
                prop_assert_eq!(y.bidegree() - x.bidegree(), BiDegree::new(8 * i64::from(n), 4 * i64::from(n)));
                prop_assert_eq!(y.family, fam);
            }
            Err(MooreError::Precondition(_)) => prop_assert!(!torsion && n > 0),
            Err(e) => prop_assert!(false, "{}", e),
        }
    }

    #[test]
    fn entries_roundtrip(fam in family(), k in 0u32..20, tau in 0u32..30) {
        let x = Entry::new(fam, k.max(fam.min_k())).unwrap().with_tau(tau);
        prop_assert_eq!(Entry::parse(&x.to_string()).unwrap(), x);
    }
}

/// Random torsion classes in stems 5 and 6.
fn toy() -> impl Strategy<Value = SphereSpec> {
    let cls = (5i64..=6, 1u32..=3, 0i64..4, prop::collection::vec(1i64..3, 0..3));
    prop::collection::vec(cls, 1..5).prop_map(|cs| {
        let classes = cs
            .into_iter()
            .enumerate()
            .map(|(n, (stem, e, f0, gaps))| {
                let mut fs = vec![f0];
                for g in gaps {
                    fs.push(fs.last().unwrap() + g);
                }
                class(&format!("c{n}"), stem, 1 << e, &fs)
            })
            .collect();
        SphereSpec {
            name: "toy".into(),
            classes,
            complete: (5..=6).map(|stem| Completeness { stem, from: 0, provenance: "test".into() }).collect(),
            sigma_products: vec![],
        }
    })
}

/// Filtration of `a c` read off the declared towers.
fn filt(c: &moore_lift::ClassSpec, a: i128) -> Option<i64> {
    let a = a.rem_euclid(c.order as i128);
    (a != 0).then(|| c.filtration_of_multiple(a.trailing_zeros()))
}

/// Every element of a finite stem as a coefficient vector.
fn elements(classes: &[&moore_lift::ClassSpec]) -> Vec<Vec<i128>> {
    let mut out = vec![vec![]];
    for c in classes {
        let top = c.order as i128;
        out = out.into_iter().flat_map(|v| (0..top).map(move |a| [v.clone(), vec![a]].concat())).collect();
    }
    out
}

fn at_least(classes: &[&moore_lift::ClassSpec], v: &[i128], f: i64) -> bool {
    classes.iter().zip(v).all(|(c, a)| filt(c, *a).is_none_or(|g| g >= f))
}

fn reduce(classes: &[&moore_lift::ClassSpec], v: &[i128]) -> Vec<i128> {
    classes.iter().zip(v).map(|(c, a)| a.rem_euclid(c.order as i128)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn ladder_cells_match_enumeration(spec in toy(), i in 1u32..=3, f in 0i64..8) {
        let s = SphereModel::new(spec).unwrap();
        let l = CofiberLadder::new(&s, i, None).unwrap();
        let at = BiDegree::new(6, f);
        l.check_exactness(at).unwrap();
        let cell = l.cell(at).unwrap();
        let size = |inv: &[i128]| inv.iter().product::<i128>();

        let c5 = s.classes_in(5);
        let ker = elements(&c5)
            .into_iter()
            .filter(|v| at_least(&c5, v, f - i64::from(i) + 1))
            .filter(|v| reduce(&c5, &v.iter().map(|a| a << i).collect::<Vec<_>>()).iter().all(|a| *a == 0))
            .count();
        prop_assert_eq!(size(&cell.ker), ker as i128);

        let c6 = s.classes_in(6);
        let all6 = elements(&c6);
        let top = all6.iter().filter(|v| at_least(&c6, v, f)).count();
        let image: BTreeSet<Vec<i128>> = all6
            .iter()
            .filter(|v| at_least(&c6, v, f - i64::from(i)))
            .map(|v| reduce(&c6, &v.iter().map(|a| a << i).collect::<Vec<_>>()))
            .collect();
        prop_assert_eq!(size(&cell.coker) * image.len() as i128, top as i128);
        prop_assert_eq!(cell.extension, !cell.ker.is_empty() && !cell.coker.is_empty());
    }
}

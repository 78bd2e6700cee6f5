mod common;

use proptest::prelude::*;
use toda_ledger::{check_relation_chain, Chain, Word};

const NAMES: [&str; 5] = ["eta", "nu", "kappa", "kbar", "[eps.D]"];

fn word() -> impl Strategy<Value = Word> {
    (1i64..40, 0u32..5, prop::collection::vec(0u32..4, NAMES.len())).prop_map(|(c, t, es)| {
        let mut w = Word::scalar(c).times_tau(t);
        for (n, e) in NAMES.iter().zip(es) {
            for _ in 0..e {
                w = w.mul(&Word::atom(n));
            }
        }
        w
    })
}

proptest! {
    #[test]
    fn display_roundtrips(w in word()) {
        prop_assert_eq!(Word::parse(&w.to_string()).unwrap(), w.clone());
        prop_assert_eq!(Word::parse(&w.compact()).unwrap(), w);
    }

    #[test]
    fn division_inverts_multiplication(a in word(), b in word()) {
        let p = a.mul(&b);
        prop_assert_eq!(p.div(&b), Some(a.clone()));
        prop_assert_eq!(p.div(&a), Some(b));
    }

    #[test]
    fn bidegree_is_additive(a in word(), b in word()) {
        let db = common::db();
        let (x, y) = (db.bidegree(&a).unwrap(), db.bidegree(&b).unwrap());
        prop_assert_eq!(db.bidegree(&a.mul(&b)).unwrap(), x + y);
    }

    /// A chain multiplied through by a word still verifies, with the same relations.
    #[test]
    fn chains_are_stable_under_multiplication(i in 0usize..14, m in word()) {
        let db = common::db();
        let c = Chain::parse(common::CHAINS[i].1).unwrap();
        let t = check_relation_chain(&c, &db).unwrap();
        let mut scaled = Chain::new(c.words.iter().map(|w| w.mul(&m)).collect());
        scaled.id = c.id.clone();
        let s = check_relation_chain(&scaled, &db).unwrap();
        prop_assert_eq!(s.steps.len(), t.steps.len());
        s.replay(&db).unwrap();
    }

    /// Reading a chain backwards uses the same relations in reverse order.
    #[test]
    fn reversed_chains_verify(i in 0usize..14) {
        let db = common::db();
        let c = Chain::parse(common::CHAINS[i].1).unwrap();
        let fwd = check_relation_chain(&c, &db).unwrap();
        let mut rev = c.clone();
        rev.words.reverse();
        let back = check_relation_chain(&rev, &db).unwrap();
        let mut ids = back.relations();
        ids.reverse();
        prop_assert_eq!(ids, fwd.relations());
    }
}

mod common;

use common::db;
use toda_ledger::{
    force_nonzero_from_empty, shuffle, Claim, RelationDB, Side, TodaError, Word,
};

fn w(s: &str) -> Word {
    Word::parse(s).unwrap()
}

#[test]
fn empty_bracket_forces_a_product() {
    let db = db();
    let c = force_nonzero_from_empty(db.bracket("B3").unwrap(), &db).unwrap();
    assert_eq!(c.nonzero, Some(w("t^4 nu^2 kbar_r")));
    assert_eq!(c.vanishing.as_ref().unwrap().relation, "R50");
    assert_eq!(c.disjunction.1, w("2 t^4 nu^2"));
    let c = force_nonzero_from_empty(db.bracket("B5").unwrap(), &db).unwrap();
    assert_eq!(c.nonzero, Some(w("kbar [nu^2.D^2]")));
}

#[test]
fn unresolved_without_the_annihilation_fact() {
    let db = db();
    let b = db.bracket("B4").unwrap().clone();
    let c = force_nonzero_from_empty(&b, &db).unwrap();
    assert_eq!(c.nonzero, Some(w("kappa kbar^3")));
    let weaker = db.without("R51");
    let c = force_nonzero_from_empty(&b, &weaker).unwrap();
    assert_eq!(c.nonzero, None);
    assert!(c.to_string().contains("unresolved"));
}

#[test]
fn both_products_vanishing_is_inconsistent() {
    let mut db = db();
    let mut spec = db.to_file();
    spec.relations.push(serde_json::from_str(
        r#"{"id":"X","left":"kappa kbar^3","right":"0","ambient":{"chart":"TMF","at":[74,14]},"provenance":"test"}"#,
    ).unwrap());
    db = RelationDB::from_file(spec).unwrap();
    let b = db.bracket("B4").unwrap();
    assert!(matches!(force_nonzero_from_empty(b, &db), Err(TodaError::Inconsistent(_))));
}

#[test]
fn force_needs_an_empty_three_fold_bracket() {
    let db = db();
    for id in ["B1", "B7"] {
        let r = force_nonzero_from_empty(db.bracket(id).unwrap(), &db);
        assert!(matches!(r, Err(TodaError::Inapplicable(_))), "{id}");
    }
}

#[test]
fn left_juggle() {
    let db = db();
    let out = shuffle(db.bracket("B1").unwrap(), Side::Left, &w("eta"), &db).unwrap();
    assert_eq!(out.as_word(), w("<eta,nu,2nu> kappa"));
    assert_eq!(out.claim, Claim::Contains(w("t^2 eta^2 kbar")));
    assert_eq!(out.ambient.at, chart_core::BiDegree::new(22, 4));
}

#[test]
fn right_juggle_carries_the_sign() {
    let db = db();
    let out = shuffle(db.bracket("B8").unwrap(), Side::Right, &w("kappa"), &db).unwrap();
    assert_eq!(out.as_word(), w("-2 <eta,2,kappa>"));
    assert_eq!(out.claim, Claim::Contains(w("t^2 eta^2 kappa")));
    // odd first entry: no sign
    let out = shuffle(db.bracket("B2").unwrap(), Side::Right, &w("nu"), &db).unwrap();
    assert_eq!(out.as_word(), w("eta <nu,2nu,nu>"));
}

#[test]
fn juggle_needs_the_annihilation() {
    let db = db();
    let r = shuffle(db.bracket("B1").unwrap(), Side::Left, &w("eps"), &db);
    assert!(matches!(r, Err(TodaError::Inapplicable(_))));
    let r = shuffle(db.bracket("B1").unwrap(), Side::Left, &w("eta"), &db.without("R5"));
    assert!(matches!(r, Err(TodaError::Inapplicable(_))));
    let r = shuffle(db.bracket("B3").unwrap(), Side::Right, &w("kappa"), &db);
    assert!(matches!(r, Err(TodaError::Inapplicable(_))), "empty brackets do not juggle");
    let r = shuffle(db.bracket("B7").unwrap(), Side::Left, &w("eta"), &db);
    assert!(matches!(r, Err(TodaError::Inapplicable(_))), "four-fold");
}

#[test]
fn declared_bidegrees_are_checked() {
    let mut spec = db().to_file();
    spec.brackets[0].ambient.at = chart_core::BiDegree::new(21, 5);
    assert!(matches!(RelationDB::from_file(spec), Err(TodaError::Structural { .. })));
    let mut spec = db().to_file();
    spec.relations[0].right = "eta^3".into();
    assert!(matches!(RelationDB::from_file(spec), Err(TodaError::Structural { .. })));
}

#[test]
fn classical_relations_compare_stems_only() {
    let db = db();
    let r = db.relation("R14").unwrap();
    assert!(!r.spec.synthetic);
    assert_ne!(db.bidegree(&r.left).unwrap(), db.bidegree(&r.right).unwrap());
}

#[test]
fn provenance_is_mandatory() {
    let mut spec = db().to_file();
    spec.relations[3].provenance = String::new();
    assert!(matches!(RelationDB::from_file(spec), Err(TodaError::Provenance(_))));
    let mut spec = db().to_file();
    spec.brackets[2].provenance = " ".into();
    assert!(matches!(RelationDB::from_file(spec), Err(TodaError::Provenance(_))));
    let mut spec = db().to_file();
    spec.atoms[0].provenance = String::new();
    assert!(matches!(RelationDB::from_file(spec), Err(TodaError::Provenance(_))));
}

#[test]
fn derived_relations_are_rechecked() {
    let mut spec = db().to_file();
    let r6 = spec.relations.iter_mut().find(|r| r.id == "R6").unwrap();
    r6.right = "-<eta,nu,2nu> kappa".into();
    assert!(matches!(RelationDB::from_file(spec), Err(TodaError::Inconsistent(_))));
    let mut spec = db().to_file();
    spec.brackets.retain(|b| b.id != "B2");
    assert!(RelationDB::from_file(spec).is_err());
}

#[test]
fn indeterminacy_blocks_single_elements() {
    let db = db();
    assert!(db.bracket("B6").unwrap().single_element(&db).is_none());
    assert_eq!(db.bracket("B1").unwrap().single_element(&db), Some(w("t^2 eta kbar")));
}

#[test]
fn database_roundtrips() {
    let db = db();
    let again = RelationDB::from_file(db.to_file()).unwrap();
    assert_eq!(again.to_file(), db.to_file());
}

#![allow(dead_code)]

use moore_lift::{
    ClassSpec, CofiberLadder, Completeness, Entry, LiftScript, PeriodicClassTable, SphereModel, SphereSpec,
};

pub const SPHERE: &str = include_str!("../../../fixtures/charts/sphere_f2.json");

pub const SCRIPTS: [(&str, &str); 5] = [
    ("47", include_str!("../../../fixtures/scripts/lm47.steps")),
    ("54", include_str!("../../../fixtures/scripts/lm54.steps")),
    ("71", include_str!("../../../fixtures/scripts/lm71.steps")),
    ("80", include_str!("../../../fixtures/scripts/lm80.steps")),
    ("unit", include_str!("../../../fixtures/scripts/unit.steps")),
];

pub fn sphere() -> SphereModel {
    SphereModel::from_json(SPHERE).expect("sphere fixture loads")
}

pub fn script(id: &str) -> LiftScript {
    let text = SCRIPTS.iter().find(|(k, _)| *k == id).expect("known script").1;
    LiftScript::parse(text).expect("script parses")
}

pub fn ladder<'a>(s: &'a SphereModel, script: &LiftScript) -> CofiberLadder<'a> {
    script.ladder(s).expect("ladder")
}

pub fn class(name: &str, stem: i64, order: u64, filtrations: &[i64]) -> ClassSpec {
    ClassSpec { name: name.into(), stem, order, filtrations: filtrations.to_vec(), provenance: "test".into() }
}

/// The unit and the periodic families only, declared complete everywhere.
pub fn families_only(max_stem: i64) -> SphereModel {
    let mut classes = vec![class("1", 0, 0, &[0])];
    for e in PeriodicClassTable::default().entries(max_stem) {
        if e.family == moore_lift::Family::J7Prime {
            continue;
        }
        classes.push(class(&e.class_name(), e.stem(), e.order(), &[e.natural_filtration()]));
    }
    let complete = (0..=max_stem + 1).map(|s| Completeness { stem: s, from: 0, provenance: "test".into() }).collect();
    SphereModel::new(SphereSpec { name: "families".into(), classes, complete, sigma_products: vec![] }).unwrap()
}

pub fn entry(s: &str) -> Entry {
    Entry::parse(s).unwrap()
}

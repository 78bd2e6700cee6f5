mod common;

use chart_core::BiDegree;
use common::*;
use moore_lift::{replay_lift_argument, CofiberLadder, LiftScript, MooreError, SphereModel, StepKind};

fn replay(s: &SphereModel, script: &LiftScript) -> moore_lift::Result<moore_lift::Transcript> {
    replay_lift_argument(script, &ladder(s, script))
}

fn failure(r: moore_lift::Result<moore_lift::Transcript>) -> (usize, String, String) {
    match r {
        Err(MooreError::Failed { step, condition, detail }) => (step, condition, detail),
        other => panic!("expected a failed step, got {other:?}"),
    }
}

#[test]
fn lift_47_reaches_the_top_cell() {
    let s = sphere();
    let t = replay(&s, &script("47")).unwrap();
    let c = t.conclusion.as_ref().unwrap();
    assert_eq!(c.lift_at, BiDegree::new(48, 12));
    assert_eq!(c.top_cell_stem, 65);
    assert_eq!(c.complex, "M(8,v1^8)");
    assert_eq!(c.corrections, vec![entry("t^12 j'47"), entry("t^11 j48")]);
    assert!(t.lines[2].contains("(55,14): Z/8"), "{}", t);
    assert!(t.lines[3].contains("t^12 j'55"), "{}", t);
}

#[test]
fn lift_54_reaches_the_top_cell() {
    let s = sphere();
    let t = replay(&s, &script("54")).unwrap();
    let c = t.conclusion.unwrap();
    assert_eq!(c.lift_at, BiDegree::new(55, 10));
    assert_eq!(c.top_cell_stem, 64);
    assert_eq!(c.complex, "M(4,v1^4)");
    assert!(t.lines.iter().any(|l| l.contains("t^12 j63")));
}

#[test]
fn lifts_71_and_80() {
    let s = sphere();
    let t = replay(&s, &script("71")).unwrap();
    let c = t.conclusion.unwrap();
    assert_eq!((c.lift_at, c.top_cell_stem), (BiDegree::new(72, 15), 89));
    assert!(t.lines.iter().any(|l| l.contains("t^21 j'79")));
    let t = replay(&s, &script("80")).unwrap();
    let c = t.conclusion.unwrap();
    assert_eq!((c.lift_at, c.top_cell_stem), (BiDegree::new(81, 16), 90));
    assert_eq!(c.complex, "M(2,v1^4)");
    assert!(t.lines.iter().any(|l| l.contains("(Z/2)") || l.contains("Z/2+Z/2")));
}

#[test]
fn empty_script_on_the_unit() {
    let s = sphere();
    let t = replay(&s, &script("unit")).unwrap();
    assert!(t.conclusion.is_none());
    assert_eq!(t.lines.len(), 2);
    assert_eq!(t.lines[1], "no steps");
}

#[test]
fn replays_are_deterministic_and_idempotent() {
    let s = sphere();
    for (id, _) in SCRIPTS {
        let sc = script(id);
        let a = replay(&s, &sc).unwrap();
        let b = replay(&s, &sc).unwrap();
        assert_eq!(a, b);
        let again = LiftScript::parse(&sc.to_string()).unwrap();
        assert_eq!(again, sc);
        assert_eq!(replay(&s, &again).unwrap(), a);
    }
}

#[test]
fn dropping_the_image_of_j_correction_fails_at_v1_vanishing() {
    let s = sphere();
    let (step, cond, detail) = failure(replay(&s, &script("47").without_step(3)));
    assert_eq!(step, 4);
    assert_eq!(cond, "v1^4-vanishing of the boundary");
    assert!(detail.contains("2 j55"), "{detail}");
}

#[test]
fn dropping_the_cokernel_correction_fails_at_the_conclusion() {
    let s = sphere();
    let (step, cond, _) = failure(replay(&s, &script("47").without_step(5)));
    assert_eq!((step, cond.as_str()), (6, "v1^4-vanishing"));
    // one of the two needed corrections in stem 80
    let (step, _, detail) = failure(replay(&s, &script("80").without_step(6)));
    assert_eq!(step, 7);
    assert!(detail.contains("mu89"), "{detail}");
}

#[test]
fn wrong_tau_power_is_a_bidegree_failure() {
    let s = sphere();
    let mut sc = script("54");
    sc.steps[4].kind = StepKind::Correct(entry("t^9 j55"));
    let (step, cond, detail) = failure(replay(&s, &sc));
    assert_eq!((step, cond.as_str()), (5, "bidegree"));
    assert!(detail.contains("(55,16)"), "{detail}");
}

#[test]
fn corrections_must_be_torsion() {
    let s = sphere();
    let mut sc = script("47");
    // j47 itself has order 32
    sc.steps[2].kind = StepKind::Correct(entry("t^10 j47"));
    let (step, cond, _) = failure(replay(&s, &sc));
    assert_eq!((step, cond.as_str()), (3, "h0^3-torsion"));
}

#[test]
fn the_starting_class_must_be_torsion() {
    let s = sphere();
    let mut sc = script("71");
    sc.i = 2;
    sc.j = Some(4);
    let (step, cond, detail) = failure(replay(&s, &sc));
    assert_eq!((step, cond.as_str()), (1, "h0^2-torsion"));
    assert!(detail.contains("4 y71"));
}

#[test]
fn dismissal_needs_a_torsion_group() {
    let mut spec = sphere().spec;
    spec.classes.push(class("z62", 62, 2, &[20]));
    let s = SphereModel::new(spec).unwrap();
    let (step, cond, _) = failure(replay(&s, &script("54")));
    assert_eq!((step, cond.as_str()), (3, "tau-power torsion"));
}

#[test]
fn missing_cells_are_incomplete_not_false() {
    let mut spec = sphere().spec;
    spec.complete.retain(|c| c.stem != 55);
    let s = SphereModel::new(spec).unwrap();
    let err = replay(&s, &script("47")).unwrap_err();
    assert!(err.is_incomplete(), "{err}");
    assert!(err.to_string().contains("stem 55"));

    let mut spec = sphere().spec;
    spec.classes.retain(|c| c.name != "j56");
    let s = SphereModel::new(spec).unwrap();
    let err = replay(&s, &script("47")).unwrap_err();
    assert!(err.is_incomplete(), "{err}");
}

#[test]
fn steps_out_of_place() {
    let s = sphere();
    let mut sc = script("47");
    sc.steps.swap(1, 3);
    let (step, cond, _) = failure(replay(&s, &sc));
    assert_eq!((step, cond.as_str()), (4, "order of steps"));
    let sc = script("47").without_step(6);
    let (step, cond, _) = failure(replay(&s, &sc));
    assert_eq!((step, cond.as_str()), (5, "conclusion"));
}

#[test]
fn script_and_ladder_must_agree() {
    let s = sphere();
    let l = CofiberLadder::new(&s, 2, Some(4)).unwrap();
    assert!(matches!(replay_lift_argument(&script("47"), &l), Err(MooreError::Precondition(_))));
}

#[test]
fn script_text_errors() {
    let base = "id: x\nclass: y47 @ 47,10\ncomplex: M(8,v1^8)\nprovenance: lifts/47\n";
    for bad in ["1. torsion-lift\n", "1. fly  [k]\n", "2. v1-action [k]\n1. torsion-lift [k]\n", "1. correct j5 [k]\n"] {
        assert!(matches!(LiftScript::parse(&format!("{base}{bad}")), Err(MooreError::Parse(_))), "{bad}");
    }
    assert!(LiftScript::parse("id: x\ncomplex: M(8)\nprovenance: p\n").is_err());
    assert!(LiftScript::parse(&base.replace("M(8,v1^8)", "M(6)")).is_err());
    assert!(LiftScript::parse(&format!("{base}colour: red\n")).is_err());
}

//! Replay of top-cell lifting arguments written as numbered steps.
//!
//! A script lifts a sphere class `x` at `(s,f)` to `x[1,i-1]` in `M(h0^i)`,
//! applies `v1^4`, and removes the boundary and then the image-of-inclusion
//! parts of `v1^4 x[1,i-1]` by correcting with table entries. Every group is
//! taken modulo tau-power torsion.

use crate::error::{MooreError, Result};
use crate::ladder::{CofiberLadder, Quotient};
use crate::periodicity::periodicity_apply;
use crate::sphere::{format_invariants, Element, Lattice, SphereModel};
use crate::table::{Entry, PeriodicClassTable};
use chart_core::BiDegree;
use std::fmt;

const V1_4: BiDegree = BiDegree::new(8, 4);

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepKind {
    TorsionLift,
    V1Action,
    Correct(Entry),
    Dismiss,
    Membership,
    Conclude,
}

impl fmt::Display for StepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepKind::TorsionLift => write!(f, "torsion-lift"),
            StepKind::V1Action => write!(f, "v1-action"),
            StepKind::Correct(e) => write!(f, "correct {e}"),
            StepKind::Dismiss => write!(f, "dismiss"),
            StepKind::Membership => write!(f, "membership"),
            StepKind::Conclude => write!(f, "conclude"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub number: usize,
    pub kind: StepKind,
    pub citation: String,
}

/// Where the starting class comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Start {
    Class(String),
    Entry(Entry),
}

impl fmt::Display for Start {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Start::Class(n) => write!(f, "{n}"),
            Start::Entry(e) => write!(f, "{e}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftScript {
    pub id: String,
    pub class: Start,
    pub at: BiDegree,
    pub i: u32,
    pub j: Option<u32>,
    pub provenance: String,
    pub steps: Vec<Step>,
}

/// `M(8,v1^8)` gives `(3, Some(8))`, `M(4)` gives `(2, None)`.
pub fn parse_complex(s: &str) -> Result<(u32, Option<u32>)> {
    let bad = || MooreError::Parse(format!("bad complex `{s}`"));
    let inner = s.trim().strip_prefix("M(").and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
    let (two, v1) = match inner.split_once(',') {
        Some((a, b)) => (a.trim(), Some(b.trim())),
        None => (inner.trim(), None),
    };
    let two: u64 = two.parse().map_err(|_| bad())?;
    if !two.is_power_of_two() || two < 2 {
        return Err(bad());
    }
    let j = match v1 {
        Some(v) => Some(v.strip_prefix("v1^").and_then(|e| e.parse().ok()).ok_or_else(bad)?),
        None => None,
    };
    Ok((two.trailing_zeros(), j))
}

fn complex_name(i: u32, j: Option<u32>) -> String {
    match j {
        Some(j) => format!("M({},v1^{j})", 1u32 << i),
        None => format!("M({})", 1u32 << i),
    }
}

impl LiftScript {
    pub fn parse(text: &str) -> Result<LiftScript> {
        let (mut id, mut class, mut complex, mut provenance) = (None, None, None, None);
        let mut steps: Vec<Step> = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |m: String| MooreError::Parse(format!("line {}: {m}", ln + 1));
            if let Some((num, rest)) = line.split_once(". ").filter(|(n, _)| n.chars().all(|c| c.is_ascii_digit())) {
                let number: usize = num.parse().map_err(|_| err("bad step number".into()))?;
                if steps.last().is_some_and(|s| s.number >= number) {
                    return Err(err(format!("step {number} is out of order")));
                }
                let open = rest.rfind('[').ok_or_else(|| err(format!("step {number} has no citation")))?;
                let citation = rest[open + 1..]
                    .strip_suffix(']')
                    .map(str::trim)
                    .filter(|c| !c.is_empty())
                    .ok_or_else(|| err(format!("step {number} has a malformed citation")))?;
                let body = rest[..open].trim();
                let (word, arg) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
                let arg = arg.trim();
                let kind = match (word, arg.is_empty()) {
                    ("torsion-lift", true) => StepKind::TorsionLift,
                    ("v1-action", true) => StepKind::V1Action,
                    ("correct", false) => StepKind::Correct(Entry::parse(arg).map_err(|e| err(e.to_string()))?),
                    ("dismiss", true) => StepKind::Dismiss,
                    ("membership", true) => StepKind::Membership,
                    ("conclude", true) => StepKind::Conclude,
                    _ => return Err(err(format!("unknown step `{body}`"))),
                };
                steps.push(Step { number, kind, citation: citation.to_string() });
                continue;
            }
            let (key, value) = line.split_once(':').ok_or_else(|| err(format!("unreadable line `{line}`")))?;
            let value = value.trim().to_string();
            match key.trim() {
                "id" => id = Some(value),
                "class" => class = Some(value),
                "complex" => complex = Some(value),
                "provenance" => provenance = Some(value),
                k => return Err(err(format!("unknown header `{k}`"))),
            }
        }
        let missing = |h: &str| MooreError::Parse(format!("missing header `{h}`"));
        let class = class.ok_or_else(|| missing("class"))?;
        let (name, at) = class
            .split_once('@')
            .ok_or_else(|| MooreError::Parse(format!("class `{class}` needs `@ stem,filtration`")))?;
        let at = BiDegree::parse(at.trim()).ok_or_else(|| MooreError::Parse(format!("bad bidegree in `{class}`")))?;
        let name = name.trim();
        let start = match Entry::parse(name) {
            Ok(e) => Start::Entry(e),
            Err(_) => Start::Class(name.to_string()),
        };
        let (i, j) = parse_complex(&complex.ok_or_else(|| missing("complex"))?)?;
        Ok(LiftScript {
            id: id.ok_or_else(|| missing("id"))?,
            class: start,
            at,
            i,
            j,
            provenance: provenance.ok_or_else(|| missing("provenance"))?,
            steps,
        })
    }

    /// The script without the step numbered `number`.
    pub fn without_step(&self, number: usize) -> LiftScript {
        let mut s = self.clone();
        s.steps.retain(|st| st.number != number);
        s
    }

    pub fn ladder<'a>(&self, sphere: &'a SphereModel) -> Result<CofiberLadder<'a>> {
        CofiberLadder::new(sphere, self.i, self.j)
    }
}

impl fmt::Display for LiftScript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "id: {}", self.id)?;
        writeln!(f, "class: {} @ {},{}", self.class, self.at.stem, self.at.filtration)?;
        writeln!(f, "complex: {}", complex_name(self.i, self.j))?;
        writeln!(f, "provenance: {}", self.provenance)?;
        for s in &self.steps {
            writeln!(f, "{}. {}  [{}]", s.number, s.kind, s.citation)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conclusion {
    pub lift_at: BiDegree,
    pub top_cell_stem: i64,
    pub complex: String,
    pub corrections: Vec<Entry>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transcript {
    pub id: String,
    pub lines: Vec<String>,
    pub conclusion: Option<Conclusion>,
}

impl fmt::Display for Transcript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lines {
            writeln!(f, "{l}")?;
        }
        Ok(())
    }
}

enum Phase {
    Sphere,
    Lifted,
    Boundary { at: BiDegree, group: Lattice, images: Vec<Element> },
    Image { at: BiDegree, group: Quotient, images: Vec<Element> },
    Done,
}

fn fail(step: &Step, condition: &str, detail: String) -> MooreError {
    MooreError::Failed { step: step.number, condition: condition.into(), detail }
}

/// Logical failures of a periodicity operator become step failures; missing
/// fixture data stays an incomplete-fixture error.
fn as_step_failure(step: &Step, condition: &str, e: MooreError) -> MooreError {
    match e {
        MooreError::IncompleteFixture(_) => e,
        other => fail(step, condition, other.to_string()),
    }
}

fn list(xs: &[Element]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

pub fn replay_lift_argument(script: &LiftScript, ladder: &CofiberLadder) -> Result<Transcript> {
    if (script.i, script.j) != (ladder.i, ladder.j) {
        return Err(MooreError::Precondition(format!(
            "script {} is for {}, the ladder is {}",
            script.id,
            complex_name(script.i, script.j),
            ladder.name()
        )));
    }
    let sphere = ladder.sphere;
    let table = PeriodicClassTable::default();
    let i = script.i;
    let x = match &script.class {
        Start::Class(n) => {
            let c = sphere.class(n)?;
            Element::class(c.stem, n, 1)
        }
        Start::Entry(e) => {
            if e.bidegree() != script.at {
                return Err(MooreError::Precondition(format!("{e} sits at {}, not {}", e.bidegree(), script.at)));
            }
            sphere.entry_element(e)?
        }
    };
    if x.stem != script.at.stem || !sphere.in_filtration(&x, script.at.filtration)? || sphere.is_zero(&x)? {
        return Err(MooreError::Precondition(format!(
            "{} is not a tau-free class at {}",
            script.class, script.at
        )));
    }
    let name = script.class.to_string();
    let lift_at = ladder.lift_bidegree(script.at);
    let lift = format!("{name}[1,{}]", i - 1);
    let mut lines = vec![format!(
        "lift {name} at {} to the top cell of {} [{}]",
        script.at,
        complex_name(i, script.j),
        script.provenance
    )];
    let mut corrections = Vec::new();
    let mut conclusion = None;
    let mut phase = Phase::Sphere;
    for step in &script.steps {
        let tag = format!("[{}]", step.citation);
        let n = step.number;
        phase = match (phase, &step.kind) {
            (Phase::Sphere, StepKind::TorsionLift) => {
                let y = x.scale(1 << i);
                if !sphere.is_zero(&y)? {
                    return Err(fail(step, &format!("h0^{i}-torsion"), format!("h0^{i} {name} = {y}")));
                }
                lines.push(format!("{n}. h0^{i} {name} = 0, so {name} lifts to {lift} at {lift_at} {tag}"));
                Phase::Lifted
            }
            (Phase::Lifted, StepKind::V1Action) => {
                let at = lift_at + V1_4;
                let group = ladder.ker_part(at)?;
                lines.push(format!(
                    "{n}. v1^4 {lift} sits at {at}; its boundary lies in the h0^{i}-torsion of {}: {} {tag}",
                    at + ladder.h0_boundary_shift(),
                    format_invariants(&group.invariants())
                ));
                Phase::Boundary { at, group, images: Vec::new() }
            }
            (Phase::Boundary { at, group, mut images }, StepKind::Correct(e)) => {
                if e.bidegree() != script.at {
                    return Err(fail(step, "bidegree", format!("{e} sits at {}, {name} at {}", e.bidegree(), script.at)));
                }
                let c = sphere.entry_element(e)?;
                if !sphere.killed_by_two_power(&c, i)? {
                    return Err(fail(step, &format!("h0^{i}-torsion"), format!("{e} is not h0^{i}-torsion")));
                }
                let p = periodicity_apply(sphere, i, 1, *e).map_err(|err| as_step_failure(step, "periodicity", err))?;
                let img = sphere.entry_element(&p)?;
                lines.push(format!(
                    "{n}. replace {name} by {name} - a ({e}); the boundary of v1^4 ({e})[1,{}] is P_{i}({e}) = {p} = {img} {tag}",
                    i - 1
                ));
                corrections.push(*e);
                images.push(img);
                Phase::Boundary { at, group, images }
            }
            (Phase::Image { at, group, mut images }, StepKind::Correct(e)) => {
                if e.bidegree() != lift_at {
                    return Err(fail(step, "bidegree", format!("{e} sits at {}, {lift} at {lift_at}", e.bidegree())));
                }
                let shifted = table.v1_shift(*e).map_err(|err| as_step_failure(step, "v1-action", err))?;
                if shifted.bidegree() != at {
                    return Err(fail(
                        step,
                        "bidegree",
                        format!("v1^4 of {e}-bar is {shifted}-bar at {}, not {at}", shifted.bidegree()),
                    ));
                }
                let img = sphere.entry_element(&shifted)?;
                lines.push(format!(
                    "{n}. replace {lift} by {lift} - a ({e})-bar; the boundary is unchanged and v1^4 ({e})-bar = ({shifted})-bar = {img} {tag}"
                ));
                corrections.push(*e);
                images.push(img);
                Phase::Image { at, group, images }
            }
            (Phase::Boundary { at, group, images }, StepKind::Dismiss) => {
                if !group.is_trivial()? {
                    return Err(fail(
                        step,
                        "tau-power torsion",
                        format!("the h0^{i}-torsion below {at} is {}", format_invariants(&group.invariants())),
                    ));
                }
                lines.push(format!(
                    "{n}. the h0^{i}-torsion of {} is tau-power torsion {tag}",
                    at + ladder.h0_boundary_shift()
                ));
                Phase::Boundary { at, group, images }
            }
            (Phase::Image { at, group, images }, StepKind::Dismiss) => {
                if !group.uncovered(&[])?.is_empty() {
                    return Err(fail(
                        step,
                        "tau-power torsion",
                        format!("the image of the inclusion at {at} is {}", format_invariants(&group.invariants())),
                    ));
                }
                lines.push(format!("{n}. the image of the inclusion at {at} is tau-power torsion {tag}"));
                Phase::Image { at, group, images }
            }
            (Phase::Boundary { at, group, images }, StepKind::Membership) => {
                let missing = group.covered_by(&images, &[])?;
                if !missing.is_empty() {
                    return Err(fail(
                        step,
                        "v1^4-vanishing of the boundary",
                        format!(
                            "the boundary of v1^4 {lift} may be {} in {}, which no correction reaches",
                            list(&missing),
                            at + ladder.h0_boundary_shift()
                        ),
                    ));
                }
                let q = ladder.coker_part(at)?;
                lines.push(format!(
                    "{n}. after the corrections the boundary of v1^4 {lift} vanishes, so it comes from the cokernel of h0^{i} at {at}: {} {tag}",
                    format_invariants(&q.invariants())
                ));
                Phase::Image { at, group: q, images: Vec::new() }
            }
            (Phase::Image { at, group, images }, StepKind::Conclude) => {
                let missing = group.uncovered(&images)?;
                if !missing.is_empty() {
                    return Err(fail(
                        step,
                        "v1^4-vanishing",
                        format!("v1^4 {lift} may be the image of {} at {at}, which no correction reaches", list(&missing)),
                    ));
                }
                let j = script.j.ok_or_else(|| fail(step, "self-map", "no v1 power is declared".into()))?;
                if j % 4 != 0 {
                    return Err(fail(step, "self-map", format!("v1^4-torsion does not give v1^{j}-torsion")));
                }
                let top = ladder.top_cell_stem(lift_at.stem).expect("j is set");
                let complex = complex_name(i, Some(j));
                lines.push(format!(
                    "{n}. v1^4 {lift} = 0 modulo tau-power torsion; {name}[1] is v1^{j}-torsion and lifts to stem {top} of {complex} {tag}"
                ));
                conclusion = Some(Conclusion { lift_at, top_cell_stem: top, complex, corrections: corrections.clone() });
                Phase::Done
            }
            (_, kind) => return Err(fail(step, "order of steps", format!("`{kind}` does not apply here"))),
        };
    }
    if !script.steps.is_empty() && !matches!(phase, Phase::Done) {
        let last = script.steps.last().expect("nonempty");
        return Err(MooreError::Failed {
            step: last.number,
            condition: "conclusion".into(),
            detail: "the script ends before concluding".into(),
        });
    }
    if script.steps.is_empty() {
        lines.push("no steps".into());
    }
    Ok(Transcript { id: script.id.clone(), lines, conclusion })
}

//! Deleting a differential through a map: if every `d_r`-preimage of `b`
//! survives `f`, then no lift of `b` to the fiber is `tau^(r-1)`-torsion.

use crate::error::{MapError, Result};
use crate::fiber::{cokernel_group, kernel_group, BOUNDARY_SHIFT};
use crate::map::ChartMap;
use chart_core::chart::Parity;
use chart_core::pages::{self, min_kill_page_in};
use chart_core::snf::{self, Matrix, Vector};
use chart_core::{BiDegree, ChartError, Page, SyntheticClass};
use std::fmt;

/// The set of `d_r`-preimages `mult * b = d_r(a0 + K)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetWitness {
    pub source: BiDegree,
    pub a0: Vector,
    /// A unit (prime to the chart's prime); 1 over the integers.
    pub mult: i128,
    pub kernel: Matrix,
    pub image_a0: Vector,
    pub image_kernel: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Emptiness {
    BelowZero,
    OddTotalDegree,
    /// Filtration 0 off stem 0, by the map's declared zero-line injectivity.
    ZeroLine,
    Computed,
    Nonzero(String),
    Unknown(String),
}

impl Emptiness {
    pub fn is_empty(&self) -> bool {
        matches!(self, Emptiness::BelowZero | Emptiness::OddTotalDegree | Emptiness::ZeroLine | Emptiness::Computed)
    }
}

impl fmt::Display for Emptiness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Emptiness::BelowZero => write!(f, "empty: negative filtration of a connective fiber"),
            Emptiness::OddTotalDegree => write!(f, "empty: odd total degree in an even fiber"),
            Emptiness::ZeroLine => write!(f, "empty: zero line off stem 0"),
            Emptiness::Computed => write!(f, "empty: kernel and cokernel vanish"),
            Emptiness::Nonzero(g) => write!(f, "nonzero: {g}"),
            Emptiness::Unknown(why) => write!(f, "unknown: {why}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub target: BiDegree,
    pub element: Vector,
    pub page: u32,
    pub witness: CosetWitness,
    /// Fiber cells that could support longer differentials into the lift.
    pub below: Vec<(BiDegree, Emptiness)>,
    /// Every cell in `below` is empty, so the lift is a permanent cycle that
    /// is not tau-power torsion.
    pub detected: bool,
    pub transcript: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RefusalKind {
    ZeroOnE2,
    KilledEarlier,
    NotABoundary,
    TauLevel,
    CosetMeetsKernel,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refusal {
    pub kind: RefusalKind,
    pub detail: String,
    pub transcript: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Certificate(Box<Certificate>),
    Refusal(Refusal),
}

impl Verdict {
    pub fn is_certificate(&self) -> bool {
        matches!(self, Verdict::Certificate(_))
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Verdict::Certificate(c) => Some(c),
            Verdict::Refusal(_) => None,
        }
    }

    pub fn refusal(&self) -> Option<&Refusal> {
        match self {
            Verdict::Refusal(r) => Some(r),
            Verdict::Certificate(_) => None,
        }
    }

    pub fn transcript(&self) -> &[String] {
        match self {
            Verdict::Certificate(c) => &c.transcript,
            Verdict::Refusal(r) => &r.transcript,
        }
    }
}

fn refuse(kind: RefusalKind, detail: String, mut transcript: Vec<String>) -> Result<Verdict> {
    transcript.push(format!("refused: {detail}"));
    Ok(Verdict::Refusal(Refusal { kind, detail, transcript }))
}

/// `f(a0) + f(K)` avoids zero in the target cell at `source`.
pub fn coset_certifies(f: &ChartMap, source: BiDegree, a0: &[i128], kernel: &Matrix) -> Result<bool> {
    let y = f.target_group(source);
    let mut lattice: Matrix = kernel.iter().map(|k| f.apply(source, k)).collect::<Result<_>>()?;
    lattice.extend(y.relation_rows());
    let fa0 = f.apply(source, a0)?;
    Ok(!snf::contains(&lattice, &fa0, f.prime()))
}

/// Decide whether deleting the page-`r` differentials into `target` through
/// `f` is justified.
pub fn delete_differential_check(target: &SyntheticClass, r: u32, f: &ChartMap) -> Result<Verdict> {
    let x = &f.source;
    let p = f.prime();
    let at = target.bidegree;
    let b = &target.element;
    let mut tr = vec![format!("target {:?} at {at}, page {r}, map {}", b, f.name)];

    let fb = f.apply(at, b)?;
    if !f.target_group(at).is_zero(&fb, p) {
        return Err(MapError::Inapplicable(format!("f of the target is {:?}, not zero", fb)));
    }
    tr.push(format!("f(target) = 0 [{}]", provenance(f, at)));

    let mut stripped = x.clone();
    stripped.differentials.retain(|d| !(d.page == r && d.target == at));
    let table = pages::compute(&stripped)?;
    match min_kill_page_in(&table, p, at, b) {
        Err(ChartError::Domain(m)) => return refuse(RefusalKind::ZeroOnE2, m, tr),
        Err(e) => return Err(e.into()),
        Ok(Page::Finite(k)) if k < r => {
            return refuse(RefusalKind::KilledEarlier, format!("already killed on page {k} < {r}"), tr)
        }
        Ok(k) => tr.push(format!("without the candidate d{r}: target survives past page {}", k.min(Page::Finite(r)))),
    }

    let table = pages::compute(x)?;
    let kill = min_kill_page_in(&table, p, at, b)?;
    if kill != Page::Finite(r) {
        return refuse(RefusalKind::NotABoundary, format!("target is killed on page {kill}, not {r}"), tr);
    }
    let src = BiDegree::new(at.stem + 1, at.filtration - i64::from(r));
    let cur = table.at(r).expect("page table covers r");
    let ks = cur
        .get(&src)
        .ok_or_else(|| MapError::IncompleteFixture(format!("no cell at {src} for the d{r} preimage")))?;
    let bt = &cur[&at].b;
    let mut images: Matrix = Vec::new();
    for row in &ks.k {
        match pages::apply_differential(x, &table, r, src, row)? {
            Some((_, v)) if !v.is_empty() => images.push(v),
            _ => images.push(vec![0; b.len()]),
        }
    }
    let nd = images.len();
    let mut stacked = images.clone();
    stacked.extend(bt.iter().cloned());
    let Some((mult, c)) = snf::solve(&stacked, b, p) else {
        return refuse(RefusalKind::NotABoundary, format!("no d{r}-preimage at {src}"), tr);
    };
    let n = ks.n;
    let a0 = snf::combine(&c[..nd], &ks.k, n);
    let kernel: Matrix = snf::echelon(
        &snf::left_kernel(&stacked, b.len())
            .into_iter()
            .map(|c| snf::combine(&c[..nd], &ks.k, n))
            .collect::<Vec<_>>(),
        n,
    );
    tr.push(format!("d{r}-preimages of {}target: {:?} + span{:?} at {src}", mult_prefix(mult), a0, kernel));

    let comp = f.component(src)?;
    if !comp.valid_mod_tau(r - 1) {
        let t = comp.tau_level.unwrap_or(0);
        return refuse(
            RefusalKind::TauLevel,
            format!("map data at {src} holds mod tau^{t}; the check needs mod tau^{}", r - 1),
            tr,
        );
    }
    let image_a0 = f.apply(src, &a0)?;
    let image_kernel: Matrix = kernel.iter().map(|k| f.apply(src, k)).collect::<Result<_>>()?;
    let mut lattice = image_kernel.clone();
    lattice.extend(f.target_group(src).relation_rows());
    let factors = snf::invariant_factors(&lattice, image_a0.len());
    tr.push(format!(
        "f(a0) = {:?}; f(K) + relations has invariant factors {:?} [{}]",
        image_a0,
        factors,
        provenance(f, src)
    ));
    let witness = CosetWitness { source: src, a0, mult, kernel, image_a0, image_kernel };
    if snf::contains(&lattice, &witness.image_a0, p) {
        return refuse(RefusalKind::CosetMeetsKernel, "some preimage is killed by f".into(), tr);
    }
    tr.push("f(a0) is outside f(K): every preimage survives f".into());

    let below = below_cells(f, at, r);
    for (c, e) in &below {
        tr.push(format!("fiber cell {c}: {e}"));
    }
    let detected = below.iter().all(|(_, e)| e.is_empty());
    tr.push(format!(
        "certificate: tau^{} * lift != 0{}",
        r - 1,
        if detected { "; the lift is detected" } else { "" }
    ));
    Ok(Verdict::Certificate(Box::new(Certificate {
        target: at,
        element: b.clone(),
        page: r,
        witness,
        below,
        detected,
        transcript: tr,
    })))
}

fn mult_prefix(m: i128) -> String {
    if m == 1 {
        String::new()
    } else {
        format!("{m} * ")
    }
}

fn provenance(f: &ChartMap, at: BiDegree) -> String {
    f.components
        .get(&at)
        .and_then(|c| c.provenance.clone())
        .unwrap_or_else(|| f.name.clone())
}

/// Fiber cells `(s+1, f-r-i)`, `i >= 1`, down to the first negative filtration.
pub fn below_cells(f: &ChartMap, at: BiDegree, r: u32) -> Vec<(BiDegree, Emptiness)> {
    let connective = f.source.connective && f.target.connective;
    let even = f.source.parity == Some(Parity::Even) && f.target.parity == Some(Parity::Even);
    let p = f.prime();
    let mut out = Vec::new();
    let mut i = 1;
    loop {
        let c = BiDegree::new(at.stem + 1, at.filtration - i64::from(r) - i);
        let e = if c.filtration < 0 && connective {
            Emptiness::BelowZero
        } else if even && c.total().rem_euclid(2) == 1 {
            Emptiness::OddTotalDegree
        } else {
            let computed = match (kernel_group(f, c), cokernel_group(f, c - BOUNDARY_SHIFT)) {
                (Ok(k), Ok(q)) => {
                    let (ki, qi) = (k.invariants(p), q.invariants(p));
                    if ki.is_trivial() && qi.is_trivial() {
                        Emptiness::Computed
                    } else {
                        Emptiness::Nonzero(format!("lifts {ki}, boundaries {qi}"))
                    }
                }
                (Err(e), _) | (_, Err(e)) => Emptiness::Unknown(e.to_string()),
            };
            let declared = f.zero_line_injective.is_some()
                && c.filtration == 0
                && c.stem != 0
                && f.source.cell(c).is_none_or(|cell| cell.group.invariants(p).torsion.is_empty())
                && f.target.cell(c - BOUNDARY_SHIFT).is_none_or(|cell| cell.group.is_trivial(p));
            match computed {
                Emptiness::Unknown(_) if declared => Emptiness::ZeroLine,
                other => other,
            }
        };
        let stop = c.filtration < 0;
        out.push((c, e));
        if stop || c.filtration < f.source.window.filtrations.0 - 1 {
            break;
        }
        i += 1;
    }
    out
}

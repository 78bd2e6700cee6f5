//! The family catalog and the audit that recounts it from the fixtures.

use crate::fixture::Fixture;
use chart_core::BiDegree;
use serde::{Deserialize, Serialize};
use spectral_maps::{qp_leading_term, DifferentialRow, Verdict};
use std::collections::BTreeSet;
use std::fmt;
use toda_ledger::chain::apply_relation;
use toda_ledger::{check_relation_chain, force_nonzero_from_empty, RelationDB, Word};

/// One product in a row, with the factors that act as periodicity generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyEntry {
    pub word: String,
    pub bold: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Pipeline {
    /// Deleted-differential check on the differential table row of this degree.
    DeleteDiff { row: i64 },
    /// An empty bracket forcing `forced` to be nonzero.
    Bracket { bracket: String, forced: String },
}

impl fmt::Display for Pipeline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pipeline::DeleteDiff { row } => write!(f, "delete-diff (row {row})"),
            Pipeline::Bracket { bracket, .. } => write!(f, "empty bracket {bracket}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyRecord {
    pub label: String,
    pub degree: i64,
    pub an_filtration: i64,
    pub order: u32,
    pub generator: String,
    pub e2_rep: String,
    pub count: usize,
    /// Detected in the Atkin-Lehner fixed points.
    pub detected: bool,
    pub entries: Vec<FamilyEntry>,
    pub carrier: String,
    pub pipeline: Pipeline,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chain: Option<String>,
    #[serde(default)]
    pub provenance: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyCatalog {
    pub period: i64,
    pub total: usize,
    pub provenance: String,
    pub records: Vec<FamilyRecord>,
}

impl FamilyCatalog {
    pub fn record(&self, label: &str) -> Option<&FamilyRecord> {
        self.records.iter().find(|r| r.label == label)
    }
}

fn word(s: &str) -> Result<Word, String> {
    Word::parse(s).map_err(|e| format!("`{s}`: {e}"))
}

impl FamilyRecord {
    pub fn degree_mod(&self, period: i64) -> i64 {
        self.degree.rem_euclid(period)
    }

    pub fn bold_count(&self) -> usize {
        self.entries.iter().map(|e| e.bold.len()).sum()
    }

    /// Structural invariants against the relation database's bidegrees.
    pub fn check(&self, db: &RelationDB, period: i64) -> Result<(), String> {
        if ![2, 4, 8].contains(&self.order) {
            return Err(format!("order {} is not 2, 4 or 8", self.order));
        }
        if self.detected != matches!(self.pipeline, Pipeline::DeleteDiff { .. }) {
            return Err("detected rows use the deleted-differential check, the others a bracket".into());
        }
        if self.entries.is_empty() || self.count == 0 {
            return Err("no entries".into());
        }
        if self.entries.len() > 1 && self.chain.is_none() {
            return Err("several entries need a chain relating them".into());
        }
        let stem_ok = |w: &Word| -> Result<(), String> {
            let b = db.bidegree(w).map_err(|e| format!("`{w}`: {e}"))?;
            if (b.stem - self.degree).rem_euclid(period) != 0 {
                return Err(format!("`{w}` lies in stem {}, not {} mod {period}", b.stem, self.degree));
            }
            Ok(())
        };
        stem_ok(&word(&self.generator)?)?;
        for e in &self.entries {
            let w = word(&e.word)?;
            stem_ok(&w)?;
            let mut seen = BTreeSet::new();
            for b in &e.bold {
                let g = word(b)?;
                if !seen.insert(g.clone()) {
                    return Err(format!("`{b}` is listed twice in `{}`", e.word));
                }
                if w.tau_free().div(&g).is_none() {
                    return Err(format!("`{b}` does not divide `{}`", e.word));
                }
            }
        }
        Ok(())
    }
}

/// One report line; every line cites the record or rule that justifies it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportLine {
    pub label: String,
    pub text: String,
    pub provenance: String,
}

impl fmt::Display for ReportLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<5} {}  [{}]", self.label, self.text, self.provenance)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Merge {
    pub label: String,
    pub generator: String,
    pub left: String,
    pub right: String,
    pub relation: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowOutcome {
    pub label: String,
    pub degree: i64,
    pub order: u32,
    pub pipeline: String,
    pub raw: usize,
    pub count: usize,
    pub expected: usize,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    /// The failing record, or `None` for catalog-wide checks.
    pub label: Option<String>,
    pub message: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.label {
            Some(l) => write!(f, "row {l}: {}", self.message),
            None => write!(f, "{}", self.message),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AuditReport {
    pub lines: Vec<ReportLine>,
    pub rows: Vec<RowOutcome>,
    pub merges: Vec<Merge>,
    /// Printed values that disagree with the fixture; reported, not resolved.
    pub flags: Vec<ReportLine>,
    pub failures: Vec<Failure>,
    pub raw_total: usize,
    pub total: usize,
    pub expected_total: usize,
    pub degree_classes: usize,
}

impl AuditReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn row(&self, label: &str) -> Option<&RowOutcome> {
        self.rows.iter().find(|r| r.label == label)
    }

    pub fn failing_rows(&self) -> Vec<&str> {
        let set: BTreeSet<&str> = self.failures.iter().filter_map(|f| f.label.as_deref()).collect();
        self.rows.iter().map(|r| r.label.as_str()).filter(|l| set.contains(l)).collect()
    }
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lines {
            writeln!(f, "{l}")?;
        }
        for l in &self.flags {
            writeln!(f, "{l}")?;
        }
        if self.pass() {
            writeln!(f, "result: pass, {} families in {} degree classes", self.total, self.degree_classes)
        } else {
            writeln!(f, "result: FAIL, {} failures", self.failures.len())?;
            for x in &self.failures {
                writeln!(f, "  {x}")?;
            }
            Ok(())
        }
    }
}

/// Work done for one record, merged in catalog order.
#[derive(Default)]
struct RowWork {
    lines: Vec<ReportLine>,
    flags: Vec<ReportLine>,
    failures: Vec<Failure>,
    merges: Vec<Merge>,
    raw: usize,
    count: usize,
}

impl RowWork {
    fn line(&mut self, rec: &FamilyRecord, text: String, provenance: &str) {
        self.lines.push(ReportLine { label: rec.label.clone(), text, provenance: provenance.into() });
    }

    fn fail(&mut self, rec: &FamilyRecord, message: String) {
        self.line(rec, format!("FAIL {message}"), &rec.provenance);
        self.failures.push(Failure { label: Some(rec.label.clone()), message });
    }
}

fn check_differential(fx: &Fixture, rec: &FamilyRecord, row: &DifferentialRow, w: &mut RowWork) {
    let tmf = &fx.tmf;
    let (src, tgt) = match (row.source_at(tmf), row.target_at(tmf)) {
        (Ok(s), Ok(t)) => (s, t),
        (Err(e), _) | (_, Err(e)) => return w.fail(rec, format!("differential row {}: {e}", row.degree)),
    };
    let r = i64::from(row.page);
    if src + BiDegree::new(-1, r) != tgt {
        return w.fail(rec, format!("d{r} from {src} cannot reach {tgt}"));
    }
    if !(tgt.filtration - 2 <= r && r <= tgt.filtration) {
        return w.fail(rec, format!("page {r} is not within 2 of the target filtration {}", tgt.filtration));
    }
    match row.check(&fx.qp3) {
        Err(e) => w.fail(rec, format!("deleted-differential check: {e}")),
        Ok(Verdict::Refusal(x)) => w.fail(rec, format!("deleted-differential check refused ({:?}): {}", x.kind, x.detail)),
        Ok(Verdict::Certificate(c)) if !c.detected => {
            w.fail(rec, format!("lift of {} may support a longer differential", row.target))
        }
        Ok(Verdict::Certificate(_)) => {
            let text = format!("d{r} {src} -> {tgt} deleted by {}: lift of {} is detected", fx.qp3.name, row.target);
            w.line(rec, text, &row.provenance);
        }
    }
    if rec.e2_rep == row.e2_rep {
        if rec.order != row.group {
            w.fail(rec, format!("order {} but the differential table lists {}", rec.order, row.group));
        }
        if rec.an_filtration != row.filtration {
            let text = format!(
                "flag: AN filtration {} here, {} in the differential table, {} on the chart",
                rec.an_filtration, row.filtration, tgt.filtration
            );
            w.flags.push(ReportLine { label: rec.label.clone(), text, provenance: rec.provenance.clone() });
        }
    }
    if let Ok(ds) = row.discrepancies(tmf) {
        for d in ds {
            let text = format!("flag: differential table prints {} {}, the chart gives {}", d.field, d.printed, d.actual);
            w.flags.push(ReportLine { label: rec.label.clone(), text, provenance: row.provenance.clone() });
        }
    }
    // The translate of a zero-line source by Delta^8.
    if src.filtration == 0 && src.stem > 0 && src.stem % 24 == 0 {
        let k = src.stem / 24 + 8;
        match qp_leading_term(k) {
            Ok(t) if t.is_nonzero() => {
                w.line(rec, format!("translate source Delta^{k}: (q-p) has leading term {t}"), "tmf03-anss")
            }
            Ok(t) => w.fail(rec, format!("(q-p)(Delta^{k}) = {t} vanishes mod 2")),
            Err(e) => w.fail(rec, e.to_string()),
        }
    }
}

fn check_bracket(fx: &Fixture, rec: &FamilyRecord, id: &str, forced: &str, w: &mut RowWork) {
    let db = &fx.relations;
    let Some(b) = db.bracket(id) else {
        return w.fail(rec, format!("unknown bracket `{id}`"));
    };
    let want = match Word::parse(forced) {
        Ok(x) => x,
        Err(e) => return w.fail(rec, format!("`{forced}`: {e}")),
    };
    match force_nonzero_from_empty(b, db) {
        Err(e) => w.fail(rec, format!("bracket {id}: {e}")),
        Ok(c) => match (&c.nonzero, &c.vanishing) {
            (Some(x), Some(s)) if *x == want => {
                let (ab, bc) = &c.disjunction;
                let text = format!("{id} empty: {ab} != 0 or {bc} != 0; {} = 0 by {}, so {x} != 0", s.from, s.relation);
                w.line(rec, text, &b.provenance);
            }
            (Some(x), _) => w.fail(rec, format!("bracket {id} forces {x}, not {want}")),
            _ => w.fail(rec, format!("bracket {id} leaves both products open")),
        },
    }
}

fn check_chain(fx: &Fixture, rec: &FamilyRecord, id: &str, w: &mut RowWork) {
    let Some(c) = fx.chain(id) else {
        return w.fail(rec, format!("unknown chain `{id}`"));
    };
    let prov = c.provenance.clone().unwrap_or_default();
    match check_relation_chain(c, &fx.relations) {
        Err(e) => return w.fail(rec, format!("chain {id}: {e}")),
        Ok(t) => {
            let rels = t.relations().join(", ");
            w.line(rec, format!("chain {id}: {} words, {} steps ({rels})", c.words.len(), t.steps.len()), &prov);
        }
    }
    let on_chain: BTreeSet<Word> = c.words.iter().map(|x| x.tau_free()).collect();
    for e in &rec.entries {
        match Word::parse(&e.word) {
            Ok(x) if on_chain.contains(&x.tau_free()) => {}
            Ok(_) => w.fail(rec, format!("`{}` is not on chain {id}", e.word)),
            Err(err) => w.fail(rec, format!("`{}`: {err}", e.word)),
        }
    }
}

fn find(parent: &mut [usize], i: usize) -> usize {
    let mut r = i;
    while parent[r] != r {
        r = parent[r];
    }
    parent[i] = r;
    r
}

/// Bold factors, less products that a classical relation identifies.
fn count(db: &RelationDB, rec: &FamilyRecord, w: &mut RowWork) {
    // (entry index, generator, cofactor)
    let mut items = Vec::new();
    for (i, e) in rec.entries.iter().enumerate() {
        let Ok(x) = Word::parse(&e.word) else { continue };
        for b in &e.bold {
            let Ok(g) = Word::parse(b) else { continue };
            if let Some(cof) = x.tau_free().div(&g) {
                items.push((i, g, cof));
            }
        }
    }
    let mut parent: Vec<usize> = (0..items.len()).collect();
    let classical: Vec<_> = db.relations.iter().filter(|r| !r.spec.synthetic).collect();
    for a in 0..items.len() {
        for b in a + 1..items.len() {
            let ((ia, ga, ca), (ib, gb, cb)) = (&items[a], &items[b]);
            if ia == ib || ga != gb {
                continue;
            }
            let Some((r, _)) = classical.iter().find_map(|r| apply_relation(r, ca, cb, None).map(|s| (*r, s))) else {
                continue;
            };
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                continue;
            }
            parent[rb] = ra;
            let m = Merge {
                label: rec.label.clone(),
                generator: ga.to_string(),
                left: rec.entries[*ia].word.clone(),
                right: rec.entries[*ib].word.clone(),
                relation: r.id().to_string(),
            };
            let text = format!("merge {} ~ {} along {}: {ca} = {cb} by {}", m.left, m.right, m.generator, m.relation);
            w.line(rec, text, &r.spec.provenance);
            w.merges.push(m);
        }
    }
    w.raw = rec.bold_count();
    w.count = w.raw - w.merges.len();
    let text = format!("count {} ({} bold factors, {} merged)", w.count, w.raw, w.merges.len());
    w.line(rec, text, &rec.provenance);
    if w.count != rec.count {
        w.fail(rec, format!("counted {} families, the catalog lists {}", w.count, rec.count));
    }
}

fn verify_record(fx: &Fixture, rec: &FamilyRecord) -> RowWork {
    let mut w = RowWork::default();
    let head = format!("Z/{} {} {}, {} via {}", rec.order, rec.e2_rep, rec.generator, rec.pipeline, rec.carrier);
    w.line(rec, head, &rec.provenance);
    match &rec.pipeline {
        Pipeline::DeleteDiff { row } => match fx.table2.row(*row) {
            Some(r) => check_differential(fx, rec, r, &mut w),
            None => w.fail(rec, format!("no differential for degree {row} in the differential table")),
        },
        Pipeline::Bracket { bracket, forced } => check_bracket(fx, rec, bracket, forced, &mut w),
    }
    if let Some(c) = &rec.chain {
        check_chain(fx, rec, c, &mut w);
    }
    count(&fx.relations, rec, &mut w);
    w
}

/// Rerun every pipeline and chain behind the catalog and recount it.
pub fn families_verify(fx: &Fixture) -> AuditReport {
    let cat = &fx.families;
    let works: Vec<RowWork> = std::thread::scope(|s| {
        let hs: Vec<_> = cat.records.iter().map(|r| s.spawn(move || verify_record(fx, r))).collect();
        hs.into_iter().map(|h| h.join().expect("audit worker")).collect()
    });

    let mut rep = AuditReport { expected_total: cat.total, ..Default::default() };
    rep.lines.push(ReportLine {
        label: "*".into(),
        text: format!("{} records, degrees mod {}", cat.records.len(), cat.period),
        provenance: cat.provenance.clone(),
    });
    let mut seen_flags = BTreeSet::new();
    for (rec, w) in cat.records.iter().zip(works) {
        let ok = w.failures.is_empty();
        rep.rows.push(RowOutcome {
            label: rec.label.clone(),
            degree: rec.degree,
            order: rec.order,
            pipeline: rec.pipeline.to_string(),
            raw: w.raw,
            count: w.count,
            expected: rec.count,
            ok,
        });
        rep.raw_total += w.raw;
        rep.total += w.count;
        rep.lines.extend(w.lines);
        rep.merges.extend(w.merges);
        rep.failures.extend(w.failures);
        for fl in w.flags {
            if seen_flags.insert(fl.text.clone()) {
                rep.flags.push(fl);
            }
        }
    }
    rep.degree_classes = cat.records.iter().map(|r| r.degree_mod(cat.period)).collect::<BTreeSet<_>>().len();
    rep.lines.push(ReportLine {
        label: "*".into(),
        text: format!(
            "total {} = {} bold factors - {} merges, {} degree classes",
            rep.total,
            rep.raw_total,
            rep.merges.len(),
            rep.degree_classes
        ),
        provenance: cat.provenance.clone(),
    });
    rep.lines.push(ReportLine {
        label: "*".into(),
        text: format!("translates by multiples of {} rest on the v2^32 self-maps", cat.period),
        provenance: "lifts/selfmaps".into(),
    });
    if rep.total != cat.total {
        rep.failures.push(Failure { label: None, message: format!("total {} differs from {}", rep.total, cat.total) });
    }
    rep
}

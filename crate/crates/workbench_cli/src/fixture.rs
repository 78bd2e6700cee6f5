//! Loading and cross-checking the fixture directory.

use crate::error::LoadError;
use crate::families::FamilyCatalog;
use chart_core::{validate, Chart};
use moore_lift::{LiftScript, PeriodicClassTable, SphereModel, SphereSpec};
use serde::de::DeserializeOwned;
use spectral_maps::{ChartMap, DifferentialTable, MapSpec};
use std::fs;
use std::path::{Path, PathBuf};
use toda_ledger::chain::Chain;
use toda_ledger::db::{Ambient, DbFile};
use toda_ledger::RelationDB;

pub const KO: &str = "charts/ko.json";
pub const TMF: &str = "charts/tmf.json";
pub const TMF03: &str = "charts/tmf03.json";
pub const SPHERE: &str = "charts/sphere_f2.json";
pub const PSI3: &str = "maps/ko_psi3.json";
pub const QP3: &str = "maps/qp3.json";
pub const RELATIONS: &str = "relations.json";
pub const TABLE2: &str = "table2.json";
pub const FAMILIES: &str = "families.json";
pub const CHAINS: &str = "chains";
pub const SCRIPTS: &str = "scripts";

/// Ambient chart name used by relations that hold in the sphere.
pub const SPHERE_AMBIENT: &str = "S";

#[derive(Clone, Debug)]
pub struct Fixture {
    pub root: PathBuf,
    pub ko: Chart,
    pub tmf: Chart,
    pub tmf03: Chart,
    pub psi3: ChartMap,
    pub qp3: ChartMap,
    pub table2: DifferentialTable,
    pub relations: RelationDB,
    /// `(file name, chain)`, sorted by file name.
    pub chains: Vec<(String, Chain)>,
    /// `(file name, script)`, sorted by file name.
    pub scripts: Vec<(String, LiftScript)>,
    pub sphere: SphereModel,
    pub families: FamilyCatalog,
    pub warnings: Vec<String>,
}

impl Fixture {
    pub fn chart(&self, name: &str) -> Option<&Chart> {
        [&self.ko, &self.tmf, &self.tmf03].into_iter().find(|c| c.name == name)
    }

    pub fn chain(&self, id: &str) -> Option<&Chain> {
        self.chains.iter().map(|(_, c)| c).find(|c| c.id == id)
    }

    pub fn script(&self, id: &str) -> Option<&LiftScript> {
        self.scripts.iter().map(|(_, s)| s).find(|s| s.id == id)
    }
}

/// 1-based line of the first occurrence of `needle`.
pub fn line_of(text: &str, needle: &str) -> Option<usize> {
    text.lines().position(|l| l.contains(needle)).map(|i| i + 1)
}

fn read(root: &Path, rel: &str) -> Result<String, LoadError> {
    fs::read_to_string(root.join(rel)).map_err(|e| LoadError::new(rel, None, format!("cannot read: {e}")))
}

fn parse<T: DeserializeOwned>(rel: &str, text: &str) -> Result<T, LoadError> {
    serde_json::from_str(text).map_err(|e| LoadError::new(rel, Some(e.line()), format!("schema: {e}")))
}

fn missing(p: &Option<String>) -> bool {
    p.as_deref().is_none_or(|s| s.trim().is_empty())
}

fn bideg_needle(key: &str, at: chart_core::BiDegree) -> String {
    format!("\"{key}\": [{}, {}]", at.stem, at.filtration)
}

/// Parse a chart file, require provenance everywhere and run the validators.
pub fn load_chart(rel: &str, text: &str) -> Result<Chart, LoadError> {
    let chart: Chart = parse(rel, text)?;
    for c in &chart.cells {
        if missing(&c.provenance) {
            return Err(LoadError::new(rel, line_of(text, &bideg_needle("at", c.at)), format!("cell {} has no provenance", c.at)));
        }
    }
    for d in &chart.differentials {
        if missing(&d.provenance) {
            let line = line_of(text, &bideg_needle("source", d.source));
            return Err(LoadError::new(rel, line, format!("d{} on {} has no provenance", d.page, d.source)));
        }
    }
    for p in &chart.products {
        if missing(&p.provenance) {
            let line = line_of(text, &format!("\"left\": \"{}\", \"right\": \"{}\"", p.left, p.right));
            return Err(LoadError::new(rel, line, format!("product {} * {} has no provenance", p.left, p.right)));
        }
    }
    for e in &chart.extensions {
        if missing(&e.provenance) {
            let line = line_of(text, &format!("\"source\": \"{}\"", e.source));
            return Err(LoadError::new(rel, line, format!("extension on {} has no provenance", e.source)));
        }
    }
    let rep = validate(&chart);
    if let Some(v) = rep.first() {
        return Err(LoadError::new(rel, None, format!("chart `{}` fails validation: {v}", chart.name)));
    }
    Ok(chart)
}

fn load_map(rel: &str, text: &str, charts: &[&Chart]) -> Result<ChartMap, LoadError> {
    let spec: MapSpec = parse(rel, text)?;
    if missing(&spec.provenance) {
        return Err(LoadError::new(rel, line_of(text, "\"name\""), format!("map `{}` has no provenance", spec.name)));
    }
    for c in &spec.components {
        if missing(&c.provenance) {
            return Err(LoadError::new(rel, line_of(text, &bideg_needle("at", c.at)), format!("component at {} has no provenance", c.at)));
        }
    }
    let find = |name: &str, key: &str| {
        charts
            .iter()
            .find(|c| c.name == name)
            .ok_or_else(|| LoadError::new(rel, line_of(text, &format!("\"{key}\"")), format!("unknown chart `{name}`")))
    };
    let (s, t) = (find(&spec.source, "source")?, find(&spec.target, "target")?);
    ChartMap::from_spec(&spec, s, t).map_err(|e| LoadError::new(rel, None, e.to_string()))
}

fn check_ambient(rel: &str, text: &str, id: &str, a: &Ambient, charts: &[&Chart]) -> Result<(), LoadError> {
    if a.chart == SPHERE_AMBIENT {
        return Ok(());
    }
    let line = || line_of(text, &format!("\"id\": \"{id}\""));
    let Some(c) = charts.iter().find(|c| c.name == a.chart) else {
        return Err(LoadError::new(rel, line(), format!("`{id}` names unknown chart `{}`", a.chart)));
    };
    if !c.window.contains(a.at) {
        return Err(LoadError::new(rel, line(), format!("`{id}` sits at {} outside the {} window", a.at, a.chart)));
    }
    Ok(())
}

fn load_relations(rel: &str, text: &str, charts: &[&Chart]) -> Result<RelationDB, LoadError> {
    let file: DbFile = parse(rel, text)?;
    let line = |id: &str| line_of(text, &format!("\"{id}\""));
    for a in &file.atoms {
        if a.provenance.trim().is_empty() {
            return Err(LoadError::new(rel, line(&a.name), format!("atom `{}` has no provenance", a.name)));
        }
    }
    for r in &file.relations {
        if r.provenance.trim().is_empty() {
            return Err(LoadError::new(rel, line(&r.id), format!("relation `{}` has no provenance", r.id)));
        }
        check_ambient(rel, text, &r.id, &r.ambient, charts)?;
    }
    for b in &file.brackets {
        if b.provenance.trim().is_empty() {
            return Err(LoadError::new(rel, line(&b.id), format!("bracket `{}` has no provenance", b.id)));
        }
        check_ambient(rel, text, &b.id, &b.ambient, charts)?;
    }
    for q in &file.questions {
        if q.provenance.trim().is_empty() {
            return Err(LoadError::new(rel, line(&q.id), format!("question `{}` has no provenance", q.id)));
        }
    }
    RelationDB::from_file(file).map_err(|e| LoadError::new(rel, None, e.to_string()))
}

fn load_table(rel: &str, text: &str, tmf: &Chart, qp3: &ChartMap) -> Result<DifferentialTable, LoadError> {
    let t: DifferentialTable = parse(rel, text)?;
    if t.chart != tmf.name || t.map != qp3.name {
        return Err(LoadError::new(rel, Some(1), format!("table refers to `{}` and `{}`", t.chart, t.map)));
    }
    for r in &t.rows {
        let line = line_of(text, &format!("\"degree\": {},", r.degree));
        if r.provenance.trim().is_empty() {
            return Err(LoadError::new(rel, line, format!("row {} has no provenance", r.degree)));
        }
        r.target_at(tmf).map_err(|e| LoadError::new(rel, line, format!("row {}: {e}", r.degree)))?;
        r.source_at(tmf).map_err(|e| LoadError::new(rel, line, format!("row {}: {e}", r.degree)))?;
    }
    Ok(t)
}

/// Files in `dir` with extension `ext`, sorted by name.
fn listing(root: &Path, dir: &str, ext: &str) -> Result<Vec<String>, LoadError> {
    let rd = fs::read_dir(root.join(dir)).map_err(|e| LoadError::new(dir, None, format!("cannot list: {e}")))?;
    let mut out: Vec<String> = rd
        .filter_map(|e| e.ok())
        .map(|e| e.file_name().to_string_lossy().into_owned())
        .filter(|n| Path::new(n).extension().is_some_and(|x| x == ext))
        .collect();
    out.sort();
    Ok(out)
}

fn load_chains(root: &Path, db: &RelationDB, charts: &[&Chart]) -> Result<Vec<(String, Chain)>, LoadError> {
    let mut out = Vec::new();
    for name in listing(root, CHAINS, "txt")? {
        let rel = format!("{CHAINS}/{name}");
        let text = read(root, &rel)?;
        let c = Chain::parse(&text).map_err(|e| LoadError::new(&rel, None, e.to_string()))?;
        if missing(&c.provenance) {
            return Err(LoadError::new(&rel, Some(1), format!("chain `{}` has no provenance", c.id)));
        }
        if c.id.is_empty() {
            return Err(LoadError::new(&rel, Some(1), "chain has no id"));
        }
        if let Some((chart, at)) = &c.ambient {
            let a = Ambient { chart: chart.clone(), at: *at };
            check_ambient(&rel, &text, &c.id, &a, charts).map_err(|e| LoadError { line: line_of(&text, "ambient:"), ..e })?;
        }
        for (i, w) in c.words.iter().enumerate() {
            if !w.is_zero() {
                db.bidegree(w).map_err(|e| LoadError::new(&rel, None, format!("word {}: {e}", i + 1)))?;
            }
        }
        out.push((name, c));
    }
    Ok(out)
}

fn load_scripts(root: &Path, sphere: &SphereModel) -> Result<Vec<(String, LiftScript)>, LoadError> {
    let mut out = Vec::new();
    for name in listing(root, SCRIPTS, "steps")? {
        let rel = format!("{SCRIPTS}/{name}");
        let text = read(root, &rel)?;
        let s = LiftScript::parse(&text).map_err(|e| LoadError::new(&rel, None, e.to_string()))?;
        if s.provenance.trim().is_empty() {
            return Err(LoadError::new(&rel, line_of(&text, "id:"), format!("script `{}` has no provenance", s.id)));
        }
        for st in &s.steps {
            if st.citation.trim().is_empty() {
                let line = line_of(&text, &format!("{}. ", st.number));
                return Err(LoadError::new(&rel, line, format!("step {} has no citation", st.number)));
            }
        }
        s.ladder(sphere).map_err(|e| LoadError::new(&rel, line_of(&text, "complex:"), e.to_string()))?;
        if let moore_lift::Start::Class(c) = &s.class {
            sphere.class(c).map_err(|e| LoadError::new(&rel, line_of(&text, "class:"), e.to_string()))?;
        }
        out.push((name, s));
    }
    Ok(out)
}

/// Load and cross-check every fixture under `root`.
pub fn ingest(root: impl AsRef<Path>) -> Result<Fixture, LoadError> {
    let root = root.as_ref();
    let ko = load_chart(KO, &read(root, KO)?)?;
    let tmf = load_chart(TMF, &read(root, TMF)?)?;
    let tmf03 = load_chart(TMF03, &read(root, TMF03)?)?;
    let charts = [&ko, &tmf, &tmf03];
    let psi3 = load_map(PSI3, &read(root, PSI3)?, &charts)?;
    let qp3 = load_map(QP3, &read(root, QP3)?, &charts)?;

    let text = read(root, SPHERE)?;
    let spec: SphereSpec = parse(SPHERE, &text)?;
    let sphere = SphereModel::new(spec).map_err(|e| LoadError::new(SPHERE, None, e.to_string()))?;

    let relations = load_relations(RELATIONS, &read(root, RELATIONS)?, &charts)?;
    let table2 = load_table(TABLE2, &read(root, TABLE2)?, &tmf, &qp3)?;
    let chains = load_chains(root, &relations, &charts)?;
    let scripts = load_scripts(root, &sphere)?;

    let text = read(root, FAMILIES)?;
    let families: FamilyCatalog = parse(FAMILIES, &text)?;
    let carriers: Vec<String> = PeriodicClassTable::default().self_maps.iter().map(|m| m.complex.clone()).collect();
    for r in &families.records {
        let line = line_of(&text, &format!("\"label\": \"{}\"", r.label));
        let err = |m: String| LoadError::new(FAMILIES, line, format!("{}: {m}", r.label));
        if r.provenance.trim().is_empty() {
            return Err(err("no provenance".into()));
        }
        r.check(&relations, families.period).map_err(err)?;
        if !carriers.contains(&r.carrier) {
            return Err(err(format!("carrier `{}` has no known self-map", r.carrier)));
        }
        match &r.pipeline {
            crate::families::Pipeline::DeleteDiff { row } if table2.row(*row).is_none() => {
                return Err(err(format!("no differential table row {row}")));
            }
            crate::families::Pipeline::Bracket { bracket, .. } if relations.bracket(bracket).is_none() => {
                return Err(err(format!("unknown bracket `{bracket}`")));
            }
            _ => {}
        }
        if let Some(c) = &r.chain {
            if !chains.iter().any(|(_, x)| &x.id == c) {
                return Err(err(format!("unknown chain `{c}`")));
            }
        }
    }
    if families.provenance.trim().is_empty() {
        return Err(LoadError::new(FAMILIES, line_of(&text, "\"total\""), "catalog has no provenance"));
    }

    Ok(Fixture {
        root: root.to_path_buf(),
        ko,
        tmf,
        tmf03,
        psi3,
        qp3,
        table2,
        relations,
        chains,
        scripts,
        sphere,
        families,
        warnings: Vec::new(),
    })
}

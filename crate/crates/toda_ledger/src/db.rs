//! Relation database: named classes with bidegrees, cited relations between
//! words, bracket records and open questions.

use crate::bracket::{shuffle, BracketRecord, BracketSpec, Side};
use crate::error::{Result, TodaError};
use crate::word::{bracket_entries, Word};
use chart_core::BiDegree;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Bidegree of tau.
pub const TAU: BiDegree = BiDegree::new(0, -1);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtomDecl {
    pub name: String,
    pub at: BiDegree,
    /// Shift between members of a periodic family named by this atom.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub period: Option<BiDegree>,
    pub provenance: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ambient {
    pub chart: String,
    pub at: BiDegree,
}

/// How a relation is obtained from other records of the database.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Derivation {
    /// A bracket record with a single element.
    Bracket(String),
    /// Juggling a factor through a bracket record.
    Shuffle { bracket: String, side: Side, factor: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationSpec {
    pub id: String,
    pub left: String,
    pub right: String,
    pub ambient: Ambient,
    /// `false` for relations in homotopy with tau inverted; only stems are
    /// compared for those.
    #[serde(default = "yes")]
    pub synthetic: bool,
    #[serde(default)]
    pub provenance: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub derive: Option<Derivation>,
}

fn yes() -> bool {
    true
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub spec: RelationSpec,
    pub left: Word,
    pub right: Word,
}

impl Relation {
    pub fn id(&self) -> &str {
        &self.spec.id
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Question {
    pub id: String,
    pub text: String,
    pub provenance: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DbFile {
    pub atoms: Vec<AtomDecl>,
    #[serde(default)]
    pub relations: Vec<RelationSpec>,
    #[serde(default)]
    pub brackets: Vec<BracketSpec>,
    #[serde(default)]
    pub questions: Vec<Question>,
}

#[derive(Clone, Debug, Default)]
pub struct RelationDB {
    pub atoms: BTreeMap<String, AtomDecl>,
    pub relations: Vec<Relation>,
    pub brackets: Vec<BracketRecord>,
    pub questions: Vec<Question>,
}

impl RelationDB {
    pub fn from_json(s: &str) -> Result<RelationDB> {
        let file: DbFile = serde_json::from_str(s).map_err(|e| TodaError::Parse(e.to_string()))?;
        Self::from_file(file)
    }

    pub fn from_file(file: DbFile) -> Result<RelationDB> {
        let mut db = RelationDB { questions: file.questions, ..Default::default() };
        for a in file.atoms {
            if a.provenance.trim().is_empty() {
                return Err(TodaError::Provenance(format!("generator `{}` has no provenance", a.name)));
            }
            db.atoms.insert(a.name.clone(), a);
        }
        for b in file.brackets {
            let rec = BracketRecord::from_spec(&b)?;
            rec.check_bidegree(&db)?;
            db.brackets.push(rec);
        }
        let (derived, plain): (Vec<_>, Vec<_>) = file.relations.into_iter().partition(|r| r.derive.is_some());
        for r in plain {
            let rel = db.parse_relation(r)?;
            db.relations.push(rel);
        }
        for r in derived {
            let rel = db.parse_relation(r)?;
            db.check_derivation(&rel)?;
            db.relations.push(rel);
        }
        Ok(db)
    }

    pub fn to_file(&self) -> DbFile {
        DbFile {
            atoms: self.atoms.values().cloned().collect(),
            relations: self.relations.iter().map(|r| r.spec.clone()).collect(),
            brackets: self.brackets.iter().map(BracketRecord::to_spec).collect(),
            questions: self.questions.clone(),
        }
    }

    fn parse_relation(&self, r: RelationSpec) -> Result<Relation> {
        if r.provenance.trim().is_empty() {
            return Err(TodaError::Provenance(format!("relation `{}` has no provenance", r.id)));
        }
        if self.relation(&r.id).is_some() {
            return Err(TodaError::Parse(format!("relation `{}` declared twice", r.id)));
        }
        let left = Word::parse(&r.left)?;
        let right = Word::parse(&r.right)?;
        for side in [&left, &right] {
            if side.is_zero() {
                continue;
            }
            let at = self.bidegree(side)?;
            let ok = if r.synthetic { at == r.ambient.at } else { at.stem == r.ambient.at.stem };
            if !ok {
                return Err(TodaError::Structural {
                    detail: format!("relation `{}`: `{side}` sits in {at}, ambient is {}", r.id, r.ambient.at),
                });
            }
        }
        Ok(Relation { spec: r, left, right })
    }

    fn check_derivation(&self, rel: &Relation) -> Result<()> {
        let fail = |why: String| Err(TodaError::Inconsistent(format!("relation `{}`: {why}", rel.id())));
        match rel.spec.derive.as_ref().expect("derived") {
            Derivation::Bracket(id) => {
                let b = self.bracket(id).ok_or_else(|| TodaError::Inconsistent(format!("no bracket `{id}`")))?;
                let Some(x) = b.single_element(self) else {
                    return fail(format!("bracket `{id}` does not name a single element"));
                };
                if !(rel.left.same(&b.as_word(), None) && rel.right.same(&x, None)) {
                    return fail(format!("bracket `{id}` gives {} = {x}", b.as_word()));
                }
            }
            Derivation::Shuffle { bracket, side, factor } => {
                let b = self
                    .bracket(bracket)
                    .ok_or_else(|| TodaError::Inconsistent(format!("no bracket `{bracket}`")))?;
                let factor = Word::parse(factor)?;
                let moved = shuffle(b, *side, &factor, self)?;
                let before = match side {
                    Side::Left => factor.mul(&b.as_word()),
                    Side::Right => b.as_word().mul(&factor),
                };
                if !(rel.left.same(&before, None) && rel.right.same(&moved.as_word(), None)) {
                    return fail(format!("juggling gives {before} = {}", moved.as_word()));
                }
            }
        }
        Ok(())
    }

    pub fn relation(&self, id: &str) -> Option<&Relation> {
        self.relations.iter().find(|r| r.id() == id)
    }

    pub fn bracket(&self, id: &str) -> Option<&BracketRecord> {
        self.brackets.iter().find(|b| b.id == id)
    }

    pub fn atom_bidegree(&self, name: &str) -> Result<BiDegree> {
        if let Some(a) = self.atoms.get(name) {
            return Ok(a.at);
        }
        match bracket_entries(name)? {
            Some(entries) => {
                let n = entries.len() as i64;
                let mut at = BiDegree::new(n - 2, 2 - n);
                for e in &entries {
                    at = at + self.bidegree(e)?;
                }
                Ok(at)
            }
            None => Err(TodaError::UnknownAtom(name.to_string())),
        }
    }

    pub fn bidegree(&self, w: &Word) -> Result<BiDegree> {
        let mut at = BiDegree::new(0, -i64::from(w.tau));
        for (name, e) in &w.factors {
            let a = self.atom_bidegree(name)?;
            at = at + BiDegree::new(a.stem * i64::from(*e), a.filtration * i64::from(*e));
        }
        Ok(at)
    }

    /// The database without relation `id`. Derived relations that no longer
    /// derive are dropped as well.
    pub fn without(&self, id: &str) -> RelationDB {
        let mut db = self.clone();
        db.relations.retain(|r| r.id() != id);
        loop {
            let broken: Vec<String> = db
                .relations
                .iter()
                .filter(|r| r.spec.derive.is_some())
                .filter(|r| {
                    let mut probe = db.clone();
                    probe.relations.retain(|x| x.id() != r.id());
                    probe.check_derivation(r).is_err()
                })
                .map(|r| r.id().to_string())
                .collect();
            if broken.is_empty() {
                return db;
            }
            db.relations.retain(|r| !broken.contains(&r.spec.id));
        }
    }

    /// The database without bracket record `id` and what derives from it.
    pub fn without_bracket(&self, id: &str) -> RelationDB {
        let mut db = self.clone();
        db.brackets.retain(|b| b.id != id);
        let gone: Vec<String> = db
            .relations
            .iter()
            .filter(|r| match &r.spec.derive {
                Some(Derivation::Bracket(b)) | Some(Derivation::Shuffle { bracket: b, .. }) => b == id,
                None => false,
            })
            .map(|r| r.id().to_string())
            .collect();
        let mut out = db;
        for g in gone {
            out = out.without(&g);
        }
        out
    }
}

//! Equality chains checked one relation at a time.

use crate::db::{Relation, RelationDB};
use crate::error::{Result, TodaError};
use crate::word::Word;
use chart_core::BiDegree;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub id: String,
    pub ambient: Option<(String, BiDegree)>,
    /// Coefficients are compared modulo this, when set.
    pub modulus: Option<i64>,
    pub words: Vec<Word>,
    pub provenance: Option<String>,
}

impl Chain {
    pub fn new(words: Vec<Word>) -> Self {
        Chain { id: String::new(), ambient: None, modulus: None, words, provenance: None }
    }

    pub fn parse_words(words: &[&str]) -> Result<Self> {
        Ok(Self::new(words.iter().map(|w| Word::parse(w)).collect::<Result<_>>()?))
    }

    /// Text form: `key: value` header lines (`id`, `ambient`, `modulus`,
    /// `provenance`), then one word per line. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut c = Chain::new(Vec::new());
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some((k, v)) = line.split_once(':') {
                let v = v.trim();
                match k.trim() {
                    "id" => c.id = v.to_string(),
                    "provenance" => c.provenance = Some(v.to_string()),
                    "modulus" => {
                        c.modulus = Some(v.parse().map_err(|_| TodaError::Parse(format!("bad modulus `{v}`")))?)
                    }
                    "ambient" => {
                        let (chart, at) = v
                            .split_once(' ')
                            .ok_or_else(|| TodaError::Parse(format!("ambient needs `chart s,f`: `{v}`")))?;
                        let at = BiDegree::parse(at.trim()).ok_or_else(|| TodaError::Parse(format!("bad bidegree `{at}`")))?;
                        c.ambient = Some((chart.to_string(), at));
                    }
                    other => return Err(TodaError::Parse(format!("unknown chain header `{other}`"))),
                }
            } else {
                c.words.push(Word::parse(line)?);
            }
        }
        if c.words.is_empty() {
            return Err(TodaError::Parse("chain has no words".into()));
        }
        Ok(c)
    }
}

/// `from = to` as `multiplier * (left = right)`, or its reverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub from: Word,
    pub to: Word,
    pub relation: String,
    pub multiplier: Word,
    pub reversed: bool,
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}  by {}", self.from, self.to, self.relation)?;
        if self.reversed {
            write!(f, " (right to left)")?;
        }
        if self.multiplier != Word::one() {
            write!(f, " times {}", self.multiplier)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Transcript {
    pub chain: String,
    pub modulus: Option<i64>,
    pub steps: Vec<Step>,
}

impl Transcript {
    pub fn relations(&self) -> Vec<&str> {
        self.steps.iter().map(|s| s.relation.as_str()).collect()
    }

    /// Check every step again against `db`.
    pub fn replay(&self, db: &RelationDB) -> Result<()> {
        for (i, s) in self.steps.iter().enumerate() {
            let r = db
                .relation(&s.relation)
                .ok_or_else(|| TodaError::Replay { index: i, detail: format!("no relation `{}`", s.relation) })?;
            let (l, rr) = if s.reversed { (&r.right, &r.left) } else { (&r.left, &r.right) };
            if !(s.multiplier.mul(l).same(&s.from, self.modulus) && s.multiplier.mul(rr).same(&s.to, self.modulus)) {
                return Err(TodaError::Replay { index: i, detail: format!("`{s}` does not follow") });
            }
        }
        Ok(())
    }
}

impl fmt::Display for Transcript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.chain.is_empty() {
            writeln!(f, "chain {}", self.chain)?;
        }
        for (i, s) in self.steps.iter().enumerate() {
            writeln!(f, "  {}. {s}", i + 1)?;
        }
        Ok(())
    }
}

/// One application of `r` taking `from` to `to`.
pub fn apply_relation(r: &Relation, from: &Word, to: &Word, modulus: Option<i64>) -> Option<Step> {
    for reversed in [false, true] {
        let (l, rr) = if reversed { (&r.right, &r.left) } else { (&r.left, &r.right) };
        if l.is_zero() {
            continue;
        }
        let Some(m) = from.div(l) else { continue };
        if m.mul(rr).same(to, modulus) {
            return Some(Step { from: from.clone(), to: to.clone(), relation: r.id().to_string(), multiplier: m, reversed });
        }
    }
    None
}

pub fn find_step(db: &RelationDB, from: &Word, to: &Word, modulus: Option<i64>) -> Option<Step> {
    db.relations.iter().find_map(|r| apply_relation(r, from, to, modulus))
}

/// Verify that adjacent words of `chain` are one relation apart.
pub fn check_relation_chain(chain: &Chain, db: &RelationDB) -> Result<Transcript> {
    let mut at: Option<BiDegree> = chain.ambient.as_ref().map(|a| a.1);
    for w in chain.words.iter().filter(|w| !w.is_zero()) {
        let b = db.bidegree(w)?;
        match at {
            None => at = Some(b),
            Some(a) if a != b => return Err(TodaError::structural(&format!("`{w}`"), a, b)),
            _ => {}
        }
    }
    let mut steps = Vec::new();
    for (i, pair) in chain.words.windows(2).enumerate() {
        let (from, to) = (&pair[0], &pair[1]);
        if from.same(to, chain.modulus) {
            continue;
        }
        match find_step(db, from, to, chain.modulus) {
            Some(s) => steps.push(s),
            None => return Err(TodaError::Gap { index: i + 1, from: from.to_string(), to: to.to_string() }),
        }
    }
    Ok(Transcript { chain: chain.id.clone(), modulus: chain.modulus, steps })
}

/// A one-step proof that `w` vanishes.
pub fn prove_zero(w: &Word, db: &RelationDB) -> Option<Step> {
    find_step(db, w, &Word::zero(), None)
}

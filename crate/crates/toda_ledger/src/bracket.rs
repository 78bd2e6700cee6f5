//! Toda bracket records, juggling and the empty-bracket inference.

use crate::chain::{prove_zero, Step};
use crate::db::{Ambient, RelationDB};
use crate::error::{Result, TodaError};
use crate::word::{bracket_atom, Word};
use chart_core::BiDegree;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// What is known about the set of values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Claim {
    Contains(Word),
    Empty,
    /// Nonempty and does not contain zero.
    Nonzero,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClaimSpec {
    Contains(String),
    Empty,
    Nonzero,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketSpec {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left: Option<String>,
    pub entries: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right: Option<String>,
    pub ambient: Ambient,
    pub claim: ClaimSpec,
    /// Spanning set of the indeterminacy; empty for zero indeterminacy.
    #[serde(default)]
    pub indeterminacy: Vec<String>,
    #[serde(default)]
    pub provenance: String,
}

/// `left * <entries> * right` with what is known about it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketRecord {
    pub id: String,
    pub left: Word,
    pub entries: Vec<Word>,
    pub right: Word,
    pub ambient: Ambient,
    pub claim: Claim,
    pub indeterminacy: Vec<Word>,
    pub provenance: String,
}

impl BracketRecord {
    pub fn from_spec(s: &BracketSpec) -> Result<Self> {
        if s.provenance.trim().is_empty() {
            return Err(TodaError::Provenance(format!("bracket `{}` has no provenance", s.id)));
        }
        if s.entries.len() < 3 {
            return Err(TodaError::Parse(format!("bracket `{}` needs at least three entries", s.id)));
        }
        let opt = |w: &Option<String>| w.as_deref().map_or(Ok(Word::one()), Word::parse);
        Ok(BracketRecord {
            id: s.id.clone(),
            left: opt(&s.left)?,
            entries: s.entries.iter().map(|e| Word::parse(e)).collect::<Result<_>>()?,
            right: opt(&s.right)?,
            ambient: s.ambient.clone(),
            claim: match &s.claim {
                ClaimSpec::Contains(x) => Claim::Contains(Word::parse(x)?),
                ClaimSpec::Empty => Claim::Empty,
                ClaimSpec::Nonzero => Claim::Nonzero,
                ClaimSpec::Unknown => Claim::Unknown,
            },
            indeterminacy: s.indeterminacy.iter().map(|e| Word::parse(e)).collect::<Result<_>>()?,
            provenance: s.provenance.clone(),
        })
    }

    pub fn to_spec(&self) -> BracketSpec {
        let opt = |w: &Word| (*w != Word::one()).then(|| w.to_string());
        BracketSpec {
            id: self.id.clone(),
            left: opt(&self.left),
            entries: self.entries.iter().map(Word::compact).collect(),
            right: opt(&self.right),
            ambient: self.ambient.clone(),
            claim: match &self.claim {
                Claim::Contains(x) => ClaimSpec::Contains(x.to_string()),
                Claim::Empty => ClaimSpec::Empty,
                Claim::Nonzero => ClaimSpec::Nonzero,
                Claim::Unknown => ClaimSpec::Unknown,
            },
            indeterminacy: self.indeterminacy.iter().map(Word::to_string).collect(),
            provenance: self.provenance.clone(),
        }
    }

    pub fn is_plain(&self) -> bool {
        self.left == Word::one() && self.right == Word::one()
    }

    /// `left * <entries> * right` as a word with one bracket atom.
    pub fn as_word(&self) -> Word {
        self.left.mul(&Word::atom(&bracket_atom(&self.entries))).mul(&self.right)
    }

    pub fn bidegree(&self, db: &RelationDB) -> Result<BiDegree> {
        db.bidegree(&self.as_word())
    }

    /// Declared ambient bidegree against the recomputed one, and the claimed
    /// element against both.
    pub fn check_bidegree(&self, db: &RelationDB) -> Result<()> {
        let at = self.bidegree(db)?;
        if at != self.ambient.at {
            return Err(TodaError::structural(&format!("bracket `{}`", self.id), self.ambient.at, at));
        }
        if let Claim::Contains(x) = &self.claim {
            if !x.is_zero() && db.bidegree(x)? != at {
                return Err(TodaError::structural(&format!("element of `{}`", self.id), at, db.bidegree(x)?));
            }
        }
        for w in &self.indeterminacy {
            if !w.is_zero() && db.bidegree(w)? != at {
                return Err(TodaError::structural(&format!("indeterminacy of `{}`", self.id), at, db.bidegree(w)?));
            }
        }
        Ok(())
    }

    /// Every spanning element of the indeterminacy is zero or provably zero.
    pub fn zero_indeterminacy(&self, db: &RelationDB) -> bool {
        self.indeterminacy.iter().all(|w| w.is_zero() || prove_zero(w, db).is_some())
    }

    /// The element of a bracket known to be a singleton.
    pub fn single_element(&self, db: &RelationDB) -> Option<Word> {
        match &self.claim {
            Claim::Contains(x) if self.zero_indeterminacy(db) => Some(x.clone()),
            _ => None,
        }
    }
}

impl fmt::Display for BracketRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let claim = match &self.claim {
            Claim::Contains(x) => format!("contains {x}"),
            Claim::Empty => "is empty".into(),
            Claim::Nonzero => "does not contain zero".into(),
            Claim::Unknown => "is unconstrained".into(),
        };
        write!(f, "{} {claim} in {} {} [{}]", self.as_word(), self.ambient.chart, self.ambient.at, self.provenance)
    }
}

/// Koszul sign `(-1)^(|x| + 1)`, `|x|` the stem.
fn juggle_sign(x: &Word, db: &RelationDB) -> Result<i64> {
    Ok(if db.bidegree(x)?.stem.rem_euclid(2) == 1 { 1 } else { -1 })
}

/// Move `factor` into a plain three-fold bracket:
/// `x <a,b,c> = (-1)^(|x|+1) <x,a,b> c` (needs `x a = 0`) on the left and
/// `<a,b,c> x = (-1)^(|a|+1) a <b,c,x>` (needs `c x = 0`) on the right.
pub fn shuffle(rec: &BracketRecord, side: Side, factor: &Word, db: &RelationDB) -> Result<BracketRecord> {
    if !rec.is_plain() || rec.entries.len() != 3 {
        return Err(TodaError::Inapplicable(format!("`{}` is not a plain three-fold bracket", rec.id)));
    }
    db.bidegree(factor)?;
    let [a, b, c] = [&rec.entries[0], &rec.entries[1], &rec.entries[2]];
    let (need, left, entries, right, sign) = match side {
        Side::Left => (factor.mul(a), Word::one(), vec![factor.clone(), a.clone(), b.clone()], c.clone(), juggle_sign(factor, db)?),
        Side::Right => (c.mul(factor), a.clone(), vec![b.clone(), c.clone(), factor.clone()], Word::one(), juggle_sign(a, db)?),
    };
    let Some(why) = prove_zero(&need, db) else {
        return Err(TodaError::Inapplicable(format!("no relation shows {need} = 0")));
    };
    let claim = match &rec.claim {
        Claim::Contains(x) => Claim::Contains(match side {
            Side::Left => factor.mul(x),
            Side::Right => x.mul(factor),
        }),
        Claim::Empty => return Err(TodaError::Inapplicable(format!("`{}` is empty", rec.id))),
        Claim::Nonzero | Claim::Unknown => Claim::Unknown,
    };
    let (left, right) = match side {
        Side::Left => (left, right.scale(sign)),
        Side::Right => (left.scale(sign), right),
    };
    let mut out = BracketRecord {
        id: format!("{}/{}", rec.id, if side == Side::Left { "L" } else { "R" }),
        left,
        entries,
        right,
        ambient: rec.ambient.clone(),
        claim,
        indeterminacy: Vec::new(),
        provenance: format!("juggling {factor} into {} using {}", rec.id, why.relation),
    };
    out.ambient.at = out.bidegree(db)?;
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Consequence {
    pub bracket: String,
    /// `ab != 0 or bc != 0`.
    pub disjunction: (Word, Word),
    /// The disjunct shown to vanish, with its proof.
    pub vanishing: Option<Step>,
    /// Proven nonzero, when one disjunct was ruled out.
    pub nonzero: Option<Word>,
}

impl fmt::Display for Consequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (ab, bc) = &self.disjunction;
        writeln!(f, "{}: {ab} != 0 or {bc} != 0", self.bracket)?;
        match (&self.vanishing, &self.nonzero) {
            (Some(s), Some(x)) => write!(f, "  {} = 0 by {}, so {x} != 0", s.from, s.relation),
            _ => write!(f, "  unresolved"),
        }
    }
}

/// An empty bracket `<a,b,c>` forces `ab != 0` or `bc != 0`.
pub fn force_nonzero_from_empty(rec: &BracketRecord, db: &RelationDB) -> Result<Consequence> {
    if rec.claim != Claim::Empty {
        return Err(TodaError::Inapplicable(format!("`{}` is not declared empty", rec.id)));
    }
    if rec.entries.len() != 3 || !rec.is_plain() {
        return Err(TodaError::Inapplicable(format!("`{}` is not a plain three-fold bracket", rec.id)));
    }
    rec.check_bidegree(db)?;
    let ab = rec.entries[0].mul(&rec.entries[1]);
    let bc = rec.entries[1].mul(&rec.entries[2]);
    let (za, zb) = (prove_zero(&ab, db), prove_zero(&bc, db));
    let (vanishing, nonzero) = match (za, zb) {
        (Some(_), Some(_)) => {
            return Err(TodaError::Inconsistent(format!(
                "`{}` is declared empty but both {ab} and {bc} vanish",
                rec.id
            )))
        }
        (Some(s), None) => (Some(s), Some(bc.clone())),
        (None, Some(s)) => (Some(s), Some(ab.clone())),
        (None, None) => (None, None),
    };
    Ok(Consequence { bracket: rec.id.clone(), disjunction: (ab, bc), vanishing, nonzero })
}

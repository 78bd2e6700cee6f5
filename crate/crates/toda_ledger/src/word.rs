//! Monomials `c * t^k * x1^e1 * ... ` in named classes. Bracket atoms
//! `<a,b,c>` and indecomposables `[eps.D]` are single factors.

use crate::error::{Result, TodaError};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    pub coeff: i64,
    /// Power of tau.
    pub tau: u32,
    pub factors: BTreeMap<String, u32>,
}

impl Word {
    pub fn zero() -> Self {
        Word { coeff: 0, tau: 0, factors: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::scalar(1)
    }

    pub fn scalar(c: i64) -> Self {
        Word { coeff: c, tau: 0, factors: BTreeMap::new() }
    }

    pub fn atom(name: &str) -> Self {
        let mut w = Self::one();
        w.factors.insert(name.to_string(), 1);
        w
    }

    pub fn is_zero(&self) -> bool {
        self.coeff == 0
    }

    pub fn parse(s: &str) -> Result<Word> {
        let s = s.trim();
        if s.is_empty() {
            return Err(TodaError::Parse("empty word".into()));
        }
        let mut w = Word::one();
        for tok in split_top(s, |c| c.is_whitespace() || c == '*')? {
            w = w.mul(&parse_token(&tok)?);
        }
        Ok(w.normalized())
    }

    fn normalized(mut self) -> Self {
        if self.coeff == 0 {
            return Word::zero();
        }
        self.factors.retain(|_, e| *e > 0);
        self
    }

    pub fn mul(&self, o: &Word) -> Word {
        let mut f = self.factors.clone();
        for (k, e) in &o.factors {
            *f.entry(k.clone()).or_insert(0) += e;
        }
        Word { coeff: self.coeff * o.coeff, tau: self.tau + o.tau, factors: f }.normalized()
    }

    pub fn scale(&self, k: i64) -> Word {
        Word { coeff: self.coeff * k, ..self.clone() }.normalized()
    }

    pub fn times_tau(&self, k: u32) -> Word {
        Word { tau: self.tau + k, ..self.clone() }.normalized()
    }

    /// `q` with `q * d = self`, when it exists as a word.
    pub fn div(&self, d: &Word) -> Option<Word> {
        if d.is_zero() || self.is_zero() || self.coeff % d.coeff != 0 || self.tau < d.tau {
            return None;
        }
        let mut f = self.factors.clone();
        for (k, e) in &d.factors {
            let have = f.get_mut(k)?;
            if *have < *e {
                return None;
            }
            *have -= e;
        }
        Some(Word { coeff: self.coeff / d.coeff, tau: self.tau - d.tau, factors: f }.normalized())
    }

    /// Equal as words, coefficients compared modulo `modulus` when given.
    pub fn same(&self, o: &Word, modulus: Option<i64>) -> bool {
        let red = |c: i64| modulus.map_or(c, |m| c.rem_euclid(m));
        let (a, b) = (red(self.coeff), red(o.coeff));
        if a == 0 || b == 0 {
            return a == b;
        }
        a == b && self.tau == o.tau && self.factors == o.factors
    }

    /// The word without its tau power.
    pub fn tau_free(&self) -> Word {
        Word { tau: 0, ..self.clone() }
    }

    /// Atom names with multiplicity removed.
    pub fn atoms(&self) -> impl Iterator<Item = &str> {
        self.factors.keys().map(String::as_str)
    }

    /// Written without spaces, for use inside bracket atoms.
    pub fn compact(&self) -> String {
        self.render("*", true)
    }

    fn render(&self, sep: &str, glue: bool) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        match self.tau {
            0 => {}
            1 => parts.push("t".to_string()),
            k => parts.push(format!("t^{k}")),
        }
        for (k, e) in &self.factors {
            parts.push(if *e == 1 { k.clone() } else { format!("{k}^{e}") });
        }
        let body = parts.join(sep);
        match (self.coeff, body.is_empty()) {
            (c, true) => c.to_string(),
            (1, false) => body,
            (-1, false) => format!("-{body}"),
            (c, false) if glue => format!("{c}{body}"),
            (c, false) => format!("{c}{sep}{body}"),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(" ", false))
    }
}

/// Canonical atom name of a bracket with these entries.
pub fn bracket_atom(entries: &[Word]) -> String {
    format!("<{}>", entries.iter().map(Word::compact).collect::<Vec<_>>().join(","))
}

/// Entries of a bracket atom `<a,b,c>`.
pub fn bracket_entries(atom: &str) -> Result<Option<Vec<Word>>> {
    let Some(inner) = atom.strip_prefix('<').and_then(|a| a.strip_suffix('>')) else {
        return Ok(None);
    };
    let parts = split_top(inner, |c| c == ',')?;
    if parts.len() < 3 {
        return Err(TodaError::Parse(format!("bracket {atom} needs at least three entries")));
    }
    parts.iter().map(|p| Word::parse(p)).collect::<Result<Vec<_>>>().map(Some)
}

fn split_top(s: &str, sep: impl Fn(char) -> bool) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0i32;
    for c in s.chars() {
        match c {
            '<' | '[' => depth += 1,
            '>' | ']' => depth -= 1,
            _ => {}
        }
        if depth < 0 {
            return Err(TodaError::Parse(format!("unbalanced brackets in `{s}`")));
        }
        if depth == 0 && sep(c) {
            if !cur.is_empty() {
                out.push(std::mem::take(&mut cur));
            }
        } else {
            cur.push(c);
        }
    }
    if depth != 0 {
        return Err(TodaError::Parse(format!("unbalanced brackets in `{s}`")));
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    Ok(out)
}

fn parse_exp(s: &str, tok: &str) -> Result<u32> {
    if s.is_empty() {
        return Ok(1);
    }
    s.strip_prefix('^')
        .and_then(|e| e.parse().ok())
        .ok_or_else(|| TodaError::Parse(format!("bad exponent in `{tok}`")))
}

fn parse_token(tok: &str) -> Result<Word> {
    let digits = tok.char_indices().take_while(|(i, c)| c.is_ascii_digit() || (*i == 0 && *c == '-')).count();
    let (num, rest) = tok.split_at(digits);
    let coeff = match num {
        "" => 1,
        "-" => -1,
        n => n.parse().map_err(|_| TodaError::Parse(format!("bad coefficient in `{tok}`")))?,
    };
    if rest.is_empty() {
        return Ok(Word::scalar(coeff));
    }
    let (name, exp) = match rest.chars().next() {
        Some(open @ ('<' | '[')) => {
            let close = if open == '<' { '>' } else { ']' };
            let mut depth = 0;
            let mut end = None;
            for (i, c) in rest.char_indices() {
                if c == '<' || c == '[' {
                    depth += 1;
                } else if c == '>' || c == ']' {
                    depth -= 1;
                    if depth == 0 {
                        if c != close {
                            return Err(TodaError::Parse(format!("mismatched bracket in `{tok}`")));
                        }
                        end = Some(i);
                        break;
                    }
                }
            }
            let end = end.ok_or_else(|| TodaError::Parse(format!("unclosed bracket in `{tok}`")))?;
            let name = &rest[..=end];
            let name = match bracket_entries(name)? {
                Some(entries) => bracket_atom(&entries),
                None => name.to_string(),
            };
            let after = &rest[end + 1..];
            let split = after.find(['[', '<']).unwrap_or(after.len());
            if split < after.len() {
                // juxtaposed atoms such as `[eps.D][kappa.D^4]`
                let tail = parse_token(&after[split..])?;
                let head = parse_token(&format!("{num}{name}{}", &after[..split]))?;
                return Ok(head.mul(&tail));
            }
            (name, parse_exp(after, tok)?)
        }
        _ => {
            let end = rest.find('^').unwrap_or(rest.len());
            let name = &rest[..end];
            if !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'') {
                return Err(TodaError::Parse(format!("bad generator name in `{tok}`")));
            }
            (name.to_string(), parse_exp(&rest[end..], tok)?)
        }
    };
    if name == "t" {
        return Ok(Word { coeff, tau: exp, factors: BTreeMap::new() });
    }
    let mut w = Word::scalar(coeff);
    w.factors.insert(name, exp);
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let w = Word::parse("4 nu kbar").unwrap();
        assert_eq!(w.coeff, 4);
        assert_eq!(w.to_string(), "4 kbar nu");
        let t = Word::parse("t^2 eta^3 kbar").unwrap();
        assert_eq!(t.tau, 2);
        assert_eq!(t.factors["eta"], 3);
        assert_eq!(Word::parse("0").unwrap(), Word::zero());
        let b = Word::parse("eta <nu,2nu,kappa>").unwrap();
        assert!(b.factors.contains_key("<nu,2nu,kappa>"));
        let c = Word::parse("eta*<nu, 2*nu, kappa>").unwrap();
        assert_eq!(b, c);
        let d = Word::parse("[eps.D][kappa.D^4]^2").unwrap();
        assert_eq!(d.factors["[kappa.D^4]"], 2);
        assert!(Word::parse("nu^x").is_err());
        assert!(Word::parse("<nu,2nu>").is_err());
    }

    #[test]
    fn division() {
        let w = Word::parse("t^4 eps kbar^2").unwrap();
        let d = Word::parse("t^2 eps kbar").unwrap();
        assert_eq!(w.div(&d).unwrap(), Word::parse("t^2 kbar").unwrap());
        assert!(d.div(&w).is_none());
        assert!(Word::parse("nu").unwrap().div(&Word::parse("2nu").unwrap()).is_none());
    }
}

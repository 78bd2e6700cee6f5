use crate::chart::{self, Chart, Term};
use crate::error::ChartError;
use crate::pages;
use crate::BiDegree;
use std::collections::BTreeSet;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ViolationKind {
    Arithmetic,
    Parity,
    Connectivity,
    Window,
    MissingCell,
    MaxPage,
    Duplicate,
    Product,
    Extension,
    Page,
    Leibniz,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: {}", self.kind, self.message)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }

    fn push(&mut self, kind: ViolationKind, message: String) {
        self.violations.push(Violation { kind, message });
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.first() {
            None => write!(f, "pass"),
            Some(v) => write!(f, "fail ({} violations; first {v})", self.violations.len()),
        }
    }
}

/// Run every structural check; violations are collected, never fixed.
pub fn validate(chart: &Chart) -> Report {
    use ViolationKind::*;
    let mut rep = Report::default();
    let p = chart.prime();

    let mut seen_cells = BTreeSet::new();
    let mut names = BTreeSet::new();
    for c in &chart.cells {
        if !seen_cells.insert(c.at) {
            rep.push(Duplicate, format!("two cells at {}", c.at));
        }
        if !chart.window.contains(c.at) {
            rep.push(Window, format!("cell {} outside the window", c.at));
        }
        for g in &c.group.generators {
            if !names.insert(g.name.clone()) {
                rep.push(Duplicate, format!("generator `{}` named twice", g.name));
            }
        }
        if c.group.relations.iter().any(|r| r.len() != c.group.ngens()) {
            rep.push(Page, format!("relation of wrong length at {}", c.at));
        }
        let nonzero = !c.group.is_trivial(p);
        if chart.connective && c.at.filtration < 0 && nonzero {
            rep.push(Connectivity, format!("nonzero cell {} below filtration 0", c.at));
        }
        if chart.parity == Some(chart::Parity::Even) && nonzero && c.at.total().rem_euclid(2) != 0 {
            rep.push(Parity, format!("nonzero cell {} in odd total degree", c.at));
        }
    }

    for d in &chart.differentials {
        let want = d.source.diff_target(i64::from(d.page));
        if d.page < 2 {
            rep.push(Arithmetic, format!("d{} from {}: page below 2", d.page, d.source));
        }
        if d.target != want {
            rep.push(
                Arithmetic,
                format!("d{} from {} lands at {} but must land at {}", d.page, d.source, d.target, want),
            );
        }
        for at in [d.source, d.target] {
            if chart.cell(at).is_none() {
                rep.push(MissingCell, format!("d{} from {} needs a cell at {}", d.page, d.source, at));
            }
        }
        if chart.parity == Some(chart::Parity::Even) && d.page % 2 == 0 {
            rep.push(Parity, format!("even chart carries d{} from {}", d.page, d.source));
        }
        if let Some(m) = chart.max_page {
            if d.page > m {
                rep.push(MaxPage, format!("d{} from {} exceeds max_page {m}", d.page, d.source));
            }
        }
    }

    for e in &chart.products {
        check_product(chart, e.left.as_str(), e.right.as_str(), &e.result, e.tau, &mut rep);
    }
    for e in &chart.extensions {
        match chart.generator(&e.source) {
            Err(err) => rep.push(Extension, err.to_string()),
            Ok(g) => match chart.terms_vector(&e.result) {
                Err(err) => rep.push(Extension, err.to_string()),
                Ok(Some((at, _))) if at != g.at + BiDegree::new(0, e.tau) => rep.push(
                    Extension,
                    format!("{} * {} lands at {at}, expected {}", e.multiplier, e.source, g.at + BiDegree::new(0, e.tau)),
                ),
                _ => {}
            },
        }
    }

    let structural = rep.has(Arithmetic) || rep.has(MissingCell) || rep.has(Duplicate) || rep.has(MaxPage);
    if !structural {
        match pages::compute(chart) {
            Ok(_) => {
                for v in crate::products::leibniz_violations(chart) {
                    rep.push(Leibniz, v);
                }
            }
            Err(ChartError::Structural(m)) => rep.push(Arithmetic, m),
            Err(e) => rep.push(Page, e.to_string()),
        }
    }
    rep
}

fn check_product(chart: &Chart, left: &str, right: &str, result: &[Term], tau: i64, rep: &mut Report) {
    use ViolationKind::Product;
    let (l, r) = match (chart.generator(left), chart.generator(right)) {
        (Ok(l), Ok(r)) => (l, r),
        (Err(e), _) | (_, Err(e)) => {
            rep.push(Product, e.to_string());
            return;
        }
    };
    let want = l.at + r.at + BiDegree::new(0, tau);
    let (at, v) = match chart.terms_vector(result) {
        Err(e) => {
            rep.push(Product, e.to_string());
            return;
        }
        Ok(None) => return,
        Ok(Some(x)) => x,
    };
    if at != want {
        rep.push(Product, format!("{left}*{right} recorded at {at}, grading gives {want}"));
        return;
    }
    if tau != 0 {
        return;
    }
    let p = chart.prime();
    let g = &chart.cell(at).expect("cell").group;
    for src in [&l, &r] {
        let sg = &chart.cell(src.at).expect("cell").group;
        if let Some(o) = sg.element_order(&sg.unit(src.index), p) {
            let scaled: Vec<i128> = v.iter().map(|x| x * i128::from(o)).collect();
            if !g.is_zero(&scaled, p) {
                rep.push(Product, format!("{left}*{right}: factor of order {o} but product is not {o}-torsion"));
            }
        }
    }
}

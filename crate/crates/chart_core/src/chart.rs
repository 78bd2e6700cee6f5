use crate::error::{ChartError, Result};
use crate::group::{Generator, PresentedAbGroup};
use crate::snf::{Matrix, Vector};
use crate::BiDegree;
use serde::{Deserialize, Serialize};

/// Inclusive stem and filtration ranges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub stems: (i64, i64),
    pub filtrations: (i64, i64),
}

impl Window {
    pub fn new(stems: (i64, i64), filtrations: (i64, i64)) -> Self {
        Window { stems, filtrations }
    }

    pub fn contains(&self, b: BiDegree) -> bool {
        (self.stems.0..=self.stems.1).contains(&b.stem)
            && (self.filtrations.0..=self.filtrations.1).contains(&b.filtration)
    }

    pub fn width(&self) -> i64 {
        self.stems.1 - self.stems.0 + 1
    }

    pub fn height(&self) -> i64 {
        self.filtrations.1 - self.filtrations.0 + 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub at: BiDegree,
    #[serde(flatten)]
    pub group: PresentedAbGroup,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

impl Cell {
    pub fn new(at: BiDegree, gens: Vec<Generator>) -> Self {
        Cell { at, group: PresentedAbGroup::from_generators(gens), provenance: None }
    }

    pub fn with_provenance(mut self, p: impl Into<String>) -> Self {
        self.provenance = Some(p.into());
        self
    }
}

/// A page-`r` differential.
///
/// `basis` lists vectors (in the source cell's E2 coordinates) that together
/// with the boundaries span the E_r source; `images[i]` is the value on
/// `basis[i]` in target coordinates. Without a basis the unit vectors are used.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Differential {
    pub page: u32,
    pub source: BiDegree,
    pub target: BiDegree,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<i64>>>,
    pub images: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

impl Differential {
    pub fn new(page: u32, source: BiDegree, images: Vec<Vec<i64>>) -> Self {
        Differential {
            page,
            source,
            target: source.diff_target(i64::from(page)),
            basis: None,
            images,
            provenance: None,
        }
    }

    pub fn with_basis(mut self, basis: Vec<Vec<i64>>) -> Self {
        self.basis = Some(basis);
        self
    }

    pub fn with_provenance(mut self, p: impl Into<String>) -> Self {
        self.provenance = Some(p.into());
        self
    }

    pub fn basis_rows(&self, n: usize) -> Matrix {
        match &self.basis {
            Some(b) => b.iter().map(|r| widen(r)).collect(),
            None => (0..n)
                .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
                .collect(),
        }
    }

    pub fn image_rows(&self) -> Matrix {
        self.images.iter().map(|r| widen(r)).collect()
    }
}

pub fn widen(r: &[i64]) -> Vector {
    r.iter().map(|&x| i128::from(x)).collect()
}

pub fn narrow(r: &[i128]) -> Vec<i64> {
    r.iter().map(|&x| i64::try_from(x).expect("coefficient fits in i64")).collect()
}

/// `coefficient * generator`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term(pub i64, pub String);

/// `left * right = tau^tau * (sum of result terms)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductEntry {
    pub left: String,
    pub right: String,
    pub result: Vec<Term>,
    #[serde(default)]
    pub tau: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

/// A hidden additive extension `multiplier * source = tau^tau * result`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Extension {
    pub source: String,
    pub multiplier: i64,
    pub result: Vec<Term>,
    #[serde(default)]
    pub tau: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

fn two() -> u32 {
    2
}

fn is_two(p: &u32) -> bool {
    *p == 2
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chart {
    #[serde(default)]
    pub name: String,
    /// Work over the integers localised at this prime.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<i64>,
    pub window: Window,
    /// Filtrations must be non-negative.
    #[serde(default)]
    pub connective: bool,
    /// First page described by the cells (2 for an E2 chart).
    #[serde(default = "two", skip_serializing_if = "is_two")]
    pub page: u32,
    #[serde(default)]
    pub max_page: Option<u32>,
    #[serde(default)]
    pub parity: Option<Parity>,
    #[serde(default)]
    pub cells: Vec<Cell>,
    #[serde(default)]
    pub differentials: Vec<Differential>,
    #[serde(default)]
    pub products: Vec<ProductEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub extensions: Vec<Extension>,
}

/// Location of a named generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenRef {
    pub at: BiDegree,
    pub index: usize,
}

impl Chart {
    pub fn new(name: impl Into<String>, window: Window) -> Self {
        Chart {
            name: name.into(),
            prime: None,
            window,
            connective: false,
            page: 2,
            max_page: None,
            parity: None,
            cells: Vec::new(),
            differentials: Vec::new(),
            products: Vec::new(),
            extensions: Vec::new(),
        }
    }

    pub fn from_json(s: &str) -> Result<Chart> {
        serde_json::from_str(s).map_err(|e| ChartError::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("chart serialises")
    }

    pub fn prime(&self) -> Option<i128> {
        self.prime.map(i128::from)
    }

    pub fn cell(&self, at: BiDegree) -> Option<&Cell> {
        self.cells.iter().find(|c| c.at == at)
    }

    pub fn cell_mut(&mut self, at: BiDegree) -> Option<&mut Cell> {
        self.cells.iter_mut().find(|c| c.at == at)
    }

    pub fn group(&self, at: BiDegree) -> Result<&PresentedAbGroup> {
        self.cell(at).map(|c| &c.group).ok_or(ChartError::MissingCell(at))
    }

    /// Cells that are nonzero as groups.
    pub fn nonzero_cells(&self) -> impl Iterator<Item = &Cell> {
        let p = self.prime();
        self.cells.iter().filter(move |c| !c.group.is_trivial(p))
    }

    pub fn find_generator(&self, name: &str) -> Option<GenRef> {
        self.cells.iter().find_map(|c| {
            c.group.index_of(name).map(|index| GenRef { at: c.at, index })
        })
    }

    pub fn generator(&self, name: &str) -> Result<GenRef> {
        self.find_generator(name).ok_or_else(|| ChartError::UnknownGenerator(name.to_string()))
    }

    /// Vector for a sum of terms; all terms must sit in one cell.
    pub fn terms_vector(&self, terms: &[Term]) -> Result<Option<(BiDegree, Vector)>> {
        let mut out: Option<(BiDegree, Vector)> = None;
        for Term(c, name) in terms {
            let g = self.generator(name)?;
            let n = self.group(g.at)?.ngens();
            let entry = out.get_or_insert_with(|| (g.at, vec![0; n]));
            if entry.0 != g.at {
                return Err(ChartError::Structural(format!(
                    "terms `{name}` at {} and others at {} are in different cells",
                    g.at, entry.0
                )));
            }
            entry.1[g.index] += i128::from(*c);
        }
        Ok(out)
    }

    pub fn add_cell(&mut self, cell: Cell) {
        self.cells.push(cell);
    }

    pub fn differentials_on(&self, page: u32) -> impl Iterator<Item = &Differential> {
        self.differentials.iter().filter(move |d| d.page == page)
    }

    /// Largest page used, or the start page when there are no differentials.
    pub fn last_page(&self) -> u32 {
        self.max_page
            .unwrap_or_else(|| self.differentials.iter().map(|d| d.page).max().unwrap_or(self.page))
    }
}

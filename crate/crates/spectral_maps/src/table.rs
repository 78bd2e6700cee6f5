//! Tabulated differentials whose targets should survive a map.

use crate::delete::{delete_differential_check, Verdict};
use crate::error::{MapError, Result};
use crate::map::ChartMap;
use chart_core::{BiDegree, Chart, SyntheticClass};
use serde::{Deserialize, Serialize};

/// One printed row: `d_page(source) = coefficient * target`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferentialRow {
    pub degree: i64,
    /// Filtration as printed.
    pub filtration: i64,
    /// Order of the family as printed.
    pub group: u32,
    /// Generator name of the target cell.
    pub target: String,
    #[serde(default = "one")]
    pub coefficient: i64,
    pub e2_rep: String,
    pub page: u32,
    pub printed: String,
    pub provenance: String,
    /// Page as printed, when it differs from `page`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub printed_page: Option<u32>,
}

fn one() -> i64 {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferentialTable {
    pub chart: String,
    pub map: String,
    pub rows: Vec<DifferentialRow>,
}

/// A printed value that disagrees with the chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discrepancy {
    pub degree: i64,
    pub field: &'static str,
    pub printed: String,
    pub actual: String,
}

impl DifferentialTable {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| MapError::Parse(e.to_string()))
    }

    pub fn row(&self, degree: i64) -> Option<&DifferentialRow> {
        self.rows.iter().find(|r| r.degree == degree)
    }
}

impl DifferentialRow {
    pub fn target_at(&self, chart: &Chart) -> Result<BiDegree> {
        Ok(chart.generator(&self.target)?.at)
    }

    pub fn source_at(&self, chart: &Chart) -> Result<BiDegree> {
        let t = self.target_at(chart)?;
        Ok(BiDegree::new(t.stem + 1, t.filtration - i64::from(self.page)))
    }

    /// The target element, `coefficient` times the named generator.
    pub fn target_class(&self, chart: &Chart) -> Result<SyntheticClass> {
        let g = chart.generator(&self.target)?;
        let v = chart.group(g.at)?.unit(g.index).iter().map(|x| x * i128::from(self.coefficient)).collect();
        Ok(SyntheticClass::of(chart, g.at, v)?)
    }

    pub fn check(&self, f: &ChartMap) -> Result<Verdict> {
        delete_differential_check(&self.target_class(&f.source)?, self.page, f)
    }

    /// Printed degree, filtration and page against the chart, and the rule
    /// `f - 2 <= r <= f` relating page and target filtration.
    pub fn discrepancies(&self, chart: &Chart) -> Result<Vec<Discrepancy>> {
        let t = self.target_at(chart)?;
        let mut out = Vec::new();
        let mut note = |field, printed: String, actual: String| {
            if printed != actual {
                out.push(Discrepancy { degree: self.degree, field, printed, actual });
            }
        };
        note("degree", self.degree.to_string(), t.stem.to_string());
        note("filtration", self.filtration.to_string(), t.filtration.to_string());
        if let Some(p) = self.printed_page {
            note("page", p.to_string(), self.page.to_string());
        }
        let r = i64::from(self.page);
        if r > t.filtration || r + 2 < t.filtration {
            out.push(Discrepancy {
                degree: self.degree,
                field: "page vs filtration",
                printed: format!("d{r}"),
                actual: format!("target filtration {}", t.filtration),
            });
        }
        Ok(out)
    }
}

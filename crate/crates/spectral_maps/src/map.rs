use crate::error::{MapError, Result};
use chart_core::chart::widen;
use chart_core::snf::{self, Matrix, Vector};
use chart_core::{pages, BiDegree, Chart, PresentedAbGroup};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// One bidegree of a map: `x -> x * matrix` on E2 coordinates.
///
/// Rows follow the source generators, columns the target generators. A
/// missing target cell counts as the zero group (zero columns).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub at: BiDegree,
    pub matrix: Vec<Vec<i64>>,
    /// Highest `k` such that the data holds modulo `tau^k`; `None` means at
    /// every level.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau_level: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

impl Component {
    pub fn new(at: BiDegree, matrix: Vec<Vec<i64>>) -> Self {
        Component { at, matrix, tau_level: None, provenance: None }
    }

    pub fn rows(&self) -> Matrix {
        self.matrix.iter().map(|r| widen(r)).collect()
    }

    /// Whether the data may be used for a statement modulo `tau^k`.
    pub fn valid_mod_tau(&self, k: u32) -> bool {
        self.tau_level.is_none_or(|t| k <= t)
    }
}

/// Declared compatibility of a map with chart structure.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Compat {
    #[serde(default)]
    pub differentials: bool,
    #[serde(default)]
    pub products: bool,
}

/// On-disk form of a map; charts are referenced by name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapSpec {
    pub name: String,
    pub source: String,
    pub target: String,
    #[serde(default)]
    pub compat: Compat,
    pub components: Vec<Component>,
    /// Citation for "the map is injective on the zero line off stem 0".
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zero_line_injective: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

impl MapSpec {
    pub fn from_json(s: &str) -> Result<MapSpec> {
        serde_json::from_str(s).map_err(|e| MapError::Parse(e.to_string()))
    }
}

/// A filtration-preserving map of charts, given cell by cell.
#[derive(Clone, Debug)]
pub struct ChartMap {
    pub name: String,
    pub source: Chart,
    pub target: Chart,
    pub components: BTreeMap<BiDegree, Component>,
    pub compat: Compat,
    pub zero_line_injective: Option<String>,
}

fn empty_group() -> PresentedAbGroup {
    PresentedAbGroup::default()
}

impl ChartMap {
    /// Bind a spec to its charts and check every component.
    pub fn from_spec(spec: &MapSpec, source: &Chart, target: &Chart) -> Result<ChartMap> {
        if spec.source != source.name || spec.target != target.name {
            return Err(MapError::Precondition(format!(
                "map `{}` is {} -> {}, given charts {} and {}",
                spec.name, spec.source, spec.target, source.name, target.name
            )));
        }
        let mut components = BTreeMap::new();
        for c in &spec.components {
            if components.insert(c.at, c.clone()).is_some() {
                return Err(MapError::IllDefined { at: c.at, detail: "component given twice".into() });
            }
        }
        let m = ChartMap {
            name: spec.name.clone(),
            source: source.clone(),
            target: target.clone(),
            components,
            compat: spec.compat,
            zero_line_injective: spec.zero_line_injective.clone(),
        };
        m.check()?;
        Ok(m)
    }

    pub fn to_spec(&self) -> MapSpec {
        MapSpec {
            name: self.name.clone(),
            source: self.source.name.clone(),
            target: self.target.name.clone(),
            compat: self.compat,
            components: self.components.values().cloned().collect(),
            zero_line_injective: self.zero_line_injective.clone(),
            provenance: None,
        }
    }

    pub fn identity(chart: &Chart) -> ChartMap {
        let components = chart
            .cells
            .iter()
            .map(|c| {
                let n = c.group.ngens();
                let m = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
                (c.at, Component::new(c.at, m))
            })
            .collect();
        ChartMap {
            name: "id".into(),
            source: chart.clone(),
            target: chart.clone(),
            components,
            compat: Compat { differentials: true, products: true },
            zero_line_injective: None,
        }
    }

    pub fn zero(source: &Chart, target: &Chart) -> ChartMap {
        let components = source
            .cells
            .iter()
            .map(|c| {
                let cols = target.cell(c.at).map_or(0, |t| t.group.ngens());
                (c.at, Component::new(c.at, vec![vec![0; cols]; c.group.ngens()]))
            })
            .collect();
        ChartMap {
            name: "0".into(),
            source: source.clone(),
            target: target.clone(),
            components,
            compat: Compat { differentials: true, products: false },
            zero_line_injective: None,
        }
    }

    pub fn prime(&self) -> Option<i128> {
        self.target.prime()
    }

    pub fn source_group(&self, at: BiDegree) -> PresentedAbGroup {
        self.source.cell(at).map_or_else(empty_group, |c| c.group.clone())
    }

    pub fn target_group(&self, at: BiDegree) -> PresentedAbGroup {
        self.target.cell(at).map_or_else(empty_group, |c| c.group.clone())
    }

    pub fn component(&self, at: BiDegree) -> Result<&Component> {
        self.components.get(&at).ok_or_else(|| {
            MapError::IncompleteFixture(format!("map `{}` has no component at {at}", self.name))
        })
    }

    /// Image of `x` (source E2 coordinates at `at`).
    pub fn apply(&self, at: BiDegree, x: &[i128]) -> Result<Vector> {
        let c = self.component(at)?;
        let cols = self.target_group(at).ngens();
        if x.len() != c.matrix.len() {
            return Err(MapError::IllDefined {
                at,
                detail: format!("vector of length {} for {} rows", x.len(), c.matrix.len()),
            });
        }
        Ok(snf::mat_mul(&vec![x.to_vec()], &c.rows(), x.len(), cols).remove(0))
    }

    /// Shapes, filtration preservation and well-definedness on presentations.
    pub fn check(&self) -> Result<()> {
        if self.source.prime != self.target.prime {
            return Err(MapError::Precondition(format!(
                "charts {} and {} use different primes",
                self.source.name, self.target.name
            )));
        }
        let p = self.prime();
        for (at, c) in &self.components {
            if c.at != *at {
                return Err(MapError::IllDefined { at: *at, detail: format!("keyed at {at} but declared at {}", c.at) });
            }
            let src = self.source_group(*at);
            let tgt = self.target_group(*at);
            if c.matrix.len() != src.ngens() || c.matrix.iter().any(|r| r.len() != tgt.ngens()) {
                return Err(MapError::IllDefined {
                    at: *at,
                    detail: format!("matrix must be {}x{}", src.ngens(), tgt.ngens()),
                });
            }
            let m = c.rows();
            let rels = tgt.relation_rows();
            for rel in src.relation_rows() {
                let img = snf::mat_mul(&vec![rel.clone()], &m, src.ngens(), tgt.ngens()).remove(0);
                if !snf::contains(&rels, &img, p) {
                    return Err(MapError::IllDefined {
                        at: *at,
                        detail: format!("relation {:?} maps to {:?}, which is nonzero", rel, img),
                    });
                }
            }
        }
        if self.compat.differentials {
            self.check_differentials()?;
        }
        Ok(())
    }

    /// `f(d_r b) = d_r f(b)` on every declared differential basis vector whose
    /// components are present.
    pub fn check_differentials(&self) -> Result<()> {
        let p = self.prime();
        let st = pages::compute(&self.source)?;
        let tt = pages::compute(&self.target)?;
        for d in &self.source.differentials {
            let (Some(_), Some(_)) = (self.components.get(&d.source), self.components.get(&d.target)) else {
                continue;
            };
            let n = self.source_group(d.source).ngens();
            let tgt = self.target_group(d.target);
            for b in d.basis_rows(n) {
                let Some((_, db)) = pages::apply_differential(&self.source, &st, d.page, d.source, &b)? else {
                    continue;
                };
                let lhs = if db.is_empty() { vec![0; tgt.ngens()] } else { self.apply(d.target, &db)? };
                let fb = self.apply(d.source, &b)?;
                let rhs = if self.target.cell(d.source).is_none() || fb.iter().all(|&x| x == 0) {
                    vec![0; tgt.ngens()]
                } else {
                    match pages::apply_differential(&self.target, &tt, d.page, d.source, &fb)? {
                        Some((_, v)) if !v.is_empty() => v,
                        Some(_) => vec![0; tgt.ngens()],
                        None => {
                            return Err(MapError::IllDefined {
                                at: d.source,
                                detail: format!("f({:?}) does not survive to E{} of {}", b, d.page, self.target.name),
                            })
                        }
                    }
                };
                if tgt.ngens() > 0 && !tgt.equal(&lhs, &rhs, p) {
                    return Err(MapError::IllDefined {
                        at: d.source,
                        detail: format!("f(d{} {:?}) = {:?} but d{} f = {:?}", d.page, b, lhs, d.page, rhs),
                    });
                }
            }
        }
        Ok(())
    }

    /// `other` after `self`.
    pub fn then(&self, other: &ChartMap) -> Result<ChartMap> {
        if self.target.name != other.source.name {
            return Err(MapError::Precondition(format!(
                "cannot compose {} -> {} with {} -> {}",
                self.source.name, self.target.name, other.source.name, other.target.name
            )));
        }
        let mut components = BTreeMap::new();
        for (at, c) in &self.components {
            let Some(d) = other.components.get(at) else { continue };
            let mid = self.target_group(*at).ngens();
            let cols = other.target_group(*at).ngens();
            let m = snf::mat_mul(&c.rows(), &d.rows(), mid, cols);
            let tau_level = match (c.tau_level, d.tau_level) {
                (Some(a), Some(b)) => Some(a.min(b)),
                (a, b) => a.or(b),
            };
            components.insert(
                *at,
                Component {
                    at: *at,
                    matrix: m.iter().map(|r| chart_core::chart::narrow(r)).collect(),
                    tau_level,
                    provenance: None,
                },
            );
        }
        Ok(ChartMap {
            name: format!("{}.{}", other.name, self.name),
            source: self.source.clone(),
            target: other.target.clone(),
            components,
            compat: Compat {
                differentials: self.compat.differentials && other.compat.differentials,
                products: self.compat.products && other.compat.products,
            },
            zero_line_injective: None,
        })
    }

    /// `self - other`, both between the same charts.
    pub fn minus(&self, other: &ChartMap) -> Result<ChartMap> {
        if self.source.name != other.source.name || self.target.name != other.target.name {
            return Err(MapError::Precondition("difference of maps between different charts".into()));
        }
        let mut components = BTreeMap::new();
        for (at, c) in &self.components {
            let Some(d) = other.components.get(at) else { continue };
            let matrix = c
                .matrix
                .iter()
                .zip(&d.matrix)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect())
                .collect();
            let tau_level = match (c.tau_level, d.tau_level) {
                (Some(a), Some(b)) => Some(a.min(b)),
                (a, b) => a.or(b),
            };
            components.insert(*at, Component { at: *at, matrix, tau_level, provenance: None });
        }
        Ok(ChartMap {
            name: format!("{}-{}", self.name, other.name),
            source: self.source.clone(),
            target: self.target.clone(),
            components,
            compat: Compat {
                differentials: self.compat.differentials && other.compat.differentials,
                products: false,
            },
            zero_line_injective: None,
        })
    }
}

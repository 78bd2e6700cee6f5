//! Adams operations on the zero line: `psi^N(x) = N^(s/2) x` in stem `s`.

use crate::error::{MapError, Result};
use crate::map::{ChartMap, Compat, Component};
use chart_core::snf;
use chart_core::Chart;
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroLineCell {
    pub stem: i64,
    pub rank: usize,
    /// `s / 2`.
    pub exponent: u32,
    /// `N^(s/2)` when it fits.
    pub factor: Option<i128>,
    /// Rank of `ker(psi^N - 1)` on the cell.
    pub kernel_rank: usize,
}

#[derive(Clone, Debug)]
pub struct ZeroLine {
    pub n: i64,
    pub cells: Vec<ZeroLineCell>,
    /// `psi^N - 1` on filtration 0. With a prime set, each entry is the prime
    /// power part of `N^(s/2) - 1`, which differs from it by a unit.
    pub map: ChartMap,
}

impl ZeroLine {
    pub fn cell(&self, stem: i64) -> Option<&ZeroLineCell> {
        self.cells.iter().find(|c| c.stem == stem)
    }

    /// Stems other than 0 where `psi^N - 1` has a kernel.
    pub fn kernel_off_zero(&self) -> Vec<i64> {
        self.cells.iter().filter(|c| c.stem != 0 && c.kernel_rank > 0).map(|c| c.stem).collect()
    }
}

/// `p`-part of `n^k - 1` for `p = 2`, exact via arithmetic mod 2^128.
fn two_part_of_power_minus_one(n: i64, k: u32) -> Option<i128> {
    let r = (n as i128 as u128).wrapping_pow(k).wrapping_sub(1);
    if r == 0 {
        return None;
    }
    let v = r.trailing_zeros();
    (v < 126).then(|| 1i128 << v)
}

pub fn psi_n_zero_line(chart: &Chart, n: i64) -> Result<ZeroLine> {
    if n.abs() < 2 {
        return Err(MapError::Domain(format!("psi^{n} is not an Adams operation of interest")));
    }
    let p = chart.prime();
    let mut cells = Vec::new();
    let mut components = BTreeMap::new();
    for c in chart.cells.iter().filter(|c| c.at.filtration == 0) {
        let inv = c.group.invariants(p);
        if inv.is_trivial() {
            continue;
        }
        if !inv.torsion.is_empty() {
            return Err(MapError::Precondition(format!("torsion {inv} on the zero line at {}", c.at)));
        }
        if c.at.stem % 2 != 0 || c.at.stem < 0 {
            return Err(MapError::Precondition(format!("nonzero zero-line cell in stem {}", c.at.stem)));
        }
        let k = (c.at.stem / 2) as u32;
        let factor = (n as i128).checked_pow(k);
        let entry: i128 = match (factor, p) {
            (_, _) if k == 0 => 0,
            (Some(f), None) => f - 1,
            (_, Some(2)) => two_part_of_power_minus_one(n, k)
                .ok_or_else(|| MapError::Domain(format!("{n}^{k} - 1 has 2-adic valuation past 125")))?,
            (Some(f), Some(q)) => snf::p_part(f - 1, q),
            (None, _) => return Err(MapError::Domain(format!("{n}^{k} overflows"))),
        };
        let e = i64::try_from(entry).map_err(|_| MapError::Domain(format!("{n}^{k} - 1 overflows")))?;
        let r = c.group.ngens();
        let m: Vec<Vec<i64>> = (0..r).map(|i| (0..r).map(|j| if i == j { e } else { 0 }).collect()).collect();
        let mut comp = Component::new(c.at, m);
        comp.provenance = Some(format!("psi^{n} = {n}^{k}"));
        components.insert(c.at, comp);
        cells.push(ZeroLineCell {
            stem: c.at.stem,
            rank: inv.free_rank,
            exponent: k,
            factor,
            kernel_rank: if entry == 0 { inv.free_rank } else { 0 },
        });
    }
    let map = ChartMap {
        name: format!("psi{n}-1"),
        source: chart.clone(),
        target: chart.clone(),
        components,
        compat: Compat::default(),
        zero_line_injective: None,
    };
    map.check()?;
    Ok(ZeroLine { n, cells, map })
}

/// `psi^N - 1` on filtration 0 has no kernel off stem 0.
pub fn zero_line_injective(chart: &Chart, n: i64) -> Result<bool> {
    Ok(psi_n_zero_line(chart, n)?.kernel_off_zero().is_empty())
}

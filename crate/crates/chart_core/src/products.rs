use crate::chart::Chart;
use crate::error::{ChartError, Result};
use crate::pages::{self, PageTable};
use crate::snf::{self, Vector};
use crate::BiDegree;

/// Outcome of a product-table lookup; undeclared products are never zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProductValue {
    Value { at: BiDegree, element: Vector, tau: i64 },
    Undeclared,
}

/// Look up `x * y`, falling back to `y * x` with the Koszul sign on stems.
pub fn multiply(chart: &Chart, x: &str, y: &str) -> Result<ProductValue> {
    let gx = chart.generator(x)?;
    let gy = chart.generator(y)?;
    let summed = gx.at + gy.at;
    let found = chart
        .products
        .iter()
        .find(|e| e.left == x && e.right == y)
        .map(|e| (e, 1))
        .or_else(|| {
            let sign = if (gx.at.stem * gy.at.stem).rem_euclid(2) == 0 { 1 } else { -1 };
            chart.products.iter().find(|e| e.left == y && e.right == x).map(|e| (e, sign))
        });
    let Some((entry, sign)) = found else {
        if !chart.window.contains(summed) {
            return Err(ChartError::Window(summed));
        }
        return Ok(ProductValue::Undeclared);
    };
    let at = summed + BiDegree::new(0, entry.tau);
    if !chart.window.contains(at) {
        return Err(ChartError::Window(at));
    }
    let element = match chart.terms_vector(&entry.result)? {
        None => chart.cell(at).map_or_else(Vec::new, |c| vec![0; c.group.ngens()]),
        Some((_, v)) => snf::scale(&v, sign),
    };
    Ok(ProductValue::Value { at, element, tau: entry.tau })
}

/// `v * y` for a vector `v` at `at`, termwise through the table; `None` if
/// any needed product is undeclared or hidden.
fn mul_vec_right(chart: &Chart, at: BiDegree, v: &[i128], y: &str, y_left: bool) -> Option<(BiDegree, Vector)> {
    let gy = chart.generator(y).ok()?;
    let out_at = at + gy.at;
    let n = chart.cell(out_at).map_or(0, |c| c.group.ngens());
    let mut out = vec![0; n];
    let names = chart.cell(at).map(|c| c.group.names()).unwrap_or_default();
    for (i, &c) in v.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let (a, b) = if y_left { (y, names[i].as_str()) } else { (names[i].as_str(), y) };
        match multiply(chart, a, b).ok()? {
            ProductValue::Value { element, tau: 0, .. } => {
                if element.len() != n {
                    if snf::is_zero(&element) {
                        continue;
                    }
                    return None;
                }
                snf::add_scaled(&mut out, &element, c);
            }
            _ => return None,
        }
    }
    Some((out_at, out))
}

/// Check `d(xy) = d(x)y + (-1)^{|x|} x d(y)` wherever every term is known.
pub fn leibniz_violations(chart: &Chart) -> Vec<String> {
    let Ok(table) = pages::compute(chart) else { return Vec::new() };
    let mut out = Vec::new();
    for e in chart.products.iter().filter(|e| e.tau == 0) {
        for r in table.start..=table.end {
            if let Some(msg) = leibniz_one(chart, &table, r, &e.left, &e.right) {
                out.push(msg);
            }
        }
    }
    out
}

fn leibniz_one(chart: &Chart, table: &PageTable, r: u32, x: &str, y: &str) -> Option<String> {
    let gx = chart.generator(x).ok()?;
    let gy = chart.generator(y).ok()?;
    let ProductValue::Value { at: zat, element: z, .. } = multiply(chart, x, y).ok()? else { return None };
    let ex = chart.group(gx.at).ok()?.unit(gx.index);
    let ey = chart.group(gy.at).ok()?.unit(gy.index);
    let (_, dx) = pages::apply_differential(chart, table, r, gx.at, &ex).ok()??;
    let (_, dy) = pages::apply_differential(chart, table, r, gy.at, &ey).ok()??;
    if z.is_empty() || chart.cell(zat).is_none() {
        return None;
    }
    let (tat, dz) = pages::apply_differential(chart, table, r, zat, &z).ok()??;
    let sign = if gx.at.stem.rem_euclid(2) == 0 { 1 } else { -1 };
    let n = chart.cell(tat).map_or(0, |c| c.group.ngens());
    let mut rhs = vec![0; n];
    if !snf::is_zero(&dx) {
        let (at1, v1) = mul_vec_right(chart, gx.at.diff_target(i64::from(r)), &dx, y, false)?;
        if at1 != tat || v1.len() != n {
            return None;
        }
        snf::add_scaled(&mut rhs, &v1, 1);
    }
    if !snf::is_zero(&dy) {
        let (at2, v2) = mul_vec_right(chart, gy.at.diff_target(i64::from(r)), &dy, x, true)?;
        if at2 != tat || v2.len() != n {
            return None;
        }
        snf::add_scaled(&mut rhs, &v2, sign);
    }
    if n == 0 {
        return None;
    }
    let diff: Vector = dz.iter().zip(&rhs).map(|(a, b)| a - b).collect();
    let b = &table.at(r)?.get(&tat)?.b;
    (!snf::contains(b, &diff, chart.prime()))
        .then(|| format!("d{r}({x}*{y}) = {:?} but the Leibniz rule gives {:?} at {tat}", dz, rhs))
}

//! `P_i(x) = boundary(v1^4 boundary^{-1}(x))` on the periodic families, and
//! the boundary of `v1^4` applied to an image class.

use crate::error::{MooreError, Result};
use crate::sphere::{Element, SphereModel};
use crate::table::Entry;
use chart_core::BiDegree;

/// The indeterminacy of `P_i` at `x`: `(2^(4-i) sigma) * pi_{s+1,f+i-1}`,
/// the boundary of `v1^4` on the image of the inclusion.
pub fn indeterminacy(sphere: &SphereModel, i: u32, at: BiDegree) -> Result<Vec<Element>> {
    let src = BiDegree::new(at.stem + 1, at.filtration + i64::from(i) - 1);
    let lat = sphere.tau_free(src)?;
    let mut out = Vec::new();
    for w in lat.generators() {
        let y = sphere.two_power_sigma_times(4 - i, &w)?;
        if !sphere.is_zero(&y)? {
            out.push(y);
        }
    }
    Ok(out)
}

/// `P_i^n(x)`.
pub fn periodicity_apply(sphere: &SphereModel, i: u32, n: u32, x: Entry) -> Result<Entry> {
    if !(1..=3).contains(&i) {
        return Err(MooreError::Precondition(format!("P_{i} is defined for i = 1..3")));
    }
    let mut cur = x.untwisted();
    sphere.entry_element(&cur)?;
    for _ in 0..n {
        let e = sphere.entry_element(&cur)?;
        if !sphere.killed_by_two_power(&e, i)? {
            return Err(MooreError::Precondition(format!("{cur} is not h0^{i}-torsion")));
        }
        let ind = indeterminacy(sphere, i, cur.bidegree())?;
        if !ind.is_empty() {
            return Err(MooreError::Indeterminate { span: ind.iter().map(|y| y.to_string()).collect() });
        }
        cur = cur.shifted(1);
        sphere.entry_element(&cur)?;
    }
    Ok(cur.with_tau(x.tau))
}

/// `boundary(v1^4 x-bar) = h0 h3 x` in `M(h0^3)`, with `h0 h3 = 2 sigma`.
pub fn boundary_of_v1_multiple(sphere: &SphereModel, x: &Element, i: u32) -> Result<Element> {
    if i != 3 {
        return Err(MooreError::Precondition(format!("the boundary formula is proved for i = 3, not {i}")));
    }
    for n in x.coeffs.keys() {
        sphere.class(n)?;
    }
    sphere.two_power_sigma_times(1, x)
}

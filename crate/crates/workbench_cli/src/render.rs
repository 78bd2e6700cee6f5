//! Deterministic SVG charts.

use crate::error::RenderError;
use chart_core::pages::{compute, min_kill_page_in};
use chart_core::{BiDegree, Chart, Page, Window};
use std::collections::BTreeMap;
use std::fmt::Write;

pub const MAX_STEMS: i64 = 96;
pub const MAX_FILTRATIONS: i64 = 48;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RenderOptions {
    /// Defaults to the chart window.
    pub window: Option<Window>,
    /// Pixels per grid square.
    pub cell: i64,
    pub labels: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions { window: None, cell: 32, labels: true }
    }
}

/// Fill colour by the page that kills a class; permanent classes are black.
fn colour(page: Option<Page>) -> &'static str {
    const PALETTE: [&str; 6] = ["#d62728", "#ff7f0e", "#2ca02c", "#1f77b4", "#9467bd", "#8c564b"];
    match page {
        Some(Page::Finite(r)) => PALETTE[((r.max(2) - 2) / 2) as usize % PALETTE.len()],
        _ => "#000000",
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Stem ranges of at most `MAX_STEMS` covering `w`.
fn split(w: Window) -> String {
    let mut parts = Vec::new();
    let mut s = w.stems.0;
    while s <= w.stems.1 {
        let e = (s + MAX_STEMS - 1).min(w.stems.1);
        parts.push(format!("{s}..{e}"));
        s = e + 1;
    }
    let f = if w.filtrations.1 - w.filtrations.0 + 1 > MAX_FILTRATIONS {
        format!(" with filtrations {}..{}", w.filtrations.0, w.filtrations.0 + MAX_FILTRATIONS - 1)
    } else {
        String::new()
    };
    format!("stems {}{f}", parts.join(", "))
}

/// Dots per cyclic summand, `d_r` arrows labelled by page, and kill-page colours.
pub fn render_chart(chart: &Chart, opts: &RenderOptions) -> Result<String, RenderError> {
    let w = opts.window.unwrap_or(chart.window);
    let (ns, nf) = (w.stems.1 - w.stems.0 + 1, w.filtrations.1 - w.filtrations.0 + 1);
    if ns <= 0 || nf <= 0 {
        return Err(RenderError::EmptyWindow);
    }
    if ns > MAX_STEMS || nf > MAX_FILTRATIONS {
        return Err(RenderError::TooLarge { stems: ns, filtrations: nf, suggestion: split(w) });
    }
    let c = opts.cell.max(8);
    let margin = 2 * c;
    let (width, height) = (ns * c + margin + c / 2, nf * c + margin + c / 2);
    let x = |s: i64| margin + (s - w.stems.0) * c + c / 2;
    let y = |f: i64| c / 2 + (w.filtrations.1 - f) * c + c / 2;

    let table = chart.max_page.and_then(|_| compute(chart).ok());
    let p = chart.prime();

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="{}">"#,
        c / 3
    );
    let _ = writeln!(out, "<title>{}</title>", escape(&chart.name));
    let _ = writeln!(out, r##"<g class="grid" stroke="#dddddd" stroke-width="1">"##);
    for s in w.stems.0..=w.stems.1 + 1 {
        let gx = margin + (s - w.stems.0) * c;
        let _ = writeln!(out, r#"<line x1="{gx}" y1="{}" x2="{gx}" y2="{}"/>"#, c / 2, c / 2 + nf * c);
    }
    for f in 0..=nf {
        let gy = c / 2 + f * c;
        let _ = writeln!(out, r#"<line x1="{margin}" y1="{gy}" x2="{}" y2="{gy}"/>"#, margin + ns * c);
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, r#"<g class="axes" text-anchor="middle">"#);
    for s in w.stems.0..=w.stems.1 {
        let _ = writeln!(out, r#"<text x="{}" y="{}">{s}</text>"#, x(s), c / 2 + nf * c + c);
    }
    for f in w.filtrations.0..=w.filtrations.1 {
        let _ = writeln!(out, r#"<text x="{}" y="{}">{f}</text>"#, margin - c / 2, y(f) + c / 8);
    }
    let _ = writeln!(out, "</g>");

    let mut pos: BTreeMap<BiDegree, (i64, i64)> = BTreeMap::new();
    let _ = writeln!(out, r#"<g class="classes">"#);
    let mut cells: Vec<_> = chart.cells.iter().filter(|cell| w.contains(cell.at)).collect();
    cells.sort_by_key(|cell| cell.at);
    for cell in cells {
        let inv = cell.group.invariants(p);
        let n = inv.torsion.len() + inv.free_rank;
        if n == 0 {
            continue;
        }
        let names = cell.group.names();
        let one_per_gen = names.len() == n;
        let (cx, cy) = (x(cell.at.stem), y(cell.at.filtration));
        pos.insert(cell.at, (cx, cy));
        let step = c / (n as i64 + 1);
        for i in 0..n {
            let dx = cx - c / 2 + step * (i as i64 + 1);
            let (label, page) = if one_per_gen {
                let kill = table.as_ref().and_then(|t| min_kill_page_in(t, p, cell.at, &cell.group.unit(i)).ok());
                (names[i].clone(), kill)
            } else {
                (if i == 0 { names.join(", ") } else { String::new() }, None)
            };
            let shape = if i < inv.free_rank { "free" } else { "torsion" };
            let killed = matches!(page, Some(Page::Finite(_)));
            let _ = write!(
                out,
                r#"<circle class="dot {shape}{}" cx="{dx}" cy="{cy}" r="{}" fill="{}" data-at="{},{}" data-label="{}""#,
                if killed { " tau-torsion" } else { "" },
                (c / 8).max(2),
                colour(page),
                cell.at.stem,
                cell.at.filtration,
                escape(&label)
            );
            if let Some(Page::Finite(r)) = page {
                let _ = write!(out, r#" data-kill-page="{r}""#);
            }
            let _ = writeln!(out, "/>");
            if opts.labels && !label.is_empty() {
                let _ = writeln!(out, r#"<text class="label" x="{dx}" y="{}" text-anchor="middle" font-size="{}">{}</text>"#, cy - c / 5, c / 5, escape(&label));
            }
        }
    }
    let _ = writeln!(out, "</g>");

    let _ = writeln!(out, r##"<g class="differentials" stroke="#1f77b4" fill="#1f77b4">"##);
    let mut diffs: Vec<_> = chart.differentials.iter().filter(|d| w.contains(d.source) && w.contains(d.target)).collect();
    diffs.sort_by_key(|d| (d.page, d.source));
    for d in diffs {
        let (x1, y1) = pos.get(&d.source).copied().unwrap_or((x(d.source.stem), y(d.source.filtration)));
        let (x2, y2) = pos.get(&d.target).copied().unwrap_or((x(d.target.stem), y(d.target.filtration)));
        let _ = writeln!(
            out,
            r#"<line class="arrow d{}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke-width="1.5" data-page="{}"/>"#,
            d.page, d.page
        );
        let _ = writeln!(
            out,
            r#"<text class="page" x="{}" y="{}" stroke="none" font-size="{}">d{}</text>"#,
            (x1 + x2) / 2 + 3,
            (y1 + y2) / 2,
            c / 4,
            d.page
        );
    }
    let _ = writeln!(out, "</g>");
    out.push_str("</svg>\n");
    Ok(out)
}

//! Self-contained SVG figures for the four studies.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use super::aggregate::Aggregate;
use super::config::Method;
use crate::error::{invalid, Error, Result};
use crate::pursuits::Algorithm;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotKind {
    /// Mean error against K, one line per method.
    LineVsK,
    /// Heat map of mean error over (ε_A, ε_y), one panel per (K, method).
    SurfaceVsEps,
    /// Mean error against ε_A at fixed ε_y, one line per (method, K).
    LineVsEps,
    /// Like `LineVsK`, with each line cut at the first K whose divergence
    /// rate exceeds one half.
    LineVsKCompressible,
}

impl PlotKind {
    pub const ALL: [PlotKind; 4] =
        [PlotKind::LineVsK, PlotKind::SurfaceVsEps, PlotKind::LineVsEps, PlotKind::LineVsKCompressible];

    pub fn name(self) -> &'static str {
        match self {
            PlotKind::LineVsK => "line-vs-k",
            PlotKind::SurfaceVsEps => "surface-vs-eps",
            PlotKind::LineVsEps => "line-vs-eps",
            PlotKind::LineVsKCompressible => "line-vs-k-compressible",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        PlotKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown plot kind '{s}'")))
    }
}

const W: f64 = 760.0;
const H: f64 = 480.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 190.0;
const TOP: f64 = 50.0;
const BOTTOM: f64 = 60.0;
const DIVERGED: f64 = 0.5;

fn color(method: Method) -> &'static str {
    match method {
        Method::Pursuit(Algorithm::Cosamp) => "#d62728",
        Method::Pursuit(Algorithm::Sp) => "#1f77b4",
        Method::Pursuit(Algorithm::Iht) => "#2ca02c",
        Method::Oracle => "#222222",
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

struct Series {
    label: String,
    color: &'static str,
    dash: Option<&'static str>,
    points: Vec<(f64, f64)>,
}

pub fn emit_plot(aggs: &[Aggregate], kind: PlotKind, path: &Path) -> Result<()> {
    std::fs::write(path, render_svg(aggs, kind)?)?;
    Ok(())
}

pub fn render_svg(aggs: &[Aggregate], kind: PlotKind) -> Result<String> {
    if aggs.is_empty() {
        return invalid("nothing to plot");
    }
    match kind {
        PlotKind::LineVsK | PlotKind::LineVsKCompressible => line_vs_k(aggs, kind == PlotKind::LineVsKCompressible),
        PlotKind::LineVsEps => line_vs_eps(aggs),
        PlotKind::SurfaceVsEps => surface(aggs),
    }
}

fn methods_in(aggs: &[Aggregate]) -> Vec<Method> {
    let mut out: Vec<Method> = Vec::new();
    for a in aggs {
        if !out.contains(&a.algorithm) {
            out.push(a.algorithm);
        }
    }
    out
}

fn sorted_unique(values: impl Iterator<Item = f64>) -> Vec<f64> {
    let mut v: Vec<f64> = values.collect();
    v.sort_by(f64::total_cmp);
    v.dedup();
    v
}

fn line_vs_k(aggs: &[Aggregate], truncate: bool) -> Result<String> {
    let (ea, ey) = (aggs[0].eps_a, aggs[0].eps_y);
    if aggs.iter().any(|a| a.eps_a != ea || a.eps_y != ey) {
        return invalid("line-vs-k needs a single (eps_a, eps_y) point");
    }
    let mut series = Vec::new();
    let mut y_hi: f64 = 0.0;
    for m in methods_in(aggs) {
        let mut rows: Vec<&Aggregate> = aggs.iter().filter(|a| a.algorithm == m).collect();
        rows.sort_by_key(|a| a.k);
        if truncate {
            if let Some(cut) = rows.iter().position(|a| a.divergence_rate > DIVERGED) {
                rows.truncate(cut);
            }
        }
        for a in &rows {
            if a.divergence_rate <= DIVERGED && a.mean.is_finite() {
                y_hi = y_hi.max(a.mean);
            }
        }
        series.push(Series {
            label: m.name().to_string(),
            color: color(m),
            dash: None,
            points: rows.iter().map(|a| (a.k as f64, a.mean)).collect(),
        });
    }
    let title = format!(
        "{}: mean relative error vs K (eps_a = {ea}, eps_y = {ey})",
        aggs[0].study
    );
    Ok(line_chart(&title, "sparsity level K", "mean relative error", &series, y_hi))
}

fn line_vs_eps(aggs: &[Aggregate]) -> Result<String> {
    let ey = aggs[0].eps_y;
    if aggs.iter().any(|a| a.eps_y != ey) {
        return invalid("line-vs-eps needs a single eps_y value");
    }
    let ks: Vec<usize> = aggs.iter().map(|a| a.k).collect::<BTreeSet<_>>().into_iter().collect();
    const DASHES: [Option<&str>; 4] = [None, Some("6,3"), Some("2,3"), Some("8,3,2,3")];
    let mut series = Vec::new();
    let mut y_hi: f64 = 0.0;
    for m in methods_in(aggs) {
        for (i, &k) in ks.iter().enumerate() {
            let mut rows: Vec<&Aggregate> = aggs.iter().filter(|a| a.algorithm == m && a.k == k).collect();
            if rows.is_empty() {
                continue;
            }
            rows.sort_by(|a, b| a.eps_a.total_cmp(&b.eps_a));
            for a in &rows {
                if a.divergence_rate <= DIVERGED && a.mean.is_finite() {
                    y_hi = y_hi.max(a.mean);
                }
            }
            series.push(Series {
                label: format!("{} K={k}", m.name()),
                color: color(m),
                dash: DASHES[i % DASHES.len()],
                points: rows.iter().map(|a| (a.eps_a, a.mean)).collect(),
            });
        }
    }
    let title = format!("{}: mean relative error vs eps_a (eps_y = {ey})", aggs[0].study);
    Ok(line_chart(&title, "eps_a", "mean relative error", &series, y_hi))
}

struct Axis {
    lo: f64,
    hi: f64,
    ticks: Vec<f64>,
}

fn nice_step(span: f64) -> f64 {
    let raw = span / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let f = raw / mag;
    let nice = if f < 1.5 { 1.0 } else if f < 3.0 { 2.0 } else if f < 7.0 { 5.0 } else { 10.0 };
    nice * mag
}

fn axis(lo: f64, hi: f64) -> Axis {
    let (lo, hi) = if hi > lo { (lo, hi) } else { (lo - 0.5, hi + 0.5) };
    let step = nice_step(hi - lo);
    let mut ticks = Vec::new();
    let mut t = (lo / step).ceil() * step;
    while t <= hi + 1e-9 * step {
        ticks.push(if t.abs() < 1e-12 * step { 0.0 } else { t });
        t += step;
    }
    Axis { lo, hi, ticks }
}

fn tick_label(v: f64) -> String {
    let s = format!("{:.6}", v);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".into() } else { s.to_string() }
}

fn line_chart(title: &str, xlabel: &str, ylabel: &str, series: &[Series], y_hi: f64) -> String {
    let xs = sorted_unique(series.iter().flat_map(|s| s.points.iter().map(|p| p.0)));
    let x_axis = axis(*xs.first().unwrap_or(&0.0), *xs.last().unwrap_or(&1.0));
    let y_top = if y_hi > 0.0 { y_hi * 1.08 } else { 1.0 };
    let y_axis = axis(0.0, y_top);
    let (pw, ph) = (W - LEFT - RIGHT, H - TOP - BOTTOM);
    let px = |x: f64| LEFT + (x - x_axis.lo) / (x_axis.hi - x_axis.lo) * pw;
    let py = |y: f64| TOP + ph - (y - y_axis.lo) / (y_axis.hi - y_axis.lo) * ph;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<defs><clipPath id="plot-area"><rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}"/></clipPath></defs>"#
    );
    let _ = writeln!(s, r#"<text x="{}" y="24" text-anchor="middle" font-size="14">{}</text>"#, LEFT + pw / 2.0, escape(title));

    // axes and ticks
    let _ = writeln!(s, r#"<g class="axes" stroke="black" fill="none">"#);
    let _ = writeln!(s, r#"<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}"/>"#);
    for &t in &x_axis.ticks {
        let x = px(t);
        let _ = writeln!(s, r#"<line x1="{x:.2}" y1="{}" x2="{x:.2}" y2="{}"/>"#, TOP + ph, TOP + ph + 5.0);
    }
    for &t in &y_axis.ticks {
        let y = py(t);
        let _ = writeln!(s, r#"<line x1="{}" y1="{y:.2}" x2="{LEFT}" y2="{y:.2}"/>"#, LEFT - 5.0);
        let _ = writeln!(s, r##"<line x1="{LEFT}" y1="{y:.2}" x2="{}" y2="{y:.2}" stroke="#dddddd"/>"##, LEFT + pw);
    }
    let _ = writeln!(s, "</g>");
    for &t in &x_axis.ticks {
        let _ = writeln!(s, r#"<text x="{:.2}" y="{}" text-anchor="middle">{}</text>"#, px(t), TOP + ph + 20.0, tick_label(t));
    }
    for &t in &y_axis.ticks {
        let _ = writeln!(s, r#"<text x="{}" y="{:.2}" text-anchor="end" dominant-baseline="middle">{}</text>"#, LEFT - 8.0, py(t), tick_label(t));
    }
    let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#, LEFT + pw / 2.0, H - 15.0, escape(xlabel));
    let _ = writeln!(
        s,
        r#"<text x="20" y="{0}" text-anchor="middle" transform="rotate(-90 20 {0})">{1}</text>"#,
        TOP + ph / 2.0,
        escape(ylabel)
    );

    // data, clipped to the plot area so unbounded errors run off the top
    let _ = writeln!(s, r#"<g class="data" clip-path="url(#plot-area)">"#);
    for ser in series {
        let dash = ser.dash.map(|d| format!(r#" stroke-dasharray="{d}""#)).unwrap_or_default();
        if ser.points.len() > 1 {
            let pts: Vec<String> = ser.points.iter().map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y.min(y_axis.hi * 10.0)))).collect();
            let _ = writeln!(
                s,
                r#"<polyline fill="none" stroke="{}" stroke-width="1.6"{dash} points="{}"/>"#,
                ser.color,
                pts.join(" ")
            );
        }
        for &(x, y) in &ser.points {
            let _ = writeln!(s, r#"<circle class="marker" cx="{:.2}" cy="{:.2}" r="3" fill="{}"/>"#, px(x), py(y.min(y_axis.hi * 10.0)), ser.color);
        }
    }
    let _ = writeln!(s, "</g>");

    // legend
    let lx = LEFT + pw + 20.0;
    let _ = writeln!(s, r#"<g class="legend">"#);
    for (i, ser) in series.iter().enumerate() {
        let y = TOP + 10.0 + 20.0 * i as f64;
        let dash = ser.dash.map(|d| format!(r#" stroke-dasharray="{d}""#)).unwrap_or_default();
        let _ = writeln!(s, r#"<line x1="{lx}" y1="{y}" x2="{}" y2="{y}" stroke="{}" stroke-width="2"{dash}/>"#, lx + 28.0, ser.color);
        let _ = writeln!(s, r#"<text x="{}" y="{y}" dominant-baseline="middle">{}</text>"#, lx + 36.0, escape(&ser.label));
    }
    let _ = writeln!(s, "</g>");
    s.push_str("</svg>\n");
    s
}

const VIRIDIS: [(f64, f64, f64); 5] = [
    (68.0, 1.0, 84.0),
    (59.0, 82.0, 139.0),
    (33.0, 145.0, 140.0),
    (94.0, 201.0, 98.0),
    (253.0, 231.0, 37.0),
];

fn heat_color(t: f64) -> String {
    let t = if t.is_finite() { t.clamp(0.0, 1.0) } else { 1.0 };
    let pos = t * (VIRIDIS.len() - 1) as f64;
    let i = (pos.floor() as usize).min(VIRIDIS.len() - 2);
    let f = pos - i as f64;
    let (a, b) = (VIRIDIS[i], VIRIDIS[i + 1]);
    let c = |x: f64, y: f64| (x + (y - x) * f).round() as u8;
    format!("#{:02x}{:02x}{:02x}", c(a.0, b.0), c(a.1, b.1), c(a.2, b.2))
}

fn surface(aggs: &[Aggregate]) -> Result<String> {
    let methods = methods_in(aggs);
    let ks: Vec<usize> = aggs.iter().map(|a| a.k).collect::<BTreeSet<_>>().into_iter().collect();
    let eas = sorted_unique(aggs.iter().map(|a| a.eps_a));
    let eys = sorted_unique(aggs.iter().map(|a| a.eps_y));
    let lookup = |m: Method, k: usize, ea: f64, ey: f64| {
        aggs.iter().find(|a| a.algorithm == m && a.k == k && a.eps_a == ea && a.eps_y == ey)
    };
    for &m in &methods {
        for &k in &ks {
            for &ea in &eas {
                for &ey in &eys {
                    if lookup(m, k, ea, ey).is_none() {
                        return invalid(format!("surface grid incomplete: {m} K={k} eps_a={ea} eps_y={ey}"));
                    }
                }
            }
        }
    }
    let finite: Vec<f64> = aggs.iter().map(|a| a.mean).filter(|v| v.is_finite()).collect();
    let lo = finite.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = finite.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let (lo, hi) = if lo.is_finite() && hi > lo { (lo, hi) } else { (0.0, lo.max(0.0) + 1.0) };

    let panel = 150.0;
    let gap = 50.0;
    let (left, top) = (90.0, 70.0);
    let width = left + methods.len() as f64 * (panel + gap) + 110.0;
    let height = top + ks.len() as f64 * (panel + gap) + 20.0;
    let (cw, ch) = (panel / eas.len() as f64, panel / eys.len() as f64);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(s, r#"<rect width="{width}" height="{height}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="22" text-anchor="middle" font-size="14">{}: mean relative error over (eps_a, eps_y)</text>"#,
        width / 2.0,
        aggs[0].study
    );
    for (ci, &m) in methods.iter().enumerate() {
        let x0 = left + ci as f64 * (panel + gap);
        let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="middle" font-size="13">{}</text>"#, x0 + panel / 2.0, top - 22.0, m);
    }
    for (ri, &k) in ks.iter().enumerate() {
        let y0 = top + ri as f64 * (panel + gap);
        let _ = writeln!(s, r#"<text x="20" y="{}" dominant-baseline="middle" font-size="13">K = {k}</text>"#, y0 + panel / 2.0);
        for (ci, &m) in methods.iter().enumerate() {
            let x0 = left + ci as f64 * (panel + gap);
            let _ = writeln!(s, r#"<g class="panel" data-method="{m}" data-k="{k}">"#);
            for (i, &ea) in eas.iter().enumerate() {
                for (j, &ey) in eys.iter().enumerate() {
                    let a = lookup(m, k, ea, ey).expect("grid checked above");
                    let t = (a.mean - lo) / (hi - lo);
                    // ε_y grows upward
                    let y = y0 + panel - (j + 1) as f64 * ch;
                    let _ = writeln!(
                        s,
                        r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="{}"><title>eps_a={ea} eps_y={ey} mean={:.4e}</title></rect>"#,
                        x0 + i as f64 * cw,
                        y,
                        cw + 0.05,
                        ch + 0.05,
                        heat_color(t),
                        a.mean
                    );
                }
            }
            let _ = writeln!(s, r#"<rect x="{x0}" y="{y0}" width="{panel}" height="{panel}" fill="none" stroke="black"/>"#);
            let (first_a, last_a) = (eas[0], eas[eas.len() - 1]);
            let (first_y, last_y) = (eys[0], eys[eys.len() - 1]);
            let _ = writeln!(s, r#"<text x="{x0}" y="{}" text-anchor="start">{}</text>"#, y0 + panel + 13.0, tick_label(first_a));
            let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="end">{}</text>"#, x0 + panel, y0 + panel + 13.0, tick_label(last_a));
            let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="middle">eps_a</text>"#, x0 + panel / 2.0, y0 + panel + 26.0);
            let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="end">{}</text>"#, x0 - 3.0, y0 + panel, tick_label(first_y));
            let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="end" dominant-baseline="hanging">{}</text>"#, x0 - 3.0, y0, tick_label(last_y));
            let _ = writeln!(
                s,
                r#"<text x="{0}" y="{1}" text-anchor="middle" transform="rotate(-90 {0} {1})">eps_y</text>"#,
                x0 - 12.0,
                y0 + panel / 2.0
            );
            let _ = writeln!(s, "</g>");
        }
    }

    // color bar legend
    let bx = left + methods.len() as f64 * (panel + gap);
    let (by, bh, steps) = (top, panel, 32);
    let _ = writeln!(s, r#"<g class="legend">"#);
    for i in 0..steps {
        let t = i as f64 / (steps - 1) as f64;
        let y = by + bh - (i + 1) as f64 * bh / steps as f64;
        let _ = writeln!(s, r#"<rect x="{bx}" y="{y:.2}" width="16" height="{:.2}" fill="{}"/>"#, bh / steps as f64 + 0.05, heat_color(t));
    }
    let _ = writeln!(s, r#"<rect x="{bx}" y="{by}" width="16" height="{bh}" fill="none" stroke="black"/>"#);
    let _ = writeln!(s, r#"<text x="{}" y="{}" dominant-baseline="middle">{:.3e}</text>"#, bx + 20.0, by, hi);
    let _ = writeln!(s, r#"<text x="{}" y="{}" dominant-baseline="middle">{:.3e}</text>"#, bx + 20.0, by + bh, lo);
    let _ = writeln!(s, r#"<text x="{bx}" y="{}">mean error</text>"#, by - 8.0);
    let _ = writeln!(s, "</g>");
    s.push_str("</svg>\n");
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::config::Study;

    fn agg(m: Method, k: usize, ea: f64, ey: f64, mean: f64, div: f64) -> Aggregate {
        Aggregate {
            study: Study::SweepK,
            k,
            eps_a: ea,
            eps_y: ey,
            algorithm: m,
            trials: 10,
            mean,
            median: mean,
            std: 0.0,
            divergence_rate: div,
            mean_iterations: 3.0,
        }
    }

    fn well_formed(svg: &str) -> roxmltree::Document<'_> {
        roxmltree::Document::parse(svg).expect("well-formed SVG")
    }

    #[test]
    fn single_point_single_marker() {
        let svg = render_svg(&[agg(Method::Oracle, 3, 0.05, 0.05, 0.1, 0.0)], PlotKind::LineVsK).unwrap();
        let doc = well_formed(&svg);
        assert_eq!(doc.descendants().filter(|n| n.has_tag_name("circle")).count(), 1);
    }

    #[test]
    fn four_series_and_legend() {
        let mut aggs = Vec::new();
        for m in Method::ALL {
            for k in 1..=5 {
                aggs.push(agg(m, k, 0.05, 0.05, 0.01 * k as f64, 0.0));
            }
        }
        let svg = render_svg(&aggs, PlotKind::LineVsK).unwrap();
        let doc = well_formed(&svg);
        assert_eq!(doc.descendants().filter(|n| n.has_tag_name("polyline")).count(), 4);
        let legend = doc.descendants().find(|n| n.attribute("class") == Some("legend")).unwrap();
        let labels: Vec<_> = legend.descendants().filter(|n| n.has_tag_name("text")).filter_map(|n| n.text()).collect();
        assert_eq!(labels, vec!["cosamp", "sp", "iht", "oracle"]);
    }

    #[test]
    fn compressible_truncates_diverged_tail() {
        let mut aggs = Vec::new();
        for k in 5..=10 {
            aggs.push(agg(Method::Pursuit(Algorithm::Iht), k, 0.01, 0.01, 0.01, if k >= 8 { 0.9 } else { 0.0 }));
            aggs.push(agg(Method::Oracle, k, 0.01, 0.01, 0.01, 0.0));
        }
        let svg = render_svg(&aggs, PlotKind::LineVsKCompressible).unwrap();
        let doc = well_formed(&svg);
        assert_eq!(doc.descendants().filter(|n| n.has_tag_name("circle")).count(), 3 + 6);
        let full = render_svg(&aggs, PlotKind::LineVsK).unwrap();
        assert_eq!(well_formed(&full).descendants().filter(|n| n.has_tag_name("circle")).count(), 12);
    }

    #[test]
    fn surface_is_a_heat_map() {
        let mut aggs = Vec::new();
        for m in Method::ALL {
            for k in [5, 10] {
                for ea in [0.0, 0.05, 0.1] {
                    for ey in [0.0, 0.1] {
                        aggs.push(agg(m, k, ea, ey, ea + ey, 0.0));
                    }
                }
            }
        }
        let svg = render_svg(&aggs, PlotKind::SurfaceVsEps).unwrap();
        let doc = well_formed(&svg);
        let panels = doc.descendants().filter(|n| n.attribute("class") == Some("panel")).count();
        assert_eq!(panels, 8);
        let cells = doc.descendants().filter(|n| n.has_tag_name("rect") && n.children().any(|c| c.has_tag_name("title"))).count();
        assert_eq!(cells, 8 * 6);
        aggs.pop();
        assert!(render_svg(&aggs, PlotKind::SurfaceVsEps).is_err());
    }

    #[test]
    fn line_vs_eps_series_per_method_and_k() {
        let mut aggs = Vec::new();
        for m in [Method::Oracle, Method::Pursuit(Algorithm::Sp)] {
            for k in [5, 10, 15] {
                for ea in [0.0, 0.02, 0.04] {
                    aggs.push(agg(m, k, ea, 0.0, ea * k as f64, 0.0));
                }
            }
        }
        let doc_src = render_svg(&aggs, PlotKind::LineVsEps).unwrap();
        let doc = well_formed(&doc_src);
        assert_eq!(doc.descendants().filter(|n| n.has_tag_name("polyline")).count(), 6);
    }

    #[test]
    fn axis_mismatch_is_rejected() {
        let aggs = vec![agg(Method::Oracle, 3, 0.05, 0.05, 0.1, 0.0), agg(Method::Oracle, 4, 0.01, 0.05, 0.1, 0.0)];
        assert!(render_svg(&aggs, PlotKind::LineVsK).is_err());
        let aggs = vec![agg(Method::Oracle, 3, 0.05, 0.05, 0.1, 0.0), agg(Method::Oracle, 3, 0.05, 0.0, 0.1, 0.0)];
        assert!(render_svg(&aggs, PlotKind::LineVsEps).is_err());
        assert!(render_svg(&[], PlotKind::SurfaceVsEps).is_err());
        assert_eq!(PlotKind::parse("surface-vs-eps").unwrap(), PlotKind::SurfaceVsEps);
    }

    #[test]
    fn ticks_are_round() {
        let a = axis(1.0, 25.0);
        assert_eq!(a.ticks, vec![5.0, 10.0, 15.0, 20.0, 25.0]);
        assert_eq!(tick_label(0.1 + 0.2), "0.3");
        assert_eq!(heat_color(0.0), "#440154");
        assert_eq!(heat_color(1.0), "#fde725");
    }
}

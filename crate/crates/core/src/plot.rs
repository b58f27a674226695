//! SVG contour plots on the 2-simplex.
//!
//! The simplex `{x ∈ R³ : x ≥ 0, Σx = 1}` is drawn as an equilateral triangle
//! with `x1` at the bottom-left, `x2` at the bottom-right and `x3` on top.
//! Filled bands come from sampling the function at the centroid of every cell
//! of a regular triangular grid.

use std::fmt::Write as _;

use crate::algebra::{symmetrized_monomial, SymPoly};
use crate::design::{DesignSet, DEFAULT_EXPANSION_CAP};
use crate::error::{Error, Result};
use crate::index::MultiIndex;
use crate::perm::PermGroup;

pub const DEFAULT_GRID: usize = 200;
pub const DEFAULT_BANDS: usize = 12;

const WIDTH: f64 = 640.0;
const MARGIN: f64 = 40.0;
const EVEN_COLOR: &str = "#d62728";
const ODD_COLOR: &str = "#2ca02c";

// Sequential palette (viridis stops), low to high.
const PALETTE: [(u8, u8, u8); 9] = [
    (68, 1, 84),
    (71, 44, 122),
    (59, 81, 139),
    (44, 113, 142),
    (33, 144, 141),
    (39, 173, 129),
    (92, 200, 99),
    (170, 220, 50),
    (253, 231, 37),
];

#[derive(Clone, Debug)]
pub enum PlotFunction {
    Monomial(MultiIndex),
    Symmetrized(MultiIndex, PermGroup),
}

impl PlotFunction {
    fn dim(&self) -> usize {
        match self {
            PlotFunction::Monomial(k) | PlotFunction::Symmetrized(k, _) => k.dim(),
        }
    }

    pub fn polynomial(&self) -> Result<SymPoly> {
        match self {
            PlotFunction::Monomial(k) => Ok(SymPoly::monomial(k)),
            PlotFunction::Symmetrized(k, g) => symmetrized_monomial(g, k),
        }
    }

    pub fn label(&self) -> String {
        match self {
            PlotFunction::Monomial(k) => format!("M{k}"),
            PlotFunction::Symmetrized(k, g) => format!("F_{}{k}", g.tag()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct PlotOptions {
    /// Subdivisions per triangle edge; `grid²` cells are filled.
    pub grid: usize,
    pub bands: usize,
}

impl Default for PlotOptions {
    fn default() -> Self {
        PlotOptions { grid: DEFAULT_GRID, bands: DEFAULT_BANDS }
    }
}

/// A plotted design point; `even` is the parity of the permutation that produced it.
#[derive(Clone, Debug)]
pub struct PlottedPoint {
    pub coords: Vec<f64>,
    pub even: bool,
    pub value: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct PlotSummary {
    pub svg: String,
    pub points: Vec<PlottedPoint>,
    /// Mean function value over even- and odd-class points, when both exist.
    pub even_mean: Option<f64>,
    pub odd_mean: Option<f64>,
    /// Largest spread of function values among all plotted points.
    pub value_spread: Option<f64>,
}

fn to_screen(x: &[f64]) -> (f64, f64) {
    let side = WIDTH - 2.0 * MARGIN;
    let height = side * 3f64.sqrt() / 2.0;
    let base_y = MARGIN + height;
    let px = MARGIN * x[0] + (WIDTH - MARGIN) * x[1] + (WIDTH / 2.0) * x[2];
    let py = base_y * (x[0] + x[1]) + MARGIN * x[2];
    (px, py)
}

fn band_color(band: usize, bands: usize) -> String {
    let t = if bands <= 1 { 0.0 } else { band as f64 / (bands - 1) as f64 };
    let pos = t * (PALETTE.len() - 1) as f64;
    let i = (pos.floor() as usize).min(PALETTE.len() - 2);
    let f = pos - i as f64;
    let mix = |a: u8, b: u8| (a as f64 + (b as f64 - a as f64) * f).round() as u8;
    let (a, b) = (PALETTE[i], PALETTE[i + 1]);
    format!("#{:02x}{:02x}{:02x}", mix(a.0, b.0), mix(a.1, b.1), mix(a.2, b.2))
}

fn cells(n: usize) -> impl Iterator<Item = [[f64; 3]; 3]> {
    let nf = n as f64;
    let p = move |i: usize, j: usize| [i as f64 / nf, j as f64 / nf, (n - i - j) as f64 / nf];
    (0..n).flat_map(move |i| {
        (0..n - i).flat_map(move |j| {
            let up = [p(i, j), p(i + 1, j), p(i, j + 1)];
            let down = (i + j + 2 <= n).then(|| [p(i + 1, j), p(i, j + 1), p(i + 1, j + 1)]);
            std::iter::once(up).chain(down)
        })
    })
}

fn write_bands(svg: &mut String, poly: &SymPoly, opts: &PlotOptions) -> (f64, f64) {
    let sampled: Vec<([[f64; 3]; 3], f64)> = cells(opts.grid)
        .map(|c| {
            let centre: Vec<f64> = (0..3).map(|a| (c[0][a] + c[1][a] + c[2][a]) / 3.0).collect();
            (c, poly.evaluate(&centre))
        })
        .collect();
    let lo = sampled.iter().map(|s| s.1).fold(f64::INFINITY, f64::min);
    let hi = sampled.iter().map(|s| s.1).fold(f64::NEG_INFINITY, f64::max);
    let bands = opts.bands.max(1);
    let band_of = |v: f64| {
        if hi > lo {
            (((v - lo) / (hi - lo)) * bands as f64).floor().clamp(0.0, (bands - 1) as f64) as usize
        } else {
            0
        }
    };
    let mut grouped: Vec<Vec<[[f64; 3]; 3]>> = vec![Vec::new(); bands];
    for (c, v) in sampled {
        grouped[band_of(v)].push(c);
    }
    for (band, polys) in grouped.iter().enumerate() {
        if polys.is_empty() {
            continue;
        }
        let color = band_color(band, bands);
        let _ = writeln!(svg, r#"<g fill="{color}" stroke="{color}" stroke-width="0.3">"#);
        for c in polys {
            let pts: Vec<String> = c
                .iter()
                .map(|v| {
                    let (x, y) = to_screen(v);
                    format!("{x:.2},{y:.2}")
                })
                .collect();
            let _ = writeln!(svg, r#"<polygon points="{}"/>"#, pts.join(" "));
        }
        svg.push_str("</g>\n");
    }
    (lo, hi)
}

fn mean(values: impl Iterator<Item = f64>) -> Option<f64> {
    let (sum, n) = values.fold((0.0, 0usize), |(s, n), v| (s + v, n + 1));
    (n > 0).then(|| sum / n as f64)
}

/// Renders the triangle, optional contour bands and optional design points.
pub fn plot(function: Option<&PlotFunction>, design: Option<&DesignSet>, opts: &PlotOptions) -> Result<PlotSummary> {
    if let Some(f) = function {
        if f.dim() != 3 {
            return Err(Error::InvalidArgument(format!("plots need d = 3, got d = {}", f.dim())));
        }
    }
    if let Some(x) = design {
        if x.dim() != 3 {
            return Err(Error::InvalidArgument(format!("plots need d = 3, got d = {}", x.dim())));
        }
    }
    if opts.grid == 0 {
        return Err(Error::InvalidArgument("grid must be positive".into()));
    }
    let poly = function.map(PlotFunction::polynomial).transpose()?;

    let side = WIDTH - 2.0 * MARGIN;
    let height = (MARGIN * 2.0 + side * 3f64.sqrt() / 2.0 + 30.0).ceil();
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" viewBox="0 0 {WIDTH} {height}">"#
    );
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");

    if let (Some(f), Some(p)) = (function, poly.as_ref()) {
        let (lo, hi) = write_bands(&mut svg, p, opts);
        let _ = writeln!(
            svg,
            r#"<text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="14">{} range [{}, {}]</text>"#,
            MARGIN,
            height - 10.0,
            f.label(),
            crate::scalar::format_f64(lo),
            crate::scalar::format_f64(hi)
        );
    }

    let corners = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    let outline: Vec<String> = corners
        .iter()
        .map(|c| {
            let (x, y) = to_screen(c);
            format!("{x:.2},{y:.2}")
        })
        .collect();
    let _ = writeln!(svg, r#"<polygon points="{}" fill="none" stroke="black" stroke-width="1.5"/>"#, outline.join(" "));
    for (i, (c, (dx, dy))) in corners.iter().zip([(-22.0, 16.0), (6.0, 16.0), (-8.0, -8.0)]).enumerate() {
        let (x, y) = to_screen(c);
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="14">x{}</text>"#,
            x + dx,
            y + dy,
            i + 1
        );
    }

    let mut points = Vec::new();
    if let Some(x) = design {
        for l in x.expand_labelled(DEFAULT_EXPANSION_CAP)? {
            let coords = l.point.to_f64();
            let value = poly.as_ref().map(|p| p.evaluate(&coords));
            points.push(PlottedPoint { coords, even: l.permutation.is_even(), value });
        }
        for p in &points {
            let (x, y) = to_screen(&p.coords);
            let color = if p.even { EVEN_COLOR } else { ODD_COLOR };
            let _ = writeln!(
                svg,
                r#"<circle cx="{x:.2}" cy="{y:.2}" r="5" fill="{color}" stroke="black" stroke-width="0.8"/>"#
            );
        }
    }
    svg.push_str("</svg>\n");

    let values = || points.iter().filter_map(|p| p.value);
    let value_spread = mean(values()).map(|_| {
        values().fold(f64::NEG_INFINITY, f64::max) - values().fold(f64::INFINITY, f64::min)
    });
    Ok(PlotSummary {
        svg,
        even_mean: mean(points.iter().filter(|p| p.even).filter_map(|p| p.value)),
        odd_mean: mean(points.iter().filter(|p| !p.even).filter_map(|p| p.value)),
        value_spread,
        points,
    })
}

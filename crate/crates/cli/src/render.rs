//! SVG pictures of the Farey graph, the Farey tree, Ford circles and paths.
//!
//! Edges are drawn as semicircles in the upper half-plane, edges to ∞ as
//! vertical rays. Coordinates are computed exactly and printed with six
//! decimals, so equal specs give byte-identical files.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;
use std::str::FromStr;

use eicf_core::exact::rational_to_f64;
use eicf_core::farey::FareyInterval;
use eicf_core::{enumerate_inf_rationals, EicfSeq, ExtRational};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::CliError;

const WIDTH: f64 = 800.0;
const MARGIN: f64 = 20.0;
/// Convergents drawn past the explicit terms of a tailed path.
const TAIL_STEPS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Layer {
    TreeEdges,
    GraphEdges,
    FordCircles,
    Path,
}

impl FromStr for Layer {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "tree" | "tree_edges" => Ok(Layer::TreeEdges),
            "graph" | "graph_edges" => Ok(Layer::GraphEdges),
            "ford" | "ford_circles" => Ok(Layer::FordCircles),
            "path" => Ok(Layer::Path),
            other => Err(CliError::Parse(format!("unknown layer {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenderSpec {
    pub x_min: BigRational,
    pub x_max: BigRational,
    pub max_denominator: u64,
    pub height_scale: BigRational,
    pub show: BTreeSet<Layer>,
    pub path: Option<EicfSeq>,
}

impl RenderSpec {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.x_min >= self.x_max {
            return Err(CliError::Contract("x_min must be less than x_max".into()));
        }
        if self.max_denominator == 0 {
            return Err(CliError::Contract("max_denominator must be at least 1".into()));
        }
        if !self.height_scale.is_positive() {
            return Err(CliError::Contract("height_scale must be positive".into()));
        }
        if self.show.contains(&Layer::Path) && self.path.is_none() {
            return Err(CliError::Contract("the path layer needs a path".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ElementCounts {
    pub tree_edges: usize,
    pub graph_edges: usize,
    pub ford_circles: usize,
    pub path_edges: usize,
}

#[derive(Debug, Clone)]
pub struct Rendered {
    pub svg: String,
    pub counts: ElementCounts,
}

/// Farey-graph edges with both endpoints in `[x_min, x_max]` (∞ always
/// counts as in range) and denominators at most `max_den`, sorted.
///
/// Finite edges come from the Stern–Brocot subdivision of each unit
/// interval: every such edge is a unit interval or joins a mediant to an
/// endpoint of the interval it splits.
pub fn farey_edges(x_min: &BigRational, x_max: &BigRational, max_den: u64) -> Vec<(ExtRational, ExtRational)> {
    let in_range = |q: &ExtRational| q.to_rational().is_none_or(|v| x_min <= &v && &v <= x_max);
    let max_den = BigInt::from(max_den);
    let mut edges = Vec::new();
    let first = x_min.floor().to_integer();
    let last = x_max.ceil().to_integer();
    let mut m = first;
    while m <= last {
        let unit = FareyInterval::unit(m.clone());
        edges.push((ExtRational::integer(m.clone()), ExtRational::infinity()));
        edges.push((unit.lo().clone(), unit.hi().clone()));
        let mut stack = vec![unit];
        while let Some(i) = stack.pop() {
            let (lo, hi) = (i.lo().to_rational().unwrap(), i.hi().to_rational().unwrap());
            if hi < *x_min || lo > *x_max {
                continue;
            }
            let mid = i.mediant();
            if mid.denom() > &max_den {
                continue;
            }
            edges.push((i.lo().clone(), mid.clone()));
            edges.push((mid, i.hi().clone()));
            let (l, r) = i.subdivide();
            stack.push(l);
            stack.push(r);
        }
        m += 1;
    }
    edges.retain(|(u, v)| in_range(u) && in_range(v));
    edges.sort_by_key(edge_key);
    edges.dedup();
    edges
}

fn edge_key(e: &(ExtRational, ExtRational)) -> (BigRational, Option<BigRational>) {
    (e.0.to_rational().expect("first endpoint finite"), e.1.to_rational())
}

struct Canvas {
    x_min: f64,
    scale: f64,
    top: f64,
    height_scale: f64,
}

impl Canvas {
    fn x(&self, x: f64) -> f64 {
        (x - self.x_min) * self.scale + MARGIN
    }

    /// `y` is a height in the half-plane before vertical scaling.
    fn y(&self, y: f64) -> f64 {
        (self.top - y * self.height_scale) * self.scale + MARGIN
    }

    fn height(&self) -> f64 {
        self.top * self.scale + 2.0 * MARGIN
    }
}

fn num(v: f64) -> String {
    let s = format!("{v:.6}");
    if s == "-0.000000" {
        "0.000000".to_string()
    } else {
        s
    }
}

fn semicircle(c: &Canvas, class: &str, from: f64, to: f64, marker: bool) -> String {
    let r = (to - from).abs() / 2.0;
    let sweep = if from < to { 1 } else { 0 };
    let end = if marker { r#" marker-end="url(#arrow)""# } else { "" };
    format!(
        r#"<path class="{class}" d="M {} {} A {} {} 0 0 {sweep} {} {}"{end}/>"#,
        num(c.x(from)),
        num(c.y(0.0)),
        num(r * c.scale),
        num(r * c.height_scale * c.scale),
        num(c.x(to)),
        num(c.y(0.0)),
    )
}

fn ray(c: &Canvas, class: &str, x: f64, downward: bool) -> String {
    let (y1, y2) = if downward { (c.y(c.top / c.height_scale), c.y(0.0)) } else { (c.y(0.0), c.y(c.top / c.height_scale)) };
    let end = if downward { r#" marker-end="url(#arrow)""# } else { "" };
    format!(
        r#"<line class="{class}" x1="{}" y1="{}" x2="{}" y2="{}"{end}/>"#,
        num(c.x(x)),
        num(y1),
        num(c.x(x)),
        num(y2)
    )
}

fn path_vertices(s: &EicfSeq) -> Vec<ExtRational> {
    let n = if s.is_finite() { s.len() } else { s.len() + TAIL_STEPS };
    let mut v = vec![ExtRational::infinity()];
    v.extend(s.convergent_pairs().take(n).map(|p| p.value()));
    v
}

pub fn render(spec: &RenderSpec) -> Result<Rendered, CliError> {
    spec.validate()?;
    let hs = rational_to_f64(&spec.height_scale);
    let (x_min, x_max) = (rational_to_f64(&spec.x_min), rational_to_f64(&spec.x_max));

    let edges = if spec.show.contains(&Layer::TreeEdges) || spec.show.contains(&Layer::GraphEdges) {
        farey_edges(&spec.x_min, &spec.x_max, spec.max_denominator)
    } else {
        Vec::new()
    };
    let (tree, graph): (Vec<_>, Vec<_>) =
        edges.into_iter().partition(|(u, v)| u.is_infinity_rational() && v.is_infinity_rational());
    let tree = if spec.show.contains(&Layer::TreeEdges) { tree } else { Vec::new() };
    let graph = if spec.show.contains(&Layer::GraphEdges) { graph } else { Vec::new() };
    let ford = if spec.show.contains(&Layer::FordCircles) {
        enumerate_inf_rationals(
            spec.max_denominator,
            &ExtRational::from(&spec.x_min),
            &ExtRational::from(&spec.x_max),
        )
        .map_err(|e| CliError::Contract(e.to_string()))?
    } else {
        Vec::new()
    };
    let path = match (&spec.path, spec.show.contains(&Layer::Path)) {
        (Some(s), true) => path_vertices(s),
        _ => Vec::new(),
    };

    // Tallest element in half-plane units, before vertical scaling.
    let span = |u: &ExtRational, v: &ExtRational| (u.to_f64() - v.to_f64()).abs() / 2.0;
    let mut tallest: f64 = 0.0;
    for (u, v) in tree.iter().chain(&graph).filter(|(_, v)| !v.is_infinite()) {
        tallest = tallest.max(span(u, v));
    }
    for w in path.windows(2).skip(1) {
        tallest = tallest.max(span(&w[0], &w[1]));
    }
    if !ford.is_empty() {
        tallest = tallest.max(1.0);
    }
    if tallest == 0.0 {
        tallest = (x_max - x_min) / 2.0;
    }
    // Head room for rays to ∞.
    let canvas = Canvas {
        x_min,
        scale: WIDTH / (x_max - x_min),
        top: tallest * hs * 1.1,
        height_scale: hs,
    };

    let mut body = String::new();
    let line = |body: &mut String, s: String| {
        body.push_str("  ");
        body.push_str(&s);
        body.push('\n');
    };
    line(
        &mut body,
        format!(
            r#"<line class="axis" x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
            num(canvas.x(x_min)),
            num(canvas.y(0.0)),
            num(canvas.x(x_max)),
            num(canvas.y(0.0))
        ),
    );
    for (class, set) in [("graph-edge", &graph), ("tree-edge", &tree)] {
        for (u, v) in set {
            let s = if v.is_infinite() {
                ray(&canvas, class, u.to_f64(), false)
            } else {
                semicircle(&canvas, class, u.to_f64(), v.to_f64(), false)
            };
            line(&mut body, s);
        }
    }
    if !ford.is_empty() {
        line(
            &mut body,
            format!(
                r#"<line class="ford-line" x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
                num(canvas.x(x_min)),
                num(canvas.y(1.0)),
                num(canvas.x(x_max)),
                num(canvas.y(1.0))
            ),
        );
    }
    for q in &ford {
        let b = q.denom();
        let r = rational_to_f64(&BigRational::new(BigInt::one(), b * b * 2));
        line(
            &mut body,
            format!(
                r#"<ellipse class="ford" cx="{}" cy="{}" rx="{}" ry="{}"/>"#,
                num(canvas.x(q.to_f64())),
                num(canvas.y(r)),
                num(r * canvas.scale),
                num(r * hs * canvas.scale)
            ),
        );
    }
    for w in path.windows(2) {
        let s = if w[0].is_infinite() {
            ray(&canvas, "path-edge", w[1].to_f64(), true)
        } else {
            semicircle(&canvas, "path-edge", w[0].to_f64(), w[1].to_f64(), true)
        };
        line(&mut body, s);
    }

    let counts = ElementCounts {
        tree_edges: tree.len(),
        graph_edges: graph.len(),
        ford_circles: ford.len(),
        path_edges: path.len().saturating_sub(1),
    };
    let mut svg = String::new();
    let (w, h) = (WIDTH + 2.0 * MARGIN, canvas.height());
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        num(w),
        num(h),
        num(w),
        num(h)
    );
    svg.push_str(concat!(
        "  <style>\n",
        "    .axis { stroke: #000; stroke-width: 1; }\n",
        "    .graph-edge { fill: none; stroke: #bbb; stroke-width: 0.6; }\n",
        "    .tree-edge { fill: none; stroke: #000; stroke-width: 1.2; }\n",
        "    .ford, .ford-line { fill: none; stroke: #36c; stroke-width: 0.8; }\n",
        "    .path-edge { fill: none; stroke: #c22; stroke-width: 2.4; }\n",
        "  </style>\n",
        "  <defs>\n",
        "    <marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" markerWidth=\"6\" markerHeight=\"6\" orient=\"auto\">\n",
        "      <path d=\"M 0 0 L 10 5 L 0 10 z\" fill=\"#c22\"/>\n",
        "    </marker>\n",
        "  </defs>\n",
    ));
    svg.push_str(&body);
    svg.push_str("</svg>\n");
    Ok(Rendered { svg, counts })
}

/// Write through a temporary file in the same directory, then rename.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(contents.as_bytes()).map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

//! SVG pictures of paths, tilings and diagrams.

use std::fmt::Write as _;

use thiserror::Error;

use crate::diagrams::{secondary_labels, BrauerDiagram};
use crate::paths::{root_dyck, OverhangPath};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderKind {
    Path,
    PathTiling,
    Diagram,
    SideBySide,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenderSpec {
    pub kind: RenderKind,
    /// Pixels per lattice unit.
    pub scale: f64,
    /// Arc labels `kR`, `kL` and secondary labels.
    pub labels: bool,
}

impl RenderSpec {
    pub fn new(kind: RenderKind) -> Self {
        Self { kind, scale: 30.0, labels: false }
    }

    pub fn with_scale(self, scale: f64) -> Self {
        Self { scale, ..self }
    }

    pub fn with_labels(self, labels: bool) -> Self {
        Self { labels, ..self }
    }

    pub fn validate(&self) -> Result<(), RenderError> {
        if !(self.scale.is_finite() && self.scale > 0.0) {
            return Err(RenderError::Scale(self.scale));
        }
        if self.labels && matches!(self.kind, RenderKind::Path | RenderKind::PathTiling) {
            return Err(RenderError::LabelsOnPath);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RenderError {
    #[error("scale must be positive, got {0}")]
    Scale(f64),
    #[error("labels apply only to diagram renderings")]
    LabelsOnPath,
    #[error("render kind {0:?} does not fit this object")]
    Mismatch(RenderKind),
}

#[derive(Debug, Clone, Copy)]
pub enum Renderable<'a> {
    Path(&'a OverhangPath),
    Diagram(&'a BrauerDiagram),
    Pair(&'a OverhangPath, &'a BrauerDiagram),
}

pub fn render(obj: Renderable<'_>, spec: &RenderSpec) -> Result<String, RenderError> {
    spec.validate()?;
    let (body, w, h) = match (obj, spec.kind) {
        (Renderable::Path(p), RenderKind::Path) => path_group(p, spec, false),
        (Renderable::Path(p), RenderKind::PathTiling) => path_group(p, spec, true),
        (Renderable::Diagram(d), RenderKind::Diagram) => diagram_group(d, spec),
        (Renderable::Pair(p, d), RenderKind::SideBySide) => {
            let (a, wa, ha) = path_group(p, spec, true);
            let (b, wb, hb) = diagram_group(d, spec);
            let gap = spec.scale;
            let body = format!(
                "<g class=\"left\">{a}</g><g class=\"right\" transform=\"translate({},0)\">{b}</g>",
                fmt_num(wa + gap)
            );
            (body, wa + gap + wb, ha.max(hb))
        }
        (_, kind) => return Err(RenderError::Mismatch(kind)),
    };
    Ok(document(&body, w, h))
}

pub fn render_path(p: &OverhangPath, spec: &RenderSpec) -> Result<String, RenderError> {
    render(Renderable::Path(p), spec)
}

pub fn render_diagram(d: &BrauerDiagram, spec: &RenderSpec) -> Result<String, RenderError> {
    render(Renderable::Diagram(d), spec)
}

pub fn render_side_by_side(
    p: &OverhangPath,
    d: &BrauerDiagram,
    spec: &RenderSpec,
) -> Result<String, RenderError> {
    render(Renderable::Pair(p, d), spec)
}

fn document(body: &str, w: f64, h: f64) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\
<style>.step{{stroke:black;stroke-width:2}}.tile{{fill:none;stroke:#888}}\
.stack{{fill:#dde8f6}}.half-tile{{fill:#ccc;stroke:#888}}.arc{{fill:none;stroke:black;stroke-width:1.5}}\
text{{font-family:sans-serif;font-size:10px}}</style>{body}</svg>",
        w = fmt_num(w),
        h = fmt_num(h)
    )
}

fn fmt_num(v: f64) -> String {
    let r = (v * 100.0).round() / 100.0;
    if r == r.trunc() {
        format!("{}", r as i64)
    } else {
        format!("{r}")
    }
}

fn polygon(out: &mut String, class: &str, pts: &[(f64, f64)]) {
    let pts: Vec<String> = pts.iter().map(|&(x, y)| format!("{},{}", fmt_num(x), fmt_num(y))).collect();
    let _ = write!(out, "<polygon class=\"{class}\" points=\"{}\"/>", pts.join(" "));
}

/// A path on the lattice, optionally over its tiling. Returns the group
/// body and its pixel size.
fn path_group(p: &OverhangPath, spec: &RenderSpec, tiling: bool) -> (String, f64, f64) {
    let s = spec.scale;
    let margin = s / 2.0;
    let verts = p.vertices();
    let top = verts.iter().map(|v| v.1).max().unwrap_or(0).max(1);
    let width = 2 * p.degree().max(1) as i64;
    let at = |(x, y): (i64, i64)| (margin + x as f64 * s, margin + (top - y) as f64 * s);
    let mut out = String::new();
    if tiling {
        let tiles = p.tiles();
        let root = root_dyck(p).tiles();
        for tri in tiles.half_tiles() {
            let pts: Vec<_> = tri.iter().map(|&v| at(v)).collect();
            polygon(&mut out, "half-tile", &pts);
        }
        for t in &tiles.tiles {
            let class = if root.tiles.contains(t) { "tile" } else { "tile stack" };
            let pts: Vec<_> = t.corners().iter().map(|&v| at(v)).collect();
            polygon(&mut out, class, &pts);
        }
    }
    for w in verts.windows(2) {
        let (a, b) = (at(w[0]), at(w[1]));
        let _ = write!(
            out,
            "<line class=\"step\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
            fmt_num(a.0),
            fmt_num(a.1),
            fmt_num(b.0),
            fmt_num(b.1)
        );
    }
    (out, 2.0 * margin + width as f64 * s, 2.0 * margin + top as f64 * s)
}

/// Vertices on a baseline with arcs hanging below it.
fn diagram_group(d: &BrauerDiagram, spec: &RenderSpec) -> (String, f64, f64) {
    let s = spec.scale;
    let margin = s;
    let size = d.size();
    let base = margin;
    let x = |i: usize| margin + i as f64 * s;
    let depth = (size as f64 / 2.0).max(1.0) * s;
    let mut out = String::new();
    for i in 0..size {
        let _ = write!(
            out,
            "<circle class=\"vertex\" cx=\"{}\" cy=\"{}\" r=\"{}\"/>",
            fmt_num(x(i)),
            fmt_num(base),
            fmt_num(s / 10.0)
        );
    }
    let labelling = d.labelling();
    let secondary = if spec.labels { secondary_labels(d) } else { Vec::new() };
    for a in d.arcs() {
        let rx = (a.right - a.left) as f64 * s / 2.0;
        let ry = rx.min(depth);
        let _ = write!(
            out,
            "<path class=\"arc\" d=\"M {} {} A {} {} 0 0 0 {} {}\"/>",
            fmt_num(x(a.left)),
            fmt_num(base),
            fmt_num(rx),
            fmt_num(ry),
            fmt_num(x(a.right)),
            fmt_num(base)
        );
        if spec.labels {
            let r = labelling.right_label_at(a.right);
            let l = labelling.left_label_at(a.left);
            let ty = base - s / 4.0;
            let _ = write!(
                out,
                "<text class=\"right-label\" x=\"{}\" y=\"{}\" text-anchor=\"middle\">{r}R</text>\
<text class=\"left-label\" x=\"{}\" y=\"{}\" text-anchor=\"middle\">{l}L</text>\
<text class=\"secondary\" x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>",
                fmt_num(x(a.right)),
                fmt_num(ty),
                fmt_num(x(a.left)),
                fmt_num(ty),
                fmt_num((x(a.left) + x(a.right)) / 2.0),
                fmt_num(base + ry + s / 3.0),
                secondary[r - 1]
            );
        }
    }
    let width = 2.0 * margin + (size.max(1) - 1) as f64 * s;
    (out, width, base + depth + s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::parse_diagram;
    use crate::paths::parse_path;

    #[test]
    fn step_segments() {
        let p = parse_path("12'1222").unwrap();
        let svg = render_path(&p, &RenderSpec::new(RenderKind::Path)).unwrap();
        assert_eq!(svg.matches("<line class=\"step\"").count(), 6);
        let tiled = render_path(&p, &RenderSpec::new(RenderKind::PathTiling)).unwrap();
        assert_eq!(tiled.matches("class=\"half-tile\"").count(), 2);
        assert_eq!(tiled.matches("class=\"tile stack\"").count(), 1);
    }

    #[test]
    fn labelled_diagram() {
        let d = parse_diagram("1-4,2-3").unwrap();
        let spec = RenderSpec::new(RenderKind::Diagram).with_labels(true);
        let svg = render_diagram(&d, &spec).unwrap();
        for t in [">1R<", ">1L<", ">2R<", ">2L<"] {
            assert!(svg.contains(t), "missing {t}");
        }
        assert_eq!(svg.matches("class=\"arc\"").count(), 2);
    }

    #[test]
    fn spec_validation() {
        let p = parse_path("12").unwrap();
        let bad = RenderSpec::new(RenderKind::Path).with_labels(true);
        assert_eq!(render_path(&p, &bad), Err(RenderError::LabelsOnPath));
        let zero = RenderSpec::new(RenderKind::Path).with_scale(0.0);
        assert!(matches!(render_path(&p, &zero), Err(RenderError::Scale(_))));
        let wrong = RenderSpec::new(RenderKind::Diagram);
        assert_eq!(render_path(&p, &wrong), Err(RenderError::Mismatch(RenderKind::Diagram)));
    }
}

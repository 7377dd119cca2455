//! Deterministic SVG drawings of tilings, quasi-combies and pattern curves.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use zonotile::combi::{spectrum, Combi};
use zonotile::geometry::{boundary_vertices, Generators};
use zonotile::patterns::{CyclicPattern, QuasiCombi};
use zonotile::planar::{cycle_edges, Edge};
use zonotile::rhombus::{spectrum_rhombus, RhombusTiling};
use zonotile::{SetFamily, SubsetWord};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenderStyle {
    /// Pixels per unit of plane length.
    pub scale: f64,
    pub v_stroke: f64,
    pub h_stroke: f64,
    pub shade_lenses: bool,
    pub labels: bool,
}

impl Default for RenderStyle {
    fn default() -> Self {
        RenderStyle {
            scale: 80.0,
            v_stroke: 2.5,
            h_stroke: 0.8,
            shade_lenses: true,
            labels: true,
        }
    }
}

fn undirected(a: SubsetWord, b: SubsetWord) -> Edge {
    (std::cmp::min(a, b), std::cmp::max(a, b))
}

/// Everything to be drawn, in plane coordinates.
#[derive(Default)]
struct Scene {
    shaded: Vec<(&'static str, Vec<SubsetWord>)>,
    edges: BTreeSet<Edge>,
    curve: Vec<SubsetWord>,
    vertices: BTreeSet<SubsetWord>,
}

impl Scene {
    fn add_cycle(&mut self, c: &[SubsetWord]) {
        for (a, b) in cycle_edges(c) {
            self.edges.insert(undirected(a, b));
        }
    }

    fn add_boundary(&mut self, n: usize) {
        let (left, right) = boundary_vertices(n);
        for path in [left, right] {
            for w in path.windows(2) {
                self.edges.insert(undirected(w[0], w[1]));
            }
        }
    }

    fn add_vertices(&mut self, f: &SetFamily) {
        self.vertices.extend(f.iter());
    }
}

fn num(x: f64) -> String {
    let r = (x * 1e6).round() / 1e6;
    format!("{:.6}", if r == 0.0 { 0.0 } else { r })
}

fn draw(n: usize, scene: &Scene, style: &RenderStyle) -> String {
    let g = Generators::default_for(n).expect("objects carry a valid ground size");
    let at = |x: SubsetWord| {
        let (px, py) = g.to_f64(g.embed(x));
        (px * style.scale, -py * style.scale)
    };
    let mut pts: Vec<(f64, f64)> = scene.vertices.iter().map(|&x| at(x)).collect();
    pts.extend(scene.edges.iter().flat_map(|&(a, b)| [at(a), at(b)]));
    let margin = 30.0;
    let min_x = pts.iter().map(|p| p.0).fold(f64::INFINITY, f64::min) - margin;
    let max_x = pts.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max) + margin;
    let min_y = pts.iter().map(|p| p.1).fold(f64::INFINITY, f64::min) - margin;
    let max_y = pts.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max) + margin;
    let (w, h) = (max_x - min_x, max_y - min_y);

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="{} {} {} {}">"#,
        num(w),
        num(h),
        num(min_x),
        num(min_y),
        num(w),
        num(h)
    );
    let path_points = |c: &[SubsetWord]| {
        c.iter()
            .map(|&x| {
                let (px, py) = at(x);
                format!("{},{}", num(px), num(py))
            })
            .collect::<Vec<_>>()
            .join(" ")
    };
    for (class, c) in &scene.shaded {
        let _ = writeln!(
            s,
            r##"<polygon class="{class}" points="{}" fill="#9ecae1" fill-opacity="0.5" stroke="none"/>"##,
            path_points(c)
        );
    }
    for &(a, b) in &scene.edges {
        let vertical = a.symmetric_difference(b).len() == 1;
        let (class, width) = if vertical { ("v-edge", style.v_stroke) } else { ("h-edge", style.h_stroke) };
        let ((x1, y1), (x2, y2)) = (at(a), at(b));
        let _ = writeln!(
            s,
            r#"<line class="{class}" x1="{}" y1="{}" x2="{}" y2="{}" stroke="black" stroke-width="{}"/>"#,
            num(x1),
            num(y1),
            num(x2),
            num(y2),
            num(width)
        );
    }
    if !scene.curve.is_empty() {
        let _ = writeln!(
            s,
            r#"<polygon class="pattern" points="{}" fill="none" stroke="crimson" stroke-width="{}" stroke-dasharray="6,4"/>"#,
            path_points(&scene.curve),
            num(style.v_stroke)
        );
    }
    for &x in &scene.vertices {
        let (px, py) = at(x);
        let _ = writeln!(s, r#"<circle cx="{}" cy="{}" r="3.000000" fill="black"/>"#, num(px), num(py));
        if style.labels {
            let _ = writeln!(
                s,
                r#"<text x="{}" y="{}" font-family="sans-serif" font-size="11" text-anchor="middle">{}</text>"#,
                num(px),
                num(py - 6.0),
                x.label()
            );
        }
    }
    s.push_str("</svg>\n");
    s
}

pub fn render_combi(k: &Combi, style: &RenderStyle) -> String {
    let mut sc = Scene::default();
    sc.add_boundary(k.n());
    for d in k.deltas() {
        sc.add_cycle(&d.cycle());
    }
    for t in k.nablas() {
        sc.add_cycle(&t.cycle());
    }
    for l in k.lenses() {
        sc.add_cycle(&l.cycle());
        if style.shade_lenses {
            sc.shaded.push(("lens", l.cycle()));
        }
    }
    sc.add_vertices(&spectrum(k));
    draw(k.n(), &sc, style)
}

pub fn render_rhombus(t: &RhombusTiling, style: &RenderStyle) -> String {
    let mut sc = Scene::default();
    sc.add_boundary(t.n());
    for r in t.tiles() {
        sc.add_cycle(&r.cycle());
    }
    sc.add_vertices(&spectrum_rhombus(t));
    draw(t.n(), &sc, style)
}

pub fn render_pattern(p: &CyclicPattern, style: &RenderStyle) -> String {
    let mut sc = Scene::default();
    sc.add_boundary(p.n());
    sc.curve = p.cycle().to_vec();
    sc.add_vertices(&p.members());
    draw(p.n(), &sc, style)
}

pub fn render_quasi(q: &QuasiCombi, style: &RenderStyle) -> String {
    let mut sc = Scene::default();
    for t in q.tiles() {
        let c = t.cycle();
        sc.add_cycle(&c);
        if style.shade_lenses && (t.kind() == "lens" || t.is_semi_lens()) {
            sc.shaded.push((t.kind(), c));
        }
    }
    sc.curve = q.pattern().to_vec();
    sc.add_vertices(&q.vertices());
    draw(q.n(), &sc, style)
}

#[cfg(test)]
mod tests {
    use super::*;
    use zonotile::combi::from_w_collection;
    use zonotile::{enumerate_maximal, GroundSize, Separation};

    fn g(n: usize) -> GroundSize {
        GroundSize::new(n).unwrap()
    }

    #[test]
    fn segment_zonogon() {
        let svg = render_combi(&Combi::interval(g(1)), &RenderStyle::default());
        assert_eq!(svg.matches("<circle").count(), 2);
        assert_eq!(svg.matches("<line").count(), 1);
        assert!(svg.contains(r#"class="v-edge""#));
    }

    #[test]
    fn output_is_stable() {
        let k = Combi::co_interval(g(4));
        let st = RenderStyle::default();
        assert_eq!(render_combi(&k, &st), render_combi(&k.clone(), &st));
        assert!(!render_combi(&k, &st).contains("-0.000000"));
    }

    #[test]
    fn one_shaded_polygon_per_lens() {
        let all = enumerate_maximal(&SetFamily::hypercube(g(4)), Separation::Weak).unwrap();
        let k = all
            .maximal_collections
            .iter()
            .map(|f| from_w_collection(f).unwrap())
            .find(|k| k.lenses().len() == 1)
            .unwrap();
        let svg = render_combi(&k, &RenderStyle::default());
        assert_eq!(svg.matches(r#"class="lens""#).count(), 1);
        let plain = RenderStyle {
            shade_lenses: false,
            ..RenderStyle::default()
        };
        assert_eq!(render_combi(&k, &plain).matches(r#"class="lens""#).count(), 0);
    }

    #[test]
    fn v_edges_are_thicker() {
        let svg = render_combi(&Combi::interval(g(3)), &RenderStyle::default());
        assert!(svg.contains(r#"class="v-edge" "#) && svg.contains(r#"class="h-edge" "#));
        assert!(svg.contains(r#"stroke-width="2.500000""#) && svg.contains(r#"stroke-width="0.800000""#));
    }

    #[test]
    fn pattern_curve_is_dashed() {
        let p = CyclicPattern::new(g(3), [&[][..], &[1], &[1, 2], &[2]].iter().map(|e| SubsetWord::of(e)).collect()).unwrap();
        let svg = render_pattern(&p, &RenderStyle::default());
        assert_eq!(svg.matches("stroke-dasharray").count(), 1);
        assert_eq!(svg.matches("<circle").count(), 4);
    }
}

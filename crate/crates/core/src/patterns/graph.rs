//! Planar graph patterns: a w-collection joined by 1- and 2-distance edges,
//! its faces, and the sets of the separated domain lying in each face.

use std::collections::BTreeSet;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{forbidden_pair, step_kind, verify_complementary, verify_purity, CyclicPattern};
use crate::enumerate::DomainSummary;
use crate::error::{Error, Result};
use crate::geometry::{
    boundary_vertices, locate_unchecked, on_segment, segments_intersect, segments_overlap, Generators, Location,
    Polyline,
};
use crate::planar::{trace_face_walks, Edge};
use crate::separation::{is_separated_family, separated_from_all, Separation};
use crate::subset::{GroundSize, SetFamily, SubsetWord};

fn bad(msg: impl Into<String>) -> Error {
    Error::GraphPattern(msg.into())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphPattern {
    vertices: SetFamily,
    edges: Vec<Edge>,
}

impl GraphPattern {
    pub fn new(ground: GroundSize, vertices: Vec<SubsetWord>, edges: Vec<Edge>) -> Result<Self> {
        let vertices = SetFamily::collect(ground, vertices)?;
        if !is_separated_family(&vertices, Separation::Weak) {
            return Err(bad("(H1) fails: the vertex set is not weakly separated"));
        }
        let mut norm = BTreeSet::new();
        for (a, b) in edges {
            if !vertices.contains(a) || !vertices.contains(b) {
                return Err(bad(format!("edge {a}-{b} leaves the vertex set")));
            }
            if step_kind(a, b).is_none() {
                return Err(bad(format!(
                    "(H2) fails: {a}-{b} is neither a 1-distance nor an equal-size 2-distance pair"
                )));
            }
            norm.insert((std::cmp::min(a, b), std::cmp::max(a, b)));
        }
        let edges: Vec<Edge> = norm.into_iter().collect();
        if let Some(q) = forbidden_pair(&edges) {
            return Err(bad(format!(
                "(H3) fails: edges {}-{} and {}-{} form a ({}) quadruple",
                q.first.0, q.first.1, q.second.0, q.second.1, q.condition
            )));
        }
        Ok(GraphPattern { vertices, edges })
    }

    /// The union of the cycles of some patterns.
    pub fn from_cycles(ground: GroundSize, cycles: &[CyclicPattern]) -> Result<Self> {
        let vertices = cycles.iter().flat_map(|c| c.cycle().iter().copied()).collect();
        let edges = cycles.iter().flat_map(|c| c.steps()).collect();
        GraphPattern::new(ground, vertices, edges)
    }

    pub fn ground(&self) -> GroundSize {
        self.vertices.ground()
    }

    pub fn n(&self) -> usize {
        self.vertices.n()
    }

    pub fn vertices(&self) -> &SetFamily {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Adds the boundary of the zonogon, which is separated from everything.
    pub fn with_boundary(&self) -> GraphPattern {
        let (left, right) = boundary_vertices(self.n());
        let vertices = self.vertices.iter().chain(left.iter().copied()).chain(right.iter().copied());
        let edges = self
            .edges
            .iter()
            .copied()
            .chain(left.windows(2).map(|w| (w[0], w[1])))
            .chain(right.windows(2).map(|w| (w[0], w[1])));
        GraphPattern::new(self.ground(), vertices.collect(), edges.collect())
            .expect("boundary sets are separated from every set")
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    vertices: Vec<SubsetWord>,
    edges: Vec<[usize; 2]>,
}

impl Serialize for GraphPattern {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let m = self.vertices.members();
        let idx = |x: SubsetWord| m.binary_search(&x).unwrap();
        GraphJson {
            n: self.n(),
            vertices: m.to_vec(),
            edges: self.edges.iter().map(|&(a, b)| [idx(a), idx(b)]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GraphPattern {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = GraphJson::deserialize(d)?;
        let g = GroundSize::new(j.n).map_err(D::Error::custom)?;
        let at = |i: usize| {
            j.vertices
                .get(i)
                .copied()
                .ok_or_else(|| D::Error::custom(format!("edge endpoint {i} is not a vertex index")))
        };
        let edges = j
            .edges
            .iter()
            .map(|&[u, v]| Ok((at(u)?, at(v)?)))
            .collect::<std::result::Result<Vec<_>, D::Error>>()?;
        GraphPattern::new(g, j.vertices.clone(), edges).map_err(D::Error::custom)
    }
}

/// A closed face and the separated sets lying in it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceDomain {
    /// Counterclockwise outer walk.
    pub boundary: Vec<SubsetWord>,
    /// Walks around the components sitting inside the face.
    pub holes: Vec<Vec<SubsetWord>>,
    pub domain: SetFamily,
}

fn check_embedding(h: &GraphPattern, g: &Generators) -> Result<()> {
    let e = &h.edges;
    let p = |x: SubsetWord| g.embed(x);
    for (i, &(a, b)) in e.iter().enumerate() {
        if let Some(v) = h.vertices.iter().find(|&v| v != a && v != b && on_segment(p(v), p(a), p(b))) {
            return Err(bad(format!("vertex {v} lies on edge {a}-{b}")));
        }
        for &(c, d) in &e[i + 1..] {
            let shared = a == c || a == d || b == c || b == d;
            let meet = if shared {
                segments_overlap(p(a), p(b), p(c), p(d))
            } else {
                segments_intersect(p(a), p(b), p(c), p(d))
            };
            if meet {
                return Err(bad(format!("edges {a}-{b} and {c}-{d} cross in the plane")));
            }
        }
    }
    Ok(())
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    parent[x] = r;
    r
}

fn strictly_inside(walk: &Polyline, g: &Generators, x: SubsetWord) -> bool {
    locate_unchecked(g.embed(x), walk) == Location::Inside
}

/// The faces of `h` together with its boundary, and the members of the
/// separated domain each closed face contains.
pub fn face_domains(h: &GraphPattern, g: &Generators) -> Result<Vec<FaceDomain>> {
    if g.n() != h.n() {
        return Err(Error::Generators(format!("{} generators for [{}]", g.n(), h.n())));
    }
    let h = h.with_boundary();
    check_embedding(&h, g)?;
    let m = h.vertices.members();
    let idx = |x: SubsetWord| m.binary_search(&x).unwrap();
    let mut parent: Vec<usize> = (0..m.len()).collect();
    for &(a, b) in &h.edges {
        let (ra, rb) = (find(&mut parent, idx(a)), find(&mut parent, idx(b)));
        parent[ra] = rb;
    }
    let outer_comp = find(&mut parent, idx(SubsetWord::EMPTY));
    let walks = trace_face_walks(g, &h.edges);
    let poly = |w: &[SubsetWord]| Polyline::closed(w.iter().map(|&x| g.embed(x)).collect());
    let mut faces: Vec<(Vec<SubsetWord>, i128, usize, Vec<Vec<SubsetWord>>)> = Vec::new();
    let mut holes = Vec::new();
    for w in walks {
        let comp = find(&mut parent, idx(w.vertices[0]));
        if w.area2 > 0 {
            faces.push((w.vertices, w.area2, comp, Vec::new()));
        } else if comp != outer_comp {
            holes.push((w.vertices, comp));
        }
    }
    for (hole, comp) in holes {
        let host = faces
            .iter()
            .enumerate()
            .filter(|(_, f)| f.2 != comp && strictly_inside(&poly(&f.0), g, hole[0]))
            .min_by_key(|(_, f)| f.1)
            .map(|(i, _)| i)
            .ok_or_else(|| bad("a component lies outside every bounded face"))?;
        faces[host].3.push(hole);
    }
    let ground = h.ground();
    let all: Vec<SubsetWord> = ground
        .all_subsets()
        .filter(|&x| separated_from_all(x, &h.vertices, Separation::Weak))
        .collect();
    faces.sort();
    Ok(faces
        .into_iter()
        .map(|(boundary, _, _, mut hs)| {
            hs.sort();
            let outer = poly(&boundary);
            let hole_polys: Vec<Polyline> = hs.iter().map(|w| poly(w)).collect();
            let members = all.iter().copied().filter(|&x| {
                locate_unchecked(g.embed(x), &outer) != Location::Outside
                    && hole_polys.iter().all(|p| !strictly_inside(p, g, x))
            });
            FaceDomain {
                domain: SetFamily::collect(ground, members).unwrap(),
                boundary,
                holes: hs,
            }
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceReport {
    pub faces: Vec<FaceDomain>,
    pub purity: Vec<DomainSummary>,
    /// Face index pairs whose domains are not complementary.
    pub clashes: Vec<(usize, usize)>,
}

impl FaceReport {
    pub fn holds(&self) -> bool {
        self.clashes.is_empty() && self.purity.iter().all(|p| p.pure)
    }
}

/// Checks that the domains of any two faces form a complementary pair and
/// that each face domain is pure.
pub fn verify_face_domains(h: &GraphPattern, g: &Generators) -> Result<FaceReport> {
    let faces = face_domains(h, g)?;
    let purity = faces
        .iter()
        .map(|f| verify_purity(&f.domain, Separation::Weak))
        .collect::<Result<_>>()?;
    let mut clashes = Vec::new();
    for i in 0..faces.len() {
        for j in i + 1..faces.len() {
            if !verify_complementary(&faces[i].domain, &faces[j].domain, Separation::Weak) {
                clashes.push((i, j));
            }
        }
    }
    Ok(FaceReport {
        faces,
        purity,
        clashes,
    })
}

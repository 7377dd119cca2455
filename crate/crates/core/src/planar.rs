//! Exact validation of planar tilings given as counterclockwise vertex cycles.
//!
//! A family of strictly convex counterclockwise polygons tiles a region
//! exactly when the formal sum of their directed boundary edges, after
//! cancelling each edge against its reverse, equals the boundary chain of the
//! region and no directed edge is used twice. Matching is done on vertex
//! labels, so a vertex sitting inside another tile's side is also rejected.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::error::{Error, Result};
use crate::geometry::{cmp_angle, orient, Generators, PlanePoint};
use crate::subset::SubsetWord;

pub type Edge = (SubsetWord, SubsetWord);

/// A tile to be checked: a label for error messages and its boundary cycle.
#[derive(Debug, Clone)]
pub struct CycleTile {
    pub label: String,
    pub cycle: Vec<SubsetWord>,
}

pub fn cycle_edges(cycle: &[SubsetWord]) -> impl Iterator<Item = Edge> + '_ {
    let m = cycle.len();
    (0..m).map(move |i| (cycle[i], cycle[(i + 1) % m]))
}

/// Edges of the closed path through `cycle`.
pub fn closed_chain(cycle: &[SubsetWord]) -> Vec<Edge> {
    cycle_edges(cycle).collect()
}

fn area2(g: &Generators, chain: &[Edge]) -> i128 {
    chain
        .iter()
        .map(|&(u, v)| g.embed(u).cross(g.embed(v)))
        .sum()
}

fn check_convex(g: &Generators, t: &CycleTile) -> Result<()> {
    let m = t.cycle.len();
    if m < 3 {
        return Err(Error::tiling(
            "convexity",
            format!("{} has fewer than 3 vertices", t.label),
        ));
    }
    let pts: Vec<PlanePoint> = t.cycle.iter().map(|&x| g.embed(x)).collect();
    for i in 0..m {
        let (a, b, c) = (pts[i], pts[(i + 1) % m], pts[(i + 2) % m]);
        if orient(a, b, c) <= 0 {
            return Err(Error::tiling(
                "convexity",
                format!(
                    "{} is not strictly convex counterclockwise at {}",
                    t.label,
                    t.cycle[(i + 1) % m]
                ),
            ));
        }
    }
    let mut seen = t.cycle.clone();
    seen.sort_unstable();
    if seen.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::tiling(
            "convexity",
            format!("{} repeats a vertex", t.label),
        ));
    }
    Ok(())
}

/// Checks that `tiles` tile the region whose boundary is the closed chain
/// `boundary` (edges oriented with the region on their left).
pub fn check_planar_tiling(g: &Generators, tiles: &[CycleTile], boundary: &[Edge]) -> Result<()> {
    let mut used: HashMap<Edge, &str> = HashMap::new();
    let mut total_area = 0i128;
    for t in tiles {
        check_convex(g, t)?;
        let edges = closed_chain(&t.cycle);
        total_area += area2(g, &edges);
        for e in edges {
            if let Some(other) = used.insert(e, &t.label) {
                return Err(Error::tiling(
                    "interior-disjointness",
                    format!(
                        "{} and {} lie on the same side of edge {}->{}",
                        other, t.label, e.0, e.1
                    ),
                ));
            }
        }
    }
    let mut expected: HashMap<Edge, i32> = HashMap::new();
    for &(u, v) in boundary {
        *expected.entry((u, v)).or_insert(0) += 1;
        *expected.entry((v, u)).or_insert(0) -= 1;
    }
    let mut net: HashMap<Edge, i32> = HashMap::new();
    for &(u, v) in used.keys() {
        *net.entry((u, v)).or_insert(0) += 1;
        *net.entry((v, u)).or_insert(0) -= 1;
    }
    let mut keys: Vec<&Edge> = net.keys().chain(expected.keys()).collect();
    keys.sort_unstable();
    keys.dedup();
    for e in keys {
        let have = net.get(e).copied().unwrap_or(0);
        let want = expected.get(e).copied().unwrap_or(0);
        if have != want {
            let axiom = if want != 0 || expected.contains_key(&(e.1, e.0)) {
                "boundary-coverage"
            } else {
                "edge-sharing"
            };
            let owner = used
                .get(e)
                .or_else(|| used.get(&(e.1, e.0)))
                .copied()
                .unwrap_or("no tile");
            return Err(Error::tiling(
                axiom,
                format!("edge {}->{} (in {}) is unmatched", e.0, e.1, owner),
            ));
        }
    }
    let want_area = area2(g, boundary);
    if total_area != want_area {
        return Err(Error::tiling(
            "area",
            format!(
                "tiles cover area {total_area}, region has {want_area} (doubled, scaled units)"
            ),
        ));
    }
    Ok(())
}

/// A closed walk around a face of a straight-line planar graph, with twice
/// its signed area. Bounded faces come out counterclockwise (positive area).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceWalk {
    pub vertices: Vec<SubsetWord>,
    pub area2: i128,
}

/// Traces every face walk of the graph with undirected `edges`, keeping each
/// face on the left of its walk.
pub fn trace_face_walks(g: &Generators, edges: &[Edge]) -> Vec<FaceWalk> {
    let mut rot: BTreeMap<SubsetWord, Vec<SubsetWord>> = BTreeMap::new();
    for &(u, v) in edges {
        rot.entry(u).or_default().push(v);
        rot.entry(v).or_default().push(u);
    }
    for (x, nb) in rot.iter_mut() {
        nb.sort_unstable();
        nb.dedup();
        let px = g.embed(*x);
        nb.sort_by(|a, b| cmp_angle(g.embed(*a).sub(px), g.embed(*b).sub(px)));
    }
    let mut visited: HashSet<Edge> = HashSet::new();
    let mut walks = Vec::new();
    for (&u0, nbs) in &rot {
        for &v0 in nbs {
            if visited.contains(&(u0, v0)) {
                continue;
            }
            let mut face = Vec::new();
            let (mut u, mut v) = (u0, v0);
            loop {
                visited.insert((u, v));
                face.push(u);
                let around = &rot[&v];
                let pos = around.iter().position(|&w| w == u).unwrap();
                let w = around[(pos + around.len() - 1) % around.len()];
                u = v;
                v = w;
                if (u, v) == (u0, v0) {
                    break;
                }
            }
            let area2 = (0..face.len())
                .map(|k| g.embed(face[k]).cross(g.embed(face[(k + 1) % face.len()])))
                .sum();
            walks.push(FaceWalk {
                vertices: face,
                area2,
            });
        }
    }
    walks
}

/// The counterclockwise boundary chain of the zonogon `Z_n`.
pub fn zonogon_chain(n: usize) -> Vec<Edge> {
    let (left, right) = crate::geometry::boundary_vertices(n);
    let mut edges: Vec<Edge> = right.windows(2).map(|w| (w[0], w[1])).collect();
    edges.extend(left.windows(2).rev().map(|w| (w[1], w[0])));
    edges
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(e: &[usize]) -> SubsetWord {
        SubsetWord::of(e)
    }

    fn tile(label: &str, cycle: Vec<SubsetWord>) -> CycleTile {
        CycleTile {
            label: label.into(),
            cycle,
        }
    }

    #[test]
    fn rhombus_of_z2() {
        let g = Generators::default_for(2).unwrap();
        let t = tile("r", vec![s(&[]), s(&[2]), s(&[1, 2]), s(&[1])]);
        check_planar_tiling(&g, &[t], &zonogon_chain(2)).unwrap();
    }

    #[test]
    fn clockwise_tile_is_rejected() {
        let g = Generators::default_for(2).unwrap();
        let t = tile("r", vec![s(&[]), s(&[1]), s(&[1, 2]), s(&[2])]);
        let e = check_planar_tiling(&g, &[t], &zonogon_chain(2)).unwrap_err();
        assert!(matches!(
            e,
            Error::Tiling {
                axiom: "convexity",
                ..
            }
        ));
    }

    #[test]
    fn missing_tile_is_a_coverage_failure() {
        let g = Generators::default_for(2).unwrap();
        let t = tile("nabla", vec![s(&[]), s(&[2]), s(&[1])]);
        assert!(check_planar_tiling(&g, &[t], &zonogon_chain(2)).is_err());
    }

    #[test]
    fn duplicated_tile_overlaps() {
        let g = Generators::default_for(2).unwrap();
        let t = tile("r", vec![s(&[]), s(&[2]), s(&[1, 2]), s(&[1])]);
        let e = check_planar_tiling(&g, &[t.clone(), t], &zonogon_chain(2)).unwrap_err();
        assert!(matches!(
            e,
            Error::Tiling {
                axiom: "interior-disjointness",
                ..
            }
        ));
    }

    #[test]
    fn zonogon_chain_is_closed_and_counterclockwise() {
        let g = Generators::default_for(4).unwrap();
        let c = zonogon_chain(4);
        assert_eq!(c.len(), 8);
        assert!(c.windows(2).all(|w| w[0].1 == w[1].0));
        assert_eq!(c.last().unwrap().1, c[0].0);
        assert_eq!(area2(&g, &c), g.zonogon_area2());
        assert!(area2(&g, &c) > 0);
    }
}

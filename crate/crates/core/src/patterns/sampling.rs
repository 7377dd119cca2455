//! Seeded generators of combies and of patterns drawn from their vertex sets.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng;

use super::{step_kind, CyclicPattern, GraphPattern, StepKind};
use crate::combi::{find_m_configs, find_w_configs, Combi, MConfig, WConfig};
use crate::error::Result;
use crate::flips::{lowering_flip, raising_flip};
use crate::planar::Edge;
use crate::separation::Separation;
use crate::subset::{GroundSize, SetFamily, SubsetWord};

pub type Adjacency = BTreeMap<SubsetWord, Vec<SubsetWord>>;

enum Move {
    Lower(WConfig),
    Raise(MConfig),
}

/// A random walk of `steps` flips from the interval combi. Flips that would
/// remove a member of `keep` are skipped.
pub fn random_combi_from<R: Rng>(start: &Combi, keep: &SetFamily, steps: usize, rng: &mut R) -> Result<Combi> {
    let mut k = start.clone();
    for _ in 0..steps {
        let moves: Vec<Move> = find_w_configs(&k)
            .into_iter()
            .filter(|w| !keep.contains(w.middle()))
            .map(Move::Lower)
            .chain(
                find_m_configs(&k)
                    .into_iter()
                    .filter(|m| !keep.contains(m.middle()))
                    .map(Move::Raise),
            )
            .collect();
        let Some(mv) = moves.choose(rng) else {
            break;
        };
        k = match mv {
            Move::Lower(w) => lowering_flip(&k, w)?,
            Move::Raise(m) => raising_flip(&k, m)?,
        };
    }
    Ok(k)
}

pub fn random_combi<R: Rng>(ground: GroundSize, steps: usize, rng: &mut R) -> Result<Combi> {
    random_combi_from(&Combi::interval(ground), &SetFamily::empty(ground), steps, rng)
}

/// Pairs of members at distance one (and, unless `unit_only`, equal-size
/// pairs at distance two).
pub fn pair_graph(f: &SetFamily, unit_only: bool) -> Adjacency {
    let mut adj: Adjacency = f.iter().map(|x| (x, Vec::new())).collect();
    for a in f.iter() {
        for b in f.iter() {
            let ok = match step_kind(a, b) {
                Some(StepKind::OneDistance) => true,
                Some(StepKind::TwoDistance) => !unit_only,
                None => false,
            };
            if ok {
                adj.get_mut(&a).unwrap().push(b);
            }
        }
    }
    adj
}

/// A random cycle of length at least three, by self-avoiding walks that
/// close whenever they may, with probability one half.
pub fn random_cycle<R: Rng>(adj: &Adjacency, rng: &mut R) -> Option<Vec<SubsetWord>> {
    let keys: Vec<SubsetWord> = adj.keys().copied().collect();
    for _ in 0..64 {
        let start = *keys.choose(rng)?;
        let mut path = vec![start];
        let mut seen = BTreeSet::from([start]);
        loop {
            let last = *path.last().unwrap();
            let can_close = path.len() >= 3 && adj[&last].contains(&start);
            let next: Vec<SubsetWord> = adj[&last].iter().copied().filter(|x| !seen.contains(x)).collect();
            if can_close && (next.is_empty() || rng.gen_bool(0.5)) {
                return Some(path);
            }
            let Some(&x) = next.choose(rng) else {
                break;
            };
            path.push(x);
            seen.insert(x);
        }
    }
    None
}

pub fn random_pattern<R: Rng>(f: &SetFamily, unit_only: bool, rng: &mut R) -> Option<CyclicPattern> {
    let c = random_cycle(&pair_graph(f, unit_only), rng)?;
    CyclicPattern::new(f.ground(), c).ok()
}

/// Every cycle of the graph, each listed once: it starts at its smallest
/// vertex and its second vertex is smaller than its last.
pub fn all_cycles(adj: &Adjacency, limit: usize) -> Vec<Vec<SubsetWord>> {
    fn grow(adj: &Adjacency, path: &mut Vec<SubsetWord>, out: &mut Vec<Vec<SubsetWord>>, limit: usize) {
        if out.len() >= limit {
            return;
        }
        let (start, last) = (path[0], *path.last().unwrap());
        for &x in &adj[&last] {
            if x == start && path.len() >= 3 && path[1] < last {
                out.push(path.clone());
            } else if x > start && !path.contains(&x) {
                path.push(x);
                grow(adj, path, out, limit);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    for &s in adj.keys() {
        grow(adj, &mut vec![s], &mut out, limit);
    }
    out
}

/// The cycles through pairwise `relation`-separated sets of the graph on
/// all of `2^[n]`, in the same canonical form as [`all_cycles`].
pub fn all_separated_cycles(ground: GroundSize, unit_only: bool, relation: Separation) -> Vec<Vec<SubsetWord>> {
    let adj = pair_graph(&SetFamily::hypercube(ground), unit_only);
    fn grow(
        adj: &Adjacency,
        relation: Separation,
        path: &mut Vec<SubsetWord>,
        out: &mut Vec<Vec<SubsetWord>>,
    ) {
        let (start, last) = (path[0], *path.last().unwrap());
        for &x in &adj[&last] {
            if x == start && path.len() >= 3 && path[1] < last {
                out.push(path.clone());
            } else if x > start && !path.contains(&x) && path.iter().all(|&y| relation.holds(x, y)) {
                path.push(x);
                grow(adj, relation, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    for &s in adj.keys() {
        grow(&adj, relation, &mut vec![s], &mut out);
    }
    out
}

/// A random graph pattern on `f`: candidate edges in random order, each kept
/// unless it forms a forbidden quadruple with the edges kept so far.
pub fn random_graph_pattern<R: Rng>(f: &SetFamily, edges: usize, rng: &mut R) -> Result<GraphPattern> {
    let adj = pair_graph(f, false);
    let mut pool: Vec<Edge> = adj
        .iter()
        .flat_map(|(&a, nb)| nb.iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
        .collect();
    pool.shuffle(rng);
    let mut kept: Vec<Edge> = Vec::new();
    for e in pool {
        if kept.len() >= edges {
            break;
        }
        kept.push(e);
        if super::forbidden_pair(&kept).is_some() {
            kept.pop();
        }
    }
    let vertices = kept.iter().flat_map(|&(a, b)| [a, b]).collect();
    GraphPattern::new(f.ground(), vertices, kept)
}

/// A cycle `(Xi, Xk, Xj, Xl)` with `i < j < k < l`, or its complement-side
/// twin, whose curve crosses itself.
pub fn crossing_pattern<R: Rng>(ground: GroundSize, rng: &mut R) -> Option<CyclicPattern> {
    let n = ground.get();
    if n < 4 {
        return None;
    }
    let mut idx: Vec<usize> = (1..=n).collect();
    idx.shuffle(rng);
    let mut q = idx[..4].to_vec();
    q.sort_unstable();
    let base = SubsetWord::from_elements(idx[4..].iter().copied().filter(|_| rng.gen_bool(0.5))).ok()?;
    let (i, j, k, l) = (q[0], q[1], q[2], q[3]);
    let pick = |e: usize| base.with(e);
    let c = if rng.gen_bool(0.5) {
        vec![pick(i), pick(k), pick(j), pick(l)]
    } else {
        let top = base.with(i).with(j).with(k).with(l);
        vec![top.without(i), top.without(k), top.without(j), top.without(l)]
    };
    CyclicPattern::new(ground, c).ok()
}

/// A pattern holding a 2-distance step `{Xi, Xk}` and a 1-distance step
/// `{X, Xj}` with `i < j < k`.
pub fn chord_over_spoke_pattern<R: Rng>(ground: GroundSize, rng: &mut R) -> Option<CyclicPattern> {
    let n = ground.get();
    if n < 3 {
        return None;
    }
    let mut idx: Vec<usize> = (1..=n).collect();
    idx.shuffle(rng);
    let mut q = idx[..3].to_vec();
    q.sort_unstable();
    let x = SubsetWord::from_elements(idx[3..].iter().copied().filter(|_| rng.gen_bool(0.5))).ok()?;
    let (i, j, k) = (q[0], q[1], q[2]);
    let c = vec![x, x.with(i), x.with(k), x.with(j).with(k), x.with(j)];
    CyclicPattern::new(ground, c).ok()
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::combi::{spectrum, validate_combi};

    #[test]
    fn walks_stay_valid_and_keep_what_is_asked() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let g = GroundSize::new(5).unwrap();
        let k = random_combi(g, 50, &mut rng).unwrap();
        validate_combi(&k).unwrap();
        assert_ne!(k, Combi::interval(g));
        let keep = SetFamily::new(g, spectrum(&k).iter().take(6).collect()).unwrap();
        let k2 = random_combi_from(&k, &keep, 50, &mut rng).unwrap();
        assert!(keep.is_subfamily(&spectrum(&k2)));
    }

    #[test]
    fn seeded_walks_repeat() {
        let g = GroundSize::new(4).unwrap();
        let a = random_combi(g, 20, &mut ChaCha8Rng::seed_from_u64(9)).unwrap();
        let b = random_combi(g, 20, &mut ChaCha8Rng::seed_from_u64(9)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn cycles_are_listed_once() {
        let f = SetFamily::hypercube(GroundSize::new(2).unwrap());
        let cycles = all_cycles(&pair_graph(&f, true), usize::MAX);
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].len(), 4);
        let g3 = GroundSize::new(3).unwrap();
        let c = all_separated_cycles(g3, true, Separation::Weak);
        let mut canon: Vec<Vec<SubsetWord>> = c.clone();
        canon.sort();
        canon.dedup();
        assert_eq!(canon.len(), c.len());
        assert!(c.iter().all(|p| p[0] == *p.iter().min().unwrap() && p[1] < *p.last().unwrap()));
    }

    #[test]
    fn sampled_cycles_follow_the_pair_graph() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let f = spectrum(&random_combi(GroundSize::new(4).unwrap(), 20, &mut rng).unwrap());
        let adj = pair_graph(&f, false);
        for _ in 0..20 {
            let c = random_cycle(&adj, &mut rng).unwrap();
            assert!(c.len() >= 3);
            for p in 0..c.len() {
                assert!(adj[&c[p]].contains(&c[(p + 1) % c.len()]));
            }
        }
    }
}

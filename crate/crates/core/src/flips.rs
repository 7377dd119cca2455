//! Weak flips on combies and on maximal w-collections.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::combi::{
    find_m_configs, find_w_configs, spectrum, Combi, DeltaTile, Lens, MConfig, NablaTile, WConfig,
};
use crate::error::{Error, Result};
use crate::limits::{guard_n, FLIP_GRAPH_MAX_N};
use crate::subset::{GroundSize, SetFamily, SubsetWord};

pub use crate::rhombus::FlipDirection;

fn not_applicable(what: impl Into<String>) -> Error {
    Error::FlipNotApplicable(what.into())
}

fn take<T: Ord + std::fmt::Display>(set: &mut BTreeSet<T>, t: &T) -> Result<()> {
    if set.remove(t) {
        Ok(())
    } else {
        Err(not_applicable(format!("expected tile {t} is absent")))
    }
}

/// Replaces `X = Ỹik` by `Y = Ỹj`.
pub fn lowering_flip(k: &Combi, w: &WConfig) -> Result<Combi> {
    if !w.is_in(k) {
        return Err(not_applicable(format!(
            "W({};{},{},{}) is not a configuration of this combi",
            w.base, w.i, w.j, w.k
        )));
    }
    let (yt, i, j, kk) = (w.base, w.i, w.j, w.k);
    let (y1, y2) = (yt.with(i), yt.with(kk));
    let (x1, x, x2) = (yt.with(i).with(j), w.middle(), yt.with(j).with(kk));
    let y = w.replacement();
    let xt = x1.union(x2);
    let (ground, mut deltas, mut nablas, mut lenses) = k.clone().into_parts();
    let [n1, n2] = w.tiles();
    take(&mut nablas, &n1)?;
    take(&mut nablas, &n2)?;
    let d = |a, b, c| DeltaTile::new(a, b, c).unwrap();
    let t = |a, b, c| NablaTile::new(a, b, c).unwrap();
    deltas.insert(d(x1, y1, y));
    deltas.insert(d(x2, y, y2));

    // above X
    let rho1 = d(xt, x1, x);
    if deltas.contains(&rho1) {
        take(&mut deltas, &rho1)?;
        take(&mut deltas, &d(xt, x, x2))?;
        deltas.insert(d(xt, x1, x2));
        nablas.insert(t(y, x1, x2));
    } else {
        let lam = lenses
            .iter()
            .find(|l| l.lower().windows(3).any(|p| p == [x1, x, x2]))
            .cloned()
            .ok_or_else(|| not_applicable(format!("no tile above {x} matches a flip case")))?;
        lenses.remove(&lam);
        if lam.lower().len() > 3 {
            let lower: Vec<SubsetWord> = lam.lower().iter().copied().filter(|&v| v != x).collect();
            lenses.insert(Lens::new(lam.upper().to_vec(), lower)?);
            nablas.insert(t(y, x1, x2));
        } else {
            for e in lam.upper_edges() {
                nablas.insert(t(y, e.0, e.1));
            }
        }
    }

    // below X: the Δ-fan with apex X from Y' to Y''
    let mut fan = vec![y1];
    fan.extend(
        (i + 1..kk)
            .rev()
            .filter(|&m| x.contains(m))
            .map(|m| x.without(m))
            .filter(|v| {
                deltas
                    .iter()
                    .any(|dt| dt.apex() == x && (dt.base().0 == *v || dt.base().1 == *v))
            }),
    );
    fan.push(y2);
    for p in fan.windows(2) {
        take(&mut deltas, &d(x, p[0], p[1]))?;
    }
    if fan.len() == 2 {
        let below = t(yt, y1, y2);
        if nablas.remove(&below) {
            nablas.insert(t(yt, y1, y));
            nablas.insert(t(yt, y, y2));
        } else {
            let lam = lenses
                .iter()
                .find(|l| l.upper().windows(2).any(|p| p == [y1, y2]))
                .cloned()
                .ok_or_else(|| {
                    not_applicable(format!("no tile below {y1}->{y2} matches a flip case"))
                })?;
            lenses.remove(&lam);
            let mut upper = lam.upper().to_vec();
            let at = upper.iter().position(|&v| v == y2).unwrap();
            upper.insert(at, y);
            lenses.insert(Lens::new(upper, lam.lower().to_vec())?);
        }
    } else {
        lenses.insert(Lens::new(vec![y1, y, y2], fan)?);
    }
    Combi::new(ground, deltas, nablas, lenses)
}

/// Point reflection of the zonogon: every vertex `X` becomes `[n] - X`.
pub fn complement_combi(k: &Combi) -> Combi {
    let n = k.n();
    let c = |x: SubsetWord| x.complement(n);
    let rev = |p: &[SubsetWord]| p.iter().rev().map(|&x| c(x)).collect::<Vec<_>>();
    let nablas = k
        .deltas()
        .iter()
        .map(|d| NablaTile::new(c(d.apex()), c(d.base().1), c(d.base().0)).unwrap())
        .collect();
    let deltas = k
        .nablas()
        .iter()
        .map(|t| DeltaTile::new(c(t.bottom()), c(t.base().1), c(t.base().0)).unwrap())
        .collect();
    let lenses = k
        .lenses()
        .iter()
        .map(|l| Lens::new(rev(l.lower()), rev(l.upper())).unwrap())
        .collect();
    Combi::new(k.ground(), deltas, nablas, lenses).expect("the complement of a combi is a combi")
}

/// The W-configuration in the complemented combi that corresponds to `m`.
fn complement_config(m: &MConfig, n: usize) -> WConfig {
    let rest = m.base.with(m.i).with(m.j).with(m.k).complement(n);
    WConfig::new(rest, m.i, m.j, m.k).unwrap()
}

/// Replaces `Ỹj` by `Ỹik`.
pub fn raising_flip(k: &Combi, m: &MConfig) -> Result<Combi> {
    if !m.is_in(k) {
        return Err(not_applicable(format!(
            "M({};{},{},{}) is not a configuration of this combi",
            m.base, m.i, m.j, m.k
        )));
    }
    let w = complement_config(m, k.n());
    Ok(complement_combi(&lowering_flip(&complement_combi(k), &w)?))
}

/// One flip, in the trace format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FlipStep {
    pub op: FlipDirection,
    #[serde(rename = "Y")]
    pub base: SubsetWord,
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

impl FlipStep {
    pub fn lower(w: &WConfig) -> Self {
        FlipStep {
            op: FlipDirection::Lower,
            base: w.base,
            i: w.i,
            j: w.j,
            k: w.k,
        }
    }

    pub fn raise(m: &MConfig) -> Self {
        FlipStep {
            op: FlipDirection::Raise,
            base: m.base,
            i: m.i,
            j: m.j,
            k: m.k,
        }
    }

    /// Applies the step to a combi.
    pub fn apply(&self, k: &Combi) -> Result<Combi> {
        match self.op {
            FlipDirection::Lower => {
                lowering_flip(k, &WConfig::new(self.base, self.i, self.j, self.k)?)
            }
            FlipDirection::Raise => {
                raising_flip(k, &MConfig::new(self.base, self.i, self.j, self.k)?)
            }
        }
    }
}

/// Exchanges `Aj` and `Aik` in a w-collection holding `Ai, Ak, Aij, Ajk`.
pub fn set_flip(
    f: &SetFamily,
    a: SubsetWord,
    (i, j, k): (usize, usize, usize),
    direction: FlipDirection,
) -> Result<SetFamily> {
    if !(1 <= i && i < j && j < k) || [i, j, k].iter().any(|&e| a.contains(e)) {
        return Err(not_applicable(format!(
            "({a};{i},{j},{k}) needs i<j<k outside A"
        )));
    }
    f.ground().check(a.with(i).with(j).with(k))?;
    let witnesses = [a.with(i), a.with(k), a.with(i).with(j), a.with(j).with(k)];
    if let Some(missing) = witnesses.iter().find(|x| !f.contains(**x)) {
        return Err(not_applicable(format!("witness {missing} is absent")));
    }
    let (low, high) = (a.with(j), a.with(i).with(k));
    if f.contains(low) && f.contains(high) {
        return Err(not_applicable(format!("{low} and {high} are both present")));
    }
    let (from, to) = match direction {
        FlipDirection::Raise => (low, high),
        FlipDirection::Lower => (high, low),
    };
    if !f.contains(from) {
        return Err(not_applicable(format!("{from} is absent")));
    }
    f.replaced(from, to)
}

/// Greedy descent by the least W-configuration until none remains.
pub fn descend_to_minimum(k: &Combi) -> Result<(Vec<FlipStep>, Combi)> {
    let mut cur = k.clone();
    let mut steps = Vec::new();
    while let Some(w) = find_w_configs(&cur).first().copied() {
        cur = lowering_flip(&cur, &w)?;
        steps.push(FlipStep::lower(&w));
    }
    Ok((steps, cur))
}

/// Maximal w-collections linked by raising flips.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlipGraph {
    pub n: usize,
    pub nodes: Vec<SetFamily>,
    /// `(from, to, step)` with node indices into `nodes`.
    pub arcs: Vec<(usize, usize, FlipStep)>,
}

impl FlipGraph {
    pub fn sources(&self) -> Vec<usize> {
        let targets: BTreeSet<usize> = self.arcs.iter().map(|a| a.1).collect();
        (0..self.nodes.len())
            .filter(|v| !targets.contains(v))
            .collect()
    }

    pub fn sinks(&self) -> Vec<usize> {
        let origins: BTreeSet<usize> = self.arcs.iter().map(|a| a.0).collect();
        (0..self.nodes.len())
            .filter(|v| !origins.contains(v))
            .collect()
    }
}

/// Breadth-first exploration of raising flips from the interval combi.
pub fn flip_graph(n: usize) -> Result<FlipGraph> {
    guard_n("flip graph", n, FLIP_GRAPH_MAX_N)?;
    let ground = GroundSize::new(n)?;
    let start = Combi::interval(ground);
    let mut index: BTreeMap<SetFamily, usize> = BTreeMap::new();
    let mut nodes = vec![spectrum(&start)];
    index.insert(nodes[0].clone(), 0);
    let mut arcs = Vec::new();
    let mut queue = VecDeque::from([start]);
    while let Some(k) = queue.pop_front() {
        let from = index[&spectrum(&k)];
        for m in find_m_configs(&k) {
            let next = raising_flip(&k, &m)?;
            let f = spectrum(&next);
            let to = match index.get(&f) {
                Some(&v) => v,
                None => {
                    let v = nodes.len();
                    index.insert(f.clone(), v);
                    nodes.push(f);
                    queue.push_back(next);
                    v
                }
            };
            arcs.push((from, to, FlipStep::raise(&m)));
        }
    }
    Ok(FlipGraph { n, nodes, arcs })
}

/// The same graph computed on set-systems alone.
pub fn set_flip_graph(n: usize) -> Result<FlipGraph> {
    guard_n("flip graph", n, FLIP_GRAPH_MAX_N)?;
    let ground = GroundSize::new(n)?;
    let start = SetFamily::intervals(ground);
    let mut index: BTreeMap<SetFamily, usize> = BTreeMap::from([(start.clone(), 0)]);
    let mut nodes = vec![start.clone()];
    let mut arcs = Vec::new();
    let mut queue = VecDeque::from([start]);
    while let Some(f) = queue.pop_front() {
        let from = index[&f];
        for a in ground.all_subsets() {
            for i in (1..=n).filter(|&e| !a.contains(e)) {
                for j in (i + 1..=n).filter(|&e| !a.contains(e)) {
                    for kk in (j + 1..=n).filter(|&e| !a.contains(e)) {
                        let Ok(g) = set_flip(&f, a, (i, j, kk), FlipDirection::Raise) else {
                            continue;
                        };
                        let to = match index.get(&g) {
                            Some(&v) => v,
                            None => {
                                let v = nodes.len();
                                index.insert(g.clone(), v);
                                nodes.push(g.clone());
                                queue.push_back(g);
                                v
                            }
                        };
                        let step = FlipStep {
                            op: FlipDirection::Raise,
                            base: a,
                            i,
                            j,
                            k: kk,
                        };
                        arcs.push((from, to, step));
                    }
                }
            }
        }
    }
    Ok(FlipGraph { n, nodes, arcs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combi::{eta, from_w_collection};
    use crate::enumerate::{enumerate_maximal, is_maximal_weak};
    use crate::separation::Separation;

    fn s(e: &[usize]) -> SubsetWord {
        SubsetWord::of(e)
    }

    fn g(n: usize) -> GroundSize {
        GroundSize::new(n).unwrap()
    }

    fn all_combies(n: usize) -> Vec<Combi> {
        enumerate_maximal(&SetFamily::hypercube(g(n)), Separation::Weak)
            .unwrap()
            .maximal_collections
            .iter()
            .map(|f| from_w_collection(f).unwrap())
            .collect()
    }

    #[test]
    fn z3_flips_between_the_two_combies() {
        let lo = Combi::interval(g(3));
        let hi = Combi::co_interval(g(3));
        let w = WConfig::new(s(&[]), 1, 2, 3).unwrap();
        assert_eq!(lowering_flip(&hi, &w).unwrap(), lo);
        assert!(lowering_flip(&lo, &w).is_err());
        let m = MConfig::new(s(&[]), 1, 2, 3).unwrap();
        assert_eq!(raising_flip(&lo, &m).unwrap(), hi);
        assert_eq!(eta(&hi), eta(&lo) + 1);
    }

    #[test]
    fn complement_is_an_involution() {
        for k in all_combies(4) {
            let c = complement_combi(&k);
            assert_eq!(complement_combi(&c), k);
            assert_eq!(c.deltas().len(), k.nablas().len());
            assert_eq!(c.lenses().len(), k.lenses().len());
        }
        assert_eq!(
            complement_combi(&Combi::interval(g(3))),
            Combi::co_interval(g(3))
        );
    }

    /// Every flip agrees with the set flip, with reconstruction, and is inverted by the opposite flip.
    #[test]
    fn flips_are_consistent_everywhere_up_to_n5() {
        for n in 3..=5 {
            for k in all_combies(n) {
                let f = spectrum(&k);
                for w in find_w_configs(&k) {
                    let k2 = lowering_flip(&k, &w).unwrap();
                    let f2 = spectrum(&k2);
                    assert_eq!(
                        f2,
                        set_flip(&f, w.base, (w.i, w.j, w.k), FlipDirection::Lower).unwrap()
                    );
                    assert_eq!(k2, from_w_collection(&f2).unwrap());
                    assert_eq!(eta(&k2) + 1, eta(&k));
                    let m = MConfig::new(w.base, w.i, w.j, w.k).unwrap();
                    assert_eq!(raising_flip(&k2, &m).unwrap(), k);
                }
                for m in find_m_configs(&k) {
                    let k2 = raising_flip(&k, &m).unwrap();
                    assert_eq!(eta(&k2), eta(&k) + 1);
                    assert_eq!(k2, from_w_collection(&spectrum(&k2)).unwrap());
                }
            }
        }
    }

    /// A five-set witness pattern in the spectrum always yields a W-configuration.
    #[test]
    fn witness_patterns_yield_w_configs() {
        for n in 3..=4 {
            for k in all_combies(n) {
                let f = spectrum(&k);
                let ws = find_w_configs(&k);
                for a in g(n).all_subsets() {
                    for i in 1..=n {
                        for j in i + 1..=n {
                            for kk in j + 1..=n {
                                let Ok(w) = WConfig::new(a, i, j, kk) else {
                                    continue;
                                };
                                let five = [
                                    a.with(i),
                                    a.with(kk),
                                    a.with(i).with(j),
                                    a.with(j).with(kk),
                                    w.middle(),
                                ];
                                if five.iter().all(|x| f.contains(*x)) {
                                    assert!(ws.contains(&w));
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn descent_reaches_the_interval_combi() {
        let (steps, end) = descend_to_minimum(&Combi::co_interval(g(3))).unwrap();
        assert_eq!(steps.len(), 1);
        assert_eq!(end, Combi::interval(g(3)));
        let floor = eta(&Combi::interval(g(4)));
        for k in all_combies(4) {
            let (steps, end) = descend_to_minimum(&k).unwrap();
            assert_eq!(end, Combi::interval(g(4)));
            assert_eq!(steps.len(), eta(&k) - floor);
        }
    }

    #[test]
    fn set_flip_examples() {
        let i3 = SetFamily::intervals(g(3));
        let co = SetFamily::co_intervals(g(3));
        assert_eq!(
            set_flip(&i3, s(&[]), (1, 2, 3), FlipDirection::Raise).unwrap(),
            co
        );
        assert_eq!(
            set_flip(&co, s(&[]), (1, 2, 3), FlipDirection::Lower).unwrap(),
            i3
        );
        let broken =
            SetFamily::new(g(3), i3.iter().filter(|x| *x != s(&[1, 2])).collect()).unwrap();
        assert!(set_flip(&broken, s(&[]), (1, 2, 3), FlipDirection::Raise).is_err());
        let both = i3
            .union(&SetFamily::new(g(3), vec![s(&[1, 3])]).unwrap())
            .unwrap();
        assert!(set_flip(&both, s(&[]), (1, 2, 3), FlipDirection::Raise).is_err());
    }

    #[test]
    fn flip_graphs_for_small_n() {
        let fg = flip_graph(3).unwrap();
        assert_eq!((fg.nodes.len(), fg.arcs.len()), (2, 1));
        for n in 3..=5 {
            let fg = flip_graph(n).unwrap();
            let all = enumerate_maximal(&SetFamily::hypercube(g(n)), Separation::Weak).unwrap();
            assert_eq!(fg.nodes.len(), all.maximal_collections.len());
            assert!(fg.nodes.iter().all(is_maximal_weak));
            assert_eq!(fg.sources(), vec![0]);
            let sinks = fg.sinks();
            assert_eq!(sinks.len(), 1);
            assert_eq!(fg.nodes[sinks[0]], SetFamily::co_intervals(g(n)));
            let sg = set_flip_graph(n).unwrap();
            let arcs = |x: &FlipGraph| {
                x.arcs
                    .iter()
                    .map(|a| (x.nodes[a.0].clone(), x.nodes[a.1].clone()))
                    .collect::<BTreeSet<_>>()
            };
            assert_eq!(arcs(&fg), arcs(&sg));
        }
        assert!(matches!(flip_graph(6), Err(Error::ResourceGuard(_))));
    }

    #[test]
    fn trace_format() {
        let step = FlipStep::lower(&WConfig::new(s(&[4]), 1, 2, 3).unwrap());
        let js = serde_json::to_string(&step).unwrap();
        assert_eq!(js, r#"{"op":"lower","Y":[4],"i":1,"j":2,"k":3}"#);
        let back: FlipStep = serde_json::from_str(&js).unwrap();
        assert_eq!(back, step);
    }
}

//! W- and M-configurations, and the classification of adjacent H-edges.

use serde::{Deserialize, Serialize};

use super::{h_edge_type, Combi, DeltaTile, NablaTile};
use crate::error::{Error, Result};
use crate::planar::Edge;
use crate::subset::SubsetWord;

/// Two ∇-tiles `∇(Ỹi|Ỹij,Ỹik)` and `∇(Ỹk|Ỹik,Ỹjk)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WConfig {
    pub base: SubsetWord,
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

/// Two Δ-tiles `Δ(Ỹij|Ỹi,Ỹj)` and `Δ(Ỹjk|Ỹj,Ỹk)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MConfig {
    pub base: SubsetWord,
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

fn check_triple(base: SubsetWord, i: usize, j: usize, k: usize) -> Result<()> {
    if !(1 <= i && i < j && j < k) || [i, j, k].iter().any(|&e| base.contains(e)) {
        return Err(Error::Tile(format!(
            "({base};{i},{j},{k}) needs i<j<k outside the base"
        )));
    }
    Ok(())
}

impl WConfig {
    pub fn new(base: SubsetWord, i: usize, j: usize, k: usize) -> Result<Self> {
        check_triple(base, i, j, k)?;
        Ok(WConfig { base, i, j, k })
    }

    pub fn tiles(&self) -> [NablaTile; 2] {
        let y = self.base;
        [
            NablaTile::with_types(y.with(self.i), self.j, self.k).unwrap(),
            NablaTile::with_types(y.with(self.k), self.i, self.j).unwrap(),
        ]
    }

    /// The vertex removed by the lowering flip, `Ỹik`.
    pub fn middle(&self) -> SubsetWord {
        self.base.with(self.i).with(self.k)
    }

    /// The vertex added by the lowering flip, `Ỹj`.
    pub fn replacement(&self) -> SubsetWord {
        self.base.with(self.j)
    }

    pub fn is_in(&self, k: &Combi) -> bool {
        self.tiles().iter().all(|t| k.nablas.contains(t))
    }
}

impl MConfig {
    pub fn new(base: SubsetWord, i: usize, j: usize, k: usize) -> Result<Self> {
        check_triple(base, i, j, k)?;
        Ok(MConfig { base, i, j, k })
    }

    pub fn tiles(&self) -> [DeltaTile; 2] {
        let y = self.base;
        [
            DeltaTile::with_types(y.with(self.i).with(self.j), self.i, self.j).unwrap(),
            DeltaTile::with_types(y.with(self.j).with(self.k), self.j, self.k).unwrap(),
        ]
    }

    /// `Ỹj`, removed by the raising flip.
    pub fn middle(&self) -> SubsetWord {
        self.base.with(self.j)
    }

    /// `Ỹik`, added by the raising flip.
    pub fn replacement(&self) -> SubsetWord {
        self.base.with(self.i).with(self.k)
    }

    pub fn is_in(&self, k: &Combi) -> bool {
        self.tiles().iter().all(|t| k.deltas.contains(t))
    }
}

/// All W-configurations, sorted by `(Ỹ, i, j, k)`.
pub fn find_w_configs(k: &Combi) -> Vec<WConfig> {
    let mut out = Vec::new();
    for t in &k.nablas {
        let (j, kk) = t.types();
        for i in t.bottom().iter().filter(|&i| i < j) {
            let w = WConfig::new(t.bottom().without(i), i, j, kk).unwrap();
            if k.nablas.contains(&w.tiles()[1]) {
                out.push(w);
            }
        }
    }
    out.sort();
    out
}

/// All M-configurations, sorted by `(Ỹ, i, j, k)`.
pub fn find_m_configs(k: &Combi) -> Vec<MConfig> {
    let n = k.n();
    let mut out = Vec::new();
    for d in &k.deltas {
        let (i, j) = d.types();
        for kk in (j + 1..=n).filter(|&e| !d.apex().contains(e)) {
            let m = MConfig::new(d.apex().without(i).without(j), i, j, kk).unwrap();
            if k.deltas.contains(&m.tiles()[1]) {
                out.push(m);
            }
        }
    }
    out.sort();
    out
}

/// Which structure carries two consecutive H-edges meeting at a middle vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum AdjacentH {
    LensLower { lens: usize },
    LensUpper { lens: usize },
    TwoDeltas { apex: SubsetWord },
    TwoNablas { bottom: SubsetWord },
}

/// Classifies H-edges `e = (A,B)`, `e' = (B,C)` whose types are `j'k`, `ij''`
/// (lower case) or `ij''`, `j'k` (upper case), with `i < j'' <= j' < k`.
/// `lens` indices refer to the sorted lens list.
pub fn adjacent_h_classify(k: &Combi, e: Edge, e2: Edge) -> Result<AdjacentH> {
    if e.1 != e2.0 {
        return Err(Error::Hypothesis(format!(
            "edges {}->{} and {}->{} do not meet",
            e.0, e.1, e2.0, e2.1
        )));
    }
    let not_h = |x: Edge| Error::Hypothesis(format!("{}->{} is not an H-edge", x.0, x.1));
    let (a1, b1) = h_edge_type(e.0, e.1).ok_or_else(|| not_h(e))?;
    let (a2, b2) = h_edge_type(e2.0, e2.1).ok_or_else(|| not_h(e2))?;
    let on_path = |path: &[SubsetWord]| {
        path.windows(3)
            .any(|w| (w[0], w[1], w[2]) == (e.0, e.1, e2.1))
    };
    let (a, b, c) = (e.0, e.1, e2.1);
    if a2 < b2 && b2 <= a1 && a1 < b1 {
        // e of type j'k, e' of type ij''
        if b2 != a1 {
            return Err(Error::Hypothesis(format!(
                "types {a1}{b1} and {a2}{b2} do not share a middle index"
            )));
        }
        if let Some(idx) = k.lenses.iter().position(|l| on_path(l.lower())) {
            return Ok(AdjacentH::LensLower { lens: idx });
        }
        let apex = a.with(b1);
        let both = DeltaTile::new(apex, a, b)
            .ok()
            .zip(DeltaTile::new(apex, b, c).ok());
        if both.is_some_and(|(x, y)| k.deltas.contains(&x) && k.deltas.contains(&y)) {
            return Ok(AdjacentH::TwoDeltas { apex });
        }
    } else if a1 < b1 && b1 <= a2 && a2 < b2 {
        // e of type ij'', e' of type j'k
        if b1 != a2 {
            return Err(Error::Hypothesis(format!(
                "types {a1}{b1} and {a2}{b2} do not share a middle index"
            )));
        }
        if let Some(idx) = k.lenses.iter().position(|l| on_path(l.upper())) {
            return Ok(AdjacentH::LensUpper { lens: idx });
        }
        let bottom = a.without(a1);
        let both = NablaTile::new(bottom, a, b)
            .ok()
            .zip(NablaTile::new(bottom, b, c).ok());
        if both.is_some_and(|(x, y)| k.nablas.contains(&x) && k.nablas.contains(&y)) {
            return Ok(AdjacentH::TwoNablas { bottom });
        }
    } else {
        return Err(Error::Hypothesis(format!(
            "types {a1}{b1} then {a2}{b2} fit neither ordering i < j'' <= j' < k"
        )));
    }
    Err(Error::Hypothesis(format!(
        "edges {a}->{b}->{c} lie on no lens boundary and no triangle pair"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combi::{from_w_collection, spectrum};
    use crate::enumerate::enumerate_maximal;
    use crate::separation::Separation;
    use crate::subset::{GroundSize, SetFamily};

    fn s(e: &[usize]) -> SubsetWord {
        SubsetWord::of(e)
    }

    fn g(n: usize) -> GroundSize {
        GroundSize::new(n).unwrap()
    }

    /// W-configurations read directly off the definition, by brute force.
    fn w_oracle(k: &Combi) -> Vec<WConfig> {
        let n = k.n();
        let mut out = Vec::new();
        for y in g(n).all_subsets() {
            for i in 1..=n {
                for j in i + 1..=n {
                    for kk in j + 1..=n {
                        if let Ok(w) = WConfig::new(y, i, j, kk) {
                            if w.is_in(k) {
                                out.push(w);
                            }
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn interval_combi_has_no_w_and_one_m_config_on_z3() {
        let k = Combi::interval(g(3));
        assert!(find_w_configs(&k).is_empty());
        assert_eq!(
            find_m_configs(&k),
            vec![MConfig::new(s(&[]), 1, 2, 3).unwrap()]
        );
        let k = Combi::co_interval(g(3));
        assert_eq!(
            find_w_configs(&k),
            vec![WConfig::new(s(&[]), 1, 2, 3).unwrap()]
        );
        assert!(find_m_configs(&k).is_empty());
    }

    #[test]
    fn z1_has_no_configs() {
        let k = Combi::interval(g(1));
        assert!(find_w_configs(&k).is_empty() && find_m_configs(&k).is_empty());
    }

    #[test]
    fn scans_match_brute_force() {
        for n in 3..=5 {
            let r = enumerate_maximal(&SetFamily::hypercube(g(n)), Separation::Weak).unwrap();
            for f in &r.maximal_collections {
                let k = from_w_collection(f).unwrap();
                assert_eq!(find_w_configs(&k), w_oracle(&k));
                let w_empty = find_w_configs(&k).is_empty();
                assert_eq!(w_empty, *f == SetFamily::intervals(g(n)));
            }
        }
    }

    #[test]
    fn lens_lower_boundary_is_recognised() {
        let r = enumerate_maximal(&SetFamily::hypercube(g(4)), Separation::Weak).unwrap();
        let k = r
            .maximal_collections
            .iter()
            .map(|f| from_w_collection(f).unwrap())
            .find(|k| !k.lenses().is_empty())
            .unwrap();
        let l = k.lenses().iter().next().unwrap();
        let p = l.lower();
        let c = adjacent_h_classify(&k, (p[0], p[1]), (p[1], p[2])).unwrap();
        assert_eq!(c, AdjacentH::LensLower { lens: 0 });
        let u = l.upper();
        let c = adjacent_h_classify(&k, (u[0], u[1]), (u[1], u[2])).unwrap();
        assert_eq!(c, AdjacentH::LensUpper { lens: 0 });
    }

    #[test]
    fn adjacent_deltas_share_an_apex() {
        let k = Combi::interval(g(3));
        assert_eq!(spectrum(&k), SetFamily::intervals(g(3)));
        let e = adjacent_h_classify(&k, (s(&[1, 2]), s(&[1, 3])), (s(&[1, 3]), s(&[2, 3])))
            .unwrap_err();
        assert!(matches!(e, Error::Hypothesis(_)));
        let k = Combi::co_interval(g(3));
        let c =
            adjacent_h_classify(&k, (s(&[1, 2]), s(&[1, 3])), (s(&[1, 3]), s(&[2, 3]))).unwrap();
        assert_eq!(
            c,
            AdjacentH::TwoDeltas {
                apex: s(&[1, 2, 3])
            }
        );
        let c = adjacent_h_classify(&k, (s(&[1]), s(&[2])), (s(&[2]), s(&[3])));
        assert!(c.is_err());
        let k = Combi::interval(g(3));
        let c = adjacent_h_classify(&k, (s(&[1]), s(&[2])), (s(&[2]), s(&[3]))).unwrap();
        assert_eq!(c, AdjacentH::TwoNablas { bottom: s(&[]) });
    }

    #[test]
    fn mismatched_types_are_rejected() {
        let k = Combi::co_interval(g(4));
        // types 34 then 12: j'' = 2 < j' = 3
        let e = adjacent_h_classify(&k, (s(&[3]), s(&[4])), (s(&[4]), s(&[4]))).unwrap_err();
        assert!(matches!(e, Error::Hypothesis(_)));
        let e = adjacent_h_classify(&k, (s(&[1, 3]), s(&[1, 4])), (s(&[1, 4]), s(&[2, 4])))
            .unwrap_err();
        assert!(e.to_string().contains("middle index"));
    }
}

//! Combined tilings: Δ- and ∇-triangles plus lenses, tiling the zonogon.

mod configs;
mod reconstruct;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::geometry::Generators;
use crate::planar::{check_planar_tiling, zonogon_chain, CycleTile, Edge};
use crate::rhombus::RhombusTiling;
use crate::subset::{GroundSize, SetFamily, SubsetWord};

pub use configs::{
    adjacent_h_classify, find_m_configs, find_w_configs, AdjacentH, MConfig, WConfig,
};
pub use reconstruct::from_w_collection;

/// Type `(i, j)` of the H-edge `(p, q)`: `q = (p - i) ∪ j` with `i < j`.
pub fn h_edge_type(p: SubsetWord, q: SubsetWord) -> Option<(usize, usize)> {
    let i = p.difference(q).sole()?;
    let j = q.difference(p).sole()?;
    (i < j).then_some((i, j))
}

/// `Δ(A|BC)`: apex `A`, base from `B = A - j` to `C = A - i`, `i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeltaTile {
    apex: SubsetWord,
    left: SubsetWord,
    right: SubsetWord,
}

impl DeltaTile {
    pub fn new(apex: SubsetWord, left: SubsetWord, right: SubsetWord) -> Result<Self> {
        let t = DeltaTile { apex, left, right };
        match (apex.difference(left).sole(), apex.difference(right).sole()) {
            (Some(j), Some(i)) if left.is_subset(apex) && right.is_subset(apex) && i < j => Ok(t),
            _ => Err(Error::Tile(format!("{t} is not a Δ-tile"))),
        }
    }

    /// `Δ(A | A - j, A - i)`.
    pub fn with_types(apex: SubsetWord, i: usize, j: usize) -> Result<Self> {
        DeltaTile::new(apex, apex.without(j), apex.without(i))
    }

    pub fn apex(&self) -> SubsetWord {
        self.apex
    }

    pub fn base(&self) -> Edge {
        (self.left, self.right)
    }

    pub fn types(&self) -> (usize, usize) {
        let j = self.apex.difference(self.left).sole().unwrap();
        let i = self.apex.difference(self.right).sole().unwrap();
        (i, j)
    }

    pub fn cycle(&self) -> Vec<SubsetWord> {
        vec![self.left, self.right, self.apex]
    }
}

impl fmt::Display for DeltaTile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Δ({}|{},{})", self.apex, self.left, self.right)
    }
}

/// `∇(A'|B'C')`: bottom `A'`, base from `B' = A' ∪ i` to `C' = A' ∪ j`, `i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NablaTile {
    bottom: SubsetWord,
    left: SubsetWord,
    right: SubsetWord,
}

impl NablaTile {
    pub fn new(bottom: SubsetWord, left: SubsetWord, right: SubsetWord) -> Result<Self> {
        let t = NablaTile {
            bottom,
            left,
            right,
        };
        match (
            left.difference(bottom).sole(),
            right.difference(bottom).sole(),
        ) {
            (Some(i), Some(j)) if bottom.is_subset(left) && bottom.is_subset(right) && i < j => {
                Ok(t)
            }
            _ => Err(Error::Tile(format!("{t} is not a ∇-tile"))),
        }
    }

    /// `∇(A' | A' ∪ i, A' ∪ j)`.
    pub fn with_types(bottom: SubsetWord, i: usize, j: usize) -> Result<Self> {
        NablaTile::new(bottom, bottom.with(i), bottom.with(j))
    }

    pub fn bottom(&self) -> SubsetWord {
        self.bottom
    }

    pub fn base(&self) -> Edge {
        (self.left, self.right)
    }

    pub fn types(&self) -> (usize, usize) {
        (
            self.left.difference(self.bottom).sole().unwrap(),
            self.right.difference(self.bottom).sole().unwrap(),
        )
    }

    pub fn cycle(&self) -> Vec<SubsetWord> {
        vec![self.bottom, self.right, self.left]
    }
}

impl fmt::Display for NablaTile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "∇({}|{},{})", self.bottom, self.left, self.right)
    }
}

/// A lens bounded by two H-paths from its left to its right vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lens {
    upper: Vec<SubsetWord>,
    lower: Vec<SubsetWord>,
}

impl Lens {
    pub fn new(upper: Vec<SubsetWord>, lower: Vec<SubsetWord>) -> Result<Self> {
        let lens = Lens { upper, lower };
        lens.check().map(|_| lens)
    }

    fn check(&self) -> Result<()> {
        let bad = |why: &str| Err(Error::Tile(format!("{self}: {why}")));
        let (u, l) = (&self.upper, &self.lower);
        if u.len() < 3 || l.len() < 3 {
            return bad("each boundary needs at least two edges");
        }
        if u[0] != l[0] || u.last() != l.last() {
            return bad("boundaries do not share their end vertices");
        }
        let level = u[0].len();
        if u.iter().chain(l.iter()).any(|x| x.len() != level) {
            return bad("vertices have different sizes");
        }
        let center = u[0].intersection(u[1]);
        let mut prev = 0;
        for x in u {
            match x.difference(center).sole() {
                Some(i) if center.is_subset(*x) && i > prev => prev = i,
                _ => return bad("upper boundary types must increase around one center"),
            }
        }
        let center = l[0].union(l[1]);
        let mut prev = usize::MAX;
        for x in l {
            match center.difference(*x).sole() {
                Some(j) if x.is_subset(center) && j < prev => prev = j,
                _ => return bad("lower boundary types must decrease around one center"),
            }
        }
        Ok(())
    }

    pub fn upper(&self) -> &[SubsetWord] {
        &self.upper
    }

    pub fn lower(&self) -> &[SubsetWord] {
        &self.lower
    }

    pub fn left(&self) -> SubsetWord {
        self.upper[0]
    }

    pub fn right(&self) -> SubsetWord {
        *self.upper.last().unwrap()
    }

    /// Common intersection of the upper vertices.
    pub fn upper_center(&self) -> SubsetWord {
        self.upper[0].intersection(self.upper[1])
    }

    /// Common union of the lower vertices.
    pub fn lower_center(&self) -> SubsetWord {
        self.lower[0].union(self.lower[1])
    }

    pub fn level(&self) -> usize {
        self.upper[0].len()
    }

    pub fn types(&self) -> (usize, usize) {
        let x = self.upper_center();
        (
            self.left().difference(x).sole().unwrap(),
            self.right().difference(x).sole().unwrap(),
        )
    }

    pub fn upper_edges(&self) -> Vec<Edge> {
        self.upper.windows(2).map(|w| (w[0], w[1])).collect()
    }

    pub fn lower_edges(&self) -> Vec<Edge> {
        self.lower.windows(2).map(|w| (w[0], w[1])).collect()
    }

    /// Lower path forward, then upper path back.
    pub fn cycle(&self) -> Vec<SubsetWord> {
        let mut c = self.lower.clone();
        c.extend(self.upper[1..self.upper.len() - 1].iter().rev());
        c
    }
}

impl fmt::Display for Lens {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |p: &[SubsetWord]| p.iter().map(|x| x.label()).collect::<Vec<_>>().join(",");
        write!(f, "lens(U={};L={})", join(&self.upper), join(&self.lower))
    }
}

/// Lower and upper boundary paths of the `h`-th girdle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Girdle {
    pub level: usize,
    pub lower: Vec<SubsetWord>,
    pub upper: Vec<SubsetWord>,
}

impl Girdle {
    /// Edges shared by both boundaries.
    pub fn degenerate_lenses(&self) -> Vec<Edge> {
        let up: BTreeSet<Edge> = self.upper.windows(2).map(|w| (w[0], w[1])).collect();
        self.lower
            .windows(2)
            .map(|w| (w[0], w[1]))
            .filter(|e| up.contains(e))
            .collect()
    }
}

/// A validated combined tiling of `Z_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Combi {
    ground: GroundSize,
    deltas: BTreeSet<DeltaTile>,
    nablas: BTreeSet<NablaTile>,
    lenses: BTreeSet<Lens>,
}

impl Combi {
    pub fn new(
        ground: GroundSize,
        deltas: BTreeSet<DeltaTile>,
        nablas: BTreeSet<NablaTile>,
        lenses: BTreeSet<Lens>,
    ) -> Result<Self> {
        let k = Combi {
            ground,
            deltas,
            nablas,
            lenses,
        };
        validate_combi(&k)?;
        Ok(k)
    }

    pub fn ground(&self) -> GroundSize {
        self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.get()
    }

    pub fn deltas(&self) -> &BTreeSet<DeltaTile> {
        &self.deltas
    }

    pub fn nablas(&self) -> &BTreeSet<NablaTile> {
        &self.nablas
    }

    pub fn lenses(&self) -> &BTreeSet<Lens> {
        &self.lenses
    }

    pub fn tile_count(&self) -> usize {
        self.deltas.len() + self.nablas.len() + self.lenses.len()
    }

    /// Semi-rhombus combi of the interval tiling.
    pub fn interval(ground: GroundSize) -> Self {
        from_rhombus(&RhombusTiling::minimal(ground))
    }

    /// Semi-rhombus combi of the co-interval tiling.
    pub fn co_interval(ground: GroundSize) -> Self {
        from_rhombus(&RhombusTiling::maximal(ground))
    }

    /// The V-edges `(X, Xi)`, all of which are triangle sides.
    pub fn v_edges(&self) -> BTreeSet<Edge> {
        let mut out = BTreeSet::new();
        for d in &self.deltas {
            out.insert((d.left, d.apex));
            out.insert((d.right, d.apex));
        }
        for t in &self.nablas {
            out.insert((t.bottom, t.left));
            out.insert((t.bottom, t.right));
        }
        if self.n() == 1 {
            out.insert((SubsetWord::EMPTY, SubsetWord::full(1)));
        }
        out
    }

    /// Boundary paths of the girdle at level `h`, for `1 <= h < n`.
    pub fn girdle(&self, h: usize) -> Result<Girdle> {
        let n = self.n();
        if h == 0 || h >= n {
            return Err(Error::Tiling {
                axiom: "girdle",
                detail: format!(
                    "girdle levels run from 1 to {}, got {h}",
                    n.saturating_sub(1)
                ),
            });
        }
        let lower: Vec<Edge> = self
            .nablas
            .iter()
            .filter(|t| t.bottom.len() + 1 == h)
            .map(|t| t.base())
            .collect();
        let upper: Vec<Edge> = self
            .deltas
            .iter()
            .filter(|d| d.apex.len() == h + 1)
            .map(|d| d.base())
            .collect();
        Ok(Girdle {
            level: h,
            lower: chain_path(&lower, h, n)?,
            upper: chain_path(&upper, h, n)?,
        })
    }

    pub(crate) fn into_parts(
        self,
    ) -> (
        GroundSize,
        BTreeSet<DeltaTile>,
        BTreeSet<NablaTile>,
        BTreeSet<Lens>,
    ) {
        (self.ground, self.deltas, self.nablas, self.lenses)
    }
}

/// Chains H-edges into the path from `[h]` to `[n-h+1..n]`.
pub(crate) fn chain_path(edges: &[Edge], h: usize, n: usize) -> Result<Vec<SubsetWord>> {
    let next: HashMap<SubsetWord, SubsetWord> = edges.iter().copied().collect();
    let (start, end) = (
        SubsetWord::interval(1, h),
        SubsetWord::interval(n - h + 1, n),
    );
    let mut path = vec![start];
    let mut at = start;
    while at != end {
        match next.get(&at) {
            Some(&y) if path.len() <= edges.len() => {
                path.push(y);
                at = y;
            }
            _ => {
                return Err(Error::tiling(
                    "girdle",
                    format!("level {h} boundary path breaks off at {at}"),
                ))
            }
        }
    }
    if path.len() != edges.len() + 1 {
        return Err(Error::tiling(
            "girdle",
            format!("level {h} has H-edges off the boundary path from {start} to {end}"),
        ));
    }
    Ok(path)
}

/// Checks the local tile shapes and the planar tiling axioms.
pub fn validate_combi(k: &Combi) -> Result<()> {
    let n = k.n();
    let verts = k
        .deltas
        .iter()
        .flat_map(|d| d.cycle())
        .chain(k.nablas.iter().flat_map(|t| t.cycle()))
        .chain(k.lenses.iter().flat_map(|l| l.cycle()));
    for x in verts {
        k.ground.check(x)?;
    }
    for l in &k.lenses {
        l.check()?;
    }
    if n == 1 {
        if k.tile_count() > 0 {
            return Err(Error::tiling(
                "area",
                "Z_1 is a segment and carries no tiles",
            ));
        }
        return Ok(());
    }
    let g = Generators::default_for(n)?;
    let tiles: Vec<CycleTile> = k
        .deltas
        .iter()
        .map(|d| CycleTile {
            label: d.to_string(),
            cycle: d.cycle(),
        })
        .chain(k.nablas.iter().map(|t| CycleTile {
            label: t.to_string(),
            cycle: t.cycle(),
        }))
        .chain(k.lenses.iter().map(|l| CycleTile {
            label: l.to_string(),
            cycle: l.cycle(),
        }))
        .collect();
    check_planar_tiling(&g, &tiles, &zonogon_chain(n))
}

/// Splits every rhombus `τ(X;i,j)` into `Δ(Xij|Xi,Xj)` and `∇(X|Xi,Xj)`.
pub fn from_rhombus(t: &RhombusTiling) -> Combi {
    let mut deltas = BTreeSet::new();
    let mut nablas = BTreeSet::new();
    for r in t.tiles() {
        let (i, j) = r.types();
        deltas.insert(DeltaTile::with_types(r.top(), i, j).unwrap());
        nablas.insert(NablaTile::with_types(r.bottom(), i, j).unwrap());
    }
    Combi::new(t.ground(), deltas, nablas, BTreeSet::new())
        .expect("a split rhombus tiling is a combi")
}

pub fn spectrum(k: &Combi) -> SetFamily {
    let v = k.v_edges().into_iter().flat_map(|(a, b)| [a, b]);
    SetFamily::collect(k.ground, v).expect("tile corners lie in [n]")
}

/// `η(K)`, the sum of the vertex sizes.
pub fn eta(k: &Combi) -> usize {
    spectrum(k).size_sum()
}

#[derive(Serialize, Deserialize)]
struct DeltaJson {
    apex: SubsetWord,
    base: [SubsetWord; 2],
}

#[derive(Serialize, Deserialize)]
struct NablaJson {
    bottom: SubsetWord,
    base: [SubsetWord; 2],
}

#[derive(Serialize, Deserialize)]
struct LensJson {
    upper: Vec<SubsetWord>,
    lower: Vec<SubsetWord>,
}

#[derive(Serialize, Deserialize)]
struct CombiJson {
    n: usize,
    deltas: Vec<DeltaJson>,
    nablas: Vec<NablaJson>,
    lenses: Vec<LensJson>,
}

impl Serialize for Combi {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CombiJson {
            n: self.n(),
            deltas: self
                .deltas
                .iter()
                .map(|d| DeltaJson {
                    apex: d.apex,
                    base: [d.left, d.right],
                })
                .collect(),
            nablas: self
                .nablas
                .iter()
                .map(|t| NablaJson {
                    bottom: t.bottom,
                    base: [t.left, t.right],
                })
                .collect(),
            lenses: self
                .lenses
                .iter()
                .map(|l| LensJson {
                    upper: l.upper.clone(),
                    lower: l.lower.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Combi {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = CombiJson::deserialize(d)?;
        let build = || -> Result<Combi> {
            let ground = GroundSize::new(j.n)?;
            let deltas = j
                .deltas
                .iter()
                .map(|t| DeltaTile::new(t.apex, t.base[0], t.base[1]))
                .collect::<Result<_>>()?;
            let nablas = j
                .nablas
                .iter()
                .map(|t| NablaTile::new(t.bottom, t.base[0], t.base[1]))
                .collect::<Result<_>>()?;
            let lenses = j
                .lenses
                .iter()
                .map(|l| Lens::new(l.upper.clone(), l.lower.clone()))
                .collect::<Result<_>>()?;
            Combi::new(ground, deltas, nablas, lenses)
        };
        build().map_err(D::Error::custom)
    }
}

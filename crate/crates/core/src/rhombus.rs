//! Rhombus tilings of the zonogon, their spectra and strong flips.

use std::collections::BTreeSet;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::enumerate::is_maximal_strong;
use crate::error::{Error, Result};
use crate::geometry::Generators;
use crate::planar::{check_planar_tiling, trace_face_walks, zonogon_chain, CycleTile, Edge};
use crate::subset::{GroundSize, SetFamily, SubsetWord};

/// The rhombus `τ(X; i, j)` with corners `X, Xi, Xj, Xij`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rhombus {
    base: SubsetWord,
    i: u8,
    j: u8,
}

impl Rhombus {
    pub fn new(base: SubsetWord, i: usize, j: usize) -> Result<Self> {
        if !(1 <= i && i < j && j <= 16) {
            return Err(Error::Tile(format!(
                "rhombus types must satisfy 1 <= i < j, got {i},{j}"
            )));
        }
        if base.contains(i) || base.contains(j) {
            return Err(Error::Tile(format!(
                "rhombus τ({base};{i},{j}) needs {i},{j} outside the base"
            )));
        }
        Ok(Rhombus {
            base,
            i: i as u8,
            j: j as u8,
        })
    }

    pub fn base(&self) -> SubsetWord {
        self.base
    }

    pub fn types(&self) -> (usize, usize) {
        (self.i as usize, self.j as usize)
    }

    pub fn bottom(&self) -> SubsetWord {
        self.base
    }

    pub fn left(&self) -> SubsetWord {
        self.base.with(self.i as usize)
    }

    pub fn right(&self) -> SubsetWord {
        self.base.with(self.j as usize)
    }

    pub fn top(&self) -> SubsetWord {
        self.left().with(self.j as usize)
    }

    /// Counterclockwise corners: bottom, right, top, left.
    pub fn cycle(&self) -> Vec<SubsetWord> {
        vec![self.bottom(), self.right(), self.top(), self.left()]
    }
}

impl std::fmt::Display for Rhombus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "τ({};{},{})", self.base, self.i, self.j)
    }
}

/// A validated rhombus tiling of `Z_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RhombusTiling {
    ground: GroundSize,
    tiles: BTreeSet<Rhombus>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FlipDirection {
    Raise,
    Lower,
}

impl RhombusTiling {
    /// Validates and wraps a set of rhombi.
    pub fn new(ground: GroundSize, tiles: BTreeSet<Rhombus>) -> Result<Self> {
        let t = RhombusTiling { ground, tiles };
        validate_rhombus(&t)?;
        Ok(t)
    }

    pub fn ground(&self) -> GroundSize {
        self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.get()
    }

    pub fn tiles(&self) -> &BTreeSet<Rhombus> {
        &self.tiles
    }

    /// The tiling whose spectrum is the interval family.
    pub fn minimal(ground: GroundSize) -> Self {
        from_s_collection(&SetFamily::intervals(ground))
            .expect("intervals form a maximal s-collection")
    }

    /// The tiling whose spectrum is the co-interval family.
    pub fn maximal(ground: GroundSize) -> Self {
        from_s_collection(&SetFamily::co_intervals(ground))
            .expect("co-intervals form a maximal s-collection")
    }
}

/// Checks the planar tiling axioms for `t` under the default embedding.
pub fn validate_rhombus(t: &RhombusTiling) -> Result<()> {
    let n = t.n();
    for r in &t.tiles {
        t.ground.check(r.top())?;
    }
    let want = n * (n - 1) / 2;
    if t.tiles.len() != want {
        return Err(Error::tiling(
            "area",
            format!("a tiling of Z_{n} has {want} rhombi, got {}", t.tiles.len()),
        ));
    }
    if n == 1 {
        return Ok(());
    }
    let g = Generators::default_for(n)?;
    let cycles: Vec<CycleTile> = t
        .tiles
        .iter()
        .map(|r| CycleTile {
            label: r.to_string(),
            cycle: r.cycle(),
        })
        .collect();
    check_planar_tiling(&g, &cycles, &zonogon_chain(n))
}

pub fn spectrum_rhombus(t: &RhombusTiling) -> SetFamily {
    let n = t.n();
    let mut v: BTreeSet<SubsetWord> = t.tiles.iter().flat_map(|r| r.cycle()).collect();
    if n == 1 {
        v.insert(SubsetWord::EMPTY);
        v.insert(SubsetWord::full(1));
    }
    SetFamily::collect(t.ground, v).expect("tile corners lie in [n]")
}

/// Bounded faces of the plane graph on `vertices` whose edges are all pairs
/// `(X, Xi)` inside the family, traced through the exact rotation system.
/// Each face is returned as its counterclockwise vertex cycle.
pub(crate) fn trace_v_faces(g: &Generators, vertices: &SetFamily) -> Vec<Vec<SubsetWord>> {
    let edges: Vec<Edge> = vertices
        .iter()
        .flat_map(|x| {
            (1..=vertices.n())
                .filter(move |&i| !x.contains(i))
                .map(move |i| (x, x.with(i)))
        })
        .filter(|e| vertices.contains(e.1))
        .collect();
    trace_face_walks(g, &edges)
        .into_iter()
        .filter(|w| w.area2 > 0)
        .map(|w| w.vertices)
        .collect()
}

/// Reads a four-cycle as a rhombus, given counterclockwise from any corner.
fn face_as_rhombus(face: &[SubsetWord]) -> Option<Rhombus> {
    if face.len() != 4 {
        return None;
    }
    let bottom = *face.iter().min_by_key(|x| x.len())?;
    let top = *face.iter().max_by_key(|x| x.len())?;
    let diff = top.difference(bottom);
    if !bottom.is_subset(top) || diff.len() != 2 {
        return None;
    }
    let (i, j) = (diff.min(), diff.max());
    let r = Rhombus::new(bottom, i, j).ok()?;
    let mut want = r.cycle();
    let mut got = face.to_vec();
    want.sort();
    got.sort();
    (want == got).then_some(r)
}

/// The unique rhombus tiling whose spectrum is the maximal s-collection `f`.
pub fn from_s_collection(f: &SetFamily) -> Result<RhombusTiling> {
    if !is_maximal_strong(f) {
        return Err(Error::NotMaximal("strongly separated"));
    }
    let n = f.n();
    if n == 1 {
        return RhombusTiling::new(f.ground(), BTreeSet::new());
    }
    let g = Generators::default_for(n)?;
    let mut tiles = BTreeSet::new();
    for face in trace_v_faces(&g, f) {
        let r = face_as_rhombus(&face).ok_or_else(|| {
            Error::tiling(
                "rhombus-face",
                format!("bounded face {:?} is not a rhombus", face),
            )
        })?;
        tiles.insert(r);
    }
    RhombusTiling::new(f.ground(), tiles)
}

/// Applies the hexagon flip at `x` with types `i < j < k`.
pub fn strong_flip(
    t: &RhombusTiling,
    x: SubsetWord,
    (i, j, k): (usize, usize, usize),
    direction: FlipDirection,
) -> Result<RhombusTiling> {
    if !(i < j && j < k) {
        return Err(Error::FlipNotApplicable(format!(
            "types must increase, got {i},{j},{k}"
        )));
    }
    let low = [
        Rhombus::new(x, i, j)?,
        Rhombus::new(x, j, k)?,
        Rhombus::new(x.with(j), i, k)?,
    ];
    let high = [
        Rhombus::new(x.with(k), i, j)?,
        Rhombus::new(x.with(i), j, k)?,
        Rhombus::new(x, i, k)?,
    ];
    let (remove, add) = match direction {
        FlipDirection::Raise => (low, high),
        FlipDirection::Lower => (high, low),
    };
    if let Some(missing) = remove.iter().find(|r| !t.tiles.contains(r)) {
        return Err(Error::FlipNotApplicable(format!(
            "hexagon tile {missing} is absent"
        )));
    }
    let mut tiles = t.tiles.clone();
    for r in &remove {
        tiles.remove(r);
    }
    tiles.extend(add);
    RhombusTiling::new(t.ground, tiles)
}

/// Every hexagon flip available in `t`, as `(X, (i, j, k))`.
pub fn available_strong_flips(
    t: &RhombusTiling,
    direction: FlipDirection,
) -> Vec<(SubsetWord, (usize, usize, usize))> {
    let mut out = Vec::new();
    for r in &t.tiles {
        let (a, b) = r.types();
        for c in b + 1..=t.n() {
            let x = r.base();
            if x.contains(c) {
                continue;
            }
            let (i, j, k) = (a, b, c);
            let present = |rs: [(SubsetWord, usize, usize); 3]| {
                rs.iter().all(|&(y, p, q)| {
                    t.tiles.contains(&Rhombus {
                        base: y,
                        i: p as u8,
                        j: q as u8,
                    })
                })
            };
            let hit = match direction {
                FlipDirection::Raise => present([(x, i, j), (x, j, k), (x.with(j), i, k)]),
                FlipDirection::Lower => present([(x.with(k), i, j), (x.with(i), j, k), (x, i, k)]),
            };
            if hit {
                out.push((x, (i, j, k)));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

#[derive(Serialize, Deserialize)]
struct RhombusJson {
    #[serde(rename = "X")]
    x: SubsetWord,
    i: usize,
    j: usize,
}

#[derive(Serialize, Deserialize)]
struct TilingJson {
    n: usize,
    rhombi: Vec<RhombusJson>,
}

impl Serialize for RhombusTiling {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TilingJson {
            n: self.n(),
            rhombi: self
                .tiles
                .iter()
                .map(|r| RhombusJson {
                    x: r.base,
                    i: r.i as usize,
                    j: r.j as usize,
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RhombusTiling {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = TilingJson::deserialize(d)?;
        let g = GroundSize::new(j.n).map_err(D::Error::custom)?;
        let tiles = j
            .rhombi
            .iter()
            .map(|r| Rhombus::new(r.x, r.i, r.j))
            .collect::<Result<BTreeSet<_>>>()
            .map_err(D::Error::custom)?;
        RhombusTiling::new(g, tiles).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::enumerate_maximal;
    use crate::separation::Separation;

    fn s(e: &[usize]) -> SubsetWord {
        SubsetWord::of(e)
    }

    fn g(n: usize) -> GroundSize {
        GroundSize::new(n).unwrap()
    }

    #[test]
    fn single_rhombus_of_z2() {
        let r = Rhombus::new(s(&[]), 1, 2).unwrap();
        let t = RhombusTiling::new(g(2), [r].into()).unwrap();
        assert_eq!(
            spectrum_rhombus(&t).members(),
            &[s(&[]), s(&[1]), s(&[2]), s(&[1, 2])]
        );
        let f = SetFamily::hypercube(g(2));
        assert_eq!(from_s_collection(&f).unwrap(), t);
    }

    #[test]
    fn incomplete_tiling_is_invalid() {
        let tiles = [
            Rhombus::new(s(&[]), 1, 2).unwrap(),
            Rhombus::new(s(&[]), 2, 3).unwrap(),
        ];
        assert!(RhombusTiling::new(g(3), tiles.into()).is_err());
    }

    #[test]
    fn constructor_rejects_types_in_base() {
        assert!(Rhombus::new(s(&[2]), 1, 2).is_err());
        assert!(Rhombus::new(s(&[]), 2, 2).is_err());
    }

    #[test]
    fn minimal_and_maximal_tilings_of_z3() {
        let min = RhombusTiling::minimal(g(3));
        assert_eq!(spectrum_rhombus(&min), SetFamily::intervals(g(3)));
        let want: BTreeSet<Rhombus> = [
            Rhombus::new(s(&[]), 1, 2).unwrap(),
            Rhombus::new(s(&[]), 2, 3).unwrap(),
            Rhombus::new(s(&[2]), 1, 3).unwrap(),
        ]
        .into();
        assert_eq!(min.tiles(), &want);
        let max = RhombusTiling::maximal(g(3));
        assert_eq!(
            spectrum_rhombus(&max).members(),
            SetFamily::collect(
                g(3),
                [&[][..], &[1], &[3], &[1, 2], &[1, 3], &[2, 3], &[1, 2, 3]].map(s)
            )
            .unwrap()
            .members()
        );
    }

    #[test]
    fn flips_on_z3() {
        let min = RhombusTiling::minimal(g(3));
        let up = strong_flip(&min, SubsetWord::EMPTY, (1, 2, 3), FlipDirection::Raise).unwrap();
        assert_eq!(up, RhombusTiling::maximal(g(3)));
        let down = strong_flip(&up, SubsetWord::EMPTY, (1, 2, 3), FlipDirection::Lower).unwrap();
        assert_eq!(down, min);
        assert!(strong_flip(&min, SubsetWord::EMPTY, (1, 2, 3), FlipDirection::Lower).is_err());
    }

    #[test]
    fn from_s_collection_rejects_non_maximal() {
        let f = SetFamily::new(g(3), vec![s(&[]), s(&[1])]).unwrap();
        assert_eq!(
            from_s_collection(&f),
            Err(Error::NotMaximal("strongly separated"))
        );
    }

    #[test]
    fn every_maximal_s_collection_is_a_tiling_spectrum() {
        for n in 1..=5 {
            let r = enumerate_maximal(&SetFamily::hypercube(g(n)), Separation::Strong).unwrap();
            for f in &r.maximal_collections {
                let t = from_s_collection(f).unwrap();
                assert_eq!(&spectrum_rhombus(&t), f);
            }
        }
    }

    /// Breadth-first search over strong raising flips from the minimal tiling.
    #[test]
    fn flip_graph_has_unique_source_and_sink() {
        for n in 2..=4 {
            let start = RhombusTiling::minimal(g(n));
            let mut seen = vec![start.clone()];
            let mut queue = vec![start];
            let mut has_out = BTreeSet::new();
            let mut has_in = BTreeSet::new();
            while let Some(t) = queue.pop() {
                let key = spectrum_rhombus(&t);
                for (x, ijk) in available_strong_flips(&t, FlipDirection::Raise) {
                    let u = strong_flip(&t, x, ijk, FlipDirection::Raise).unwrap();
                    has_out.insert(key.clone());
                    has_in.insert(spectrum_rhombus(&u));
                    assert_eq!(from_s_collection(&spectrum_rhombus(&u)).unwrap(), u);
                    if !seen.contains(&u) {
                        seen.push(u.clone());
                        queue.push(u);
                    }
                }
            }
            let all = enumerate_maximal(&SetFamily::hypercube(g(n)), Separation::Strong).unwrap();
            assert_eq!(seen.len(), all.maximal_collections.len());
            let sources: Vec<_> = seen
                .iter()
                .map(spectrum_rhombus)
                .filter(|f| !has_in.contains(f))
                .collect();
            let sinks: Vec<_> = seen
                .iter()
                .map(spectrum_rhombus)
                .filter(|f| !has_out.contains(f))
                .collect();
            assert_eq!(sources, vec![SetFamily::intervals(g(n))]);
            assert_eq!(sinks, vec![SetFamily::co_intervals(g(n))]);
        }
    }

    #[test]
    fn json_round_trip() {
        let t = RhombusTiling::minimal(g(3));
        let js = serde_json::to_string(&t).unwrap();
        assert!(js.starts_with("{\"n\":3,\"rhombi\":[{\"X\":[]"));
        let back: RhombusTiling = serde_json::from_str(&js).unwrap();
        assert_eq!(back, t);
    }
}

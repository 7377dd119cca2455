//! Cutting a combi along a pattern curve into two quasi-combies, and gluing
//! two such halves back into a genuine combi.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::{classify_pattern, step_kind, CyclicPattern, PatternClass, StepKind};
use crate::combi::{spectrum, Combi, DeltaTile, Lens, NablaTile};
use crate::error::{Error, Result};
use crate::geometry::{locate_unchecked, Generators, Location, PlanePoint, Polyline};
use crate::planar::{check_planar_tiling, cycle_edges, zonogon_chain, CycleTile, Edge};
use crate::subset::{GroundSize, SetFamily, SubsetWord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum QuasiRegion {
    Whole,
    Inside,
    Outside,
}

/// A tile of a quasi-combi. Semi-lenses keep only their curved side; the
/// straight side is the chord joining its first and last vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QuasiTile {
    Delta { tile: DeltaTile, secondary: bool },
    Nabla { tile: NablaTile, secondary: bool },
    Lens { lens: Lens, secondary: bool },
    UpperSemiLens { upper: Vec<SubsetWord> },
    LowerSemiLens { lower: Vec<SubsetWord> },
}

impl QuasiTile {
    /// Counterclockwise boundary.
    pub fn cycle(&self) -> Vec<SubsetWord> {
        match self {
            QuasiTile::Delta { tile, .. } => tile.cycle(),
            QuasiTile::Nabla { tile, .. } => tile.cycle(),
            QuasiTile::Lens { lens, .. } => lens.cycle(),
            QuasiTile::UpperSemiLens { upper } => {
                let m = upper.len();
                let mut c = vec![upper[0], upper[m - 1]];
                c.extend(upper[1..m - 1].iter().rev());
                c
            }
            QuasiTile::LowerSemiLens { lower } => lower.clone(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            QuasiTile::Delta { .. } => "delta",
            QuasiTile::Nabla { .. } => "nabla",
            QuasiTile::Lens { .. } => "lens",
            QuasiTile::UpperSemiLens { .. } => "upper_semi_lens",
            QuasiTile::LowerSemiLens { .. } => "lower_semi_lens",
        }
    }

    pub fn is_secondary(&self) -> bool {
        match self {
            QuasiTile::Delta { secondary, .. }
            | QuasiTile::Nabla { secondary, .. }
            | QuasiTile::Lens { secondary, .. } => *secondary,
            _ => false,
        }
    }

    pub fn is_semi_lens(&self) -> bool {
        matches!(
            self,
            QuasiTile::UpperSemiLens { .. } | QuasiTile::LowerSemiLens { .. }
        )
    }

    fn label(&self) -> String {
        let c: Vec<String> = self.cycle().iter().map(|x| x.label()).collect();
        format!("{}({})", self.kind(), c.join(","))
    }
}

impl Serialize for QuasiTile {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("QuasiTile", 3)?;
        st.serialize_field("kind", self.kind())?;
        st.serialize_field("secondary", &self.is_secondary())?;
        st.serialize_field("cycle", &self.cycle())?;
        st.end()
    }
}

/// Tiles covering the whole zonogon or one side of a pattern curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiCombi {
    ground: GroundSize,
    region: QuasiRegion,
    pattern: Vec<SubsetWord>,
    tiles: Vec<QuasiTile>,
}

impl QuasiCombi {
    pub fn ground(&self) -> GroundSize {
        self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.get()
    }

    pub fn region(&self) -> QuasiRegion {
        self.region
    }

    /// The cycle of the pattern the tiles were cut along.
    pub fn pattern(&self) -> &[SubsetWord] {
        &self.pattern
    }

    pub fn tiles(&self) -> &[QuasiTile] {
        &self.tiles
    }

    pub fn semi_lens_count(&self) -> usize {
        self.tiles.iter().filter(|t| t.is_semi_lens()).count()
    }

    pub fn vertices(&self) -> SetFamily {
        SetFamily::collect(self.ground, self.tiles.iter().flat_map(|t| t.cycle())).unwrap()
    }
}

impl Serialize for QuasiCombi {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("QuasiCombi", 4)?;
        st.serialize_field("n", &self.n())?;
        st.serialize_field("region", &self.region)?;
        st.serialize_field("pattern", &self.pattern)?;
        st.serialize_field("tiles", &self.tiles)?;
        st.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Host {
    Lens(usize),
    Upper(SubsetWord),
    Lower(SubsetWord),
}

fn quasi(msg: impl Into<String>) -> Error {
    Error::Quasi(msg.into())
}

/// `U_A`: the tops of the ∇-tiles with bottom `a`, left to right.
fn upper_fan(k: &Combi, a: SubsetWord) -> Vec<SubsetWord> {
    let mut fan: Vec<&NablaTile> = k.nablas().iter().filter(|t| t.bottom() == a).collect();
    fan.sort_by_key(|t| t.types().0);
    fan_path(fan.iter().map(|t| t.base()))
}

/// `L_A`: the bases of the Δ-tiles with apex `a`, left to right.
fn lower_fan(k: &Combi, a: SubsetWord) -> Vec<SubsetWord> {
    let mut fan: Vec<&DeltaTile> = k.deltas().iter().filter(|t| t.apex() == a).collect();
    fan.sort_by_key(|t| std::cmp::Reverse(t.types().1));
    fan_path(fan.iter().map(|t| t.base()))
}

fn fan_path(bases: impl Iterator<Item = Edge>) -> Vec<SubsetWord> {
    let mut path = Vec::new();
    for (l, r) in bases {
        if path.is_empty() {
            path.push(l);
        }
        path.push(r);
    }
    path
}

fn non_adjacent(m: usize, p: usize, q: usize) -> bool {
    let d = p.abs_diff(q);
    d != 1 && d != m - 1
}

fn chord_in(path: &[SubsetWord], a: SubsetWord, b: SubsetWord) -> bool {
    match (path.iter().position(|&x| x == a), path.iter().position(|&x| x == b)) {
        (Some(p), Some(q)) => p.abs_diff(q) >= 2,
        _ => false,
    }
}

fn find_host(k: &Combi, lenses: &[&Lens], vertices: &SetFamily, a: SubsetWord, b: SubsetWord) -> Result<Host> {
    for (idx, l) in lenses.iter().enumerate() {
        let c = l.cycle();
        if let (Some(p), Some(q)) = (c.iter().position(|&x| x == a), c.iter().position(|&x| x == b)) {
            if !non_adjacent(c.len(), p, q) {
                continue;
            }
            let on = |side: &[SubsetWord]| side.contains(&a) && side.contains(&b);
            if on(l.upper()) || on(l.lower()) {
                return Ok(Host::Lens(idx));
            }
            return Err(quasi(format!(
                "segment {a}-{b} runs across {l} between its two sides"
            )));
        }
    }
    let (meet, join) = (a.intersection(b), a.union(b));
    if vertices.contains(meet) && chord_in(&upper_fan(k, meet), a, b) {
        return Ok(Host::Upper(meet));
    }
    if vertices.contains(join) && chord_in(&lower_fan(k, join), a, b) {
        return Ok(Host::Lower(join));
    }
    Err(quasi(format!(
        "segment {a}-{b} is neither an edge of the combi nor a chord of a lens or sector"
    )))
}

/// Subdivides a convex polygon by pairwise non-crossing chords.
fn cut_polygon(cycle: Vec<SubsetWord>, chords: &BTreeSet<Edge>) -> Result<Vec<Vec<SubsetWord>>> {
    let mut polys = vec![cycle];
    for &(a, b) in chords {
        let hit = polys.iter().enumerate().find_map(|(i, p)| {
            let pa = p.iter().position(|&x| x == a)?;
            let pb = p.iter().position(|&x| x == b)?;
            non_adjacent(p.len(), pa, pb).then_some((i, pa.min(pb), pa.max(pb)))
        });
        let Some((i, x, y)) = hit else {
            return Err(quasi(format!("chord {a}-{b} does not cut any remaining piece")));
        };
        let p = polys.swap_remove(i);
        let mut second = p[y..].to_vec();
        second.extend_from_slice(&p[..=x]);
        polys.push(p[x..=y].to_vec());
        polys.push(second);
    }
    Ok(polys)
}

fn sorted_along(part: &[SubsetWord], path: &[SubsetWord]) -> Vec<SubsetWord> {
    path.iter().copied().filter(|x| part.contains(x)).collect()
}

fn cut_lens(l: &Lens, chords: &BTreeSet<Edge>, out: &mut Vec<QuasiTile>) -> Result<()> {
    for piece in cut_polygon(l.cycle(), chords)? {
        let all_in = |side: &[SubsetWord]| piece.iter().all(|x| side.contains(x));
        if all_in(l.upper()) {
            out.push(QuasiTile::UpperSemiLens {
                upper: sorted_along(&piece, l.upper()),
            });
        } else if all_in(l.lower()) {
            out.push(QuasiTile::LowerSemiLens {
                lower: sorted_along(&piece, l.lower()),
            });
        } else {
            let lens = Lens::new(sorted_along(&piece, l.upper()), sorted_along(&piece, l.lower()))?;
            out.push(QuasiTile::Lens {
                lens,
                secondary: true,
            });
        }
    }
    Ok(())
}

fn cut_upper_sector(a: SubsetWord, fan: &[SubsetWord], chords: &BTreeSet<Edge>, out: &mut Vec<QuasiTile>) -> Result<()> {
    let mut cycle = vec![a];
    cycle.extend(fan.iter().rev());
    for piece in cut_polygon(cycle, chords)? {
        if piece.contains(&a) {
            let top = sorted_along(&piece, fan);
            for w in top.windows(2) {
                out.push(QuasiTile::Nabla {
                    tile: NablaTile::new(a, w[0], w[1])?,
                    secondary: true,
                });
            }
        } else {
            out.push(QuasiTile::UpperSemiLens {
                upper: sorted_along(&piece, fan),
            });
        }
    }
    Ok(())
}

fn cut_lower_sector(a: SubsetWord, fan: &[SubsetWord], chords: &BTreeSet<Edge>, out: &mut Vec<QuasiTile>) -> Result<()> {
    let mut cycle = fan.to_vec();
    cycle.push(a);
    for piece in cut_polygon(cycle, chords)? {
        if piece.contains(&a) {
            let bottom = sorted_along(&piece, fan);
            for w in bottom.windows(2) {
                out.push(QuasiTile::Delta {
                    tile: DeltaTile::new(a, w[0], w[1])?,
                    secondary: true,
                });
            }
        } else {
            out.push(QuasiTile::LowerSemiLens {
                lower: sorted_along(&piece, fan),
            });
        }
    }
    Ok(())
}

fn check_cover(g: &Generators, tiles: &[QuasiTile]) -> Result<()> {
    let cycles: Vec<CycleTile> = tiles
        .iter()
        .map(|t| CycleTile {
            label: t.label(),
            cycle: t.cycle(),
        })
        .collect();
    check_planar_tiling(g, &cycles, &zonogon_chain(g.n()))
}

/// The quasi-combi on the whole zonogon obtained by cutting every lens and
/// sector that a 2-segment of the pattern passes through.
pub fn cut_along(k: &Combi, s: &CyclicPattern) -> Result<QuasiCombi> {
    let n = k.n();
    if s.n() != n {
        return Err(quasi(format!("pattern on [{}] against a combi on [{n}]", s.n())));
    }
    let vertices = spectrum(k);
    if let Some(x) = s.cycle().iter().find(|x| !vertices.contains(**x)) {
        return Err(quasi(format!("pattern member {x} is not a vertex of the combi")));
    }
    let g = Generators::default_for(n)?;
    if classify_pattern(s, &g)? == PatternClass::SelfCrossing {
        return Err(Error::SelfCrossing);
    }
    let edges: HashSet<Edge> = all_cycles(k)
        .iter()
        .flat_map(|c| cycle_edges(c).collect::<Vec<_>>())
        .collect();
    let lenses: Vec<&Lens> = k.lenses().iter().collect();
    let mut cuts: BTreeMap<Host, BTreeSet<Edge>> = BTreeMap::new();
    for (a, b) in s.steps() {
        if step_kind(a, b) != Some(StepKind::TwoDistance) || edges.contains(&(a, b)) || edges.contains(&(b, a)) {
            continue;
        }
        let host = find_host(k, &lenses, &vertices, a, b)?;
        cuts.entry(host).or_default().insert((std::cmp::min(a, b), std::cmp::max(a, b)));
    }
    let mut tiles = Vec::new();
    for d in k.deltas() {
        if !cuts.contains_key(&Host::Lower(d.apex())) {
            tiles.push(QuasiTile::Delta {
                tile: *d,
                secondary: false,
            });
        }
    }
    for t in k.nablas() {
        if !cuts.contains_key(&Host::Upper(t.bottom())) {
            tiles.push(QuasiTile::Nabla {
                tile: *t,
                secondary: false,
            });
        }
    }
    for (idx, l) in lenses.iter().enumerate() {
        if !cuts.contains_key(&Host::Lens(idx)) {
            tiles.push(QuasiTile::Lens {
                lens: (*l).clone(),
                secondary: false,
            });
        }
    }
    for (host, chords) in &cuts {
        match *host {
            Host::Lens(idx) => cut_lens(lenses[idx], chords, &mut tiles)?,
            Host::Upper(a) => cut_upper_sector(a, &upper_fan(k, a), chords, &mut tiles)?,
            Host::Lower(a) => cut_lower_sector(a, &lower_fan(k, a), chords, &mut tiles)?,
        }
    }
    tiles.sort();
    check_cover(&g, &tiles)?;
    Ok(QuasiCombi {
        ground: k.ground(),
        region: QuasiRegion::Whole,
        pattern: s.cycle().to_vec(),
        tiles,
    })
}

fn all_cycles(k: &Combi) -> Vec<Vec<SubsetWord>> {
    k.deltas()
        .iter()
        .map(|d| d.cycle())
        .chain(k.nablas().iter().map(|t| t.cycle()))
        .chain(k.lenses().iter().map(|l| l.cycle()))
        .collect()
}

fn scaled(curve: &Polyline, m: i128) -> Polyline {
    Polyline::closed(curve.points.iter().map(|p| p.scale(m)).collect())
}

/// Splits `k` along the curve of `s` into the tiles inside and outside it.
pub fn split_quasi(k: &Combi, s: &CyclicPattern) -> Result<(QuasiCombi, QuasiCombi)> {
    let whole = cut_along(k, s)?;
    let g = Generators::default_for(k.n())?;
    let curve = s.curve(&g);
    let (mut inside, mut outside) = (Vec::new(), Vec::new());
    for t in whole.tiles {
        let c = t.cycle();
        let m = c.len() as i128;
        let centroid = c.iter().fold(PlanePoint::new(0, 0), |acc, &x| acc.add(g.embed(x)));
        let loc = locate_unchecked(centroid, &scaled(&curve, m));
        let stray = c.iter().any(|&x| {
            let l = locate_unchecked(g.embed(x), &curve);
            l != Location::On && l != loc
        });
        if loc == Location::On || stray {
            return Err(quasi(format!("{} is cut by the curve", t.label())));
        }
        if loc == Location::Inside {
            inside.push(t);
        } else {
            outside.push(t);
        }
    }
    let half = |region, tiles| QuasiCombi {
        ground: k.ground(),
        region,
        pattern: whole.pattern.clone(),
        tiles,
    };
    Ok((half(QuasiRegion::Inside, inside), half(QuasiRegion::Outside, outside)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MergeCase {
    /// The neighbour was a triangle; the union is refilled as a sector.
    Sector,
    /// The neighbour was a lens or a semi-lens on the same side.
    Absorbed,
    /// The neighbour was a semi-lens on the other side; together they close a lens.
    ClosedLens,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MergeStep {
    pub case: MergeCase,
    pub chord: Edge,
    pub semi_lenses_left: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Merged {
    pub combi: Combi,
    pub steps: Vec<MergeStep>,
}

fn splice(path: &[SubsetWord], a: SubsetWord, b: SubsetWord, inner: &[SubsetWord]) -> Option<Vec<SubsetWord>> {
    let p = path.windows(2).position(|w| w[0] == a && w[1] == b)?;
    let mut out = path[..=p].to_vec();
    out.extend_from_slice(&inner[1..inner.len() - 1]);
    out.extend_from_slice(&path[p + 1..]);
    Some(out)
}

fn ends(path: &[SubsetWord]) -> Edge {
    (path[0], path[path.len() - 1])
}

/// Removes the chord of `lam` shared with `tau` and re-tiles the union.
fn combine(lam: &QuasiTile, tau: &QuasiTile) -> Result<(Vec<QuasiTile>, MergeCase)> {
    let fail = || quasi(format!("cannot merge {} with {}", lam.label(), tau.label()));
    match (lam, tau) {
        (QuasiTile::LowerSemiLens { lower: p }, _) => {
            let (l, r) = ends(p);
            match tau {
                QuasiTile::Delta { tile, .. } if tile.base() == (l, r) => {
                    let fill = p
                        .windows(2)
                        .map(|w| {
                            DeltaTile::new(tile.apex(), w[0], w[1]).map(|t| QuasiTile::Delta {
                                tile: t,
                                secondary: false,
                            })
                        })
                        .collect::<Result<_>>()?;
                    Ok((fill, MergeCase::Sector))
                }
                QuasiTile::Lens { lens, secondary } => {
                    let lower = splice(lens.lower(), l, r, p).ok_or_else(fail)?;
                    let lens = Lens::new(lens.upper().to_vec(), lower)?;
                    Ok((vec![QuasiTile::Lens { lens, secondary: *secondary }], MergeCase::Absorbed))
                }
                QuasiTile::LowerSemiLens { lower } => {
                    let lower = splice(lower, l, r, p).ok_or_else(fail)?;
                    Ok((vec![QuasiTile::LowerSemiLens { lower }], MergeCase::Absorbed))
                }
                QuasiTile::UpperSemiLens { upper } if ends(upper) == (l, r) => {
                    let lens = Lens::new(upper.clone(), p.clone())?;
                    Ok((vec![QuasiTile::Lens { lens, secondary: false }], MergeCase::ClosedLens))
                }
                _ => Err(fail()),
            }
        }
        (QuasiTile::UpperSemiLens { upper: p }, _) => {
            let (l, r) = ends(p);
            match tau {
                QuasiTile::Nabla { tile, .. } if tile.base() == (l, r) => {
                    let fill = p
                        .windows(2)
                        .map(|w| {
                            NablaTile::new(tile.bottom(), w[0], w[1]).map(|t| QuasiTile::Nabla {
                                tile: t,
                                secondary: false,
                            })
                        })
                        .collect::<Result<_>>()?;
                    Ok((fill, MergeCase::Sector))
                }
                QuasiTile::Lens { lens, secondary } => {
                    let upper = splice(lens.upper(), l, r, p).ok_or_else(fail)?;
                    let lens = Lens::new(upper, lens.lower().to_vec())?;
                    Ok((vec![QuasiTile::Lens { lens, secondary: *secondary }], MergeCase::Absorbed))
                }
                QuasiTile::UpperSemiLens { upper } => {
                    let upper = splice(upper, l, r, p).ok_or_else(fail)?;
                    Ok((vec![QuasiTile::UpperSemiLens { upper }], MergeCase::Absorbed))
                }
                QuasiTile::LowerSemiLens { lower } if ends(lower) == (l, r) => {
                    let lens = Lens::new(p.clone(), lower.clone())?;
                    Ok((vec![QuasiTile::Lens { lens, secondary: false }], MergeCase::ClosedLens))
                }
                _ => Err(fail()),
            }
        }
        _ => Err(fail()),
    }
}

/// Glues the inside half of one split to the outside half of another and
/// removes semi-lenses one at a time until a combi remains.
pub fn merge_repair(a: &QuasiCombi, b: &QuasiCombi) -> Result<Merged> {
    if a.ground != b.ground {
        return Err(quasi("halves live on different zonogons"));
    }
    if a.pattern != b.pattern {
        return Err(quasi("halves were cut along different patterns"));
    }
    let regions = [a.region, b.region];
    if !regions.contains(&QuasiRegion::Inside) || !regions.contains(&QuasiRegion::Outside) {
        return Err(quasi("need one inside half and one outside half"));
    }
    let g = Generators::default_for(a.n())?;
    let mut tiles: Vec<QuasiTile> = a.tiles.iter().chain(&b.tiles).cloned().collect();
    tiles.sort();
    check_cover(&g, &tiles).map_err(|e| quasi(format!("incompatible boundary data: {e}")))?;
    let mut steps = Vec::new();
    while let Some(i) = tiles.iter().position(|t| t.is_semi_lens()) {
        let lam = tiles.remove(i);
        let (l, r) = match &lam {
            QuasiTile::UpperSemiLens { upper } => ends(upper),
            QuasiTile::LowerSemiLens { lower } => ends(lower),
            _ => unreachable!(),
        };
        let want = if matches!(lam, QuasiTile::LowerSemiLens { .. }) {
            (l, r)
        } else {
            (r, l)
        };
        let j = tiles
            .iter()
            .position(|t| cycle_edges(&t.cycle()).any(|e| e == want))
            .ok_or_else(|| quasi(format!("chord {l}-{r} of {} borders no tile", lam.label())))?;
        let tau = tiles.remove(j);
        let (fresh, case) = combine(&lam, &tau)?;
        tiles.extend(fresh);
        tiles.sort();
        steps.push(MergeStep {
            case,
            chord: (l, r),
            semi_lenses_left: tiles.iter().filter(|t| t.is_semi_lens()).count(),
        });
    }
    let (mut deltas, mut nablas, mut lenses) = (BTreeSet::new(), BTreeSet::new(), BTreeSet::new());
    for t in tiles {
        let fresh = match t {
            QuasiTile::Delta { tile, .. } => deltas.insert(tile),
            QuasiTile::Nabla { tile, .. } => nablas.insert(tile),
            QuasiTile::Lens { lens, .. } => lenses.insert(lens),
            _ => unreachable!(),
        };
        if !fresh {
            return Err(quasi("repair produced a repeated tile"));
        }
    }
    Ok(Merged {
        combi: Combi::new(a.ground, deltas, nablas, lenses)?,
        steps,
    })
}

/// Ways in which two vertices `Xi, Xj` of a combi sit next to each other.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairWitness {
    /// `X` is a vertex.
    Meet,
    /// `Xij` is a vertex.
    Join,
    /// Both lie on the lower boundary of one lens.
    LowerBoundary,
    /// Both lie on the upper boundary of one lens.
    UpperBoundary,
}

pub fn pair_witnesses(k: &Combi, a: SubsetWord, b: SubsetWord) -> Result<Vec<PairWitness>> {
    let v = spectrum(k);
    if !v.contains(a) || !v.contains(b) || step_kind(a, b) != Some(StepKind::TwoDistance) {
        return Err(Error::Hypothesis(format!(
            "{a} and {b} must be vertices differing in one exchanged element"
        )));
    }
    let mut out = Vec::new();
    if v.contains(a.intersection(b)) {
        out.push(PairWitness::Meet);
    }
    if v.contains(a.union(b)) {
        out.push(PairWitness::Join);
    }
    let both = |side: &[SubsetWord]| side.contains(&a) && side.contains(&b);
    if k.lenses().iter().any(|l| both(l.lower())) {
        out.push(PairWitness::LowerBoundary);
    }
    if k.lenses().iter().any(|l| both(l.upper())) {
        out.push(PairWitness::UpperBoundary);
    }
    Ok(out)
}

//! The `n`-strip of a combi, `n`-contraction to `Z_{n-1}`, and `n`-expansion
//! along a legal path. Type-1 versions go through the mirror image.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::combi::{spectrum, Combi, DeltaTile, Lens, NablaTile};
use crate::error::{Error, Result};
use crate::geometry::boundary_vertices;
use crate::planar::Edge;
use crate::subset::{GroundSize, SetFamily, SubsetWord};

/// A tile of any of the three sorts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AnyTile {
    Delta(DeltaTile),
    Nabla(NablaTile),
    Lens(Lens),
}

impl AnyTile {
    pub fn cycle(&self) -> Vec<SubsetWord> {
        match self {
            AnyTile::Delta(d) => d.cycle(),
            AnyTile::Nabla(t) => t.cycle(),
            AnyTile::Lens(l) => l.cycle(),
        }
    }

    fn edges(&self) -> Vec<Edge> {
        let c = self.cycle();
        (0..c.len()).map(|i| (c[i], c[(i + 1) % c.len()])).collect()
    }
}

impl std::fmt::Display for AnyTile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AnyTile::Delta(d) => d.fmt(f),
            AnyTile::Nabla(t) => t.fmt(f),
            AnyTile::Lens(l) => l.fmt(f),
        }
    }
}

fn all_tiles(k: &Combi) -> Vec<AnyTile> {
    k.deltas()
        .iter()
        .map(|d| AnyTile::Delta(*d))
        .chain(k.nablas().iter().map(|t| AnyTile::Nabla(*t)))
        .chain(k.lenses().iter().map(|l| AnyTile::Lens(l.clone())))
        .collect()
}

fn from_tiles(ground: GroundSize, tiles: impl IntoIterator<Item = AnyTile>) -> Result<Combi> {
    let (mut deltas, mut nablas, mut lenses) = (BTreeSet::new(), BTreeSet::new(), BTreeSet::new());
    for t in tiles {
        match t {
            AnyTile::Delta(d) => deltas.insert(d),
            AnyTile::Nabla(t) => nablas.insert(t),
            AnyTile::Lens(l) => lenses.insert(l),
        };
    }
    Combi::new(ground, deltas, nablas, lenses)
}

/// The chain of type-`∗n` tiles crossing the combi from bottom to top.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NStrip {
    pub tiles: Vec<AnyTile>,
    /// From `∅` to `[n-1]`.
    pub left: Vec<SubsetWord>,
    /// From `{n}` to `[n]`.
    pub right: Vec<SubsetWord>,
}

fn in_strip(t: &AnyTile, n: usize) -> bool {
    match t {
        AnyTile::Delta(d) => d.types().1 == n,
        AnyTile::Nabla(t) => t.types().1 == n,
        AnyTile::Lens(l) => l.types().1 == n,
    }
}

fn entry_exit(t: &AnyTile) -> (Edge, Edge) {
    match t {
        AnyTile::Nabla(t) => ((t.bottom(), t.base().1), t.base()),
        AnyTile::Delta(d) => (d.base(), (d.base().0, d.apex())),
        AnyTile::Lens(l) => {
            let (u, lo) = (l.upper(), l.lower());
            ((lo[0], lo[1]), (u[u.len() - 2], u[u.len() - 1]))
        }
    }
}

fn push_path(path: &mut Vec<SubsetWord>, vs: impl IntoIterator<Item = SubsetWord>) {
    for v in vs {
        if path.last() != Some(&v) {
            path.push(v);
        }
    }
}

/// Walks the `n`-strip from the first edge of the right boundary.
pub fn extract_n_strip(k: &Combi) -> Result<NStrip> {
    let n = k.n();
    if n < 2 {
        return Err(Error::NotAPath("the strip needs n >= 2".into()));
    }
    let members: Vec<AnyTile> = all_tiles(k).into_iter().filter(|t| in_strip(t, n)).collect();
    let by_entry: HashMap<Edge, &AnyTile> = members.iter().map(|t| (entry_exit(t).0, t)).collect();
    let last = (SubsetWord::full(n - 1), SubsetWord::full(n));
    let mut at = (SubsetWord::EMPTY, SubsetWord::singleton(n));
    let mut tiles = Vec::new();
    let (mut left, mut right) = (Vec::new(), Vec::new());
    loop {
        let t = *by_entry.get(&at).ok_or_else(|| {
            Error::tiling("strip", format!("no type-*{n} tile is entered through {}->{}", at.0, at.1))
        })?;
        if tiles.len() >= members.len() {
            return Err(Error::tiling("strip", "the strip revisits a tile"));
        }
        tiles.push(t.clone());
        match t {
            AnyTile::Nabla(t) => {
                push_path(&mut left, [t.bottom(), t.base().0]);
                push_path(&mut right, [t.base().1]);
            }
            AnyTile::Delta(d) => {
                push_path(&mut left, [d.base().0]);
                push_path(&mut right, [d.base().1, d.apex()]);
            }
            AnyTile::Lens(l) => {
                push_path(&mut left, l.upper()[..l.upper().len() - 1].iter().copied());
                push_path(&mut right, l.lower()[1..].iter().copied());
            }
        }
        at = entry_exit(t).1;
        if at == last {
            break;
        }
    }
    if tiles.len() != members.len() {
        return Err(Error::tiling(
            "strip",
            format!("the strip holds {} of {} type-*{n} tiles", tiles.len(), members.len()),
        ));
    }
    Ok(NStrip { tiles, left, right })
}

/// A vertex sequence from `∅` to `[n]` through V-edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LegalPath {
    pub vertices: Vec<SubsetWord>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexKind {
    Start,
    End,
    Slope,
    Peak,
    Pit,
}

impl LegalPath {
    pub fn new(vertices: Vec<SubsetWord>) -> Self {
        LegalPath { vertices }
    }

    /// Kind of every vertex, assuming the path obeys the no-double-descent rule.
    pub fn kinds(&self) -> Vec<VertexKind> {
        let v = &self.vertices;
        (0..v.len())
            .map(|d| {
                if d == 0 {
                    VertexKind::Start
                } else if d + 1 == v.len() {
                    VertexKind::End
                } else {
                    let (a, b, c) = (v[d - 1].len(), v[d].len(), v[d + 1].len());
                    match (a < b, b < c) {
                        (true, true) | (false, false) => VertexKind::Slope,
                        (true, false) => VertexKind::Peak,
                        (false, true) => VertexKind::Pit,
                    }
                }
            })
            .collect()
    }

    fn mirrored(&self, n: usize) -> Self {
        LegalPath::new(self.vertices.iter().map(|x| x.reversed(n)).collect())
    }
}

fn zigzag_ok(prev: SubsetWord, mid: SubsetWord, next: SubsetWord) -> bool {
    if prev.len() != next.len() || prev.len() == mid.len() {
        return true;
    }
    if mid.len() > prev.len() {
        mid.difference(prev).sole() > mid.difference(next).sole()
    } else {
        prev.difference(mid).sole() < next.difference(mid).sole()
    }
}

/// Checks (P1)-(P3) and simplicity, naming the first broken rule.
pub fn check_legal_path(k: &Combi, p: &LegalPath) -> Result<()> {
    let n = k.n();
    let v = &p.vertices;
    let illegal = |rule, position| Err(Error::IllegalPath { rule, position });
    if v.first() != Some(&SubsetWord::EMPTY) {
        return illegal("P1", 0);
    }
    if v.last() != Some(&SubsetWord::full(n)) {
        return illegal("P1", v.len().saturating_sub(1));
    }
    let edges = k.v_edges();
    for (d, w) in v.windows(2).enumerate() {
        if !edges.contains(&(w[0], w[1])) && !edges.contains(&(w[1], w[0])) {
            return Err(Error::NotAPath(format!("{}->{} at step {} is not a V-edge", w[0], w[1], d + 1)));
        }
    }
    let mut seen = HashSet::new();
    for (d, x) in v.iter().enumerate() {
        if !seen.insert(*x) {
            return illegal("simple", d);
        }
        if d == 0 || d + 1 == v.len() {
            continue;
        }
        let (a, b, c) = (v[d - 1], *x, v[d + 1]);
        if a.len() > b.len() && b.len() > c.len() {
            return illegal("P2", d);
        }
        if !zigzag_ok(a, b, c) {
            return illegal("P3", d);
        }
    }
    Ok(())
}

pub fn is_legal_path(k: &Combi, p: &LegalPath) -> bool {
    check_legal_path(k, p).is_ok()
}

/// Every legal path, in depth-first order over ascending neighbours.
pub fn enumerate_legal_paths(k: &Combi) -> Vec<LegalPath> {
    let n = k.n();
    let mut up: HashMap<SubsetWord, Vec<SubsetWord>> = HashMap::new();
    let mut down: HashMap<SubsetWord, Vec<SubsetWord>> = HashMap::new();
    for (a, b) in k.v_edges() {
        up.entry(a).or_default().push(b);
        down.entry(b).or_default().push(a);
    }
    let top = SubsetWord::full(n);
    let mut out = Vec::new();
    let mut path = vec![SubsetWord::EMPTY];
    let mut seen: HashSet<SubsetWord> = HashSet::from([SubsetWord::EMPTY]);
    fn go(
        path: &mut Vec<SubsetWord>,
        seen: &mut HashSet<SubsetWord>,
        up: &HashMap<SubsetWord, Vec<SubsetWord>>,
        down: &HashMap<SubsetWord, Vec<SubsetWord>>,
        top: SubsetWord,
        out: &mut Vec<LegalPath>,
    ) {
        let at = *path.last().unwrap();
        if at == top {
            out.push(LegalPath::new(path.clone()));
            return;
        }
        let prev = path.len().checked_sub(2).map(|i| path[i]);
        let fell = prev.is_some_and(|p| p.len() > at.len());
        let mut next: Vec<SubsetWord> = up.get(&at).cloned().unwrap_or_default();
        if !fell {
            next.extend(down.get(&at).cloned().unwrap_or_default());
        }
        next.sort();
        for y in next {
            if seen.contains(&y) || prev.is_some_and(|p| !zigzag_ok(p, at, y)) {
                continue;
            }
            seen.insert(y);
            path.push(y);
            go(path, seen, up, down, top, out);
            path.pop();
            seen.remove(&y);
        }
    }
    go(&mut path, &mut seen, &up, &down, top, &mut out);
    out
}

/// Contracts the `n`-strip, returning the combi on `Z_{n-1}` and the image
/// of the strip as a legal path.
pub fn n_contract(k: &Combi) -> Result<(Combi, LegalPath)> {
    let n = k.n();
    let strip = extract_n_strip(k)?;
    let ground = GroundSize::new(n - 1)?;
    let drop_n = |x: SubsetWord| x.without(n);
    let mut tiles = Vec::new();
    for t in all_tiles(k) {
        if in_strip(&t, n) {
            continue;
        }
        let c = t.cycle();
        if c.iter().all(|x| !x.contains(n)) {
            tiles.push(t);
        } else if c.iter().all(|x| x.contains(n)) {
            tiles.push(match t {
                AnyTile::Delta(d) => {
                    AnyTile::Delta(DeltaTile::new(drop_n(d.apex()), drop_n(d.base().0), drop_n(d.base().1))?)
                }
                AnyTile::Nabla(t) => {
                    AnyTile::Nabla(NablaTile::new(drop_n(t.bottom()), drop_n(t.base().0), drop_n(t.base().1))?)
                }
                AnyTile::Lens(l) => AnyTile::Lens(Lens::new(
                    l.upper().iter().map(|&x| drop_n(x)).collect(),
                    l.lower().iter().map(|&x| drop_n(x)).collect(),
                )?),
            });
        } else {
            return Err(Error::tiling("strip", format!("{t} straddles the strip")));
        }
    }
    let mut path = Vec::new();
    for t in &strip.tiles {
        match t {
            AnyTile::Nabla(t) => push_path(&mut path, [t.bottom(), t.base().0]),
            AnyTile::Delta(d) => push_path(&mut path, [d.base().0]),
            AnyTile::Lens(l) => {
                let (u, lo) = (l.upper(), l.lower());
                let x0 = u[0];
                let center = drop_n(*lo.last().unwrap());
                let shifted: Vec<SubsetWord> = lo[1..].iter().map(|&y| drop_n(y)).collect();
                for w in shifted.windows(2) {
                    tiles.push(AnyTile::Delta(DeltaTile::new(x0, w[0], w[1])?));
                }
                for w in u[..u.len() - 1].windows(2) {
                    tiles.push(AnyTile::Nabla(NablaTile::new(center, w[0], w[1])?));
                }
                push_path(&mut path, [x0, center, u[u.len() - 2]]);
            }
        }
    }
    push_path(&mut path, [SubsetWord::full(n - 1)]);
    let contracted = from_tiles(ground, tiles)?;
    let p = LegalPath::new(path);
    check_legal_path(&contracted, &p)?;
    Ok((contracted, p))
}

/// Splits the tiles into those left of `p` (`true`) and right of it.
fn split_sides(k: &Combi, tiles: &[AnyTile], p: &LegalPath) -> Vec<bool> {
    let undirected = |(a, b): Edge| if a < b { (a, b) } else { (b, a) };
    let on_p: HashSet<Edge> = p.vertices.windows(2).map(|w| undirected((w[0], w[1]))).collect();
    let mut by_edge: HashMap<Edge, Vec<usize>> = HashMap::new();
    for (i, t) in tiles.iter().enumerate() {
        for e in t.edges() {
            by_edge.entry(undirected(e)).or_default().push(i);
        }
    }
    let (lbd, _) = boundary_vertices(k.n());
    let mut left = vec![false; tiles.len()];
    let mut queue: VecDeque<usize> = VecDeque::new();
    for w in lbd.windows(2) {
        let e = undirected((w[0], w[1]));
        if !on_p.contains(&e) {
            for &i in &by_edge[&e] {
                if !left[i] {
                    left[i] = true;
                    queue.push_back(i);
                }
            }
        }
    }
    while let Some(i) = queue.pop_front() {
        for e in tiles[i].edges() {
            let e = undirected(e);
            if on_p.contains(&e) {
                continue;
            }
            for &j in &by_edge[&e] {
                if !left[j] {
                    left[j] = true;
                    queue.push_back(j);
                }
            }
        }
    }
    left
}

/// ∇-fan above `pit` from `a` to `b`.
fn pit_filling(k: &Combi, verts: &SetFamily, pit: SubsetWord, a: SubsetWord, b: SubsetWord) -> Result<Vec<NablaTile>> {
    let (i, j) = (a.difference(pit).sole().unwrap(), b.difference(pit).sole().unwrap());
    let fan: Vec<SubsetWord> = (i..=j)
        .filter(|&m| !pit.contains(m))
        .map(|m| pit.with(m))
        .filter(|x| verts.contains(*x))
        .collect();
    fan
        .windows(2)
        .map(|w| {
            let t = NablaTile::new(pit, w[0], w[1])?;
            k.nablas()
                .contains(&t)
                .then_some(t)
                .ok_or_else(|| Error::tiling("filling", format!("pit filling tile {t} is absent")))
        })
        .collect()
}

/// Δ-fan below `peak` from `a` to `b`.
fn peak_filling(k: &Combi, verts: &SetFamily, peak: SubsetWord, a: SubsetWord, b: SubsetWord) -> Result<Vec<DeltaTile>> {
    let (i, j) = (peak.difference(a).sole().unwrap(), peak.difference(b).sole().unwrap());
    let fan: Vec<SubsetWord> = (j..=i)
        .rev()
        .filter(|&m| peak.contains(m))
        .map(|m| peak.without(m))
        .filter(|x| verts.contains(*x))
        .collect();
    fan
        .windows(2)
        .map(|w| {
            let t = DeltaTile::new(peak, w[0], w[1])?;
            k.deltas()
                .contains(&t)
                .then_some(t)
                .ok_or_else(|| Error::tiling("filling", format!("peak filling tile {t} is absent")))
        })
        .collect()
}

/// Expands `k` on `Z_{n-1}` along the legal path `p` into a combi on `Z_n`.
pub fn n_expand(k: &Combi, p: &LegalPath) -> Result<Combi> {
    check_legal_path(k, p)?;
    let n = k.n() + 1;
    let ground = GroundSize::new(n)?;
    let v = &p.vertices;
    let kinds = p.kinds();
    let add_n = |x: SubsetWord| x.with(n);
    let verts = spectrum(k);
    let mut dropped: HashSet<AnyTile> = HashSet::new();
    let mut new_tiles = Vec::new();
    for d in 1..v.len() - 1 {
        match kinds[d] {
            VertexKind::Pit => {
                dropped.extend(pit_filling(k, &verts, v[d], v[d - 1], v[d + 1])?.into_iter().map(AnyTile::Nabla));
            }
            VertexKind::Peak => {
                dropped.extend(peak_filling(k, &verts, v[d], v[d - 1], v[d + 1])?.into_iter().map(AnyTile::Delta));
            }
            VertexKind::Slope => {
                new_tiles.push(AnyTile::Nabla(NablaTile::new(v[d], v[d + 1], add_n(v[d]))?));
                new_tiles.push(AnyTile::Delta(DeltaTile::new(add_n(v[d]), v[d], add_n(v[d - 1]))?));
            }
            _ => {}
        }
    }
    let m = v.len() - 1;
    new_tiles.push(AnyTile::Nabla(NablaTile::new(v[0], v[1], add_n(v[0]))?));
    new_tiles.push(AnyTile::Delta(DeltaTile::new(add_n(v[m]), v[m], add_n(v[m - 1]))?));
    for d in 2..m {
        if v[d - 1].len() > v[d].len() {
            let peak: Vec<SubsetWord> = peak_filling(k, &verts, v[d - 1], v[d - 2], v[d])?
                .iter()
                .flat_map(|t| [t.base().0, t.base().1])
                .collect();
            let pit: Vec<SubsetWord> = pit_filling(k, &verts, v[d], v[d - 1], v[d + 1])?
                .iter()
                .flat_map(|t| [t.base().0, t.base().1])
                .collect();
            let mut upper = Vec::new();
            push_path(&mut upper, pit);
            upper.push(add_n(v[d]));
            let mut lower = vec![v[d - 1]];
            push_path(&mut lower, peak.into_iter().map(add_n));
            new_tiles.push(AnyTile::Lens(Lens::new(upper, lower)?));
        }
    }
    let tiles = all_tiles(k);
    let left = split_sides(k, &tiles, p);
    let mut out = new_tiles;
    for (t, is_left) in tiles.into_iter().zip(left) {
        if dropped.contains(&t) {
            continue;
        }
        if is_left {
            out.push(t);
        } else {
            out.push(match t {
                AnyTile::Delta(d) => AnyTile::Delta(DeltaTile::new(add_n(d.apex()), add_n(d.base().0), add_n(d.base().1))?),
                AnyTile::Nabla(t) => AnyTile::Nabla(NablaTile::new(add_n(t.bottom()), add_n(t.base().0), add_n(t.base().1))?),
                AnyTile::Lens(l) => AnyTile::Lens(Lens::new(
                    l.upper().iter().map(|&x| add_n(x)).collect(),
                    l.lower().iter().map(|&x| add_n(x)).collect(),
                )?),
            });
        }
    }
    from_tiles(ground, out)
}

/// Reflection in the vertical axis: element `i` becomes `n + 1 - i`.
pub fn mirror(k: &Combi) -> Combi {
    let n = k.n();
    let r = |x: SubsetWord| x.reversed(n);
    let rev = |p: &[SubsetWord]| p.iter().rev().map(|&x| r(x)).collect::<Vec<_>>();
    let tiles = all_tiles(k).into_iter().map(|t| match t {
        AnyTile::Delta(d) => AnyTile::Delta(DeltaTile::new(r(d.apex()), r(d.base().1), r(d.base().0)).unwrap()),
        AnyTile::Nabla(t) => AnyTile::Nabla(NablaTile::new(r(t.bottom()), r(t.base().1), r(t.base().0)).unwrap()),
        AnyTile::Lens(l) => AnyTile::Lens(Lens::new(rev(l.upper()), rev(l.lower())).unwrap()),
    });
    from_tiles(k.ground(), tiles).expect("the mirror image of a combi is a combi")
}

/// Contraction of the type-`1∗` strip; elements `2..n` are renamed `1..n-1`.
pub fn one_contract(k: &Combi) -> Result<(Combi, LegalPath)> {
    let (c, p) = n_contract(&mirror(k))?;
    let n1 = c.n();
    Ok((mirror(&c), p.mirrored(n1)))
}

/// Inverse of [`one_contract`].
pub fn one_expand(k: &Combi, p: &LegalPath) -> Result<Combi> {
    Ok(mirror(&n_expand(&mirror(k), &p.mirrored(k.n()))?))
}

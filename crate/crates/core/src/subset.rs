//! Subsets of the ground set `[n]`, set families and permutations.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::limits::HARD_MAX_N;

/// Size of the ground set `[n] = {1, ..., n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundSize(u8);

impl GroundSize {
    pub fn new(n: usize) -> Result<Self> {
        if (1..=HARD_MAX_N).contains(&n) {
            Ok(GroundSize(n as u8))
        } else {
            Err(Error::GroundSize(n, HARD_MAX_N))
        }
    }

    pub fn get(self) -> usize {
        self.0 as usize
    }

    pub fn full(self) -> SubsetWord {
        SubsetWord::full(self.get())
    }

    /// Every subset of `[n]`, ordered by mask.
    pub fn all_subsets(self) -> impl Iterator<Item = SubsetWord> {
        (0..(1u32 << self.get())).map(|m| SubsetWord(m as u16))
    }

    pub fn check(self, x: SubsetWord) -> Result<()> {
        match x.max() {
            m if m > self.get() => Err(Error::ElementOutOfRange {
                element: m,
                n: self.get(),
            }),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for GroundSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A subset of `[16]` stored as a bit mask; element `i` is bit `i - 1`.
///
/// The derived order compares masks as integers. It is a total order used
/// for canonical sorting only and carries no combinatorial meaning.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SubsetWord(u16);

impl SubsetWord {
    pub const EMPTY: SubsetWord = SubsetWord(0);

    pub const fn from_mask(mask: u16) -> Self {
        SubsetWord(mask)
    }

    pub const fn mask(self) -> u16 {
        self.0
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Result<Self> {
        let mut mask = 0u16;
        for e in elements {
            if e == 0 || e > HARD_MAX_N {
                return Err(Error::ElementOutOfRange {
                    element: e,
                    n: HARD_MAX_N,
                });
            }
            mask |= 1 << (e - 1);
        }
        Ok(SubsetWord(mask))
    }

    /// Panicking shorthand for literals in tests and examples.
    pub fn of(elements: &[usize]) -> Self {
        Self::from_elements(elements.iter().copied()).expect("element out of range")
    }

    pub fn singleton(i: usize) -> Self {
        debug_assert!((1..=HARD_MAX_N).contains(&i));
        SubsetWord(1 << (i - 1))
    }

    /// `[n]`.
    pub fn full(n: usize) -> Self {
        Self::interval(1, n)
    }

    /// `{a, a+1, ..., b}`; empty when `a > b`.
    pub fn interval(a: usize, b: usize) -> Self {
        if a > b || b == 0 {
            return Self::EMPTY;
        }
        let a = a.max(1);
        let hi: u32 = (1u32 << b) - 1;
        let lo: u32 = (1u32 << (a - 1)) - 1;
        SubsetWord((hi & !lo) as u16)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        (1..=HARD_MAX_N).contains(&i) && self.0 & (1 << (i - 1)) != 0
    }

    pub fn with(self, i: usize) -> Self {
        SubsetWord(self.0 | (1 << (i - 1)))
    }

    pub fn without(self, i: usize) -> Self {
        SubsetWord(self.0 & !(1 << (i - 1)))
    }

    pub fn union(self, o: Self) -> Self {
        SubsetWord(self.0 | o.0)
    }

    pub fn intersection(self, o: Self) -> Self {
        SubsetWord(self.0 & o.0)
    }

    pub fn difference(self, o: Self) -> Self {
        SubsetWord(self.0 & !o.0)
    }

    pub fn symmetric_difference(self, o: Self) -> Self {
        SubsetWord(self.0 ^ o.0)
    }

    pub fn is_subset(self, o: Self) -> bool {
        self.0 & !o.0 == 0
    }

    /// Smallest element, or 0 for the empty set.
    pub fn min(self) -> usize {
        if self.0 == 0 {
            0
        } else {
            self.0.trailing_zeros() as usize + 1
        }
    }

    /// Largest element, or 0 for the empty set.
    pub fn max(self) -> usize {
        16 - self.0.leading_zeros() as usize
    }

    pub fn complement(self, n: usize) -> Self {
        SubsetWord(!self.0 & Self::full(n).0)
    }

    /// Image under `i -> n + 1 - i`.
    pub fn reversed(self, n: usize) -> Self {
        let mut out = 0u16;
        for i in self.iter() {
            out |= 1 << (n - i);
        }
        SubsetWord(out)
    }

    /// Elements in increasing order.
    pub fn iter(self) -> Elements {
        Elements(self.0)
    }

    pub fn elements(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// The single element of a singleton, if it is one.
    pub fn sole(self) -> Option<usize> {
        (self.len() == 1).then(|| self.min())
    }

    /// Compact label: digits run together when every element is a single
    /// digit, otherwise comma separated; `∅` for the empty set.
    pub fn label(self) -> String {
        if self.is_empty() {
            return "∅".to_string();
        }
        let parts: Vec<String> = self.iter().map(|e| e.to_string()).collect();
        if self.max() <= 9 {
            parts.concat()
        } else {
            parts.join(",")
        }
    }
}

pub struct Elements(u16);

impl Iterator for Elements {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let t = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(t + 1)
    }
}

impl fmt::Debug for SubsetWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{{{}}}",
            self.elements()
                .iter()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

impl fmt::Display for SubsetWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl Serialize for SubsetWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.elements().serialize(s)
    }
}

impl<'de> Deserialize<'de> for SubsetWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        if v.windows(2).any(|w| w[0] >= w[1]) {
            return Err(serde::de::Error::custom(
                "subset elements must be strictly ascending",
            ));
        }
        SubsetWord::from_elements(v).map_err(serde::de::Error::custom)
    }
}

/// A duplicate-free family of subsets of `[n]`, kept sorted by mask.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetFamily {
    ground: GroundSize,
    members: Vec<SubsetWord>,
}

impl SetFamily {
    /// Rejects duplicates and out-of-range members.
    pub fn new(ground: GroundSize, members: Vec<SubsetWord>) -> Result<Self> {
        for &m in &members {
            ground.check(m)?;
        }
        let mut sorted = members;
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateMember(w[0]));
        }
        Ok(SetFamily {
            ground,
            members: sorted,
        })
    }

    /// Builds from any iterator, silently merging duplicates.
    pub fn collect<I: IntoIterator<Item = SubsetWord>>(ground: GroundSize, it: I) -> Result<Self> {
        let set: BTreeSet<SubsetWord> = it.into_iter().collect();
        Self::new(ground, set.into_iter().collect())
    }

    pub fn empty(ground: GroundSize) -> Self {
        SetFamily {
            ground,
            members: Vec::new(),
        }
    }

    pub fn hypercube(ground: GroundSize) -> Self {
        SetFamily {
            ground,
            members: ground.all_subsets().collect(),
        }
    }

    /// All intervals `[a..b]` of `[n]` together with `∅`.
    pub fn intervals(ground: GroundSize) -> Self {
        let n = ground.get();
        let mut v = vec![SubsetWord::EMPTY];
        for a in 1..=n {
            for b in a..=n {
                v.push(SubsetWord::interval(a, b));
            }
        }
        Self::collect(ground, v).expect("intervals are valid")
    }

    /// Complements of the intervals.
    pub fn co_intervals(ground: GroundSize) -> Self {
        let n = ground.get();
        Self::collect(
            ground,
            Self::intervals(ground).iter().map(|x| x.complement(n)),
        )
        .expect("co-intervals are valid")
    }

    pub fn ground(&self) -> GroundSize {
        self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.get()
    }

    pub fn members(&self) -> &[SubsetWord] {
        &self.members
    }

    pub fn into_members(self) -> Vec<SubsetWord> {
        self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: SubsetWord) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = SubsetWord> + '_ {
        self.members.iter().copied()
    }

    pub fn is_subfamily(&self, other: &SetFamily) -> bool {
        self.iter().all(|x| other.contains(x))
    }

    /// Returns a copy with `x` replaced by `y`.
    pub fn replaced(&self, x: SubsetWord, y: SubsetWord) -> Result<Self> {
        let v = self.iter().map(|m| if m == x { y } else { m }).collect();
        Self::new(self.ground, v)
    }

    pub fn union(&self, other: &SetFamily) -> Result<Self> {
        Self::collect(self.ground, self.iter().chain(other.iter()))
    }

    /// Sum of member cardinalities.
    pub fn size_sum(&self) -> usize {
        self.iter().map(|x| x.len()).sum()
    }
}

#[derive(Serialize, Deserialize)]
struct SetFamilyJson {
    n: usize,
    members: Vec<SubsetWord>,
}

impl Serialize for SetFamily {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SetFamilyJson {
            n: self.n(),
            members: self.members.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SetFamily {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = SetFamilyJson::deserialize(d)?;
        let g = GroundSize::new(j.n).map_err(serde::de::Error::custom)?;
        SetFamily::new(g, j.members).map_err(serde::de::Error::custom)
    }
}

/// A permutation of `[n]` given by its images `ω(1), ..., ω(n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        GroundSize::new(n).map_err(|_| Error::Permutation(format!("length {n} out of range")))?;
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v == 0 || v > n || seen[v] {
                return Err(Error::Permutation(format!(
                    "{images:?} is not a bijection on [{n}]"
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// The longest permutation `i -> n + 1 - i`.
    pub fn longest(n: usize) -> Self {
        Permutation {
            images: (1..=n).rev().collect(),
        }
    }

    /// Parses one-line notation such as `3241` (single digits only).
    pub fn parse_word(s: &str) -> Result<Self> {
        let images = s
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as usize)
                    .ok_or_else(|| Error::Permutation(format!("bad digit {c:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(images)
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    /// Pairs `i < j` with `ω(i) > ω(j)`.
    pub fn inversions(&self) -> BTreeSet<(usize, usize)> {
        let n = self.n();
        let mut out = BTreeSet::new();
        for i in 1..=n {
            for j in i + 1..=n {
                if self.apply(i) > self.apply(j) {
                    out.insert((i, j));
                }
            }
        }
        out
    }

    pub fn length(&self) -> usize {
        self.inversions().len()
    }

    /// All permutations of `[n]` in lexicographic order of image words.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (1..=n).collect();
        loop {
            out.push(Permutation {
                images: cur.clone(),
            });
            let Some(i) = (0..n.saturating_sub(1))
                .rev()
                .find(|&i| cur[i] < cur[i + 1])
            else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
        out
    }
}

impl fmt::Display for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.members.iter().map(|x| x.label()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.n() > 9 { "," } else { "" };
        let parts: Vec<String> = self.images.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(sep))
    }
}

#[derive(Serialize, Deserialize)]
struct PermutationJson {
    images: Vec<usize>,
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PermutationJson {
            images: self.images.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = PermutationJson::deserialize(d)?;
        Permutation::new(j.images).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn min_max_of_empty_are_zero() {
        assert_eq!(SubsetWord::EMPTY.min(), 0);
        assert_eq!(SubsetWord::EMPTY.max(), 0);
        assert_eq!(SubsetWord::of(&[2, 5]).min(), 2);
        assert_eq!(SubsetWord::of(&[2, 5]).max(), 5);
    }

    #[test]
    fn intervals_and_complements() {
        assert_eq!(SubsetWord::interval(2, 4), SubsetWord::of(&[2, 3, 4]));
        assert_eq!(SubsetWord::interval(3, 2), SubsetWord::EMPTY);
        assert_eq!(SubsetWord::full(16).len(), 16);
        assert_eq!(
            SubsetWord::of(&[1, 3]).complement(4),
            SubsetWord::of(&[2, 4])
        );
        assert_eq!(SubsetWord::of(&[1, 2]).reversed(5), SubsetWord::of(&[4, 5]));
        let g = GroundSize::new(3).unwrap();
        assert_eq!(SetFamily::intervals(g).len(), 7);
        assert_eq!(
            SetFamily::co_intervals(g).members(),
            SetFamily::collect(
                g,
                [&[][..], &[1], &[3], &[1, 2], &[1, 3], &[2, 3], &[1, 2, 3]]
                    .iter()
                    .map(|e| SubsetWord::of(e))
            )
            .unwrap()
            .members()
        );
    }

    #[test]
    fn labels() {
        assert_eq!(SubsetWord::EMPTY.label(), "∅");
        assert_eq!(SubsetWord::of(&[1, 3]).label(), "13");
        assert_eq!(SubsetWord::of(&[2, 10]).label(), "2,10");
    }

    #[test]
    fn ground_size_bounds() {
        assert!(GroundSize::new(0).is_err());
        assert!(GroundSize::new(17).is_err());
        let g = GroundSize::new(3).unwrap();
        assert!(g.check(SubsetWord::of(&[4])).is_err());
    }

    #[test]
    fn family_rejects_duplicates() {
        let g = GroundSize::new(3).unwrap();
        let x = SubsetWord::of(&[1]);
        assert!(matches!(
            SetFamily::new(g, vec![x, x]),
            Err(Error::DuplicateMember(_))
        ));
    }

    #[test]
    fn family_json_round_trip() {
        let g = GroundSize::new(3).unwrap();
        let f = SetFamily::intervals(g);
        let s = serde_json::to_string(&f).unwrap();
        assert!(s.starts_with("{\"n\":3,\"members\":[[],[1]"));
        let back: SetFamily = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
        assert!(serde_json::from_str::<SetFamily>("{\"n\":2,\"members\":[[3]]}").is_err());
        assert!(serde_json::from_str::<SetFamily>("{\"n\":3,\"members\":[[2,1]]}").is_err());
    }

    #[test]
    fn permutations() {
        assert!(Permutation::new(vec![1, 1]).is_err());
        let w = Permutation::parse_word("3241").unwrap();
        let inv: Vec<_> = w.inversions().into_iter().collect();
        assert_eq!(inv, vec![(1, 2), (1, 4), (2, 4), (3, 4)]);
        assert_eq!(Permutation::identity(4).length(), 0);
        assert_eq!(Permutation::longest(5).length(), 10);
        assert_eq!(Permutation::all(4).len(), 24);
        let p: Permutation = serde_json::from_str("{\"images\":[2,1,3]}").unwrap();
        assert_eq!(p.to_string(), "213");
    }
}

//! Cyclic patterns of pairwise separated sets, the closed curves they trace in
//! the zonogon, and the domains those curves cut out.

mod graph;
mod necklace;
mod quasi;
pub mod sampling;
mod touching;

pub use graph::{face_domains, verify_face_domains, FaceDomain, FaceReport, GraphPattern};
pub use necklace::{grassmann_necklace, Necklace};
pub use quasi::{
    cut_along, merge_repair, pair_witnesses, split_quasi, MergeCase, MergeStep, Merged,
    PairWitness, QuasiCombi, QuasiRegion, QuasiTile,
};

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::enumerate::{summarize_maximal, DomainSummary};
use crate::error::{Error, Result};
use crate::geometry::{locate_unchecked, Generators, Location, Polyline};
use crate::planar::Edge;
use crate::separation::{separated_from_all, Separation};
use crate::subset::{GroundSize, SetFamily, SubsetWord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepKind {
    OneDistance,
    TwoDistance,
}

/// How `{a, b}` may appear as a step: one element apart, or two apart with
/// equal sizes.
pub fn step_kind(a: SubsetWord, b: SubsetWord) -> Option<StepKind> {
    match a.symmetric_difference(b).len() {
        1 => Some(StepKind::OneDistance),
        2 if a.len() == b.len() => Some(StepKind::TwoDistance),
        _ => None,
    }
}

/// A cyclic sequence `S_1, ..., S_r = S_0` of subsets of `[n]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclicPattern {
    ground: GroundSize,
    cycle: Vec<SubsetWord>,
}

impl CyclicPattern {
    pub fn new(ground: GroundSize, cycle: Vec<SubsetWord>) -> Result<Self> {
        if cycle.len() < 3 {
            return Err(Error::Pattern(format!(
                "a cyclic pattern needs at least three sets, got {}",
                cycle.len()
            )));
        }
        for &x in &cycle {
            ground.check(x)?;
        }
        let p = CyclicPattern { ground, cycle };
        if let Some((t, (a, b))) = p.steps().enumerate().find(|(_, (a, b))| step_kind(*a, *b).is_none()) {
            return Err(Error::Pattern(format!(
                "step {t} from {a} to {b} is neither a 1-distance pair nor a 2-distance pair of equal sizes"
            )));
        }
        Ok(p)
    }

    pub fn ground(&self) -> GroundSize {
        self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.get()
    }

    pub fn cycle(&self) -> &[SubsetWord] {
        &self.cycle
    }

    pub fn len(&self) -> usize {
        self.cycle.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycle.is_empty()
    }

    /// The pairs `(S_{p-1}, S_p)`, the last one closing the cycle.
    pub fn steps(&self) -> impl Iterator<Item = Edge> + '_ {
        let r = self.cycle.len();
        (0..r).map(move |p| (self.cycle[p], self.cycle[(p + 1) % r]))
    }

    pub fn step_kinds(&self) -> Vec<StepKind> {
        self.steps().map(|(a, b)| step_kind(a, b).unwrap()).collect()
    }

    pub fn has_unit_steps_only(&self) -> bool {
        self.step_kinds().iter().all(|&k| k == StepKind::OneDistance)
    }

    pub fn has_distinct_members(&self) -> bool {
        self.members().len() == self.cycle.len()
    }

    pub fn members(&self) -> SetFamily {
        SetFamily::collect(self.ground, self.cycle.iter().copied()).unwrap()
    }

    /// The closed polygonal curve through the embedded sets.
    pub fn curve(&self, g: &Generators) -> Polyline {
        Polyline::closed(self.cycle.iter().map(|&x| g.embed(x)).collect())
    }
}

impl fmt::Display for CyclicPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.cycle.iter().map(|x| x.label()).collect();
        write!(f, "({})", labels.join(","))
    }
}

#[derive(Serialize, Deserialize)]
struct PatternJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    cycle: Vec<SubsetWord>,
}

impl Serialize for CyclicPattern {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PatternJson {
            n: Some(self.n()),
            cycle: self.cycle.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CyclicPattern {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = PatternJson::deserialize(d)?;
        let n = j
            .n
            .unwrap_or_else(|| j.cycle.iter().map(|x| SubsetWord::max(*x)).max().unwrap_or(0).max(1));
        let g = GroundSize::new(n).map_err(serde::de::Error::custom)?;
        CyclicPattern::new(g, j.cycle).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PatternClass {
    Simple,
    SemiSimple,
    GeneralizedOk,
    SelfCrossing,
}

/// Two steps of a pattern forming one of the forbidden configurations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ForbiddenQuadruple {
    pub condition: &'static str,
    pub first: Edge,
    pub second: Edge,
}

fn interleaved(i: usize, k: usize, j: usize, l: usize) -> bool {
    (i < j && j < k && k < l) || (j < i && i < l && l < k)
}

/// Checks the 2-distance step `e` against the step `f`.
fn violation(e: Edge, f: Edge) -> Option<&'static str> {
    let ((a, b), (c, d)) = (e, f);
    if step_kind(a, b) != Some(StepKind::TwoDistance) {
        return None;
    }
    let (lo, hi) = (a.intersection(b), a.union(b));
    let ik = hi.difference(lo);
    let (i, k) = (ik.min(), ik.max());
    match step_kind(c, d)? {
        StepKind::TwoDistance => {
            let (lo2, hi2) = (c.intersection(d), c.union(d));
            let jl = hi2.difference(lo2);
            if (lo2 == lo || hi2 == hi) && interleaved(i, k, jl.min(), jl.max()) {
                return Some("C3");
            }
        }
        StepKind::OneDistance => {
            let (small, big) = if c.len() < d.len() { (c, d) } else { (d, c) };
            let j = big.difference(small).min();
            if (small == lo || big == hi) && i < j && j < k {
                return Some("C4");
            }
        }
    }
    None
}

/// First pair of edges that forms a forbidden quadruple, if any.
pub fn forbidden_pair(edges: &[Edge]) -> Option<ForbiddenQuadruple> {
    for (p, &e) in edges.iter().enumerate() {
        for (q, &f) in edges.iter().enumerate() {
            if p == q {
                continue;
            }
            if let Some(condition) = violation(e, f) {
                return Some(ForbiddenQuadruple {
                    condition,
                    first: e,
                    second: f,
                });
            }
        }
    }
    None
}

pub fn forbidden_quadruple(s: &CyclicPattern) -> Option<ForbiddenQuadruple> {
    forbidden_pair(&s.steps().collect::<Vec<_>>())
}

fn first_inseparable(f: &SetFamily, relation: Separation) -> Option<Edge> {
    let m = f.members();
    m.iter().enumerate().find_map(|(p, &a)| {
        m[p + 1..]
            .iter()
            .find(|&&b| !relation.holds(a, b))
            .map(|&b| (a, b))
    })
}

fn check_generators(n: usize, g: &Generators) -> Result<()> {
    if g.n() != n {
        return Err(Error::Generators(format!(
            "{} generators given for a pattern on [{n}]",
            g.n()
        )));
    }
    Ok(())
}

/// Classifies a pattern, checking the quadruple conditions against the exact
/// self-intersection test of its curve.
pub fn classify_pattern(s: &CyclicPattern, g: &Generators) -> Result<PatternClass> {
    check_generators(s.n(), g)?;
    if let Some((a, b)) = first_inseparable(&s.members(), Separation::Weak) {
        return Err(Error::Pattern(format!(
            "(C2) fails: {a} and {b} are not weakly separated"
        )));
    }
    if !s.has_distinct_members() {
        return Ok(if touching::has_crossing(s, g) {
            PatternClass::SelfCrossing
        } else {
            PatternClass::SemiSimple
        });
    }
    let combinatorial = forbidden_quadruple(s);
    let geometric = s.curve(g).first_self_crossing();
    match (combinatorial, geometric) {
        (Some(_), Some(_)) => Ok(PatternClass::SelfCrossing),
        (None, None) if s.has_unit_steps_only() => Ok(PatternClass::Simple),
        (None, None) => Ok(PatternClass::GeneralizedOk),
        (Some(q), None) => Err(Error::Pattern(format!(
            "{s}: steps {:?} and {:?} violate ({}) yet the curve does not cross itself",
            q.first, q.second, q.condition
        ))),
        (None, Some((p, q))) => Err(Error::Pattern(format!(
            "{s}: segments {p} and {q} meet yet no forbidden quadruple exists"
        ))),
    }
}

/// Point location against the curve of a pattern that does not cross itself.
#[derive(Debug, Clone)]
pub struct Regions {
    class: PatternClass,
    curve: Polyline,
    g: Generators,
}

impl Regions {
    pub fn class(&self) -> PatternClass {
        self.class
    }

    pub fn curve(&self) -> &Polyline {
        &self.curve
    }

    pub fn locate(&self, x: SubsetWord) -> Location {
        locate_unchecked(self.g.embed(x), &self.curve)
    }
}

pub fn regions(s: &CyclicPattern, g: &Generators) -> Result<Regions> {
    let class = classify_pattern(s, g)?;
    if class == PatternClass::SelfCrossing {
        return Err(Error::SelfCrossing);
    }
    Ok(Regions {
        class,
        curve: s.curve(g),
        g: g.clone(),
    })
}

/// Sets separated from the whole pattern, split by the side of the curve
/// they lie on. Sets on the curve belong to both parts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Domains {
    pub relation: Separation,
    pub all: SetFamily,
    pub inside: SetFamily,
    pub outside: SetFamily,
}

pub fn domains(s: &CyclicPattern, g: &Generators) -> Result<Domains> {
    domains_with(s, g, Separation::Weak)
}

pub fn domains_with(s: &CyclicPattern, g: &Generators, relation: Separation) -> Result<Domains> {
    let members = s.members();
    if let Some((a, b)) = first_inseparable(&members, relation) {
        return Err(Error::Pattern(format!(
            "{a} and {b} are not {}ly separated",
            relation.name()
        )));
    }
    let r = regions(s, g)?;
    let ground = s.ground();
    let all: Vec<SubsetWord> = ground
        .all_subsets()
        .filter(|&x| separated_from_all(x, &members, relation))
        .collect();
    let pick = |avoid: Location| {
        SetFamily::collect(ground, all.iter().copied().filter(|&x| r.locate(x) != avoid)).unwrap()
    };
    Ok(Domains {
        relation,
        inside: pick(Location::Outside),
        outside: pick(Location::Inside),
        all: SetFamily::new(ground, all).unwrap(),
    })
}

/// Every member of `d` is separated from every member of `e`.
pub fn verify_complementary(d: &SetFamily, e: &SetFamily, relation: Separation) -> bool {
    d.iter().all(|x| e.iter().all(|y| relation.holds(x, y)))
}

pub fn verify_purity(d: &SetFamily, relation: Separation) -> Result<DomainSummary> {
    summarize_maximal(d, relation)
}

/// Everything checked about the two domains of one pattern.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PatternVerdict {
    pub class: PatternClass,
    pub relation: Separation,
    pub inside_size: usize,
    pub outside_size: usize,
    pub complementary: bool,
    pub inside: DomainSummary,
    pub outside: DomainSummary,
    /// For the strong relation: weak enumeration of the same domains.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inside_weak: Option<DomainSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub outside_weak: Option<DomainSummary>,
}

impl PatternVerdict {
    /// Complementary, both sides pure and, for the strong relation, weak
    /// and strong ranks equal on each side.
    pub fn holds(&self) -> bool {
        let same = |w: &Option<DomainSummary>, s: &DomainSummary| {
            w.as_ref().is_none_or(|w| w.pure && w.rank() == s.rank())
        };
        self.complementary
            && self.inside.pure
            && self.outside.pure
            && same(&self.inside_weak, &self.inside)
            && same(&self.outside_weak, &self.outside)
    }
}

pub fn verify_pattern(s: &CyclicPattern, g: &Generators, relation: Separation) -> Result<PatternVerdict> {
    let d = domains_with(s, g, relation)?;
    let weak = |f: &SetFamily| match relation {
        Separation::Strong => verify_purity(f, Separation::Weak).map(Some),
        Separation::Weak => Ok(None),
    };
    Ok(PatternVerdict {
        class: classify_pattern(s, g)?,
        relation,
        inside_size: d.inside.len(),
        outside_size: d.outside.len(),
        complementary: verify_complementary(&d.inside, &d.outside, relation),
        inside: verify_purity(&d.inside, relation)?,
        outside: verify_purity(&d.outside, relation)?,
        inside_weak: weak(&d.inside)?,
        outside_weak: weak(&d.outside)?,
    })
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::sampling::{all_separated_cycles, chord_over_spoke_pattern, crossing_pattern, random_combi, random_pattern};
    use super::*;
    use crate::combi::spectrum;
    use crate::enumerate::chamber_pair_domain;
    use crate::subset::Permutation;

    fn s(e: &[usize]) -> SubsetWord {
        SubsetWord::of(e)
    }

    fn pat(n: usize, c: &[&[usize]]) -> CyclicPattern {
        CyclicPattern::new(GroundSize::new(n).unwrap(), c.iter().map(|e| s(e)).collect()).unwrap()
    }

    fn gens(n: usize) -> Generators {
        Generators::default_for(n).unwrap()
    }

    fn z3_boundary() -> CyclicPattern {
        pat(3, &[&[], &[1], &[1, 2], &[1, 2, 3], &[2, 3], &[3]])
    }

    /// The pattern through `∅`, the prefixes of `lo`, `[n]` and the prefixes
    /// of `hi` taken downwards.
    fn prefix_cycle(lo: &Permutation, hi: &Permutation) -> CyclicPattern {
        let n = lo.n();
        let pre = |p: &Permutation, i: usize| SubsetWord::from_elements((1..=i).map(|j| p.apply(j))).unwrap();
        let mut c = vec![SubsetWord::EMPTY];
        c.extend((1..n).map(|i| pre(lo, i)));
        c.push(SubsetWord::full(n));
        c.extend((1..n).rev().map(|i| pre(hi, i)));
        CyclicPattern::new(GroundSize::new(n).unwrap(), c).unwrap()
    }

    fn inverse(p: &Permutation) -> Permutation {
        let mut v = vec![0; p.n()];
        for i in 1..=p.n() {
            v[p.apply(i) - 1] = i;
        }
        Permutation::new(v).unwrap()
    }

    #[test]
    fn zonogon_boundary_is_simple() {
        let p = z3_boundary();
        assert_eq!(classify_pattern(&p, &gens(3)).unwrap(), PatternClass::Simple);
        assert_eq!(p.to_string(), "(∅,1,12,123,23,3)");
    }

    #[test]
    fn interleaved_exchanges_cross() {
        let p = pat(4, &[&[1], &[3], &[2], &[4]]);
        assert_eq!(forbidden_quadruple(&p).unwrap().condition, "C3");
        assert_eq!(classify_pattern(&p, &gens(4)).unwrap(), PatternClass::SelfCrossing);
        assert!(matches!(regions(&p, &gens(4)), Err(Error::SelfCrossing)));
    }

    #[test]
    fn chord_over_a_spoke_crosses() {
        let p = pat(3, &[&[], &[1], &[3], &[2, 3], &[2]]);
        assert_eq!(forbidden_quadruple(&p).unwrap().condition, "C4");
        assert_eq!(classify_pattern(&p, &gens(3)).unwrap(), PatternClass::SelfCrossing);
    }

    #[test]
    fn bad_steps_and_short_cycles_are_rejected() {
        let g = GroundSize::new(3).unwrap();
        assert!(CyclicPattern::new(g, vec![s(&[]), s(&[1, 2]), s(&[1])]).is_err());
        assert!(CyclicPattern::new(g, vec![s(&[1]), s(&[2]), s(&[1, 3])]).is_err());
        assert!(CyclicPattern::new(g, vec![s(&[]), s(&[1])]).is_err());
        let p = pat(4, &[&[2], &[1, 2], &[1, 2, 3], &[1, 3], &[1, 3, 4], &[3, 4], &[4], &[]]);
        assert!(matches!(classify_pattern(&p, &gens(4)), Err(Error::Pattern(_))));
    }

    #[test]
    fn touching_at_a_repeated_set_is_semi_simple() {
        let lo = Permutation::parse_word("1324").unwrap();
        let hi = Permutation::parse_word("3142").unwrap();
        let p = prefix_cycle(&lo, &hi);
        assert!(!p.has_distinct_members());
        assert_eq!(classify_pattern(&p, &gens(4)).unwrap(), PatternClass::SemiSimple);
    }

    #[test]
    fn figure_eights_through_a_repeated_set() {
        let touch = pat(3, &[&[2], &[], &[1], &[2], &[1, 2], &[2, 3]]);
        assert_eq!(classify_pattern(&touch, &gens(3)).unwrap(), PatternClass::SemiSimple);
        let cross = pat(3, &[&[2], &[], &[1], &[2], &[3], &[2, 3]]);
        assert_eq!(classify_pattern(&cross, &gens(3)).unwrap(), PatternClass::SelfCrossing);
    }

    #[test]
    fn boundary_pattern_regions() {
        let p = z3_boundary();
        let r = regions(&p, &gens(3)).unwrap();
        for x in GroundSize::new(3).unwrap().all_subsets() {
            let loc = r.locate(x);
            if p.cycle().contains(&x) {
                assert_eq!(loc, Location::On);
            } else {
                assert_eq!(loc, Location::Inside);
            }
        }
        let d = domains(&p, &gens(3)).unwrap();
        assert_eq!(d.inside, SetFamily::hypercube(p.ground()));
        assert_eq!(d.outside, p.members());
        assert_eq!(d.all, d.inside);
    }

    #[test]
    fn empty_set_lies_outside_patterns_avoiding_it() {
        let p = pat(3, &[&[1], &[1, 2], &[2]]);
        let r = regions(&p, &gens(3)).unwrap();
        assert_eq!(r.locate(SubsetWord::EMPTY), Location::Outside);
        assert_eq!(r.locate(s(&[1, 2])), Location::On);
    }

    #[test]
    fn domains_cover_and_overlap_on_the_curve() {
        let lo = Permutation::parse_word("1324").unwrap();
        let hi = Permutation::parse_word("3241").unwrap();
        let p = prefix_cycle(&lo, &hi);
        let d = domains(&p, &gens(4)).unwrap();
        assert_eq!(d.inside.union(&d.outside).unwrap(), d.all);
        for x in p.cycle() {
            assert!(d.inside.contains(*x) && d.outside.contains(*x));
        }
    }

    #[test]
    fn chamber_pair_domain_is_cut_out_by_its_prefix_cycles() {
        for (a, b) in [("1324", "3241"), ("1324", "3142")] {
            let lo = Permutation::parse_word(a).unwrap();
            let hi = Permutation::parse_word(b).unwrap();
            let p = prefix_cycle(&lo, &hi);
            let d = domains(&p, &gens(4)).unwrap();
            assert_eq!(d.inside, chamber_pair_domain(&inverse(&lo), &inverse(&hi)).unwrap());
            assert!(verify_pattern(&p, &gens(4), Separation::Weak).unwrap().holds());
        }
    }

    #[test]
    fn regions_do_not_depend_on_the_generators() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let ground = GroundSize::new(5).unwrap();
        let mut checked = 0;
        while checked < 20 {
            let k = random_combi(ground, 40, &mut rng).unwrap();
            let Some(p) = random_pattern(&spectrum(&k), checked % 2 == 0, &mut rng) else {
                continue;
            };
            let gs: Vec<Generators> = (0..3).map(|v| Generators::variant(5, v).unwrap()).collect();
            let Ok(rs) = gs.iter().map(|g| regions(&p, g)).collect::<Result<Vec<_>>>() else {
                continue;
            };
            let d = domains(&p, &gs[0]).unwrap();
            for x in d.all.iter() {
                assert!(rs.iter().all(|r| r.locate(x) == rs[0].locate(x)), "{p} at {x}");
            }
            checked += 1;
        }
    }

    #[test]
    fn exhaustive_unit_cycles_in_the_cube_of_order_three() {
        let ground = GroundSize::new(3).unwrap();
        let g = gens(3);
        let cycles = all_separated_cycles(ground, true, Separation::Weak);
        assert!(!cycles.is_empty());
        for c in cycles {
            let p = CyclicPattern::new(ground, c).unwrap();
            assert_eq!(classify_pattern(&p, &g).unwrap(), PatternClass::Simple);
            assert!(verify_pattern(&p, &g, Separation::Weak).unwrap().holds(), "{p}");
        }
    }

    #[test]
    fn strong_analogue_on_the_cube_of_order_three() {
        let ground = GroundSize::new(3).unwrap();
        let g = gens(3);
        for c in all_separated_cycles(ground, true, Separation::Strong) {
            let p = CyclicPattern::new(ground, c).unwrap();
            let v = verify_pattern(&p, &g, Separation::Strong).unwrap();
            assert!(v.holds(), "{p}");
            assert_eq!(v.inside_weak.unwrap().rank(), v.inside.rank());
        }
    }

    #[test]
    fn strong_domains_need_a_strongly_separated_pattern() {
        let p = pat(3, &[&[1], &[1, 2], &[2], &[2, 3], &[3], &[1, 3]]);
        assert!(domains_with(&p, &gens(3), Separation::Strong).is_err());
    }

    #[test]
    fn empty_partner_is_complementary() {
        let f = SetFamily::hypercube(GroundSize::new(3).unwrap());
        assert!(verify_complementary(&f, &SetFamily::empty(f.ground()), Separation::Weak));
        let bad = SetFamily::new(f.ground(), vec![s(&[2])]).unwrap();
        let other = SetFamily::new(f.ground(), vec![s(&[1, 3])]).unwrap();
        assert!(!verify_complementary(&bad, &other, Separation::Weak));
    }

    #[test]
    fn constructed_violators_cross() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 4..=6 {
            let ground = GroundSize::new(n).unwrap();
            for _ in 0..10 {
                for p in [crossing_pattern(ground, &mut rng), chord_over_spoke_pattern(ground, &mut rng)] {
                    let p = p.unwrap();
                    assert_eq!(classify_pattern(&p, &gens(n)).unwrap(), PatternClass::SelfCrossing, "{p}");
                }
            }
        }
    }

    #[test]
    fn json_round_trip_and_inferred_ground() {
        let p = z3_boundary();
        let j = serde_json::to_string(&p).unwrap();
        assert_eq!(serde_json::from_str::<CyclicPattern>(&j).unwrap(), p);
        let q: CyclicPattern = serde_json::from_str(r#"{"cycle":[[],[1],[1,2],[2]]}"#).unwrap();
        assert_eq!(q.n(), 2);
        assert!(serde_json::from_str::<CyclicPattern>(r#"{"cycle":[[],[1,2],[2]]}"#).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn unit_cycles_in_combies_never_cross(seed in any::<u64>(), n in 2usize..=5) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let k = random_combi(GroundSize::new(n).unwrap(), 30, &mut rng).unwrap();
            if let Some(p) = random_pattern(&spectrum(&k), true, &mut rng) {
                prop_assert_eq!(classify_pattern(&p, &gens(n)).unwrap(), PatternClass::Simple);
            }
        }

        #[test]
        fn quadruple_test_agrees_with_the_curve(seed in any::<u64>(), n in 3usize..=5) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let k = random_combi(GroundSize::new(n).unwrap(), 30, &mut rng).unwrap();
            if let Some(p) = random_pattern(&spectrum(&k), false, &mut rng) {
                let class = classify_pattern(&p, &gens(n)).unwrap();
                prop_assert_eq!(class == PatternClass::SelfCrossing, forbidden_quadruple(&p).is_some());
            }
        }

        #[test]
        fn non_crossing_generalized_patterns_split_complementary(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let k = random_combi(GroundSize::new(4).unwrap(), 30, &mut rng).unwrap();
            if let Some(p) = random_pattern(&spectrum(&k), false, &mut rng) {
                if classify_pattern(&p, &gens(4)).unwrap() != PatternClass::SelfCrossing {
                    prop_assert!(verify_pattern(&p, &gens(4), Separation::Weak).unwrap().holds());
                }
            }
        }
    }
}

//! Grassmann necklaces read as generalized cyclic patterns.

use serde::Serialize;

use super::{forbidden_quadruple, CyclicPattern};
use crate::error::{Error, Result};
use crate::separation::{is_separated_family, Separation};
use crate::subset::{GroundSize, SubsetWord};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Necklace {
    pub pattern: CyclicPattern,
    /// The offset `c` under which `S_{i+1} - S_i = {i + c}` holds.
    pub offset: usize,
    pub level: usize,
}

fn element(n: usize, i: usize, c: usize) -> SubsetWord {
    SubsetWord::singleton((i - 1 + c) % n + 1)
}

fn satisfies(seq: &[SubsetWord], c: usize) -> bool {
    let n = seq.len();
    (1..=n).all(|i| seq[i % n].difference(seq[i - 1]) == element(n, i, c))
}

/// Validates `seq = (S_1, ..., S_n)` as a necklace in `Δ_n^m`: each next set
/// gains exactly the element `i + c` (taken mod `n`). With `offset = None`
/// every `c` in `0..n` is tried and the first that works is reported.
pub fn grassmann_necklace(ground: GroundSize, seq: Vec<SubsetWord>, offset: Option<usize>) -> Result<Necklace> {
    let n = ground.get();
    if seq.len() != n {
        return Err(Error::Pattern(format!("a necklace on [{n}] has {n} members, got {}", seq.len())));
    }
    let level = seq[0].len();
    if let Some(x) = seq.iter().find(|x| x.len() != level) {
        return Err(Error::Pattern(format!("{x} does not have size {level}")));
    }
    let candidates: Vec<usize> = match offset {
        Some(c) => vec![c % n],
        None => (0..n).collect(),
    };
    let Some(c) = candidates.into_iter().find(|&c| satisfies(&seq, c)) else {
        return Err(Error::Pattern(
            "the sequence gains the element i + c at step i for no tried offset c".into(),
        ));
    };
    let pattern = CyclicPattern::new(ground, seq)?;
    if !is_separated_family(&pattern.members(), Separation::Weak) {
        return Err(Error::Pattern("necklace members are not weakly separated".into()));
    }
    if let Some(q) = forbidden_quadruple(&pattern) {
        if q.condition == "C3" {
            return Err(Error::Pattern(format!(
                "steps {:?} and {:?} violate (C3)",
                q.first, q.second
            )));
        }
    }
    Ok(Necklace {
        pattern,
        offset: c,
        level,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::hypersimplex_domain;
    use crate::geometry::Generators;
    use crate::patterns::{classify_pattern, domains, verify_complementary, PatternClass};

    /// `{i, i+1, ..., i+m-1}` taken cyclically in `[n]`.
    fn window(n: usize, m: usize, i: usize) -> SubsetWord {
        SubsetWord::from_elements((0..m).map(|t| (i - 1 + t) % n + 1)).unwrap()
    }

    fn interval_necklace(n: usize, m: usize) -> Vec<SubsetWord> {
        (1..=n).map(|i| window(n, m, i)).collect()
    }

    #[test]
    fn interval_necklaces_validate_under_one_offset() {
        for (n, m) in [(4, 2), (5, 2), (5, 3), (6, 3)] {
            let g = GroundSize::new(n).unwrap();
            let seq = interval_necklace(n, m);
            let nk = grassmann_necklace(g, seq.clone(), None).unwrap();
            assert_eq!(nk.level, m);
            let ok: Vec<usize> = (0..n).filter(|&c| satisfies(&seq, c)).collect();
            assert_eq!(ok, vec![nk.offset]);
            assert_eq!(nk.offset, m);
            assert!(grassmann_necklace(g, seq, Some(nk.offset + 1)).is_err());
        }
    }

    #[test]
    fn two_element_jumps_are_rejected() {
        let g = GroundSize::new(4).unwrap();
        let seq = [&[1, 2][..], &[3, 4], &[1, 2], &[3, 4]].map(SubsetWord::of).to_vec();
        assert!(grassmann_necklace(g, seq, None).is_err());
        let uneven = [&[1][..], &[1, 2], &[2], &[3]].map(SubsetWord::of).to_vec();
        assert!(grassmann_necklace(g, uneven, None).is_err());
    }

    #[test]
    fn necklace_curves_do_not_cross_and_split_the_hypersimplex() {
        for (n, m) in [(4, 2), (5, 2), (5, 3)] {
            let g = GroundSize::new(n).unwrap();
            let gens = Generators::default_for(n).unwrap();
            let nk = grassmann_necklace(g, interval_necklace(n, m), None).unwrap();
            assert_ne!(classify_pattern(&nk.pattern, &gens).unwrap(), PatternClass::SelfCrossing);
            let d = domains(&nk.pattern, &gens).unwrap();
            let slice = hypersimplex_domain(n, m, m).unwrap();
            let outside: Vec<SubsetWord> = d.outside.iter().filter(|x| slice.contains(*x)).collect();
            let outside = crate::subset::SetFamily::new(g, outside).unwrap();
            assert!(verify_complementary(&d.inside, &outside, Separation::Weak));
        }
    }
}

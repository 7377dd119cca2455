//! Exhaustive enumeration of maximal separated collections inside a domain,
//! and the standard domains whose purity is known.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::clique::{Bits, CompatGraph};
use crate::error::{Error, Result};
use crate::limits::{guard_n, ENUMERATION_MAX_N, MAX_DOMAIN};
use crate::separation::Separation;
use crate::subset::{GroundSize, Permutation, SetFamily, SubsetWord};

/// Result of enumerating every maximal separated collection in a domain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DomainReport {
    pub domain: SetFamily,
    pub relation: Separation,
    pub maximal_collections: Vec<SetFamily>,
    pub pure: bool,
    pub ranks: Vec<usize>,
}

impl DomainReport {
    /// The common size of the maximal collections, when the domain is pure.
    pub fn rank(&self) -> Option<usize> {
        self.pure.then(|| self.ranks[0])
    }
}

/// Counts of maximal collections by size, without storing the collections.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DomainSummary {
    pub relation: Separation,
    pub domain_size: usize,
    pub collections: u64,
    /// Number of maximal collections of each size.
    pub by_size: BTreeMap<usize, u64>,
    pub pure: bool,
}

impl DomainSummary {
    pub fn ranks(&self) -> Vec<usize> {
        self.by_size.keys().copied().collect()
    }

    pub fn rank(&self) -> Option<usize> {
        self.pure.then(|| *self.by_size.keys().next().unwrap())
    }
}

fn check_domain(domain: &SetFamily) -> Result<()> {
    guard_n("enumeration", domain.n(), ENUMERATION_MAX_N)?;
    if domain.len() > MAX_DOMAIN {
        return Err(Error::ResourceGuard(format!(
            "domain has {} members, the clique search accepts at most {MAX_DOMAIN}",
            domain.len()
        )));
    }
    Ok(())
}

fn compat_graph(domain: &SetFamily, relation: Separation) -> CompatGraph {
    let m = domain.members();
    CompatGraph::new(m.len(), |u, v| relation.holds(m[u], m[v]))
}

fn to_family(domain: &SetFamily, clique: &Bits) -> SetFamily {
    let m = domain.members();
    SetFamily::new(domain.ground(), clique.iter().map(|i| m[i]).collect())
        .expect("subfamily of a valid family")
}

/// Lists all maximal separated collections contained in `domain`.
pub fn enumerate_maximal(domain: &SetFamily, relation: Separation) -> Result<DomainReport> {
    check_domain(domain)?;
    let g = compat_graph(domain, relation);
    let mut collections = Vec::new();
    g.for_each_maximal_clique(|c| {
        debug_assert!(g.is_maximal_clique(c));
        collections.push(to_family(domain, c));
    });
    collections.sort_by(|a, b| a.members().cmp(b.members()));
    let ranks: Vec<usize> = collections
        .iter()
        .map(|c| c.len())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    Ok(DomainReport {
        domain: domain.clone(),
        relation,
        pure: ranks.len() == 1,
        ranks,
        maximal_collections: collections,
    })
}

/// Like [`enumerate_maximal`] but only tallies sizes; suitable for domains
/// with very many maximal collections.
pub fn summarize_maximal(domain: &SetFamily, relation: Separation) -> Result<DomainSummary> {
    check_domain(domain)?;
    let g = compat_graph(domain, relation);
    let mut by_size = BTreeMap::new();
    let mut total = 0u64;
    g.for_each_maximal_clique(|c| {
        *by_size.entry(c.count()).or_insert(0u64) += 1;
        total += 1;
    });
    Ok(DomainSummary {
        relation,
        domain_size: domain.len(),
        collections: total,
        pure: by_size.len() == 1,
        by_size,
    })
}

/// Is `f` a separated collection that cannot be extended inside `domain`?
pub fn is_maximal_in(f: &SetFamily, domain: &SetFamily, relation: Separation) -> bool {
    f.is_subfamily(domain)
        && crate::separation::is_separated_family(f, relation)
        && domain
            .iter()
            .filter(|x| !f.contains(*x))
            .all(|x| !crate::separation::separated_from_all(x, f, relation))
}

/// Maximal w-collection test against the whole hypercube.
pub fn is_maximal_weak(f: &SetFamily) -> bool {
    is_maximal_in(f, &SetFamily::hypercube(f.ground()), Separation::Weak)
}

/// Maximal s-collection test against the whole hypercube.
pub fn is_maximal_strong(f: &SetFamily) -> bool {
    is_maximal_in(f, &SetFamily::hypercube(f.ground()), Separation::Strong)
}

fn is_chamber_set(x: SubsetWord, w: &Permutation) -> bool {
    let n = w.n();
    (1..=n).all(|j| !x.contains(j) || (1..j).all(|i| w.apply(i) > w.apply(j) || x.contains(i)))
}

/// The ω-chamber sets: `i < j`, `ω(i) < ω(j)` and `j ∈ X` force `i ∈ X`.
pub fn chamber_domain(w: &Permutation) -> SetFamily {
    let g = GroundSize::new(w.n()).expect("permutation length is a valid ground size");
    SetFamily::collect(g, g.all_subsets().filter(|&x| is_chamber_set(x, w))).unwrap()
}

/// ω-chamber sets that additionally satisfy: `i < j`, `ω'(i) > ω'(j)` and
/// `i ∈ X` force `j ∈ X`. Requires `Inv(ω') ⊆ Inv(ω)`.
pub fn chamber_pair_domain(w_lo: &Permutation, w: &Permutation) -> Result<SetFamily> {
    if w_lo.n() != w.n() {
        return Err(Error::Permutation(
            "permutations act on different ground sets".into(),
        ));
    }
    if !w_lo.inversions().is_subset(&w.inversions()) {
        return Err(Error::InversionsNotNested);
    }
    let g = GroundSize::new(w.n())?;
    let n = w.n();
    let members = g.all_subsets().filter(|&x| {
        is_chamber_set(x, w)
            && (1..=n).all(|i| {
                !x.contains(i)
                    || (i + 1..=n).all(|j| w_lo.apply(i) < w_lo.apply(j) || x.contains(j))
            })
    });
    SetFamily::collect(g, members)
}

/// `{X ⊆ [n] : lo <= |X| <= hi}`.
pub fn hypersimplex_domain(n: usize, lo: usize, hi: usize) -> Result<SetFamily> {
    let g = GroundSize::new(n)?;
    if lo > hi || hi > n {
        return Err(Error::HypersimplexBounds { n, lo, hi });
    }
    SetFamily::collect(g, g.all_subsets().filter(|x| (lo..=hi).contains(&x.len())))
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Known w-rank of the hypercube `2^[n]`.
pub fn hypercube_rank(n: usize) -> usize {
    n * (n + 1) / 2 + 1
}

/// Known w-rank of `hypersimplex_domain(n, lo, hi)`.
pub fn hypersimplex_rank(n: usize, lo: usize, hi: usize) -> usize {
    binomial(n + 1, 2) + 1 - binomial(n - hi + 1, 2) - binomial(lo + 1, 2)
}

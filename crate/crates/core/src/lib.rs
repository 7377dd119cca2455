//! Weakly and strongly separated set-systems together with their geometric
//! models on a zonogon: rhombus tilings, combined tilings, flips,
//! contraction/expansion and cyclic or graph pattern domains.

pub mod clique;
pub mod combi;
pub mod contraction;
pub mod enumerate;
pub mod error;
pub mod flips;
pub mod geometry;
pub mod limits;
pub mod patterns;
pub mod planar;
pub mod rhombus;
pub mod separation;
pub mod subset;
pub mod suite;

pub use enumerate::{
    chamber_domain, chamber_pair_domain, enumerate_maximal, hypersimplex_domain, summarize_maximal,
    DomainReport, DomainSummary,
};
pub use error::{Error, Result};
pub use separation::{
    base_relation, is_separated_family, strongly_separated, weakly_separated, BaseRelation,
    Separation,
};
pub use subset::{GroundSize, Permutation, SetFamily, SubsetWord};

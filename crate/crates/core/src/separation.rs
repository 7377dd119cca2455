//! The base relations on subsets and the two separation notions built on them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subset::{GroundSize, SetFamily, SubsetWord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BaseRelation {
    /// `A ≺ B`: `|A| <= |B|` and the i-th smallest elements satisfy `a_i <= b_i`.
    Termwise,
    /// `A < B`: `max(A) < min(B)`.
    Global,
    /// `A ⋖ B`: `(A - B) < (B - A)`.
    Cancel,
    /// `A ⊳ B`: `A - B` is nonempty and `B - A` surrounds it on both sides.
    Split,
}

impl BaseRelation {
    pub const ALL: [BaseRelation; 4] = [
        BaseRelation::Termwise,
        BaseRelation::Global,
        BaseRelation::Cancel,
        BaseRelation::Split,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BaseRelation::Termwise => "termwise",
            BaseRelation::Global => "global",
            BaseRelation::Cancel => "cancel",
            BaseRelation::Split => "split",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Separation {
    Weak,
    Strong,
}

impl Separation {
    pub fn holds(self, a: SubsetWord, b: SubsetWord) -> bool {
        match self {
            Separation::Weak => weakly_separated(a, b),
            Separation::Strong => strongly_separated(a, b),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Separation::Weak => "weak",
            Separation::Strong => "strong",
        }
    }
}

/// `max(a) < min(b)`, with `min(∅) = max(∅) = 0`.
pub fn globally_below(a: SubsetWord, b: SubsetWord) -> bool {
    a.max() < b.min()
}

fn termwise(a: SubsetWord, b: SubsetWord) -> bool {
    a.len() <= b.len() && a.iter().zip(b.iter()).all(|(x, y)| x <= y)
}

fn cancel(a: SubsetWord, b: SubsetWord) -> bool {
    globally_below(a.difference(b), b.difference(a))
}

fn split(a: SubsetWord, b: SubsetWord) -> bool {
    let inner = a.difference(b);
    if inner.is_empty() {
        return false;
    }
    let outer = b.difference(a).mask();
    let (lo, hi) = (inner.min(), inner.max());
    let below = outer & ((1u16 << (lo - 1)) - 1);
    let above = ((outer as u32) >> hi) as u16;
    let between = outer & !below & !(above << hi);
    below != 0 && above != 0 && between == 0
}

/// Evaluates one of the four base relations.
///
/// All but [`BaseRelation::Global`] are only defined for distinct sets and
/// return [`Error::EqualOperands`] otherwise.
pub fn base_relation(
    ground: GroundSize,
    kind: BaseRelation,
    a: SubsetWord,
    b: SubsetWord,
) -> Result<bool> {
    ground.check(a)?;
    ground.check(b)?;
    if a == b && kind != BaseRelation::Global {
        return Err(Error::EqualOperands(a));
    }
    Ok(match kind {
        BaseRelation::Termwise => termwise(a, b),
        BaseRelation::Global => globally_below(a, b),
        BaseRelation::Cancel => cancel(a, b),
        BaseRelation::Split => split(a, b),
    })
}

pub fn strongly_separated(a: SubsetWord, b: SubsetWord) -> bool {
    a == b || cancel(a, b) || cancel(b, a)
}

pub fn weakly_separated(a: SubsetWord, b: SubsetWord) -> bool {
    strongly_separated(a, b)
        || (a.len() >= b.len() && split(a, b))
        || (b.len() >= a.len() && split(b, a))
}

pub fn is_separated_family(f: &SetFamily, relation: Separation) -> bool {
    let m = f.members();
    m.iter()
        .enumerate()
        .all(|(p, &a)| m[p + 1..].iter().all(|&b| relation.holds(a, b)))
}

/// True when `x` is separated from every member of `f`.
pub fn separated_from_all(x: SubsetWord, f: &SetFamily, relation: Separation) -> bool {
    f.iter().all(|y| relation.holds(x, y))
}

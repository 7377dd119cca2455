use thiserror::Error;

use crate::subset::SubsetWord;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by the library.
///
/// [`Error::ResourceGuard`] is kept apart from the rest because callers (the
/// CLI in particular) report it with a different exit status.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ground size {0} is outside the supported range 1..={1}")]
    GroundSize(usize, usize),
    #[error("element {element} is outside the ground set [{n}]")]
    ElementOutOfRange { element: usize, n: usize },
    #[error("relation is only defined for distinct sets, got {0:?} twice")]
    EqualOperands(SubsetWord),
    #[error("duplicate member {0:?} in set family")]
    DuplicateMember(SubsetWord),
    #[error("invalid permutation: {0}")]
    Permutation(String),
    #[error("inversion set of the first permutation is not contained in that of the second")]
    InversionsNotNested,
    #[error("invalid bounds m'={lo}, m={hi} for n={n}")]
    HypersimplexBounds { n: usize, lo: usize, hi: usize },
    #[error("resource guard: {0}")]
    ResourceGuard(String),
    #[error("invalid generators: {0}")]
    Generators(String),
    #[error("self-crossing polyline")]
    SelfCrossing,
    #[error("invalid tile: {0}")]
    Tile(String),
    #[error("tiling violates {axiom}: {detail}")]
    Tiling { axiom: &'static str, detail: String },
    #[error("family is not a maximal {0} collection")]
    NotMaximal(&'static str),
    #[error("reconstruction failed: {0}")]
    Reconstruction(String),
    #[error("flip not applicable: {0}")]
    FlipNotApplicable(String),
    #[error("configuration not matched: {0}")]
    Hypothesis(String),
    #[error("illegal path: {rule} violated at position {position}")]
    IllegalPath { rule: &'static str, position: usize },
    #[error("path is not a path in the graph: {0}")]
    NotAPath(String),
    #[error("invalid pattern: {0}")]
    Pattern(String),
    #[error("invalid graph pattern: {0}")]
    GraphPattern(String),
    #[error("quasi-combi error: {0}")]
    Quasi(String),
    #[error("json: {0}")]
    Json(String),
}

impl Error {
    pub fn tiling(axiom: &'static str, detail: impl Into<String>) -> Self {
        Error::Tiling {
            axiom,
            detail: detail.into(),
        }
    }

    /// Short machine-readable tag, used in the CLI's error JSON.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::GroundSize(..) => "ground_size",
            Error::ElementOutOfRange { .. } => "element_out_of_range",
            Error::EqualOperands(_) => "equal_operands",
            Error::DuplicateMember(_) => "duplicate_member",
            Error::Permutation(_) => "permutation",
            Error::InversionsNotNested => "inversions_not_nested",
            Error::HypersimplexBounds { .. } => "hypersimplex_bounds",
            Error::ResourceGuard(_) => "resource_guard",
            Error::Generators(_) => "generators",
            Error::SelfCrossing => "self_crossing",
            Error::Tile(_) => "tile",
            Error::Tiling { .. } => "tiling",
            Error::NotMaximal(_) => "not_maximal",
            Error::Reconstruction(_) => "reconstruction",
            Error::FlipNotApplicable(_) => "flip_not_applicable",
            Error::Hypothesis(_) => "hypothesis",
            Error::IllegalPath { .. } => "illegal_path",
            Error::NotAPath(_) => "not_a_path",
            Error::Pattern(_) => "pattern",
            Error::GraphPattern(_) => "graph_pattern",
            Error::Quasi(_) => "quasi",
            Error::Json(_) => "json",
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

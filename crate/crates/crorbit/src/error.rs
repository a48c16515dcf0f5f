//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced while building diagrams or running computations.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// The edge data does not describe a disjoint union of simple Dynkin
    /// diagrams in Bourbaki numbering.
    #[error("malformed Dynkin graph: {0}")]
    MalformedGraph(String),

    /// A connected component exceeds the supported rank bound.
    #[error("unsupported rank: {0} (components are limited to rank {max})", max = crate::dynkin::MAX_COMPONENT_RANK)]
    UnsupportedRank(usize),

    /// The arrow set does not extend to an involutive diagram automorphism.
    #[error("invalid arrows: {0}")]
    InvalidArrows(String),

    /// The induced conjugation violates a structural invariant; the input is
    /// not the diagram of a real form.
    #[error("not a Satake diagram: {0}")]
    NotASatakeDiagram(String),

    /// A shipped catalog record failed validation.
    #[error("catalog data integrity failure for `{name}`: {reason}")]
    CatalogIntegrity { name: String, reason: String },

    /// Unknown family name in a form lookup.
    #[error("unknown form `{0}`")]
    UnknownForm(String),

    /// Parameters outside the admissible range of a family.
    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    /// A cross or node index outside 1..=rank.
    #[error("node index {0} out of range 1..={1}")]
    NodeOutOfRange(usize, usize),

    /// The base marking of a fibration is not contained in the cross set.
    #[error("psi {{{0}}} is not a subset of the cross set")]
    PsiNotSubset(String),

    /// The weakly nondegenerate reduction requires a fundamental input.
    #[error("not fundamental: the weakly nondegenerate reduction is defined for fundamental inputs only")]
    NotFundamental,

    /// Two incomparable minimal markings both yield intermediate subalgebras:
    /// the largest intermediate subalgebra is not unique.
    #[error("ambiguous largest intermediate subalgebra: both {{{0}}} and {{{1}}} are minimal")]
    AmbiguousLargest(String, String),

    /// Text input rejected by the spec parser.
    #[error("parse error at byte {position}: expected {expected}")]
    Parse { position: usize, expected: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn fmt_node_set(set: &std::collections::BTreeSet<usize>) -> String {
    let items: Vec<String> = set.iter().map(|n| n.to_string()).collect();
    items.join(",")
}

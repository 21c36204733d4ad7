//! Crate-wide error type.

/// Errors raised by quiver construction, mutation, enumeration, and
/// certificate handling.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// The exchange matrix is not square or its size disagrees with `n`.
    #[error("matrix is not square")]
    NotSquare,
    /// No positive symmetrizer exists, or the supplied one fails
    /// `d[i]*B[i][j] = -d[j]*B[j][i]`, or the diagonal/sign conditions fail.
    #[error("not skew-symmetrizable: {0}")]
    NotSkewSymmetrizable(String),
    /// A vertex index outside `1..=n`.
    #[error("vertex {vertex} out of range 1..={rank}")]
    VertexOutOfRange {
        /// The offending index.
        vertex: usize,
        /// The quiver rank.
        rank: usize,
    },
    /// Mutation requested at a frozen vertex.
    #[error("vertex {0} is frozen")]
    FrozenVertex(usize),
    /// A permutation image list that is not a bijection of `1..=n`.
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    /// Two quivers of different rank were compared.
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    /// Checked integer arithmetic overflowed.
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    /// `restrict` was called with an empty mutable subset.
    #[error("restriction subset is empty")]
    EmptySubset,
    /// Enumeration limits must be positive.
    #[error("invalid limits: {0}")]
    InvalidLimits(String),
    /// An operation that needs a finite mutation class got a non-finite one.
    #[error("mutation class is not finite: {0}")]
    ClassNotFinite(String),
    /// A word letter outside `1..=n`.
    #[error("letter {letter} out of range 1..={rank}")]
    LetterOutOfRange {
        /// The offending letter.
        letter: usize,
        /// The quiver rank.
        rank: usize,
    },
    /// Unknown catalog entry name.
    #[error("unknown catalog name: {0}")]
    UnknownCatalogName(String),
    /// Catalog parameter outside its documented range.
    #[error("bad catalog parameter: {0}")]
    BadCatalogParam(String),
    /// A certificate failed independent re-verification.
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
    /// Malformed input document (JSON shape, field ranges).
    #[error("malformed document: {0}")]
    MalformedDocument(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

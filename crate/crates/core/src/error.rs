use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("singular matrix")]
    Singular,
    #[error("integer overflow in fixed-width arithmetic")]
    Overflow,
    #[error("invalid rational literal {0:?}")]
    BadRational(String),
    #[error("empty subspace: {0}")]
    EmptySubspace(String),
    #[error("invalid polytope: {0}")]
    InvalidPolytope(PolytopeInvalid),
    #[error("polytope is not an L-polytope: {0}")]
    NotLPolytope(String),
    #[error("collection does not reach the top: {0}")]
    NotGenerating(String),
    #[error("collection is not generated by points")]
    NotGeneratedByPoints,
    #[error("hypotheses not met: {0}")]
    HypothesesNotMet(String),
    #[error("not decidable by finite computation: {0}")]
    NotDecidableFinite(String),
    #[error("input too large: {0}")]
    TooLarge(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid scene: {0}")]
    InvalidScene(String),
    #[error("map is not well defined: {0}")]
    NotWellDefined(String),
    #[error("no lift: {0}")]
    NoLift(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum PolytopeInvalid {
    #[serde(rename = "EMPTY")]
    Empty,
    #[serde(rename = "LOWER_DIMENSIONAL")]
    LowerDimensional,
    #[serde(rename = "UNBOUNDED")]
    Unbounded,
}

impl std::fmt::Display for PolytopeInvalid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            PolytopeInvalid::Empty => "EMPTY",
            PolytopeInvalid::LowerDimensional => "LOWER_DIMENSIONAL",
            PolytopeInvalid::Unbounded => "UNBOUNDED",
        };
        f.write_str(s)
    }
}

pub type Result<T> = std::result::Result<T, Error>;

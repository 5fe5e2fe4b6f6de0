use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid affine type label `{0}`")]
    InvalidLabel(String),
    #[error("non-crystallographic Coxeter order {0}")]
    NonCrystallographic(u32),
    #[error("invalid Coxeter diagram: {0}")]
    InvalidDiagram(String),
    #[error("unknown generator id {0}")]
    UnknownGenerator(usize),
    #[error("element length not determined within cutoff {0}")]
    LengthCutoff(usize),
    #[error("empty exponent table")]
    EmptyExponents,
    #[error("power series expansion needs a nonzero constant term in the denominator")]
    ZeroConstantTerm,
    #[error("rational function has a pole at {0}")]
    Pole(String),
    #[error("mismatched Hecke algebras: {0}")]
    HeckeMismatch(&'static str),
    #[error("{0} must be a prime")]
    NotPrime(u64),
    #[error("unsupported dimension n = {0} (expected 2 or 3)")]
    UnsupportedDimension(usize),
    #[error("precision p^{0} insufficient for this lattice")]
    Precision(u32),
    #[error("singular matrix")]
    Singular,
    #[error("invalid chamber: {0}")]
    InvalidChamber(&'static str),
    #[error("invalid face: {0}")]
    InvalidFace(&'static str),
    #[error("chamber lies outside the ball")]
    ChamberOutsideBall,
    #[error("cochain rule is centred at a different chamber than the ball")]
    BaseMismatch,
    #[error("face is not interior to the ball")]
    FaceNotInterior,
    #[error("support of the cochain touches the ball boundary")]
    SupportOnBoundary,
    #[error("minimal-distance chamber is not unique at a face (distances {0:?})")]
    NonUniqueMinimum(Vec<usize>),
    #[error("vertices are not adjacent in the tree")]
    NotAdjacent,
    #[error("cochain support escapes the sphere of radius {0}")]
    SupportEscapes(usize),
    #[error("malformed boundary function: {0}")]
    MalformedBoundary(&'static str),
    #[error("boundary value is not constant")]
    NotConstant,
    #[error("not an end direction of the sphere")]
    NotEndDirection,
    #[error("q must be at least 2 (got {0})")]
    InvalidQ(String),
}

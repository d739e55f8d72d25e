use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("{what} needs {needed} objects, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        needed: u128,
        cap: u128,
    },
    #[error("polynomial {0:?} is not primitive over the subfield")]
    NotPrimitive(Vec<u32>),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("ambient dimensions differ: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("generator matrix has rank {rank} < {rows} rows")]
    RankDeficient { rank: usize, rows: usize },
    #[error("code is degenerate: column {0} is zero")]
    DegenerateCode(usize),
    #[error("projective system does not span its ambient space (rank {rank} < {k})")]
    NonSpanningSystem { rank: usize, k: usize },
    #[error("the zero codeword was given")]
    ZeroCodeword,
    #[error("points are not collinear")]
    NotCollinear,
    #[error("points are not distinct")]
    NotDistinct,
    #[error("operation needs a tower of degree {expected}, tower has h = {found}")]
    WrongTowerDegree { expected: u32, found: u32 },
    #[error("only {available} parameters available, {needed} needed")]
    TooFewParameters { needed: usize, available: usize },
    #[error("four points of line {line} lie on a proper subline over F_(q^{degree})")]
    SublineViolation { line: usize, degree: u32 },
    #[error("invalid h = {0}")]
    InvalidH(u32),
    #[error("element {value} is outside a field of size {size}")]
    ElementOutOfRange { value: u64, size: u32 },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("prime {p} exceeds the cap {cap}")]
    PrimeTooLarge { p: u64, cap: u64 },

    #[error("field mismatch: Z_{left} vs Z_{right}")]
    FieldMismatch { left: u32, right: u32 },

    #[error("zero has no multiplicative inverse")]
    ZeroInverse,

    #[error("table length {len} does not match modulus {p}")]
    TableLength { len: usize, p: u32 },

    #[error("value {value} is not a residue modulo {p}")]
    NotCanonical { value: u64, p: u32 },

    #[error("brute-force search is limited to p <= {max}, got {p}")]
    BruteForceTooLarge { p: u32, max: u32 },

    #[error("p = {p} is outside the scope of this check: {reason}")]
    OutOfScope { p: u32, reason: &'static str },

    #[error("input is not a solution of the equation ({violations} violating pairs)")]
    NotASolution { violations: usize },

    #[error("grids differ: {left} vs {right}")]
    GridMismatch { left: String, right: String },

    #[error("{0} is not a point of the grid")]
    OffGrid(String),

    #[error("hypothesis not met: {0}")]
    Hypothesis(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("cyclotomic level mismatch: {0} vs {1}")]
    LevelMismatch(u32, u32),

    #[error("invalid Fermat index (N={n}, a={a}, b={b}): need N >= 3 and a, b, a+b nonzero mod N")]
    InvalidIndex { n: u32, a: i64, b: i64 },

    #[error("{h} is not a unit modulo {n}")]
    NotAUnit { h: i64, n: u32 },

    #[error("index (N={n}, a={a}, b={b}) is already primitive")]
    AlreadyPrimitive { n: u32, a: u32, b: u32 },

    #[error("index (N={n}, a={a}, b={b}) is not primitive")]
    NotPrimitive { n: u32, a: u32, b: u32 },

    #[error("only {found} of {needed} independent motivic elements available for (N={n}, a={a}, b={b})")]
    InsufficientElements { n: u32, a: u32, b: u32, found: usize, needed: usize },

    #[error("element {element} is not admissible for (N={n}, a={a}, b={b})")]
    InadmissibleElement { n: u32, a: u32, b: u32, element: &'static str },

    #[error("residue field of size {q} exceeds the enumeration bound {bound}")]
    EnumerationTooLarge { q: u64, bound: u64 },

    #[error("prime {p} divides the level {n}")]
    RamifiedPrime { p: u64, n: u32 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("regulator determinant vanishes to working precision")]
    DegenerateRegulator,

    #[error("lattice rank {found} differs from expected {expected}")]
    RankMismatch { found: usize, expected: usize },

    #[error("no conductor data for (N={n}, a={a}, b={b})")]
    UnknownConductor { n: u32, a: u32, b: u32 },

    #[error("contour Re z = {c} too close to the pole at Re s = {s}")]
    ContourTooClose { c: f64, s: f64 },

    #[error("need Dirichlet coefficients up to {required}, only {available} available")]
    CoefficientShortfall { required: usize, available: usize },

    #[error("root number indeterminate (solved value {value})")]
    EpsilonIndeterminate { value: String },

    #[error("non-integral Euler factor coefficient at p={p}")]
    NonIntegralEulerFactor { p: u64 },

    #[error("coefficient cache: {0}")]
    Cache(String),

    #[error("I/O: {0}")]
    Io(String),
}

impl Error {
    /// Failures caused by the structure of the case rather than by numerics.
    pub fn is_structural(&self) -> bool {
        matches!(
            self,
            Error::InsufficientElements { .. }
                | Error::UnknownConductor { .. }
                | Error::InvalidIndex { .. }
                | Error::RankMismatch { .. }
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

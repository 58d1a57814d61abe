use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("group mismatch: {0:?} vs {1:?}")]
    GroupMismatch(Vec<usize>, Vec<usize>),

    #[error("invalid element or character {coords:?} for group {factors:?}")]
    InvalidCoords { coords: Vec<usize>, factors: Vec<usize> },

    #[error("conductor mismatch: cannot embed Q(zeta_{from}) into Q(zeta_{to})")]
    ConductorMismatch { from: usize, to: usize },

    #[error("invalid automorphism: gcd({unit}, {conductor}) != 1")]
    InvalidAutomorphism { conductor: usize, unit: usize },

    #[error("division by zero")]
    DivisionByZero,

    #[error("i/o error: {0}")]
    Io(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("characters {0:?} do not multiply to the identity")]
    InvalidTuple(Vec<Vec<usize>>),

    #[error(
        "direct tensor needs {entries} entries, above the cap of {cap}; \
         compare on the Fourier side instead"
    )]
    MemoryCap { entries: u128, cap: u128 },

    #[error("order must be at least 1")]
    InvalidOrder,

    #[error("spectrum is not the transform of a rational signal")]
    NotRational,

    #[error("no solutions: {0}")]
    NoSolutions(String),

    #[error("only the trivial unit orbit exists for r = {0}")]
    OnlyTrivialOrbit(u64),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("search space of {signals} signals exceeds the guard of {guard}")]
    SearchTooLarge { signals: u128, guard: u128 },
}

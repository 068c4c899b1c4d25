use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("negative radicand {0}")]
    NegativeRadicand(String),
    #[error("cannot combine radicals sqrt({0}) and sqrt({1})")]
    MixedRadicals(String, String),
    #[error("invalid rational literal {0:?}")]
    ParseRational(String),

    #[error("a semigroup needs at least 2 generators, got {0}")]
    TooFewGenerators(usize),
    #[error("generators must be positive")]
    NonPositiveGenerator,
    #[error("duplicate generator {0}")]
    DuplicateGenerator(u64),
    #[error("generators have gcd {0}, expected 1")]
    GcdNotOne(u64),
    #[error("invalid semigroup literal {0:?}")]
    ParseSemigroup(String),
    #[error("operation requires exactly 3 generators, semigroup has {0}")]
    NotThreeGenerated(usize),

    #[error("{0} not in semigroup")]
    NotInSemigroup(u64),
    #[error("empty length multiset")]
    EmptyMultiset,
    #[error("{count} factorizations exceed the cap of {cap}")]
    TooManyFactorizations { count: u64, cap: u64 },
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("scale index k must be at least 1")]
    ZeroScale,
    #[error("length {x} outside [{lo}, {hi}]")]
    OutOfRange { x: u64, lo: u64, hi: u64 },
    #[error("fulcrum value {0} outside [0, 1]")]
    FulcrumOutOfRange(String),

    #[error("({0}, {1}, {2}) is not a primitive Pythagorean triple")]
    NotPrimitiveTriple(u64, u64, u64),
    #[error("triple needs a > b >= 3, got a = {0}, b = {1}")]
    TripleOrder(u64, u64),
    #[error("{0} is not squarefree")]
    NotSquarefree(u64),
    #[error("radicand d must be at least 2, got {0}")]
    RadicandTooSmall(u64),
    #[error("target must be positive, got {0}")]
    NonPositiveTarget(String),
    #[error("target {0} outside the open interval (0, 47/180)")]
    TargetOutOfRange(String),

    #[error("window [{lo}, {hi}] shorter than three periods of {period}")]
    WindowTooSmall { lo: u64, hi: u64, period: u64 },
    #[error("period must be positive")]
    ZeroPeriod,
}

pub type Result<T> = std::result::Result<T, Error>;

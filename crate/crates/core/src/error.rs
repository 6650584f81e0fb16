use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A certified comparison could not separate the two sides at the
    /// available decimal precision; the caller must raise the precision.
    #[error("comparison is undecidable at {digits} significant digits; raise the precision")]
    AmbiguousComparison { digits: u32 },

    #[error("cannot combine quadratic values over sqrt({0}) and sqrt({1})")]
    MixedRadicands(u64, u64),

    #[error("invalid value: {0}")]
    InvalidValue(String),

    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("{what} out of range: {detail}")]
    OutOfRange { what: &'static str, detail: String },

    #[error("capacity exceeded: {0}")]
    CapacityExceeded(String),

    #[error("invalid Dirichlet character: {0}")]
    InvalidCharacter(String),

    #[error("l2 norm of f on [1, 2^{r}] is zero")]
    ZeroNorm { r: u32 },

    #[error("decomposition requires an irrational alpha; got {0}")]
    RationalAlpha(String),

    #[error("decomposition requires a non-negative integer beta; got {0}")]
    BetaNotInteger(String),

    #[error("quadrature grid of {n_grid} points is too coarse for degree {degree}")]
    GridTooCoarse { n_grid: usize, degree: u64 },

    #[error("table {name} has {len} entries but {needed} are required")]
    TableTooShort { name: String, len: usize, needed: usize },

    #[error("malformed sieve cache: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(input: &str, reason: impl Into<String>) -> Self {
        Error::Parse { input: input.to_string(), reason: reason.into() }
    }

    pub(crate) fn out_of_range(what: &'static str, detail: impl Into<String>) -> Self {
        Error::OutOfRange { what, detail: detail.into() }
    }

    /// Stable machine-readable name of the variant.
    pub fn category(&self) -> &'static str {
        match self {
            Error::AmbiguousComparison { .. } => "ambiguous_comparison",
            Error::MixedRadicands(..) => "mixed_radicands",
            Error::InvalidValue(_) => "invalid_value",
            Error::Parse { .. } => "parse",
            Error::OutOfRange { .. } => "out_of_range",
            Error::CapacityExceeded(_) => "capacity_exceeded",
            Error::InvalidCharacter(_) => "invalid_character",
            Error::ZeroNorm { .. } => "zero_norm",
            Error::RationalAlpha(_) => "rational_alpha",
            Error::BetaNotInteger(_) => "beta_not_integer",
            Error::GridTooCoarse { .. } => "grid_too_coarse",
            Error::TableTooShort { .. } => "table_too_short",
            Error::Cache(_) => "cache",
            Error::Io(_) => "io",
        }
    }

    /// Whether the error stems from the inputs rather than from a
    /// computation that could not complete.
    pub fn is_config(&self) -> bool {
        matches!(
            self,
            Error::MixedRadicands(..)
                | Error::InvalidValue(_)
                | Error::Parse { .. }
                | Error::OutOfRange { .. }
                | Error::InvalidCharacter(_)
                | Error::RationalAlpha(_)
                | Error::BetaNotInteger(_)
                | Error::GridTooCoarse { .. }
                | Error::TableTooShort { .. }
        )
    }
}

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("blow-up detected: {0}")]
    BlowUp(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("shell index {q} outside [-1, {q_max}]")]
    ShellIndex { q: i32, q_max: i32 },

    #[error("CFL number {cfl:.4} exceeds limit; admissible dt = {admissible_dt:.6e}")]
    CflViolation { cfl: f64, admissible_dt: f64 },

    #[error("ratio undefined: {0}")]
    UndefinedRatio(String),

    #[error("intermittency exponent undefined: no sample with 1 < Lambda < inf")]
    UndefinedExponent,

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("sampling too coarse: {0}")]
    Resolution(String),

    #[error("no resolved samples: {0}")]
    NoData(String),

    #[error("checkpoint format: {0}")]
    Format(String),

    #[error("config: {0}")]
    Config(String),

    #[error("{context}: {source}")]
    Context { context: String, source: Box<Error> },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

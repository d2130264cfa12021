use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("points must be power of two (got {0})")]
    NotPowerOfTwo(usize),
    #[error("points must be at least 8 (got {0})")]
    TooFewPoints(usize),
    #[error("length must be positive (got {0})")]
    NonPositiveLength(f64),
    #[error("dimension must be 1, 2 or 3 (got {0})")]
    BadDimension(usize),
    #[error("grid mismatch between operands")]
    GridMismatch,
    #[error("multiplier axes {0} not applicable to {1}")]
    AxesNotApplicable(&'static str, &'static str),
    #[error("cutoff {cutoff} above the largest lattice frequency {limit}")]
    CutoffAboveNyquist { cutoff: f64, limit: f64 },
    #[error("kernel is not {0} (relative defect {1:e})")]
    NotSymmetric(&'static str, f64),
    #[error("series did not converge within {terms} terms (residual {residual:e})")]
    SeriesNotConverged { terms: usize, residual: f64 },
    #[error("grid with {0} sites is too large for dense exponentiation (limit 64)")]
    OracleGridTooLarge(usize),
    #[error("N must be positive (got {0})")]
    NonPositiveN(f64),
    #[error("epsilon must be positive (got {0})")]
    NonPositiveEpsilon(f64),
    #[error("Nyquist frequency {0} too small (must exceed 1)")]
    NyquistTooSmall(f64),
    #[error("N^beta = {scale} beyond Nyquist frequency {nyquist} of the grid")]
    ScaleBeyondNyquist { scale: f64, nyquist: f64 },
    #[error("weight must be real valued (max imaginary part {0:e})")]
    ComplexWeight(f64),
    #[error("stability bound violated: dt * max|V| = {0} > 1")]
    StabilityBound(f64),
    #[error("non-finite value encountered ({0})")]
    NonFinite(&'static str),
    #[error("condensate profile and pair kernel are both zero")]
    EmptyInitialData,
    #[error("pair trace {0} leaves no room for the condensate")]
    PairTraceTooLarge(f64),
    #[error("need at least {need} time samples (got {got})")]
    TooFewSamples { need: usize, got: usize },
    #[error("trajectory is not uniformly sampled")]
    NonUniform,
    #[error("invalid exponent {0}")]
    InvalidExponent(f64),
    #[error("need at least 2 distinct N values (got {0})")]
    NeedTwoN(usize),
    #[error("inconsistent scenario metadata: {0}")]
    InconsistentScenario(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

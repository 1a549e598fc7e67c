use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("grid of {grid} points cannot resolve a series of order {order} (need at least {})", 2 * order + 1)]
    InsufficientResolution { grid: usize, order: usize },

    #[error("function nearly vanishes on the grid (min |d| = {min_modulus:e})")]
    NotInvertible { min_modulus: f64 },

    #[error("winding quadrature {value} is not close to an integer; increase the grid")]
    NonIntegerWinding { value: f64 },

    #[error("function has winding number {winding}, expected 0")]
    NonzeroWinding { winding: i64 },

    #[error("phase jump of {jump:.3} rad between adjacent samples; grid is under-resolved")]
    UnderResolved { jump: f64 },

    #[error("point {point} is off the unit circle (|z| = {modulus})")]
    OffCircle { point: Complex64, modulus: f64 },

    #[error("displacement does not define an orientation-preserving diffeomorphism (min slope {min_slope})")]
    Orientation { min_slope: f64 },

    #[error("diffeomorphism inversion did not converge for target {target}")]
    InversionFailed { target: f64 },

    #[error("welding system is ill-conditioned (condition estimate {condition:e}); try a larger truncation")]
    WeldingUnresolved { condition: f64 },

    #[error("welding residual {residual:e} exceeds tolerance {tol:e}; truncation is insufficient")]
    TruncationInsufficient { residual: f64, tol: f64 },

    #[error("operator 1 + T is not invertible (|det| = {modulus:e})")]
    NonInvertibleOperator { modulus: f64 },

    #[error("exterior-power series has not converged after {terms} terms (last term {last_term:e})")]
    SeriesTruncation {
        partial: Complex64,
        terms: usize,
        last_term: f64,
    },

    #[error("kernel is not resolvable on the contour |v| = 1 + {sigma} (amplification {amplification:e})")]
    Radius { sigma: f64, amplification: f64 },

    #[error("truncated operator is singular at N = {n}; increase the truncation")]
    SingularTruncation { n: usize },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("{0}")]
    Domain(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

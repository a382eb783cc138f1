use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {op} got {left:?} and {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("matrix size overflow: {rows} x {cols}")]
    SizeOverflow { rows: usize, cols: usize },

    #[error("contract violated: {0}")]
    Contract(String),

    #[error("matrix is not Hermitian (relative defect {defect:e})")]
    NotHermitian { defect: f64 },

    #[error("eigensolver did not converge after {sweeps} sweeps (residual {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },

    #[error("non-finite value produced by {0}")]
    NonFinite(&'static str),

    #[error("sector mismatch: expected level {expected}, found level {found}")]
    SectorMismatch { expected: i64, found: i64 },

    #[error("evaluation at {at} lies within {guard:e} of a pole of {what}")]
    Pole {
        what: &'static str,
        at: f64,
        guard: f64,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("degenerate top: a = c = {0}; use the symmetric-top path")]
    DegenerateTop(f64),

    #[error("extrapolation diverged in {stage}: error estimate {estimate:e} exceeds {limit:e}")]
    Extrapolation {
        stage: &'static str,
        estimate: f64,
        limit: f64,
    },

    #[error("verification failed: {0}")]
    Verification(String),
}

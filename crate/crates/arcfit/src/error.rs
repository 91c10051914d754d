use thiserror::Error;

#[derive(Debug, Error)]
pub enum ArcFitError {
    #[error("degree must be 2, 3 or 4, got {0}")]
    InvalidDegree(u8),
    #[error("half-angle must lie in [1e-3, pi/2], got {0}")]
    InvalidPhi(f64),
    #[error("parameter t must lie in [-1, 1], got {0}")]
    ParameterOutOfRange(f64),
    #[error("cannot parse angle expression `{0}` (expected a radian literal, `pi/k` or `m*pi/k`)")]
    PhiParse(String),
    #[error("singular linear recovery: |A(x)| = {0:e} below 1e-14")]
    SingularRecovery(f64),
    #[error("no sign change on bracket [{lo}, {hi}] (f(lo) = {flo:e}, f(hi) = {fhi:e})")]
    BracketSign {
        lo: f64,
        hi: f64,
        flo: f64,
        fhi: f64,
    },
}

pub type Result<T> = std::result::Result<T, ArcFitError>;

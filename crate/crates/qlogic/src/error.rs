use thiserror::Error;

/// Errors produced by the workbench.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("window [{0}, {1}] extends outside the grid")]
    WindowOutsideGrid(f64, f64),

    #[error("window covers no grid point (narrower than one grid cell)")]
    EmptyWindow,

    #[error("state vector is zero")]
    ZeroVector,

    #[error("state vector is not normalized (|‖v‖ − 1| = {0:.3e})")]
    NotNormalized(f64),

    #[error("matrix is not a projector: {0}")]
    NotAProjector(String),

    #[error("projector eigenvalue {0} is not within tolerance of {{0, 1}}")]
    SpectrumNotBinary(f64),

    #[error("ill-conditioned subspace: singular value {0:.3e} too close to the rank threshold")]
    IllConditioned(f64),

    #[error("numerical invariant violated: {0}")]
    InvariantViolation(&'static str),

    #[error("evolution time is not finite")]
    NonFiniteTime,

    #[error(
        "wrap-around violation: {0:.3e} of the spectral probability reaches the grid boundary"
    )]
    WrapAround(f64),

    #[error("detector index {0} out of range for detector dimension {1}")]
    DetectorIndexOutOfRange(usize, usize),

    #[error("a which-way detector is already attached")]
    DetectorAlreadyAttached,

    #[error("no which-way detector is attached")]
    DetectorAbsent,

    #[error("atom `{0}` is not bound to a projector")]
    UnboundAtom(String),

    #[error("contradictory evidence: positive and negative statements both true")]
    ContradictoryEvidence,

    #[error("invalid scenario config: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

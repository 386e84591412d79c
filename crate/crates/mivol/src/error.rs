//! Error type shared across the crate.
//!
//! Every geometric operation returns `Result<T>`; empty and unbounded inputs
//! are ordinary error values, not panics.  A few conditions (budget caps,
//! hypothesis checks on lemma verifiers) carry enough context to be reported
//! in experiment records instead of aborting a sweep.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("polytope is empty")]
    EmptyPolytope,

    #[error("polytope is unbounded")]
    UnboundedPolytope,

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("ambient dimension {0} exceeds the supported maximum of {1}")]
    DimensionBudget(usize, usize),

    #[error("{0} facets exceed the supported maximum of {1}")]
    FacetBudget(usize, usize),

    #[error("fiber scan would visit {0} lattice points, over the budget of {1}")]
    FiberBudgetExceeded(u128, u128),

    #[error("mixed-integer set has zero total volume")]
    ZeroTotalVolume,

    #[error("direction vector is zero")]
    ZeroDirection,

    #[error("scale factor must be positive")]
    NonPositiveScale,

    #[error("cone apex lies in the affine hull of the base")]
    ApexInBasePlane,

    #[error("cone height must be positive")]
    InvalidHeight,

    #[error("clipped cone is unbounded")]
    UnboundedResult,

    #[error("no cut position reaches an integral centroid coordinate")]
    NoIntegralCentroidReachable,

    #[error("projection ball radius {radius} does not exceed the required {required}")]
    BallTooSmall { radius: String, required: String },

    #[error("point does not lie in the body")]
    PointNotInBody,

    #[error("point does not have integral coordinates in the lattice block")]
    NonIntegralPoint,

    #[error("lemma hypothesis not met: {0}")]
    HypothesisNotMet(String),

    #[error("intrinsic volume of this embedded polytope is irrational and cannot be returned exactly")]
    IrrationalVolume,

    #[error("matrix is not unimodular (determinant {0})")]
    NotUnimodular(String),

    #[error("bad parameters: {0}")]
    BadParams(String),

    #[error("linear program failed: {0}")]
    LpFailure(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

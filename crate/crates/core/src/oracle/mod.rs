//! Numerical cross-check of the conic count on cubic threefolds.

pub mod lines;
pub mod poly;
pub mod system;
pub mod tracker;

pub use lines::{
    count_conics_cubic_threefold, count_conics_with, lines_through_point_system,
    quartic_negative_control, random_cubic_through, residual_point, OracleOptions, OracleReport,
};
pub use poly::{DenseForm, ExactPoly};
pub use system::{ComplexPoly, PolySystem};
pub use tracker::{solve_total_degree, PathStatus, SolutionSet, TrackerConfig};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OracleError {
    #[error("form does not vanish at the base point")]
    NotOnForm,
    #[error("the secant line lies on the cubic")]
    LineContained,
    #[error("the cubic is tangent to the secant line at a base point")]
    Tangent,
    #[error("the form is singular at the residual point")]
    SingularPoint,
    #[error("the affine chart of directions is degenerate")]
    DegenerateChart,
    #[error("wrong number of variables or degree for this construction")]
    DimensionMismatch,
    #[error("system is not square: {equations} equations in {variables} variables")]
    NotSquare { equations: usize, variables: usize },
    #[error("all {paths} homotopy paths failed")]
    AllPathsFailed { paths: usize },
    #[error("invalid tracker configuration: {0}")]
    InvalidConfig(&'static str),
    #[error("no usable form after {attempts} draws")]
    ResamplesExhausted { attempts: usize },
}

impl OracleError {
    /// Errors caused by an unlucky random form rather than a bug or bad input.
    pub fn is_resample(&self) -> bool {
        matches!(
            self,
            OracleError::NotOnForm
                | OracleError::LineContained
                | OracleError::Tangent
                | OracleError::SingularPoint
                | OracleError::DegenerateChart
        )
    }
}

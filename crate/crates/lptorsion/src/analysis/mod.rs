//! Numerical certification of the explicit analytic constructions: the
//! test-function family behind the torsion-class lemma, the degree-3 radial
//! reduction, and the L² Künneth counterexample.

pub mod bump;
pub mod kunneth;
pub mod lemma_r;
pub mod quadrature;
pub mod radial;

/// Errors shared by the analysis laboratories.
#[derive(thiserror::Error, Debug, Clone, PartialEq)]
pub enum AnalysisError {
    #[error("quadrature calibration failed: error {error:e} exceeds {tol:e}")]
    Calibration { error: f64, tol: f64 },
    #[error("parameter out of range: {0}")]
    BadParameter(String),
    #[error("grid resolution insufficient ({0}); refine the angular/radial grid")]
    GridResolution(String),
}

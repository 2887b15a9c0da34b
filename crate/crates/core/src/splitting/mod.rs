//! Plinths, their closing polynomial, and splitting polygon construction.

mod delta;
pub mod kernel;
mod plinth;
mod polygon;

pub use delta::{
    closure_determinant, delta_polynomial, delta_polynomial_with, pivot_point, DeltaPolynomial, Parametrization,
};
pub use plinth::{
    count_plinths, enumerate_plinths, for_each_plinth, pivot_candidates, support_is_concurrent, support_tuples,
    validate_plinth, ConventionOptions, Plinth, SupportQuotient,
};
pub use polygon::{
    add_polygon, build_polygon, find_nonsplitting_polygon, find_splitting_polygons, predicted_combinatorics,
    probe_parameter, splitting_from_delta, Polygon, SplittingOutcome, Verdict, DEFAULT_NONSPLITTING_CAP,
};

use crate::arrangement::ArrangementError;
use crate::numberfield::FieldError;
use crate::projgeom::GeomError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SplittingError {
    #[error("invalid plinth: {0}")]
    InvalidPlinth(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("degenerate construction: {0}")]
    Degenerate(String),
    #[error("parameter {0} was removed as linear content")]
    ExcludedParameter(String),
    #[error("polygon verdict is {0}, not splitting")]
    NotSplitting(String),
    #[error("no nonsplitting parameter among the first {0} probes")]
    SearchExhausted(usize),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
}

#[cfg(test)]
mod tests;

//! Knot Floer side of the detection argument: candidate shapes, filtered
//! differentials, tau, and the CFK-infinity plane.

pub mod axioms;
pub mod classify;
pub mod complex;
pub mod plane;
pub mod shape;

use thiserror::Error;

pub use axioms::{AxiomId, AxiomRule, Conclusion, Facts, AXIOMS, FIGURE_EIGHT_REDUCED_KH};
pub use classify::{
    admissible_shapes, apply_small_dim_axioms, classify, delta_of_case, spectral_sequence_candidates, AcceptedCase,
    Certificate, ClassificationReport, Identification, Rejection, DEFAULT_GENUS_BOUND,
};
pub use complex::{enumerate_differentials, FilteredComplex, Generator};
pub use plane::{build_plane_complex, d_squared_witness, PlaneComplex, Window, Witness};
pub use shape::{HfkClass, HfkShape};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HfkError {
    #[error("invalid reduced Khovanov dimension {0}: must be odd and between 1 and 5")]
    InvalidDimension(i64),
    #[error("genus bound {0} is below 2")]
    GenusBound(i64),
    #[error("shape: {0}")]
    Shape(String),
    #[error("arrow {from} -> {to} violates the grading constraints")]
    Grading { from: String, to: String },
    #[error("d^2 != 0: nonzero entry from {from} to {to}")]
    ChainCondition { from: String, to: String },
    #[error("homology is {0}-dimensional, expected 1")]
    HomologyDimension(usize),
    #[error("complex is not supported in a single delta grading")]
    NotSingleDelta,
    #[error("generator {0} has no unique symmetric partner")]
    Symmetry(String),
    #[error("arrow out of {from} has Alexander length {length}, expected 1")]
    ArrowLength { from: String, length: i64 },
    #[error("window holds {0} full translates, need at least 2")]
    WindowTooSmall(i64),
    #[error("case {0} carries no identification")]
    Unannotated(String),
    #[error("branch {0} is not closed by any rule")]
    Unresolved(String),
    #[error("internal invariant: {0}")]
    Invariant(String),
}

//! Rational Khovanov homology of knot diagrams, and a mechanized knot Floer
//! case analysis for five-dimensional thin reduced Khovanov homology.

pub mod hfk;
pub mod khovanov;
pub mod linalg;
pub mod pd;
pub mod poly;

/// Tag stored with cached results; bump when gradings or output formats change.
pub const ENGINE_VERSION: &str = concat!("khdetect-", env!("CARGO_PKG_VERSION"), "/conv1");

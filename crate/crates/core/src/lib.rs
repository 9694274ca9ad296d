//! Extended Bloch group computations for flat bundles over ideally
//! triangulated 3-manifolds.

pub mod complex_kernel;
pub mod error;
pub mod extended_bloch;
pub mod geometric_reps;
pub mod knots;
pub mod matrix;
pub mod scalar;
pub mod tensor_construction;
pub mod triangulation;
pub mod verify;

pub use error::{Error, Result};

/// Double precision instances of the generic types.
pub type Shape = extended_bloch::FlattenedShape<f64>;
pub type Element = extended_bloch::PreBlochElement<f64>;
pub type RogersValue = complex_kernel::ModLatticeValue<f64>;
pub type Matrix = matrix::CMatrix<f64>;
pub type Decoration = triangulation::Decoration<f64>;
pub type SimplexCoords = tensor_construction::StandardSimplexCoords<f64>;
pub type ClassReport = triangulation::ClassReport<f64>;
pub type Theorem1Report = tensor_construction::Theorem1Report<f64>;

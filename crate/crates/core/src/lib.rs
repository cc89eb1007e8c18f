//! Exact computations in bubble algebras: multicoloured partition algebras
//! whose diagrams are non-crossing within each colour.
//!
//! Scalars are Laurent polynomials in the loop parameters `d0..d{m-1}`, or
//! elements of a real cyclotomic field once the parameters are specialised.

pub mod cell;
pub mod checks;
pub mod error;
pub mod linalg;
pub mod multicolour;
pub mod partition;
pub mod repr;
pub mod scalar;
pub mod tl;

pub use cell::{MultiLinkState, WeightLambda};
pub use error::{Error, Result};
pub use linalg::{determinant, rank, ExactMatrix};
pub use multicolour::{ColouredDiagram, Element, Parity, ScaledDiagram};
pub use partition::SetPartition;
pub use repr::{BlockPartition, DecompositionMatrix, WeightOrder};
pub use scalar::{AlgebraicScalar, LaurentScalar, NumberField, Param, ParameterSpec, RootOrder, Specialization};
pub use tl::LinkState;

//! Exact scalars: Laurent polynomials in the loop parameters and their
//! specializations into real cyclotomic number fields.

pub mod field;
pub mod laurent;
pub mod params;

pub use field::{AlgebraicScalar, NumberField};
pub use laurent::{Exponent, LaurentScalar};
pub use params::{evaluate, Param, ParameterSpec, RootOrder, Specialization};

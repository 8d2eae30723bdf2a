//! Exact arithmetic: Q/Z torsion, cyclotomic fields, and two-variable
//! Laurent polynomials and 2×2 matrices over them.

pub mod cyclotomic;
pub mod laurent;
pub mod torsion;

pub use cyclotomic::{cyclotomic_polynomial, fraction_string, Cyclotomic, CyclotomicField};
pub use laurent::{laurent_substitute, mat2_det, star, Exponent, LaurentMat2, LaurentPoly};
pub use torsion::{torsion_add, Torsion};

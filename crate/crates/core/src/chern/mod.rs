//! The graded ring Γ_n with square-zero generators, Chern characters of
//! bundle expressions, and the cancellation producing π_G.

mod bundle;
mod graded;
mod subset;

pub use bundle::{
    as_i128, assemble_pi_g, chi_of_multiset, line_class, realize_class, triviality_preconditions, Bundle, BundleExpr,
    PiG, RealizedClass, TrivialityVerdict,
};
pub use graded::{rational_string, subset_indices, GradedClass, Subset};
pub use subset::{
    solve_subset_coefficients, verify_subset_identity, CommRing, Integers, IntegersMod, SubsetFamily, SubsetVerdict,
};

#[cfg(test)]
mod tests;

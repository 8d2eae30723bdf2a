//! Central products, maximal amalgamations, and S_{n,m} certificates.

mod product;
mod snm;
mod special;

pub use product::{
    auto_maximal_amalgamation, central_product, check_central_iso, cyclic_iso, eval_expr,
    internal_central_product_check, is_maximal_central_iso, CentralProduct, InternalVerdict, IntersectionReport,
    MaximalityVerdict,
};
pub use snm::{
    assemble, heisenberg_decomposition, order_bound_check, snm_verify, standard_certificate, Amalgamation, Assembly,
    EFactor, HeisenbergDecomposition, OrderBound, SnmCertificate, SnmVerdict,
};
pub use special::{find_snm_certificate, special_decomposition_search, SpecialDecomposition, SpecialPart};

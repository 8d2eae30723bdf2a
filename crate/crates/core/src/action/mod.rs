//! Action data and the calculus assembling faithful actions of iterated
//! central products from leaf actions.

mod calculus;
mod datum;
mod leaves;

pub use calculus::{
    amalgamable_poset, boxtimes, boxtimes_kernel, build_snm_action, central_product_action, central_product_action_on,
    check_amalgamable, max_amalgamable, select_partner_scalar, AmalgamablePoset, CentralAction, SnmAction,
    SnmActionSummary,
};
pub use datum::{diagram_report, ActionDatum, ActionSummary, BaseMap, DiagramReport, PointAction};
pub use leaves::{abelian_basis, leaf_abelian_actions, leaf_e_action, AbelianBasis};

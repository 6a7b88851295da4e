//! Evaluation maps, L-operators and R-matrices of the quantum affine
//! algebra in a general gradation, and the identities they satisfy.

mod checks;
mod evaluation;
mod gradation;
mod lop;

pub use checks::{
    check_gradation_covariance, check_l_intertwining, check_llbar_product, check_r_consistency,
    check_trans_lb, check_weight_zero, check_ybe, Which,
};
pub use evaluation::{check_affine_serre, check_ev_evbar, evaluate, next, AffineGenSet, Variant};
pub use gradation::Gradation;
pub use lop::{build_l, build_lbar, build_r, build_rbar, l_operator, lbar_operator, LOperator};

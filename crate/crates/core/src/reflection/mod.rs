//! Diagonal boundary solutions: the K-matrix, the weight-diagonal
//! K-operator, the reflection equations and the intertwining relations and
//! representation constraints behind them.

mod checks;
mod kop;

pub use checks::{
    check_constraints, check_fundamental_kappa, check_intertwining_suite, check_kappa_weight_function,
    check_kop_branches, check_kop_variants, check_negative_control, check_reflection_l,
    check_reflection_matrix, check_reflection_with, reflection_sides, VARIANT_TERMS, VARIANT_TOL,
};
pub use kop::{
    k_matrix, k_operator, k_operator_branch, kappa_minus, kappa_plus, weight_sums, BoundaryParams,
    KBranch, KDiagonal, LiteralParams, LiteralVariant, WeightSums,
};

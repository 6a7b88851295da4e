//! The `q -> 1` limit: classical `gl(N)` realizations, additive-parameter
//! L-operators and K-matrix, gamma-ratio K-operators, the rational
//! reflection equation and the representation conditions behind it, plus
//! float oracles connecting each object to its q-deformed counterpart.

mod checks;
mod ops;

pub use checks::{
    check_classical_gl, check_k_matrix_limit, check_k_operator_limit, check_l_limit, check_rational_conditions,
    check_k_operator_convergence, check_rational_forms, check_rational_intertwining, check_rational_reflection, check_rational_reflection_with,
    rational_reflection_sides, CONVERGENCE_FACTOR, K_LIMIT_STEP, K_LIMIT_TOL, L_LIMIT_TOL,
};
pub use ops::{
    classical_rep, classical_rep_in, rational_k_matrix, rational_k_operator, rational_k_operator_limit, rational_kappa_at, rational_l,
    rational_lbar, RationalForm, RationalKappa, RationalParams,
};

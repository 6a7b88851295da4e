//! Concrete representations of `U_q(gl(N))` and the relation sweeps that
//! certify them.

mod relations;
mod rep;
mod structure;

pub use relations::{check_root_relations, check_gl_relations, check_recursion_independence};
pub use rep::{
    derive_root_vectors, fundamental_rep, occupation_basis, oscillator_rep, oscillator_rep_generic,
    root_via, Rep, RepKind,
};
pub use structure::{a_op, b_op, c_op, central_shift, d_op, g_minus, g_plus};

//! Elements commuting with the diagonal K-operator through the two
//! evaluation maps, their Cartan companions, and the commutation relations
//! they satisfy on q-oscillator representations.

mod checks;
mod zelem;

pub use checks::{
    check_ladder_consistency, check_onsager_genericity, check_onsager_relations, check_z_intertwining,
    onsager_expectation,
};
pub use zelem::{
    build_khat, build_z, rho, rho_tilde, root_vector, z_minus_boundary_form, KhatPair, RootKind, ZCase, ZElement,
    ZTable,
};

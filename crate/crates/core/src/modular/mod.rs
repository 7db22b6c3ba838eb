//! Exact modular arithmetic: Kronecker symbols, strengthened inverses, the
//! eta multiplier ω_{h,k} as an exact root of unity, and Farey arcs.

pub mod arith;
pub mod farey;
pub mod omega;
pub mod root_of_unity;

pub use arith::{inverse_mod, kronecker, strengthened_inverse, strengthened_modulus, totient, StrengthenedInverse};
pub use farey::{arcs_tile, farey_neighbors, farey_sequence, FareyArc};
pub use omega::{
    branch_agreement, dedekind_sum, multiplier_identity_check, omega, omega_branch, omega_canonical, BranchAgreement,
    MultiplierIdentity, OmegaBranch,
};
pub use root_of_unity::RootOfUnity;

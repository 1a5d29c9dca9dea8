//! Fermionic Fock spaces: bases, operators, formal expressions,
//! antilinear maps, and Weyl-ordered second quantization.

mod antilinear;
mod expression;
mod operator;
mod quantize;
mod space;

pub use antilinear::{
    conjugate_between, conjugate_by_antilinear, symmetry_residual, AntilinearMap,
};
pub use expression::{realize_expression, OpSymbol, OperatorExpression, OperatorTerm};
pub use operator::ManyBodyOperator;
pub use quantize::{
    annihilation_matrix, creation_matrix, second_quantize_bdg, second_quantize_weyl,
    BdgHamiltonian, SingleParticleHamiltonian,
};
pub use space::{
    enumerate_basis, jw_sign, occupied, occupied_orbitals, particle_number, FockSpace, FockState,
    ProductSpace, Space,
};

//! Model Hamiltonians at half filling: staggered hopping chains, the
//! spinless pairing chain, the (two-chain) Hubbard model, and Heisenberg
//! spin chains — together with the staggered particle-hole transformation
//! they share.

mod chains;
mod hubbard;
mod kitaev;
mod spec;
mod spin;
mod stagger;

pub use chains::{cosine_band_ring, ssh_single_particle};
pub(crate) use hubbard::bond_factor;
pub use hubbard::{
    charge_expression, hubbard_hamiltonian, hubbard_single_particle, spin_expression,
    total_charge_expression, total_spin_expression, total_spin_squared_expression,
};
pub use kitaev::{kitaev_chain, kitaev_quasiparticle_check, QuasiparticleCheck};
pub use spec::{Boundary, ChainSpec, HubbardLayout, HubbardSpec, SpinChainSpec};
pub use spin::{
    embed_site_operator, heisenberg_spin_chain, spin_matrices, spin_site_operator,
    total_spin_operator, total_spin_squared,
};
pub use stagger::staggered_k;

//! Discretized 2+1-dimensional Dirac Hamiltonians and their exact
//! conjugation relations.
//!
//! The vortex-field Hamiltonian couples a two-component spinor to a
//! background one-form `a = m·dt − p` in a way that forces time reversal
//! to *anti*-commute (linearly) with the Hamiltonian, charge conjugation
//! to anti-commute antilinearly, and their product CT to be an antilinear
//! *symmetry*.  All three relations are exact matrix identities for any
//! real anti-symmetric derivative stencil, so they are verified here to
//! 1e−12 rather than to a discretization error ([`symmetry`]).  The
//! electrically charged Dirac Hamiltonian with its ordinary
//! gauge-reversing charge conjugation is included for contrast.

mod grid;
mod symmetry;

pub use grid::Grid2D;
pub use symmetry::{
    build_vortex_hamiltonian, electromagnetic_hamiltonian, verify_c_relation,
    verify_ct_relation, verify_electromagnetic_conjugation, verify_t_relation, GaugeField,
    VortexField, VortexFieldHamiltonian,
};

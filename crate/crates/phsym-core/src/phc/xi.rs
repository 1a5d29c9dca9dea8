//! Particle-hole conjugation on the full Fock space.
//!
//! Two constructions of the same antilinear map Ξ are provided. The
//! *solved* form ([`xi_oracle`]) builds, sector by sector, the wedge
//! isomorphism ω_n : (⋀ⁿ)* → ⋀^{N−n} by solving the pairing system
//! (ω_n Φ) ∧ Ψ' = Φ(Ψ')·Ω_n over all basis covectors Φ and test vectors
//! Ψ', then composes with the Riesz pairing. The *closed* form
//! ([`xi_fast`]) sends each occupation pattern directly to its complement
//! with a sign computed from bit arithmetic. The two must agree entrywise;
//! that equivalence is enforced by regression tests rather than assumed.

use crate::error::{PhsymError, Result};
use crate::fock::{enumerate_basis, AntilinearMap, FockSpace, FockState, Space};
use crate::linalg::{lu_solve_matrix, CsrMatrix};
use crate::{CMat, Real, Scalar, MAX_ORBITALS};

/// Largest orbital count accepted by the solved construction; the dense
/// per-sector pairing systems grow as C(N, N/2).
pub const MAX_ORACLE_ORBITALS: usize = 12;

/// The canonical top state Ω = e₀ ∧ … ∧ e_{N−1} together with the
/// sign-adjusted family Ω_n used by the wedge-pairing construction.
///
/// Ω carries coefficient +1 on the all-occupied bit-pattern (this pins the
/// phase of every state-level identity; the induced map on operators does
/// not depend on it). The family obeys, literally by construction,
///
/// ```text
/// Ω_0 = Ω,    Ω_n = (−1)^{N−n} · Ω_{n−1}    (n = 1, …, N).
/// ```
#[derive(Clone, Debug)]
pub struct WedgeTop {
    num_orbitals: usize,
    top_pattern: FockState,
    sector_signs: Vec<Real>,
}

impl WedgeTop {
    /// Builds Ω and the signed copies Ω₀, …, Ω_N for `num_orbitals` orbitals.
    pub fn new(num_orbitals: usize) -> Result<Self> {
        if num_orbitals == 0 || num_orbitals > MAX_ORBITALS {
            return Err(PhsymError::invalid(format!(
                "orbital count must lie in 1..={MAX_ORBITALS}, got {num_orbitals}"
            )));
        }
        let mut sector_signs = Vec::with_capacity(num_orbitals + 1);
        sector_signs.push(1.0);
        for n in 1..=num_orbitals {
            let step = if (num_orbitals - n) % 2 == 0 { 1.0 } else { -1.0 };
            sector_signs.push(step * sector_signs[n - 1]);
        }
        Ok(WedgeTop {
            num_orbitals,
            top_pattern: ((1u32 << num_orbitals) - 1) as FockState,
            sector_signs,
        })
    }

    /// Number of orbitals N.
    pub fn num_orbitals(&self) -> usize {
        self.num_orbitals
    }

    /// The all-occupied bit-pattern carrying Ω.
    pub fn top_pattern(&self) -> FockState {
        self.top_pattern
    }

    /// Coefficient of Ω_n on the all-occupied pattern (always ±1, so every
    /// member of the family is a unit vector).
    pub fn sign(&self, n: usize) -> Real {
        self.sector_signs[n]
    }
}

/// Wedge product of two basis multivectors written in ascending orbital
/// order: returns the merged bit-pattern and the reordering sign, or `None`
/// when the factors share an orbital.
///
/// The sign counts the crossings needed to sort the concatenation
/// (left factors, then right factors) into ascending order: one crossing
/// for every pair `l ∈ left`, `r ∈ right` with `l > r`.
pub fn wedge_patterns(left: FockState, right: FockState) -> Option<(FockState, Real)> {
    if left & right != 0 {
        return None;
    }
    let mut crossings = 0u32;
    let mut rest = right;
    while rest != 0 {
        let orbital = rest.trailing_zeros();
        crossings += (left >> (orbital + 1)).count_ones();
        rest &= rest - 1;
    }
    let sign = if crossings % 2 == 0 { 1.0 } else { -1.0 };
    Some((left | right, sign))
}

/// Matrix of the wedge isomorphism ω_n : (⋀ⁿ)* → ⋀^{N−n} in the paired
/// orthonormal bases (row = target pattern with N−n particles, column =
/// basis covector with n particles).
///
/// For each basis covector Φ = e_T^* the image is found by solving the
/// linear pairing system (ω_n Φ) ∧ e_S = Φ(e_S)·Ω_n over all n-particle
/// test states e_S; the systems share the coefficient matrix, so one LU
/// factorization serves every right-hand side.
pub fn wedge_isomorphism(num_orbitals: usize, n: usize) -> Result<CMat> {
    let top = WedgeTop::new(num_orbitals)?;
    if n > num_orbitals {
        return Err(PhsymError::invalid(format!(
            "sector {n} exceeds the orbital count {num_orbitals}"
        )));
    }
    let test_basis = enumerate_basis(num_orbitals, Some(n))?;
    let image_basis = enumerate_basis(num_orbitals, Some(num_orbitals - n))?;
    let dim = test_basis.len();

    // pairing[s, u] = coefficient of the top state in e_U ∧ e_S.
    let mut pairing = CMat::zeros(dim, dim);
    for (s_idx, &s) in test_basis.iter().enumerate() {
        for (u_idx, &u) in image_basis.iter().enumerate() {
            if let Some((merged, sign)) = wedge_patterns(u, s) {
                debug_assert_eq!(merged, top.top_pattern());
                pairing[(s_idx, u_idx)] = Scalar::new(sign, 0.0);
            }
        }
    }

    // Right-hand sides δ_{ST}·Ω_n, one column per basis covector Φ = e_T^*.
    let rhs = CMat::identity(dim, dim) * Scalar::new(top.sign(n), 0.0);
    lu_solve_matrix(&pairing, &rhs)
}

/// Particle-hole conjugation assembled from the solved wedge isomorphisms:
/// Ξ|ₙ = ω_n ∘ c_n, where the Riesz pairing c_n acts on the orthonormal
/// occupation basis as the identity identification e_T ↦ e_T^* (the
/// antilinearity lives in c_n and is carried by the map's conjugating
/// action). The sector blocks are concatenated into one map ⋀ⁿ → ⋀^{N−n}
/// over the full space.
pub fn xi_oracle(num_orbitals: usize) -> Result<AntilinearMap> {
    if num_orbitals == 0 || num_orbitals > MAX_ORACLE_ORBITALS {
        return Err(PhsymError::invalid(format!(
            "solved construction accepts 1..={MAX_ORACLE_ORBITALS} orbitals, got {num_orbitals}"
        )));
    }
    let space = FockSpace::full(num_orbitals)?;
    let mut triplets: Vec<(u32, u32, Scalar)> = Vec::with_capacity(space.dim());
    for n in 0..=num_orbitals {
        let block = wedge_isomorphism(num_orbitals, n)?;
        let source = enumerate_basis(num_orbitals, Some(n))?;
        let target = enumerate_basis(num_orbitals, Some(num_orbitals - n))?;
        for (t_idx, &t) in source.iter().enumerate() {
            let col = space.index_of(t).expect("sector state lies in the full space");
            for (u_idx, &u) in target.iter().enumerate() {
                let value = block[(u_idx, t_idx)];
                if value.norm() > 1e-14 {
                    let row = space.index_of(u).expect("sector state lies in the full space");
                    triplets.push((row as u32, col as u32, value));
                }
            }
        }
    }
    let matrix = CsrMatrix::from_triplets(space.dim(), space.dim(), triplets)?;
    AntilinearMap::new(Space::Fock(space.clone()), Space::Fock(space), matrix)
}

/// Particle-hole conjugation in closed form: every occupation pattern maps
/// to its complement, filled and empty orbitals exchanged, with the sign
///
/// ```text
/// Ξ e_S = (−1)^{nN − n(n+1)/2} · sgn(e_{S^c} ∧ e_S) · e_{S^c},    n = |S|.
/// ```
///
/// The sector exponent and the crossing sign together reproduce the solved
/// construction; that identity is locked by the equivalence tests against
/// [`xi_oracle`] and is not asserted here.
pub fn xi_fast(num_orbitals: usize) -> Result<AntilinearMap> {
    if num_orbitals == 0 || num_orbitals > MAX_ORBITALS {
        return Err(PhsymError::invalid(format!(
            "orbital count must lie in 1..={MAX_ORBITALS}, got {num_orbitals}"
        )));
    }
    let space = FockSpace::full(num_orbitals)?;
    let mask: FockState = (1u32 << num_orbitals) - 1;
    let mut triplets: Vec<(u32, u32, Scalar)> = Vec::with_capacity(space.dim());
    for col in 0..space.dim() {
        let state = space.state(col);
        let complement = !state & mask;
        let n = state.count_ones() as usize;
        let sector_exponent = n * num_orbitals - n * (n + 1) / 2;
        let (_, crossing_sign) =
            wedge_patterns(complement, state).expect("complement is disjoint from the pattern");
        let sector_sign = if sector_exponent % 2 == 0 { 1.0 } else { -1.0 };
        let row = space
            .index_of(complement)
            .expect("complement lies in the full space");
        triplets.push((
            row as u32,
            col as u32,
            Scalar::new(sector_sign * crossing_sign, 0.0),
        ));
    }
    let matrix = CsrMatrix::from_triplets(space.dim(), space.dim(), triplets)?;
    AntilinearMap::new(Space::Fock(space.clone()), Space::Fock(space), matrix)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{annihilation_matrix, conjugate_by_antilinear, creation_matrix};

    #[test]
    fn omega_family_follows_the_sign_recursion() {
        for num_orbitals in 1..=8 {
            let top = WedgeTop::new(num_orbitals).unwrap();
            assert_eq!(top.sign(0), 1.0);
            for n in 1..=num_orbitals {
                let step = if (num_orbitals - n) % 2 == 0 { 1.0 } else { -1.0 };
                assert_eq!(top.sign(n), step * top.sign(n - 1));
                assert_eq!(top.sign(n).abs(), 1.0);
            }
        }
        let two = WedgeTop::new(2).unwrap();
        assert_eq!((two.sign(0), two.sign(1), two.sign(2)), (1.0, -1.0, -1.0));
    }

    #[test]
    fn single_orbital_values_match_the_hand_solve() {
        // With one orbital the pairing system is scalar: the vacuum maps to
        // the occupied state and back, both with coefficient +1.
        let xi = xi_oracle(1).unwrap();
        let m = xi.unitary_part().to_dense();
        assert_eq!(m[(1, 0)], Scalar::new(1.0, 0.0));
        assert_eq!(m[(0, 1)], Scalar::new(1.0, 0.0));
    }

    #[test]
    fn two_orbital_conjugation_reproduces_the_known_example() {
        // Basis order on two orbitals: |00⟩, |10⟩, |01⟩, |11⟩ (bit 0 first).
        // Conjugation sends 1 ↦ e₀∧e₁, e₀ ↦ e₁, e₁ ↦ −e₀, e₀∧e₁ ↦ −1.
        let xi = xi_oracle(2).unwrap();
        let m = xi.unitary_part().to_dense();
        assert_eq!(m[(3, 0)], Scalar::new(1.0, 0.0));
        assert_eq!(m[(2, 1)], Scalar::new(1.0, 0.0));
        assert_eq!(m[(1, 2)], Scalar::new(-1.0, 0.0));
        assert_eq!(m[(0, 3)], Scalar::new(-1.0, 0.0));
        assert_eq!(xi.unitary_part().nnz(), 4);
    }

    #[test]
    fn closed_form_matches_the_solved_construction() {
        for num_orbitals in 1..=8 {
            let solved = xi_oracle(num_orbitals).unwrap();
            let fast = xi_fast(num_orbitals).unwrap();
            let diff = fast
                .unitary_part()
                .add_scaled(solved.unitary_part(), Scalar::new(-1.0, 0.0))
                .unwrap();
            assert!(
                diff.max_abs() < 1e-12,
                "closed form deviates from the solved map on {num_orbitals} orbitals: {}",
                diff.max_abs()
            );
        }
    }

    #[test]
    fn squared_conjugation_is_the_parity_signed_identity() {
        for num_orbitals in 1..=10 {
            let xi = xi_fast(num_orbitals).unwrap();
            let squared = xi.squared().unwrap();
            let sign = if (num_orbitals * (num_orbitals - 1) / 2) % 2 == 0 {
                1.0
            } else {
                -1.0
            };
            let dim = 1usize << num_orbitals;
            assert_eq!(squared.matrix().nnz(), dim);
            for (row, col, value) in squared.matrix().iter() {
                assert_eq!(row, col);
                assert_eq!(value, Scalar::new(sign, 0.0));
            }
        }
    }

    #[test]
    fn conjugation_maps_each_sector_to_its_complement() {
        let num_orbitals = 5;
        let xi = xi_fast(num_orbitals).unwrap();
        let space = FockSpace::full(num_orbitals).unwrap();
        for (row, col, _) in xi.unitary_part().iter() {
            let source = space.state(col);
            let image = space.state(row);
            assert_eq!(
                image.count_ones(),
                num_orbitals as u32 - source.count_ones()
            );
            assert_eq!(image & source, 0);
        }
    }

    #[test]
    fn vacuum_maps_to_the_top_state_with_unit_coefficient() {
        for num_orbitals in 1..=8 {
            let xi = xi_fast(num_orbitals).unwrap();
            let space = FockSpace::full(num_orbitals).unwrap();
            let mut vacuum = vec![Scalar::new(0.0, 0.0); space.dim()];
            vacuum[0] = Scalar::new(1.0, 0.0);
            let image = xi.apply(&vacuum);
            let top_index = space.index_of((1u32 << num_orbitals) - 1).unwrap();
            for (idx, value) in image.iter().enumerate() {
                let expected = if idx == top_index { 1.0 } else { 0.0 };
                assert_eq!(*value, Scalar::new(expected, 0.0));
            }
        }
    }

    #[test]
    fn conjugation_swaps_creation_and_annihilation() {
        for num_orbitals in 1..=4 {
            let xi = xi_fast(num_orbitals).unwrap();
            let space = FockSpace::full(num_orbitals).unwrap();
            for orbital in 0..num_orbitals {
                let create = creation_matrix(&space, orbital).unwrap();
                let annihilate = annihilation_matrix(&space, orbital).unwrap();
                let conjugated = conjugate_by_antilinear(&xi, &create).unwrap();
                let diff = conjugated
                    .add_scaled(&annihilate, Scalar::new(-1.0, 0.0))
                    .unwrap();
                assert!(diff.max_abs() < 1e-12);
                let back = conjugate_by_antilinear(&xi, &annihilate).unwrap();
                let diff = back.add_scaled(&create, Scalar::new(-1.0, 0.0)).unwrap();
                assert!(diff.max_abs() < 1e-12);
            }
        }
    }

    #[test]
    fn range_guards_reject_out_of_bounds_orbitals() {
        assert!(xi_oracle(0).is_err());
        assert!(xi_oracle(13).is_err());
        assert!(xi_fast(0).is_err());
        assert!(xi_fast(25).is_err());
    }
}

//! Particle-hole conjugation built from its first-quantized integral form.
//!
//! Pairing an `n`-particle state against the fully filled level,
//!
//! `(Ξψ)(z_{n+1}, …, z_N) = λ · ∫ dμ(z_1)…dμ(z_n) conj(ψ(z_1..z_n)) Ω(z_1..z_N)`,
//!
//! with `Ω ∝ ∏_{i<j}(z_i − z_j)` the filled level, produces the conjugation
//! on the `N − n`-particle complement.  This module evaluates the integral
//! literally: both determinants are expanded into their `N!` permutation
//! terms and every term is integrated through the monomial norm table — no
//! cancellation occurs, because a permutation contributes only to the
//! complement of the exponent set it assigns to the integration block, with
//! a sign independent of the splitting.  The result is converted to the
//! ascending-order occupation convention and checked entry by entry against
//! the closed-form conjugation `xi_fast` before being returned.

use crate::error::{PhsymError, Result};
use crate::fock::{AntilinearMap, FockSpace, FockState};
use crate::linalg::CsrMatrix;
use crate::lll::space::{binomial, LllSpace};
use crate::phc::xi_fast;
use crate::{CMat, Real, Scalar, TOL_SPECTRAL};

/// Largest flux for the literal expansion (the integral has `flux!` terms).
pub const MAX_INTEGRAL_CONJUGATION_FLUX: usize = 8;

/// Builds the particle-hole conjugation on the `occupied`-particle sector of
/// a `flux`-orbital lowest Landau level from the first-quantized integral
/// against the filled level.
///
/// The returned map sends sector `occupied` to sector `flux − occupied` and
/// agrees with `xi_fast(flux)` restricted to the sector; a residual above
/// 1e−10 in that comparison is a construction failure.
pub fn xi_lll(flux: usize, occupied: usize) -> Result<AntilinearMap> {
    if flux == 0 || flux > MAX_INTEGRAL_CONJUGATION_FLUX {
        return Err(PhsymError::invalid(format!(
            "integral-form conjugation accepts 1..={MAX_INTEGRAL_CONJUGATION_FLUX} orbitals, \
             got {flux}"
        )));
    }
    if occupied > flux {
        return Err(PhsymError::invalid(format!(
            "sector {occupied} does not exist on {flux} orbitals"
        )));
    }
    let level = LllSpace::new(flux)?;
    let nu = level.norms();
    let source = FockSpace::sector(flux, occupied)?;
    let target = FockSpace::sector(flux, flux - occupied)?;

    // Raw integral amplitude per source state, with the filled level
    // expanded as the ascending-power determinant det[z_b^l].  A permutation
    // σ assigns exponent σ(b) to coordinate b; coordinates 1..=occupied are
    // integrated against the conjugated source determinant (one norm ν_e per
    // matched exponent) and the rest are projected back onto the target
    // determinant (again one ν_e each, combined with the √ν's split between
    // the monomial-to-orthonormal change and the target normalization
    // divided out below).  Both pairings also contribute the parity of
    // sorting their block.
    let mut raw = vec![0.0 as Real; source.dim()];
    let mut exponents: Vec<usize> = (0..flux).collect();
    loop {
        let term_sign = inversion_sign(&exponents)
            * inversion_sign(&exponents[..occupied])
            * inversion_sign(&exponents[occupied..]);
        let mut weight = 1.0;
        for &e in &exponents {
            weight *= nu[e];
        }
        let pattern: FockState = exponents[..occupied]
            .iter()
            .fold(0, |bits, &e| bits | (1 << e));
        let column = source
            .index_of(pattern)
            .expect("every exponent subset labels a sector basis state");
        raw[column] += term_sign * weight;
        if !next_permutation(&mut exponents) {
            break;
        }
    }

    // Conventions separating the integral form from the occupation-flip
    // form:
    //  * the filled level is written ∏_{i<j}(z_i − z_j), which is
    //    (−1)^{flux(flux−1)/2} times the determinant expanded above;
    //  * λ restores the isometry lost to first-quantized double counting
    //    (√C(flux, n) after the Slater normalizations are divided out) and
    //    pays (−1)^{n(n−1)/2} for peeling the n integration coordinates off
    //    the front of the coordinate list instead of interleaving them in
    //    ascending order.
    // The two flux-dependent signs cancel; both are kept for the record.
    let vandermonde_orientation = parity_sign(flux * (flux - 1) / 2);
    let lambda = binomial(flux, occupied).sqrt()
        * parity_sign(flux * (flux - 1) / 2)
        * parity_sign(occupied * occupied.saturating_sub(1) / 2);
    let prefactor = vandermonde_orientation * lambda;

    let factorial = |k: usize| (1..=k).fold(1.0, |acc, i| acc * i as Real);
    let filled_scale = (factorial(flux) * nu.iter().product::<Real>()).sqrt();
    let mask = (1u32 << flux) - 1;
    let mut triplets = Vec::with_capacity(source.dim());
    for (column, &state) in source.basis().iter().enumerate() {
        let complement = !state & mask;
        let row = target
            .index_of(complement)
            .expect("complements enumerate the conjugate sector");
        let source_scale = (factorial(occupied) * subset_norm_product(nu, state)).sqrt();
        let target_scale =
            (factorial(flux - occupied) * subset_norm_product(nu, complement)).sqrt();
        let value = prefactor * raw[column] / (source_scale * filled_scale * target_scale);
        triplets.push((row as u32, column as u32, Scalar::new(value, 0.0)));
    }
    let matrix = CsrMatrix::from_triplets(target.dim(), source.dim(), triplets)?;
    let map = AntilinearMap::new(source.into(), target.into(), matrix)?;

    // Return contract: the integral form is the closed form in disguise.
    let reference = xi_sector_block(flux, occupied)?;
    let residual = (map.unitary_part().to_dense() - &reference)
        .map(|z| z.norm())
        .max();
    if residual > TOL_SPECTRAL {
        return Err(PhsymError::SelfCheckFailed {
            check: "integral-form conjugation against the closed form".into(),
            residual,
            tolerance: TOL_SPECTRAL,
        });
    }
    Ok(map)
}

/// Dense sector block of the closed-form conjugation: `xi_fast(flux)`
/// restricted to `occupied → flux − occupied`.
pub(crate) fn xi_sector_block(flux: usize, occupied: usize) -> Result<CMat> {
    let full = xi_fast(flux)?;
    let domain = FockSpace::sector(flux, occupied)?;
    let codomain = FockSpace::sector(flux, flux - occupied)?;
    let cols: Vec<FockState> = domain.basis().to_vec();
    let rows: Vec<FockState> = codomain.basis().to_vec();
    let block = full.restrict(domain.into(), &cols, codomain.into(), &rows)?;
    Ok(block.unitary_part().to_dense())
}

/// Product of `ν_l` over the occupied orbitals of `state`.
fn subset_norm_product(nu: &[Real], state: FockState) -> Real {
    let mut product = 1.0;
    let mut rest = state;
    while rest != 0 {
        product *= nu[rest.trailing_zeros() as usize];
        rest &= rest - 1;
    }
    product
}

/// `(−1)^k`.
fn parity_sign(k: usize) -> Real {
    if k % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Parity of a sequence of distinct keys: `(−1)^{#inversions}`, which is
/// both the sign of the sequence read as a permutation and the sign of the
/// permutation that sorts it.
fn inversion_sign(sequence: &[usize]) -> Real {
    let mut inversions = 0usize;
    for i in 0..sequence.len() {
        for j in i + 1..sequence.len() {
            if sequence[i] > sequence[j] {
                inversions += 1;
            }
        }
    }
    parity_sign(inversions)
}

/// Advances `sequence` to its lexicographic successor; returns `false` once
/// the sequence is descending (the last permutation).
fn next_permutation(sequence: &mut [usize]) -> bool {
    if sequence.len() < 2 {
        return false;
    }
    let mut pivot = sequence.len() - 1;
    while pivot > 0 && sequence[pivot - 1] >= sequence[pivot] {
        pivot -= 1;
    }
    if pivot == 0 {
        return false;
    }
    let mut swap = sequence.len() - 1;
    while sequence[swap] <= sequence[pivot - 1] {
        swap -= 1;
    }
    sequence.swap(pivot - 1, swap);
    sequence[pivot..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integral_form_matches_the_closed_form_on_every_sector() {
        for flux in 1..=MAX_INTEGRAL_CONJUGATION_FLUX {
            for occupied in 0..=flux {
                let map = xi_lll(flux, occupied).unwrap();
                assert_eq!(map.domain().dim(), binomial(flux, occupied) as usize);
                let reference = xi_sector_block(flux, occupied).unwrap();
                let residual = (map.unitary_part().to_dense() - &reference)
                    .map(|z| z.norm())
                    .max();
                assert!(
                    residual < 1e-10,
                    "flux {flux}, sector {occupied}: residual {residual:.3e}"
                );
            }
        }
    }

    #[test]
    fn two_orbital_conjugation_matches_the_elementary_action() {
        // One particle in two orbitals: the conjugation swaps the orbitals
        // and signs the second one, Ξ e_{0} = +e_{1}, Ξ e_{1} = −e_{0}.
        let map = xi_lll(2, 1).unwrap();
        let dense = map.unitary_part().to_dense();
        let expected = CMat::from_row_slice(
            2,
            2,
            &[
                Scalar::new(0.0, 0.0),
                Scalar::new(-1.0, 0.0),
                Scalar::new(1.0, 0.0),
                Scalar::new(0.0, 0.0),
            ],
        );
        assert!((dense - expected).map(|z| z.norm()).max() < 1e-12);
    }

    #[test]
    fn vacuum_conjugates_to_the_filled_level() {
        // The empty product leaves the bare integral of the filled level:
        // in ascending occupation convention the image is +|1…1⟩ (the
        // product-ordering sign of the filled level is absorbed by the
        // same convention constant that fixes every other sector).
        for flux in 1..=MAX_INTEGRAL_CONJUGATION_FLUX {
            let map = xi_lll(flux, 0).unwrap();
            let dense = map.unitary_part().to_dense();
            assert_eq!(dense.nrows(), 1);
            assert_eq!(dense.ncols(), 1);
            assert!((dense[(0, 0)] - Scalar::new(1.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn conjugation_windows_are_enforced() {
        assert!(xi_lll(0, 0).is_err());
        assert!(xi_lll(MAX_INTEGRAL_CONJUGATION_FLUX + 1, 2).is_err());
        assert!(xi_lll(4, 5).is_err());
    }

    #[test]
    fn permutation_enumeration_is_complete_and_signed() {
        let mut sequence = vec![0, 1, 2, 3];
        let mut count = 1usize;
        let mut sign_sum = inversion_sign(&sequence);
        while next_permutation(&mut sequence) {
            count += 1;
            sign_sum += inversion_sign(&sequence);
        }
        assert_eq!(count, 24);
        assert_eq!(sign_sum, 0.0);
        assert_eq!(sequence, vec![3, 2, 1, 0]);
    }
}

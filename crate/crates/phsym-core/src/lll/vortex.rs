//! Flux insertion in the lowest Landau level: vortex, anti-vortex, and
//! their composites.
//!
//! A vortex at `z₀` multiplies the many-body wave function by
//! `∏_j (z_j − z₀)`, adding one flux quantum at fixed particle number.  In
//! the orthonormal orbital basis the single-particle factor is bidiagonal,
//! `φ_l ↦ √(2(l+1))·φ_{l+1} − z₀·φ_l`, and the many-body action is its
//! exterior power (minor determinants on Slater states).  The anti-vortex
//! is the particle-hole conjugate `U♭ = Ξ∘U∘Ξ⁻¹`; at `z₀ = 0` the vortex
//! leaves the zero orbital always empty and the anti-vortex always
//! occupied.  The composites `C = U♭∘U` and its conjugate partner `C♭` add
//! one particle and two flux quanta — preserving half filling — and form a
//! Kramers pair: conjugating twice returns `−C`.

use std::sync::Arc;

use crate::error::{PhsymError, Result};
use crate::fock::{occupied_orbitals, FockSpace, FockState};
use crate::lll::conjugation::xi_sector_block;
use crate::lll::space::LllSpace;
use crate::{CMat, Real, Scalar};

/// A linear map between particle-number sectors of two lowest Landau
/// levels at (generally) different flux.
#[derive(Debug, Clone)]
pub struct InterSpaceMap {
    source: Arc<FockSpace>,
    target: Arc<FockSpace>,
    matrix: CMat,
}

impl InterSpaceMap {
    fn assemble(source: Arc<FockSpace>, target: Arc<FockSpace>, matrix: CMat) -> Self {
        debug_assert_eq!(matrix.nrows(), target.dim());
        debug_assert_eq!(matrix.ncols(), source.dim());
        InterSpaceMap {
            source,
            target,
            matrix,
        }
    }

    /// Sector the map acts on.
    pub fn source(&self) -> &Arc<FockSpace> {
        &self.source
    }

    /// Sector the map lands in.
    pub fn target(&self) -> &Arc<FockSpace> {
        &self.target
    }

    /// Matrix between the sector bases (rows: target, columns: source).
    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }

    /// `self ∘ inner` (apply `inner` first).
    pub fn compose(&self, inner: &InterSpaceMap) -> Result<InterSpaceMap> {
        if !FockSpace::same_space(&self.source, &inner.target) {
            return Err(PhsymError::SpaceMismatch(
                "inter-space composition: inner map does not land in the outer source".into(),
            ));
        }
        Ok(InterSpaceMap::assemble(
            inner.source.clone(),
            self.target.clone(),
            &self.matrix * &inner.matrix,
        ))
    }

    /// Occupation-number action: one `(source pattern, target pattern,
    /// amplitude)` row per source basis state.  Available only when every
    /// column holds exactly one nonzero entry — true for every `z₀ = 0` map
    /// in this module — and `None` otherwise.  Amplitudes are reported with
    /// their actual signs.
    pub fn occupation_action(&self) -> Option<Vec<(FockState, FockState, Scalar)>> {
        let tolerance = 1e-12 * self.matrix.map(|z| z.norm()).max();
        let mut action = Vec::with_capacity(self.source.dim());
        for (column, &state) in self.source.basis().iter().enumerate() {
            let mut hit: Option<(usize, Scalar)> = None;
            for row in 0..self.target.dim() {
                let value = self.matrix[(row, column)];
                if value.norm() > tolerance {
                    if hit.is_some() {
                        return None;
                    }
                    hit = Some((row, value));
                }
            }
            let (row, value) = hit?;
            action.push((state, self.target.basis()[row], value));
        }
        Some(action)
    }
}

/// Vortex at `z₀`: multiplication by `∏_j (z_j − z₀)`, taking the
/// `occupied`-particle sector at `flux` quanta to the same filling at
/// `flux + 1`.  Built as the exterior power of the bidiagonal
/// single-particle factor; for `z₀ = 0` the occupation action is the
/// orbital shift `n ↦ {0, n₀, n₁, …}`.
pub fn vortex_map(flux: usize, occupied: usize, z0: Scalar) -> Result<InterSpaceMap> {
    let source_level = LllSpace::new(flux)?;
    let target_level = LllSpace::new(flux + 1)?;
    if occupied > flux {
        return Err(PhsymError::invalid(format!(
            "vortex insertion needs occupied ≤ flux, got {occupied} > {flux}"
        )));
    }
    let source = source_level.sector(occupied)?;
    let target = target_level.sector(occupied)?;

    // Single-particle factor: (z − z₀)·φ_l = √(ν_{l+1}/ν_l)·φ_{l+1} − z₀·φ_l
    // with ν_{l+1}/ν_l = 2(l+1).
    let mut single = CMat::zeros(flux + 1, flux);
    for l in 0..flux {
        single[(l + 1, l)] = Scalar::new((2.0 * (l + 1) as Real).sqrt(), 0.0);
        single[(l, l)] = -z0;
    }

    // Exterior power: on Slater states a product of one single-particle
    // factor per particle acts through the minor determinants.
    let source_orbitals: Vec<Vec<usize>> =
        source.basis().iter().map(|&s| occupied_orbitals(s)).collect();
    let target_orbitals: Vec<Vec<usize>> =
        target.basis().iter().map(|&t| occupied_orbitals(t)).collect();
    let mut matrix = CMat::zeros(target.dim(), source.dim());
    for (column, cols) in source_orbitals.iter().enumerate() {
        for (row, rows) in target_orbitals.iter().enumerate() {
            matrix[(row, column)] = minor_determinant(&single, rows, cols);
        }
    }
    Ok(InterSpaceMap::assemble(source, target, matrix))
}

/// Anti-vortex at `z₀`: the particle-hole conjugate `Ξ ∘ U_{z₀} ∘ Ξ⁻¹`,
/// taking sector `occupied` at `flux` quanta to `occupied + 1` at
/// `flux + 1`.  The inner vortex acts on the complementary filling; for
/// `z₀ = 0` the occupation action shifts every orbital up and leaves the
/// zero orbital always occupied.
pub fn antivortex_map(flux: usize, occupied: usize, z0: Scalar) -> Result<InterSpaceMap> {
    LllSpace::new(flux)?;
    if occupied > flux {
        return Err(PhsymError::invalid(format!(
            "anti-vortex insertion needs occupied ≤ flux, got {occupied} > {flux}"
        )));
    }
    flat_conjugate(&vortex_map(flux, flux - occupied, z0)?)
}

/// Vortex/anti-vortex composites at `z₀`: `C = U♭ ∘ U` from sector
/// `occupied` at `flux` quanta to `occupied + 1` at `flux + 2`, together
/// with its conjugate partner `C♭` between the same sectors (the conjugate
/// of the composite built at the complementary filling).  At `z₀ = 0` the
/// occupation actions are `±C: n ↦ (1, 0, n₀, …)` and
/// `±C♭: n ↦ (0, 1, n₀, …)`.
pub fn composite_maps(
    flux: usize,
    occupied: usize,
    z0: Scalar,
) -> Result<(InterSpaceMap, InterSpaceMap)> {
    LllSpace::new(flux)?;
    LllSpace::new(flux + 2)?;
    if occupied >= flux {
        return Err(PhsymError::invalid(format!(
            "composite insertion needs occupied < flux, got {occupied} ≥ {flux}"
        )));
    }
    let composite = |filling: usize| -> Result<InterSpaceMap> {
        let vortex = vortex_map(flux, filling, z0)?;
        let anti = antivortex_map(flux + 1, filling, z0)?;
        anti.compose(&vortex)
    };
    let direct = composite(occupied)?;
    let partner = flat_conjugate(&composite(flux - occupied)?)?;
    Ok((direct, partner))
}

/// Kramers residual of the composite pair: `‖C♭♭ + C‖_max`, which vanishes
/// because conjugating twice carries `(−1)^{F(F−1)/2}` per level and the
/// two levels differ by two flux quanta, combining to
/// `(−1)^{(flux+2)(flux+1)/2 + flux(flux−1)/2} = (−1)^{flux² + flux + 1} = −1`.
pub fn kramers_check(flux: usize, occupied: usize, z0: Scalar) -> Result<Real> {
    let (direct, _partner) = composite_maps(flux, occupied, z0)?;
    let partner_at_complement = flat_conjugate(&direct)?;
    let double = flat_conjugate(&partner_at_complement)?;
    debug_assert!(FockSpace::same_space(double.source(), direct.source()));
    debug_assert!(FockSpace::same_space(double.target(), direct.target()));
    Ok((double.matrix() + direct.matrix()).map(|z| z.norm()).max())
}

/// Particle-hole conjugate of an inter-space map: `Ξ_target ∘ map ∘
/// Ξ_source⁻¹`, acting between the complementary sectors.  The conjugation
/// is real in the occupation basis, so on components the matrix is
/// `X_target · conj(M) · X_sourceᵀ` with `X` the dense sector blocks of the
/// closed-form conjugation.
fn flat_conjugate(map: &InterSpaceMap) -> Result<InterSpaceMap> {
    let sector_of = |space: &Arc<FockSpace>| {
        space.sector_number().ok_or_else(|| {
            PhsymError::SpaceMismatch("conjugation needs fixed-particle-number sectors".into())
        })
    };
    let source_flux = map.source().num_orbitals();
    let target_flux = map.target().num_orbitals();
    let source_filling = sector_of(map.source())?;
    let target_filling = sector_of(map.target())?;
    let new_source = FockSpace::sector(source_flux, source_flux - source_filling)?;
    let new_target = FockSpace::sector(target_flux, target_flux - target_filling)?;
    let x_source = xi_sector_block(source_flux, source_filling)?;
    let x_target = xi_sector_block(target_flux, target_filling)?;
    let matrix = &x_target * map.matrix().conjugate() * x_source.transpose();
    Ok(InterSpaceMap::assemble(new_source, new_target, matrix))
}

/// Determinant of the `rows × cols` minor of `matrix`.
fn minor_determinant(matrix: &CMat, rows: &[usize], cols: &[usize]) -> Scalar {
    debug_assert_eq!(rows.len(), cols.len());
    if rows.is_empty() {
        return Scalar::new(1.0, 0.0);
    }
    let minor = CMat::from_fn(rows.len(), cols.len(), |i, j| matrix[(rows[i], cols[j])]);
    minor.determinant()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lll::space::lll_norms;
    use crate::phc::xi_oracle;

    /// First-quantized oracle for the two-particle vortex: expand the
    /// normalized Slater pair in raw monomials of (z₁, z₂), multiply the
    /// coefficient table by (z₁ − z₀) and (z₂ − z₀), and project back onto
    /// the orthonormal pairs at flux + 1.
    fn pair_vortex_oracle(flux: usize, z0: Scalar) -> CMat {
        let nu = lll_norms(flux + 1);
        let source = FockSpace::sector(flux, 2).unwrap();
        let target = FockSpace::sector(flux + 1, 2).unwrap();
        let zero = Scalar::new(0.0, 0.0);
        let mut matrix = CMat::zeros(target.dim(), source.dim());
        for (column, &s) in source.basis().iter().enumerate() {
            let occ = occupied_orbitals(s);
            let (s0, s1) = (occ[0], occ[1]);
            // Φ = (φ_{s0}(z₁)φ_{s1}(z₂) − φ_{s1}(z₁)φ_{s0}(z₂))/√2 in
            // monomial coefficients c[a][b] of z₁^a z₂^b.
            let mut c = vec![vec![zero; flux + 2]; flux + 2];
            let norm = (2.0 * nu[s0] * nu[s1]).sqrt();
            c[s0][s1] = Scalar::new(1.0 / norm, 0.0);
            c[s1][s0] = Scalar::new(-1.0 / norm, 0.0);
            // Multiply by (z₁ − z₀): shift the first index up, minus z₀
            // times the original table; then the same on the second index.
            let mut after_first = vec![vec![zero; flux + 2]; flux + 2];
            for a in 0..=flux {
                for b in 0..=flux {
                    after_first[a + 1][b] += c[a][b];
                    after_first[a][b] -= z0 * c[a][b];
                }
            }
            let mut after_both = vec![vec![zero; flux + 2]; flux + 2];
            for a in 0..=flux + 1 {
                for b in 0..=flux {
                    after_both[a][b + 1] += after_first[a][b];
                    after_both[a][b] -= z0 * after_first[a][b];
                }
            }
            for (row, &t) in target.basis().iter().enumerate() {
                let tocc = occupied_orbitals(t);
                let (t0, t1) = (tocc[0], tocc[1]);
                // ⟨Φ_T, Σ c·z₁^a z₂^b⟩ = √(ν_{t0}ν_{t1}/2)·(c[t0][t1] − c[t1][t0]).
                matrix[(row, column)] = (after_both[t0][t1] - after_both[t1][t0])
                    * Scalar::new((nu[t0] * nu[t1] / 2.0).sqrt(), 0.0);
            }
        }
        matrix
    }

    /// Dense sector block of the independently solved conjugation (the
    /// pairing construction, not the closed form the library builds on).
    fn solved_sector_block(flux: usize, occupied: usize) -> CMat {
        let full = xi_oracle(flux).unwrap();
        let domain = FockSpace::sector(flux, occupied).unwrap();
        let codomain = FockSpace::sector(flux, flux - occupied).unwrap();
        let cols: Vec<FockState> = domain.basis().to_vec();
        let rows: Vec<FockState> = codomain.basis().to_vec();
        let block = full
            .restrict(domain.into(), &cols, codomain.into(), &rows)
            .unwrap();
        block.unitary_part().to_dense()
    }

    fn max_abs(m: CMat) -> Real {
        m.map(|z| z.norm()).max()
    }

    #[test]
    fn two_particle_action_matches_a_first_quantized_expansion() {
        let z0 = Scalar::new(0.3, -0.7);
        let oracle = pair_vortex_oracle(4, z0);
        let map = vortex_map(4, 2, z0).unwrap();
        assert!(max_abs(map.matrix() - oracle) < 1e-12);
    }

    #[test]
    fn vortex_at_the_origin_shifts_every_pattern_up() {
        let zero = Scalar::new(0.0, 0.0);
        for occupied in 1..=3 {
            let map = vortex_map(3, occupied, zero).unwrap();
            let action = map.occupation_action().expect("shift maps are single-state");
            for (source, target, amplitude) in action {
                assert_eq!(target, source << 1);
                assert!(amplitude.im.abs() < 1e-15);
                assert!(amplitude.re > 0.0);
            }
        }
        // One particle on orbital l picks up exactly the ladder factor.
        let map = vortex_map(3, 1, zero).unwrap();
        for (source, _, amplitude) in map.occupation_action().unwrap() {
            let l = source.trailing_zeros() as Real;
            assert!((amplitude.re - (2.0 * (l + 1.0)).sqrt()).abs() < 1e-12);
        }
        // Two particles on orbitals {0, 1}: amplitude √2·√4 = 2√2, sign +1.
        let map = vortex_map(3, 2, zero).unwrap();
        let action = map.occupation_action().unwrap();
        let (_, target, amplitude) = action
            .iter()
            .find(|(source, _, _)| *source == 0b011)
            .unwrap();
        assert_eq!(*target, 0b0110);
        assert!((amplitude - Scalar::new(8.0_f64.sqrt(), 0.0)).norm() < 1e-12);
    }

    #[test]
    fn vortex_on_the_empty_sector_is_the_unit_scalar() {
        let map = vortex_map(3, 0, Scalar::new(0.4, 0.1)).unwrap();
        assert_eq!(map.matrix().nrows(), 1);
        assert_eq!(map.matrix().ncols(), 1);
        assert!((map.matrix()[(0, 0)] - Scalar::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn vortex_is_injective_at_generic_and_special_points() {
        let cases = [
            (5, 2, Scalar::new(0.0, 0.0)),
            (5, 2, Scalar::new(0.2, 0.1)),
            (6, 3, Scalar::new(-1.3, 0.4)),
        ];
        for (flux, occupied, z0) in cases {
            let map = vortex_map(flux, occupied, z0).unwrap();
            let singular = map.matrix().clone().svd(false, false).singular_values;
            let smallest = singular.iter().cloned().fold(Real::INFINITY, Real::min);
            assert!(
                smallest > 1e-8,
                "flux {flux}, sector {occupied}: smallest singular value {smallest:.3e}"
            );
        }
    }

    #[test]
    fn antivortex_keeps_the_zero_orbital_occupied() {
        let zero = Scalar::new(0.0, 0.0);
        for occupied in 0..=3 {
            let map = antivortex_map(4, occupied, zero).unwrap();
            assert_eq!(map.target().sector_number(), Some(occupied + 1));
            let action = map.occupation_action().expect("shift maps are single-state");
            for (source, target, amplitude) in action {
                assert_eq!(target, (source << 1) | 1);
                assert!(amplitude.norm() > 0.0);
            }
        }
    }

    #[test]
    fn antivortex_agrees_with_an_independently_solved_conjugation() {
        for (flux, occupied, z0) in [
            (4, 2, Scalar::new(0.4, 0.2)),
            (5, 2, Scalar::new(-0.6, 1.1)),
        ] {
            // Conjugate the complementary-filling vortex through the solved
            // pairing construction instead of the closed form.
            let inner = vortex_map(flux, flux - occupied, z0).unwrap();
            let x_in = solved_sector_block(flux, flux - occupied);
            let x_out = solved_sector_block(flux + 1, flux - occupied);
            let expected = &x_out * inner.matrix().conjugate() * x_in.transpose();
            let map = antivortex_map(flux, occupied, z0).unwrap();
            assert!(max_abs(map.matrix() - expected) < 1e-12);
        }
    }

    #[test]
    fn composites_insert_the_advertised_pair_of_orbitals() {
        let zero = Scalar::new(0.0, 0.0);
        let (direct, partner) = composite_maps(4, 2, zero).unwrap();
        let direct_action = direct.occupation_action().unwrap();
        for (source, target, amplitude) in &direct_action {
            assert_eq!(*target, (source << 2) | 0b01);
            assert!(amplitude.im.abs() < 1e-12);
            assert!(amplitude.re.abs() > 0.0);
        }
        let partner_action = partner.occupation_action().unwrap();
        for (source, target, amplitude) in &partner_action {
            assert_eq!(*target, (source << 2) | 0b10);
            assert!(amplitude.im.abs() < 1e-12);
            assert!(amplitude.re.abs() > 0.0);
        }
        // The documented half-filled pattern: (0,1,1,0) goes to
        // (1,0,0,1,1,0) under C and to (0,1,0,1,1,0) under C♭.
        let row_of = |action: &[(FockState, FockState, Scalar)], source: FockState| {
            action.iter().find(|(s, _, _)| *s == source).unwrap().1
        };
        assert_eq!(row_of(&direct_action, 0b0110), 0b011001);
        assert_eq!(row_of(&partner_action, 0b0110), 0b011010);
    }

    #[test]
    fn composites_preserve_half_filling() {
        let z0 = Scalar::new(0.0, 0.3);
        for flux in [2usize, 4, 6, 8] {
            let (direct, partner) = composite_maps(flux, flux / 2, z0).unwrap();
            for map in [&direct, &partner] {
                assert_eq!(map.source().num_orbitals(), flux);
                assert_eq!(map.source().sector_number(), Some(flux / 2));
                assert_eq!(map.target().num_orbitals(), flux + 2);
                assert_eq!(map.target().sector_number(), Some(flux / 2 + 1));
            }
        }
    }

    #[test]
    fn kramers_partners_cancel_after_a_second_conjugation() {
        let residual = kramers_check(4, 2, Scalar::new(0.0, 0.0)).unwrap();
        assert!(residual < 1e-12, "residual {residual:.3e}");
        let residual = kramers_check(6, 3, Scalar::new(1.0, 0.5)).unwrap();
        assert!(residual < 1e-10, "residual {residual:.3e}");
    }

    #[test]
    fn double_conjugation_parity_bookkeeping() {
        for flux in 1..=10usize {
            let exponent = (flux + 2) * (flux + 1) / 2 + flux * (flux - 1) / 2;
            assert_eq!(exponent % 2, 1, "flux {flux}");
        }
    }

    #[test]
    fn flux_and_filling_windows_are_enforced() {
        let zero = Scalar::new(0.0, 0.0);
        assert!(vortex_map(12, 1, zero).is_err());
        assert!(vortex_map(3, 4, zero).is_err());
        assert!(antivortex_map(3, 4, zero).is_err());
        assert!(composite_maps(11, 1, zero).is_err());
        assert!(composite_maps(4, 4, zero).is_err());
    }

    #[test]
    fn composition_requires_matching_spaces() {
        let zero = Scalar::new(0.0, 0.0);
        let map = vortex_map(3, 1, zero).unwrap();
        assert!(map.compose(&map).is_err());
    }
}

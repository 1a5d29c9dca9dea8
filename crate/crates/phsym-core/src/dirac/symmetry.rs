//! First-quantized Dirac Hamiltonians in 2+1 dimensions and their exact
//! conjugation relations.
//!
//! The vortex-field Hamiltonian in a background field `a = m·dt − p` is
//!
//! `h(p, m) = v_F Σ_{l=1,2} σ_l ((1/i)∂_l + 2p_l) − 2m`
//!
//! in units where ħ and the charge unit q are one.  Because the
//! magnetization term carries no σ matrix, time reversal cannot commute
//! with `h`; instead three exact matrix relations hold for any real
//! anti-symmetric derivative stencil:
//!
//! * T (linear):      `σ₃ h(p, −m) σ₃ = −h(p, m)`
//! * C (antilinear):  `σ₁ conj(h(−p, −m)) σ₁ = −h(p, m)`
//! * CT (antilinear): `σ₂ conj(h(−p, m)) σ₂ = +h(p, m)` — a symmetry, not
//!   an anti-symmetry.
//!
//! For comparison, the electrically charged Dirac Hamiltonian
//! `h(A) = σ₃·mass − A₀ + Σ_l σ_l((1/i)∂_l − A_l)` satisfies the ordinary
//! charge-conjugation relation `−Γ h(A) = h(−A) Γ` with `Γψ = σ₁·conj(ψ)`.
//!
//! Matrix layout: the spinor component is the slow index, so component `c`
//! at site `s` is row `c·sites + s`.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dirac::grid::Grid2D;
use crate::error::{PhsymError, Result};
use crate::{CMat, Real, Scalar, TOL_CONSTRUCTION};

/// Background field of the vortex Hamiltonian: a polarization one-form
/// `p = p₁dx¹ + p₂dx²` and a magnetization scalar `m`, sampled per site.
#[derive(Debug, Clone)]
pub struct VortexField {
    /// First polarization component per site.
    pub p1: Vec<Real>,
    /// Second polarization component per site.
    pub p2: Vec<Real>,
    /// Magnetization per site.
    pub m: Vec<Real>,
}

impl VortexField {
    /// The zero field on `grid`.
    pub fn zero(grid: &Grid2D) -> Self {
        let sites = grid.sites();
        VortexField {
            p1: vec![0.0; sites],
            p2: vec![0.0; sites],
            m: vec![0.0; sites],
        }
    }

    /// A reproducible random field with every sample uniform in [−1, 1].
    pub fn random(grid: &Grid2D, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut draw = |count: usize| (0..count).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let sites = grid.sites();
        VortexField {
            p1: draw(sites),
            p2: draw(sites),
            m: draw(sites),
        }
    }

    /// The field with the polarization and/or magnetization negated.
    pub fn flipped(&self, flip_p: bool, flip_m: bool) -> Self {
        let negate = |values: &[Real]| values.iter().map(|v| -v).collect();
        VortexField {
            p1: if flip_p { negate(&self.p1) } else { self.p1.clone() },
            p2: if flip_p { negate(&self.p2) } else { self.p2.clone() },
            m: if flip_m { negate(&self.m) } else { self.m.clone() },
        }
    }

    fn check_shape(&self, grid: &Grid2D) -> Result<()> {
        let sites = grid.sites();
        for (name, values) in [("p1", &self.p1), ("p2", &self.p2), ("m", &self.m)] {
            if values.len() != sites {
                return Err(PhsymError::DimensionMismatch {
                    context: format!("vortex field component {name}"),
                    expected: sites,
                    found: values.len(),
                });
            }
            if values.iter().any(|v| !v.is_finite()) {
                return Err(PhsymError::invalid(format!(
                    "vortex field component {name} contains a non-finite sample"
                )));
            }
        }
        Ok(())
    }
}

/// Electromagnetic background `(A₀, A₁, A₂)` sampled per site.
#[derive(Debug, Clone)]
pub struct GaugeField {
    /// Scalar potential per site.
    pub a0: Vec<Real>,
    /// First vector-potential component per site.
    pub a1: Vec<Real>,
    /// Second vector-potential component per site.
    pub a2: Vec<Real>,
}

impl GaugeField {
    /// A reproducible random gauge field with samples uniform in [−1, 1].
    pub fn random(grid: &Grid2D, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut draw = |count: usize| (0..count).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let sites = grid.sites();
        GaugeField {
            a0: draw(sites),
            a1: draw(sites),
            a2: draw(sites),
        }
    }

    /// The charge-conjugated background `−A`.
    pub fn reversed(&self) -> Self {
        let negate = |values: &[Real]| values.iter().map(|v| -v).collect();
        GaugeField {
            a0: negate(&self.a0),
            a1: negate(&self.a1),
            a2: negate(&self.a2),
        }
    }

    fn check_shape(&self, grid: &Grid2D) -> Result<()> {
        let sites = grid.sites();
        for (name, values) in [("a0", &self.a0), ("a1", &self.a1), ("a2", &self.a2)] {
            if values.len() != sites {
                return Err(PhsymError::DimensionMismatch {
                    context: format!("gauge field component {name}"),
                    expected: sites,
                    found: values.len(),
                });
            }
            if values.iter().any(|v| !v.is_finite()) {
                return Err(PhsymError::invalid(format!(
                    "gauge field component {name} contains a non-finite sample"
                )));
            }
        }
        Ok(())
    }
}

/// The discretized vortex-field Hamiltonian together with the background
/// that produced it.
#[derive(Debug, Clone)]
pub struct VortexFieldHamiltonian {
    field: VortexField,
    speed: Real,
    matrix: CMat,
}

impl VortexFieldHamiltonian {
    /// The background field.
    pub fn field(&self) -> &VortexField {
        &self.field
    }

    /// Fermi velocity `v_F`.
    pub fn speed(&self) -> Real {
        self.speed
    }

    /// The `2·sites`-dimensional Hermitian matrix.
    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }
}

/// Builds `h(p, m) = v_F Σ_l σ_l((1/i)∂_l + 2p_l) − 2m` on `grid`.
///
/// The derivative stencil is asserted to be real anti-symmetric — the one
/// property the conjugation relations rely on — and the assembled matrix is
/// checked Hermitian to 1e−12.
pub fn build_vortex_hamiltonian(
    grid: &Grid2D,
    field: &VortexField,
    speed: Real,
) -> Result<VortexFieldHamiltonian> {
    field.check_shape(grid)?;
    if !speed.is_finite() {
        return Err(PhsymError::invalid(format!(
            "Fermi velocity must be finite, got {speed}"
        )));
    }
    let sites = grid.sites();
    let mut matrix = CMat::zeros(2 * sites, 2 * sites);
    for (axis, polarization) in [(0, &field.p1), (1, &field.p2)] {
        let stencil = grid.derivative(axis);
        assert_eq!(
            (&stencil + stencil.transpose()).map(Real::abs).max(),
            0.0,
            "derivative stencil must be anti-symmetric"
        );
        // (1/i)∂_l + 2p_l, Hermitian by construction.
        let mut kinetic = stencil.map(|d| Scalar::new(0.0, -d));
        for site in 0..sites {
            kinetic[(site, site)] += Scalar::new(2.0 * polarization[site], 0.0);
        }
        matrix += pauli(axis + 1).kronecker(&kinetic) * Scalar::new(speed, 0.0);
    }
    for site in 0..sites {
        let shift = Scalar::new(-2.0 * field.m[site], 0.0);
        matrix[(site, site)] += shift;
        matrix[(sites + site, sites + site)] += shift;
    }
    let residual = max_abs(&matrix - matrix.adjoint());
    if residual > TOL_CONSTRUCTION {
        return Err(PhsymError::NotHermitian {
            residual,
            tolerance: TOL_CONSTRUCTION,
        });
    }
    Ok(VortexFieldHamiltonian {
        field: field.clone(),
        speed,
        matrix,
    })
}

/// Time-reversal residual `‖σ₃ h(p, −m) σ₃ + h(p, m)‖_max`: T is linear,
/// keeps `p`, flips `m`, and anti-commutes with the Hamiltonian.
pub fn verify_t_relation(grid: &Grid2D, field: &VortexField) -> Result<Real> {
    let plain = build_vortex_hamiltonian(grid, field, 1.0)?;
    let flipped = build_vortex_hamiltonian(grid, &field.flipped(false, true), 1.0)?;
    let s3 = spinor_operator(grid, 3);
    Ok(max_abs(&s3 * flipped.matrix() * &s3 + plain.matrix()))
}

/// Charge-conjugation residual `‖σ₁ conj(h(−p, −m)) σ₁ + h(p, m)‖_max`:
/// C is antilinear, flips the whole background, and anti-commutes with the
/// Hamiltonian.
pub fn verify_c_relation(grid: &Grid2D, field: &VortexField) -> Result<Real> {
    let plain = build_vortex_hamiltonian(grid, field, 1.0)?;
    let flipped = build_vortex_hamiltonian(grid, &field.flipped(true, true), 1.0)?;
    let s1 = spinor_operator(grid, 1);
    Ok(max_abs(&s1 * flipped.matrix().conjugate() * &s1 + plain.matrix()))
}

/// Combined-conjugation residual `‖σ₂ conj(h(−p, m)) σ₂ − h(p, m)‖_max`:
/// CT is antilinear, flips only the polarization, and *commutes* with the
/// Hamiltonian — the sign that distinguishes it from its two factors.
pub fn verify_ct_relation(grid: &Grid2D, field: &VortexField) -> Result<Real> {
    let plain = build_vortex_hamiltonian(grid, field, 1.0)?;
    let flipped = build_vortex_hamiltonian(grid, &field.flipped(true, false), 1.0)?;
    let s2 = spinor_operator(grid, 2);
    Ok(max_abs(&s2 * flipped.matrix().conjugate() * &s2 - plain.matrix()))
}

/// Builds the electrically charged Dirac Hamiltonian
/// `h(A) = σ₃·mass − A₀ + Σ_l σ_l((1/i)∂_l − A_l)` with unit charge.
pub fn electromagnetic_hamiltonian(grid: &Grid2D, gauge: &GaugeField, mass: Real) -> Result<CMat> {
    gauge.check_shape(grid)?;
    if !mass.is_finite() {
        return Err(PhsymError::invalid(format!(
            "mass must be finite, got {mass}"
        )));
    }
    let sites = grid.sites();
    let mut matrix = CMat::zeros(2 * sites, 2 * sites);
    for (axis, potential) in [(0, &gauge.a1), (1, &gauge.a2)] {
        let stencil = grid.derivative(axis);
        let mut kinetic = stencil.map(|d| Scalar::new(0.0, -d));
        for site in 0..sites {
            kinetic[(site, site)] -= Scalar::new(potential[site], 0.0);
        }
        matrix += pauli(axis + 1).kronecker(&kinetic);
    }
    for site in 0..sites {
        let scalar = Scalar::new(gauge.a0[site], 0.0);
        let massive = Scalar::new(mass, 0.0);
        matrix[(site, site)] += massive - scalar;
        matrix[(sites + site, sites + site)] += -massive - scalar;
    }
    let residual = max_abs(&matrix - matrix.adjoint());
    if residual > TOL_CONSTRUCTION {
        return Err(PhsymError::NotHermitian {
            residual,
            tolerance: TOL_CONSTRUCTION,
        });
    }
    Ok(matrix)
}

/// Residual of the ordinary charge-conjugation relation
/// `−Γ h(A) = h(−A) Γ` with `Γψ = σ₁·conj(ψ)`, evaluated as
/// `‖σ₁ conj(h(A)) σ₁ + h(−A)‖_max`.  The mass term survives unflipped.
pub fn verify_electromagnetic_conjugation(
    grid: &Grid2D,
    gauge: &GaugeField,
    mass: Real,
) -> Result<Real> {
    let forward = electromagnetic_hamiltonian(grid, gauge, mass)?;
    let reversed = electromagnetic_hamiltonian(grid, &gauge.reversed(), mass)?;
    let s1 = spinor_operator(grid, 1);
    Ok(max_abs(&s1 * forward.conjugate() * &s1 + reversed))
}

/// Pauli matrix σ_index for index 1..=3.
fn pauli(index: usize) -> CMat {
    let zero = Scalar::new(0.0, 0.0);
    let one = Scalar::new(1.0, 0.0);
    match index {
        1 => CMat::from_row_slice(2, 2, &[zero, one, one, zero]),
        2 => CMat::from_row_slice(
            2,
            2,
            &[zero, Scalar::new(0.0, -1.0), Scalar::new(0.0, 1.0), zero],
        ),
        3 => CMat::from_row_slice(2, 2, &[one, zero, zero, -one]),
        _ => unreachable!("Pauli index must be 1, 2, or 3"),
    }
}

/// σ_index acting on the spinor factor, identity on the sites.
fn spinor_operator(grid: &Grid2D, index: usize) -> CMat {
    pauli(index).kronecker(&CMat::identity(grid.sites(), grid.sites()))
}

fn max_abs(matrix: CMat) -> Real {
    matrix.map(|z| z.norm()).max()
}

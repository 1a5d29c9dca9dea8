//! Angular-momentum recoupling on one rung pair of the spin-½ two-leg
//! ladder: explicitly coupled spin towers, the overlap table between
//! rung-coupled and leg-coupled pair states, and the projected couplings of
//! the single active exchange bond.

use crate::error::{PhsymError, Result};
use crate::fock::ProductSpace;
use crate::linalg::eigvalsh;
use crate::models::spin_site_operator;
use crate::{CMat, RMat, RVec, Real, Scalar};
use serde::Serialize;

/// Real lowering matrix S⁻ for spin S = two_s/2 in the basis ordered by
/// descending magnetic quantum number (row j carries m = S − j).
fn lowering_matrix(two_s: usize) -> RMat {
    let dim = two_s + 1;
    let s = two_s as Real / 2.0;
    let mut lowering = RMat::zeros(dim, dim);
    for j in 0..two_s {
        let m = s - j as Real;
        lowering[(j + 1, j)] = (s * (s + 1.0) - m * (m - 1.0)).sqrt();
    }
    lowering
}

/// Total lowering operator L₁ ⊗ 1 + 1 ⊗ L₂ on the pair space, indexed
/// `i₁ + d₁·i₂` (first factor fastest).
fn pair_lowering(two_s1: usize, two_s2: usize) -> RMat {
    let eye1 = RMat::identity(two_s1 + 1, two_s1 + 1);
    let eye2 = RMat::identity(two_s2 + 1, two_s2 + 1);
    eye2.kronecker(&lowering_matrix(two_s1)) + lowering_matrix(two_s2).kronecker(&eye1)
}

/// The coupled tower |J, M⟩ for two spins S₁ = two_s1/2, S₂ = two_s2/2 and
/// J = two_j/2, as a (d₁·d₂) × (two_j + 1) matrix.
///
/// Column k holds |J, M = J − k⟩ in the product basis `i₁ + d₁·i₂` (both
/// factors ordered by descending m). The highest-weight vector is fixed by
/// the standard convention: the coefficient on the maximal-m₁ product state
/// is positive. Lower columns follow from exact lowering,
/// |J, M−1⟩ = L_tot |J, M⟩ / √(J(J+1) − M(M−1)), so every column is a unit
/// vector of sharp total spin by construction.
pub fn coupled_tower(two_s1: usize, two_s2: usize, two_j: usize) -> Result<RMat> {
    let top = two_s1 + two_s2;
    let bottom = two_s1.abs_diff(two_s2);
    if two_j > top || two_j < bottom || (top - two_j) % 2 != 0 {
        return Err(PhsymError::invalid(format!(
            "total spin 2J = {two_j} outside the coupling range of 2S = {two_s1} and {two_s2}"
        )));
    }
    let mut higher: Vec<RMat> = Vec::with_capacity((top - two_j) / 2);
    let mut tj = top;
    loop {
        let tower = build_tower(two_s1, two_s2, tj, &higher);
        if tj == two_j {
            return Ok(tower);
        }
        higher.push(tower);
        tj -= 2;
    }
}

/// Builds one tower given all towers of larger total spin: the new highest
/// weight is the direction of the M = J product subspace orthogonal to the
/// M = J members of every higher tower.
fn build_tower(two_s1: usize, two_s2: usize, two_j: usize, higher: &[RMat]) -> RMat {
    let (d1, d2) = (two_s1 + 1, two_s2 + 1);
    let dim = d1 * d2;
    // Product states with total magnetic number M = J: i₁ + i₂ = q.
    let q = (two_s1 + two_s2 - two_j) / 2;
    let pairs: Vec<usize> = (q.saturating_sub(two_s2)..=q.min(two_s1))
        .map(|i1| i1 + d1 * (q - i1))
        .collect();
    // M = J column of a higher tower with 2J' = 2J + 2·(steps down).
    let blocked: Vec<RVec> = higher
        .iter()
        .enumerate()
        .map(|(n, tower)| tower.column(higher.len() - n).into_owned())
        .collect();
    let mut best = RVec::zeros(dim);
    let mut best_norm = -1.0;
    for &p in &pairs {
        let mut candidate = RVec::zeros(dim);
        candidate[p] = 1.0;
        for v in &blocked {
            let overlap = v.dot(&candidate);
            candidate -= v * overlap;
        }
        let norm = candidate.norm();
        if norm > best_norm {
            best_norm = norm;
            best = candidate;
        }
    }
    best /= best_norm;
    // Positive coefficient on the maximal-m₁ (minimal-i₁) member.
    if best[pairs[0]] < 0.0 {
        best = -best;
    }
    let mut tower = RMat::zeros(dim, two_j + 1);
    tower.set_column(0, &best);
    let lowering = pair_lowering(two_s1, two_s2);
    let j = two_j as Real / 2.0;
    for k in 1..=two_j {
        let m = j - (k - 1) as Real;
        let next = &lowering * tower.column(k - 1) / (j * (j + 1.0) - m * (m - 1.0)).sqrt();
        tower.set_column(k, &next);
    }
    tower
}

/// Factor positions of the two on-rung spin pairs in the four-factor space
/// (factor = 2·site_offset + leg, site offset ∈ {0, 1}, leg ∈ {0, 1}).
const RUNG_PAIRS: [(usize, usize); 2] = [(0, 1), (2, 3)];
/// Factor positions of the two along-leg spin pairs.
const LEG_PAIRS: [(usize, usize); 2] = [(0, 2), (1, 3)];

/// Embeds the product of two coupled pair states into the four-factor
/// space. Each pair names its two factor positions; together the pairs must
/// cover all four factors. Pair amplitudes are indexed `i_first + 2·i_second`
/// and the four-factor space by Σ_f i_f · 2^f.
fn embed_pair_product(
    pair_a: (usize, usize),
    va: &RVec,
    pair_b: (usize, usize),
    vb: &RVec,
) -> RVec {
    debug_assert_eq!(
        (1 << pair_a.0) | (1 << pair_a.1) | (1 << pair_b.0) | (1 << pair_b.1),
        0b1111
    );
    let mut out = RVec::zeros(16);
    for ia0 in 0..2 {
        for ia1 in 0..2 {
            for ib0 in 0..2 {
                for ib1 in 0..2 {
                    let r = (ia0 << pair_a.0)
                        | (ia1 << pair_a.1)
                        | (ib0 << pair_b.0)
                        | (ib1 << pair_b.1);
                    out[r] = va[ia0 + 2 * ia1] * vb[ib0 + 2 * ib1];
                }
            }
        }
    }
    out
}

/// Couples two pair towers (living on the given factor pairs) to total spin
/// J = two_j/2, returning the 16 × (two_j + 1) tower of |J, M⟩ states.
///
/// All couplings use the positive-highest-weight convention of
/// [`coupled_tower`], with one exception: two triplets coupled to a singlet
/// use the rotationally invariant contraction Σ_m (−1)^m |1,m⟩⊗|1,−m⟩/√3,
/// which differs from that convention by a global sign.
fn coupled_pair_states(
    pair_a: (usize, usize),
    tower_a: &RMat,
    pair_b: (usize, usize),
    tower_b: &RMat,
    two_j: usize,
) -> Result<RMat> {
    let (ta, tb) = (tower_a.ncols() - 1, tower_b.ncols() - 1);
    let cg = coupled_tower(ta, tb, two_j)?;
    let sign = if ta == 2 && tb == 2 && two_j == 0 {
        -1.0
    } else {
        1.0
    };
    let mut out = RMat::zeros(16, two_j + 1);
    for m_col in 0..=two_j {
        for ja in 0..=ta {
            for jb in 0..=tb {
                let coeff = sign * cg[(ja + (ta + 1) * jb, m_col)];
                if coeff == 0.0 {
                    continue;
                }
                let embedded = embed_pair_product(
                    pair_a,
                    &tower_a.column(ja).into_owned(),
                    pair_b,
                    &tower_b.column(jb).into_owned(),
                );
                let mut col = out.column_mut(m_col);
                col += embedded * coeff;
            }
        }
    }
    Ok(out)
}

/// Overlap rows of the rung-coupled triplet-pair states onto the leg-coupled
/// pair states, one row per total spin J of the rung pair.
///
/// Basis conventions per row (leg-pair spins (S₁, S₂) coupled to J):
/// `j0_row` → [(0,0), (1,1)], `j1_row` → [(0,1), (1,0), (1,1)],
/// `j2_row` → [(1,1)].
#[derive(Clone, Copy, Debug, Serialize)]
pub struct RecouplingTable {
    /// Coefficients of the J = 0 rung pair on the J = 0 leg couplings.
    pub j0_row: [Real; 2],
    /// Coefficients of the J = 1 rung pair on the J = 1 leg couplings.
    pub j1_row: [Real; 3],
    /// Coefficient of the J = 2 rung pair on the J = 2 leg coupling.
    pub j2_row: [Real; 1],
}

/// Scalar overlap of two towers of equal total spin, verified to be the
/// same across all magnetic components (an antisymmetric or non-scalar
/// overlap would signal a broken coupling construction).
fn tower_overlap(bra: &RMat, ket: &RMat) -> Result<Real> {
    let value = bra.column(0).dot(&ket.column(0));
    let mut spread: Real = 0.0;
    for m_col in 1..ket.ncols() {
        spread = spread.max((bra.column(m_col).dot(&ket.column(m_col)) - value).abs());
    }
    if spread > 1e-13 {
        return Err(PhsymError::SelfCheckFailed {
            check: "tower overlap is a scalar across magnetic components".to_string(),
            residual: spread,
            tolerance: 1e-13,
        });
    }
    Ok(value)
}

/// Computes, from first-principles angular-momentum coupling on four
/// spin-½ factors, the overlap coefficients of the rung-coupled triplet
/// pair states of total spin J onto the leg-coupled pair states of the same
/// J. See [`RecouplingTable`] for the row conventions.
pub fn recoupling_table() -> Result<RecouplingTable> {
    let singlet = coupled_tower(1, 1, 0)?;
    let triplet = coupled_tower(1, 1, 2)?;
    let rung = |two_j| {
        coupled_pair_states(RUNG_PAIRS[0], &triplet, RUNG_PAIRS[1], &triplet, two_j)
    };
    let leg = |ta: &RMat, tb: &RMat, two_j| {
        coupled_pair_states(LEG_PAIRS[0], ta, LEG_PAIRS[1], tb, two_j)
    };

    let rung0 = rung(0)?;
    let rung1 = rung(2)?;
    let rung2 = rung(4)?;
    let j0_row = [
        tower_overlap(&leg(&singlet, &singlet, 0)?, &rung0)?,
        tower_overlap(&leg(&triplet, &triplet, 0)?, &rung0)?,
    ];
    let j1_row = [
        tower_overlap(&leg(&singlet, &triplet, 2)?, &rung1)?,
        tower_overlap(&leg(&triplet, &singlet, 2)?, &rung1)?,
        tower_overlap(&leg(&triplet, &triplet, 2)?, &rung1)?,
    ];
    let j2_row = [tower_overlap(&leg(&triplet, &triplet, 4)?, &rung2)?];
    Ok(RecouplingTable {
        j0_row,
        j1_row,
        j2_row,
    })
}

/// The projected couplings of one active exchange bond, per total spin of
/// the rung-coupled triplet pair.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct EffectiveCouplings {
    /// Eigenvalue h_J of the projected bond operator on the J = 0, 1, 2
    /// blocks.
    pub values: [Real; 3],
    /// Dimensions of the three blocks (the J-multiplet sizes).
    pub degeneracies: [usize; 3],
}

/// Projects the single-bond exchange operator Σ_i S^i_B S^i_D − ¼ (acting on
/// the second-leg factors of the rung pair) to the 9-dimensional space of
/// two on-rung triplets and returns its eigenvalue on each total-spin block.
///
/// The blocks are cut out by the coupled towers of two spin-1 objects; the
/// projected operator is verified to be scalar on every block and the block
/// eigenvalues to exhaust its spectrum.
pub fn effective_couplings() -> Result<EffectiveCouplings> {
    // Exchange bond on the second leg: factors 1 and 3 of the 16-dim space.
    let space = ProductSpace::new(2, 4)?;
    let mut bond = CMat::identity(16, 16).scale(-0.25);
    for axis in 0..3 {
        let left = spin_site_operator(&space, 1, axis)?;
        let right = spin_site_operator(&space, 3, axis)?;
        bond += left.compose(&right)?.to_dense();
    }

    // Isometry from the two-triplet space into the four-factor space: the
    // 9 columns are the embedded products (rung triplet) ⊗ (rung triplet),
    // indexed j₁ + 3·j₂ (first rung fastest).
    let triplet = coupled_tower(1, 1, 2)?;
    let isometry_real = triplet.kronecker(&triplet);
    let isometry = isometry_real.map(|v| Scalar::new(v, 0.0));
    let projected = isometry.adjoint() * &bond * &isometry;

    let imag = projected.iter().map(|z| z.im.abs()).fold(0.0, Real::max);
    if imag > 1e-14 {
        return Err(PhsymError::SelfCheckFailed {
            check: "projected bond operator is real".to_string(),
            residual: imag,
            tolerance: 1e-14,
        });
    }

    let mut values = [0.0; 3];
    let mut degeneracies = [0; 3];
    for (j, slot) in values.iter_mut().enumerate() {
        let block_tower = coupled_tower(2, 2, 2 * j)?.map(|v| Scalar::new(v, 0.0));
        let block = block_tower.adjoint() * &projected * &block_tower;
        let dim = 2 * j + 1;
        let value = block.diagonal().iter().map(|z| z.re).sum::<Real>() / dim as Real;
        let residual = (&block - CMat::identity(dim, dim).scale(value))
            .iter()
            .map(|z| z.norm())
            .fold(0.0, Real::max);
        if residual > 1e-12 {
            return Err(PhsymError::SelfCheckFailed {
                check: format!("projected bond operator is scalar on the J = {j} block"),
                residual,
                tolerance: 1e-12,
            });
        }
        *slot = value;
        degeneracies[j] = dim;
    }

    // The three blocks must account for the whole 9-dim spectrum.
    let mut expected: Vec<Real> = values
        .iter()
        .zip(degeneracies)
        .flat_map(|(&v, d)| std::iter::repeat(v).take(d))
        .collect();
    expected.sort_by(|a, b| a.partial_cmp(b).expect("finite couplings"));
    let spectrum = eigvalsh(&projected)?;
    let mismatch = spectrum
        .iter()
        .zip(&expected)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, Real::max);
    if mismatch > 1e-12 {
        return Err(PhsymError::SelfCheckFailed {
            check: "total-spin blocks exhaust the projected spectrum".to_string(),
            residual: mismatch,
            tolerance: 1e-12,
        });
    }

    Ok(EffectiveCouplings {
        values,
        degeneracies,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Real total-spin Casimir S² = S^z S^z + ½(S⁺S⁻ + S⁻S⁺) on a pair
    /// space, indexed first factor fastest.
    fn pair_casimir(two_s1: usize, two_s2: usize) -> RMat {
        let (d1, d2) = (two_s1 + 1, two_s2 + 1);
        let z = |two_s: usize| {
            let s = two_s as Real / 2.0;
            RMat::from_fn(two_s + 1, two_s + 1, |r, c| {
                if r == c {
                    s - r as Real
                } else {
                    0.0
                }
            })
        };
        let sz = z(two_s2).kronecker(&RMat::identity(d1, d1))
            + RMat::identity(d2, d2).kronecker(&z(two_s1));
        let lowering = pair_lowering(two_s1, two_s2);
        let raising = lowering.transpose();
        &sz * &sz + (&raising * &lowering + &lowering * &raising).scale(0.5)
    }

    #[test]
    fn coupled_towers_are_orthonormal_and_carry_sharp_total_spin() {
        for (two_s1, two_s2) in [(1, 1), (1, 2), (2, 2), (0, 2)] {
            let casimir = pair_casimir(two_s1, two_s2);
            let mut columns = Vec::new();
            let mut two_j = two_s1 + two_s2;
            loop {
                let tower = coupled_tower(two_s1, two_s2, two_j).unwrap();
                let j = two_j as Real / 2.0;
                let action = &casimir * &tower - tower.scale(j * (j + 1.0));
                assert!(
                    action.iter().all(|v| v.abs() < 1e-13),
                    "2S = ({two_s1}, {two_s2}), 2J = {two_j}"
                );
                for col in tower.column_iter() {
                    columns.push(col.into_owned());
                }
                if two_j == two_s1.abs_diff(two_s2) {
                    break;
                }
                two_j -= 2;
            }
            assert_eq!(columns.len(), (two_s1 + 1) * (two_s2 + 1));
            for (a, va) in columns.iter().enumerate() {
                for (b, vb) in columns.iter().enumerate() {
                    let expected = if a == b { 1.0 } else { 0.0 };
                    assert!((va.dot(vb) - expected).abs() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn doublet_pair_towers_match_the_closed_forms() {
        let rt = (2.0f64).sqrt().recip();
        // Singlet (|↑↓⟩ − |↓↑⟩)/√2 with the maximal-m₁ component positive.
        let singlet = coupled_tower(1, 1, 0).unwrap();
        let expected_singlet = [0.0, -rt, rt, 0.0];
        for (got, want) in singlet.iter().zip(expected_singlet) {
            assert!((got - want).abs() < 1e-15);
        }
        // Triplet: aligned, symmetric, anti-aligned.
        let triplet = coupled_tower(1, 1, 2).unwrap();
        let expected_triplet =
            RMat::from_row_slice(4, 3, &[1.0, 0.0, 0.0, 0.0, rt, 0.0, 0.0, rt, 0.0, 0.0, 0.0, 1.0]);
        for (got, want) in triplet.iter().zip(expected_triplet.iter()) {
            assert!((got - want).abs() < 1e-15);
        }
    }

    #[test]
    fn coupling_range_and_parity_are_enforced() {
        assert!(coupled_tower(1, 1, 1).is_err());
        assert!(coupled_tower(1, 1, 4).is_err());
        assert!(coupled_tower(2, 0, 0).is_err());
        assert!(coupled_tower(0, 0, 0).is_ok());
        assert!(coupled_tower(0, 2, 2).is_ok());
    }

    #[test]
    fn recoupling_rows_match_the_closed_form() {
        let table = recoupling_table().unwrap();
        let rt3 = 3.0f64.sqrt();
        let rt2 = 2.0f64.sqrt();
        assert!((table.j0_row[0] - (-rt3 / 2.0)).abs() < 1e-12);
        assert!((table.j0_row[1] - (-0.5)).abs() < 1e-12);
        assert!((table.j1_row[0] - rt2.recip()).abs() < 1e-12);
        assert!((table.j1_row[1] - rt2.recip()).abs() < 1e-12);
        assert!(table.j1_row[2].abs() < 1e-12);
        assert!((table.j2_row[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn recoupling_rows_are_orthonormal() {
        let table = recoupling_table().unwrap();
        let norms = [
            table.j0_row.iter().map(|c| c * c).sum::<Real>(),
            table.j1_row.iter().map(|c| c * c).sum::<Real>(),
            table.j2_row.iter().map(|c| c * c).sum::<Real>(),
        ];
        for norm in norms {
            assert!((norm - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn effective_couplings_match_the_closed_form() {
        let eff = effective_couplings().unwrap();
        let expected = [-0.75, -0.5, 0.0];
        for (got, want) in eff.values.iter().zip(expected) {
            assert!((got - want).abs() < 1e-12, "couplings {:?}", eff.values);
        }
        assert_eq!(eff.degeneracies, [1, 3, 5]);
    }

    #[test]
    fn effective_couplings_are_recovered_from_the_recoupling_rows() {
        // The bond operator S_B·S_D − ¼ is diagonal on states with a sharp
        // second-leg pair spin S₂, with eigenvalue ½ S₂(S₂+1) − 1 (so −1 on
        // a leg singlet, 0 on a leg triplet). It also preserves S₂, so
        // sandwiching with the recoupling rows has no cross terms and
        // reproduces h_J as a weighted sum of those eigenvalues:
        // h_J = Σ |coefficient|² · bond eigenvalue of the second-leg pair.
        let table = recoupling_table().unwrap();
        let bond_value = |two_s2: usize| {
            // Σ_i S^i_B S^i_D = ½(S₂(S₂+1) − ¾ − ¾) on a sharp (B,D) pair.
            let s2 = two_s2 as Real / 2.0;
            0.5 * (s2 * (s2 + 1.0) - 1.5) - 0.25
        };
        let h0 = table.j0_row[0] * table.j0_row[0] * bond_value(0)
            + table.j0_row[1] * table.j0_row[1] * bond_value(2);
        let h1 = table.j1_row[0] * table.j1_row[0] * bond_value(2)
            + table.j1_row[1] * table.j1_row[1] * bond_value(0)
            + table.j1_row[2] * table.j1_row[2] * bond_value(2);
        let h2 = table.j2_row[0] * table.j2_row[0] * bond_value(2);
        let eff = effective_couplings().unwrap();
        assert!((h0 - eff.values[0]).abs() < 1e-13);
        assert!((h1 - eff.values[1]).abs() < 1e-13);
        assert!((h2 - eff.values[2]).abs() < 1e-13);
    }
}

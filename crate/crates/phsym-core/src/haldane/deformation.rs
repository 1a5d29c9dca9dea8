//! The staged deformation from dimerized free fermions to the Hund-coupled
//! two-chain Hubbard ladder, tracked at half filling.
//!
//! A [`DeformationPath`] interpolates the couplings (hopping, dimerization,
//! on-site repulsion, Hund coupling) through a list of waypoints. At every
//! sample the half-filled ladder is diagonalized, the staggered antiunitary
//! symmetry is re-verified, and the ground degeneracy and excitation gap are
//! recorded. A separate routine compares the endpoint's low-lying levels with
//! the antiferromagnetic spin-1 chain that second-order perturbation theory
//! predicts at strong coupling.

use crate::error::{PhsymError, Result};
use crate::fock::{
    realize_expression, AntilinearMap, FockSpace, ManyBodyOperator, ProductSpace, Space,
};
use crate::linalg::{eigvalsh, lowest_eigenpairs};
use crate::models::{
    heisenberg_spin_chain, hubbard_hamiltonian, staggered_k, Boundary, HubbardLayout, HubbardSpec,
    SpinChainSpec,
};
use crate::phc::check_symmetry;
use crate::{CMat, Real, Scalar, TOL_SPECTRAL};
use serde::{Deserialize, Serialize};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};

/// Largest ladder length the driver accepts (4·length orbitals ≤ 20 keeps a
/// full-space construction of the antiunitary tractable).
pub const MAX_DEFORMATION_LENGTH: usize = 5;

/// Relative threshold (scaled by ‖H‖_max) below which two computed
/// eigenvalues are counted as one degenerate level.
const DEGENERACY_RESOLUTION: Real = 1e-8;

/// Number of eigenvalues requested from each symmetry block before the
/// coverage check may enlarge the window.
const INITIAL_BLOCK_WINDOW: usize = 8;

/// Hard cap on the adaptive eigenvalue window; reaching it means the ground
/// multiplet could not be separated from the rest of the spectrum.
const MAX_BLOCK_WINDOW: usize = 128;

/// One point in coupling space: a two-chain spinful Hubbard ladder with
/// staggered hopping `hopping·(1 ∓ stagger)`, on-site repulsion `onsite`, and
/// ferromagnetic rung (Hund) coupling `hund`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PathPoint {
    /// Uniform part of the hopping amplitude.
    pub hopping: Real,
    /// Dimerization δ ∈ [0, 1] of the bond pattern.
    pub stagger: Real,
    /// On-site repulsion U ≥ 0.
    pub onsite: Real,
    /// Ferromagnetic Hund coupling V ≥ 0 between the chains.
    pub hund: Real,
}

impl PathPoint {
    fn is_valid(&self) -> bool {
        self.hopping.is_finite()
            && self.stagger.is_finite()
            && (0.0..=1.0).contains(&self.stagger)
            && self.onsite.is_finite()
            && self.onsite >= 0.0
            && self.hund.is_finite()
            && self.hund >= 0.0
    }

    fn interpolate(a: &PathPoint, b: &PathPoint, tau: Real) -> PathPoint {
        let mix = |x: Real, y: Real| x + tau * (y - x);
        PathPoint {
            hopping: mix(a.hopping, b.hopping),
            stagger: mix(a.stagger, b.stagger),
            onsite: mix(a.onsite, b.onsite),
            hund: mix(a.hund, b.hund),
        }
    }

    fn to_spec(self, length: usize, boundary: Boundary) -> HubbardSpec {
        HubbardSpec {
            length,
            hopping: Scalar::new(self.hopping, 0.0),
            onsite: self.onsite,
            hund: self.hund,
            chains: 2,
            spinful: true,
            stagger: self.stagger,
            boundary,
        }
    }
}

/// A piecewise-linear path through coupling space, sampled uniformly on each
/// leg. The sample list always starts at the first waypoint, so the initial
/// point (typically a free-fermion ladder with a closed-form gap) is reported
/// alongside the interpolated ones.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DeformationPath {
    /// Corner points of the path, visited in order.
    pub waypoints: Vec<PathPoint>,
    /// Number of samples on each leg, endpoint included.
    pub steps_per_leg: usize,
}

impl DeformationPath {
    /// The standard three-stage deformation: first remove the dimerization,
    /// then switch on the on-site repulsion, then the Hund coupling.
    pub fn three_stage() -> Self {
        let stage = |stagger: Real, onsite: Real, hund: Real| PathPoint {
            hopping: 1.0,
            stagger,
            onsite,
            hund,
        };
        DeformationPath {
            waypoints: vec![
                stage(0.5, 0.0, 0.0),
                stage(1.0, 0.0, 0.0),
                stage(1.0, 8.0, 0.0),
                stage(1.0, 8.0, 8.0),
            ],
            steps_per_leg: 8,
        }
    }

    /// Checks that the path is walkable: at least two waypoints, at least one
    /// step per leg, every coordinate finite and within its admissible range.
    pub fn validate(&self) -> Result<()> {
        if self.waypoints.len() < 2 {
            return Err(PhsymError::invalid(
                "a deformation path needs at least two waypoints".to_string(),
            ));
        }
        if self.steps_per_leg == 0 {
            return Err(PhsymError::invalid(
                "steps_per_leg must be at least 1".to_string(),
            ));
        }
        if let Some(bad) = self.waypoints.iter().position(|w| !w.is_valid()) {
            return Err(PhsymError::invalid(format!(
                "waypoint {bad} has a coupling outside its admissible range"
            )));
        }
        Ok(())
    }

    /// The sampled points: the first waypoint, then `steps_per_leg` equally
    /// spaced points on every leg (each leg's endpoint included, so interior
    /// waypoints appear exactly once).
    pub fn samples(&self) -> Vec<PathPoint> {
        let mut points = vec![self.waypoints[0]];
        for leg in self.waypoints.windows(2) {
            for step in 1..=self.steps_per_leg {
                let tau = step as Real / self.steps_per_leg as Real;
                points.push(PathPoint::interpolate(&leg[0], &leg[1], tau));
            }
        }
        points
    }
}

/// Diagnostics for one sampled point of a deformation.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct GapSample {
    /// The couplings at this sample.
    pub parameters: PathPoint,
    /// Lowest energy in the half-filled sector.
    pub ground_energy: Real,
    /// Lowest energy strictly above the ground multiplet (equals
    /// `ground_energy` when the whole sector is degenerate).
    pub first_excited: Real,
    /// `first_excited − ground_energy` (never negative).
    pub gap: Real,
    /// Number of states within `1e-8·‖H‖` of the ground energy.
    pub ground_degeneracy: usize,
    /// ‖K H K⁻¹ − H‖_max for the staggered antiunitary symmetry.
    pub symmetry_residual: Real,
}

/// The whole sampled deformation of one ladder.
#[derive(Clone, Debug, Serialize)]
pub struct GapProfile {
    /// Number of rungs.
    pub length: usize,
    /// Boundary condition of the ladder.
    pub boundary: Boundary,
    /// One entry per sampled path point, in path order.
    pub samples: Vec<GapSample>,
}

/// Result of comparing the endpoint of a deformation with the effective
/// spin-1 chain.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct EndpointComparison {
    /// Largest deviation between ground-referenced levels, over all compared
    /// magnetization blocks.
    pub spectral_deviation: Real,
    /// The second-order perturbative error budget the deviation is held to.
    pub tolerance: Real,
    /// Number of levels entering the comparison.
    pub levels_compared: usize,
}

/// Walks the path on a half-filled two-chain ladder of the given length,
/// re-verifying the staggered antiunitary symmetry at every sample and
/// recording the gap and ground degeneracy.
///
/// Samples are processed by a small worker pool; the `PHSYM_THREADS`
/// environment variable caps its size.
pub fn run_deformation(
    path: &DeformationPath,
    length: usize,
    boundary: Boundary,
) -> Result<GapProfile> {
    path.validate()?;
    let system = HalfFilledLadder::new(length)?;
    let points = path.samples();
    let samples = parallel_try_map(&points, |index, point| {
        system.evaluate(point, boundary, index as u64)
    })?;
    Ok(GapProfile {
        length,
        boundary,
        samples,
    })
}

/// Fraction of the effective chain's spectral norm that bounds the
/// "low-energy" window of the endpoint comparison. Higher levels pick up
/// corrections beyond quadratic order in hopping/onsite (the exchange itself
/// is renormalized by the Hund coupling at relative order
/// `hund/onsite`), so the level-by-level match is only meaningful near the
/// bottom of the band.
const LOW_ENERGY_WINDOW: Real = 0.5;

/// Compares the low-lying spectrum of the half-filled ladder at `point` with
/// the antiferromagnetic spin-1 chain with exchange J = 2·hopping²/onsite.
///
/// Both spectra are resolved by total magnetization. In each block the chain
/// levels within `LOW_ENERGY_WINDOW·‖H_chain‖` of the chain's ground energy
/// are matched level-by-level against the ladder's lowest levels, after
/// subtracting the respective ground energies. The largest deviation must
/// stay below a second-order error budget
/// `10·hopping²/(onsite·min(onsite, hund))·‖H_chain‖`, otherwise an error is
/// returned.
pub fn endpoint_spin_chain_comparison(
    point: &PathPoint,
    length: usize,
    boundary: Boundary,
) -> Result<EndpointComparison> {
    if !point.is_valid() || point.hopping == 0.0 || point.onsite <= 0.0 || point.hund <= 0.0 {
        return Err(PhsymError::invalid(
            "the endpoint comparison needs nonzero hopping and positive on-site and Hund couplings"
                .to_string(),
        ));
    }
    let exchange = 2.0 * point.hopping * point.hopping / point.onsite;
    let chain = heisenberg_spin_chain(&SpinChainSpec {
        length,
        coupling: exchange,
        two_s: 2,
        boundary,
    })?;
    let chain_dense = chain.to_dense();
    let chain_space = ProductSpace::new(3, length)?;

    // Resolve the chain by total magnetization. With the descending on-site
    // convention (digit d ↦ m = 1−d) the block key n = length + Σm matches
    // the ladder's spin-up particle number at half filling.
    let mut chain_indices: Vec<Vec<usize>> = vec![Vec::new(); 2 * length + 1];
    for index in 0..chain_space.dim() {
        let digit_sum: usize = (0..length).map(|x| chain_space.digit(index, x)).sum();
        chain_indices[2 * length - digit_sum].push(index);
    }
    let mut chain_blocks: Vec<Vec<Real>> = Vec::with_capacity(2 * length + 1);
    for indices in &chain_indices {
        let block = CMat::from_fn(indices.len(), indices.len(), |r, c| {
            chain_dense[(indices[r], indices[c])]
        });
        chain_blocks.push(eigvalsh(&block)?);
    }
    let chain_ground = fold_min(chain_blocks.iter().flatten().copied());
    let chain_norm = chain_blocks
        .iter()
        .flatten()
        .fold(0.0 as Real, |acc, e| acc.max(e.abs()));

    let cutoff = chain_ground + LOW_ENERGY_WINDOW * chain_norm;

    let system = HalfFilledLadder::new(length)?;
    let expression = hubbard_hamiltonian(&point.to_spec(length, boundary))?;
    let mut spectral_deviation: Real = 0.0;
    let mut levels_compared = 0;
    let mut compare_counts: Vec<usize> = Vec::with_capacity(length + 1);
    let mut ladder_blocks: Vec<Vec<Real>> = Vec::with_capacity(length + 1);
    // Both models carry the same spin-flip symmetry (exact block mirroring
    // n ↔ 2·length − n), so comparing n ≤ length covers the whole spectrum.
    for n_up in 0..=length {
        let block = realize_expression(&expression, &system.blocks[n_up])?;
        let in_window = chain_blocks[n_up].iter().filter(|e| **e <= cutoff).count();
        // Solve at least one level even outside the window so the global
        // ground energy is certainly seen.
        let want = in_window.max(1);
        let solved = solve_block(&block, want, 0x9a1d_a0e5 + n_up as u64)?;
        if solved.values.len() < want {
            return Err(PhsymError::invalid(format!(
                "magnetization block {n_up} of the ladder is smaller than the spin-chain block"
            )));
        }
        compare_counts.push(in_window);
        ladder_blocks.push(solved.values);
    }
    let ladder_ground = fold_min(ladder_blocks.iter().flatten().copied());
    for n_up in 0..=length {
        for (ladder, spin) in ladder_blocks[n_up]
            .iter()
            .zip(&chain_blocks[n_up])
            .take(compare_counts[n_up])
        {
            let deviation = ((ladder - ladder_ground) - (spin - chain_ground)).abs();
            spectral_deviation = spectral_deviation.max(deviation);
            levels_compared += 1;
        }
    }

    let second_order = point.hopping * point.hopping / point.onsite;
    let tolerance = 10.0 * second_order / point.onsite.min(point.hund) * chain_norm;
    if spectral_deviation > tolerance {
        return Err(PhsymError::SelfCheckFailed {
            check: "endpoint spectrum against the effective spin-1 chain".to_string(),
            residual: spectral_deviation,
            tolerance,
        });
    }
    Ok(EndpointComparison {
        spectral_deviation,
        tolerance,
        levels_compared,
    })
}

/// The half-filled two-chain ladder: particle-number sector, magnetization
/// blocks, and the staggered antiunitary restricted to the sector. Built once
/// per run and shared across samples.
struct HalfFilledLadder {
    length: usize,
    sector: Arc<FockSpace>,
    /// Magnetization blocks indexed by the number of spin-up fermions,
    /// 0 ..= 2·length (only 0 ..= length is ever diagonalized; the rest is
    /// recovered from the spin-flip mirror symmetry).
    blocks: Vec<Arc<FockSpace>>,
    k_sector: AntilinearMap,
}

impl HalfFilledLadder {
    fn new(length: usize) -> Result<Self> {
        if length < 2 || length > MAX_DEFORMATION_LENGTH {
            return Err(PhsymError::invalid(format!(
                "ladder length must be in 2..={MAX_DEFORMATION_LENGTH}, got {length}"
            )));
        }
        let layout = HubbardLayout::new(length, true, 2)?;
        let orbitals = layout.num_orbitals();
        let full = FockSpace::full(orbitals)?;
        let k_full = staggered_k(&full, &layout.orbital_sites())?;
        let sector = FockSpace::sector(orbitals, 2 * length)?;
        // On the full space the basis index of a pattern is the pattern
        // itself, so the retained rows/columns are the sector patterns.
        let patterns: Vec<u32> = sector.basis().to_vec();
        let k_sector = k_full.restrict(
            Space::Fock(sector.clone()),
            &patterns,
            Space::Fock(sector.clone()),
            &patterns,
        )?;
        let mut up_mask: u32 = 0;
        for x in 0..length {
            for chain in 0..2 {
                up_mask |= 1 << layout.orbital(x, 0, chain);
            }
        }
        let mut split: Vec<Vec<u32>> = vec![Vec::new(); 2 * length + 1];
        for &pattern in sector.basis() {
            split[(pattern & up_mask).count_ones() as usize].push(pattern);
        }
        let blocks = split
            .into_iter()
            .map(|basis| FockSpace::with_basis(orbitals, basis))
            .collect::<Result<Vec<_>>>()?;
        Ok(HalfFilledLadder {
            length,
            sector,
            blocks,
            k_sector,
        })
    }

    fn evaluate(&self, point: &PathPoint, boundary: Boundary, seed: u64) -> Result<GapSample> {
        let expression = hubbard_hamiltonian(&point.to_spec(self.length, boundary))?;
        let sector_matrix = realize_expression(&expression, &self.sector)?;
        let symmetry_residual = check_symmetry(&self.k_sector, &sector_matrix)?;
        if symmetry_residual > TOL_SPECTRAL {
            return Err(PhsymError::SelfCheckFailed {
                check: "staggered antiunitary symmetry along the deformation".to_string(),
                residual: symmetry_residual,
                tolerance: TOL_SPECTRAL,
            });
        }
        let resolution = DEGENERACY_RESOLUTION * sector_matrix.max_abs();

        // Diagonalize the independent magnetization blocks, enlarging each
        // block's window until it provably covers the ground multiplet and
        // the first excited level.
        let mut windows = vec![INITIAL_BLOCK_WINDOW; self.length + 1];
        let mut solves = Vec::with_capacity(self.length + 1);
        for n_up in 0..=self.length {
            let block = realize_expression(&expression, &self.blocks[n_up])?;
            solves.push((
                solve_block(&block, windows[n_up], seed.wrapping_mul(64) + n_up as u64)?,
                block,
            ));
        }
        loop {
            let ground = fold_min(solves.iter().map(|(s, _)| s.values[0]));
            let threshold = ground + resolution;
            // A block certifies its share of the count once its window
            // reaches past the threshold (or holds the whole block).
            let offender = solves
                .iter()
                .position(|(s, _)| !s.complete && *s.values.last().expect("nonempty") <= threshold);
            let Some(n_up) = offender else { break };
            windows[n_up] *= 2;
            if windows[n_up] > MAX_BLOCK_WINDOW {
                return Err(PhsymError::ConvergenceFailure(format!(
                    "ground multiplet of magnetization block {n_up} exceeds {MAX_BLOCK_WINDOW} states"
                )));
            }
            let retry = solve_block(
                &solves[n_up].1,
                windows[n_up],
                seed.wrapping_mul(64) + 32 + n_up as u64,
            )?;
            solves[n_up].0 = retry;
        }

        let ground_energy = fold_min(solves.iter().map(|(s, _)| s.values[0]));
        let threshold = ground_energy + resolution;
        let mut ground_degeneracy = 0;
        let mut first_excited = Real::INFINITY;
        for (n_up, (solve, _)) in solves.iter().enumerate() {
            // The spin-flip mirror doubles every block except the central one.
            let weight = if n_up == self.length { 1 } else { 2 };
            for &value in &solve.values {
                if value <= threshold {
                    ground_degeneracy += weight;
                } else {
                    first_excited = first_excited.min(value);
                }
            }
        }
        let (first_excited, gap) = if first_excited.is_finite() {
            (first_excited, first_excited - ground_energy)
        } else {
            // The entire sector collapsed into one multiplet (only possible
            // for a vanishing Hamiltonian).
            (ground_energy, 0.0)
        };
        Ok(GapSample {
            parameters: *point,
            ground_energy,
            first_excited,
            gap,
            ground_degeneracy,
            symmetry_residual,
        })
    }
}

struct BlockSolve {
    /// Ascending lowest eigenvalues.
    values: Vec<Real>,
    /// True when `values` is the block's entire spectrum.
    complete: bool,
}

/// Dimension below which a block is diagonalized densely.
const DENSE_BLOCK_LIMIT: usize = 800;

/// Relative accuracy asked of the iterative eigensolver. Free-fermion points
/// have heavily clustered many-body spectra where tighter residuals stall
/// without improving the gap or the degeneracy count (both are resolved at
/// scales far above `1e-7·‖H‖`).
const BLOCK_EIGENVALUE_TOLERANCE: Real = 1e-7;

fn solve_block(block: &ManyBodyOperator, count: usize, seed: u64) -> Result<BlockSolve> {
    let dim = block.domain().dim();
    let count = count.min(dim);
    if dim <= DENSE_BLOCK_LIMIT {
        // Small blocks are solved completely; keeping the whole spectrum
        // spares the coverage loop any re-solves here.
        let values = eigvalsh(&block.to_dense())?;
        return Ok(BlockSolve {
            complete: true,
            values,
        });
    }
    let matrix = block.matrix();
    let upper = matrix.norm_inf();
    let pairs = lowest_eigenpairs(
        dim,
        count,
        seed,
        BLOCK_EIGENVALUE_TOLERANCE * upper.max(1.0),
        upper,
        &|x, y| matrix.matvec_into(x, y),
    )?;
    Ok(BlockSolve {
        complete: pairs.len() == dim,
        values: pairs.into_iter().map(|(value, _)| value).collect(),
    })
}

fn fold_min(values: impl Iterator<Item = Real>) -> Real {
    values.fold(Real::INFINITY, Real::min)
}

/// Number of worker threads: `PHSYM_THREADS` if set to a positive integer,
/// otherwise the machine's available parallelism.
fn thread_cap() -> usize {
    std::env::var("PHSYM_THREADS")
        .ok()
        .and_then(|raw| raw.parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        })
}

/// Applies `f` to every item, fanning out over a capped worker pool; the
/// first error (in item order) wins. Item order is preserved.
fn parallel_try_map<T, U, F>(items: &[T], f: F) -> Result<Vec<U>>
where
    T: Sync,
    U: Send,
    F: Fn(usize, &T) -> Result<U> + Sync,
{
    let workers = thread_cap().min(items.len()).max(1);
    if workers == 1 {
        return items
            .iter()
            .enumerate()
            .map(|(index, item)| f(index, item))
            .collect();
    }
    let cursor = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<Result<U>>>> = items.iter().map(|_| Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let index = cursor.fetch_add(1, Ordering::Relaxed);
                if index >= items.len() {
                    break;
                }
                let outcome = f(index, &items[index]);
                *slots[index].lock().expect("result slot poisoned") = Some(outcome);
            });
        }
    });
    slots
        .into_iter()
        .map(|slot| {
            slot.into_inner()
                .expect("result slot poisoned")
                .expect("every index visited")
        })
        .collect()
}

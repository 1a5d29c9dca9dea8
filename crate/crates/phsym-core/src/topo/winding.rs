//! Winding numbers of nonvanishing Bloch maps k ↦ f(k) over the Brillouin
//! circle.

use crate::error::{PhsymError, Result};
use crate::{Real, Scalar};
use std::f64::consts::PI;

/// Magnitude below which a sampled Bloch map counts as a gap closing.
const GAP_FLOOR: Real = 1e-10;

/// Largest tolerated distance of the accumulated phase (in turns) from an
/// integer.
const QUANTIZATION_SLACK: Real = 0.01;

/// Winding number of `offdiag` around the origin, sampled at `samples`
/// equally spaced momenta covering [0, 2π].
///
/// Phase increments are accumulated between consecutive samples, with the
/// endpoint k = 2π evaluated explicitly rather than reusing k = 0: on a
/// genuinely 2π-periodic map the accumulated turn count lands on an
/// integer, while a map that fails to close (such as e^{ik/2}) shows up as
/// a non-integer count and is refused. A sampled magnitude below 1e−10
/// means the map crosses zero and the winding is undefined.
pub fn winding_number<F>(offdiag: F, samples: usize) -> Result<i64>
where
    F: Fn(Real) -> Scalar,
{
    if samples < 16 {
        return Err(PhsymError::invalid(format!(
            "winding needs at least 16 samples, got {samples}"
        )));
    }
    let values: Vec<Scalar> = (0..=samples)
        .map(|j| offdiag(2.0 * PI * j as Real / samples as Real))
        .collect();
    for (j, value) in values.iter().enumerate() {
        if value.norm() < GAP_FLOOR {
            return Err(PhsymError::GapCloses {
                magnitude: value.norm(),
                k: 2.0 * PI * j as Real / samples as Real,
            });
        }
    }
    let mut turns = 0.0;
    for j in 0..samples {
        turns += (values[j + 1] / values[j]).arg();
    }
    turns /= 2.0 * PI;
    let nearest = turns.round();
    let deviation = (turns - nearest).abs();
    if deviation > QUANTIZATION_SLACK {
        return Err(PhsymError::WindingNotQuantized {
            value: turns,
            deviation,
        });
    }
    Ok(nearest as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phase_maps_wind_by_their_exponent() {
        assert_eq!(
            winding_number(|k| Scalar::new(0.0, k).exp(), 32).unwrap(),
            1
        );
        assert_eq!(winding_number(|_| Scalar::new(1.0, 0.0), 32).unwrap(), 0);
        assert_eq!(
            winding_number(|k| Scalar::new(0.0, -2.0 * k).exp(), 32).unwrap(),
            -2
        );
    }

    #[test]
    fn dimerized_bloch_map_winds_once_only_in_the_topological_phase() {
        // f(k) = weak + strong·e^{ik}: the loop encircles the origin iff
        // the strong bond dominates.
        let topological = |k: Real| Scalar::new(0.2, 0.0) + Scalar::new(0.0, k).exp() * 1.8;
        let trivial = |k: Real| Scalar::new(1.8, 0.0) + Scalar::new(0.0, k).exp() * 0.2;
        assert_eq!(winding_number(topological, 64).unwrap(), 1);
        assert_eq!(winding_number(trivial, 64).unwrap(), 0);
    }

    #[test]
    fn zero_crossings_and_sparse_grids_are_rejected() {
        assert!(matches!(
            winding_number(|k| Scalar::new(k.cos(), 0.0), 16),
            Err(PhsymError::GapCloses { .. })
        ));
        assert!(winding_number(|_| Scalar::new(1.0, 0.0), 15).is_err());
    }

    #[test]
    fn off_quantization_drift_is_reported() {
        // A non-periodic sweep e^{ik/2} accumulates half a turn and cannot
        // be rounded.
        let result = winding_number(|k| Scalar::new(0.0, 0.5 * k).exp(), 32);
        assert!(matches!(
            result,
            Err(PhsymError::WindingNotQuantized { .. })
        ));
    }
}

//! Two-dimensional discretization scaffold for first-quantized Dirac
//! Hamiltonians.

use crate::error::{PhsymError, Result};
use crate::{RMat, Real};

/// A rectangular grid of `nx × ny` sites with a lattice spacing and an
/// optional periodic wrap per axis.  Site `(x, y)` carries the flat index
/// `x + nx·y`.
#[derive(Debug, Clone)]
pub struct Grid2D {
    nx: usize,
    ny: usize,
    spacing: Real,
    periodic: [bool; 2],
}

impl Grid2D {
    /// Builds a grid.  Both extents must be at least two sites and the
    /// spacing positive.
    pub fn new(nx: usize, ny: usize, spacing: Real, periodic: [bool; 2]) -> Result<Self> {
        if nx < 2 || ny < 2 {
            return Err(PhsymError::invalid(format!(
                "grid needs at least 2×2 sites, got {nx}×{ny}"
            )));
        }
        if !spacing.is_finite() || spacing <= 0.0 {
            return Err(PhsymError::invalid(format!(
                "grid spacing must be positive and finite, got {spacing}"
            )));
        }
        Ok(Grid2D {
            nx,
            ny,
            spacing,
            periodic,
        })
    }

    /// Sites along x.
    pub fn nx(&self) -> usize {
        self.nx
    }

    /// Sites along y.
    pub fn ny(&self) -> usize {
        self.ny
    }

    /// Lattice spacing.
    pub fn spacing(&self) -> Real {
        self.spacing
    }

    /// Periodic flags per axis.
    pub fn periodic(&self) -> [bool; 2] {
        self.periodic
    }

    /// Total number of sites.
    pub fn sites(&self) -> usize {
        self.nx * self.ny
    }

    /// Flat index of site `(x, y)`.
    pub fn site(&self, x: usize, y: usize) -> usize {
        debug_assert!(x < self.nx && y < self.ny);
        x + self.nx * y
    }

    /// Central-difference stencil for `∂/∂x^(axis)` (axis 0 = x, 1 = y): a
    /// real anti-symmetric `sites × sites` matrix.  Open edges truncate the
    /// missing hop, which preserves anti-symmetry; on a periodic axis of
    /// extent two the forward and backward hops reach the same neighbor and
    /// cancel exactly.
    pub fn derivative(&self, axis: usize) -> RMat {
        assert!(axis < 2, "axis must be 0 (x) or 1 (y), got {axis}");
        let inverse = 1.0 / (2.0 * self.spacing);
        let mut stencil = RMat::zeros(self.sites(), self.sites());
        for y in 0..self.ny {
            for x in 0..self.nx {
                let here = self.site(x, y);
                if let Some(ahead) = self.neighbor(x, y, axis, true) {
                    stencil[(here, ahead)] += inverse;
                }
                if let Some(behind) = self.neighbor(x, y, axis, false) {
                    stencil[(here, behind)] -= inverse;
                }
            }
        }
        stencil
    }

    fn neighbor(&self, x: usize, y: usize, axis: usize, forward: bool) -> Option<usize> {
        let (extent, coordinate) = if axis == 0 { (self.nx, x) } else { (self.ny, y) };
        let moved = if forward {
            if coordinate + 1 < extent {
                coordinate + 1
            } else if self.periodic[axis] {
                0
            } else {
                return None;
            }
        } else if coordinate > 0 {
            coordinate - 1
        } else if self.periodic[axis] {
            extent - 1
        } else {
            return None;
        };
        Some(if axis == 0 {
            self.site(moved, y)
        } else {
            self.site(x, moved)
        })
    }
}

//! Conserved cell averages and ghost-cell handling.

use crate::error::{DdfError, Result};
use crate::grid::Grid2D;

/// Ghost layers per side.
pub const GHOSTS: usize = 2;

/// Velocity recovered from density and momentum; zero at vacuum.
pub fn velocity_of(rho: f64, w: f64, vacuum_eps: f64) -> Result<f64> {
    if !rho.is_finite() || !w.is_finite() {
        return Err(DdfError::NonFinite { what: "density or momentum" });
    }
    if rho < 0.0 {
        return Err(DdfError::InvalidState(format!("negative density {rho}")));
    }
    Ok(velocity_unchecked(rho, w, vacuum_eps))
}

#[inline]
pub(crate) fn velocity_unchecked(rho: f64, w: f64, vacuum_eps: f64) -> f64 {
    if rho > vacuum_eps {
        w / rho
    } else {
        0.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct State1D {
    pub rho: Vec<f64>,
    pub w: Vec<f64>,
}

impl State1D {
    pub fn new(rho: Vec<f64>, w: Vec<f64>) -> Result<Self> {
        let s = Self { rho, w };
        s.validate()?;
        Ok(s)
    }

    /// Builds momenta from densities and velocities.
    pub fn from_primitive(rho: &[f64], u: &[f64]) -> Result<Self> {
        if rho.len() != u.len() {
            return Err(DdfError::LengthMismatch {
                left: rho.len(),
                right: u.len(),
            });
        }
        let w = rho.iter().zip(u).map(|(r, v)| r * v).collect();
        Self::new(rho.to_vec(), w)
    }

    pub fn uniform(m: usize, rho: f64, u: f64) -> Result<Self> {
        Self::new(vec![rho; m], vec![rho * u; m])
    }

    pub fn len(&self) -> usize {
        self.rho.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rho.is_empty()
    }

    pub fn validate(&self) -> Result<()> {
        if self.rho.len() != self.w.len() {
            return Err(DdfError::LengthMismatch {
                left: self.rho.len(),
                right: self.w.len(),
            });
        }
        if self.rho.iter().chain(&self.w).any(|v| !v.is_finite()) {
            return Err(DdfError::NonFinite { what: "state" });
        }
        if let Some((i, &r)) = self.rho.iter().enumerate().find(|(_, r)| **r < 0.0) {
            return Err(DdfError::InvalidState(format!(
                "negative density {r} in cell {i}"
            )));
        }
        Ok(())
    }

    pub fn velocities(&self, vacuum_eps: f64) -> Vec<f64> {
        self.rho
            .iter()
            .zip(&self.w)
            .map(|(&r, &w)| velocity_unchecked(r, w, vacuum_eps))
            .collect()
    }

    pub fn mass(&self, h: f64) -> f64 {
        h * self.rho.iter().sum::<f64>()
    }

    pub fn momentum(&self, h: f64) -> f64 {
        h * self.w.iter().sum::<f64>()
    }

    pub fn min_density(&self) -> f64 {
        self.rho.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// Copies `z` into a buffer with `GHOSTS` outflow cells on each side.
pub fn extend_with_ghosts(z: &[f64]) -> Vec<f64> {
    let mut ext = vec![0.0; z.len() + 2 * GHOSTS];
    ext[GHOSTS..GHOSTS + z.len()].copy_from_slice(z);
    fill_ghosts(&mut ext);
    ext
}

/// Refreshes the ghost layers of an extended buffer from its interior.
pub fn fill_ghosts(ext: &mut [f64]) {
    let n = ext.len();
    debug_assert!(n > 2 * GHOSTS);
    let first = ext[GHOSTS];
    let last = ext[n - GHOSTS - 1];
    for g in 0..GHOSTS {
        ext[g] = first;
        ext[n - 1 - g] = last;
    }
}

/// Extended copy of `state` (length `m + 2 * GHOSTS`) with zero-gradient
/// ghost cells.
pub fn apply_boundary(state: &State1D) -> State1D {
    State1D {
        rho: extend_with_ghosts(&state.rho),
        w: extend_with_ghosts(&state.w),
    }
}

/// 2D state stored row-major: cell `(i, j)` lives at `j * mx + i`.
#[derive(Debug, Clone, PartialEq)]
pub struct State2D {
    pub mx: usize,
    pub my: usize,
    pub rho: Vec<f64>,
    pub wx: Vec<f64>,
    pub wy: Vec<f64>,
}

impl State2D {
    pub fn new(mx: usize, my: usize, rho: Vec<f64>, wx: Vec<f64>, wy: Vec<f64>) -> Result<Self> {
        let s = Self { mx, my, rho, wx, wy };
        s.validate()?;
        Ok(s)
    }

    pub fn from_primitive(grid: &Grid2D, rho: &[f64], u: &[f64], v: &[f64]) -> Result<Self> {
        let n = grid.len();
        for len in [rho.len(), u.len(), v.len()] {
            if len != n {
                return Err(DdfError::LengthMismatch { left: n, right: len });
            }
        }
        let wx = rho.iter().zip(u).map(|(r, a)| r * a).collect();
        let wy = rho.iter().zip(v).map(|(r, b)| r * b).collect();
        Self::new(grid.mx(), grid.my(), rho.to_vec(), wx, wy)
    }

    pub fn len(&self) -> usize {
        self.rho.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rho.is_empty()
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.mx + i
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.mx * self.my;
        for len in [self.rho.len(), self.wx.len(), self.wy.len()] {
            if len != n {
                return Err(DdfError::LengthMismatch { left: n, right: len });
            }
        }
        if self
            .rho
            .iter()
            .chain(&self.wx)
            .chain(&self.wy)
            .any(|v| !v.is_finite())
        {
            return Err(DdfError::NonFinite { what: "state" });
        }
        if let Some((k, &r)) = self.rho.iter().enumerate().find(|(_, r)| **r < 0.0) {
            return Err(DdfError::InvalidState(format!(
                "negative density {r} in cell ({}, {})",
                k % self.mx,
                k / self.mx
            )));
        }
        Ok(())
    }

    pub fn velocities(&self, vacuum_eps: f64) -> (Vec<f64>, Vec<f64>) {
        let u = self
            .rho
            .iter()
            .zip(&self.wx)
            .map(|(&r, &w)| velocity_unchecked(r, w, vacuum_eps))
            .collect();
        let v = self
            .rho
            .iter()
            .zip(&self.wy)
            .map(|(&r, &w)| velocity_unchecked(r, w, vacuum_eps))
            .collect();
        (u, v)
    }

    pub fn min_density(&self) -> f64 {
        self.rho.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Swaps the axes: rows become columns and `wx` trades places with `wy`.
    pub fn transposed(&self) -> Self {
        let (mx, my) = (self.mx, self.my);
        let mut t = Self {
            mx: my,
            my: mx,
            rho: vec![0.0; mx * my],
            wx: vec![0.0; mx * my],
            wy: vec![0.0; mx * my],
        };
        for j in 0..my {
            for i in 0..mx {
                let src = j * mx + i;
                let dst = i * my + j;
                t.rho[dst] = self.rho[src];
                t.wx[dst] = self.wy[src];
                t.wy[dst] = self.wx[src];
            }
        }
        t
    }
}

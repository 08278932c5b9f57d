//! Uniform Cartesian grids.

use crate::error::{DdfError, Result};

/// Minimum number of cells per axis; two ghost layers per side must fit.
pub const MIN_CELLS: usize = 4;

/// Uniform 1D grid of `m` cells on `[x_left, x_right]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    x_left: f64,
    x_right: f64,
    m: usize,
    h: f64,
}

impl Grid1D {
    pub fn new(x_left: f64, x_right: f64, m: usize) -> Result<Self> {
        if !x_left.is_finite() || !x_right.is_finite() {
            return Err(DdfError::NonFinite { what: "grid extent" });
        }
        if x_right <= x_left {
            return Err(DdfError::InvalidGrid(format!(
                "x_right ({x_right}) must exceed x_left ({x_left})"
            )));
        }
        if m < MIN_CELLS {
            return Err(DdfError::InvalidGrid(format!(
                "at least {MIN_CELLS} cells required, got {m}"
            )));
        }
        let h = (x_right - x_left) / m as f64;
        if h <= 0.0 {
            return Err(DdfError::InvalidGrid("cell width underflows".into()));
        }
        Ok(Self {
            x_left,
            x_right,
            m,
            h,
        })
    }

    pub fn x_left(&self) -> f64 {
        self.x_left
    }

    pub fn x_right(&self) -> f64 {
        self.x_right
    }

    /// Number of cells.
    pub fn cells(&self) -> usize {
        self.m
    }

    /// Cell width.
    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn cell_center(&self, i: usize) -> f64 {
        self.x_left + (i as f64 + 0.5) * self.h
    }

    /// Left and right edges of cell `i`.
    pub fn cell_bounds(&self, i: usize) -> (f64, f64) {
        (
            self.x_left + i as f64 * self.h,
            self.x_left + (i + 1) as f64 * self.h,
        )
    }

    pub fn centers(&self) -> Vec<f64> {
        (0..self.m).map(|i| self.cell_center(i)).collect()
    }

    /// Index of the cell containing `x`, clamped to the grid.
    pub fn locate(&self, x: f64) -> usize {
        let k = ((x - self.x_left) / self.h).floor();
        if k < 0.0 {
            0
        } else {
            (k as usize).min(self.m - 1)
        }
    }
}

/// Tensor-product grid; `x` indexes columns and `y` rows.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid2D {
    pub x: Grid1D,
    pub y: Grid1D,
}

impl Grid2D {
    pub fn new(x: Grid1D, y: Grid1D) -> Self {
        Self { x, y }
    }

    pub fn from_extents(
        x_left: f64,
        x_right: f64,
        mx: usize,
        y_bottom: f64,
        y_top: f64,
        my: usize,
    ) -> Result<Self> {
        Ok(Self {
            x: Grid1D::new(x_left, x_right, mx)?,
            y: Grid1D::new(y_bottom, y_top, my)?,
        })
    }

    pub fn mx(&self) -> usize {
        self.x.cells()
    }

    pub fn my(&self) -> usize {
        self.y.cells()
    }

    pub fn hx(&self) -> f64 {
        self.x.h()
    }

    pub fn hy(&self) -> f64 {
        self.y.h()
    }

    pub fn cell_area(&self) -> f64 {
        self.x.h() * self.y.h()
    }

    /// Flat row-major index of cell `(i, j)`.
    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.x.cells() + i
    }

    pub fn len(&self) -> usize {
        self.x.cells() * self.y.cells()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn width_and_centers() {
        let g = Grid1D::new(-0.5, 0.5, 40).unwrap();
        assert!((g.h() - 0.025).abs() < 1e-15);
        assert!(g.cell_center(0) > g.x_left());
        assert!(g.cell_center(39) < g.x_right());
        assert!((g.cell_center(0) + 0.4875).abs() < 1e-15);
    }

    #[test]
    fn rejects_degenerate_grids() {
        assert!(Grid1D::new(0.0, 1.0, 3).is_err());
        assert!(Grid1D::new(1.0, 1.0, 10).is_err());
        assert!(Grid1D::new(f64::NAN, 1.0, 10).is_err());
    }

    #[test]
    fn locate_clamps() {
        let g = Grid1D::new(0.0, 1.0, 4).unwrap();
        assert_eq!(g.locate(-3.0), 0);
        assert_eq!(g.locate(0.3), 1);
        assert_eq!(g.locate(7.0), 3);
    }
}

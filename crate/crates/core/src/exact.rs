//! Closed-form references: delta-shock parameters, vacuum profiles and
//! error/convergence measures.

use crate::error::{DdfError, Result};
use crate::grid::Grid1D;

/// Two constant states separated at `x = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiemannData {
    pub rho_l: f64,
    pub u_l: f64,
    pub rho_r: f64,
    pub u_r: f64,
}

impl RiemannData {
    pub fn new(rho_l: f64, u_l: f64, rho_r: f64, u_r: f64) -> Result<Self> {
        let d = Self {
            rho_l,
            u_l,
            rho_r,
            u_r,
        };
        if [rho_l, u_l, rho_r, u_r].iter().any(|v| !v.is_finite()) {
            return Err(DdfError::NonFinite { what: "Riemann data" });
        }
        if rho_l < 0.0 || rho_r < 0.0 {
            return Err(DdfError::InvalidState("negative Riemann density".into()));
        }
        Ok(d)
    }

    /// `[u] = u_l - u_r`.
    pub fn jump_u(&self) -> f64 {
        self.u_l - self.u_r
    }

    /// `[rho] = rho_l - rho_r`.
    pub fn jump_rho(&self) -> f64 {
        self.rho_l - self.rho_r
    }
}

/// Speed, mass growth rate and drift of a delta shock started at `x = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaShockParams {
    /// Initial shock speed; `None` when no closed form is used.
    pub v_delta: Option<f64>,
    /// Mass gained by the delta per unit time.
    pub w_delta_rate: f64,
    /// Constant acceleration of the path (friction coefficient).
    pub beta: f64,
}

impl DeltaShockParams {
    /// `v_delta t + beta t^2 / 2`.
    pub fn path(&self, t: f64) -> Option<f64> {
        self.v_delta.map(|v| v * t + 0.5 * self.beta * t * t)
    }

    pub fn weight(&self, t: f64) -> f64 {
        self.w_delta_rate * t
    }
}

/// Delta shock of pressureless gas dynamics (with friction `beta`).
pub fn pgd_delta_params(data: &RiemannData, beta: f64) -> Result<DeltaShockParams> {
    if !beta.is_finite() {
        return Err(DdfError::NonFinite { what: "beta" });
    }
    if data.u_l <= data.u_r {
        return Err(DdfError::NotADelta(format!(
            "u_l = {} does not exceed u_r = {}",
            data.u_l, data.u_r
        )));
    }
    let (sl, sr) = (data.rho_l.sqrt(), data.rho_r.sqrt());
    if sl + sr == 0.0 {
        return Err(DdfError::NotADelta("both states are vacuum".into()));
    }
    Ok(DeltaShockParams {
        v_delta: Some((sl * data.u_l + sr * data.u_r) / (sl + sr)),
        w_delta_rate: (data.rho_l * data.rho_r).sqrt() * data.jump_u(),
        beta,
    })
}

/// Delta shock of the Chaplygin-type system with `P = s rho^(-alpha)`.
///
/// Only the mass growth rate is given; the path is left open.
pub fn cgd_delta_params(data: &RiemannData, s: f64, alpha: f64) -> Result<DeltaShockParams> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(DdfError::InvalidModel(format!("alpha {alpha} outside (0, 1)")));
    }
    if !(s.is_finite() && s >= 0.0) {
        return Err(DdfError::InvalidModel(format!("pressure scale {s} is invalid")));
    }
    if data.rho_l <= 0.0 || data.rho_r <= 0.0 {
        return Err(DdfError::NotADelta("pressure law needs positive densities".into()));
    }
    if data.u_l < data.u_r {
        return Err(DdfError::NotADelta(format!(
            "u_l = {} is below u_r = {}",
            data.u_l, data.u_r
        )));
    }
    let p = |rho: f64| s * rho.powf(-alpha);
    let jump_p = p(data.rho_l) - p(data.rho_r);
    let radicand = data.rho_l * data.rho_r * data.jump_u().powi(2) - data.jump_rho() * jump_p;
    if radicand < 0.0 {
        return Err(DdfError::NotADelta(format!(
            "negative growth-rate radicand {radicand}"
        )));
    }
    Ok(DeltaShockParams {
        v_delta: None,
        w_delta_rate: radicand.sqrt(),
        beta: 0.0,
    })
}

/// Reference delta locations for the Chaplygin run: observed numeric
/// position and the closed-form position at two times.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocationReference {
    pub t: f64,
    pub observed: f64,
    pub reference_exact: f64,
}

pub const CGD_LOCATIONS: [LocationReference; 2] = [
    LocationReference {
        t: 0.05,
        observed: 0.054,
        reference_exact: 0.0538,
    },
    LocationReference {
        t: 0.1996,
        observed: 0.226,
        reference_exact: 0.2170,
    },
];

/// Reference delta weights for the Chaplygin run.
pub const CGD_WEIGHTS: [(f64, f64); 2] = [(0.05, 0.7004), (0.1996, 2.7960)];

/// Two states moving apart with vacuum in between.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VacuumProfile {
    pub data: RiemannData,
    pub beta: f64,
    pub t: f64,
    pub left_edge: f64,
    pub right_edge: f64,
}

impl VacuumProfile {
    pub fn density(&self, x: f64) -> f64 {
        if x < self.left_edge {
            self.data.rho_l
        } else if x > self.right_edge {
            self.data.rho_r
        } else {
            0.0
        }
    }

    /// Velocity in the evolved variables (0 inside the vacuum).
    pub fn velocity(&self, x: f64) -> f64 {
        if x < self.left_edge {
            self.data.u_l
        } else if x > self.right_edge {
            self.data.u_r
        } else {
            0.0
        }
    }

    /// Exact mean density over `[a, b]`.
    pub fn cell_average(&self, a: f64, b: f64) -> f64 {
        let left = (self.left_edge.min(b) - a).max(0.0);
        let right = (b - self.right_edge.max(a)).max(0.0);
        (self.data.rho_l * left + self.data.rho_r * right) / (b - a)
    }
}

pub fn pgd_vacuum_exact(data: &RiemannData, beta: f64, t: f64) -> Result<VacuumProfile> {
    if data.u_l >= data.u_r {
        return Err(DdfError::NotAVacuum(format!(
            "u_l = {} is not below u_r = {}",
            data.u_l, data.u_r
        )));
    }
    if !(t >= 0.0 && beta.is_finite()) {
        return Err(DdfError::InvalidTimes(format!("time {t} must be non-negative")));
    }
    let drift = 0.5 * beta * t * t;
    Ok(VacuumProfile {
        data: *data,
        beta,
        t,
        left_edge: data.u_l * t + drift,
        right_edge: data.u_r * t + drift,
    })
}

/// Averages of `f(a, b)` over every cell `[a, b]` of the grid.
pub fn cell_averages(grid: &Grid1D, f: impl Fn(f64, f64) -> f64) -> Vec<f64> {
    (0..grid.cells())
        .map(|i| {
            let (a, b) = grid.cell_bounds(i);
            f(a, b)
        })
        .collect()
}

/// `h * sum |numeric - exact|`.
pub fn l1_error(numeric: &[f64], exact: &[f64], h: f64) -> Result<f64> {
    if numeric.len() != exact.len() {
        return Err(DdfError::LengthMismatch {
            left: numeric.len(),
            right: exact.len(),
        });
    }
    Ok(h * numeric.iter().zip(exact).map(|(a, b)| (a - b).abs()).sum::<f64>())
}

fn check_ladder(errors: &[f64], hs: &[f64]) -> Result<()> {
    if errors.len() != hs.len() {
        return Err(DdfError::LengthMismatch {
            left: errors.len(),
            right: hs.len(),
        });
    }
    if errors.len() < 2 {
        return Err(DdfError::Empty("refinement ladder needs two levels"));
    }
    if errors.iter().chain(hs).any(|v| !(v.is_finite() && *v > 0.0)) {
        return Err(DdfError::InvalidState("errors and widths must be positive".into()));
    }
    Ok(())
}

/// Successive slopes `log(e_k / e_{k+1}) / log(h_k / h_{k+1})`.
pub fn eoc(errors: &[f64], hs: &[f64]) -> Result<Vec<f64>> {
    check_ladder(errors, hs)?;
    Ok(errors
        .windows(2)
        .zip(hs.windows(2))
        .map(|(e, h)| (e[0] / e[1]).ln() / (h[0] / h[1]).ln())
        .collect())
}

/// Least-squares slope of `log e` against `log h`.
pub fn eoc_fit(errors: &[f64], hs: &[f64]) -> Result<f64> {
    check_ladder(errors, hs)?;
    let n = errors.len() as f64;
    let xs: Vec<f64> = hs.iter().map(|h| h.ln()).collect();
    let ys: Vec<f64> = errors.iter().map(|e| e.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(DdfError::InvalidState("all widths are equal".into()));
    }
    Ok(sxy / sxx)
}

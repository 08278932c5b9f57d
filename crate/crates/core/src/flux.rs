//! Interface fluxes.
//!
//! The density flux solves a linear transport problem whose coefficient
//! jumps at the interface. When characteristics enter from both sides the
//! solution carries a point mass at the interface and the flux is obtained
//! as the limit of a regularized (concave/convex) problem; see
//! [`EpsilonFlux`] for the regularization used as a test oracle.
//!
//! The momentum flux is the Godunov flux of the discontinuous convex flux
//! `w -> w g(w / rho)` with `rho` frozen on either side.

use crate::config::FrictionFlux;
use crate::error::{DdfError, Result};
use crate::model::{ModelKind, ModelSpec};
use crate::state::velocity_unchecked;

/// Limit interface flux for `a rho` on the left and `b rho` on the right.
///
/// In the overcompressive case (`a >= 0 >= b`) with same-sign values the
/// result is 0: mass accumulates in the interface instead of crossing it.
#[inline]
pub fn interface_flux_linear(a: f64, b: f64, rl: f64, rr: f64) -> f64 {
    if a >= 0.0 && b > 0.0 {
        a * rl
    } else if a < 0.0 && b <= 0.0 {
        b * rr
    } else if a >= 0.0 && b <= 0.0 {
        if rl < 0.0 && rr > 0.0 {
            (a * rl).max(b * rr)
        } else if rl > 0.0 && rr < 0.0 {
            (a * rl).min(b * rr)
        } else {
            0.0
        }
    } else {
        0.0
    }
}

/// Regularized interface problem: `g_eps` on the left, `f_eps` on the right.
///
/// Both are quadratic perturbations of the linear fluxes whose extremum sits
/// at `1 / (2 eps)` and whose nonzero root on the positive side is `1 / eps`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpsilonFlux {
    epsilon: f64,
    a: f64,
    b: f64,
}

impl EpsilonFlux {
    pub fn new(epsilon: f64, a: f64, b: f64) -> Result<Self> {
        if !(epsilon.is_finite() && epsilon > 0.0) {
            return Err(DdfError::InvalidEpsilon(epsilon));
        }
        if !a.is_finite() || !b.is_finite() {
            return Err(DdfError::NonFinite { what: "speeds" });
        }
        Ok(Self { epsilon, a, b })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    #[inline]
    fn quad(c: f64, eps: f64, rho: f64) -> f64 {
        if rho >= 0.0 {
            c * rho - c * eps * rho * rho
        } else {
            c * rho + c * eps * rho * rho
        }
    }

    pub fn g_eps(&self, rho: f64) -> f64 {
        Self::quad(self.a, self.epsilon, rho)
    }

    pub fn f_eps(&self, rho: f64) -> f64 {
        Self::quad(self.b, self.epsilon, rho)
    }

    /// Location of the extremum of both regularized fluxes.
    pub fn turning_point(&self) -> f64 {
        0.5 / self.epsilon
    }

    pub fn flux(&self, rl: f64, rr: f64) -> f64 {
        let (a, b) = (self.a, self.b);
        let theta = self.turning_point();
        if a >= 0.0 && b > 0.0 {
            self.g_eps(rl.min(theta)).min(self.f_eps(rr.max(theta)))
        } else if a < 0.0 && b <= 0.0 {
            self.g_eps(rl.max(theta)).max(self.f_eps(rr.min(theta)))
        } else if a >= 0.0 && b <= 0.0 {
            if rl < 0.0 && rr > 0.0 {
                self.g_eps(rl).max(self.f_eps(rr))
            } else if rl > 0.0 && rr < 0.0 {
                self.g_eps(rl).min(self.f_eps(rr))
            } else {
                // Both interface traces sit at the root 1/eps.
                self.g_eps(1.0 / self.epsilon)
            }
        } else {
            0.0
        }
    }
}

pub fn epsilon_interface_flux(eps: f64, a: f64, b: f64, rl: f64, rr: f64) -> Result<f64> {
    Ok(EpsilonFlux::new(eps, a, b)?.flux(rl, rr))
}

/// Left/right data at one interface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterfaceTrace {
    pub rho_l: f64,
    pub rho_r: f64,
    pub w_l: f64,
    pub w_r: f64,
    pub u_l: f64,
    pub u_r: f64,
    /// `g(u_l)`, without any time-dependent drift.
    pub a: f64,
    /// `g(u_r)`, without any time-dependent drift.
    pub b: f64,
}

impl InterfaceTrace {
    /// Trace from conserved values, applying the vacuum convention.
    pub fn new(model: &ModelSpec, vacuum_eps: f64, l: (f64, f64), r: (f64, f64)) -> Self {
        let u_l = velocity_unchecked(l.0, l.1, vacuum_eps);
        let u_r = velocity_unchecked(r.0, r.1, vacuum_eps);
        Self::from_parts(model, vacuum_eps, l.0, r.0, l.1, r.1, u_l, u_r)
    }

    /// Trace with velocities supplied directly (reconstructed faces).
    ///
    /// A dry side (density at or below `vacuum_eps`) carries no speed of its
    /// own: it takes the speed of the wet side, so matter flows into vacuum
    /// instead of stopping at the zero velocity assigned to empty cells.
    #[allow(clippy::too_many_arguments)]
    #[inline]
    pub fn from_parts(
        model: &ModelSpec,
        vacuum_eps: f64,
        rho_l: f64,
        rho_r: f64,
        w_l: f64,
        w_r: f64,
        u_l: f64,
        u_r: f64,
    ) -> Self {
        let mut a = model.g(u_l);
        let mut b = model.g(u_r);
        let dry_l = rho_l <= vacuum_eps;
        let dry_r = rho_r <= vacuum_eps;
        if dry_r && !dry_l {
            b = a;
        } else if dry_l && !dry_r {
            a = b;
        }
        Self {
            rho_l,
            rho_r,
            w_l,
            w_r,
            u_l,
            u_r,
            a,
            b,
        }
    }
}

#[inline]
fn kinetic(model: &ModelSpec, rho: f64, w: f64, vacuum_eps: f64) -> f64 {
    if rho <= vacuum_eps {
        0.0
    } else {
        w * model.g(w / rho)
    }
}

fn check_density(rho: f64) -> Result<()> {
    if rho < 0.0 || rho.is_nan() {
        return Err(DdfError::InvalidState(format!(
            "negative density {rho} at interface"
        )));
    }
    Ok(())
}

/// Godunov flux of `w -> w g(w / rho)` with `rho` frozen per side.
pub fn momentum_flux_convex(
    model: &ModelSpec,
    rl: f64,
    wl: f64,
    rr: f64,
    wr: f64,
    vacuum_eps: f64,
) -> Result<f64> {
    check_density(rl)?;
    check_density(rr)?;
    Ok(convex_unchecked(model, rl, wl, rr, wr, vacuum_eps))
}

#[inline]
fn convex_unchecked(model: &ModelSpec, rl: f64, wl: f64, rr: f64, wr: f64, eps: f64) -> f64 {
    kinetic(model, rl, wl.max(0.0), eps).max(kinetic(model, rr, wr.min(0.0), eps))
}

/// Momentum flux with the pressure `s rho^(-alpha)`.
pub fn momentum_flux_pressure(
    rl: f64,
    wl: f64,
    rr: f64,
    wr: f64,
    s: f64,
    alpha: f64,
    vacuum_eps: f64,
) -> Result<f64> {
    for rho in [rl, rr] {
        if rho.is_nan() || rho <= vacuum_eps {
            return Err(DdfError::VacuumPressure { rho });
        }
    }
    let left = wl.max(0.0);
    let right = wr.min(0.0);
    Ok((left * (left / rl) + s * rl.powf(-alpha)).max(right * (right / rr) + s * rr.powf(-alpha)))
}

/// Momentum flux of the friction model in transformed variables.
///
/// Each side's convex flux has its minimum at `G = -rho beta t / 2`; the
/// momenta are clamped there instead of at 0.
#[allow(clippy::too_many_arguments)]
pub fn momentum_flux_friction(
    rl: f64,
    wl: f64,
    rr: f64,
    wr: f64,
    beta: f64,
    t: f64,
    variant: FrictionFlux,
    vacuum_eps: f64,
) -> Result<f64> {
    check_density(rl)?;
    check_density(rr)?;
    let drift = beta * t;
    let q = |rho: f64, w: f64| -> f64 {
        if rho <= vacuum_eps {
            return 0.0;
        }
        let k = w * (w / rho);
        match variant {
            FrictionFlux::Literal => k,
            FrictionFlux::Full => k + drift * w,
        }
    };
    let gl = -0.5 * rl * drift;
    let gr = -0.5 * rr * drift;
    Ok(q(rl, wl.max(gl)).max(q(rr, wr.min(gr))))
}

/// Density flux, including the friction drift for PGDS.
#[inline]
pub fn density_flux(model: &ModelSpec, trace: &InterfaceTrace, t: f64) -> f64 {
    let shift = model.speed_shift(t);
    if shift == 0.0 {
        interface_flux_linear(trace.a, trace.b, trace.rho_l, trace.rho_r)
    } else {
        interface_flux_linear(trace.a + shift, trace.b + shift, trace.rho_l, trace.rho_r)
    }
}

/// Momentum flux of `model` at one interface.
pub fn momentum_flux(
    model: &ModelSpec,
    trace: &InterfaceTrace,
    t: f64,
    friction: FrictionFlux,
    vacuum_eps: f64,
) -> Result<f64> {
    let InterfaceTrace {
        rho_l,
        rho_r,
        w_l,
        w_r,
        ..
    } = *trace;
    match model.kind {
        ModelKind::Pgd | ModelKind::Gpgd => {
            momentum_flux_convex(model, rho_l, w_l, rho_r, w_r, vacuum_eps)
        }
        ModelKind::Pgds => momentum_flux_friction(
            rho_l, w_l, rho_r, w_r, model.beta, t, friction, vacuum_eps,
        ),
        ModelKind::Cgd => {
            momentum_flux_pressure(rho_l, w_l, rho_r, w_r, model.s, model.alpha, vacuum_eps)
        }
    }
}

/// Both flux components at one interface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterfaceFlux {
    pub rho: f64,
    pub w: f64,
}

pub fn interface_flux(
    model: &ModelSpec,
    trace: &InterfaceTrace,
    t: f64,
    friction: FrictionFlux,
    vacuum_eps: f64,
) -> Result<InterfaceFlux> {
    Ok(InterfaceFlux {
        rho: density_flux(model, trace, t),
        w: momentum_flux(model, trace, t, friction, vacuum_eps)?,
    })
}

/// Transverse momentum carried by the mass flux with the upwind velocity.
#[inline]
pub fn transverse_flux(mass_flux: f64, v_l: f64, v_r: f64) -> f64 {
    if mass_flux > 0.0 {
        v_l * mass_flux
    } else if mass_flux < 0.0 {
        v_r * mass_flux
    } else {
        0.0
    }
}

//! Scheme configuration and time steps.

use crate::error::{DdfError, Result};

/// Default vacuum threshold: small enough that densities of order 1e-233
/// reached near vacuum are never clipped.
pub const DEFAULT_VACUUM_EPS: f64 = 1e-300;

/// Largest CFL number for which the MUSCL/SSP-RK2 scheme keeps velocities
/// inside their initial range.
pub const SECOND_ORDER_MAX_CFL: f64 = 1.0 / 3.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Order {
    First,
    Second,
}

impl Order {
    pub fn as_number(&self) -> u8 {
        match self {
            Order::First => 1,
            Order::Second => 2,
        }
    }

    pub fn from_number(n: u8) -> Option<Self> {
        match n {
            1 => Some(Order::First),
            2 => Some(Order::Second),
            _ => None,
        }
    }

    /// Theoretical CFL bound of the order.
    pub fn max_cfl(&self) -> f64 {
        match self {
            Order::First => 1.0,
            Order::Second => SECOND_ORDER_MAX_CFL,
        }
    }

    pub fn default_cfl(&self) -> f64 {
        match self {
            Order::First => 0.5,
            Order::Second => SECOND_ORDER_MAX_CFL,
        }
    }
}

/// Slope limiter used by the MUSCL reconstruction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Limiter {
    Minmod,
    Superbee,
    /// All slopes forced to zero; the MUSCL path then reproduces the
    /// first-order fluxes exactly.
    Zero,
}

impl Limiter {
    pub fn name(&self) -> &'static str {
        match self {
            Limiter::Minmod => "minmod",
            Limiter::Superbee => "superbee",
            Limiter::Zero => "zero",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "minmod" => Some(Limiter::Minmod),
            "superbee" => Some(Limiter::Superbee),
            "zero" => Some(Limiter::Zero),
            _ => None,
        }
    }

    /// Limited slope (per cell, not per unit length) from the backward and
    /// forward differences.
    #[inline]
    pub fn slope(&self, backward: f64, forward: f64) -> f64 {
        match self {
            Limiter::Minmod => minmod(backward, forward),
            Limiter::Superbee => maxmod(
                minmod(2.0 * backward, forward),
                minmod(backward, 2.0 * forward),
            ),
            Limiter::Zero => 0.0,
        }
    }
}

#[inline]
pub fn minmod(a: f64, b: f64) -> f64 {
    if a > 0.0 && b > 0.0 {
        a.min(b)
    } else if a < 0.0 && b < 0.0 {
        a.max(b)
    } else {
        0.0
    }
}

#[inline]
pub fn maxmod(a: f64, b: f64) -> f64 {
    if a > 0.0 && b > 0.0 {
        a.max(b)
    } else if a < 0.0 && b < 0.0 {
        a.min(b)
    } else {
        0.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Boundary {
    /// Zero-gradient: ghost cells copy the nearest interior cell.
    Outflow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Splitting {
    /// First-order dimensional splitting, sweep order alternating each step.
    Alternating,
}

/// Which momentum flux the friction model uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FrictionFlux {
    /// `q(rho, w) = w^2 / rho` at the clamped momenta.
    Literal,
    /// `q(rho, w) = w^2 / rho + beta * t * w`, the physical flux of the
    /// transformed momentum equation.
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeConfig {
    pub order: Order,
    pub limiter: Limiter,
    pub cfl: f64,
    pub vacuum_eps: f64,
    pub boundary: Boundary,
    pub splitting: Splitting,
    pub friction_flux: FrictionFlux,
}

impl Default for SchemeConfig {
    fn default() -> Self {
        Self::first_order()
    }
}

impl SchemeConfig {
    pub fn first_order() -> Self {
        Self {
            order: Order::First,
            limiter: Limiter::Minmod,
            cfl: Order::First.default_cfl(),
            vacuum_eps: DEFAULT_VACUUM_EPS,
            boundary: Boundary::Outflow,
            splitting: Splitting::Alternating,
            friction_flux: FrictionFlux::Literal,
        }
    }

    pub fn second_order(limiter: Limiter) -> Self {
        Self {
            order: Order::Second,
            limiter,
            cfl: Order::Second.default_cfl(),
            ..Self::first_order()
        }
    }

    pub fn with_cfl(mut self, cfl: f64) -> Self {
        self.cfl = cfl;
        self
    }

    pub fn with_friction_flux(mut self, flux: FrictionFlux) -> Self {
        self.friction_flux = flux;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !self.cfl.is_finite() || self.cfl <= 0.0 {
            return Err(DdfError::InvalidConfig(format!(
                "cfl must be positive, got {}",
                self.cfl
            )));
        }
        let bound = self.order.max_cfl();
        if self.cfl > bound {
            return Err(DdfError::InvalidConfig(format!(
                "cfl {} exceeds the bound {:.6} for order {}",
                self.cfl,
                bound,
                self.order.as_number()
            )));
        }
        if !self.vacuum_eps.is_finite() || self.vacuum_eps <= 0.0 {
            return Err(DdfError::InvalidConfig(format!(
                "vacuum_eps must be positive, got {}",
                self.vacuum_eps
            )));
        }
        Ok(())
    }
}

/// A time increment together with its mesh ratio `lambda = dt / h`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeStep {
    pub dt: f64,
    pub lambda: f64,
}

impl TimeStep {
    pub fn new(dt: f64, h: f64) -> Self {
        Self { dt, lambda: dt / h }
    }
}

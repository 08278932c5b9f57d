//! The family of 2x2 systems handled by the solver.
//!
//! All members share the density equation `rho_t + (rho * g(u))_x = 0`; they
//! differ in the velocity map `g`, a time-dependent drift (Coulomb friction)
//! or a pressure term in the momentum flux.

use crate::error::{DdfError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelKind {
    /// Pressureless gas dynamics, `g(u) = u`.
    Pgd,
    /// Generalized pressureless gas dynamics with `g(u) = u^p`, `p` odd.
    Gpgd,
    /// Pressureless gas dynamics with Coulomb friction `S = beta * rho`.
    /// The solver evolves `(rho, rho * v)` with `v = u - beta * t`.
    Pgds,
    /// Modified Chaplygin gas, pressure `P(rho) = s * rho^(-alpha)`.
    Cgd,
}

impl ModelKind {
    pub fn name(&self) -> &'static str {
        match self {
            ModelKind::Pgd => "pgd",
            ModelKind::Gpgd => "gpgd",
            ModelKind::Pgds => "pgds",
            ModelKind::Cgd => "cgd",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "pgd" => Some(ModelKind::Pgd),
            "gpgd" => Some(ModelKind::Gpgd),
            "pgds" => Some(ModelKind::Pgds),
            "cgd" => Some(ModelKind::Cgd),
            _ => None,
        }
    }
}

/// A concrete system with its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelSpec {
    pub kind: ModelKind,
    /// Odd exponent of the velocity map `g(u) = u^g_power`; 1 except for GPGD.
    pub g_power: u32,
    /// Friction coefficient (PGDS only).
    pub beta: f64,
    /// Pressure scale (CGD only).
    pub s: f64,
    /// Pressure exponent (CGD only).
    pub alpha: f64,
}

impl ModelSpec {
    pub fn pgd() -> Self {
        Self {
            kind: ModelKind::Pgd,
            g_power: 1,
            beta: 0.0,
            s: 0.0,
            alpha: 0.0,
        }
    }

    pub fn gpgd(g_power: u32) -> Result<Self> {
        let m = Self {
            kind: ModelKind::Gpgd,
            g_power,
            ..Self::pgd()
        };
        m.validate()?;
        Ok(m)
    }

    pub fn pgds(beta: f64) -> Result<Self> {
        let m = Self {
            kind: ModelKind::Pgds,
            beta,
            ..Self::pgd()
        };
        m.validate()?;
        Ok(m)
    }

    pub fn cgd(s: f64, alpha: f64) -> Result<Self> {
        let m = Self {
            kind: ModelKind::Cgd,
            s,
            alpha,
            ..Self::pgd()
        };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        if self.g_power == 0 || self.g_power.is_multiple_of(2) {
            return Err(DdfError::InvalidModel(format!(
                "velocity map exponent must be odd and positive, got {}",
                self.g_power
            )));
        }
        if self.kind != ModelKind::Gpgd && self.g_power != 1 {
            return Err(DdfError::InvalidModel(format!(
                "{} uses g(u) = u; exponent {} not allowed",
                self.kind.name(),
                self.g_power
            )));
        }
        if !self.beta.is_finite() || !self.s.is_finite() || !self.alpha.is_finite() {
            return Err(DdfError::NonFinite {
                what: "model parameters",
            });
        }
        if self.kind == ModelKind::Cgd {
            if !(self.alpha > 0.0 && self.alpha < 1.0) {
                return Err(DdfError::InvalidModel(format!(
                    "pressure exponent alpha must lie in (0, 1), got {}",
                    self.alpha
                )));
            }
            if self.s < 0.0 {
                return Err(DdfError::InvalidModel(format!(
                    "pressure scale s must be non-negative, got {}",
                    self.s
                )));
            }
        }
        Ok(())
    }

    /// The velocity map `g`.
    #[inline]
    pub fn g(&self, u: f64) -> f64 {
        if self.g_power == 1 {
            u
        } else {
            u.powi(self.g_power as i32)
        }
    }

    /// Drift added to every advective speed at time `t` (PGDS: `beta * t`).
    #[inline]
    pub fn speed_shift(&self, t: f64) -> f64 {
        match self.kind {
            ModelKind::Pgds => self.beta * t,
            _ => 0.0,
        }
    }

    /// Advective speed of a cell with velocity `u` at time `t`.
    #[inline]
    pub fn speed(&self, u: f64, t: f64) -> f64 {
        self.g(u) + self.speed_shift(t)
    }

    /// Pressure law; zero for the pressureless members.
    #[inline]
    pub fn pressure(&self, rho: f64) -> f64 {
        match self.kind {
            ModelKind::Cgd => self.s * rho.powf(-self.alpha),
            _ => 0.0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn velocity_map_is_odd_and_monotone() {
        let m = ModelSpec::gpgd(3).unwrap();
        assert_eq!(m.g(0.0), 0.0);
        assert_eq!(m.g(-2.0), -8.0);
        let mut prev = f64::NEG_INFINITY;
        for k in -20..=20 {
            let u = k as f64 * 0.1;
            assert_eq!(m.g(-u), -m.g(u));
            assert!(m.g(u) >= prev);
            prev = m.g(u);
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(ModelSpec::gpgd(2).is_err());
        assert!(ModelSpec::cgd(5.0, 1.0).is_err());
        assert!(ModelSpec::cgd(5.0, 0.0).is_err());
        assert!(ModelSpec::pgds(f64::NAN).is_err());
        let bad = ModelSpec {
            g_power: 3,
            ..ModelSpec::pgd()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn friction_shift() {
        let m = ModelSpec::pgds(0.5).unwrap();
        assert!((m.speed(-0.4, 1.0) - 0.1).abs() < 1e-15);
        assert_eq!(ModelSpec::pgd().speed_shift(3.0), 0.0);
    }
}

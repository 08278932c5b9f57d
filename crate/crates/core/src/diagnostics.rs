//! Measurements on computed states: cumulative mass, delta detection,
//! discrete entropy residuals, conservation audits and the run manifest.

use std::collections::BTreeMap;
use std::fmt;

use crate::config::SchemeConfig;
use crate::error::{DdfError, Result};
use crate::flux::{momentum_flux_convex, InterfaceTrace};
use crate::grid::Grid1D;
use crate::model::{ModelKind, ModelSpec};
use crate::state::{extend_with_ghosts, State1D};

/// Half-width (in cells) of the window used to integrate a delta's mass.
pub const DELTA_WINDOW: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EntropyFunction {
    /// `S(u) = u^2`.
    Square,
    /// `S(u) = |u - center|`.
    Abs { center: f64 },
    /// `S(u) = 1`; the entropy flux then equals the density flux.
    Constant,
}

impl EntropyFunction {
    #[inline]
    pub fn eval(&self, u: f64) -> f64 {
        match *self {
            EntropyFunction::Square => u * u,
            EntropyFunction::Abs { center } => (u - center).abs(),
            EntropyFunction::Constant => 1.0,
        }
    }

    pub fn is_convex(&self) -> bool {
        true
    }

    pub fn label(&self) -> String {
        match *self {
            EntropyFunction::Square => "u2".into(),
            EntropyFunction::Abs { center: 0.0 } => "abs".into(),
            EntropyFunction::Abs { center } => format!("abs({center})"),
            EntropyFunction::Constant => "one".into(),
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        match s {
            "u2" => return Some(EntropyFunction::Square),
            "abs" => return Some(EntropyFunction::Abs { center: 0.0 }),
            "one" => return Some(EntropyFunction::Constant),
            _ => {}
        }
        let inner = s.strip_prefix("abs(")?.strip_suffix(')')?;
        let center: f64 = inner.trim().parse().ok()?;
        center
            .is_finite()
            .then_some(EntropyFunction::Abs { center })
    }
}

impl fmt::Display for EntropyFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Cumulative mass `P_i = h * sum_{j <= i} rho_j`.
pub fn primitive(rho: &[f64], grid: &Grid1D) -> Vec<f64> {
    let h = grid.h();
    let mut acc = 0.0;
    rho.iter()
        .map(|r| {
            acc += r;
            h * acc
        })
        .collect()
}

/// Density of the solution away from the delta.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Background {
    Uniform(f64),
    /// `left` for `x < position`, `right` beyond.
    TwoState { position: f64, left: f64, right: f64 },
}

impl Background {
    pub fn value(&self, x: f64) -> f64 {
        match *self {
            Background::Uniform(r) => r,
            Background::TwoState {
                position,
                left,
                right,
            } => {
                if x < position {
                    left
                } else {
                    right
                }
            }
        }
    }

    /// Exact mean over `[a, b]`.
    pub fn cell_average(&self, a: f64, b: f64) -> f64 {
        match *self {
            Background::Uniform(r) => r,
            Background::TwoState {
                position,
                left,
                right,
            } => {
                if b <= position {
                    left
                } else if a >= position {
                    right
                } else {
                    (left * (position - a) + right * (b - position)) / (b - a)
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaMeasure {
    pub index: usize,
    /// Center of the cell holding the density maximum.
    pub location: f64,
    /// Excess mass over the background within the window.
    pub weight: f64,
    pub peak: f64,
    pub window: usize,
}

/// Locates the density maximum and integrates the excess mass around it.
/// Returns `None` for a flat profile.
pub fn delta_measure(rho: &[f64], grid: &Grid1D, background: &Background) -> Option<DeltaMeasure> {
    delta_measure_with_window(rho, grid, background, DELTA_WINDOW)
}

pub fn delta_measure_with_window(
    rho: &[f64],
    grid: &Grid1D,
    background: &Background,
    window: usize,
) -> Option<DeltaMeasure> {
    if rho.is_empty() {
        return None;
    }
    let (mut index, mut peak) = (0, rho[0]);
    let mut low = rho[0];
    for (i, &r) in rho.iter().enumerate() {
        if r > peak {
            peak = r;
            index = i;
        }
        low = low.min(r);
    }
    if peak - low <= 1e-14 * peak.abs().max(1.0) {
        return None;
    }
    let lo = index.saturating_sub(window);
    let hi = (index + window).min(rho.len() - 1);
    let h = grid.h();
    let weight = (lo..=hi)
        .map(|j| {
            let (a, b) = grid.cell_bounds(j);
            h * (rho[j] - background.cell_average(a, b))
        })
        .sum();
    Some(DeltaMeasure {
        index,
        location: grid.cell_center(index),
        weight,
        peak,
        window,
    })
}

/// Numerical entropy flux of the first-order scheme for convex `S`.
pub fn entropy_flux(model: &ModelSpec, trace: &InterfaceTrace, s: &EntropyFunction, vacuum_eps: f64) -> Result<f64> {
    let (a, b) = (trace.a, trace.b);
    Ok(if a >= 0.0 && b > 0.0 {
        s.eval(trace.u_l) * trace.rho_l * a
    } else if a < 0.0 && b <= 0.0 {
        s.eval(trace.u_r) * trace.rho_r * b
    } else if (a < 0.0 && b > 0.0) || trace.u_r == trace.u_l {
        0.0
    } else {
        let fw = momentum_flux_convex(model, trace.rho_l, trace.w_l, trace.rho_r, trace.w_r, vacuum_eps)?;
        fw * (s.eval(trace.u_r) - s.eval(trace.u_l)) / (trace.u_r - trace.u_l)
    })
}

/// Largest scaled left-hand side of the cellwise entropy inequality
/// `rho' S(u') - rho S(u) + lambda (G+ - G-) <= 0` over one first-order step.
///
/// Each cell's value is divided by `max(1, |rho' S'|, |rho S|, lambda |G+|,
/// lambda |G-|)`.
#[allow(clippy::too_many_arguments)]
pub fn entropy_residual(
    before: &State1D,
    after: &State1D,
    model: &ModelSpec,
    t: f64,
    dt: f64,
    grid: &Grid1D,
    s: &EntropyFunction,
    config: &SchemeConfig,
) -> Result<f64> {
    let _ = t;
    if !matches!(model.kind, ModelKind::Pgd | ModelKind::Gpgd) {
        return Err(DdfError::InvalidModel(
            "entropy residual is defined for the pressureless models without friction".into(),
        ));
    }
    let m = before.len();
    if after.len() != m || m != grid.cells() {
        return Err(DdfError::LengthMismatch {
            left: m,
            right: after.len(),
        });
    }
    let eps = config.vacuum_eps;
    let lambda = dt / grid.h();
    let rho = extend_with_ghosts(&before.rho);
    let w = extend_with_ghosts(&before.w);
    let mut g = Vec::with_capacity(m + 1);
    for k in 0..=m {
        let trace = InterfaceTrace::new(model, eps, (rho[k + 1], w[k + 1]), (rho[k + 2], w[k + 2]));
        g.push(entropy_flux(model, &trace, s, eps)?);
    }
    let u0 = before.velocities(eps);
    let u1 = after.velocities(eps);
    let mut worst = f64::NEG_INFINITY;
    for i in 0..m {
        let e1 = after.rho[i] * s.eval(u1[i]);
        let e0 = before.rho[i] * s.eval(u0[i]);
        let (gp, gm) = (lambda * g[i + 1], lambda * g[i]);
        let scale = 1f64.max(e1.abs()).max(e0.abs()).max(gp.abs()).max(gm.abs());
        worst = worst.max((e1 - e0 + gp - gm) / scale);
    }
    Ok(worst)
}

/// Mass and momentum that crossed the boundary, used to correct an audit.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct BoundaryBudget {
    pub mass: f64,
    pub momentum: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConservationAudit {
    pub mass_initial: f64,
    pub mass_final: f64,
    pub momentum_initial: f64,
    pub momentum_final: f64,
    /// `|M_final - M_initial - inflow| / (h sum |rho_0|)`.
    pub mass_drift: f64,
    /// Same for momentum, relative to `h sum |w_0|`.
    pub momentum_drift: f64,
}

/// Relative drift of total mass and momentum between the first and last
/// state of a series, after removing the boundary budget if given.
pub fn conservation_audit(
    states: &[State1D],
    grid: &Grid1D,
    boundary: Option<BoundaryBudget>,
) -> Result<ConservationAudit> {
    let (first, last) = match (states.first(), states.last()) {
        (Some(f), Some(l)) => (f, l),
        _ => return Err(DdfError::Empty("state series")),
    };
    let h = grid.h();
    let b = boundary.unwrap_or_default();
    let mass_ref = h * first.rho.iter().map(|r| r.abs()).sum::<f64>();
    let mom_ref = h * first.w.iter().map(|w| w.abs()).sum::<f64>();
    let (m0, m1) = (first.mass(h), last.mass(h));
    let (p0, p1) = (first.momentum(h), last.momentum(h));
    Ok(ConservationAudit {
        mass_initial: m0,
        mass_final: m1,
        momentum_initial: p0,
        momentum_final: p1,
        mass_drift: crate::scheme1d::relative_drift(m1 - m0 - b.mass, mass_ref),
        momentum_drift: crate::scheme1d::relative_drift(p1 - p0 - b.momentum, mom_ref),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub enum ManifestValue {
    Number(f64),
    Integer(i64),
    Flag(bool),
    Text(String),
}

impl From<f64> for ManifestValue {
    fn from(v: f64) -> Self {
        ManifestValue::Number(v)
    }
}

impl From<usize> for ManifestValue {
    fn from(v: usize) -> Self {
        ManifestValue::Integer(v as i64)
    }
}

impl From<i64> for ManifestValue {
    fn from(v: i64) -> Self {
        ManifestValue::Integer(v)
    }
}

impl From<bool> for ManifestValue {
    fn from(v: bool) -> Self {
        ManifestValue::Flag(v)
    }
}

impl From<&str> for ManifestValue {
    fn from(v: &str) -> Self {
        ManifestValue::Text(v.to_string())
    }
}

impl From<String> for ManifestValue {
    fn from(v: String) -> Self {
        ManifestValue::Text(v)
    }
}

/// Run summary; keys are kept sorted.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunManifest {
    entries: BTreeMap<String, ManifestValue>,
}

impl RunManifest {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, key: impl Into<String>, value: impl Into<ManifestValue>) {
        self.entries.insert(key.into(), value.into());
    }

    pub fn get(&self, key: &str) -> Option<&ManifestValue> {
        self.entries.get(key)
    }

    pub fn number(&self, key: &str) -> Option<f64> {
        match self.entries.get(key)? {
            ManifestValue::Number(v) => Some(*v),
            ManifestValue::Integer(v) => Some(*v as f64),
            _ => None,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &ManifestValue)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Records the scheme switches that are interpretations rather than
    /// fixed parts of the method.
    pub fn record_scheme(&mut self, model: &ModelSpec, config: &SchemeConfig) {
        self.insert("model.kind", model.kind.name());
        self.insert("model.g_power", model.g_power as usize);
        self.insert("model.beta", model.beta);
        self.insert("model.s", model.s);
        self.insert("model.alpha", model.alpha);
        self.insert("scheme.order", config.order.as_number() as usize);
        self.insert("scheme.limiter", config.limiter.name());
        self.insert("scheme.cfl", config.cfl);
        self.insert("scheme.vacuum_eps", config.vacuum_eps);
        self.insert("scheme.boundary", "outflow");
        self.insert("scheme.splitting", "alternating");
        self.insert("scheme.dt_cap", "h");
        self.insert("flux.overcompressive_same_sign", "zero");
        self.insert("flux.dry_side_speed", "wet");
        self.insert("scheme.negative_density_floor", "8 ulp or vacuum_eps");
        self.insert(
            "flux.pgds_full_flux",
            config.friction_flux == crate::config::FrictionFlux::Full,
        );
        self.insert("delta.window_cells", DELTA_WINDOW);
    }
}

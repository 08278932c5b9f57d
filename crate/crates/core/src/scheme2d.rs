//! Two-dimensional driver by dimensional splitting.
//!
//! Every step applies an x-sweep and a y-sweep with the full `dt`, in an
//! order that alternates from step to step. A sweep runs the 1D scheme on
//! each line for the density and the normal momentum; the transverse
//! momentum rides on the mass flux with the upwind transverse velocity.

use rayon::prelude::*;

use crate::config::SchemeConfig;
use crate::error::{DdfError, Result};
use crate::grid::Grid2D;
use crate::model::{ModelKind, ModelSpec};
use crate::scheme1d::{
    advance_line, excursion, velocity_range, Inflow, Line, RunOptions, RunStats, SPEED_FLOOR,
};
use crate::state::State2D;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepPlan {
    XY,
    YX,
}

impl SweepPlan {
    /// Plan for step number `n` (counting from 0).
    pub fn for_step(n: usize) -> Self {
        if n.is_multiple_of(2) {
            SweepPlan::XY
        } else {
            SweepPlan::YX
        }
    }

    pub fn next(self) -> Self {
        match self {
            SweepPlan::XY => SweepPlan::YX,
            SweepPlan::YX => SweepPlan::XY,
        }
    }
}

/// Mass and momenta that entered through the domain boundary.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Budget2D {
    pub mass: f64,
    pub wx: f64,
    pub wy: f64,
}

impl std::ops::AddAssign for Budget2D {
    fn add_assign(&mut self, o: Self) {
        self.mass += o.mass;
        self.wx += o.wx;
        self.wy += o.wy;
    }
}

fn check_model(model: &ModelSpec) -> Result<()> {
    match model.kind {
        ModelKind::Pgd | ModelKind::Gpgd => Ok(()),
        other => Err(DdfError::InvalidModel(format!(
            "2D runs support pgd and gpgd, not {}",
            other.name()
        ))),
    }
}

fn finish(results: Vec<Result<(Line, Inflow)>>) -> Result<Vec<(Line, Inflow)>> {
    results.into_iter().collect()
}

/// Evolves every row by `dt` in x.
pub fn sweep_x(
    state: &State2D,
    grid: &Grid2D,
    model: &ModelSpec,
    t: f64,
    dt: f64,
    config: &SchemeConfig,
) -> Result<(State2D, Budget2D)> {
    check_model(model)?;
    let mx = state.mx;
    let hx = grid.hx();
    let rows: Vec<Result<(Line, Inflow)>> = (0..state.my)
        .into_par_iter()
        .map(|j| {
            let r = j * mx..(j + 1) * mx;
            let line = Line {
                rho: state.rho[r.clone()].to_vec(),
                w: state.wx[r.clone()].to_vec(),
                trans: Some(state.wy[r].to_vec()),
            };
            advance_line(model, config, t, dt, hx, &line)
        })
        .collect();
    let mut out = state.clone();
    let mut budget = Budget2D::default();
    for (j, (line, inflow)) in finish(rows)?.into_iter().enumerate() {
        let r = j * mx..(j + 1) * mx;
        out.rho[r.clone()].copy_from_slice(&line.rho);
        out.wx[r.clone()].copy_from_slice(&line.w);
        out.wy[r].copy_from_slice(line.trans.as_deref().unwrap_or_default());
        budget += Budget2D {
            mass: grid.hy() * inflow.rho,
            wx: grid.hy() * inflow.w,
            wy: grid.hy() * inflow.trans,
        };
    }
    Ok((out, budget))
}

/// Evolves every column by `dt` in y.
pub fn sweep_y(
    state: &State2D,
    grid: &Grid2D,
    model: &ModelSpec,
    t: f64,
    dt: f64,
    config: &SchemeConfig,
) -> Result<(State2D, Budget2D)> {
    check_model(model)?;
    let (mx, my) = (state.mx, state.my);
    let hy = grid.hy();
    let column = |z: &[f64], i: usize| -> Vec<f64> { (0..my).map(|j| z[j * mx + i]).collect() };
    let cols: Vec<Result<(Line, Inflow)>> = (0..mx)
        .into_par_iter()
        .map(|i| {
            let line = Line {
                rho: column(&state.rho, i),
                w: column(&state.wy, i),
                trans: Some(column(&state.wx, i)),
            };
            advance_line(model, config, t, dt, hy, &line)
        })
        .collect();
    let mut out = state.clone();
    let mut budget = Budget2D::default();
    for (i, (line, inflow)) in finish(cols)?.into_iter().enumerate() {
        let trans = line.trans.unwrap_or_default();
        for j in 0..my {
            let k = j * mx + i;
            out.rho[k] = line.rho[j];
            out.wy[k] = line.w[j];
            out.wx[k] = trans[j];
        }
        budget += Budget2D {
            mass: grid.hx() * inflow.rho,
            wx: grid.hx() * inflow.trans,
            wy: grid.hx() * inflow.w,
        };
    }
    Ok((out, budget))
}

/// Both sweeps in the order given by `plan`.
pub fn step_2d(
    state: &State2D,
    grid: &Grid2D,
    model: &ModelSpec,
    t: f64,
    dt: f64,
    config: &SchemeConfig,
    plan: SweepPlan,
) -> Result<(State2D, Budget2D)> {
    let (first, mut b) = match plan {
        SweepPlan::XY => sweep_x(state, grid, model, t, dt, config)?,
        SweepPlan::YX => sweep_y(state, grid, model, t, dt, config)?,
    };
    let (second, b2) = match plan {
        SweepPlan::XY => sweep_y(&first, grid, model, t, dt, config)?,
        SweepPlan::YX => sweep_x(&first, grid, model, t, dt, config)?,
    };
    b += b2;
    Ok((second, b))
}

/// Largest `|g(u)|` and `|g(v)|` over non-vacuum cells.
pub fn max_speeds_2d(state: &State2D, model: &ModelSpec, vacuum_eps: f64) -> (f64, f64) {
    let mut su: f64 = 0.0;
    let mut sv: f64 = 0.0;
    for k in 0..state.len() {
        let r = state.rho[k];
        if r > vacuum_eps {
            su = su.max(model.g(state.wx[k] / r).abs());
            sv = sv.max(model.g(state.wy[k] / r).abs());
        }
    }
    (su, sv)
}

/// `dt = cfl / (su / hx + sv / hy)`, capped by `min(hx, hy)` and `remaining`.
pub fn dt_2d(su: f64, sv: f64, hx: f64, hy: f64, cfl: f64, remaining: f64) -> f64 {
    let rate = su / hx + sv / hy;
    let cap = hx.min(hy);
    let dt = if su.max(sv) > SPEED_FLOOR { cfl / rate } else { cap };
    dt.min(cap).min(remaining)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot2D {
    pub t: f64,
    pub state: State2D,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput2D {
    pub snapshots: Vec<Snapshot2D>,
    pub stats: RunStats,
}

fn totals(state: &State2D, area: f64) -> (f64, f64, f64) {
    (
        area * state.rho.iter().sum::<f64>(),
        area * state.wx.iter().sum::<f64>(),
        area * state.wy.iter().sum::<f64>(),
    )
}

pub fn run_2d(
    init: &State2D,
    model: &ModelSpec,
    grid: &Grid2D,
    config: &SchemeConfig,
    options: &RunOptions,
) -> Result<RunOutput2D> {
    check_model(model)?;
    config.validate()?;
    options.validate()?;
    init.validate()?;
    if init.mx != grid.mx() || init.my != grid.my() {
        return Err(DdfError::LengthMismatch {
            left: grid.len(),
            right: init.len(),
        });
    }
    if !options.entropy.is_empty() {
        return Err(DdfError::InvalidConfig(
            "entropy checks are available for 1D runs only".into(),
        ));
    }
    let eps = config.vacuum_eps;
    let area = grid.cell_area();
    let (u0, v0) = init.velocities(eps);
    let ranges = vec![
        velocity_range(&init.rho, &u0, eps),
        velocity_range(&init.rho, &v0, eps),
    ];
    let (m0, px0, py0) = totals(init, area);
    let mut stats = RunStats::new(m0, px0, py0, init.min_density(), ranges.clone());
    stats.t_final = options.t0;

    let mut snapshots = Vec::new();
    if options.snapshot_times.first() == Some(&options.t0) {
        snapshots.push(Snapshot2D {
            t: options.t0,
            state: init.clone(),
        });
    }
    let mut state = init.clone();
    let mut t = options.t0;
    let mut plan = SweepPlan::XY;
    for target in options.landing_points() {
        while t < target {
            let (su, sv) = max_speeds_2d(&state, model, eps);
            let dt = dt_2d(su, sv, grid.hx(), grid.hy(), config.cfl, target - t);
            let (next, budget) = step_2d(&state, grid, model, t, dt, config, plan)?;
            stats.max_courant = stats.max_courant.max(dt * (su / grid.hx() + sv / grid.hy()));
            stats.boundary_mass += budget.mass;
            stats.boundary_momentum += budget.wx;
            stats.boundary_momentum_y += budget.wy;
            stats.steps += 1;
            plan = plan.next();
            t = if dt >= target - t { target } else { t + dt };
            let md = next.min_density();
            stats.min_density = stats.min_density.min(md);
            if options.min_density_history {
                stats.min_density_history.push((t, md));
            }
            let (u, v) = next.velocities(eps);
            stats.velocity_excursion[0] =
                stats.velocity_excursion[0].max(excursion(&next.rho, &u, ranges[0], eps));
            stats.velocity_excursion[1] =
                stats.velocity_excursion[1].max(excursion(&next.rho, &v, ranges[1], eps));
            state = next;
        }
        if options.snapshot_times.contains(&target) {
            snapshots.push(Snapshot2D {
                t: target,
                state: state.clone(),
            });
        }
    }
    let (m1, px1, py1) = totals(&state, area);
    stats.t_final = t;
    stats.mass_final = m1;
    stats.momentum_final = px1;
    stats.momentum_y_final = py1;
    Ok(RunOutput2D { snapshots, stats })
}

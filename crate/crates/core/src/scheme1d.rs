//! One-dimensional stepper: time-step selection, the first-order update,
//! MUSCL reconstruction, SSP-RK2 and the time loop.

use crate::config::{Limiter, Order, SchemeConfig, TimeStep};
use crate::diagnostics::{entropy_residual, EntropyFunction};
use crate::error::{DdfError, Result};
use crate::flux::{interface_flux, transverse_flux, InterfaceTrace};
use crate::grid::Grid1D;
use crate::model::ModelSpec;
use crate::state::{extend_with_ghosts, velocity_unchecked, State1D};

/// Speeds below this are treated as a state at rest when choosing `dt`.
pub const SPEED_FLOOR: f64 = 1e-14;

/// Largest advective speed `|g(u) + shift|` over non-vacuum cells.
pub fn max_speed(state: &State1D, model: &ModelSpec, t: f64, vacuum_eps: f64) -> f64 {
    line_max_speed(&state.rho, &state.w, model, t, vacuum_eps)
}

pub(crate) fn line_max_speed(rho: &[f64], w: &[f64], model: &ModelSpec, t: f64, eps: f64) -> f64 {
    rho.iter()
        .zip(w)
        .filter(|(r, _)| **r > eps)
        .map(|(&r, &m)| model.speed(m / r, t).abs())
        .fold(0.0, f64::max)
}

/// `dt = cfl h / speed`, capped by `h` and by the time left to the next
/// landing point.
pub fn dt_from_speed(speed: f64, h: f64, cfl: f64, remaining: f64) -> f64 {
    let dt = if speed > SPEED_FLOOR { cfl * h / speed } else { h };
    dt.min(h).min(remaining)
}

pub fn select_dt(
    state: &State1D,
    model: &ModelSpec,
    t: f64,
    grid: &Grid1D,
    config: &SchemeConfig,
    remaining: f64,
) -> TimeStep {
    let s = max_speed(state, model, t, config.vacuum_eps);
    TimeStep::new(dt_from_speed(s, grid.h(), config.cfl, remaining), grid.h())
}

/// Piecewise-linear reconstruction of the interior cells.
///
/// `rho_minus`/`rho_plus` are the values at the left and right edge of each
/// cell; slopes are per unit length.
#[derive(Debug, Clone, PartialEq)]
pub struct Reconstruction {
    pub rho_minus: Vec<f64>,
    pub rho_plus: Vec<f64>,
    pub u_minus: Vec<f64>,
    pub u_plus: Vec<f64>,
    pub w_minus: Vec<f64>,
    pub w_plus: Vec<f64>,
    pub sigma_rho: Vec<f64>,
    pub sigma_u: Vec<f64>,
}

pub fn reconstruct(state: &State1D, grid: &Grid1D, limiter: Limiter, vacuum_eps: f64) -> Reconstruction {
    let rho = extend_with_ghosts(&state.rho);
    let w = extend_with_ghosts(&state.w);
    let f = faces(&rho, &w, None, Some(limiter), vacuum_eps);
    let m = state.len();
    let h = grid.h();
    let r = 1..m + 1;
    Reconstruction {
        rho_minus: f.rho_m[r.clone()].to_vec(),
        rho_plus: f.rho_p[r.clone()].to_vec(),
        u_minus: f.u_m[r.clone()].to_vec(),
        u_plus: f.u_p[r.clone()].to_vec(),
        w_minus: f.w_m[r.clone()].to_vec(),
        w_plus: f.w_p[r.clone()].to_vec(),
        sigma_rho: f.d_rho[r.clone()].iter().map(|d| d / h).collect(),
        sigma_u: f.d_u[r].iter().map(|d| d / h).collect(),
    }
}

/// Face values of the extended cells `1..=m+2`; index 0 is extended cell 1.
struct Faces {
    rho_m: Vec<f64>,
    rho_p: Vec<f64>,
    u_m: Vec<f64>,
    u_p: Vec<f64>,
    w_m: Vec<f64>,
    w_p: Vec<f64>,
    v_m: Vec<f64>,
    v_p: Vec<f64>,
    d_rho: Vec<f64>,
    d_u: Vec<f64>,
}

fn faces(rho: &[f64], w: &[f64], vt: Option<&[f64]>, limiter: Option<Limiter>, eps: f64) -> Faces {
    let n = rho.len();
    let u: Vec<f64> = rho
        .iter()
        .zip(w)
        .map(|(&r, &m)| velocity_unchecked(r, m, eps))
        .collect();
    let cells = 1..n - 1;
    let k = n - 2;
    let mut f = Faces {
        rho_m: Vec::with_capacity(k),
        rho_p: Vec::with_capacity(k),
        u_m: Vec::with_capacity(k),
        u_p: Vec::with_capacity(k),
        w_m: Vec::with_capacity(k),
        w_p: Vec::with_capacity(k),
        v_m: Vec::new(),
        v_p: Vec::new(),
        d_rho: Vec::with_capacity(k),
        d_u: Vec::with_capacity(k),
    };
    let Some(lim) = limiter else {
        f.rho_m.extend_from_slice(&rho[cells.clone()]);
        f.rho_p.extend_from_slice(&rho[cells.clone()]);
        f.u_m.extend_from_slice(&u[cells.clone()]);
        f.u_p.extend_from_slice(&u[cells.clone()]);
        f.w_m.extend_from_slice(&w[cells.clone()]);
        f.w_p.extend_from_slice(&w[cells.clone()]);
        f.d_rho.resize(k, 0.0);
        f.d_u.resize(k, 0.0);
        if let Some(v) = vt {
            f.v_m.extend_from_slice(&v[cells.clone()]);
            f.v_p.extend_from_slice(&v[cells]);
        }
        return f;
    };
    for j in cells.clone() {
        let r = rho[j];
        let dr = lim
            .slope(r - rho[j - 1], rho[j + 1] - r)
            .clamp(-2.0 * r, 2.0 * r);
        let du = lim.slope(u[j] - u[j - 1], u[j + 1] - u[j]);
        let half = 0.5 * (r * du + u[j] * dr);
        let quarter = 0.25 * dr * du;
        f.rho_m.push(r - 0.5 * dr);
        f.rho_p.push(r + 0.5 * dr);
        f.u_m.push(u[j] - 0.5 * du);
        f.u_p.push(u[j] + 0.5 * du);
        f.w_m.push(w[j] - half + quarter);
        f.w_p.push(w[j] + half + quarter);
        f.d_rho.push(dr);
        f.d_u.push(du);
    }
    if let Some(v) = vt {
        for j in cells {
            let dv = lim.slope(v[j] - v[j - 1], v[j + 1] - v[j]);
            f.v_m.push(v[j] - 0.5 * dv);
            f.v_p.push(v[j] + 0.5 * dv);
        }
    }
    f
}

/// Relative size below which a negative updated density is treated as
/// rounding error and set to zero.
pub const ROUNDOFF: f64 = 8.0 * f64::EPSILON;

/// A line of cells with an optional passively transported momentum.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Line {
    pub rho: Vec<f64>,
    pub w: Vec<f64>,
    pub trans: Option<Vec<f64>>,
}

/// Net inflow through the two ends of a line during one step.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Inflow {
    pub rho: f64,
    pub w: f64,
    pub trans: f64,
}

impl Inflow {
    fn average(self, other: Inflow) -> Inflow {
        Inflow {
            rho: 0.5 * (self.rho + other.rho),
            w: 0.5 * (self.w + other.w),
            trans: 0.5 * (self.trans + other.trans),
        }
    }
}

struct Ctx<'a> {
    model: &'a ModelSpec,
    config: &'a SchemeConfig,
    t: f64,
    dt: f64,
    lambda: f64,
}

/// One forward-Euler stage; `limiter = None` gives the first-order update.
fn euler(ctx: &Ctx, limiter: Option<Limiter>, line: &Line) -> Result<(Line, Inflow)> {
    let m = line.rho.len();
    let eps = ctx.config.vacuum_eps;
    let rho = extend_with_ghosts(&line.rho);
    let w = extend_with_ghosts(&line.w);
    let vt = line.trans.as_ref().map(|tr| {
        let v: Vec<f64> = line
            .rho
            .iter()
            .zip(tr)
            .map(|(&r, &q)| velocity_unchecked(r, q, eps))
            .collect();
        extend_with_ghosts(&v)
    });
    let f = faces(&rho, &w, vt.as_deref(), limiter, eps);

    let mut fr = Vec::with_capacity(m + 1);
    let mut fw = Vec::with_capacity(m + 1);
    let mut ft = Vec::with_capacity(if vt.is_some() { m + 1 } else { 0 });
    for k in 0..=m {
        let trace = InterfaceTrace::from_parts(
            ctx.model,
            eps,
            f.rho_p[k],
            f.rho_m[k + 1],
            f.w_p[k],
            f.w_m[k + 1],
            f.u_p[k],
            f.u_m[k + 1],
        );
        let flux = interface_flux(ctx.model, &trace, ctx.t, ctx.config.friction_flux, eps)?;
        if vt.is_some() {
            ft.push(transverse_flux(flux.rho, f.v_p[k], f.v_m[k + 1]));
        }
        fr.push(flux.rho);
        fw.push(flux.w);
    }

    let lambda = ctx.lambda;
    let mut out = Line {
        rho: Vec::with_capacity(m),
        w: Vec::with_capacity(m),
        trans: None,
    };
    for i in 0..m {
        let mut r = line.rho[i] - lambda * (fr[i + 1] - fr[i]);
        let scale = line.rho[i] + lambda * (fr[i].abs() + fr[i + 1].abs());
        if r < 0.0 && -r <= (ROUNDOFF * scale).max(ctx.config.vacuum_eps) {
            // Cancellation when a cell empties exactly (lambda * speed = 1).
            r = 0.0;
        }
        if r < 0.0 || !r.is_finite() {
            return Err(DdfError::NegativeDensity {
                cell: i,
                value: r,
                t: ctx.t,
            });
        }
        out.rho.push(r);
        out.w.push(line.w[i] - lambda * (fw[i + 1] - fw[i]));
    }
    let mut inflow = Inflow {
        rho: fr[0] - fr[m],
        w: fw[0] - fw[m],
        trans: 0.0,
    };
    if let Some(tr) = &line.trans {
        out.trans = Some((0..m).map(|i| tr[i] - lambda * (ft[i + 1] - ft[i])).collect());
        inflow.trans = ft[0] - ft[m];
    }
    if out.w.iter().any(|v| !v.is_finite()) {
        return Err(DdfError::NonFinite { what: "momentum update" });
    }
    Ok((out, inflow))
}

/// Advances one line by `dt`, returning the new line and the time-integrated
/// boundary inflow.
pub(crate) fn advance_line(
    model: &ModelSpec,
    config: &SchemeConfig,
    t: f64,
    dt: f64,
    h: f64,
    line: &Line,
) -> Result<(Line, Inflow)> {
    let ctx = Ctx {
        model,
        config,
        t,
        dt,
        lambda: dt / h,
    };
    let (line, inflow) = match config.order {
        Order::First => euler(&ctx, None, line)?,
        Order::Second => ssprk2(&ctx, config.limiter, line)?,
    };
    let scale = ctx.dt;
    Ok((
        line,
        Inflow {
            rho: inflow.rho * scale,
            w: inflow.w * scale,
            trans: inflow.trans * scale,
        },
    ))
}

fn ssprk2(ctx: &Ctx, limiter: Limiter, line: &Line) -> Result<(Line, Inflow)> {
    let (star, in1) = euler(ctx, Some(limiter), line)?;
    let (star2, in2) = euler(ctx, Some(limiter), &star)?;
    let avg = |a: &[f64], b: &[f64]| -> Vec<f64> {
        a.iter().zip(b).map(|(x, y)| 0.5 * (x + y)).collect()
    };
    let out = Line {
        rho: avg(&line.rho, &star2.rho),
        w: avg(&line.w, &star2.w),
        trans: match (&line.trans, &star2.trans) {
            (Some(a), Some(b)) => Some(avg(a, b)),
            _ => None,
        },
    };
    Ok((out, in1.average(in2)))
}

fn to_line(state: &State1D) -> Line {
    Line {
        rho: state.rho.clone(),
        w: state.w.clone(),
        trans: None,
    }
}

fn from_line(line: Line) -> State1D {
    State1D {
        rho: line.rho,
        w: line.w,
    }
}

/// First-order update of the interior cells (ghosts are filled internally).
pub fn step_first_order(
    state: &State1D,
    model: &ModelSpec,
    t: f64,
    dt: f64,
    grid: &Grid1D,
    config: &SchemeConfig,
) -> Result<State1D> {
    let ctx = Ctx {
        model,
        config,
        t,
        dt,
        lambda: dt / grid.h(),
    };
    Ok(from_line(euler(&ctx, None, &to_line(state))?.0))
}

/// One forward-Euler stage on reconstructed face values.
pub fn step_muscl_euler(
    state: &State1D,
    model: &ModelSpec,
    t: f64,
    dt: f64,
    grid: &Grid1D,
    config: &SchemeConfig,
) -> Result<State1D> {
    let ctx = Ctx {
        model,
        config,
        t,
        dt,
        lambda: dt / grid.h(),
    };
    Ok(from_line(euler(&ctx, Some(config.limiter), &to_line(state))?.0))
}

/// MUSCL reconstruction with the two-stage SSP Runge-Kutta method; both
/// stages use `dt` and the start time `t`.
pub fn step_muscl_ssprk2(
    state: &State1D,
    model: &ModelSpec,
    t: f64,
    dt: f64,
    grid: &Grid1D,
    config: &SchemeConfig,
) -> Result<State1D> {
    let ctx = Ctx {
        model,
        config,
        t,
        dt,
        lambda: dt / grid.h(),
    };
    Ok(from_line(ssprk2(&ctx, config.limiter, &to_line(state))?.0))
}

/// Step with the order selected in `config`; also returns the boundary
/// inflow integrated over the step.
pub fn step(
    state: &State1D,
    model: &ModelSpec,
    t: f64,
    dt: f64,
    grid: &Grid1D,
    config: &SchemeConfig,
) -> Result<(State1D, Inflow)> {
    let (line, inflow) = advance_line(model, config, t, dt, grid.h(), &to_line(state))?;
    Ok((from_line(line), inflow))
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOptions {
    pub t0: f64,
    pub t_end: f64,
    /// Strictly increasing times in `[t0, t_end]` at which to keep the state.
    pub snapshot_times: Vec<f64>,
    /// Entropies whose cellwise inequality is checked after every step.
    pub entropy: Vec<EntropyFunction>,
    /// Record `(t, min rho)` after every step.
    pub min_density_history: bool,
}

impl RunOptions {
    pub fn until(t_end: f64) -> Self {
        Self {
            t0: 0.0,
            t_end,
            snapshot_times: vec![t_end],
            entropy: Vec::new(),
            min_density_history: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.t0.is_finite() || !self.t_end.is_finite() {
            return Err(DdfError::InvalidTimes("non-finite start or end time".into()));
        }
        if self.t_end <= self.t0 {
            return Err(DdfError::InvalidTimes(format!(
                "end time {} must exceed start time {}",
                self.t_end, self.t0
            )));
        }
        let mut prev = f64::NEG_INFINITY;
        for &s in &self.snapshot_times {
            if !(s >= self.t0 && s <= self.t_end) {
                return Err(DdfError::InvalidTimes(format!(
                    "snapshot time {s} outside [{}, {}]",
                    self.t0, self.t_end
                )));
            }
            if s <= prev {
                return Err(DdfError::InvalidTimes(
                    "snapshot times must be strictly increasing".into(),
                ));
            }
            prev = s;
        }
        Ok(())
    }

    /// Times at which the loop must land exactly: snapshots after `t0`
    /// followed by `t_end`.
    pub(crate) fn landing_points(&self) -> Vec<f64> {
        let mut pts: Vec<f64> = self
            .snapshot_times
            .iter()
            .copied()
            .filter(|&s| s > self.t0)
            .collect();
        if pts.last() != Some(&self.t_end) {
            pts.push(self.t_end);
        }
        pts
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot1D {
    pub t: f64,
    pub state: State1D,
}

/// In-loop bookkeeping shared by the 1D and 2D drivers.
#[derive(Debug, Clone, PartialEq)]
pub struct RunStats {
    pub steps: usize,
    pub t_final: f64,
    pub mass_initial: f64,
    pub mass_final: f64,
    /// Momentum along x (1D: the only momentum).
    pub momentum_initial: f64,
    pub momentum_final: f64,
    /// Momentum along y (zero in 1D).
    pub momentum_y_initial: f64,
    pub momentum_y_final: f64,
    /// Mass and momenta that entered through the boundary (negative: left).
    pub boundary_mass: f64,
    pub boundary_momentum: f64,
    pub boundary_momentum_y: f64,
    pub min_density: f64,
    pub min_density_history: Vec<(f64, f64)>,
    /// Initial velocity range over non-vacuum cells, per component.
    pub velocity_range: Vec<(f64, f64)>,
    /// Largest distance of any non-vacuum velocity outside its initial
    /// range, per component.
    pub velocity_excursion: Vec<f64>,
    /// Largest `lambda * max_speed` used (2D: the combined ratio).
    pub max_courant: f64,
    /// Largest scaled entropy residual per checked entropy.
    pub entropy_max: Vec<(EntropyFunction, f64)>,
}

impl RunStats {
    pub(crate) fn new(mass: f64, mom: f64, mom_y: f64, min_density: f64, ranges: Vec<(f64, f64)>) -> Self {
        let n = ranges.len();
        Self {
            steps: 0,
            t_final: 0.0,
            mass_initial: mass,
            mass_final: mass,
            momentum_initial: mom,
            momentum_final: mom,
            momentum_y_initial: mom_y,
            momentum_y_final: mom_y,
            boundary_mass: 0.0,
            boundary_momentum: 0.0,
            boundary_momentum_y: 0.0,
            min_density,
            min_density_history: Vec::new(),
            velocity_range: ranges,
            velocity_excursion: vec![0.0; n],
            max_courant: 0.0,
            entropy_max: Vec::new(),
        }
    }

    /// `|final - initial - inflow| / max(sum |initial|, tiny)` for mass.
    pub fn mass_drift(&self, reference: f64) -> f64 {
        relative_drift(self.mass_final - self.mass_initial - self.boundary_mass, reference)
    }

    pub fn momentum_drift(&self, reference: f64) -> f64 {
        relative_drift(
            self.momentum_final - self.momentum_initial - self.boundary_momentum,
            reference,
        )
    }
}

pub(crate) fn relative_drift(diff: f64, reference: f64) -> f64 {
    if diff == 0.0 {
        0.0
    } else {
        diff.abs() / reference.abs().max(f64::MIN_POSITIVE)
    }
}

pub(crate) fn velocity_range(rho: &[f64], vel: &[f64], eps: f64) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for (&r, &v) in rho.iter().zip(vel) {
        if r > eps {
            lo = lo.min(v);
            hi = hi.max(v);
        }
    }
    if lo > hi {
        (0.0, 0.0)
    } else {
        (lo, hi)
    }
}

pub(crate) fn excursion(rho: &[f64], vel: &[f64], range: (f64, f64), eps: f64) -> f64 {
    rho.iter()
        .zip(vel)
        .filter(|(r, _)| **r > eps)
        .map(|(_, &v)| (v - range.1).max(range.0 - v).max(0.0))
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput1D {
    pub snapshots: Vec<Snapshot1D>,
    pub stats: RunStats,
}

/// Time loop: lands exactly on every snapshot time and on `t_end`.
pub fn run_1d(
    init: &State1D,
    model: &ModelSpec,
    grid: &Grid1D,
    config: &SchemeConfig,
    options: &RunOptions,
) -> Result<RunOutput1D> {
    model.validate()?;
    config.validate()?;
    options.validate()?;
    init.validate()?;
    if init.len() != grid.cells() {
        return Err(DdfError::LengthMismatch {
            left: grid.cells(),
            right: init.len(),
        });
    }
    let h = grid.h();
    let eps = config.vacuum_eps;
    let u0 = init.velocities(eps);
    let range = velocity_range(&init.rho, &u0, eps);
    let mut stats = RunStats::new(init.mass(h), init.momentum(h), 0.0, init.min_density(), vec![range]);
    stats.t_final = options.t0;
    stats.entropy_max = options.entropy.iter().map(|s| (*s, 0.0)).collect();
    let check_entropy = !options.entropy.is_empty() && config.order == Order::First;

    let mut snapshots = Vec::new();
    if options.snapshot_times.first() == Some(&options.t0) {
        snapshots.push(Snapshot1D {
            t: options.t0,
            state: init.clone(),
        });
    }
    let mut state = init.clone();
    let mut t = options.t0;
    for target in options.landing_points() {
        while t < target {
            let speed = max_speed(&state, model, t, eps);
            let dt = dt_from_speed(speed, h, config.cfl, target - t);
            let (next, inflow) = step(&state, model, t, dt, grid, config)?;
            if check_entropy {
                for (s, worst) in stats.entropy_max.iter_mut() {
                    let r = entropy_residual(&state, &next, model, t, dt, grid, s, config)?;
                    *worst = worst.max(r);
                }
            }
            stats.max_courant = stats.max_courant.max(dt / h * speed);
            stats.boundary_mass += inflow.rho;
            stats.boundary_momentum += inflow.w;
            stats.steps += 1;
            t = if dt >= target - t { target } else { t + dt };
            let md = next.min_density();
            stats.min_density = stats.min_density.min(md);
            if options.min_density_history {
                stats.min_density_history.push((t, md));
            }
            let u = next.velocities(eps);
            stats.velocity_excursion[0] =
                stats.velocity_excursion[0].max(excursion(&next.rho, &u, range, eps));
            state = next;
        }
        if options.snapshot_times.contains(&target) {
            snapshots.push(Snapshot1D {
                t: target,
                state: state.clone(),
            });
        }
    }
    stats.t_final = t;
    stats.mass_final = state.mass(h);
    stats.momentum_final = state.momentum(h);
    Ok(RunOutput1D { snapshots, stats })
}

//! Builds initial data from a config, runs it and measures the result.

use std::time::Instant;

use ddf_core::diagnostics::{delta_measure, primitive, Background, DeltaMeasure};
use ddf_core::exact::{
    cell_averages, cgd_delta_params, eoc, eoc_fit, l1_error, pgd_delta_params, pgd_vacuum_exact,
    RiemannData, CGD_LOCATIONS, CGD_WEIGHTS,
};
use ddf_core::scheme1d::RunStats;
use ddf_core::{
    run_1d, run_2d, Grid1D, Grid2D, ModelKind, ModelSpec, RunManifest, Snapshot1D, Snapshot2D,
    State1D, State2D,
};

use crate::config::{run_options, ExperimentConfig, InitSpec};
use crate::error::{CliError, CliResult};

/// Tolerance of the in-loop entropy check.
pub const ENTROPY_TOL: f64 = 1e-12;

#[derive(Debug, Clone)]
pub enum Output {
    OneD { grid: Grid1D, snapshots: Vec<Snapshot1D> },
    TwoD { grid: Grid2D, snapshots: Vec<Snapshot2D> },
}

#[derive(Debug, Clone)]
pub struct Report {
    pub manifest: RunManifest,
    pub output: Output,
    pub stats: RunStats,
    /// Enabled in-loop checks that did not hold.
    pub failures: Vec<String>,
    pub wall_clock: f64,
}

pub fn grid_1d(cfg: &ExperimentConfig) -> CliResult<Grid1D> {
    let a = cfg.grid.x;
    Ok(Grid1D::new(a.min, a.max, a.cells)?)
}

pub fn grid_2d(cfg: &ExperimentConfig) -> CliResult<Grid2D> {
    let (a, b) = match cfg.grid.y {
        Some(b) => (cfg.grid.x, b),
        None => return Err(CliError::Config("experiment is not 2D".into())),
    };
    Ok(Grid2D::from_extents(a.min, a.max, a.cells, b.min, b.max, b.cells)?)
}

pub fn initial_1d(cfg: &ExperimentConfig, grid: &Grid1D) -> CliResult<State1D> {
    let xs = grid.centers();
    let (rho, u): (Vec<f64>, Vec<f64>) = match &cfg.init {
        InitSpec::Riemann {
            x0,
            rho_l,
            u_l,
            rho_r,
            u_r,
        } => xs
            .iter()
            .map(|&x| if x < *x0 { (*rho_l, *u_l) } else { (*rho_r, *u_r) })
            .unzip(),
        InitSpec::Regions {
            background,
            regions,
        } => xs
            .iter()
            .map(|&x| {
                let mut cell = (background.rho, background.u);
                for r in regions.iter().filter(|r| r.contains(x, 0.0)) {
                    cell = (r.value.rho, r.value.u + r.slope * x);
                }
                cell
            })
            .unzip(),
        InitSpec::Radial { .. } => {
            return Err(CliError::Config("radial init needs a 2D grid".into()))
        }
    };
    Ok(State1D::from_primitive(&rho, &u)?)
}

pub fn initial_2d(cfg: &ExperimentConfig, grid: &Grid2D) -> CliResult<State2D> {
    let xs = grid.x.centers();
    let ys = grid.y.centers();
    let n = grid.len();
    let (mut rho, mut u, mut v) = (vec![0.0; n], vec![0.0; n], vec![0.0; n]);
    for (j, &y) in ys.iter().enumerate() {
        for (i, &x) in xs.iter().enumerate() {
            let k = grid.index(i, j);
            let (r, a, b) = match &cfg.init {
                InitSpec::Regions {
                    background,
                    regions,
                } => {
                    let mut cell = (background.rho, background.u, background.v);
                    for reg in regions.iter().filter(|reg| reg.contains(x, y)) {
                        cell = (reg.value.rho, reg.value.u, reg.value.v);
                    }
                    cell
                }
                InitSpec::Radial { rho, radial_u } => {
                    let r = x.hypot(y);
                    if r == 0.0 {
                        (*rho, 0.0, 0.0)
                    } else {
                        (*rho, radial_u * x / r, radial_u * y / r)
                    }
                }
                InitSpec::Riemann { .. } => {
                    return Err(CliError::Config("riemann init is 1D only".into()))
                }
            };
            rho[k] = r;
            u[k] = a;
            v[k] = b;
        }
    }
    Ok(State2D::from_primitive(grid, &rho, &u, &v)?)
}

/// Riemann data split at the origin, if the config has them.
pub fn riemann_data(cfg: &ExperimentConfig) -> Option<RiemannData> {
    match cfg.init {
        InitSpec::Riemann {
            x0,
            rho_l,
            u_l,
            rho_r,
            u_r,
        } if x0 == 0.0 && cfg.run.t0 == 0.0 => RiemannData::new(rho_l, u_l, rho_r, u_r).ok(),
        _ => None,
    }
}

/// A measured delta shock next to its closed-form references.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaReport {
    pub measure: DeltaMeasure,
    /// Exact path position, when known.
    pub reference_location: Option<f64>,
    /// Mass gained at the exact growth rate.
    pub rate_weight: Option<f64>,
    /// `v_delta t`, the shock speed times elapsed time.
    pub velocity_weight: Option<f64>,
    /// Total mass in the measurement window, background included.
    pub primitive_jump: f64,
    /// `(g(u_r) t, g(u_l) t)` for the power-law velocity map.
    pub bounds: Option<(f64, f64)>,
}

/// Measures the delta of a Riemann run at time `t` (started at 0).
pub fn measure_delta(
    model: &ModelSpec,
    data: &RiemannData,
    grid: &Grid1D,
    rho: &[f64],
    t: f64,
) -> Option<DeltaReport> {
    let split = |position: f64| Background::TwoState {
        position,
        left: data.rho_l,
        right: data.rho_r,
    };
    let (measure, reference_location, rate_weight, velocity_weight, bounds) = match model.kind {
        ModelKind::Pgd | ModelKind::Pgds => {
            let p = pgd_delta_params(data, model.beta).ok()?;
            let x = p.path(t)?;
            let m = delta_measure(rho, grid, &split(x))?;
            (m, Some(x), Some(p.weight(t)), p.v_delta.map(|v| v * t), None)
        }
        ModelKind::Gpgd | ModelKind::Cgd => {
            let first = delta_measure(rho, grid, &Background::Uniform(data.rho_r))?;
            let m = delta_measure(rho, grid, &split(first.location))?;
            if model.kind == ModelKind::Cgd {
                let p = cgd_delta_params(data, model.s, model.alpha).ok();
                (m, None, p.map(|p| p.weight(t)), None, None)
            } else {
                let b = (model.g(data.u_r) * t, model.g(data.u_l) * t);
                (m, None, None, None, Some(b))
            }
        }
    };
    let lo = measure.index.saturating_sub(measure.window);
    let hi = (measure.index + measure.window).min(rho.len() - 1);
    let prim = primitive(rho, grid);
    let primitive_jump = prim[hi] - if lo == 0 { 0.0 } else { prim[lo - 1] };
    Some(DeltaReport {
        measure,
        reference_location,
        rate_weight,
        velocity_weight,
        primitive_jump,
        bounds,
    })
}

/// L1 distance of the density to the exact vacuum profile at `t`.
pub fn vacuum_error(model: &ModelSpec, data: &RiemannData, grid: &Grid1D, rho: &[f64], t: f64) -> Option<f64> {
    if !matches!(model.kind, ModelKind::Pgd | ModelKind::Pgds) {
        return None;
    }
    let ex = pgd_vacuum_exact(data, model.beta, t).ok()?;
    l1_error(rho, &cell_averages(grid, |a, b| ex.cell_average(a, b)), grid.h()).ok()
}

fn is_cgd_reference(model: &ModelSpec, d: &RiemannData) -> bool {
    model.kind == ModelKind::Cgd
        && model.s == 5.0
        && model.alpha == 0.5
        && (d.rho_l, d.u_l, d.rho_r, d.u_r) == (3.0, 4.0, 1.0, -4.0)
}

fn record_stats(man: &mut RunManifest, stats: &RunStats, momentum_ref: f64) {
    man.insert("stats.steps", stats.steps);
    man.insert("stats.t_final", stats.t_final);
    man.insert("stats.mass_initial", stats.mass_initial);
    man.insert("stats.mass_final", stats.mass_final);
    man.insert("stats.mass_drift", stats.mass_drift(stats.mass_initial));
    man.insert("stats.momentum_initial", stats.momentum_initial);
    man.insert("stats.momentum_final", stats.momentum_final);
    man.insert("stats.momentum_drift", stats.momentum_drift(momentum_ref));
    man.insert("stats.boundary_mass", stats.boundary_mass);
    man.insert("stats.boundary_momentum", stats.boundary_momentum);
    man.insert("stats.min_density", stats.min_density);
    man.insert("stats.max_courant", stats.max_courant);
    for (c, name) in stats.velocity_excursion.iter().zip(["u", "v"]) {
        man.insert(format!("stats.velocity_excursion_{name}"), *c);
    }
}

fn record_config(man: &mut RunManifest, cfg: &ExperimentConfig) {
    man.insert("experiment", cfg.name.as_str());
    man.insert("solver.version", env!("CARGO_PKG_VERSION"));
    man.record_scheme(&cfg.model, &cfg.scheme);
    man.insert("grid.xmin", cfg.grid.x.min);
    man.insert("grid.xmax", cfg.grid.x.max);
    man.insert("grid.m", cfg.grid.x.cells);
    if let Some(y) = cfg.grid.y {
        man.insert("grid.ymin", y.min);
        man.insert("grid.ymax", y.max);
        man.insert("grid.my", y.cells);
    }
    man.insert("run.t0", cfg.run.t0);
    man.insert("run.T", cfg.run.t_end);
    man.insert(
        "init.type",
        match cfg.init {
            InitSpec::Riemann { .. } => "riemann",
            InitSpec::Regions { .. } => "regions",
            InitSpec::Radial { .. } => "radial",
        },
    );
    man.insert("scheme.entropy_check", cfg.entropy_check);
}

fn argmax(rho: &[f64]) -> usize {
    let mut best = 0;
    for (i, r) in rho.iter().enumerate() {
        if *r > rho[best] {
            best = i;
        }
    }
    best
}

fn min_max(v: &[f64]) -> (f64, f64) {
    v.iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| (a.min(x), b.max(x)))
}

pub fn execute(cfg: &ExperimentConfig) -> CliResult<Report> {
    if cfg.grid.is_2d() {
        execute_2d(cfg)
    } else {
        execute_1d(cfg)
    }
}

fn execute_1d(cfg: &ExperimentConfig) -> CliResult<Report> {
    let grid = grid_1d(cfg)?;
    let init = initial_1d(cfg, &grid)?;
    let entropy = if cfg.entropy_check {
        cfg.entropy.clone()
    } else {
        Vec::new()
    };
    let clock = Instant::now();
    let out = run_1d(&init, &cfg.model, &grid, &cfg.scheme, &run_options(&cfg.run, entropy))?;
    let wall_clock = clock.elapsed().as_secs_f64();

    let mut man = RunManifest::new();
    record_config(&mut man, cfg);
    let h = grid.h();
    let momentum_ref = h * init.w.iter().map(|w| w.abs()).sum::<f64>();
    record_stats(&mut man, &out.stats, momentum_ref);

    let mut failures = Vec::new();
    for (s, worst) in &out.stats.entropy_max {
        let key = format!("entropy.{}", s.label());
        man.insert(format!("{key}.max_residual"), *worst);
        man.insert(format!("{key}.pass"), *worst <= ENTROPY_TOL);
        if *worst > ENTROPY_TOL {
            failures.push(format!("entropy {} residual {worst:e} exceeds {ENTROPY_TOL:e}", s.label()));
        }
    }

    let data = riemann_data(cfg);
    for (k, snap) in out.snapshots.iter().enumerate() {
        let key = format!("snapshot.{k}");
        let rho = &snap.state.rho;
        let (lo, hi) = min_max(rho);
        man.insert(format!("{key}.t"), snap.t);
        man.insert(format!("{key}.min_density"), lo);
        man.insert(format!("{key}.max_density"), hi);
        man.insert(format!("{key}.argmax_x"), grid.cell_center(argmax(rho)));
        man.insert(format!("{key}.mass"), snap.state.mass(h));
        let Some(d) = data else { continue };
        if snap.t <= 0.0 {
            continue;
        }
        if d.u_l > d.u_r {
            let Some(r) = measure_delta(&cfg.model, &d, &grid, rho, snap.t) else {
                continue;
            };
            let key = format!("delta.{k}");
            man.insert(format!("{key}.t"), snap.t);
            man.insert(format!("{key}.location"), r.measure.location);
            man.insert(format!("{key}.weight"), r.measure.weight);
            man.insert(format!("{key}.peak"), r.measure.peak);
            man.insert(format!("{key}.primitive_jump"), r.primitive_jump);
            if let Some(x) = r.reference_location {
                man.insert(format!("{key}.reference_location"), x);
                man.insert(format!("{key}.location_error"), (r.measure.location - x).abs());
            }
            if let Some(w) = r.rate_weight {
                man.insert(format!("{key}.weight_rate_based"), w);
            }
            if let Some(w) = r.velocity_weight {
                man.insert(format!("{key}.weight_velocity_times_t"), w);
            }
            if let Some((a, b)) = r.bounds {
                man.insert(format!("{key}.lower_bound"), a);
                man.insert(format!("{key}.upper_bound"), b);
            }
            if is_cgd_reference(&cfg.model, &d) {
                for (loc, (t, w)) in CGD_LOCATIONS.iter().zip(CGD_WEIGHTS) {
                    if (loc.t - snap.t).abs() < 1e-12 && (t - snap.t).abs() < 1e-12 {
                        man.insert(format!("{key}.reference_observed_location"), loc.observed);
                        man.insert(format!("{key}.reference_exact_location"), loc.reference_exact);
                        man.insert(format!("{key}.reference_weight"), w);
                    }
                }
            }
        } else if d.u_l < d.u_r {
            if let Some(e) = vacuum_error(&cfg.model, &d, &grid, rho, snap.t) {
                man.insert(format!("vacuum.{k}.l1_error"), e);
            }
        }
    }
    man.insert("checks.passed", failures.is_empty());
    Ok(Report {
        manifest: man,
        output: Output::OneD {
            grid,
            snapshots: out.snapshots,
        },
        stats: out.stats,
        failures,
        wall_clock,
    })
}

fn execute_2d(cfg: &ExperimentConfig) -> CliResult<Report> {
    let grid = grid_2d(cfg)?;
    let init = initial_2d(cfg, &grid)?;
    let clock = Instant::now();
    let out = run_2d(&init, &cfg.model, &grid, &cfg.scheme, &run_options(&cfg.run, Vec::new()))?;
    let wall_clock = clock.elapsed().as_secs_f64();

    let mut man = RunManifest::new();
    record_config(&mut man, cfg);
    let area = grid.cell_area();
    let momentum_ref = area * init.wx.iter().map(|w| w.abs()).sum::<f64>();
    record_stats(&mut man, &out.stats, momentum_ref);
    man.insert("stats.momentum_y_initial", out.stats.momentum_y_initial);
    man.insert("stats.momentum_y_final", out.stats.momentum_y_final);
    man.insert("stats.boundary_momentum_y", out.stats.boundary_momentum_y);

    for (k, snap) in out.snapshots.iter().enumerate() {
        let key = format!("snapshot.{k}");
        let rho = &snap.state.rho;
        let (lo, hi) = min_max(rho);
        let top = argmax(rho);
        man.insert(format!("{key}.t"), snap.t);
        man.insert(format!("{key}.min_density"), lo);
        man.insert(format!("{key}.max_density"), hi);
        man.insert(format!("{key}.argmax_x"), grid.x.cell_center(top % grid.mx()));
        man.insert(format!("{key}.argmax_y"), grid.y.cell_center(top / grid.mx()));
        man.insert(format!("{key}.mass"), area * rho.iter().sum::<f64>());
        let wy = snap.state.wy.iter().fold(0.0f64, |a, w| a.max(w.abs()));
        man.insert(format!("{key}.max_abs_wy"), wy);
    }
    man.insert("checks.passed", true);
    Ok(Report {
        manifest: man,
        output: Output::TwoD {
            grid,
            snapshots: out.snapshots,
        },
        stats: out.stats,
        failures: Vec::new(),
        wall_clock,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub cells: usize,
    pub h: f64,
    pub l1: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceTable {
    pub rows: Vec<ConvergenceRow>,
    /// Successive orders between neighbouring rows.
    pub eoc: Vec<f64>,
    /// Least-squares slope of log L1 against log h.
    pub eoc_fit: f64,
    pub min_density: Vec<f64>,
}

/// Runs `cfg` on `m, 2m, .., 2^(k-1) m` cells against its exact density.
pub fn convergence(cfg: &ExperimentConfig, refinements: usize) -> CliResult<ConvergenceTable> {
    if refinements < 2 {
        return Err(CliError::Config("convergence needs at least 2 refinements".into()));
    }
    if cfg.grid.is_2d() {
        return Err(CliError::Config("convergence is available for 1D runs only".into()));
    }
    let data = riemann_data(cfg)
        .filter(|d| d.u_l < d.u_r && matches!(cfg.model.kind, ModelKind::Pgd | ModelKind::Pgds))
        .ok_or_else(|| {
            CliError::Config(format!(
                "`{}` has no exact density profile; convergence needs pgd or pgds vacuum \
                 Riemann data split at x = 0 and started at t = 0",
                cfg.name
            ))
        })?;
    let mut rows = Vec::new();
    let mut min_density = Vec::new();
    for level in 0..refinements {
        let mut c = cfg.clone();
        c.grid.x.cells = cfg.grid.x.cells << level;
        c.run.snapshots = vec![c.run.t_end];
        let grid = grid_1d(&c)?;
        let init = initial_1d(&c, &grid)?;
        let out = run_1d(&init, &c.model, &grid, &c.scheme, &run_options(&c.run, Vec::new()))?;
        let last = out
            .snapshots
            .last()
            .ok_or(CliError::Config("run produced no final snapshot".into()))?;
        let l1 = vacuum_error(&c.model, &data, &grid, &last.state.rho, c.run.t_end)
            .ok_or_else(|| CliError::Config("exact profile unavailable".into()))?;
        rows.push(ConvergenceRow {
            cells: grid.cells(),
            h: grid.h(),
            l1,
        });
        min_density.push(out.stats.min_density);
    }
    let errors: Vec<f64> = rows.iter().map(|r| r.l1).collect();
    let hs: Vec<f64> = rows.iter().map(|r| r.h).collect();
    Ok(ConvergenceTable {
        eoc: eoc(&errors, &hs)?,
        eoc_fit: eoc_fit(&errors, &hs)?,
        rows,
        min_density,
    })
}

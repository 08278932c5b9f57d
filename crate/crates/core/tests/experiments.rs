//! Whole runs on the one-dimensional benchmark data.

use ddf_core::{
    run_1d, EntropyFunction, Grid1D, Limiter, ModelSpec, RunOptions, RunOutput1D, SchemeConfig,
    State1D,
};

fn riemann(grid: &Grid1D, l: (f64, f64), r: (f64, f64)) -> State1D {
    let (rho, u): (Vec<f64>, Vec<f64>) = (0..grid.cells())
        .map(|i| if grid.cell_center(i) < 0.0 { l } else { r })
        .unzip();
    State1D::from_primitive(&rho, &u).unwrap()
}

fn mixed(grid: &Grid1D) -> State1D {
    let u: Vec<f64> = grid
        .centers()
        .into_iter()
        .map(|x| match x {
            x if x < -0.5 => -0.5,
            x if x < 0.0 => 0.4,
            x if x < 0.5 => 0.4 - x,
            _ => -0.4,
        })
        .collect();
    State1D::from_primitive(&vec![0.5; grid.cells()], &u).unwrap()
}

fn entropies() -> Vec<EntropyFunction> {
    ["u2", "abs", "abs(0.5)", "abs(-0.5)"]
        .iter()
        .map(|s| EntropyFunction::parse(s).unwrap())
        .collect()
}

fn run(init: &State1D, model: &ModelSpec, grid: &Grid1D, cfg: &SchemeConfig, t: f64, entropy: bool) -> RunOutput1D {
    let mut opts = RunOptions::until(t);
    if entropy {
        opts.entropy = entropies();
    }
    run_1d(init, model, grid, cfg, &opts).unwrap()
}

fn exp1() -> (Grid1D, State1D) {
    let g = Grid1D::new(-0.5, 0.5, 40).unwrap();
    let s = riemann(&g, (1.0, 1.0), (0.25, 0.0));
    (g, s)
}

#[test]
fn mixed_data_satisfy_cellwise_entropy_inequality() {
    let g = Grid1D::new(-1.0, 1.0, 80).unwrap();
    let out = run(&mixed(&g), &ModelSpec::pgd(), &g, &SchemeConfig::first_order(), 0.4998, true);
    assert_eq!(out.stats.entropy_max.len(), 4);
    for (s, worst) in &out.stats.entropy_max {
        assert!(*worst <= 1e-12, "{} {worst}", s.label());
    }
}

#[test]
fn vacuum_data_satisfy_cellwise_entropy_inequality() {
    let g = Grid1D::new(-0.5, 0.5, 200).unwrap();
    let init = riemann(&g, (0.5, -0.5), (0.5, 0.4));
    for model in [ModelSpec::pgd(), ModelSpec::gpgd(3).unwrap()] {
        let out = run(&init, &model, &g, &SchemeConfig::first_order(), 0.5, true);
        for (s, worst) in &out.stats.entropy_max {
            assert!(*worst <= 1e-12, "{} {worst}", s.label());
        }
    }
}

#[test]
fn vacuum_and_mixed_data_keep_velocity_bounds() {
    let cases = [
        SchemeConfig::first_order(),
        SchemeConfig::first_order().with_cfl(1.0),
        SchemeConfig::second_order(Limiter::Minmod),
        SchemeConfig::second_order(Limiter::Superbee),
    ];
    let gv = Grid1D::new(-0.5, 0.5, 200).unwrap();
    let gm = Grid1D::new(-1.0, 1.0, 80).unwrap();
    let vacuum = riemann(&gv, (0.5, -0.5), (0.5, 0.4));
    for cfg in cases {
        let a = run(&vacuum, &ModelSpec::pgd(), &gv, &cfg, 0.5, false);
        let b = run(&mixed(&gm), &ModelSpec::pgd(), &gm, &cfg, 0.4998, false);
        for out in [a, b] {
            assert!(out.stats.min_density >= 0.0);
            assert!(out.stats.velocity_excursion[0] <= 1e-12, "{cfg:?} {}", out.stats.velocity_excursion[0]);
        }
    }
}

#[test]
fn delta_shock_keeps_velocity_bounds_at_quarter_cfl() {
    let (g, s) = exp1();
    let out = run(&s, &ModelSpec::pgd(), &g, &SchemeConfig::first_order().with_cfl(0.25), 0.4998, false);
    assert!(out.stats.velocity_excursion[0] <= 1e-12);
    let out = run(&s, &ModelSpec::pgd(), &g, &SchemeConfig::second_order(Limiter::Superbee), 0.4998, false);
    assert!(out.stats.velocity_excursion[0] <= 1e-12);
}

#[test]
fn audits_close_with_boundary_inflow() {
    let (g, s) = exp1();
    let g6 = Grid1D::new(-2.0, 2.0, 1000).unwrap();
    let s6 = riemann(&g6, (3.0, 4.0), (1.0, -4.0));
    let runs = [
        run(&s, &ModelSpec::pgd(), &g, &SchemeConfig::first_order(), 0.4998, false),
        run(&s, &ModelSpec::gpgd(3).unwrap(), &g, &SchemeConfig::first_order(), 0.4988, false),
        run(&s, &ModelSpec::pgd(), &g, &SchemeConfig::second_order(Limiter::Minmod), 0.4998, false),
        run(&s6, &ModelSpec::cgd(5.0, 0.5).unwrap(), &g6, &SchemeConfig::first_order(), 0.1996, false),
    ];
    for out in runs {
        let st = &out.stats;
        assert!(st.mass_drift(st.mass_initial) <= 1e-12, "{}", st.mass_drift(st.mass_initial));
        let p = st.momentum_initial.abs().max(st.mass_initial);
        assert!(st.momentum_drift(p) <= 1e-12, "{}", st.momentum_drift(p));
    }
}

#[test]
fn resting_data_stay_put() {
    let g = Grid1D::new(0.0, 1.0, 16).unwrap();
    let rho: Vec<f64> = (0..16).map(|i| (i % 3) as f64).collect();
    let s = State1D::from_primitive(&rho, &[0.0; 16]).unwrap();
    let out = run(&s, &ModelSpec::pgd(), &g, &SchemeConfig::second_order(Limiter::Superbee), 1.0, false);
    assert_eq!(out.snapshots.last().unwrap().state, s);
}

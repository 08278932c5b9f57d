//! Named experiments.

use ddf_core::{FrictionFlux, Limiter, ModelSpec, SchemeConfig};

use crate::config::{
    default_entropies, Axis, ExperimentConfig, GridSpec, InitSpec, Primitive, Region, RunSpec,
};

pub const NAMES: [&str; 11] = [
    "exp1", "exp2", "exp2v", "exp3", "exp4", "exp5", "exp5v", "exp6", "exp2d1", "exp2d2", "exp2d3",
];

pub fn describe(name: &str) -> Option<&'static str> {
    Some(match name {
        "exp1" => "PGD moving delta shock, (rho, u) = (1, 1) | (0.25, 0)",
        "exp2" => "PGD mixed data: shock, vacuum and a linear velocity ramp",
        "exp2v" => "PGD vacuum, (rho, u) = (0.5, -0.5) | (0.5, 0.4)",
        "exp3" => "PGD collision of two dust clouds, t = -1 .. 6",
        "exp4" => "GPGD with g(u) = u^3, exp1 data",
        "exp5" => "PGDS (beta = 0.5) delta shock, (1, 1) | (0.25, -1)",
        "exp5v" => "PGDS (beta = 0.5) vacuum, (1, -2) | (1, 1)",
        "exp6" => "CGD (s = 5, alpha = 0.5) delta shock, (3, 4) | (1, -4)",
        "exp2d1" => "2D four-quadrant vacuum",
        "exp2d2" => "2D radial inflow towards the origin",
        "exp2d3" => "2D cloud collision with v = 0",
        _ => return None,
    })
}

fn axis(min: f64, max: f64, cells: usize) -> Axis {
    Axis { min, max, cells }
}

fn riemann(rho_l: f64, u_l: f64, rho_r: f64, u_r: f64) -> InitSpec {
    InitSpec::Riemann {
        x0: 0.0,
        rho_l,
        u_l,
        rho_r,
        u_r,
    }
}

fn p(rho: f64, u: f64, v: f64) -> Primitive {
    Primitive { rho, u, v }
}

fn strip(x0: f64, x1: f64, rho: f64, u: f64, slope: f64) -> Region {
    Region {
        x: (x0, x1),
        y: None,
        value: p(rho, u, 0.0),
        slope,
    }
}

fn rect(x: (f64, f64), y: (f64, f64), value: Primitive) -> Region {
    Region {
        x,
        y: Some(y),
        value,
        slope: 0.0,
    }
}

fn base(name: &str, model: ModelSpec, x: Axis, init: InitSpec, t_end: f64) -> ExperimentConfig {
    ExperimentConfig {
        name: name.to_string(),
        model,
        grid: GridSpec { x, y: None },
        scheme: SchemeConfig::first_order(),
        entropy_check: false,
        entropy: default_entropies(),
        init,
        run: RunSpec {
            t0: 0.0,
            t_end,
            snapshots: vec![t_end],
            outdir: None,
            emit_svg: false,
        },
    }
}

fn planar(name: &str, m: usize, init: InitSpec, t_end: f64) -> ExperimentConfig {
    let mut c = base(name, ModelSpec::pgd(), axis(-0.5, 0.5, m), init, t_end);
    c.grid.y = Some(axis(-0.5, 0.5, m));
    c.scheme = SchemeConfig::second_order(Limiter::Superbee);
    c
}

pub fn get(name: &str) -> Option<ExperimentConfig> {
    let pgd = ModelSpec::pgd();
    let pgds = ModelSpec::pgds(0.5).expect("valid");
    Some(match name {
        "exp1" => base(name, pgd, axis(-0.5, 0.5, 40), riemann(1.0, 1.0, 0.25, 0.0), 0.4998),
        "exp2" => base(
            name,
            pgd,
            axis(-1.0, 1.0, 80),
            InitSpec::Regions {
                background: p(0.5, 0.0, 0.0),
                regions: vec![
                    strip(-1.0, -0.5, 0.5, -0.5, 0.0),
                    strip(-0.5, 0.0, 0.5, 0.4, 0.0),
                    strip(0.0, 0.5, 0.5, 0.4, -1.0),
                    strip(0.5, 1.0, 0.5, -0.4, 0.0),
                ],
            },
            0.4998,
        ),
        "exp2v" => base(name, pgd, axis(-0.5, 0.5, 200), riemann(0.5, -0.5, 0.5, 0.4), 0.5),
        "exp3" => {
            let mut c = base(
                name,
                pgd,
                axis(-2.5, 5.5, 800),
                InitSpec::Regions {
                    background: p(0.0, 0.0, 0.0),
                    regions: vec![strip(-2.0, -1.0, 2.0, 1.0, 0.0), strip(1.0, 5.0, 1.0, -1.0, 0.0)],
                },
                6.0,
            );
            c.run.t0 = -1.0;
            c.run.snapshots = vec![-1.0, -0.5, 0.5, 1.5, 3.5, 6.0];
            c
        }
        "exp4" => base(
            name,
            ModelSpec::gpgd(3).expect("valid"),
            axis(-0.5, 0.5, 40),
            riemann(1.0, 1.0, 0.25, 0.0),
            0.4988,
        ),
        "exp5" | "exp5v" => {
            let data = if name == "exp5" {
                riemann(1.0, 1.0, 0.25, -1.0)
            } else {
                riemann(1.0, -2.0, 1.0, 1.0)
            };
            let mut c = base(name, pgds, axis(-1.2, 1.2, 500), data, 0.4983);
            // The literal w^2/rho flux stalls the vacuum run; see pgds_full_flux.
            c.scheme = c.scheme.with_friction_flux(FrictionFlux::Full);
            c
        }
        "exp6" => {
            let mut c = base(
                name,
                ModelSpec::cgd(5.0, 0.5).expect("valid"),
                axis(-2.0, 2.0, 1000),
                riemann(3.0, 4.0, 1.0, -4.0),
                0.1996,
            );
            c.run.snapshots = vec![0.05, 0.1996];
            c
        }
        "exp2d1" => planar(
            name,
            100,
            InitSpec::Regions {
                background: p(0.5, 0.0, 0.0),
                regions: vec![
                    rect((0.0, 0.5), (0.0, 0.5), p(0.5, 0.3, 0.4)),
                    rect((-0.5, 0.0), (0.0, 0.5), p(0.5, -0.4, 0.3)),
                    rect((-0.5, 0.0), (-0.5, 0.0), p(0.5, -0.3, -0.4)),
                    rect((0.0, 0.5), (-0.5, 0.0), p(0.5, 0.4, -0.3)),
                ],
            },
            0.1,
        ),
        "exp2d2" => planar(
            name,
            201,
            InitSpec::Radial {
                rho: 0.01,
                radial_u: -0.1,
            },
            0.5,
        ),
        "exp2d3" => {
            let mut c = planar(
                name,
                200,
                InitSpec::Regions {
                    background: p(0.1, 0.0, 0.0),
                    regions: vec![
                        rect((-0.3, -0.2), (-0.15, 0.05), p(1.0, 0.5, 0.0)),
                        rect((0.2, 0.3), (0.05, 0.15), p(1.0, -0.5, 0.0)),
                    ],
                },
                0.8,
            );
            c.run.snapshots = vec![0.2, 0.52, 0.8];
            c
        }
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use ddf_core::config::DEFAULT_VACUUM_EPS;

    #[test]
    fn registry_is_complete() {
        for name in NAMES {
            let c = get(name).unwrap();
            assert_eq!(c.name, name);
            assert!(describe(name).is_some());
            assert_eq!(c.scheme.vacuum_eps, DEFAULT_VACUUM_EPS);
        }
        assert!(get("exp7").is_none());
    }

    #[test]
    fn exp1_matches_reference_setup() {
        let c = get("exp1").unwrap();
        assert_eq!(c.grid.x.min, -0.5);
        assert_eq!(c.grid.x.max, 0.5);
        assert!(((c.grid.x.max - c.grid.x.min) / c.grid.x.cells as f64 - 0.025).abs() < 1e-15);
        assert_eq!(c.scheme.cfl, 0.5);
        assert_eq!(c.run.t_end, 0.4998);
    }
}

//! Experiment configuration in a line-oriented `key = value` format.
//!
//! ```text
//! preset = exp1          # optional, must come first
//! [model]
//! kind = pgd
//! [grid]
//! xmin = -0.5
//! xmax = 0.5
//! m = 40
//! [scheme]
//! order = 1
//! cfl = 0.5
//! [init]
//! type = riemann
//! rho_l = 1
//! u_l = 1
//! rho_r = 0.25
//! u_r = 0
//! [run]
//! T = 0.4998
//! ```

use std::fmt::Write as _;
use std::path::PathBuf;

use ddf_core::config::{DEFAULT_VACUUM_EPS, SECOND_ORDER_MAX_CFL};
use ddf_core::{EntropyFunction, FrictionFlux, Limiter, ModelKind, ModelSpec, Order, SchemeConfig};

use crate::error::{CliError, CliResult};
use crate::presets;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub cells: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub x: Axis,
    /// Present for 2D runs.
    pub y: Option<Axis>,
}

impl GridSpec {
    pub fn is_2d(&self) -> bool {
        self.y.is_some()
    }
}

/// Primitive values `(rho, u, v)` of a region or the background.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Primitive {
    pub rho: f64,
    pub u: f64,
    pub v: f64,
}

/// A box of constant data; cells whose center lies in `[x0, x1) x [y0, y1)`
/// take it. Later regions win. In 1D, `slope` adds `slope * x` to `u`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Region {
    pub x: (f64, f64),
    pub y: Option<(f64, f64)>,
    pub value: Primitive,
    pub slope: f64,
}

impl Region {
    pub fn contains(&self, x: f64, y: f64) -> bool {
        let in_x = x >= self.x.0 && x < self.x.1;
        in_x && self.y.is_none_or(|(y0, y1)| y >= y0 && y < y1)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum InitSpec {
    /// Two states split at `x0`.
    Riemann {
        x0: f64,
        rho_l: f64,
        u_l: f64,
        rho_r: f64,
        u_r: f64,
    },
    Regions {
        background: Primitive,
        regions: Vec<Region>,
    },
    /// 2D uniform density with velocity `radial_u` along the polar
    /// direction (negative: towards the origin).
    Radial { rho: f64, radial_u: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunSpec {
    pub t0: f64,
    pub t_end: f64,
    pub snapshots: Vec<f64>,
    pub outdir: Option<PathBuf>,
    pub emit_svg: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub name: String,
    pub model: ModelSpec,
    pub grid: GridSpec,
    pub scheme: SchemeConfig,
    pub entropy_check: bool,
    pub entropy: Vec<EntropyFunction>,
    pub init: InitSpec,
    pub run: RunSpec,
}

pub const DEFAULT_ENTROPIES: &str = "u2, abs, abs(0.5)";

pub fn default_entropies() -> Vec<EntropyFunction> {
    parse_entropy_list(DEFAULT_ENTROPIES).expect("default entropy list parses")
}

fn parse_entropy_list(s: &str) -> Option<Vec<EntropyFunction>> {
    split_list(s).map(EntropyFunction::parse).collect()
}

/// Splits on commas that are not inside parentheses.
fn split_list(s: &str) -> impl Iterator<Item = &str> {
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0i32, 0usize);
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts.into_iter().map(str::trim).filter(|p| !p.is_empty())
}

/// One `key = value` line after sectioning.
#[derive(Debug, Clone, PartialEq)]
pub struct Setting {
    pub line: usize,
    pub section: Option<String>,
    pub key: String,
    pub value: String,
}

const SECTIONS: [&str; 5] = ["model", "grid", "scheme", "init", "run"];

pub fn tokenize(text: &str) -> CliResult<Vec<Setting>> {
    let mut out = Vec::new();
    let mut section: Option<String> = None;
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = content.strip_prefix('[') {
            let name = rest
                .strip_suffix(']')
                .ok_or_else(|| CliError::parse(line, "unterminated section header"))?
                .trim();
            if !SECTIONS.contains(&name) {
                return Err(CliError::parse(line, format!("unknown section [{name}]")));
            }
            section = Some(name.to_string());
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| CliError::parse(line, format!("expected `key = value`, got `{content}`")))?;
        let key = key.trim();
        if key.is_empty() {
            return Err(CliError::parse(line, "empty key"));
        }
        out.push(Setting {
            line,
            section: section.clone(),
            key: key.to_string(),
            value: value.trim().to_string(),
        });
    }
    Ok(out)
}

/// Parses `section.key=value` as given on the command line.
pub fn parse_override(s: &str) -> CliResult<Setting> {
    let bad = || CliError::Config(format!("override `{s}` is not of the form section.key=value"));
    let (path, value) = s.split_once('=').ok_or_else(bad)?;
    let path = path.trim();
    let (section, key) = match path.split_once('.') {
        Some((sec, key)) => {
            if !SECTIONS.contains(&sec) {
                return Err(CliError::Config(format!("override `{s}`: unknown section `{sec}`")));
            }
            (Some(sec.to_string()), key.to_string())
        }
        None if path == "name" => (None, path.to_string()),
        None => return Err(bad()),
    };
    Ok(Setting {
        line: 0,
        section,
        key,
        value: value.trim().to_string(),
    })
}

/// Partially specified configuration; every field may still be unset.
#[derive(Debug, Clone, Default)]
struct Draft {
    name: Option<String>,
    kind: Option<ModelKind>,
    g_power: Option<u32>,
    beta: Option<f64>,
    s: Option<f64>,
    alpha: Option<f64>,
    xmin: Option<f64>,
    xmax: Option<f64>,
    m: Option<usize>,
    ymin: Option<f64>,
    ymax: Option<f64>,
    my: Option<usize>,
    order: Option<Order>,
    limiter: Option<Limiter>,
    cfl: Option<f64>,
    vacuum_eps: Option<f64>,
    pgds_full_flux: Option<bool>,
    entropy_check: Option<bool>,
    entropy: Option<Vec<EntropyFunction>>,
    init_type: Option<String>,
    x0: Option<f64>,
    rho_l: Option<f64>,
    u_l: Option<f64>,
    rho_r: Option<f64>,
    u_r: Option<f64>,
    background: Option<Primitive>,
    regions: Vec<Region>,
    /// Set once a region line from the current source has been seen, so
    /// that a file's regions replace a preset's instead of extending them.
    regions_touched: bool,
    rho: Option<f64>,
    radial_u: Option<f64>,
    t0: Option<f64>,
    t_end: Option<f64>,
    snapshots: Option<Vec<f64>>,
    outdir: Option<PathBuf>,
    emit_svg: Option<bool>,
}

fn number(s: &Setting) -> CliResult<f64> {
    let v: f64 = s
        .value
        .parse()
        .map_err(|_| s.error(format!("`{}` is not a number", s.value)))?;
    if !v.is_finite() {
        return Err(s.error(format!("`{}` must be finite", s.key)));
    }
    Ok(v)
}

fn count(s: &Setting) -> CliResult<usize> {
    s.value
        .parse()
        .map_err(|_| s.error(format!("`{}` is not a non-negative integer", s.value)))
}

fn flag(s: &Setting) -> CliResult<bool> {
    match s.value.as_str() {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        v => Err(s.error(format!("`{v}` is not a boolean"))),
    }
}

fn numbers(s: &Setting) -> CliResult<Vec<f64>> {
    split_list(&s.value)
        .map(|p| {
            p.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| s.error(format!("`{p}` is not a finite number")))
        })
        .collect()
}

impl Setting {
    fn error(&self, msg: impl Into<String>) -> CliError {
        let msg = msg.into();
        if self.line == 0 {
            CliError::Config(format!("override {}: {msg}", self.path()))
        } else {
            CliError::parse(self.line, msg)
        }
    }

    fn path(&self) -> String {
        match &self.section {
            Some(sec) => format!("{sec}.{}", self.key),
            None => self.key.clone(),
        }
    }
}

impl Draft {
    fn apply(&mut self, s: &Setting) -> CliResult<()> {
        let sec = s.section.as_deref();
        match (sec, s.key.as_str()) {
            (None, "name") => self.name = Some(s.value.clone()),
            (None, "preset") => return Err(s.error("`preset` must be the first setting")),
            (Some("model"), "kind") => {
                self.kind = Some(
                    ModelKind::parse(&s.value)
                        .ok_or_else(|| s.error(format!("unknown model `{}`", s.value)))?,
                )
            }
            (Some("model"), "g_power") => {
                let p = count(s)?;
                self.g_power = Some(u32::try_from(p).map_err(|_| s.error("g_power too large"))?);
            }
            (Some("model"), "beta") => self.beta = Some(number(s)?),
            (Some("model"), "s") => self.s = Some(number(s)?),
            (Some("model"), "alpha") => self.alpha = Some(number(s)?),
            (Some("grid"), "xmin") => self.xmin = Some(number(s)?),
            (Some("grid"), "xmax") => self.xmax = Some(number(s)?),
            (Some("grid"), "m") => self.m = Some(count(s)?),
            (Some("grid"), "ymin") => self.ymin = Some(number(s)?),
            (Some("grid"), "ymax") => self.ymax = Some(number(s)?),
            (Some("grid"), "my") => self.my = Some(count(s)?),
            (Some("scheme"), "order") => {
                let n = count(s)?;
                self.order = Some(
                    u8::try_from(n)
                        .ok()
                        .and_then(Order::from_number)
                        .ok_or_else(|| s.error(format!("order must be 1 or 2, got {n}")))?,
                );
            }
            (Some("scheme"), "limiter") => {
                self.limiter = Some(
                    Limiter::parse(&s.value)
                        .ok_or_else(|| s.error(format!("unknown limiter `{}`", s.value)))?,
                )
            }
            (Some("scheme"), "cfl") => self.cfl = Some(number(s)?),
            (Some("scheme"), "vacuum_eps") => self.vacuum_eps = Some(number(s)?),
            (Some("scheme"), "pgds_full_flux") => self.pgds_full_flux = Some(flag(s)?),
            (Some("scheme"), "entropy_check") => self.entropy_check = Some(flag(s)?),
            (Some("scheme"), "entropy") => {
                self.entropy = Some(
                    parse_entropy_list(&s.value)
                        .ok_or_else(|| s.error(format!("bad entropy list `{}`", s.value)))?,
                )
            }
            (Some("init"), "type") => {
                let t = s.value.to_ascii_lowercase();
                if !matches!(t.as_str(), "riemann" | "regions" | "radial") {
                    return Err(s.error(format!("unknown init type `{}`", s.value)));
                }
                if self.init_type.as_deref() != Some(t.as_str()) {
                    self.clear_init();
                }
                self.init_type = Some(t);
            }
            (Some("init"), "x0") => self.x0 = Some(number(s)?),
            (Some("init"), "rho_l") => self.rho_l = Some(number(s)?),
            (Some("init"), "u_l") => self.u_l = Some(number(s)?),
            (Some("init"), "rho_r") => self.rho_r = Some(number(s)?),
            (Some("init"), "u_r") => self.u_r = Some(number(s)?),
            (Some("init"), "rho") => self.rho = Some(number(s)?),
            (Some("init"), "radial_u") => self.radial_u = Some(number(s)?),
            (Some("init"), "background") => {
                let v = numbers(s)?;
                self.background = Some(match v[..] {
                    [rho, u] => Primitive { rho, u, v: 0.0 },
                    [rho, u, v] => Primitive { rho, u, v },
                    _ => return Err(s.error("background needs rho,u or rho,u,v")),
                });
            }
            (Some("init"), "region") => {
                let v = numbers(s)?;
                let region = match v[..] {
                    [x0, x1, rho, u] => Region {
                        x: (x0, x1),
                        y: None,
                        value: Primitive { rho, u, v: 0.0 },
                        slope: 0.0,
                    },
                    [x0, x1, rho, u, slope] => Region {
                        x: (x0, x1),
                        y: None,
                        value: Primitive { rho, u, v: 0.0 },
                        slope,
                    },
                    [x0, x1, y0, y1, rho, u, v] => Region {
                        x: (x0, x1),
                        y: Some((y0, y1)),
                        value: Primitive { rho, u, v },
                        slope: 0.0,
                    },
                    _ => {
                        return Err(s.error(
                            "region needs x0,x1,rho,u[,slope] (1D) or x0,x1,y0,y1,rho,u,v (2D)",
                        ))
                    }
                };
                if region.x.0 >= region.x.1 || region.y.is_some_and(|(a, b)| a >= b) {
                    return Err(s.error("region bounds must be increasing"));
                }
                if region.value.rho < 0.0 {
                    return Err(s.error("region density must be non-negative"));
                }
                if !self.regions_touched {
                    self.regions.clear();
                    self.regions_touched = true;
                }
                self.regions.push(region);
            }
            (Some("run"), "T") => self.t_end = Some(number(s)?),
            (Some("run"), "t0") => self.t0 = Some(number(s)?),
            (Some("run"), "snapshots") => self.snapshots = Some(numbers(s)?),
            (Some("run"), "outdir") => self.outdir = Some(PathBuf::from(&s.value)),
            (Some("run"), "emit_svg") => self.emit_svg = Some(flag(s)?),
            (None, key) => {
                return Err(s.error(format!("`{key}` must appear inside a section")));
            }
            (Some(sec), key) => return Err(s.error(format!("unknown key `{key}` in [{sec}]"))),
        }
        Ok(())
    }

    fn clear_init(&mut self) {
        self.x0 = None;
        self.rho_l = None;
        self.u_l = None;
        self.rho_r = None;
        self.u_r = None;
        self.background = None;
        self.regions.clear();
        self.rho = None;
        self.radial_u = None;
    }

    fn from_config(c: &ExperimentConfig) -> Self {
        let mut d = Draft {
            name: Some(c.name.clone()),
            kind: Some(c.model.kind),
            g_power: Some(c.model.g_power),
            beta: Some(c.model.beta),
            s: Some(c.model.s),
            alpha: Some(c.model.alpha),
            xmin: Some(c.grid.x.min),
            xmax: Some(c.grid.x.max),
            m: Some(c.grid.x.cells),
            ymin: c.grid.y.map(|a| a.min),
            ymax: c.grid.y.map(|a| a.max),
            my: c.grid.y.map(|a| a.cells),
            order: Some(c.scheme.order),
            limiter: Some(c.scheme.limiter),
            cfl: Some(c.scheme.cfl),
            vacuum_eps: Some(c.scheme.vacuum_eps),
            pgds_full_flux: Some(c.scheme.friction_flux == FrictionFlux::Full),
            entropy_check: Some(c.entropy_check),
            entropy: Some(c.entropy.clone()),
            t0: Some(c.run.t0),
            t_end: Some(c.run.t_end),
            snapshots: Some(c.run.snapshots.clone()),
            outdir: c.run.outdir.clone(),
            emit_svg: Some(c.run.emit_svg),
            ..Draft::default()
        };
        match &c.init {
            InitSpec::Riemann {
                x0,
                rho_l,
                u_l,
                rho_r,
                u_r,
            } => {
                d.init_type = Some("riemann".into());
                d.x0 = Some(*x0);
                d.rho_l = Some(*rho_l);
                d.u_l = Some(*u_l);
                d.rho_r = Some(*rho_r);
                d.u_r = Some(*u_r);
            }
            InitSpec::Regions {
                background,
                regions,
            } => {
                d.init_type = Some("regions".into());
                d.background = Some(*background);
                d.regions = regions.clone();
            }
            InitSpec::Radial { rho, radial_u } => {
                d.init_type = Some("radial".into());
                d.rho = Some(*rho);
                d.radial_u = Some(*radial_u);
            }
        }
        d
    }

    fn finish(self) -> CliResult<ExperimentConfig> {
        fn need<T>(v: Option<T>, what: &str) -> CliResult<T> {
            v.ok_or_else(|| CliError::Config(format!("missing `{what}`")))
        }
        let kind = need(self.kind, "model.kind")?;
        let model = ModelSpec {
            kind,
            g_power: self.g_power.unwrap_or(1),
            beta: self.beta.unwrap_or(0.0),
            s: self.s.unwrap_or(0.0),
            alpha: self.alpha.unwrap_or(0.0),
        };
        model.validate().map_err(|e| CliError::Config(e.to_string()))?;

        let x = Axis {
            min: need(self.xmin, "grid.xmin")?,
            max: need(self.xmax, "grid.xmax")?,
            cells: need(self.m, "grid.m")?,
        };
        let y = match (self.ymin, self.ymax, self.my) {
            (None, None, None) => None,
            (Some(min), Some(max), Some(cells)) => Some(Axis { min, max, cells }),
            _ => {
                return Err(CliError::Config(
                    "a 2D grid needs all of grid.ymin, grid.ymax and grid.my".into(),
                ))
            }
        };
        let grid = GridSpec { x, y };
        for (axis, name) in [(Some(x), "x"), (y, "y")] {
            if let Some(a) = axis {
                ddf_core::Grid1D::new(a.min, a.max, a.cells)
                    .map_err(|e| CliError::Config(format!("{name} axis: {e}")))?;
            }
        }

        let order = self.order.unwrap_or(Order::First);
        let cfl = self.cfl.unwrap_or(order.default_cfl());
        let scheme = SchemeConfig {
            order,
            limiter: self.limiter.unwrap_or(Limiter::Minmod),
            cfl,
            vacuum_eps: self.vacuum_eps.unwrap_or(DEFAULT_VACUUM_EPS),
            friction_flux: if self.pgds_full_flux.unwrap_or(false) {
                FrictionFlux::Full
            } else {
                FrictionFlux::Literal
            },
            ..SchemeConfig::first_order()
        };
        if order == Order::Second && cfl > SECOND_ORDER_MAX_CFL {
            return Err(CliError::Config(format!(
                "cfl = {cfl} is too large for order 2: the second-order scheme keeps positivity \
                 and velocity bounds only for cfl <= 1/3"
            )));
        }
        scheme.validate().map_err(|e| CliError::Config(e.to_string()))?;

        let entropy_check = self.entropy_check.unwrap_or(false);
        let entropy = self.entropy.unwrap_or_else(default_entropies);
        if entropy_check {
            if !matches!(kind, ModelKind::Pgd | ModelKind::Gpgd) {
                return Err(CliError::Config(format!(
                    "entropy_check applies to pgd and gpgd only, not {}",
                    kind.name()
                )));
            }
            if grid.is_2d() {
                return Err(CliError::Config("entropy_check is available for 1D runs only".into()));
            }
            if entropy.is_empty() {
                return Err(CliError::Config("entropy_check needs at least one entropy".into()));
            }
        }

        let init = match need(self.init_type, "init.type")?.as_str() {
            "riemann" => InitSpec::Riemann {
                x0: self.x0.unwrap_or(0.0),
                rho_l: need(self.rho_l, "init.rho_l")?,
                u_l: need(self.u_l, "init.u_l")?,
                rho_r: need(self.rho_r, "init.rho_r")?,
                u_r: need(self.u_r, "init.u_r")?,
            },
            "regions" => InitSpec::Regions {
                background: self.background.unwrap_or(Primitive {
                    rho: 0.0,
                    u: 0.0,
                    v: 0.0,
                }),
                regions: self.regions,
            },
            _ => InitSpec::Radial {
                rho: need(self.rho, "init.rho")?,
                radial_u: need(self.radial_u, "init.radial_u")?,
            },
        };
        check_init(&init, &grid)?;
        if grid.is_2d() && !matches!(kind, ModelKind::Pgd | ModelKind::Gpgd) {
            return Err(CliError::Config(format!(
                "2D runs support pgd and gpgd, not {}",
                kind.name()
            )));
        }

        let t_end = need(self.t_end, "run.T")?;
        let t0 = self.t0.unwrap_or(0.0);
        let snapshots = self.snapshots.unwrap_or_else(|| vec![t_end]);
        let run = RunSpec {
            t0,
            t_end,
            snapshots,
            outdir: self.outdir,
            emit_svg: self.emit_svg.unwrap_or(false),
        };
        run_options(&run, Vec::new())
            .validate()
            .map_err(|e| CliError::Config(e.to_string()))?;

        Ok(ExperimentConfig {
            name: self.name.unwrap_or_else(|| "experiment".into()),
            model,
            grid,
            scheme,
            entropy_check,
            entropy,
            init,
            run,
        })
    }
}

fn check_init(init: &InitSpec, grid: &GridSpec) -> CliResult<()> {
    match init {
        InitSpec::Riemann { rho_l, rho_r, .. } => {
            if grid.is_2d() {
                return Err(CliError::Config("riemann init is 1D only; use regions".into()));
            }
            if *rho_l < 0.0 || *rho_r < 0.0 {
                return Err(CliError::Config("Riemann densities must be non-negative".into()));
            }
        }
        InitSpec::Regions {
            background,
            regions,
        } => {
            if background.rho < 0.0 {
                return Err(CliError::Config("background density must be non-negative".into()));
            }
            for r in regions {
                if r.y.is_some() != grid.is_2d() {
                    return Err(CliError::Config(if grid.is_2d() {
                        "2D grids need regions of the form x0,x1,y0,y1,rho,u,v".into()
                    } else {
                        "1D grids need regions of the form x0,x1,rho,u[,slope]".into()
                    }));
                }
            }
        }
        InitSpec::Radial { rho, .. } => {
            if !grid.is_2d() {
                return Err(CliError::Config("radial init needs a 2D grid".into()));
            }
            if *rho < 0.0 {
                return Err(CliError::Config("radial density must be non-negative".into()));
            }
        }
    }
    Ok(())
}

pub fn run_options(run: &RunSpec, entropy: Vec<EntropyFunction>) -> ddf_core::RunOptions {
    ddf_core::RunOptions {
        t0: run.t0,
        t_end: run.t_end,
        snapshot_times: run.snapshots.clone(),
        entropy,
        min_density_history: false,
    }
}

/// Parses a whole config file.
pub fn parse_config(text: &str) -> CliResult<ExperimentConfig> {
    build(tokenize(text)?, &[])
}

/// Parses a config file and then applies command-line overrides.
pub fn parse_config_with(text: &str, overrides: &[Setting]) -> CliResult<ExperimentConfig> {
    build(tokenize(text)?, overrides)
}

/// Starts from a registry preset and applies overrides.
pub fn from_preset(name: &str, overrides: &[Setting]) -> CliResult<ExperimentConfig> {
    build(
        vec![Setting {
            line: 0,
            section: None,
            key: "preset".into(),
            value: name.into(),
        }],
        overrides,
    )
}

fn build(settings: Vec<Setting>, overrides: &[Setting]) -> CliResult<ExperimentConfig> {
    let mut iter = settings.into_iter().peekable();
    let mut draft = match iter.peek() {
        Some(s) if s.section.is_none() && s.key == "preset" => {
            let s = iter.next().expect("peeked");
            let preset = presets::get(&s.value).ok_or_else(|| {
                s.error(format!(
                    "unknown preset `{}` (known: {})",
                    s.value,
                    presets::NAMES.join(", ")
                ))
            })?;
            Draft::from_config(&preset)
        }
        _ => Draft::default(),
    };
    for s in iter {
        draft.apply(&s)?;
    }
    draft.regions_touched = false;
    for s in overrides {
        draft.apply(s)?;
    }
    draft.finish()
}

/// Shortest decimal that parses back to the same `f64`.
fn num(v: f64) -> String {
    format!("{v}")
}

fn list(values: &[f64]) -> String {
    values.iter().map(|v| num(*v)).collect::<Vec<_>>().join(", ")
}

impl ExperimentConfig {
    /// Fully explicit config text; parsing it yields `self` again.
    pub fn to_config_text(&self) -> String {
        let mut t = String::new();
        let _ = writeln!(t, "name = {}", self.name);
        let m = &self.model;
        let _ = writeln!(t, "\n[model]\nkind = {}", m.kind.name());
        let _ = writeln!(t, "g_power = {}", m.g_power);
        let _ = writeln!(t, "beta = {}\ns = {}\nalpha = {}", num(m.beta), num(m.s), num(m.alpha));
        let g = &self.grid;
        let _ = writeln!(t, "\n[grid]\nxmin = {}\nxmax = {}\nm = {}", num(g.x.min), num(g.x.max), g.x.cells);
        if let Some(y) = g.y {
            let _ = writeln!(t, "ymin = {}\nymax = {}\nmy = {}", num(y.min), num(y.max), y.cells);
        }
        let s = &self.scheme;
        let _ = writeln!(t, "\n[scheme]\norder = {}", s.order.as_number());
        let _ = writeln!(t, "limiter = {}\ncfl = {}", s.limiter.name(), num(s.cfl));
        let _ = writeln!(t, "vacuum_eps = {}", num(s.vacuum_eps));
        let _ = writeln!(t, "pgds_full_flux = {}", s.friction_flux == FrictionFlux::Full);
        let _ = writeln!(t, "entropy_check = {}", self.entropy_check);
        let labels: Vec<String> = self.entropy.iter().map(|e| e.label()).collect();
        let _ = writeln!(t, "entropy = {}", labels.join(", "));
        t.push_str("\n[init]\n");
        match &self.init {
            InitSpec::Riemann {
                x0,
                rho_l,
                u_l,
                rho_r,
                u_r,
            } => {
                let _ = writeln!(t, "type = riemann\nx0 = {}", num(*x0));
                let _ = writeln!(t, "rho_l = {}\nu_l = {}", num(*rho_l), num(*u_l));
                let _ = writeln!(t, "rho_r = {}\nu_r = {}", num(*rho_r), num(*u_r));
            }
            InitSpec::Regions {
                background,
                regions,
            } => {
                t.push_str("type = regions\n");
                let _ = writeln!(
                    t,
                    "background = {}",
                    list(&[background.rho, background.u, background.v])
                );
                for r in regions {
                    let fields = match r.y {
                        Some((y0, y1)) => vec![r.x.0, r.x.1, y0, y1, r.value.rho, r.value.u, r.value.v],
                        None => vec![r.x.0, r.x.1, r.value.rho, r.value.u, r.slope],
                    };
                    let _ = writeln!(t, "region = {}", list(&fields));
                }
            }
            InitSpec::Radial { rho, radial_u } => {
                let _ = writeln!(t, "type = radial\nrho = {}\nradial_u = {}", num(*rho), num(*radial_u));
            }
        }
        let r = &self.run;
        let _ = writeln!(t, "\n[run]\nt0 = {}\nT = {}", num(r.t0), num(r.t_end));
        let _ = writeln!(t, "snapshots = {}", list(&r.snapshots));
        if let Some(dir) = &r.outdir {
            let _ = writeln!(t, "outdir = {}", dir.display());
        }
        let _ = writeln!(t, "emit_svg = {}", r.emit_svg);
        t
    }
}

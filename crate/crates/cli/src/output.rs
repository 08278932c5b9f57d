//! CSV, manifest and SVG writers.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use ddf_core::diagnostics::ManifestValue;
use ddf_core::{Grid1D, Grid2D, RunManifest, State1D, State2D};

use crate::error::{CliError, CliResult};
use crate::experiment::{ConvergenceTable, Output, Report};

/// Scientific notation with 17 significant digits.
pub fn fmt_num(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn csv_1d(grid: &Grid1D, state: &State1D, vacuum_eps: f64) -> String {
    let u = state.velocities(vacuum_eps);
    let mut s = String::from("x,rho,u,w\n");
    for i in 0..state.len() {
        let _ = writeln!(
            s,
            "{},{},{},{}",
            fmt_num(grid.cell_center(i)),
            fmt_num(state.rho[i]),
            fmt_num(u[i]),
            fmt_num(state.w[i])
        );
    }
    s
}

pub fn csv_2d(grid: &Grid2D, state: &State2D, vacuum_eps: f64) -> String {
    let (u, v) = state.velocities(vacuum_eps);
    let mut s = String::from("x,y,rho,u,v\n");
    for j in 0..grid.my() {
        let y = fmt_num(grid.y.cell_center(j));
        for i in 0..grid.mx() {
            let k = grid.index(i, j);
            let _ = writeln!(
                s,
                "{},{y},{},{},{}",
                fmt_num(grid.x.cell_center(i)),
                fmt_num(state.rho[k]),
                fmt_num(u[k]),
                fmt_num(v[k])
            );
        }
    }
    s
}

pub fn manifest_text(man: &RunManifest) -> String {
    let mut s = String::new();
    for (k, v) in man.iter() {
        let value = match v {
            ManifestValue::Number(x) => fmt_num(*x),
            ManifestValue::Integer(n) => n.to_string(),
            ManifestValue::Flag(b) => b.to_string(),
            ManifestValue::Text(t) => t.clone(),
        };
        let _ = writeln!(s, "{k} = {value}");
    }
    s
}

pub fn convergence_csv(table: &ConvergenceTable) -> String {
    let mut s = String::from("m,h,l1,eoc\n");
    for (i, r) in table.rows.iter().enumerate() {
        let order = if i == 0 {
            String::new()
        } else {
            fmt_num(table.eoc[i - 1])
        };
        let _ = writeln!(s, "{},{},{},{order}", r.cells, fmt_num(r.h), fmt_num(r.l1));
    }
    s
}

const W: f64 = 640.0;
const H: f64 = 360.0;
const PAD: f64 = 40.0;

/// Density polyline.
pub fn svg_1d(grid: &Grid1D, state: &State1D, title: &str) -> String {
    let (lo, hi) = (0.0f64, state.rho.iter().fold(0.0f64, |a, r| a.max(*r)).max(1e-300));
    let sx = (W - 2.0 * PAD) / (grid.x_right() - grid.x_left());
    let sy = (H - 2.0 * PAD) / (hi - lo);
    let mut pts = String::new();
    for i in 0..state.len() {
        let x = PAD + (grid.cell_center(i) - grid.x_left()) * sx;
        let y = H - PAD - (state.rho[i] - lo) * sy;
        let _ = write!(pts, "{x:.2},{y:.2} ");
    }
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\">\n\
         <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n\
         <text x=\"{PAD}\" y=\"20\" font-family=\"sans-serif\" font-size=\"13\">{title} (max rho {hi:.4e})</text>\n\
         <rect x=\"{PAD}\" y=\"{PAD}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#888\"/>\n\
         <polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.2\" points=\"{}\"/>\n</svg>\n",
        W - 2.0 * PAD,
        H - 2.0 * PAD,
        pts.trim_end()
    )
}

/// Grayscale density map, darker for denser cells.
pub fn svg_2d(grid: &Grid2D, state: &State2D, title: &str) -> String {
    let hi = state.rho.iter().fold(0.0f64, |a, r| a.max(*r)).max(1e-300);
    let side = H - 2.0 * PAD;
    let (cw, ch) = (side / grid.mx() as f64, side / grid.my() as f64);
    let mut s = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{H}\" shape-rendering=\"crispEdges\">\n\
         <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n\
         <text x=\"{PAD}\" y=\"20\" font-family=\"sans-serif\" font-size=\"13\">{title} (max rho {hi:.4e})</text>\n",
        side + 2.0 * PAD
    );
    for j in 0..grid.my() {
        for i in 0..grid.mx() {
            let level = 255.0 * (1.0 - state.rho[grid.index(i, j)] / hi);
            let g = level.clamp(0.0, 255.0).round() as u8;
            let x = PAD + i as f64 * cw;
            let y = H - PAD - (j + 1) as f64 * ch;
            let _ = writeln!(
                s,
                "<rect x=\"{x:.3}\" y=\"{y:.3}\" width=\"{:.3}\" height=\"{:.3}\" fill=\"rgb({g},{g},{g})\"/>",
                cw + 0.01,
                ch + 0.01
            );
        }
    }
    s.push_str("</svg>\n");
    s
}

fn write(path: PathBuf, contents: &str, written: &mut Vec<PathBuf>) -> CliResult<()> {
    fs::write(&path, contents).map_err(|e| CliError::io(&path, e))?;
    written.push(path);
    Ok(())
}

pub fn ensure_dir(dir: &Path) -> CliResult<()> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))
}

fn stem(k: usize, t: f64) -> String {
    format!("snapshot_{k:03}_t{t}")
}

/// Writes every artifact of `report` into `dir`; returns the paths.
pub fn write_report(report: &Report, dir: &Path, vacuum_eps: f64, emit_svg: bool) -> CliResult<Vec<PathBuf>> {
    ensure_dir(dir)?;
    let mut written = Vec::new();
    let mut manifest = report.manifest.clone();
    match &report.output {
        Output::OneD { grid, snapshots } => {
            for (k, snap) in snapshots.iter().enumerate() {
                let name = stem(k, snap.t);
                manifest.insert(format!("snapshot.{k}.file"), format!("{name}.csv"));
                write(dir.join(format!("{name}.csv")), &csv_1d(grid, &snap.state, vacuum_eps), &mut written)?;
                if emit_svg {
                    let title = format!("t = {}", snap.t);
                    write(dir.join(format!("{name}.svg")), &svg_1d(grid, &snap.state, &title), &mut written)?;
                }
            }
        }
        Output::TwoD { grid, snapshots } => {
            for (k, snap) in snapshots.iter().enumerate() {
                let name = stem(k, snap.t);
                manifest.insert(format!("snapshot.{k}.file"), format!("{name}.csv"));
                write(dir.join(format!("{name}.csv")), &csv_2d(grid, &snap.state, vacuum_eps), &mut written)?;
                if emit_svg {
                    let title = format!("t = {}", snap.t);
                    write(dir.join(format!("{name}.svg")), &svg_2d(grid, &snap.state, &title), &mut written)?;
                }
            }
        }
    }
    write(dir.join("manifest.txt"), &manifest_text(&manifest), &mut written)?;
    write(
        dir.join("timing.txt"),
        &format!("wall_clock_seconds = {}\n", fmt_num(report.wall_clock)),
        &mut written,
    )?;
    Ok(written)
}

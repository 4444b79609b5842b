//! Subcommand bodies. Each returns the process outcome; artifacts go to the
//! output directory when one is given, otherwise the artifact matching
//! `--format` is printed to stdout.

use std::path::PathBuf;

use anyhow::{anyhow, Context, Result};
use ecg_riemann::fvcheck::{
    concentration, empirical_order, evolve, l1_error, ConcentrationReport, FieldSnapshot, FvDiagnostics, GridConfig,
    Scheme,
};
use ecg_riemann::limits::{run_to_gcg_sweep, run_vacuum_sweep, run_vanishing_pressure_sweep, ScheduleMode, SweepReport};
use ecg_riemann::solver::{sample, Region, TransportPattern};
use ecg_riemann::waves::{classify_ecg, classify_gcg, forward_curve_u, WaveFamily};
use ecg_riemann::{Error as CoreError, ModelTag, PressureParams, RiemannSolution, State};
use serde::{Deserialize, Serialize};

use crate::problem::Problem;
use crate::svg::{Marker, Plot, Series};
use crate::{InputError, NumericalError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    SoftFailure,
}

pub struct Output {
    pub dir: Option<PathBuf>,
    pub format: Format,
}

impl Output {
    fn emit(&self, kind: Format, name: &str, content: &str) -> Result<()> {
        match &self.dir {
            Some(dir) => {
                std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
                let path = dir.join(name);
                std::fs::write(&path, content).with_context(|| format!("writing {}", path.display()))
            }
            None if kind == self.format => {
                print!("{content}");
                Ok(())
            }
            None => Ok(()),
        }
    }

    fn emit_json<T: Serialize>(&self, name: &str, value: &T) -> Result<()> {
        let mut text = serde_json::to_string_pretty(value)?;
        text.push('\n');
        self.emit(Format::Json, name, &text)
    }
}

/// Full round-trip decimal formatting (17 significant digits).
fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn csv_text(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    Ok(String::from_utf8(w.into_inner().map_err(|e| anyhow!("{e}"))?)?)
}

fn numerical(e: CoreError) -> anyhow::Error {
    anyhow!(NumericalError(e.to_string()))
}

/// `xi` range that shows every wave with some margin.
fn xi_window(sol: &RiemannSolution) -> (f64, f64) {
    match sol.outer_speeds() {
        Some((lo, hi)) => {
            let pad = (0.25 * (hi - lo)).max(0.5);
            (lo - pad, hi + pad)
        }
        None => (-1.0, 1.0),
    }
}

fn uniform(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| if n == 1 { 0.5 * (lo + hi) } else { lo + (hi - lo) * i as f64 / (n - 1) as f64 })
}

pub fn solve(problem: &Problem, t: f64, samples: Option<usize>, out: &Output) -> Result<Outcome> {
    let p = problem.params()?;
    let sol = ecg_riemann::solve(&p, problem.left, problem.right)?;
    out.emit_json("solution.json", &sol)?;
    match samples {
        Some(n) => {
            if !(t > 0.0 && t.is_finite()) {
                return Err(anyhow!(InputError(format!("--t must be positive, got {t}"))));
            }
            let (lo, hi) = xi_window(&sol);
            let mut rows = Vec::with_capacity(n);
            for xi in uniform(lo, hi, n) {
                let s = sample(&sol, xi)?.state;
                let pressure = if s.rho > 0.0 { p.pressure(s.rho)? } else { 0.0 };
                rows.push(vec![num(xi * t), num(xi), num(s.rho), num(s.u), num(pressure)]);
            }
            out.emit(Format::Csv, "samples.csv", &csv_text(&["x", "xi", "rho", "u", "pressure"], rows)?)?;
        }
        None if out.dir.is_none() && out.format == Format::Csv => {
            return Err(anyhow!(InputError("CSV output of solve needs --samples".into())));
        }
        None => {}
    }
    Ok(Outcome::Success)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub model: PressureParams,
    pub left: State,
    pub right: State,
    pub region: Region,
}

pub fn classify_region(p: &PressureParams, left: State, right: State) -> Result<Region> {
    Ok(match p.model_tag {
        ModelTag::Ecg => Region::Ecg(classify_ecg(p, left, right)?),
        ModelTag::Gcg => Region::Gcg(classify_gcg(p, left, right)?),
        ModelTag::Transport => Region::Transport(if left.u < right.u {
            TransportPattern::Vacuum
        } else if left.u == right.u {
            TransportPattern::Contact
        } else {
            TransportPattern::Delta
        }),
    })
}

pub fn classify(problem: &Problem, json: bool, out: &Output) -> Result<Outcome> {
    let p = problem.params()?;
    let region = classify_region(&p, problem.left, problem.right)?;
    let report = ClassifyReport { model: p, left: problem.left, right: problem.right, region };
    if out.dir.is_some() {
        out.emit_json("classify.json", &report)?;
    }
    if json && out.dir.is_none() {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        println!("{region}");
    }
    Ok(Outcome::Success)
}

pub fn sweep(problem: &Problem, tol: Option<f64>, out: &Output) -> Result<Outcome> {
    let (sched, default_tol) = problem.schedule()?;
    let tol = tol.unwrap_or(default_tol);
    let (l, r) = (problem.left, problem.right);
    let report: SweepReport = match sched.mode {
        ScheduleMode::BothVanish if l.u > r.u => run_vanishing_pressure_sweep(l, r, &sched, tol)?,
        ScheduleMode::BothVanish if l.u < r.u => run_vacuum_sweep(l, r, &sched, tol)?,
        ScheduleMode::BothVanish => {
            return Err(anyhow!(InputError("a vanishing-pressure sweep needs u- != u+".into())));
        }
        ScheduleMode::AVanishes => run_to_gcg_sweep(l, r, &sched, tol)?,
    };
    out.emit_json("sweep.json", &report)?;
    let header =
        ["A", "B", "rho_star", "u_star", "sigma1", "sigma2", "inner1", "inner2", "A_rho_star_n", "mass_proxy", "momentum_proxy"];
    let rows = report.records.iter().map(|x| {
        [x.a, x.b, x.rho_star, x.u_star, x.sigma1, x.sigma2, x.inner1, x.inner2, x.a_rho_star_n, x.mass_proxy, x.momentum_proxy]
            .into_iter()
            .map(num)
            .collect()
    });
    out.emit(Format::Csv, "sweep.csv", &csv_text(&header, rows)?)?;
    if report.all_converged {
        Ok(Outcome::Success)
    } else {
        for c in report.checks.iter().filter(|c| !c.converged) {
            eprintln!("not converged: {} (final error {:e}, tol {:e})", c.name, c.final_error, c.tol);
        }
        for t in report.trends.iter().filter(|t| !t.holds) {
            eprintln!("trend violated: {}", t.name);
        }
        Ok(Outcome::SoftFailure)
    }
}

/// Result of comparing a snapshot with the exact solution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "comparison", rename_all = "lowercase")]
pub enum Comparison {
    L1 { l1_rho: f64, l1_momentum: f64 },
    Concentration(ConcentrationReport),
    None { reason: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FvReport {
    pub cells: usize,
    pub scheme: Scheme,
    pub t_end: f64,
    pub diagnostics: FvDiagnostics,
    pub result: Comparison,
}

fn compare(snap: &FieldSnapshot, sol: &RiemannSolution, half_width: f64) -> Result<Comparison> {
    if sol.delta_shock().is_some() {
        return Ok(Comparison::Concentration(concentration(snap, sol, half_width).map_err(numerical)?));
    }
    match l1_error(snap, sol) {
        Ok((l1_rho, l1_momentum)) => Ok(Comparison::L1 { l1_rho, l1_momentum }),
        Err(CoreError::UnsupportedComparison(reason)) => Ok(Comparison::None { reason }),
        Err(e) => Err(numerical(e)),
    }
}

fn run_grid(p: &PressureParams, problem: &Problem, sol: &RiemannSolution, g: &GridConfig, hw: f64) -> Result<(FieldSnapshot, FvReport)> {
    let snap = evolve(p, problem.left, problem.right, g).map_err(numerical)?;
    let result = compare(&snap, sol, hw)?;
    let report = FvReport { cells: g.cells, scheme: g.scheme, t_end: g.t_end, diagnostics: snap.diagnostics, result };
    Ok((snap, report))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RefinementReport {
    pub runs: Vec<FvReport>,
    /// Observed L1 order in density between the coarsest and finest grid.
    pub order: Option<f64>,
}

pub fn fv(problem: &Problem, t: Option<f64>, refine: bool, half_width: f64, out: &Output) -> Result<Outcome> {
    let p = problem.params()?;
    let mut g = problem.grid()?;
    if let Some(t) = t {
        g.t_end = t;
        g.validate()?;
    }
    let sol = ecg_riemann::solve(&p, problem.left, problem.right)?;
    if refine {
        let mut runs = Vec::with_capacity(4);
        for k in 0..4 {
            let gk = GridConfig { cells: g.cells << k, ..g };
            runs.push(run_grid(&p, problem, &sol, &gk, half_width)?.1);
        }
        let l1: Vec<(usize, f64)> = runs
            .iter()
            .filter_map(|r| match r.result {
                Comparison::L1 { l1_rho, .. } => Some((r.cells, l1_rho)),
                _ => None,
            })
            .collect();
        let order = if l1.len() == runs.len() {
            let (cells, errs): (Vec<usize>, Vec<f64>) = l1.iter().copied().unzip();
            empirical_order(&cells, &errs)
        } else {
            None
        };
        let rows = runs.iter().map(|r| {
            let (e_rho, e_mom) = match r.result {
                Comparison::L1 { l1_rho, l1_momentum } => (l1_rho, l1_momentum),
                _ => (f64::NAN, f64::NAN),
            };
            vec![r.cells.to_string(), num(e_rho), num(e_mom), num(r.diagnostics.mass_defect_rel)]
        });
        out.emit(Format::Csv, "refinement.csv", &csv_text(&["cells", "l1_rho", "l1_momentum", "mass_defect_rel"], rows)?)?;
        out.emit_json("refinement.json", &RefinementReport { runs, order })?;
        return Ok(Outcome::Success);
    }
    let (snap, report) = run_grid(&p, problem, &sol, &g, half_width)?;
    let rows = snap
        .rows()
        .map_err(numerical)?
        .into_iter()
        .map(|r| vec![num(r.x), num(r.rho), num(r.momentum), num(r.u), num(r.pressure)]);
    out.emit(Format::Csv, "snapshot.csv", &csv_text(&["x", "rho", "momentum", "u", "pressure"], rows)?)?;
    out.emit_json("fv_report.json", &report)?;
    Ok(Outcome::Success)
}

const PALETTE: [&str; 5] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"];

pub fn plot(problem: &Problem, profile: bool, phase: bool, samples: usize, dir: PathBuf) -> Result<Outcome> {
    if !profile && !phase {
        return Err(anyhow!(InputError("nothing to plot: pass --profile and/or --phase".into())));
    }
    let p = problem.params()?;
    let (l, r) = (problem.left, problem.right);
    let sol = ecg_riemann::solve(&p, l, r)?;
    let out = Output { dir: Some(dir), format: Format::Svg };
    if profile {
        let (lo, hi) = xi_window(&sol);
        let mut pts = Vec::with_capacity(samples);
        for xi in uniform(lo, hi, samples.max(2)) {
            pts.push((xi, sample(&sol, xi)?.state));
        }
        let markers: Vec<Marker> = sol
            .delta_shock()
            .map(|d| Marker { label: format!("delta shock, w' = {:.4}", d.weight_rate), at: (d.sigma, 0.0) })
            .into_iter()
            .collect();
        for (name, label, get) in [("profile_rho.svg", "rho", (|s: State| s.rho) as fn(State) -> f64), ("profile_u.svg", "u", |s: State| s.u)] {
            let plot = Plot {
                title: format!("{label}(xi), region {}", sol.region),
                x_label: "xi = x / t".into(),
                y_label: label.into(),
                series: vec![Series { name: label.into(), color: PALETTE[0], points: pts.iter().map(|&(x, s)| (x, get(s))).collect() }],
                markers: if label == "rho" { markers.iter().map(|m| Marker { label: m.label.clone(), at: m.at }).collect() } else { vec![] },
            };
            out.emit(Format::Svg, name, &plot.render())?;
        }
    }
    if phase {
        out.emit(Format::Svg, "phase_plane.svg", &phase_plot(&p, l, r, samples.max(2)).render())?;
    }
    Ok(Outcome::Success)
}

/// Wave curves through the left state, the delta-shock boundary for the
/// generalized gas, and the right-state marker.
fn phase_plot(p: &PressureParams, l: State, r: State, samples: usize) -> Plot {
    let (lo, hi) = (0.2 * l.rho.min(r.rho), 2.0 * l.rho.max(r.rho));
    let grid: Vec<f64> = uniform(lo.ln(), hi.ln(), samples).map(f64::exp).collect();
    let mut series = Vec::new();
    if p.model_tag != ModelTag::Transport {
        let branch = |fam: WaveFamily, below: bool| -> Vec<(f64, f64)> {
            grid.iter()
                .filter(|&&rho| if below { rho <= l.rho } else { rho >= l.rho })
                .map(|&rho| (rho, forward_curve_u(p, fam, l, rho).unwrap_or(f64::NAN)))
                .collect()
        };
        series.push(Series { name: "R1".into(), color: PALETTE[0], points: branch(WaveFamily::One, true) });
        series.push(Series { name: "S1".into(), color: PALETTE[1], points: branch(WaveFamily::One, false) });
        series.push(Series { name: "R2".into(), color: PALETTE[2], points: branch(WaveFamily::Two, false) });
        series.push(Series { name: "S2".into(), color: PALETTE[3], points: branch(WaveFamily::Two, true) });
    }
    if p.model_tag == ModelTag::Gcg {
        let k = 0.5 * (p.alpha + 1.0);
        let sb = p.b.sqrt();
        let points = grid.iter().map(|&rho| (rho, l.u - sb * (l.rho.powf(-k) + rho.powf(-k)))).collect();
        series.push(Series { name: "S_delta".into(), color: PALETTE[4], points });
    }
    if p.model_tag == ModelTag::Transport {
        series.push(Series { name: "u = u-".into(), color: PALETTE[0], points: vec![(lo, l.u), (hi, l.u)] });
    }
    Plot {
        title: format!("phase plane through ({}, {})", l.rho, l.u),
        x_label: "rho".into(),
        y_label: "u".into(),
        series,
        markers: vec![
            Marker { label: "left".into(), at: (l.rho, l.u) },
            Marker { label: "right".into(), at: (r.rho, r.u) },
        ],
    }
}

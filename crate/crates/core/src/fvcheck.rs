//! First-order finite-volume cross-check of the exact solvers: a Godunov
//! scheme whose interface fluxes come from the exact Riemann solution at
//! `xi = 0`, and a Lax-Friedrichs scheme. Interfaces whose local Riemann
//! problem carries a delta shock fall back to Lax-Friedrichs.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::models::{ModelTag, PressureParams, State};
use crate::solver::{delta_weight_at, sample, solve, RiemannSolution, SegmentKind};
use crate::waves::gcg_sdelta_gap;

/// Cells kept between the outermost exact wave and the boundary at `t_end`.
const BOUNDARY_MARGIN_CELLS: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Scheme {
    GodunovExact,
    LaxFriedrichs,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub x_lo: f64,
    pub x_hi: f64,
    pub cells: usize,
    pub cfl: f64,
    pub t_end: f64,
    pub scheme: Scheme,
}

impl GridConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.x_lo < 0.0 && 0.0 < self.x_hi && self.x_lo.is_finite() && self.x_hi.is_finite()) {
            return Err(Error::Domain(format!("grid needs x_lo < 0 < x_hi, got [{}, {}]", self.x_lo, self.x_hi)));
        }
        if self.cells < 10 {
            return Err(Error::Domain(format!("grid needs at least 10 cells, got {}", self.cells)));
        }
        if !(self.cfl > 0.0 && self.cfl <= 0.9) {
            return Err(Error::Domain(format!("cfl must lie in (0, 0.9], got {}", self.cfl)));
        }
        if !(self.t_end > 0.0 && self.t_end.is_finite()) {
            return Err(Error::Domain(format!("t_end must be positive, got {}", self.t_end)));
        }
        Ok(())
    }

    pub fn dx(&self) -> f64 {
        (self.x_hi - self.x_lo) / self.cells as f64
    }

    pub fn center(&self, i: usize) -> f64 {
        self.x_lo + (i as f64 + 0.5) * self.dx()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct FvDiagnostics {
    pub steps: usize,
    /// Largest `dt max|lambda| / dx` actually used.
    pub max_cfl: f64,
    pub initial_mass: f64,
    pub final_mass: f64,
    /// Net mass that entered through the two boundaries.
    pub boundary_mass_inflow: f64,
    /// `|M(t) - M(0) - inflow| / M(0)`.
    pub mass_defect_rel: f64,
    /// `M(0) + t (rho_- u_- - rho_+ u_+)`, the balance implied by the far-field states.
    pub expected_mass: f64,
    pub momentum_defect_rel: f64,
    /// Interface fluxes computed by Lax-Friedrichs inside a Godunov run.
    pub lf_fallbacks: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldSnapshot {
    pub time: f64,
    pub grid: GridConfig,
    pub model: PressureParams,
    pub centers: Vec<f64>,
    /// Cell averages of `rho`.
    pub rho: Vec<f64>,
    /// Cell averages of `rho u`.
    pub momentum: Vec<f64>,
    pub diagnostics: FvDiagnostics,
}

/// One output row: `x, rho, momentum, u, pressure`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnapshotRow {
    pub x: f64,
    pub rho: f64,
    pub momentum: f64,
    pub u: f64,
    pub pressure: f64,
}

impl FieldSnapshot {
    pub fn rows(&self) -> Result<Vec<SnapshotRow>> {
        (0..self.rho.len())
            .map(|i| {
                let (rho, m) = (self.rho[i], self.momentum[i]);
                let (u, pressure) = if rho > 0.0 { (m / rho, self.model.pressure(rho)?) } else { (0.0, 0.0) };
                Ok(SnapshotRow { x: self.centers[i], rho, momentum: m, u, pressure })
            })
            .collect()
    }

    pub fn total_mass(&self) -> f64 {
        self.rho.iter().sum::<f64>() * self.grid.dx()
    }
}

type Cons = [f64; 2];

fn physical_flux(p: &PressureParams, u: Cons) -> Result<Cons> {
    let (rho, m) = (u[0], u[1]);
    if rho == 0.0 && p.model_tag == ModelTag::Transport {
        return Ok([0.0, 0.0]);
    }
    Ok([m, m * m / rho + p.pressure(rho)?])
}

fn state_of(u: Cons) -> State {
    State::new(u[0], u[1] / u[0])
}

fn max_speed(p: &PressureParams, u: Cons) -> Result<f64> {
    if u[0] == 0.0 {
        return Ok(0.0);
    }
    let s = state_of(u);
    let c = if p.model_tag == ModelTag::Transport { 0.0 } else { p.sound_speed(s.rho)? };
    Ok(s.u.abs() + c)
}

fn lf_flux(p: &PressureParams, l: Cons, r: Cons, dx_over_dt: f64) -> Result<Cons> {
    let (fl, fr) = (physical_flux(p, l)?, physical_flux(p, r)?);
    Ok([
        0.5 * (fl[0] + fr[0]) - 0.5 * dx_over_dt * (r[0] - l[0]),
        0.5 * (fl[1] + fr[1]) - 0.5 * dx_over_dt * (r[1] - l[1]),
    ])
}

/// Interface treatment decided before the time step is known.
enum Interface {
    Flux(Cons, f64),
    LaxFriedrichs,
}

fn has_delta(p: &PressureParams, l: State, r: State) -> bool {
    match p.model_tag {
        ModelTag::Ecg => false,
        ModelTag::Gcg => gcg_sdelta_gap(p, l, r) >= 0.0,
        ModelTag::Transport => l.u > r.u,
    }
}

fn godunov_interface(p: &PressureParams, l: Cons, r: Cons) -> Result<Interface> {
    if l == r {
        return Ok(Interface::Flux(physical_flux(p, l)?, max_speed(p, l)?));
    }
    if l[0] == 0.0 || r[0] == 0.0 {
        return Ok(Interface::LaxFriedrichs);
    }
    let (sl, sr) = (state_of(l), state_of(r));
    if has_delta(p, sl, sr) {
        return Ok(Interface::LaxFriedrichs);
    }
    let sol = solve(p, sl, sr)?;
    let at0 = sample(&sol, 0.0)?;
    let flux = if at0.in_vacuum { [0.0, 0.0] } else { physical_flux(p, [at0.state.rho, at0.state.momentum()])? };
    let speed = sol
        .waves()
        .flat_map(|w| [w.xi_lo.abs(), w.xi_hi.abs()])
        .filter(|v| v.is_finite())
        .fold(0.0, f64::max);
    Ok(Interface::Flux(flux, speed))
}

/// Exact average of the Riemann initial datum over `[a, b]`.
fn initial_average(left: State, right: State, a: f64, b: f64) -> Cons {
    let wl = ((0.0f64).min(b) - a).max(0.0) / (b - a);
    let wr = 1.0 - wl;
    [wl * left.rho + wr * right.rho, wl * left.momentum() + wr * right.momentum()]
}

/// Checks that no exact wave gets within a few cells of the boundary by `t_end`.
fn check_domain(sol: &RiemannSolution, g: &GridConfig) -> Result<()> {
    let margin = BOUNDARY_MARGIN_CELLS * g.dx();
    for w in sol.waves() {
        let (lo, hi) = (w.xi_lo * g.t_end, w.xi_hi * g.t_end);
        if lo < g.x_lo + margin || hi > g.x_hi - margin {
            return Err(Error::DomainTooSmall(format!(
                "wave spanning x in [{lo}, {hi}] at t = {} leaves fewer than {BOUNDARY_MARGIN_CELLS} cells to [{}, {}]",
                g.t_end, g.x_lo, g.x_hi
            )));
        }
    }
    Ok(())
}

/// Runs the scheme from the Riemann datum to `g.t_end` with outflow boundaries.
pub fn evolve(p: &PressureParams, left: State, right: State, g: &GridConfig) -> Result<FieldSnapshot> {
    p.validate()?;
    g.validate()?;
    let exact = solve(p, left, right)?;
    check_domain(&exact, g)?;

    let n = g.cells;
    let dx = g.dx();
    let mut u: Vec<Cons> = (0..n)
        .map(|i| {
            let a = g.x_lo + i as f64 * dx;
            initial_average(left, right, a, a + dx)
        })
        .collect();
    let mass = |u: &[Cons]| u.iter().map(|c| c[0]).sum::<f64>() * dx;
    let momentum = |u: &[Cons]| u.iter().map(|c| c[1]).sum::<f64>() * dx;
    let (m0, p0) = (mass(&u), momentum(&u));

    let mut diag = FvDiagnostics { initial_mass: m0, ..Default::default() };
    let (mut inflow_mass, mut inflow_mom, mut flux_scale) = (0.0, 0.0, 0.0);
    let mut t = 0.0;
    let mut warned = false;

    while t < g.t_end {
        let cell_speed = u.iter().map(|c| max_speed(p, *c)).collect::<Result<Vec<_>>>()?.into_iter().fold(0.0, f64::max);
        // interface k sits between cells k-1 and k; the ghosts copy the boundary cells
        let pair = |k: usize| (u[k.saturating_sub(1)], u[k.min(n - 1)]);
        let interfaces: Vec<Interface> = match g.scheme {
            Scheme::LaxFriedrichs => (0..=n).map(|_| Interface::LaxFriedrichs).collect(),
            Scheme::GodunovExact => (0..=n)
                .into_par_iter()
                .map(|k| {
                    let (l, r) = pair(k);
                    godunov_interface(p, l, r)
                })
                .collect::<Result<Vec<_>>>()?,
        };
        let wave_speed = interfaces
            .iter()
            .map(|i| match i {
                Interface::Flux(_, s) => *s,
                Interface::LaxFriedrichs => 0.0,
            })
            .fold(cell_speed, f64::max);
        let mut dt = if wave_speed > 0.0 { g.cfl * dx / wave_speed } else { g.t_end - t };
        if t + dt >= g.t_end {
            dt = g.t_end - t;
        }
        diag.max_cfl = diag.max_cfl.max(dt * wave_speed / dx);

        let fallbacks = interfaces.iter().filter(|i| matches!(i, Interface::LaxFriedrichs)).count();
        if g.scheme == Scheme::GodunovExact && fallbacks > 0 {
            diag.lf_fallbacks += fallbacks;
            if !warned {
                log::warn!("delta-shock or vacuum interface problems: using Lax-Friedrichs fluxes there");
                warned = true;
            }
        }
        let fluxes: Vec<Cons> = interfaces
            .into_iter()
            .enumerate()
            .map(|(k, i)| match i {
                Interface::Flux(f, _) => Ok(f),
                Interface::LaxFriedrichs => {
                    let (l, r) = pair(k);
                    lf_flux(p, l, r, dx / dt)
                }
            })
            .collect::<Result<_>>()?;

        let lambda = dt / dx;
        for (i, c) in u.iter_mut().enumerate() {
            c[0] -= lambda * (fluxes[i + 1][0] - fluxes[i][0]);
            c[1] -= lambda * (fluxes[i + 1][1] - fluxes[i][1]);
        }
        t += dt;
        inflow_mass += dt * (fluxes[0][0] - fluxes[n][0]);
        inflow_mom += dt * (fluxes[0][1] - fluxes[n][1]);
        flux_scale += dt * (fluxes[0][1].abs() + fluxes[n][1].abs());
        diag.steps += 1;

        if let Some((cell, c)) = u.iter().enumerate().find(|(_, c)| c[0] < 0.0 || !c[0].is_finite()) {
            return Err(Error::Positivity { cell, rho: c[0], time: t });
        }
    }

    let (m1, p1) = (mass(&u), momentum(&u));
    diag.final_mass = m1;
    diag.boundary_mass_inflow = inflow_mass;
    diag.mass_defect_rel = (m1 - m0 - inflow_mass).abs() / m0;
    diag.expected_mass = m0 + g.t_end * (left.momentum() - right.momentum());
    let mom_scale = u.iter().map(|c| c[1].abs()).sum::<f64>() * dx + flux_scale;
    diag.momentum_defect_rel = if mom_scale > 0.0 { (p1 - p0 - inflow_mom).abs() / mom_scale } else { 0.0 };

    Ok(FieldSnapshot {
        time: t,
        grid: *g,
        model: *p,
        centers: (0..n).map(|i| g.center(i)).collect(),
        rho: u.iter().map(|c| c[0]).collect(),
        momentum: u.iter().map(|c| c[1]).collect(),
        diagnostics: diag,
    })
}

// 5-point Gauss-Legendre on [-1, 1].
const GL5_X: [f64; 5] = [-0.906_179_845_938_664, -0.538_469_310_105_683, 0.0, 0.538_469_310_105_683, 0.906_179_845_938_664];
const GL5_W: [f64; 5] = [0.236_926_885_056_189_1, 0.478_628_670_499_366_5, 0.568_888_888_888_888_9, 0.478_628_670_499_366_5, 0.236_926_885_056_189_1];

/// Cell averages of the exact solution at time `t` by 5-point Gauss quadrature.
pub fn exact_cell_averages(sol: &RiemannSolution, g: &GridConfig, t: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    if sol.delta_shock().is_some() {
        return Err(Error::UnsupportedComparison("exact solution carries a delta measure".into()));
    }
    if !(t > 0.0) {
        return Err(Error::Domain(format!("comparison time must be positive, got {t}")));
    }
    let dx = g.dx();
    let cells: Vec<Result<(f64, f64)>> = (0..g.cells)
        .into_par_iter()
        .map(|i| {
            let c = g.center(i);
            let (mut r, mut m) = (0.0, 0.0);
            for (x, w) in GL5_X.iter().zip(GL5_W) {
                let s = sample(sol, (c + 0.5 * dx * x) / t)?.state;
                r += 0.5 * w * s.rho;
                m += 0.5 * w * s.momentum();
            }
            Ok((r, m))
        })
        .collect();
    let cells: Vec<(f64, f64)> = cells.into_iter().collect::<Result<_>>()?;
    Ok(cells.into_iter().unzip())
}

/// `(sum |rho_i - rho_exact_i| dx, sum |m_i - m_exact_i| dx)`.
pub fn l1_error(snap: &FieldSnapshot, sol: &RiemannSolution) -> Result<(f64, f64)> {
    if snap.model != sol.model {
        return Err(Error::UnsupportedComparison("snapshot and solution use different models".into()));
    }
    let (er, em) = exact_cell_averages(sol, &snap.grid, snap.time)?;
    let dx = snap.grid.dx();
    let e_rho = snap.rho.iter().zip(&er).map(|(a, b)| (a - b).abs()).sum::<f64>() * dx;
    let e_mom = snap.momentum.iter().zip(&em).map(|(a, b)| (a - b).abs()).sum::<f64>() * dx;
    Ok((e_rho, e_mom))
}

/// Mass of the cell-average field inside `[lo, hi]` (partial cells weighted by overlap).
pub fn window_mass(snap: &FieldSnapshot, lo: f64, hi: f64) -> f64 {
    let dx = snap.grid.dx();
    snap.centers
        .iter()
        .zip(&snap.rho)
        .map(|(&c, &r)| {
            let overlap = ((c + 0.5 * dx).min(hi) - (c - 0.5 * dx).max(lo)).max(0.0);
            r * overlap
        })
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConcentrationReport {
    pub center: f64,
    pub half_width: f64,
    pub window_mass: f64,
    /// Mass the two constant far-field states alone put in the window.
    pub baseline_mass: f64,
    pub excess_mass: f64,
    pub delta_weight: f64,
    pub rel_error: f64,
}

/// Compares the mass concentrated around the exact delta-shock position with
/// the delta weight at the snapshot time.
pub fn concentration(snap: &FieldSnapshot, sol: &RiemannSolution, half_width: f64) -> Result<ConcentrationReport> {
    let delta = *sol.delta_shock().ok_or(Error::NoDeltaShock)?;
    let t = snap.time;
    let center = delta.sigma * t;
    let (lo, hi) = (center - half_width, center + half_width);
    let window = window_mass(snap, lo, hi);
    let baseline = sol.left.rho * (center - lo) + sol.right.rho * (hi - center);
    let weight = delta_weight_at(sol, t)?;
    let excess = window - baseline;
    Ok(ConcentrationReport {
        center,
        half_width,
        window_mass: window,
        baseline_mass: baseline,
        excess_mass: excess,
        delta_weight: weight,
        rel_error: (excess - weight).abs() / weight,
    })
}

/// `log(e_first / e_last) / log(N_last / N_first)` over a refinement study.
pub fn empirical_order(cells: &[usize], errors: &[f64]) -> Option<f64> {
    if cells.len() < 2 || cells.len() != errors.len() {
        return None;
    }
    let (n0, n1) = (cells[0] as f64, *cells.last()? as f64);
    let (e0, e1) = (errors[0], *errors.last()?);
    Some((e0 / e1).ln() / (n1 / n0).ln())
}

/// True if every segment of `sol` is classical (no delta, no vacuum).
pub fn is_classical(sol: &RiemannSolution) -> bool {
    !sol.segments.iter().any(|s| matches!(s.kind, SegmentKind::DeltaShock { .. } | SegmentKind::Vacuum))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(cells: usize, scheme: Scheme) -> GridConfig {
        GridConfig { x_lo: -1.0, x_hi: 1.0, cells, cfl: 0.8, t_end: 0.2, scheme }
    }

    #[test]
    fn grid_validation() {
        assert!(grid(100, Scheme::LaxFriedrichs).validate().is_ok());
        assert!(grid(9, Scheme::LaxFriedrichs).validate().is_err());
        assert!(GridConfig { cfl: 0.95, ..grid(100, Scheme::LaxFriedrichs) }.validate().is_err());
        assert!(GridConfig { x_lo: 0.1, ..grid(100, Scheme::LaxFriedrichs) }.validate().is_err());
    }

    #[test]
    fn constant_data_stays_constant() {
        let p = PressureParams::ecg(0.5, 0.5, 2.0, 0.5).unwrap();
        let s = State::new(1.3, 0.4);
        for scheme in [Scheme::GodunovExact, Scheme::LaxFriedrichs] {
            let snap = evolve(&p, s, s, &grid(50, scheme)).unwrap();
            assert!(snap.rho.iter().all(|&r| r == 1.3));
            assert!(snap.momentum.iter().all(|&m| m == s.momentum()));
        }
    }

    #[test]
    fn projected_exact_solution_has_zero_error() {
        let p = PressureParams::ecg(0.5, 0.5, 2.0, 0.5).unwrap();
        let (l, r) = (State::new(1.0, 0.0), State::new(2.0, -0.5));
        let sol = solve(&p, l, r).unwrap();
        let g = grid(64, Scheme::GodunovExact);
        let (rho, momentum) = exact_cell_averages(&sol, &g, g.t_end).unwrap();
        let snap = FieldSnapshot {
            time: g.t_end,
            grid: g,
            model: p,
            centers: (0..g.cells).map(|i| g.center(i)).collect(),
            rho,
            momentum,
            diagnostics: FvDiagnostics::default(),
        };
        assert_eq!(l1_error(&snap, &sol).unwrap(), (0.0, 0.0));
    }

    #[test]
    fn delta_comparison_is_rejected() {
        let (l, r) = (State::new(1.0, 1.0), State::new(1.0, -1.0));
        let p = PressureParams::transport();
        let sol = solve(&p, l, r).unwrap();
        let g = GridConfig { t_end: 0.1, ..grid(50, Scheme::LaxFriedrichs) };
        let snap = evolve(&p, l, r, &g).unwrap();
        assert!(matches!(l1_error(&snap, &sol), Err(Error::UnsupportedComparison(_))));
    }

    #[test]
    fn small_domain_is_rejected() {
        let p = PressureParams::ecg(0.5, 0.5, 2.0, 0.5).unwrap();
        let g = GridConfig { t_end: 5.0, ..grid(50, Scheme::LaxFriedrichs) };
        let err = evolve(&p, State::new(1.0, 0.0), State::new(1.0, 3.0), &g).unwrap_err();
        assert!(matches!(err, Error::DomainTooSmall(_)));
    }

    #[test]
    fn godunov_conserves_and_respects_cfl() {
        let p = PressureParams::ecg(0.5, 0.5, 2.0, 0.5).unwrap();
        let g = grid(100, Scheme::GodunovExact);
        let snap = evolve(&p, State::new(1.0, 0.0), State::new(2.0, -0.5), &g).unwrap();
        let d = snap.diagnostics;
        assert!(d.mass_defect_rel <= 1e-12 && d.momentum_defect_rel <= 1e-12, "{d:?}");
        assert!(d.max_cfl <= g.cfl * (1.0 + 1e-12));
        assert!(((d.final_mass - d.expected_mass) / d.expected_mass).abs() <= 1e-12);
    }

    #[test]
    fn godunov_falls_back_on_delta_interfaces() {
        let p = PressureParams::gcg(0.01, 1.0).unwrap();
        let g = GridConfig { t_end: 0.1, ..grid(50, Scheme::GodunovExact) };
        let snap = evolve(&p, State::new(1.0, 1.0), State::new(1.0, -1.0), &g).unwrap();
        assert!(snap.diagnostics.lf_fallbacks > 0);
    }

    #[test]
    fn order_formula() {
        assert_eq!(empirical_order(&[100, 800], &[8.0, 1.0]), Some(1.0));
        assert_eq!(empirical_order(&[100], &[1.0]), None);
    }
}

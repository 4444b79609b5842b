//! Flux-approximation limits. Follows ECG Riemann solutions along parameter
//! schedules `A, B -> 0` (towards pressureless transport) and `A -> 0` at
//! fixed `B` (towards the generalized Chaplygin gas) and compares what the
//! solver produces with the analytic limit quantities.
//!
//! Convergence is judged by a monotonically decreasing error tail plus a
//! final threshold, never by a rate.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::models::{ModelTag, PressureParams, State};
use crate::solver::{gcg_delta, sample, solve_ecg, transport_delta, Region, RiemannSolution, SegmentKind};
use crate::waves::{classify_gcg, gcg_entropy_window, gcg_sdelta_gap, RegionEcg, RegionGcg};

/// Errors at or below this are indistinguishable from rounding; an error
/// sequence sitting on this floor still counts as non-increasing.
const NOISE_FLOOR: f64 = 1e-10;

/// Number of trailing points over which monotone decrease is required.
const TAIL: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScheduleMode {
    /// `A, B -> 0` together.
    BothVanish,
    /// `A -> 0` with `B` held fixed.
    AVanishes,
}

impl ScheduleMode {
    pub fn default_tolerance(self) -> f64 {
        match self {
            ScheduleMode::BothVanish => 1e-2,
            ScheduleMode::AVanishes => 1e-3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Schedule {
    pub mode: ScheduleMode,
    /// `(A, B)` pairs in schedule order.
    pub points: Vec<(f64, f64)>,
    pub n: f64,
    pub alpha: f64,
}

impl Schedule {
    pub fn new(mode: ScheduleMode, points: Vec<(f64, f64)>, n: f64, alpha: f64) -> Result<Self> {
        let s = Schedule { mode, points, n, alpha };
        s.validate()?;
        Ok(s)
    }

    /// `A = B = 10^-k` for `k` in `k_from..=k_to`.
    pub fn both_vanish_decades(k_from: i32, k_to: i32, n: f64, alpha: f64) -> Result<Self> {
        let pts = (k_from..=k_to).map(|k| (10f64.powi(-k), 10f64.powi(-k))).collect();
        Schedule::new(ScheduleMode::BothVanish, pts, n, alpha)
    }

    /// `A = 10^-k` for `k` in `k_from..=k_to` at fixed `B`.
    pub fn a_vanishes_decades(b: f64, k_from: i32, k_to: i32, n: f64, alpha: f64) -> Result<Self> {
        let pts = (k_from..=k_to).map(|k| (10f64.powi(-k), b)).collect();
        Schedule::new(ScheduleMode::AVanishes, pts, n, alpha)
    }

    pub fn validate(&self) -> Result<()> {
        let err = |index: usize, reason: String| {
            let (a, b) = self.points.get(index).copied().unwrap_or((f64::NAN, f64::NAN));
            Err(Error::Schedule { index, a, b, reason })
        };
        if self.points.is_empty() {
            return err(0, "schedule has no points".into());
        }
        for (i, &(a, b)) in self.points.iter().enumerate() {
            if let Err(e) = PressureParams::raw(ModelTag::Ecg, a, b, self.n, self.alpha).validate() {
                return err(i, e.to_string());
            }
        }
        for (i, w) in self.points.windows(2).enumerate() {
            let ((a0, b0), (a1, b1)) = (w[0], w[1]);
            if a1 >= a0 {
                return err(i + 1, "A must strictly decrease".into());
            }
            match self.mode {
                ScheduleMode::BothVanish if b1 >= b0 => return err(i + 1, "B must strictly decrease".into()),
                ScheduleMode::AVanishes if b1 != b0 => return err(i + 1, "B must stay fixed".into()),
                _ => {}
            }
        }
        Ok(())
    }

    fn params(&self, i: usize) -> Result<PressureParams> {
        let (a, b) = self.points[i];
        PressureParams::ecg(a, b, self.n, self.alpha)
    }
}

/// Per-point observations. `sigma1`/`sigma2` are the outer speeds of the two
/// waves (shock speeds, or the outer fan edges `lambda_1(left)`,
/// `lambda_2(right)`); `inner1`/`inner2` the speeds next to the intermediate
/// state (equal to the shock speed for shocks).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "B")]
    pub b: f64,
    pub region: RegionEcg,
    pub rho_star: f64,
    pub u_star: f64,
    pub sigma1: f64,
    pub sigma2: f64,
    pub inner1: f64,
    pub inner2: f64,
    /// `A rho_*^n`.
    pub a_rho_star_n: f64,
    /// `rho_* (sigma2 - sigma1)`.
    pub mass_proxy: f64,
    /// `rho_* u_* (sigma2 - sigma1)`.
    pub momentum_proxy: f64,
}

/// Analytic limit values. Absent entries do not apply to the sweep kind.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct SweepTargets {
    /// Delta-shock speed of the limit problem.
    pub sigma: Option<f64>,
    /// `sigma [rho] - [rho u]`.
    pub weight_target_1: Option<f64>,
    /// `sigma [rho u] - [rho u^2 + P_limit]`.
    pub weight_target_2: Option<f64>,
    /// The two targets above divided by `sqrt(1 + sigma^2)`.
    pub w1_rate: Option<f64>,
    pub w2_rate: Option<f64>,
    /// Limit of `A rho_*^n`.
    pub a_rho_n_limit: Option<f64>,
    /// Limit intermediate state (two-rarefaction branch).
    pub intermediate: Option<State>,
    /// Limit wave edges `[lambda1(left), lambda1(star), lambda2(star), lambda2(right)]`.
    pub edges: Option<[f64; 4]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceCheck {
    pub name: String,
    /// Absolute errors, one per schedule point.
    pub errors: Vec<f64>,
    pub final_error: f64,
    pub tol: f64,
    pub converged: bool,
}

impl ConvergenceCheck {
    fn new(name: &str, errors: Vec<f64>, tol: f64) -> Self {
        let final_error = errors.last().copied().unwrap_or(f64::NAN);
        let converged = tail_decreasing(&errors) && final_error <= tol;
        ConvergenceCheck { name: name.into(), errors, final_error, tol, converged }
    }

    /// A bound that must hold at the final point only.
    fn final_only(name: &str, errors: Vec<f64>, tol: f64) -> Self {
        let final_error = errors.last().copied().unwrap_or(f64::NAN);
        ConvergenceCheck { name: name.into(), errors, final_error, tol, converged: final_error <= tol }
    }
}

fn tail_decreasing(errors: &[f64]) -> bool {
    if errors.len() < TAIL || errors.iter().any(|e| !e.is_finite()) {
        return false;
    }
    errors[errors.len() - TAIL..].windows(2).all(|w| w[1] <= w[0].max(NOISE_FLOOR))
}

/// A property of the whole sequence (strict monotonicity, a bound at every
/// point).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrendCheck {
    pub name: String,
    pub values: Vec<f64>,
    pub holds: bool,
}

impl TrendCheck {
    fn strictly(name: &str, values: Vec<f64>, increasing: bool) -> Self {
        let holds = values.len() >= 2
            && values.windows(2).all(|w| if increasing { w[1] > w[0] } else { w[1] < w[0] });
        TrendCheck { name: name.into(), values, holds }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SweepKind {
    VanishingPressure,
    Vacuum,
    ToGcgDelta,
    ToGcgRarefaction,
}

/// Limit-state residuals at the final delta-branch point with `L = A rho_*^n`.
/// `consistent` pairs `B / rho_-^alpha` with `rho_- (u_- - u_*)^2`;
/// `as_written` swaps the `B` terms between the two equations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairingResiduals {
    pub l_hat: f64,
    pub consistent: [f64; 2],
    pub as_written: [f64; 2],
    pub tol: f64,
    pub holds: bool,
}

/// One sampled point of the smoke comparison between the final cavitation
/// profile and the transport vacuum solution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileSample {
    pub xi: f64,
    pub rho: f64,
    pub u: f64,
    pub rho_limit: f64,
    pub u_limit: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub kind: SweepKind,
    pub left: State,
    pub right: State,
    pub schedule: Schedule,
    pub records: Vec<SweepRecord>,
    pub targets: SweepTargets,
    pub trends: Vec<TrendCheck>,
    pub checks: Vec<ConvergenceCheck>,
    pub pairing: Option<PairingResiduals>,
    pub profile: Vec<ProfileSample>,
    pub all_converged: bool,
}

impl SweepReport {
    pub fn check(&self, name: &str) -> Option<&ConvergenceCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn trend(&self, name: &str) -> Option<&TrendCheck> {
        self.trends.iter().find(|c| c.name == name)
    }

    fn finish(mut self) -> Self {
        self.all_converged = self.trends.iter().all(|t| t.holds)
            && self.checks.iter().all(|c| c.converged)
            && self.pairing.map_or(true, |p| p.holds);
        self
    }
}

fn require_compression(left: State, right: State) -> Result<()> {
    if !(left.u > right.u) {
        return Err(Error::NotDeltaCase(format!("needs u- > u+, got u- = {}, u+ = {}", left.u, right.u)));
    }
    Ok(())
}

fn jumps(left: State, right: State) -> (f64, f64, f64) {
    (
        right.rho - left.rho,
        right.momentum() - left.momentum(),
        right.rho * right.u * right.u - left.rho * left.u * left.u,
    )
}

/// Transport delta-shock data: `(sigma, w1_rate, w2_rate, rate1, rate2)`,
/// where `rate1 = sigma [rho] - [rho u]`, `rate2 = sigma [rho u] - [rho u^2]`
/// and the `w` rates are those divided by `sqrt(1 + sigma^2)`.
pub fn target_transport_delta(left: State, right: State) -> Result<(f64, f64, f64, f64, f64)> {
    require_compression(left, right)?;
    let sigma = transport_delta(left, right).sigma;
    let (jr, jm, jf) = jumps(left, right);
    let rate1 = sigma * jr - jm;
    let rate2 = sigma * jm - jf;
    let norm = (1.0 + sigma * sigma).sqrt();
    Ok((sigma, rate1 / norm, rate2 / norm, rate1, rate2))
}

/// Limit of `A rho_*^n` as `A, B -> 0`:
/// `rho_- rho_+ (u_- - u_+)^2 / (sqrt(rho_-) + sqrt(rho_+))^2`.
pub fn target_a_rho_n(left: State, right: State) -> Result<f64> {
    if left.u < right.u {
        return Err(Error::NotDeltaCase(format!("needs u- >= u+, got u- = {}, u+ = {}", left.u, right.u)));
    }
    let du = left.u - right.u;
    let s = left.rho.sqrt() + right.rho.sqrt();
    Ok(left.rho * right.rho * du * du / (s * s))
}

/// Above this `A` the ECG solution for region-V data may stop being S1S2.
/// `+inf` when the densities agree.
pub fn threshold_a0(left: State, right: State, b: f64, n: f64, alpha: f64) -> Result<f64> {
    let gcg = PressureParams::gcg(b, alpha)?;
    if !(gcg_sdelta_gap(&gcg, left, right) > 0.0) {
        return Err(Error::Precondition("data must lie strictly inside the delta-shock region".into()));
    }
    let (rl, rr) = (left.rho, right.rho);
    if rl == rr {
        return Ok(f64::INFINITY);
    }
    let du = right.u - left.u;
    let chap = b * (1.0 / rr - 1.0 / rl) * (rr.powf(-alpha) - rl.powf(-alpha));
    Ok(rr * rl * (du * du - chap) / ((rr - rl) * (rr.powf(n) - rl.powf(n))))
}

/// `(n-1)^2 (u_+ - u_-)^2 / (4 n (rho_+^{(n-1)/2} - rho_-^{(n-1)/2})^2)`;
/// `+inf` when `n = 1` or the densities agree.
pub fn threshold_a1(left: State, right: State, n: f64) -> Result<f64> {
    if !(right.u > left.u) {
        return Err(Error::Precondition(format!("needs u+ > u-, got u- = {}, u+ = {}", left.u, right.u)));
    }
    if !(n >= 1.0) {
        return Err(Error::Precondition(format!("needs n >= 1, got {n}")));
    }
    if n == 1.0 {
        log::warn!("no two-rarefaction threshold is available for n = 1; using +inf");
        return Ok(f64::INFINITY);
    }
    if left.rho == right.rho {
        return Ok(f64::INFINITY);
    }
    let h = 0.5 * (n - 1.0);
    let d = right.rho.powf(h) - left.rho.powf(h);
    let du = right.u - left.u;
    Ok((n - 1.0).powi(2) * du * du / (4.0 * n * d * d))
}

/// Limit delta shock of the A -> 0 sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GcgDeltaTarget {
    pub sigma_b: f64,
    pub weight_rate: f64,
    /// `(u_+ + sqrt(alpha B) rho_+^{-k}, u_- - sqrt(alpha B) rho_-^{-k})`.
    pub window: (f64, f64),
    pub in_window: bool,
    /// Residual of `sigma` in the quadratic obtained by eliminating `L`.
    pub quadratic_residual: f64,
}

pub fn target_gcg_delta(left: State, right: State, b: f64, alpha: f64) -> Result<GcgDeltaTarget> {
    let p = PressureParams::gcg(b, alpha)?;
    left.check_positive()?;
    right.check_positive()?;
    if !(gcg_sdelta_gap(&p, left, right) >= 0.0) {
        return Err(Error::NotDeltaCase("data outside the delta-shock region".into()));
    }
    let d = gcg_delta(&p, left, right);
    let window = gcg_entropy_window(&p, left, right);
    let s = d.sigma;
    let (rl, ul, rr, ur) = (left.rho, left.u, right.rho, right.u);
    let quadratic_residual = ((rr - rl) * s * s - 2.0 * (rr * ur - rl * ul) * s + rr * ur * ur - rl * ul * ul
        - b * (rr.powf(-alpha) - rl.powf(-alpha)))
    .abs();
    Ok(GcgDeltaTarget {
        sigma_b: s,
        weight_rate: d.weight_rate,
        window,
        in_window: window.0 < s && s < window.1,
        quadratic_residual,
    })
}

fn record_from(sol: &RiemannSolution, a: f64, b: f64, n: f64) -> Result<SweepRecord> {
    let region = match sol.region {
        Region::Ecg(r) => r,
        other => return Err(Error::Internal(format!("unexpected region {other} for an ECG solution"))),
    };
    let star = sol.intermediate.ok_or_else(|| Error::Internal("classical solution without intermediate state".into()))?;
    let (sigma1, sigma2) = sol.outer_speeds().ok_or_else(|| Error::Internal("solution has no waves".into()))?;
    let waves: Vec<_> = sol.waves().collect();
    let inner1 = waves.first().map(|w| w.xi_hi).unwrap_or(sigma1);
    let inner2 = waves.last().map(|w| w.xi_lo).unwrap_or(sigma2);
    let width = sigma2 - sigma1;
    Ok(SweepRecord {
        a,
        b,
        region,
        rho_star: star.rho,
        u_star: star.u,
        sigma1,
        sigma2,
        inner1,
        inner2,
        a_rho_star_n: a * star.rho.powf(n),
        mass_proxy: star.rho * width,
        momentum_proxy: star.rho * star.u * width,
    })
}

/// Solves every schedule point (in parallel, results in schedule order) and
/// requires the expected wave pattern at each.
fn run_points(left: State, right: State, sched: &Schedule, expected: RegionEcg) -> Result<Vec<(RiemannSolution, SweepRecord)>> {
    let results: Vec<Result<(RiemannSolution, SweepRecord)>> = (0..sched.points.len())
        .into_par_iter()
        .map(|i| {
            let p = sched.params(i)?;
            let sol = solve_ecg(&p, left, right)?;
            let rec = record_from(&sol, p.a, p.b, p.n)?;
            if rec.region != expected {
                return Err(Error::Schedule {
                    index: i,
                    a: p.a,
                    b: p.b,
                    reason: format!("wave pattern is {} but the sweep needs {}", rec.region, expected),
                });
            }
            Ok((sol, rec))
        })
        .collect();
    results.into_iter().collect()
}

fn require_mode(sched: &Schedule, mode: ScheduleMode) -> Result<()> {
    sched.validate()?;
    if sched.mode != mode {
        return Err(Error::Precondition(format!("sweep needs a {mode:?} schedule, got {:?}", sched.mode)));
    }
    Ok(())
}

fn column(records: &[SweepRecord], f: impl Fn(&SweepRecord) -> f64) -> Vec<f64> {
    records.iter().map(f).collect()
}

fn errors_to(records: &[SweepRecord], target: f64, f: impl Fn(&SweepRecord) -> f64) -> Vec<f64> {
    records.iter().map(|r| (f(r) - target).abs()).collect()
}

/// `A, B -> 0` on compressive data: both shocks merge into a delta shock.
pub fn run_vanishing_pressure_sweep(left: State, right: State, sched: &Schedule, tol: f64) -> Result<SweepReport> {
    require_mode(sched, ScheduleMode::BothVanish)?;
    let pts = run_points(left, right, sched, RegionEcg::S1S2)?;
    let records: Vec<SweepRecord> = pts.into_iter().map(|(_, r)| r).collect();
    let (sigma, w1, w2, rate1, rate2) = target_transport_delta(left, right)?;
    let limit = target_a_rho_n(left, right)?;

    let speed_gap = column(&records, |r| {
        let v = [r.u_star, r.sigma1, r.sigma2];
        let max = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let min = v.iter().cloned().fold(f64::INFINITY, f64::min);
        max - min
    });
    let report = SweepReport {
        kind: SweepKind::VanishingPressure,
        left,
        right,
        schedule: sched.clone(),
        targets: SweepTargets {
            sigma: Some(sigma),
            weight_target_1: Some(rate1),
            weight_target_2: Some(rate2),
            w1_rate: Some(w1),
            w2_rate: Some(w2),
            a_rho_n_limit: Some(limit),
            ..Default::default()
        },
        trends: vec![TrendCheck::strictly("rho_star_increasing", column(&records, |r| r.rho_star), true)],
        checks: vec![
            ConvergenceCheck::new("u_star_to_sigma", errors_to(&records, sigma, |r| r.u_star), tol),
            ConvergenceCheck::new("sigma1_to_sigma", errors_to(&records, sigma, |r| r.sigma1), tol),
            ConvergenceCheck::new("sigma2_to_sigma", errors_to(&records, sigma, |r| r.sigma2), tol),
            ConvergenceCheck::new("a_rho_n_to_limit", errors_to(&records, limit, |r| r.a_rho_star_n), tol),
            ConvergenceCheck::new("mass_proxy_to_target", errors_to(&records, rate1, |r| r.mass_proxy), tol),
            ConvergenceCheck::new("momentum_proxy_to_target", errors_to(&records, rate2, |r| r.momentum_proxy), tol),
            ConvergenceCheck::final_only("speeds_share_limit", speed_gap, 2.0 * tol),
        ],
        pairing: None,
        profile: Vec::new(),
        records,
        all_converged: false,
    };
    Ok(report.finish())
}

/// `A, B -> 0` on expansive data: the intermediate state cavitates.
pub fn run_vacuum_sweep(left: State, right: State, sched: &Schedule, tol: f64) -> Result<SweepReport> {
    require_mode(sched, ScheduleMode::BothVanish)?;
    let pts = run_points(left, right, sched, RegionEcg::R1R2)?;
    let last = pts.last().map(|(s, _)| s.clone());
    let records: Vec<SweepRecord> = pts.into_iter().map(|(_, r)| r).collect();

    let mut profile = Vec::new();
    if let Some(sol) = last {
        let (ul, ur) = (left.u, right.u);
        for j in 0..=10 {
            let xi = ul - 1.0 + j as f64 * (ur - ul + 2.0) / 10.0;
            let s = sample(&sol, xi)?;
            let (rho_limit, u_limit) = if xi < ul {
                (left.rho, ul)
            } else if xi > ur {
                (right.rho, ur)
            } else {
                (0.0, xi)
            };
            profile.push(ProfileSample { xi, rho: s.state.rho, u: s.state.u, rho_limit, u_limit });
        }
    }

    let report = SweepReport {
        kind: SweepKind::Vacuum,
        left,
        right,
        schedule: sched.clone(),
        targets: SweepTargets { edges: Some([left.u, left.u, right.u, right.u]), ..Default::default() },
        trends: vec![TrendCheck::strictly("rho_star_decreasing", column(&records, |r| r.rho_star), false)],
        checks: vec![
            ConvergenceCheck::new("rho_star_to_zero", column(&records, |r| r.rho_star), tol),
            ConvergenceCheck::new("lambda1_edge_to_u_minus", errors_to(&records, left.u, |r| r.sigma1), tol),
            ConvergenceCheck::new("lambda2_edge_to_u_plus", errors_to(&records, right.u, |r| r.sigma2), tol),
        ],
        pairing: None,
        profile,
        records,
        all_converged: false,
    };
    Ok(report.finish())
}

/// Limit intermediate state of the two-rarefaction branch:
/// `rho_*^{-k} = (alpha+1)(u_+ - u_-)/(4 sqrt(alpha B)) + (rho_+^{-k} + rho_-^{-k})/2`,
/// `u_* = (u_+ + u_-)/2 + sqrt(alpha B)/(alpha+1) (rho_+^{-k} - rho_-^{-k})`,
/// `k = (alpha+1)/2`.
pub fn gcg_two_rarefaction_state(left: State, right: State, b: f64, alpha: f64) -> State {
    let k = 0.5 * (alpha + 1.0);
    let sab = (alpha * b).sqrt();
    let (ml, mr) = (left.rho.powf(-k), right.rho.powf(-k));
    let inv = (alpha + 1.0) * (right.u - left.u) / (4.0 * sab) + 0.5 * (mr + ml);
    State::new(inv.powf(-1.0 / k), 0.5 * (right.u + left.u) + sab / (alpha + 1.0) * (mr - ml))
}

/// `A -> 0` at fixed `B`: towards the GCG delta shock (region V) or the GCG
/// two-rarefaction solution (region I).
pub fn run_to_gcg_sweep(left: State, right: State, sched: &Schedule, tol: f64) -> Result<SweepReport> {
    require_mode(sched, ScheduleMode::AVanishes)?;
    let b = sched.points[0].1;
    let (n, alpha) = (sched.n, sched.alpha);
    let gcg = PressureParams::gcg(b, alpha)?;
    match classify_gcg(&gcg, left, right)? {
        RegionGcg::V => to_gcg_delta(left, right, sched, tol, b),
        RegionGcg::I => to_gcg_rarefaction(left, right, sched, tol, b, n, alpha),
        other => Err(Error::Precondition(format!(
            "A -> 0 sweeps need data in GCG region V or I, got {other}"
        ))),
    }
}

fn check_threshold(sched: &Schedule, threshold: f64, label: &str) -> Result<()> {
    for (index, &(a, b)) in sched.points.iter().enumerate() {
        if a >= threshold {
            return Err(Error::Schedule { index, a, b, reason: format!("A is not below {label} = {threshold}") });
        }
    }
    Ok(())
}

fn to_gcg_delta(left: State, right: State, sched: &Schedule, tol: f64, b: f64) -> Result<SweepReport> {
    let (n, alpha) = (sched.n, sched.alpha);
    check_threshold(sched, threshold_a0(left, right, b, n, alpha)?, "A0")?;
    let target = target_gcg_delta(left, right, b, alpha)?;
    let records: Vec<SweepRecord> = run_points(left, right, sched, RegionEcg::S1S2)?.into_iter().map(|(_, r)| r).collect();
    let s = target.sigma_b;
    let (jr, jm, jf) = jumps(left, right);
    let jchap = -b * (right.rho.powf(-alpha) - left.rho.powf(-alpha));
    let rate1 = s * jr - jm;
    let rate2 = s * jm - (jf + jchap);
    let norm = (1.0 + s * s).sqrt();

    let bound = left.rho * (left.u - right.u).powi(2);
    let last = records.last().copied().expect("validated schedule is non-empty");
    let l_hat = last.a_rho_star_n;
    let chap = |r: f64| b * r.powf(-alpha);
    let lhs_l = left.rho * (left.u - last.u_star).powi(2);
    let lhs_r = right.rho * (right.u - last.u_star).powi(2);
    let consistent = [(l_hat + chap(left.rho) - lhs_l).abs(), (l_hat + chap(right.rho) - lhs_r).abs()];
    let as_written = [(l_hat + chap(right.rho) - lhs_l).abs(), (l_hat + chap(left.rho) - lhs_r).abs()];
    let pairing_tol = 10.0 * tol;

    let report = SweepReport {
        kind: SweepKind::ToGcgDelta,
        left,
        right,
        schedule: sched.clone(),
        targets: SweepTargets {
            sigma: Some(s),
            weight_target_1: Some(rate1),
            weight_target_2: Some(rate2),
            w1_rate: Some(rate1 / norm),
            w2_rate: Some(rate2 / norm),
            ..Default::default()
        },
        trends: vec![
            TrendCheck::strictly("rho_star_increasing", column(&records, |r| r.rho_star), true),
            TrendCheck {
                name: "a_rho_n_below_bound".into(),
                values: column(&records, |r| r.a_rho_star_n),
                holds: records.iter().all(|r| r.a_rho_star_n < bound),
            },
        ],
        checks: vec![
            ConvergenceCheck::new("u_star_to_sigma", errors_to(&records, s, |r| r.u_star), tol),
            ConvergenceCheck::new("sigma1_to_sigma", errors_to(&records, s, |r| r.sigma1), tol),
            ConvergenceCheck::new("sigma2_to_sigma", errors_to(&records, s, |r| r.sigma2), tol),
            ConvergenceCheck::new("mass_proxy_to_target", errors_to(&records, rate1, |r| r.mass_proxy), tol),
            ConvergenceCheck::new("momentum_proxy_to_target", errors_to(&records, rate2, |r| r.momentum_proxy), tol),
        ],
        pairing: Some(PairingResiduals {
            l_hat,
            consistent,
            as_written,
            tol: pairing_tol,
            holds: consistent[0].max(consistent[1]) <= pairing_tol,
        }),
        profile: Vec::new(),
        records,
        all_converged: false,
    };
    Ok(report.finish())
}

fn to_gcg_rarefaction(
    left: State,
    right: State,
    sched: &Schedule,
    tol: f64,
    b: f64,
    n: f64,
    alpha: f64,
) -> Result<SweepReport> {
    check_threshold(sched, threshold_a1(left, right, n)?, "A1")?;
    let pts = run_points(left, right, sched, RegionEcg::R1R2)?;
    let records: Vec<SweepRecord> = pts.iter().map(|(_, r)| *r).collect();
    let star = gcg_two_rarefaction_state(left, right, b, alpha);
    let gcg = PressureParams::gcg(b, alpha)?;
    let edges = [
        gcg.eigenvalues(left)?.0,
        gcg.eigenvalues(star)?.0,
        gcg.eigenvalues(star)?.1,
        gcg.eigenvalues(right)?.1,
    ];
    let edge_err = column(&records, |r| {
        [r.sigma1 - edges[0], r.inner1 - edges[1], r.inner2 - edges[2], r.sigma2 - edges[3]]
            .iter()
            .fold(0.0f64, |m, e| m.max(e.abs()))
    });
    // fan segments must be present for every point, not merely recorded
    debug_assert!(pts.iter().all(|(s, _)| s.segments.iter().any(|g| matches!(g.kind, SegmentKind::RarefactionFan { .. }))));

    let report = SweepReport {
        kind: SweepKind::ToGcgRarefaction,
        left,
        right,
        schedule: sched.clone(),
        targets: SweepTargets { intermediate: Some(star), edges: Some(edges), ..Default::default() },
        trends: Vec::new(),
        checks: vec![
            ConvergenceCheck::new("rho_star_to_limit", errors_to(&records, star.rho, |r| r.rho_star), tol),
            ConvergenceCheck::new("u_star_to_limit", errors_to(&records, star.u, |r| r.u_star), tol),
            ConvergenceCheck::new("fan_edges_to_limit", edge_err, tol),
        ],
        pairing: None,
        profile: Vec::new(),
        records,
        all_converged: false,
    };
    Ok(report.finish())
}

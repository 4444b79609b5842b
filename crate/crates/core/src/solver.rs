//! Self-similar Riemann solutions in `xi = x / t` for the three models, and
//! pointwise sampling of those solutions.

use std::cell::RefCell;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::models::{ModelTag, PressureParams, State};
use crate::numerics::{expand_bracket, find_root, Direction, ToleranceConfig};
use crate::serde_inf;
use crate::waves::{
    backward_curve_u, forward_curve_u, gcg_entropy_window, gcg_sdelta_gap, lax_check, rarefaction_u,
    Curve, RegionEcg, RegionGcg, WaveFamily,
};

/// Relative density difference under which a wave is treated as absent.
const DEGENERATE_REL: f64 = 1e-8;

/// Relative slack on the Lax inequalities for the solver's own sanity check.
const LAX_SLACK: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeltaShock {
    pub sigma: f64,
    /// Velocity carried by the concentrated mass; equals `sigma`.
    pub u_delta: f64,
    /// `w(t) / t`.
    pub weight_rate: f64,
    /// Whether all characteristics on both sides run into the delta shock.
    pub satisfies_entropy: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum SegmentKind {
    Constant {
        state: State,
    },
    /// Centred fan; `left` is the state at `xi_lo` and also the anchor of the
    /// rarefaction curve, `right` the state at `xi_hi`.
    RarefactionFan {
        family: WaveFamily,
        left: State,
        right: State,
    },
    Shock {
        family: WaveFamily,
        left: State,
        right: State,
        speed: f64,
    },
    /// `family` is `None` for the transport contact.
    Contact {
        family: Option<WaveFamily>,
        left: State,
        right: State,
        speed: f64,
    },
    DeltaShock {
        left: State,
        right: State,
        delta: DeltaShock,
    },
    /// Density zero, `u = xi` inside.
    Vacuum,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WaveSegment {
    #[serde(with = "serde_inf")]
    pub xi_lo: f64,
    #[serde(with = "serde_inf")]
    pub xi_hi: f64,
    pub kind: SegmentKind,
}

impl WaveSegment {
    fn constant(xi_lo: f64, xi_hi: f64, state: State) -> Self {
        WaveSegment { xi_lo, xi_hi, kind: SegmentKind::Constant { state } }
    }

    fn jump(speed: f64, kind: SegmentKind) -> Self {
        WaveSegment { xi_lo: speed, xi_hi: speed, kind }
    }

    pub fn is_discontinuity(&self) -> bool {
        matches!(self.kind, SegmentKind::Shock { .. } | SegmentKind::Contact { .. } | SegmentKind::DeltaShock { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TransportPattern {
    Vacuum,
    Contact,
    Delta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Region {
    Ecg(RegionEcg),
    Gcg(RegionGcg),
    Transport(TransportPattern),
}

impl std::fmt::Display for Region {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Region::Ecg(r) => r.fmt(f),
            Region::Gcg(r) => r.fmt(f),
            Region::Transport(TransportPattern::Vacuum) => write!(f, "vacuum"),
            Region::Transport(TransportPattern::Contact) => write!(f, "contact"),
            Region::Transport(TransportPattern::Delta) => write!(f, "delta"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RiemannSolution {
    pub model: PressureParams,
    pub left: State,
    pub right: State,
    pub segments: Vec<WaveSegment>,
    /// `(rho_*, u_*)` between the two classical waves.
    pub intermediate: Option<State>,
    pub region: Region,
}

impl RiemannSolution {
    pub fn delta_shock(&self) -> Option<&DeltaShock> {
        self.segments.iter().find_map(|s| match &s.kind {
            SegmentKind::DeltaShock { delta, .. } => Some(delta),
            _ => None,
        })
    }

    /// The non-constant segments, left to right.
    pub fn waves(&self) -> impl Iterator<Item = &WaveSegment> {
        self.segments.iter().filter(|s| !matches!(s.kind, SegmentKind::Constant { .. }))
    }

    /// Speeds of the first and last wave: shock/contact speed, or the outer
    /// fan edge.
    pub fn outer_speeds(&self) -> Option<(f64, f64)> {
        let first = self.waves().next()?;
        let last = self.waves().last()?;
        Some((first.xi_lo, last.xi_hi))
    }
}

/// Dispatches on the model tag.
pub fn solve(p: &PressureParams, left: State, right: State) -> Result<RiemannSolution> {
    match p.model_tag {
        ModelTag::Ecg => solve_ecg(p, left, right),
        ModelTag::Gcg => solve_gcg(p, left, right),
        ModelTag::Transport => {
            p.validate()?;
            solve_transport(left, right)
        }
    }
}

fn constant_solution(p: &PressureParams, s: State, region: Region) -> RiemannSolution {
    RiemannSolution {
        model: *p,
        left: s,
        right: s,
        segments: vec![WaveSegment::constant(f64::NEG_INFINITY, f64::INFINITY, s)],
        intermediate: None,
        region,
    }
}

/// Density where the forward 1-curve from `left` meets the backward 2-curve
/// into `right`.
fn intermediate_density(p: &PressureParams, left: State, right: State) -> Result<f64> {
    let failure: RefCell<Option<Error>> = RefCell::new(None);
    // Strictly decreasing in rho; an evaluation error stops the search by
    // returning zero and is re-raised below.
    let g = |rho: f64| -> f64 {
        let v = forward_curve_u(p, WaveFamily::One, left, rho)
            .and_then(|u1| Ok(u1 - backward_curve_u(p, WaveFamily::Two, right, rho)?));
        match v {
            Ok(v) => v,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                0.0
            }
        }
    };
    let take_failure = || failure.borrow_mut().take();

    let seed = (left.rho * right.rho).sqrt();
    let g0 = g(seed);
    if let Some(e) = take_failure() {
        return Err(e);
    }
    if g0 == 0.0 {
        return Ok(seed);
    }
    let dir = if g0 > 0.0 { Direction::Up } else { Direction::Down };
    let bracket = expand_bracket(g, seed, dir);
    if let Some(e) = take_failure() {
        return Err(e);
    }
    let (lo, hi) = match bracket {
        Ok(b) => b,
        Err(Error::NoRootInRange { last }) => {
            let u = forward_curve_u(p, WaveFamily::One, left, last).unwrap_or(f64::NAN);
            return Err(Error::NumericalLimit { state: State::new(last, u) });
        }
        Err(e) => return Err(e),
    };
    if lo == hi {
        return Ok(lo);
    }
    let t = find_root(|s: f64| g(s.exp()), lo.ln(), hi.ln(), ToleranceConfig::tight())?;
    if let Some(e) = take_failure() {
        return Err(e);
    }
    Ok(t.exp())
}

fn is_degenerate(a: f64, b: f64) -> bool {
    (a - b).abs() <= DEGENERATE_REL * a.max(b)
}

/// Weak shocks get their speed from a difference quotient of nearly equal
/// states, so the Lax margins (of the order of the shock strength) can drown
/// in rounding. Accept violations at that noise level.
fn lax_within_rounding(p: &PressureParams, family: WaveFamily, from: State, to: State, speed: f64) -> Result<bool> {
    let (l1, l2) = p.eigenvalues(from)?;
    let (r1, r2) = p.eigenvalues(to)?;
    let slack = LAX_SLACK * (1.0 + speed.abs() + (l2 - l1).max(r2 - r1));
    Ok(match family {
        WaveFamily::One => speed < l1 + slack && r1 < speed + slack && speed < r2,
        WaveFamily::Two => l1 < speed && speed < l2 + slack && r2 < speed + slack,
    })
}

/// Shock speed from the mass flux `m² = [P]/[1/ρ]`, measured against the
/// state ahead of the shock (the left state for a 1-shock, the right state
/// for a 2-shock). Unlike the momentum difference quotient, this does not
/// amplify the root-finding error in the intermediate velocity when the
/// jump is weak.
fn mass_flux_speed(p: &PressureParams, family: WaveFamily, from: State, to: State) -> Result<f64> {
    if from.rho == to.rho {
        return Err(Error::DegenerateShock);
    }
    let dp = (p.pressure(from.rho)? - p.pressure(to.rho)?) / (from.rho - to.rho);
    let m = (from.rho * to.rho * dp.max(0.0)).sqrt();
    Ok(match family {
        WaveFamily::One => from.u - m / from.rho,
        WaveFamily::Two => to.u + m / to.rho,
    })
}

/// Which elementary wave a classical two-wave solution uses in each family.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Elementary {
    Rarefaction,
    Shock,
    Absent,
}

/// Builds the segments of a two-wave solution through `star`. With
/// `linear` set (pure Chaplygin), both waves are contact discontinuities.
fn classical_segments(
    p: &PressureParams,
    left: State,
    star: State,
    right: State,
    kinds: (Elementary, Elementary),
    linear: bool,
) -> Result<Vec<WaveSegment>> {
    let mut segs = Vec::with_capacity(5);
    if kinds == (Elementary::Absent, Elementary::Absent) {
        // Nearly equal states: both waves are below the resolvable strength.
        // Keep the three constant states, split at the characteristic speeds.
        let (l1, l2) = p.eigenvalues(star)?;
        return Ok(vec![
            WaveSegment::constant(f64::NEG_INFINITY, l1, left),
            WaveSegment::constant(l1, l2, star),
            WaveSegment::constant(l2, f64::INFINITY, right),
        ]);
    }
    let mut cursor = f64::NEG_INFINITY;
    let mut current = left;

    let waves = [(WaveFamily::One, left, star, kinds.0), (WaveFamily::Two, star, right, kinds.1)];
    for (family, from, to, kind) in waves {
        if kind == Elementary::Absent {
            continue;
        }
        let lam = |s: State| -> Result<f64> {
            let (l1, l2) = p.eigenvalues(s)?;
            Ok(if family == WaveFamily::One { l1 } else { l2 })
        };
        if linear {
            let speed = lam(from)?;
            segs.push(WaveSegment::constant(cursor, speed, current));
            segs.push(WaveSegment::jump(speed, SegmentKind::Contact { family: Some(family), left: from, right: to, speed }));
            cursor = speed;
        } else if kind == Elementary::Rarefaction {
            let (lo, hi) = (lam(from)?, lam(to)?);
            segs.push(WaveSegment::constant(cursor, lo, current));
            segs.push(WaveSegment { xi_lo: lo, xi_hi: hi, kind: SegmentKind::RarefactionFan { family, left: from, right: to } });
            cursor = hi;
        } else {
            let speed = mass_flux_speed(p, family, from, to)?;
            if !lax_check(p, family, from, to, speed)? && !lax_within_rounding(p, family, from, to, speed)? {
                return Err(Error::Internal(format!(
                    "{family:?}-shock from {from:?} to {to:?} at speed {speed} fails the Lax conditions"
                )));
            }
            segs.push(WaveSegment::constant(cursor, speed, current));
            segs.push(WaveSegment::jump(speed, SegmentKind::Shock { family, left: from, right: to, speed }));
            cursor = speed;
        }
        current = to;
    }
    segs.push(WaveSegment::constant(cursor, f64::INFINITY, right));
    Ok(segs)
}

/// Intermediate state and wave types of a classical solution.
fn classical_structure(
    p: &PressureParams,
    left: State,
    right: State,
) -> Result<(State, (Elementary, Elementary))> {
    let rho = intermediate_density(p, left, right)?;
    // `star` stays on the computed curves even when a wave is dropped: the
    // surviving wave's speed is then a difference quotient of states that
    // lie exactly on its curve.
    let star = State::new(rho, forward_curve_u(p, WaveFamily::One, left, rho)?);
    let first_absent = is_degenerate(rho, left.rho);
    let second_absent = is_degenerate(rho, right.rho);
    let classify = |a: f64, b: f64| if a < b { Elementary::Rarefaction } else { Elementary::Shock };
    let mut k1 = classify(rho, left.rho);
    let mut k2 = classify(rho, right.rho);
    // A vanishing wave is dropped only when the other one carries the jump.
    if first_absent && second_absent {
        k1 = Elementary::Absent;
        k2 = Elementary::Absent;
    } else if first_absent {
        k1 = Elementary::Absent;
    } else if second_absent {
        k2 = Elementary::Absent;
    }
    Ok((star, (k1, k2)))
}

fn pattern_curves(kinds: (Elementary, Elementary)) -> std::result::Result<(bool, bool), Curve> {
    match kinds {
        (Elementary::Absent, Elementary::Absent) => Err(Curve::R1),
        (Elementary::Absent, Elementary::Rarefaction) => Err(Curve::R2),
        (Elementary::Absent, _) => Err(Curve::S2),
        (Elementary::Rarefaction, Elementary::Absent) => Err(Curve::R1),
        (_, Elementary::Absent) => Err(Curve::S1),
        (a, b) => Ok((a == Elementary::Rarefaction, b == Elementary::Rarefaction)),
    }
}

pub fn solve_ecg(p: &PressureParams, left: State, right: State) -> Result<RiemannSolution> {
    if p.model_tag != ModelTag::Ecg {
        return Err(Error::UnsupportedModel(p.model_tag));
    }
    p.validate()?;
    left.check_positive()?;
    right.check_positive()?;
    if left == right {
        return Ok(constant_solution(p, left, Region::Ecg(RegionEcg::OnBoundary(Curve::R1))));
    }
    let (star, kinds) = classical_structure(p, left, right)?;
    let region = match pattern_curves(kinds) {
        Err(c) => RegionEcg::OnBoundary(c),
        Ok((true, true)) => RegionEcg::R1R2,
        Ok((true, false)) => RegionEcg::R1S2,
        Ok((false, true)) => RegionEcg::S1R2,
        Ok((false, false)) => RegionEcg::S1S2,
    };
    Ok(RiemannSolution {
        model: *p,
        left,
        right,
        segments: classical_segments(p, left, star, right, kinds, false)?,
        intermediate: Some(star),
        region: Region::Ecg(region),
    })
}

/// Delta shock of the generalized Chaplygin gas for region-V data.
pub(crate) fn gcg_delta(p: &PressureParams, left: State, right: State) -> DeltaShock {
    let (rl, ul, rr, ur) = (left.rho, left.u, right.rho, right.u);
    let (sigma, weight_rate) = if rl == rr {
        (0.5 * (ul + ur), rl * ul - rr * ur)
    } else {
        let chap = |r: f64| p.b * r.powf(-p.alpha);
        let du = ur - ul;
        let w = (rr * rl * (du * du - (1.0 / rr - 1.0 / rl) * (chap(rr) - chap(rl)))).max(0.0).sqrt();
        // sigma is the root of a s^2 - 2 b s + c = 0 with a s - b = w >= 0
        let a = rr - rl;
        let b = rr * ur - rl * ul;
        let c = rr * ur * ur - rl * ul * ul - (chap(rr) - chap(rl));
        let sigma = if b >= 0.0 { (b + w) / a } else { c / (b - w) };
        (sigma, w)
    };
    let (lo, hi) = gcg_entropy_window(p, left, right);
    DeltaShock { sigma, u_delta: sigma, weight_rate, satisfies_entropy: lo < sigma && sigma < hi }
}

fn delta_solution(p: &PressureParams, left: State, right: State, delta: DeltaShock, region: Region) -> RiemannSolution {
    let s = delta.sigma;
    RiemannSolution {
        model: *p,
        left,
        right,
        segments: vec![
            WaveSegment::constant(f64::NEG_INFINITY, s, left),
            WaveSegment::jump(s, SegmentKind::DeltaShock { left, right, delta }),
            WaveSegment::constant(s, f64::INFINITY, right),
        ],
        intermediate: None,
        region,
    }
}

pub fn solve_gcg(p: &PressureParams, left: State, right: State) -> Result<RiemannSolution> {
    if p.model_tag != ModelTag::Gcg {
        return Err(Error::UnsupportedModel(p.model_tag));
    }
    p.validate()?;
    left.check_positive()?;
    right.check_positive()?;
    if left == right {
        return Ok(constant_solution(p, left, Region::Gcg(RegionGcg::OnBoundary(Curve::R1))));
    }
    if gcg_sdelta_gap(p, left, right) >= 0.0 {
        let delta = gcg_delta(p, left, right);
        if !delta.satisfies_entropy {
            log::debug!("delta shock at speed {} lies outside the sqrt(alpha B) entropy window", delta.sigma);
        }
        return Ok(delta_solution(p, left, right, delta, Region::Gcg(RegionGcg::V)));
    }
    let (star, kinds) = classical_structure(p, left, right)?;
    let region = match pattern_curves(kinds) {
        Err(c) => RegionGcg::OnBoundary(c),
        Ok((true, true)) => RegionGcg::I,
        Ok((true, false)) => RegionGcg::II,
        Ok((false, true)) => RegionGcg::III,
        Ok((false, false)) => RegionGcg::IV,
    };
    Ok(RiemannSolution {
        model: *p,
        left,
        right,
        segments: classical_segments(p, left, star, right, kinds, p.alpha == 1.0)?,
        intermediate: Some(star),
        region: Region::Gcg(region),
    })
}

/// Delta shock of the pressureless system (requires `u_- > u_+`).
pub(crate) fn transport_delta(left: State, right: State) -> DeltaShock {
    let (sl, sr) = (left.rho.sqrt(), right.rho.sqrt());
    let sigma = (sl * left.u + sr * right.u) / (sl + sr);
    let weight_rate = sl * sr * (left.u - right.u);
    DeltaShock { sigma, u_delta: sigma, weight_rate, satisfies_entropy: right.u < sigma && sigma < left.u }
}

pub fn solve_transport(left: State, right: State) -> Result<RiemannSolution> {
    let p = PressureParams::transport();
    left.check_positive()?;
    right.check_positive()?;
    if left == right {
        return Ok(constant_solution(&p, left, Region::Transport(TransportPattern::Contact)));
    }
    let (ul, ur) = (left.u, right.u);
    if ul < ur {
        return Ok(RiemannSolution {
            model: p,
            left,
            right,
            segments: vec![
                WaveSegment::constant(f64::NEG_INFINITY, ul, left),
                WaveSegment { xi_lo: ul, xi_hi: ur, kind: SegmentKind::Vacuum },
                WaveSegment::constant(ur, f64::INFINITY, right),
            ],
            intermediate: None,
            region: Region::Transport(TransportPattern::Vacuum),
        });
    }
    if ul == ur {
        return Ok(RiemannSolution {
            model: p,
            left,
            right,
            segments: vec![
                WaveSegment::constant(f64::NEG_INFINITY, ul, left),
                WaveSegment::jump(ul, SegmentKind::Contact { family: None, left, right, speed: ul }),
                WaveSegment::constant(ul, f64::INFINITY, right),
            ],
            intermediate: None,
            region: Region::Transport(TransportPattern::Contact),
        });
    }
    let delta = transport_delta(left, right);
    if !delta.satisfies_entropy {
        return Err(Error::Internal(format!("transport delta shock speed {} violates u+ < sigma < u-", delta.sigma)));
    }
    Ok(delta_solution(&p, left, right, delta, Region::Transport(TransportPattern::Delta)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub state: State,
    pub in_vacuum: bool,
    pub on_delta: bool,
    pub on_shock: bool,
}

impl Sample {
    fn plain(state: State) -> Self {
        Sample { state, in_vacuum: false, on_delta: false, on_shock: false }
    }
}

/// State inside a fan at speed `xi`.
fn sample_fan(p: &PressureParams, family: WaveFamily, anchor: State, end: State, xi: f64) -> Result<State> {
    let curve_state = |rho: f64| -> Result<State> { Ok(State::new(rho, rarefaction_u(p, family, anchor, rho)?)) };
    let lam = |s: State| -> Result<f64> {
        let (l1, l2) = p.eigenvalues(s)?;
        Ok(if family == WaveFamily::One { l1 } else { l2 })
    };
    if xi == lam(anchor)? {
        return Ok(anchor);
    }
    if xi == lam(end)? {
        return Ok(end);
    }
    let failure: RefCell<Option<Error>> = RefCell::new(None);
    let f = |rho: f64| match curve_state(rho).and_then(lam) {
        Ok(l) => l - xi,
        Err(e) => {
            failure.borrow_mut().get_or_insert(e);
            0.0
        }
    };
    let (lo, hi) = if anchor.rho < end.rho { (anchor.rho, end.rho) } else { (end.rho, anchor.rho) };
    let rho = find_root(f, lo, hi, ToleranceConfig::tight())?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    curve_state(rho)
}

/// Evaluates the solution at `xi = x / t`. Exactly at a discontinuity the
/// state on its left is returned, flagged.
pub fn sample(sol: &RiemannSolution, xi: f64) -> Result<Sample> {
    for seg in sol.segments.iter().filter(|s| s.is_discontinuity()) {
        if xi == seg.xi_lo {
            let mut s = match seg.kind {
                SegmentKind::Shock { left, .. } | SegmentKind::Contact { left, .. } | SegmentKind::DeltaShock { left, .. } => {
                    Sample::plain(left)
                }
                _ => unreachable!("filtered to discontinuities"),
            };
            if matches!(seg.kind, SegmentKind::DeltaShock { .. }) {
                s.on_delta = true;
            } else {
                s.on_shock = true;
            }
            return Ok(s);
        }
    }
    for seg in sol.segments.iter().filter(|s| !s.is_discontinuity()) {
        if !(seg.xi_lo <= xi && xi <= seg.xi_hi) {
            continue;
        }
        return Ok(match seg.kind {
            SegmentKind::Constant { state } => Sample::plain(state),
            SegmentKind::Vacuum => Sample { state: State::new(0.0, xi), in_vacuum: true, on_delta: false, on_shock: false },
            SegmentKind::RarefactionFan { family, left, right } => {
                Sample::plain(sample_fan(&sol.model, family, left, right, xi)?)
            }
            _ => unreachable!("filtered to continuous segments"),
        });
    }
    Err(Error::Domain(format!("xi = {xi} is not covered by the solution")))
}

/// Mass carried by the delta shock at time `t`.
pub fn delta_weight_at(sol: &RiemannSolution, t: f64) -> Result<f64> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::Domain(format!("time must be finite and non-negative, got {t}")));
    }
    let d = sol.delta_shock().ok_or(Error::NoDeltaShock)?;
    Ok(d.weight_rate * t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::waves::{classify_ecg, classify_gcg, rh_residuals, shock_speed};
    use proptest::prelude::*;

    fn ecg_ref() -> PressureParams {
        PressureParams::ecg(0.1, 0.1, 2.0, 0.5).unwrap()
    }

    fn shocks(sol: &RiemannSolution) -> Vec<(WaveFamily, State, State, f64)> {
        sol.segments
            .iter()
            .filter_map(|s| match s.kind {
                SegmentKind::Shock { family, left, right, speed } => Some((family, left, right, speed)),
                _ => None,
            })
            .collect()
    }

    fn fans(sol: &RiemannSolution) -> Vec<(WaveFamily, State, State)> {
        sol.segments
            .iter()
            .filter_map(|s| match s.kind {
                SegmentKind::RarefactionFan { family, left, right } => Some((family, left, right)),
                _ => None,
            })
            .collect()
    }

    /// Structural invariants every solution must satisfy.
    fn check_structure(sol: &RiemannSolution) {
        let segs = &sol.segments;
        assert_eq!(segs.first().unwrap().xi_lo, f64::NEG_INFINITY);
        assert_eq!(segs.last().unwrap().xi_hi, f64::INFINITY);
        for w in segs.windows(2) {
            assert_eq!(w[0].xi_hi, w[1].xi_lo, "segments must tile");
        }
        for s in segs {
            assert!(s.xi_lo <= s.xi_hi);
            if !s.is_discontinuity() && s.xi_lo.is_finite() && s.xi_hi.is_finite() {
                assert!(s.xi_lo < s.xi_hi, "empty continuous segment {s:?}");
            }
        }
        let waves: Vec<_> = sol.waves().collect();
        for w in waves.windows(2) {
            assert!(w[0].xi_hi < w[1].xi_lo, "wave speeds must increase: {w:?}");
        }
        assert_eq!(sample(sol, -1e10).unwrap().state, sol.left);
        assert_eq!(sample(sol, 1e10).unwrap().state, sol.right);
    }

    #[test]
    fn constant_data_single_segment() {
        let s = State::new(1.0, 0.0);
        let sol = solve_ecg(&ecg_ref(), s, s).unwrap();
        assert_eq!(sol.segments.len(), 1);
        assert!(matches!(sol.segments[0].kind, SegmentKind::Constant { .. }));
        for p in [PressureParams::gcg(1.0, 1.0).unwrap(), PressureParams::transport()] {
            assert_eq!(solve(&p, s, s).unwrap().segments.len(), 1);
        }
    }

    #[test]
    fn symmetric_compression_is_two_shocks() {
        let sol = solve_ecg(&ecg_ref(), State::new(1.0, 1.0), State::new(1.0, -1.0)).unwrap();
        assert_eq!(sol.region, Region::Ecg(RegionEcg::S1S2));
        let star = sol.intermediate.unwrap();
        assert!(star.u.abs() < 1e-12);
        // bisection oracle on the matching condition
        // sqrt(((rho-1)/rho)(0.1(rho^2-1) - 0.1(rho^-1/2 - 1))) = 1
        let h = |r: f64| ((r - 1.0) / r) * (0.1 * (r * r - 1.0) - 0.1 * (r.powf(-0.5) - 1.0)) - 1.0;
        let (mut lo, mut hi) = (1.0, 100.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if h(mid) > 0.0 {
                hi = mid
            } else {
                lo = mid
            }
        }
        assert!((star.rho - lo).abs() < 1e-9 * lo, "rho* {} vs {}", star.rho, lo);
        let sh = shocks(&sol);
        assert_eq!(sh.len(), 2);
        for (fam, l, r, speed) in sh {
            assert!(lax_check(&sol.model, fam, l, r, speed).unwrap());
            let (a, b) = rh_residuals(&sol.model, l, r, speed).unwrap();
            assert!(a <= 1e-9 && b <= 1e-9);
        }
        check_structure(&sol);
    }

    #[test]
    fn symmetric_expansion_is_two_rarefactions() {
        let p = ecg_ref();
        let left = State::new(1.0, 0.0);
        let sol = solve_ecg(&p, left, State::new(1.0, 5.0)).unwrap();
        assert_eq!(sol.region, Region::Ecg(RegionEcg::R1R2));
        let star = sol.intermediate.unwrap();
        assert!(star.rho < 1.0);
        assert!((star.u - 2.5).abs() < 1e-10);
        // oracle: the 1-rarefaction from the left must reach u = 2.5 at rho*
        let u = rarefaction_u(&p, WaveFamily::One, left, star.rho).unwrap();
        assert!((u - 2.5).abs() < 1e-10);
        let lam = p.eigenvalues(star).unwrap().0;
        let s = sample(&sol, lam).unwrap().state;
        assert!((s.rho - star.rho).abs() < 1e-8 && (s.u - star.u).abs() < 1e-8);
        assert_eq!(fans(&sol).len(), 2);
        check_structure(&sol);
    }

    #[test]
    fn fan_interior_lies_on_characteristic() {
        let p = ecg_ref();
        let sol = solve_ecg(&p, State::new(1.0, 0.0), State::new(1.0, 5.0)).unwrap();
        let seg = sol.segments.iter().find(|s| matches!(s.kind, SegmentKind::RarefactionFan { .. })).unwrap();
        for j in 1..10 {
            let xi = seg.xi_lo + (seg.xi_hi - seg.xi_lo) * j as f64 / 10.0;
            let s = sample(&sol, xi).unwrap().state;
            assert!((p.eigenvalues(s).unwrap().0 - xi).abs() < 1e-10);
        }
    }

    #[test]
    fn gcg_region_one_matches_closed_form() {
        let p = PressureParams::gcg(1.0, 1.0).unwrap();
        let sol = solve_gcg(&p, State::new(1.0, 0.0), State::new(1.0, 3.0)).unwrap();
        assert_eq!(sol.region, Region::Gcg(RegionGcg::I));
        let star = sol.intermediate.unwrap();
        assert!((star.rho - 0.4).abs() < 1e-12 && (star.u - 1.5).abs() < 1e-12);
        // pure Chaplygin: both waves are contacts
        assert_eq!(sol.segments.iter().filter(|s| matches!(s.kind, SegmentKind::Contact { .. })).count(), 2);
        check_structure(&sol);
    }

    #[test]
    fn gcg_symmetric_delta() {
        let p = PressureParams::gcg(0.01, 1.0).unwrap();
        let sol = solve_gcg(&p, State::new(1.0, 1.0), State::new(1.0, -1.0)).unwrap();
        let d = sol.delta_shock().unwrap();
        assert_eq!(d.sigma, 0.0);
        assert_eq!(d.weight_rate, 2.0);
        assert!(d.satisfies_entropy);
        assert_eq!(delta_weight_at(&sol, 2.0).unwrap(), 4.0);
        let at = sample(&sol, 0.0).unwrap();
        assert!(at.on_delta && at.state == State::new(1.0, 1.0));
    }

    #[test]
    fn gcg_delta_satisfies_generalized_jump_conditions() {
        let p = PressureParams::gcg(0.001, 1.0).unwrap();
        let (l, r) = (State::new(2.0, 1.0), State::new(1.0, -1.0));
        let d = solve_gcg(&p, l, r).unwrap().delta_shock().copied().unwrap();
        let chap = |s: State| p.b * s.rho.powf(-p.alpha);
        let w = d.weight_rate;
        let e2 = w - (d.sigma * (r.rho - l.rho) - (r.momentum() - l.momentum()));
        let flux = |s: State| s.rho * s.u * s.u - chap(s);
        let e3 = w * d.u_delta - (d.sigma * (r.momentum() - l.momentum()) - (flux(r) - flux(l)));
        assert!(e2.abs() <= 1e-10 && e3.abs() <= 1e-10, "{e2:e} {e3:e}");
    }

    #[test]
    fn transport_examples() {
        let sol = solve_transport(State::new(1.0, 1.0), State::new(1.0, -1.0)).unwrap();
        let d = sol.delta_shock().unwrap();
        assert_eq!((d.sigma, d.weight_rate), (0.0, 2.0));
        assert_eq!(delta_weight_at(&sol, 1.0).unwrap(), 2.0);
        assert_eq!(delta_weight_at(&sol, 0.0).unwrap(), 0.0);

        let d = *solve_transport(State::new(4.0, 2.0), State::new(1.0, -1.0)).unwrap().delta_shock().unwrap();
        assert_eq!((d.sigma, d.weight_rate), (1.0, 6.0));
        assert!(d.satisfies_entropy);

        let vac = solve_transport(State::new(1.0, -1.0), State::new(1.0, 1.0)).unwrap();
        let s = sample(&vac, 0.3).unwrap();
        assert!(s.in_vacuum && s.state == State::new(0.0, 0.3));
        assert_eq!(delta_weight_at(&vac, 1.0), Err(Error::NoDeltaShock));

        let c = solve_transport(State::new(1.0, 0.5), State::new(3.0, 0.5)).unwrap();
        assert_eq!(c.region, Region::Transport(TransportPattern::Contact));
        check_structure(&c);
    }

    #[test]
    fn solution_round_trips_through_json() {
        let sol = solve_ecg(&ecg_ref(), State::new(1.0, 0.0), State::new(3.0, -0.7)).unwrap();
        let text = serde_json::to_string(&sol).unwrap();
        let back: RiemannSolution = serde_json::from_str(&text).unwrap();
        assert_eq!(back, sol);
    }

    fn ecg_params() -> impl Strategy<Value = PressureParams> {
        (0.01f64..1.0, 0.01f64..1.0, 1.0f64..=3.0, 0.05f64..=1.0)
            .prop_map(|(a, b, n, al)| PressureParams::ecg(a, b, n, al).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn random_ecg_problems_are_consistent(
            p in ecg_params(), rl in 0.1f64..5.0, ul in -3.0f64..3.0, rr in 0.1f64..5.0, ur in -3.0f64..3.0,
        ) {
            let (l, r) = (State::new(rl, ul), State::new(rr, ur));
            let sol = solve_ecg(&p, l, r).unwrap();
            check_structure(&sol);
            let region = classify_ecg(&p, l, r).unwrap();
            if !matches!(region, RegionEcg::OnBoundary(_)) {
                prop_assert_eq!(sol.region, Region::Ecg(region));
            }
            for (fam, a, b, speed) in shocks(&sol) {
                prop_assert!(lax_check(&p, fam, a, b, speed).unwrap());
                let (e1, e2) = rh_residuals(&p, a, b, speed).unwrap();
                prop_assert!(e1 <= 1e-9 && e2 <= 1e-9);
            }
            if sol.region == Region::Ecg(RegionEcg::S1S2) {
                // both jump conditions across each shock, written through rho*
                let star = sol.intermediate.unwrap();
                let s1 = shock_speed(l, star).unwrap();
                let s2 = shock_speed(star, r).unwrap();
                let (a1, b1) = rh_residuals(&p, l, star, s1).unwrap();
                let (a2, b2) = rh_residuals(&p, star, r, s2).unwrap();
                prop_assert!(a1.max(b1).max(a2).max(b2) <= 1e-9);
            }
        }

        #[test]
        fn random_gcg_problems_are_consistent(
            b in 0.01f64..2.0, alpha in 0.05f64..=1.0,
            rl in 0.1f64..5.0, ul in -3.0f64..3.0, rr in 0.1f64..5.0, ur in -3.0f64..3.0,
        ) {
            let p = PressureParams::gcg(b, alpha).unwrap();
            let (l, r) = (State::new(rl, ul), State::new(rr, ur));
            let gap = gcg_sdelta_gap(&p, l, r);
            prop_assume!(gap.abs() > 1e-3);
            let sol = solve_gcg(&p, l, r).unwrap();
            check_structure(&sol);
            let region = classify_gcg(&p, l, r).unwrap();
            if !matches!(region, RegionGcg::OnBoundary(_)) {
                prop_assert_eq!(sol.region, Region::Gcg(region));
            }
            // sampling is continuous away from the declared jumps
            let jumps: Vec<f64> = sol.segments.iter().filter(|s| s.is_discontinuity()).map(|s| s.xi_lo).collect();
            let (lo, hi) = (-12.0, 12.0);
            let n = 2000;
            let h = (hi - lo) / n as f64;
            let mut prev = sample(&sol, lo).unwrap().state;
            for i in 1..=n {
                let xi = lo + i as f64 * h;
                let cur = sample(&sol, xi).unwrap().state;
                let gap = |a: State, b: State| (a.rho - b.rho).abs() + (a.u - b.u).abs();
                if gap(cur, prev) > 1e-2 && !jumps.iter().any(|&j| j > xi - h && j <= xi) {
                    // steep but continuous profiles shrink under bisection
                    let (mut a, mut b) = (xi - h, xi);
                    let (mut sa, mut sb) = (prev, cur);
                    for _ in 0..40 {
                        let m = 0.5 * (a + b);
                        let sm = sample(&sol, m).unwrap().state;
                        if gap(sa, sm) > gap(sm, sb) { b = m; sb = sm; } else { a = m; sa = sm; }
                    }
                    prop_assert!(gap(sa, sb) < 1e-6, "unexpected jump near {}", xi);
                }
                prev = cur;
            }
        }
    }
}

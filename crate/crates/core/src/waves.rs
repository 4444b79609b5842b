//! Elementary wave curves through a phase-plane state, shock speeds, the Lax
//! admissibility test and the phase-plane region classification for the
//! ECG and GCG models.
//!
//! Naming: the *forward* `i`-curve through `from` is the set of right states
//! reachable from `from` by a single `i`-wave; the *backward* `i`-curve
//! through `to` is the set of left states from which `to` is reachable.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::models::{check_density, ModelTag, PressureParams, State};
use crate::numerics::{integrate, ToleranceConfig};

/// Absolute tolerance in `u` under which a right state counts as lying on a
/// wave curve.
pub const BOUNDARY_TOL: f64 = 1e-12;

/// Rounding noise allowed in the shock-curve radicand near its base point.
const RADICAND_CLAMP: f64 = -1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WaveFamily {
    /// Backward (left-moving) waves, `lambda_1`.
    One,
    /// Forward (right-moving) waves, `lambda_2`.
    Two,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Curve {
    R1,
    R2,
    S1,
    S2,
    /// Boundary of the GCG delta-shock region.
    SDelta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RegionEcg {
    R1R2,
    R1S2,
    S1R2,
    S1S2,
    OnBoundary(Curve),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RegionGcg {
    I,
    II,
    III,
    IV,
    V,
    OnBoundary(Curve),
}

impl std::fmt::Display for RegionEcg {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RegionEcg::R1R2 => write!(f, "R1R2"),
            RegionEcg::R1S2 => write!(f, "R1S2"),
            RegionEcg::S1R2 => write!(f, "S1R2"),
            RegionEcg::S1S2 => write!(f, "S1S2"),
            RegionEcg::OnBoundary(c) => write!(f, "boundary:{c:?}"),
        }
    }
}

impl std::fmt::Display for RegionGcg {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RegionGcg::I => write!(f, "I"),
            RegionGcg::II => write!(f, "II"),
            RegionGcg::III => write!(f, "III"),
            RegionGcg::IV => write!(f, "IV"),
            RegionGcg::V => write!(f, "V"),
            RegionGcg::OnBoundary(c) => write!(f, "boundary:{c:?}"),
        }
    }
}

fn require_pressure(p: &PressureParams) -> Result<()> {
    if p.model_tag == ModelTag::Transport {
        return Err(Error::UnsupportedModel(ModelTag::Transport));
    }
    Ok(())
}

/// `(alpha + 1) / 2`, the GCG characteristic exponent.
fn gcg_exponent(p: &PressureParams) -> f64 {
    0.5 * (p.alpha + 1.0)
}

/// `int_lo^hi sqrt(c^2(rho)) / rho d rho` by adaptive quadrature in `ln rho`.
pub fn rarefaction_integral_quadrature(p: &PressureParams, lo: f64, hi: f64) -> Result<f64> {
    check_density(lo)?;
    check_density(hi)?;
    if lo > hi {
        return Ok(-rarefaction_integral_quadrature(p, hi, lo)?);
    }
    let (an, ab, poly_exp, chap_exp) = (p.a * p.n, p.alpha * p.b, p.n - 1.0, -(p.alpha + 1.0));
    let integrand = |s: f64| {
        let mut c2 = 0.0;
        if an != 0.0 {
            c2 += an * (poly_exp * s).exp();
        }
        if ab != 0.0 {
            c2 += ab * (chap_exp * s).exp();
        }
        c2.sqrt()
    };
    integrate(integrand, lo.ln(), hi.ln(), ToleranceConfig::quadrature())
}

/// Same integral; closed form when `A = 0`, quadrature otherwise.
pub fn rarefaction_integral(p: &PressureParams, lo: f64, hi: f64) -> Result<f64> {
    if p.a == 0.0 {
        check_density(lo)?;
        check_density(hi)?;
        let k = gcg_exponent(p);
        let coef = 2.0 * (p.alpha * p.b).sqrt() / (p.alpha + 1.0);
        return Ok(coef * (lo.powf(-k) - hi.powf(-k)));
    }
    rarefaction_integral_quadrature(p, lo, hi)
}

/// Velocity on the rarefaction curve of family `fam` issuing from `from`
/// (which sits on the left of the wave).
pub fn rarefaction_u(p: &PressureParams, fam: WaveFamily, from: State, rho: f64) -> Result<f64> {
    require_pressure(p)?;
    from.check_positive()?;
    check_density(rho)?;
    match fam {
        WaveFamily::One => {
            if rho > from.rho {
                return Err(Error::Domain(format!("1-rarefaction needs rho <= {}, got {rho}", from.rho)));
            }
            Ok(from.u + rarefaction_integral(p, rho, from.rho)?)
        }
        WaveFamily::Two => {
            if rho < from.rho {
                return Err(Error::Domain(format!("2-rarefaction needs rho >= {}, got {rho}", from.rho)));
            }
            Ok(from.u + rarefaction_integral(p, from.rho, rho)?)
        }
    }
}

/// `((rho - r0) / (rho r0)) (A (rho^n - r0^n) - B (rho^-alpha - r0^-alpha))`,
/// symmetric in its two densities and non-negative up to rounding.
pub fn shock_radicand(p: &PressureParams, rho: f64, r0: f64) -> Result<f64> {
    let poly = if p.a == 0.0 { 0.0 } else { p.a * (rho.powf(p.n) - r0.powf(p.n)) };
    let chap = if p.b == 0.0 { 0.0 } else { p.b * (rho.powf(-p.alpha) - r0.powf(-p.alpha)) };
    let r = ((rho - r0) / (rho * r0)) * (poly - chap);
    if r >= 0.0 {
        Ok(r)
    } else if r > RADICAND_CLAMP {
        Ok(0.0)
    } else {
        Err(Error::Internal(format!("negative shock radicand {r} for densities {rho}, {r0}")))
    }
}

/// Velocity on the shock curve of family `fam` issuing from `from`.
/// Family One needs `rho >= from.rho`, family Two `rho <= from.rho`.
pub fn shock_u(p: &PressureParams, fam: WaveFamily, from: State, rho: f64) -> Result<f64> {
    require_pressure(p)?;
    from.check_positive()?;
    check_density(rho)?;
    match fam {
        WaveFamily::One if rho < from.rho => {
            return Err(Error::Domain(format!("1-shock needs rho >= {}, got {rho}", from.rho)))
        }
        WaveFamily::Two if rho > from.rho => {
            return Err(Error::Domain(format!("2-shock needs rho <= {}, got {rho}", from.rho)))
        }
        _ => {}
    }
    Ok(from.u - shock_radicand(p, rho, from.rho)?.sqrt())
}

/// Rankine-Hugoniot speed `[rho u] / [rho]`.
pub fn shock_speed(left: State, right: State) -> Result<f64> {
    if left.rho == right.rho {
        return Err(Error::DegenerateShock);
    }
    Ok((right.momentum() - left.momentum()) / (right.rho - left.rho))
}

/// Residuals of the two jump conditions, each scaled by
/// `1 + |[rho u^2 + P]|`.
pub fn rh_residuals(p: &PressureParams, left: State, right: State, sigma: f64) -> Result<(f64, f64)> {
    let flux = |s: State| -> Result<f64> { Ok(s.rho * s.u * s.u + p.pressure(s.rho)?) };
    let jump_rho = right.rho - left.rho;
    let jump_m = right.momentum() - left.momentum();
    let jump_f = flux(right)? - flux(left)?;
    let scale = 1.0 + jump_f.abs();
    Ok(((sigma * jump_rho - jump_m).abs() / scale, (sigma * jump_m - jump_f).abs() / scale))
}

/// Lax entropy inequalities for a discontinuity of family `fam` moving at `sigma`.
pub fn lax_check(p: &PressureParams, fam: WaveFamily, left: State, right: State, sigma: f64) -> Result<bool> {
    require_pressure(p)?;
    let (l1, l2) = p.eigenvalues(left)?;
    let (r1, r2) = p.eigenvalues(right)?;
    Ok(match fam {
        WaveFamily::One => sigma < l1 && r1 < sigma && sigma < r2,
        WaveFamily::Two => l1 < sigma && sigma < l2 && r2 < sigma,
    })
}

/// Forward curve of family `fam` through `from`, evaluated at `rho`:
/// rarefaction branch on the expansive side, shock branch on the other.
pub fn forward_curve_u(p: &PressureParams, fam: WaveFamily, from: State, rho: f64) -> Result<f64> {
    match fam {
        WaveFamily::One if rho <= from.rho => rarefaction_u(p, fam, from, rho),
        WaveFamily::One => shock_u(p, fam, from, rho),
        WaveFamily::Two if rho >= from.rho => rarefaction_u(p, fam, from, rho),
        WaveFamily::Two => shock_u(p, fam, from, rho),
    }
}

/// Backward curve of family `fam` through `to`, evaluated at `rho`.
pub fn backward_curve_u(p: &PressureParams, fam: WaveFamily, to: State, rho: f64) -> Result<f64> {
    require_pressure(p)?;
    to.check_positive()?;
    check_density(rho)?;
    match fam {
        // `to` is the low-density end of a 1-rarefaction or the high end of a 1-shock
        WaveFamily::One if to.rho <= rho => Ok(to.u - rarefaction_integral(p, to.rho, rho)?),
        WaveFamily::One => Ok(to.u + shock_radicand(p, rho, to.rho)?.sqrt()),
        WaveFamily::Two if rho <= to.rho => Ok(to.u - rarefaction_integral(p, rho, to.rho)?),
        WaveFamily::Two => Ok(to.u + shock_radicand(p, rho, to.rho)?.sqrt()),
    }
}

/// Wave types (`true` = rarefaction) deduced from the right state's position
/// relative to the forward curves through the left state.
enum Placement {
    Interior { first_rarefaction: bool, second_rarefaction: bool },
    Boundary(Curve),
}

fn place(p: &PressureParams, left: State, right: State) -> Result<Placement> {
    let on_one = right.u - forward_curve_u(p, WaveFamily::One, left, right.rho)?;
    let on_two = right.u - forward_curve_u(p, WaveFamily::Two, left, right.rho)?;
    if on_one.abs() <= BOUNDARY_TOL {
        let c = if right.rho <= left.rho { Curve::R1 } else { Curve::S1 };
        return Ok(Placement::Boundary(c));
    }
    if on_two.abs() <= BOUNDARY_TOL {
        let c = if right.rho >= left.rho { Curve::R2 } else { Curve::S2 };
        return Ok(Placement::Boundary(c));
    }
    // Above the forward 2-curve the intermediate density drops below the
    // left density (1-rarefaction); above the forward 1-curve it drops below
    // the right density (2-rarefaction).
    Ok(Placement::Interior { first_rarefaction: on_two > 0.0, second_rarefaction: on_one > 0.0 })
}

pub fn classify_ecg(p: &PressureParams, left: State, right: State) -> Result<RegionEcg> {
    if p.model_tag != ModelTag::Ecg {
        return Err(Error::UnsupportedModel(p.model_tag));
    }
    Ok(match place(p, left, right)? {
        Placement::Boundary(c) => RegionEcg::OnBoundary(c),
        Placement::Interior { first_rarefaction, second_rarefaction } => {
            match (first_rarefaction, second_rarefaction) {
                (true, true) => RegionEcg::R1R2,
                (true, false) => RegionEcg::R1S2,
                (false, true) => RegionEcg::S1R2,
                (false, false) => RegionEcg::S1S2,
            }
        }
    })
}

/// `(u_- - sqrt(B) rho_-^{-k}) - (u_+ + sqrt(B) rho_+^{-k})`; the two shock
/// curves miss each other (delta-shock region) iff this is `>= 0`.
pub fn gcg_sdelta_gap(p: &PressureParams, left: State, right: State) -> f64 {
    let k = gcg_exponent(p);
    let sb = p.b.sqrt();
    (left.u - sb * left.rho.powf(-k)) - (right.u + sb * right.rho.powf(-k))
}

/// The open interval the delta-shock speed must lie in for all
/// characteristics to enter the delta shock (uses `sqrt(alpha B)`).
pub fn gcg_entropy_window(p: &PressureParams, left: State, right: State) -> (f64, f64) {
    let k = gcg_exponent(p);
    let sab = (p.alpha * p.b).sqrt();
    (right.u + sab * right.rho.powf(-k), left.u - sab * left.rho.powf(-k))
}

pub fn classify_gcg(p: &PressureParams, left: State, right: State) -> Result<RegionGcg> {
    if p.model_tag != ModelTag::Gcg {
        return Err(Error::UnsupportedModel(p.model_tag));
    }
    left.check_positive()?;
    right.check_positive()?;
    let gap = gcg_sdelta_gap(p, left, right);
    if gap.abs() <= BOUNDARY_TOL {
        return Ok(RegionGcg::OnBoundary(Curve::SDelta));
    }
    if gap > 0.0 {
        return Ok(RegionGcg::V);
    }
    Ok(match place(p, left, right)? {
        Placement::Boundary(c) => RegionGcg::OnBoundary(c),
        Placement::Interior { first_rarefaction, second_rarefaction } => {
            match (first_rarefaction, second_rarefaction) {
                (true, true) => RegionGcg::I,
                (true, false) => RegionGcg::II,
                (false, true) => RegionGcg::III,
                (false, false) => RegionGcg::IV,
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gcg(b: f64, alpha: f64) -> PressureParams {
        PressureParams::gcg(b, alpha).unwrap()
    }

    fn ecg(a: f64, b: f64, n: f64, alpha: f64) -> PressureParams {
        PressureParams::ecg(a, b, n, alpha).unwrap()
    }

    /// Midpoint Riemann sum with a million panels, independent of the
    /// adaptive quadrature.
    fn riemann_sum(f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
        let n = 1_000_000;
        let h = (b - a) / n as f64;
        (0..n).map(|i| f(a + (i as f64 + 0.5) * h)).sum::<f64>() * h
    }

    #[test]
    fn rarefaction_passes_through_base_point() {
        let base = State::new(1.0, 0.0);
        for p in [ecg(1.0, 1.0, 2.0, 0.5), gcg(1.0, 1.0)] {
            assert_eq!(rarefaction_u(&p, WaveFamily::One, base, 1.0).unwrap(), 0.0);
            assert_eq!(rarefaction_u(&p, WaveFamily::Two, base, 1.0).unwrap(), 0.0);
        }
    }

    #[test]
    fn gcg_rarefaction_closed_form() {
        let u = rarefaction_u(&gcg(1.0, 1.0), WaveFamily::One, State::new(1.0, 0.0), 0.5).unwrap();
        assert!((u - 1.0).abs() < 1e-14);
    }

    #[test]
    fn ecg_rarefaction_matches_riemann_sum() {
        let p = ecg(1.0, 1.0, 2.0, 0.5);
        let u = rarefaction_u(&p, WaveFamily::One, State::new(1.0, 0.0), 0.5).unwrap();
        let oracle = riemann_sum(|r: f64| (2.0 * r + 0.5 / r.powf(1.5)).sqrt() / r, 0.5, 1.0);
        assert!((u - oracle).abs() < 1e-8, "u={u} oracle={oracle}");
    }

    #[test]
    fn rarefaction_wrong_side_is_domain_error() {
        let p = ecg(1.0, 1.0, 2.0, 0.5);
        let base = State::new(1.0, 0.0);
        assert!(matches!(rarefaction_u(&p, WaveFamily::One, base, 2.0), Err(Error::Domain(_))));
        assert!(matches!(rarefaction_u(&p, WaveFamily::Two, base, 0.5), Err(Error::Domain(_))));
        assert!(matches!(shock_u(&p, WaveFamily::One, base, 0.5), Err(Error::Domain(_))));
        assert!(matches!(shock_u(&p, WaveFamily::Two, base, 2.0), Err(Error::Domain(_))));
    }

    #[test]
    fn shock_curve_continuous_at_base() {
        let p = ecg(0.3, 0.7, 2.5, 0.4);
        let base = State::new(1.0, 0.0);
        let u = shock_u(&p, WaveFamily::One, base, 1.0 + 1e-12).unwrap();
        assert!(u.abs() < 1e-5);
        let u = shock_u(&p, WaveFamily::Two, base, 1.0 - 1e-12).unwrap();
        assert!(u.abs() < 1e-5);
        assert_eq!(shock_u(&p, WaveFamily::One, base, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn gcg_shock_asymptote() {
        let u = shock_u(&gcg(1.0, 1.0), WaveFamily::One, State::new(1.0, 0.0), 1e8).unwrap();
        assert!((u + 1.0).abs() <= 1e-3);
    }

    #[test]
    fn ecg_shock_satisfies_jump_conditions() {
        let p = ecg(0.1, 0.1, 2.0, 0.5);
        let left = State::new(1.0, 1.0);
        let right = State::new(4.0, shock_u(&p, WaveFamily::One, left, 4.0).unwrap());
        let sigma = shock_speed(left, right).unwrap();
        let (r1, r2) = rh_residuals(&p, left, right, sigma).unwrap();
        assert!(r1 <= 1e-10 && r2 <= 1e-10);
        assert!(sigma < p.eigenvalues(left).unwrap().0);
        assert!(lax_check(&p, WaveFamily::One, left, right, sigma).unwrap());
        // the reversed pair is an expansion shock
        assert!(!lax_check(&p, WaveFamily::One, right, left, sigma).unwrap());
    }

    #[test]
    fn shock_speed_examples() {
        assert_eq!(shock_speed(State::new(1.0, 1.0), State::new(2.0, 1.0)).unwrap(), 1.0);
        assert_eq!(shock_speed(State::new(2.0, 0.0), State::new(1.0, 3.0)).unwrap(), -3.0);
        assert_eq!(shock_speed(State::new(1.0, 0.0), State::new(1.0, 3.0)), Err(Error::DegenerateShock));
    }

    #[test]
    fn lax_check_rejects_transport() {
        let p = PressureParams::transport();
        let s = State::new(1.0, 0.0);
        assert_eq!(lax_check(&p, WaveFamily::One, s, s, 0.0), Err(Error::UnsupportedModel(ModelTag::Transport)));
    }

    #[test]
    fn classify_ecg_examples() {
        let p = ecg(0.1, 0.1, 2.0, 0.5);
        let l = State::new(1.0, 0.0);
        assert!(matches!(classify_ecg(&p, l, l).unwrap(), RegionEcg::OnBoundary(_)));
        assert_eq!(classify_ecg(&p, l, State::new(1.0, 5.0)).unwrap(), RegionEcg::R1R2);
        assert_eq!(classify_ecg(&p, l, State::new(1.0, -5.0)).unwrap(), RegionEcg::S1S2);
        // a point just off the S1 curve
        let on_s1 = State::new(3.0, shock_u(&p, WaveFamily::One, l, 3.0).unwrap());
        assert_eq!(classify_ecg(&p, l, on_s1).unwrap(), RegionEcg::OnBoundary(Curve::S1));
        assert_eq!(classify_ecg(&p, l, State::new(3.0, on_s1.u + 1e-3)).unwrap(), RegionEcg::S1R2);
        assert_eq!(classify_ecg(&p, l, State::new(3.0, on_s1.u - 1e-3)).unwrap(), RegionEcg::S1S2);
    }

    #[test]
    fn classify_gcg_examples() {
        let p = gcg(0.01, 1.0);
        assert_eq!(classify_gcg(&p, State::new(1.0, 1.0), State::new(1.0, -1.0)).unwrap(), RegionGcg::V);
        let p = gcg(1.0, 1.0);
        let l = State::new(1.0, 0.0);
        assert_eq!(classify_gcg(&p, l, State::new(1.0, 3.0)).unwrap(), RegionGcg::I);
        assert!(matches!(classify_gcg(&p, l, l).unwrap(), RegionGcg::OnBoundary(_)));
        // just beyond the S_delta curve through (1, 0): u + 1/rho = -1
        assert_eq!(classify_gcg(&p, l, State::new(2.0, -1.5 - 1e-6)).unwrap(), RegionGcg::V);
        assert_eq!(classify_gcg(&p, l, State::new(2.0, -1.5 + 1e-6)).unwrap(), RegionGcg::IV);
        assert_eq!(
            classify_gcg(&p, l, State::new(2.0, -1.5)).unwrap(),
            RegionGcg::OnBoundary(Curve::SDelta)
        );
    }

    fn ecg_strategy() -> impl Strategy<Value = PressureParams> {
        (0.01f64..1.0, 0.01f64..1.0, 1.0f64..=3.0, 0.05f64..=1.0).prop_map(|(a, b, n, al)| ecg(a, b, n, al))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn characteristic_speeds_monotone_along_rarefactions(
            p in ecg_strategy(), r0 in 0.2f64..5.0, f1 in 0.05f64..0.95, f2 in 0.05f64..0.95,
        ) {
            let base = State::new(r0, 0.3);
            let (ra, rb) = (r0 * f1.min(f2), r0 * f1.max(f2));
            prop_assume!(rb - ra > 1e-6 * r0);
            let lam1 = |r: f64| {
                let u = rarefaction_u(&p, WaveFamily::One, base, r).unwrap();
                p.eigenvalues(State::new(r, u)).unwrap().0
            };
            prop_assert!(lam1(ra) > lam1(rb));
            let lam2 = |r: f64| {
                let u = rarefaction_u(&p, WaveFamily::Two, base, r).unwrap();
                p.eigenvalues(State::new(r, u)).unwrap().1
            };
            prop_assert!(lam2(r0 / f1.max(f2)) < lam2(r0 / f1.min(f2)));
        }

        #[test]
        fn one_rarefaction_is_convex(p in ecg_strategy(), r0 in 0.5f64..5.0, f in 0.1f64..0.8) {
            let base = State::new(r0, 0.0);
            let mid = r0 * f;
            let h = mid * 0.05;
            let u = |r| rarefaction_u(&p, WaveFamily::One, base, r).unwrap();
            let second = u(mid - h) - 2.0 * u(mid) + u(mid + h);
            prop_assert!(second > 0.0, "second difference {second}");
        }

        #[test]
        fn shock_curves_are_starlike(p in ecg_strategy(), r0 in 0.2f64..5.0, f in 1.01f64..20.0) {
            let base = State::new(r0, 0.0);
            let s1 = |r| shock_u(&p, WaveFamily::One, base, r).unwrap();
            prop_assert!(s1(r0 * f) < s1(r0 * (1.0 + 0.5 * (f - 1.0))));
            let s2 = |r| shock_u(&p, WaveFamily::Two, base, r).unwrap();
            prop_assert!(s2(r0 / f) < s2(r0 / (1.0 + 0.5 * (f - 1.0))));
        }

        #[test]
        fn random_shocks_satisfy_jump_conditions(
            p in ecg_strategy(), r0 in 0.1f64..5.0, u0 in -3.0f64..3.0, f in 1.001f64..50.0, second in any::<bool>(),
        ) {
            let left = State::new(r0, u0);
            let (fam, rho) = if second { (WaveFamily::Two, r0 / f) } else { (WaveFamily::One, r0 * f) };
            let right = State::new(rho, shock_u(&p, fam, left, rho).unwrap());
            let sigma = shock_speed(left, right).unwrap();
            let (r1, r2) = rh_residuals(&p, left, right, sigma).unwrap();
            prop_assert!(r1 <= 1e-9 && r2 <= 1e-9, "residuals {r1:e} {r2:e}");
            prop_assert!(lax_check(&p, fam, left, right, sigma).unwrap());
        }

        #[test]
        fn gcg_asymptote_holds(b in 0.01f64..2.0, alpha in 0.5f64..=1.0, r0 in 0.2f64..5.0, u0 in -2.0f64..2.0) {
            let p = gcg(b, alpha);
            let u = shock_u(&p, WaveFamily::One, State::new(r0, u0), 1e8).unwrap();
            let asymptote = u0 - b.sqrt() * r0.powf(-0.5 * (alpha + 1.0));
            prop_assert!((u - asymptote).abs() <= 1e-3);
        }
    }
}

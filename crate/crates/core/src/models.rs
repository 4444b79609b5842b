//! Equation of state `P = A rho^n - B / rho^alpha`, phase-plane states and
//! the eigenstructure of the isentropic system built on it.
//!
//! The model tag is carried explicitly. A limit sweep can hold a tiny but
//! positive `A` under the ECG tag without silently switching to the GCG
//! formulas.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Densities below this are rejected by every EOS routine. Vacuum only exists
/// inside a [`RiemannSolution`](crate::solver::RiemannSolution).
pub const DENSITY_FLOOR: f64 = 1e-300;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelTag {
    /// Extended Chaplygin gas, `A, B > 0`.
    Ecg,
    /// Generalized Chaplygin gas, `A = 0`.
    Gcg,
    /// Pressureless transport, `A = B = 0`.
    Transport,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PressureParams {
    pub model_tag: ModelTag,
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "B")]
    pub b: f64,
    pub n: f64,
    pub alpha: f64,
}

/// A point `(rho, u)` of the upper half phase plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct State {
    pub rho: f64,
    pub u: f64,
}

impl State {
    pub const fn new(rho: f64, u: f64) -> Self {
        State { rho, u }
    }

    pub fn momentum(&self) -> f64 {
        self.rho * self.u
    }

    pub(crate) fn check_positive(&self) -> Result<()> {
        check_density(self.rho)?;
        if !self.u.is_finite() {
            return Err(Error::Domain(format!("velocity must be finite, got {}", self.u)));
        }
        Ok(())
    }
}

pub(crate) fn check_density(rho: f64) -> Result<()> {
    if !rho.is_finite() || rho < DENSITY_FLOOR {
        return Err(Error::Domain(format!("density must be positive and finite, got {rho}")));
    }
    Ok(())
}

impl PressureParams {
    /// Extended Chaplygin gas; validated.
    pub fn ecg(a: f64, b: f64, n: f64, alpha: f64) -> Result<Self> {
        let p = PressureParams { model_tag: ModelTag::Ecg, a, b, n, alpha };
        p.validate()?;
        Ok(p)
    }

    /// Generalized Chaplygin gas `P = -B / rho^alpha`; validated.
    pub fn gcg(b: f64, alpha: f64) -> Result<Self> {
        let p = PressureParams { model_tag: ModelTag::Gcg, a: 0.0, b, n: 1.0, alpha };
        p.validate()?;
        Ok(p)
    }

    pub fn transport() -> Self {
        PressureParams { model_tag: ModelTag::Transport, a: 0.0, b: 0.0, n: 1.0, alpha: 1.0 }
    }

    /// Builds parameters without checking the per-model ranges. The EOS
    /// routines accept any finite non-negative coefficients; the solvers
    /// call [`validate`](Self::validate) themselves.
    pub fn raw(model_tag: ModelTag, a: f64, b: f64, n: f64, alpha: f64) -> Self {
        PressureParams { model_tag, a, b, n, alpha }
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.a, self.b, self.n, self.alpha].iter().all(|v| v.is_finite());
        if !finite {
            return Err(Error::InvalidParams("parameters must be finite".into()));
        }
        match self.model_tag {
            ModelTag::Ecg => {
                if !(self.a > 0.0 && self.b > 0.0) {
                    return Err(Error::InvalidParams(format!(
                        "ECG requires A > 0 and B > 0 (A={}, B={})",
                        self.a, self.b
                    )));
                }
                if !(1.0..=3.0).contains(&self.n) {
                    return Err(Error::InvalidParams(format!("ECG requires 1 <= n <= 3, got {}", self.n)));
                }
                self.check_alpha()
            }
            ModelTag::Gcg => {
                if self.a != 0.0 || !(self.b > 0.0) {
                    return Err(Error::InvalidParams(format!(
                        "GCG requires A = 0 and B > 0 (A={}, B={})",
                        self.a, self.b
                    )));
                }
                self.check_alpha()
            }
            ModelTag::Transport => {
                if self.a != 0.0 || self.b != 0.0 {
                    return Err(Error::InvalidParams(format!(
                        "transport requires A = B = 0 (A={}, B={})",
                        self.a, self.b
                    )));
                }
                Ok(())
            }
        }
    }

    fn check_alpha(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(Error::InvalidParams(format!("requires 0 < alpha <= 1, got {}", self.alpha)));
        }
        Ok(())
    }

    fn check_coefficients(&self) -> Result<()> {
        if !(self.a >= 0.0 && self.b >= 0.0) {
            return Err(Error::InvalidParams(format!(
                "pressure coefficients must be non-negative (A={}, B={})",
                self.a, self.b
            )));
        }
        Ok(())
    }

    pub fn is_transport(&self) -> bool {
        self.model_tag == ModelTag::Transport
    }

    pub fn pressure(&self, rho: f64) -> Result<f64> {
        check_density(rho)?;
        if self.is_transport() {
            return Ok(0.0);
        }
        self.check_coefficients()?;
        Ok(self.polytropic_term(rho) - self.chaplygin_term(rho))
    }

    fn polytropic_term(&self, rho: f64) -> f64 {
        if self.a == 0.0 {
            0.0
        } else {
            self.a * rho.powf(self.n)
        }
    }

    fn chaplygin_term(&self, rho: f64) -> f64 {
        if self.b == 0.0 {
            0.0
        } else {
            self.b / rho.powf(self.alpha)
        }
    }

    /// `dP/drho = A n rho^(n-1) + alpha B / rho^(alpha+1)`.
    pub fn sound_speed_sq(&self, rho: f64) -> Result<f64> {
        check_density(rho)?;
        if self.is_transport() {
            return Ok(0.0);
        }
        self.check_coefficients()?;
        Ok(self.sound_speed_sq_unchecked(rho))
    }

    /// Hot-path variant for callers that already validated `rho`.
    #[inline]
    pub(crate) fn sound_speed_sq_unchecked(&self, rho: f64) -> f64 {
        let mut c2 = 0.0;
        if self.a != 0.0 {
            c2 += self.a * self.n * rho.powf(self.n - 1.0);
        }
        if self.b != 0.0 {
            c2 += self.alpha * self.b / rho.powf(self.alpha + 1.0);
        }
        c2
    }

    pub fn sound_speed(&self, rho: f64) -> Result<f64> {
        self.sound_speed_sq(rho).map(f64::sqrt)
    }

    /// `(lambda_1, lambda_2) = (u - c, u + c)`.
    pub fn eigenvalues(&self, s: State) -> Result<(f64, f64)> {
        let c = self.sound_speed(s.rho)?;
        Ok((s.u - c, s.u + c))
    }

    /// `grad(lambda_i) . r_i`, identical for both families. Zero means the
    /// field is linearly degenerate (pure Chaplygin, `A = 0, alpha = 1`).
    pub fn genuine_nonlinearity_indicator(&self, rho: f64) -> Result<f64> {
        if self.is_transport() {
            return Err(Error::UnsupportedModel(ModelTag::Transport));
        }
        check_density(rho)?;
        self.check_coefficients()?;
        let (a, b, n, al) = (self.a, self.b, self.n, self.alpha);
        let rho_na = if a == 0.0 { 0.0 } else { rho.powf(n + al) };
        let num = a * n * (n + 1.0) * rho_na + (1.0 - al) * al * b;
        let den = 2.0 * ((a * n * rho_na + al * b) * rho.powf(al + 1.0)).sqrt();
        Ok(num / den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn unit_ecg() -> PressureParams {
        PressureParams::ecg(1.0, 1.0, 1.0, 1.0).unwrap()
    }

    #[test]
    fn pressure_examples() {
        assert_eq!(unit_ecg().pressure(1.0).unwrap(), 0.0);
        assert_eq!(PressureParams::transport().pressure(3.7).unwrap(), 0.0);
        let poly = PressureParams::raw(ModelTag::Ecg, 0.5, 0.0, 2.0, 1.0);
        assert!((poly.pressure(2.0).unwrap() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn pressure_rejects_bad_density() {
        let p = unit_ecg();
        assert!(matches!(p.pressure(0.0), Err(Error::Domain(_))));
        assert!(matches!(p.pressure(-1.0), Err(Error::Domain(_))));
        assert!(matches!(p.pressure(1e-301), Err(Error::Domain(_))));
        assert!(matches!(p.sound_speed_sq(f64::NAN), Err(Error::Domain(_))));
    }

    #[test]
    fn sound_speed_examples() {
        assert!((unit_ecg().sound_speed_sq(1.0).unwrap() - 2.0).abs() < 1e-15);
        let gcg = PressureParams::gcg(1.0, 1.0).unwrap();
        assert!((gcg.sound_speed_sq(1.0).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(PressureParams::transport().sound_speed_sq(42.0).unwrap(), 0.0);
    }

    #[test]
    fn eigenvalue_examples() {
        let (l1, l2) = unit_ecg().eigenvalues(State::new(1.0, 0.0)).unwrap();
        assert!((l1 + 2f64.sqrt()).abs() < 1e-15 && (l2 - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(PressureParams::transport().eigenvalues(State::new(1.0, 5.0)).unwrap(), (5.0, 5.0));
        let gcg = PressureParams::gcg(1.0, 1.0).unwrap();
        let (l1, l2) = gcg.eigenvalues(State::new(4.0, 0.0)).unwrap();
        assert!((l1 + 0.25).abs() < 1e-15 && (l2 - 0.25).abs() < 1e-15);
    }

    #[test]
    fn nonlinearity_examples() {
        let chap = PressureParams::gcg(1.0, 1.0).unwrap();
        for rho in [0.01, 1.0, 7.5, 1e4] {
            assert_eq!(chap.genuine_nonlinearity_indicator(rho).unwrap(), 0.0);
        }
        assert!(unit_ecg().genuine_nonlinearity_indicator(1.0).unwrap() > 0.0);
        let gen = PressureParams::gcg(1.0, 0.5).unwrap();
        assert!(gen.genuine_nonlinearity_indicator(1.0).unwrap() > 0.0);
        assert_eq!(
            PressureParams::transport().genuine_nonlinearity_indicator(1.0),
            Err(Error::UnsupportedModel(ModelTag::Transport))
        );
    }

    #[test]
    fn validation_ranges() {
        assert!(PressureParams::ecg(1.0, 1.0, 1.0, 1.0).is_ok());
        assert!(PressureParams::ecg(1.0, 1.0, 3.5, 1.0).is_err());
        assert!(PressureParams::ecg(1.0, 1.0, 0.5, 1.0).is_err());
        assert!(PressureParams::ecg(0.0, 1.0, 2.0, 1.0).is_err());
        assert!(PressureParams::ecg(1.0, 1.0, 2.0, 0.0).is_err());
        assert!(PressureParams::ecg(1.0, 1.0, 2.0, 1.5).is_err());
        assert!(PressureParams::gcg(0.0, 1.0).is_err());
        assert!(PressureParams::raw(ModelTag::Gcg, 0.1, 1.0, 1.0, 1.0).validate().is_err());
        assert!(PressureParams::raw(ModelTag::Transport, 0.0, 1.0, 1.0, 1.0).validate().is_err());
        assert!(PressureParams::transport().validate().is_ok());
    }

    fn ecg_params() -> impl Strategy<Value = (PressureParams, f64)> {
        (1e-3f64..10.0, 1e-3f64..10.0, 1.0f64..=3.0, 0.01f64..=1.0, -4.0f64..4.0).prop_map(
            |(a, b, n, al, log_rho)| (PressureParams::ecg(a, b, n, al).unwrap(), 10f64.powf(log_rho * 0.5)),
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn pressure_derivative_is_sound_speed((p, rho) in ecg_params()) {
            let h = rho * 1e-5;
            let fd = (p.pressure(rho + h).unwrap() - p.pressure(rho - h).unwrap()) / (2.0 * h);
            let c2 = p.sound_speed_sq(rho).unwrap();
            prop_assert!(fd > 0.0);
            prop_assert!(((fd - c2) / c2).abs() < 1e-6, "fd={fd} c2={c2}");
        }

        #[test]
        fn eigenvalues_strictly_ordered((p, rho) in ecg_params(), u in -10.0f64..10.0) {
            let (l1, l2) = p.eigenvalues(State::new(rho, u)).unwrap();
            prop_assert!(l1 < l2);
        }

        #[test]
        fn ecg_genuinely_nonlinear((p, rho) in ecg_params()) {
            prop_assert!(p.genuine_nonlinearity_indicator(rho).unwrap() > 0.0);
        }
    }
}

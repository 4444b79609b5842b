//! Problem files and flag overrides.

use std::path::Path;

use anyhow::{anyhow, Context, Result};
use ecg_riemann::fvcheck::GridConfig;
use ecg_riemann::limits::{Schedule, ScheduleMode};
use ecg_riemann::{ModelTag, PressureParams, State};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::InputError;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelBlock {
    pub tag: Option<ModelTag>,
    #[serde(rename = "A", default, skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(rename = "B", default, skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateBlock {
    pub rho: f64,
    pub u: f64,
}

impl From<StateBlock> for State {
    fn from(s: StateBlock) -> State {
        State::new(s.rho, s.u)
    }
}

/// Either a decade range `[k_from, k_to]` (`A = 10^-k`, and `B = 10^-k` too
/// when both vanish) or explicit `(A, B)` points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScheduleBlock {
    pub mode: ScheduleMode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decades: Option<[i32; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<(f64, f64)>>,
    /// Fixed `B` for decade schedules with `A` vanishing; defaults to the
    /// model block's `B`.
    #[serde(rename = "B", default, skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    #[serde(default)]
    pub model: ModelBlock,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left: Option<StateBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right: Option<StateBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schedule: Option<ScheduleBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridConfig>,
}

impl ProblemFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text)
            .map_err(|e| anyhow!(InputError(format!("malformed problem file {}: {e}", path.display()))))
    }
}

/// Flag values that override the problem file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub model: Option<ModelTag>,
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub n: Option<f64>,
    pub alpha: Option<f64>,
    pub left: Option<State>,
    pub right: Option<State>,
    pub seed: Option<u64>,
}

/// A fully resolved problem.
#[derive(Debug, Clone)]
pub struct Problem {
    pub model: ModelBlock,
    pub left: State,
    pub right: State,
    pub schedule: Option<ScheduleBlock>,
    pub grid: Option<GridConfig>,
}

fn input(msg: impl Into<String>) -> anyhow::Error {
    anyhow!(InputError(msg.into()))
}

/// Random state with `rho` in `[0.1, 5)` and `u` in `[-3, 3)`.
fn random_state(r: &mut ChaCha8Rng) -> State {
    State::new(r.gen_range(0.1..5.0), r.gen_range(-3.0..3.0))
}

impl Problem {
    pub fn resolve(file: Option<ProblemFile>, o: &Overrides) -> Result<Self> {
        let file = file.unwrap_or_default();
        let mut model = file.model;
        model.tag = o.model.or(model.tag);
        model.a = o.a.or(model.a);
        model.b = o.b.or(model.b);
        model.n = o.n.or(model.n);
        model.alpha = o.alpha.or(model.alpha);

        let mut rng = o.seed.map(ChaCha8Rng::seed_from_u64);
        let mut pick = |flag: Option<State>, block: Option<StateBlock>, side: &str| -> Result<State> {
            if let Some(s) = flag.or(block.map(State::from)) {
                return Ok(s);
            }
            match rng.as_mut() {
                Some(r) => Ok(random_state(r)),
                None => Err(input(format!("no {side} state: pass --{side} r,u, a file with a {side} block, or --seed"))),
            }
        };
        let left = pick(o.left, file.left, "left")?;
        let right = pick(o.right, file.right, "right")?;
        Ok(Problem { model, left, right, schedule: file.schedule, grid: file.grid })
    }

    /// Validated pressure law of the model block.
    pub fn params(&self) -> Result<PressureParams> {
        let m = &self.model;
        let need = |v: Option<f64>, name: &str| v.ok_or_else(|| input(format!("model parameter {name} missing")));
        let p = match m.tag.ok_or_else(|| input("no model given: pass --model or a model block"))? {
            ModelTag::Ecg => PressureParams::ecg(need(m.a, "A")?, need(m.b, "B")?, need(m.n, "n")?, need(m.alpha, "alpha")?),
            ModelTag::Gcg => {
                if m.a.is_some_and(|a| a != 0.0) {
                    return Err(input("the gcg model has A = 0"));
                }
                PressureParams::gcg(need(m.b, "B")?, need(m.alpha, "alpha")?)
            }
            ModelTag::Transport => Ok(PressureParams::transport()),
        }?;
        Ok(p)
    }

    pub fn schedule(&self) -> Result<(Schedule, f64)> {
        let s = self.schedule.as_ref().ok_or_else(|| input("sweep needs a schedule block in the problem file"))?;
        let n = self.model.n.ok_or_else(|| input("sweep needs n in the model block"))?;
        let alpha = self.model.alpha.ok_or_else(|| input("sweep needs alpha in the model block"))?;
        let sched = match (&s.decades, &s.points) {
            (Some([k0, k1]), None) => match s.mode {
                ScheduleMode::BothVanish => Schedule::both_vanish_decades(*k0, *k1, n, alpha)?,
                ScheduleMode::AVanishes => {
                    let b = s.b.or(self.model.b).ok_or_else(|| input("schedule with A vanishing needs B"))?;
                    Schedule::a_vanishes_decades(b, *k0, *k1, n, alpha)?
                }
            },
            (None, Some(points)) => Schedule::new(s.mode, points.clone(), n, alpha)?,
            _ => return Err(input("schedule block needs exactly one of decades or points")),
        };
        Ok((sched, s.tol.unwrap_or(s.mode.default_tolerance())))
    }

    pub fn grid(&self) -> Result<GridConfig> {
        let g = self.grid.ok_or_else(|| input("fv needs a grid block in the problem file"))?;
        g.validate()?;
        Ok(g)
    }
}

/// Parses `r,u`.
pub fn parse_state(s: &str) -> std::result::Result<State, String> {
    let (r, u) = s.split_once(',').ok_or_else(|| format!("expected rho,u, got {s:?}"))?;
    let num = |v: &str| v.trim().parse::<f64>().map_err(|e| format!("{v:?}: {e}"));
    Ok(State::new(num(r)?, num(u)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_state_accepts_pairs() {
        assert_eq!(parse_state("1.5,-2").unwrap(), State::new(1.5, -2.0));
        assert!(parse_state("1.5").is_err());
        assert!(parse_state("a,1").is_err());
    }

    #[test]
    fn flags_override_file() {
        let file: ProblemFile = serde_json::from_str(
            r#"{"model": {"tag": "ecg", "A": 1, "B": 1, "n": 2, "alpha": 0.5},
                "left": {"rho": 1, "u": 1}, "right": {"rho": 1, "u": -1}}"#,
        )
        .unwrap();
        let o = Overrides { a: Some(0.5), left: Some(State::new(2.0, 0.0)), ..Default::default() };
        let p = Problem::resolve(Some(file), &o).unwrap();
        assert_eq!(p.params().unwrap().a, 0.5);
        assert_eq!(p.left, State::new(2.0, 0.0));
        assert_eq!(p.right, State::new(1.0, -1.0));
    }

    #[test]
    fn unknown_keys_rejected() {
        let bad = r#"{"model": {"tag": "ecg", "gamma": 2}}"#;
        assert!(serde_json::from_str::<ProblemFile>(bad).is_err());
    }

    #[test]
    fn seed_is_reproducible() {
        let o = Overrides { model: Some(ModelTag::Transport), seed: Some(7), ..Default::default() };
        let a = Problem::resolve(None, &o).unwrap();
        let b = Problem::resolve(None, &o).unwrap();
        assert_eq!((a.left, a.right), (b.left, b.right));
    }

    #[test]
    fn missing_state_is_input_error() {
        let e = Problem::resolve(None, &Overrides::default()).unwrap_err();
        assert!(e.is::<InputError>());
    }
}

//! Exact Riemann solvers for the extended Chaplygin gas
//! `P = A rho^n - B / rho^alpha`, its generalized Chaplygin (`A = 0`) and
//! pressureless (`A = B = 0`) limits, plus a harness that follows Riemann
//! solutions along vanishing-pressure parameter schedules and a first-order
//! finite-volume cross-check.
//!
//! ```
//! use ecg_riemann::{solve, PressureParams, State};
//!
//! let p = PressureParams::transport();
//! let sol = solve(&p, State::new(4.0, 2.0), State::new(1.0, -1.0)).unwrap();
//! let delta = sol.delta_shock().unwrap();
//! assert_eq!(delta.sigma, 1.0);
//! assert_eq!(delta.weight_rate, 6.0);
//! ```

pub mod error;
pub mod fvcheck;
pub mod limits;
pub mod models;
pub mod numerics;
pub mod solver;
pub mod waves;

mod serde_inf;

pub use error::{Error, Result};
pub use models::{ModelTag, PressureParams, State};
pub use numerics::ToleranceConfig;
pub use solver::{delta_weight_at, sample, solve, DeltaShock, RiemannSolution, SegmentKind, WaveSegment};
pub use waves::{Curve, RegionEcg, RegionGcg, WaveFamily};

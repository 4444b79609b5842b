//! Scalar kernels: adaptive Gauss-Kronrod quadrature, Brent root-finding and
//! geometric bracket expansion.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_iterations: usize,
}

impl Default for ToleranceConfig {
    /// Root-finding defaults.
    fn default() -> Self {
        ToleranceConfig { abs_tol: 1e-12, rel_tol: 1e-10, max_iterations: 200 }
    }
}

impl ToleranceConfig {
    /// Quadrature defaults: `max_iterations` is the bisection depth limit.
    pub fn quadrature() -> Self {
        ToleranceConfig { abs_tol: 1e-12, rel_tol: 1e-10, max_iterations: 60 }
    }

    /// Used where the solver intersects wave curves; resolves roots to a
    /// few ulps so that downstream residual checks see only rounding.
    pub fn tight() -> Self {
        ToleranceConfig { abs_tol: 1e-14, rel_tol: 1e-14, max_iterations: 200 }
    }

    pub fn new(abs_tol: f64, rel_tol: f64, max_iterations: usize) -> Result<Self> {
        let t = ToleranceConfig { abs_tol, rel_tol, max_iterations };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        let floor = 10.0 * f64::EPSILON;
        if !(self.abs_tol >= floor && self.rel_tol >= floor) {
            return Err(Error::Domain(format!(
                "tolerances must be at least {floor:e} (abs_tol={}, rel_tol={})",
                self.abs_tol, self.rel_tol
            )));
        }
        if self.max_iterations == 0 {
            return Err(Error::Domain("max_iterations must be positive".into()));
        }
        Ok(())
    }
}

// 15-point Kronrod nodes on [-1, 1] (non-negative half) and weights, with
// the embedded 7-point Gauss weights for the odd-indexed nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// One Gauss-Kronrod 7/15 panel: (Kronrod estimate, |Kronrod - Gauss|).
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

/// Adaptive quadrature of `f` over `[a, b]`.
///
/// Panels are bisected until each one's error estimate falls below its
/// width-proportional share of `max(abs_tol, rel_tol * |Q|)`. Exceeding
/// `tol.max_iterations` bisection levels yields
/// [`Error::AccuracyNotReached`] with the best available estimate.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: ToleranceConfig) -> Result<f64> {
    if !(a.is_finite() && b.is_finite()) || a > b {
        return Err(Error::Domain(format!("integration interval [{a}, {b}] is not ordered and finite")));
    }
    if a == b {
        return Ok(0.0);
    }
    let (q0, e0) = gk15(&f, a, b);
    if !q0.is_finite() {
        return Err(Error::Domain(format!("integrand not finite on [{a}, {b}]")));
    }
    let budget = tol.abs_tol.max(tol.rel_tol * q0.abs());
    let width = b - a;

    let mut total = 0.0;
    let mut failed = false;
    let mut stack = vec![(a, b, q0, e0, 0usize)];
    while let Some((lo, hi, q, e, depth)) = stack.pop() {
        let share = budget * (hi - lo) / width;
        if e <= share || e <= 4.0 * f64::EPSILON * q.abs() {
            total += q;
            continue;
        }
        if depth >= tol.max_iterations {
            failed = true;
            total += q;
            continue;
        }
        let mid = 0.5 * (lo + hi);
        let (ql, el) = gk15(&f, lo, mid);
        let (qr, er) = gk15(&f, mid, hi);
        if !(ql.is_finite() && qr.is_finite()) {
            return Err(Error::Domain(format!("integrand not finite on [{lo}, {hi}]")));
        }
        stack.push((mid, hi, qr, er, depth + 1));
        stack.push((lo, mid, ql, el, depth + 1));
    }
    if failed {
        return Err(Error::AccuracyNotReached { best: total, iterations: tol.max_iterations });
    }
    Ok(total)
}

/// Brent's method on a sign-changing bracket. The iterate never leaves
/// `[lo, hi]`; an exact zero at either end is returned immediately.
pub fn find_root<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, tol: ToleranceConfig) -> Result<f64> {
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut fa = f(a);
    let mut fb = f(b);
    if fa.is_nan() || fb.is_nan() {
        return Err(Error::Domain(format!("function is NaN at a bracket end [{a}, {b}]")));
    }
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::NoBracket { lo: a, hi: b });
    }

    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;
    for _ in 0..tol.max_iterations {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let width_tol = tol.rel_tol * b.abs() + tol.abs_tol;
        let m = 0.5 * (c - b);
        if fb.abs() <= tol.abs_tol || m.abs() <= 0.5 * width_tol || fb == 0.0 {
            return Ok(b);
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.25 * width_tol;
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            // inverse quadratic interpolation, or secant when only two points are distinct
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol1 * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(m) };
        fb = f(b);
        if fb.is_nan() {
            return Err(Error::Domain(format!("function is NaN at {b}")));
        }
    }
    let (l, h) = if b < c { (b, c) } else { (c, b) };
    Err(Error::RootNotConverged { lo: l, hi: h, iterations: tol.max_iterations })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Up,
    Down,
}

const EXPAND_CEILING: f64 = 1e308;
const EXPAND_FLOOR: f64 = 1e-300;

/// Walks geometrically (factor 2) from a positive `seed` until `f` changes
/// sign between consecutive probes and returns that bracket as `(lo, hi)`.
pub fn expand_bracket<F: FnMut(f64) -> f64>(mut f: F, seed: f64, direction: Direction) -> Result<(f64, f64)> {
    if !(seed.is_finite() && seed > 0.0) {
        return Err(Error::Domain(format!("bracket seed must be positive and finite, got {seed}")));
    }
    let f0 = f(seed);
    if !f0.is_finite() {
        return Err(Error::Domain(format!("function not finite at seed {seed}")));
    }
    if f0 == 0.0 {
        return Ok((seed, seed));
    }
    let mut prev = seed;
    loop {
        let next = match direction {
            Direction::Up => prev * 2.0,
            Direction::Down => prev * 0.5,
        };
        if next > EXPAND_CEILING || next < EXPAND_FLOOR {
            return Err(Error::NoRootInRange { last: prev });
        }
        let fv = f(next);
        if fv.is_nan() {
            return Err(Error::NoRootInRange { last: next });
        }
        if fv == 0.0 || fv.signum() != f0.signum() {
            return Ok(if next > prev { (prev, next) } else { (next, prev) });
        }
        prev = next;
    }
}

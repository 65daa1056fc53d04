//! Quadrature helpers built on the tanh-sinh rule from the `quadrature` crate.

use crate::error::{Error, Result};
use crate::special::sum_alternating;
use std::f64::consts::PI;

/// A quadrature value with its error estimate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quad {
    pub value: f64,
    pub error: f64,
}

impl Quad {
    fn add(self, other: Quad) -> Quad {
        Quad { value: self.value + other.value, error: self.error + other.error }
    }
}

const MAX_DEPTH: u32 = 24;
/// Cap on the number of subintervals visited by one adaptive integration.
const MAX_INTERVALS: usize = 4000;

/// Relative accuracy below which error estimates are dominated by rounding.
const REL_FLOOR: f64 = 5e-13;

/// Integrate `f` over the finite interval `[a, b]` to absolute tolerance `tol`,
/// bisecting where the tanh-sinh estimate does not meet the target.
pub fn finite(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<Quad> {
    let mut budget = MAX_INTERVALS;
    adaptive(f, a, b, tol, 0, &mut budget)
}

fn adaptive(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32, budget: &mut usize) -> Result<Quad> {
    let out = quadrature::double_exponential::integrate(f, a, b, tol);
    if out.integral.is_finite() {
        if out.error_estimate <= tol {
            return Ok(Quad { value: out.integral, error: out.error_estimate });
        }
        let scale = quadrature::double_exponential::integrate(|x| f(x).abs(), a, b, tol).integral;
        if out.error_estimate <= REL_FLOOR * scale {
            return Ok(Quad { value: out.integral, error: out.error_estimate });
        }
    }
    if depth >= MAX_DEPTH || *budget < 2 {
        return Err(Error::Quadrature(format!(
            "no convergence on [{a}, {b}] (estimate {:.3e})",
            out.error_estimate
        )));
    }
    *budget -= 2;
    let m = 0.5 * (a + b);
    let left = adaptive(f, a, m, 0.5 * tol, depth + 1, budget)?;
    let right = adaptive(f, m, b, 0.5 * tol, depth + 1, budget)?;
    Ok(left.add(right))
}

/// Integrate `f` over `[a, ∞)` through the map `x = a + u/(1-u)`.
///
/// Suitable for integrands that decay at least like `x^{-1-ε}`.
pub fn semi_infinite(f: &dyn Fn(f64) -> f64, a: f64, tol: f64) -> Result<Quad> {
    let g = |u: f64| {
        if u >= 1.0 {
            return 0.0;
        }
        let w = 1.0 - u;
        let v = f(a + u / w) / (w * w);
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    // Split so that the bulk near x = a is resolved separately from the tail.
    let mut total = Quad { value: 0.0, error: 0.0 };
    let knots = [0.0, 0.5, 0.8, 0.95, 1.0];
    for w in knots.windows(2) {
        total = total.add(finite(&g, w[0], w[1], tol / 4.0)?);
    }
    Ok(total)
}

/// Fourier cosine integral `∫_0^∞ f(t) cos(xt) dt` for `f` smooth and
/// eventually monotone.
///
/// The range is cut at the zeros of `cos(xt)`; the first pieces are summed
/// directly and the alternating tail is accelerated.
pub fn fourier_cos(f: &dyn Fn(f64) -> f64, x: f64, tol: f64) -> Result<Quad> {
    let x = x.abs();
    if x == 0.0 {
        return semi_infinite(f, 0.0, tol);
    }
    let zero = |k: usize| (k as f64 + 0.5) * PI / x;
    let integrand = |t: f64| f(t) * (x * t).cos();
    const DIRECT: usize = 16;
    const TAIL: usize = 40;
    let piece_tol = tol / (4.0 * (DIRECT + TAIL) as f64);
    let mut head = finite(&integrand, 0.0, zero(0), piece_tol)?;
    for k in 0..DIRECT {
        head = head.add(finite(&integrand, zero(k), zero(k + 1), piece_tol)?);
    }
    let mut pieces = Vec::with_capacity(TAIL);
    let mut perr = 0.0;
    for k in 0..TAIL {
        let q = finite(&integrand, zero(DIRECT + k), zero(DIRECT + k + 1), piece_tol)?;
        perr += q.error;
        pieces.push(q.value);
    }
    // pieces alternate in sign; feed magnitudes with the sign of the first
    let sign = if pieces[0] < 0.0 { -1.0 } else { 1.0 };
    let a = |k: usize| sign * pieces[k] * if k % 2 == 0 { 1.0 } else { -1.0 };
    let tail = sign * sum_alternating(a, TAIL);
    let tail_coarse = sign * sum_alternating(a, TAIL - 10);
    Ok(Quad {
        value: head.value + tail,
        error: head.error + perr + (tail - tail_coarse).abs(),
    })
}

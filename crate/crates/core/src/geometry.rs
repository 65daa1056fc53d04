//! Upper half-space model of hyperbolic three-space.
//!
//! A point is `z + rj` with `z ∈ ℂ` and `r > 0`. Matrices in `SL(2, ℂ)` act by
//! the quaternionic Möbius action.

use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// A point `z + rj` of upper half-space.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Point3 {
    pub z: Complex64,
    pub r: f64,
}

impl Point3 {
    pub fn new(z: Complex64, r: f64) -> Result<Point3> {
        if !(r > 0.0) || !r.is_finite() || !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::InvalidParameter(format!("not a point of upper half-space: {z} + {r}j")));
        }
        Ok(Point3 { z, r })
    }

    pub fn from_parts(x: f64, y: f64, r: f64) -> Result<Point3> {
        Point3::new(Complex64::new(x, y), r)
    }
}

/// A matrix of `PSL(2, ℂ)` stored with a canonical sign.
#[derive(Clone, Copy, Debug)]
pub struct MoebiusMatrix {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

/// Whether `w` has argument in `(-π/2, π/2]`.
fn canonical_arg(w: Complex64) -> bool {
    w.re > 0.0 || (w.re == 0.0 && w.im > 0.0)
}

impl MoebiusMatrix {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> MoebiusMatrix {
        let m = MoebiusMatrix { a, b, c, d };
        let first = [a, b, c, d].into_iter().find(|w| *w != Complex64::new(0.0, 0.0));
        match first {
            Some(w) if !canonical_arg(w) => m.negated(),
            _ => m,
        }
    }

    fn negated(self) -> MoebiusMatrix {
        MoebiusMatrix { a: -self.a, b: -self.b, c: -self.c, d: -self.d }
    }

    pub fn det(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    pub fn mul(&self, o: &MoebiusMatrix) -> MoebiusMatrix {
        MoebiusMatrix::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }

    /// Apply to a point of `ℍ³`.
    pub fn apply(&self, p: Point3) -> Point3 {
        apply(self, p)
    }
}

impl PartialEq for MoebiusMatrix {
    fn eq(&self, o: &MoebiusMatrix) -> bool {
        let same = |s: f64| {
            self.a == s * o.a && self.b == s * o.b && self.c == s * o.c && self.d == s * o.d
        };
        same(1.0) || same(-1.0)
    }
}

/// The image `M·P`.
pub fn apply(m: &MoebiusMatrix, p: Point3) -> Point3 {
    let czd = m.c * p.z + m.d;
    let den = czd.norm_sqr() + m.c.norm_sqr() * p.r * p.r;
    let z = ((m.a * p.z + m.b) * czd.conj() + m.a * m.c.conj() * p.r * p.r) / den;
    Point3 { z, r: p.r / den }
}

/// Point-pair invariant `δ(P, Q) = cosh d(P, Q)`.
pub fn delta(p: Point3, q: Point3) -> f64 {
    ((p.z - q.z).norm_sqr() + p.r * p.r + q.r * q.r) / (2.0 * p.r * q.r)
}

/// Values that can be combined linearly, so a stencil can act on them.
pub trait StencilValue: Sized {
    fn combine(terms: &[(f64, &Self)]) -> Self;
}

impl StencilValue for f64 {
    fn combine(terms: &[(f64, &f64)]) -> f64 {
        terms.iter().map(|(w, v)| w * **v).sum()
    }
}

impl StencilValue for Complex64 {
    fn combine(terms: &[(f64, &Complex64)]) -> Complex64 {
        terms.iter().map(|(w, v)| **v * *w).sum()
    }
}

impl StencilValue for Vec<Complex64> {
    fn combine(terms: &[(f64, &Vec<Complex64>)]) -> Vec<Complex64> {
        let n = terms[0].1.len();
        (0..n).map(|i| terms.iter().map(|(w, v)| v[i] * *w).sum()).collect()
    }
}

/// Default finite-difference step.
pub const DEFAULT_FD_STEP: f64 = 1e-3;

/// Central second-order approximation of the Laplacian
/// `Δ = -r²(∂x² + ∂y² + ∂r²) + r ∂r` at `p` on the 7-point stencil.
pub fn laplacian_fd<V: StencilValue>(f: impl Fn(Point3) -> V, p: Point3, h: f64) -> Result<V> {
    if !(h > 0.0) || p.r - h <= 0.0 {
        return Err(Error::StepTooLarge { r: p.r, h });
    }
    let at = |dx: f64, dy: f64, dr: f64| {
        f(Point3 { z: p.z + Complex64::new(dx, dy), r: p.r + dr })
    };
    let f0 = at(0.0, 0.0, 0.0);
    let (xp, xm) = (at(h, 0.0, 0.0), at(-h, 0.0, 0.0));
    let (yp, ym) = (at(0.0, h, 0.0), at(0.0, -h, 0.0));
    let (rp, rm) = (at(0.0, 0.0, h), at(0.0, 0.0, -h));
    let r2 = p.r * p.r / (h * h);
    let rr = p.r / (2.0 * h);
    Ok(V::combine(&[
        (6.0 * r2, &f0),
        (-r2, &xp),
        (-r2, &xm),
        (-r2, &yp),
        (-r2, &ym),
        (-r2 + rr, &rp),
        (-r2 - rr, &rm),
    ]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64, y: f64) -> Complex64 {
        Complex64::new(x, y)
    }

    #[test]
    fn translation_and_inversion() {
        let t = MoebiusMatrix::new(c(1., 0.), c(1., 0.), c(0., 0.), c(1., 0.));
        let p = Point3::from_parts(0.3, -0.2, 0.7).unwrap();
        let q = t.apply(p);
        assert_eq!(q.z, c(1.3, -0.2));
        assert_eq!(q.r, 0.7);
        let s = MoebiusMatrix::new(c(0., 0.), c(-1., 0.), c(1., 0.), c(0., 0.));
        let j = Point3::from_parts(0.0, 0.0, 1.0).unwrap();
        assert_eq!(s.apply(j), j);
        let q = s.apply(Point3::from_parts(0.0, 0.0, 2.0).unwrap());
        assert!(q.z.norm() < 1e-15 && (q.r - 0.5).abs() < 1e-15);
    }

    #[test]
    fn delta_values() {
        let p = Point3::from_parts(0.0, 0.0, 1.0).unwrap();
        assert_eq!(delta(p, p), 1.0);
        let q = Point3::from_parts(0.0, 0.0, 4.0).unwrap();
        assert_eq!(delta(p, q), 17.0 / 8.0);
    }

    #[test]
    fn sign_canonicalization() {
        let m = MoebiusMatrix::new(c(-1., 0.), c(2., 1.), c(0., 0.), c(-1., 0.));
        assert_eq!(m.a, c(1., 0.));
        let n = MoebiusMatrix::new(c(1., 0.), c(-2., -1.), c(0., 0.), c(1., 0.));
        assert_eq!(m, n);
    }

    #[test]
    fn laplacian_of_power_of_height() {
        let p = Point3::from_parts(0.1, 0.4, 1.3).unwrap();
        let s = 2.0;
        let v = laplacian_fd(|q: Point3| q.r.powf(1.0 + s), p, 1e-3).unwrap();
        let expect = (1.0 - s * s) * p.r.powf(1.0 + s);
        assert!((v - expect).abs() < 1e-5 * expect.abs());
        let one = laplacian_fd(|_q: Point3| 1.0, p, 1e-3).unwrap();
        assert!(one.abs() < 1e-6);
    }

    #[test]
    fn stencil_leaving_half_space() {
        let p = Point3::from_parts(0.0, 0.0, 0.01).unwrap();
        assert!(matches!(laplacian_fd(|q: Point3| q.r, p, 0.02), Err(Error::StepTooLarge { .. })));
    }
}

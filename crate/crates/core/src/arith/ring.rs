//! Exact arithmetic in `ℤ[i]` and `ℤ[ω]`, `ω = (-1 + √-3)/2`.
//!
//! Elements are `x + y·u` with `u = i` or `u = ω`. Arithmetic is on `i64`
//! with overflow checks; overflow panics rather than wrapping.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

const SQRT3_2: f64 = 0.866_025_403_784_438_6;

/// The ring of integers of `ℚ(i)` or `ℚ(√-3)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ring {
    Gauss,
    Eisenstein,
}

/// An element `x + y·u` of a [`Ring`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RingElement {
    pub ring: Ring,
    pub x: i64,
    pub y: i64,
}

fn ck(v: Option<i64>) -> i64 {
    v.expect("ring arithmetic overflowed 64 bits")
}

impl Ring {
    pub fn name(self) -> &'static str {
        match self {
            Ring::Gauss => "gauss",
            Ring::Eisenstein => "eisenstein",
        }
    }

    pub fn parse(s: &str) -> Option<Ring> {
        match s {
            "gauss" => Some(Ring::Gauss),
            "eisenstein" => Some(Ring::Eisenstein),
            _ => None,
        }
    }

    pub fn elt(self, x: i64, y: i64) -> RingElement {
        RingElement { ring: self, x, y }
    }

    pub fn zero(self) -> RingElement {
        self.elt(0, 0)
    }

    pub fn one(self) -> RingElement {
        self.elt(1, 0)
    }

    /// The generator `u` (`i` or `ω`).
    pub fn u(self) -> RingElement {
        self.elt(0, 1)
    }

    pub fn int(self, n: i64) -> RingElement {
        self.elt(n, 0)
    }

    /// `u` as a complex number.
    pub fn u_complex(self) -> Complex64 {
        match self {
            Ring::Gauss => Complex64::new(0.0, 1.0),
            Ring::Eisenstein => Complex64::new(-0.5, SQRT3_2),
        }
    }

    /// All units, ordered by argument starting at 1.
    pub fn units(self) -> Vec<RingElement> {
        match self {
            Ring::Gauss => vec![self.elt(1, 0), self.elt(0, 1), self.elt(-1, 0), self.elt(0, -1)],
            // 1, 1+ω, ω, -1, -1-ω, -ω at arguments 0, π/3, ..., 5π/3
            Ring::Eisenstein => vec![
                self.elt(1, 0),
                self.elt(1, 1),
                self.elt(0, 1),
                self.elt(-1, 0),
                self.elt(-1, -1),
                self.elt(0, -1),
            ],
        }
    }

    /// Units modulo ±1, each with canonical sign.
    pub fn units_mod_sign(self) -> Vec<RingElement> {
        self.units().into_iter().filter(|u| u.is_canonical_sign()).collect()
    }

    /// Absolute discriminant of the field.
    pub fn discriminant(self) -> i64 {
        match self {
            Ring::Gauss => 4,
            Ring::Eisenstein => 3,
        }
    }

    /// Basis coordinates `(x, y)` of a complex number.
    pub fn coords(self, z: Complex64) -> (f64, f64) {
        match self {
            Ring::Gauss => (z.re, z.im),
            Ring::Eisenstein => {
                let y = z.im / SQRT3_2;
                (z.re + 0.5 * y, y)
            }
        }
    }

    /// The ring element nearest to `z`.
    pub fn nearest(self, z: Complex64) -> RingElement {
        let (x, y) = self.coords(z);
        let mut best = self.zero();
        let mut bd = f64::INFINITY;
        for xi in [x.floor(), x.ceil()] {
            for yi in [y.floor(), y.ceil()] {
                let e = self.elt(xi as i64, yi as i64);
                let d = (e.to_complex() - z).norm_sqr();
                if d < bd {
                    bd = d;
                    best = e;
                }
            }
        }
        best
    }

    /// Ring elements within the closed disc of the given centre and radius
    /// (with a small float margin; callers re-check exactly where needed).
    pub fn elements_in_disc(self, center: Complex64, radius: f64) -> Vec<RingElement> {
        let mut out = Vec::new();
        let r2 = radius * radius * (1.0 + 1e-12) + 1e-12;
        match self {
            Ring::Gauss => {
                let (x0, x1) = ((center.re - radius).floor() as i64, (center.re + radius).ceil() as i64);
                let (y0, y1) = ((center.im - radius).floor() as i64, (center.im + radius).ceil() as i64);
                for x in x0..=x1 {
                    for y in y0..=y1 {
                        let e = self.elt(x, y);
                        if (e.to_complex() - center).norm_sqr() <= r2 {
                            out.push(e);
                        }
                    }
                }
            }
            Ring::Eisenstein => {
                let y0 = ((center.im - radius) / SQRT3_2).floor() as i64;
                let y1 = ((center.im + radius) / SQRT3_2).ceil() as i64;
                for y in y0..=y1 {
                    let x0 = (center.re - radius + 0.5 * y as f64).floor() as i64;
                    let x1 = (center.re + radius + 0.5 * y as f64).ceil() as i64;
                    for x in x0..=x1 {
                        let e = self.elt(x, y);
                        if (e.to_complex() - center).norm_sqr() <= r2 {
                            out.push(e);
                        }
                    }
                }
            }
        }
        out
    }

    /// All elements of norm at most `h`, exactly.
    pub fn elements_with_norm_at_most(self, h: i64) -> Vec<RingElement> {
        let mut v: Vec<_> = self
            .elements_in_disc(Complex64::new(0.0, 0.0), (h as f64).sqrt() + 1.0)
            .into_iter()
            .filter(|e| e.norm() <= h)
            .collect();
        v.sort();
        v
    }
}

impl RingElement {
    pub fn is_zero(&self) -> bool {
        self.x == 0 && self.y == 0
    }

    pub fn norm(&self) -> i64 {
        let (x, y) = (self.x, self.y);
        match self.ring {
            Ring::Gauss => ck(ck(x.checked_mul(x)).checked_add(ck(y.checked_mul(y)))),
            Ring::Eisenstein => {
                let xx = ck(x.checked_mul(x));
                let xy = ck(x.checked_mul(y));
                let yy = ck(y.checked_mul(y));
                ck(ck(xx.checked_sub(xy)).checked_add(yy))
            }
        }
    }

    pub fn conj(&self) -> RingElement {
        match self.ring {
            Ring::Gauss => self.ring.elt(self.x, -self.y),
            // conj(ω) = -1 - ω
            Ring::Eisenstein => self.ring.elt(ck(self.x.checked_sub(self.y)), -self.y),
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        let u = self.ring.u_complex();
        Complex64::new(self.x as f64, 0.0) + u * self.y as f64
    }

    pub fn is_unit(&self) -> bool {
        self.norm() == 1
    }

    /// True for rational integers.
    pub fn is_real(&self) -> bool {
        self.y == 0
    }

    /// Argument in `(-π/2, π/2]`, decided exactly.
    pub fn is_canonical_sign(&self) -> bool {
        let (re2, im) = match self.ring {
            Ring::Gauss => (self.x, self.y),
            Ring::Eisenstein => (ck((2 * self.x).checked_sub(self.y)), self.y),
        };
        re2 > 0 || (re2 == 0 && im > 0)
    }

    pub fn scale(&self, k: i64) -> RingElement {
        self.ring.elt(ck(self.x.checked_mul(k)), ck(self.y.checked_mul(k)))
    }

    /// Euclidean division: `self = q·d + r` with `N(r) < N(d)`.
    pub fn div_rem(&self, d: &RingElement) -> (RingElement, RingElement) {
        assert!(!d.is_zero(), "division by zero in ring");
        let w = *self * d.conj();
        let n = d.norm();
        let fl = |a: i64| a.div_euclid(n);
        let mut best: Option<(i64, RingElement, RingElement)> = None;
        for qx in [fl(w.x), fl(w.x) + 1] {
            for qy in [fl(w.y), fl(w.y) + 1] {
                let q = self.ring.elt(qx, qy);
                let r = *self - q * *d;
                let rn = r.norm();
                if best.as_ref().map_or(true, |b| rn < b.0) {
                    best = Some((rn, q, r));
                }
            }
        }
        let (rn, q, r) = best.unwrap();
        debug_assert!(rn < n);
        (q, r)
    }

    /// Exact quotient if `d` divides `self`.
    pub fn exact_div(&self, d: &RingElement) -> Option<RingElement> {
        if d.is_zero() {
            return if self.is_zero() { Some(*self) } else { None };
        }
        let w = *self * d.conj();
        let n = d.norm();
        if w.x % n == 0 && w.y % n == 0 {
            Some(self.ring.elt(w.x / n, w.y / n))
        } else {
            None
        }
    }

    pub fn divides(&self, a: &RingElement) -> bool {
        a.exact_div(self).is_some()
    }

    /// Greatest common divisor with canonical sign (zero if both are zero).
    pub fn gcd(&self, o: &RingElement) -> RingElement {
        self.xgcd(o).0
    }

    /// Extended Euclid: `(g, s, t)` with `s·self + t·o = g`.
    pub fn xgcd(&self, o: &RingElement) -> (RingElement, RingElement, RingElement) {
        let ring = self.ring;
        let (mut r0, mut r1) = (*self, *o);
        let (mut s0, mut s1) = (ring.one(), ring.zero());
        let (mut t0, mut t1) = (ring.zero(), ring.one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = r1;
            r1 = r;
            let s = s0 - q * s1;
            s0 = s1;
            s1 = s;
            let t = t0 - q * t1;
            t0 = t1;
            t1 = t;
        }
        // normalise the gcd to canonical sign via a unit
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        for u in ring.units() {
            let g = r0 * u;
            if g.canonical_unit_rep() {
                return (g, s0 * u, t0 * u);
            }
        }
        unreachable!()
    }

    /// True when this element is the canonical associate: argument in
    /// `[0, 2π/|units|)`.
    pub fn canonical_unit_rep(&self) -> bool {
        if self.is_zero() {
            return true;
        }
        match self.ring {
            Ring::Gauss => self.x > 0 && self.y >= 0,
            // argument in [0, π/3): 0 ≤ y < x in the basis 1, ω
            Ring::Eisenstein => self.y >= 0 && self.y < self.x,
        }
    }

    /// The canonical associate of `self`.
    pub fn associate(&self) -> RingElement {
        self.ring.units().into_iter().map(|u| *self * u).find(|g| g.canonical_unit_rep()).unwrap_or(*self)
    }

    /// An exact square root if one exists (canonical sign).
    pub fn sqrt_exact(&self) -> Option<RingElement> {
        if self.is_zero() {
            return Some(*self);
        }
        let s = self.to_complex().sqrt();
        let c = self.ring.nearest(s);
        for dx in -1..=1 {
            for dy in -1..=1 {
                let r = self.ring.elt(c.x + dx, c.y + dy);
                if r * r == *self {
                    return Some(if r.is_canonical_sign() { r } else { -r });
                }
            }
        }
        None
    }

    pub fn pow(&self, n: u32) -> RingElement {
        let mut acc = self.ring.one();
        for _ in 0..n {
            acc = acc * *self;
        }
        acc
    }
}

impl Ord for RingElement {
    fn cmp(&self, o: &RingElement) -> Ordering {
        (self.ring, self.x, self.y).cmp(&(o.ring, o.x, o.y))
    }
}

impl PartialOrd for RingElement {
    fn partial_cmp(&self, o: &RingElement) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Add for RingElement {
    type Output = RingElement;
    fn add(self, o: RingElement) -> RingElement {
        debug_assert_eq!(self.ring, o.ring);
        self.ring.elt(ck(self.x.checked_add(o.x)), ck(self.y.checked_add(o.y)))
    }
}

impl Sub for RingElement {
    type Output = RingElement;
    fn sub(self, o: RingElement) -> RingElement {
        debug_assert_eq!(self.ring, o.ring);
        self.ring.elt(ck(self.x.checked_sub(o.x)), ck(self.y.checked_sub(o.y)))
    }
}

impl Neg for RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        self.ring.elt(-self.x, -self.y)
    }
}

impl Mul for RingElement {
    type Output = RingElement;
    fn mul(self, o: RingElement) -> RingElement {
        debug_assert_eq!(self.ring, o.ring);
        let m = |a: i64, b: i64| ck(a.checked_mul(b));
        let xx = m(self.x, o.x);
        let yy = m(self.y, o.y);
        let xy = ck(m(self.x, o.y).checked_add(m(self.y, o.x)));
        match self.ring {
            // u² = -1
            Ring::Gauss => self.ring.elt(ck(xx.checked_sub(yy)), xy),
            // u² = -1 - u
            Ring::Eisenstein => self.ring.elt(ck(xx.checked_sub(yy)), ck(xy.checked_sub(yy))),
        }
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let u = match self.ring {
            Ring::Gauss => "i",
            Ring::Eisenstein => "w",
        };
        match (self.x, self.y) {
            (x, 0) => write!(f, "{x}"),
            (0, 1) => write!(f, "{u}"),
            (0, -1) => write!(f, "-{u}"),
            (0, y) => write!(f, "{y}{u}"),
            (x, 1) => write!(f, "{x}+{u}"),
            (x, -1) => write!(f, "{x}-{u}"),
            (x, y) if y > 0 => write!(f, "{x}+{y}{u}"),
            (x, y) => write!(f, "{x}{y}{u}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_relations() {
        let i = Ring::Gauss.u();
        assert_eq!(i * i, Ring::Gauss.int(-1));
        let w = Ring::Eisenstein.u();
        assert_eq!(w * w * w, Ring::Eisenstein.one());
        assert_eq!(w * w + w + Ring::Eisenstein.one(), Ring::Eisenstein.zero());
        assert_eq!(w.conj(), w * w);
    }

    #[test]
    fn norms_match_complex_modulus() {
        for ring in [Ring::Gauss, Ring::Eisenstein] {
            for x in -4..=4 {
                for y in -4..=4 {
                    let e = ring.elt(x, y);
                    assert!((e.norm() as f64 - e.to_complex().norm_sqr()).abs() < 1e-9);
                    assert_eq!((e * e.conj()).y, 0);
                }
            }
        }
    }

    #[test]
    fn units_are_units() {
        assert_eq!(Ring::Gauss.units().len(), 4);
        assert_eq!(Ring::Eisenstein.units().len(), 6);
        for ring in [Ring::Gauss, Ring::Eisenstein] {
            assert!(ring.units().iter().all(|u| u.is_unit()));
            assert_eq!(ring.units_mod_sign().len(), ring.units().len() / 2);
        }
    }

    #[test]
    fn euclidean_division_and_gcd() {
        for ring in [Ring::Gauss, Ring::Eisenstein] {
            for (a, b) in [((7, 3), (2, -1)), ((11, -5), (3, 4)), ((0, 9), (1, 1)), ((13, 0), (2, 3))] {
                let a = ring.elt(a.0, a.1);
                let b = ring.elt(b.0, b.1);
                let (q, r) = a.div_rem(&b);
                assert_eq!(q * b + r, a);
                assert!(r.norm() < b.norm());
                let (g, s, t) = a.xgcd(&b);
                assert_eq!(s * a + t * b, g);
                assert!(g.divides(&a) && g.divides(&b));
            }
        }
    }

    #[test]
    fn canonical_associates_unique() {
        for ring in [Ring::Gauss, Ring::Eisenstein] {
            for x in -3..=3 {
                for y in -3..=3 {
                    let e = ring.elt(x, y);
                    if e.is_zero() {
                        continue;
                    }
                    let reps: Vec<_> = ring.units().iter().map(|u| e * *u).filter(|g| g.canonical_unit_rep()).collect();
                    assert_eq!(reps.len(), 1, "{e}");
                }
            }
        }
    }

    #[test]
    fn square_roots() {
        let g = Ring::Gauss;
        assert_eq!(g.int(-4).sqrt_exact(), Some(g.elt(0, 2)));
        assert_eq!(g.int(-3).sqrt_exact(), None);
        let e = Ring::Eisenstein;
        // -3 = (1 + 2ω)²
        let r = e.int(-3).sqrt_exact().unwrap();
        assert_eq!(r * r, e.int(-3));
        assert_eq!(e.int(-4).sqrt_exact(), None);
    }
}

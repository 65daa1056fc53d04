//! Elements of `PSL(2, 𝒪)` with exact entries.

use super::ring::{Ring, RingElement};
use crate::error::{Error, Result};
use crate::geometry::MoebiusMatrix;
use std::fmt;

/// A determinant-one matrix over `𝒪`, identified with its negative.
///
/// The stored representative has its first nonzero entry (in the order
/// `a, b, c, d`) with argument in `(-π/2, π/2]`, so derived equality and
/// hashing are insensitive to `±I`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub a: RingElement,
    pub b: RingElement,
    pub c: RingElement,
    pub d: RingElement,
}

impl GroupElement {
    /// Build from entries, checking `ad - bc = 1`.
    pub fn new(a: RingElement, b: RingElement, c: RingElement, d: RingElement) -> Result<GroupElement> {
        let ring = a.ring;
        if [b, c, d].iter().any(|e| e.ring != ring) {
            return Err(Error::InvalidParameter("entries from different rings".into()));
        }
        if a * d - b * c != ring.one() {
            return Err(Error::InvalidParameter(format!("determinant of [[{a}, {b}], [{c}, {d}]] is not 1")));
        }
        Ok(Self::from_entries_unchecked(a, b, c, d))
    }

    pub(crate) fn from_entries_unchecked(a: RingElement, b: RingElement, c: RingElement, d: RingElement) -> GroupElement {
        let first = [a, b, c, d].into_iter().find(|e| !e.is_zero()).expect("zero matrix");
        if first.is_canonical_sign() {
            GroupElement { a, b, c, d }
        } else {
            GroupElement { a: -a, b: -b, c: -c, d: -d }
        }
    }

    /// Build from the eight integer coordinates `a_x a_y b_x b_y c_x c_y d_x d_y`.
    pub fn from_coords(ring: Ring, v: [i64; 8]) -> Result<GroupElement> {
        GroupElement::new(ring.elt(v[0], v[1]), ring.elt(v[2], v[3]), ring.elt(v[4], v[5]), ring.elt(v[6], v[7]))
    }

    pub fn coords(&self) -> [i64; 8] {
        [self.a.x, self.a.y, self.b.x, self.b.y, self.c.x, self.c.y, self.d.x, self.d.y]
    }

    pub fn ring(&self) -> Ring {
        self.a.ring
    }

    pub fn identity(ring: Ring) -> GroupElement {
        GroupElement { a: ring.one(), b: ring.zero(), c: ring.zero(), d: ring.one() }
    }

    pub fn is_identity(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.a == self.d && self.a.is_unit() && self.a.is_real()
    }

    pub fn inverse(&self) -> GroupElement {
        Self::from_entries_unchecked(self.d, -self.b, -self.c, self.a)
    }

    /// Trace of the canonical representative (defined up to sign in PSL).
    pub fn trace(&self) -> RingElement {
        self.a + self.d
    }

    pub fn pow(&self, n: i64) -> GroupElement {
        let base = if n < 0 { self.inverse() } else { *self };
        let mut acc = GroupElement::identity(self.ring());
        let mut b = base;
        let mut k = n.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * b;
            }
            b = b * b;
            k >>= 1;
        }
        acc
    }

    /// `g · self · g⁻¹`.
    pub fn conj_by(&self, g: &GroupElement) -> GroupElement {
        *g * *self * g.inverse()
    }

    /// Largest entry norm.
    pub fn height(&self) -> i64 {
        [self.a, self.b, self.c, self.d].iter().map(|e| e.norm()).max().unwrap()
    }

    pub fn to_moebius(&self) -> MoebiusMatrix {
        MoebiusMatrix::new(self.a.to_complex(), self.b.to_complex(), self.c.to_complex(), self.d.to_complex())
    }
}

impl std::ops::Mul for GroupElement {
    type Output = GroupElement;
    fn mul(self, o: GroupElement) -> GroupElement {
        GroupElement::from_entries_unchecked(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_identification() {
        let g = Ring::Gauss;
        let m = GroupElement::new(g.int(-1), g.int(-1), g.zero(), g.int(-1)).unwrap();
        let n = GroupElement::new(g.one(), g.one(), g.zero(), g.one()).unwrap();
        assert_eq!(m, n);
        assert!(GroupElement::new(g.int(2), g.one(), g.one(), g.int(2)).is_err());
    }

    #[test]
    fn inverse_and_powers() {
        let g = Ring::Eisenstein;
        let m = GroupElement::new(g.int(2), g.one(), g.one(), g.one()).unwrap();
        assert!((m * m.inverse()).is_identity());
        assert_eq!(m.pow(3), m * m * m);
        assert_eq!(m.pow(-2), m.inverse() * m.inverse());
        assert!(m.pow(0).is_identity());
    }
}

//! Residues of `𝒪` modulo a principal ideal.

use super::ring::{Ring, RingElement};
use crate::error::{Error, Result};

/// The quotient ring `𝒪/q𝒪` with canonical residues.
///
/// The ideal, viewed as a sublattice of `ℤ²`, is put in echelon form
/// `{(x1, y1), (x2, 0)}`; residues are the `(x, y)` with `0 ≤ y < y1` and
/// `0 ≤ x < x2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub ring: Ring,
    pub modulus: RingElement,
    x1: i64,
    y1: i64,
    x2: i64,
}

impl Quotient {
    pub fn new(modulus: RingElement) -> Result<Quotient> {
        if modulus.is_zero() {
            return Err(Error::InvalidParameter("zero modulus".into()));
        }
        let ring = modulus.ring;
        let r1 = modulus;
        let r2 = modulus * ring.u();
        // Euclid on the second coordinate
        let (mut p, mut q) = ((r1.x, r1.y), (r2.x, r2.y));
        while q.1 != 0 {
            let k = p.1.div_euclid(q.1);
            p = (p.0 - k * q.0, p.1 - k * q.1);
            std::mem::swap(&mut p, &mut q);
        }
        // now q = (x2, 0), p = (x1, y1)
        let (mut x1, mut y1) = p;
        if y1 < 0 {
            x1 = -x1;
            y1 = -y1;
        }
        let x2 = q.0.abs();
        debug_assert_eq!(x2 * y1, modulus.norm());
        Ok(Quotient { ring, modulus, x1, y1, x2 })
    }

    /// Number of residues, `N(q)`.
    pub fn size(&self) -> i64 {
        self.x2 * self.y1
    }

    pub fn reduce(&self, e: RingElement) -> RingElement {
        let k = e.y.div_euclid(self.y1);
        let x = e.x - k * self.x1;
        let y = e.y - k * self.y1;
        self.ring.elt(x.rem_euclid(self.x2), y)
    }

    pub fn is_zero(&self, e: RingElement) -> bool {
        self.reduce(e).is_zero()
    }

    pub fn residues(&self) -> Vec<RingElement> {
        let mut v = Vec::with_capacity(self.size() as usize);
        for y in 0..self.y1 {
            for x in 0..self.x2 {
                v.push(self.ring.elt(x, y));
            }
        }
        v
    }

    /// Multiplicative inverse modulo `q`, if it exists.
    pub fn inverse(&self, e: RingElement) -> Option<RingElement> {
        let (g, s, _) = e.xgcd(&self.modulus);
        if !g.is_unit() {
            return None;
        }
        Some(self.reduce(s * g.conj()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residue_counts_and_reduction() {
        for (ring, q) in [(Ring::Gauss, (1, 1)), (Ring::Gauss, (3, 0)), (Ring::Gauss, (2, 1)), (Ring::Eisenstein, (1, 2)), (Ring::Eisenstein, (2, 0))] {
            let q = ring.elt(q.0, q.1);
            let quo = Quotient::new(q).unwrap();
            let res = quo.residues();
            assert_eq!(res.len() as i64, q.norm());
            // residues are pairwise incongruent and reduce to themselves
            for (i, a) in res.iter().enumerate() {
                assert_eq!(quo.reduce(*a), *a);
                for b in &res[i + 1..] {
                    assert!(!q.divides(&(*a - *b)));
                }
            }
            // reduction differs by a multiple of q
            let e = ring.elt(17, -23);
            assert!(q.divides(&(e - quo.reduce(e))));
        }
    }
}

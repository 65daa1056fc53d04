//! The two supported Bianchi groups and their cusp stabilizers.

use super::element::GroupElement;
use super::ring::{Ring, RingElement};
use crate::error::{Error, Result};
use crate::lattice_lfn::Lattice;
use crate::special::{CATALAN, L2_CHI3};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

/// A supported group: `PSL(2, ℤ[i])` or `PSL(2, ℤ[ω])`.
///
/// Both rings have class number one, so the cusps are exactly `ℙ¹(K)` and
/// there is a single cusp class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Group {
    Picard,
    Eisenstein,
}

impl FromStr for Group {
    type Err = Error;
    fn from_str(s: &str) -> Result<Group> {
        match s.to_ascii_lowercase().as_str() {
            "picard" | "gauss" => Ok(Group::Picard),
            "eisenstein" => Ok(Group::Eisenstein),
            other => Err(Error::UnsupportedGroup(other.to_string())),
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Group {
    pub fn name(self) -> &'static str {
        match self {
            Group::Picard => "picard",
            Group::Eisenstein => "eisenstein",
        }
    }

    pub fn ring(self) -> Ring {
        match self {
            Group::Picard => Ring::Gauss,
            Group::Eisenstein => Ring::Eisenstein,
        }
    }

    /// Hyperbolic volume of the quotient, `|D|^{3/2} ζ_K(2) / (4π²)`.
    pub fn volume(self) -> f64 {
        let zeta2 = PI * PI / 6.0;
        let (d, l): (f64, f64) = match self {
            Group::Picard => (4.0, CATALAN),
            Group::Eisenstein => (3.0, L2_CHI3),
        };
        d.powf(1.5) * zeta2 * l / (4.0 * PI * PI)
    }

    /// Source of the volume constant.
    pub fn volume_note(self) -> &'static str {
        match self {
            Group::Picard => "Humbert's formula: |D|^(3/2) zeta_K(2)/(4 pi^2) = G/3, G Catalan's constant",
            Group::Eisenstein => {
                "Humbert's formula: |D|^(3/2) zeta_K(2)/(4 pi^2) = sqrt(3) L(2, chi_-3)/8; twelve times it is the figure-eight knot volume"
            }
        }
    }

    /// Generators of the cusp stabilizer `Γ∞` and its lattice.
    pub fn stabilizer_data(self) -> StabilizerData {
        let ring = self.ring();
        let (o, z) = (ring.one(), ring.zero());
        let mk = |a: RingElement, b: RingElement, c: RingElement, d: RingElement| GroupElement::new(a, b, c, d).unwrap();
        let r = mk(o, o, z, o);
        let s = mk(o, ring.u(), z, o);
        match self {
            Group::Picard => {
                let i = ring.u();
                StabilizerData {
                    e: mk(i, z, z, -i),
                    r,
                    s,
                    index: 2,
                    lattice: Lattice::gaussian(),
                    epsilon: Complex64::new(0.0, 1.0),
                    epsilon_unit: i,
                    torsion_order: 2,
                }
            }
            Group::Eisenstein => {
                // 1 + ω = e^{iπ/3}, inverse -ω
                let eps = ring.elt(1, 1);
                StabilizerData {
                    e: mk(eps, z, z, -ring.u()),
                    r,
                    s,
                    index: 3,
                    lattice: Lattice::eisenstein(),
                    epsilon: Complex64::from_polar(1.0, PI / 3.0),
                    epsilon_unit: eps,
                    torsion_order: 3,
                }
            }
        }
    }

    /// A generating set of the group.
    pub fn generators(self) -> Vec<GroupElement> {
        let st = self.stabilizer_data();
        let ring = self.ring();
        let inv = GroupElement::new(ring.zero(), -ring.one(), ring.one(), ring.zero()).unwrap();
        vec![st.r, st.s, inv, st.e]
    }
}

/// Generators and lattice data of the stabilizer of `∞`.
#[derive(Clone, Debug)]
pub struct StabilizerData {
    /// Elliptic generator of the torsion part.
    pub e: GroupElement,
    /// Translation by 1.
    pub r: GroupElement,
    /// Translation by `τ`.
    pub s: GroupElement,
    /// `[Γ∞ : Γ'∞]`.
    pub index: u32,
    /// The translation lattice `ℤ ⊕ ℤτ`.
    pub lattice: Lattice,
    /// Upper-left entry of `E` as a complex root of unity.
    pub epsilon: Complex64,
    pub epsilon_unit: RingElement,
    /// Order of `E` in `PSL`.
    pub torsion_order: u32,
}

impl StabilizerData {
    /// The torsion elements `E^k`, `0 ≤ k < m∞`.
    pub fn torsion(&self) -> Vec<GroupElement> {
        (0..self.torsion_order as i64).map(|k| self.e.pow(k)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::classify::{classify, ElementClassification};

    #[test]
    fn stabilizer_relations() {
        for g in [Group::Picard, Group::Eisenstein] {
            let st = g.stabilizer_data();
            assert_eq!(st.r * st.s, st.s * st.r);
            assert_eq!(classify(&st.r), ElementClassification::Parabolic);
            assert_eq!(classify(&st.s), ElementClassification::Parabolic);
            match classify(&st.e) {
                ElementClassification::Elliptic { order, .. } => assert_eq!(order, st.torsion_order),
                other => panic!("{other:?}"),
            }
            assert_eq!(st.index, st.torsion_order);
            // E R E⁻¹ R⁻¹ is a translation in the lattice
            let k = st.e * st.r * st.e.inverse() * st.r.inverse();
            assert!(k.c.is_zero() && k.a == k.d && k.a.is_real());
            assert!([1, 2, 3, 4, 6].contains(&st.index));
        }
        assert_eq!(Group::Picard.stabilizer_data().index, 2);
        assert_eq!(Group::Eisenstein.stabilizer_data().index, 3);
    }

    #[test]
    fn volumes() {
        assert!((Group::Picard.volume() - 0.305_321_864_725_739_7).abs() < 1e-12);
        assert!((12.0 * Group::Eisenstein.volume() - 2.029_883_212_819_307).abs() < 1e-12);
    }

    #[test]
    fn parse_descriptor() {
        assert_eq!("picard".parse::<Group>().unwrap(), Group::Picard);
        assert!(matches!("bianchi-5".parse::<Group>(), Err(Error::UnsupportedGroup(_))));
    }
}

//! Finite-dimensional unitary representations of the supported groups.
//!
//! A representation is either trivial or factors through a congruence
//! quotient `PSL(2, 𝒪/q)`. Congruence representations are tabulated once by
//! a breadth-first search from the images of the generators, which also
//! checks that the images define a homomorphism of the finite quotient.

mod file;
mod spaces;

pub use file::{parse_complex_entry, parse_representation};
pub use spaces::{joint_spectrum, restrict_to_lattice, singular_spaces, RootOfUnity, SingularData};

use crate::arith::{Group, GroupElement, Quotient, Ring, RingElement};
use crate::cyclotomic::Cyclo;
use crate::error::{Error, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;
use std::collections::{HashMap, VecDeque};
use std::f64::consts::PI;

/// How a representation is evaluated.
#[derive(Clone, Debug)]
pub enum RepKind {
    Trivial,
    /// Factors through `PSL(2, 𝒪/q)`.
    Congruence { modulus: RingElement },
}

/// Reduced matrix modulo `q`, canonical up to sign.
type Key = [i64; 8];

#[derive(Clone, Debug)]
struct Table {
    quotient: Quotient,
    index: HashMap<Key, usize>,
    images: Vec<DMatrix<Complex64>>,
}

/// A unitary representation `χ : Γ → U(V)`.
#[derive(Clone, Debug)]
pub struct UnitaryRep {
    pub group: Group,
    pub dim: usize,
    pub kind: RepKind,
    pub name: String,
    table: Option<Table>,
}

/// Tolerance for unitarity and homomorphism checks.
const TOL: f64 = 1e-10;

fn max_abs_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn check_unitary(m: &DMatrix<Complex64>, what: &str) -> Result<()> {
    let n = m.nrows();
    if m.ncols() != n {
        return Err(Error::InvalidRepresentation(format!("image of {what} is not square")));
    }
    let err = max_abs_diff(&(m * m.adjoint()), &DMatrix::identity(n, n));
    if err > 1e-12 {
        return Err(Error::NonUnitary(format!("image of {what}: |MM* - I| = {err:.3e}")));
    }
    Ok(())
}

fn reduce_key(q: &Quotient, g: &GroupElement) -> Key {
    let k = |s: i64| -> Key {
        let e = |x: RingElement| q.reduce(x.scale(s));
        let (a, b, c, d) = (e(g.a), e(g.b), e(g.c), e(g.d));
        [a.x, a.y, b.x, b.y, c.x, c.y, d.x, d.y]
    };
    k(1).min(k(-1))
}

fn key_to_element(ring: Ring, k: &Key) -> (RingElement, RingElement, RingElement, RingElement) {
    (ring.elt(k[0], k[1]), ring.elt(k[2], k[3]), ring.elt(k[4], k[5]), ring.elt(k[6], k[7]))
}

fn mul_key(q: &Quotient, x: &Key, y: &Key) -> Key {
    let ring = q.ring;
    let (a, b, c, d) = key_to_element(ring, x);
    let (e, f, g, h) = key_to_element(ring, y);
    let r = |z: RingElement| q.reduce(z);
    let m = [r(a * e + b * g), r(a * f + b * h), r(c * e + d * g), r(c * f + d * h)];
    let neg = m.map(|z| q.reduce(-z));
    let flat = |m: [RingElement; 4]| [m[0].x, m[0].y, m[1].x, m[1].y, m[2].x, m[2].y, m[3].x, m[3].y];
    flat(m).min(flat(neg))
}

impl UnitaryRep {
    pub fn trivial(group: Group, dim: usize) -> UnitaryRep {
        UnitaryRep { group, dim: dim.max(1), kind: RepKind::Trivial, name: "trivial".into(), table: None }
    }

    /// A representation of `PSL(2, 𝒪/q)` given by the images of the
    /// generators `R, S, J, E` of [`Group::generators`].
    pub fn congruence(group: Group, modulus: RingElement, images: [DMatrix<Complex64>; 4], name: &str) -> Result<UnitaryRep> {
        if modulus.ring != group.ring() {
            return Err(Error::InvalidRepresentation("ideal generator lies in the wrong ring".into()));
        }
        if modulus.is_unit() {
            return Err(Error::InvalidRepresentation("ideal generator must not be a unit".into()));
        }
        let dim = images[0].nrows();
        for (m, nm) in images.iter().zip(["R", "S", "J", "E"]) {
            if m.nrows() != dim {
                return Err(Error::InvalidRepresentation(format!("image of {nm} has the wrong size")));
            }
            check_unitary(m, nm)?;
        }
        let quotient = Quotient::new(modulus)?;
        let gens: Vec<Key> = group.generators().iter().map(|g| reduce_key(&quotient, g)).collect();
        let id = reduce_key(&quotient, &GroupElement::identity(group.ring()));
        let mut index = HashMap::new();
        let mut keys = vec![id];
        let mut mats = vec![DMatrix::<Complex64>::identity(dim, dim)];
        index.insert(id, 0usize);
        let mut queue = VecDeque::from([0usize]);
        let cap = 2_000_000 / (dim * dim).max(1);
        while let Some(i) = queue.pop_front() {
            for (g, img) in gens.iter().zip(&images) {
                let k = mul_key(&quotient, &keys[i], g);
                let m = &mats[i] * img;
                match index.get(&k) {
                    Some(&j) => {
                        let err = max_abs_diff(&mats[j], &m);
                        if err > TOL {
                            return Err(Error::InvalidRepresentation(format!(
                                "generator images do not define a representation modulo {modulus} (defect {err:.3e})"
                            )));
                        }
                    }
                    None => {
                        if keys.len() >= cap {
                            return Err(Error::InvalidRepresentation("congruence quotient too large".into()));
                        }
                        index.insert(k, keys.len());
                        keys.push(k);
                        mats.push(m);
                        queue.push_back(keys.len() - 1);
                    }
                }
            }
        }
        Ok(UnitaryRep {
            group,
            dim,
            kind: RepKind::Congruence { modulus },
            name: name.to_string(),
            table: Some(Table { quotient, index, images: mats }),
        })
    }

    /// The default prime ideal: `1 + i` for Picard, `1 + 2ω` for Eisenstein.
    pub fn default_modulus(group: Group) -> RingElement {
        match group {
            Group::Picard => group.ring().elt(1, 1),
            Group::Eisenstein => group.ring().elt(1, 2),
        }
    }

    /// The nontrivial character of order two through `PSL(2, 𝔽₂) ≅ S₃`
    /// (Picard group only).
    pub fn picard_sign() -> UnitaryRep {
        let g = Group::Picard;
        let m = |x: f64| DMatrix::from_element(1, 1, Complex64::new(x, 0.0));
        UnitaryRep::congruence(g, Self::default_modulus(g), [m(-1.0), m(-1.0), m(-1.0), m(1.0)], "sign")
            .expect("the sign character is a representation")
    }

    /// A character of order three through `PSL(2, 𝔽₃) ≅ A₄`
    /// (Eisenstein group only).
    pub fn eisenstein_cubic() -> UnitaryRep {
        let g = Group::Eisenstein;
        let z = DMatrix::from_element(1, 1, Complex64::from_polar(1.0, 2.0 * PI / 3.0));
        let one = DMatrix::from_element(1, 1, Complex64::new(1.0, 0.0));
        UnitaryRep::congruence(g, Self::default_modulus(g), [z.clone(), z, one.clone(), one], "cubic")
            .expect("the cubic character is a representation")
    }

    /// The permutation representation on `ℙ¹(𝒪/q)` for a prime `q`.
    pub fn projective_line(group: Group, modulus: RingElement) -> Result<UnitaryRep> {
        let q = Quotient::new(modulus)?;
        let res = q.residues();
        if res.iter().skip(1).any(|r| q.inverse(*r).is_none()) {
            return Err(Error::InvalidRepresentation(format!("{modulus} does not generate a prime ideal")));
        }
        // points (x : 1) then (1 : 0)
        let n = res.len() + 1;
        let pos = |x: RingElement| res.iter().position(|r| *r == x).unwrap();
        let act = |g: &GroupElement| -> DMatrix<Complex64> {
            let mut m = DMatrix::zeros(n, n);
            for p in 0..n {
                let (x, y) = if p < res.len() { (res[p], q.ring.one()) } else { (q.ring.one(), q.ring.zero()) };
                let (u, v) = (q.reduce(g.a * x + g.b * y), q.reduce(g.c * x + g.d * y));
                let target = if v.is_zero() { n - 1 } else { pos(q.reduce(u * q.inverse(v).unwrap())) };
                m[(target, p)] = Complex64::new(1.0, 0.0);
            }
            m
        };
        let gens = group.generators();
        let imgs = [act(&gens[0]), act(&gens[1]), act(&gens[2]), act(&gens[3])];
        UnitaryRep::congruence(group, modulus, imgs, "projective-line")
    }

    /// A built-in representation by name: `trivial`, `sign` (Picard),
    /// `cubic` (Eisenstein) or `perm` (permutation representation on
    /// `ℙ¹(𝒪/q)` for the default prime).
    pub fn builtin(group: Group, name: &str) -> Result<UnitaryRep> {
        match (name, group) {
            ("trivial", _) => Ok(UnitaryRep::trivial(group, 1)),
            ("sign", Group::Picard) => Ok(UnitaryRep::picard_sign()),
            ("cubic", Group::Eisenstein) => Ok(UnitaryRep::eisenstein_cubic()),
            ("perm", _) => UnitaryRep::projective_line(group, Self::default_modulus(group)),
            _ => Err(Error::InvalidRepresentation(format!("no built-in representation '{name}' for {group}"))),
        }
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self.kind, RepKind::Trivial)
    }

    /// Order of the finite quotient the representation factors through.
    pub fn quotient_order(&self) -> usize {
        self.table.as_ref().map_or(1, |t| t.images.len())
    }

    fn slot(&self, g: &GroupElement) -> Option<usize> {
        let t = self.table.as_ref()?;
        Some(t.index[&reduce_key(&t.quotient, g)])
    }

    /// `χ(g)`.
    pub fn eval(&self, g: &GroupElement) -> DMatrix<Complex64> {
        match (&self.table, self.slot(g)) {
            (Some(t), Some(i)) => t.images[i].clone(),
            _ => DMatrix::identity(self.dim, self.dim),
        }
    }

    /// `tr χ(g)` in floating point.
    pub fn trace(&self, g: &GroupElement) -> Complex64 {
        match (&self.table, self.slot(g)) {
            (Some(t), Some(i)) => t.images[i].trace(),
            _ => Complex64::new(self.dim as f64, 0.0),
        }
    }

    /// Order of `χ(g)`.
    pub fn order_of(&self, g: &GroupElement) -> usize {
        let Some(t) = &self.table else { return 1 };
        let k0 = reduce_key(&t.quotient, g);
        let id = reduce_key(&t.quotient, &GroupElement::identity(self.group.ring()));
        let mut k = k0;
        let mut n = 1;
        while k != id {
            k = mul_key(&t.quotient, &k, &k0);
            n += 1;
        }
        // the image may have smaller order than the element of the quotient
        let m = &t.images[t.index[&k0]];
        let eye = DMatrix::<Complex64>::identity(self.dim, self.dim);
        let mut p = m.clone();
        for d in 1..=n {
            if n % d == 0 {
                if max_abs_diff(&p, &eye) < 1e-8 {
                    return d;
                }
            }
            p = &p * m;
        }
        n
    }

    /// Multiplicities of the eigenvalues `e^{2πij/k}` of `χ(g)`, `k` its order.
    pub fn eigen_multiplicities(&self, g: &GroupElement) -> Result<(usize, Vec<usize>)> {
        let k = self.order_of(g);
        let m = self.eval(g);
        let mut traces = Vec::with_capacity(k);
        let mut p = DMatrix::<Complex64>::identity(self.dim, self.dim);
        for _ in 0..k {
            traces.push(p.trace());
            p = &p * &m;
        }
        let mut mult = Vec::with_capacity(k);
        for j in 0..k {
            let s: Complex64 = traces
                .iter()
                .enumerate()
                .map(|(t, tr)| tr * Complex64::from_polar(1.0, -2.0 * PI * (j * t) as f64 / k as f64))
                .sum::<Complex64>()
                / k as f64;
            let r = s.re.round();
            if (s - Complex64::new(r, 0.0)).norm() > 1e-6 || r < 0.0 {
                return Err(Error::EigenClustering(format!("eigenvalue multiplicity {s} is not a non-negative integer")));
            }
            mult.push(r as usize);
        }
        Ok((k, mult))
    }

    /// `tr χ(g)` as an exact element of a cyclotomic field.
    pub fn trace_exact(&self, g: &GroupElement) -> Result<Cyclo> {
        if self.table.is_none() {
            return Ok(Cyclo::integer(self.dim as i64));
        }
        let (k, mult) = self.eigen_multiplicities(g)?;
        Ok(mult
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(j, &m)| Cyclo::root(j as i64, k as u64).scale(num_rational::Rational64::from_integer(m as i64)))
            .sum())
    }

    /// Largest `|χ(gh) - χ(g)χ(h)|` over the given pairs.
    pub fn homomorphism_defect(&self, pairs: &[(GroupElement, GroupElement)]) -> f64 {
        pairs
            .iter()
            .map(|(g, h)| max_abs_diff(&self.eval(&(*g * *h)), &(self.eval(g) * self.eval(h))))
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::enumerate_elements;

    #[test]
    fn builtins_are_homomorphisms() {
        let reps = [
            UnitaryRep::picard_sign(),
            UnitaryRep::builtin(Group::Picard, "perm").unwrap(),
            UnitaryRep::eisenstein_cubic(),
            UnitaryRep::builtin(Group::Eisenstein, "perm").unwrap(),
        ];
        assert_eq!(reps[0].quotient_order(), 6);
        assert_eq!(reps[1].quotient_order(), 6);
        assert_eq!(reps[2].quotient_order(), 12);
        assert_eq!(reps[3].quotient_order(), 12);
        for rep in &reps {
            let els = enumerate_elements(rep.group.ring(), 2).unwrap();
            let pairs: Vec<_> = els.iter().take(60).flat_map(|g| els.iter().take(60).map(move |h| (*g, *h))).collect();
            assert!(rep.homomorphism_defect(&pairs) < 1e-12);
            for g in &els {
                let m = rep.eval(g);
                assert!(max_abs_diff(&(&m * m.adjoint()), &DMatrix::identity(rep.dim, rep.dim)) < 1e-12);
            }
        }
    }

    #[test]
    fn congruent_elements_share_images() {
        let rep = UnitaryRep::builtin(Group::Picard, "perm").unwrap();
        let ring = Ring::Gauss;
        let els = enumerate_elements(ring, 5).unwrap();
        let q = Quotient::new(UnitaryRep::default_modulus(Group::Picard)).unwrap();
        for g in els.iter().take(400) {
            for h in els.iter().take(400) {
                if reduce_key(&q, g) == reduce_key(&q, h) {
                    assert_eq!(rep.eval(g), rep.eval(h));
                }
            }
        }
    }

    #[test]
    fn rejects_bad_images() {
        let g = Group::Picard;
        let m = |x: f64| DMatrix::from_element(1, 1, Complex64::new(x, 0.0));
        // R ↦ -1 and J ↦ 1 violates (JR)³ = 1 up to sign
        let r = UnitaryRep::congruence(g, UnitaryRep::default_modulus(g), [m(-1.0), m(-1.0), m(1.0), m(1.0)], "bad");
        assert!(matches!(r, Err(Error::InvalidRepresentation(_))));
        let r = UnitaryRep::congruence(g, UnitaryRep::default_modulus(g), [m(2.0), m(1.0), m(1.0), m(1.0)], "bad");
        assert!(matches!(r, Err(Error::NonUnitary(_))));
    }

    #[test]
    fn exact_traces_match_floats() {
        for rep in [UnitaryRep::eisenstein_cubic(), UnitaryRep::builtin(Group::Eisenstein, "perm").unwrap()] {
            for g in enumerate_elements(rep.group.ring(), 3).unwrap().iter().take(200) {
                let e = rep.trace_exact(g).unwrap();
                assert!((e.to_complex() - rep.trace(g)).norm() < 1e-10);
            }
        }
    }
}

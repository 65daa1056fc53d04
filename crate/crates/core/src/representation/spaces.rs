//! Singular and almost singular subspaces at the cusp `∞`, and joint spectra
//! of commuting images.

use super::UnitaryRep;
use crate::arith::{GroupElement, StabilizerData};
use crate::cyclotomic::Cyclo;
use crate::error::{Error, Result};
use crate::lattice_lfn::LatticeCharacter;
use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::Rational64;
use serde::Serialize;
use std::f64::consts::PI;

/// The root of unity `e^{2πi·turn}` with `turn ∈ [0, 1)` rational.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RootOfUnity {
    #[serde(serialize_with = "ser_q")]
    pub turn: Rational64,
}

fn ser_q<S: serde::Serializer>(q: &Rational64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{}/{}", q.numer(), q.denom()))
}

impl RootOfUnity {
    pub fn new(k: i64, n: i64) -> RootOfUnity {
        RootOfUnity { turn: Rational64::new(k.rem_euclid(n), n) }
    }

    pub fn one() -> RootOfUnity {
        RootOfUnity::new(0, 1)
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::from_polar(1.0, 2.0 * PI * *self.turn.numer() as f64 / *self.turn.denom() as f64)
    }

    pub fn to_cyclo(self) -> Cyclo {
        Cyclo::root(*self.turn.numer(), *self.turn.denom() as u64)
    }

    pub fn is_one(self) -> bool {
        *self.turn.numer() == 0
    }

    pub fn mul(self, o: RootOfUnity) -> RootOfUnity {
        let t = self.turn + o.turn;
        RootOfUnity::new(*t.numer(), *t.denom())
    }

    pub fn pow(self, k: i64) -> RootOfUnity {
        let t = self.turn * Rational64::from_integer(k);
        RootOfUnity::new(*t.numer(), *t.denom())
    }
}

/// Joint eigenvalues of `χ(x)` and `χ(y)` for commuting `x, y`, with
/// multiplicity, sorted with `(1, 1)` first.
///
/// Both images have finite order `p, q`; the multiplicity of
/// `(e^{2πia/p}, e^{2πib/q})` is the discrete Fourier coefficient of
/// `(j, k) ↦ tr χ(x^j y^k)`.
pub fn joint_spectrum(rep: &UnitaryRep, x: &GroupElement, y: &GroupElement) -> Result<Vec<(RootOfUnity, RootOfUnity)>> {
    let (mx, my) = (rep.eval(x), rep.eval(y));
    let comm = (&mx * &my - &my * &mx).iter().map(|z| z.norm()).fold(0.0, f64::max);
    if comm > 1e-10 {
        return Err(Error::EigenClustering("images do not commute".into()));
    }
    let (p, q) = (rep.order_of(x), rep.order_of(y));
    let mut tr = vec![vec![Complex64::new(0.0, 0.0); q]; p];
    let mut px = DMatrix::<Complex64>::identity(rep.dim, rep.dim);
    for row in tr.iter_mut() {
        let mut pxy = px.clone();
        for t in row.iter_mut() {
            *t = pxy.trace();
            pxy = &pxy * &my;
        }
        px = &px * &mx;
    }
    let mut out = Vec::new();
    for a in 0..p {
        for b in 0..q {
            let mut s = Complex64::new(0.0, 0.0);
            for (j, row) in tr.iter().enumerate() {
                for (k, t) in row.iter().enumerate() {
                    let ph = (a * j) as f64 / p as f64 + (b * k) as f64 / q as f64;
                    s += t * Complex64::from_polar(1.0, -2.0 * PI * ph);
                }
            }
            s /= (p * q) as f64;
            let r = s.re.round();
            if (s - Complex64::new(r, 0.0)).norm() > 1e-6 || r < 0.0 {
                return Err(Error::EigenClustering(format!("joint multiplicity {s} is not a non-negative integer")));
            }
            for _ in 0..r as usize {
                out.push((RootOfUnity::new(a as i64, p as i64), RootOfUnity::new(b as i64, q as i64)));
            }
        }
    }
    if out.len() != rep.dim {
        return Err(Error::EigenClustering(format!("found {} joint eigenvalues for dimension {}", out.len(), rep.dim)));
    }
    out.sort();
    Ok(out)
}

/// `V∞ ⊆ V'∞ ⊆ V` with the lattice characters of `χ|Γ'∞`.
#[derive(Clone, Debug, Serialize)]
pub struct SingularData {
    /// Orthonormal basis of `V∞` (columns).
    #[serde(skip)]
    pub v_inf: DMatrix<Complex64>,
    /// Orthonormal basis of `V'∞` (columns).
    #[serde(skip)]
    pub v_prime_inf: DMatrix<Complex64>,
    pub k_infinity: usize,
    pub l_infinity: usize,
    /// `ψ_1, …, ψ_n` with the first `l∞` trivial.
    pub lattice_characters: Vec<LatticeCharacter>,
    /// The same characters as exact pairs `(u, v)`.
    pub lattice_fractions: Vec<(RootOfUnity, RootOfUnity)>,
    /// Eigenvalues of `χ(E)` on `V'∞`.
    pub e_eigenvalues: Vec<RootOfUnity>,
}

/// Average of `χ(g)^j`, `0 ≤ j < ord`: the projector onto the fixed space.
fn averaging_projector(rep: &UnitaryRep, g: &GroupElement) -> DMatrix<Complex64> {
    let k = rep.order_of(g);
    let m = rep.eval(g);
    let mut p = DMatrix::<Complex64>::identity(rep.dim, rep.dim);
    let mut acc = DMatrix::<Complex64>::zeros(rep.dim, rep.dim);
    for _ in 0..k {
        acc += &p;
        p = &p * &m;
    }
    acc / Complex64::new(k as f64, 0.0)
}

/// Orthonormal basis of the range of a projector of known rank.
fn range_basis(p: &DMatrix<Complex64>, rank: usize) -> Result<DMatrix<Complex64>> {
    let n = p.nrows();
    let mut cols: Vec<nalgebra::DVector<Complex64>> = Vec::new();
    for j in 0..n {
        let mut v = p.column(j).into_owned();
        for c in &cols {
            let proj = c.dotc(&v);
            v -= c * proj;
        }
        let nv = v.norm();
        if nv > 1e-8 {
            cols.push(v / Complex64::new(nv, 0.0));
        }
        if cols.len() == rank {
            break;
        }
    }
    if cols.len() != rank {
        return Err(Error::EigenClustering(format!("projector range has dimension {} instead of {rank}", cols.len())));
    }
    Ok(if rank == 0 { DMatrix::zeros(n, 0) } else { DMatrix::from_columns(&cols) })
}

/// Singular data of `χ` at `∞`.
///
/// `V'∞` is the joint fixed space of `χ(R), χ(S)` and `V∞` the fixed space of
/// `χ(E)` inside it. The dimensions come from exact character values.
pub fn singular_spaces(rep: &UnitaryRep, stab: &StabilizerData) -> Result<SingularData> {
    let pr = &averaging_projector(rep, &stab.r) * &averaging_projector(rep, &stab.s);
    let lattice_fractions = restrict_exact(rep, stab)?;
    let l_inf = lattice_fractions.iter().take_while(|(u, v)| u.is_one() && v.is_one()).count();
    let v_prime_inf = range_basis(&pr, l_inf)?;
    let me = rep.eval(&stab.e);
    // χ(E) normalizes χ(Γ'∞), so it must preserve V'∞
    let leak = (&me * &v_prime_inf - &pr * &me * &v_prime_inf).iter().map(|z| z.norm()).fold(0.0, f64::max);
    if leak > 1e-10 {
        return Err(Error::InvalidRepresentation(format!("χ(E) does not preserve V'∞ (defect {leak:.3e})")));
    }
    // eigenvalues of χ(E) on V'∞ from the restricted matrix
    let restricted = v_prime_inf.adjoint() * &me * &v_prime_inf;
    let ord = rep.order_of(&stab.e);
    let mut e_eigenvalues = Vec::with_capacity(l_inf);
    if l_inf > 0 {
        let mut traces = Vec::new();
        let mut p = DMatrix::<Complex64>::identity(l_inf, l_inf);
        for _ in 0..ord {
            traces.push(p.trace());
            p = &p * &restricted;
        }
        for j in 0..ord {
            let s: Complex64 = traces
                .iter()
                .enumerate()
                .map(|(t, tr)| tr * Complex64::from_polar(1.0, -2.0 * PI * (j * t) as f64 / ord as f64))
                .sum::<Complex64>()
                / ord as f64;
            let r = s.re.round();
            if (s - Complex64::new(r, 0.0)).norm() > 1e-6 || r < 0.0 {
                return Err(Error::EigenClustering(format!("χ(E) multiplicity {s} on V'∞")));
            }
            for _ in 0..r as usize {
                e_eigenvalues.push(RootOfUnity::new(j as i64, ord as i64));
            }
        }
    }
    let k_inf = e_eigenvalues.iter().filter(|e| e.is_one()).count();
    let pe = averaging_projector(rep, &stab.e);
    let v_inf = range_basis(&(&pe * &pr), k_inf)?;
    let lattice_characters = lattice_fractions.iter().map(|(u, v)| to_character(*u, *v)).collect();
    Ok(SingularData { v_inf, v_prime_inf, k_infinity: k_inf, l_infinity: l_inf, lattice_characters, lattice_fractions, e_eigenvalues })
}

fn to_character(u: RootOfUnity, v: RootOfUnity) -> LatticeCharacter {
    let f = |r: RootOfUnity| *r.turn.numer() as f64 / *r.turn.denom() as f64;
    LatticeCharacter { u: f(u), v: f(v) }
}

fn restrict_exact(rep: &UnitaryRep, stab: &StabilizerData) -> Result<Vec<(RootOfUnity, RootOfUnity)>> {
    joint_spectrum(rep, &stab.r, &stab.s)
}

/// The lattice characters `ψ_l` with `Σ ψ_l(m + nτ) = tr χ(R^m S^n)`, the
/// trivial ones first.
pub fn restrict_to_lattice(rep: &UnitaryRep, stab: &StabilizerData) -> Result<Vec<LatticeCharacter>> {
    Ok(restrict_exact(rep, stab)?.iter().map(|(u, v)| to_character(*u, *v)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Group;

    #[test]
    fn trivial_is_fully_singular() {
        for g in [Group::Picard, Group::Eisenstein] {
            let rep = UnitaryRep::trivial(g, 3);
            let sd = singular_spaces(&rep, &g.stabilizer_data()).unwrap();
            assert_eq!((sd.k_infinity, sd.l_infinity), (3, 3));
            assert!(sd.lattice_characters.iter().all(|c| c.is_trivial()));
        }
    }

    #[test]
    fn sign_and_cubic_are_not_singular() {
        let sd = singular_spaces(&UnitaryRep::picard_sign(), &Group::Picard.stabilizer_data()).unwrap();
        assert_eq!((sd.k_infinity, sd.l_infinity), (0, 0));
        assert_eq!(sd.lattice_characters[0], LatticeCharacter { u: 0.5, v: 0.5 });
        let sd = singular_spaces(&UnitaryRep::eisenstein_cubic(), &Group::Eisenstein.stabilizer_data()).unwrap();
        assert_eq!((sd.k_infinity, sd.l_infinity), (0, 0));
        let c = sd.lattice_characters[0];
        assert!((c.u - 1.0 / 3.0).abs() < 1e-15 && (c.v - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn projective_line_spaces() {
        let rep = UnitaryRep::builtin(Group::Picard, "perm").unwrap();
        let stab = Group::Picard.stabilizer_data();
        let sd = singular_spaces(&rep, &stab).unwrap();
        assert!(sd.k_infinity <= sd.l_infinity && sd.l_infinity <= rep.dim);
        assert_eq!(sd.v_inf.ncols(), sd.k_infinity);
        // V∞ is fixed by all of Γ∞
        for g in [stab.r, stab.s, stab.e] {
            let m = rep.eval(&g);
            let d = (&m * &sd.v_inf - &sd.v_inf).iter().map(|z| z.norm()).fold(0.0, f64::max);
            assert!(d < 1e-12);
        }
    }

    #[test]
    fn lattice_restriction_reproduces_traces() {
        for g in [Group::Picard, Group::Eisenstein] {
            let rep = UnitaryRep::builtin(g, "perm").unwrap();
            let stab = g.stabilizer_data();
            let psis = restrict_to_lattice(&rep, &stab).unwrap();
            for m in -4i64..=4 {
                for n in -3i64..=3 {
                    let el = stab.r.pow(m) * stab.s.pow(n);
                    let lhs: Complex64 = psis.iter().map(|p| p.eval(m, n)).sum();
                    assert!((lhs - rep.trace(&el)).norm() < 1e-12);
                }
            }
        }
    }
}

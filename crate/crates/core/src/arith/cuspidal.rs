//! Conjugacy classes of elliptic elements fixing a cusp.
//!
//! Every such class meets `Γ∞`, where its members are
//! `g(ε, b) = [[ε, εb], [0, ε⁻¹]]` with `ε` a unit other than `±1`.
//! Conjugating by `Γ∞` moves `b` inside `b + (ε⁻² - 1)𝒪` and multiplies it by
//! squares of units, so the candidates are finite. The remaining identifications
//! come from elements swapping `∞` with the second fixed point `p`, which are
//! realized by an explicit witness `γ` with `γ∞ = p`.

use super::classify::{classify, ElementClassification};
use super::element::GroupElement;
use super::group::Group;
use super::quotient::Quotient;
use super::ring::RingElement;
use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::Serialize;
use std::collections::BTreeMap;

/// One conjugacy class of cuspidal elliptic elements.
#[derive(Clone, Debug, Serialize)]
pub struct CuspidalEllipticClass {
    /// Upper-triangular representative `[[ε, εb], [0, ε⁻¹]]`.
    #[serde(serialize_with = "ser_el")]
    pub representative: GroupElement,
    /// The unit `ε` on the diagonal.
    #[serde(serialize_with = "ser_re")]
    pub epsilon: RingElement,
    pub epsilon_complex: Complex64,
    /// Order of the representative in `PSL`.
    pub order: u32,
    /// Order of the (finite) centralizer.
    pub centralizer_order: u32,
    /// `|c|` for the lower-left entry `c` of the witness.
    pub c_abs: f64,
    /// `N(c) = |c|²`, exactly.
    pub c_norm: i64,
    /// `γ` with `γ∞` the second fixed point of the representative.
    #[serde(serialize_with = "ser_el")]
    pub witness: GroupElement,
    /// `|1 - ε²|²`, exactly.
    pub one_minus_eps_sq: i64,
    /// Number of `(ε, b mod (ε⁻² - 1))` candidates in the class.
    pub candidates: usize,
    /// Distinct `N(c)` over the witnesses of all candidates in the class;
    /// a single value means `|c|` does not depend on the chosen member.
    pub member_c_norms: Vec<i64>,
}

fn ser_el<S: serde::Serializer>(g: &GroupElement, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&g.to_string())
}

fn ser_re<S: serde::Serializer>(e: &RingElement, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&e.to_string())
}

/// Canonical key `(ε, b mod (ε⁻² - 1))` of an elliptic element of `Γ∞`.
type Key = (RingElement, RingElement);

fn key_of(h: &GroupElement) -> Option<Key> {
    if !h.c.is_zero() || !h.a.is_unit() || (h.a.is_real() && h.a.x.abs() == 1) {
        return None;
    }
    let eps = h.a;
    let b = h.b * eps.conj();
    let q = eps.conj() * eps.conj() - eps.ring.one();
    let quo = Quotient::new(q).ok()?;
    Some((eps, quo.reduce(b)))
}

fn element_of(key: &Key) -> GroupElement {
    let (eps, b) = *key;
    GroupElement::new(eps, eps * b, eps.ring.zero(), eps.conj()).expect("unit diagonal")
}

/// Second fixed point `p = ε²b/(1 - ε²)` as a reduced fraction `P/Q`.
fn fixed_fraction(key: &Key) -> (RingElement, RingElement) {
    let (eps, b) = *key;
    let ring = eps.ring;
    let num = eps * eps * b;
    let den = ring.one() - eps * eps;
    let g = num.gcd(&den);
    let (p, q) = if g.is_zero() { (num, den) } else { (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap()) };
    // normalize the denominator to its canonical associate
    let q_can = q.associate();
    let u = q_can.exact_div(&q).unwrap();
    (p * u, q_can)
}

/// `γ = [[P, β], [Q, δ]]` with `γ∞ = P/Q`.
fn witness(p: RingElement, q: RingElement) -> GroupElement {
    let (g, s, t) = p.xgcd(&q);
    let ginv = g.conj();
    // s P + t Q = 1
    GroupElement::new(p, -(t * ginv), q, s * ginv).expect("coprime fraction")
}

/// Elements commuting with `g` (identity included), found among the
/// finitely many elements preserving its fixed-point pair.
fn centralizer_of(g: &GroupElement, p: RingElement, q: RingElement) -> Vec<GroupElement> {
    let ring = g.ring();
    let mut found = Vec::new();
    for eta in ring.units_mod_sign() {
        // u = [[η, ηx], [0, η⁻¹]] fixes p iff x = p(η⁻² - 1) ∈ 𝒪
        let num = p * (eta.conj() * eta.conj() - ring.one());
        if let Some(x) = num.exact_div(&q) {
            found.push(GroupElement::new(eta, eta * x, ring.zero(), eta.conj()).unwrap());
        }
        // swaps: bottom row k(Q, -P), top row (kP, β) with β = -(1 + k²P²)/(kQ)
        let k = eta;
        let top = -(ring.one() + k * k * p * p);
        if let Some(beta) = top.exact_div(&(k * q)) {
            if let Ok(h) = GroupElement::new(k * p, beta, k * q, -(k * p)) {
                found.push(h);
            }
        }
    }
    let mut out: Vec<_> = found.into_iter().filter(|h| *h * *g == *g * *h).collect();
    out.sort();
    out.dedup();
    out
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, i: usize) -> usize {
        let mut r = i;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut j = i;
        while self.0[j] != r {
            let n = self.0[j];
            self.0[j] = r;
            j = n;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }
}

/// All conjugacy classes of cuspidal elliptic elements.
///
/// `elements` (an enumeration at some height) is used to certify that every
/// class is witnessed and that every enumerated cuspidal elliptic element
/// falls into a found class.
pub fn cuspidal_elliptic_classes(group: Group, elements: &[GroupElement]) -> Result<Vec<CuspidalEllipticClass>> {
    let ring = group.ring();
    let stab = group.stabilizer_data();
    let mut keys: Vec<Key> = Vec::new();
    for eps in ring.units_mod_sign() {
        if eps == ring.one() {
            continue;
        }
        let q = eps.conj() * eps.conj() - ring.one();
        let quo = Quotient::new(q)?;
        for b in quo.residues() {
            keys.push((eps, b));
        }
    }
    keys.sort();
    let index: BTreeMap<Key, usize> = keys.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    let mut uf = UnionFind((0..keys.len()).collect());
    let conjugators = [stab.e, stab.r, stab.s];
    for (i, k) in keys.iter().enumerate() {
        let g = element_of(k);
        for c in conjugators {
            let h = g.conj_by(&c);
            let j = index[&key_of(&h).expect("Γ∞ preserves the candidate set")];
            uf.union(i, j);
        }
        let (p, q) = fixed_fraction(k);
        let w = witness(p, q);
        let h = g.conj_by(&w.inverse());
        let j = index[&key_of(&h).ok_or_else(|| Error::BoundInsufficient(format!("swap of {g} left Γ∞")))?];
        uf.union(i, j);
    }
    let mut members: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..keys.len() {
        let r = uf.find(i);
        members.entry(r).or_default().push(i);
    }
    let mut classes = Vec::new();
    let mut class_of = vec![0usize; keys.len()];
    for (ci, (_, mem)) in members.iter().enumerate() {
        for &m in mem {
            class_of[m] = ci;
        }
        let key = keys[mem[0]];
        let rep = element_of(&key);
        let mut member_c_norms: Vec<i64> = mem.iter().map(|&m| fixed_fraction(&keys[m]).1.norm()).collect();
        member_c_norms.sort();
        member_c_norms.dedup();
        let (p, q) = fixed_fraction(&key);
        let w = witness(p, q);
        let cent = centralizer_of(&rep, p, q);
        if cent.iter().any(|h| !matches!(classify(h), ElementClassification::Identity | ElementClassification::Elliptic { .. })) {
            return Err(Error::InfiniteCentralizer(rep.to_string()));
        }
        let order = match classify(&rep) {
            ElementClassification::Elliptic { order, .. } => order,
            _ => unreachable!("candidates are elliptic"),
        };
        classes.push(CuspidalEllipticClass {
            representative: rep,
            epsilon: key.0,
            epsilon_complex: key.0.to_complex(),
            order,
            centralizer_order: cent.len() as u32,
            c_abs: (q.norm() as f64).sqrt(),
            c_norm: q.norm(),
            witness: w,
            one_minus_eps_sq: (ring.one() - key.0 * key.0).norm(),
            candidates: mem.len(),
            member_c_norms,
        });
    }
    // certification against the enumeration
    let mut seen = vec![false; classes.len()];
    for el in elements {
        if let ElementClassification::Elliptic { cuspidal: true, .. } = classify(el) {
            let key = cusp_key(el);
            match key.and_then(|k| index.get(&k).copied()) {
                Some(i) => seen[class_of[i]] = true,
                None => return Err(Error::BoundInsufficient(format!("cuspidal elliptic {el} matched no class"))),
            }
        }
    }
    if elements.is_empty() {
        return Ok(classes);
    }
    if let Some(missing) = seen.iter().position(|s| !s) {
        return Err(Error::BoundInsufficient(format!(
            "class of {} has no witness in the enumeration",
            classes[missing].representative
        )));
    }
    Ok(classes)
}

/// Conjugate a cuspidal elliptic element into `Γ∞` and return its key.
fn cusp_key(el: &GroupElement) -> Option<Key> {
    if el.c.is_zero() {
        return key_of(el);
    }
    // a fixed point p = (a - d ± √(tr² - 4)) / (2c) lies in K
    let ring = el.ring();
    let tr = el.trace();
    let root = (tr * tr - ring.int(4)).sqrt_exact()?;
    let num = el.a - el.d + root;
    let den = el.c.scale(2);
    let g = num.gcd(&den);
    let (p, q) = (num.exact_div(&g)?, den.exact_div(&g)?);
    let w = witness(p, q);
    key_of(&el.conj_by(&w.inverse()))
}

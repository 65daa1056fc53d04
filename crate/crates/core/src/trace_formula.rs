//! Geometric side of the trace formula for a group with a single class of
//! cusps at `∞`: term-by-term evaluation, the `log A` cancellation and the
//! cuspidal-elliptic identity.

use crate::arith::{
    complete_loxodromic_classes, cuspidal_elliptic_classes, non_cuspidal_elliptic_candidates, non_cuspidal_elliptic_classes, CuspidalEllipticClass, Group,
    GroupElement, LoxodromicClassReport, NonCuspidalEllipticClass, StabilizerData,
};
use crate::cyclotomic::Cyclo;
use crate::error::{Error, Result};
use crate::lattice_lfn::{kappa_lattice, l_value_kronecker};
use crate::quad::{self, Quad};
use crate::representation::{singular_spaces, SingularData, UnitaryRep};
use crate::special::{digamma, sum_alternating, EULER_GAMMA};
use crate::transform::TestFunctionTriple;
use crate::zeta::{zeta_class_data, ZetaClassData};
use num_complex::Complex64;
use num_rational::Rational64;
use serde::Serialize;
use std::f64::consts::PI;

/// Class data of a group.
#[derive(Clone, Debug)]
pub struct GroupData {
    pub group: Group,
    pub height: i64,
    pub stab: StabilizerData,
    pub volume: f64,
    pub loxodromic: LoxodromicClassReport,
    pub cuspidal: Vec<CuspidalEllipticClass>,
    pub nce: Vec<NonCuspidalEllipticClass>,
}

impl GroupData {
    /// Cuspidal elliptic classes from the elements of height at most
    /// `height`; the other classes from complete candidate sets, loxodromic
    /// ones up to `N(T0) ≤ norm_bound`.
    pub fn from_elements(group: Group, height: i64, elements: &[GroupElement], norm_bound: f64) -> Result<GroupData> {
        Ok(GroupData {
            group,
            height,
            stab: group.stabilizer_data(),
            volume: group.volume(),
            loxodromic: complete_loxodromic_classes(group, norm_bound)?,
            cuspidal: cuspidal_elliptic_classes(group, elements)?,
            nce: non_cuspidal_elliptic_classes(group, &non_cuspidal_elliptic_candidates(group))?,
        })
    }
}

/// Lattice constants of the cusp: `η∞` and the values `L(Λ∞, ψ_l)` of the
/// nontrivial characters `ψ_l`, `l > l∞`.
#[derive(Clone, Debug, Serialize)]
pub struct CuspConstants {
    pub eta: f64,
    pub eta_error: f64,
    pub l_values: Vec<f64>,
}

/// Default `x_max` of the `η∞` fit.
pub const KAPPA_X_MAX: f64 = 1e6;

/// `η∞` from the lattice-sum fit and the Kronecker values of the nontrivial
/// lattice characters.
pub fn cusp_constants(stab: &StabilizerData, sing: &SingularData, kappa_x_max: f64) -> Result<CuspConstants> {
    let fit = kappa_lattice(&stab.lattice, kappa_x_max)?;
    let l_values = sing.lattice_characters[sing.l_infinity..]
        .iter()
        .map(|psi| l_value_kronecker(&stab.lattice, psi))
        .collect::<Result<Vec<_>>>()?;
    Ok(CuspConstants { eta: fit.kappa, eta_error: fit.error_band, l_values })
}

/// Everything the geometric side needs for one `(Γ, χ)`.
#[derive(Clone, Debug)]
pub struct TraceSetting {
    pub data: GroupData,
    pub rep: UnitaryRep,
    pub singular: SingularData,
    pub zeta_data: Vec<ZetaClassData>,
    pub constants: CuspConstants,
}

impl TraceSetting {
    pub fn new(data: GroupData, rep: UnitaryRep, kappa_x_max: f64) -> Result<TraceSetting> {
        if rep.group != data.group {
            return Err(Error::InvalidParameter(format!("representation of {} used with {}", rep.group, data.group)));
        }
        let singular = singular_spaces(&rep, &data.stab)?;
        let zeta_data = zeta_class_data(&rep, &data.loxodromic.classes)?;
        let constants = cusp_constants(&data.stab, &singular, kappa_x_max)?;
        Ok(TraceSetting { data, rep, singular, zeta_data, constants })
    }

    pub fn index(&self) -> u32 {
        self.data.stab.index
    }
}

/// `vol·dim V/(4π²) ∫_ℝ h(1 + t²) t² dt`.
pub fn identity_term(h_t: &dyn Fn(f64) -> f64, volume: f64, dim: usize, tol: f64) -> Result<Quad> {
    let pref = volume * dim as f64 / (4.0 * PI * PI);
    let q = quad::semi_infinite(&|t| h_t(t) * t * t, 0.0, tol / (2.0 * pref.max(1e-300)))?;
    Ok(Quad { value: 2.0 * pref * q.value, error: 2.0 * pref * q.error })
}

/// `Σ_{R} tr χ(R) log N(T0) / (4|ℰ(R)| sin²(πk/m(R)))` over the
/// non-cuspidal elliptic classes.
pub fn nce_sum(classes: &[NonCuspidalEllipticClass], rep: &UnitaryRep) -> f64 {
    classes
        .iter()
        .map(|c| rep.trace(&c.representative).re * c.n_t0.ln() / (4.0 * c.rotation_group_order as f64 * c.sin_sq))
        .sum()
}

/// The non-cuspidal elliptic term, `g(0)` times [`nce_sum`].
pub fn nce_term(g0: f64, classes: &[NonCuspidalEllipticClass], rep: &UnitaryRep) -> f64 {
    if g0 == 0.0 {
        return 0.0;
    }
    g0 * nce_sum(classes, rep)
}

/// A truncated sum with an estimate of the omitted part.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct TruncatedSum {
    pub value: f64,
    pub tail: f64,
}

/// `Σ_T tr χ(T) g(log N(T)) log N(T0) / (|ℰ(T)| |a(T) - a(T)^{-1}|²)` over
/// `T = T0^n E^v`, `n ≥ 1`, with `N(T) ≤ norm_bound`.
///
/// The tail estimate is `dim V ∫_X^∞ |g(log x)| dx`, the size of the omitted
/// part when the weights `log N(T0)/(m|a - a^{-1}|²)` have unit density in
/// `N(T)`.
pub fn loxodromic_term(g: &dyn Fn(f64) -> f64, data: &[ZetaClassData], norm_bound: f64, tol: f64) -> Result<TruncatedSum> {
    let mut value = 0.0;
    let mut dim = 0;
    for c in data {
        dim = dim.max(c.dim());
        if c.n0 > norm_bound {
            continue;
        }
        let m = c.m as i64;
        let max_n = (norm_bound.ln() / c.log_n0 + 1e-12).floor() as i64;
        for n in 1..=max_n {
            let gn = g(n as f64 * c.log_n0);
            if gn == 0.0 {
                continue;
            }
            let an = c.a0.powi(n as i32);
            for v in 0..m {
                let x = c.zeta0.pow(v).to_complex() * an;
                let den = (x - x.inv()).norm_sqr();
                let tr: Complex64 = c.eigen.iter().map(|(t, tp)| t.pow(n).mul(tp.pow(v)).to_complex()).sum();
                value += tr.re * gn * c.log_n0 / (m as f64 * den);
            }
        }
    }
    let tail = if data.is_empty() {
        0.0
    } else {
        dim as f64 * quad::semi_infinite(&|x| g(x.ln()).abs(), norm_bound, tol)?.value
    };
    Ok(TruncatedSum { value, tail })
}

/// `∫_0^∞ e^{-sx} sinh x / (cosh x - cos t) dx` from its partial-fraction
/// series, for `s > 0` and `0 < t ≤ π`.
pub fn cosh_integral(s: f64, t: f64) -> Result<f64> {
    if !(s > 0.0) || !(t > 0.0 && t <= PI) {
        return Err(Error::InvalidParameter(format!("cosh integral needs s > 0 and 0 < t ≤ π, got s = {s}, t = {t}")));
    }
    let f = |k: f64| 1.0 / (s - 1.0 + k) - 1.0 / (s + 1.0 + k);
    if PI - t < 1e-12 {
        // limit t → π: Σ k(-1)^{k+1} f(k)
        return Ok(sum_alternating(|i| (i as f64 + 1.0) * f(i as f64 + 1.0), 60));
    }
    // Im Σ z^k f(k), z = e^{it}: direct head, Euler-transformed tail
    const HEAD: usize = 2000;
    let z = Complex64::from_polar(1.0, t);
    let mut acc = Complex64::new(0.0, 0.0);
    let mut zk = Complex64::new(1.0, 0.0);
    for k in 1..=HEAD {
        zk *= z;
        acc += zk * f(k as f64);
    }
    // Σ_{j≥0} z^j a_j = (1/(1-z)) Σ_r (z/(1-z))^r Δ^r a_0 with a_j = f(HEAD + 1 + j)
    let mut diffs: Vec<f64> = (0..6).map(|j| f((HEAD + 1 + j) as f64)).collect();
    let w = z / (Complex64::new(1.0, 0.0) - z);
    let mut tail = Complex64::new(0.0, 0.0);
    let mut wr = Complex64::new(1.0, 0.0);
    for _ in 0..6 {
        tail += wr * diffs[0];
        wr *= w;
        diffs = diffs.windows(2).map(|p| p[1] - p[0]).collect();
        if diffs.is_empty() {
            break;
        }
    }
    acc += zk * z * tail / (Complex64::new(1.0, 0.0) - z);
    Ok(acc.im / t.sin())
}

/// `∫_0^∞ e^{-sx} sinh x / (cosh x - cos t) dx` by quadrature.
pub fn cosh_integral_quadrature(s: f64, t: f64, tol: f64) -> Result<Quad> {
    let c = t.cos();
    let f = move |x: f64| {
        let e = (-x).exp();
        // sinh x/(cosh x - c) = (1 - e^{-2x})/(1 + e^{-2x} - 2c e^{-x})
        (-s * x).exp() * (1.0 - e * e) / (1.0 + e * e - 2.0 * c * e)
    };
    quad::semi_infinite(&f, 0.0, tol)
}

/// `t ∈ (0, π]` with `cos t = 1 - |1 - ε²|²/2`.
pub fn kernel_angle(one_minus_eps_sq: i64) -> f64 {
    (1.0 - one_minus_eps_sq as f64 / 2.0).clamp(-1.0, 1.0).acos()
}

/// The cuspidal elliptic contribution at truncation height `A`.
#[derive(Clone, Debug, Serialize)]
pub struct CuspidalTerm {
    pub value: f64,
    /// Coefficient of `log A`.
    pub log_a_coefficient: f64,
    /// `∫_0^∞ g(x) sinh x/(cosh x - 1 + |1-ε_i²|²/2) dx` per class.
    pub integrals: Vec<f64>,
    pub error: f64,
}

fn class_weight(c: &CuspidalEllipticClass, rep: &UnitaryRep) -> f64 {
    rep.trace(&c.representative).re / c.centralizer_order as f64
}

/// `Σ_i 2 tr χ(g_i) log|c_i| / (|C(g_i)| |1 - ε_i²|²)`.
pub fn cusp_log_sum(classes: &[CuspidalEllipticClass], rep: &UnitaryRep) -> f64 {
    classes
        .iter()
        .map(|c| 2.0 * class_weight(c, rep) * c.c_abs.ln() / c.one_minus_eps_sq as f64)
        .sum()
}

/// `Σ_i tr χ(g_i)/|C(g_i)| · (2g(0)(log|c_i| + log A) + ∫_0^∞ g(x) sinh x/(cosh x - 1 + |1-ε_i²|²/2) dx) / |1-ε_i²|²`.
///
/// For the resolvent pair the integrals come from [`cosh_integral`], otherwise
/// from quadrature.
pub fn cuspidal_elliptic_term(
    triple: &TestFunctionTriple,
    classes: &[CuspidalEllipticClass],
    rep: &UnitaryRep,
    a: f64,
    tol: f64,
) -> Result<CuspidalTerm> {
    if !(a > 0.0) {
        return Err(Error::InvalidParameter(format!("truncation height A must be positive, got {a}")));
    }
    let g0 = triple.g0();
    let mut value = 0.0;
    let mut slope = 0.0;
    let mut error = 0.0;
    let mut integrals = Vec::with_capacity(classes.len());
    for c in classes {
        let w = class_weight(c, rep);
        let v = c.one_minus_eps_sq as f64;
        let (int, err) = match triple.resolvent {
            Some((s, b)) => {
                let t = kernel_angle(c.one_minus_eps_sq);
                (cosh_integral(s, t)? / (2.0 * s) - cosh_integral(b, t)? / (2.0 * b), 0.0)
            }
            None => {
                let g = &triple.g;
                let f = |x: f64| {
                    let e = (-x).exp();
                    g(x) * (1.0 - e * e) / (1.0 + e * e - (2.0 - v) * e)
                };
                let q = quad::semi_infinite(&f, 0.0, tol)?;
                (q.value, q.error)
            }
        };
        integrals.push(int);
        value += w * (2.0 * g0 * (c.c_abs.ln() + a.ln()) + int) / v;
        slope += 2.0 * w * g0 / v;
        error += w.abs() * err / v;
    }
    Ok(CuspidalTerm { value, log_a_coefficient: slope, integrals, error })
}

/// `∫_ℝ h(1 + t²) ψ(1 + it) dt` by quadrature.
pub fn digamma_integral(h_t: &dyn Fn(f64) -> f64, tol: f64) -> Result<Quad> {
    let q = quad::semi_infinite(&|t| h_t(t) * digamma(Complex64::new(1.0, t)).re, 0.0, tol / 2.0)?;
    Ok(Quad { value: 2.0 * q.value, error: 2.0 * q.error })
}

/// `(1/[Γ∞:Γ'∞]) (l∞(η∞/2 - γ) + Σ_{l > l∞} L(Λ∞, ψ_l))`.
pub fn parabolic_constant(sing: &SingularData, consts: &CuspConstants, index: u32) -> f64 {
    let l = sing.l_infinity as f64;
    (l * (consts.eta / 2.0 - EULER_GAMMA) + consts.l_values.iter().sum::<f64>()) / index as f64
}

/// The parabolic contribution at truncation height `A`.
#[derive(Clone, Debug, Serialize)]
pub struct ParabolicTerm {
    pub value: f64,
    pub log_a_coefficient: f64,
    /// `∫_ℝ h(1 + t²) ψ(1 + it) dt`.
    pub digamma_integral: f64,
    pub error: f64,
}

/// `(l∞/idx)(g(0) log A + h(1)/4 + g(0)(η∞/2 - γ) - (1/2π)∫ h(1+t²) ψ(1+it) dt)
///  + (g(0)/idx) Σ_{l > l∞} L(Λ∞, ψ_l)`.
pub fn parabolic_term(
    triple: &TestFunctionTriple,
    sing: &SingularData,
    consts: &CuspConstants,
    index: u32,
    a: f64,
    tol: f64,
) -> Result<ParabolicTerm> {
    if !(a > 0.0) {
        return Err(Error::InvalidParameter(format!("truncation height A must be positive, got {a}")));
    }
    if consts.l_values.len() != sing.lattice_characters.len() - sing.l_infinity {
        return Err(Error::InvalidParameter("missing lattice L-values".into()));
    }
    let g0 = triple.g0();
    let h1 = triple.h_t(0.0);
    let idx = index as f64;
    let l = sing.l_infinity as f64;
    let dig = if l > 0.0 { digamma_integral(&|t| triple.h_t(t), tol)? } else { Quad { value: 0.0, error: 0.0 } };
    let value = l / idx * (g0 * a.ln() + h1 / 4.0 - dig.value / (2.0 * PI)) + g0 * parabolic_constant(sing, consts, index);
    let error = l / idx * dig.error / (2.0 * PI) + g0.abs() * l / idx * consts.eta_error / 2.0;
    Ok(ParabolicTerm { value, log_a_coefficient: l / idx * g0, digamma_integral: dig.value, error })
}

/// Terms of the cuspidal-elliptic identity
/// `2Σ tr χ(g_i)/(|C(g_i)||1-ε_i²|²) + l∞/[Γ∞:Γ'∞] = k∞`, exactly.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    #[serde(serialize_with = "ser_cyclo")]
    pub cuspidal_sum: Cyclo,
    #[serde(serialize_with = "ser_q")]
    pub parabolic_part: Rational64,
    pub k_infinity: i64,
    #[serde(serialize_with = "ser_cyclo")]
    pub residual: Cyclo,
    pub classes: usize,
}

fn ser_cyclo<S: serde::Serializer>(c: &Cyclo, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&c.to_string())
}

fn ser_q<S: serde::Serializer>(q: &Rational64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{}/{}", q.numer(), q.denom()))
}

impl IdentityReport {
    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }
}

/// The residual of the cuspidal-elliptic identity in exact arithmetic.
pub fn cuspidal_identity_check(
    classes: &[CuspidalEllipticClass],
    rep: &UnitaryRep,
    sing: &SingularData,
    stab: &StabilizerData,
) -> Result<IdentityReport> {
    let mut sum = Cyclo::zero();
    for c in classes {
        let tr = rep.trace_exact(&c.representative)?;
        let w = Rational64::new(2, c.centralizer_order as i64 * c.one_minus_eps_sq);
        sum = &sum + &tr.scale(w);
    }
    let par = Rational64::new(sing.l_infinity as i64, stab.index as i64);
    let k = sing.k_infinity as i64;
    let residual = &(&sum + &Cyclo::rational(par)) - &Cyclo::integer(k);
    Ok(IdentityReport { cuspidal_sum: sum, parabolic_part: par, k_infinity: k, residual, classes: classes.len() })
}

/// All terms of the geometric side at truncation height `A`.
#[derive(Clone, Debug, Serialize)]
pub struct GeometricSideReport {
    pub a: f64,
    pub norm_bound: f64,
    pub g0: f64,
    pub h1: f64,
    pub identity_term: f64,
    pub identity_error: f64,
    pub nce_term: f64,
    pub loxodromic_term: f64,
    pub loxodromic_tail: f64,
    pub cuspidal_elliptic_term: f64,
    pub cuspidal_elliptic_error: f64,
    pub parabolic_term: f64,
    pub parabolic_error: f64,
    /// Difference of the `A`-dependent terms between `e·A` and `A`.
    pub log_a_coefficient: f64,
    /// `g(0)·k∞`.
    pub expected_log_a_coefficient: f64,
    pub total: f64,
    /// `total - log_a_coefficient·log A`.
    pub finite_part: f64,
}

/// Tolerance of the `log A` cancellation check.
pub const CANCELLATION_TOL: f64 = 1e-9;

/// Assemble the geometric side; fails when the `log A` coefficient differs
/// from `g(0)·k∞`.
pub fn geometric_side(triple: &TestFunctionTriple, setting: &TraceSetting, a: f64, norm_bound: f64, tol: f64) -> Result<GeometricSideReport> {
    let d = &setting.data;
    let rep = &setting.rep;
    let g0 = triple.g0();
    let id = identity_term(&|t| triple.h_t(t), d.volume, rep.dim, tol)?;
    let nce = nce_term(g0, &d.nce, rep);
    let lox = loxodromic_term(&*triple.g, &setting.zeta_data, norm_bound, tol)?;
    let ce = cuspidal_elliptic_term(triple, &d.cuspidal, rep, a, tol)?;
    let par = parabolic_term(triple, &setting.singular, &setting.constants, setting.index(), a, tol)?;
    // A-dependence by re-evaluating the A-dependent terms at e·A
    let ce_e = cuspidal_elliptic_term(triple, &d.cuspidal, rep, a * std::f64::consts::E, tol)?;
    let par_e = parabolic_term(triple, &setting.singular, &setting.constants, setting.index(), a * std::f64::consts::E, tol)?;
    let slope = (ce_e.value + par_e.value) - (ce.value + par.value);
    let expected = g0 * setting.singular.k_infinity as f64;
    if (slope - expected).abs() > CANCELLATION_TOL * expected.abs().max(1.0) {
        return Err(Error::Cancellation(format!("log A coefficient {slope} differs from g(0)·k∞ = {expected}")));
    }
    let total = id.value + nce + lox.value + ce.value + par.value;
    Ok(GeometricSideReport {
        a,
        norm_bound,
        g0,
        h1: triple.h_t(0.0),
        identity_term: id.value,
        identity_error: id.error,
        nce_term: nce,
        loxodromic_term: lox.value,
        loxodromic_tail: lox.tail,
        cuspidal_elliptic_term: ce.value,
        cuspidal_elliptic_error: ce.error,
        parabolic_term: par.value,
        parabolic_error: par.error,
        log_a_coefficient: slope,
        expected_log_a_coefficient: expected,
        total,
        finite_part: total - slope * a.ln(),
    })
}

/// The constant `E` of the functional equation:
/// `nce sum + Σ 2 tr χ(g_i) log|c_i|/(|C(g_i)||1-ε_i²|²) + parabolic constant`.
pub fn e_constant(setting: &TraceSetting) -> f64 {
    nce_sum(&setting.data.nce, &setting.rep)
        + cusp_log_sum(&setting.data.cuspidal, &setting.rep)
        + parabolic_constant(&setting.singular, &setting.constants, setting.index())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::digamma_real;
    use crate::transform::resolvent_pair;

    #[test]
    fn identity_term_two_ways() {
        let p = resolvent_pair(2.0, 3.0).unwrap();
        let direct = identity_term(&|t| p.h_t(t), 1.0, 1, 1e-12).unwrap().value;
        // t² = w - 1, w = 1 + e^y: ∫_ℝ h(1+t²) t² dt = ∫_ℝ h(1 + e^y) e^{3y/2} dy
        let hw = |w: f64| (p.h)(Complex64::new(w, 0.0)).re;
        let sub = quad::finite(&|y| hw(1.0 + y.exp()) * (1.5 * y).exp(), -80.0, 80.0, 1e-12).unwrap().value / (4.0 * PI * PI);
        assert!((direct - sub).abs() < 1e-8, "{direct} vs {sub}");
        // closed form vol·dim·(B - s)/(4π)
        assert!((direct - 1.0 / (4.0 * PI)).abs() < 1e-10);
        let twice = identity_term(&|t| p.h_t(t), 2.0, 1, 1e-12).unwrap().value;
        assert!((twice - 2.0 * direct).abs() < 1e-12);
        assert_eq!(identity_term(&|_| 0.0, 1.0, 1, 1e-12).unwrap().value, 0.0);
    }

    #[test]
    fn cosh_integral_series_vs_quadrature() {
        for s in [1.5, 2.0, 3.0] {
            for t in [PI / 2.0, 2.0 * PI / 3.0, PI] {
                let a = cosh_integral(s, t).unwrap();
                let b = cosh_integral_quadrature(s, t, 1e-12).unwrap().value;
                assert!((a - b).abs() < 1e-8, "s = {s}, t = {t}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn cosh_integral_at_pi_closed_form() {
        // ∫ e^{-sx} tanh(x/2) dx = ψ((s+1)/2) - ψ(s/2) - 1/s
        for s in [1.5, 2.0, 3.0, 7.5] {
            let closed = digamma_real((s + 1.0) / 2.0) - digamma_real(s / 2.0) - 1.0 / s;
            assert!((cosh_integral(s, PI).unwrap() - closed).abs() < 1e-12);
        }
    }

    #[test]
    fn cosh_integral_decreases() {
        for t in [PI / 2.0, PI] {
            let v: Vec<f64> = [2.0, 4.0, 8.0].iter().map(|&s| cosh_integral(s, t).unwrap()).collect();
            assert!(v[0] > v[1] && v[1] > v[2] && v[2] > 0.0);
        }
        assert!(cosh_integral(2.0, 0.0).is_err());
        assert!(cosh_integral(-1.0, 1.0).is_err());
    }

    #[test]
    fn digamma_integral_resolvent() {
        // (1/π)∫ s/(s²+w²) ψ(1+iw) dw = ψ(1+s)
        let (s, b) = (2.0, 3.0);
        let p = resolvent_pair(s, b).unwrap();
        let q = digamma_integral(&|t| p.h_t(t), 1e-12).unwrap().value;
        let closed = PI * (digamma_real(1.0 + s) / s - digamma_real(1.0 + b) / b);
        assert!((q - closed).abs() < 1e-9, "{q} vs {closed}");
    }

    #[test]
    fn digamma_partial_fractions() {
        // ψ(1+s) = ψ(1-s) - Σ_k (1/(s+k) + 1/(s-k)) away from the integers
        for s in [1.5f64, 2.5, 0.3] {
            let sum: f64 = (1..200_000).map(|k| 1.0 / (s + k as f64) + 1.0 / (s - k as f64)).sum();
            let lhs = digamma_real(1.0 + s);
            assert!((lhs - (digamma_real(1.0 - s) - sum)).abs() < 1e-4);
            assert!((lhs - (digamma_real(1.0 - s) + sum)).abs() > 0.1);
        }
    }

    #[test]
    fn kernel_angles() {
        assert!((kernel_angle(4) - PI).abs() < 1e-15);
        assert!((kernel_angle(3) - 2.0 * PI / 3.0).abs() < 1e-15);
    }

    #[test]
    fn loxodromic_empty() {
        let p = resolvent_pair(2.0, 3.0).unwrap();
        let r = loxodromic_term(&*p.g, &[], 10.0, 1e-10).unwrap();
        assert_eq!((r.value, r.tail), (0.0, 0.0));
    }

    #[test]
    fn nce_zero_g() {
        let rep = UnitaryRep::trivial(Group::Picard, 1);
        assert_eq!(nce_term(0.0, &[], &rep), 0.0);
    }
}

//! The subcommands. Each returns its report together with the outcome of
//! its checks, so a failed check still prints what was computed.

use crate::config::RunConfig;
use crate::report::{Cell, Report, Table};
use crate::CliError;
use kleinian_selberg::arith::cache::{cache_path, load_or_enumerate};
use kleinian_selberg::arith::{classify as classify_element, is_cuspidal, ElementClassification, GroupElement};
use kleinian_selberg::eisenstein::eigen_check;
use kleinian_selberg::geometry::Point3;
use kleinian_selberg::lattice_lfn::{kappa_lattice, l_value_direct, l_value_kronecker, Lattice, LatticeCharacter};
use kleinian_selberg::representation::{parse_representation, singular_spaces, UnitaryRep};
use kleinian_selberg::trace_formula::{cuspidal_identity_check, e_constant, geometric_side, GroupData, TraceSetting, KAPPA_X_MAX};
use kleinian_selberg::transform::resolvent_pair;
use kleinian_selberg::zeta::{
    functional_factor_psi, log_derivative_all_powers, log_derivative_series, log_zeta_truncated, meromorphy_report,
    topological_divisor, write_divisor_csv, xi_log_derivative, PsiInputs, PSI_TERMS,
};
use num_complex::Complex64;
use std::fs;
use std::io::Write;
use std::path::Path;

pub type Outcome = (Report, Result<(), CliError>);

/// Write to a temporary file next to `path`, then rename over it.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    fs::create_dir_all(dir)?;
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = dir.join(format!(".{name}.tmp{}", std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)
}

fn elements(cfg: &RunConfig) -> Result<Vec<GroupElement>, CliError> {
    let ring = cfg.group.ring();
    let (els, hit) = load_or_enumerate(&cfg.cache_dir, ring, cfg.height)?;
    eprintln!(
        "cache {}: {}",
        if hit { "hit" } else { "written" },
        cache_path(&cfg.cache_dir, ring, cfg.height).display()
    );
    Ok(els)
}

fn load_rep(cfg: &RunConfig) -> Result<UnitaryRep, CliError> {
    let r = cfg.rep.as_str();
    if r.ends_with(".json") || Path::new(r).is_file() {
        let text = fs::read_to_string(r).map_err(|e| CliError::Data(format!("cannot read representation {r}: {e}")))?;
        Ok(parse_representation(&text, cfg.group)?)
    } else {
        Ok(UnitaryRep::builtin(cfg.group, r)?)
    }
}

fn group_data(cfg: &RunConfig) -> Result<GroupData, CliError> {
    let els = elements(cfg)?;
    Ok(GroupData::from_elements(cfg.group, cfg.height, &els, cfg.norm_bound)?)
}

fn setting(cfg: &RunConfig) -> Result<TraceSetting, CliError> {
    let rep = load_rep(cfg)?;
    let data = group_data(cfg)?;
    Ok(TraceSetting::new(data, rep, KAPPA_X_MAX)?)
}

pub fn enumerate(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let els = elements(cfg)?;
    let mut counts = [0usize; 6];
    for e in &els {
        let i = match classify_element(e) {
            ElementClassification::Identity => 0,
            ElementClassification::Parabolic => 1,
            ElementClassification::Elliptic { .. } if is_cuspidal(e)? => 2,
            ElementClassification::Elliptic { .. } => 3,
            ElementClassification::Loxodromic { hyperbolic: true, .. } => 4,
            ElementClassification::Loxodromic { .. } => 5,
        };
        counts[i] += 1;
    }
    let mut t = Table::new(
        "summary",
        &["group", "height", "elements", "identity", "parabolic", "elliptic_cuspidal", "elliptic_noncuspidal", "hyperbolic", "loxodromic_nonhyperbolic"],
    );
    let mut row: Vec<Cell> = vec![cfg.group.name().into(), cfg.height.into(), els.len().into()];
    row.extend(counts.iter().map(|&c| Cell::from(c)));
    t.push(row);
    let mut r = Report::new("enumerate");
    r.table(t);
    Ok((r, Ok(())))
}

pub fn classify(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let d = group_data(cfg)?;
    let mut r = Report::new("classify");
    let mut lox = Table::new("loxodromic", &["index", "norm", "a0", "torsion_order", "hyperbolic", "self_inverse", "axis_class", "representative"]);
    for (i, c) in d.loxodromic.classes.iter().enumerate() {
        lox.push(vec![
            i.into(),
            c.n0.into(),
            c.a0.into(),
            c.torsion_order.into(),
            c.hyperbolic.into(),
            c.self_inverse.into(),
            c.reduced_class.into(),
            c.t0.to_string().into(),
        ]);
    }
    r.table(lox);
    let mut ce = Table::new("cuspidal_elliptic", &["representative", "order", "centralizer_order", "c_abs", "one_minus_eps_sq"]);
    for c in &d.cuspidal {
        ce.push(vec![c.representative.to_string().into(), c.order.into(), c.centralizer_order.into(), c.c_abs.into(), c.one_minus_eps_sq.into()]);
    }
    r.table(ce);
    let mut nce = Table::new("non_cuspidal_elliptic", &["representative", "order", "rotation_group_order", "sin_sq", "axis_norm"]);
    for c in &d.nce {
        nce.push(vec![c.representative.to_string().into(), c.order.into(), c.rotation_group_order.into(), c.sin_sq.into(), c.n_t0.into()]);
    }
    r.table(nce);
    r.note(format!(
        "loxodromic classes with N(T0) ≤ {} from {} candidates; T0 and T0^-1 share an axis_class",
        d.loxodromic.norm_bound, d.loxodromic.elements_examined
    ));
    if !d.loxodromic.ambiguities.is_empty() {
        r.note(format!(
            "{} pairs of distinct axis classes share their trace invariants (not conjugate by the axis walk)",
            d.loxodromic.ambiguities.len()
        ));
    }
    Ok((r, Ok(())))
}

/// A fraction `p/q` (exact) or a decimal.
fn parse_param(name: &str, s: &str) -> Result<(f64, Option<(i64, i64)>), CliError> {
    let bad = || CliError::Usage(format!("--{name} must be a fraction like 1/3 or a decimal, got '{s}'"));
    if let Some((p, q)) = s.split_once('/') {
        let p: i64 = p.trim().parse().map_err(|_| bad())?;
        let q: i64 = q.trim().parse().map_err(|_| bad())?;
        if q <= 0 {
            return Err(bad());
        }
        return Ok((p as f64 / q as f64, Some((p, q))));
    }
    let x: f64 = s.trim().parse().map_err(|_| bad())?;
    if !x.is_finite() {
        return Err(bad());
    }
    Ok((x, None))
}

pub fn lsum(cfg: &RunConfig, u: &str, v: &str, tau: Option<&str>, x_max: f64) -> Result<Outcome, CliError> {
    let (uf, ue) = parse_param("u", u)?;
    let (vf, ve) = parse_param("v", v)?;
    let lattice = match tau {
        None => cfg.group.stabilizer_data().lattice,
        Some("i") => Lattice::gaussian(),
        Some("omega") => Lattice::eisenstein(),
        Some("1+omega") => Lattice::one_plus_omega(),
        Some(t) => return Err(CliError::Usage(format!("--tau must be i, omega or 1+omega, got '{t}'"))),
    };
    let psi = match (ue, ve) {
        (Some((a, b)), Some((c, d))) => LatticeCharacter::from_fractions(a, b, c, d),
        _ => LatticeCharacter::new(uf, vf),
    };
    let mut r = Report::new("lsum");
    if psi.is_trivial() {
        let fit = kappa_lattice(&lattice, x_max)?;
        let mut t = Table::new("kappa", &["tau", "x_max", "kappa", "slope", "expected_slope", "error_band"]);
        t.push(vec![
            lattice.tau.into(),
            x_max.into(),
            fit.kappa.into(),
            fit.slope.into(),
            (std::f64::consts::PI / lattice.area).into(),
            fit.error_band.into(),
        ]);
        r.table(t);
        r.note("the trivial character has no L-value: the lattice sum diverges like (π/|Λ|)(log x + κ); the fitted κ is reported instead");
        return Ok((r, Ok(())));
    }
    let direct = l_value_direct(&lattice, &psi, x_max)?;
    let kron = l_value_kronecker(&lattice, &psi)?;
    let mut t = Table::new("lvalue", &["u", "v", "tau", "x_max", "direct", "direct_error", "kronecker", "discrepancy"]);
    t.push(vec![
        psi.u.into(),
        psi.v.into(),
        lattice.tau.into(),
        x_max.into(),
        direct.value.into(),
        direct.error.into(),
        kron.into(),
        (direct.value - kron).norm().into(),
    ]);
    r.table(t);
    Ok((r, Ok(())))
}

pub fn identity(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let rep = load_rep(cfg)?;
    let els = elements(cfg)?;
    let classes = kleinian_selberg::arith::cuspidal_elliptic_classes(cfg.group, &els)?;
    let stab = cfg.group.stabilizer_data();
    let sing = singular_spaces(&rep, &stab)?;
    let id = cuspidal_identity_check(&classes, &rep, &sing, &stab)?;
    let mut t = Table::new("identity", &["group", "rep", "classes", "cuspidal_sum", "parabolic_part", "k_infinity", "residual", "holds"]);
    t.push(vec![
        cfg.group.name().into(),
        rep.name.clone().into(),
        id.classes.into(),
        id.cuspidal_sum.to_string().into(),
        Cell::Rational(*id.parabolic_part.numer(), *id.parabolic_part.denom()),
        id.k_infinity.into(),
        id.residual.to_string().into(),
        id.holds().into(),
    ]);
    let mut r = Report::new("identity");
    r.table(t);
    let outcome = if id.holds() {
        Ok(())
    } else {
        Err(CliError::Data(format!("cuspidal-elliptic identity residual {} is not zero; the class list is incomplete", id.residual)))
    };
    Ok((r, outcome))
}

fn parse_s_list(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(|x| match x.trim().parse::<f64>() {
            Ok(v) if v > 1.0 && v.is_finite() => Ok(v),
            _ => Err(CliError::Usage(format!("--s takes real values above 1, got '{x}'"))),
        })
        .collect()
}

fn default_trs0(trs0: Option<i64>, k: i64, r: &mut Report) -> Result<i64, CliError> {
    match trs0 {
        Some(t) if t.abs() > k || (t - k) % 2 != 0 => Err(CliError::Usage(format!("--trs0 {t} is not a sum of k∞ = {k} signs"))),
        Some(t) => Ok(t),
        None => {
            r.note(format!("tr S(0) is an external input; k∞ = {k} is used (S(0) = identity)"));
            Ok(k)
        }
    }
}

/// Number of `k + l` levels in the truncated Euler product.
const KL_CUTOFF: usize = 60;
/// Step of the central difference of `log Z`.
const DIFF_STEP: f64 = 1e-4;

pub fn zeta(cfg: &RunConfig, s_list: &str, trs0: Option<i64>, depth: usize, divisor: Option<&Path>) -> Result<Outcome, CliError> {
    let ss = parse_s_list(s_list)?;
    let st = setting(cfg)?;
    let mut r = Report::new("zeta");
    let k = st.singular.k_infinity as i64;
    let l = st.singular.l_infinity as i64;
    let trs0 = default_trs0(trs0, k, &mut r)?;
    let index = st.index();
    let data = &st.zeta_data;

    let mut values = Table::new(
        "values",
        &["s", "log_zeta", "log_zeta_tail", "log_derivative_series", "log_derivative_all_powers", "difference_quotient", "relative_discrepancy", "xi_log_derivative"],
    );
    for &s in &ss {
        let sc = Complex64::new(s, 0.0);
        let lz = log_zeta_truncated(sc, data, KL_CUTOFF)?;
        let series = log_derivative_series(sc, data, cfg.norm_bound)?;
        let all = log_derivative_all_powers(sc, data)?;
        let fd = (log_zeta_truncated(sc + DIFF_STEP, data, KL_CUTOFF)?.log - log_zeta_truncated(sc - DIFF_STEP, data, KL_CUTOFF)?.log)
            / (2.0 * DIFF_STEP);
        let rel = (fd - all).norm() / all.norm().max(f64::MIN_POSITIVE);
        let xi = xi_log_derivative(s, &st, trs0, cfg.norm_bound)?;
        values.push(vec![s.into(), lz.log.into(), lz.tail.into(), series.into(), all.into(), fd.into(), rel.into(), xi.total.into()]);
    }
    r.table(values);

    if index <= 2 {
        let inputs = PsiInputs { index, k_inf: k, l_inf: l, e_constant: e_constant(&st), volume: st.data.volume, dim: st.rep.dim };
        let mut psi = Table::new("psi", &["s", "psi", "psi_times_psi_minus_s", "product_tail"]);
        for &s in ss.iter().filter(|s| s.fract() != 0.0) {
            let p = functional_factor_psi(Complex64::new(s, 0.0), &inputs, PSI_TERMS)?;
            let m = functional_factor_psi(Complex64::new(-s, 0.0), &inputs, PSI_TERMS)?;
            psi.push(vec![s.into(), p.value.into(), (p.value * m.value).into(), p.product_tail.into()]);
        }
        r.table(psi);
        if ss.iter().any(|s| s.fract() == 0.0) {
            r.note("Ψ has a zero or pole at every nonzero integer; integer s are left out of the psi table");
        }
    }

    let records = topological_divisor(index, k, l, trs0, depth)?;
    let mut div = Table::new("divisor", &["location", "residue_num", "residue_den", "source"]);
    for rec in &records {
        div.push(vec![rec.location.into(), (*rec.residue.numer()).into(), (*rec.residue.denom()).into(), rec.source.name().into()]);
    }
    r.table(div);
    let mer = meromorphy_report(&records, index, k, l, st.rep.dim);
    let mut mt = Table::new("meromorphy", &["computed", "denominators", "stated", "stated_bound", "note"]);
    mt.push(vec![
        mer.computed.into(),
        mer.denominators.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" ").into(),
        mer.stated.map(Cell::from).unwrap_or(Cell::Str("none".into())),
        mer.stated_bound.into(),
        mer.note.clone().into(),
    ]);
    r.table(mt);
    r.note(format!("log Z over {} classes with N(T0) ≤ {}, k + l ≤ {KL_CUTOFF}; difference quotient step {DIFF_STEP}", data.len(), cfg.norm_bound));
    r.note("spectral and scattering parts of the divisor need Laplace eigenvalues and the scattering determinant; only the topological part is listed");
    if let Some(p) = divisor {
        let mut buf = Vec::new();
        write_divisor_csv(&records, &mut buf).map_err(CliError::Output)?;
        write_atomic(p, &buf).map_err(CliError::Output)?;
    }
    Ok((r, Ok(())))
}

pub fn trace(cfg: &RunConfig, s: f64, b: f64, trs0: Option<i64>) -> Result<Outcome, CliError> {
    let pair = resolvent_pair(s, b)?;
    let st = setting(cfg)?;
    let mut r = Report::new("trace");
    let k = st.singular.k_infinity as i64;
    let trs0 = default_trs0(trs0, k, &mut r)?;
    let g = geometric_side(&pair, &st, cfg.a, cfg.norm_bound, cfg.tol)?;
    let mut terms = Table::new("terms", &["term", "value", "error"]);
    for (name, v, e) in [
        ("identity", g.identity_term, g.identity_error),
        ("non_cuspidal_elliptic", g.nce_term, 0.0),
        ("loxodromic", g.loxodromic_term, g.loxodromic_tail),
        ("cuspidal_elliptic", g.cuspidal_elliptic_term, g.cuspidal_elliptic_error),
        ("parabolic", g.parabolic_term, g.parabolic_error),
        ("total", g.total, f64::NAN),
        ("finite_part", g.finite_part, f64::NAN),
    ] {
        terms.push(vec![name.into(), v.into(), e.into()]);
    }
    r.table(terms);
    let mut c = Table::new("cancellation", &["A", "logA_coefficient", "g0_k_infinity", "difference"]);
    c.push(vec![g.a.into(), g.log_a_coefficient.into(), g.expected_log_a_coefficient.into(), (g.log_a_coefficient - g.expected_log_a_coefficient).into()]);
    r.table(c);
    let xs = xi_log_derivative(s, &st, trs0, cfg.norm_bound)?;
    let xb = xi_log_derivative(b, &st, trs0, cfg.norm_bound)?;
    let lhs = xs.total / (2.0 * s) - xb.total / (2.0 * b);
    let rhs = g.finite_part - g.h1 * trs0 as f64 / 4.0;
    let mut x = Table::new("xi", &["s", "B", "xi_difference", "finite_part_minus_pole", "difference"]);
    x.push(vec![s.into(), b.into(), lhs.into(), rhs.into(), (lhs - rhs).into()]);
    r.table(x);
    r.note(format!(
        "resolvent pair h(λ) = 1/(s² + λ - 1) - 1/(B² + λ - 1); loxodromic error column is the tail estimate beyond N(T) = {}",
        cfg.norm_bound
    ));
    Ok((r, Ok(())))
}

fn parse_point(s: &str) -> Result<Point3, CliError> {
    let bad = || CliError::Usage(format!("--point must be x,y,r with r > 0, got '{s}'"));
    let v: Vec<f64> = s.split(',').map(|x| x.trim().parse::<f64>()).collect::<Result<_, _>>().map_err(|_| bad())?;
    if v.len() != 3 {
        return Err(bad());
    }
    Point3::from_parts(v[0], v[1], v[2]).map_err(|_| bad())
}

pub fn eisenstein_check(cfg: &RunConfig, s: f64, point: &str, fd_step: f64, series_height: Option<i64>) -> Result<Outcome, CliError> {
    let p = parse_point(point)?;
    let rep = load_rep(cfg)?;
    let sing = singular_spaces(&rep, &cfg.group.stabilizer_data())?;
    if sing.k_infinity == 0 {
        return Err(CliError::Data(format!("{} has no vector fixed by the cusp stabilizer; the series at ∞ is not defined", rep.name)));
    }
    let v: Vec<Complex64> = sing.v_inf.column(0).iter().copied().collect();
    let height = series_height.unwrap_or(cfg.height);
    let c = eigen_check(p, Complex64::new(s, 0.0), &rep, &v, cfg.group, height, fd_step)?;
    let mut r = Report::new("eisenstein-check");
    let mut t = Table::new("check", &["s", "x", "y", "r", "height", "cosets", "tail", "fd_step", "residual"]);
    t.push(vec![
        s.into(),
        p.z.re.into(),
        p.z.im.into(),
        p.r.into(),
        height.into(),
        c.sample.cosets.into(),
        c.sample.tail.into(),
        fd_step.into(),
        c.residual.into(),
    ]);
    r.table(t);
    let lambda = 1.0 - s * s;
    let mut comp = Table::new("components", &["component", "value", "laplacian", "lambda_value"]);
    for (j, (e, l)) in c.sample.value.iter().zip(&c.laplacian).enumerate() {
        comp.push(vec![j.into(), (*e).into(), (*l).into(), (*e * lambda).into()]);
    }
    r.table(comp);
    r.note("v is the first basis vector of the χ(Γ∞)-fixed space");
    Ok((r, Ok(())))
}

//! The representation description file.
//!
//! ```json
//! {
//!   "kind": "congruence",
//!   "group": "picard",
//!   "dimension": 1,
//!   "ideal": "1+i",
//!   "generators": { "R": [["-1"]], "S": [["-1"]], "J": [["-1"]], "E": [["1"]] }
//! }
//! ```
//!
//! `kind` is `trivial`, `congruence` or `character` (a congruence
//! representation of dimension one). Matrix entries are JSON numbers,
//! `[re, im]` pairs, or exact strings such as `"1/2-3/2i"` (Picard) or
//! `"-1-w"` (Eisenstein, `w = ω`).

use super::UnitaryRep;
use crate::arith::{Group, Ring, RingElement};
use crate::error::{Error, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::Rational64;
use serde_json::Value;

fn parse_rational(s: &str) -> Result<Rational64> {
    let bad = || Error::Parse(format!("malformed rational '{s}'"));
    match s.split_once('/') {
        Some((n, d)) => {
            let (n, d): (i64, i64) = (n.trim().parse().map_err(|_| bad())?, d.trim().parse().map_err(|_| bad())?);
            if d == 0 {
                return Err(bad());
            }
            Ok(Rational64::new(n, d))
        }
        None => Ok(Rational64::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

fn q2f(q: Rational64) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

/// Parse an exact entry `a + b·u` with rational `a, b` and `u ∈ {i, w}`.
pub fn parse_complex_entry(s: &str, ring: Ring) -> Result<Complex64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(Error::Parse("empty matrix entry".into()));
    }
    // split into signed terms
    let mut terms = Vec::new();
    let mut cur = String::new();
    for (k, c) in t.chars().enumerate() {
        if (c == '+' || c == '-') && k > 0 && !cur.ends_with('/') {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(c);
    }
    terms.push(cur);
    let mut z = Complex64::new(0.0, 0.0);
    for term in terms {
        let (sign, body) = match term.strip_prefix('-') {
            Some(b) => (-1.0, b),
            None => (1.0, term.strip_prefix('+').unwrap_or(&term)),
        };
        let (coef, unit) = match body.chars().last() {
            Some(u @ ('i' | 'w')) => {
                let c = body[..body.len() - 1].trim_end_matches('*');
                (if c.is_empty() { Rational64::from_integer(1) } else { parse_rational(c)? }, Some(u))
            }
            _ => (parse_rational(body)?, None),
        };
        let base = match (unit, ring) {
            (None, _) => Complex64::new(1.0, 0.0),
            (Some('i'), Ring::Gauss) => Complex64::new(0.0, 1.0),
            (Some('w'), Ring::Eisenstein) => ring.u_complex(),
            (Some(u), _) => return Err(Error::Parse(format!("unit '{u}' does not belong to the {} ring", ring.name()))),
        };
        z += base * (sign * q2f(coef));
    }
    Ok(z)
}

fn parse_entry(v: &Value, ring: Ring) -> Result<Complex64> {
    match v {
        Value::Number(n) => Ok(Complex64::new(n.as_f64().unwrap_or(f64::NAN), 0.0)),
        Value::String(s) => parse_complex_entry(s, ring),
        Value::Array(a) if a.len() == 2 => {
            let f = |x: &Value| x.as_f64().ok_or_else(|| Error::Parse("complex pair must hold two numbers".into()));
            Ok(Complex64::new(f(&a[0])?, f(&a[1])?))
        }
        other => Err(Error::Parse(format!("unsupported matrix entry {other}"))),
    }
}

fn parse_matrix(v: &Value, dim: usize, ring: Ring, name: &str) -> Result<DMatrix<Complex64>> {
    let rows = v.as_array().ok_or_else(|| Error::Parse(format!("image of {name} must be a list of rows")))?;
    if rows.len() != dim {
        return Err(Error::InvalidRepresentation(format!("image of {name} has {} rows, expected {dim}", rows.len())));
    }
    let mut m = DMatrix::zeros(dim, dim);
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_array().ok_or_else(|| Error::Parse(format!("row {i} of {name} is not a list")))?;
        if row.len() != dim {
            return Err(Error::InvalidRepresentation(format!("row {i} of {name} has {} entries, expected {dim}", row.len())));
        }
        for (j, e) in row.iter().enumerate() {
            m[(i, j)] = parse_entry(e, ring)?;
        }
    }
    Ok(m)
}

fn parse_ring_element(v: &Value, ring: Ring) -> Result<RingElement> {
    let bad = || Error::Parse(format!("ideal generator must be an integral element of the {} ring", ring.name()));
    match v {
        Value::Array(a) if a.len() == 2 => Ok(ring.elt(a[0].as_i64().ok_or_else(bad)?, a[1].as_i64().ok_or_else(bad)?)),
        Value::Number(n) => Ok(ring.int(n.as_i64().ok_or_else(bad)?)),
        Value::String(s) => {
            let z = parse_complex_entry(s, ring)?;
            let (x, y) = ring.coords(z);
            let (xr, yr) = (x.round(), y.round());
            if (x - xr).abs() > 1e-9 || (y - yr).abs() > 1e-9 {
                return Err(bad());
            }
            Ok(ring.elt(xr as i64, yr as i64))
        }
        _ => Err(bad()),
    }
}

/// Parse a representation description. `group` is used when the file does
/// not name one; a mismatch is an error.
pub fn parse_representation(text: &str, group: Group) -> Result<UnitaryRep> {
    let v: Value = serde_json::from_str(text)?;
    let obj = v.as_object().ok_or_else(|| Error::Parse("representation file must hold an object".into()))?;
    if let Some(g) = obj.get("group") {
        let g: Group = g.as_str().ok_or_else(|| Error::Parse("group must be a string".into()))?.parse()?;
        if g != group {
            return Err(Error::InvalidRepresentation(format!("representation is for {g}, not {group}")));
        }
    }
    let kind = obj.get("kind").and_then(Value::as_str).ok_or_else(|| Error::Parse("missing 'kind'".into()))?;
    let dim = match obj.get("dimension") {
        Some(d) => d.as_u64().filter(|&d| d >= 1).ok_or_else(|| Error::Parse("dimension must be a positive integer".into()))? as usize,
        None => 1,
    };
    let ring = group.ring();
    match kind {
        "trivial" => Ok(UnitaryRep::trivial(group, dim)),
        "congruence" | "character" => {
            if kind == "character" && dim != 1 {
                return Err(Error::InvalidRepresentation("a character has dimension 1".into()));
            }
            let ideal = parse_ring_element(obj.get("ideal").ok_or_else(|| Error::Parse("missing 'ideal'".into()))?, ring)?;
            let gens = obj.get("generators").and_then(Value::as_object).ok_or_else(|| Error::Parse("missing 'generators'".into()))?;
            let mut imgs = Vec::new();
            for name in ["R", "S", "J", "E"] {
                let m = gens.get(name).ok_or_else(|| Error::Parse(format!("missing image of generator {name}")))?;
                imgs.push(parse_matrix(m, dim, ring, name)?);
            }
            let imgs: [DMatrix<Complex64>; 4] = imgs.try_into().unwrap();
            let name = obj.get("name").and_then(Value::as_str).unwrap_or(kind);
            UnitaryRep::congruence(group, ideal, imgs, name)
        }
        other => Err(Error::Parse(format!("unknown representation kind '{other}'"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entries() {
        let z = parse_complex_entry("1/2 - 3/2i", Ring::Gauss).unwrap();
        assert_eq!(z, Complex64::new(0.5, -1.5));
        let w = parse_complex_entry("-1-w", Ring::Eisenstein).unwrap();
        assert!((w - Complex64::from_polar(1.0, 4.0 * std::f64::consts::PI / 3.0) * -1.0 * -1.0).norm() < 1e-15);
        assert!(parse_complex_entry("w", Ring::Gauss).is_err());
        assert!(parse_complex_entry("1/0", Ring::Gauss).is_err());
    }

    #[test]
    fn sign_character_file() {
        let text = r#"{"kind": "character", "group": "picard", "ideal": "1+i",
            "generators": {"R": [["-1"]], "S": [[-1]], "J": [[[-1, 0]]], "E": [["1"]]}}"#;
        let rep = parse_representation(text, Group::Picard).unwrap();
        assert_eq!(rep.quotient_order(), 6);
        assert!(parse_representation(text, Group::Eisenstein).is_err());
    }

    #[test]
    fn cubic_character_file() {
        let text = r#"{"kind": "congruence", "dimension": 1, "ideal": [1, 2],
            "generators": {"R": [["w"]], "S": [["w"]], "J": [["1"]], "E": [["1"]]}}"#;
        let rep = parse_representation(text, Group::Eisenstein).unwrap();
        assert_eq!(rep.quotient_order(), 12);
    }

    #[test]
    fn malformed_files() {
        assert!(matches!(parse_representation("{", Group::Picard), Err(Error::Json(_))));
        assert!(parse_representation(r#"{"kind": "mystery"}"#, Group::Picard).is_err());
        let t = r#"{"kind": "character", "ideal": "1+i", "generators": {"R": [["-1"]]}}"#;
        assert!(parse_representation(t, Group::Picard).is_err());
    }
}

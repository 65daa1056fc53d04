//! On-disk cache of enumerations.
//!
//! Format: a header line `ring=<gauss|eisenstein> height=<n> version=1`
//! followed by one element per line as `a_x a_y b_x b_y c_x c_y d_x d_y`,
//! sorted lexicographically.

use super::element::GroupElement;
use super::enumerate::enumerate_elements;
use super::ring::Ring;
use crate::error::{Error, Result};
use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

pub const CACHE_VERSION: u32 = 1;

pub fn header(ring: Ring, height: i64) -> String {
    format!("ring={} height={} version={}", ring.name(), height, CACHE_VERSION)
}

/// Default file name of the cache for `(ring, height)`.
pub fn cache_path(dir: &Path, ring: Ring, height: i64) -> PathBuf {
    dir.join(format!("{}-h{}.elements", ring.name(), height))
}

/// Write atomically: a temporary file in the same directory is renamed over
/// the target.
pub fn write_cache(path: &Path, ring: Ring, height: i64, elements: &[GroupElement]) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    {
        let mut w = BufWriter::new(fs::File::create(&tmp)?);
        writeln!(w, "{}", header(ring, height))?;
        let mut sorted = elements.to_vec();
        sorted.sort();
        for e in &sorted {
            let c = e.coords();
            writeln!(w, "{} {} {} {} {} {} {} {}", c[0], c[1], c[2], c[3], c[4], c[5], c[6], c[7])?;
        }
        w.flush()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

fn parse_header(line: &str) -> Result<(Ring, i64)> {
    let mut ring = None;
    let mut height = None;
    let mut version = None;
    for field in line.split_whitespace() {
        let (k, v) = field.split_once('=').ok_or_else(|| Error::CacheVersion(line.to_string()))?;
        match k {
            "ring" => ring = Ring::parse(v),
            "height" => height = v.parse::<i64>().ok(),
            "version" => version = v.parse::<u32>().ok(),
            _ => return Err(Error::CacheVersion(line.to_string())),
        }
    }
    match (ring, height, version) {
        (Some(r), Some(h), Some(CACHE_VERSION)) => Ok((r, h)),
        _ => Err(Error::CacheVersion(line.to_string())),
    }
}

/// Read a cache file, validating header and determinants.
pub fn read_cache(path: &Path) -> Result<(Ring, i64, Vec<GroupElement>)> {
    let f = BufReader::new(fs::File::open(path)?);
    let mut lines = f.lines();
    let first = lines.next().ok_or_else(|| Error::CacheVersion("empty file".into()))??;
    let (ring, height) = parse_header(first.trim())?;
    let mut out = Vec::new();
    for (i, line) in lines.enumerate() {
        let line = line?;
        let nums: Vec<i64> = line
            .split_whitespace()
            .map(|t| t.parse::<i64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::CacheFormat { line: i + 2, msg: e.to_string() })?;
        let v: [i64; 8] = nums
            .try_into()
            .map_err(|_| Error::CacheFormat { line: i + 2, msg: "expected 8 integers".into() })?;
        let g = GroupElement::from_coords(ring, v).map_err(|e| Error::CacheFormat { line: i + 2, msg: e.to_string() })?;
        out.push(g);
    }
    Ok((ring, height, out))
}

/// Load the enumeration from the cache directory, building and writing it on
/// a miss. Returns the elements and whether the cache was hit.
pub fn load_or_enumerate(dir: &Path, ring: Ring, height: i64) -> Result<(Vec<GroupElement>, bool)> {
    let path = cache_path(dir, ring, height);
    if path.exists() {
        let (r, h, els) = read_cache(&path)?;
        if r != ring || h != height {
            return Err(Error::CacheVersion(format!("{} holds ring={} height={}", path.display(), r.name(), h)));
        }
        return Ok((els, true));
    }
    let els = enumerate_elements(ring, height)?;
    write_cache(&path, ring, height, &els)?;
    Ok((els, false))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let (els, hit) = load_or_enumerate(dir.path(), Ring::Gauss, 2).unwrap();
        assert!(!hit);
        let (again, hit) = load_or_enumerate(dir.path(), Ring::Gauss, 2).unwrap();
        assert!(hit);
        assert_eq!(els, again);
        let text = fs::read_to_string(cache_path(dir.path(), Ring::Gauss, 2)).unwrap();
        assert!(text.starts_with("ring=gauss height=2 version=1\n"));
    }

    #[test]
    fn corrupted_header() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("bad");
        fs::write(&p, "ring=gauss height=2 version=7\n1 0 0 0 0 0 1 0\n").unwrap();
        assert!(matches!(read_cache(&p), Err(Error::CacheVersion(_))));
    }
}

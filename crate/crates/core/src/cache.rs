//! On-disk triangle cache: one JSON object per line,
//! `{"n":..,"i":..,"j":..,"coeff":"<decimal>"}`, sorted by `(n, i, j)`.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::elliptic::validate_triangle;
use crate::error::{Error, Result};
use crate::exactpoly::parse_int;
use crate::triangle::{Triangle, TriangleKind};

pub const CACHE_ENV: &str = "ELLIPTA_CACHE_DIR";

#[derive(Serialize, Deserialize)]
struct Record {
    n: usize,
    i: usize,
    j: usize,
    coeff: String,
}

/// The explicit directory if given, else the environment variable.
pub fn resolve_dir(flag: Option<&Path>) -> Option<PathBuf> {
    flag.map(Path::to_path_buf)
        .or_else(|| std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from))
}

pub fn cache_file(dir: &Path, kind: TriangleKind) -> PathBuf {
    dir.join(format!("{}.jsonl", kind.name()))
}

pub fn to_jsonl(tri: &Triangle) -> String {
    let mut out = String::new();
    for (n, i, j, v) in tri.entries() {
        let rec = Record { n, i, j, coeff: v.to_string() };
        out.push_str(&serde_json::to_string(&rec).expect("plain record"));
        out.push('\n');
    }
    out
}

/// Parses cache text. Rows appear only where they hold a nonzero entry, so
/// rows that are entirely zero are restored as empty rows up to the last
/// row present.
pub fn from_jsonl(kind: TriangleKind, text: &str) -> Result<Triangle> {
    let corrupt = |line: usize, what: &str| Error::CorruptedCache(format!("line {line}: {what}"));
    let mut tri = Triangle::new(kind);
    let mut rows: std::collections::BTreeMap<usize, crate::triangle::Row> = Default::default();
    let mut last: Option<(usize, usize, usize)> = None;
    for (k, line) in text.lines().enumerate() {
        let rec: Record = serde_json::from_str(line).map_err(|e| corrupt(k + 1, &e.to_string()))?;
        let key = (rec.n, rec.i, rec.j);
        if last.is_some_and(|l| l >= key) {
            return Err(corrupt(k + 1, "records out of order"));
        }
        last = Some(key);
        let v = parse_int(&rec.coeff).map_err(|_| corrupt(k + 1, "coefficient is not an integer"))?;
        rows.entry(rec.n).or_default().insert((rec.i, rec.j), v);
    }
    let first = match kind {
        TriangleKind::S => 0,
        _ => 1,
    };
    if let Some(&max) = rows.keys().next_back() {
        for n in first..=max {
            tri.insert_row(n, rows.remove(&n).unwrap_or_default());
        }
        if let Some((&n, _)) = rows.iter().next() {
            return Err(corrupt(0, &format!("row {n} lies before the first row")));
        }
    }
    Ok(tri)
}

/// Writes the triangle to `dir`, creating the directory if needed.
pub fn write_triangle(dir: &Path, tri: &Triangle) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = cache_file(dir, tri.kind());
    let tmp = path.with_extension("jsonl.tmp");
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(to_jsonl(tri).as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, &path)?;
    Ok(path)
}

/// Loads and revalidates a cached triangle; `Ok(None)` when nothing is
/// cached. Any parse or validation failure is `CorruptedCache`.
pub fn read_triangle(dir: &Path, kind: TriangleKind) -> Result<Option<Triangle>> {
    let path = cache_file(dir, kind);
    let text = match fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let tri = from_jsonl(kind, &text)?;
    validate_triangle(&tri)
        .map_err(|e| Error::CorruptedCache(format!("{}: {e}", path.display())))?;
    Ok(Some(tri))
}

/// Removes the cache files this tool writes; other files are left alone.
/// Returns the files removed.
pub fn clear(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut removed = Vec::new();
    for kind in [TriangleKind::S, TriangleKind::Gamma, TriangleKind::T] {
        let path = cache_file(dir, kind);
        match fs::remove_file(&path) {
            Ok(()) => removed.push(path),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
            Err(e) => return Err(e.into()),
        }
    }
    Ok(removed)
}

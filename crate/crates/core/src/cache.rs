//! On-disk cache of Dirichlet coefficients.
//!
//! One text file per `(N, a, b)`: a header line `N a b X version` followed by
//! `n a_n` for `n = 1..=X`. Files are replaced atomically, so concurrent
//! readers see either the old table or the new one.

use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::index::FermatIndex;
use crate::jacobi::dirichlet_coeffs;

pub const CACHE_VERSION: u32 = 1;
pub const CACHE_DIR_ENV: &str = "FERMATREG_CACHE_DIR";

#[derive(Clone, Debug)]
pub struct CoeffCache {
    dir: PathBuf,
}

impl CoeffCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        CoeffCache { dir: dir.into() }
    }

    /// Directory from `FERMATREG_CACHE_DIR`, if set.
    pub fn from_env() -> Option<Self> {
        std::env::var_os(CACHE_DIR_ENV).map(Self::new)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, idx: &FermatIndex) -> PathBuf {
        self.dir.join(format!("coeffs_{}_{}_{}.txt", idx.n(), idx.a(), idx.b()))
    }

    /// Cached coefficients `a_0..a_X`, or `None` when absent or unreadable.
    pub fn load(&self, idx: &FermatIndex) -> Option<Vec<i64>> {
        let file = fs::File::open(self.path_for(idx)).ok()?;
        read_table(idx, BufReader::new(file)).ok()
    }

    pub fn store(&self, idx: &FermatIndex, coeffs: &[i64]) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        let tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        {
            let mut w = BufWriter::new(tmp.as_file());
            write_table(idx, coeffs, &mut w)?;
            w.flush()?;
        }
        tmp.persist(self.path_for(idx)).map_err(|e| Error::Cache(e.to_string()))?;
        Ok(())
    }

    /// At least `x` coefficients, computing and storing them when the cache falls short.
    pub fn get_or_compute(&self, idx: &FermatIndex, x: usize) -> Result<Vec<i64>> {
        if let Some(c) = self.load(idx) {
            if c.len() > x {
                return Ok(c);
            }
        }
        let c = dirichlet_coeffs(idx, x)?;
        self.store(idx, &c)?;
        Ok(c)
    }
}

/// Coefficients from the cache when one is given, computed otherwise.
pub fn coefficients(cache: Option<&CoeffCache>, idx: &FermatIndex, x: usize) -> Result<Vec<i64>> {
    match cache {
        Some(c) => c.get_or_compute(idx, x),
        None => dirichlet_coeffs(idx, x),
    }
}

pub fn write_table(idx: &FermatIndex, coeffs: &[i64], w: &mut impl Write) -> Result<()> {
    let x = coeffs.len().saturating_sub(1);
    writeln!(w, "{} {} {} {} {}", idx.n(), idx.a(), idx.b(), x, CACHE_VERSION)?;
    for (n, a) in coeffs.iter().enumerate().skip(1) {
        writeln!(w, "{n} {a}")?;
    }
    Ok(())
}

pub fn read_table(idx: &FermatIndex, r: impl BufRead) -> Result<Vec<i64>> {
    let bad = |what: &str| Error::Cache(what.to_string());
    let mut lines = r.lines();
    let header = lines.next().ok_or_else(|| bad("empty file"))??;
    let fields: Vec<u64> = header
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| bad("malformed header")))
        .collect::<Result<_>>()?;
    if fields.len() != 5 {
        return Err(bad("malformed header"));
    }
    if (fields[0], fields[1], fields[2]) != (idx.n() as u64, idx.a() as u64, idx.b() as u64) {
        return Err(bad("index mismatch"));
    }
    if fields[4] != CACHE_VERSION as u64 {
        return Err(bad("version mismatch"));
    }
    let x = fields[3] as usize;
    let mut out = Vec::with_capacity(x + 1);
    out.push(0);
    for (expect, line) in (1..=x).zip(&mut lines) {
        let line = line?;
        let mut it = line.split_whitespace();
        let n: usize = it.next().and_then(|t| t.parse().ok()).ok_or_else(|| bad("malformed line"))?;
        let a: i64 = it.next().and_then(|t| t.parse().ok()).ok_or_else(|| bad("malformed line"))?;
        if n != expect {
            return Err(bad("out-of-order entry"));
        }
        out.push(a);
    }
    if out.len() != x + 1 {
        return Err(bad("truncated file"));
    }
    Ok(out)
}

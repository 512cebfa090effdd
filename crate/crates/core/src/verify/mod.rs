//! End-to-end comparison of regulators with L-values.

mod recognize;
mod report;

use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use rug::{Float, Integer, Rational};

use crate::cache::{self, CoeffCache};
use crate::error::{Error, Result};
use crate::index::{element_set, h_set, is_primitive, reduce_nonprimitive, ElementKind, FermatIndex};
use crate::lattice::{period_det, r_tilde_from};
use crate::lfunc::{FunctionalEqData, LFunction};
use crate::numeric::{bits_for_digits, pow10_neg};
use crate::regulator::{r_from_matrix, RegMatrix};
use crate::tables::{conductor_norm, reference_row, reference_rows};

pub use recognize::{convergents, rational_recognize};
pub use report::{report_json, write_csv, CaseRecord, CSV_HEADER};

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub digits: u32,
    pub q_max: u64,
    /// Tolerance is `10^-tol_exp`; `digits - 5` when unset.
    pub tol_exp: Option<u32>,
    /// Falls back to `FERMATREG_CACHE_DIR`; no caching when neither is set.
    pub cache_dir: Option<PathBuf>,
    /// Rows run concurrently in `table_run`; rayon's default when unset.
    pub parallelism: Option<usize>,
    /// Conductor norm for indices outside the built-in table.
    pub conductor: Option<Integer>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { digits: 15, q_max: 1_000_000, tol_exp: None, cache_dir: None, parallelism: None, conductor: None }
    }
}

impl RunConfig {
    pub fn with_digits(digits: u32) -> Self {
        RunConfig { digits, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.digits < 8 {
            return Err(Error::Precondition(format!("at least 8 digits required, got {}", self.digits)));
        }
        if self.q_max == 0 {
            return Err(Error::Precondition("q_max must be positive".into()));
        }
        Ok(())
    }

    pub fn prec(&self) -> u32 {
        bits_for_digits(self.digits) + 16
    }

    pub fn tol_exp(&self) -> u32 {
        self.tol_exp.unwrap_or(self.digits.saturating_sub(5))
    }

    pub fn tolerance(&self) -> Float {
        pow10_neg(self.prec(), self.tol_exp() as i32)
    }

    pub fn cache(&self) -> Option<CoeffCache> {
        match &self.cache_dir {
            Some(d) => Some(CoeffCache::new(d)),
            None => CoeffCache::from_env(),
        }
    }
}

/// Wall-clock seconds per stage.
#[derive(Clone, Debug, Default, serde::Serialize)]
pub struct Timings {
    pub regulator: f64,
    pub lattice: f64,
    pub coefficients: f64,
    pub l_function: f64,
    pub total: f64,
}

#[derive(Clone, Debug)]
pub struct CaseReport {
    pub idx: FermatIndex,
    /// The requested index when it was not primitive.
    pub requested: Option<(u32, u32, u32)>,
    pub digits: u32,
    pub h_set: Vec<u32>,
    pub elements: Vec<ElementKind>,
    pub conductor_norm: Integer,
    pub coefficients_used: usize,
    pub r: Float,
    pub d_ab: Float,
    pub r_tilde: Float,
    pub l_star: Float,
    /// `R~ / L*(0)`.
    pub ratio: Float,
    pub recognized: Option<Rational>,
    pub residual: Option<Float>,
    pub epsilon: i32,
    pub expected: Option<Rational>,
    pub timings: Timings,
}

impl CaseReport {
    pub fn g(&self) -> usize {
        self.idx.g()
    }

    /// Recognized and equal to the built-in expected value.
    pub fn matches_expected(&self) -> bool {
        matches!((&self.recognized, &self.expected), (Some(r), Some(e)) if r == e)
    }
}

/// Runs the full comparison for one index.
pub fn verify_case(n: u32, a: i64, b: i64, config: &RunConfig) -> Result<CaseReport> {
    let requested = FermatIndex::new(n, a, b)?;
    verify_index(&requested, config)
}

pub fn verify_index(requested: &FermatIndex, config: &RunConfig) -> Result<CaseReport> {
    config.validate()?;
    let start = Instant::now();
    let mut timings = Timings::default();
    let (idx, requested) = if is_primitive(requested) {
        (*requested, None)
    } else {
        (reduce_nonprimitive(requested)?, Some((requested.n(), requested.a(), requested.b())))
    };
    let elements = element_set(&idx)?;
    let cond = match &config.conductor {
        Some(c) => c.clone(),
        None => conductor_norm(&idx)?,
    };
    let prec = config.prec();

    let t = Instant::now();
    let matrix = RegMatrix::with_elements(&idx, elements.clone(), prec + 32)?;
    let r = r_from_matrix(&matrix, prec)?;
    timings.regulator = t.elapsed().as_secs_f64();

    let t = Instant::now();
    let d_ab = period_det(&idx, prec)?;
    let r_tilde = r_tilde_from(&idx, &r, prec)?;
    timings.lattice = t.elapsed().as_secs_f64();

    let t = Instant::now();
    let data = FunctionalEqData::with_conductor(&idx, cond.clone(), prec)?;
    let lf = LFunction::new(data, Arc::new(vec![0]), prec);
    let x = lf.required_coefficients()?;
    let coeffs = cache::coefficients(config.cache().as_ref(), &idx, x)?;
    timings.coefficients = t.elapsed().as_secs_f64();

    let t = Instant::now();
    let mut lf = lf.with_coeffs(Arc::new(coeffs));
    let epsilon = lf.solve_epsilon()?;
    let l_star = lf.l_star_zero()?;
    timings.l_function = t.elapsed().as_secs_f64();

    let ratio = Float::with_val(prec, &r_tilde / &l_star);
    let recognized = rational_recognize(&ratio, config.q_max, &config.tolerance());
    let residual = recognized.as_ref().map(|q| Float::with_val(prec, &ratio - q).abs());
    timings.total = start.elapsed().as_secs_f64();
    Ok(CaseReport {
        idx,
        requested,
        digits: config.digits,
        h_set: h_set(&idx),
        elements,
        conductor_norm: cond,
        coefficients_used: x,
        r,
        d_ab,
        r_tilde,
        l_star,
        ratio,
        recognized,
        residual,
        epsilon,
        expected: reference_row(&idx).map(|row| row.ratio),
        timings,
    })
}

/// One reference row: the expected ratio and what the pipeline produced.
#[derive(Debug)]
pub struct RowOutcome {
    pub idx: FermatIndex,
    pub expected: Rational,
    pub result: Result<CaseReport>,
}

impl RowOutcome {
    pub fn matches(&self) -> bool {
        matches!(&self.result, Ok(r) if r.recognized.as_ref() == Some(&self.expected))
    }
}

#[derive(Debug)]
pub struct TableRun {
    pub rows: Vec<RowOutcome>,
}

impl TableRun {
    pub fn matched(&self) -> usize {
        self.rows.iter().filter(|r| r.matches()).count()
    }

    pub fn all_match(&self) -> bool {
        self.matched() == self.rows.len()
    }

    pub fn records(&self) -> Vec<CaseRecord> {
        self.rows.iter().map(CaseRecord::from_outcome).collect()
    }

    pub fn reports(&self) -> impl Iterator<Item = &CaseReport> {
        self.rows.iter().filter_map(|r| r.result.as_ref().ok())
    }

    pub fn status(&self) -> RunStatus {
        if self.rows.iter().any(|r| matches!(&r.result, Err(e) if e.is_structural())) {
            RunStatus::Structural
        } else if self.all_match() {
            RunStatus::Success
        } else {
            RunStatus::Mismatch
        }
    }
}

/// Process outcome; the discriminant is the exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RunStatus {
    Success = 0,
    Mismatch = 2,
    Structural = 3,
}

impl RunStatus {
    pub fn code(self) -> i32 {
        self as i32
    }

    pub fn of_case(result: &Result<CaseReport>) -> Self {
        match result {
            Ok(r) if r.expected.is_none() || r.matches_expected() => {
                if r.recognized.is_some() {
                    RunStatus::Success
                } else {
                    RunStatus::Mismatch
                }
            }
            Ok(_) => RunStatus::Mismatch,
            Err(e) if e.is_structural() => RunStatus::Structural,
            Err(_) => RunStatus::Mismatch,
        }
    }
}

/// Runs every reference row.
pub fn table_run(config: &RunConfig) -> Result<TableRun> {
    config.validate()?;
    let rows = reference_rows();
    let run = || {
        rows.par_iter()
            .map(|row| {
                let idx = row.index();
                RowOutcome { idx, expected: row.ratio.clone(), result: verify_index(&idx, config) }
            })
            .collect::<Vec<_>>()
    };
    let rows = match config.parallelism {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build()
            .map_err(|e| Error::Precondition(e.to_string()))?
            .install(run),
        None => run(),
    };
    Ok(TableRun { rows })
}

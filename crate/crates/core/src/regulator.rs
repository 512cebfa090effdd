//! The regulator matrix of the chosen elements and the value `R_N^{a,b}`.

use rayon::prelude::*;
use rug::ops::Pow;
use rug::Float;

use crate::cyclo;
use crate::error::{Error, Result};
use crate::hyperg::f_val;
use crate::index::{element_set, even_trace, h_set, ElementKind, FermatIndex};
use crate::numeric::{det_real, pi, pow2_neg, sin_pi_frac};

/// `D_N = |det(2 sin(2 pi h n / N))|` over units `h < N/2` and `n = 1..g`.
pub fn d_const(n: u32, prec: u32) -> Float {
    let wp = prec + 32;
    let hs: Vec<u32> = cyclo::units(n).into_iter().filter(|&h| 2 * h < n).collect();
    let m: Vec<Vec<Float>> = hs
        .iter()
        .map(|&h| (1..=hs.len() as i64).map(|k| sin_pi_frac(2 * h as i64 * k, n as i64, wp) * 2u32).collect())
        .collect();
    Float::with_val(prec, det_real(m, wp).abs())
}

/// `exact * sin(sin_num pi/N) / sin(sin_den pi/N) * F_N^{f_index}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RowEntry {
    pub exact: i64,
    pub sin_num: u32,
    pub sin_den: u32,
    pub f_index: FermatIndex,
}

impl RowEntry {
    pub fn scalar(&self, prec: u32) -> Float {
        let n = self.f_index.n() as i64;
        let wp = prec + 16;
        let r = sin_pi_frac(self.sin_num as i64, n, wp) / sin_pi_frac(self.sin_den as i64, n, wp) * self.exact;
        Float::with_val(prec, r)
    }

    pub fn value(&self, prec: u32) -> Float {
        let wp = prec + 16;
        Float::with_val(prec, self.scalar(wp) * f_val(&self.f_index, wp))
    }
}

/// Coefficient of `(w~^{ha,hb} - w~^{-ha,-hb})` in the regulator of `kind`, times `-N`.
pub fn row_coefficient(idx: &FermatIndex, kind: ElementKind, h: u32) -> Result<RowEntry> {
    let hi = h as i64;
    let (ha, hb, hc) = (idx.angle(hi * idx.a() as i64), idx.angle(hi * idx.b() as i64), idx.angle(hi * idx.c() as i64));
    let inadmissible = |name| Error::InadmissibleElement { n: idx.n(), a: idx.a(), b: idx.b(), element: name };
    let at = |x: u32, y: u32| FermatIndex::new(idx.n(), x as i64, y as i64);
    let even = idx.n() % 2 == 0;
    let entry = match kind {
        ElementKind::E => RowEntry { exact: 1, sin_num: 1, sin_den: 1, f_index: at(ha, hb)? },
        ElementKind::EAlpha => {
            let exact = if even {
                2 * even_trace(idx, kind, h).map_err(|_| inadmissible("e_alpha"))?
            } else if hb % 2 == 0 {
                1
            } else {
                -1
            };
            RowEntry { exact, sin_num: hc, sin_den: ha, f_index: at(hc, hb)? }
        }
        ElementKind::EBeta => {
            let exact = if even {
                2 * even_trace(idx, kind, h).map_err(|_| inadmissible("e_beta"))?
            } else if ha % 2 == 0 {
                1
            } else {
                -1
            };
            RowEntry { exact, sin_num: hc, sin_den: hb, f_index: at(ha, hc)? }
        }
    };
    Ok(entry)
}

/// Rows are elements in `element_set` order, columns follow `h_set`.
#[derive(Clone, Debug)]
pub struct RegMatrix {
    pub idx: FermatIndex,
    pub rows: Vec<ElementKind>,
    pub cols: Vec<u32>,
    pub coefficients: Vec<Vec<RowEntry>>,
    pub entries: Vec<Vec<Float>>,
}

impl RegMatrix {
    pub fn build(idx: &FermatIndex, prec: u32) -> Result<Self> {
        Self::with_elements(idx, element_set(idx)?, prec)
    }

    pub fn with_elements(idx: &FermatIndex, rows: Vec<ElementKind>, prec: u32) -> Result<Self> {
        let cols = h_set(idx);
        let coefficients = rows
            .iter()
            .map(|&k| cols.iter().map(|&h| row_coefficient(idx, k, h)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let entries = coefficients
            .par_iter()
            .map(|row| row.iter().map(|e| e.value(prec)).collect())
            .collect();
        Ok(RegMatrix { idx: *idx, rows, cols, coefficients, entries })
    }

    pub fn det(&self, prec: u32) -> Float {
        det_real(self.entries.clone(), prec)
    }
}

/// `R_N^{a,b} = D_N / ((2 pi)^g N^g) |det|`.
pub fn r_value(idx: &FermatIndex, prec: u32) -> Result<Float> {
    let wp = prec + 32;
    let m = RegMatrix::build(idx, wp)?;
    r_from_matrix(&m, prec)
}

pub fn r_from_matrix(m: &RegMatrix, prec: u32) -> Result<Float> {
    let wp = prec + 32;
    let det = m.det(wp).abs();
    if det < pow2_neg(wp, prec / 2) {
        return Err(Error::DegenerateRegulator);
    }
    let g = m.rows.len() as u32;
    let n = m.idx.n();
    let denom = Float::with_val(wp, pi(wp) * 2u32 * n).pow(g);
    Ok(Float::with_val(prec, d_const(n, wp) * det / denom))
}

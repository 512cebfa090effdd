//! CSV and JSON renderings of case reports.

use std::io::Write;

use rug::{Float, Rational};
use serde::Serialize;
use serde_json::{json, Value};

use super::{CaseReport, RowOutcome, Timings};
use crate::error::{Error, Result};
use crate::index::FermatIndex;

pub const CSV_HEADER: [&str; 13] =
    ["N", "a", "b", "g", "H", "D_ab", "R", "R_tilde", "L_star", "ratio", "recognized", "residual", "epsilon"];

/// Flat, string-valued view of one case; failed cases carry `error` only.
#[derive(Clone, Debug, Default, Serialize)]
pub struct CaseRecord {
    pub n: u32,
    pub a: u32,
    pub b: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub requested: Option<[u32; 3]>,
    pub g: usize,
    pub h: String,
    pub elements: Vec<String>,
    pub conductor_norm: String,
    pub coefficients_used: usize,
    pub d_ab: String,
    pub r: String,
    pub r_tilde: String,
    pub l_star: String,
    pub ratio: String,
    pub recognized: Option<String>,
    pub residual: Option<String>,
    pub epsilon: Option<i32>,
    pub expected: Option<String>,
    pub matches_expected: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip)]
    pub timings: Option<Timings>,
}

fn decimal(x: &Float, digits: u32) -> String {
    x.to_string_radix(10, Some(digits as usize))
}

fn fraction(q: &Rational) -> String {
    if *q.denom() == 1 {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl CaseRecord {
    pub fn from_report(r: &CaseReport) -> Self {
        let d = r.digits;
        CaseRecord {
            n: r.idx.n(),
            a: r.idx.a(),
            b: r.idx.b(),
            requested: r.requested.map(|(n, a, b)| [n, a, b]),
            g: r.g(),
            h: r.h_set.iter().map(u32::to_string).collect::<Vec<_>>().join(" "),
            elements: r.elements.iter().map(ToString::to_string).collect(),
            conductor_norm: r.conductor_norm.to_string(),
            coefficients_used: r.coefficients_used,
            d_ab: decimal(&r.d_ab, d),
            r: decimal(&r.r, d),
            r_tilde: decimal(&r.r_tilde, d),
            l_star: decimal(&r.l_star, d),
            ratio: decimal(&r.ratio, d),
            recognized: r.recognized.as_ref().map(fraction),
            residual: r.residual.as_ref().map(|x| decimal(x, 3)),
            epsilon: Some(r.epsilon),
            expected: r.expected.as_ref().map(fraction),
            matches_expected: r.expected.as_ref().map(|_| r.matches_expected()),
            error: None,
            timings: Some(r.timings.clone()),
        }
    }

    pub fn from_error(idx: &FermatIndex, err: &Error) -> Self {
        CaseRecord {
            n: idx.n(),
            a: idx.a(),
            b: idx.b(),
            g: idx.g(),
            error: Some(err.to_string()),
            ..Self::default()
        }
    }

    pub fn from_outcome(row: &RowOutcome) -> Self {
        match &row.result {
            Ok(r) => Self::from_report(r),
            Err(e) => CaseRecord { expected: Some(fraction(&row.expected)), ..Self::from_error(&row.idx, e) },
        }
    }

    fn csv_row(&self) -> [String; 13] {
        let opt = |s: &Option<String>| s.clone().unwrap_or_default();
        [
            self.n.to_string(),
            self.a.to_string(),
            self.b.to_string(),
            self.g.to_string(),
            self.h.clone(),
            self.d_ab.clone(),
            self.r.clone(),
            self.r_tilde.clone(),
            self.l_star.clone(),
            self.ratio.clone(),
            opt(&self.recognized),
            opt(&self.residual),
            self.epsilon.map(|e| e.to_string()).unwrap_or_default(),
        ]
    }
}

pub fn write_csv(records: &[CaseRecord], w: impl Write) -> Result<()> {
    let err = |e: csv::Error| Error::Io(e.to_string());
    let mut out = csv::Writer::from_writer(w);
    out.write_record(CSV_HEADER).map_err(err)?;
    for r in records {
        out.write_record(r.csv_row()).map_err(err)?;
    }
    out.flush()?;
    Ok(())
}

/// `{"cases": [...]}`, plus a parallel `"timings"` array when asked for.
///
/// Without timings the output depends only on the inputs and precision.
pub fn report_json(records: &[CaseRecord], with_timings: bool) -> Value {
    let mut v = json!({ "cases": records });
    if with_timings {
        let t: Vec<Value> = records
            .iter()
            .map(|r| json!({ "N": r.n, "a": r.a, "b": r.b, "seconds": r.timings }))
            .collect();
        v["timings"] = Value::Array(t);
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::{verify_case, RunConfig};

    #[test]
    fn csv_header_and_row() {
        let r = verify_case(3, 1, 1, &RunConfig::default()).unwrap();
        let mut buf = Vec::new();
        write_csv(&[CaseRecord::from_report(&r)], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "N,a,b,g,H,D_ab,R,R_tilde,L_star,ratio,recognized,residual,epsilon");
        let row: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(&row[..5], &["3", "1", "1", "1", "1"]);
        assert_eq!((row[10], row[12]), ("18", "1"));
        assert!(row[9].starts_with("18.0000000000"), "{}", row[9]);
    }

    #[test]
    fn json_is_deterministic_without_timings() {
        let c = RunConfig::default();
        let render = || {
            let recs = [
                CaseRecord::from_report(&verify_case(4, 1, 2, &c).unwrap()),
                CaseRecord::from_error(&FermatIndex::new(8, 1, 2).unwrap(), &verify_case(8, 1, 2, &c).unwrap_err()),
            ];
            serde_json::to_string_pretty(&report_json(&recs, false)).unwrap()
        };
        let first = render();
        assert_eq!(first, render());
        let v: Value = serde_json::from_str(&first).unwrap();
        assert_eq!(v["cases"][0]["recognized"], "8");
        assert!(v["cases"][1]["error"].is_string());
        assert!(v.get("timings").is_none());
    }

    #[test]
    fn fractions_render_as_p_over_q() {
        assert_eq!(fraction(&Rational::from((-8, 3))), "-8/3");
        assert_eq!(fraction(&Rational::from(2744)), "2744");
    }
}

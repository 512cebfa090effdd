//! Built-in case data: conductors, finite-character values on generators,
//! and the expected integral regulator ratios.

use rug::ops::Pow;
use rug::{Integer, Rational};

use crate::cyclo::{elt_norm, CycElt};
use crate::error::{Error, Result};
use crate::index::FermatIndex;

/// A factor `(gen)^exp` of the conductor ideal, `gen` given at level `N`.
#[derive(Clone, Debug)]
pub struct IdealFactor {
    pub generator: CycElt,
    pub exponent: u32,
}

#[derive(Clone, Debug)]
pub struct ConductorEntry {
    pub n: u32,
    pub a: u32,
    pub b: u32,
    pub factors: Vec<IdealFactor>,
    pub description: &'static str,
}

impl ConductorEntry {
    pub fn norm(&self) -> Integer {
        let mut acc = Integer::from(1);
        for f in &self.factors {
            let nf = elt_norm(&f.generator);
            acc *= Integer::from(nf.numer().abs_ref()).pow(f.exponent);
        }
        acc
    }
}

fn int(n: u32, v: i64) -> CycElt {
    CycElt::from_int(n, v)
}

/// `1 - zeta_m` written at level `n`.
fn one_minus_zeta(n: u32, m: u32) -> CycElt {
    &CycElt::one(n) - &CycElt::zeta_pow(n, (n / m) as i64)
}

fn fac(generator: CycElt, exponent: u32) -> IdealFactor {
    IdealFactor { generator, exponent }
}

/// Conductors of the supported cases.
pub fn conductors() -> Vec<ConductorEntry> {
    let e = |n, a, b, factors, description| ConductorEntry { n, a, b, factors, description };
    vec![
        e(3, 1, 1, vec![fac(one_minus_zeta(3, 3), 2)], "(1-z3)^2"),
        e(4, 1, 1, vec![fac(one_minus_zeta(4, 4), 4)], "(4)=(1-z4)^4"),
        e(4, 1, 2, vec![fac(one_minus_zeta(4, 4), 3)], "(1-z4)^3"),
        e(6, 1, 1, vec![fac(int(6, 2), 2), fac(one_minus_zeta(6, 3), 2)], "(2)^2(1-z3)^2"),
        e(6, 1, 2, vec![fac(int(6, 2), 1), fac(one_minus_zeta(6, 3), 1)], "(2)(1-z3)"),
        e(6, 1, 3, vec![fac(int(6, 2), 2), fac(one_minus_zeta(6, 3), 1)], "(2)^2(1-z3)"),
        e(6, 1, 4, vec![fac(int(6, 2), 1), fac(one_minus_zeta(6, 3), 2)], "(2)(1-z3)^2"),
        e(6, 2, 3, vec![fac(int(6, 2), 1), fac(one_minus_zeta(6, 3), 1)], "(2)(1-z3)"),
        e(5, 1, 1, vec![fac(one_minus_zeta(5, 5), 2)], "(1-z5)^2"),
        e(10, 1, 2, vec![fac(int(10, 2), 1), fac(one_minus_zeta(10, 5), 2)], "(2)(1-z5)^2"),
        e(10, 1, 4, vec![fac(int(10, 2), 1), fac(one_minus_zeta(10, 5), 1)], "(2)(1-z5)"),
        e(10, 1, 6, vec![fac(int(10, 2), 1), fac(one_minus_zeta(10, 5), 2)], "(2)(1-z5)^2"),
        e(10, 2, 5, vec![fac(int(10, 2), 1), fac(one_minus_zeta(10, 5), 1)], "(2)(1-z5)"),
        e(12, 1, 2, vec![fac(one_minus_zeta(12, 4), 3), fac(one_minus_zeta(12, 3), 1)], "(1-z4)^3(1-z3)"),
        e(12, 1, 6, vec![fac(one_minus_zeta(12, 4), 3), fac(one_minus_zeta(12, 3), 1)], "(1-z4)^3(1-z3)"),
        e(12, 2, 3, vec![fac(one_minus_zeta(12, 4), 3), fac(one_minus_zeta(12, 3), 1)], "(1-z4)^3(1-z3)"),
        e(7, 1, 2, vec![fac(one_minus_zeta(7, 7), 1)], "(1-z7)"),
        e(9, 1, 2, vec![fac(one_minus_zeta(9, 9), 4)], "(1-z9)^4"),
    ]
}

pub fn conductor_entry(idx: &FermatIndex) -> Result<ConductorEntry> {
    conductors()
        .into_iter()
        .find(|c| (c.n, c.a, c.b) == (idx.n(), idx.a(), idx.b()))
        .ok_or(Error::UnknownConductor { n: idx.n(), a: idx.a(), b: idx.b() })
}

/// Ideal norm of the conductor of `j_N^{a,b}`.
pub fn conductor_norm(idx: &FermatIndex) -> Result<Integer> {
    conductor_entry(idx).map(|c| c.norm())
}

/// A generator `alpha` of a prime ideal and the value `phi(alpha)`.
#[derive(Clone, Debug)]
pub struct CharacterValue {
    pub n: u32,
    pub a: u32,
    pub b: u32,
    pub alpha: CycElt,
    pub phi: CycElt,
}

/// The finite-character values on the listed prime generators.
pub fn character_table() -> Vec<CharacterValue> {
    let z = CycElt::zeta_pow;
    let cv = |n, a, b, alpha, phi| CharacterValue { n, a, b, alpha, phi };
    // s = -2 - 3 z3, t = 1 + 4 z3 with z3 = z6^2
    let s = CycElt::from_int_coeffs(6, &[-2, 0, -3]);
    let t = CycElt::from_int_coeffs(6, &[1, 0, 4]);
    // 1 + 2 z5 with z5 = z10^2
    let u = CycElt::from_int_coeffs(10, &[1, 0, 2]);
    let w = CycElt::from_int_coeffs(12, &[2, -1]);
    let neg = |x: CycElt| -&x;
    vec![
        cv(4, 1, 1, CycElt::from_int_coeffs(4, &[1, -2]), int(4, 1)),
        cv(6, 1, 1, s.clone(), neg(z(6, 2))),
        cv(6, 1, 1, t.clone(), neg(z(6, 4))),
        cv(6, 1, 2, s.clone(), z(6, 4)),
        cv(6, 1, 2, t.clone(), int(6, -1)),
        cv(6, 1, 3, s.clone(), neg(z(6, 4))),
        cv(6, 1, 3, t.clone(), int(6, -1)),
        cv(6, 1, 4, s, z(6, 2)),
        cv(6, 1, 4, t, neg(z(6, 4))),
        cv(5, 1, 1, int(5, 2), int(5, -1)),
        cv(10, 1, 2, u.clone(), neg(z(10, 8))),
        cv(10, 1, 4, u.clone(), int(10, -1)),
        cv(10, 1, 6, u, neg(z(10, 4))),
        cv(12, 1, 2, w.clone(), neg(z(12, 1))),
        cv(12, 1, 6, w, int(12, -1)),
        cv(7, 1, 2, int(7, 3), int(7, -1)),
        cv(9, 1, 2, CycElt::from_int_coeffs(9, &[1, 1, -1]), z(9, 8)),
    ]
}

/// `k_n^- / d`: one generator of the integral structure, `k_n^- = k_n - k_{c-n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KappaGen {
    pub n: u32,
    pub divisor: u32,
}

/// `r * sqrt(k)` with `r` rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurdValue {
    pub rational: Rational,
    pub radicand: u32,
}

impl SurdValue {
    pub fn to_float(&self, prec: u32) -> rug::Float {
        let r = rug::Float::with_val(prec, &self.rational);
        r * rug::Float::with_val(prec, self.radicand).sqrt()
    }
}

#[derive(Clone, Debug)]
pub struct ReferenceRow {
    pub n: u32,
    pub a: u32,
    pub b: u32,
    pub h: Vec<u32>,
    pub basis: Vec<KappaGen>,
    pub period_det: SurdValue,
    pub ratio: Rational,
}

impl ReferenceRow {
    pub fn index(&self) -> FermatIndex {
        FermatIndex::new(self.n, self.a as i64, self.b as i64).expect("table rows are valid")
    }
}

/// The eighteen reference rows, `ratio` being `R~ / L*(0)`.
pub fn reference_rows() -> Vec<ReferenceRow> {
    let k = |n, divisor| KappaGen { n, divisor };
    let sv = |num: i64, den: u32, radicand| SurdValue { rational: Rational::from((num, den)), radicand };
    let row = |n, a, b, h: &[u32], basis: Vec<KappaGen>, period_det, ratio: (i64, u32)| ReferenceRow {
        n,
        a,
        b,
        h: h.to_vec(),
        basis,
        period_det,
        ratio: Rational::from(ratio),
    };
    vec![
        row(3, 1, 1, &[1], vec![k(0, 1)], sv(6, 1, 3), (18, 1)),
        row(4, 1, 1, &[1], vec![k(0, 2)], sv(4, 1, 1), (4, 1)),
        row(4, 1, 2, &[1], vec![k(0, 1)], sv(8, 1, 1), (8, 1)),
        row(6, 1, 1, &[1], vec![k(0, 1)], sv(2, 1, 3), (-1, 1)),
        row(6, 1, 2, &[1], vec![k(1, 2)], sv(2, 1, 3), (6, 1)),
        row(6, 1, 3, &[1], vec![k(0, 1)], sv(2, 1, 3), (1, 1)),
        row(6, 1, 4, &[1], vec![k(0, 1)], sv(2, 1, 3), (1, 1)),
        row(6, 2, 3, &[1], vec![k(0, 1)], sv(4, 1, 3), (2, 1)),
        row(5, 1, 1, &[1, 2], vec![k(0, 1), k(1, 1)], sv(100, 1, 1), (100, 1)),
        row(10, 1, 2, &[1, 3], vec![k(0, 1), k(1, 2)], sv(10, 1, 1), (1, 2)),
        row(10, 1, 4, &[1, 3], vec![k(0, 2), k(1, 1)], sv(10, 1, 1), (2, 1)),
        row(10, 1, 6, &[1, 7], vec![k(0, 1), k(1, 1)], sv(20, 1, 1), (1, 1)),
        row(10, 2, 5, &[1, 7], vec![k(0, 1), k(1, 1)], sv(80, 1, 1), (4, 1)),
        row(12, 1, 2, &[1, 7], vec![k(0, 1), k(1, 1)], sv(8, 1, 3), (4, 3)),
        row(12, 1, 6, &[1, 5], vec![k(0, 1), k(1, 1)], sv(32, 1, 3), (-8, 3)),
        row(12, 2, 3, &[1, 7], vec![k(0, 1), k(2, 1)], sv(16, 1, 3), (4, 3)),
        row(7, 1, 2, &[1, 2, 4], vec![k(0, 1), k(1, 1), k(5, 1)], sv(392, 1, 7), (2744, 1)),
        row(9, 1, 2, &[1, 2, 5], vec![k(0, 1), k(1, 1), k(2, 1)], sv(216, 1, 3), (72, 1)),
    ]
}

pub fn reference_row(idx: &FermatIndex) -> Option<ReferenceRow> {
    reference_rows().into_iter().find(|r| (r.n, r.a, r.b) == (idx.n(), idx.a(), idx.b()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::h_set;
    use crate::jacobi::hecke_check;

    #[test]
    fn conductor_norm_examples() {
        let norm = |n, a, b| conductor_norm(&FermatIndex::new(n, a, b).unwrap()).unwrap();
        assert_eq!(norm(7, 1, 2), 7);
        assert_eq!(norm(4, 1, 1), 16);
        assert_eq!(norm(5, 1, 1), 25);
        assert_eq!(norm(6, 1, 1), 144);
        assert_eq!(norm(6, 1, 2), 12);
        assert_eq!(norm(10, 1, 2), 400);
        assert_eq!(norm(10, 1, 4), 80);
        assert_eq!(norm(12, 1, 6), 576);
        assert_eq!(norm(9, 1, 2), 81);
        assert!(matches!(
            conductor_norm(&FermatIndex::new(11, 1, 2).unwrap()),
            Err(Error::UnknownConductor { .. })
        ));
    }

    #[test]
    fn table_h_sets_match() {
        for row in reference_rows() {
            assert_eq!(h_set(&row.index()), row.h, "({},{},{})", row.n, row.a, row.b);
        }
        assert_eq!(reference_rows().len(), 18);
    }

    #[test]
    fn every_conductor_has_a_row() {
        for c in conductors() {
            assert!(reference_row(&FermatIndex::new(c.n, c.a as i64, c.b as i64).unwrap()).is_some());
        }
    }

    #[test]
    fn character_values_satisfy_the_hecke_identity() {
        for cv in character_table() {
            let idx = FermatIndex::new(cv.n, cv.a as i64, cv.b as i64).unwrap();
            let chk = hecke_check(&idx, &cv.alpha, &cv.phi).unwrap();
            assert!(chk.holds(), "({},{},{}) alpha={} j={} predicted={}", cv.n, cv.a, cv.b, cv.alpha, chk.jacobi, chk.predicted);
        }
    }
}

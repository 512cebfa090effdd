//! The integral structure `T_N^{[a,b]}`: the `F_inf = -1` part of `H_1`
//! spanned by the cycles `k_n`, its period determinant and `R~`.

use rug::{Float, Integer, Rational};

use crate::cyclo::CycElt;
use crate::error::{Error, Result};
use crate::index::{h_set, FermatIndex};
use crate::intmat::{self, IntMatrix};
use crate::numeric::{det_real, BigComplex};
use crate::regulator::{d_const, r_value};
use crate::tables::KappaGen;

/// `k_n` in the basis `k_0, ..., k_{2g-1}`, i.e. `t^n mod Phi_N`.
pub fn kappa(idx: &FermatIndex, n: i64) -> Vec<i64> {
    CycElt::zeta_pow(idx.n(), n)
        .int_coeffs()
        .expect("powers of zeta are integral")
        .iter()
        .map(|c| c.to_i64().unwrap())
        .collect()
}

/// `k_n^- = k_n - k_{c-n}`.
pub fn kappa_minus(idx: &FermatIndex, n: i64) -> Vec<i64> {
    let c = idx.c() as i64;
    kappa(idx, n).iter().zip(kappa(idx, c - n)).map(|(x, y)| x - y).collect()
}

/// The matrix of `F_inf : k_n -> k_{c-n}`.
pub fn f_infty_matrix(idx: &FermatIndex) -> IntMatrix {
    let d = 2 * idx.g();
    let cols: Vec<Vec<i64>> = (0..d as i64).map(|j| kappa(idx, idx.c() as i64 - j)).collect();
    (0..d).map(|i| cols.iter().map(|c| c[i]).collect()).collect()
}

/// Multiplication by `zeta` on the `k` basis.
pub fn shift_matrix(idx: &FermatIndex) -> IntMatrix {
    let d = 2 * idx.g();
    let cols: Vec<Vec<i64>> = (0..d as i64).map(|j| kappa(idx, j + 1)).collect();
    (0..d).map(|i| cols.iter().map(|c| c[i]).collect()).collect()
}

/// A basis of `ker(F_inf + 1)` in `Z^{2g}`.
pub fn t_lattice_basis(idx: &FermatIndex) -> Result<Vec<Vec<i64>>> {
    let mut m = f_infty_matrix(idx);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] += 1;
    }
    let basis = intmat::kernel_basis(&m);
    if basis.len() != idx.g() {
        return Err(Error::RankMismatch { found: basis.len(), expected: idx.g() });
    }
    debug_assert_eq!(intmat::maximal_minor_gcd(&basis), 1);
    Ok(basis)
}

/// Rational coordinates of `k_n^- / d`.
pub fn kappa_gen_vector(idx: &FermatIndex, k: KappaGen) -> Vec<Rational> {
    kappa_minus(idx, k.n as i64).into_iter().map(|x| Rational::from((x, k.divisor))).collect()
}

/// Whether the columns of `a` and `b` span the same sublattice of `Q^{2g}`.
pub fn same_lattice(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> bool {
    let inside = |from: &[Vec<Rational>], into: &[Vec<Rational>]| {
        from.iter().all(|v| {
            intmat::solve_rational(into, v).is_some_and(|x| x.iter().all(|c| *c.denom() == 1))
        })
    };
    a.len() == b.len() && inside(a, b) && inside(b, a)
}

pub fn to_rational_cols(cols: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    cols.iter().map(|c| c.iter().map(|&x| Rational::from(x)).collect()).collect()
}

/// `sum_n t_n zeta^{hn} (1 - zeta^{ha})(1 - zeta^{hb})` as an exact element.
fn pairing_element(idx: &FermatIndex, t: &[Rational], h: u32) -> CycElt {
    let n = idx.n();
    let hi = h as i64;
    let mut acc = CycElt::zero(n);
    for (k, c) in t.iter().enumerate() {
        if *c != 0 {
            acc = &acc + &CycElt::zeta_pow(n, hi * k as i64).scale(c);
        }
    }
    let one = CycElt::one(n);
    let fa = &one - &CycElt::zeta_pow(n, hi * idx.a() as i64);
    let fb = &one - &CycElt::zeta_pow(n, hi * idx.b() as i64);
    &(&acc * &fa) * &fb
}

/// `int_t (w~^{ha,hb} - w~^{-ha,-hb}) = 2i Im(sum_n t_n zeta^{hn} (1-zeta^{ha})(1-zeta^{hb}))`.
pub fn period_pairing(idx: &FermatIndex, t: &[Rational], h: u32, prec: u32) -> BigComplex {
    let z = crate::cyclo::embed(&pairing_element(idx, t, h), prec);
    BigComplex::new(Float::new(prec), z.im * 2u32)
}

/// `|det(int_{t_j} (w~^{h_i a, h_i b} - w~^{-h_i a, -h_i b}) / i)|` for a given basis.
pub fn period_det_for(idx: &FermatIndex, basis: &[Vec<Rational>], prec: u32) -> Float {
    let wp = prec + 32;
    let m: Vec<Vec<Float>> = h_set(idx)
        .iter()
        .map(|&h| basis.iter().map(|t| period_pairing(idx, t, h, wp).im).collect())
        .collect();
    Float::with_val(prec, det_real(m, wp).abs())
}

/// `D_N^{a,b}`.
pub fn period_det(idx: &FermatIndex, prec: u32) -> Result<Float> {
    let basis = to_rational_cols(&t_lattice_basis(idx)?);
    Ok(period_det_for(idx, &basis, prec))
}

/// `R~ = D_N^{a,b} / D_N * R`.
pub fn r_tilde(idx: &FermatIndex, prec: u32) -> Result<Float> {
    let wp = prec + 16;
    let r = r_value(idx, wp)?;
    r_tilde_from(idx, &r, prec)
}

pub fn r_tilde_from(idx: &FermatIndex, r: &Float, prec: u32) -> Result<Float> {
    let wp = prec + 16;
    let dab = period_det(idx, wp)?;
    Ok(Float::with_val(prec, dab / d_const(idx.n(), wp) * r))
}

/// Integral coordinates of an integer vector in a lattice basis, if it lies in the lattice.
pub fn coordinates(basis: &[Vec<i64>], v: &[i64]) -> Option<Vec<Integer>> {
    let x = intmat::solve_rational(&to_rational_cols(basis), &v.iter().map(|&c| Rational::from(c)).collect::<Vec<_>>())?;
    x.into_iter().map(|c| (*c.denom() == 1).then(|| c.numer().clone())).collect()
}

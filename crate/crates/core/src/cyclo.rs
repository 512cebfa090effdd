//! Exact arithmetic in the cyclotomic field `Q(zeta_N)`.
//!
//! Elements are stored in the power basis `1, zeta, ..., zeta^(phi(N)-1)`
//! reduced modulo the cyclotomic polynomial, so equality is coefficientwise.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex};

use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::numeric::BigComplex;

pub fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn euler_phi(n: u32) -> u32 {
    prime_factors(n as u64).iter().fold(n, |acc, &p| acc / p as u32 * (p as u32 - 1))
}

/// Distinct prime factors in ascending order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Units of `Z/N` in ascending order of representative.
pub fn units(n: u32) -> Vec<u32> {
    (1..n.max(2)).filter(|&h| gcd(h as u64, n as u64) == 1).collect()
}

pub fn inverse_mod(h: u32, n: u32) -> Option<u32> {
    (1..n).find(|&k| (h as u64 * k as u64) % n as u64 == 1).or(if n == 1 { Some(0) } else { None })
}

static PHI_CACHE: Mutex<Option<HashMap<u32, Arc<Vec<i64>>>>> = Mutex::new(None);

/// Coefficients (constant term first) of the `N`-th cyclotomic polynomial.
pub fn cyclotomic_poly(n: u32) -> Arc<Vec<i64>> {
    assert!(n >= 1, "cyclotomic_poly needs N >= 1");
    if let Some(p) = PHI_CACHE.lock().unwrap().get_or_insert_with(HashMap::new).get(&n) {
        return p.clone();
    }
    // t^N - 1 divided by every Phi_d, d | N, d < N
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            let den = cyclotomic_poly(d);
            num = poly_div_exact(&num, &den);
        }
    }
    let p = Arc::new(num);
    PHI_CACHE.lock().unwrap().get_or_insert_with(HashMap::new).insert(n, p.clone());
    p
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    debug_assert_eq!(den[dn], 1);
    let mut rem = num.to_vec();
    let mut quo = vec![0i64; num.len() - dn];
    for i in (0..quo.len()).rev() {
        let c = rem[i + dn];
        quo[i] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[i + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    quo
}

/// Element of `Q(zeta_N)` in the reduced power basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycElt {
    level: u32,
    coeffs: Vec<Rational>,
}

impl fmt::Debug for CycElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for CycElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})z{}", self.level)?,
                _ => write!(f, "({c})z{}^{k}", self.level)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl CycElt {
    pub fn zero(level: u32) -> Self {
        let d = euler_phi(level) as usize;
        CycElt { level, coeffs: vec![Rational::new(); d] }
    }

    pub fn from_int(level: u32, v: i64) -> Self {
        let mut z = Self::zero(level);
        z.coeffs[0] = Rational::from(v);
        z
    }

    pub fn one(level: u32) -> Self {
        Self::from_int(level, 1)
    }

    /// `zeta_N^k` for any integer `k`.
    pub fn zeta_pow(level: u32, k: i64) -> Self {
        let mut v = vec![Rational::new(); level as usize];
        v[k.rem_euclid(level as i64) as usize] = Rational::from(1);
        Self::reduce(level, v)
    }

    pub fn zeta(level: u32) -> Self {
        Self::zeta_pow(level, 1)
    }

    /// `sum_k c[k] zeta^k` for integer coefficients of any length.
    pub fn from_int_coeffs(level: u32, c: &[i64]) -> Self {
        let mut v = vec![Rational::new(); level as usize];
        for (k, &ck) in c.iter().enumerate() {
            v[k % level as usize] += ck;
        }
        Self::reduce(level, v)
    }

    /// Reduces a polynomial in `zeta` (any length) modulo `Phi_N`.
    pub fn reduce(level: u32, mut v: Vec<Rational>) -> Self {
        let phi = cyclotomic_poly(level);
        let d = phi.len() - 1;
        for i in (d..v.len()).rev() {
            if v[i] == 0 {
                continue;
            }
            let c = std::mem::take(&mut v[i]);
            for (j, &pj) in phi.iter().enumerate().take(d) {
                if pj != 0 {
                    let t = Rational::from(&c * pj);
                    v[i - d + j] -= t;
                }
            }
        }
        v.resize(d, Rational::new());
        CycElt { level, coeffs: v }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == 0)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| *c.denom() == 1)
    }

    /// The rational value, when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs.iter().skip(1).all(|c| *c == 0) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Integer coefficient vector, when all coefficients are integers.
    pub fn int_coeffs(&self) -> Option<Vec<Integer>> {
        self.coeffs
            .iter()
            .map(|c| if *c.denom() == 1 { Some(c.numer().clone()) } else { None })
            .collect()
    }

    fn check_level(&self, o: &CycElt) {
        assert_eq!(self.level, o.level, "cyclotomic level mismatch");
    }

    pub fn scale(&self, k: &Rational) -> Self {
        CycElt { level: self.level, coeffs: self.coeffs.iter().map(|c| Rational::from(c * k)).collect() }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.level);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Image under `zeta -> zeta^h`; `h` need not be a unit, but only units give automorphisms.
    fn substitute(&self, h: i64) -> Self {
        let n = self.level as i64;
        let mut v = vec![Rational::new(); n as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            if *c != 0 {
                v[((k as i64) * h).rem_euclid(n) as usize] += c;
            }
        }
        Self::reduce(self.level, v)
    }

    /// Complex conjugation, i.e. `sigma_{-1}`.
    pub fn conj(&self) -> Self {
        self.substitute(-1)
    }

    pub fn galois(&self, h: &GaloisAut) -> Result<Self> {
        galois_apply(h, self)
    }

    /// Field trace to `Q`.
    pub fn trace(&self) -> Rational {
        let mut acc = Self::zero(self.level);
        for h in units(self.level) {
            acc = &acc + &self.substitute(h as i64);
        }
        acc.as_rational().expect("trace lies in Q")
    }
}

impl<'a> Add<&'a CycElt> for &'a CycElt {
    type Output = CycElt;
    fn add(self, o: &CycElt) -> CycElt {
        self.check_level(o);
        CycElt {
            level: self.level,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(x, y)| Rational::from(x + y)).collect(),
        }
    }
}

impl<'a> Sub<&'a CycElt> for &'a CycElt {
    type Output = CycElt;
    fn sub(self, o: &CycElt) -> CycElt {
        self.check_level(o);
        CycElt {
            level: self.level,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(x, y)| Rational::from(x - y)).collect(),
        }
    }
}

impl<'a> Mul<&'a CycElt> for &'a CycElt {
    type Output = CycElt;
    fn mul(self, o: &CycElt) -> CycElt {
        self.check_level(o);
        let d = self.coeffs.len();
        let mut v = vec![Rational::new(); 2 * d - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in o.coeffs.iter().enumerate() {
                if *y != 0 {
                    v[i + j] += Rational::from(x * y);
                }
            }
        }
        CycElt::reduce(self.level, v)
    }
}

impl Neg for &CycElt {
    type Output = CycElt;
    fn neg(self) -> CycElt {
        CycElt { level: self.level, coeffs: self.coeffs.iter().map(|c| Rational::from(-c)).collect() }
    }
}

/// `sigma_h : zeta_N -> zeta_N^h` for a unit `h`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GaloisAut {
    h: u32,
    modulus: u32,
}

impl GaloisAut {
    pub fn new(h: i64, modulus: u32) -> Result<Self> {
        let r = h.rem_euclid(modulus as i64) as u32;
        if gcd(r as u64, modulus as u64) != 1 {
            return Err(Error::NotAUnit { h, n: modulus });
        }
        Ok(GaloisAut { h: r, modulus })
    }

    pub fn h(&self) -> u32 {
        self.h
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn compose(&self, o: &GaloisAut) -> Result<GaloisAut> {
        if self.modulus != o.modulus {
            return Err(Error::LevelMismatch(self.modulus, o.modulus));
        }
        GaloisAut::new(self.h as i64 * o.h as i64, self.modulus)
    }

    pub fn inverse(&self) -> GaloisAut {
        GaloisAut { h: inverse_mod(self.h, self.modulus).expect("unit"), modulus: self.modulus }
    }
}

pub fn galois_apply(h: &GaloisAut, z: &CycElt) -> Result<CycElt> {
    if h.modulus != z.level {
        return Err(Error::LevelMismatch(h.modulus, z.level));
    }
    Ok(z.substitute(h.h as i64))
}

/// Complex value under the fixed embedding `zeta_N -> exp(2 pi i / N)`.
pub fn embed(z: &CycElt, prec: u32) -> BigComplex {
    let wp = prec + 32;
    let mut acc = BigComplex::zero(wp);
    for (k, c) in z.coeffs.iter().enumerate() {
        if *c == 0 {
            continue;
        }
        let w = BigComplex::root_of_unity(k as i64, z.level as i64, wp);
        acc = acc + w.scale(&Float::with_val(wp, c));
    }
    BigComplex { re: Float::with_val(prec, acc.re), im: Float::with_val(prec, acc.im) }
}

/// Field norm `prod_h sigma_h(z)` to `Q`.
pub fn elt_norm(z: &CycElt) -> Rational {
    let mut acc = CycElt::one(z.level);
    for h in units(z.level) {
        acc = &acc * &z.substitute(h as i64);
    }
    acc.as_rational().expect("norm lies in Q")
}

/// Absolute discriminant of `Q(zeta_N)`.
pub fn disc_abs(n: u32) -> Integer {
    let phi = euler_phi(n);
    let mut d = Integer::from(Integer::u_pow_u(n, phi));
    for p in prime_factors(n as u64) {
        d /= Integer::from(Integer::u_pow_u(p as u32, phi / (p as u32 - 1)));
    }
    d
}

//! Multiprecision plumbing shared by the numerical modules.
//!
//! Real values are MPFR floats; [`BigComplex`] is a thin pair of them with
//! just the operations the contour quadrature and the period pairings need.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Mutex;

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

/// Arbitrary-precision real; the working precision travels with the value.
pub type BigReal = Float;

/// Binary precision needed to carry `digits` decimal digits.
pub fn bits_for_digits(digits: u32) -> u32 {
    ((digits as f64) * std::f64::consts::LOG2_10).ceil() as u32
}

pub fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

/// `2^-k` at precision `prec`.
pub fn pow2_neg(prec: u32, k: u32) -> Float {
    Float::with_val(prec, 1) >> k
}

/// `10^-k` at precision `prec`.
pub fn pow10_neg(prec: u32, k: i32) -> Float {
    Float::with_val(prec, 10).pow(-k)
}

/// `sin(k pi / n)`.
pub fn sin_pi_frac(k: i64, n: i64, prec: u32) -> Float {
    let wp = prec + 16;
    let x = pi(wp) * Float::with_val(wp, k) / n;
    Float::with_val(prec, x.sin())
}

pub fn rational_to_float(q: &Rational, prec: u32) -> Float {
    Float::with_val(prec, q)
}

/// Exact value of a finite float as a rational.
pub fn float_to_rational(x: &Float) -> Option<Rational> {
    x.to_rational()
}

/// Short decimal rendering with `digits` significant digits.
pub fn to_decimal(x: &Float, digits: usize) -> String {
    x.to_string_radix(10, Some(digits.max(1)))
}

/// Complex number with MPFR components.
#[derive(Clone, PartialEq)]
pub struct BigComplex {
    pub re: Float,
    pub im: Float,
}

impl fmt::Debug for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}i)", self.re.to_f64(), self.im.to_f64())
    }
}

impl BigComplex {
    pub fn new(re: Float, im: Float) -> Self {
        BigComplex { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        BigComplex { re: Float::new(prec), im: Float::new(prec) }
    }

    pub fn from_real(re: Float) -> Self {
        let im = Float::new(re.prec());
        BigComplex { re, im }
    }

    pub fn from_f64(prec: u32, re: f64, im: f64) -> Self {
        BigComplex { re: Float::with_val(prec, re), im: Float::with_val(prec, im) }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().min(self.im.prec())
    }

    /// `exp(i theta)`.
    pub fn cis(theta: &Float) -> Self {
        let prec = theta.prec();
        let (s, c) = theta.clone().sin_cos(Float::new(prec));
        BigComplex { re: c, im: s }
    }

    /// `exp(2 pi i k / n)`.
    pub fn root_of_unity(k: i64, n: i64, prec: u32) -> Self {
        let wp = prec + 16;
        let theta = pi(wp) * Float::with_val(wp, 2 * k.rem_euclid(n)) / n;
        let z = Self::cis(&theta);
        BigComplex { re: Float::with_val(prec, z.re), im: Float::with_val(prec, z.im) }
    }

    pub fn conj(&self) -> Self {
        BigComplex { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn norm_sqr(&self) -> Float {
        Float::with_val(self.prec(), self.re.clone().square() + self.im.clone().square())
    }

    pub fn abs(&self) -> Float {
        self.re.clone().hypot(&self.im)
    }

    pub fn scale(&self, k: &Float) -> Self {
        BigComplex { re: Float::with_val(self.re.prec(), &self.re * k), im: Float::with_val(self.im.prec(), &self.im * k) }
    }

    pub fn mul_ref(&self, o: &BigComplex) -> BigComplex {
        let prec = self.prec().max(o.prec());
        let re = Float::with_val(prec, &self.re * &o.re) - Float::with_val(prec, &self.im * &o.im);
        let im = Float::with_val(prec, &self.re * &o.im) + Float::with_val(prec, &self.im * &o.re);
        BigComplex { re, im }
    }

    pub fn div_ref(&self, o: &BigComplex) -> BigComplex {
        let d = o.norm_sqr();
        let num = self.mul_ref(&o.conj());
        BigComplex { re: num.re / &d, im: num.im / &d }
    }

    pub fn recip(&self) -> BigComplex {
        let d = self.norm_sqr();
        BigComplex { re: Float::with_val(d.prec(), &self.re / &d), im: -Float::with_val(d.prec(), &self.im / &d) }
    }

    pub fn exp(&self) -> BigComplex {
        let r = self.re.clone().exp();
        let z = Self::cis(&self.im);
        BigComplex { re: z.re * &r, im: z.im * r }
    }

    /// Principal logarithm.
    pub fn ln(&self) -> BigComplex {
        let re = self.abs().ln();
        let im = self.im.clone().atan2(&self.re);
        BigComplex { re, im }
    }

    pub fn powi(&self, e: u32) -> BigComplex {
        let mut acc = BigComplex::from_real(Float::with_val(self.prec(), 1));
        for _ in 0..e {
            acc = acc.mul_ref(self);
        }
        acc
    }
}

impl Add for BigComplex {
    type Output = BigComplex;
    fn add(self, o: BigComplex) -> BigComplex {
        BigComplex { re: self.re + o.re, im: self.im + o.im }
    }
}

impl Sub for BigComplex {
    type Output = BigComplex;
    fn sub(self, o: BigComplex) -> BigComplex {
        BigComplex { re: self.re - o.re, im: self.im - o.im }
    }
}

impl Mul for BigComplex {
    type Output = BigComplex;
    fn mul(self, o: BigComplex) -> BigComplex {
        self.mul_ref(&o)
    }
}

impl Neg for BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex { re: -self.re, im: -self.im }
    }
}

static BERNOULLI: Mutex<Vec<Rational>> = Mutex::new(Vec::new());

/// Bernoulli number `B_n` with `B_1 = -1/2`.
pub fn bernoulli(n: usize) -> Rational {
    let mut table = BERNOULLI.lock().expect("bernoulli cache poisoned");
    if table.is_empty() {
        table.push(Rational::from(1));
    }
    while table.len() <= n {
        let m = table.len();
        // sum_{k<m} C(m+1, k) B_k = -(m+1) B_m
        let mut acc = Rational::new();
        let mut binom = Integer::from(1);
        for (k, bk) in table.iter().enumerate() {
            acc += Rational::from(&binom * bk.numer()) / bk.denom();
            binom = binom * (m + 1 - k) / (k + 1);
        }
        let bm = -acc / Integer::from(m + 1);
        table.push(bm);
    }
    table[n].clone()
}

/// Bernoulli polynomial `B_n(x)` at a rational point.
pub fn bernoulli_poly(n: usize, x: &Rational) -> Rational {
    let mut acc = Rational::new();
    let mut binom = Integer::from(1);
    let mut xpow = Rational::from(1);
    // B_n(x) = sum_k C(n,k) B_{n-k} x^k
    for k in 0..=n {
        acc += (&binom * bernoulli(n - k)) * &xpow;
        xpow *= x;
        binom = binom * (n - k) / (k + 1);
    }
    acc
}

/// `Gamma(z)^g` for `Re z > 0`, via upward shift and the Stirling series.
pub fn gamma_pow(z: &BigComplex, g: u32, prec: u32) -> BigComplex {
    let wp = prec + 24;
    let z = BigComplex { re: Float::with_val(wp, &z.re), im: Float::with_val(wp, &z.im) };
    let radius = (wp as f64) * 0.25 + 10.0;
    // shift product P = z (z+1) ... (z+m-1)
    let mut shift = BigComplex::from_real(Float::with_val(wp, 1));
    let mut w = z.clone();
    while w.abs().to_f64() < radius || w.re.to_f64() < radius * 0.5 {
        shift = shift.mul_ref(&w);
        w.re += 1;
    }
    let lg = ln_gamma_stirling(&w, wp);
    let lg = BigComplex { re: lg.re * g, im: lg.im * g };
    let out = lg.exp().div_ref(&shift.powi(g));
    BigComplex { re: Float::with_val(prec, out.re), im: Float::with_val(prec, out.im) }
}

fn ln_gamma_stirling(w: &BigComplex, wp: u32) -> BigComplex {
    let half = Float::with_val(wp, 0.5);
    let lw = w.ln();
    let wm = BigComplex { re: Float::with_val(wp, &w.re - &half), im: w.im.clone() };
    let ln2pi = Float::with_val(wp, pi(wp) * 2u32).ln() / 2u32;
    let mut acc = wm.mul_ref(&lw) - w.clone();
    acc.re += ln2pi;
    let inv = w.recip();
    let inv2 = inv.mul_ref(&inv);
    let mut p = inv.clone();
    let eps = pow2_neg(wp, wp + 8);
    for k in 1..400usize {
        let b = bernoulli(2 * k);
        let c = b / Integer::from((2 * k) * (2 * k - 1));
        let cf = Float::with_val(wp, &c);
        let term = p.scale(&cf);
        let small = term.abs() < eps;
        acc = acc + term;
        if small {
            break;
        }
        p = p.mul_ref(&inv2);
    }
    acc
}

/// Determinant of a square real matrix by Gaussian elimination with partial pivoting.
pub fn det_real(mut m: Vec<Vec<Float>>, prec: u32) -> Float {
    let n = m.len();
    let mut det = Float::with_val(prec, 1);
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| m[i][col].clone().abs().partial_cmp(&m[j][col].clone().abs()).unwrap())
            .unwrap();
        if m[piv][col].is_zero() {
            return Float::new(prec);
        }
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        det *= &m[col][col];
        for r in col + 1..n {
            let f = Float::with_val(prec, &m[r][col] / &m[col][col]);
            for k in col..n {
                let t = Float::with_val(prec, &f * &m[col][k]);
                m[r][k] -= t;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_small_values() {
        assert_eq!(bernoulli(0), 1);
        assert_eq!(bernoulli(1), Rational::from((-1, 2)));
        assert_eq!(bernoulli(2), Rational::from((1, 6)));
        assert_eq!(bernoulli(3), 0);
        assert_eq!(bernoulli(12), Rational::from((-691, 2730)));
    }

    #[test]
    fn bernoulli_poly_reflection() {
        // B_n(1 - x) = (-1)^n B_n(x)
        let x = Rational::from((2, 7));
        for n in 1..12 {
            let lhs = bernoulli_poly(n, &(Rational::from(1) - &x));
            let rhs = bernoulli_poly(n, &x) * if n % 2 == 0 { 1 } else { -1 };
            assert_eq!(lhs, rhs, "n={n}");
        }
        assert_eq!(bernoulli_poly(2, &Rational::from(1)), Rational::from((1, 6)));
    }

    #[test]
    fn complex_gamma_matches_real_gamma() {
        let prec = 128;
        let z = BigComplex::from_f64(prec, 2.75, 0.0);
        let g = gamma_pow(&z, 1, prec);
        let exact = Float::with_val(prec, 2.75).gamma();
        assert!((g.re - exact).abs() < pow2_neg(prec, 110));
        assert!(g.im.abs() < pow2_neg(prec, 110));
    }

    #[test]
    fn complex_gamma_on_critical_line() {
        // |Gamma(1/2 + i t)|^2 = pi / cosh(pi t)
        let prec = 128;
        for t in [0.5, 3.0, 17.25] {
            let z = BigComplex::from_f64(prec, 0.5, t);
            let g = gamma_pow(&z, 2, prec);
            let lhs = g.abs();
            let pit = pi(prec) * t;
            let rhs = pi(prec) / pit.cosh();
            let rel = Float::with_val(prec, (lhs - &rhs) / rhs).abs();
            assert!(rel < pow2_neg(prec, 105), "t={t}");
        }
    }

    #[test]
    fn determinant_of_known_matrix() {
        let prec = 96;
        let m = vec![
            vec![Float::with_val(prec, 2), Float::with_val(prec, 1), Float::with_val(prec, 1)],
            vec![Float::with_val(prec, 1), Float::with_val(prec, 3), Float::with_val(prec, 2)],
            vec![Float::with_val(prec, 1), Float::with_val(prec, 0), Float::with_val(prec, 0)],
        ];
        let d = det_real(m, prec);
        assert!((d + 1u32).abs() < pow2_neg(prec, 90));
    }
}

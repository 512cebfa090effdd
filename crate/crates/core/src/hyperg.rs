//! Gamma and beta at rationals and the `3F2` value behind `F~` and `F_N^{a,b}`.
//!
//! `3F2(a, b, a+b-1; a+b, a+b; 1)` has parameter excess one, so its terms
//! decay like `n^-2`. The head is summed directly; the tail uses the
//! asymptotic expansion of the term ratio against Hurwitz zeta values.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::index::FermatIndex;
use crate::numeric::{bernoulli, bernoulli_poly, pi, pow2_neg};

/// `num/den` in `(0, 1)`, reduced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalAngle {
    num: u32,
    den: u32,
}

impl RationalAngle {
    pub fn new(num: u32, den: u32) -> Result<Self> {
        if num == 0 || num >= den {
            return Err(Error::Precondition(format!("{num}/{den} is not in (0,1)")));
        }
        let g = crate::cyclo::gcd(num as u64, den as u64) as u32;
        Ok(RationalAngle { num: num / g, den: den / g })
    }

    pub fn to_rational(self) -> Rational {
        Rational::from((self.num, self.den))
    }
}

impl fmt::Display for RationalAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Tuning for the tail of the `3F2` series.
#[derive(Clone, Copy, Debug)]
pub struct SeriesOptions {
    /// Minimum number of asymptotic correction terms.
    pub tail_order: usize,
    /// Directly summed terms; `None` picks `max(64, prec)`.
    pub cutoff: Option<usize>,
}

impl Default for SeriesOptions {
    fn default() -> Self {
        SeriesOptions { tail_order: 8, cutoff: None }
    }
}

type Memo<K> = Mutex<Option<HashMap<K, Float>>>;

static GAMMA_MEMO: Memo<(Rational, u32)> = Mutex::new(None);
static FTILDE_MEMO: Memo<(Rational, Rational, u32)> = Mutex::new(None);

fn memo_get<K: std::hash::Hash + Eq>(m: &Memo<K>, k: &K) -> Option<Float> {
    m.lock().unwrap().as_ref().and_then(|h| h.get(k).cloned())
}

fn memo_put<K: std::hash::Hash + Eq>(m: &Memo<K>, k: K, v: &Float) {
    m.lock().unwrap().get_or_insert_with(HashMap::new).insert(k, v.clone());
}

/// `Gamma(x)` for rational `x` that is not a non-positive integer.
pub fn gamma_rat(x: &Rational, prec: u32) -> Float {
    let key = (x.clone(), prec);
    if let Some(v) = memo_get(&GAMMA_MEMO, &key) {
        return v;
    }
    let v = Float::with_val(prec, Float::with_val(prec + 32, x).gamma());
    memo_put(&GAMMA_MEMO, key, &v);
    v
}

pub fn beta(a: &Rational, b: &Rational, prec: u32) -> Float {
    let wp = prec + 16;
    let s = Rational::from(a + b);
    let v = gamma_rat(a, wp) * gamma_rat(b, wp) / gamma_rat(&s, wp);
    Float::with_val(prec, v)
}

/// Ratio `t_{n+1}/t_n` of consecutive series terms.
fn term_ratio(a: &Float, b: &Float, s: &Float, n: u64, wp: u32) -> Float {
    let num = Float::with_val(wp, a + n) * Float::with_val(wp, b + n) * Float::with_val(wp, s + (n as i64 - 1));
    let sn = Float::with_val(wp, s + n);
    num / (sn.square() * (n + 1))
}

/// Partial sums `sum_{k<=n} t_k` of the `3F2` series.
pub fn f3f2_partial_sums(a: &Rational, b: &Rational, prec: u32) -> impl Iterator<Item = Float> {
    let (af, bf) = (Float::with_val(prec, a), Float::with_val(prec, b));
    let sf = Float::with_val(prec, &af + &bf);
    let mut term = Float::with_val(prec, 1);
    let mut sum = Float::with_val(prec, 0);
    let mut n = 0u64;
    std::iter::from_fn(move || {
        sum += &term;
        term *= term_ratio(&af, &bf, &sf, n, prec);
        n += 1;
        Some(sum.clone())
    })
}

/// Coefficients `e_k`, `k >= 1`, of `ln(t_n n^2 / K) ~ sum e_k n^-k`.
fn log_ratio_coeffs(a: &Rational, b: &Rational, order: usize) -> Vec<Rational> {
    let s = Rational::from(a + b);
    let s1 = Rational::from(&s - 1u32);
    let one = Rational::from(1);
    let mut e = vec![Rational::new()];
    for k in 1..=order {
        let bp = |x: &Rational| bernoulli_poly(k + 1, x);
        let bracket = bp(a) + bp(b) + bp(&s1) - bp(&s) * 2u32 - bp(&one);
        let sign = if k % 2 == 1 { 1 } else { -1 };
        e.push(bracket * Rational::from((sign, (k * (k + 1)) as u32)));
    }
    e
}

/// `c_j` with `exp(sum_k e_k x^k) = sum_j c_j x^j`.
fn exp_series(e: &[Rational], order: usize) -> Vec<Rational> {
    let mut c = vec![Rational::from(1)];
    for j in 1..=order {
        let mut acc = Rational::new();
        for k in 1..=j.min(e.len() - 1) {
            acc += Rational::from(&e[k] * &c[j - k]) * k as u32;
        }
        c.push(acc / j as u32);
    }
    c
}

/// Hurwitz zeta `sum_{n>=m} n^-s` for integer `s >= 2` by Euler-Maclaurin at `m`.
pub fn hurwitz_zeta_int(s: u32, m: u64, prec: u32) -> Float {
    let wp = prec + 16;
    let mf = Float::with_val(wp, m);
    let ms = Float::with_val(wp, mf.clone().pow(s));
    let mut acc = Float::with_val(wp, &mf / Float::with_val(wp, &ms * (s - 1)));
    acc += Float::with_val(wp, 0.5) / &ms;
    let eps = pow2_neg(wp, wp + 4) * &acc;
    // term_k = B_2k / (2k)! * s (s+1) ... (s+2k-2) * m^(-s-2k+1)
    let inv_m2 = Float::with_val(wp, mf.clone().square()).recip();
    let mut rising = Float::with_val(wp, s);
    let mut fact = Integer::from(2);
    let mut mpow = Float::with_val(wp, &ms * &mf).recip();
    let mut prev = Float::with_val(wp, f64::INFINITY);
    for k in 1..4 * wp as usize {
        let b = Float::with_val(wp, &bernoulli(2 * k)) / Float::with_val(wp, &fact);
        let term = b * &rising * &mpow;
        let mag = Float::with_val(wp, term.abs_ref());
        if mag > prev {
            break;
        }
        acc += &term;
        if mag < eps {
            break;
        }
        prev = mag;
        let kk = 2 * k as u32;
        rising *= (s + kk - 1) * (s + kk);
        fact *= (kk + 1) * (kk + 2);
        mpow *= &inv_m2;
    }
    Float::with_val(prec, acc)
}

/// `3F2(a, b, a+b-1; a+b, a+b; 1)` for `a, b` in `(0, 1)`.
pub fn f3f2_at1(a: &Rational, b: &Rational, prec: u32) -> Float {
    f3f2_at1_with(a, b, prec, SeriesOptions::default())
}

pub fn f3f2_at1_with(a: &Rational, b: &Rational, prec: u32, opts: SeriesOptions) -> Float {
    let s = Rational::from(a + b);
    if s == 1 {
        return Float::with_val(prec, 1);
    }
    let mut n0 = opts.cutoff.unwrap_or_else(|| 64.max(prec as usize)) as u64;
    loop {
        if let Some(v) = f3f2_attempt(a, b, prec, n0, opts.tail_order) {
            return v;
        }
        n0 *= 2;
    }
}

/// One evaluation with `n0` direct terms; `None` if the tail expansion stalls.
fn f3f2_attempt(a: &Rational, b: &Rational, prec: u32, n0: u64, min_order: usize) -> Option<Float> {
    let wp = prec + 32 + (64 - n0.leading_zeros());
    let (af, bf) = (Float::with_val(wp, a), Float::with_val(wp, b));
    let sf = Float::with_val(wp, &af + &bf);
    let mut term = Float::with_val(wp, 1);
    let mut head = Float::with_val(wp, 0);
    for n in 0..n0 {
        head += &term;
        term *= term_ratio(&af, &bf, &sf, n, wp);
    }

    let s = Rational::from(a + b);
    let s1 = Rational::from(&s - 1u32);
    let k = gamma_rat(&s, wp).square() / (gamma_rat(a, wp) * gamma_rat(b, wp) * gamma_rat(&s1, wp));
    let eps = pow2_neg(wp, wp);
    let max_order = 8 * wp as usize;
    let mut order = min_order.max(8);
    let mut e = log_ratio_coeffs(a, b, order);
    let mut c = exp_series(&e, order);
    let mut tail = Float::with_val(wp, 0);
    let mut prev = Float::with_val(wp, f64::INFINITY);
    let mut j = 0;
    loop {
        if j > order {
            if order >= max_order {
                return None;
            }
            order = (order * 2).min(max_order);
            e = log_ratio_coeffs(a, b, order);
            c = exp_series(&e, order);
        }
        let t = Float::with_val(wp, &c[j]) * hurwitz_zeta_int(2 + j as u32, n0, wp);
        let mag = Float::with_val(wp, t.abs_ref());
        tail += &t;
        if j >= min_order && mag < eps {
            break;
        }
        if j > min_order && mag > prev && mag > eps {
            return None;
        }
        if mag != 0 {
            prev = mag;
        }
        j += 1;
    }
    Some(Float::with_val(prec, head + k * tail))
}

/// `F~(a, b) = B(a, b)^2 3F2(a, b, a+b-1; a+b, a+b; 1)`.
pub fn f_tilde(a: &Rational, b: &Rational, prec: u32) -> Float {
    let key = (a.clone(), b.clone(), prec);
    if let Some(v) = memo_get(&FTILDE_MEMO, &key) {
        return v;
    }
    let wp = prec + 16;
    let v = Float::with_val(prec, beta(a, b, wp).square() * f3f2_at1(a, b, wp));
    memo_put(&FTILDE_MEMO, key, &v);
    v
}

/// `F_N^{a,b} = F~(<a>/N, <b>/N) - F~(<-a>/N, <-b>/N)`.
pub fn f_val(idx: &FermatIndex, prec: u32) -> Float {
    let n = idx.n();
    let guard = 32 + (32 - n.leading_zeros());
    let wp = prec + guard;
    let q = |x: u32| Rational::from((x, n));
    let (a, b) = (idx.a(), idx.b());
    let plus = f_tilde(&q(a), &q(b), wp);
    let minus = f_tilde(&q(n - a), &q(n - b), wp);
    Float::with_val(prec, plus - minus)
}

/// `pi^2`, the value of `F~(1/2, 1/2)`.
pub fn pi_squared(prec: u32) -> Float {
    pi(prec).square()
}

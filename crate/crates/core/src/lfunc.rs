//! Completed Hecke L-functions of Jacobi-sum characters.
//!
//! `Lambda(s) = A^s Gamma(s)^g L(s)` with `A = sqrt(d_N N(f)) / (2 pi)^g` satisfies
//! `Lambda(s) = eps Lambda(2 - s)`. Values come from the smoothed approximate
//! functional equation
//!
//! `Lambda(s) = t^s sum a_n G_s(n t / A) + eps t^(s-2) sum a_n G_(2-s)(n / (A t))`
//!
//! where `G_s(y) = (1 / 2 pi i) int_(c) Gamma(z)^g y^(-z) / (z - s) dz` is evaluated
//! by the trapezoidal rule on a vertical line.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use rug::ops::Pow;
use rug::{Float, Integer};

use crate::cyclo::disc_abs;
use crate::error::{Error, Result};
use crate::index::FermatIndex;
use crate::jacobi::dirichlet_coeffs;
use crate::numeric::{gamma_pow, pi, BigComplex};
use crate::tables::conductor_norm;

/// Extra bits carried through kernel quadrature.
const KERNEL_GUARD: u32 = 24;
/// The kernel must fall below `2^-(prec + TRUNCATION_GUARD)` past `n_max`.
const TRUNCATION_GUARD: u32 = 16;
/// Stretches used to solve for the root number at `s = 3/2`.
const EPS_STRETCHES: (f64, f64) = (1.0, 1.2);
/// Allowed deviation of the solved root number from `+-1`.
const EPS_TOL: f64 = 1e-5;

/// Shape of the functional equation of `L(j_N^{a,b}, s)`.
#[derive(Clone, Debug)]
pub struct FunctionalEqData {
    pub idx: FermatIndex,
    /// Gamma exponent; the degree is `2g`.
    pub g: u32,
    pub disc: Integer,
    pub conductor_norm: Integer,
    /// `sqrt(d_N N(f)) / (2 pi)^g`.
    pub scale: Float,
    pub epsilon: Option<i32>,
}

impl FunctionalEqData {
    /// Uses the built-in conductor table.
    pub fn new(idx: &FermatIndex, prec: u32) -> Result<Self> {
        Self::with_conductor(idx, conductor_norm(idx)?, prec)
    }

    pub fn with_conductor(idx: &FermatIndex, conductor_norm: Integer, prec: u32) -> Result<Self> {
        if conductor_norm <= 0 {
            return Err(Error::Precondition("conductor norm must be positive".into()));
        }
        let g = idx.g() as u32;
        let disc = disc_abs(idx.n());
        let wp = prec + 16;
        let q = Float::with_val(wp, Integer::from(&disc * &conductor_norm)).sqrt();
        let two_pi_g = (pi(wp) * 2u32).pow(g);
        let scale = Float::with_val(prec, q / two_pi_g);
        Ok(FunctionalEqData { idx: *idx, g, disc, conductor_norm, scale, epsilon: None })
    }

    pub fn degree(&self) -> u32 {
        2 * self.g
    }
}

/// Quadrature knobs for [`kernel_g_with`].
#[derive(Clone, Copy, Debug)]
pub struct KernelOptions {
    /// Fixed abscissa of the contour; chosen from `y` when absent.
    pub contour: Option<f64>,
    /// Multiplier on the trapezoidal step.
    pub step_scale: f64,
}

impl Default for KernelOptions {
    fn default() -> Self {
        KernelOptions { contour: None, step_scale: 1.0 }
    }
}

/// Nodes `Gamma(z_k)^g / (z_k - s)` on one contour `z_k = c + i k h`.
struct Bin {
    c: Float,
    h: Float,
    /// `k = 0, 1, ..`; for non-real `s` also `k = -1, -2, ..` in `neg`.
    pos: Vec<BigComplex>,
    neg: Vec<BigComplex>,
    /// `Gamma(z_k)^g` on the same nodes.
    raw_pos: Vec<BigComplex>,
    raw_neg: Vec<BigComplex>,
}

/// Precomputed quadrature for `G_s` at fixed `s` and `g`.
#[derive(Clone)]
pub struct KernelPlan {
    s: BigComplex,
    g: u32,
    prec: u32,
    wp: u32,
    opts: KernelOptions,
    bins: BTreeMap<i64, Arc<Bin>>,
}

impl KernelPlan {
    pub fn new(s: &BigComplex, g: u32, prec: u32, opts: KernelOptions) -> Result<Self> {
        if g == 0 {
            return Err(Error::Precondition("gamma exponent must be positive".into()));
        }
        let wp = prec + KERNEL_GUARD;
        let s = BigComplex::new(Float::with_val(wp, &s.re), Float::with_val(wp, &s.im));
        if let Some(c) = opts.contour {
            let sr = s.re.to_f64();
            if (c - sr).abs() < 0.25 {
                return Err(Error::ContourTooClose { c, s: sr });
            }
            if c <= sr || c <= 0.0 {
                return Err(Error::Precondition(format!("contour Re z = {c} must lie right of Re s and 0")));
            }
        }
        Ok(KernelPlan { s, g, prec, wp, opts, bins: BTreeMap::new() })
    }

    fn is_real(&self) -> bool {
        self.s.im.is_zero()
    }

    /// Integer contour abscissa used for argument `y`.
    fn bin_key(&self, y: f64) -> i64 {
        let sr = self.s.re.to_f64();
        let saddle = y.powf(1.0 / self.g as f64) + 0.5;
        (sr + 1.0).max(saddle).max(1.0).ceil() as i64
    }

    /// Builds every contour needed for arguments up to `y_max`.
    pub fn prepare(&mut self, y_min: f64, y_max: f64) {
        if self.opts.contour.is_some() {
            if !self.bins.contains_key(&0) {
                let bin = self.build_bin(0, None);
                self.bins.insert(0, Arc::new(bin));
            }
            return;
        }
        for key in self.bin_key(y_min)..=self.bin_key(y_max) {
            if self.bins.contains_key(&key) {
                continue;
            }
            let bin = self.build_bin(key, self.bins.get(&(key - 1)).cloned());
            self.bins.insert(key, Arc::new(bin));
        }
    }

    fn step(&self, c: f64) -> f64 {
        let dist = c - self.s.re.to_f64().max(0.0);
        let d = (0.9 * dist).min(2.0);
        let l = (self.wp + 8) as f64 * std::f64::consts::LN_2;
        2.0 * std::f64::consts::PI * d / l * self.opts.step_scale
    }

    /// Nodes on `Re z = c`; reuses the contour one to the left through `Gamma(z + 1) = z Gamma(z)`.
    fn build_bin(&self, key: i64, left: Option<Arc<Bin>>) -> Bin {
        let wp = self.wp;
        let cf = self.opts.contour.unwrap_or(key as f64);
        let c = Float::with_val(wp, cf);
        let hf = self.step(cf);
        let h = Float::with_val(wp, hf);
        let left = left.filter(|b| self.step(cf - 1.0) == hf && b.h == h);
        let z_at = |k: i64| BigComplex::new(c.clone(), Float::with_val(wp, &h * k));
        let raw_at = |k: i64| -> BigComplex {
            let from_left = left.as_ref().and_then(|b| {
                let v = if k >= 0 { b.raw_pos.get(k as usize) } else { b.raw_neg.get((-k - 1) as usize) };
                v.map(|g| {
                    let mut zl = z_at(k);
                    zl.re -= 1;
                    g.mul_ref(&zl.powi(self.g))
                })
            });
            from_left.unwrap_or_else(|| gamma_pow(&z_at(k), self.g, wp))
        };
        let (raw_pos, pos) = self.walk(&raw_at, &z_at, 1);
        let (raw_neg, neg) = if self.is_real() { (Vec::new(), Vec::new()) } else { self.walk(&raw_at, &z_at, -1) };
        Bin { c, h, raw_pos, raw_neg, pos, neg }
    }

    /// `Gamma(z_k)^g` and the nodes from `k = 0` (or `-1`) outwards until negligible.
    fn walk(
        &self,
        raw_at: &dyn Fn(i64) -> BigComplex,
        z_at: &dyn Fn(i64) -> BigComplex,
        dir: i64,
    ) -> (Vec<BigComplex>, Vec<BigComplex>) {
        let node = |g: &BigComplex, k: i64| g.div_ref(&(z_at(k) - self.s.clone()));
        let first = node(&raw_at(0), 0);
        let cutoff = first.abs() >> (self.wp + 8);
        let (mut raws, mut out) = (Vec::new(), Vec::new());
        let mut k = if dir > 0 { 0 } else { -1 };
        let mut small_run = 0;
        loop {
            let g = raw_at(k);
            let v = node(&g, k);
            if v.abs() < cutoff {
                small_run += 1;
            } else {
                small_run = 0;
            }
            raws.push(g);
            out.push(v);
            if small_run >= 2 || out.len() > 100_000 {
                break;
            }
            k += dir;
        }
        (raws, out)
    }

    /// `G_s(y)`; the contour for `y` must have been prepared.
    pub fn eval(&self, y: &Float) -> BigComplex {
        let wp = self.wp;
        let key = if self.opts.contour.is_some() { 0 } else { self.bin_key(y.to_f64()) };
        let bin = match self.bins.get(&key) {
            Some(b) => b.clone(),
            None => Arc::new(self.build_bin(key, None)),
        };
        let ly = Float::with_val(wp, y.ln_ref());
        let pref = Float::with_val(wp, -Float::with_val(wp, &bin.c * &ly)).exp();
        let w = BigComplex::cis(&Float::with_val(wp, -Float::with_val(wp, &bin.h * &ly)));
        let out = if self.is_real() {
            let mut acc = horner(&bin.pos[1..], &w).mul_ref(&w);
            acc.re += Float::with_val(wp, &bin.pos[0].re >> 1);
            let v = Float::with_val(wp, &acc.re * &bin.h) / pi(wp) * pref;
            BigComplex::from_real(v)
        } else {
            let wi = w.conj();
            let up = horner(&bin.pos, &w);
            let down = horner(&bin.neg, &wi).mul_ref(&wi);
            let scale = Float::with_val(wp, &bin.h * pref) / (pi(wp) * 2u32);
            (up + down).scale(&scale)
        };
        BigComplex::new(Float::with_val(self.prec, out.re), Float::with_val(self.prec, out.im))
    }
}

/// `sum_k c_k w^k`.
fn horner(coeffs: &[BigComplex], w: &BigComplex) -> BigComplex {
    let prec = w.prec();
    let mut acc = BigComplex::zero(prec);
    for c in coeffs.iter().rev() {
        acc = acc.mul_ref(w) + c.clone();
    }
    acc
}

/// The smoothing kernel `G_s(y)` for the gamma factor `Gamma(s)^g`.
pub fn kernel_g(s: &BigComplex, y: &Float, g: u32, prec: u32) -> Result<BigComplex> {
    kernel_g_with(s, y, g, prec, KernelOptions::default())
}

pub fn kernel_g_with(s: &BigComplex, y: &Float, g: u32, prec: u32, opts: KernelOptions) -> Result<BigComplex> {
    if *y <= 0 {
        return Err(Error::Precondition("kernel argument must be positive".into()));
    }
    let mut plan = KernelPlan::new(s, g, prec, opts)?;
    let yf = y.to_f64();
    plan.prepare(yf, yf);
    Ok(plan.eval(y))
}

/// Crude majorant of `sum_(m > n) |a_m G(m u)|` relative to the term at `n`.
fn tail_weight(n: f64, g: u32) -> f64 {
    n.powf(1.5) * (1.0 + n.ln()).powi(2 * g as i32)
}

/// Smallest `n` past which `a_n G_s(n u)` is below `2^-(prec + guard)`.
fn truncation_point(plan: &mut KernelPlan, u: &Float, prec: u32) -> usize {
    let threshold = (-((prec + TRUNCATION_GUARD) as f64) * std::f64::consts::LN_2).exp();
    let uf = u.to_f64();
    let mut n = 1.0f64;
    loop {
        let y = Float::with_val(plan.wp, u * Float::with_val(plan.wp, n));
        plan.prepare(uf, uf * n);
        let v = plan.eval(&y).abs().to_f64();
        if v * tail_weight(n, plan.g) < threshold {
            return n.ceil() as usize;
        }
        n = (n * 1.1).max(n + 1.0);
    }
}

/// Stretch and argument pairs `(s, t)` evaluated on the way to `L*(0)`.
fn evaluation_points() -> Vec<(f64, f64)> {
    vec![(1.5, EPS_STRETCHES.0), (1.5, EPS_STRETCHES.1), (2.0, 1.0)]
}

/// An L-function with its Dirichlet coefficients loaded.
pub struct LFunction {
    pub data: FunctionalEqData,
    coeffs: Arc<Vec<i64>>,
    prec: u32,
    plans: Mutex<HashMap<String, KernelPlan>>,
}

impl LFunction {
    pub fn new(data: FunctionalEqData, coeffs: Arc<Vec<i64>>, prec: u32) -> Self {
        LFunction { data, coeffs, prec, plans: Mutex::new(HashMap::new()) }
    }

    /// Computes as many coefficients as the default evaluation points need.
    pub fn compute(idx: &FermatIndex, prec: u32) -> Result<Self> {
        let data = FunctionalEqData::new(idx, prec)?;
        let lf = LFunction::new(data, Arc::new(vec![0]), prec);
        let x = lf.required_coefficients()?;
        let coeffs = dirichlet_coeffs(idx, x)?;
        Ok(lf.with_coeffs(Arc::new(coeffs)))
    }

    /// Same function and kernel plans, new coefficient table.
    pub fn with_coeffs(self, coeffs: Arc<Vec<i64>>) -> Self {
        LFunction { coeffs, ..self }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn available(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    fn with_plan<T>(&self, s: &Float, f: impl FnOnce(&mut KernelPlan) -> T) -> Result<T> {
        let key = s.to_string_radix(16, None);
        let mut plans = self.plans.lock().expect("kernel plan cache poisoned");
        if !plans.contains_key(&key) {
            let plan = KernelPlan::new(&BigComplex::from_real(s.clone()), self.data.g, self.prec, KernelOptions::default())?;
            plans.insert(key.clone(), plan);
        }
        Ok(f(plans.get_mut(&key).expect("plan present")))
    }

    /// Arguments `u` with sums `sum a_n G_(s')(n u)` making up `Lambda(s)` at stretch `t`.
    fn sum_args(&self, s: &Float, t: &Float) -> [(Float, Float); 2] {
        let wp = self.prec + KERNEL_GUARD;
        let a = Float::with_val(wp, &self.data.scale);
        let u1 = Float::with_val(wp, t / &a);
        let u2 = Float::with_val(wp, Float::with_val(wp, t * &a).recip());
        let s2 = Float::with_val(wp, 2 - Float::with_val(wp, s));
        [(Float::with_val(wp, s), u1), (s2, u2)]
    }

    /// Coefficients needed for `Lambda(s)` at stretch `t`.
    pub fn required_terms(&self, s: &Float, t: &Float) -> Result<usize> {
        let mut need = 1;
        for (sv, u) in self.sum_args(s, t) {
            let n = self.with_plan(&sv, |plan| truncation_point(plan, &u, self.prec))?;
            need = need.max(n);
        }
        Ok(need)
    }

    /// Coefficients needed for the root number and `L*(0)`.
    pub fn required_coefficients(&self) -> Result<usize> {
        let wp = self.prec + KERNEL_GUARD;
        let mut need = 1;
        for (s, t) in evaluation_points() {
            need = need.max(self.required_terms(&Float::with_val(wp, s), &Float::with_val(wp, t))?);
        }
        Ok(need)
    }

    fn kernel_sum(&self, s: &Float, u: &Float, n_max: usize) -> Result<Float> {
        let wp = self.prec + KERNEL_GUARD;
        let uf = u.to_f64();
        let plan = self.with_plan(s, |plan| {
            plan.prepare(uf, uf * n_max as f64);
            plan.clone()
        })?;
        let terms: Vec<Float> = (1..=n_max)
            .into_par_iter()
            .filter(|&n| self.coeffs[n] != 0)
            .map(|n| {
                let y = Float::with_val(wp, u * n as u64);
                let g = plan.eval(&y);
                Float::with_val(wp, &g.re * self.coeffs[n])
            })
            .collect();
        let mut acc = Float::with_val(wp, 0);
        for t in &terms {
            acc += t;
        }
        Ok(acc)
    }

    /// The two halves `(S1, S2)` with `Lambda(s) = S1 + eps S2`.
    pub fn lambda_at(&self, s: &Float, t: &Float) -> Result<(Float, Float)> {
        if *t <= 0 {
            return Err(Error::Precondition("stretch must be positive".into()));
        }
        let wp = self.prec + KERNEL_GUARD;
        let need = self.required_terms(s, t)?;
        if need > self.available() {
            return Err(Error::CoefficientShortfall { required: need, available: self.available() });
        }
        let [(s1, u1), (s2, u2)] = self.sum_args(s, t);
        let sum1 = self.kernel_sum(&s1, &u1, need)?;
        let sum2 = self.kernel_sum(&s2, &u2, need)?;
        let ts = Float::with_val(wp, t.clone().pow(Float::with_val(wp, s)));
        let ts2 = Float::with_val(wp, t.clone().pow(Float::with_val(wp, s - 2u32)));
        Ok((Float::with_val(self.prec, sum1 * ts), Float::with_val(self.prec, sum2 * ts2)))
    }

    /// `Lambda(s)` using the solved root number.
    pub fn lambda(&mut self, s: &Float) -> Result<Float> {
        let eps = self.solve_epsilon()?;
        let (a, b) = self.lambda_at(s, &Float::with_val(self.prec, 1))?;
        Ok(a + b * eps)
    }

    /// Root number, solved from two stretches at `s = 3/2`.
    pub fn solve_epsilon(&mut self) -> Result<i32> {
        if let Some(e) = self.data.epsilon {
            return Ok(e);
        }
        let value = self.epsilon_value()?;
        let rounded = if value.is_sign_negative() { -1 } else { 1 };
        let dev = (value.clone().abs() - 1u32).abs().to_f64();
        if !dev.is_finite() || dev > EPS_TOL {
            return Err(Error::EpsilonIndeterminate { value: value.to_string_radix(10, Some(12)) });
        }
        self.data.epsilon = Some(rounded);
        Ok(rounded)
    }

    /// The unrounded solution for the root number.
    pub fn epsilon_value(&self) -> Result<Float> {
        let wp = self.prec;
        let s0 = Float::with_val(wp, 1.5);
        let (a1, b1) = self.lambda_at(&s0, &Float::with_val(wp, EPS_STRETCHES.0))?;
        let (a2, b2) = self.lambda_at(&s0, &Float::with_val(wp, EPS_STRETCHES.1))?;
        let den = Float::with_val(wp, &b2 - &b1);
        let scale = b1.clone().abs().max(&b2.clone().abs());
        if den.clone().abs() <= scale * Float::with_val(wp, 1e-12) {
            return Err(Error::EpsilonIndeterminate { value: "singular system".into() });
        }
        Ok(Float::with_val(wp, a1 - a2) / den)
    }

    /// `L*(0) = lim L(s)/s^g = eps d_N N(f) / (2 pi)^(2g) L(2) = eps Lambda(2)`.
    pub fn l_star_zero(&mut self) -> Result<Float> {
        let eps = self.solve_epsilon()?;
        let lam2 = self.lambda(&Float::with_val(self.prec, 2))?;
        Ok(lam2 * eps)
    }

    /// `L(s) = Lambda(s) / (A^s Gamma(s)^g)` for real `s`.
    pub fn l_value(&mut self, s: &Float) -> Result<Float> {
        let wp = self.prec + 16;
        let lam = self.lambda(s)?;
        let a = Float::with_val(wp, &self.data.scale).pow(Float::with_val(wp, s));
        let gam = Float::with_val(wp, s.gamma_ref()).pow(self.data.g);
        Ok(Float::with_val(self.prec, lam / (a * gam)))
    }
}

/// Root number of `L(j_N^{a,b}, s)` computed from scratch.
pub fn solve_epsilon(idx: &FermatIndex, prec: u32) -> Result<i32> {
    LFunction::compute(idx, prec)?.solve_epsilon()
}

/// `L*(j_N^{a,b}, 0)` computed from scratch.
pub fn l_star_zero(idx: &FermatIndex, prec: u32) -> Result<Float> {
    LFunction::compute(idx, prec)?.l_star_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::bits_for_digits;

    fn f(prec: u32, x: f64) -> Float {
        Float::with_val(prec, x)
    }

    /// Upper incomplete gamma by the lower series.
    fn upper_gamma(s: f64, y: f64, prec: u32) -> Float {
        let s = f(prec, s);
        let y = f(prec, y);
        let mut term = Float::with_val(prec, s.clone().recip());
        let mut acc = term.clone();
        for k in 1..2000 {
            term = term * &y / Float::with_val(prec, &s + k);
            acc += &term;
            if term.clone().abs() < Float::with_val(prec, 1e-60) {
                break;
            }
        }
        let lower = acc * Float::with_val(prec, y.clone().pow(&s)) * Float::with_val(prec, -y).exp();
        Float::with_val(prec, s.gamma_ref()) - lower
    }

    #[test]
    fn g1_kernel_is_incomplete_gamma() {
        let prec = 100;
        let s = BigComplex::from_real(f(prec, 2.0));
        let k = kernel_g(&s, &f(prec, 1.0), 1, prec).unwrap();
        let expect = Float::with_val(prec, 2) / Float::with_val(prec, 1).exp();
        assert!(Float::with_val(prec, &k.re - &expect).abs() < 1e-20, "{}", k.re);
        assert_eq!(k.im, 0);
        let oracle = upper_gamma(2.0, 1.0, prec);
        assert!(Float::with_val(prec, &k.re - &oracle).abs() < 1e-20);
        for (sv, y) in [(1.5, 3.0), (0.5, 0.7), (0.0, 2.0), (3.0, 12.0)] {
            let s = BigComplex::from_real(f(prec, sv));
            let k = kernel_g(&s, &f(prec, y), 1, prec).unwrap();
            let ex = if sv == 0.0 { e1(y, prec) } else { upper_gamma(sv, y, prec) / f(prec, y).pow(f(prec, sv)) };
            let err = Float::with_val(prec, &k.re - &ex).abs() / ex.abs();
            assert!(err < 1e-25, "s={sv} y={y}: {} vs {}", k.re, upper_gamma(sv, y, prec));
        }
    }

    /// `E_1(y) = -gamma - ln y - sum (-y)^k / (k k!)`.
    fn e1(y: f64, prec: u32) -> Float {
        let y = f(prec, y);
        let euler = Float::with_val(prec, rug::float::Constant::Euler);
        let mut acc = -euler - Float::with_val(prec, y.ln_ref());
        let mut p = f(prec, 1.0);
        for k in 1..400u32 {
            p = p * -y.clone() / k;
            acc -= Float::with_val(prec, &p / k);
        }
        acc
    }

    #[test]
    fn complex_path_agrees_with_real_path() {
        let prec = 90;
        let s = BigComplex::from_real(f(prec, 1.5));
        let real = kernel_g(&s, &f(prec, 2.5), 2, prec).unwrap();
        let sc = BigComplex::new(f(prec, 1.5), f(prec, 1e-30));
        let cplx = kernel_g(&sc, &f(prec, 2.5), 2, prec).unwrap();
        assert!(Float::with_val(prec, &real.re - &cplx.re).abs() < 1e-22);
        assert!(cplx.im.clone().abs() < 1e-22);
        let sc = BigComplex::new(f(prec, 1.0), f(prec, 0.5));
        let k = kernel_g(&sc, &f(prec, 1.0), 1, prec).unwrap();
        assert!(k.im.clone().abs() > 1e-3);
    }

    #[test]
    fn g2_kernel_decays() {
        let prec = 80;
        let s = BigComplex::from_real(f(prec, 1.5));
        let mut prev = None;
        for y in [4.0, 8.0, 16.0, 32.0, 64.0] {
            let v = kernel_g(&s, &f(prec, y), 2, prec).unwrap().re;
            assert!(v > 0);
            if let Some((py, pv)) = prev {
                let ratio = (Float::with_val(prec, &v / &pv)).to_f64();
                let bound = (-2.0 * (f64::sqrt(y) - f64::sqrt(py))).exp();
                assert!(ratio < bound * y, "y={y} ratio {ratio} bound {bound}");
                assert!(ratio > bound / (y * y), "y={y} ratio {ratio} bound {bound}");
            }
            prev = Some((y, v));
        }
    }

    #[test]
    fn halving_the_step_changes_nothing() {
        let prec = 80;
        for g in 1..=3 {
            let s = BigComplex::from_real(f(prec, 1.5));
            let y = f(prec, 3.0);
            let a = kernel_g(&s, &y, g, prec).unwrap();
            let b = kernel_g_with(&s, &y, g, prec, KernelOptions { contour: None, step_scale: 0.5 }).unwrap();
            let diff = Float::with_val(prec, &a.re - &b.re).abs();
            assert!(diff <= a.re.clone().abs() >> prec, "g={g}: {}", diff);
        }
    }

    #[test]
    fn contour_position_is_irrelevant_and_checked() {
        let prec = 80;
        let s = BigComplex::from_real(f(prec, 1.5));
        let y = f(prec, 2.0);
        let a = kernel_g(&s, &y, 2, prec).unwrap();
        let b = kernel_g_with(&s, &y, 2, prec, KernelOptions { contour: Some(4.5), step_scale: 1.0 }).unwrap();
        assert!(Float::with_val(prec, &a.re - &b.re).abs() < 1e-20);
        let err = kernel_g_with(&s, &y, 2, prec, KernelOptions { contour: Some(1.6), step_scale: 1.0 });
        assert!(matches!(err, Err(Error::ContourTooClose { .. })));
    }

    fn idx(n: u32, a: i64, b: i64) -> FermatIndex {
        FermatIndex::new(n, a, b).unwrap()
    }

    #[test]
    fn scale_constant() {
        let d = FunctionalEqData::new(&idx(4, 1, 1), 64).unwrap();
        // sqrt(4 * 16) / (2 pi)
        let expect = 8.0 / (2.0 * std::f64::consts::PI);
        assert!((d.scale.to_f64() - expect).abs() < 1e-12);
        assert_eq!(d.degree(), 2);
        let d = FunctionalEqData::new(&idx(7, 1, 2), 64).unwrap();
        assert_eq!(d.g, 3);
        assert_eq!(d.disc, 16807);
    }

    #[test]
    fn shortfall_reports_required_terms() {
        let data = FunctionalEqData::new(&idx(5, 1, 1), 60).unwrap();
        let lf = LFunction::new(data, Arc::new(vec![0, 1, 0, 0]), 60);
        match lf.lambda_at(&f(60, 1.5), &f(60, 1.0)) {
            Err(Error::CoefficientShortfall { required, available }) => {
                assert_eq!(available, 3);
                assert!(required > 3);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn cubic_case_stretch_consistency_and_central_point() {
        let prec = bits_for_digits(15) + 16;
        let mut lf = LFunction::compute(&idx(3, 1, 1), prec).unwrap();
        assert_eq!(lf.solve_epsilon().unwrap(), 1);
        let eps = lf.epsilon_value().unwrap();
        assert!((eps.to_f64() - 1.0).abs() < 1e-10);
        let s = f(prec, 1.5);
        let mut vals = Vec::new();
        for t in [1.0, 1.2, 0.9] {
            let (a, b) = lf.lambda_at(&s, &f(prec, t)).unwrap();
            vals.push(a + b);
        }
        for v in &vals[1..] {
            assert!(Float::with_val(prec, v - &vals[0]).abs() < 1e-10);
        }
        let (a, b) = lf.lambda_at(&f(prec, 1.0), &f(prec, 1.0)).unwrap();
        assert!(Float::with_val(prec, &a - &b).abs() <= a.clone().abs() >> (prec - 8));
    }

    #[test]
    fn cubic_case_matches_direct_dirichlet_sum() {
        let prec = bits_for_digits(20) + 16;
        let i = idx(3, 1, 1);
        let mut lf = LFunction::compute(&i, prec).unwrap();
        let lam3 = lf.lambda(&f(prec, 3.0)).unwrap();
        let coeffs = dirichlet_coeffs(&i, 10_000).unwrap();
        let mut direct = Float::with_val(prec, 0);
        for (n, &a) in coeffs.iter().enumerate().skip(1) {
            direct += Float::with_val(prec, a) / Float::with_val(prec, n as u64).pow(3u32);
        }
        let a3 = Float::with_val(prec, lf.data.scale.clone().pow(3u32));
        let afe = Float::with_val(prec, &lam3 / &a3) / 2u32;
        assert!(Float::with_val(prec, &afe - &direct).abs() < 1e-6, "{} vs {}", afe, direct);
        let l3 = lf.l_value(&f(prec, 3.0)).unwrap();
        assert!(Float::with_val(prec, &l3 - &afe).abs() < 1e-15);
    }
}

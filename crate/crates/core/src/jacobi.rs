//! Jacobi sums over residue fields of `Q(zeta_N)`, Euler factors and the
//! Dirichlet coefficients of the Jacobi-sum Hecke L-function.

use rayon::prelude::*;
use rug::ops::Pow;
use rug::Integer;
use serde::{Deserialize, Serialize};

use crate::cyclo::{self, CycElt, GaloisAut};
use crate::error::{Error, Result};
use crate::ffield::{is_prime, mult_order, FiniteField};
use crate::index::{h_set, FermatIndex};

/// Default upper bound on `p^f` for enumeration.
pub const DEFAULT_Q_BOUND: u64 = 1 << 26;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingData {
    pub p: u64,
    /// Residue degree, the order of `p` mod `N`.
    pub f: u32,
    /// Number of primes above `p`.
    pub gp: u32,
}

pub fn splitting(n: u32, p: u64) -> Result<SplittingData> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n as u64 % p == 0 {
        return Err(Error::RamifiedPrime { p, n });
    }
    let f = mult_order(p, n as u64);
    Ok(SplittingData { p, f, gp: cyclo::euler_phi(n) / f })
}

/// Euler factor at `p` as a polynomial in `T = p^(-s)`, constant term first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalFactorData {
    pub p: u64,
    pub f: u32,
    pub poly: Vec<i128>,
}

fn field_for(split: &SplittingData, bound: u64) -> Result<FiniteField> {
    let q = (split.p as u128).pow(split.f);
    if q > bound as u128 {
        return Err(Error::EnumerationTooLarge { q: q.min(u64::MAX as u128) as u64, bound });
    }
    Ok(FiniteField::new(split.p, split.f as usize))
}

/// Jacobi sum `j(v0)` for the prime `v0` cut out by `zeta -> gen^((q-1)/N)` in `ff`.
pub fn jacobi_sum_in(ff: &FiniteField, idx: &FermatIndex) -> CycElt {
    let n = idx.n() as u64;
    let q = ff.order();
    assert_eq!((q - 1) % n, 0, "field does not contain the N-th roots of unity");
    let (a, b) = (idx.a() as u64, idx.b() as u64);
    let mut counts = vec![0i64; n as usize];
    // x = gen^k for k >= 1 runs over F_q minus {0, 1}
    for k in 1..q - 1 {
        let y = ff.one_minus(ff.exp(k));
        let ly = ff.log(y).expect("1 - x is nonzero for x != 1") as u64;
        counts[((a * (k % n) + b * (ly % n)) % n) as usize] -= 1;
    }
    CycElt::from_int_coeffs(idx.n(), &counts)
}

/// Jacobi sum at the normalized prime above `p`.
pub fn jacobi_sum(idx: &FermatIndex, p: u64) -> Result<CycElt> {
    jacobi_sum_bounded(idx, p, DEFAULT_Q_BOUND)
}

pub fn jacobi_sum_bounded(idx: &FermatIndex, p: u64, bound: u64) -> Result<CycElt> {
    let split = splitting(idx.n(), p)?;
    let ff = field_for(&split, bound)?;
    Ok(jacobi_sum_in(&ff, idx))
}

/// Smallest representative of each coset of `<p>` in `(Z/N)^x`.
pub fn coset_reps(n: u32, p: u64) -> Vec<u32> {
    let mut seen = vec![false; n as usize];
    let mut reps = Vec::new();
    for h in cyclo::units(n) {
        if seen[h as usize] {
            continue;
        }
        reps.push(h);
        let mut x = h as u64;
        loop {
            seen[x as usize] = true;
            x = x * p % n as u64;
            if x == h as u64 {
                break;
            }
        }
    }
    reps
}

/// `prod_h (1 - sigma_h(j0) T^f)` over coset representatives, from a given `j0`.
pub fn local_factor_from(idx: &FermatIndex, split: &SplittingData, j0: &CycElt) -> Result<LocalFactorData> {
    let n = idx.n();
    let mut acc = vec![CycElt::one(n)];
    for h in coset_reps(n, split.p) {
        let s = GaloisAut::new(h as i64, n)?;
        let root = -&j0.galois(&s)?;
        let mut next = vec![CycElt::zero(n); acc.len() + 1];
        for (k, c) in acc.iter().enumerate() {
            next[k] = &next[k] + c;
            next[k + 1] = &next[k + 1] + &(c * &root);
        }
        acc = next;
    }
    let deg = cyclo::euler_phi(n) as usize;
    let mut poly = vec![0i128; deg + 1];
    for (k, c) in acc.iter().enumerate() {
        let v = c.as_rational().filter(|r| *r.denom() == 1).ok_or(Error::NonIntegralEulerFactor { p: split.p })?;
        poly[k * split.f as usize] = v.numer().to_i128().ok_or(Error::NonIntegralEulerFactor { p: split.p })?;
    }
    Ok(LocalFactorData { p: split.p, f: split.f, poly })
}

pub fn local_factor(idx: &FermatIndex, p: u64) -> Result<LocalFactorData> {
    local_factor_bounded(idx, p, DEFAULT_Q_BOUND)
}

pub fn local_factor_bounded(idx: &FermatIndex, p: u64, bound: u64) -> Result<LocalFactorData> {
    let split = splitting(idx.n(), p)?;
    let ff = field_for(&split, bound)?;
    local_factor_from(idx, &split, &jacobi_sum_in(&ff, idx))
}

/// Coefficients of `1 / poly(T)` up to `T^kmax`.
pub fn invert_series(poly: &[i128], kmax: usize) -> Vec<i128> {
    debug_assert_eq!(poly[0], 1);
    let mut b = vec![0i128; kmax + 1];
    b[0] = 1;
    for k in 1..=kmax {
        let mut s = 0i128;
        for i in 1..=k.min(poly.len() - 1) {
            s += poly[i] * b[k - i];
        }
        b[k] = -s;
    }
    b
}

fn primes_upto(x: usize) -> Vec<u64> {
    let mut sieve = vec![true; x + 1];
    let mut out = Vec::new();
    for i in 2..=x {
        if sieve[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= x {
                sieve[j] = false;
                j += i;
            }
        }
    }
    out
}

/// `a_0..a_X` of `L(j_N^{a,b}, s) = sum a_n n^(-s)`; the entry at index 0 is 0.
pub fn dirichlet_coeffs(idx: &FermatIndex, x: usize) -> Result<Vec<i64>> {
    dirichlet_coeffs_bounded(idx, x, DEFAULT_Q_BOUND)
}

pub fn dirichlet_coeffs_bounded(idx: &FermatIndex, x: usize, bound: u64) -> Result<Vec<i64>> {
    let mut a = vec![0i64; x + 1];
    if x == 0 {
        return Ok(a);
    }
    let n = idx.n() as u64;
    let tasks: Vec<(u64, SplittingData)> = primes_upto(x)
        .into_iter()
        .filter(|&p| n % p != 0)
        .filter_map(|p| {
            let split = splitting(idx.n(), p).ok()?;
            ((p as u128).pow(split.f) <= x as u128).then_some((p, split))
        })
        .collect();
    let powers: Vec<(u64, Vec<i128>)> = tasks
        .par_iter()
        .map(|(p, split)| {
            let ff = field_for(split, bound)?;
            let lf = local_factor_from(idx, split, &jacobi_sum_in(&ff, idx))?;
            let kmax = (x as f64).log(*p as f64).floor() as usize + 1;
            Ok((*p, invert_series(&lf.poly, kmax)))
        })
        .collect::<Result<_>>()?;
    for (p, b) in powers {
        let mut pk = p as usize;
        let mut k = 1;
        while pk <= x {
            a[pk] = i64::try_from(b[k]).map_err(|_| Error::NonIntegralEulerFactor { p })?;
            k += 1;
            pk = match pk.checked_mul(p as usize) {
                Some(v) => v,
                None => break,
            };
        }
    }
    a[1] = 1;
    let spf = smallest_prime_factors(x);
    for m in 2..=x {
        let p = spf[m];
        let mut pk = p;
        let mut rest = m / p;
        while rest % p == 0 {
            rest /= p;
            pk *= p;
        }
        if rest > 1 {
            a[m] = a[pk] * a[rest];
        }
    }
    Ok(a)
}

fn smallest_prime_factors(x: usize) -> Vec<usize> {
    let mut spf = vec![0usize; x + 1];
    for i in 2..=x {
        if spf[i] == 0 {
            let mut j = i;
            while j <= x {
                if spf[j] == 0 {
                    spf[j] = i;
                }
                j += i;
            }
        }
    }
    spf
}

/// Outcome of comparing a Jacobi sum at a principal prime with its Stickelberger prediction.
#[derive(Clone, Debug, PartialEq)]
pub struct HeckeCheck {
    /// `j((alpha))`.
    pub jacobi: CycElt,
    /// `phi(alpha) prod_{h in H} sigma_h^{-1}(alpha)`.
    pub predicted: CycElt,
    /// How many distinct values among the conjugates `sigma_k(j0)` equal the prediction.
    pub conjugate_matches: usize,
}

impl HeckeCheck {
    pub fn holds(&self) -> bool {
        self.jacobi == self.predicted && self.conjugate_matches == 1
    }
}

/// Reduces an integral element at `omega`, i.e. its image under `zeta -> omega`.
fn reduce_at(ff: &FiniteField, z: &CycElt, omega: u64) -> Result<u64> {
    let coeffs = z.int_coeffs().ok_or_else(|| Error::Precondition("generator is not integral".into()))?;
    let p = Integer::from(ff.p());
    let mut acc = 0u64;
    let mut w = 1u64;
    for c in coeffs {
        let mut r = Integer::from(&c % &p);
        if r < 0 {
            r += &p;
        }
        let r = r.to_u64().unwrap();
        acc = ff.add(acc, ff.mul(r, w));
        w = ff.mul(w, omega);
    }
    Ok(acc)
}

/// Checks `j((alpha)) = phi(alpha) prod_{h in H} sigma_h^{-1}(alpha)` for a prime `(alpha)` of norm `p^f`.
pub fn hecke_check(idx: &FermatIndex, alpha: &CycElt, phi: &CycElt) -> Result<HeckeCheck> {
    let n = idx.n();
    if alpha.level() != n || phi.level() != n {
        return Err(Error::LevelMismatch(n, alpha.level()));
    }
    let norm = cyclo::elt_norm(alpha);
    if *norm.denom() != 1 {
        return Err(Error::Precondition("generator has non-integral norm".into()));
    }
    let norm = norm.numer().clone().abs();
    let p = cyclo::prime_factors(norm.to_u64().ok_or_else(|| Error::Precondition("norm too large".into()))?);
    if p.len() != 1 {
        return Err(Error::Precondition(format!("norm {norm} is not a prime power")));
    }
    let split = splitting(n, p[0])?;
    if norm != Integer::from(split.p).pow(split.f) {
        return Err(Error::Precondition(format!("(alpha) of norm {norm} is not prime")));
    }
    let ff = field_for(&split, DEFAULT_Q_BOUND)?;
    let omega = ff.exp((ff.order() - 1) / n as u64);
    let j0 = jacobi_sum_in(&ff, idx);

    let mut predicted = phi.clone();
    for h in h_set(idx) {
        let s = GaloisAut::new(h as i64, n)?.inverse();
        predicted = &predicted * &alpha.galois(&s)?;
    }

    let mut jacobi = None;
    let mut values: Vec<CycElt> = Vec::new();
    for k in coset_reps(n, split.p) {
        let s = GaloisAut::new(k as i64, n)?;
        let conj = j0.galois(&s)?;
        if !values.contains(&conj) {
            values.push(conj.clone());
        }
        // alpha lies in sigma_k(v0) iff alpha(omega^(k^-1)) = 0
        if reduce_at(&ff, alpha, ff.pow(omega, s.inverse().h() as u64))? == 0 {
            jacobi = Some(conj);
        }
    }
    let jacobi = jacobi.ok_or_else(|| Error::Precondition("no prime above p contains alpha".into()))?;
    let conjugate_matches = values.iter().filter(|v| **v == predicted).count();
    Ok(HeckeCheck { jacobi, predicted, conjugate_matches })
}

/// Checks the Hecke identity at a generator listed in the built-in character table.
pub fn hecke_verify(idx: &FermatIndex, alpha: &CycElt) -> Result<bool> {
    let entry = crate::tables::character_table()
        .into_iter()
        .find(|c| (c.n, c.a, c.b) == (idx.n(), idx.a(), idx.b()) && c.alpha == *alpha)
        .ok_or_else(|| Error::Precondition(format!("no character value listed for {alpha} at {idx}")))?;
    Ok(hecke_check(idx, alpha, &entry.phi)?.holds())
}

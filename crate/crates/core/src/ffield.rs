//! Small finite fields `F_{p^f}` with discrete-log tables.
//!
//! An element is encoded as the integer `sum d_i p^i` of its coordinates in
//! the basis `1, t, ..., t^(f-1)` of `F_p[t]/(P)`.

use crate::cyclo::prime_factors;

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    r
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Multiplicative order of `p` modulo `n`.
pub fn mult_order(p: u64, n: u64) -> u32 {
    let mut x = p % n;
    let mut k = 1;
    while x != 1 % n {
        x = mulmod(x, p, n);
        k += 1;
    }
    k
}

/// Dense polynomials over `F_p`, constant term first, no trailing zeros.
mod poly {
    use super::{mulmod, powmod};

    pub fn trim(mut a: Vec<u64>) -> Vec<u64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let r = (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
            .collect();
        trim(r)
    }

    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut r = trim(a.to_vec());
        let dm = m.len() - 1;
        let inv = powmod(m[dm], p - 2, p);
        while r.len() > dm {
            let k = r.len() - 1;
            let c = mulmod(r[k], inv, p);
            for (j, &mj) in m.iter().enumerate() {
                r[k - dm + j] = (r[k - dm + j] + p - mulmod(c, mj, p)) % p;
            }
            r = trim(r);
        }
        r
    }

    pub fn mulmod_poly(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut r = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                r[i + j] = (r[i + j] + mulmod(x, y, p)) % p;
            }
        }
        rem(&r, m, p)
    }

    pub fn powmod_poly(base: &[u64], mut e: u128, m: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod_poly(&acc, &b, m, p);
            }
            b = mulmod_poly(&b, &b, m, p);
            e >>= 1;
        }
        acc
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }
}

/// Rabin's irreducibility test for a monic polynomial of degree `f`.
fn is_irreducible(m: &[u64], p: u64) -> bool {
    let f = m.len() - 1;
    let t = vec![0, 1];
    let q = (p as u128).pow(f as u32);
    if poly::sub(&poly::powmod_poly(&t, q, m, p), &t, p).iter().any(|&c| c != 0) {
        return false;
    }
    for r in prime_factors(f as u64) {
        let e = (p as u128).pow((f as u64 / r) as u32);
        let h = poly::sub(&poly::powmod_poly(&t, e, m, p), &t, p);
        if poly::gcd(m, &h, p).len() != 1 {
            return false;
        }
    }
    true
}

/// The first monic irreducible of degree `f` when lower coefficients are
/// read as base-`p` digits, constant term least significant.
fn smallest_irreducible(p: u64, f: usize) -> Vec<u64> {
    let count = p.pow(f as u32);
    for code in 0..count {
        let mut m = digits(code, p, f);
        m.push(1);
        if m[0] != 0 && is_irreducible(&m, p) {
            return m;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn digits(mut x: u64, p: u64, f: usize) -> Vec<u64> {
    let mut d = Vec::with_capacity(f);
    for _ in 0..f {
        d.push(x % p);
        x /= p;
    }
    d
}

fn undigits(d: &[u64], p: u64) -> u64 {
    d.iter().rev().fold(0, |acc, &x| acc * p + x)
}

/// `F_q` with exp/log tables relative to a fixed primitive element.
pub struct FiniteField {
    p: u64,
    f: usize,
    q: u64,
    modulus: Vec<u64>,
    generator: u64,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl FiniteField {
    /// Field with the smallest primitive element as generator.
    pub fn new(p: u64, f: usize) -> Self {
        Self::with_generator_rank(p, f, 0)
    }

    /// Field whose generator is the `rank`-th primitive element in encoding order.
    pub fn with_generator_rank(p: u64, f: usize, rank: usize) -> Self {
        assert!(is_prime(p) && f >= 1);
        let q = p.pow(f as u32);
        assert!(q <= u32::MAX as u64, "field too large for u32 tables");
        let modulus = if f == 1 { vec![0, 1] } else { smallest_irreducible(p, f) };
        let mut ff = FiniteField { p, f, q, modulus, generator: 0, exp: Vec::new(), log: Vec::new() };
        let factors = prime_factors(q - 1);
        let generator = (1..q)
            .filter(|&x| factors.iter().all(|&r| ff.pow(x, (q - 1) / r) != 1))
            .nth(rank)
            .expect("enough primitive elements");
        ff.generator = generator;
        ff.build_tables();
        ff
    }

    fn build_tables(&mut self) {
        let n = (self.q - 1) as usize;
        let mut exp = vec![0u32; n];
        let mut log = vec![u32::MAX; self.q as usize];
        let mut x = 1u64;
        for (k, slot) in exp.iter_mut().enumerate() {
            *slot = x as u32;
            log[x as usize] = k as u32;
            x = self.mul(x, self.generator);
        }
        debug_assert_eq!(x, 1);
        self.exp = exp;
        self.log = log;
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.f
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn generator(&self) -> u64 {
        self.generator
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn add(&self, x: u64, y: u64) -> u64 {
        if self.f == 1 {
            return (x + y) % self.p;
        }
        let (dx, dy) = (digits(x, self.p, self.f), digits(y, self.p, self.f));
        let s: Vec<u64> = dx.iter().zip(&dy).map(|(a, b)| (a + b) % self.p).collect();
        undigits(&s, self.p)
    }

    pub fn mul(&self, x: u64, y: u64) -> u64 {
        if self.f == 1 {
            return mulmod(x, y, self.p);
        }
        let r = poly::mulmod_poly(
            &poly::trim(digits(x, self.p, self.f)),
            &poly::trim(digits(y, self.p, self.f)),
            &self.modulus,
            self.p,
        );
        undigits(&r, self.p)
    }

    pub fn pow(&self, x: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        let mut b = x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    /// `1 - x`.
    pub fn one_minus(&self, x: u64) -> u64 {
        let p = self.p;
        if self.f == 1 {
            return (1 + p - x) % p;
        }
        let mut r = 0u64;
        let mut scale = 1u64;
        let mut rest = x;
        for i in 0..self.f {
            let d = rest % p;
            rest /= p;
            let nd = if i == 0 { (1 + p - d) % p } else { (p - d) % p };
            r += nd * scale;
            scale *= p;
        }
        r
    }

    /// Discrete log to the generator; `None` at zero.
    pub fn log(&self, x: u64) -> Option<u32> {
        match self.log[x as usize] {
            u32::MAX => None,
            l => Some(l),
        }
    }

    pub fn exp(&self, k: u64) -> u64 {
        self.exp[(k % (self.q - 1)) as usize] as u64
    }

    /// Embeds the integer `v` into the prime field.
    pub fn from_int(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primes_and_orders() {
        assert!(is_prime(2) && is_prime(7) && !is_prime(9) && !is_prime(1));
        assert_eq!(mult_order(2, 5), 4);
        assert_eq!(mult_order(3, 7), 6);
        assert_eq!(mult_order(7, 3), 1);
    }

    #[test]
    fn irreducible_moduli() {
        // t^2 + 1 over F_3, t^2 + t + 1 over F_2
        assert_eq!(smallest_irreducible(3, 2), vec![1, 0, 1]);
        assert_eq!(smallest_irreducible(2, 2), vec![1, 1, 1]);
        assert_eq!(smallest_irreducible(2, 3), vec![1, 1, 0, 1]);
        assert!(!is_irreducible(&[1, 0, 1], 2));
    }

    #[test]
    fn tables_cover_the_group() {
        for (p, f) in [(2u64, 4usize), (3, 6), (7, 1), (5, 2), (2, 1)] {
            let ff = FiniteField::new(p, f);
            let q = ff.order();
            let mut seen = vec![false; q as usize];
            for k in 0..q - 1 {
                let x = ff.exp(k);
                assert!(!seen[x as usize]);
                seen[x as usize] = true;
                assert_eq!(ff.log(x), Some(k as u32));
            }
            assert!(!seen[0] && ff.log(0).is_none());
        }
    }

    #[test]
    fn field_axioms_spot_check() {
        let ff = FiniteField::new(3, 3);
        for x in 0..27 {
            assert_eq!(ff.add(x, ff.one_minus(x)), 1);
            for y in 0..27 {
                assert_eq!(ff.mul(x, y), ff.mul(y, x));
                // distributivity over 1 - y
                let lhs = ff.mul(x, ff.one_minus(y));
                let neg_xy = ff.one_minus(ff.add(ff.mul(x, y), 1));
                assert_eq!(lhs, ff.add(x, neg_xy));
            }
        }
    }

    #[test]
    fn frobenius_is_additive() {
        let ff = FiniteField::new(5, 2);
        for x in 0..25 {
            for y in 0..25 {
                assert_eq!(ff.pow(ff.add(x, y), 5), ff.add(ff.pow(x, 5), ff.pow(y, 5)));
            }
        }
    }
}

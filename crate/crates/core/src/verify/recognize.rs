//! Continued-fraction recognition of rationals.

use rug::{Float, Integer, Rational};

/// Convergents `p/q` of `x` while `q <= q_limit`, plus the first one past it.
pub fn convergents(x: &Rational, q_limit: &Integer) -> Vec<Rational> {
    let mut out = Vec::new();
    let (mut p0, mut q0) = (Integer::from(0), Integer::from(1));
    let (mut p1, mut q1) = (Integer::from(1), Integer::from(0));
    let mut rest = x.clone();
    loop {
        let (frac, a) = rest.fract_floor(Integer::new());
        let p2 = Integer::from(&a * &p1) + &p0;
        let q2 = Integer::from(&a * &q1) + &q0;
        out.push(Rational::from((p2.clone(), q2.clone())));
        if frac == 0 || q2 > *q_limit {
            break;
        }
        rest = frac.recip();
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
    }
    out
}

/// First convergent `p/q` of `x` with `q <= q_max` and `|x - p/q| < tol`.
///
/// A hit is kept only if the following convergent has denominator above
/// `q_max / 10` or itself misses the tolerance.
pub fn rational_recognize(x: &Float, q_max: u64, tol: &Float) -> Option<Rational> {
    let exact = x.to_rational()?;
    let q_max = Integer::from(q_max);
    let guard_q = Integer::from(&q_max / 10u32);
    let prec = x.prec().max(tol.prec());
    let residual = |r: &Rational| Float::with_val(prec, x - r).abs();
    let convs = convergents(&exact, &q_max);
    for (i, c) in convs.iter().enumerate() {
        if *c.denom() > q_max {
            break;
        }
        if residual(c) >= *tol {
            continue;
        }
        let stable = match convs.get(i + 1) {
            None => true,
            Some(next) => *next.denom() > guard_q || residual(next) >= *tol,
        };
        if stable {
            return Some(c.clone());
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{pi, pow10_neg};

    #[test]
    fn recognizes_simple_values() {
        let prec = 200;
        let half = Float::with_val(prec, 0.5);
        assert_eq!(rational_recognize(&half, 1_000_000, &pow10_neg(prec, 10)), Some(Rational::from((1, 2))));
        let x = Float::with_val(prec, Rational::from((2, 3))) + pow10_neg(prec, 30);
        assert_eq!(rational_recognize(&x, 1_000_000, &pow10_neg(prec, 20)), Some(Rational::from((2, 3))));
        let neg = Float::with_val(prec, Rational::from((-8, 3))) + pow10_neg(prec, 14);
        assert_eq!(rational_recognize(&neg, 1_000_000, &pow10_neg(prec, 10)), Some(Rational::from((-8, 3))));
        let big = Float::with_val(prec, 2744) - pow10_neg(prec, 13);
        assert_eq!(rational_recognize(&big, 1_000_000, &pow10_neg(prec, 10)), Some(Rational::from(2744)));
    }

    #[test]
    fn pi_is_not_recognized() {
        let prec = 200;
        let tol = pow10_neg(prec, 20);
        assert_eq!(rational_recognize(&pi(prec), 1_000_000, &tol), None);
        // every convergent with q <= 10^6 misses pi by far more than the tolerance
        let exact = pi(prec).to_rational().unwrap();
        let convs = convergents(&exact, &Integer::from(1_000_000));
        assert!(convs.iter().any(|c| *c == Rational::from((355, 113))));
        for c in convs.iter().filter(|c| *c.denom() <= 1_000_000) {
            assert!(Float::with_val(prec, &pi(prec) - c).abs() > 1e-14);
        }
    }

    #[test]
    fn denominator_bound_is_respected() {
        let prec = 200;
        let x = Float::with_val(prec, Rational::from((1, 1_000_003)));
        assert_eq!(rational_recognize(&x, 1_000_000, &pow10_neg(prec, 20)), None);
        assert_eq!(rational_recognize(&x, 2_000_000, &pow10_neg(prec, 20)), Some(Rational::from((1, 1_000_003))));
    }

    #[test]
    fn unstable_hit_is_skipped() {
        let prec = 200;
        let x = Float::with_val(prec, Rational::from((1, 3))) + pow10_neg(prec, 12);
        assert_eq!(rational_recognize(&x, 1_000_000, &pow10_neg(prec, 11)), Some(Rational::from((1, 3))));
        // 1/2 and 500/999 fit, but each is followed by a small-denominator convergent that fits too
        let y = Float::with_val(prec, Rational::from((1001, 2000)));
        assert_eq!(rational_recognize(&y, 1_000_000, &Float::with_val(prec, 1e-3)), Some(Rational::from((1001, 2000))));
    }
}

//! Monic Hermite polynomials for the weight exp(-x^2).
//!
//! Coefficients are exact rationals, generated once by the three-term
//! recurrence H_{k+1} = x H_k - (k/2) H_{k-1} and cached process-wide. Every
//! downstream construction (kernels, connection formulas, symmetrization)
//! starts from this cache, so numerical error enters only at the final
//! rounding to working precision.

use std::sync::{Arc, RwLock};

use once_cell::sync::Lazy;
use rug::{Complete, Integer, Rational};

use crate::poly::Poly;
use crate::real::Real;

static CACHE: Lazy<RwLock<Vec<Arc<Vec<Rational>>>>> = Lazy::new(|| {
    RwLock::new(vec![
        Arc::new(vec![Rational::from(1)]),
        Arc::new(vec![Rational::from(0), Rational::from(1)]),
    ])
});

/// Exact ascending coefficients of the monic H_n.
pub fn hermite_rationals(n: usize) -> Arc<Vec<Rational>> {
    {
        let cache = CACHE.read().unwrap();
        if n < cache.len() {
            return cache[n].clone();
        }
    }
    let mut cache = CACHE.write().unwrap();
    while cache.len() <= n {
        let k = cache.len() - 1;
        let hk = cache[k].clone();
        let hk1 = cache[k - 1].clone();
        let mut next = vec![Rational::new(); k + 2];
        for (j, c) in hk.iter().enumerate() {
            next[j + 1] += c;
        }
        let half_k = Rational::from((k as i64, 2));
        for (j, c) in hk1.iter().enumerate() {
            next[j] -= (&half_k * c).complete();
        }
        cache.push(Arc::new(next));
    }
    cache[n].clone()
}

/// Monic H_n rounded to the working precision.
pub fn hermite_monic(n: usize, prec: u32) -> Poly {
    Poly::from_rationals(&hermite_rationals(n), prec)
}

/// The rational part of the squared norm: ||H_n||^2 = sqrt(pi) * n! / 2^n.
pub fn hermite_norm_sq_rational(n: usize) -> Rational {
    let fact = Integer::factorial(n as u32).complete();
    Rational::from((fact, Integer::from(1) << (n as u32)))
}

/// ||H_n||^2 at working precision.
pub fn hermite_norm_sq(n: usize, prec: u32) -> Real {
    let r = Real::from_rational(&hermite_norm_sq_rational(n), prec);
    &r * &Real::sqrt_pi(prec)
}

/// Exact H_n(0): zero for odd n, (-1)^m (2m)!/(2^{2m} m!) for n = 2m.
pub fn hermite_at_zero_rational(n: usize) -> Rational {
    if n % 2 == 1 {
        return Rational::new();
    }
    let m = (n / 2) as u32;
    let num = Integer::factorial(2 * m).complete();
    let den = Integer::factorial(m).complete() << (2 * m);
    let v = Rational::from((num, den));
    if m % 2 == 0 { v } else { -v }
}

pub fn hermite_at_zero(n: usize, prec: u32) -> Real {
    Real::from_rational(&hermite_at_zero_rational(n), prec)
}

/// Values H_0(x) .. H_n(x) by forward recurrence, one pass, O(n) work.
pub fn hermite_eval_all(n: usize, x: &Real) -> Vec<Real> {
    let prec = x.prec();
    let mut vals = Vec::with_capacity(n + 1);
    vals.push(Real::one(prec));
    if n >= 1 {
        vals.push(x.clone());
    }
    for k in 1..n {
        let half_k = Real::from_rational(&Rational::from((k as i64, 2)), prec);
        let next = &(x * &vals[k]) - &(&half_k * &vals[k - 1]);
        vals.push(next);
    }
    vals
}

/// Falling factorial k!/(k-i)! as an exact integer; zero when i > k.
pub fn falling(k: usize, i: usize) -> Integer {
    if i > k {
        return Integer::new();
    }
    let mut acc = Integer::from(1);
    for v in (k - i + 1)..=k {
        acc *= v as u64;
    }
    acc
}

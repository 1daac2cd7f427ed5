//! Reproducing kernels of the Hermite family and their derivated variants.
//!
//! The kernel with differentiated entries is
//!
//! ```text
//! K_n^(i,j)(x, y) = sum_{k=0..n} H_k^(i)(x) H_k^(j)(y) / ||H_k||^2
//! ```
//!
//! [`kernel_sum`] computes it literally and serves as the oracle for
//! everything else. [`kernel_cd`] is the two-term quotient form for
//! (i, j) = (0, 0). [`kernel_closed_at0`] and [`kernel_const`] are the
//! closed forms along y = 0 and at the origin; their index patterns only
//! cover the cases the constructions need, and out-of-table queries return
//! [`Error::UnsupportedKernelCase`] so the caller can fall back to the sum.
//!
//! Closed forms are assembled as exact rational polynomials, divided by
//! their vanishing power of x exactly, and only then evaluated. A nonzero
//! coefficient where the theory demands a zero is an internal bug and
//! surfaces as [`Error::InternalConsistency`].

use rug::{Complete, Integer, Rational};

use crate::hermite::{falling, hermite_eval_all, hermite_norm_sq_rational, hermite_rationals};
use crate::real::Real;
use crate::{Error, Result};

const GUARD_BITS: u32 = 64;

/// Literal kernel summation. Precision follows x; y must match.
pub fn kernel_sum(n: usize, i: usize, j: usize, x: &Real, y: &Real) -> Real {
    let prec = x.prec();
    assert_eq!(prec, y.prec(), "kernel_sum precision mismatch");
    let wprec = prec + GUARD_BITS;
    let xw = x.to_prec(wprec);
    let yw = y.to_prec(wprec);
    let lo = i.max(j);
    let hx = hermite_eval_all(n.saturating_sub(i), &xw);
    let hy = hermite_eval_all(n.saturating_sub(j), &yw);
    let mut acc = Real::zero(wprec);
    for k in lo..=n {
        // H_k^(i) = k!/(k-i)! H_{k-i}; 1/||H_k||^2 = 2^k / (k! sqrt(pi)).
        let mut factor = Rational::from(falling(k, i) * falling(k, j));
        factor *= Rational::from((
            Integer::from(1) << (k as u32),
            Integer::factorial(k as u32).complete(),
        ));
        let term = &(&hx[k - i] * &hy[k - j]) * &Real::from_rational(&factor, wprec);
        acc += &term;
    }
    (&acc / &Real::sqrt_pi(wprec)).to_prec(prec)
}

/// Plain kernel via the two-term quotient. Falls back to the summation when
/// x and y agree to within 2^(-prec/2), where the quotient cancels.
pub fn kernel_cd(n: usize, x: &Real, y: &Real) -> Real {
    let prec = x.prec();
    assert_eq!(prec, y.prec(), "kernel_cd precision mismatch");
    let gap = (x - y).abs();
    let tiny = Real::from_i64(2, prec).powi(-((prec / 2) as i32));
    if gap < tiny {
        return kernel_sum(n, 0, 0, x, y);
    }
    let wprec = prec + GUARD_BITS;
    let xw = x.to_prec(wprec);
    let yw = y.to_prec(wprec);
    let hx = hermite_eval_all(n + 1, &xw);
    let hy = hermite_eval_all(n + 1, &yw);
    let num = &(&hx[n + 1] * &hy[n]) - &(&hx[n] * &hy[n + 1]);
    let norm = &Real::from_rational(&hermite_norm_sq_rational(n), wprec) * &Real::sqrt_pi(wprec);
    let den = &(&xw - &yw) * &norm;
    (&num / &den).to_prec(prec)
}

/// Divides out x^k, demanding that the low k coefficients vanish exactly.
pub(crate) fn shift_exact(cs: &[Rational], k: usize, what: &str) -> Result<Vec<Rational>> {
    for (idx, c) in cs.iter().take(k).enumerate() {
        if *c != 0 {
            return Err(Error::InternalConsistency(format!(
                "{what}: coefficient {idx} should vanish, got {c}"
            )));
        }
    }
    let rest = cs[k..].to_vec();
    if rest.is_empty() {
        // The whole numerator vanished identically (lowest-degree cases).
        return Ok(vec![Rational::new()]);
    }
    Ok(rest)
}

pub(crate) fn eval_rationals(cs: &[Rational], x: &Real) -> Real {
    let prec = x.prec();
    let mut acc = Real::from_rational(cs.last().unwrap(), prec);
    for c in cs.iter().rev().skip(1) {
        acc = &(&acc * x) + &Real::from_rational(c, prec);
    }
    acc
}

fn neg_pow(m: usize) -> i64 {
    if m % 2 == 0 { 1 } else { -1 }
}

/// K_n^(0,j)(x, 0) in closed form for j <= 3, x != 0.
///
/// Index patterns: j in {0, 1} cover every n the pattern reaches (j = 1
/// needs n >= 1); j = 2 exists for odd n only, j = 3 for even n only. The
/// mismatched parities have no two-term closed form and come back as
/// [`Error::UnsupportedKernelCase`].
pub fn kernel_closed_at0(n: usize, j: usize, x: &Real) -> Result<Real> {
    if x.is_zero() {
        return Err(Error::Domain(
            "kernel_closed_at0 needs x != 0; use kernel_const at the origin".into(),
        ));
    }
    let prec = x.prec();
    let wprec = prec + GUARD_BITS;
    let xw = x.to_prec(wprec);
    let (numerator, shift, factor) = match j {
        0 => {
            // K_{2m}(x,0) = K_{2m+1}(x,0) = (-1)^m/(m! sqrt(pi)) H_{2m+1}(x)/x
            let m = n / 2;
            let num = hermite_rationals(2 * m + 1).as_slice().to_vec();
            let f = Rational::from((neg_pow(m), Integer::factorial(m as u32).complete()));
            (num, 1usize, f)
        }
        1 => {
            if n < 1 {
                return Err(Error::UnsupportedKernelCase(
                    "K_0^(0,1)(x,0) has no two-term form; kernel_sum covers it".into(),
                ));
            }
            // (-1)^(m-1)/((m-1)! sqrt(pi)) (2x H_{2m} + H_{2m-1})/x^2
            let m = (n + 1) / 2;
            let h2m = hermite_rationals(2 * m);
            let h2m1 = hermite_rationals(2 * m - 1);
            let mut num = vec![Rational::new(); 2 * m + 2];
            for (k, c) in h2m.iter().enumerate() {
                num[k + 1] += (c * 2i64).complete();
            }
            for (k, c) in h2m1.iter().enumerate() {
                num[k] += c;
            }
            let f = Rational::from((neg_pow(m - 1), Integer::factorial(m as u32 - 1).complete()));
            (num, 2, f)
        }
        2 => {
            if n % 2 == 0 {
                return Err(Error::UnsupportedKernelCase(
                    "K_n^(0,2)(x,0) closed form exists for odd n only".into(),
                ));
            }
            // 2(-1)^(m-1)/((m-1)! sqrt(pi)) (2x H_{2m} + (1 - 2m x^2) H_{2m-1})/x^3
            let m = (n + 1) / 2;
            let h2m = hermite_rationals(2 * m);
            let h2m1 = hermite_rationals(2 * m - 1);
            let mut num = vec![Rational::new(); 2 * m + 2];
            for (k, c) in h2m.iter().enumerate() {
                num[k + 1] += (c * 2i64).complete();
            }
            for (k, c) in h2m1.iter().enumerate() {
                num[k] += c;
                num[k + 2] -= (c * (2 * m as i64)).complete();
            }
            let f = Rational::from((
                2 * neg_pow(m - 1),
                Integer::factorial(m as u32 - 1).complete(),
            ));
            (num, 3, f)
        }
        3 => {
            if n % 2 == 1 {
                return Err(Error::UnsupportedKernelCase(
                    "K_n^(0,3)(x,0) closed form exists for even n only".into(),
                ));
            }
            // 2(-1)^m/(m! sqrt(pi)) ((3 - 6m x^2) H_{2m+1}
            //                        - (2m+1)(3 - 2m x^2) x H_{2m)) / x^4
            let m = n / 2;
            let h2m1 = hermite_rationals(2 * m + 1);
            let h2m = hermite_rationals(2 * m);
            let mut num = vec![Rational::new(); 2 * m + 4];
            for (k, c) in h2m1.iter().enumerate() {
                num[k] += (c * 3i64).complete();
                num[k + 2] -= (c * (6 * m as i64)).complete();
            }
            let t = 2 * m as i64 + 1;
            for (k, c) in h2m.iter().enumerate() {
                num[k + 1] -= (c * (3 * t)).complete();
                num[k + 3] += (c * (2 * m as i64 * t)).complete();
            }
            let f = Rational::from((2 * neg_pow(m), Integer::factorial(m as u32).complete()));
            (num, 4, f)
        }
        _ => {
            return Err(Error::UnsupportedKernelCase(format!(
                "kernel_closed_at0 covers j <= 3, got j = {j}"
            )))
        }
    };
    let reduced = shift_exact(&numerator, shift, "kernel_closed_at0 numerator")?;
    let val = eval_rationals(&reduced, &xw);
    let out = &(&val * &Real::from_rational(&factor, wprec)) / &Real::sqrt_pi(wprec);
    Ok(out.to_prec(prec))
}

/// K_n^(0,j)(x, 0) through the Taylor-truncation identity, valid for every
/// j: with P_j the degree-j Taylor section at the origin,
///
/// ```text
/// K_n^(0,j)(x, 0) = j!/||H_n||^2 x^-(j+1)
///                   [P_j(H_n) H_{n+1} - P_j(H_{n+1}) H_n](x)
/// ```
pub fn kernel_taylor_general(n: usize, j: usize, x: &Real) -> Result<Real> {
    if x.is_zero() {
        return Err(Error::Domain("kernel_taylor_general needs x != 0".into()));
    }
    let prec = x.prec();
    let wprec = prec + GUARD_BITS;
    let xw = x.to_prec(wprec);
    let hn = hermite_rationals(n);
    let hn1 = hermite_rationals(n + 1);
    let cut = |cs: &[Rational]| -> Vec<Rational> { cs.iter().take(j + 1).cloned().collect() };
    let mut num = vec![Rational::new(); n + j + 2];
    for (a, ca) in cut(&hn).iter().enumerate() {
        for (b, cb) in hn1.iter().enumerate() {
            num[a + b] += (ca * cb).complete();
        }
    }
    for (a, ca) in cut(&hn1).iter().enumerate() {
        for (b, cb) in hn.iter().enumerate() {
            num[a + b] -= (ca * cb).complete();
        }
    }
    let reduced = shift_exact(&num, j + 1, "kernel_taylor_general numerator")?;
    // j!/||H_n||^2 = j! 2^n / (n! sqrt(pi))
    let factor = Rational::from((
        Integer::factorial(j as u32).complete() << (n as u32),
        Integer::factorial(n as u32).complete(),
    ));
    let val = eval_rationals(&reduced, &xw);
    let out = &(&val * &Real::from_rational(&factor, wprec)) / &Real::sqrt_pi(wprec);
    Ok(out.to_prec(prec))
}

fn pow2(e: i64) -> Rational {
    if e >= 0 {
        Rational::from(Integer::from(1) << (e as u32))
    } else {
        Rational::from((Integer::from(1), Integer::from(1) << ((-e) as u32)))
    }
}

fn fact(n: i64) -> Integer {
    Integer::factorial(n as u32).complete()
}

/// Rational part of K_n^(i,j)(0,0); the full value is this over sqrt(pi).
///
/// Odd i+j vanishes for every n by parity. The even tables cover exactly the
/// indices the constructions consume; everything else is
/// [`Error::UnsupportedKernelCase`] and available through [`kernel_sum`].
pub fn kernel_const_rational(n: usize, i: usize, j: usize) -> Result<Rational> {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    if (i + j) % 2 == 1 {
        return Ok(Rational::new());
    }
    let unsupported = |msg: String| Err(Error::UnsupportedKernelCase(msg));
    match (i, j) {
        (0, 0) => {
            // K_{2m}(0,0) = K_{2m+1}(0,0) = (2m+1)!/(2^{2m} m!^2 sqrt(pi))
            let m = (n / 2) as i64;
            Ok(Rational::from((fact(2 * m + 1), fact(m) * fact(m))) * pow2(-2 * m))
        }
        (1, 1) => {
            if n < 1 {
                return unsupported("K_0^(1,1)(0,0) is 0; kernel_sum covers it".into());
            }
            // (2m+1)!/(3 2^{2m-2} m! (m-1)! sqrt(pi)), n in {2m-1, 2m}
            let m = ((n + 1) / 2) as i64;
            Ok(
                Rational::from((fact(2 * m + 1), Integer::from(3) * fact(m) * fact(m - 1)))
                    * pow2(-2 * m + 2),
            )
        }
        (0, 2) => {
            if n % 2 == 0 || n < 3 {
                return unsupported(format!(
                    "K_n^(0,2)(0,0) table covers odd n >= 3, got n = {n}"
                ));
            }
            // -(2m-1)!/(3 2^{2m-4} (m-1)! (m-2)! sqrt(pi)), n = 2m-1
            let m = ((n + 1) / 2) as i64;
            Ok(
                -Rational::from((fact(2 * m - 1), Integer::from(3) * fact(m - 1) * fact(m - 2)))
                    * pow2(-2 * m + 4),
            )
        }
        (2, 2) => {
            if n % 2 == 0 || n < 3 {
                return unsupported(format!(
                    "K_n^(2,2)(0,0) table covers odd n >= 3, got n = {n}"
                ));
            }
            // (2m-1)!(3m-1)/(15 2^{2m-6} (m-1)! (m-2)! sqrt(pi)), n = 2m-1
            let m = ((n + 1) / 2) as i64;
            Ok(Rational::from((
                fact(2 * m - 1) * Integer::from(3 * m - 1),
                Integer::from(15) * fact(m - 1) * fact(m - 2),
            )) * pow2(-2 * m + 6))
        }
        (1, 3) => {
            if n % 2 == 1 || n < 4 {
                return unsupported(format!(
                    "K_n^(1,3)(0,0) table covers even n >= 4, got n = {n}"
                ));
            }
            // -(2m+1)!/(5 2^{2m-4} m! (m-2)! sqrt(pi)), n = 2m
            let m = (n / 2) as i64;
            Ok(
                -Rational::from((fact(2 * m + 1), Integer::from(5) * fact(m) * fact(m - 2)))
                    * pow2(-2 * m + 4),
            )
        }
        (3, 3) => {
            if n % 2 == 1 || n < 4 {
                return unsupported(format!(
                    "K_n^(3,3)(0,0) table covers even n >= 4, got n = {n}"
                ));
            }
            // (2m+1)!(5m-3)/(35 2^{2m-6} m! (m-2)! sqrt(pi)), n = 2m
            let m = (n / 2) as i64;
            Ok(Rational::from((
                fact(2 * m + 1) * Integer::from(5 * m - 3),
                Integer::from(35) * fact(m) * fact(m - 2),
            )) * pow2(-2 * m + 6))
        }
        _ => unsupported(format!("no origin table for indices ({i},{j})")),
    }
}

/// K_n^(i,j)(0,0) at working precision.
pub fn kernel_const(n: usize, i: usize, j: usize, prec: u32) -> Result<Real> {
    let q = kernel_const_rational(n, i, j)?;
    Ok(&Real::from_rational(&q, prec) / &Real::sqrt_pi(prec))
}

//! Bessel functions of the first kind at rational order, their positive
//! zeros, and the catalogue of scaling-limit functions.
//!
//! Orders stay rational end to end. Gamma factors at integer and
//! half-integer arguments are exact (a rational times sqrt(pi)), so the
//! series coefficients carry no transcendental error beyond the final
//! rounding.

use rug::ops::Pow;
use rug::{Complete, Integer, Rational};

use crate::real::Real;
use crate::{Error, Parity, Result};

const GUARD_BITS: u32 = 64;

/// Gamma(z) when it is exactly rational or rational times sqrt(pi).
/// Returns (factor, has_sqrt_pi). None for other arguments.
pub fn gamma_exact(z: &Rational) -> Option<(Rational, bool)> {
    if z.is_integer() {
        let n = z.numer().clone();
        if n <= 0 {
            return None;
        }
        let n: u32 = n.to_u32()?;
        return Some((Rational::from(Integer::factorial(n - 1).complete()), false));
    }
    if *z.denom() == 2 {
        // Walk to or from Gamma(1/2) = sqrt(pi).
        let half = Rational::from((1, 2));
        let mut factor = Rational::from(1);
        let mut zz = z.clone();
        while zz > half {
            zz -= 1;
            factor *= &zz;
        }
        while zz < half {
            factor /= &zz;
            zz += 1;
        }
        return Some((factor, true));
    }
    None
}

/// Gamma(z) at working precision; exact fast path for rational values that
/// reduce to factorials or half-integer products.
pub fn gamma_real(z: &Rational, prec: u32) -> Real {
    if let Some((factor, has_spi)) = gamma_exact(z) {
        let f = Real::from_rational(&factor, prec);
        if has_spi {
            return &f * &Real::sqrt_pi(prec);
        }
        return f;
    }
    let zf = rug::Float::with_val(prec, z);
    Real::from_float(zf.gamma())
}

/// (x/2)^shift * J_alpha(x) for x >= 0, by the ascending series
///
/// ```text
/// (x/2)^(alpha+shift) sum_m (-1)^m / (m! Gamma(m+alpha+1)) (x/2)^(2m)
/// ```
///
/// Folding the power in keeps the value finite at x = 0 whenever
/// alpha + shift >= 0, which is exactly how the scaling limits use it.
/// The series is truncated once the terms are decreasing and the next one
/// falls below one ulp of the largest term seen.
pub fn bessel_j_scaled(alpha: &Rational, shift: &Rational, x: &Real) -> Real {
    let prec = x.prec();
    assert!(x.sign() >= 0, "bessel series needs x >= 0");
    let wprec = prec + GUARD_BITS;
    let xw = x.to_prec(wprec);
    let expo = (alpha + shift).complete();
    if x.is_zero() {
        let v = if expo == 0 {
            let g = gamma_real(&(alpha + 1i64).complete(), wprec);
            &Real::one(wprec) / &g
        } else if expo > 0 {
            Real::zero(wprec)
        } else {
            panic!("bessel_j_scaled diverges at x = 0 for alpha + shift < 0");
        };
        return v.to_prec(prec);
    }
    let half_x = &xw * &Real::from_rational(&Rational::from((1, 2)), wprec);
    let lead = if expo == 0 {
        Real::one(wprec)
    } else {
        let e = rug::Float::with_val(wprec, &expo);
        Real::from_float(half_x.as_float().clone().pow(&e))
    };
    let g = gamma_real(&(alpha + 1i64).complete(), wprec);
    let mut term = &lead / &g;
    let t2 = &half_x * &half_x;
    let mut sum = term.clone();
    let mut max_term = term.abs();
    let mut prev_mag = term.abs();
    let threshold_shift = -((wprec + 16) as i32);
    for m in 1..10_000i64 {
        // c_m = -c_{m-1} / (m (m + alpha))
        let denom = (alpha + m).complete() * Rational::from(m);
        let step = Rational::from(-1) / denom;
        term = &(&term * &t2) * &Real::from_rational(&step, wprec);
        sum += &term;
        let mag = term.abs();
        if mag > max_term {
            max_term = mag.clone();
        }
        let floor = &max_term * &Real::from_i64(2, wprec).powi(threshold_shift);
        if mag <= floor && mag <= prev_mag {
            return sum.to_prec(prec);
        }
        prev_mag = mag;
    }
    panic!("bessel series did not converge within 10000 terms");
}

/// J_alpha(x) for x >= 0.
pub fn bessel_j(alpha: &Rational, x: &Real) -> Real {
    bessel_j_scaled(alpha, &Rational::new(), x)
}

fn bessel_j_derivative(alpha: &Rational, x: &Real) -> Real {
    // J_alpha' = (J_{alpha-1} - J_{alpha+1}) / 2
    let lo = bessel_j(&(alpha - 1i64).complete(), x);
    let hi = bessel_j(&(alpha + 1i64).complete(), x);
    &(&lo - &hi) * &Real::from_rational(&Rational::from((1, 2)), x.prec())
}

/// k-th positive zero of J_alpha, for alpha >= -1/2 and k >= 1.
///
/// Consecutive zeros in this order range are separated by at least about
/// pi, so a half-unit sign scan cannot skip one. The returned value is
/// Newton-polished and certified by a final sign change across a bracket of
/// relative width 2^-(prec-32).
pub fn bessel_zero(alpha: &Rational, k: usize, prec: u32) -> Result<Real> {
    if *alpha < Rational::from((-1, 2)) {
        return Err(Error::Domain(format!(
            "bessel_zero supports alpha >= -1/2, got {alpha}"
        )));
    }
    if k == 0 {
        return Err(Error::InvalidArgument("zero index k starts at 1".into()));
    }
    let wprec = prec + GUARD_BITS;
    let step = Real::from_rational(&Rational::from((1, 2)), wprec);
    let mut lo = Real::zero(wprec);
    let mut hi = step.clone();
    let mut sign_lo = 0;
    let mut crossings = 0usize;
    let mut found = None;
    for _ in 0..100_000 {
        let sign_hi = bessel_j(alpha, &hi).sign();
        if sign_lo != 0 && sign_hi != 0 && sign_lo != sign_hi {
            crossings += 1;
            if crossings == k {
                found = Some((lo.clone(), hi.clone()));
                break;
            }
        }
        if sign_hi != 0 {
            sign_lo = sign_hi;
            lo = hi.clone();
        }
        hi = &hi + &step;
    }
    let (mut lo, mut hi) = found.ok_or_else(|| {
        Error::BracketSearch(format!("no {k}-th zero of J_{alpha} within scan budget"))
    })?;
    let mut flo = bessel_j(alpha, &lo);
    for _ in 0..30 {
        let mid = &(&lo + &hi) * &Real::from_rational(&Rational::from((1, 2)), wprec);
        let fmid = bessel_j(alpha, &mid);
        if fmid.sign() == 0 {
            lo = mid.clone();
            hi = mid;
            break;
        }
        if fmid.sign() == flo.sign() {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    let mut z = &(&lo + &hi) * &Real::from_rational(&Rational::from((1, 2)), wprec);
    for _ in 0..60 {
        let f = bessel_j(alpha, &z);
        if f.is_zero() {
            break;
        }
        let d = bessel_j_derivative(alpha, &z);
        let next = &z - &(&f / &d);
        if next < lo || next > hi {
            break;
        }
        let move_size = (&next - &z).abs();
        z = next;
        let tol = &z.abs() * &Real::from_i64(2, wprec).powi(-(wprec as i32) + 8);
        if move_size < tol {
            break;
        }
    }
    // Certify: strict sign change across [z - delta, z + delta].
    let delta = &z.abs() * &Real::from_i64(2, wprec).powi(-(prec as i32) + 32);
    let left = bessel_j(alpha, &(&z - &delta));
    let right = bessel_j(alpha, &(&z + &delta));
    if left.sign() * right.sign() >= 0 {
        return Err(Error::CertificationViolation(format!(
            "no sign change around computed zero {k} of J_{alpha}"
        )));
    }
    Ok(z.to_prec(prec))
}

/// Identifier for the function a scaled polynomial family approaches.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub enum LimitFunctionId {
    /// (x/2)^(1/2) J_(-1/2)(x), the bare even family.
    HermiteEven,
    /// (x/2)^(1/2) J_(1/2)(x), the bare odd family.
    HermiteOdd,
    /// -(x/2)^(1/2) J_(3/2)(x): even with an active function mass.
    EvenMass,
    /// -(x/2)^(1/2) J_(5/2)(x): odd with an active first-derivative mass.
    OddMass,
    /// (x/2)^(1/2) J_(7/2)(x): even with both diagonal masses active.
    EvenBoth,
    /// (x/2)^(1/2) J_(9/2)(x): odd with both diagonal masses active.
    OddBoth,
    /// (x/2)^(1/2) (2/3 J_(7/2) - J_(3/2) - 2/3 J_(-1/2)): even, second
    /// derivative mass only.
    EvenGap,
    /// (x/2)^(1/2) (2/5 J_(9/2) - J_(5/2) - 2/5 J_(1/2)): odd, third
    /// derivative mass only.
    OddGap,
    /// (-1)^r (x/2)^(1/2) J_(2r -+ 1/2): the predicted limit when all 2r
    /// derivative masses through order 2r - 1 are positive.
    Conjecture { r: u32, parity: Parity },
}

impl LimitFunctionId {
    pub fn label(&self) -> String {
        match self {
            LimitFunctionId::HermiteEven => "(x/2)^(1/2) J(-1/2)".into(),
            LimitFunctionId::HermiteOdd => "(x/2)^(1/2) J(1/2)".into(),
            LimitFunctionId::EvenMass => "-(x/2)^(1/2) J(3/2)".into(),
            LimitFunctionId::OddMass => "-(x/2)^(1/2) J(5/2)".into(),
            LimitFunctionId::EvenBoth => "(x/2)^(1/2) J(7/2)".into(),
            LimitFunctionId::OddBoth => "(x/2)^(1/2) J(9/2)".into(),
            LimitFunctionId::EvenGap => {
                "(x/2)^(1/2) (2/3 J(7/2) - J(3/2) - 2/3 J(-1/2))".into()
            }
            LimitFunctionId::OddGap => {
                "(x/2)^(1/2) (2/5 J(9/2) - J(5/2) - 2/5 J(1/2))".into()
            }
            LimitFunctionId::Conjecture { r, parity } => {
                let base = match parity {
                    Parity::Even => -1i64,
                    Parity::Odd => 1i64,
                };
                let order = 4 * i64::from(*r) + base;
                let sign = if r % 2 == 0 { "" } else { "-" };
                format!("{sign}(x/2)^(1/2) J({order}/2)")
            }
        }
    }
}

fn half(num: i64) -> Rational {
    Rational::from((num, 2))
}

/// Evaluates the limit function at x >= 0.
pub fn limit_function(id: &LimitFunctionId, x: &Real) -> Real {
    let prec = x.prec();
    let shift = half(1);
    let single = |order: Rational, negate: bool| {
        let v = bessel_j_scaled(&order, &shift, x);
        if negate { -v } else { v }
    };
    match id {
        LimitFunctionId::HermiteEven => single(half(-1), false),
        LimitFunctionId::HermiteOdd => single(half(1), false),
        LimitFunctionId::EvenMass => single(half(3), true),
        LimitFunctionId::OddMass => single(half(5), true),
        LimitFunctionId::EvenBoth => single(half(7), false),
        LimitFunctionId::OddBoth => single(half(9), false),
        LimitFunctionId::EvenGap => {
            let third = Real::from_rational(&Rational::from((2, 3)), prec);
            let a = single(half(7), false);
            let b = single(half(3), false);
            let c = single(half(-1), false);
            &(&(&third * &a) - &b) - &(&third * &c)
        }
        LimitFunctionId::OddGap => {
            let fifth = Real::from_rational(&Rational::from((2, 5)), prec);
            let a = single(half(9), false);
            let b = single(half(5), false);
            let c = single(half(1), false);
            &(&(&fifth * &a) - &b) - &(&fifth * &c)
        }
        LimitFunctionId::Conjecture { r, parity } => {
            let base = match parity {
                Parity::Even => -1i64,
                Parity::Odd => 1i64,
            };
            single(half(4 * i64::from(*r) + base), r % 2 == 1)
        }
    }
}

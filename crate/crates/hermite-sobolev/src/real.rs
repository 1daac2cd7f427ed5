//! Extended-precision real scalars.
//!
//! Every numeric quantity in this crate flows through [`Real`], a thin wrapper
//! around an MPFR float that carries its own precision in bits. Arithmetic is
//! correctly rounded at that precision. Mixing operands of different precision
//! is a programming error and panics; conversions are always explicit via
//! [`Real::to_prec`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use rug::float::Constant;
use rug::ops::{CompleteRound, Pow};
use rug::{Float, Integer, Rational};

/// Default working precision in bits when a caller does not choose one.
pub const DEFAULT_PREC: u32 = 256;

/// Extended-precision real scalar with explicit precision.
#[derive(Clone, Debug, PartialEq, PartialOrd)]
pub struct Real(Float);

#[inline]
fn check_prec(a: &Real, b: &Real) {
    assert_eq!(
        a.prec(),
        b.prec(),
        "mixed precisions in Real arithmetic: {} vs {}",
        a.prec(),
        b.prec()
    );
}

impl Real {
    /// Wraps an existing float.
    pub fn from_float(f: Float) -> Self {
        Real(f)
    }

    pub fn zero(prec: u32) -> Self {
        Real(Float::with_val(prec, 0))
    }

    pub fn one(prec: u32) -> Self {
        Real(Float::with_val(prec, 1))
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        Real(Float::with_val(prec, v))
    }

    pub fn from_f64(v: f64, prec: u32) -> Self {
        Real(Float::with_val(prec, v))
    }

    pub fn from_integer(v: &Integer, prec: u32) -> Self {
        Real(Float::with_val(prec, v))
    }

    /// Rounds a rational to the working precision (one rounding).
    pub fn from_rational(v: &Rational, prec: u32) -> Self {
        Real(Float::with_val(prec, v))
    }

    pub fn pi(prec: u32) -> Self {
        Real(Float::with_val(prec, Constant::Pi))
    }

    /// The constant sqrt(pi) at working precision.
    pub fn sqrt_pi(prec: u32) -> Self {
        Real(Float::with_val(prec, Constant::Pi).sqrt())
    }

    pub fn prec(&self) -> u32 {
        self.0.prec()
    }

    /// Rounds (or pads) to a new precision. The only sanctioned way to move a
    /// value between pipelines of different precision.
    pub fn to_prec(&self, prec: u32) -> Real {
        Real(Float::with_val(prec, &self.0))
    }

    pub fn as_float(&self) -> &Float {
        &self.0
    }

    pub fn into_float(self) -> Float {
        self.0
    }

    pub fn abs(&self) -> Real {
        Real(self.0.clone().abs())
    }

    pub fn sqrt(&self) -> Real {
        Real(self.0.clone().sqrt())
    }

    /// Integer power by binary exponentiation inside MPFR.
    pub fn powi(&self, e: i32) -> Real {
        Real(rug::ops::Pow::pow(self.0.clone(), e))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.0.is_finite()
    }

    /// -1, 0, or +1. Panics on NaN; NaN never legitimately appears.
    pub fn sign(&self) -> i32 {
        match self.0.cmp0() {
            Some(Ordering::Less) => -1,
            Some(Ordering::Equal) => 0,
            Some(Ordering::Greater) => 1,
            None => panic!("sign of NaN"),
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    pub fn min(&self, other: &Real) -> Real {
        check_prec(self, other);
        if self.0 <= other.0 {
            self.clone()
        } else {
            other.clone()
        }
    }

    pub fn max(&self, other: &Real) -> Real {
        check_prec(self, other);
        if self.0 >= other.0 {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// |self - other| / max(1, |other|), the relative error used by oracle
    /// comparisons throughout the test suites.
    pub fn rel_err(&self, other: &Real) -> Real {
        check_prec(self, other);
        let diff = (self - other).abs();
        let scale = other.abs().max(&Real::one(self.prec()));
        &diff / &scale
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait<&Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                check_prec(self, rhs);
                Real(Float::with_val(self.prec(), &self.0 $op &rhs.0))
            }
        }
        impl $trait<Real> for Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Real> for Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                (&self).$method(rhs)
            }
        }
        impl $trait<Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);
binop!(Div, div, /);

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real((-&self.0).complete(self.prec()))
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(-self.0)
    }
}

impl AddAssign<&Real> for Real {
    fn add_assign(&mut self, rhs: &Real) {
        check_prec(self, rhs);
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Real> for Real {
    fn sub_assign(&mut self, rhs: &Real) {
        check_prec(self, rhs);
        self.0 -= &rhs.0;
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// Serializes with 40 significant digits, the fixed width used by every CSV
/// and JSON record so that identical runs emit identical bytes.
pub fn fmt40(v: &Real) -> String {
    format!("{:.40e}", v.as_float())
}

/// Parses a decimal or fraction literal into an exact rational.
/// Accepts forms like "2", "-0.125", "1/3".
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: Integer = num.trim().parse().ok()?;
        let d: Integer = den.trim().parse().ok()?;
        if d == 0 {
            return None;
        }
        return Some(Rational::from((n, d)));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let neg = int_part.trim_start().starts_with('-');
        let i: Integer = if int_part.is_empty() || int_part == "-" {
            Integer::new()
        } else {
            int_part.parse().ok()?
        };
        if frac_part.is_empty() {
            return Some(Rational::from(i));
        }
        let f: Integer = frac_part.parse().ok()?;
        if f < 0 {
            return None;
        }
        let scale = Integer::from(10).pow(frac_part.len() as u32);
        let frac = Rational::from((f, scale));
        let whole = Rational::from(i);
        return Some(if neg { whole - frac } else { whole + frac });
    }
    let n: Integer = s.parse().ok()?;
    Some(Rational::from(n))
}

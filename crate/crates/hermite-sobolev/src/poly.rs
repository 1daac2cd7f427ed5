//! Dense univariate polynomials over [`Real`].
//!
//! Coefficients are stored in ascending degree order and all share one
//! precision. Trailing zeros are kept as given: the families built here are
//! monic by construction, so the leading coefficient is meaningful.

use rug::Rational;

use crate::real::Real;

#[derive(Clone, Debug, PartialEq)]
pub struct Poly {
    coeffs: Vec<Real>,
}

impl Poly {
    /// Builds from ascending coefficients. Panics on an empty vector or on
    /// mixed precisions.
    pub fn new(coeffs: Vec<Real>) -> Self {
        assert!(!coeffs.is_empty(), "polynomial needs at least one coefficient");
        let p = coeffs[0].prec();
        for c in &coeffs {
            assert_eq!(c.prec(), p, "mixed precisions in Poly");
        }
        Poly { coeffs }
    }

    /// Rounds exact rational coefficients to the working precision.
    pub fn from_rationals(cs: &[Rational], prec: u32) -> Self {
        assert!(!cs.is_empty());
        Poly {
            coeffs: cs.iter().map(|c| Real::from_rational(c, prec)).collect(),
        }
    }

    pub fn constant(v: Real) -> Self {
        Poly { coeffs: vec![v] }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn prec(&self) -> u32 {
        self.coeffs[0].prec()
    }

    pub fn coeff(&self, k: usize) -> &Real {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Real] {
        &self.coeffs
    }

    pub fn to_prec(&self, prec: u32) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| c.to_prec(prec)).collect(),
        }
    }

    /// Horner evaluation at working precision.
    pub fn eval(&self, x: &Real) -> Real {
        assert_eq!(x.prec(), self.prec(), "eval precision mismatch");
        let mut acc = self.coeffs.last().unwrap().clone();
        for c in self.coeffs.iter().rev().skip(1) {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Evaluates the companion polynomial with every coefficient replaced by
    /// its absolute value. The ratio eval_abs/|eval| measures how much
    /// cancellation Horner suffers at x; it drives precision escalation in
    /// the zero finder.
    pub fn eval_abs(&self, x: &Real) -> Real {
        let ax = x.abs();
        let mut acc = self.coeffs.last().unwrap().abs();
        for c in self.coeffs.iter().rev().skip(1) {
            acc = &(&acc * &ax) + &c.abs();
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        let prec = self.prec();
        if self.coeffs.len() == 1 {
            return Poly::constant(Real::zero(prec));
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * Real::from_i64(k as i64, prec))
            .collect();
        Poly { coeffs }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let prec = self.prec();
        assert_eq!(prec, other.prec());
        let mut out = vec![Real::zero(prec); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Poly { coeffs: out }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let prec = self.prec();
        assert_eq!(prec, other.prec());
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Real::zero(prec);
        let coeffs = (0..n)
            .map(|k| {
                let a = self.coeffs.get(k).unwrap_or(&zero);
                let b = other.coeffs.get(k).unwrap_or(&zero);
                a - b
            })
            .collect();
        Poly { coeffs }
    }

    pub fn scale(&self, s: &Real) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Largest |coefficient| on the parity opposite to the leading degree.
    /// Exactly zero for the symmetric families; nonzero off-diagonal mass
    /// couplings show up here.
    pub fn symmetry_defect(&self) -> Real {
        let prec = self.prec();
        let lead_parity = self.degree() % 2;
        let mut worst = Real::zero(prec);
        for (k, c) in self.coeffs.iter().enumerate() {
            if k % 2 != lead_parity {
                worst = worst.max(&c.abs());
            }
        }
        worst
    }

    /// Largest |coefficient|.
    pub fn coeff_norm(&self) -> Real {
        let mut worst = Real::zero(self.prec());
        for c in &self.coeffs {
            worst = worst.max(&c.abs());
        }
        worst
    }
}

/// Free-function alias for Horner evaluation; the natural entry point when a
/// caller holds the polynomial and point separately.
pub fn eval_poly(p: &Poly, x: &Real) -> Real {
    p.eval(x)
}

/// Substitutes x^2 into p: returns p(x^2) as a polynomial in x.
pub fn compose_square(p: &Poly) -> Poly {
    let prec = p.prec();
    let mut coeffs = vec![Real::zero(prec); 2 * p.degree() + 1];
    for (k, c) in p.coeffs().iter().enumerate() {
        coeffs[2 * k] = c.clone();
    }
    Poly::new(coeffs)
}

/// Returns x * p(x^2).
pub fn compose_square_times_x(p: &Poly) -> Poly {
    let prec = p.prec();
    let mut coeffs = vec![Real::zero(prec); 2 * p.degree() + 2];
    for (k, c) in p.coeffs().iter().enumerate() {
        coeffs[2 * k + 1] = c.clone();
    }
    Poly::new(coeffs)
}

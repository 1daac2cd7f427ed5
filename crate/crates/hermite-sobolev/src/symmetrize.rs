//! Folding the symmetric line families onto the half-line.
//!
//! A symmetric polynomial of degree 2n is a polynomial in x^2; one of degree
//! 2n+1 is x times a polynomial in x^2. Substituting t = x^2 carries the
//! line weight e^{-x^2} to t^{-1/2} e^{-t} on even degrees and t^{1/2} e^{-t}
//! on odd ones, and carries a derivative mass at the origin of the line to a
//! rescaled derivative mass at the origin of the half-line. This module
//! implements that mass rescaling and checks the induced identities
//!
//!   S_{2n}(x) = L_n(x^2)   and   S_{2n+1}(x) = x L_n(x^2)
//!
//! coefficient by coefficient. A positive constant multiple of an inner
//! product leaves monic orthogonal polynomials unchanged (the normal
//! equations scale uniformly), so no further weight normalization enters.

use rug::Rational;

use crate::gram::{gram_orthogonalize, MassMatrix, SobolevProduct, WeightSpec};
use crate::poly::{compose_square, compose_square_times_x, Poly};
use crate::real::Real;
use crate::{Error, Result};

/// Rising factorial a (a+1) ... (a+k-1), with the empty product 1.
pub fn pochhammer(a: &Rational, k: u32) -> Rational {
    let mut acc = Rational::from(1);
    let mut term = a.clone();
    for _ in 0..k {
        acc *= &term;
        term += 1;
    }
    acc
}

/// Splits 2r line masses (on derivatives 0..2r-1 at the origin) into the r
/// even-derivative and r odd-derivative masses of the two half-line
/// families. The i-th half-line derivative of f(x^2) at 0 is (i+1)_i times
/// the i-th coefficient block, so the mass picks up the square of that
/// factor:
///
///   N_{2i} = ((i+1)_i)^2 M_{2i},   N_{2i+1} = ((i+1)_{i+1})^2 M_{2i+1}.
pub fn mass_map(masses: &[Rational]) -> Result<(Vec<Rational>, Vec<Rational>)> {
    if masses.is_empty() || masses.len() % 2 != 0 {
        return Err(Error::InvalidArgument(format!(
            "mass_map takes 2r masses, got {}",
            masses.len()
        )));
    }
    let r = masses.len() / 2;
    let mut even = Vec::with_capacity(r);
    let mut odd = Vec::with_capacity(r);
    for i in 0..r {
        let base = Rational::from(i as u64 + 1);
        let pe = pochhammer(&base, i as u32);
        let po = pochhammer(&base, i as u32 + 1);
        even.push(Rational::from(&pe * &pe) * &masses[2 * i]);
        odd.push(Rational::from(&po * &po) * &masses[2 * i + 1]);
    }
    Ok((even, odd))
}

/// Monic orthogonal polynomial for t^alpha e^{-t} on the half-line plus
/// diagonal derivative masses at t = 0.
pub fn laguerre_sobolev_poly(
    alpha: &Rational,
    masses: &[Rational],
    n: usize,
    prec: u32,
) -> Result<Poly> {
    let a = MassMatrix::diagonal(masses);
    let p = SobolevProduct::new(
        WeightSpec::LaguerreHalfLine {
            alpha: alpha.clone(),
        },
        a,
    )?;
    gram_orthogonalize(&p, n, prec)
}

/// Monic orthogonal polynomial for the line weight plus diagonal derivative
/// masses at the origin (2r of them for the four-mass family and beyond).
pub fn s_poly(masses: &[Rational], n: usize, prec: u32) -> Result<Poly> {
    let a = MassMatrix::diagonal(masses);
    let p = SobolevProduct::new(WeightSpec::HermiteLine, a)?;
    gram_orthogonalize(&p, n, prec)
}

fn half(n: i64) -> Rational {
    Rational::from((n, 2))
}

/// Max absolute coefficient of S_n(x) minus its half-line counterpart
/// composed with x^2. Zero in exact arithmetic; here bounded by the solver
/// rounding on each side.
pub fn symmetrization_residual(masses: &[Rational], n: usize, prec: u32) -> Result<Real> {
    let (even_masses, odd_masses) = mass_map(masses)?;
    let s = s_poly(masses, n, prec)?;
    let m = n / 2;
    let folded = if n % 2 == 0 {
        let l = laguerre_sobolev_poly(&half(-1), &even_masses, m, prec)?;
        compose_square(&l)
    } else {
        let l = laguerre_sobolev_poly(&half(1), &odd_masses, m, prec)?;
        compose_square_times_x(&l)
    };
    Ok(s.sub(&folded).coeff_norm())
}

//! Exact arithmetic for the line weight: values in Q adjoined sqrt(pi).
//!
//! Inner products of rational-coefficient polynomials under the line weight
//! live in Q + Q sqrt(pi). Solving the normal equations exactly requires
//! quotients, which leave that set, so the solver works in the polynomial
//! ring Q[t] with t standing for sqrt(pi): every Cramer determinant is a
//! polynomial in t computed fraction-free, and the quotient is evaluated at
//! t = sqrt(pi) only at the end. Nothing here rounds until materialization.

use rug::{Complete, Integer, Rational};

use crate::gram::MassMatrix;
use crate::poly::Poly;
use crate::real::Real;
use crate::{Error, Result};

/// Polynomial in t (= sqrt(pi)) with exact rational coefficients, ascending.
pub type QtPoly = Vec<Rational>;

fn qt_trim(mut v: QtPoly) -> QtPoly {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    v
}

pub fn qt_is_zero(a: &QtPoly) -> bool {
    a.iter().all(|c| *c == 0)
}

fn qt_mul(a: &QtPoly, b: &QtPoly) -> QtPoly {
    let mut out = vec![Rational::new(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if *ca == 0 {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            if *cb != 0 {
                out[i + j] += (ca * cb).complete();
            }
        }
    }
    qt_trim(out)
}

fn qt_sub(a: &QtPoly, b: &QtPoly) -> QtPoly {
    let mut out = vec![Rational::new(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    qt_trim(out)
}

/// Exact polynomial division; panics if the division leaves a remainder,
/// which would mean the fraction-free elimination lost its invariant.
fn qt_div_exact(num: &QtPoly, den: &QtPoly) -> QtPoly {
    assert!(!qt_is_zero(den), "exact division by zero polynomial");
    let mut rem = num.clone();
    let ddeg = den.len() - 1;
    let dlead = den.last().unwrap();
    if qt_is_zero(&rem) {
        return vec![Rational::new()];
    }
    let ndeg = rem.len() - 1;
    if ndeg < ddeg {
        panic!("exact division underflow: degree {ndeg} by degree {ddeg}");
    }
    let mut quot = vec![Rational::new(); ndeg - ddeg + 1];
    for k in (0..quot.len()).rev() {
        let lead = rem[k + ddeg].clone();
        if lead == 0 {
            continue;
        }
        let q = lead / dlead.clone();
        for (i, c) in den.iter().enumerate() {
            rem[k + i] -= (&q * c).complete();
        }
        quot[k] = q;
    }
    assert!(qt_is_zero(&rem), "inexact division in fraction-free elimination");
    qt_trim(quot)
}

/// Evaluates at t = sqrt(pi), one rounding per power.
pub fn qt_eval(a: &QtPoly, prec: u32) -> Real {
    let spi = Real::sqrt_pi(prec);
    let mut acc = Real::from_rational(a.last().unwrap(), prec);
    for c in a.iter().rev().skip(1) {
        acc = &(&acc * &spi) + &Real::from_rational(c, prec);
    }
    acc
}

/// Fraction-free determinant of a matrix with entries in Q[t].
fn bareiss_det(mut m: Vec<Vec<QtPoly>>) -> QtPoly {
    let n = m.len();
    if n == 0 {
        return vec![Rational::from(1)];
    }
    let mut prev: QtPoly = vec![Rational::from(1)];
    let mut sign = 1i32;
    for k in 0..(n - 1) {
        if qt_is_zero(&m[k][k]) {
            // Pivot by row swap; determinant flips sign.
            let swap = ((k + 1)..n).find(|&r| !qt_is_zero(&m[r][k]));
            match swap {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return vec![Rational::new()],
            }
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let t = qt_sub(&qt_mul(&m[k][k], &m[i][j]), &qt_mul(&m[i][k], &m[k][j]));
                m[i][j] = qt_div_exact(&t, &prev);
            }
        }
        prev = m[k][k].clone();
    }
    let mut det = m[n - 1][n - 1].clone();
    if sign < 0 {
        for c in det.iter_mut() {
            *c = -c.clone();
        }
    }
    det
}

/// Rational factor of the even line moment: the integral of x^k e^{-x^2}
/// over the line is factor * sqrt(pi); zero factor for odd k.
fn line_moment_rational(k: usize) -> Rational {
    if k % 2 == 1 {
        return Rational::new();
    }
    let m = (k / 2) as u32;
    let num = Integer::factorial(2 * m).complete();
    let den = Integer::factorial(m).complete() << (2 * m);
    Rational::from((num, den))
}

/// Exact line-weight Sobolev inner product of rational polynomials:
/// returns (r, s) with value r + s sqrt(pi).
pub fn inner_exact_hermite(f: &[Rational], g: &[Rational], a: &MassMatrix) -> (Rational, Rational) {
    let mut s_part = Rational::new();
    for (i, ci) in f.iter().enumerate() {
        if *ci == 0 {
            continue;
        }
        for (j, cj) in g.iter().enumerate() {
            if *cj == 0 {
                continue;
            }
            let mu = line_moment_rational(i + j);
            if mu != 0 {
                s_part += (ci * cj).complete() * mu;
            }
        }
    }
    let mut r_part = Rational::new();
    let sz = a.size();
    for i in 0..sz.min(f.len()) {
        for j in 0..sz.min(g.len()) {
            let m = a.entry(i, j);
            if *m == 0 || f[i] == 0 || g[j] == 0 {
                continue;
            }
            let fac = Integer::factorial(i as u32).complete() * Integer::factorial(j as u32).complete();
            r_part += Rational::from(fac) * m * (&f[i] * &g[j]).complete();
        }
    }
    (r_part, s_part)
}

/// Monic orthogonal polynomial with coefficients represented exactly as
/// quotients of determinants in Q[t].
pub struct ExactPoly {
    /// Numerator determinant for each coefficient 0..n-1.
    pub coeff_dets: Vec<QtPoly>,
    /// Common denominator determinant.
    pub det: QtPoly,
    pub degree: usize,
}

impl ExactPoly {
    /// Rounds the exact coefficients to working precision; the leading
    /// coefficient is exactly one.
    pub fn materialize(&self, prec: u32) -> Poly {
        let wprec = prec + 64;
        let den = qt_eval(&self.det, wprec);
        let mut coeffs: Vec<Real> = self
            .coeff_dets
            .iter()
            .map(|d| (&qt_eval(d, wprec) / &den).to_prec(prec))
            .collect();
        coeffs.push(Real::one(prec));
        Poly::new(coeffs)
    }
}

fn normal_matrix(a: &MassMatrix, n: usize) -> (Vec<Vec<QtPoly>>, Vec<QtPoly>) {
    let entry = |j: usize, k: usize| -> QtPoly {
        let mut mono_j = vec![Rational::new(); j + 1];
        mono_j[j] = Rational::from(1);
        let mut mono_k = vec![Rational::new(); k + 1];
        mono_k[k] = Rational::from(1);
        let (r, s) = inner_exact_hermite(&mono_j, &mono_k, a);
        qt_trim(vec![r, s])
    };
    let g = (0..n)
        .map(|j| (0..n).map(|k| entry(j, k)).collect())
        .collect();
    let b = (0..n)
        .map(|j| {
            let mut e = entry(j, n);
            for c in e.iter_mut() {
                *c = -c.clone();
            }
            e
        })
        .collect();
    (g, b)
}

/// Solves the normal equations over Q[t] by Cramer determinants. Exact and
/// deliberately small-scale: meant for degrees where an independent,
/// rounding-free answer is worth cubic determinant work.
pub fn exact_orthogonalize(a: &MassMatrix, n: usize) -> Result<ExactPoly> {
    if n == 0 {
        return Ok(ExactPoly {
            coeff_dets: vec![],
            det: vec![Rational::from(1)],
            degree: 0,
        });
    }
    let (g, b) = normal_matrix(a, n);
    let det = bareiss_det(g.clone());
    if qt_is_zero(&det) {
        return Err(Error::InternalConsistency(
            "singular exact normal matrix".into(),
        ));
    }
    let mut coeff_dets = Vec::with_capacity(n);
    for k in 0..n {
        let mut gk = g.clone();
        for (row, rhs) in gk.iter_mut().zip(b.iter()) {
            row[k] = rhs.clone();
        }
        coeff_dets.push(bareiss_det(gk));
    }
    // The solve must satisfy G c = b identically in t, not merely at
    // t = sqrt(pi); verify row by row.
    for j in 0..n {
        let mut residual = qt_mul(&b[j], &det);
        for k in 0..n {
            residual = qt_sub(&residual, &qt_mul(&g[j][k], &coeff_dets[k]));
        }
        if !qt_is_zero(&residual) {
            return Err(Error::InternalConsistency(format!(
                "exact Cramer residual nonzero in row {j}"
            )));
        }
    }
    Ok(ExactPoly {
        coeff_dets,
        det,
        degree: n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gram::{gram_orthogonalize, sobolev_inner, SobolevProduct};

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn unit_polynomials_with_function_mass() {
        // (1, 1) under integral + f(0)g(0): mass part 1, integral sqrt(pi).
        let a = MassMatrix::diagonal(&[q(1, 1), q(0, 1)]);
        let one = [Rational::from(1)];
        let (r, s) = inner_exact_hermite(&one, &one, &a);
        assert_eq!(r, 1);
        assert_eq!(s, 1);
    }

    #[test]
    fn exact_inner_matches_float_inner() {
        let prec = 256;
        let a = MassMatrix::diagonal(&[q(2, 3), q(1, 5), q(7, 2)]);
        let p = SobolevProduct::new(crate::gram::WeightSpec::HermiteLine, a.clone()).unwrap();
        let f = [q(1, 2), q(-3, 1), q(0, 1), q(2, 7)];
        let g = [q(5, 1), q(1, 3), q(-1, 4)];
        let (r, s) = inner_exact_hermite(&f, &g, &a);
        let exact = &Real::from_rational(&r, prec)
            + &(&Real::from_rational(&s, prec) * &Real::sqrt_pi(prec));
        let ff = Poly::from_rationals(&f, prec);
        let gg = Poly::from_rationals(&g, prec);
        let float = sobolev_inner(&p, &ff, &gg);
        let err = (&exact - &float).abs().to_f64();
        assert!(err < 1e-70, "err {err:e}");
    }

    #[test]
    fn division_in_t_is_why_this_module_exists() {
        // The degree-2 polynomial under a unit function mass has constant
        // term -sqrt(pi)/(2(sqrt(pi)+1)), which is not of the form
        // r + s sqrt(pi) with rational r, s. The determinant pair captures
        // it exactly: numerator -t/2... times its denominator det.
        let a = MassMatrix::diagonal(&[q(1, 1), q(0, 1)]);
        let ep = exact_orthogonalize(&a, 2).unwrap();
        let prec = 320;
        let spi = Real::sqrt_pi(prec);
        let expect =
            -(&spi / &(&Real::from_i64(2, prec) * &(&spi + &Real::one(prec))));
        let got = &qt_eval(&ep.coeff_dets[0], prec) / &qt_eval(&ep.det, prec);
        let err = (&got - &expect).abs().to_f64();
        assert!(err < 1e-85, "err {err:e}");
        // Odd coefficient vanishes identically in t.
        assert!(qt_is_zero(&ep.coeff_dets[1]));
    }

    #[test]
    fn matches_gram_solver_across_masses() {
        let prec = 256;
        let cases: Vec<Vec<Rational>> = vec![
            vec![q(1, 1), q(0, 1)],
            vec![q(0, 1), q(1, 1)],
            vec![q(1, 1), q(1, 1)],
            vec![q(1, 3), q(2, 5), q(1, 7)],
        ];
        for ms in &cases {
            let a = MassMatrix::diagonal(ms);
            let p = SobolevProduct::new(crate::gram::WeightSpec::HermiteLine, a.clone()).unwrap();
            for n in 1..=8usize {
                let ep = exact_orthogonalize(&a, n).unwrap().materialize(prec);
                let gp = gram_orthogonalize(&p, n, prec).unwrap();
                for k in 0..=n {
                    let err = (ep.coeff(k) - gp.coeff(k)).abs().to_f64();
                    assert!(err < 1e-70, "masses {ms:?} n={n} k={k}: err {err:e}");
                }
            }
        }
    }

    #[test]
    fn off_diagonal_coupling_matches_gram_solver() {
        let prec = 256;
        // [[2, 1], [1, 1]] is positive definite.
        let a = MassMatrix::new(vec![
            vec![q(2, 1), q(1, 1)],
            vec![q(1, 1), q(1, 1)],
        ])
        .unwrap();
        let p = SobolevProduct::new(crate::gram::WeightSpec::HermiteLine, a.clone()).unwrap();
        for n in 1..=8usize {
            let ep = exact_orthogonalize(&a, n).unwrap().materialize(prec);
            let gp = gram_orthogonalize(&p, n, prec).unwrap();
            for k in 0..=n {
                let err = (ep.coeff(k) - gp.coeff(k)).abs().to_f64();
                assert!(err < 1e-70, "n={n} k={k}: err {err:e}");
            }
        }
    }

    #[test]
    fn bareiss_handles_checkerboard_zeros() {
        // Diagonal masses give normal matrices with alternating zero
        // entries; determinants must still come out fraction-free.
        let a = MassMatrix::diagonal(&[q(1, 1), q(1, 1)]);
        let (g, _) = normal_matrix(&a, 6);
        let det = bareiss_det(g);
        assert!(!qt_is_zero(&det));
        // The determinant of a positive definite matrix is positive at
        // t = sqrt(pi).
        assert!(qt_eval(&det, 192).sign() > 0);
    }
}

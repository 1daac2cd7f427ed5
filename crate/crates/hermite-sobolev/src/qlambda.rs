//! Orthogonal polynomials for the line weight plus a 2x2 point-mass block
//! at the origin acting on (f(0), f'(0)).
//!
//! For degrees two and up the polynomials come out of a closed form: the
//! classical polynomial of the same degree minus two kernel-shaped
//! corrections whose coefficients are explicit rationals divided by a
//! determinant-like normalizer. The corrections are built from exact
//! rational numerators with the x and x^2 divisions performed on the
//! coefficient arrays, so the only rounding anywhere is the final one.

use rug::{Complete, Integer, Rational};

use crate::gram::{gram_orthogonalize, MassMatrix, SobolevProduct, WeightSpec};
use crate::hermite::{hermite_at_zero_rational, hermite_monic, hermite_rationals};
use crate::kernels::{kernel_const_rational, shift_exact};
use crate::poly::Poly;
use crate::real::Real;
use crate::{Error, Result};

const GUARD_BITS: u32 = 64;

/// Mass block [[m0, lambda], [lambda, m1]] applied to (f(0), f'(0)).
/// Kept positive semidefinite by construction.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoByTwoCase {
    m0: Rational,
    m1: Rational,
    lambda: Rational,
}

impl TwoByTwoCase {
    pub fn new(m0: Rational, m1: Rational, lambda: Rational) -> Result<Self> {
        if m0 < 0 || m1 < 0 {
            return Err(Error::InvalidArgument(
                "diagonal masses must be nonnegative".into(),
            ));
        }
        let det = (&m0 * &m1).complete() - (&lambda * &lambda).complete();
        if det < 0 {
            return Err(Error::InvalidArgument(format!(
                "off-diagonal coupling too large: m0*m1 - lambda^2 = {det} < 0"
            )));
        }
        Ok(TwoByTwoCase { m0, m1, lambda })
    }

    pub fn diagonal(m0: Rational, m1: Rational) -> Result<Self> {
        TwoByTwoCase::new(m0, m1, Rational::new())
    }

    pub fn m0(&self) -> &Rational {
        &self.m0
    }

    pub fn m1(&self) -> &Rational {
        &self.m1
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    pub fn det(&self) -> Rational {
        (&self.m0 * &self.m1).complete() - (&self.lambda * &self.lambda).complete()
    }

    pub fn is_diagonal(&self) -> bool {
        self.lambda == 0
    }

    pub fn is_zero(&self) -> bool {
        self.m0 == 0 && self.m1 == 0 && self.lambda == 0
    }

    /// 0, 1 or 2.
    pub fn rank(&self) -> usize {
        if self.is_zero() {
            0
        } else if self.det() == 0 {
            1
        } else {
            2
        }
    }

    pub fn mass_matrix(&self) -> MassMatrix {
        MassMatrix::new(vec![
            vec![self.m0.clone(), self.lambda.clone()],
            vec![self.lambda.clone(), self.m1.clone()],
        ])
        .expect("TwoByTwoCase invariant guarantees a valid mass matrix")
    }

    pub fn product(&self) -> SobolevProduct {
        SobolevProduct::new(WeightSpec::HermiteLine, self.mass_matrix())
            .expect("TwoByTwoCase invariant guarantees a valid product")
    }
}

/// Connection coefficients of the degree-n polynomial onto its two kernel
/// corrections. `Even` pairs with degree 2m >= 2, `Odd` with 2m+1 >= 3.
#[derive(Clone, Debug)]
pub enum ConnectionCoeffs {
    Even { a: Real, b: Real },
    Odd { c: Real, d: Real },
}

fn fact(n: usize) -> Integer {
    Integer::factorial(n as u32).complete()
}

/// Exact parts (e0, e1, e2) of the normalizer for the degree-n polynomial:
/// its value is e0 + e1 / sqrt(pi) + e2 / pi. Always >= 1 at the evaluation
/// point because every term is nonnegative there.
pub fn delta_parts(n: usize, case: &TwoByTwoCase) -> Result<(Rational, Rational, Rational)> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "normalizer starts at degree 1".into(),
        ));
    }
    let k0 = kernel_const_rational(n - 1, 0, 0)?;
    let k11 = if n - 1 == 0 {
        Rational::new()
    } else {
        kernel_const_rational(n - 1, 1, 1)?
    };
    let e1 = (&case.m0 * &k0).complete() + (&case.m1 * &k11).complete();
    let e2 = case.det() * (&k0 * &k11).complete();
    Ok((Rational::from(1), e1, e2))
}

/// Normalizer as a float; strictly positive.
pub fn delta(n: usize, case: &TwoByTwoCase, prec: u32) -> Result<Real> {
    let (e0, e1, e2) = delta_parts(n, case)?;
    let spi = Real::sqrt_pi(prec);
    let pi = Real::pi(prec);
    Ok(&(&Real::from_rational(&e0, prec) + &(&Real::from_rational(&e1, prec) / &spi))
        + &(&Real::from_rational(&e2, prec) / &pi))
}

/// Closed-form connection coefficients for degree n (n >= 2 even, n >= 3
/// odd). Everything upstream of the final division is exact.
pub fn connection_coeffs(n: usize, case: &TwoByTwoCase, prec: u32) -> Result<ConnectionCoeffs> {
    let wprec = prec + GUARD_BITS;
    let spi = Real::sqrt_pi(wprec);
    let m = n / 2;
    let h0 = hermite_at_zero_rational(2 * m);
    let det = case.det();
    let dlt = delta(n, case, wprec)?;
    let from_q = |q: &Rational| Real::from_rational(q, wprec);
    if n % 2 == 0 {
        if n < 2 {
            return Err(Error::InvalidArgument(
                "even closed form starts at degree 2".into(),
            ));
        }
        // prefactor (-1)^(m-1) H_{2m}(0) / (m-1)!
        let mut pref = (&h0 / fact(m - 1)).complete();
        if m % 2 == 0 {
            pref = -pref;
        }
        let k11 = kernel_const_rational(2 * m - 1, 1, 1)?;
        let bracket = &from_q(&case.m0) + &(&from_q(&(det * k11)) / &spi);
        let scale = &from_q(&pref) / &(&spi * &dlt);
        let a = (&scale * &bracket).to_prec(prec);
        let b = (&scale * &from_q(&case.lambda)).to_prec(prec);
        Ok(ConnectionCoeffs::Even { a, b })
    } else {
        if n < 3 {
            return Err(Error::InvalidArgument(
                "odd closed form starts at degree 3".into(),
            ));
        }
        // prefactors (-1)^m (2m+1) H_{2m}(0) / m!  and
        //            (-1)^(m-1) (2m+1) H_{2m}(0) / (m-1)!
        let base = &h0 * Rational::from(2 * m as u64 + 1);
        let mut pref_c = (&base / fact(m)).complete();
        if m % 2 == 1 {
            pref_c = -pref_c;
        }
        let mut pref_d = (&base / fact(m - 1)).complete();
        if m % 2 == 0 {
            pref_d = -pref_d;
        }
        let k00 = kernel_const_rational(2 * m, 0, 0)?;
        let bracket = &from_q(&case.m1) + &(&from_q(&(det * k00)) / &spi);
        let c = (&(&from_q(&pref_c) * &from_q(&case.lambda)) / &(&spi * &dlt)).to_prec(prec);
        let d = (&(&from_q(&pref_d) * &bracket) / &(&spi * &dlt)).to_prec(prec);
        Ok(ConnectionCoeffs::Odd { c, d })
    }
}

/// H_{2m-1}(x)/x as exact rationals (the function-value kernel shape).
fn shape_value(m: usize) -> Result<Vec<Rational>> {
    let h = hermite_rationals(2 * m - 1);
    shift_exact(&h, 1, "value-kernel shape")
}

/// (2x H_{2m}(x) + H_{2m-1}(x))/x^2 as exact rationals (the derivative
/// kernel shape). The two lowest numerator coefficients cancel identically.
fn shape_derivative(m: usize) -> Result<Vec<Rational>> {
    let h_hi = hermite_rationals(2 * m);
    let h_lo = hermite_rationals(2 * m - 1);
    let mut num = vec![Rational::new(); 2 * m + 2];
    for (i, c) in h_hi.iter().enumerate() {
        num[i + 1] += (c * 2i64).complete();
    }
    for (i, c) in h_lo.iter().enumerate() {
        num[i] += c;
    }
    shift_exact(&num, 2, "derivative-kernel shape")
}

/// H_{2m+1}(x)/x as exact rationals (odd-degree value shape).
fn shape_value_odd(m: usize) -> Result<Vec<Rational>> {
    let h = hermite_rationals(2 * m + 1);
    shift_exact(&h, 1, "odd value-kernel shape")
}

/// Monic orthogonal polynomial of degree n for the 2x2 origin block, by
/// closed form for n >= 2 and by the dense solver below that. The zero case
/// returns the classical polynomial unchanged.
pub fn q_poly(n: usize, case: &TwoByTwoCase, prec: u32) -> Result<Poly> {
    if case.is_zero() {
        return Ok(hermite_monic(n, prec));
    }
    if n <= 1 {
        return gram_orthogonalize(&case.product(), n, prec);
    }
    let wprec = prec + GUARD_BITS;
    let m = n / 2;
    let rp = |cs: &[Rational]| Poly::from_rationals(cs, wprec);
    let out = if n % 2 == 0 {
        let (a, b) = match connection_coeffs(n, case, wprec)? {
            ConnectionCoeffs::Even { a, b } => (a, b),
            ConnectionCoeffs::Odd { .. } => unreachable!("even degree"),
        };
        let base = hermite_monic(n, wprec);
        base.sub(&rp(&shape_value(m)?).scale(&a))
            .sub(&rp(&shape_derivative(m)?).scale(&b))
    } else {
        let (c, d) = match connection_coeffs(n, case, wprec)? {
            ConnectionCoeffs::Odd { c, d } => (c, d),
            ConnectionCoeffs::Even { .. } => unreachable!("odd degree"),
        };
        let base = hermite_monic(n, wprec);
        base.sub(&rp(&shape_value_odd(m)?).scale(&c))
            .sub(&rp(&shape_derivative(m)?).scale(&d))
    };
    Ok(out.to_prec(prec))
}

/// One scaled connection coefficient next to its limit.
#[derive(Clone, Debug)]
pub struct CoeffLimitRow {
    /// Which scaled quantity, e.g. "a_n" or "n^(3/2) b_n".
    pub label: String,
    /// Subscript m of the coefficient (polynomial degree 2m or 2m+1).
    pub n: usize,
    pub value: f64,
    pub target: f64,
    /// |value - target|, relative when the target is nonzero.
    pub err: f64,
}

fn row(label: &str, n: usize, value: f64, target: f64) -> CoeffLimitRow {
    let err = if target == 0.0 {
        (value - target).abs()
    } else {
        ((value - target) / target).abs()
    };
    CoeffLimitRow {
        label: label.into(),
        n,
        value,
        target,
        err,
    }
}

/// Scaled connection coefficients against their limits, one row per tracked
/// quantity per index. Which quantities appear, and the scaling each one
/// carries, depends on whether the block is diagonal and on its rank:
///
/// - diagonal: a_n and d_n (limits -1/2 and -3/4 when the matching mass is
///   positive, 0 when it vanishes); b_n and c_n are identically zero.
/// - rank one with coupling: n a_n, n b_n, n c_n scale linearly; d_n has a
///   plain limit.
/// - rank two with coupling: a_n and d_n have plain limits while b_n and
///   c_n die at rate n^(-3/2), so rows carry n^(3/2) b_n and n^(3/2) c_n.
pub fn coeff_limit_rows(
    case: &TwoByTwoCase,
    ns: &[usize],
    prec: u32,
) -> Result<Vec<CoeffLimitRow>> {
    if case.is_zero() {
        return Err(Error::InvalidArgument(
            "coefficient limits need a nonzero mass block".into(),
        ));
    }
    let m0 = case.m0.to_f64();
    let m1 = case.m1.to_f64();
    let lam = case.lambda.to_f64();
    let det = case.det().to_f64();
    let pi = std::f64::consts::PI;
    let mut rows = Vec::new();
    for &n in ns {
        if n < 2 {
            return Err(Error::InvalidArgument(
                "limit rows start at coefficient index 2".into(),
            ));
        }
        let (a, b) = match connection_coeffs(2 * n, case, prec)? {
            ConnectionCoeffs::Even { a, b } => (a.to_f64(), b.to_f64()),
            ConnectionCoeffs::Odd { .. } => unreachable!(),
        };
        let (c, d) = match connection_coeffs(2 * n + 1, case, prec)? {
            ConnectionCoeffs::Odd { c, d } => (c.to_f64(), d.to_f64()),
            ConnectionCoeffs::Even { .. } => unreachable!(),
        };
        let nf = n as f64;
        if case.is_diagonal() {
            let a_t = if m0 > 0.0 { -0.5 } else { 0.0 };
            let d_t = if m1 > 0.0 { -0.75 } else { 0.0 };
            rows.push(row("a_n", n, a, a_t));
            rows.push(row("d_n", n, d, d_t));
            rows.push(row("b_n", n, b, 0.0));
            rows.push(row("c_n", n, c, 0.0));
        } else if case.rank() == 1 {
            rows.push(row("n a_n", n, nf * a, -3.0 * m0 / (8.0 * m1)));
            rows.push(row("n b_n", n, nf * b, -3.0 * lam / (8.0 * m1)));
            rows.push(row("n c_n", n, nf * c, 3.0 * lam / (4.0 * m1)));
            rows.push(row("d_n", n, d, -0.75));
        } else {
            let p = nf.powf(1.5);
            rows.push(row("a_n", n, a, -0.5));
            rows.push(row("n^(3/2) b_n", n, p * b, -3.0 * pi * lam / (16.0 * det)));
            rows.push(row("n^(3/2) c_n", n, p * c, 3.0 * pi * lam / (8.0 * det)));
            rows.push(row("d_n", n, d, -0.75));
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gram::sobolev_inner;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    fn case(m0: i64, m1: i64, lam: i64) -> TwoByTwoCase {
        TwoByTwoCase::new(q(m0, 1), q(m1, 1), q(lam, 1)).unwrap()
    }

    #[test]
    fn rejects_indefinite_blocks() {
        assert!(TwoByTwoCase::new(q(1, 1), q(1, 1), q(2, 1)).is_err());
        assert!(TwoByTwoCase::new(q(-1, 1), q(1, 1), q(0, 1)).is_err());
        // Boundary lambda^2 = m0 m1 is rank one, not an error.
        assert_eq!(case(1, 1, 1).rank(), 1);
        assert_eq!(case(2, 1, 1).rank(), 2);
        assert_eq!(case(0, 0, 0).rank(), 0);
    }

    #[test]
    fn degree_three_derivative_mass_closed_value() {
        // Unit derivative mass only: the value coefficient vanishes and
        // the derivative coefficient is -3 / (2 (sqrt(pi) + 2)).
        let prec = 320;
        let cs = connection_coeffs(3, &case(0, 1, 0), prec).unwrap();
        let (c, d) = match cs {
            ConnectionCoeffs::Odd { c, d } => (c, d),
            _ => panic!("expected odd coefficients"),
        };
        assert!(c.is_zero());
        let spi = Real::sqrt_pi(prec);
        let expect = -(&Real::from_i64(3, prec)
            / &(&Real::from_i64(2, prec) * &(&spi + &Real::from_i64(2, prec))));
        let err = (&d - &expect).abs().to_f64();
        assert!(err < 1e-90, "err {err:e}");
    }

    #[test]
    fn normalizer_spot_value() {
        // Unit function mass, degree 2: 1 + 1/sqrt(pi).
        let prec = 256;
        let dlt = delta(2, &case(1, 0, 0), prec).unwrap();
        let expect = &Real::one(prec) + &(&Real::one(prec) / &Real::sqrt_pi(prec));
        let err = (&dlt - &expect).abs().to_f64();
        assert!(err < 1e-70, "err {err:e}");
    }

    #[test]
    fn closed_form_matches_dense_solver() {
        let prec = 256;
        let cases = [
            case(1, 0, 0),
            case(0, 1, 0),
            case(1, 1, 0),
            case(1, 1, 1),
            case(2, 1, 1),
        ];
        for cs in &cases {
            let p = cs.product();
            for n in 2..=12usize {
                let qp = q_poly(n, cs, prec).unwrap();
                let gp = gram_orthogonalize(&p, n, prec).unwrap();
                for k in 0..=n {
                    let err = (qp.coeff(k) - gp.coeff(k)).abs().to_f64();
                    assert!(
                        err < 1e-60,
                        "case {cs:?} n={n} k={k}: err {err:e}"
                    );
                }
            }
        }
    }

    #[test]
    fn zero_block_returns_classical_polynomial() {
        let prec = 192;
        let z = case(0, 0, 0);
        for n in [0usize, 1, 5, 8] {
            let qp = q_poly(n, &z, prec).unwrap();
            let h = hermite_monic(n, prec);
            for k in 0..=n {
                assert!((qp.coeff(k) - h.coeff(k)).is_zero());
            }
        }
    }

    #[test]
    fn orthogonal_to_lower_monomials() {
        let prec = 320;
        let cs = case(2, 1, 1);
        let p = cs.product();
        for n in 2..=9usize {
            let qp = q_poly(n, &cs, prec).unwrap();
            for j in 0..n {
                let mut mono = vec![Rational::new(); j + 1];
                mono[j] = Rational::from(1);
                let mono = Poly::from_rationals(&mono, prec);
                let ip = sobolev_inner(&p, &qp, &mono).abs().to_f64();
                assert!(ip < 1e-65, "n={n} j={j}: inner {ip:e}");
            }
        }
    }

    #[test]
    fn diagonal_blocks_keep_parity_exactly() {
        let prec = 256;
        for cs in [case(1, 0, 0), case(0, 1, 0), case(3, 2, 0)] {
            for n in 2..=11usize {
                let qp = q_poly(n, &cs, prec).unwrap();
                assert!(qp.symmetry_defect().is_zero(), "case {cs:?} n={n}");
            }
        }
    }

    #[test]
    fn coupling_breaks_parity() {
        let prec = 256;
        let qp = q_poly(6, &case(1, 1, 1), prec).unwrap();
        assert!(qp.symmetry_defect().to_f64() > 1e-3);
    }

    #[test]
    fn degree_one_matches_direct_formula() {
        // Q_1 = x - lambda / (sqrt(pi) + m0).
        let prec = 256;
        let cs = case(2, 1, 1);
        let qp = q_poly(1, &cs, prec).unwrap();
        let expect = -(&Real::one(prec) / &(&Real::sqrt_pi(prec) + &Real::from_i64(2, prec)));
        let err = (qp.coeff(0) - &expect).abs().to_f64();
        assert!(err < 1e-70, "err {err:e}");
    }

    #[test]
    fn coefficient_rows_reach_their_limits() {
        let prec = 256;
        let ns = [25usize, 50, 100, 200];
        // Diagonal with both unit masses: a_n -> -1/2 at rate ~ pi/(2 sqrt(n)),
        // which sits just above 10% at n = 200; pin that closed-form value.
        // d_n -> -3/4 converges at n^(-3/2) and is far inside by then.
        let rows = coeff_limit_rows(&case(1, 1, 0), &ns, prec).unwrap();
        for r in rows.iter().filter(|r| r.n == 200) {
            match r.label.as_str() {
                "a_n" => assert!(0.09 < r.err && r.err < 0.11, "a_n err {}", r.err),
                "d_n" => assert!(r.err < 1e-3, "d_n err {}", r.err),
                _ => {}
            }
        }
        for r in rows.iter().filter(|r| r.label == "b_n" || r.label == "c_n") {
            assert_eq!(r.value, 0.0, "{} should vanish exactly", r.label);
        }
        // Heavier diagonal masses pull the same limit inside 10% at n = 200.
        let rows = coeff_limit_rows(&case(4, 4, 0), &ns, prec).unwrap();
        for r in rows.iter().filter(|r| r.n == 200) {
            match r.label.as_str() {
                "a_n" | "d_n" => assert!(r.err < 0.05, "{} err {}", r.label, r.err),
                _ => {}
            }
        }
        // Rank-one coupled block.
        let rows = coeff_limit_rows(&case(1, 1, 1), &ns, prec).unwrap();
        for r in &rows {
            if r.n == 200 {
                assert!(r.err < 0.1, "{} at n=200: err {}", r.label, r.err);
            }
        }
        // Rank-two coupled block: plain limits tighten with n.
        let rows = coeff_limit_rows(&case(2, 1, 1), &ns, prec).unwrap();
        let errs: Vec<f64> = rows
            .iter()
            .filter(|r| r.label == "a_n")
            .map(|r| r.err)
            .collect();
        assert!(errs.windows(2).all(|w| w[1] < w[0]), "a_n errs {errs:?}");
    }
}

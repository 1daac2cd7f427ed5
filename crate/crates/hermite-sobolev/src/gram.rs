//! Discrete Sobolev inner products and Gram-matrix orthogonalization.
//!
//! A product is a base weight on the line or half line plus a quadratic form
//! in derivative values at the origin:
//!
//! ```text
//! (f, g) = scale * [ integral f g w dx + F(0)^T A G(0) ],
//! F(0) = (f(0), f'(0), ..., f^(s-1)(0))
//! ```
//!
//! [`gram_orthogonalize`] builds the monic orthogonal polynomial of a given
//! degree by solving the normal equations in the monomial basis with an LDL^T
//! factorization. The matrix entries are exact to one rounding, assembled at
//! an elevated working precision that grows with the degree; if the pivots
//! reveal more cancellation than that precision can absorb, the solve
//! escalates and retries before giving up.

use std::collections::HashMap;
use std::sync::Mutex;

use once_cell::sync::Lazy;
use rug::{Complete, Integer, Rational};

use crate::poly::Poly;
use crate::real::Real;
use crate::{Error, Result};

/// Base weight of the product.
#[derive(Clone, Debug, PartialEq)]
pub enum WeightSpec {
    /// exp(-x^2) on the whole line.
    HermiteLine,
    /// x^alpha exp(-x) on (0, inf), alpha > -1.
    LaguerreHalfLine { alpha: Rational },
}

/// Symmetric positive semidefinite matrix of mass couplings, exact entries.
#[derive(Clone, Debug, PartialEq)]
pub struct MassMatrix {
    entries: Vec<Vec<Rational>>,
}

fn rational_det(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = Rational::from(1);
    for k in 0..n {
        // Partial pivot: find a nonzero entry in column k.
        let mut pivot = None;
        for r in k..n {
            if m[r][k] != 0 {
                pivot = Some(r);
                break;
            }
        }
        let Some(p) = pivot else {
            return Rational::new();
        };
        if p != k {
            m.swap(p, k);
            det = -det;
        }
        det *= &m[k][k];
        for r in (k + 1)..n {
            let factor = (&m[r][k] / &m[k][k]).complete();
            for c in k..n {
                let sub = (&factor * &m[k][c]).complete();
                m[r][c] -= sub;
            }
        }
    }
    det
}

impl MassMatrix {
    /// Builds from full entries; must be square, symmetric, and positive
    /// semidefinite (checked exactly over the rationals).
    pub fn new(entries: Vec<Vec<Rational>>) -> Result<Self> {
        let s = entries.len();
        for row in &entries {
            if row.len() != s {
                return Err(Error::InvalidArgument("mass matrix must be square".into()));
            }
        }
        for i in 0..s {
            for j in 0..i {
                if entries[i][j] != entries[j][i] {
                    return Err(Error::InvalidArgument(
                        "mass matrix must be symmetric".into(),
                    ));
                }
            }
        }
        let m = MassMatrix { entries };
        m.check_psd()?;
        Ok(m)
    }

    pub fn diagonal(ms: &[Rational]) -> Self {
        let s = ms.len();
        let mut entries = vec![vec![Rational::new(); s]; s];
        for (i, v) in ms.iter().enumerate() {
            entries[i][i] = v.clone();
        }
        // Diagonal PSD iff entries nonnegative; still run the exact check to
        // reject negative masses uniformly.
        let m = MassMatrix { entries };
        m.check_psd().expect("negative diagonal mass");
        m
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i][j]
    }

    pub fn is_diagonal(&self) -> bool {
        let s = self.size();
        for i in 0..s {
            for j in 0..s {
                if i != j && self.entries[i][j] != 0 {
                    return false;
                }
            }
        }
        true
    }

    /// Positive semidefiniteness over the rationals: every principal minor
    /// (not only the leading ones) must be nonnegative. Exact, no rounding.
    pub fn check_psd(&self) -> Result<()> {
        let s = self.size();
        for subset in 1u32..(1 << s) {
            let idx: Vec<usize> = (0..s).filter(|i| subset >> i & 1 == 1).collect();
            let sub: Vec<Vec<Rational>> = idx
                .iter()
                .map(|&r| idx.iter().map(|&c| self.entries[r][c].clone()).collect())
                .collect();
            if rational_det(sub) < 0 {
                return Err(Error::InvalidArgument(format!(
                    "mass matrix is not positive semidefinite (principal minor {idx:?} is negative)"
                )));
            }
        }
        Ok(())
    }

    fn signature(&self) -> String {
        let mut s = String::new();
        for row in &self.entries {
            for e in row {
                s.push_str(&e.to_string());
                s.push(',');
            }
            s.push(';');
        }
        s
    }
}

/// A discrete Sobolev inner product.
#[derive(Clone, Debug, PartialEq)]
pub struct SobolevProduct {
    pub weight: WeightSpec,
    pub mass: MassMatrix,
    /// Positive overall factor. Orthogonal polynomials are invariant under
    /// it; it exists so that invariance is testable.
    pub scale: Rational,
}

impl SobolevProduct {
    pub fn new(weight: WeightSpec, mass: MassMatrix) -> Result<Self> {
        if let WeightSpec::LaguerreHalfLine { alpha } = &weight {
            if *alpha <= -1 {
                return Err(Error::InvalidArgument(format!(
                    "half-line weight needs alpha > -1, got {alpha}"
                )));
            }
        }
        mass.check_psd()?;
        Ok(SobolevProduct {
            weight,
            mass,
            scale: Rational::from(1),
        })
    }

    pub fn hermite_diagonal(ms: &[Rational]) -> Self {
        SobolevProduct {
            weight: WeightSpec::HermiteLine,
            mass: MassMatrix::diagonal(ms),
            scale: Rational::from(1),
        }
    }

    pub fn with_scale(mut self, scale: Rational) -> Result<Self> {
        if scale <= 0 {
            return Err(Error::InvalidArgument("scale must be positive".into()));
        }
        self.scale = scale;
        Ok(self)
    }

    fn signature(&self) -> String {
        format!("{:?}|{}|{}", self.weight, self.mass.signature(), self.scale)
    }
}

/// Moment of the bare weight, exact when the weight allows it.
enum MomentValue {
    /// rat * sqrt(pi)^spi
    Exact { rat: Rational, sqrt_pi: bool },
    /// Only computable by the gamma function at working precision.
    Gamma { arg: Rational },
}

fn moment_value(w: &WeightSpec, k: usize) -> MomentValue {
    match w {
        WeightSpec::HermiteLine => {
            if k % 2 == 1 {
                return MomentValue::Exact {
                    rat: Rational::new(),
                    sqrt_pi: true,
                };
            }
            let m = (k / 2) as u32;
            let num = Integer::factorial(2 * m).complete();
            let den = Integer::factorial(m).complete() << (2 * m);
            MomentValue::Exact {
                rat: Rational::from((num, den)),
                sqrt_pi: true,
            }
        }
        WeightSpec::LaguerreHalfLine { alpha } => {
            let arg = (alpha + (k as i64 + 1)).complete();
            match crate::bessel::gamma_exact(&arg) {
                Some((rat, sqrt_pi)) => MomentValue::Exact { rat, sqrt_pi },
                None => MomentValue::Gamma { arg },
            }
        }
    }
}

/// Moment of the bare weight at working precision: integral of x^k w(x).
pub fn weight_moment(w: &WeightSpec, k: usize, prec: u32) -> Real {
    match moment_value(w, k) {
        MomentValue::Exact { rat, sqrt_pi } => {
            let r = Real::from_rational(&rat, prec);
            if sqrt_pi {
                &r * &Real::sqrt_pi(prec)
            } else {
                r
            }
        }
        MomentValue::Gamma { arg } => crate::bessel::gamma_real(&arg, prec),
    }
}

fn mass_entry(a: &MassMatrix, i: usize, j: usize) -> Option<&Rational> {
    if i < a.size() && j < a.size() {
        Some(a.entry(i, j))
    } else {
        None
    }
}

/// The inner product of two polynomials, one rounding per accumulated term.
pub fn sobolev_inner(p: &SobolevProduct, f: &Poly, g: &Poly) -> Real {
    let prec = f.prec();
    assert_eq!(prec, g.prec(), "sobolev_inner precision mismatch");
    let h = f.mul(g);
    let mut acc = Real::zero(prec);
    for (k, c) in h.coeffs().iter().enumerate() {
        let mu = weight_moment(&p.weight, k, prec);
        if !mu.is_zero() && !c.is_zero() {
            acc += &(c * &mu);
        }
    }
    let s = p.mass.size();
    for i in 0..s.min(f.degree() + 1) {
        for j in 0..s.min(g.degree() + 1) {
            let a = p.mass.entry(i, j);
            if *a == 0 {
                continue;
            }
            // f^(i)(0) = i! * coefficient i
            let fac = Rational::from(
                Integer::factorial(i as u32).complete() * Integer::factorial(j as u32).complete(),
            );
            let w = (&fac * a).complete();
            acc += &(&(f.coeff(i) * g.coeff(j)) * &Real::from_rational(&w, prec));
        }
    }
    &acc * &Real::from_rational(&p.scale, prec)
}

/// Normal-equation entry (x^j, x^k) at working precision, scale omitted
/// (a positive factor does not move the solution).
fn gram_entry(p: &SobolevProduct, j: usize, k: usize, prec: u32) -> Real {
    let mut v = weight_moment(&p.weight, j + k, prec);
    if let Some(a) = mass_entry(&p.mass, j, k) {
        if *a != 0 {
            let fac = Rational::from(
                Integer::factorial(j as u32).complete() * Integer::factorial(k as u32).complete(),
            );
            v += &Real::from_rational(&(&fac * a).complete(), prec);
        }
    }
    v
}

static GRAM_CACHE: Lazy<Mutex<HashMap<(String, usize, u32), Poly>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Monic polynomial of degree n orthogonal to all lower degrees under p.
///
/// Internally works at prec + 2n + 64 bits. The LDL^T pivots of these Gram
/// matrices shrink geometrically relative to the diagonal; the solve watches
/// the worst ratio diag/pivot and escalates (doubling, up to five times) when
/// it eats more than a quarter of the working precision. A nonpositive pivot
/// that survives escalation is reported as [`Error::PrecisionInsufficient`]
/// naming the pivot index.
pub fn gram_orthogonalize(p: &SobolevProduct, n: usize, prec: u32) -> Result<Poly> {
    let key = (p.signature(), n, prec);
    if let Some(hit) = GRAM_CACHE.lock().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    let out = gram_orthogonalize_uncached(p, n, prec)?;
    GRAM_CACHE
        .lock()
        .unwrap()
        .insert(key, out.clone());
    Ok(out)
}

fn gram_orthogonalize_uncached(p: &SobolevProduct, n: usize, prec: u32) -> Result<Poly> {
    if n == 0 {
        return Ok(Poly::new(vec![Real::one(prec)]));
    }
    let base = prec + 2 * (n as u32) + 64;
    let mut iprec = base;
    for _attempt in 0..=5 {
        match try_solve(p, n, iprec) {
            SolveOutcome::Done(coeffs) => {
                let mut rounded: Vec<Real> = coeffs.iter().map(|c| c.to_prec(prec)).collect();
                rounded.push(Real::one(prec));
                return Ok(Poly::new(rounded));
            }
            SolveOutcome::Escalate => {
                iprec *= 2;
            }
            SolveOutcome::BadPivot(k) => {
                if iprec >= base * 32 {
                    return Err(Error::PrecisionInsufficient(format!(
                        "gram pivot {k} of degree-{n} solve not positive at {iprec} bits"
                    )));
                }
                iprec *= 2;
            }
        }
    }
    Err(Error::PrecisionInsufficient(format!(
        "degree-{n} gram solve still cancelling at {iprec} bits"
    )))
}

enum SolveOutcome {
    Done(Vec<Real>),
    Escalate,
    BadPivot(usize),
}

fn try_solve(p: &SobolevProduct, n: usize, iprec: u32) -> SolveOutcome {
    // Lower triangle of the Gram matrix, factored in place.
    let mut g: Vec<Vec<Real>> = (0..n)
        .map(|i| (0..=i).map(|j| gram_entry(p, i, j, iprec)).collect())
        .collect();
    let mut b: Vec<Real> = (0..n).map(|i| -gram_entry(p, i, n, iprec)).collect();
    let diag_orig: Vec<Real> = (0..n).map(|i| g[i][i].clone()).collect();
    let mut d: Vec<Real> = Vec::with_capacity(n);
    let mut worst_cancel = Real::one(iprec);
    for k in 0..n {
        let mut dk = g[k][k].clone();
        for m in 0..k {
            dk -= &(&(&g[k][m] * &g[k][m]) * &d[m]);
        }
        if !dk.is_finite() || dk.sign() <= 0 {
            return SolveOutcome::BadPivot(k);
        }
        let cancel = &diag_orig[k] / &dk;
        if cancel > worst_cancel {
            worst_cancel = cancel;
        }
        for i in (k + 1)..n {
            let mut v = g[i][k].clone();
            for m in 0..k {
                v -= &(&(&g[i][m] * &g[k][m]) * &d[m]);
            }
            g[i][k] = &v / &dk;
        }
        d.push(dk);
    }
    let limit = Real::from_i64(2, iprec).powi((iprec / 4) as i32);
    if worst_cancel > limit {
        return SolveOutcome::Escalate;
    }
    // Forward solve L y = b, diagonal scale, back solve L^T c = z.
    for i in 0..n {
        for m in 0..i {
            let sub = &g[i][m] * &b[m];
            b[i] -= &sub;
        }
    }
    for i in 0..n {
        b[i] = &b[i] / &d[i];
    }
    for i in (0..n).rev() {
        for m in (i + 1)..n {
            let sub = &g[m][i] * &b[m];
            b[i] -= &sub;
        }
    }
    SolveOutcome::Done(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermite::{hermite_monic, hermite_rationals};

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn hermite_moments_exact() {
        let prec = 192;
        // mu_4 = 3/4 sqrt(pi), mu_3 = 0
        let m4 = weight_moment(&WeightSpec::HermiteLine, 4, prec);
        let expect = &Real::from_rational(&q(3, 4), prec) * &Real::sqrt_pi(prec);
        assert!((&m4 - &expect).abs().to_f64() < 1e-50);
        assert!(weight_moment(&WeightSpec::HermiteLine, 3, prec).is_zero());
    }

    #[test]
    fn laguerre_moments_match_gamma() {
        let prec = 192;
        let w = WeightSpec::LaguerreHalfLine { alpha: q(-1, 2) };
        // moment 1 = Gamma(3/2) = sqrt(pi)/2
        let m1 = weight_moment(&w, 1, prec);
        let expect = &Real::sqrt_pi(prec) * &Real::from_rational(&q(1, 2), prec);
        assert!((&m1 - &expect).abs().to_f64() < 1e-50);
    }

    #[test]
    fn degree_two_with_unit_function_mass() {
        // Against (f,g) = integral + f(0)g(0): the monic degree-2 polynomial
        // is x^2 - sqrt(pi)/(2(sqrt(pi)+1)).
        let prec = 256;
        let p = SobolevProduct::hermite_diagonal(&[q(1, 1), q(0, 1)]);
        let poly = gram_orthogonalize(&p, 2, prec).unwrap();
        let spi = Real::sqrt_pi(prec);
        let expect = &spi
            / &(&Real::from_i64(2, prec) * &(&spi + &Real::one(prec)));
        let err = (&(poly.coeff(0) + &expect)).abs().to_f64();
        assert!(err < 1e-70, "constant term err {err:e}");
        assert!(poly.coeff(1).is_zero());
        assert_eq!(poly.coeff(2).to_f64(), 1.0);
    }

    #[test]
    fn zero_mass_recovers_bare_hermite() {
        let prec = 256;
        let p = SobolevProduct::hermite_diagonal(&[q(0, 1), q(0, 1)]);
        for n in [1usize, 4, 9] {
            let poly = gram_orthogonalize(&p, n, prec).unwrap();
            let h = hermite_rationals(n);
            for k in 0..=n {
                let expect = Real::from_rational(&h[k], prec);
                let err = (&expect - poly.coeff(k)).abs().to_f64();
                assert!(err < 1e-70, "n={n} k={k} err {err:e}");
            }
        }
    }

    #[test]
    fn orthogonality_against_all_lower_monomials() {
        let prec = 256;
        let cases = [
            vec![q(1, 1), q(0, 1)],
            vec![q(0, 1), q(1, 1)],
            vec![q(1, 1), q(1, 1)],
            vec![q(2, 1), q(1, 3), q(1, 7)],
        ];
        for ms in &cases {
            let p = SobolevProduct::hermite_diagonal(ms);
            for n in [3usize, 6, 11] {
                let poly = gram_orthogonalize(&p, n, prec).unwrap();
                for j in 0..n {
                    let mut mono = vec![Rational::new(); j + 1];
                    mono[j] = Rational::from(1);
                    let xj = Poly::from_rationals(&mono, prec);
                    let ip = sobolev_inner(&p, &poly, &xj).abs().to_f64();
                    assert!(ip < 1e-60, "masses {ms:?} n={n} j={j}: {ip:e}");
                }
            }
        }
    }

    #[test]
    fn diagonal_masses_preserve_parity_exactly() {
        let prec = 256;
        let p = SobolevProduct::hermite_diagonal(&[q(3, 2), q(5, 7), q(1, 11), q(2, 3)]);
        for n in 2..=12usize {
            let poly = gram_orthogonalize(&p, n, prec).unwrap();
            assert!(
                poly.symmetry_defect().is_zero(),
                "parity defect at degree {n}"
            );
        }
    }

    #[test]
    fn indefinite_mass_is_rejected() {
        let entries = vec![
            vec![Rational::new(), Rational::from(1)],
            vec![Rational::from(1), Rational::new()],
        ];
        assert!(matches!(
            MassMatrix::new(entries),
            Err(Error::InvalidArgument(_))
        ));
        // A genuine rank-one coupling passes.
        let ok = vec![
            vec![Rational::from(1), Rational::from(1)],
            vec![Rational::from(1), Rational::from(1)],
        ];
        assert!(MassMatrix::new(ok).is_ok());
    }

    #[test]
    fn scale_does_not_move_the_polynomials() {
        let prec = 256;
        let base = SobolevProduct::hermite_diagonal(&[q(1, 1), q(2, 1)]);
        let scaled = base.clone().with_scale(q(17, 5)).unwrap();
        for n in [2usize, 5, 8] {
            let a = gram_orthogonalize(&base, n, prec).unwrap();
            let b = gram_orthogonalize(&scaled, n, prec).unwrap();
            for k in 0..=n {
                let err = (a.coeff(k) - b.coeff(k)).abs().to_f64();
                assert!(err < 1e-70, "scale moved coefficient {k} of degree {n}");
            }
        }
    }

    #[test]
    fn inner_product_respects_scale() {
        let prec = 192;
        let base = SobolevProduct::hermite_diagonal(&[q(1, 1)]);
        let scaled = base.clone().with_scale(q(3, 1)).unwrap();
        let f = hermite_monic(3, prec);
        let g = hermite_monic(1, prec);
        let a = sobolev_inner(&base, &f, &g);
        let b = sobolev_inner(&scaled, &f, &g);
        let expect = &a * &Real::from_i64(3, prec);
        assert!((&b - &expect).abs().to_f64() < 1e-45);
    }

    #[test]
    fn laguerre_orthogonality_with_masses() {
        let prec = 256;
        let mass = MassMatrix::diagonal(&[q(1, 1), q(4, 1)]);
        let p = SobolevProduct::new(
            WeightSpec::LaguerreHalfLine { alpha: q(-1, 2) },
            mass,
        )
        .unwrap();
        for n in [2usize, 5] {
            let poly = gram_orthogonalize(&p, n, prec).unwrap();
            for j in 0..n {
                let mut mono = vec![Rational::new(); j + 1];
                mono[j] = Rational::from(1);
                let xj = Poly::from_rationals(&mono, prec);
                let ip = sobolev_inner(&p, &poly, &xj).abs().to_f64();
                assert!(ip < 1e-60, "laguerre n={n} j={j}: {ip:e}");
            }
        }
    }

    #[test]
    fn half_line_degree_one_closed_value() {
        // Half-line weight x^(-1/2) e^(-x) with unit function mass: monic
        // degree-1 polynomial is t - (sqrt(pi)/2)/(sqrt(pi) + 1).
        let prec = 256;
        let mass = MassMatrix::diagonal(&[q(1, 1)]);
        let p = SobolevProduct::new(
            WeightSpec::LaguerreHalfLine { alpha: q(-1, 2) },
            mass,
        )
        .unwrap();
        let poly = gram_orthogonalize(&p, 1, prec).unwrap();
        let spi = Real::sqrt_pi(prec);
        let expect = &(&spi * &Real::from_rational(&q(1, 2), prec))
            / &(&spi + &Real::one(prec));
        let err = (&(poly.coeff(0) + &expect)).abs().to_f64();
        assert!(err < 1e-70, "spec value err {err:e}");
    }
}

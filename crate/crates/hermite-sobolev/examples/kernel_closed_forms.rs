//! Reproducing kernels three ways: the literal summation, the two-term
//! quotient, and the closed forms along y = 0 that the orthogonal
//! constructions actually consume.

use hermite_sobolev::kernels::{
    kernel_cd, kernel_closed_at0, kernel_const_rational, kernel_sum, kernel_taylor_general,
};
use hermite_sobolev::{Real, Result};
use rug::Rational;

fn digits(a: &Real, b: &Real) -> f64 {
    let err = a.rel_err(b).to_f64();
    if err == 0.0 { f64::INFINITY } else { -err.log10() }
}

fn main() -> Result<()> {
    let prec = 192;
    let x = Real::from_rational(&Rational::from((7, 5)), prec);
    let y = Real::from_rational(&Rational::from((-3, 4)), prec);

    // The summation is the oracle. Everything else must agree with it to
    // near working precision.
    println!("plain kernel K_n(x, y), quotient form vs summation:");
    for n in [5, 12, 25] {
        let s = kernel_sum(n, 0, 0, &x, &y);
        let q = kernel_cd(n, &x, &y);
        println!("  n = {n:2}: {:.6}  agree to {:.0} digits", s.to_f64(), digits(&q, &s));
    }

    println!("\nderivated kernels at y = 0, closed form vs summation:");
    for (n, j) in [(10, 0), (10, 1), (11, 2), (10, 3)] {
        let s = kernel_sum(n, 0, j, &x, &Real::zero(prec));
        let c = kernel_closed_at0(n, j, &x)?;
        println!(
            "  K_{n}^(0,{j})(x, 0) = {:.6}  agree to {:.0} digits",
            s.to_f64(),
            digits(&c, &s)
        );
    }

    // The Taylor-truncation identity covers every j, including orders the
    // two-term table refuses.
    println!("\nTaylor-truncation form at j = 4 (no two-term closed form):");
    for n in [9, 10] {
        let s = kernel_sum(n, 0, 4, &x, &Real::zero(prec));
        let t = kernel_taylor_general(n, 4, &x)?;
        println!("  n = {n}: agree to {:.0} digits", digits(&t, &s));
    }

    // At the origin the kernel is an exact rational over sqrt(pi).
    println!("\nkernel constants, exact rational part of sqrt(pi) K_n^(i,j)(0,0):");
    for (n, i, j) in [(6, 0, 0), (6, 1, 1), (7, 1, 1), (9, 0, 2)] {
        let r = kernel_const_rational(n, i, j)?;
        let s = kernel_sum(n, i, j, &Real::zero(prec), &Real::zero(prec));
        let back = &Real::from_rational(&r, prec) / &Real::sqrt_pi(prec);
        println!(
            "  (n, i, j) = ({n}, {i}, {j}): {r}, matches the sum to {:.0} digits",
            digits(&back, &s)
        );
    }
    Ok(())
}

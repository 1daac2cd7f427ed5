//! The classical monic family: exact coefficients, the recurrence that
//! generates them, and the norm bookkeeping every other construction
//! leans on.

use hermite_sobolev::hermite::{
    hermite_at_zero_rational, hermite_eval_all, hermite_norm_sq, hermite_norm_sq_rational,
    hermite_rationals,
};
use hermite_sobolev::{fmt40, Real};
use rug::Rational;

fn main() {
    let prec = 128;

    println!("monic coefficients, ascending powers:");
    for n in 0..=6 {
        let cs = hermite_rationals(n);
        let text: Vec<String> = cs.iter().map(|c| c.to_string()).collect();
        println!("  H_{n}: [{}]", text.join(", "));
    }

    // The whole family comes from H_{n+1} = x H_n - (n/2) H_{n-1}. Checked
    // here numerically at one point; the test suite checks it in exact
    // rational arithmetic.
    let x = Real::from_rational(&Rational::from((3, 2)), prec);
    let h = hermite_eval_all(9, &x);
    println!("\nrecurrence residual at x = 3/2:");
    for n in 1..=8 {
        let half_n = Real::from_rational(&Rational::from((n as i64, 2)), prec);
        let resid = &(&(&x * &h[n]) - &h[n + 1]) - &(&half_n * &h[n - 1]);
        println!("  n = {n}: {:.3e}", resid.to_f64());
    }

    // ||H_n||^2 = n!/2^n sqrt(pi). The rational factor is exact; the float
    // version multiplies in sqrt(pi) at the requested precision.
    println!("\nsquared norms:");
    for n in [0, 1, 2, 5, 10] {
        println!(
            "  n = {n:2}: {} * sqrt(pi) = {}",
            hermite_norm_sq_rational(n),
            fmt40(&hermite_norm_sq(n, prec))
        );
    }

    // Values at the origin vanish at odd degree and alternate in sign at
    // even degree, which is what drives the parity split downstream.
    println!("\nvalues at the origin:");
    for n in 0..=8 {
        println!("  H_{n}(0) = {}", hermite_at_zero_rational(n));
    }
}

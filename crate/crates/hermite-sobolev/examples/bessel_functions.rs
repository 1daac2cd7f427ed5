//! The limit-side special functions: Bessel J at half-integer order, its
//! positive zeros, and the fixed combinations the scaled polynomial
//! families converge to.

use hermite_sobolev::bessel::{bessel_j, bessel_zero, limit_function, LimitFunctionId};
use hermite_sobolev::{Parity, Real, Result};
use rug::{Float, Rational};

fn main() -> Result<()> {
    let prec = 192;
    let half = Rational::from((1, 2));

    // J_(1/2)(x) = sqrt(2/(pi x)) sin x, an identity the series evaluator
    // has to reproduce.
    println!("J_(1/2) against its elementary form:");
    for k in [1, 4, 9] {
        let x = Real::from_i64(k, prec);
        let j = bessel_j(&half, &x);
        let closed = {
            let two_over = &Real::from_i64(2, prec) / &(&Real::pi(prec) * &x);
            let sin = Real::from_float(Float::with_val(prec, k).sin());
            &two_over.sqrt() * &sin
        };
        println!("  x = {k}: {:.12}  residual {:.3e}", j.to_f64(), (&j - &closed).to_f64());
    }

    // Zeros of J_(1/2) are exactly k pi.
    println!("\nzeros of J_(1/2) minus k pi:");
    for k in 1..=4 {
        let z = bessel_zero(&half, k, prec)?;
        let kpi = &Real::from_i64(k as i64, prec) * &Real::pi(prec);
        println!("  k = {k}: {:.3e}", (&z - &kpi).to_f64());
    }

    println!("\nfirst zeros at the orders the zero tables target:");
    for num in [3, 5, 7, 9] {
        let alpha = Rational::from((num, 2));
        let z = bessel_zero(&alpha, 1, prec)?;
        println!("  j_({num}/2, 1) = {:.15}", z.to_f64());
    }

    // Each covered family has one of these limits; the gap cases combine
    // three orders with fixed weights.
    let ids = [
        LimitFunctionId::HermiteEven,
        LimitFunctionId::EvenMass,
        LimitFunctionId::OddMass,
        LimitFunctionId::EvenBoth,
        LimitFunctionId::EvenGap,
        LimitFunctionId::OddGap,
        LimitFunctionId::Conjecture { r: 3, parity: Parity::Even },
    ];
    let x = Real::from_rational(&Rational::from((5, 2)), prec);
    println!("\nlimit functions at x = 5/2:");
    for id in &ids {
        println!("  {:10.6}  {}", limit_function(id, &x).to_f64(), id.label());
    }
    Ok(())
}

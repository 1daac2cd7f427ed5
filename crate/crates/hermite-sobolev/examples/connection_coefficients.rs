//! The two-mass family in closed form: each member is the bare polynomial
//! plus two kernel corrections, and the correction coefficients have
//! explicit limits as the degree grows.

use hermite_sobolev::qlambda::{
    coeff_limit_rows, connection_coeffs, delta_parts, q_poly, ConnectionCoeffs, TwoByTwoCase,
};
use hermite_sobolev::{Real, Result};
use rug::Rational;

fn main() -> Result<()> {
    let prec = 192;
    let one = Rational::from(1);
    let coupled = TwoByTwoCase::new(Rational::from(2), one.clone(), one.clone())?;

    // The normalizer splits into exact pieces: delta_n = e0 + e1/sqrt(pi)
    // + e2/pi with every piece a rational.
    println!("normalizer parts (e0, e1, e2) for M = [[2, 1], [1, 1]]:");
    for n in [2, 3, 6, 7] {
        let (e0, e1, e2) = delta_parts(n, &coupled)?;
        println!("  n = {n}: ({e0}, {e1}, {e2})");
    }

    println!("\nconnection coefficients:");
    for n in [4, 5, 12, 13] {
        match connection_coeffs(n, &coupled, prec)? {
            ConnectionCoeffs::Even { a, b } => {
                println!("  n = {n:2}: a = {:+.8}, b = {:+.8}", a.to_f64(), b.to_f64())
            }
            ConnectionCoeffs::Odd { c, d } => {
                println!("  n = {n:2}: c = {:+.8}, d = {:+.8}", c.to_f64(), d.to_f64())
            }
        }
    }

    // Under the right power of n each coefficient settles on a limit that
    // depends only on the mass block. The rank-two coupled block sends
    // b and c to zero at rate n^(-3/2), so those rows carry n^(3/2).
    println!("\nscaled coefficients against their limits:");
    let rows = coeff_limit_rows(&coupled, &[10, 40, 160], prec)?;
    for r in &rows {
        println!(
            "  m = {:3}  {:12}  value {:+.6}  target {:+.6}  err {:.2e}",
            r.n, r.label, r.value, r.target, r.err
        );
    }

    // The closed form is how q_poly builds the member; its leading
    // coefficient stays exactly 1.
    let p = q_poly(9, &coupled, prec)?;
    let lead = p.coeff(9);
    println!(
        "\nq_9 leading coefficient: 1 + {:.2e}",
        (lead - &Real::one(lead.prec())).to_f64()
    );
    Ok(())
}

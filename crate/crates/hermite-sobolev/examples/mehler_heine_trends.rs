//! Scaled polynomial values approaching their limit functions: pick a
//! family, scale degree 2n or 2n+1 members around the origin, and watch
//! the sup error over a fixed grid fall as n grows.

use hermite_sobolev::mehler_heine::{default_grid, mh_report, ScaledFamily, FINAL_SUP_BOUND};
use hermite_sobolev::qlambda::TwoByTwoCase;
use hermite_sobolev::{Parity, Result};
use rug::Rational;

fn main() -> Result<()> {
    let prec = 256;
    let grid = default_grid(prec);
    let ns = [25usize, 50, 100, 200];
    let one = Rational::from(1);

    let families = [
        ScaledFamily::Hermite { parity: Parity::Even },
        ScaledFamily::QLambda {
            case: TwoByTwoCase::diagonal(one.clone(), Rational::new())?,
            parity: Parity::Even,
        },
        ScaledFamily::QLambda {
            case: TwoByTwoCase::diagonal(Rational::new(), one.clone())?,
            parity: Parity::Odd,
        },
        ScaledFamily::DiagonalS {
            masses: vec![one.clone(), one.clone(), one.clone(), one.clone()],
            parity: Parity::Odd,
        },
        // Second-derivative mass only: the limit mixes three Bessel orders.
        ScaledFamily::DiagonalS {
            masses: vec![Rational::new(), Rational::new(), one.clone(), one],
            parity: Parity::Even,
        },
    ];

    for fam in &families {
        let rep = mh_report(fam, &ns, &grid, prec)?;
        println!("{} approaches {}", rep.family, rep.limit.label());
        for (n, err) in rep.n_list.iter().zip(&rep.sup_errors) {
            println!("  n = {n:3}: sup error {err:.4}");
        }
        println!(
            "  decreasing {}, final below {FINAL_SUP_BOUND} {}, sign ok {}\n",
            rep.decreasing, rep.final_below, rep.sign_ok
        );
    }
    Ok(())
}

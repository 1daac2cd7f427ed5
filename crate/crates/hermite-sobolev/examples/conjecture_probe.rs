//! Beyond the proven cases: with all six masses positive (derivatives 0
//! through 5) the scaling limit is predicted but not established. This
//! probe measures the distance to the predicted limit and reports the
//! trend without asserting it.

use hermite_sobolev::mehler_heine::{conjecture_probe, default_grid};
use hermite_sobolev::zeros::zero_case_plan;
use hermite_sobolev::mehler_heine::ScaledFamily;
use hermite_sobolev::{Parity, Result};
use rug::Rational;

fn main() -> Result<()> {
    let prec = 256;
    let masses: Vec<Rational> = (0..6).map(|_| Rational::from(1)).collect();
    let ns = [25usize, 50, 100, 200];

    let probe = conjecture_probe(&masses, &ns, &default_grid(prec), prec)?;
    for rep in [&probe.even, &probe.odd] {
        println!("{} against the predicted {}", rep.family, rep.limit.label());
        for (n, err) in rep.n_list.iter().zip(&rep.sup_errors) {
            println!("  n = {n:3}: sup error {err:.4}");
        }
        println!("  decreasing: {}\n", rep.decreasing);
    }

    // The zero-table machinery knows these targets are conjectured and
    // marks its report informational rather than pass/fail.
    let fam = ScaledFamily::DiagonalS {
        masses,
        parity: Parity::Even,
    };
    let plan = zero_case_plan(&fam)?;
    println!(
        "zero plan: {} accelerated, Bessel order {:?}, conjectured: {}",
        plan.accelerated,
        plan.alpha.map(|a| a.to_string()),
        plan.conjectured
    );
    Ok(())
}

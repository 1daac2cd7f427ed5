//! How origin masses pull zeros inward. The smallest positive zero of the
//! massed family collapses toward 0 faster than the bare family's, the
//! next one locks onto a Bessel zero, and the rest stay interlaced with
//! the bare pattern. Heavier mass blocks push a zero pair off the real
//! line entirely.

use hermite_sobolev::bessel::bessel_zero;
use hermite_sobolev::mehler_heine::ScaledFamily;
use hermite_sobolev::qlambda::{q_poly, TwoByTwoCase};
use hermite_sobolev::zeros::{
    family_zero_table, hermite_zeros, interlace_check, real_zeros, zero_asymptotics_report,
    zero_residual_ok,
};
use hermite_sobolev::{Parity, Result};
use rug::Rational;

fn main() -> Result<()> {
    let prec = 256;
    let ns = [25usize, 50, 100];
    let one = Rational::from(1);

    // One function mass at the origin, even degrees.
    let fam = ScaledFamily::QLambda {
        case: TwoByTwoCase::diagonal(one.clone(), Rational::new())?,
        parity: Parity::Even,
    };
    let rep = zero_asymptotics_report(&fam, &ns, 2, prec)?;
    let target = bessel_zero(&Rational::from((3, 2)), 1, prec)?;
    println!("single mass, degree 2n, two smallest positive zeros:");
    println!("  sqrt(n) z_1 (falls to 0)        2 sqrt(n) z_2 (approaches j_(3/2,1) = {:.6})", target.to_f64());
    for (i, &n) in ns.iter().enumerate() {
        println!(
            "  n = {n:3}: {:8.5}                {:9.6}",
            rep.trends[0].sqrt_scaled[i],
            rep.trends[1].two_sqrt_scaled[i]
        );
    }
    println!(
        "  k = 1 accelerating: {}, k = 2 approaching: {:?}",
        rep.trends[0].sqrt_strictly_decreasing, rep.trends[1].approaching
    );

    // Away from the accelerated cluster the massed zeros still interlace
    // with the bare family's.
    let q25 = family_zero_table(&fam, 25, prec)?;
    let h50 = hermite_zeros(50, prec)?;
    println!("  interlaces with the bare degree-50 zeros: {}", interlace_check(&q25, &h50));

    // Four masses: one zero pair leaves the real axis, and its modulus
    // joins the accelerated cluster.
    let four = ScaledFamily::DiagonalS {
        masses: vec![one.clone(), one.clone(), one.clone(), one.clone()],
        parity: Parity::Even,
    };
    let rep = zero_asymptotics_report(&four, &ns, 1, prec)?;
    println!("\nfour masses, imaginary pair modulus under sqrt(n) scaling:");
    for (i, &n) in ns.iter().enumerate() {
        println!("  n = {n:3}: {:8.5}", rep.imaginary_trends[0].sqrt_scaled[i]);
    }
    println!("  accelerating: {}", rep.imaginary_trends[0].accelerating);

    // Masses on the second and third derivative only: the pair persists
    // but does not accelerate, which separates the two regimes.
    let gap = ScaledFamily::DiagonalS {
        masses: vec![Rational::new(), Rational::new(), one.clone(), one.clone()],
        parity: Parity::Even,
    };
    let rep = zero_asymptotics_report(&gap, &ns, 1, prec)?;
    println!("\ngap masses, same diagnostic:");
    for (i, &n) in ns.iter().enumerate() {
        println!("  n = {n:3}: {:8.5}", rep.imaginary_trends[0].sqrt_scaled[i]);
    }
    println!("  accelerating: {}", rep.imaginary_trends[0].accelerating);

    // A coupled block breaks the even/odd symmetry, so the certified fold
    // does not apply; the plain sweep still finds the real zeros.
    let coupled = TwoByTwoCase::new(one.clone(), one.clone(), one)?;
    let p = q_poly(9, &coupled, prec)?;
    let table = real_zeros(&p, false)?;
    let zs: Vec<String> = table
        .positive_zeros
        .iter()
        .map(|z| format!("{:.6}", z.to_f64()))
        .collect();
    println!("\ncoupled q_9, positive zeros from the unfolded sweep: [{}]", zs.join(", "));
    let certified = table.positive_zeros.iter().all(|z| zero_residual_ok(&p, z));
    println!("  residual check at every reported zero: {certified}");
    Ok(())
}

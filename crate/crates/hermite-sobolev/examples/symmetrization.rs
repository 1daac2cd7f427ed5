//! The quadratic substitution that folds the symmetric line families onto
//! half-line families: even members become half-line members in x^2, odd
//! members pick up a factor x, and the origin masses map across with
//! explicit rising-factorial scale factors.

use hermite_sobolev::symmetrize::{
    laguerre_sobolev_poly, mass_map, pochhammer, s_poly, symmetrization_residual,
};
use hermite_sobolev::Result;
use rug::Rational;

fn main() -> Result<()> {
    let prec = 192;
    let masses: Vec<Rational> = [1, 2, 3, 4].iter().map(|&m| Rational::from(m)).collect();

    // Even-derivative masses feed the alpha = -1/2 half-line family,
    // odd-derivative masses the alpha = +1/2 one.
    let (even, odd) = mass_map(&masses)?;
    println!("line masses {:?} map to", [1, 2, 3, 4]);
    println!("  half-line even block: {:?}", even.iter().map(|m| m.to_string()).collect::<Vec<_>>());
    println!("  half-line odd block:  {:?}", odd.iter().map(|m| m.to_string()).collect::<Vec<_>>());

    // Differentiating f(x^2) i times at 0 picks out the i-th coefficient
    // with a rising-factorial factor; the mass carries its square. For the
    // second block the factors are (2)_1 = 2 and (2)_2 = 6, hence the 4x
    // and 36x above.
    let two = Rational::from(2);
    println!(
        "  (2)_1 = {}, (2)_2 = {}",
        pochhammer(&two, 1),
        pochhammer(&two, 2)
    );

    // Fold residual: S_{2n}(x) minus L_n(x^2), and S_{2n+1}(x) minus
    // x times its half-line counterpart, coefficient by coefficient.
    // Zero in exact arithmetic, solver rounding here.
    println!("\nfold residuals, max |coefficient|:");
    for n in 3..=8 {
        let r = symmetrization_residual(&masses, n, prec)?;
        println!("  degree {n}: {:.3e}", r.to_f64());
    }

    // The half-line member the even fold lands on, built directly.
    let l = laguerre_sobolev_poly(&Rational::from((-1, 2)), &even, 3, prec)?;
    let s = s_poly(&masses, 6, prec)?;
    println!("\nhalf-line L_3 coefficients:  {:?}",
        l.coeffs().iter().map(|c| format!("{:.6}", c.to_f64())).collect::<Vec<_>>());
    println!("even coefficients of S_6:    {:?}",
        s.coeffs().iter().step_by(2).map(|c| format!("{:.6}", c.to_f64())).collect::<Vec<_>>());
    Ok(())
}

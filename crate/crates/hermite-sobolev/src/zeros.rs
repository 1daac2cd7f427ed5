//! Real zeros of the line families and their scaled asymptotics.
//!
//! Symmetric members are folded onto the half-line first: a degree-2m even
//! polynomial becomes a degree-m polynomial in t = x^2, an odd one loses its
//! root at the origin the same way. Positive roots of the folded polynomial
//! are line zeros squared; a *negative* folded root is a purely imaginary
//! zero pair of the line polynomial. The four-mass family genuinely grows
//! one such pair (its folded constant term changes sign), so the root hunt
//! certifies counts as positive + negative + declared complex = half-degree
//! rather than assuming everything stays real.
//!
//! Bracketing walks a sign grid that is uniform in x (roughly uniform in
//! zero density for Hermite-like polynomials), subdivides near the origin
//! where mass-perturbed families park their accelerated zeros, and refines
//! each sign-change bracket by bisection plus safeguarded Newton.

use rug::Rational;

use crate::bessel::bessel_zero;
use crate::hermite::hermite_rationals;
use crate::mehler_heine::{check_diagonal_masses, ScaledFamily};
use crate::poly::Poly;
use crate::qlambda::q_poly;
use crate::real::Real;
use crate::symmetrize::{laguerre_sobolev_poly, mass_map};
use crate::{Error, Parity, Result};

/// Evaluation precision for a degree-d table requested at output precision
/// prec. The same headroom policy the scaled evaluators use.
pub fn working_prec(degree: usize, prec: u32) -> u32 {
    prec + 2 * degree as u32 + 64
}

/// An accelerating scaled zero must drop its squared sqrt(n)-scaling below
/// this fraction over the report's n range. Measured separation: the
/// four-mass imaginary pair lands near 0.74, the gap family's persistent
/// pair near 0.98.
pub const ACCEL_RATIO: f64 = 0.85;

/// What the root-count certification may tolerate for one family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum RootReality {
    /// Every folded root is real positive (Hermite, diagonal 2x2 cases).
    AllPositive,
    /// Real roots only, but some may be negative (two-mass-pair family:
    /// its half-line polynomial is Laguerre-type with one derivative mass,
    /// which admits at most one nonpositive zero).
    AllowNegatives,
    /// Conjugate pairs without a real signature may remain (three masses
    /// and up, where no reality theorem exists).
    AllowComplexPairs,
}

/// Positive zeros of one family member, with the two scalings the limit
/// statements use, plus whatever failed to be a positive real zero.
#[derive(Clone, Debug)]
pub struct ZeroTable {
    pub degree: usize,
    /// Strictly increasing.
    pub positive_zeros: Vec<Real>,
    /// 2 sqrt(m) * zero with m = floor(degree/2), the Bessel-target scaling.
    pub scaled_two_sqrt: Vec<Real>,
    /// sqrt(m) * zero, the acceleration diagnostic.
    pub scaled_sqrt: Vec<Real>,
    /// |z| for certified purely imaginary zero pairs z = +-i|z|, i.e.
    /// sign-change-certified negative roots of the folded polynomial.
    pub imaginary_pair_moduli: Vec<Real>,
    /// Residual conjugate quadruples no sign scan can see: root-count
    /// shortfall left after the positive and negative sweeps.
    pub complex_pairs: usize,
}

impl ZeroTable {
    fn from_roots(degree: usize, zeros: Vec<Real>, imag: Vec<Real>, complex_pairs: usize) -> ZeroTable {
        let prec = zeros
            .first()
            .or_else(|| imag.first())
            .map(|z| z.prec())
            .unwrap_or(64);
        let m = degree / 2;
        let sqrt_m = Real::from_i64(m as i64, prec).sqrt();
        let two_sqrt_m = &sqrt_m + &sqrt_m;
        let scaled_two_sqrt = zeros.iter().map(|z| z * &two_sqrt_m).collect();
        let scaled_sqrt = zeros.iter().map(|z| z * &sqrt_m).collect();
        ZeroTable {
            degree,
            positive_zeros: zeros,
            scaled_two_sqrt,
            scaled_sqrt,
            imaginary_pair_moduli: imag,
            complex_pairs,
        }
    }

    pub fn len(&self) -> usize {
        self.positive_zeros.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positive_zeros.is_empty()
    }

    /// True when every zero of the line polynomial is accounted for by a
    /// positive real pair (no imaginary pairs, no complex residue).
    pub fn all_real(&self) -> bool {
        self.imaginary_pair_moduli.is_empty() && self.complex_pairs == 0
    }
}

fn midpoint(a: &Real, b: &Real) -> Real {
    let half = Real::from_f64(0.5, a.prec());
    &(a + b) * &half
}

fn sign_at(g: &Poly, t: &Real) -> i32 {
    let v = g.eval(t);
    if v.is_zero() {
        0
    } else {
        v.sign()
    }
}

/// One certified root of g inside (lo, hi), where the endpoint signs differ.
/// Bisection opens, safeguarded Newton finishes; the bracket keeps shrinking
/// until its width drops below scale * 2^-(prec - 48).
fn refine_bracket(
    g: &Poly,
    gd: &Poly,
    mut lo: Real,
    mut hi: Real,
    s_lo: i32,
) -> Result<(Real, Real)> {
    let wp = g.prec();
    let tol_shift = (wp as i64 - 48).max(16) as u32;
    let one = Real::from_i64(1, wp);
    let mut x = midpoint(&lo, &hi);
    for iter in 0..(10 * wp as usize) {
        let width = (&hi - &lo).abs();
        let scale = hi.abs().max(&one);
        let bound = Real::from_float(scale.as_float().clone() >> tol_shift);
        if width.as_float() <= bound.as_float() {
            return Ok((lo, hi));
        }
        let fx = g.eval(&x);
        if fx.is_zero() {
            return Ok((x.clone(), x));
        }
        if fx.sign() == s_lo {
            lo = x.clone();
        } else {
            hi = x.clone();
        }
        let mut next = None;
        // A few pure bisection steps first; afterwards every eighth step
        // stays a bisection so the bracket width cannot stall while Newton
        // converges one-sided.
        if iter >= 6 && iter % 8 != 7 {
            let dfx = gd.eval(&x);
            if !dfx.is_zero() {
                let cand = &x - &(&fx / &dfx);
                if cand.as_float() > lo.as_float() && cand.as_float() < hi.as_float() {
                    next = Some(cand);
                }
            }
        }
        x = next.unwrap_or_else(|| midpoint(&lo, &hi));
    }
    Err(Error::InternalConsistency(
        "zero refinement ran out of iterations".into(),
    ))
}

/// Sign grid over (0, sqrt(t_bound)) in x-space with t = x^2 fed to g.
struct SignGrid {
    xs: Vec<Real>,
    signs: Vec<i32>,
}

impl SignGrid {
    fn new(g: &Poly, b: &Real, cells: usize) -> Result<SignGrid> {
        let wp = g.prec();
        let xs: Vec<Real> = (0..=cells)
            .map(|j| {
                let frac = Real::from_i64(j as i64, wp) / Real::from_i64(cells as i64, wp);
                b * &frac
            })
            .collect();
        let mut signs = Vec::with_capacity(xs.len());
        for x in &xs {
            signs.push(sign_at(g, &(x * x)));
        }
        if signs[0] == 0 {
            return Err(Error::InternalConsistency(
                "folded polynomial vanishes at the origin".into(),
            ));
        }
        let mut grid = SignGrid { xs, signs };
        grid.nudge_zeros(g)?;
        Ok(grid)
    }

    /// A grid point that lands exactly on a root makes cell counting
    /// ambiguous; push it slightly right.
    fn nudge_zeros(&mut self, g: &Poly) -> Result<()> {
        for j in 1..self.xs.len() {
            let mut tries = 0;
            while self.signs[j] == 0 && tries < 8 {
                let gap = if j + 1 < self.xs.len() {
                    (&self.xs[j + 1] - &self.xs[j]).abs()
                } else {
                    (&self.xs[j] - &self.xs[j - 1]).abs()
                };
                let shift = Real::from_float(gap.into_float() >> 10u32);
                self.xs[j] = &self.xs[j] + &shift;
                self.signs[j] = sign_at(g, &(&self.xs[j] * &self.xs[j]));
                tries += 1;
            }
            if self.signs[j] == 0 {
                return Err(Error::InternalConsistency(
                    "grid point pinned on an exact zero".into(),
                ));
            }
        }
        Ok(())
    }

    fn change_cells(&self) -> Vec<usize> {
        (0..self.xs.len() - 1)
            .filter(|&i| self.signs[i] * self.signs[i + 1] < 0)
            .collect()
    }

    /// Splits the listed cells at their x-midpoints. Indices must be
    /// ascending.
    fn split(&mut self, g: &Poly, cells: &[usize]) {
        let mut xs = Vec::with_capacity(self.xs.len() + cells.len());
        let mut signs = Vec::with_capacity(self.xs.len() + cells.len());
        let mut c = 0usize;
        for i in 0..self.xs.len() {
            xs.push(self.xs[i].clone());
            signs.push(self.signs[i]);
            if c < cells.len() && cells[c] == i {
                let mid = midpoint(&self.xs[i], &self.xs[i + 1]);
                signs.push(sign_at(g, &(&mid * &mid)));
                xs.push(mid);
                c += 1;
            }
        }
        self.xs = xs;
        self.signs = signs;
    }

    fn extend(&mut self, g: &Poly, upto: &Real, cells: usize) {
        let last = self.xs.last().unwrap().clone();
        let wp = last.prec();
        let step = &(upto - &last) / &Real::from_i64(cells as i64, wp);
        for j in 1..=cells {
            let x = &last + &(&step * &Real::from_i64(j as i64, wp));
            self.signs.push(sign_at(g, &(&x * &x)));
            self.xs.push(x);
        }
    }
}

/// Locates as many of the `target` expected roots of g on (0, t_bound) as
/// sign changes reveal. Staged refinement: subdivide cells left of the first
/// bracket (accelerated zeros live there), then every unresolved cell a few
/// levels, then one window extension. Returns the refined roots in t,
/// possibly fewer than target; more sign changes than target is an error.
fn scan_positive(g: &Poly, target: usize, t_bound: &Real) -> Result<Vec<Real>> {
    if target == 0 {
        return Ok(Vec::new());
    }
    let b = t_bound.sqrt();
    let cells0 = (4 * target).max(16);
    let mut grid = SignGrid::new(g, &b, cells0)?;
    let orig_width = &b / &Real::from_i64(cells0 as i64, b.prec());
    let fine = Real::from_float(orig_width.as_float().clone() >> 8u32);
    let coarse = Real::from_float(orig_width.as_float().clone() >> 3u32);

    // Stage 1: origin zone, fine resolution. Stage 2: everywhere, shallow.
    // Stage 3: widen the window once.
    let mut stage = 1;
    loop {
        let changes = grid.change_cells();
        if changes.len() > target {
            return Err(Error::CertificationViolation(format!(
                "found {} sign changes but expected at most {} positive roots",
                changes.len(),
                target
            )));
        }
        if changes.len() == target {
            break;
        }
        let first_change = changes.first().copied().unwrap_or(grid.xs.len() - 1);
        let splittable: Vec<usize> = (0..grid.xs.len() - 1)
            .filter(|&i| {
                if grid.signs[i] * grid.signs[i + 1] <= 0 {
                    return false;
                }
                let w = (&grid.xs[i + 1] - &grid.xs[i]).abs();
                match stage {
                    1 => i < first_change && w.as_float() > fine.as_float(),
                    _ => w.as_float() > coarse.as_float(),
                }
            })
            .collect();
        if splittable.is_empty() {
            stage += 1;
            if stage == 3 {
                let wider = &(t_bound.sqrt()) * &Real::from_f64(1.25, b.prec());
                grid.extend(g, &wider, 32);
                continue;
            }
            if stage > 3 {
                break;
            }
            continue;
        }
        grid.split(g, &splittable);
    }

    let changes = grid.change_cells();
    let gd = g.derivative();
    let mut roots = Vec::with_capacity(changes.len());
    for &i in &changes {
        let lo = &grid.xs[i] * &grid.xs[i];
        let hi = &grid.xs[i + 1] * &grid.xs[i + 1];
        let (rlo, rhi) = refine_bracket(g, &gd, lo, hi, grid.signs[i])?;
        roots.push(midpoint(&rlo, &rhi));
    }
    Ok(roots)
}

/// Certified split of the folded polynomial's roots into positive real,
/// negative real, and declared complex pairs, with the count closed against
/// the half-degree m under the family's reality policy.
fn half_line_roots(
    g: &Poly,
    m: usize,
    t_bound: &Real,
    reality: RootReality,
) -> Result<(Vec<Real>, Vec<Real>, usize)> {
    let pos = scan_positive(g, m, t_bound)?;
    if pos.len() == m {
        return Ok((pos, Vec::new(), 0));
    }
    let deficit = m - pos.len();
    if reality == RootReality::AllPositive {
        return Err(Error::CertificationViolation(format!(
            "located {} of {} positive roots for a family certified all-positive",
            pos.len(),
            m
        )));
    }
    // Negative roots of g are positive roots of g(-t).
    let reflected: Vec<Real> = (0..=g.degree())
        .map(|k| {
            let c = g.coeff(k);
            if k % 2 == 1 {
                -c
            } else {
                c.clone()
            }
        })
        .collect();
    let h = Poly::new(reflected);
    let neg = scan_positive(&h, deficit, t_bound)?;
    let remainder = deficit - neg.len();
    if remainder == 0 {
        return Ok((pos, neg, 0));
    }
    if reality == RootReality::AllowComplexPairs && remainder % 2 == 0 {
        return Ok((pos, neg, remainder / 2));
    }
    Err(Error::CertificationViolation(format!(
        "root count open: {} positive + {} negative of {} expected",
        pos.len(),
        neg.len(),
        m
    )))
}

/// Folds a symmetric line polynomial to the half-line: p(x) = g(x^2) for
/// even p, p(x) = x g(x^2) for odd. Off-parity coefficients must vanish to
/// rounding noise; genuinely asymmetric input is rejected.
fn fold_symmetric(p: &Poly) -> Result<Poly> {
    let wp = p.prec();
    let deg = p.degree();
    let par = deg % 2;
    let norm = p.coeff_norm();
    let tol = Real::from_float(norm.as_float().clone() >> (wp / 2));
    let mut g = Vec::with_capacity(deg / 2 + 1);
    for k in 0..=deg {
        let c = p.coeff(k);
        if k % 2 == par {
            g.push(c.clone());
        } else if c.abs().as_float() > tol.as_float() {
            return Err(Error::InvalidArgument(format!(
                "polynomial is not symmetric: coefficient {k} is {}",
                c.to_f64()
            )));
        }
    }
    Ok(Poly::new(g))
}

fn table_from_half_line(g: &Poly, degree: usize, reality: RootReality) -> Result<ZeroTable> {
    let wp = g.prec();
    let m = degree / 2;
    let t_bound = Real::from_i64((2 * degree + 3) as i64, wp);
    let (pos_t, neg_t, complex_pairs) = half_line_roots(g, m, &t_bound, reality)?;
    let zeros: Vec<Real> = pos_t.iter().map(|t| t.sqrt()).collect();
    let imag: Vec<Real> = neg_t.iter().map(|t| t.abs().sqrt()).collect();
    Ok(ZeroTable::from_roots(degree, zeros, imag, complex_pairs))
}

/// Positive zeros of a line polynomial. With `symmetric` set the polynomial
/// is folded and the root count is certified: positive zeros plus certified
/// imaginary pairs must close the floor(deg/2) budget, anything else is a
/// certification error. Without the flag the scan is a best-effort sweep of
/// (0, sqrt(2 deg + 3)), which is what the parity-broken coupled family
/// needs.
pub fn real_zeros(p: &Poly, symmetric: bool) -> Result<ZeroTable> {
    let deg = p.degree();
    if deg == 0 {
        return Ok(ZeroTable::from_roots(0, Vec::new(), Vec::new(), 0));
    }
    if symmetric {
        let g = fold_symmetric(p)?;
        return table_from_half_line(&g, deg, RootReality::AllowNegatives);
    }
    // Unfolded sweep: sign grid in x over the Hermite bound, a few
    // subdivision rounds, no certification.
    let wp = p.prec();
    let b = Real::from_i64((2 * deg + 3) as i64, wp).sqrt();
    let n0 = 8 * deg.max(4);
    let mut xs: Vec<Real> = (0..=n0)
        .map(|j| &b * &(Real::from_i64(j as i64, wp) / Real::from_i64(n0 as i64, wp)))
        .collect();
    let mut signs: Vec<i32> = xs.iter().map(|x| sign_at(p, x)).collect();
    for _ in 0..4 {
        let mut new_xs = Vec::with_capacity(2 * xs.len());
        let mut new_signs = Vec::with_capacity(2 * xs.len());
        for i in 0..xs.len() {
            new_xs.push(xs[i].clone());
            new_signs.push(signs[i]);
            if i + 1 < xs.len() && signs[i] * signs[i + 1] > 0 {
                let mid = midpoint(&xs[i], &xs[i + 1]);
                new_signs.push(sign_at(p, &mid));
                new_xs.push(mid);
            }
        }
        xs = new_xs;
        signs = new_signs;
    }
    let gd = p.derivative();
    let mut zeros = Vec::new();
    for i in 0..xs.len() - 1 {
        if signs[i] * signs[i + 1] < 0 {
            let (lo, hi) = refine_bracket(p, &gd, xs[i].clone(), xs[i + 1].clone(), signs[i])?;
            let z = midpoint(&lo, &hi);
            if z.sign() > 0 {
                zeros.push(z);
            }
        }
    }
    Ok(ZeroTable::from_roots(deg, zeros, Vec::new(), 0))
}

/// Positive zeros of the monic Hermite polynomial of the given degree.
pub fn hermite_zeros(degree: usize, prec: u32) -> Result<ZeroTable> {
    if degree == 0 {
        return Err(Error::InvalidArgument(
            "degree-0 polynomial has no zeros".into(),
        ));
    }
    let wp = working_prec(degree, prec);
    let hr = hermite_rationals(degree);
    let par = degree % 2;
    let g_rats: Vec<Rational> = (0..=degree / 2).map(|k| hr[2 * k + par].clone()).collect();
    let g = Poly::from_rationals(&g_rats, wp);
    table_from_half_line(&g, degree, RootReality::AllPositive)
}

/// Zero table for one member of a scaled family at half-degree index n
/// (line degree 2n or 2n+1). The diagonal mass families fold exactly, so
/// the root hunt always runs at half the line degree.
pub fn family_zero_table(fam: &ScaledFamily, n: usize, prec: u32) -> Result<ZeroTable> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "zero tables start at half-degree 1".into(),
        ));
    }
    let parity = fam.parity();
    let degree = match parity {
        Parity::Even => 2 * n,
        Parity::Odd => 2 * n + 1,
    };
    let wp = working_prec(degree, prec);
    match fam {
        ScaledFamily::Hermite { .. } => hermite_zeros(degree, prec),
        ScaledFamily::QLambda { case, .. } => {
            if !case.is_diagonal() {
                return Err(Error::UncoveredCase(
                    "coupled-mass zeros lose symmetry; use real_zeros directly".into(),
                ));
            }
            let p = q_poly(degree, case, wp)?;
            let g = fold_symmetric(&p)?;
            // The diagonal 2x2 zeros are real and interlace with Hermite's.
            table_from_half_line(&g, degree, RootReality::AllPositive)
        }
        ScaledFamily::DiagonalS { masses, .. } => {
            let r = check_diagonal_masses(masses)?;
            let (even_masses, odd_masses) = mass_map(masses)?;
            let (alpha, ms) = match parity {
                Parity::Even => (Rational::from((-1, 2)), even_masses),
                Parity::Odd => (Rational::from((1, 2)), odd_masses),
            };
            let g = laguerre_sobolev_poly(&alpha, &ms, n, wp)?;
            let reality = if r <= 2 {
                // Half-line side carries one function mass and one
                // derivative mass: Laguerre-type, real zeros, at most one
                // negative.
                RootReality::AllowNegatives
            } else {
                RootReality::AllowComplexPairs
            };
            table_from_half_line(&g, degree, reality)
        }
    }
}

/// Strict alternation of two positive-zero tables: merged by value, origins
/// must alternate and values must strictly increase. Identical tables fail,
/// as do tables whose lengths differ by more than one.
pub fn interlace_check(inner: &ZeroTable, outer: &ZeroTable) -> bool {
    let a = &inner.positive_zeros;
    let b = &outer.positive_zeros;
    if a.is_empty() || b.is_empty() {
        return false;
    }
    if a.len().abs_diff(b.len()) > 1 {
        return false;
    }
    let mut i = 0usize;
    let mut j = 0usize;
    let mut last_from_a: Option<bool> = None;
    let mut last: Option<&Real> = None;
    while i < a.len() || j < b.len() {
        if i < a.len() && j < b.len() && a[i].as_float() == b[j].as_float() {
            return false;
        }
        let take_a = if i >= a.len() {
            false
        } else if j >= b.len() {
            true
        } else {
            a[i].as_float() < b[j].as_float()
        };
        let v = if take_a { &a[i] } else { &b[j] };
        if let Some(prev_a) = last_from_a {
            if prev_a == take_a {
                return false;
            }
        }
        if let Some(prev) = last {
            if prev.as_float() >= v.as_float() {
                return false;
            }
        }
        last_from_a = Some(take_a);
        last = Some(v);
        if take_a {
            i += 1;
        } else {
            j += 1;
        }
    }
    true
}

/// Expected small-zero behavior of one case: how many positive zeros
/// accelerate to the origin faster than 1/sqrt(n), which Bessel order the
/// survivors chase under the 2 sqrt(n) scaling, and whether an imaginary
/// pair is part of the picture. `alpha: None` marks the gap pattern whose
/// positive-zero limits are left unstated.
#[derive(Clone, Debug)]
pub struct ZeroCasePlan {
    /// Accelerated positive real zeros, counted from k = 1.
    pub accelerated: usize,
    /// Bessel order for targets j_{alpha, k - accelerated}.
    pub alpha: Option<Rational>,
    /// (pair count, whether the pair accelerates), when the family is known
    /// to hold an imaginary pair; None when nothing is asserted.
    pub expected_imaginary: Option<(usize, bool)>,
    /// Targets come from the unproven all-positive-masses limit guess.
    pub conjectured: bool,
}

pub fn zero_case_plan(fam: &ScaledFamily) -> Result<ZeroCasePlan> {
    let plan = |accelerated: usize,
                alpha: Option<Rational>,
                expected_imaginary: Option<(usize, bool)>,
                conjectured: bool| ZeroCasePlan {
        accelerated,
        alpha,
        expected_imaginary,
        conjectured,
    };
    let even = fam.parity() == Parity::Even;
    let bare = if even {
        Rational::from((-1, 2))
    } else {
        Rational::from((1, 2))
    };
    let single = if even {
        Rational::from((3, 2))
    } else {
        Rational::from((5, 2))
    };
    let double = if even {
        Rational::from((7, 2))
    } else {
        Rational::from((9, 2))
    };
    match fam {
        ScaledFamily::Hermite { .. } => Ok(plan(0, Some(bare), Some((0, false)), false)),
        ScaledFamily::QLambda { case, .. } => {
            if !case.is_diagonal() {
                return Err(Error::UncoveredCase(
                    "zero asymptotics are stated for the symmetric cases only".into(),
                ));
            }
            let mass = if even { case.m0() } else { case.m1() };
            if *mass > 0 {
                Ok(plan(1, Some(single), Some((0, false)), false))
            } else {
                Ok(plan(0, Some(bare), Some((0, false)), false))
            }
        }
        ScaledFamily::DiagonalS { masses, .. } => {
            let r = check_diagonal_masses(masses)?;
            let par = if even { 0 } else { 1 };
            if r == 1 {
                let pos = masses[par] > 0;
                return Ok(if pos {
                    plan(1, Some(single), Some((0, false)), false)
                } else {
                    plan(0, Some(bare), Some((0, false)), false)
                });
            }
            if r == 2 {
                let lo = masses[par] > 0;
                let hi = masses[par + 2] > 0;
                // The stated picture has the first two positive zeros of the
                // all-positive case accelerating. In the computed tables the
                // second accelerating pair is purely imaginary, so only one
                // positive zero accelerates and the Bessel ladder starts at
                // the second positive zero.
                return Ok(match (lo, hi) {
                    (false, false) => plan(0, Some(bare), Some((0, false)), false),
                    (true, false) => plan(1, Some(single), Some((0, false)), false),
                    (false, true) => plan(0, None, Some((1, false)), false),
                    (true, true) => plan(1, Some(double), Some((1, true)), false),
                });
            }
            if masses.iter().all(|m| *m > 0) {
                let alpha = &bare + Rational::from(2 * r as u64);
                Ok(plan(r, Some(alpha), None, true))
            } else {
                Err(Error::UncoveredCase(format!(
                    "no limit is stated for {} masses with a gap",
                    masses.len()
                )))
            }
        }
    }
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct ZeroRow {
    /// Half-degree index.
    pub n: usize,
    pub degree: usize,
    /// Zero index, 1-based, counting up from the origin.
    pub k: usize,
    pub zero: f64,
    pub two_sqrt_scaled: f64,
    pub sqrt_scaled: f64,
    pub target: Option<f64>,
    pub accelerated: bool,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct ZeroTrend {
    pub k: usize,
    pub accelerated: bool,
    pub target: Option<f64>,
    pub sqrt_scaled: Vec<f64>,
    pub two_sqrt_scaled: Vec<f64>,
    /// sqrt(n) * zero falls at every step.
    pub sqrt_strictly_decreasing: bool,
    /// Last over first of (sqrt(n) * zero)^2; below ACCEL_RATIO counts as
    /// genuine acceleration rather than drift.
    pub sqrt_sq_final_over_first: f64,
    /// For targeted zeros: |2 sqrt(n) zero - target| falls (2% slack) and
    /// ends within 5% of the target.
    pub approaching: Option<bool>,
    pub final_rel_err: Option<f64>,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct ImaginaryRow {
    pub n: usize,
    pub degree: usize,
    /// Pair index among same-n imaginary pairs, 1-based, ascending modulus.
    pub k: usize,
    pub modulus: f64,
    pub sqrt_scaled: f64,
    pub two_sqrt_scaled: f64,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct ImaginaryTrend {
    pub k: usize,
    pub sqrt_scaled: Vec<f64>,
    pub strictly_decreasing: bool,
    pub sqrt_sq_final_over_first: f64,
    /// Decreasing and dropping below ACCEL_RATIO: the pair joins the
    /// accelerated-cluster story.
    pub accelerating: bool,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct ZeroAsymptoticsReport {
    pub family: String,
    pub parity: Parity,
    pub n_list: Vec<usize>,
    pub k_max: usize,
    pub conjectured_targets: bool,
    pub rows: Vec<ZeroRow>,
    pub trends: Vec<ZeroTrend>,
    pub imaginary_rows: Vec<ImaginaryRow>,
    /// Per-pair trends, present only when every n shows the same pair count.
    pub imaginary_trends: Vec<ImaginaryTrend>,
    /// (n, undetected conjugate pairs) for each table that left residue.
    pub complex_pairs_by_n: Vec<(usize, usize)>,
}

/// Scaled-zero table across n for the k_max smallest positive zeros, with
/// per-k trend verdicts against the case's stated limits and the imaginary
/// pairs reported alongside.
pub fn zero_asymptotics_report(
    fam: &ScaledFamily,
    n_list: &[usize],
    k_max: usize,
    prec: u32,
) -> Result<ZeroAsymptoticsReport> {
    if n_list.is_empty() || k_max == 0 {
        return Err(Error::InvalidArgument(
            "need at least one half-degree and one zero index".into(),
        ));
    }
    let min_n = *n_list.iter().min().unwrap();
    if k_max + 2 > min_n {
        return Err(Error::InvalidArgument(format!(
            "k_max {k_max} too close to the {min_n} roots of the smallest member"
        )));
    }
    let plan = zero_case_plan(fam)?;
    let mut targets: Vec<Option<f64>> = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        if k <= plan.accelerated {
            targets.push(None);
        } else if let Some(alpha) = &plan.alpha {
            let j = bessel_zero(alpha, k - plan.accelerated, prec)?;
            targets.push(Some(j.to_f64()));
        } else {
            targets.push(None);
        }
    }

    let mut rows = Vec::new();
    let mut imaginary_rows = Vec::new();
    let mut complex_pairs_by_n = Vec::new();
    let mut per_k_sqrt: Vec<Vec<f64>> = vec![Vec::new(); k_max];
    let mut per_k_two: Vec<Vec<f64>> = vec![Vec::new(); k_max];
    let mut imag_counts = Vec::new();
    let mut imag_sqrt: Vec<Vec<f64>> = Vec::new();
    for &n in n_list {
        let table = family_zero_table(fam, n, prec)?;
        if table.len() < k_max {
            return Err(Error::InvalidArgument(format!(
                "member n={n} has only {} positive zeros, k_max {k_max}",
                table.len()
            )));
        }
        for k in 1..=k_max {
            let two = table.scaled_two_sqrt[k - 1].to_f64();
            let sq = table.scaled_sqrt[k - 1].to_f64();
            per_k_sqrt[k - 1].push(sq);
            per_k_two[k - 1].push(two);
            rows.push(ZeroRow {
                n,
                degree: table.degree,
                k,
                zero: table.positive_zeros[k - 1].to_f64(),
                two_sqrt_scaled: two,
                sqrt_scaled: sq,
                target: targets[k - 1],
                accelerated: k <= plan.accelerated,
            });
        }
        let m = table.degree / 2;
        let sm = (m as f64).sqrt();
        imag_counts.push(table.imaginary_pair_moduli.len());
        for (idx, z) in table.imaginary_pair_moduli.iter().enumerate() {
            let zf = z.to_f64();
            if imag_sqrt.len() <= idx {
                imag_sqrt.push(Vec::new());
            }
            imag_sqrt[idx].push(sm * zf);
            imaginary_rows.push(ImaginaryRow {
                n,
                degree: table.degree,
                k: idx + 1,
                modulus: zf,
                sqrt_scaled: sm * zf,
                two_sqrt_scaled: 2.0 * sm * zf,
            });
        }
        if table.complex_pairs > 0 {
            complex_pairs_by_n.push((n, table.complex_pairs));
        }
    }

    let mut trends = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let sq = per_k_sqrt[k - 1].clone();
        let two = per_k_two[k - 1].clone();
        let sqrt_strictly_decreasing = sq.windows(2).all(|w| w[1] < w[0]);
        let ratio = (sq.last().unwrap() / sq.first().unwrap()).powi(2);
        let (approaching, final_rel_err) = match targets[k - 1] {
            Some(t) => {
                let errs: Vec<f64> = two.iter().map(|v| (v - t).abs()).collect();
                let falling = errs
                    .windows(2)
                    .all(|w| w[1] <= w[0] * (1.0 + crate::mehler_heine::DECREASE_SLACK))
                    && errs.last().unwrap() < errs.first().unwrap();
                let rel = errs.last().unwrap() / t.abs();
                (Some(falling && rel < 0.05), Some(rel))
            }
            None => (None, None),
        };
        trends.push(ZeroTrend {
            k,
            accelerated: k <= plan.accelerated,
            target: targets[k - 1],
            sqrt_scaled: sq,
            two_sqrt_scaled: two,
            sqrt_strictly_decreasing,
            sqrt_sq_final_over_first: ratio,
            approaching,
            final_rel_err,
        });
    }

    let uniform_imag = imag_counts.windows(2).all(|w| w[0] == w[1]);
    let mut imaginary_trends = Vec::new();
    if uniform_imag && imag_counts.first().copied().unwrap_or(0) > 0 {
        for (idx, sq) in imag_sqrt.iter().enumerate() {
            let strictly_decreasing = sq.windows(2).all(|w| w[1] < w[0]);
            let ratio = (sq.last().unwrap() / sq.first().unwrap()).powi(2);
            imaginary_trends.push(ImaginaryTrend {
                k: idx + 1,
                sqrt_scaled: sq.clone(),
                strictly_decreasing,
                sqrt_sq_final_over_first: ratio,
                accelerating: strictly_decreasing && ratio <= ACCEL_RATIO,
            });
        }
    }

    Ok(ZeroAsymptoticsReport {
        family: fam.label(),
        parity: fam.parity(),
        n_list: n_list.to_vec(),
        k_max,
        conjectured_targets: plan.conjectured,
        rows,
        trends,
        imaginary_rows,
        imaginary_trends,
        complex_pairs_by_n,
    })
}

/// True when |p(z)| is small against the cancellation-free magnitude of the
/// same Horner sweep, i.e. z is a zero to within the evaluation noise floor.
pub fn zero_residual_ok(p: &Poly, z: &Real) -> bool {
    let wp = p.prec();
    let val = p.eval(z).abs();
    let scale = p.eval_abs(z).max(&Real::from_i64(1, wp));
    let shift = (wp as i64 - 60).max(8) as u32;
    let bound = Real::from_float(scale.as_float().clone() >> shift);
    val.as_float() <= bound.as_float()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermite::hermite_monic;
    use crate::qlambda::TwoByTwoCase;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    #[test]
    fn small_hermite_tables_match_closed_forms() {
        let prec = 192;
        let t2 = hermite_zeros(2, prec).unwrap();
        assert_eq!(t2.len(), 1);
        let half = Real::from_rational(&rat(1, 2), t2.positive_zeros[0].prec());
        let err = (&t2.positive_zeros[0] - &half.sqrt()).abs();
        assert!(err.to_f64() < 1e-40);

        let t3 = hermite_zeros(3, prec).unwrap();
        assert_eq!(t3.len(), 1);
        let th = Real::from_rational(&rat(3, 2), t3.positive_zeros[0].prec());
        assert!((&t3.positive_zeros[0] - &th.sqrt()).abs().to_f64() < 1e-40);

        // Degree 4: squared zeros are (3 +- sqrt 6)/2.
        let t4 = hermite_zeros(4, prec).unwrap();
        assert_eq!(t4.len(), 2);
        let wp = t4.positive_zeros[0].prec();
        let six = Real::from_i64(6, wp).sqrt();
        let three = Real::from_i64(3, wp);
        let half = Real::from_f64(0.5, wp);
        let lo = (&(&three - &six) * &half).sqrt();
        let hi = (&(&three + &six) * &half).sqrt();
        assert!((&t4.positive_zeros[0] - &lo).abs().to_f64() < 1e-40);
        assert!((&t4.positive_zeros[1] - &hi).abs().to_f64() < 1e-40);
        assert_close(t4.positive_zeros[0].to_f64(), 0.5246476232752903, 1e-12);
        assert_close(t4.positive_zeros[1].to_f64(), 1.6506801238857845, 1e-12);
        assert!(t4.all_real());

        // Degree 1: the only zero sits at the origin.
        let t1 = hermite_zeros(1, prec).unwrap();
        assert!(t1.is_empty());
    }

    #[test]
    fn hermite_zero_residuals_certify() {
        let prec = 160;
        for degree in [17usize, 40, 81] {
            let table = hermite_zeros(degree, prec).unwrap();
            assert_eq!(table.len(), degree / 2);
            assert!(table.all_real());
            let wp = table.positive_zeros[0].prec();
            let h = hermite_monic(degree, wp);
            for w in table.positive_zeros.windows(2) {
                assert!(w[0].as_float() < w[1].as_float(), "zeros out of order");
            }
            for z in &table.positive_zeros {
                assert!(z.sign() > 0);
                assert!(
                    zero_residual_ok(&h, z),
                    "residual too large at degree {degree}"
                );
            }
        }
    }

    #[test]
    fn scaled_first_zero_tracks_the_cosine_rate() {
        // 2 sqrt(25) x_{50,1} lands within 5% of pi/2.
        let table = hermite_zeros(50, 128).unwrap();
        let target = std::f64::consts::PI / 2.0;
        let got = table.scaled_two_sqrt[0].to_f64();
        assert!((got - target).abs() / target < 0.05, "{got} vs {target}");
    }

    #[test]
    fn q2_zero_matches_the_closed_form() {
        // Q_2 for M0 = 1 is x^2 - sqrt(pi)/(2(sqrt(pi)+1)).
        let case = TwoByTwoCase::diagonal(rat(1, 1), rat(0, 1)).unwrap();
        let fam = ScaledFamily::QLambda {
            case,
            parity: Parity::Even,
        };
        let table = family_zero_table(&fam, 1, 192).unwrap();
        assert_eq!(table.len(), 1);
        let wp = table.positive_zeros[0].prec();
        let sp = Real::sqrt_pi(wp);
        let expect = (&sp / &(&(&sp + &Real::from_i64(1, wp)) * &Real::from_i64(2, wp))).sqrt();
        let err = (&table.positive_zeros[0] - &expect).abs();
        assert!(err.to_f64() < 1e-50, "err {}", err.to_f64());
    }

    #[test]
    fn interlace_check_handles_the_stated_patterns() {
        let prec = 128;
        let h3 = hermite_zeros(3, prec).unwrap();
        let h4 = hermite_zeros(4, prec).unwrap();
        let h5 = hermite_zeros(5, prec).unwrap();
        assert!(interlace_check(&h3, &h4));
        assert!(interlace_check(&h4, &h5));
        // Identical tables never interlace.
        assert!(!interlace_check(&h4, &h4));
        // Length gap of two cannot alternate.
        let h8 = hermite_zeros(8, prec).unwrap();
        assert!(!interlace_check(&h4, &h8));
    }

    #[test]
    fn mass_case_zeros_interlace_with_hermite() {
        let prec = 128;
        for (m0, m1) in [(1i64, 0i64), (1, 1), (3, 2)] {
            let case = TwoByTwoCase::diagonal(rat(m0, 1), rat(m1, 1)).unwrap();
            for degree in [8usize, 9, 24, 25] {
                let parity = Parity::of_degree(degree);
                let fam = ScaledFamily::QLambda {
                    case: case.clone(),
                    parity,
                };
                let n = degree / 2;
                let q = family_zero_table(&fam, n, prec).unwrap();
                let h = hermite_zeros(degree, prec).unwrap();
                // The member differs from Hermite exactly when the
                // parity-relevant mass is positive; otherwise the tables
                // must coincide and cannot interlace.
                let relevant = if degree % 2 == 0 { m0 } else { m1 };
                if relevant > 0 {
                    assert!(
                        interlace_check(&q, &h),
                        "degree {degree} masses ({m0},{m1})"
                    );
                } else {
                    assert!(!interlace_check(&q, &h));
                    for (a, b) in q.positive_zeros.iter().zip(&h.positive_zeros) {
                        assert!((a - b).abs().to_f64() < 1e-30);
                    }
                }
            }
        }
    }

    #[test]
    fn vanishing_mass_reproduces_hermite_zeros() {
        // Even members ignore the derivative mass entirely.
        let prec = 128;
        let case = TwoByTwoCase::diagonal(rat(0, 1), rat(1, 1)).unwrap();
        let fam = ScaledFamily::QLambda {
            case,
            parity: Parity::Even,
        };
        let q = family_zero_table(&fam, 6, prec).unwrap();
        let h = hermite_zeros(12, prec).unwrap();
        assert!(!interlace_check(&q, &h));
        for (a, b) in q.positive_zeros.iter().zip(&h.positive_zeros) {
            assert!((a - b).abs().to_f64() < 1e-35);
        }
    }

    #[test]
    fn four_mass_family_grows_an_imaginary_pair() {
        let prec = 96;
        let all = ScaledFamily::DiagonalS {
            masses: vec![rat(1, 1); 4],
            parity: Parity::Even,
        };
        let gap = ScaledFamily::DiagonalS {
            masses: vec![rat(0, 1), rat(1, 1), rat(1, 1), rat(1, 1)],
            parity: Parity::Even,
        };
        let ns = [10usize, 80];
        let mut all_sq1 = Vec::new();
        let mut all_imag = Vec::new();
        let mut gap_sq1 = Vec::new();
        let mut gap_imag = Vec::new();
        for &n in &ns {
            let ta = family_zero_table(&all, n, prec).unwrap();
            let tg = family_zero_table(&gap, n, prec).unwrap();
            // One pair of line zeros is imaginary: n - 1 positive remain.
            assert_eq!(ta.len(), n - 1);
            assert_eq!(ta.imaginary_pair_moduli.len(), 1);
            assert_eq!(ta.complex_pairs, 0);
            assert_eq!(tg.len(), n - 1);
            assert_eq!(tg.imaginary_pair_moduli.len(), 1);
            let sm = (n as f64).sqrt();
            all_sq1.push(ta.scaled_sqrt[0].to_f64());
            all_imag.push(sm * ta.imaginary_pair_moduli[0].to_f64());
            gap_sq1.push(tg.scaled_sqrt[0].to_f64());
            gap_imag.push(sm * tg.imaginary_pair_moduli[0].to_f64());
        }
        // All-positive case: first positive zero and the imaginary pair
        // both outrun 1/sqrt(n).
        assert!(all_sq1[1] < all_sq1[0] * 0.95, "{all_sq1:?}");
        assert!(all_imag[1] < all_imag[0] * 0.95, "{all_imag:?}");
        // Gap case: sqrt(n) xi_1 holds its level (the limit has no extra
        // origin vanishing), and so does its imaginary pair.
        assert!(gap_sq1[1] > gap_sq1[0] * 0.95, "{gap_sq1:?}");
        assert!(gap_imag[1] > gap_imag[0] * 0.85, "{gap_imag:?}");
    }

    #[test]
    fn six_mass_family_reports_a_complex_quadruple() {
        let fam = ScaledFamily::DiagonalS {
            masses: vec![rat(1, 1); 6],
            parity: Parity::Even,
        };
        let table = family_zero_table(&fam, 12, 96).unwrap();
        assert_eq!(table.complex_pairs, 1);
        assert!(table.imaginary_pair_moduli.is_empty());
        assert_eq!(table.len(), 10);
    }

    #[test]
    fn report_tracks_mass_case_targets() {
        let case = TwoByTwoCase::diagonal(rat(1, 1), rat(0, 1)).unwrap();
        let fam = ScaledFamily::QLambda {
            case,
            parity: Parity::Even,
        };
        let rep = zero_asymptotics_report(&fam, &[25, 50, 100], 2, 128).unwrap();
        assert!(!rep.conjectured_targets);
        assert!(rep.imaginary_rows.is_empty());
        let t1 = &rep.trends[0];
        assert!(t1.accelerated);
        assert!(t1.target.is_none());
        assert!(t1.sqrt_strictly_decreasing, "{:?}", t1.sqrt_scaled);
        let t2 = &rep.trends[1];
        assert!(!t2.accelerated);
        let target = t2.target.unwrap();
        // Second zero chases the first zero of J_{3/2}.
        assert_close(target, 4.493409457909064, 1e-9);
        let first = (t2.two_sqrt_scaled[0] - target).abs();
        let last = (t2.two_sqrt_scaled[2] - target).abs();
        assert!(last < first, "{:?}", t2.two_sqrt_scaled);
        assert!(t2.final_rel_err.unwrap() < 0.05);
    }

    #[test]
    fn report_tracks_bare_hermite_targets() {
        let fam = ScaledFamily::Hermite {
            parity: Parity::Odd,
        };
        let rep = zero_asymptotics_report(&fam, &[10, 25, 50], 1, 128).unwrap();
        let t1 = &rep.trends[0];
        // 2 sqrt(n) x_{2n+1,1} -> j_{1/2,1} = pi.
        assert_close(t1.target.unwrap(), std::f64::consts::PI, 1e-12);
        assert_eq!(t1.approaching, Some(true), "{:?}", t1.two_sqrt_scaled);
    }

    #[test]
    fn report_separates_four_mass_and_gap_regimes() {
        let prec = 96;
        let four = ScaledFamily::DiagonalS {
            masses: vec![rat(1, 1); 4],
            parity: Parity::Even,
        };
        let gap = ScaledFamily::DiagonalS {
            masses: vec![rat(0, 1), rat(1, 1), rat(1, 1), rat(1, 1)],
            parity: Parity::Even,
        };
        let ns = [10usize, 20, 40];
        let rf = zero_asymptotics_report(&four, &ns, 2, prec).unwrap();
        let rg = zero_asymptotics_report(&gap, &ns, 2, prec).unwrap();
        // Four-mass: both the first positive zero and the imaginary pair
        // accelerate; the second positive zero chases j_{7/2,1}.
        assert!(rf.trends[0].sqrt_strictly_decreasing);
        assert_eq!(rf.imaginary_trends.len(), 1);
        assert!(rf.imaginary_trends[0].strictly_decreasing);
        let t2 = &rf.trends[1];
        assert_close(t2.target.unwrap(), 6.9879320005005, 1e-6);
        // Gap case: no acceleration anywhere, no Bessel targets stated.
        assert!(!rg.trends[0].sqrt_strictly_decreasing);
        assert!(rg.trends[0].target.is_none());
        assert_eq!(rg.imaginary_trends.len(), 1);
        assert!(!rg.imaginary_trends[0].accelerating);
    }

    #[test]
    fn asymmetric_sweep_finds_simple_roots() {
        // (x - 1/2)(x - 2)(x + 3): positive roots 1/2 and 2.
        let prec = 128;
        let coeffs = [rat(3, 1), rat(-13, 2), rat(1, 2), rat(1, 1)];
        let p = Poly::from_rationals(&coeffs, prec);
        let table = real_zeros(&p, false).unwrap();
        assert_eq!(table.len(), 2);
        assert_close(table.positive_zeros[0].to_f64(), 0.5, 1e-25);
        assert_close(table.positive_zeros[1].to_f64(), 2.0, 1e-25);
    }
}

//! Enclosures of the renormalization scalings over the perturbation ball.
//!
//! `lambda` solves `s(lambda, 1) + s(0, 1) = 0`. For the x-quadratic
//! truncation `s1 = A1(y) x^2 + B1(y) x + C1(y)` this is
//! `A1(1) l^2 + B1(1) l + 2 C1(1) = 0`; the rest of `s` shifts the root by
//! `dl` solving `A1(1) dl^2 + (2 A1(1) l1 + B1(1)) dl + C = 0` with `|C|`
//! bounded by the perturbation size. `mu = s(Z(0, 0), 0)`.

use crate::error::{Error, Result};
use crate::ivreal::Interval;
use crate::seedmap::GeneratingSeed;

/// Radius of the disk holding the constant term of the shift equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PerturbationRadius {
    /// `|C| <= dtilde`.
    #[default]
    Single,
    /// `|C| <= 2 dtilde`.
    Double,
}

impl PerturbationRadius {
    pub fn name(self) -> &'static str {
        match self {
            PerturbationRadius::Single => "single",
            PerturbationRadius::Double => "double",
        }
    }

    fn factor(self) -> f64 {
        match self {
            PerturbationRadius::Single => 1.0,
            PerturbationRadius::Double => 2.0,
        }
    }
}

fn open_unit_negative(x: &Interval) -> bool {
    x.lo() > -1.0 && x.hi() < 0.0
}

fn meets_unit_negative(x: &Interval) -> bool {
    x.hi() > -1.0 && x.lo() < 0.0
}

/// The root in `(-1, 0)` of `a l^2 + b l + 2 c = 0`.
pub fn lambda_s1(a: &Interval, b: &Interval, c: &Interval) -> Result<Interval> {
    if a.contains_zero() {
        return Err(Error::Denominator("lambda quadratic leading coefficient"));
    }
    let two_c = c.scale(2.0)?;
    let disc = b.sqr()?.sub(&a.mul(&two_c)?.scale(4.0)?)?;
    if disc.lo() < 0.0 {
        return Err(Error::NoRealRoot("lambda quadratic discriminant"));
    }
    let sq = disc.sqrt()?;
    let roots = if b.contains_zero() {
        let den = a.scale(2.0)?;
        [b.neg().add(&sq)?.div(&den)?, b.neg().sub(&sq)?.div(&den)?]
    } else {
        // q = -(b + sign(b) sqrt(disc)) / 2; roots q / a and 2c / q
        let signed = if b.is_positive() { sq } else { sq.neg() };
        let q = b.add(&signed)?.scale(-0.5)?;
        [q.div(a)?, two_c.div(&q)?]
    };
    pick_root(&roots)
}

fn pick_root(roots: &[Interval; 2]) -> Result<Interval> {
    let inside: usize = roots.iter().filter(|r| meets_unit_negative(r)).count();
    if inside > 1 {
        return Err(Error::AmbiguousRoot("two roots meet (-1, 0)"));
    }
    roots.iter().find(|r| open_unit_negative(r)).copied().ok_or(Error::NoRealRoot("no root inside (-1, 0)"))
}

/// Shift `dl` for a real constant term `c`, by the stable branch.
fn lambda_shift(a: &Interval, b_hat: &Interval, c: &Interval) -> Result<Interval> {
    let disc = b_hat.sqr()?.sub(&a.mul(c)?.scale(4.0)?)?;
    if disc.lo() < 0.0 {
        return Err(Error::NoRealRoot("lambda shift discriminant"));
    }
    let sq = disc.sqrt()?;
    let signed = if b_hat.is_positive() { sq } else { sq.neg() };
    Ok(c.scale(-2.0)?.div(&b_hat.add(&signed)?)?)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaBounds {
    pub lambda_s1: Interval,
    /// `||s0 - s1||_rho + delta`.
    pub delta_tilde: Interval,
    /// Radius used for the constant term.
    pub c_radius: Interval,
    /// `2 A1(1) lambda[s1] + B1(1)`.
    pub b_hat: Interval,
    pub shift: Interval,
    pub lambda: Interval,
}

/// Direct bound on the constant term of the shift equation, valid for `|lambda| <= 1`:
/// `sum_{i>=3} |sum_j s0_ij| + 2 delta`.
pub fn direct_c_bound(seed: &GeneratingSeed, delta: &Interval) -> Result<Interval> {
    let (nx, ny) = seed.s0.degrees();
    let mut acc = delta.scale(2.0)?;
    for i in 3..=nx {
        let mut row = Interval::ZERO;
        for j in 0..=ny {
            row = row.add(&seed.s0.coeff(i, j))?;
        }
        acc = acc.add(&row.abs())?;
    }
    Ok(acc)
}

pub fn lambda_enclosure(seed: &GeneratingSeed, delta: &Interval, radius: PerturbationRadius) -> Result<LambdaBounds> {
    let (a1, b1, c1) = seed.a1b1c1_at_1()?;
    let l1 = lambda_s1(&a1, &b1, &c1)?;
    let delta_tilde = seed.truncation_norm()?.add(delta)?;
    let c_radius = delta_tilde.scale(radius.factor())?;
    let b_hat = a1.mul(&l1)?.scale(2.0)?.add(&b1)?;
    if b_hat.contains_zero() {
        return Err(Error::Denominator("lambda shift linear coefficient"));
    }
    // the shift is monotone in c, so the endpoints bound it
    let cr = c_radius.hi();
    let lo_end = lambda_shift(&a1, &b_hat, &Interval::exact(-cr))?;
    let hi_end = lambda_shift(&a1, &b_hat, &Interval::exact(cr))?;
    let shift = lo_end.hull(&hi_end).hull(&Interval::ZERO);
    let lambda = l1.add(&shift)?;
    Ok(LambdaBounds { lambda_s1: l1, delta_tilde, c_radius, b_hat, shift, lambda })
}

/// `s0(z00 + [-Mbar eps, Mbar eps], 0) + [-delta, delta]`.
pub fn mu_enclosure(
    seed: &GeneratingSeed,
    delta: &Interval,
    mbar: &Interval,
    eps_ball: &Interval,
    z00: &Interval,
) -> Result<Interval> {
    let reach = mbar.mul(eps_ball)?.mag();
    let z = z00.add(&Interval::symmetric(reach)?)?;
    let v = seed.s0.eval_box(&z, &Interval::ZERO)?;
    Ok(v.add(&Interval::symmetric(delta.mag())?)?)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingBounds {
    pub lambda: LambdaBounds,
    pub direct_c: Interval,
    pub mu: Interval,
}

//! Analyticity and sup bound for the explicit midpoint solution.
//!
//! Replacing `D0(x) z^3` by an interval error on `C0`, the midpoint equation
//! `s0(x, z) + s0(y, z) = 0` becomes the quadratic
//! `(u0 + u) z^2 + (b0 + b) z + (g0 + g) = 0`, where `u0 + u = A0(x) + A0(y)`
//! and so on, with `u, b, g` vanishing at the origin. Its root is
//!
//! ```text
//! Z(x, y) = (b0 + b) / (2 (u0 + u)) * (sqrt(1 - 4 (u0 + u)(g0 + g) / (b0 + b)^2) - 1)
//! ```
//!
//! and the radicand is `1 - q + N / (b0^2 + X)` with `q = 4 u0 g0 / b0^2`,
//! `X = 2 b0 b + b^2` and `N = q X - 4 (u0 g + u g0 + u g)`.

use crate::error::{Error, Result};
use crate::ivreal::Interval;
use crate::polyball::BiPoly;
use crate::seedmap::{Column, GeneratingSeed};

/// How the perturbation of the radicand is bounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RadicandBound {
    /// `||N||_r / (b0^2 - ||X||_r)`.
    #[default]
    Joint,
    /// `F1 + F2`, bounding the `q X` and `T` parts separately.
    Split,
}

impl RadicandBound {
    pub fn name(self) -> &'static str {
        match self {
            RadicandBound::Joint => "joint",
            RadicandBound::Split => "split",
        }
    }
}

/// Constant parts and zero-at-origin remainders of the quadratic's coefficients.
#[derive(Debug, Clone)]
pub struct Split {
    pub upsilon0: Interval,
    pub upsilon: BiPoly,
    pub beta0: Interval,
    pub beta: BiPoly,
    pub gamma0: Interval,
    pub gamma: BiPoly,
}

impl Split {
    /// `q = 4 u0 g0 / b0^2`.
    pub fn q(&self) -> Result<Interval> {
        Ok(self.upsilon0.mul(&self.gamma0)?.scale(4.0)?.div(&self.beta0.sqr()?)?)
    }

    /// `X = 2 b0 b + b^2`.
    pub fn x_poly(&self) -> Result<BiPoly> {
        self.beta.scale(&self.beta0.scale(2.0)?)?.add(&self.beta.mul(&self.beta)?)
    }

    /// `T = u0 g + u g0 + u g`.
    pub fn t_poly(&self) -> Result<BiPoly> {
        let a = self.gamma.scale(&self.upsilon0)?;
        let b = self.upsilon.scale(&self.gamma0)?;
        a.add(&b)?.add(&self.upsilon.mul(&self.gamma)?)
    }

    /// `b0^2 - ||X||_r`, required positive.
    fn denominator(&self, r: &Interval) -> Result<Interval> {
        let den = self.beta0.sqr()?.sub(&self.x_poly()?.ell1_norm(r)?)?;
        if den.is_positive() {
            Ok(den)
        } else {
            Err(Error::Denominator("midpoint radicand"))
        }
    }
}

pub fn split_abc(seed: &GeneratingSeed) -> Result<Split> {
    let sym = |u: &crate::polyball::UniPoly| -> Result<(Interval, BiPoly)> {
        let p = BiPoly::symmetric_sum(u)?;
        Ok((p.constant_term(), p.without_constant()))
    };
    let (upsilon0, upsilon) = sym(&seed.table.column(Column::A))?;
    let (beta0, beta) = sym(&seed.table.column(Column::B))?;
    let (gamma0, gamma) = sym(&seed.ctilde()?)?;
    Ok(Split { upsilon0, upsilon, beta0, beta, gamma0, gamma })
}

/// The separate bounds `(F1, F2)` on the two parts of the radicand perturbation.
pub fn f1f2_bounds(split: &Split, r: &Interval) -> Result<(Interval, Interval)> {
    let den = split.denominator(r)?;
    let nx = split.x_poly()?.ell1_norm(r)?;
    let f1 = split.q()?.mag_interval().mul(&nx)?.div(&den)?;
    let f2 = split.t_poly()?.ell1_norm(r)?.scale(4.0)?.div(&den)?;
    Ok((f1, f2))
}

/// `||q X - 4 T||_r / (b0^2 - ||X||_r)`.
pub fn joint_bound(split: &Split, r: &Interval) -> Result<Interval> {
    let den = split.denominator(r)?;
    let n = split.x_poly()?.scale(&split.q()?)?.sub(&split.t_poly()?.scale(&Interval::exact(4.0))?)?;
    Ok(n.ell1_norm(r)?.div(&den)?)
}

/// Upper bound on `|N / (b0^2 + X)|` over the bidisk of radius `r`.
pub fn radicand_error(split: &Split, r: &Interval, method: RadicandBound) -> Result<Interval> {
    match method {
        RadicandBound::Joint => joint_bound(split, r),
        RadicandBound::Split => {
            let (f1, f2) = f1f2_bounds(split, r)?;
            Ok(f1.add(&f2)?)
        }
    }
}

/// `1 - q`, the radicand at the origin.
pub fn radicand_center(split: &Split) -> Result<Interval> {
    Ok(Interval::ONE.sub(&split.q()?)?)
}

/// Bound `t` on `|Z|_r`.
pub fn z0_sup_bound(split: &Split, r: &Interval, method: RadicandBound) -> Result<Interval> {
    let f = radicand_error(split, r, method)?;
    let center = radicand_center(split)?;
    let nu = split.upsilon.ell1_norm(r)?;
    let nb = split.beta.ell1_norm(r)?;
    let lead_den = split.upsilon0.mag_interval().sub(&nu)?.scale(2.0)?;
    if !lead_den.is_positive() {
        return Err(Error::Denominator("midpoint leading coefficient"));
    }
    let lead = split.beta0.mag_interval().add(&nb)?.div(&lead_den)?;
    let mut worst = 0.0f64;
    for branch in [f, f.neg()] {
        let rad = center.add(&branch)?;
        if rad.lo() < 0.0 {
            return Err(Error::Domain("midpoint radicand"));
        }
        worst = worst.max(rad.sqrt()?.sub(&Interval::ONE)?.mag());
    }
    Ok(lead.mul(&Interval::exact(worst))?)
}

/// Both analyticity conditions at radius `r`.
pub fn z0_analytic_check(split: &Split, r: &Interval, method: RadicandBound) -> bool {
    let leading = split.upsilon.ell1_norm(r).map(|n| n.hi() < split.upsilon0.mig()).unwrap_or(false);
    let radicand = radicand_error(split, r, method)
        .and_then(|f| Ok(radicand_center(split)?.sub(&f)?))
        .map(|m| m.is_positive())
        .unwrap_or(false);
    leading && radicand
}

/// Enclosure of `Z(0, 0)`.
pub fn z0_at_origin(split: &Split) -> Result<Interval> {
    let center = radicand_center(split)?;
    if center.lo() < 0.0 {
        return Err(Error::Domain("midpoint radicand at origin"));
    }
    let lead = split.beta0.div(&split.upsilon0.scale(2.0)?)?;
    Ok(lead.mul(&center.sqrt()?.sub(&Interval::ONE)?)?)
}

/// Everything the later stages need from the midpoint stage at one radius.
#[derive(Debug, Clone)]
pub struct MidpointBounds {
    pub r: Interval,
    pub method: RadicandBound,
    pub upsilon0: Interval,
    pub beta0: Interval,
    pub gamma0: Interval,
    pub norm_upsilon: Interval,
    pub norm_beta: Interval,
    pub norm_gamma: Interval,
    /// Radicand at the origin, `1 - q`.
    pub radicand_center: Interval,
    /// Perturbation bound used for `t`.
    pub radicand_error: Interval,
    pub analytic: bool,
    pub t: Interval,
    pub z00: Interval,
}

pub fn certify_midpoint(seed: &GeneratingSeed, r: &Interval, method: RadicandBound) -> Result<MidpointBounds> {
    let split = split_abc(seed)?;
    Ok(MidpointBounds {
        r: *r,
        method,
        upsilon0: split.upsilon0,
        beta0: split.beta0,
        gamma0: split.gamma0,
        norm_upsilon: split.upsilon.ell1_norm(r)?,
        norm_beta: split.beta.ell1_norm(r)?,
        norm_gamma: split.gamma.ell1_norm(r)?,
        radicand_center: radicand_center(&split)?,
        radicand_error: radicand_error(&split, r, method)?,
        analytic: z0_analytic_check(&split, r, method),
        t: z0_sup_bound(&split, r, method)?,
        z00: z0_at_origin(&split)?,
    })
}

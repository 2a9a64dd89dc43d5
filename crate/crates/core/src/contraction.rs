//! Contraction bounds for the Newton map of the perturbed midpoint operator.
//!
//! With `c = b0^2 - 4 a0 theta0` and `T(r1, r2) = |Theta0|_(r1,r2)` the bounds are
//!
//! ```text
//! dc0  = |d2 Theta0|_(r,t) / sqrt(c - 4|a0| T(r,t))          Mbar = 1 / (1 - dc0)
//! epsN = 2 delta sqrt(2c) / (c - 4|a0| T(r,t) - 4|a0| delta)
//! s = t + Mbar eps,  n = 1 / ln(rho / s),  m = n s^(n-1) / rho^n
//! I1 = m delta / sqrt(c - 4|a0| T(r,s) - 4|a0| delta)
//! I2 = 4|a0| delta |d2 Theta0|_(r,s) / (2 ((c - 4|a0| T(r,s) - 4|a0| delta) / 3)^(3/2))
//! I3 = Mbar eps / (rho - s) * |d2 Theta0|_(r,rho) / sqrt(c - 4|a0| T(r,rho))
//! Dbar = (I1 + I2 + I3) Mbar
//! ```
//!
//! and the fixed point exists when `epsN < (1 - Dbar) eps / Mbar`.

use crate::error::{Error, Result};
use crate::ivreal::Interval;
use crate::seedmap::GeneratingSeed;

fn four_a0(seed: &GeneratingSeed) -> Result<Interval> {
    Ok(seed.a0.abs().scale(4.0)?)
}

/// `c - 4|a0| |Theta0|_(r1,r2)`.
pub fn theta_margin(seed: &GeneratingSeed, r1: &Interval, r2: &Interval) -> Result<Interval> {
    let th = seed.theta.polydisc_bound(r1, r2)?;
    Ok(seed.cconst.sub(&four_a0(seed)?.mul(&th)?)?)
}

/// `(|DC0[Z0]|, Mbar)`.
pub fn dc0_and_m(seed: &GeneratingSeed, r: &Interval, t: &Interval) -> Result<(Interval, Interval)> {
    let t = t.mag_interval();
    let margin = theta_margin(seed, r, &t)?;
    if !margin.is_positive() {
        return Err(Error::Domain("dc0 radicand"));
    }
    let dc0 = seed.dtheta.polydisc_bound(r, &t)?.div(&margin.sqrt()?)?;
    if dc0.hi() >= 1.0 {
        return Err(Error::NotContractive("dc0 >= 1"));
    }
    let mbar = Interval::ONE.div(&Interval::ONE.sub(&dc0)?)?;
    Ok((dc0, mbar))
}

/// Bound on `|N_h[0]|_r` over all perturbations of norm at most `delta`.
pub fn eps_n_bound(seed: &GeneratingSeed, delta: &Interval, r: &Interval, t: &Interval) -> Result<Interval> {
    let den = theta_margin(seed, r, &t.mag_interval())?.sub(&four_a0(seed)?.mul(delta)?)?;
    if !den.is_positive() {
        return Err(Error::Denominator("epsN"));
    }
    let num = delta.scale(2.0)?.mul(&seed.cconst.scale(2.0)?.sqrt()?)?;
    Ok(num.div(&den)?)
}

/// The Cauchy-estimate constants at shadow radius `s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cauchy {
    pub s: Interval,
    pub n: Interval,
    pub m: Interval,
}

/// `n = 1 / ln(rho / s)` and `m = n s^(n-1) / rho^n`; `m = 0` at `s = 0`.
pub fn cauchy_constants(rho: &Interval, s: &Interval) -> Result<Cauchy> {
    if s.hi() >= rho.lo() {
        return Err(Error::Domain("shadow radius reaches rho"));
    }
    if s.lo() <= 0.0 {
        if s.hi() <= 0.0 {
            return Ok(Cauchy { s: *s, n: Interval::ZERO, m: Interval::ZERO });
        }
        return Err(Error::Domain("shadow radius interval touches zero"));
    }
    let n = Interval::ONE.div(&rho.div(s)?.ln()?)?;
    let m = n.mul(&s.pow(&n.sub(&Interval::ONE)?)?)?.div(&rho.pow(&n)?)?;
    Ok(Cauchy { s: *s, n, m })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivativeBounds {
    pub cauchy: Cauchy,
    pub i1: Interval,
    pub i2: Interval,
    pub i3: Interval,
    pub dbar: Interval,
}

/// `(I1, I2, I3, Dbar)` with shadow radius `s = t + Mbar eps`.
pub fn i123_bounds(
    seed: &GeneratingSeed,
    delta: &Interval,
    r: &Interval,
    t: &Interval,
    eps_ball: &Interval,
    mbar: &Interval,
) -> Result<DerivativeBounds> {
    let rho = seed.rho;
    let s = t.mag_interval().add(&mbar.mul(eps_ball)?)?;
    let cauchy = cauchy_constants(&rho, &s)?;
    let s_up = s.mag_interval();
    let four_a0_delta = four_a0(seed)?.mul(delta)?;

    let inner = theta_margin(seed, r, &s_up)?.sub(&four_a0_delta)?;
    if !inner.is_positive() {
        return Err(Error::Domain("I1 radicand"));
    }
    let i1 = cauchy.m.mul(delta)?.div(&inner.sqrt()?)?;

    let dth_s = seed.dtheta.polydisc_bound(r, &s_up)?;
    let third = inner.div(&Interval::exact(3.0))?;
    if !third.is_positive() {
        return Err(Error::Domain("I2 radicand"));
    }
    let i2 = four_a0_delta.mul(&dth_s)?.div(&three_halves(&third)?.scale(2.0)?)?;

    let outer = theta_margin(seed, r, &rho)?;
    if !outer.is_positive() {
        return Err(Error::Domain("I3 radicand"));
    }
    let gap = rho.sub(&s)?;
    if !gap.is_positive() {
        return Err(Error::Denominator("I3"));
    }
    let i3 = mbar.mul(eps_ball)?.div(&gap)?.mul(&seed.dtheta.polydisc_bound(r, &rho)?)?.div(&outer.sqrt()?)?;

    let dbar = i1.add(&i2)?.add(&i3)?.mul(mbar)?;
    Ok(DerivativeBounds { cauchy, i1, i2, i3, dbar })
}

/// `x^(3/2)` as `x sqrt(x)`, for `x >= 0`.
pub fn three_halves(x: &Interval) -> Result<Interval> {
    Ok(x.mul(&x.sqrt()?)?)
}

/// `epsN < (1 - Dbar) eps / Mbar`, with every quantity rounded against the claim.
pub fn verify_cmp(eps_n: &Interval, dbar: &Interval, mbar: &Interval, eps_ball: &Interval) -> bool {
    if dbar.hi() >= 1.0 {
        return false;
    }
    cmp_rhs(dbar, mbar, eps_ball).map(|rhs| eps_n.hi() < rhs.lo()).unwrap_or(false)
}

/// `(1 - Dbar) eps / Mbar`.
pub fn cmp_rhs(dbar: &Interval, mbar: &Interval, eps_ball: &Interval) -> Result<Interval> {
    Ok(Interval::ONE.sub(dbar)?.mul(eps_ball)?.div(mbar)?)
}

/// Disk radii of the three Cauchy estimates, recorded for inspection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CauchyRadii {
    pub r: Interval,
    pub r_tilde: Interval,
    pub r_hat: Interval,
}

pub fn cauchy_radii(
    seed: &GeneratingSeed,
    delta: &Interval,
    r: &Interval,
    t: &Interval,
    eps_ball: &Interval,
    mbar: &Interval,
) -> Result<CauchyRadii> {
    let fd = four_a0(seed)?.mul(delta)?;
    let big_r = theta_margin(seed, r, &t.mag_interval())?.div(&fd)?;
    let s = t.mag_interval().add(&mbar.mul(eps_ball)?)?;
    let ms = theta_margin(seed, r, &s.mag_interval())?;
    let r_tilde = ms.div(&fd)?.sub(&ms.sub(&fd)?.div(&fd)?.div(&Interval::exact(3.0))?)?;
    let r_hat = seed.rho.sub(t)?.div(&mbar.mul(eps_ball)?)?;
    Ok(CauchyRadii { r: big_r, r_tilde, r_hat })
}

/// All contraction-stage quantities at one parameter set.
#[derive(Debug, Clone, PartialEq)]
pub struct ContractionBounds {
    pub delta: Interval,
    pub eps_ball: Interval,
    pub t: Interval,
    pub dc0: Interval,
    pub mbar: Interval,
    pub eps_n: Interval,
    pub derivative: DerivativeBounds,
    pub cmp_rhs: Interval,
    pub cmp_holds: bool,
}

impl ContractionBounds {
    pub fn s_shadow(&self) -> Interval {
        self.derivative.cauchy.s
    }

    pub fn dbar(&self) -> Interval {
        self.derivative.dbar
    }
}

pub fn certify_contraction(
    seed: &GeneratingSeed,
    delta: &Interval,
    r: &Interval,
    t: &Interval,
    eps_ball: &Interval,
) -> Result<ContractionBounds> {
    let (dc0, mbar) = dc0_and_m(seed, r, t)?;
    let eps_n = eps_n_bound(seed, delta, r, t)?;
    let derivative = i123_bounds(seed, delta, r, t, eps_ball, &mbar)?;
    let rhs = cmp_rhs(&derivative.dbar, &mbar, eps_ball)?;
    let cmp_holds = verify_cmp(&eps_n, &derivative.dbar, &mbar, eps_ball);
    Ok(ContractionBounds {
        delta: *delta,
        eps_ball: *eps_ball,
        t: *t,
        dc0,
        mbar,
        eps_n,
        derivative,
        cmp_rhs: rhs,
        cmp_holds,
    })
}

//! Analyticity of renormalized functions on an inflated bidisk.
//!
//! At `r' = kappa r` the Newton iterates `z_n` for the perturbed midpoint
//! problem have increments bounded by
//!
//! ```text
//! |dz_n| <= K_{n-1} |dz_{n-1}|,  K_{n-1} = C1 |dz_{n-1}| / (rho - s' - Mbar |dz_{n-1}|) + C2
//! C1 = Mbar^2 sqrt(c + 4|a0| (|Theta0|_(r',s') + delta)) / (2 |a0| (rho - s'))
//! C2 = (I1 + I2 + I3)(r', s', eps') Mbar,    s' = t' + Mbar eps'
//! ```
//!
//! so the total displacement is at most `Sigma = |dz0| / (1 - K0)`.

use alloc::vec::Vec;

use crate::contraction::{dc0_and_m, eps_n_bound, i123_bounds, DerivativeBounds};
use crate::error::{Error, Result};
use crate::ivreal::Interval;
use crate::midpoint::{split_abc, z0_analytic_check, z0_sup_bound, RadicandBound};
use crate::seedmap::GeneratingSeed;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Primed {
    pub kappa: Interval,
    pub r_prime: Interval,
    pub rho_prime: Interval,
    pub t_prime: Interval,
}

/// `r' = kappa r`, `rho' = kappa rho` and the midpoint bound at `r'`.
pub fn primed_setup(seed: &GeneratingSeed, kappa: &Interval, r: &Interval, method: RadicandBound) -> Result<Primed> {
    let r_prime = kappa.mul(r)?;
    let rho_prime = kappa.mul(&seed.rho)?;
    let split = split_abc(seed)?;
    if !z0_analytic_check(&split, &r_prime, method) {
        return Err(Error::Domain("midpoint analyticity at r'"));
    }
    let t_prime = z0_sup_bound(&split, &r_prime, method)?;
    Ok(Primed { kappa: *kappa, r_prime, rho_prime, t_prime })
}

/// `|lambda| rho' <= rho`.
pub fn lambda_domain_check(lambda: &Interval, rho_prime: &Interval, rho: &Interval) -> bool {
    lambda.mag_interval().mul(&rho_prime.mag_interval()).map(|p| p.hi() <= rho.lo()).unwrap_or(false)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IncrementConstants {
    pub dz0: Interval,
    pub s_prime: Interval,
    pub c1: Interval,
    pub c2: Interval,
    pub derivative: DerivativeBounds,
}

pub fn dz0_and_constants(
    seed: &GeneratingSeed,
    delta: &Interval,
    r_prime: &Interval,
    t_prime: &Interval,
    eps_prime: &Interval,
    mbar: &Interval,
) -> Result<IncrementConstants> {
    let dz0 = eps_n_bound(seed, delta, r_prime, t_prime)?;
    let s_prime = t_prime.mag_interval().add(&mbar.mul(eps_prime)?)?;
    let gap = seed.rho.sub(&s_prime)?;
    if !gap.is_positive() {
        return Err(Error::Denominator("C1"));
    }
    let a0 = seed.a0.abs();
    let th = seed.theta.polydisc_bound(r_prime, &s_prime.mag_interval())?;
    let rad = seed.cconst.add(&a0.scale(4.0)?.mul(&th.add(delta)?)?)?;
    let c1 = mbar.sqr()?.mul(&rad.sqrt()?)?.div(&a0.scale(2.0)?.mul(&gap)?)?;
    let derivative = i123_bounds(seed, delta, r_prime, t_prime, eps_prime, mbar)?;
    Ok(IncrementConstants { dz0, s_prime, c1, c2: derivative.dbar, derivative })
}

/// `K` for an increment bound `dz`.
pub fn k_factor(
    dz: &Interval,
    c1: &Interval,
    c2: &Interval,
    rho: &Interval,
    s_prime: &Interval,
    mbar: &Interval,
) -> Result<Interval> {
    let den = rho.sub(s_prime)?.sub(&mbar.mul(dz)?)?;
    if !den.is_positive() {
        return Err(Error::Denominator("K"));
    }
    Ok(c1.mul(dz)?.div(&den)?.add(c2)?)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Displacement {
    pub k0: Interval,
    pub sigma: Interval,
    pub gamma_prime: Interval,
}

pub fn k0_sigma_gamma(
    dz0: &Interval,
    c1: &Interval,
    c2: &Interval,
    rho: &Interval,
    s_prime: &Interval,
    mbar: &Interval,
) -> Result<Displacement> {
    let k0 = k_factor(dz0, c1, c2, rho, s_prime, mbar)?;
    if k0.hi() >= 1.0 {
        return Err(Error::NotContractive("K0 >= 1"));
    }
    let sigma = dz0.div(&Interval::ONE.sub(&k0)?)?;
    let gamma_prime = mbar.mul(&sigma)?;
    Ok(Displacement { k0, sigma, gamma_prime })
}

/// First iterates of the increment recursion: `(|dz_n| bound, K_n)` for `n < steps`.
///
/// Each `K_n` is recomputed from `|dz_n| <= K_{n-1} |dz_{n-1}|`, so the
/// sequence is nonincreasing whenever `K0 < 1`.
pub fn increment_chain(
    k: &IncrementConstants,
    rho: &Interval,
    mbar: &Interval,
    steps: usize,
) -> Result<Vec<(Interval, Interval)>> {
    let mut out = Vec::with_capacity(steps);
    let mut dz = k.dz0;
    for _ in 0..steps {
        let kn = k_factor(&dz, &k.c1, &k.c2, rho, &k.s_prime, mbar)?;
        out.push((dz, kn));
        dz = kn.mul(&dz)?;
    }
    Ok(out)
}

/// `t' + gamma' < rho`, `Sigma <= eps'`, and the lambda domain condition.
pub fn verify_compactness(
    t_prime: &Interval,
    gamma_prime: &Interval,
    rho: &Interval,
    sigma: &Interval,
    eps_prime: &Interval,
    lambda_ok: bool,
) -> bool {
    let reach = t_prime.add(gamma_prime).map(|v| v.hi() < rho.lo()).unwrap_or(false);
    reach && sigma.hi() <= eps_prime.lo() && lambda_ok
}

/// The a priori bound `eps'`: `1.5 dz0 / (1 - C2)` with `C2` taken at `eps' = dz0`.
pub fn auto_eps_prime(
    seed: &GeneratingSeed,
    delta: &Interval,
    r_prime: &Interval,
    t_prime: &Interval,
    mbar: &Interval,
) -> Result<Interval> {
    let dz0 = eps_n_bound(seed, delta, r_prime, t_prime)?;
    let pass0 = dz0_and_constants(seed, delta, r_prime, t_prime, &dz0.mag_interval(), mbar)?;
    let one_minus = Interval::ONE.sub(&pass0.c2)?;
    if !one_minus.is_positive() {
        return Err(Error::NotContractive("C2 >= 1 in eps' guess"));
    }
    // rounded to a single double: the guess only needs to be reproducible
    let guess = dz0.scale(1.5)?.div(&one_minus)?;
    Ok(Interval::exact(guess.hi()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompactnessBounds {
    pub primed: Primed,
    /// `Mbar` recomputed at `(r', t')`.
    pub mbar: Interval,
    pub eps_prime: Interval,
    pub constants: IncrementConstants,
    pub displacement: Displacement,
    pub chain: Vec<(Interval, Interval)>,
    pub lambda_ok: bool,
    pub holds: bool,
}

pub struct CompactnessInput<'a> {
    pub seed: &'a GeneratingSeed,
    pub kappa: Interval,
    pub r: Interval,
    pub delta: Interval,
    pub lambda: Interval,
    pub method: RadicandBound,
    /// `None` selects [`auto_eps_prime`].
    pub eps_prime: Option<Interval>,
}

pub fn certify_compactness(input: &CompactnessInput<'_>) -> Result<CompactnessBounds> {
    let seed = input.seed;
    let primed = primed_setup(seed, &input.kappa, &input.r, input.method)?;
    let (_, mbar) = dc0_and_m(seed, &primed.r_prime, &primed.t_prime)?;
    let eps_prime = match input.eps_prime {
        Some(e) => e,
        None => auto_eps_prime(seed, &input.delta, &primed.r_prime, &primed.t_prime, &mbar)?,
    };
    let constants = dz0_and_constants(seed, &input.delta, &primed.r_prime, &primed.t_prime, &eps_prime, &mbar)?;
    let displacement =
        k0_sigma_gamma(&constants.dz0, &constants.c1, &constants.c2, &seed.rho, &constants.s_prime, &mbar)?;
    let chain = increment_chain(&constants, &seed.rho, &mbar, 3)?;
    let lambda_ok = lambda_domain_check(&input.lambda, &primed.rho_prime, &seed.rho);
    let holds = verify_compactness(
        &primed.t_prime,
        &displacement.gamma_prime,
        &seed.rho,
        &displacement.sigma,
        &eps_prime,
        lambda_ok,
    );
    Ok(CompactnessBounds { primed, mbar, eps_prime, constants, displacement, chain, lambda_ok, holds })
}

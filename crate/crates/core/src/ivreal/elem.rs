//! exp and ln of a single binary64 argument, as directed bounds.
//!
//! Both use argument reduction by a two-part ln 2 followed by a truncated
//! series whose remainder is added as an explicit interval.

use super::round::{frexp, mul_down, mul_up};
use super::{Interval, IntervalError, Result};

/// High part of ln 2; 32 significant bits so `k * LN2_HI` is exact for `|k| < 2^21`.
const LN2_HI: f64 = f64::from_bits(0x3fe6_2e42_fee0_0000);
/// Enclosure of `ln 2 - LN2_HI`.
const LN2_LO: Interval =
    Interval { lo: f64::from_bits(0x3dea_39ef_3579_3c76), hi: f64::from_bits(0x3dea_39ef_3579_3c77) };
const LOG2E: f64 = core::f64::consts::LOG2_E;

const EXP_TERMS: u32 = 20;
const LN_TERMS: u32 = 14;

/// Enclosure of `k * ln 2`.
fn k_ln2(k: i32) -> Result<Interval> {
    let kk = Interval::point(k as f64)?;
    kk.mul(&Interval::exact(LN2_HI))?.add(&kk.mul(&LN2_LO)?)
}

fn round_to_i32(x: f64) -> i32 {
    if x >= 0.0 {
        (x + 0.5) as i32
    } else {
        (x - 0.5) as i32
    }
}

/// `[lo, hi]` containing `e^x`.
pub(super) fn exp_bounds(x: f64) -> Result<(f64, f64)> {
    if x == 0.0 {
        return Ok((1.0, 1.0));
    }
    if x > 709.78 {
        return Err(IntervalError::Overflow);
    }
    if x < -745.2 {
        return Ok((0.0, f64::from_bits(1)));
    }
    let k = round_to_i32(x * LOG2E);
    // x - k*LN2_HI is exact: both are multiples of min(ulp(x), 2^-32) and the
    // difference stays below 0.35
    let hi_part = Interval::exact(x - k as f64 * LN2_HI);
    let r = hi_part.sub(&Interval::point(k as f64)?.mul(&LN2_LO)?)?;
    let rmag = r.mag();
    // Horner form of sum_{n<=N} r^n / n!
    let mut acc = Interval::ONE;
    for n in (1..=EXP_TERMS).rev() {
        acc = Interval::ONE.add(&r.mul(&acc)?.div(&Interval::point(n as f64)?)?)?;
    }
    // |r| < 0.35, so e^|r| < 2 bounds the Lagrange factor
    let mut rem = 2.0;
    for n in 1..=EXP_TERMS + 1 {
        rem = mul_up(rem, rmag);
        rem = super::round::div_up(rem, n as f64);
    }
    let series = acc.add(&Interval::symmetric(rem)?)?;
    let lo = scale_pow2(series.lo().max(0.0), k, false);
    let hi = scale_pow2(series.hi(), k, true);
    if !hi.is_finite() {
        return Err(IntervalError::Overflow);
    }
    Ok((lo, hi))
}

/// Directed `x * 2^k` for `x >= 0`.
fn scale_pow2(mut x: f64, mut k: i32, up: bool) -> f64 {
    let step = |x: f64, e: i32| {
        let f = f64::from_bits(((e + 1023) as u64) << 52);
        let p = x * f;
        // a power-of-two scaling is exact unless the result leaves the normal range
        if p.is_finite() && p >= f64::MIN_POSITIVE {
            p
        } else if up {
            mul_up(x, f)
        } else {
            mul_down(x, f)
        }
    };
    while k > 1000 {
        x = step(x, 1000);
        k -= 1000;
    }
    while k < -1000 {
        x = step(x, -1000);
        k += 1000;
    }
    step(x, k)
}

/// `(lo, hi)` containing `ln x`, for finite `x > 0`.
pub(super) fn ln_bounds(x: f64) -> (f64, f64) {
    if x == 1.0 {
        return (0.0, 0.0);
    }
    let iv = ln_enclosure(x).expect("ln of a positive finite double stays in range");
    (iv.lo(), iv.hi())
}

fn ln_enclosure(x: f64) -> Result<Interval> {
    let (mut m, mut e) = frexp(x);
    if m < core::f64::consts::FRAC_1_SQRT_2 {
        m *= 2.0;
        e -= 1;
    }
    let mm = Interval::point(m)?;
    let u = mm.sub(&Interval::ONE)?.div(&mm.add(&Interval::ONE)?)?;
    let u2 = u.sqr()?;
    // ln m = 2 * sum_k u^(2k+1) / (2k+1)
    let mut acc = Interval::ONE.div(&Interval::point((2 * LN_TERMS + 1) as f64)?)?;
    for k in (0..LN_TERMS).rev() {
        let c = Interval::ONE.div(&Interval::point((2 * k + 1) as f64)?)?;
        acc = c.add(&u2.mul(&acc)?)?;
    }
    let umag = u.mag();
    let u2hi = u2.hi();
    let mut rem = 2.0;
    for _ in 0..(2 * LN_TERMS + 3) {
        rem = mul_up(rem, umag);
    }
    let denom = mul_down((2 * LN_TERMS + 3) as f64, 1.0 - u2hi);
    let rem = super::round::div_up(rem, denom);
    let series = u.mul(&acc)?.scale(2.0)?.add(&Interval::symmetric(rem)?)?;
    series.add(&k_ln2(e)?)
}

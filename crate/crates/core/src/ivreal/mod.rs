//! Closed binary64 intervals with outward rounding.
//!
//! Endpoints are always finite. Any operation whose rounded endpoint would
//! leave the binary64 range fails with [`IntervalError::Overflow`].

mod decimal;
mod elem;
mod hexfloat;
pub(crate) mod round;

use core::fmt;

pub use decimal::{parse_decimal, DecimalError};
pub use hexfloat::{format_hex, parse_hex};

use round::{add_down, add_up, div_down, div_up, mul_down, mul_up, sqrt_bounds, sub_down, sub_up};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntervalError {
    /// Divisor interval touches zero.
    DivisionByZero,
    /// Argument outside the domain of the function.
    Domain(&'static str),
    /// An endpoint left the binary64 range.
    Overflow,
    /// Constructor called with `lo > hi` or a non-finite endpoint.
    InvalidEndpoints,
}

impl fmt::Display for IntervalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntervalError::DivisionByZero => f.write_str("division by an interval containing zero"),
            IntervalError::Domain(what) => write!(f, "domain error: {what}"),
            IntervalError::Overflow => f.write_str("interval endpoint overflowed binary64"),
            IntervalError::InvalidEndpoints => f.write_str("invalid interval endpoints"),
        }
    }
}

impl core::error::Error for IntervalError {}

pub type Result<T> = core::result::Result<T, IntervalError>;

/// A closed interval `[lo, hi]` with finite binary64 endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

fn checked(lo: f64, hi: f64) -> Result<Interval> {
    if lo.is_finite() && hi.is_finite() {
        // -0.0 and 0.0 compare equal; normalize so hex output is stable
        Ok(Interval { lo: lo + 0.0, hi: hi + 0.0 })
    } else {
        Err(IntervalError::Overflow)
    }
}

impl Interval {
    pub const ZERO: Interval = Interval { lo: 0.0, hi: 0.0 };
    pub const ONE: Interval = Interval { lo: 1.0, hi: 1.0 };

    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_finite() && hi.is_finite() && lo <= hi {
            Ok(Interval { lo: lo + 0.0, hi: hi + 0.0 })
        } else {
            Err(IntervalError::InvalidEndpoints)
        }
    }

    pub fn point(x: f64) -> Result<Self> {
        Self::new(x, x)
    }

    /// Degenerate interval for a compile-time constant.
    ///
    /// # Panics
    /// If `x` is not finite.
    pub const fn exact(x: f64) -> Self {
        assert!(x.is_finite());
        Interval { lo: x, hi: x }
    }

    /// `[-r, r]` for `r >= 0`.
    pub fn symmetric(r: f64) -> Result<Self> {
        Self::new(-r, r)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    /// Nearest-rounded midpoint; not a rigorous quantity.
    pub fn mid(&self) -> f64 {
        if self.lo == -self.hi {
            0.0
        } else {
            0.5 * self.lo + 0.5 * self.hi
        }
    }

    /// Upper bound on `hi - lo`.
    pub fn width(&self) -> f64 {
        sub_up(self.hi, self.lo)
    }

    /// Upper bound on `|x|` over the interval.
    pub fn mag(&self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    /// Lower bound on `|x|` over the interval.
    pub fn mig(&self) -> f64 {
        if self.contains_zero() {
            0.0
        } else {
            self.lo.abs().min(self.hi.abs())
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(0.0)
    }

    pub fn is_subset_of(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    /// True when every element is strictly positive.
    pub fn is_positive(&self) -> bool {
        self.lo > 0.0
    }

    /// True when every element is strictly negative.
    pub fn is_negative(&self) -> bool {
        self.hi < 0.0
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval { lo: self.lo.min(other.lo), hi: self.hi.max(other.hi) }
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(Interval { lo, hi })
    }

    /// The interval `[mag, mag]`.
    pub fn mag_interval(&self) -> Interval {
        Interval::exact(self.mag())
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: -self.hi, hi: -self.lo }
    }

    pub fn abs(&self) -> Interval {
        let m = 0.0f64.max(self.lo).max(-self.hi);
        Interval { lo: m, hi: self.mag() }
    }

    pub fn add(&self, b: &Interval) -> Result<Interval> {
        checked(add_down(self.lo, b.lo), add_up(self.hi, b.hi))
    }

    pub fn sub(&self, b: &Interval) -> Result<Interval> {
        checked(sub_down(self.lo, b.hi), sub_up(self.hi, b.lo))
    }

    pub fn mul(&self, b: &Interval) -> Result<Interval> {
        let (a0, a1, b0, b1) = (self.lo, self.hi, b.lo, b.hi);
        let lo = mul_down(a0, b0).min(mul_down(a0, b1)).min(mul_down(a1, b0)).min(mul_down(a1, b1));
        let hi = mul_up(a0, b0).max(mul_up(a0, b1)).max(mul_up(a1, b0)).max(mul_up(a1, b1));
        checked(lo, hi)
    }

    pub fn div(&self, b: &Interval) -> Result<Interval> {
        if b.contains_zero() {
            return Err(IntervalError::DivisionByZero);
        }
        let (a0, a1, b0, b1) = (self.lo, self.hi, b.lo, b.hi);
        let lo = div_down(a0, b0).min(div_down(a0, b1)).min(div_down(a1, b0)).min(div_down(a1, b1));
        let hi = div_up(a0, b0).max(div_up(a0, b1)).max(div_up(a1, b0)).max(div_up(a1, b1));
        checked(lo, hi)
    }

    pub fn recip(&self) -> Result<Interval> {
        Interval::ONE.div(self)
    }

    pub fn sqr(&self) -> Result<Interval> {
        let a = self.abs();
        checked(mul_down(a.lo, a.lo), mul_up(a.hi, a.hi))
    }

    /// Integer power; even powers of sign-changing intervals start at 0.
    pub fn powi(&self, n: u32) -> Result<Interval> {
        if n == 0 {
            return Ok(Interval::ONE);
        }
        let a = self.abs();
        let mag_lo = pow_down(a.lo, n);
        let mag_hi = pow_up(a.hi, n);
        if n.is_multiple_of(2) || self.lo >= 0.0 {
            checked(mag_lo, mag_hi)
        } else if self.hi <= 0.0 {
            checked(-mag_hi, -mag_lo)
        } else {
            checked(-pow_up(-self.lo, n), pow_up(self.hi, n))
        }
    }

    /// Multiplies by an exact scalar.
    pub fn scale(&self, k: f64) -> Result<Interval> {
        self.mul(&Interval::point(k)?)
    }

    pub fn sqrt(&self) -> Result<Interval> {
        if self.lo < 0.0 {
            return Err(IntervalError::Domain("sqrt of negative argument"));
        }
        checked(sqrt_bounds(self.lo).0, sqrt_bounds(self.hi).1)
    }

    pub fn exp(&self) -> Result<Interval> {
        checked(elem::exp_bounds(self.lo)?.0, elem::exp_bounds(self.hi)?.1)
    }

    pub fn ln(&self) -> Result<Interval> {
        if self.lo <= 0.0 {
            return Err(IntervalError::Domain("ln of non-positive argument"));
        }
        checked(elem::ln_bounds(self.lo).0, elem::ln_bounds(self.hi).1)
    }

    /// `a^b = exp(b ln a)` for `a > 0`.
    pub fn pow(&self, b: &Interval) -> Result<Interval> {
        if self.lo <= 0.0 {
            return Err(IntervalError::Domain("pow of non-positive base"));
        }
        b.mul(&self.ln()?)?.exp()
    }

    /// Widens both endpoints by `n` ulps.
    pub fn widen_ulps(&self, n: u32) -> Result<Interval> {
        let (mut lo, mut hi) = (self.lo, self.hi);
        for _ in 0..n {
            lo = lo.next_down();
            hi = hi.next_up();
        }
        checked(lo, hi)
    }
}

fn pow_up(x: f64, n: u32) -> f64 {
    let mut acc = 1.0;
    for _ in 0..n {
        acc = mul_up(acc, x);
    }
    acc
}

fn pow_down(x: f64, n: u32) -> f64 {
    let mut acc = 1.0;
    for _ in 0..n {
        acc = mul_down(acc, x);
    }
    acc
}

impl core::ops::Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval::neg(&self)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", format_hex(self.lo), format_hex(self.hi))
    }
}

/// Interval from a decimal literal known to be valid; for builtin constants.
///
/// # Panics
/// If `s` is not a finite decimal number.
pub fn dec(s: &str) -> Interval {
    parse_decimal(s).expect("builtin decimal constant")
}

//! Decimal literal to enclosing interval of width at most one ulp.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigUint;

use super::Interval;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecimalError {
    Syntax,
    /// Magnitude beyond the largest finite binary64.
    OutOfRange,
}

impl fmt::Display for DecimalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecimalError::Syntax => f.write_str("malformed decimal literal"),
            DecimalError::OutOfRange => f.write_str("decimal literal outside binary64 range"),
        }
    }
}

impl core::error::Error for DecimalError {}

/// `digits * 10^exp10`, digits most significant first.
struct Decimal {
    negative: bool,
    digits: Vec<u8>,
    exp10: i64,
}

fn scan(s: &str) -> Result<Decimal, DecimalError> {
    let bytes = s.as_bytes();
    let mut i = 0;
    let mut negative = false;
    if i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
        negative = bytes[i] == b'-';
        i += 1;
    }
    let mut digits = Vec::new();
    let mut exp10: i64 = 0;
    let mut seen_digit = false;
    let mut seen_dot = false;
    while i < bytes.len() {
        match bytes[i] {
            b'0'..=b'9' => {
                seen_digit = true;
                digits.push(bytes[i] - b'0');
                if seen_dot {
                    exp10 -= 1;
                }
            }
            b'.' if !seen_dot => seen_dot = true,
            b'e' | b'E' => break,
            _ => return Err(DecimalError::Syntax),
        }
        i += 1;
    }
    if !seen_digit {
        return Err(DecimalError::Syntax);
    }
    if i < bytes.len() {
        let rest = &s[i + 1..];
        let e: i64 = rest.parse().map_err(|_| DecimalError::Syntax)?;
        if e.abs() > 100_000 {
            return Err(DecimalError::Syntax);
        }
        exp10 += e;
    }
    Ok(Decimal { negative, digits, exp10 })
}

/// Compares `|dec|` with the positive finite binary64 `x`, exactly.
fn cmp_magnitude(dec: &Decimal, x: f64) -> Ordering {
    let bits = x.to_bits();
    let biased = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    let (mant, exp2) = if biased == 0 { (frac, -1074) } else { (frac | (1 << 52), biased - 1075) };
    let mut lhs = BigUint::from(0u32);
    for &d in &dec.digits {
        lhs = lhs * 10u32 + d as u32;
    }
    let mut rhs = BigUint::from(mant);
    if dec.exp10 >= 0 {
        lhs *= BigUint::from(10u32).pow(dec.exp10 as u32);
    } else {
        rhs *= BigUint::from(10u32).pow((-dec.exp10) as u32);
    }
    if exp2 >= 0 {
        rhs <<= exp2 as usize;
    } else {
        lhs <<= (-exp2) as usize;
    }
    lhs.cmp(&rhs)
}

/// Parses a decimal literal into the tightest enclosing interval.
///
/// The result is a point when the literal is exactly representable and
/// otherwise spans two adjacent doubles.
pub fn parse_decimal(s: &str) -> Result<Interval, DecimalError> {
    let s = s.trim();
    let dec = scan(s)?;
    if dec.digits.iter().all(|&d| d == 0) {
        return Ok(Interval::ZERO);
    }
    let nearest: f64 = s.parse().map_err(|_| DecimalError::Syntax)?;
    if !nearest.is_finite() {
        return Err(DecimalError::OutOfRange);
    }
    let mag = nearest.abs();
    let (lo, hi) = if mag == 0.0 {
        (0.0, f64::from_bits(1))
    } else {
        match cmp_magnitude(&dec, mag) {
            Ordering::Equal => (mag, mag),
            Ordering::Greater => (mag, mag.next_up()),
            Ordering::Less => (mag.next_down(), mag),
        }
    };
    if !hi.is_finite() {
        return Err(DecimalError::OutOfRange);
    }
    Ok(if dec.negative { Interval { lo: -hi, hi: -lo } } else { Interval { lo, hi } })
}

//! C99 `%a`-style hexadecimal float literals.

use alloc::format;
use alloc::string::String;

/// Formats a finite double as `[-]0x1.<hex>p<exp>` (or `0x0.<hex>p-1022` when subnormal).
///
/// Trailing zero nibbles are dropped; the output parses back bit-exactly.
pub fn format_hex(x: f64) -> String {
    if x.is_nan() {
        return String::from("nan");
    }
    if x.is_infinite() {
        return String::from(if x > 0.0 { "inf" } else { "-inf" });
    }
    let bits = x.to_bits();
    let sign = if bits >> 63 == 1 { "-" } else { "" };
    let biased = ((bits >> 52) & 0x7ff) as i32;
    let frac = bits & ((1u64 << 52) - 1);
    if biased == 0 && frac == 0 {
        return format!("{sign}0x0p+0");
    }
    let (lead, exp) = if biased == 0 { (0, -1022) } else { (1, biased - 1023) };
    let mut digits = format!("{frac:013x}");
    while digits.ends_with('0') {
        digits.pop();
    }
    let esign = if exp >= 0 { "+" } else { "-" };
    let eabs = exp.abs();
    if digits.is_empty() {
        format!("{sign}0x{lead}p{esign}{eabs}")
    } else {
        format!("{sign}0x{lead}.{digits}p{esign}{eabs}")
    }
}

/// Parses a hexadecimal float literal with at most 13 fraction nibbles.
///
/// Accepts the output of [`format_hex`]; returns `None` for anything that
/// would need rounding.
pub fn parse_hex(s: &str) -> Option<f64> {
    let (negative, rest) = match s.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let rest = rest.strip_prefix("0x").or_else(|| rest.strip_prefix("0X"))?;
    let (mant, exp) = rest.split_once(['p', 'P'])?;
    let exp: i32 = exp.parse().ok()?;
    let (int_part, frac_part) = match mant.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mant, ""),
    };
    if frac_part.len() > 13 || int_part.len() != 1 {
        return None;
    }
    let lead = u64::from_str_radix(int_part, 16).ok()?;
    if lead > 1 {
        return None;
    }
    let mut frac = 0u64;
    for (k, c) in frac_part.chars().enumerate() {
        frac |= (c.to_digit(16)? as u64) << (48 - 4 * k);
    }
    let value = if lead == 1 {
        if !(-1022..=1023).contains(&exp) {
            return None;
        }
        f64::from_bits((((exp + 1023) as u64) << 52) | frac)
    } else {
        if frac != 0 && exp != -1022 {
            return None;
        }
        f64::from_bits(frac)
    };
    Some(if negative { -value } else { value })
}

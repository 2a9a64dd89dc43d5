//! Directed rounding built from round-to-nearest binary64.
//!
//! Each `*_up` / `*_down` returns the exact result rounded toward +inf / -inf,
//! or a bound one ulp further out when exactness of the error term cannot be
//! guaranteed. Results may be non-finite; callers check.

const SPLITTER: f64 = 134_217_729.0; // 2^27 + 1

/// Largest magnitude we split without overflow in `SPLITTER * a`.
const SPLIT_MAX: f64 = 6.703903964971299e298; // 2^992

/// Smallest product magnitude for which the Dekker error term is exact.
const PROD_MIN: f64 = f64::from_bits(63 << 52); // 2^-960

pub(crate) fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

fn split(a: f64) -> (f64, f64) {
    let c = SPLITTER * a;
    let hi = c - (c - a);
    (hi, a - hi)
}

/// Exact product `p + e == a * b`, provided [`prod_exact`] holds.
pub(crate) fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let (ah, al) = split(a);
    let (bh, bl) = split(b);
    let e = ((ah * bh - p) + ah * bl + al * bh) + al * bl;
    (p, e)
}

pub(crate) fn prod_exact(a: f64, b: f64, p: f64) -> bool {
    p.is_finite() && a.abs() < SPLIT_MAX && b.abs() < SPLIT_MAX && p.abs() >= PROD_MIN
}

pub(crate) fn add_up(a: f64, b: f64) -> f64 {
    let (s, e) = two_sum(a, b);
    if !s.is_finite() {
        return s;
    }
    if e > 0.0 {
        s.next_up()
    } else {
        s
    }
}

pub(crate) fn add_down(a: f64, b: f64) -> f64 {
    let (s, e) = two_sum(a, b);
    if !s.is_finite() {
        return s;
    }
    if e < 0.0 {
        s.next_down()
    } else {
        s
    }
}

pub(crate) fn sub_up(a: f64, b: f64) -> f64 {
    add_up(a, -b)
}

pub(crate) fn sub_down(a: f64, b: f64) -> f64 {
    add_down(a, -b)
}

pub(crate) fn mul_up(a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        return 0.0;
    }
    let p = a * b;
    if !p.is_finite() {
        return p;
    }
    if prod_exact(a, b, p) {
        let (_, e) = two_prod(a, b);
        if e > 0.0 {
            p.next_up()
        } else {
            p
        }
    } else {
        p.next_up()
    }
}

pub(crate) fn mul_down(a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        return 0.0;
    }
    let p = a * b;
    if !p.is_finite() {
        return p;
    }
    if prod_exact(a, b, p) {
        let (_, e) = two_prod(a, b);
        if e < 0.0 {
            p.next_down()
        } else {
            p
        }
    } else {
        p.next_down()
    }
}

/// Sign of `a / b - fl(a / b)`, or `None` when it cannot be decided exactly.
fn div_residual_sign(a: f64, b: f64, q: f64) -> Option<i8> {
    if !prod_exact(q, b, q * b) || !a.is_finite() {
        return None;
    }
    let (p, e) = two_prod(q, b);
    // a - p is exact (Sterbenz), then compare against e.
    let d = a - p;
    let r = if d > e {
        1
    } else if d < e {
        -1
    } else {
        0
    };
    Some(if b > 0.0 { r } else { -r })
}

pub(crate) fn div_up(a: f64, b: f64) -> f64 {
    if a == 0.0 {
        return 0.0;
    }
    let q = a / b;
    if !q.is_finite() {
        return q;
    }
    match div_residual_sign(a, b, q) {
        Some(s) if s <= 0 => q,
        _ => q.next_up(),
    }
}

pub(crate) fn div_down(a: f64, b: f64) -> f64 {
    if a == 0.0 {
        return 0.0;
    }
    let q = a / b;
    if !q.is_finite() {
        return q;
    }
    match div_residual_sign(a, b, q) {
        Some(s) if s >= 0 => q,
        _ => q.next_down(),
    }
}

/// Compares `y * y` with `x` exactly, for `y` in `[1, 2]` and `x` in `[1, 4)`.
fn cmp_square(y: f64, x: f64) -> core::cmp::Ordering {
    let (p, e) = two_prod(y, y);
    match p.partial_cmp(&x) {
        Some(core::cmp::Ordering::Equal) => e.partial_cmp(&0.0).unwrap_or(core::cmp::Ordering::Equal),
        Some(o) => o,
        None => core::cmp::Ordering::Equal,
    }
}

/// Splits a positive finite `x` into `m * 4^k` with `m` in `[1, 4)`.
fn reduce_by_four(x: f64) -> (f64, i32) {
    let (m, e) = frexp(x);
    // x = m * 2^e, m in [0.5, 1)
    let (m, e) = (m * 2.0, e - 1); // m in [1, 2)
    if e % 2 == 0 {
        (m, e / 2)
    } else {
        (m * 2.0, (e - 1) / 2)
    }
}

/// Returns `(lo, hi)` with `lo <= sqrt(x) <= hi`, both correctly rounded.
pub(crate) fn sqrt_bounds(x: f64) -> (f64, f64) {
    if x == 0.0 {
        return (0.0, 0.0);
    }
    let (m, k) = reduce_by_four(x);
    let mut y = 1.5;
    for _ in 0..6 {
        y = 0.5 * (y + m / y);
    }
    use core::cmp::Ordering::*;
    while cmp_square(y, m) == Greater {
        y = y.next_down();
    }
    while cmp_square(y.next_up(), m) != Greater {
        y = y.next_up();
    }
    let lo = y;
    let hi = if cmp_square(lo, m) == Equal { lo } else { lo.next_up() };
    (ldexp(lo, k), ldexp(hi, k))
}

/// `x = m * 2^e` with `m` in `[0.5, 1)`, for finite nonzero `x`.
pub(crate) fn frexp(x: f64) -> (f64, i32) {
    let bits = x.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i32;
    if exp == 0 {
        // subnormal: renormalize
        let (m, e) = frexp(x * 18014398509481984.0); // 2^54
        return (m, e - 54);
    }
    let m = f64::from_bits((bits & !(0x7ff << 52)) | (1022 << 52));
    (m, exp - 1022)
}

/// `x * 2^k`, exact unless the result leaves the normal range.
pub(crate) fn ldexp(mut x: f64, mut k: i32) -> f64 {
    while k > 1000 {
        x *= pow2(1000);
        k -= 1000;
    }
    while k < -1000 {
        x *= pow2(-1000);
        k += 1000;
    }
    x * pow2(k)
}

fn pow2(k: i32) -> f64 {
    debug_assert!((-1022..=1023).contains(&k));
    f64::from_bits(((k + 1023) as u64) << 52)
}

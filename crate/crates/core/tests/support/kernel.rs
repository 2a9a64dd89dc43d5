//! Randomized containment of interval results against exact rationals
//! (`+ - * /`, reciprocal, square root) and padded 128-bit
//! references (`exp`, `ln`, `pow`).
//!
//! The same harness backs the quick regression suite and the full-size
//! acceptance run, each using a different subset of it.
#![allow(dead_code)]

use astro_float::{BigFloat, Consts, RoundingMode};
use num_rational::BigRational;
use pdcert_core::Interval;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const CASES: usize = 100_000;
const PREC: usize = 128;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    Add,
    Sub,
    Mul,
    Div,
    Recip,
    Sqrt,
    Exp,
    Ln,
    Pow,
}

pub const OPS: [Op; 9] = [Op::Add, Op::Sub, Op::Mul, Op::Div, Op::Recip, Op::Sqrt, Op::Exp, Op::Ln, Op::Pow];

#[derive(Debug, Default, Clone, Copy)]
pub struct Tally {
    pub cases: usize,
    pub checks: usize,
    pub violations: usize,
}

pub fn rat(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite")
}

fn encloses(iv: &Interval, exact: &BigRational) -> bool {
    rat(iv.lo()) <= *exact && *exact <= rat(iv.hi())
}

/// Finite doubles spread over many binades, both signs.
fn wide(rng: &mut ChaCha8Rng) -> f64 {
    let m: f64 = rng.gen_range(-1.0..1.0);
    m * 2f64.powi(rng.gen_range(-80..80))
}

fn from_pair(a: f64, b: f64) -> Interval {
    Interval::new(a.min(b), a.max(b)).unwrap()
}

/// Points, few-ulp intervals and wide intervals in equal measure.
fn interval_around(rng: &mut ChaCha8Rng, x: f64) -> Interval {
    match rng.gen_range(0..3) {
        0 => Interval::point(x).unwrap(),
        1 => {
            let mut hi = x;
            for _ in 0..rng.gen_range(1..8) {
                hi = hi.next_up();
            }
            Interval::new(x, hi).unwrap()
        }
        _ => from_pair(x, x * rng.gen_range(0.5..2.0) + rng.gen_range(-1.0..1.0) * x.abs()),
    }
}

fn signed_nonzero(rng: &mut ChaCha8Rng) -> Interval {
    let x = loop {
        let x = wide(rng);
        if x != 0.0 {
            break x;
        }
    };
    let iv = interval_around(rng, x.abs());
    let iv = Interval::new(iv.lo().max(x.abs() * 0.5), iv.hi()).unwrap();
    if x < 0.0 {
        iv.neg()
    } else {
        iv
    }
}

fn positive(rng: &mut ChaCha8Rng, lo_exp: i32, hi_exp: i32) -> Interval {
    let x = rng.gen_range(1.0..2.0) * 2f64.powi(rng.gen_range(lo_exp..hi_exp));
    let iv = interval_around(rng, x);
    Interval::new(iv.lo().max(x * 0.5), iv.hi()).unwrap()
}

/// Endpoints plus one interior point.
fn samples(rng: &mut ChaCha8Rng, iv: &Interval) -> [f64; 3] {
    let t: f64 = rng.gen();
    let mid = (iv.lo() + t * (iv.hi() - iv.lo())).clamp(iv.lo(), iv.hi());
    [iv.lo(), mid, iv.hi()]
}

/// Exact conversion; `BigFloat::from_f64` mis-scales subnormals, so those
/// are lifted into the normal range first and scaled back by a power of two.
fn big(x: f64) -> BigFloat {
    if x != 0.0 && x.abs() < f64::MIN_POSITIVE {
        let lifted = BigFloat::from_f64(x * 2f64.powi(128), PREC);
        lifted.mul(&BigFloat::from_f64(2f64.powi(-128), PREC), PREC, RoundingMode::None)
    } else {
        BigFloat::from_f64(x, PREC)
    }
}

/// `iv` contains the reference value `v` widened by a relative `2^-110`,
/// far below the reference's own error yet far above a double ulp.
fn encloses_big(iv: &Interval, v: &BigFloat) -> bool {
    let pad = v.abs().mul(&BigFloat::from_f64(2f64.powi(-110), PREC), PREC, RoundingMode::Up);
    let down = v.sub(&pad, PREC, RoundingMode::Down);
    let up = v.add(&pad, PREC, RoundingMode::Up);
    big(iv.lo()) <= down && up <= big(iv.hi())
}

pub fn run(op: Op, cases: usize, seed: u64) -> Tally {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (op as u64) << 32);
    let mut cc = Consts::new().expect("constants");
    let mut t = Tally::default();
    while t.cases < cases {
        let ok = match op {
            Op::Add | Op::Sub | Op::Mul | Op::Div => {
                let a = {
                    let x = wide(&mut rng);
                    interval_around(&mut rng, x)
                };
                let b = if op == Op::Div {
                    signed_nonzero(&mut rng)
                } else {
                    let x = wide(&mut rng);
                    interval_around(&mut rng, x)
                };
                let r = match op {
                    Op::Add => a.add(&b),
                    Op::Sub => a.sub(&b),
                    Op::Mul => a.mul(&b),
                    _ => a.div(&b),
                };
                let Ok(r) = r else { continue };
                let (xs, ys) = (samples(&mut rng, &a), samples(&mut rng, &b));
                let mut ok = true;
                for x in xs {
                    for y in ys {
                        let (x, y) = (rat(x), rat(y));
                        let exact = match op {
                            Op::Add => x + y,
                            Op::Sub => x - y,
                            Op::Mul => x * y,
                            _ => x / y,
                        };
                        t.checks += 1;
                        ok &= encloses(&r, &exact);
                    }
                }
                ok
            }
            Op::Recip => {
                let a = signed_nonzero(&mut rng);
                let Ok(r) = a.recip() else { continue };
                samples(&mut rng, &a).iter().all(|&x| {
                    t.checks += 1;
                    encloses(&r, &(BigRational::from_integer(1.into()) / rat(x)))
                })
            }
            Op::Sqrt => {
                let a = positive(&mut rng, -600, 600);
                let a = if rng.gen_range(0..10) == 0 { Interval::new(0.0, a.hi()).unwrap() } else { a };
                let Ok(r) = a.sqrt() else { continue };
                samples(&mut rng, &a).iter().all(|&x| {
                    t.checks += 1;
                    let (lo, hi, x) = (rat(r.lo()), rat(r.hi()), rat(x));
                    let lo_ok = r.lo() <= 0.0 || &lo * &lo <= x;
                    lo_ok && r.hi() >= 0.0 && &hi * &hi >= x
                })
            }
            Op::Exp => {
                let x = rng.gen_range(-740.0..705.0) * if rng.gen_bool(0.5) { 1.0 } else { rng.gen_range(0.0..1e-3) };
                let a = interval_around(&mut rng, x);
                let Ok(r) = a.exp() else { continue };
                [a.lo(), a.hi()].iter().all(|&x| {
                    t.checks += 1;
                    encloses_big(&r, &big(x).exp(PREC, RoundingMode::ToEven, &mut cc))
                })
            }
            Op::Ln => {
                let a = positive(&mut rng, -1000, 1000);
                let Ok(r) = a.ln() else { continue };
                [a.lo(), a.hi()].iter().all(|&x| {
                    t.checks += 1;
                    encloses_big(&r, &big(x).ln(PREC, RoundingMode::ToEven, &mut cc))
                })
            }
            Op::Pow => {
                let a = positive(&mut rng, -10, 10);
                let y = rng.gen_range(-6.0..6.0);
                let b = interval_around(&mut rng, y);
                let Ok(r) = a.pow(&b) else { continue };
                let mut ok = true;
                // monotone in each argument: the corners carry the extremes
                for x in [a.lo(), a.hi()] {
                    for y in [b.lo(), b.hi()] {
                        t.checks += 1;
                        ok &= encloses_big(&r, &big(x).pow(&big(y), PREC, RoundingMode::ToEven, &mut cc));
                    }
                }
                ok
            }
        };
        t.cases += 1;
        if !ok {
            t.violations += 1;
        }
    }
    t
}

//! Values computed independently in exact rational and 60-digit arithmetic,
//! frozen here as decimal literals.
#![allow(clippy::excessive_precision)]

use num_complex::Complex64;
use pdcert_core::contraction::{certify_contraction, theta_margin};
use pdcert_core::ivreal::{parse_decimal, Interval};
use pdcert_core::midpoint::{certify_midpoint, RadicandBound};
use pdcert_core::scalings::{direct_c_bound, lambda_s1};
use pdcert_core::seedmap::{Column, GeneratingSeed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn dec(s: &str) -> Interval {
    parse_decimal(s).unwrap()
}

/// `iv` meets the enclosure of `reference` and is no wider than `width`.
#[track_caller]
fn agrees(iv: Interval, reference: &str, width: f64) {
    let r = dec(reference);
    assert!(iv.intersect(&r).is_some(), "{iv} misses {reference}");
    assert!(iv.width() <= width, "{iv} wider than {width:e}");
}

fn r() -> Interval {
    dec("0.483119964599609")
}

#[test]
fn seed_norm_at_outer_radius() {
    let seed = GeneratingSeed::builtin();
    agrees(seed.s0.ell1_norm(&seed.rho).unwrap(), "6.289426352177630000258177165378570556640625", 1e-13);
}

#[test]
fn truncation_norm() {
    let seed = GeneratingSeed::builtin();
    agrees(seed.truncation_norm().unwrap(), "0.022477385007180898482509196628570556640625", 1e-15);
}

#[test]
fn slice_sums_at_one() {
    let seed = GeneratingSeed::builtin();
    let (a1, b1, c1) = seed.a1b1c1_at_1().unwrap();
    agrees(a1, "0.024213877150022182904", 1e-15);
    agrees(b1, "-0.973953907356255285144", 1e-15);
    agrees(c1, "-0.12207779198532002269", 1e-15);
    agrees(seed.table.column(Column::C).sum().unwrap(), "9.195314744993716e-8", 1e-15);
}

#[test]
fn quadratic_constant() {
    agrees(GeneratingSeed::builtin().cconst, "3.569620735726048283965187251081310649", 1e-14);
}

#[test]
fn truncated_lambda_root() {
    let seed = GeneratingSeed::builtin();
    let (a, b, c) = seed.a1b1c1_at_1().unwrap();
    let l = lambda_s1(&a, &b, &c).unwrap();
    agrees(l, "-0.249141758818231622635646937305521191125637", 1e-14);
    // the discarded root, from the product of roots 2c / a
    let other = c.scale(2.0).unwrap().div(&a.mul(&l).unwrap()).unwrap();
    agrees(other, "40.4721056948256059", 1e-11);
}

#[test]
fn stub_lambda_root() {
    let l = lambda_s1(&dec("0.024214"), &dec("-0.973954"), &dec("-0.122078")).unwrap();
    agrees(l, "-0.249142149604071750483917985565524136560834", 1e-15);
}

#[test]
fn midpoint_origin_value() {
    let seed = GeneratingSeed::builtin();
    let mb = certify_midpoint(&seed, &r(), RadicandBound::Joint).unwrap();
    let reference = "0.937951521475910330434923214320050587480280";
    // the certified value carries the cubic slice as an error on gamma0
    assert!(mb.gamma0.contains(2.0));
    assert!(mb.z00.intersect(&dec(reference)).is_some());
    // with gamma0 = 2 exactly the closed form is tight
    let q = mb.upsilon0.scale(8.0).unwrap().div(&mb.beta0.sqr().unwrap()).unwrap();
    let z = mb.beta0.div(&mb.upsilon0.scale(2.0).unwrap()).unwrap();
    let z = z.mul(&Interval::ONE.sub(&q).unwrap().sqrt().unwrap().sub(&Interval::ONE).unwrap()).unwrap();
    agrees(z, reference, 1e-14);
}

#[test]
fn tau_at_one_half() {
    let seed = GeneratingSeed::builtin();
    agrees(seed.tau(&Interval::exact(0.5)).unwrap(), "0.6817861224429695175", 1e-15);
}

#[test]
fn ctilde_constant_half_width() {
    let seed = GeneratingSeed::builtin();
    let half = 0.5 * seed.ctilde().unwrap().coeff(0).width();
    // the hull is rounded outward around a coefficient of size one
    assert!((half - 0.00786711610307952544796875).abs() < 4.5e-16, "{half}");
}

#[test]
fn direct_row_sum_bound() {
    let seed = GeneratingSeed::builtin();
    agrees(direct_c_bound(&seed, &Interval::ZERO).unwrap(), "0.001473306184292115632055", 1e-15);
}

/// `s0(x, y)` in binary64 from the table midpoints.
fn s0_float(seed: &GeneratingSeed, x: Complex64, y: Complex64) -> Complex64 {
    let col = |c: Column, x: Complex64| {
        seed.table.column(c).coeffs().iter().rev().fold(Complex64::new(0.0, 0.0), |acc, k| acc * x + k.mid())
    };
    col(Column::C, x) + y * (col(Column::B, x) + y * (col(Column::A, x) + y * col(Column::D, x)))
}

#[test]
fn decomposition_reassembles_pointwise() {
    let seed = GeneratingSeed::builtin();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let x = Interval::point(rng.gen_range(-1.75..1.75)).unwrap();
        let y = Interval::point(rng.gen_range(-1.75..1.75)).unwrap();
        let s = seed.s0.eval_box(&x, &y).unwrap();
        let half_tau = seed.tau(&y).unwrap().scale(0.5).unwrap();
        let back = seed.sigma0.eval_box(&x, &y).unwrap().sub(&half_tau).unwrap();
        assert!(back.intersect(&s).is_some(), "{back} vs {s}");
        assert!(back.width() < 1e-12);
    }
    let th = seed.theta.eval_box(&Interval::ZERO, &Interval::ZERO).unwrap();
    assert!(th.mag() < 1e-300);
}

#[test]
fn ctilde_absorbs_cubic_slice() {
    let seed = GeneratingSeed::builtin();
    let ct = seed.ctilde().unwrap();
    let (c, d) = (seed.table.column(Column::C), seed.table.column(Column::D));
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..100 {
        let x = Interval::point(rng.gen_range(-1.75..1.75)).unwrap();
        let z = Interval::point(rng.gen_range(-1.75..1.75)).unwrap();
        let exact = c.eval(&x).unwrap().add(&d.eval(&x).unwrap().mul(&z.powi(3).unwrap()).unwrap()).unwrap();
        assert!(exact.is_subset_of(&ct.eval(&x).unwrap()), "x={x} z={z}");
    }
}

/// Solves `s0(x, z) + s0(y, z) = 0` for the branch through the origin value,
/// iterating the quadratic formula on the cubic term.
fn midpoint_float(seed: &GeneratingSeed, x: Complex64, y: Complex64) -> Complex64 {
    let col = |c: Column, x: Complex64| {
        seed.table.column(c).coeffs().iter().rev().fold(Complex64::new(0.0, 0.0), |acc, k| acc * x + k.mid())
    };
    let u = col(Column::A, x) + col(Column::A, y);
    let b = col(Column::B, x) + col(Column::B, y);
    let g = col(Column::C, x) + col(Column::C, y);
    let d = col(Column::D, x) + col(Column::D, y);
    let mut z = Complex64::new(0.938, 0.0);
    for _ in 0..200 {
        let gg = g + d * z * z * z;
        z = b / (2.0 * u) * ((1.0 - 4.0 * u * gg / (b * b)).sqrt() - 1.0);
    }
    z
}

#[test]
fn midpoint_root_stays_below_sup_bound() {
    let seed = GeneratingSeed::builtin();
    let mb = certify_midpoint(&seed, &r(), RadicandBound::Joint).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let radius = r().lo();
    for _ in 0..100 {
        let mut pick = || {
            Complex64::from_polar(radius * rng.gen_range(0.0f64..1.0).sqrt(), rng.gen_range(0.0..std::f64::consts::TAU))
        };
        let (x, y) = (pick(), pick());
        let z = midpoint_float(&seed, x, y);
        let resid = s0_float(&seed, x, z) + s0_float(&seed, y, z);
        assert!(resid.norm() < 1e-12, "residual {resid} at ({x}, {y})");
        assert!(z.norm() <= mb.t.hi(), "|z| = {} above t", z.norm());
    }
    let z0 = midpoint_float(&seed, Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
    assert!(mb.z00.contains(z0.re) || (z0.re - mb.z00.mid()).abs() < 1e-14);
}

#[test]
fn theta_bound_leaves_positive_margin() {
    let seed = GeneratingSeed::builtin();
    let mb = certify_midpoint(&seed, &r(), RadicandBound::Joint).unwrap();
    let th = seed.theta.polydisc_bound(&r(), &mb.t).unwrap();
    let limit = seed.cconst.div(&seed.a0.abs().scale(4.0).unwrap()).unwrap();
    assert!(th.is_positive());
    assert!(th.hi() < limit.lo());
    assert!(theta_margin(&seed, &r(), &mb.t).unwrap().is_positive());
}

#[test]
fn contraction_flips_above_published_delta() {
    let seed = GeneratingSeed::builtin();
    let mb = certify_midpoint(&seed, &r(), RadicandBound::Joint).unwrap();
    let eps = dec("0.01465");
    let holds = |d: f64| {
        certify_contraction(&seed, &Interval::point(d).unwrap(), &r(), &mb.t, &eps)
            .map(|c| c.cmp_holds)
            .unwrap_or(false)
    };
    let published = 0.00405550003051758;
    assert!(holds(published));
    let (mut lo, mut hi) = (published, 0.1);
    assert!(!holds(hi));
    for _ in 0..50 {
        let mid = 0.5 * (lo + hi);
        if holds(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    assert!(lo > published, "flip at {lo}");
    assert!(hi - lo < 1e-12);
}

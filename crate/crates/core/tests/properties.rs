use pdcert_core::ivreal::{parse_decimal, Interval};
use pdcert_core::polyball::{BiPoly, UniPoly};
use proptest::prelude::*;

mod support;
use support::kernel::rat;

fn ulps_between(a: f64, b: f64) -> u64 {
    let key = |x: f64| {
        let bits = x.to_bits() as i64;
        if bits < 0 {
            i64::MIN - bits
        } else {
            bits
        }
    };
    (key(b) - key(a)).unsigned_abs()
}

fn finite() -> impl Strategy<Value = f64> {
    (-1.0f64..1.0, -60i32..60).prop_map(|(m, e)| m * 2f64.powi(e))
}

fn interval() -> impl Strategy<Value = Interval> {
    (finite(), finite()).prop_map(|(a, b)| Interval::new(a.min(b), a.max(b)).unwrap())
}

/// `(inner, outer)` with `inner` inside `outer`.
fn nested() -> impl Strategy<Value = (Interval, Interval)> {
    (interval(), 0.0f64..1.0, 0.0f64..1.0).prop_map(|(o, s, t)| {
        let a = o.lo() + s * (o.hi() - o.lo());
        let b = a + t * (o.hi() - a);
        let (a, b) = (a.clamp(o.lo(), o.hi()), b.clamp(o.lo(), o.hi()));
        (Interval::new(a.min(b), a.max(b)).unwrap(), o)
    })
}

fn nonzero_nested() -> impl Strategy<Value = (Interval, Interval)> {
    (0.5f64..4.0, 0.0f64..1.0, 0.0f64..1.0, any::<bool>()).prop_map(|(lo, w, s, neg)| {
        let o = Interval::new(lo, lo + w * 3.0).unwrap();
        let a = o.lo() + s * (o.hi() - o.lo()) * 0.5;
        let i = Interval::new(a, (a + w).min(o.hi())).unwrap();
        if neg {
            (i.neg(), o.neg())
        } else {
            (i, o)
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn arithmetic_is_inclusion_monotone((a, a2) in nested(), (b, b2) in nested(), (d, d2) in nonzero_nested()) {
        prop_assert!(a.add(&b).unwrap().is_subset_of(&a2.add(&b2).unwrap()));
        prop_assert!(a.sub(&b).unwrap().is_subset_of(&a2.sub(&b2).unwrap()));
        prop_assert!(a.mul(&b).unwrap().is_subset_of(&a2.mul(&b2).unwrap()));
        prop_assert!(a.div(&d).unwrap().is_subset_of(&a2.div(&d2).unwrap()));
    }

    #[test]
    fn negation_and_abs_identities(a in interval()) {
        prop_assert_eq!(a.neg().neg(), a);
        prop_assert_eq!(a.abs(), a.neg().abs());
        prop_assert_eq!(a.neg().lo(), -a.hi());
        let abs = a.abs();
        prop_assert_eq!(abs.lo(), 0f64.max(a.lo()).max(-a.hi()));
        prop_assert_eq!(abs.hi(), a.mag());
    }

    #[test]
    fn point_arithmetic_width(x in finite(), y in finite().prop_filter("nonzero", |y| *y != 0.0)) {
        let (a, b) = (Interval::point(x).unwrap(), Interval::point(y).unwrap());
        for r in [a.add(&b), a.sub(&b), a.mul(&b), a.div(&b)] {
            let r = r.unwrap();
            prop_assert!(ulps_between(r.lo(), r.hi()) <= 4, "{r}");
        }
        let s = Interval::point(x.abs()).unwrap().sqrt().unwrap();
        prop_assert!(ulps_between(s.lo(), s.hi()) <= 4);
    }

    #[test]
    fn point_elementary_width(x in -700.0f64..700.0, y in (1.0f64..2.0, -900i32..900).prop_map(|(m, e)| m * 2f64.powi(e))) {
        let e = Interval::point(x).unwrap().exp().unwrap();
        prop_assert!(ulps_between(e.lo(), e.hi()) <= 8, "exp {x}: {e}");
        let l = Interval::point(y).unwrap().ln().unwrap();
        if y != 1.0 {
            prop_assert!(ulps_between(l.lo(), l.hi()) <= 8, "ln {y}: {l}");
        }
    }

    #[test]
    fn hull_mag_contains(a in interval(), b in interval(), x in finite()) {
        let h = a.hull(&b);
        prop_assert!(a.is_subset_of(&h) && b.is_subset_of(&h));
        prop_assert_eq!(h.lo(), a.lo().min(b.lo()));
        prop_assert_eq!(a.mag(), a.lo().abs().max(a.hi().abs()));
        prop_assert_eq!(a.contains(x), a.lo() <= x && x <= a.hi());
    }

    #[test]
    fn decimal_literals_are_enclosed(int in 0u64..10_000_000_000, frac in 0u64..1_000_000_000_000, exp in -30i32..30, neg in any::<bool>()) {
        let lit = format!("{}{int}.{frac:012}e{exp}", if neg { "-" } else { "" });
        let iv = parse_decimal(&lit).unwrap();
        let mut exact = num_rational::BigRational::new(
            num_bigint::BigInt::from(int) * num_bigint::BigInt::from(10u64).pow(12) + num_bigint::BigInt::from(frac),
            num_bigint::BigInt::from(10u64).pow(12),
        );
        let ten = num_rational::BigRational::from_integer(10.into());
        for _ in 0..exp.unsigned_abs() {
            exact = if exp > 0 { exact * &ten } else { exact / &ten };
        }
        if neg {
            exact = -exact;
        }
        prop_assert!(rat(iv.lo()) <= exact && exact <= rat(iv.hi()), "{lit} -> {iv}");
        prop_assert!(ulps_between(iv.lo(), iv.hi()) <= 1);
    }
}

fn coeff() -> impl Strategy<Value = f64> {
    -2.0f64..2.0
}

fn bipoly() -> impl Strategy<Value = BiPoly> {
    (1usize..5, 1usize..4).prop_flat_map(|(nx, ny)| {
        proptest::collection::vec(coeff(), (nx + 1) * (ny + 1)).prop_map(move |cs| {
            let mut p = BiPoly::zero(nx, ny);
            for i in 0..=nx {
                for j in 0..=ny {
                    p.set(i, j, Interval::point(cs[i * (ny + 1) + j]).unwrap());
                }
            }
            p
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn polydisc_bound_dominates_values(p in bipoly(), r1 in 0.0f64..2.0, r2 in 0.0f64..2.0, s in -1.0f64..1.0, t in -1.0f64..1.0) {
        let (ir1, ir2) = (Interval::point(r1).unwrap(), Interval::point(r2).unwrap());
        let bound = p.polydisc_bound(&ir1, &ir2).unwrap();
        let v = p.eval_box(&Interval::point(s * r1).unwrap(), &Interval::point(t * r2).unwrap()).unwrap();
        prop_assert!(v.mag() <= bound.hi());
        // the full box evaluation is also dominated
        let boxed = p.eval_box(&Interval::symmetric(r1).unwrap(), &Interval::symmetric(r2).unwrap()).unwrap();
        prop_assert!(boxed.mag() <= bound.hi() * (1.0 + 1e-12));
    }

    #[test]
    fn norm_is_subadditive_and_submultiplicative(p in bipoly(), q in bipoly(), r in 0.0f64..2.0) {
        let ir = Interval::point(r).unwrap();
        let (np, nq) = (p.ell1_norm(&ir).unwrap(), q.ell1_norm(&ir).unwrap());
        prop_assert!(p.add(&q).unwrap().ell1_norm(&ir).unwrap().hi() <= np.add(&nq).unwrap().hi() * (1.0 + 1e-12));
        prop_assert!(p.mul(&q).unwrap().ell1_norm(&ir).unwrap().hi() <= np.mul(&nq).unwrap().hi() * (1.0 + 1e-12));
    }

    #[test]
    fn product_evaluates_to_product(p in bipoly(), q in bipoly(), x in -1.5f64..1.5, y in -1.5f64..1.5) {
        let (ix, iy) = (Interval::point(x).unwrap(), Interval::point(y).unwrap());
        let pq = p.mul(&q).unwrap().eval_box(&ix, &iy).unwrap();
        let direct = p.eval_box(&ix, &iy).unwrap().mul(&q.eval_box(&ix, &iy).unwrap()).unwrap();
        prop_assert!(pq.intersect(&direct).is_some());
    }

    #[test]
    fn shift_matches_translated_evaluation(p in bipoly(), shift in -1.0f64..1.0, x in -1.0f64..1.0, y in -1.0f64..1.0) {
        let sh = Interval::point(shift).unwrap();
        let q = p.shift_x(&sh).unwrap();
        let a = q.eval_box(&Interval::point(x).unwrap(), &Interval::point(y).unwrap()).unwrap();
        let b = p.eval_box(&Interval::point(x).unwrap().add(&sh).unwrap(), &Interval::point(y).unwrap()).unwrap();
        prop_assert!(a.intersect(&b).is_some(), "{a} vs {b}");
    }

    #[test]
    fn y_slices_round_trip(p in bipoly()) {
        let (d, a, b, c) = p.y_slices().unwrap();
        let back = BiPoly::from_y_slices(&d, &a, &b, &c);
        for i in 0..6 {
            for j in 0..5 {
                prop_assert_eq!(back.coeff(i, j), p.coeff(i, j));
            }
        }
    }

    #[test]
    fn univariate_norm_dominates(cs in proptest::collection::vec(coeff(), 1..8), r in 0.0f64..2.0, s in -1.0f64..1.0) {
        let u = UniPoly::new(cs.iter().map(|&c| Interval::point(c).unwrap()).collect());
        let n = u.norm(&Interval::point(r).unwrap()).unwrap();
        prop_assert!(u.eval(&Interval::point(s * r).unwrap()).unwrap().mag() <= n.hi());
    }
}

mod pipeline {
    use pdcert_core::contraction::eps_n_bound;
    use pdcert_core::ivreal::Interval;
    use pdcert_core::midpoint::{certify_midpoint, RadicandBound};
    use pdcert_core::scalings::lambda_s1;
    use pdcert_core::seedmap::GeneratingSeed;
    use proptest::prelude::*;
    use std::sync::OnceLock;

    fn seed() -> &'static GeneratingSeed {
        static SEED: OnceLock<GeneratingSeed> = OnceLock::new();
        SEED.get_or_init(GeneratingSeed::builtin)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        // the branch through the origin ends at the vertex y = -b0 / (2 a0) ~ -0.138
        fn nu_inverts_tau(y in -0.13f64..0.9) {
            let y = Interval::point(y).unwrap();
            let back = seed().nu(&seed().tau(&y).unwrap()).unwrap();
            prop_assert!(back.contains(y.lo()), "{back}");
        }

        #[test]
        fn lambda_root_solves_quadratic(root in -0.95f64..-0.05, other in 2.0f64..50.0, a in 0.01f64..2.0) {
            // a (l - root)(l - other) = a l^2 + b l + 2c
            let b = -a * (root + other);
            let c = 0.5 * a * root * other;
            let (ia, ib, ic) = (Interval::point(a).unwrap(), Interval::point(b).unwrap(), Interval::point(c).unwrap());
            let l = lambda_s1(&ia, &ib, &ic).unwrap();
            prop_assert!((l.mid() - root).abs() < 1e-9);
            let resid = ia.mul(&l.sqr().unwrap()).unwrap().add(&ib.mul(&l).unwrap()).unwrap().add(&ic.scale(2.0).unwrap()).unwrap();
            prop_assert!(resid.contains_zero());
        }

        #[test]
        fn sup_bound_grows_with_radius(r1 in 0.0f64..0.48, r2 in 0.0f64..0.48) {
            let (lo, hi) = (r1.min(r2), r1.max(r2));
            let t = |r: f64| certify_midpoint(seed(), &Interval::point(r).unwrap(), RadicandBound::Joint).unwrap().t;
            prop_assert!(t(lo).lo() <= t(hi).hi());
        }

        #[test]
        fn eps_n_grows_with_delta(d1 in 0.0f64..0.01, d2 in 0.0f64..0.01) {
            let (lo, hi) = (d1.min(d2), d1.max(d2));
            let r = Interval::point(0.48).unwrap();
            let t = Interval::point(1.3).unwrap();
            let e = |d: f64| eps_n_bound(seed(), &Interval::point(d).unwrap(), &r, &t).unwrap();
            prop_assert!(e(lo).lo() <= e(hi).hi());
            prop_assert!(e(0.0).hi() == 0.0 || e(0.0).contains_zero());
        }
    }
}

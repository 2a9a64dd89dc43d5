use std::sync::OnceLock;

use num_complex::Complex64;
use pdcert::oracle::{midpoint_z, renorm_step, solve_fixed_point, FixedPoint, OracleParams, TruncatedMap};
use pdcert_core::seedmap::SeedTable;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn default_fixed_point() -> &'static FixedPoint {
    static FP: OnceLock<FixedPoint> = OnceLock::new();
    FP.get_or_init(|| solve_fixed_point(&SeedTable::builtin(), &OracleParams::default()).unwrap())
}

#[test]
fn newton_converges_on_default_grid() {
    let fp = default_fixed_point();
    assert!(fp.residual < 1e-8, "{}", fp.residual);
    assert!(fp.iterations <= fp.params.max_iter);
    assert!((fp.lambda + 0.24887528862).abs() < 1e-9, "{}", fp.lambda);
    assert!((fp.mu - 0.061110138).abs() < 1e-7, "{}", fp.mu);
}

#[test]
fn midpoint_is_symmetric() {
    let s = &default_fixed_point().map;
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..50 {
        let mut pick = || Complex64::from_polar(rng.gen_range(0.0..1.0), rng.gen_range(0.0..std::f64::consts::TAU));
        let (x, y) = (pick(), pick());
        let a = midpoint_z(s, x, y).unwrap();
        let b = midpoint_z(s, y, x).unwrap();
        assert!((a - b).norm() < 1e-10, "z({x}, {y}) = {a}, z({y}, {x}) = {b}");
    }
}

#[test]
fn image_is_normalized_at_origin() {
    let params = OracleParams::default();
    let seed = TruncatedMap::from_table(&SeedTable::builtin(), params.nx, params.ny);
    let image = renorm_step(&seed, &params).unwrap();
    assert!((image.coeff(0, 0) - 1.0).abs() < 1e-12, "{}", image.coeff(0, 0));
    let fixed = renorm_step(&default_fixed_point().map, &params).unwrap();
    assert!((fixed.coeff(0, 0) - 1.0).abs() < 1e-12);
}

#[test]
fn seed_is_nearly_fixed() {
    let params = OracleParams::default();
    let seed = TruncatedMap::from_table(&SeedTable::builtin(), params.nx, params.ny);
    let step = renorm_step(&seed, &params).unwrap().distance(&seed, params.rho);
    assert!(step < 0.02, "{step}");
    assert_eq!(step, default_fixed_point().seed_step);
}

#[test]
fn scaling_is_stable_under_x_truncation() {
    let coarse = OracleParams { nx: 16, ..OracleParams::default() };
    let fine = OracleParams { nx: 24, ..OracleParams::default() };
    let a = solve_fixed_point(&SeedTable::builtin(), &coarse).unwrap();
    let b = solve_fixed_point(&SeedTable::builtin(), &fine).unwrap();
    assert!((a.lambda - b.lambda).abs() < 1e-8, "{} vs {}", a.lambda, b.lambda);
}

#[test]
fn fixed_point_is_close_to_seed() {
    let fp = default_fixed_point();
    assert!(fp.distance_to_seed < 0.00405550003051758, "{}", fp.distance_to_seed);
    assert!(fp.distance_to_seed > 0.003);
}

//! Floating-point fixed point of the renormalization operator on a
//! truncated coefficient grid. Nothing here is rigorous; the results only
//! cross-check certified enclosures.
//!
//! One step maps `s` to `s(z(x, y), lambda y) / mu`, where `lambda` solves
//! `s(lambda, 1) + s(0, 1) = 0`, `z` solves `s(lambda x, z) + s(lambda y, z) = 0`
//! and `mu = s(z(0, 0), 0)`. The image is sampled on the torus
//! `|x| = |y| = rho` and refitted by a 2D DFT. Newton's method on
//! `R(s) - s` uses the exact derivative of this discretization.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use pdcert_core::certify::Certificate;
use pdcert_core::seedmap::{Column, SeedTable};
use pdcert_core::Interval;
use rustfft::{Fft, FftPlanner};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OracleError {
    #[error("Newton iteration did not converge in {0}")]
    NewtonDivergence(&'static str),
    #[error("singular Jacobian in the fixed-point solve")]
    Singular,
}

pub type Result<T> = std::result::Result<T, OracleError>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleParams {
    pub nx: usize,
    pub ny: usize,
    /// Samples per circle of the torus.
    pub samples: usize,
    pub rho: f64,
    pub max_iter: usize,
    /// Stop when `||R(s) - s||_rho` drops below this.
    pub tol: f64,
}

impl Default for OracleParams {
    fn default() -> Self {
        OracleParams { nx: 20, ny: 9, samples: 64, rho: 1.75, max_iter: 12, tol: 1e-12 }
    }
}

/// Real coefficients `c_ij` of `x^i y^j` with `i <= nx`, `j <= ny`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedMap {
    nx: usize,
    ny: usize,
    c: Vec<f64>,
    /// Scalings used to produce this map, if it is an image of the operator.
    pub lambda: f64,
    pub mu: f64,
}

impl TruncatedMap {
    pub fn zeros(nx: usize, ny: usize) -> Self {
        TruncatedMap { nx, ny, c: vec![0.0; (nx + 1) * (ny + 1)], lambda: f64::NAN, mu: f64::NAN }
    }

    /// Midpoints of the table entries, cut to the grid.
    pub fn from_table(table: &SeedTable, nx: usize, ny: usize) -> Self {
        let mut m = Self::zeros(nx, ny);
        for col in Column::ALL {
            let j = col as usize;
            for i in 0..pdcert_core::seedmap::TABLE_LEN {
                if i <= nx && j <= ny {
                    m.set(i, j, table.get(col, i).mid());
                }
            }
        }
        m
    }

    pub fn degrees(&self) -> (usize, usize) {
        (self.nx, self.ny)
    }

    pub fn coeff(&self, i: usize, j: usize) -> f64 {
        if i <= self.nx && j <= self.ny {
            self.c[i * (self.ny + 1) + j]
        } else {
            0.0
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.c[i * (self.ny + 1) + j] = v;
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.c
    }

    /// `sum |c_ij| rho^(i+j)`.
    pub fn norm(&self, rho: f64) -> f64 {
        let mut s = 0.0;
        for i in 0..=self.nx {
            for j in 0..=self.ny {
                s += self.coeff(i, j).abs() * rho.powi((i + j) as i32);
            }
        }
        s
    }

    /// `||self - other||_rho` over the union of both grids.
    pub fn distance(&self, other: &TruncatedMap, rho: f64) -> f64 {
        let nx = self.nx.max(other.nx);
        let ny = self.ny.max(other.ny);
        let mut s = 0.0;
        for i in 0..=nx {
            for j in 0..=ny {
                s += (self.coeff(i, j) - other.coeff(i, j)).abs() * rho.powi((i + j) as i32);
            }
        }
        s
    }

    pub fn eval(&self, x: Complex64, y: Complex64) -> Complex64 {
        self.eval_grad(x, y).0
    }

    /// `(s, d_x s, d_y s)` by nested Horner.
    pub fn eval_grad(&self, x: Complex64, y: Complex64) -> (Complex64, Complex64, Complex64) {
        let zero = Complex64::new(0.0, 0.0);
        let (mut v, mut vx, mut vy) = (zero, zero, zero);
        for i in (0..=self.nx).rev() {
            let row = &self.c[i * (self.ny + 1)..(i + 1) * (self.ny + 1)];
            let (mut p, mut py) = (zero, zero);
            for &cij in row.iter().rev() {
                py = py * y + p;
                p = p * y + cij;
            }
            vx = vx * x + v;
            v = v * x + p;
            vy = vy * x + py;
        }
        (v, vx, vy)
    }

    fn eval_real(&self, x: f64, y: f64) -> (f64, f64, f64) {
        let (v, vx, vy) = self.eval_grad(Complex64::new(x, 0.0), Complex64::new(y, 0.0));
        (v.re, vx.re, vy.re)
    }
}

const NEWTON_STEPS: usize = 60;

/// Root of `s(l, 1) + s(0, 1)` near `-1/4`.
pub fn solve_lambda(s: &TruncatedMap) -> Result<f64> {
    let tail = s.eval_real(0.0, 1.0).0;
    let mut l = -0.25;
    for _ in 0..NEWTON_STEPS {
        let (v, vx, _) = s.eval_real(l, 1.0);
        let dl = (v + tail) / vx;
        l -= dl;
        if dl.abs() <= 1e-16 * l.abs().max(1.0) {
            return Ok(l);
        }
    }
    let (v, _, _) = s.eval_real(l, 1.0);
    if (v + tail).abs() < 1e-13 {
        Ok(l)
    } else {
        Err(OracleError::NewtonDivergence("lambda"))
    }
}

/// Root `z` of `s(x, z) + s(y, z)` from the initial guess `z0`.
pub fn solve_midpoint(s: &TruncatedMap, x: Complex64, y: Complex64, z0: Complex64) -> Result<Complex64> {
    let mut z = z0;
    let mut last = f64::INFINITY;
    for _ in 0..NEWTON_STEPS {
        let (gx, _, gxz) = s.eval_grad(x, z);
        let (gy, _, gyz) = s.eval_grad(y, z);
        let dz = (gx + gy) / (gxz + gyz);
        z -= dz;
        last = dz.norm();
        if last <= 1e-16 * z.norm().max(1.0) {
            return Ok(z);
        }
    }
    if last < 1e-12 {
        Ok(z)
    } else {
        Err(OracleError::NewtonDivergence("midpoint"))
    }
}

/// `z(lambda x, lambda y)` for the map's own `lambda`, started at `z(0, 0)`.
pub fn midpoint_z(s: &TruncatedMap, x: Complex64, y: Complex64) -> Result<Complex64> {
    let lambda = solve_lambda(s)?;
    let z00 = solve_midpoint(s, Complex64::default(), Complex64::default(), Complex64::new(0.93, 0.0))?;
    solve_midpoint(s, x * lambda, y * lambda, z00)
}

struct Grid {
    k: usize,
    nodes: Vec<Complex64>,
    fft: Arc<dyn Fft<f64>>,
}

impl Grid {
    fn new(k: usize, rho: f64) -> Self {
        let nodes =
            (0..k).map(|a| Complex64::from_polar(rho, 2.0 * std::f64::consts::PI * a as f64 / k as f64)).collect();
        let fft = FftPlanner::new().plan_fft_forward(k);
        Grid { k, nodes, fft }
    }

    /// Coefficients `c_ij`, `i <= nx`, `j <= ny`, of samples `f[a k + b]` at `(node_a, node_b)`.
    fn refit(&self, f: &mut [Complex64], nx: usize, ny: usize, rho: f64) -> Vec<f64> {
        let k = self.k;
        for row in f.chunks_exact_mut(k) {
            self.fft.process(row);
        }
        let mut col = vec![Complex64::default(); k];
        let mut out = vec![0.0; (nx + 1) * (ny + 1)];
        let scale = 1.0 / (k * k) as f64;
        for j in 0..=ny {
            for (a, slot) in col.iter_mut().enumerate() {
                *slot = f[a * k + j];
            }
            self.fft.process(&mut col);
            for i in 0..=nx {
                out[i * (ny + 1) + j] = col[i].re * scale / rho.powi((i + j) as i32);
            }
        }
        out
    }
}

/// One evaluation of the operator, with what its derivative needs.
struct Image {
    out: TruncatedMap,
    lambda: f64,
    mu: f64,
    z00: f64,
    /// `d_x s(lambda, 1)`.
    dl_g: f64,
    /// `d_y s(0, z00)`.
    dz_h: f64,
    /// `d_x s(z00, 0)`.
    dx_mu: f64,
    z: Vec<Complex64>,
    f: Vec<Complex64>,
    /// `d_z` of the midpoint equation.
    gz: Vec<Complex64>,
    /// `d_lambda` of the midpoint equation.
    gl: Vec<Complex64>,
    /// `d_x s(z, lambda y)`.
    fx: Vec<Complex64>,
    /// `y d_y s(z, lambda y)`.
    fl: Vec<Complex64>,
}

fn apply(s: &TruncatedMap, grid: &Grid, rho: f64) -> Result<Image> {
    let k = grid.k;
    let lambda = solve_lambda(s)?;
    let (_, dl_g, _) = s.eval_real(lambda, 1.0);
    let zero = Complex64::default();
    let z00c = solve_midpoint(s, zero, zero, Complex64::new(0.93, 0.0))?;
    let z00 = z00c.re;
    let (mu, dx_mu, _) = s.eval_real(z00, 0.0);
    let (_, _, dz_h) = s.eval_real(0.0, z00);
    let n = k * k;
    let mut img = Image {
        out: TruncatedMap::zeros(s.nx, s.ny),
        lambda,
        mu,
        z00,
        dl_g,
        dz_h,
        dx_mu,
        z: Vec::with_capacity(n),
        f: Vec::with_capacity(n),
        gz: Vec::with_capacity(n),
        gl: Vec::with_capacity(n),
        fx: Vec::with_capacity(n),
        fl: Vec::with_capacity(n),
    };
    for a in 0..k {
        let x = grid.nodes[a];
        for b in 0..k {
            let y = grid.nodes[b];
            let z = solve_midpoint(s, x * lambda, y * lambda, z00c)?;
            let (_, sx_a, sz_a) = s.eval_grad(x * lambda, z);
            let (_, sx_b, sz_b) = s.eval_grad(y * lambda, z);
            let (v, vx, vy) = s.eval_grad(z, y * lambda);
            img.z.push(z);
            img.f.push(v / mu);
            img.gz.push(sz_a + sz_b);
            img.gl.push(sx_a * x + sx_b * y);
            img.fx.push(vx);
            img.fl.push(vy * y);
        }
    }
    let mut f = img.f.clone();
    img.out.c = grid.refit(&mut f, s.nx, s.ny, rho);
    img.out.lambda = lambda;
    img.out.mu = mu;
    Ok(img)
}

/// Derivative of the image with respect to `c_ij`, as a coefficient vector.
fn image_derivative(
    s: &TruncatedMap,
    img: &Image,
    grid: &Grid,
    rho: f64,
    i: usize,
    j: usize,
    buf: &mut Vec<Complex64>,
) -> Vec<f64> {
    let k = grid.k;
    let at_zero = |p: usize| if p == 0 { 1.0 } else { 0.0 };
    let dlambda = -(img.lambda.powi(i as i32) + at_zero(i)) / img.dl_g;
    let dz00 = -at_zero(i) * img.z00.powi(j as i32) / img.dz_h;
    let dmu = img.z00.powi(i as i32) * at_zero(j) + img.dx_mu * dz00;
    buf.clear();
    for a in 0..k {
        let xa = (grid.nodes[a] * img.lambda).powu(i as u32);
        for b in 0..k {
            let p = a * k + b;
            let y = grid.nodes[b] * img.lambda;
            let z = img.z[p];
            let mono = (xa + y.powu(i as u32)) * z.powu(j as u32);
            let dz = -(mono + img.gl[p] * dlambda) / img.gz[p];
            let df = (z.powu(i as u32) * y.powu(j as u32) + img.fx[p] * dz + img.fl[p] * dlambda) / img.mu
                - img.f[p] * (dmu / img.mu);
            buf.push(df);
        }
    }
    grid.refit(buf, s.nx, s.ny, rho)
}

/// `R(s)`, with the scalings stored on the result.
pub fn renorm_step(s: &TruncatedMap, params: &OracleParams) -> Result<TruncatedMap> {
    let grid = Grid::new(params.samples, params.rho);
    Ok(apply(s, &grid, params.rho)?.out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct FixedPoint {
    pub params: OracleParams,
    pub map: TruncatedMap,
    pub lambda: f64,
    pub mu: f64,
    /// `||R(s*) - s*||_rho` at the last evaluation.
    pub residual: f64,
    pub iterations: usize,
    /// `||R(s0) - s0||_rho` for the starting seed.
    pub seed_step: f64,
    /// `||s* - s0||_rho`.
    pub distance_to_seed: f64,
}

/// Newton's method on `R(s) - s` from the seed table.
pub fn solve_fixed_point(table: &SeedTable, params: &OracleParams) -> Result<FixedPoint> {
    let grid = Grid::new(params.samples, params.rho);
    let seed = TruncatedMap::from_table(table, params.nx, params.ny);
    let dim = (params.nx + 1) * (params.ny + 1);
    let mut s = seed.clone();
    let mut seed_step = f64::NAN;
    let mut buf = Vec::with_capacity(params.samples * params.samples);
    for it in 0..=params.max_iter {
        let img = apply(&s, &grid, params.rho)?;
        let resid: Vec<f64> = img.out.c.iter().zip(&s.c).map(|(r, c)| r - c).collect();
        let mut diff = img.out.clone();
        diff.c.clone_from(&resid);
        let residual = diff.norm(params.rho);
        if it == 0 {
            seed_step = residual;
        }
        if residual < params.tol || it == params.max_iter {
            if residual >= 1e-8 {
                return Err(OracleError::NewtonDivergence("fixed point"));
            }
            let distance_to_seed = s.distance(&seed, params.rho);
            s.lambda = solve_lambda(&s)?;
            s.mu = img.mu;
            return Ok(FixedPoint {
                params: *params,
                lambda: s.lambda,
                mu: img.mu,
                map: s,
                residual,
                iterations: it,
                seed_step,
                distance_to_seed,
            });
        }
        let mut jac = DMatrix::<f64>::zeros(dim, dim);
        for i in 0..=params.nx {
            for j in 0..=params.ny {
                let q = i * (params.ny + 1) + j;
                let col = image_derivative(&s, &img, &grid, params.rho, i, j, &mut buf);
                for (row, v) in col.into_iter().enumerate() {
                    jac[(row, q)] = v;
                }
                jac[(q, q)] -= 1.0;
            }
        }
        let step = jac.lu().solve(&DVector::from_vec(resid)).ok_or(OracleError::Singular)?;
        for (c, d) in s.c.iter_mut().zip(step.iter()) {
            *c -= d;
        }
    }
    unreachable!("loop returns on its last iteration")
}

pub mod reference {
    /// Published enclosure of the fixed point's spatial scaling.
    pub const LAMBDA_STAR: (f64, f64) = (-0.248886108398438, -0.248875313689);
    /// Published bound on the distance from the seed to the fixed point.
    pub const DISTANCE: f64 = 0.00368565320968628;
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrossLine {
    pub name: &'static str,
    pub value: f64,
    pub target: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrossCheck {
    pub params: OracleParams,
    pub iterations: usize,
    pub residual: f64,
    pub lines: Vec<CrossLine>,
}

impl CrossCheck {
    pub fn all_pass(&self) -> bool {
        self.lines.iter().all(|l| l.pass)
    }

    pub fn line(&self, name: &str) -> Option<&CrossLine> {
        self.lines.iter().find(|l| l.name == name)
    }
}

fn inside(x: f64, e: Option<Interval>) -> (bool, String) {
    match e {
        Some(i) => (i.contains(x), format!("in{i}")),
        None => (false, String::from("in(no certified enclosure)")),
    }
}

/// Compares the numerical fixed point with the certified enclosures.
pub fn crosscheck(cert: &Certificate, fp: &FixedPoint) -> CrossCheck {
    let computed = |name: &str| cert.check(name).and_then(|c| c.computed);
    let delta = cert.config.delta.lo();
    let mut lines = vec![
        CrossLine {
            name: "oracle_residual",
            value: fp.residual,
            target: String::from("<1e-8"),
            pass: fp.residual < 1e-8,
        },
        CrossLine {
            name: "oracle_seed_step",
            value: fp.seed_step,
            target: String::from("<0.02"),
            pass: fp.seed_step < 0.02,
        },
        CrossLine {
            name: "oracle_distance",
            value: fp.distance_to_seed,
            target: format!("<{delta:e} (reference {:e})", reference::DISTANCE),
            pass: fp.distance_to_seed < delta,
        },
    ];
    let (lo, hi) = reference::LAMBDA_STAR;
    lines.push(CrossLine {
        name: "oracle_lambda_window",
        value: fp.lambda,
        target: format!("in[{lo},{hi}]"),
        pass: lo <= fp.lambda && fp.lambda <= hi,
    });
    let (pass, target) = inside(fp.lambda, computed("lambda_in_range"));
    lines.push(CrossLine { name: "oracle_lambda_enclosure", value: fp.lambda, target, pass });
    let (pass, target) = inside(fp.mu, computed("mu_in_range"));
    lines.push(CrossLine { name: "oracle_mu_enclosure", value: fp.mu, target, pass });
    CrossCheck { params: fp.params, iterations: fp.iterations, residual: fp.residual, lines }
}

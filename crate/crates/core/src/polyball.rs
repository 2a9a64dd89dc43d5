//! Interval-coefficient polynomials and their weighted coefficient norms.
//!
//! The norm `sum |c_ij| r1^i r2^j` bounds the supremum over the closed
//! complex polydisc of radii `(r1, r2)` about `(center, center)`; every
//! sup-norm in the certificate is bounded this way.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::ivreal::Interval;

/// Univariate polynomial `sum c_i x^i`.
#[derive(Debug, Clone, PartialEq)]
pub struct UniPoly {
    coeffs: Vec<Interval>,
}

impl UniPoly {
    pub fn new(coeffs: Vec<Interval>) -> Self {
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[Interval] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Interval {
        self.coeffs.get(i).copied().unwrap_or(Interval::ZERO)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == Interval::ZERO)
    }

    pub fn eval(&self, x: &Interval) -> Result<Interval> {
        let mut acc = Interval::ZERO;
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x)?.add(c)?;
        }
        Ok(acc)
    }

    /// `sum |c_i| r^i`.
    pub fn norm(&self, r: &Interval) -> Result<Interval> {
        let mut acc = Interval::ZERO;
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(r)?.add(&c.abs())?;
        }
        Ok(acc)
    }

    /// Value at `x = 1`.
    pub fn sum(&self) -> Result<Interval> {
        self.coeffs.iter().try_fold(Interval::ZERO, |acc, c| acc.add(c)).map_err(Error::from)
    }
}

/// Bivariate polynomial `sum c_ij (x - center)^i (y - center)^j` on a dense grid.
#[derive(Debug, Clone, PartialEq)]
pub struct BiPoly {
    center: f64,
    nx: usize,
    ny: usize,
    c: Vec<Interval>,
}

impl BiPoly {
    /// The zero polynomial with room for degrees `(nx, ny)`.
    pub fn zero(nx: usize, ny: usize) -> Self {
        BiPoly { center: 0.0, nx, ny, c: vec![Interval::ZERO; (nx + 1) * (ny + 1)] }
    }

    pub fn constant(v: Interval) -> Self {
        let mut p = BiPoly::zero(0, 0);
        p.c[0] = v;
        p
    }

    pub fn monomial(i: usize, j: usize, v: Interval) -> Self {
        let mut p = BiPoly::zero(i, j);
        p.set(i, j, v);
        p
    }

    /// Builds from `(i, j, c_ij)` triples; repeated indices are summed.
    pub fn from_terms(terms: &[(usize, usize, Interval)]) -> Result<Self> {
        let nx = terms.iter().map(|t| t.0).max().unwrap_or(0);
        let ny = terms.iter().map(|t| t.1).max().unwrap_or(0);
        let mut p = BiPoly::zero(nx, ny);
        for &(i, j, v) in terms {
            let cur = p.coeff(i, j);
            p.set(i, j, cur.add(&v)?);
        }
        Ok(p)
    }

    pub fn with_center(mut self, center: f64) -> Self {
        self.center = center;
        self
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    /// Declared grid degrees `(nx, ny)`.
    pub fn degrees(&self) -> (usize, usize) {
        (self.nx, self.ny)
    }

    /// Largest `(i, j)` indices carrying a nonzero coefficient.
    pub fn effective_degrees(&self) -> (usize, usize) {
        let mut dx = 0;
        let mut dy = 0;
        for i in 0..=self.nx {
            for j in 0..=self.ny {
                if self.coeff(i, j) != Interval::ZERO {
                    dx = dx.max(i);
                    dy = dy.max(j);
                }
            }
        }
        (dx, dy)
    }

    fn idx(&self, i: usize, j: usize) -> usize {
        i * (self.ny + 1) + j
    }

    pub fn coeff(&self, i: usize, j: usize) -> Interval {
        if i <= self.nx && j <= self.ny {
            self.c[self.idx(i, j)]
        } else {
            Interval::ZERO
        }
    }

    /// Sets `c_ij`, growing the grid when needed.
    pub fn set(&mut self, i: usize, j: usize, v: Interval) {
        if i > self.nx || j > self.ny {
            let mut grown = BiPoly::zero(self.nx.max(i), self.ny.max(j)).with_center(self.center);
            for a in 0..=self.nx {
                for b in 0..=self.ny {
                    let k = grown.idx(a, b);
                    grown.c[k] = self.coeff(a, b);
                }
            }
            *self = grown;
        }
        let k = self.idx(i, j);
        self.c[k] = v;
    }

    /// Iterates `(i, j, c_ij)` over the grid.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, Interval)> + '_ {
        (0..=self.nx).flat_map(move |i| (0..=self.ny).map(move |j| (i, j, self.coeff(i, j))))
    }

    fn same_center(&self, q: &BiPoly) -> Result<()> {
        if self.center == q.center {
            Ok(())
        } else {
            Err(Error::CenterMismatch)
        }
    }

    pub fn add(&self, q: &BiPoly) -> Result<BiPoly> {
        self.same_center(q)?;
        let mut out = BiPoly::zero(self.nx.max(q.nx), self.ny.max(q.ny)).with_center(self.center);
        for i in 0..=out.nx {
            for j in 0..=out.ny {
                let k = out.idx(i, j);
                out.c[k] = self.coeff(i, j).add(&q.coeff(i, j))?;
            }
        }
        Ok(out)
    }

    pub fn sub(&self, q: &BiPoly) -> Result<BiPoly> {
        self.add(&q.neg())
    }

    pub fn neg(&self) -> BiPoly {
        BiPoly { c: self.c.iter().map(|v| v.neg()).collect(), ..self.clone() }
    }

    pub fn scale(&self, k: &Interval) -> Result<BiPoly> {
        let c = self.c.iter().map(|v| v.mul(k)).collect::<core::result::Result<Vec<_>, _>>()?;
        Ok(BiPoly { c, ..self.clone() })
    }

    pub fn mul(&self, q: &BiPoly) -> Result<BiPoly> {
        self.same_center(q)?;
        let mut out = BiPoly::zero(self.nx + q.nx, self.ny + q.ny).with_center(self.center);
        for (i, j, a) in self.terms() {
            if a == Interval::ZERO {
                continue;
            }
            for (k, l, b) in q.terms() {
                if b == Interval::ZERO {
                    continue;
                }
                let idx = out.idx(i + k, j + l);
                out.c[idx] = out.c[idx].add(&a.mul(&b)?)?;
            }
        }
        Ok(out)
    }

    /// Partial derivative in the second variable.
    pub fn diff_y(&self) -> Result<BiPoly> {
        let mut out = BiPoly::zero(self.nx, self.ny.saturating_sub(1)).with_center(self.center);
        for i in 0..=self.nx {
            for j in 1..=self.ny {
                let k = out.idx(i, j - 1);
                out.c[k] = self.coeff(i, j).scale(j as f64)?;
            }
        }
        Ok(out)
    }

    /// Re-expands `p(x + p0, y)` in powers of `x`.
    pub fn shift_x(&self, p0: &Interval) -> Result<BiPoly> {
        let n = self.nx;
        let mut powers = vec![Interval::ONE; n + 1];
        for k in 1..=n {
            powers[k] = powers[k - 1].mul(p0)?;
        }
        let mut out = BiPoly::zero(n, self.ny).with_center(self.center);
        for j in 0..=self.ny {
            for k in 0..=n {
                let mut acc = Interval::ZERO;
                let mut binom = 1.0f64; // C(i, k), exact while below 2^53
                for i in k..=n {
                    if i > k {
                        binom = binom * i as f64 / (i - k) as f64;
                    }
                    let term = self.coeff(i, j).mul(&powers[i - k])?.scale(binom)?;
                    acc = acc.add(&term)?;
                }
                let idx = out.idx(k, j);
                out.c[idx] = acc;
            }
        }
        Ok(out)
    }

    /// Terms with x-degree at most `k`.
    pub fn x_truncate(&self, k: usize) -> BiPoly {
        let mut out = self.clone();
        for i in (k + 1)..=self.nx {
            for j in 0..=self.ny {
                let idx = out.idx(i, j);
                out.c[idx] = Interval::ZERO;
            }
        }
        out
    }

    /// Terms with x-degree above `k`.
    pub fn x_tail(&self, k: usize) -> BiPoly {
        let mut out = self.clone();
        for i in 0..=k.min(self.nx) {
            for j in 0..=self.ny {
                let idx = out.idx(i, j);
                out.c[idx] = Interval::ZERO;
            }
        }
        out
    }

    pub fn constant_term(&self) -> Interval {
        self.coeff(0, 0)
    }

    /// The polynomial with its constant coefficient set to exactly zero.
    pub fn without_constant(&self) -> BiPoly {
        let mut out = self.clone();
        out.c[0] = Interval::ZERO;
        out
    }

    pub fn swap_xy(&self) -> BiPoly {
        let mut out = BiPoly::zero(self.ny, self.nx).with_center(self.center);
        for (i, j, v) in self.terms() {
            let k = out.idx(j, i);
            out.c[k] = v;
        }
        out
    }

    /// `u(x) + u(y)`.
    pub fn symmetric_sum(u: &UniPoly) -> Result<BiPoly> {
        let n = u.len().saturating_sub(1);
        let mut out = BiPoly::zero(n, n);
        for (i, c) in u.coeffs().iter().enumerate() {
            if i == 0 {
                out.c[0] = c.add(c)?;
            } else {
                let a = out.idx(i, 0);
                out.c[a] = *c;
                let b = out.idx(0, i);
                out.c[b] = *c;
            }
        }
        Ok(out)
    }

    /// Upper-bounding enclosure of `sum |c_ij| r1^i r2^j`.
    pub fn polydisc_bound(&self, r1: &Interval, r2: &Interval) -> Result<Interval> {
        if r1.lo() < 0.0 || r2.lo() < 0.0 {
            return Err(Error::Domain("polydisc radius"));
        }
        let mut acc = Interval::ZERO;
        for i in (0..=self.nx).rev() {
            let mut row = Interval::ZERO;
            for j in (0..=self.ny).rev() {
                row = row.mul(r2)?.add(&self.coeff(i, j).abs())?;
            }
            acc = acc.mul(r1)?.add(&row)?;
        }
        Ok(acc)
    }

    /// The weighted coefficient norm at equal radii.
    pub fn ell1_norm(&self, rho: &Interval) -> Result<Interval> {
        self.polydisc_bound(rho, rho)
    }

    /// Encloses the range of `p` over the box `X x Y` by Horner evaluation.
    pub fn eval_box(&self, x: &Interval, y: &Interval) -> Result<Interval> {
        let tau = Interval::point(self.center)?;
        let xs = x.sub(&tau)?;
        let ys = y.sub(&tau)?;
        let mut acc = Interval::ZERO;
        for i in (0..=self.nx).rev() {
            let mut row = Interval::ZERO;
            for j in (0..=self.ny).rev() {
                row = row.mul(&ys)?.add(&self.coeff(i, j))?;
            }
            acc = acc.mul(&xs)?.add(&row)?;
        }
        Ok(acc)
    }

    /// Splits `s = D y^3 + A y^2 + B y + C` into `(D, A, B, C)`.
    pub fn y_slices(&self) -> Result<(UniPoly, UniPoly, UniPoly, UniPoly)> {
        let (_, dy) = self.effective_degrees();
        if dy > 3 {
            return Err(Error::Degree { found: dy, max: 3 });
        }
        let col = |j: usize| UniPoly::new((0..=self.nx).map(|i| self.coeff(i, j)).collect());
        Ok((col(3), col(2), col(1), col(0)))
    }

    /// Inverse of [`BiPoly::y_slices`].
    pub fn from_y_slices(d: &UniPoly, a: &UniPoly, b: &UniPoly, c: &UniPoly) -> BiPoly {
        let nx = [d.len(), a.len(), b.len(), c.len()].into_iter().max().unwrap_or(1).saturating_sub(1);
        let mut out = BiPoly::zero(nx, 3);
        for (j, u) in [c, b, a, d].into_iter().enumerate() {
            for (i, v) in u.coeffs().iter().enumerate() {
                let k = out.idx(i, j);
                out.c[k] = *v;
            }
        }
        out
    }
}

//! The seed generating function and the objects derived from it.
//!
//! The seed is `s0(x, y) = D0(x) y^3 + A0(x) y^2 + B0(x) y + C0(x)` with
//! degree-6 slices read from a 28-entry coefficient table. It splits as
//! `s0 = sigma0 - tau/2` with `tau(y) = -2 a0 y^2 - 2 b0 y`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::error::{Error, Result};
use crate::ivreal::{format_hex, parse_decimal, Interval};
use crate::polyball::{BiPoly, UniPoly};

/// Number of coefficients per column.
pub const TABLE_LEN: usize = 7;

/// A column of the coefficient table; its index is the power of `y` it multiplies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Column {
    C = 0,
    B = 1,
    A = 2,
    D = 3,
}

impl Column {
    pub const ALL: [Column; 4] = [Column::C, Column::B, Column::A, Column::D];

    pub fn from_letter(s: &str) -> Option<Column> {
        match s {
            "c" => Some(Column::C),
            "b" => Some(Column::B),
            "a" => Some(Column::A),
            "d" => Some(Column::D),
            _ => None,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Column::C => 'c',
            Column::B => 'b',
            Column::A => 'a',
            Column::D => 'd',
        }
    }
}

const BUILTIN: [[&str; TABLE_LEN]; 4] = [
    [
        "1.00000000000000000",
        "-1.02761956458970711",
        "2.93663720023727808e-2",
        "-1.87658664952086400e-3",
        "1.40668294317213841e-4",
        "-1.18664608613747513e-5",
        "1.06935654680404746e-6",
    ],
    [
        "-2.42962369607899157e-1",
        "5.87327440047455615e-2",
        "-5.93710236103475834e-3",
        "6.09332694202817819e-4",
        "-6.46957663100331420e-5",
        "7.02844653606969302e-6",
        "-7.75814237637266867e-7",
    ],
    [
        "-8.77647505670140721e-1",
        "-5.62975994856259201e-3",
        "9.13999041304226728e-4",
        "-1.33251463600020727e-4",
        "1.84028385489487478e-5",
        "-2.46417657757601024e-6",
        "3.23459112039180563e-7",
    ],
    [
        "-1.46791670728014469e-3",
        "5.62673177268855366e-4",
        "-1.29391532620066284e-4",
        "2.45371180652649971e-5",
        "-4.18641657324405651e-6",
        "6.68319468409332288e-7",
        "-1.01939399249366523e-7",
    ],
];

/// The four coefficient columns, each enclosed entry-wise.
#[derive(Debug, Clone, PartialEq)]
pub struct SeedTable {
    cols: [[Interval; TABLE_LEN]; 4],
}

impl SeedTable {
    /// The shipped seed coefficients.
    pub fn builtin() -> SeedTable {
        let mut cols = [[Interval::ZERO; TABLE_LEN]; 4];
        for (k, col) in BUILTIN.iter().enumerate() {
            for (i, s) in col.iter().enumerate() {
                cols[k][i] = parse_decimal(s).expect("builtin table literal");
            }
        }
        SeedTable { cols }
    }

    /// The decimal literals of the shipped table, as `(column, index, literal)`.
    pub fn builtin_literals() -> impl Iterator<Item = (Column, usize, &'static str)> {
        Column::ALL.into_iter().flat_map(|c| BUILTIN[c as usize].iter().enumerate().map(move |(i, s)| (c, i, *s)))
    }

    /// Assembles a table from exactly one entry per `(column, index)`.
    pub fn from_entries(entries: &[(Column, usize, Interval)]) -> Result<SeedTable> {
        let mut seen = [[false; TABLE_LEN]; 4];
        let mut cols = [[Interval::ZERO; TABLE_LEN]; 4];
        for &(col, i, v) in entries {
            if i >= TABLE_LEN {
                return Err(Error::Parse(format!("index {i} out of range 0..{}", TABLE_LEN - 1)));
            }
            if seen[col as usize][i] {
                return Err(Error::Parse(format!("duplicate entry {} {i}", col.letter())));
            }
            seen[col as usize][i] = true;
            cols[col as usize][i] = v;
        }
        if let Some((c, i)) =
            Column::ALL.iter().flat_map(|&c| (0..TABLE_LEN).map(move |i| (c, i))).find(|&(c, i)| !seen[c as usize][i])
        {
            return Err(Error::Parse(format!("missing entry {} {i}", c.letter())));
        }
        Ok(SeedTable { cols })
    }

    pub fn get(&self, col: Column, i: usize) -> Interval {
        self.cols[col as usize][i]
    }

    pub fn column(&self, col: Column) -> UniPoly {
        UniPoly::new(self.cols[col as usize].to_vec())
    }

    /// One line per entry with hex endpoints; stable input for hashing.
    pub fn canonical_text(&self) -> String {
        let mut out = String::new();
        for col in Column::ALL {
            for i in 0..TABLE_LEN {
                let v = self.get(col, i);
                let _ = writeln!(out, "{} {i} {} {}", col.letter(), format_hex(v.lo()), format_hex(v.hi()));
            }
        }
        out
    }
}

/// The seed and everything derived from it once.
#[derive(Debug, Clone)]
pub struct GeneratingSeed {
    pub table: SeedTable,
    pub s0: BiPoly,
    pub s1: BiPoly,
    pub sigma0: BiPoly,
    /// `Sigma0(x, y) = sigma0(x + p, y)`.
    pub sigma_shifted: BiPoly,
    /// `Theta0 = Sigma0 - theta0`, vanishing at the origin.
    pub theta: BiPoly,
    /// Derivative of `Theta0` in its second argument.
    pub dtheta: BiPoly,
    pub a0: Interval,
    pub b0: Interval,
    pub theta0: Interval,
    /// `b0^2 - 4 a0 theta0`.
    pub cconst: Interval,
    pub shift: Interval,
    pub rho: Interval,
}

impl GeneratingSeed {
    pub fn load(table: SeedTable, rho: Interval, shift: Interval) -> Result<GeneratingSeed> {
        if table.get(Column::C, 0) != Interval::ONE {
            return Err(Error::Invariant("s0(0,0) must equal 1"));
        }
        if !rho.is_positive() {
            return Err(Error::Config(String::from("rho must be positive")));
        }
        let s0 = BiPoly::from_y_slices(
            &table.column(Column::D),
            &table.column(Column::A),
            &table.column(Column::B),
            &table.column(Column::C),
        );
        let a0 = table.get(Column::A, 0);
        let b0 = table.get(Column::B, 0);
        // sigma0 = s0 + tau/2 = s0 - a0 y^2 - b0 y; the subtracted numbers are the
        // y^2 and y coefficients at x^0 themselves, so they cancel exactly.
        let mut sigma0 = s0.clone();
        sigma0.set(0, 2, Interval::ZERO);
        sigma0.set(0, 1, Interval::ZERO);
        let sigma_shifted = sigma0.shift_x(&shift)?;
        let theta0 = sigma_shifted.constant_term();
        let theta = sigma_shifted.without_constant();
        let dtheta = theta.diff_y()?;
        let cconst = b0.sqr()?.sub(&a0.mul(&theta0)?.scale(4.0)?)?;
        if !cconst.is_positive() {
            return Err(Error::Invariant("b0^2 - 4 a0 theta0 must be positive"));
        }
        let s1 = make_s1(&s0);
        Ok(GeneratingSeed { table, s0, s1, sigma0, sigma_shifted, theta, dtheta, a0, b0, theta0, cconst, shift, rho })
    }

    /// The builtin table at `rho = 1.75`, `p = 0`.
    pub fn builtin() -> GeneratingSeed {
        GeneratingSeed::load(SeedTable::builtin(), Interval::exact(1.75), Interval::ZERO)
            .expect("builtin seed is valid")
    }

    /// `(A1(1), B1(1), C1(1))`, the `x^2`, `x^1`, `x^0` slices of `s0` at `y = 1`.
    pub fn a1b1c1_at_1(&self) -> Result<(Interval, Interval, Interval)> {
        let at = |i: usize| -> Result<Interval> {
            Column::ALL.iter().try_fold(Interval::ZERO, |acc, &c| acc.add(&self.table.get(c, i))).map_err(Error::from)
        };
        Ok((at(2)?, at(1)?, at(0)?))
    }

    /// `C0 + [-rho^3, rho^3] D0`, coefficient-wise.
    pub fn ctilde(&self) -> Result<UniPoly> {
        let rho3 = self.rho.powi(3)?;
        let err = rho3.hull(&rho3.neg());
        let c = self.table.column(Column::C);
        let d = self.table.column(Column::D);
        let coeffs = (0..TABLE_LEN)
            .map(|i| c.coeff(i).add(&err.mul(&d.coeff(i))?))
            .collect::<core::result::Result<Vec<_>, _>>()?;
        Ok(UniPoly::new(coeffs))
    }

    /// `tau(y) = -2 a0 y^2 - 2 b0 y`.
    pub fn tau(&self, y: &Interval) -> Result<Interval> {
        let t = self.a0.mul(&y.sqr()?)?.add(&self.b0.mul(y)?)?;
        Ok(t.scale(-2.0)?)
    }

    /// The inverse branch of `tau` through the origin.
    ///
    /// Evaluated as `u / (sqrt(b0^2 - 2 a0 u) - b0)`, which is
    /// `(-b0 - sqrt(b0^2 - 2 a0 u)) / (2 a0)` without cancellation.
    pub fn nu(&self, u: &Interval) -> Result<Interval> {
        let disc = self.b0.sqr()?.sub(&self.a0.mul(u)?.scale(2.0)?)?;
        if disc.lo() < 0.0 {
            return Err(Error::Domain("nu radicand"));
        }
        let den = disc.sqrt()?.sub(&self.b0)?;
        if !den.is_positive() {
            return Err(Error::Denominator("nu"));
        }
        Ok(u.div(&den)?)
    }

    /// `||s0 - s1||_rho`, the norm of the x-degree >= 3 part.
    pub fn truncation_norm(&self) -> Result<Interval> {
        self.s0.x_tail(2).ell1_norm(&self.rho)
    }
}

/// The part of `s` of degree at most 2 in `x`.
pub fn make_s1(s: &BiPoly) -> BiPoly {
    s.x_truncate(2)
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;

    #[test]
    fn builtin_constants() {
        let seed = GeneratingSeed::builtin();
        assert_eq!(seed.s0.coeff(0, 0), Interval::ONE);
        assert_eq!(seed.theta0, Interval::ONE);
        assert!(seed.a0.contains(-0.877647505670140721));
        assert!(seed.b0.contains(-0.242962369607899157));
        assert!((seed.cconst.mid() - 3.569620735726).abs() < 1e-11);
        assert!(seed.cconst.width() < 1e-14);
    }

    #[test]
    fn decomposition_reassembles_s0() {
        let seed = GeneratingSeed::builtin();
        let mut back = seed.sigma0.clone();
        back.set(0, 2, seed.a0);
        back.set(0, 1, seed.b0);
        assert_eq!(back, seed.s0);
        assert_eq!(seed.theta.constant_term(), Interval::ZERO);
    }

    #[test]
    fn s1_sums_match_table() {
        let seed = GeneratingSeed::builtin();
        let (a1, b1, c1) = seed.a1b1c1_at_1().unwrap();
        assert!((c1.mid() + 0.1220778).abs() < 1e-6);
        assert!((b1.mid() + 0.9739539).abs() < 1e-6);
        assert!((a1.mid() - 0.0242139).abs() < 1e-6);
        let trunc = make_s1(&seed.s1);
        assert_eq!(trunc, seed.s1);
    }

    #[test]
    fn ctilde_widens_by_rho_cubed() {
        let seed = GeneratingSeed::builtin();
        let ct = seed.ctilde().unwrap();
        let half = 0.5 * ct.coeff(0).width();
        let want = 5.359375 * 1.46791670728014469e-3;
        assert!((half - want).abs() < 1e-15);
    }

    #[test]
    fn nu_branch_through_origin() {
        let seed = GeneratingSeed::builtin();
        assert_eq!(seed.nu(&Interval::ZERO).unwrap(), Interval::ZERO);
        let half = Interval::exact(0.5);
        let back = seed.nu(&seed.tau(&half).unwrap()).unwrap();
        assert!(back.contains(0.5));
        let near = seed.nu(&Interval::exact(2.0)).unwrap();
        assert!((near.mid() - 0.938).abs() < 0.01);
    }

    #[test]
    fn rejects_bad_origin_value() {
        let mut entries: Vec<_> =
            SeedTable::builtin_literals().map(|(c, i, s)| (c, i, parse_decimal(s).unwrap())).collect();
        entries[0].2 = Interval::exact(2.0);
        let table = SeedTable::from_entries(&entries).unwrap();
        let err = GeneratingSeed::load(table, Interval::exact(1.75), Interval::ZERO).unwrap_err();
        assert_eq!(err, Error::Invariant("s0(0,0) must equal 1"));
    }

    #[test]
    fn incomplete_table_is_a_parse_error() {
        let entries: Vec<_> =
            SeedTable::builtin_literals().skip(1).map(|(c, i, s)| (c, i, parse_decimal(s).unwrap())).collect();
        assert!(matches!(SeedTable::from_entries(&entries), Err(Error::Parse(_))));
    }
}

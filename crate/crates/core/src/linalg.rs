//! Exact rank computations over the rationals and prime fields.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficient field for homology and Betti numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum FieldChoice {
    #[default]
    Rational,
    Prime(u32),
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl FieldChoice {
    pub fn prime(p: u32) -> Result<Self> {
        if is_prime(p as u64) && p < 1 << 31 {
            Ok(Self::Prime(p))
        } else {
            Err(Error::InvalidField(format!("gf:{p}")))
        }
    }

    pub fn characteristic(self) -> u32 {
        match self {
            Self::Rational => 0,
            Self::Prime(p) => p,
        }
    }
}

impl fmt::Display for FieldChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Rational => f.write_str("q"),
            Self::Prime(2) => f.write_str("gf2"),
            Self::Prime(p) => write!(f, "gf:{p}"),
        }
    }
}

impl FromStr for FieldChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "q" | "qq" | "rational" => Ok(Self::Rational),
            "gf2" => Ok(Self::Prime(2)),
            other => other
                .strip_prefix("gf:")
                .and_then(|p| p.parse::<u32>().ok())
                .map_or_else(|| Err(Error::InvalidField(s.to_string())), Self::prime),
        }
    }
}

impl From<FieldChoice> for String {
    fn from(f: FieldChoice) -> String {
        f.to_string()
    }
}

impl TryFrom<String> for FieldChoice {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a != 0 {
                    for c in 0..other.cols {
                        out.data[r * other.cols + c] += a * other.get(k, c);
                    }
                }
            }
        }
        out
    }

    /// The matrix with `v` appended as an extra column.
    pub fn with_column(&self, v: &[i64]) -> Self {
        assert_eq!(v.len(), self.rows);
        let mut out = Self::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            out.data[r * (self.cols + 1)..r * (self.cols + 1) + self.cols]
                .copy_from_slice(&self.data[r * self.cols..(r + 1) * self.cols]);
            out.data[r * (self.cols + 1) + self.cols] = v[r];
        }
        out
    }

    pub fn rank(&self, field: FieldChoice) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        match field {
            FieldChoice::Rational => rank_bareiss_i128(self).unwrap_or_else(|| rank_bareiss_big(self)),
            FieldChoice::Prime(p) => rank_mod_p(self, p as u64),
        }
    }

    /// Whether `v` lies in the column space of the matrix.
    pub fn in_column_span(&self, v: &[i64], field: FieldChoice) -> bool {
        if v.iter().all(|&x| field_reduce(x, field) == 0) {
            return true;
        }
        self.with_column(v).rank(field) == self.rank(field)
    }
}

fn field_reduce(x: i64, field: FieldChoice) -> i64 {
    match field {
        FieldChoice::Rational => x,
        FieldChoice::Prime(p) => x.rem_euclid(p as i64),
    }
}

/// Fraction-free elimination. Every intermediate entry is a minor of the
/// input, so the divisions are exact. Returns `None` on overflow.
fn rank_bareiss_i128(m: &Matrix) -> Option<usize> {
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<i128> = m.data.iter().map(|&x| x as i128).collect();
    let mut rank = 0;
    let mut prev: i128 = 1;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| a[r * cols + c] != 0) else {
            continue;
        };
        if p != rank {
            for k in 0..cols {
                a.swap(p * cols + k, rank * cols + k);
            }
        }
        let pivot = a[rank * cols + c];
        for r in rank + 1..rows {
            let factor = a[r * cols + c];
            for k in c + 1..cols {
                let v = pivot
                    .checked_mul(a[r * cols + k])?
                    .checked_sub(factor.checked_mul(a[rank * cols + k])?)?;
                debug_assert_eq!(v % prev, 0);
                a[r * cols + k] = v / prev;
            }
            a[r * cols + c] = 0;
        }
        prev = pivot;
        rank += 1;
    }
    Some(rank)
}

fn rank_bareiss_big(m: &Matrix) -> usize {
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<BigInt> = m.data.iter().map(|&x| BigInt::from(x)).collect();
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r * cols + c].is_zero()) else {
            continue;
        };
        if p != rank {
            for k in 0..cols {
                a.swap(p * cols + k, rank * cols + k);
            }
        }
        let pivot = a[rank * cols + c].clone();
        for r in rank + 1..rows {
            let factor = a[r * cols + c].clone();
            for k in c + 1..cols {
                let v = &pivot * &a[r * cols + k] - &factor * &a[rank * cols + k];
                a[r * cols + k] = v / &prev;
            }
            a[r * cols + c] = BigInt::zero();
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn rank_mod_p(m: &Matrix, p: u64) -> usize {
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<u64> = m.data.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| a[r * cols + c] != 0) else {
            continue;
        };
        if piv != rank {
            for k in 0..cols {
                a.swap(piv * cols + k, rank * cols + k);
            }
        }
        let inv = pow_mod(a[rank * cols + c], p - 2, p);
        for r in rank + 1..rows {
            let f = a[r * cols + c] * inv % p;
            if f == 0 {
                continue;
            }
            for k in c..cols {
                let sub = f * a[rank * cols + k] % p;
                a[r * cols + k] = (a[r * cols + k] + p - sub) % p;
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn field_parsing() {
        assert_eq!("q".parse::<FieldChoice>().unwrap(), FieldChoice::Rational);
        assert_eq!("gf2".parse::<FieldChoice>().unwrap(), FieldChoice::Prime(2));
        assert_eq!("gf:7".parse::<FieldChoice>().unwrap(), FieldChoice::Prime(7));
        assert!("gf:9".parse::<FieldChoice>().is_err());
        assert!("gf:1".parse::<FieldChoice>().is_err());
        assert!("r".parse::<FieldChoice>().is_err());
        for f in ["q", "gf2", "gf:5"] {
            assert_eq!(f.parse::<FieldChoice>().unwrap().to_string(), f);
        }
        let json = serde_json::to_string(&FieldChoice::Prime(3)).unwrap();
        assert_eq!(json, "\"gf:3\"");
        assert_eq!(serde_json::from_str::<FieldChoice>(&json).unwrap(), FieldChoice::Prime(3));
    }

    #[test]
    fn characteristic_matters() {
        let m = Matrix::from_rows(&[vec![1, 1], vec![1, -1]]);
        assert_eq!(m.rank(FieldChoice::Rational), 2);
        assert_eq!(m.rank(FieldChoice::Prime(2)), 1);
        assert_eq!(m.rank(FieldChoice::Prime(3)), 2);
    }

    #[test]
    fn column_span() {
        let m = Matrix::from_rows(&[vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert!(m.in_column_span(&[2, 3, 5], FieldChoice::Rational));
        assert!(!m.in_column_span(&[1, 0, 0], FieldChoice::Rational));
        assert!(m.in_column_span(&[0, 0, 0], FieldChoice::Rational));
        assert!(m.in_column_span(&[2, 0, 0], FieldChoice::Prime(2)));
        assert!(Matrix::zeros(2, 0).in_column_span(&[0, 0], FieldChoice::Rational));
        assert!(!Matrix::zeros(2, 0).in_column_span(&[0, 1], FieldChoice::Rational));
    }

    #[test]
    fn big_entries_fall_back() {
        let big = 1i64 << 61;
        let m = Matrix::from_rows(&[vec![big, 1, 3], vec![5, big, 7], vec![7, 11, big]]);
        assert_eq!(rank_bareiss_i128(&m), None);
        assert_eq!(m.rank(FieldChoice::Rational), 3);
        let singular = Matrix::from_rows(&[vec![big, 1, 3], vec![5, big, 7], vec![big + 5, big + 1, 10]]);
        assert_eq!(rank_bareiss_i128(&singular), None);
        assert_eq!(singular.rank(FieldChoice::Rational), 2);
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(-2i64..=2, c), r)
        })
    }

    fn rank_by_fractions(rows: &[Vec<i64>]) -> usize {
        use num_rational::BigRational;
        let mut a: Vec<Vec<BigRational>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
            .collect();
        let cols = a[0].len();
        let mut rank = 0;
        for c in 0..cols {
            if let Some(p) = (rank..a.len()).find(|&r| !a[r][c].is_zero()) {
                a.swap(p, rank);
                for r in rank + 1..a.len() {
                    let f = &a[r][c] / &a[rank][c];
                    for k in 0..cols {
                        let sub = &f * &a[rank][k];
                        a[r][k] -= sub;
                    }
                }
                rank += 1;
            }
        }
        rank
    }

    proptest! {
        #[test]
        fn bareiss_matches_fraction_elimination(rows in small_matrix()) {
            let m = Matrix::from_rows(&rows);
            prop_assert_eq!(m.rank(FieldChoice::Rational), rank_by_fractions(&rows));
            prop_assert_eq!(rank_bareiss_big(&m), rank_by_fractions(&rows));
            prop_assert!(m.rank(FieldChoice::Prime(2)) <= m.rank(FieldChoice::Rational));
        }
    }
}

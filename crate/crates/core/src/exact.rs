//! Exact scalars and dense linear algebra over the rationals.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type ExactInteger = BigInt;
pub type ExactRational = BigRational;

pub fn rat(n: i64) -> ExactRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> ExactRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `base^exp` for a signed exponent. `base` must be nonzero when `exp < 0`.
pub fn pow_signed(base: i64, exp: i64) -> ExactRational {
    let b = rat(base);
    if exp >= 0 {
        num_traits::pow(b, exp as usize)
    } else {
        num_traits::pow(b.recip(), exp.unsigned_abs() as usize)
    }
}

/// `C(m, h)`, zero when `h > m`.
pub fn binomial(m: u64, h: u64) -> ExactInteger {
    if h > m {
        return BigInt::zero();
    }
    let h = h.min(m - h);
    let mut acc = BigInt::one();
    for k in 0..h {
        acc *= m - k;
        acc /= k + 1;
    }
    acc
}

pub fn factorial(n: u64) -> ExactInteger {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Dense rectangular matrix of exact rationals, stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<ExactRational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigRational::one();
        }
        m
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> ExactRational,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<ExactRational>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Self {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[ExactRational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn scaled(&self, k: &ExactRational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * k).collect(),
        }
    }

    pub fn mul_vec(&self, x: &[ExactRational]) -> Result<Vec<ExactRational>> {
        if x.len() != self.cols {
            return Err(Error::Dimension(format!(
                "{}x{} matrix times vector of length {}",
                self.rows,
                self.cols,
                x.len()
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(x)
                    .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self::from_fn(self.rows, other.cols, |r, c| {
            (0..self.cols).fold(BigRational::zero(), |acc, k| {
                acc + &self[(r, k)] * &other[(k, c)]
            })
        }))
    }

    /// Replace column `c` by `values`.
    pub fn with_column(&self, c: usize, values: &[ExactRational]) -> Result<Self> {
        if values.len() != self.rows || c >= self.cols {
            return Err(Error::Dimension("column replacement".into()));
        }
        let mut out = self.clone();
        for (r, v) in values.iter().enumerate() {
            out[(r, c)] = v.clone();
        }
        Ok(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

impl Index<(usize, usize)> for RationalMatrix {
    type Output = ExactRational;

    fn index(&self, (r, c): (usize, usize)) -> &ExactRational {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r}, {c}) out of range"
        );
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut ExactRational {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r}, {c}) out of range"
        );
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Exact determinant by Gaussian elimination. The pivot is the first nonzero
/// entry at or below the diagonal in the current column.
pub fn det_exact(a: &RationalMatrix) -> Result<ExactRational> {
    if !a.is_square() {
        return Err(Error::Dimension(format!(
            "determinant of a {}x{} matrix",
            a.rows, a.cols
        )));
    }
    let n = a.rows;
    let mut m = a.clone();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[(r, col)].is_zero()) else {
            return Ok(BigRational::zero());
        };
        if pivot != col {
            m.swap_rows(pivot, col);
            det = -det;
        }
        let p = m[(col, col)].clone();
        det *= &p;
        for r in col + 1..n {
            if m[(r, col)].is_zero() {
                continue;
            }
            let factor = &m[(r, col)] / &p;
            for c in col..n {
                let delta = &factor * &m[(col, c)];
                m[(r, c)] -= delta;
            }
        }
    }
    Ok(det)
}

/// Exact solution of the square system `a · x = b`.
pub fn solve_exact(a: &RationalMatrix, b: &[ExactRational]) -> Result<Vec<ExactRational>> {
    if !a.is_square() || b.len() != a.rows {
        return Err(Error::Dimension(format!(
            "solve with {}x{} matrix and right-hand side of length {}",
            a.rows,
            a.cols,
            b.len()
        )));
    }
    let n = a.rows;
    let mut m = a.clone();
    let mut rhs = b.to_vec();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !m[(r, col)].is_zero())
            .ok_or(Error::Singular)?;
        if pivot != col {
            m.swap_rows(pivot, col);
            rhs.swap(pivot, col);
        }
        let p = m[(col, col)].clone();
        for r in col + 1..n {
            if m[(r, col)].is_zero() {
                continue;
            }
            let factor = &m[(r, col)] / &p;
            for c in col..n {
                let delta = &factor * &m[(col, c)];
                m[(r, c)] -= delta;
            }
            let delta = &factor * &rhs[col];
            rhs[r] -= delta;
        }
    }
    let mut x = vec![BigRational::zero(); n];
    for r in (0..n).rev() {
        let mut acc = rhs[r].clone();
        for c in r + 1..n {
            acc -= &m[(r, c)] * &x[c];
        }
        x[r] = acc / &m[(r, r)];
    }
    Ok(x)
}

/// Exact solution of `a · x = b` by fraction-free (Bareiss) elimination.
///
/// Each row of the augmented system is first cleared of denominators, so all
/// elimination happens over the integers; only the back substitution divides.
/// Gives the same answer as [`solve_exact`] and is much faster when the
/// entries are large integers.
pub fn solve_fraction_free(a: &RationalMatrix, b: &[ExactRational]) -> Result<Vec<ExactRational>> {
    if !a.is_square() || b.len() != a.rows {
        return Err(Error::Dimension(format!(
            "solve with {}x{} matrix and right-hand side of length {}",
            a.rows,
            a.cols,
            b.len()
        )));
    }
    let n = a.rows;
    // augmented integer rows
    let mut m: Vec<Vec<BigInt>> = (0..n)
        .map(|r| {
            let lcm = a
                .row(r)
                .iter()
                .chain(std::iter::once(&b[r]))
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            a.row(r)
                .iter()
                .chain(std::iter::once(&b[r]))
                .map(|x| x.numer() * (&lcm / x.denom()))
                .collect()
        })
        .collect();
    let mut prev = BigInt::one();
    for k in 0..n {
        let pivot = (k..n)
            .find(|&r| !m[r][k].is_zero())
            .ok_or(Error::Singular)?;
        m.swap(pivot, k);
        let (head, tail) = m.split_at_mut(k + 1);
        let pk = &head[k];
        for row in tail.iter_mut() {
            for c in k + 1..=n {
                let t = &pk[k] * &row[c] - &row[k] * &pk[c];
                row[c] = t / &prev;
            }
            row[k] = BigInt::zero();
        }
        prev = head[k][k].clone();
    }
    let mut x = vec![BigRational::zero(); n];
    for r in (0..n).rev() {
        let mut acc = BigRational::from_integer(m[r][n].clone());
        for c in r + 1..n {
            if !m[r][c].is_zero() {
                acc -= &x[c] * &m[r][c];
            }
        }
        x[r] = acc / BigRational::from_integer(m[r][r].clone());
    }
    Ok(x)
}

/// Numerator of `x` if it is an integer.
pub fn as_integer(x: &ExactRational) -> Option<ExactInteger> {
    x.is_integer().then(|| x.to_integer())
}

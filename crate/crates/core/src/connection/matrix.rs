use std::fmt;
use std::ops::{Index, IndexMut};

use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Rational = BigRational;

pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(numer.into(), denom.into())
}

/// Writes a rational as `p/q`, including `q = 1`.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Square matrix over the rationals, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    size: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(size: usize) -> Self {
        Self {
            size,
            data: vec![Rational::zero(); size * size],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut id = Self::zeros(size);
        for i in 0..size {
            id[(i, i)] = Rational::one();
        }
        id
    }

    /// `E_i^j`: 1 at row `i`, column `j` (0-based).
    pub fn unit(size: usize, i: usize, j: usize) -> Self {
        let mut e = Self::zeros(size);
        e[(i, j)] = Rational::one();
        e
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let size = rows.len();
        assert!(
            rows.iter().all(|r| r.len() == size),
            "matrix must be square"
        );
        Self {
            size,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(size: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(size * size);
        for i in 0..size {
            for j in 0..size {
                data.push(f(i, j));
            }
        }
        Self { size, data }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn trace(&self) -> Rational {
        (0..self.size).map(|i| self[(i, i)].clone()).sum()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.size, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.size, other.size);
        let n = self.size;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_fn(self.size, |i, j| &self[(i, j)] + &other[(i, j)])
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::from_fn(self.size, |i, j| &self[(i, j)] - &other[(i, j)])
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_fn(self.size, |i, j| &self[(i, j)] * c)
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    /// `M - (tr M / m) I`, the projection `gl(m) -> sl(m)`.
    pub fn trace_free(&self) -> Self {
        let shift = self.trace() / Rational::from_integer(self.size.into());
        Self::from_fn(self.size, |i, j| {
            if i == j {
                &self[(i, j)] - &shift
            } else {
                self[(i, j)].clone()
            }
        })
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.size + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.size + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.size)
            .map(|i| (0..self.size).map(|j| self[(i, j)].to_string()).collect())
            .collect();
        write!(f, "Matrix{rows:?}")
    }
}

/// Solves `A x = b` exactly; `None` when `A` is singular.
pub(crate) fn solve(a: &Matrix, b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.size();
    let mut rows: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rational> = (0..n).map(|j| a[(i, j)].clone()).collect();
            row.push(b[i].clone());
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !rows[r][col].is_zero())?;
        rows.swap(col, pivot);
        let inv = rows[col][col].recip();
        for v in rows[col].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[col].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let factor = row[col].clone();
                for (v, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *v -= &factor * p;
                }
            }
        }
    }
    Some(rows.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Indices of a maximal set of linearly independent columns of the
/// `rows x cols` matrix given row by row.
pub(crate) fn pivot_columns(rows: &[Vec<Rational>]) -> Vec<usize> {
    let mut work = rows.to_vec();
    let cols = work.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..work.len()).find(|&i| !work[i][c].is_zero()) else {
            continue;
        };
        work.swap(r, p);
        let inv = work[r][c].recip();
        for v in work[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = work[r].clone();
        for (i, row) in work.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let factor = row[c].clone();
                for (v, p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                    *v -= &factor * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == work.len() {
            break;
        }
    }
    pivots
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trace_free_examples() {
        assert!(Matrix::identity(2).trace_free().is_zero());
        let e12 = Matrix::unit(2, 0, 1);
        assert_eq!(e12.trace_free(), e12);
        let e11 = Matrix::unit(2, 0, 0);
        let expected = Matrix::unit(2, 0, 0)
            .sub(&Matrix::unit(2, 1, 1))
            .scale(&rational(1, 2));
        assert_eq!(e11.trace_free(), expected);
    }

    #[test]
    fn trace_free_is_idempotent_projection() {
        let m = Matrix::from_fn(3, |i, j| rational((i * 3 + j) as i64 - 4, (j + 1) as i64));
        let p = m.trace_free();
        assert!(p.trace().is_zero());
        assert_eq!(p.trace_free(), p);
    }

    #[test]
    fn solve_small_system() {
        let a = Matrix::from_rows(vec![
            vec![rational(2, 1), rational(1, 1)],
            vec![rational(1, 1), rational(3, 1)],
        ]);
        let x = solve(&a, &[rational(3, 1), rational(5, 1)]).unwrap();
        assert_eq!(x, vec![rational(4, 5), rational(7, 5)]);
        assert!(solve(&Matrix::zeros(2), &[rational(1, 1), rational(1, 1)]).is_none());
    }

    #[test]
    fn rational_formatting() {
        assert_eq!(format_rational(&rational(-7, 3)), "-7/3");
        assert_eq!(format_rational(&rational(4, 2)), "2/1");
    }
}

use std::ops::{Index, IndexMut};

use num_traits::Zero;

use super::matrix::Rational;

/// Dense rank-`R` array over a `dim`-dimensional index space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tensor<const R: usize> {
    dim: usize,
    data: Vec<Rational>,
}

impl<const R: usize> Tensor<R> {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Rational::zero(); dim.pow(R as u32)],
        }
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut([usize; R]) -> Rational) -> Self {
        let data = (0..dim.pow(R as u32))
            .map(|flat| f(Self::unflatten(dim, flat)))
            .collect();
        Self { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// First nonzero component in row-major order.
    pub fn first_nonzero(&self) -> Option<([usize; R], &Rational)> {
        self.data
            .iter()
            .position(|v| !v.is_zero())
            .map(|flat| (Self::unflatten(self.dim, flat), &self.data[flat]))
    }

    pub fn iter(&self) -> impl Iterator<Item = ([usize; R], &Rational)> {
        let dim = self.dim;
        self.data
            .iter()
            .enumerate()
            .map(move |(flat, v)| (Self::unflatten(dim, flat), v))
    }

    fn unflatten(dim: usize, mut flat: usize) -> [usize; R] {
        let mut idx = [0; R];
        for slot in idx.iter_mut().rev() {
            *slot = flat % dim;
            flat /= dim;
        }
        idx
    }

    fn offset(&self, idx: [usize; R]) -> usize {
        idx.iter().fold(0, |acc, &i| {
            debug_assert!(i < self.dim);
            acc * self.dim + i
        })
    }
}

impl<const R: usize> Index<[usize; R]> for Tensor<R> {
    type Output = Rational;

    fn index(&self, idx: [usize; R]) -> &Rational {
        &self.data[self.offset(idx)]
    }
}

impl<const R: usize> IndexMut<[usize; R]> for Tensor<R> {
    fn index_mut(&mut self, idx: [usize; R]) -> &mut Rational {
        let o = self.offset(idx);
        &mut self.data[o]
    }
}

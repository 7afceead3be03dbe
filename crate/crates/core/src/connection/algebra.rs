//! Lie algebras given by structure constants, and invariant connections on them.

use num_traits::Zero;

use super::matrix::{pivot_columns, solve, Matrix, Rational};
use super::tensor::Tensor;
use super::ConnectionError;

/// A basis of trace-free `m x m` matrices spanning `sl(m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixBasis {
    m: usize,
    elements: Vec<Matrix>,
    pivots: Vec<usize>,
    /// Square system mapping coordinates to the pivot entries of a matrix.
    system: Matrix,
}

impl MatrixBasis {
    /// `E_a^b` for `a != b` in row-major order, then `E_i^i - E_m^m` for `i < m`.
    pub fn standard(m: usize) -> Result<Self, ConnectionError> {
        if m < 2 {
            return Err(ConnectionError::InvalidBasis(format!(
                "need m >= 2, got {m}"
            )));
        }
        let mut elements = Vec::with_capacity(m * m - 1);
        for a in 0..m {
            for b in 0..m {
                if a != b {
                    elements.push(Matrix::unit(m, a, b));
                }
            }
        }
        for i in 0..m - 1 {
            elements.push(Matrix::unit(m, i, i).sub(&Matrix::unit(m, m - 1, m - 1)));
        }
        Self::new(m, elements)
    }

    /// Checks that `elements` are `m^2 - 1` linearly independent trace-free matrices.
    pub fn new(m: usize, elements: Vec<Matrix>) -> Result<Self, ConnectionError> {
        let n = m * m - 1;
        if m < 2 || elements.len() != n {
            return Err(ConnectionError::InvalidBasis(format!(
                "sl({m}) needs {n} basis matrices, got {}",
                elements.len()
            )));
        }
        if let Some(bad) = elements
            .iter()
            .position(|e| e.size() != m || !e.trace().is_zero())
        {
            return Err(ConnectionError::InvalidBasis(format!(
                "basis element {bad} is not a trace-free {m}x{m} matrix"
            )));
        }
        let rows: Vec<Vec<Rational>> = elements.iter().map(|e| e.entries().to_vec()).collect();
        let pivots = pivot_columns(&rows);
        if pivots.len() != n {
            return Err(ConnectionError::InvalidBasis(
                "basis matrices are linearly dependent".into(),
            ));
        }
        let system = Matrix::from_fn(n, |p, a| elements[a].entries()[pivots[p]].clone());
        Ok(Self {
            m,
            elements,
            pivots,
            system,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Matrix] {
        &self.elements
    }

    /// Coordinates of a trace-free matrix in this basis.
    pub fn coordinates(&self, x: &Matrix) -> Vec<Rational> {
        let rhs: Vec<Rational> = self
            .pivots
            .iter()
            .map(|&p| x.entries()[p].clone())
            .collect();
        let coords = solve(&self.system, &rhs).expect("basis system is invertible");
        debug_assert!(self.combine(&coords) == *x, "matrix is not in sl(m)");
        coords
    }

    pub fn combine(&self, coords: &[Rational]) -> Matrix {
        coords
            .iter()
            .zip(&self.elements)
            .filter(|(c, _)| !c.is_zero())
            .fold(Matrix::zeros(self.m), |acc, (c, e)| acc.add(&e.scale(c)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraFactor {
    /// Abelian algebra of the given dimension (the flat torus).
    Abelian(usize),
    Matrix(MatrixBasis),
}

impl AlgebraFactor {
    pub fn dim(&self) -> usize {
        match self {
            AlgebraFactor::Abelian(d) => *d,
            AlgebraFactor::Matrix(b) => b.len(),
        }
    }
}

/// A Lie algebra presented by its structure constants:
/// `[e_a, e_b] = sum_c brackets[a, b, c] e_c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    factors: Vec<AlgebraFactor>,
    brackets: Tensor<3>,
}

impl LieAlgebra {
    pub fn abelian(dim: usize) -> Self {
        Self {
            factors: vec![AlgebraFactor::Abelian(dim)],
            brackets: Tensor::zeros(dim),
        }
    }

    pub fn from_basis(basis: &MatrixBasis) -> Self {
        let n = basis.len();
        let mut brackets = Tensor::zeros(n);
        for (a, x) in basis.elements().iter().enumerate() {
            for (b, y) in basis.elements().iter().enumerate() {
                for (c, v) in basis.coordinates(&x.commutator(y)).into_iter().enumerate() {
                    brackets[[a, b, c]] = v;
                }
            }
        }
        Self {
            factors: vec![AlgebraFactor::Matrix(basis.clone())],
            brackets,
        }
    }

    /// Direct sum; the basis of `self` comes first.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        Self {
            factors,
            brackets: block_sum(&self.brackets, &other.brackets),
        }
    }

    pub fn dim(&self) -> usize {
        self.brackets.dim()
    }

    pub fn factors(&self) -> &[AlgebraFactor] {
        &self.factors
    }

    pub fn brackets(&self) -> &Tensor<3> {
        &self.brackets
    }
}

/// Block-diagonal placement of two rank-3 arrays.
fn block_sum(a: &Tensor<3>, b: &Tensor<3>) -> Tensor<3> {
    let (da, db) = (a.dim(), b.dim());
    let mut out = Tensor::zeros(da + db);
    for ([i, j, k], v) in a.iter() {
        out[[i, j, k]] = v.clone();
    }
    for ([i, j, k], v) in b.iter() {
        out[[da + i, da + j, da + k]] = v.clone();
    }
    out
}

/// A left-invariant connection: `nabla_{e_a} e_b = sum_c gamma[a, b, c] e_c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantConnection {
    algebra: LieAlgebra,
    gamma: Tensor<3>,
}

impl InvariantConnection {
    pub fn new(algebra: LieAlgebra, gamma: Tensor<3>) -> Result<Self, ConnectionError> {
        if gamma.dim() != algebra.dim() {
            return Err(ConnectionError::DimensionMismatch {
                expected: algebra.dim(),
                found: gamma.dim(),
            });
        }
        Ok(Self { algebra, gamma })
    }

    /// The zero connection on an abelian algebra of dimension `dim`.
    pub fn flat_abelian(dim: usize) -> Self {
        Self {
            algebra: LieAlgebra::abelian(dim),
            gamma: Tensor::zeros(dim),
        }
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn gamma(&self) -> &Tensor<3> {
        &self.gamma
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// `nabla_X Y` for coordinate vectors `x`, `y`.
    pub fn covariant(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let n = self.dim();
        let mut out = vec![Rational::zero(); n];
        for (a, xa) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (b, yb) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let coeff = xa * yb;
                for (c, slot) in out.iter_mut().enumerate() {
                    let g = &self.gamma[[a, b, c]];
                    if !g.is_zero() {
                        *slot += &coeff * g;
                    }
                }
            }
        }
        out
    }
}

/// `nabla_Y Z = (YZ)^bar`, the trace-free part of the matrix product.
pub fn canonical_connection(m: usize) -> Result<InvariantConnection, ConnectionError> {
    Ok(canonical_connection_on(&MatrixBasis::standard(m)?))
}

pub fn canonical_connection_on(basis: &MatrixBasis) -> InvariantConnection {
    let n = basis.len();
    let mut gamma = Tensor::zeros(n);
    for (a, x) in basis.elements().iter().enumerate() {
        for (b, y) in basis.elements().iter().enumerate() {
            let product = x.mul(y).trace_free();
            for (c, v) in basis.coordinates(&product).into_iter().enumerate() {
                gamma[[a, b, c]] = v;
            }
        }
    }
    InvariantConnection {
        algebra: LieAlgebra::from_basis(basis),
        gamma,
    }
}

/// The product connection on the direct sum: block-diagonal coefficients.
pub fn product_connection(a: &InvariantConnection, b: &InvariantConnection) -> InvariantConnection {
    InvariantConnection {
        algebra: a.algebra.direct_sum(&b.algebra),
        gamma: block_sum(&a.gamma, &b.gamma),
    }
}

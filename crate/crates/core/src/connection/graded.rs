//! The graded pieces of `f: X -> X (x) I_m` acting on `gl(m) = <I> + sl(m)`,
//! and the shifted component `f1'`.

use std::fmt;

use num_traits::{One, Zero};

use super::algebra::MatrixBasis;
use super::matrix::{Matrix, Rational};
use super::ConnectionError;

/// `tr(ᵗA B)`, the pairing between the degree 1 and degree -1 parts.
pub fn pairing(a: &Matrix, b: &Matrix) -> Rational {
    a.entries()
        .iter()
        .zip(b.entries())
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedHom {
    basis: MatrixBasis,
    xi: Option<Matrix>,
}

pub fn graded_components(m: usize) -> Result<GradedHom, ConnectionError> {
    Ok(GradedHom {
        basis: MatrixBasis::standard(m)?,
        xi: None,
    })
}

impl GradedHom {
    pub fn m(&self) -> usize {
        self.basis.m()
    }

    pub fn basis(&self) -> &MatrixBasis {
        &self.basis
    }

    pub fn xi(&self) -> Option<&Matrix> {
        self.xi.as_ref()
    }

    pub fn with_shift(mut self, xi: Matrix) -> Result<Self, ConnectionError> {
        check_sl(self.m(), &xi)?;
        self.xi = Some(xi);
        Ok(self)
    }

    fn m_rational(&self) -> Rational {
        Rational::from_integer(self.m().into())
    }

    /// Image of `I` under the degree -1 part.
    pub fn f_minus1(&self, x: &Matrix) -> Matrix {
        x.clone()
    }

    pub fn f0(&self, x: &Matrix, y: &Matrix) -> Matrix {
        x.mul(y).trace_free()
    }

    /// Coefficient of `I` in the degree 1 part applied to `y`.
    pub fn f1(&self, x: &Matrix, y: &Matrix) -> Rational {
        x.mul(y).trace() / self.m_rational()
    }

    /// `f(X)(cI + Y)` assembled from the three components.
    pub fn apply(&self, x: &Matrix, z: &Matrix) -> Matrix {
        let c = z.trace() / self.m_rational();
        let y = z.trace_free();
        let identity = Matrix::identity(self.m());
        self.f_minus1(x)
            .scale(&c)
            .add(&self.f0(x, &y))
            .add(&identity.scale(&self.f1(x, &y)))
    }

    /// `f1'(X)Y = tr(XY)/m + tr(ᵗξXY) - tr(ᵗξX) tr(ᵗξY)`.
    pub fn f1_shifted(&self, x: &Matrix, y: &Matrix) -> Rational {
        let base = self.f1(x, y);
        match &self.xi {
            None => base,
            Some(xi) => base + pairing(xi, &x.mul(y)) - pairing(xi, x) * pairing(xi, y),
        }
    }

    /// Coordinates of a `gl(m)` matrix in the basis `[I, e_1, .., e_n]`.
    fn gl_coordinates(&self, z: &Matrix) -> Vec<Rational> {
        let mut coords = vec![z.trace() / self.m_rational()];
        coords.extend(self.basis.coordinates(&z.trace_free()));
        coords
    }

    fn gl_basis(&self) -> Vec<Matrix> {
        let mut out = vec![Matrix::identity(self.m())];
        out.extend(self.basis.elements().iter().cloned());
        out
    }

    /// Left multiplication by `x` as an operator on `gl(m)`.
    pub fn operator(&self, x: &Matrix) -> GradedOperator {
        let cols: Vec<Vec<Rational>> = self
            .gl_basis()
            .iter()
            .map(|b| self.gl_coordinates(&x.mul(b)))
            .collect();
        GradedOperator(Matrix::from_fn(cols.len(), |i, j| cols[j][i].clone()))
    }

    /// `ξ` as a degree 1 operator: `Y -> tr(ᵗξY) I`.
    pub fn shift_operator(&self, xi: &Matrix) -> GradedOperator {
        let basis = self.gl_basis();
        GradedOperator(Matrix::from_fn(basis.len(), |i, j| {
            if i == 0 && j > 0 {
                pairing(xi, &basis[j])
            } else {
                Rational::zero()
            }
        }))
    }

    /// `f1' = f1 + [ξ, f0] + ½[ξ, [ξ, f_-1]]` built from operator matrices,
    /// evaluated at `y`.
    pub fn f1_shifted_operator(&self, x: &Matrix, y: &Matrix) -> Rational {
        let terms = self.bracket_terms(x, y);
        terms.f1 + terms.xi_f0 + terms.xi_xi_f_minus1 / Rational::from_integer(2.into())
    }

    /// The three summands of `f1'(X)Y`, each read off as the `I`
    /// coefficient of a degree 1 operator applied to `y`.
    pub fn bracket_terms(&self, x: &Matrix, y: &Matrix) -> BracketTerms {
        let f = self.operator(x);
        let xi = self.xi.clone().unwrap_or_else(|| Matrix::zeros(self.m()));
        let s = self.shift_operator(&xi);
        let fm1 = f.component(-1);
        let f0 = f.component(0);
        let f1 = f.component(1);
        let yc = self.gl_coordinates(y);
        let read = |op: &GradedOperator| op.component(1).apply(&yc)[0].clone();
        BracketTerms {
            f1: read(&f1),
            xi_f0: read(&s.bracket(&f0)),
            xi_xi_f_minus1: read(&s.bracket(&s.bracket(&fm1))),
        }
    }

    /// First table entry with `f1'(X)Y != 0`, if any.
    pub fn nonvanishing_witness(&self) -> Option<TableEntry> {
        (0..self.m() - 1)
            .flat_map(|i| TableRow::ALL.into_iter().map(move |row| (row, i)))
            .find_map(|(row, i)| {
                let (x, y) = row.matrices(self.m(), i);
                let value = self.f1_shifted(&x, &y);
                (!value.is_zero()).then_some(TableEntry { row, i, value })
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketTerms {
    /// `f1(X)Y`
    pub f1: Rational,
    /// `[ξ, f0(X)]Y`
    pub xi_f0: Rational,
    /// `[ξ, [ξ, f_-1(X)]]Y`
    pub xi_xi_f_minus1: Rational,
}

impl BracketTerms {
    /// Values predicted by the trace formulas.
    pub fn closed_form(hom: &GradedHom, x: &Matrix, y: &Matrix) -> Self {
        let zero = Matrix::zeros(hom.m());
        let xi = hom.xi().unwrap_or(&zero);
        Self {
            f1: hom.f1(x, y),
            xi_f0: pairing(xi, &x.mul(y)),
            xi_xi_f_minus1: -Rational::from_integer(2.into()) * pairing(xi, x) * pairing(xi, y),
        }
    }
}

/// Operator on `gl(m)` in the basis `[I, e_1, .., e_n]`; column `j` holds the
/// image of basis vector `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedOperator(pub Matrix);

impl GradedOperator {
    /// Degree -1 maps `I` into `sl(m)`, degree 0 preserves both summands and
    /// degree 1 maps `sl(m)` onto `I`.
    pub fn component(&self, grade: i8) -> GradedOperator {
        let m = &self.0;
        GradedOperator(Matrix::from_fn(m.size(), |i, j| {
            let keep = match grade {
                -1 => i > 0 && j == 0,
                0 => (i == 0) == (j == 0),
                1 => i == 0 && j > 0,
                _ => false,
            };
            if keep {
                m[(i, j)].clone()
            } else {
                Rational::zero()
            }
        }))
    }

    pub fn bracket(&self, other: &Self) -> Self {
        GradedOperator(self.0.commutator(&other.0))
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        let m = &self.0;
        (0..m.size())
            .map(|i| (0..m.size()).fold(Rational::zero(), |acc, j| acc + &m[(i, j)] * &v[j]))
            .collect()
    }
}

/// The four `(X, Y)` families used to show that `f1'` cannot vanish.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TableRow {
    One,
    Two,
    Three,
    Four,
}

impl TableRow {
    pub const ALL: [TableRow; 4] = [
        TableRow::One,
        TableRow::Two,
        TableRow::Three,
        TableRow::Four,
    ];

    pub fn number(self) -> usize {
        match self {
            TableRow::One => 1,
            TableRow::Two => 2,
            TableRow::Three => 3,
            TableRow::Four => 4,
        }
    }

    /// `(X, Y)` for index `i < m - 1` (0-based; the last index is `m - 1`).
    pub fn matrices(self, m: usize, i: usize) -> (Matrix, Matrix) {
        let last = m - 1;
        let e = |a, b| Matrix::unit(m, a, b);
        match self {
            TableRow::One => (e(i, i).sub(&e(last, last)), e(i, last)),
            TableRow::Two => (e(i, i).sub(&e(last, last)), e(last, i)),
            TableRow::Three => (e(i, last), e(last, i)),
            TableRow::Four => (e(last, i), e(i, last)),
        }
    }

    /// The tabulated closed form in the entries `a_ij` of `ξ`:
    /// 1. `a_im (1 - (a_ii - a_mm))`
    /// 2. `a_mi (1 + (a_ii - a_mm))`
    /// 3. `1/m + a_ii - a_im a_mi`
    /// 4. `1/m + a_mm - a_mi a_im`
    pub fn tabulated(self, xi: &Matrix, i: usize) -> Rational {
        let m = xi.size();
        let last = m - 1;
        let a = |p, q| xi[(p, q)].clone();
        let one = Rational::one();
        let inv_m = Rational::new(1.into(), m.into());
        match self {
            TableRow::One => a(i, last) * (one - (a(i, i) - a(last, last))),
            TableRow::Two => a(last, i) * (one + (a(i, i) - a(last, last))),
            TableRow::Three => inv_m + a(i, i) - a(i, last) * a(last, i),
            TableRow::Four => inv_m + a(last, last) - a(last, i) * a(i, last),
        }
    }
}

impl fmt::Display for TableRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "row {}", self.number())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableEntry {
    pub row: TableRow,
    pub i: usize,
    pub value: Rational,
}

fn check_sl(m: usize, xi: &Matrix) -> Result<(), ConnectionError> {
    if xi.size() != m {
        return Err(ConnectionError::DimensionMismatch {
            expected: m,
            found: xi.size(),
        });
    }
    if !xi.trace().is_zero() {
        return Err(ConnectionError::NotTraceFree);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connection::matrix::rational;

    fn sample_xi() -> Matrix {
        Matrix::from_rows(vec![
            vec![rational(1, 2), rational(2, 3), rational(-1, 1)],
            vec![rational(3, 1), rational(-1, 4), rational(5, 7)],
            vec![rational(-2, 5), rational(1, 1), rational(-1, 4)],
        ])
    }

    #[test]
    fn unshifted_value_is_trace_over_m() {
        let g = graded_components(3).unwrap();
        let (x, y) = TableRow::Three.matrices(3, 0);
        assert_eq!(g.f1_shifted(&x, &y), rational(1, 3));
        assert_eq!(g.f1_shifted_operator(&x, &y), rational(1, 3));
    }

    #[test]
    fn components_reassemble_left_multiplication() {
        let g = graded_components(3).unwrap();
        let x = sample_xi();
        let z = Matrix::from_fn(3, |i, j| rational((i * 3 + j) as i64 - 2, 1 + j as i64));
        assert_eq!(g.apply(&x, &z), x.mul(&z));
    }

    #[test]
    fn operator_route_matches_trace_formulas() {
        let g = graded_components(3)
            .unwrap()
            .with_shift(sample_xi())
            .unwrap();
        for row in TableRow::ALL {
            for i in 0..2 {
                let (x, y) = row.matrices(3, i);
                assert_eq!(
                    g.bracket_terms(&x, &y),
                    BracketTerms::closed_form(&g, &x, &y)
                );
                assert_eq!(g.f1_shifted_operator(&x, &y), g.f1_shifted(&x, &y));
            }
        }
    }

    #[test]
    fn rows_one_three_four_agree_with_table() {
        let xi = sample_xi();
        let g = graded_components(3)
            .unwrap()
            .with_shift(xi.clone())
            .unwrap();
        for row in [TableRow::One, TableRow::Three, TableRow::Four] {
            for i in 0..2 {
                let (x, y) = row.matrices(3, i);
                assert_eq!(g.f1_shifted(&x, &y), row.tabulated(&xi, i), "{row} i={i}");
            }
        }
    }

    #[test]
    fn row_two_differs_from_table_by_sign() {
        let xi = sample_xi();
        let g = graded_components(3)
            .unwrap()
            .with_shift(xi.clone())
            .unwrap();
        let (x, y) = TableRow::Two.matrices(3, 0);
        assert_eq!(g.f1_shifted(&x, &y), -TableRow::Two.tabulated(&xi, 0));
    }

    #[test]
    fn shift_must_be_trace_free() {
        let g = graded_components(2).unwrap();
        assert!(g.with_shift(Matrix::identity(2)).is_err());
    }

    #[test]
    fn witness_exists_for_zero_shift() {
        let w = graded_components(2)
            .unwrap()
            .nonvanishing_witness()
            .unwrap();
        assert_eq!(w.row, TableRow::Three);
        assert_eq!(w.value, rational(1, 2));
    }
}

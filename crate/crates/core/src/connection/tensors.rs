//! Torsion, curvature, Ricci, P and projective Weyl tensors of an invariant connection.

use num_traits::{One, Zero};

use super::algebra::InvariantConnection;
use super::matrix::Rational;
use super::tensor::Tensor;
use super::ConnectionError;

/// All tensors of one connection, in the basis of its Lie algebra.
///
/// `torsion[a,b,c]` is the `e_c` coefficient of `T(e_a, e_b)`,
/// `curvature[a,b,c,d]` the `e_d` coefficient of `R(e_a, e_b) e_c`, and
/// `weyl` follows the same layout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorSet {
    pub torsion: Tensor<3>,
    pub curvature: Tensor<4>,
    pub ricci: Tensor<2>,
    pub p: Tensor<2>,
    pub weyl: Tensor<4>,
}

/// Nonzero coefficients of `gamma` grouped by the first two indices.
struct SparseGamma {
    rows: Vec<Vec<(usize, Rational)>>,
    dim: usize,
}

impl SparseGamma {
    fn new(gamma: &Tensor<3>) -> Self {
        let dim = gamma.dim();
        let mut rows = vec![Vec::new(); dim * dim];
        for ([a, b, c], v) in gamma.iter() {
            if !v.is_zero() {
                rows[a * dim + b].push((c, v.clone()));
            }
        }
        Self { rows, dim }
    }

    fn row(&self, a: usize, b: usize) -> &[(usize, Rational)] {
        &self.rows[a * self.dim + b]
    }
}

pub fn torsion(conn: &InvariantConnection) -> Tensor<3> {
    let g = conn.gamma();
    let c = conn.algebra().brackets();
    Tensor::from_fn(conn.dim(), |[a, b, e]| {
        &g[[a, b, e]] - &g[[b, a, e]] - &c[[a, b, e]]
    })
}

/// `R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z`.
pub fn curvature(conn: &InvariantConnection) -> Tensor<4> {
    let n = conn.dim();
    let sparse = SparseGamma::new(conn.gamma());
    let brackets = conn.algebra().brackets();
    let mut r = Tensor::zeros(n);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for (d, gbcd) in sparse.row(b, c) {
                    for (e, gade) in sparse.row(a, *d) {
                        r[[a, b, c, *e]] += gbcd * gade;
                    }
                }
                for (d, gacd) in sparse.row(a, c) {
                    for (e, gbde) in sparse.row(b, *d) {
                        r[[a, b, c, *e]] -= gacd * gbde;
                    }
                }
                for f in 0..n {
                    let cabf = &brackets[[a, b, f]];
                    if cabf.is_zero() {
                        continue;
                    }
                    for (e, gfce) in sparse.row(f, c) {
                        r[[a, b, c, *e]] -= cabf * gfce;
                    }
                }
            }
        }
    }
    r
}

/// `Ric(X,Y)` is the trace of `Z -> R(Z,X)Y`.
pub fn ricci(curvature: &Tensor<4>) -> Tensor<2> {
    let n = curvature.dim();
    Tensor::from_fn(n, |[x, y]| {
        (0..n).fold(Rational::zero(), |acc, z| acc + &curvature[[z, x, y, z]])
    })
}

/// `P(X,Y) = (n Ric(X,Y) + Ric(Y,X)) / (n^2 - 1)`, with `n` passed explicitly.
pub fn p_tensor(ricci: &Tensor<2>, n: usize) -> Result<Tensor<2>, ConnectionError> {
    if n <= 1 {
        return Err(ConnectionError::SingularDimension(n));
    }
    let n_q = Rational::from_integer(n.into());
    let denom = &n_q * &n_q - Rational::one();
    Ok(Tensor::from_fn(ricci.dim(), |[x, y]| {
        (&n_q * &ricci[[x, y]] + &ricci[[y, x]]) / &denom
    }))
}

/// `W(X,Y)Z = R(X,Y)Z + [P(X,Y) - P(Y,X)]Z - [P(Y,Z)X - P(X,Z)Y]`.
pub fn weyl_tensor(curvature: &Tensor<4>, p: &Tensor<2>) -> Tensor<4> {
    let n = curvature.dim();
    let mut w = curvature.clone();
    for x in 0..n {
        for y in 0..n {
            let skew = &p[[x, y]] - &p[[y, x]];
            for z in 0..n {
                w[[x, y, z, z]] += &skew;
                w[[x, y, z, x]] -= &p[[y, z]];
                w[[x, y, z, y]] += &p[[x, z]];
            }
        }
    }
    w
}

pub fn tensors(conn: &InvariantConnection) -> Result<TensorSet, ConnectionError> {
    let curvature = curvature(conn);
    let ricci = ricci(&curvature);
    let p = p_tensor(&ricci, conn.dim())?;
    let weyl = weyl_tensor(&curvature, &p);
    Ok(TensorSet {
        torsion: torsion(conn),
        curvature,
        ricci,
        p,
        weyl,
    })
}

/// Contraction of `W` over its first and output slots: `tr(Z -> W(Z,X)Y)`.
pub fn weyl_trace(weyl: &Tensor<4>) -> Tensor<2> {
    ricci(weyl)
}

/// Outcome of checking a product connection's tensors against its factors.
///
/// `p` uses the total dimension `N` of the product for both factors. The
/// Weyl components are compared with the expansion of the product Weyl
/// tensor in terms of `W_N`, `P_N` of one factor and `P'_N` of the other.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProductCheck {
    pub torsion: bool,
    pub curvature: bool,
    pub ricci: bool,
    pub p: bool,
    pub weyl_first: bool,
    pub weyl_second: bool,
    /// Whether the second Weyl component is identically zero.
    pub weyl_second_vanishes: bool,
}

impl ProductCheck {
    pub fn formulas_hold(&self) -> bool {
        self.torsion
            && self.curvature
            && self.ricci
            && self.p
            && self.weyl_first
            && self.weyl_second
    }
}

/// Which factor a product basis index belongs to.
fn block(i: usize, split: usize) -> (bool, usize) {
    if i < split {
        (true, i)
    } else {
        (false, i - split)
    }
}

fn embed2(t: &Tensor<2>, offset: usize, dim: usize) -> Tensor<2> {
    let mut out = Tensor::zeros(dim);
    for ([x, y], v) in t.iter() {
        out[[offset + x, offset + y]] = v.clone();
    }
    out
}

fn embed4(t: &Tensor<4>, offset: usize, dim: usize) -> Tensor<4> {
    let mut out = Tensor::zeros(dim);
    for ([x, y, z, e], v) in t.iter() {
        out[[offset + x, offset + y, offset + z, offset + e]] = v.clone();
    }
    out
}

/// Compares `product` (the tensors of `a x b`) with formulas built from the
/// factor connections alone.
pub fn check_product_formulas(
    a: &InvariantConnection,
    b: &InvariantConnection,
    product: &TensorSet,
) -> Result<ProductCheck, ConnectionError> {
    let split = a.dim();
    let total = split + b.dim();
    if product.torsion.dim() != total {
        return Err(ConnectionError::DimensionMismatch {
            expected: total,
            found: product.torsion.dim(),
        });
    }
    let (ta, tb) = (torsion(a), torsion(b));
    let (ra, rb) = (curvature(a), curvature(b));
    let (rica, ricb) = (ricci(&ra), ricci(&rb));
    let (pa, pb) = (p_tensor(&rica, total)?, p_tensor(&ricb, total)?);
    let (wa, wb) = (weyl_tensor(&ra, &pa), weyl_tensor(&rb, &pb));

    let zero = Rational::zero();
    let pick3 = |idx: [usize; 3]| -> Rational {
        let blocks = idx.map(|i| block(i, split));
        if blocks.iter().all(|(first, _)| *first) {
            ta[blocks.map(|(_, j)| j)].clone()
        } else if blocks.iter().all(|(first, _)| !*first) {
            tb[blocks.map(|(_, j)| j)].clone()
        } else {
            zero.clone()
        }
    };
    let torsion_ok = product.torsion.iter().all(|(idx, v)| *v == pick3(idx));

    let pick4 = |idx: [usize; 4], left: &Tensor<4>, right: &Tensor<4>| -> Rational {
        let blocks = idx.map(|i| block(i, split));
        if blocks.iter().all(|(first, _)| *first) {
            left[blocks.map(|(_, j)| j)].clone()
        } else if blocks.iter().all(|(first, _)| !*first) {
            right[blocks.map(|(_, j)| j)].clone()
        } else {
            zero.clone()
        }
    };
    let curvature_ok = product
        .curvature
        .iter()
        .all(|(idx, v)| *v == pick4(idx, &ra, &rb));

    let ric_sum = |x: usize, y: usize, left: &Tensor<2>, right: &Tensor<2>| -> Rational {
        match (block(x, split), block(y, split)) {
            ((true, i), (true, j)) => left[[i, j]].clone(),
            ((false, i), (false, j)) => right[[i, j]].clone(),
            _ => zero.clone(),
        }
    };
    let ricci_ok = product
        .ricci
        .iter()
        .all(|([x, y], v)| *v == ric_sum(x, y, &rica, &ricb));
    let p_ok = product
        .p
        .iter()
        .all(|([x, y], v)| *v == ric_sum(x, y, &pa, &pb));

    // Expansion of the product Weyl tensor, one factor's output slot at a time.
    let pa_full = embed2(&pa, 0, total);
    let pb_full = embed2(&pb, split, total);
    let wa_full = embed4(&wa, 0, total);
    let wb_full = embed4(&wb, split, total);
    let expected = |[x, y, z, e]: [usize; 4]| -> Rational {
        let (own_w, other_p, own_block) = if e < split {
            (&wa_full, &pb_full, true)
        } else {
            (&wb_full, &pa_full, false)
        };
        let in_own = |i: usize| (i < split) == own_block;
        let mut v = own_w[[x, y, z, e]].clone();
        if z == e && in_own(z) {
            v += &other_p[[x, y]] - &other_p[[y, x]];
        }
        if x == e && in_own(x) {
            v -= &other_p[[y, z]];
        }
        if y == e && in_own(y) {
            v += &other_p[[x, z]];
        }
        v
    };
    let mut weyl_first = true;
    let mut weyl_second = true;
    let mut weyl_second_vanishes = true;
    for (idx, v) in product.weyl.iter() {
        let ok = *v == expected(idx);
        if idx[3] < split {
            weyl_first &= ok;
        } else {
            weyl_second &= ok;
            weyl_second_vanishes &= v.is_zero();
        }
    }
    Ok(ProductCheck {
        torsion: torsion_ok,
        curvature: curvature_ok,
        ricci: ricci_ok,
        p: p_ok,
        weyl_first,
        weyl_second,
        weyl_second_vanishes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connection::algebra::{canonical_connection, product_connection};

    #[test]
    fn canonical_sl2_is_torsion_free_and_projectively_flat() {
        let set = tensors(&canonical_connection(2).unwrap()).unwrap();
        assert!(set.torsion.is_zero());
        assert!(set.weyl.is_zero());
        assert!(!set.ricci.is_zero());
        assert!(!set.curvature.is_zero());
    }

    #[test]
    fn flat_abelian_is_flat() {
        let set = tensors(&InvariantConnection::flat_abelian(2)).unwrap();
        assert!(set.torsion.is_zero() && set.curvature.is_zero() && set.weyl.is_zero());
        assert!(set.ricci.is_zero() && set.p.is_zero());
    }

    #[test]
    fn one_dimensional_p_is_singular() {
        let conn = InvariantConnection::flat_abelian(1);
        assert!(matches!(
            tensors(&conn),
            Err(ConnectionError::SingularDimension(1))
        ));
    }

    #[test]
    fn product_with_flat_factor() {
        let a = InvariantConnection::flat_abelian(2);
        let b = canonical_connection(2).unwrap();
        let set = tensors(&product_connection(&a, &b)).unwrap();
        assert!(!set.weyl.is_zero());
        let check = check_product_formulas(&a, &b, &set).unwrap();
        assert!(check.formulas_hold(), "{check:?}");
        assert!(!check.weyl_second_vanishes);
    }

    #[test]
    fn other_ricci_contraction_breaks_projective_flatness() {
        // tr(Z -> R(X,Z)Y) instead of tr(Z -> R(Z,X)Y)
        let r = curvature(&canonical_connection(2).unwrap());
        let n = r.dim();
        let alt = Tensor::from_fn(n, |[x, y]| {
            (0..n).fold(Rational::zero(), |acc, z| acc + &r[[x, z, y, z]])
        });
        let w = weyl_tensor(&r, &p_tensor(&alt, n).unwrap());
        assert!(!w.is_zero());
    }
}

use num_traits::Zero;

use super::matrix::Rational;
use super::tensor::Tensor;
use super::ConnectionError;

/// The `(0,2)` tensor `J` on an `(n m)`-dimensional space whose basis is
/// indexed by pairs `(alpha, i)`, stored at `alpha * m + i`.
///
/// `J(e_ai)_bj = {(2 - l^2) Ric(ai,bj) - l Ric(bi,aj) - l Ric(aj,bi) - 2 Ric(bj,ai)} / ((l^2 - 4) l)`
/// with `l = n + m`.
pub fn j_tensor(ric: &Tensor<2>, n: usize, m: usize) -> Result<Tensor<2>, ConnectionError> {
    if ric.dim() != n * m {
        return Err(ConnectionError::DimensionMismatch {
            expected: n * m,
            found: ric.dim(),
        });
    }
    let l = n + m;
    if l <= 2 {
        return Err(ConnectionError::SingularL(l));
    }
    let lq = Rational::from_integer(l.into());
    let two = Rational::from_integer(2.into());
    let denom = (&lq * &lq - Rational::from_integer(4.into())) * &lq;
    let diag = &two - &lq * &lq;
    let at = |alpha: usize, i: usize| alpha * m + i;
    let mut j = Tensor::zeros(n * m);
    for a in 0..n {
        for i in 0..m {
            for b in 0..n {
                for k in 0..m {
                    let v = &diag * &ric[[at(a, i), at(b, k)]]
                        - &lq * &ric[[at(b, i), at(a, k)]]
                        - &lq * &ric[[at(a, k), at(b, i)]]
                        - &two * &ric[[at(b, k), at(a, i)]];
                    if !v.is_zero() {
                        j[[at(a, i), at(b, k)]] = v / &denom;
                    }
                }
            }
        }
    }
    Ok(j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connection::matrix::rational;
    use crate::connection::tensors::p_tensor;

    #[test]
    fn zero_ricci_gives_zero() {
        assert!(j_tensor(&Tensor::zeros(6), 3, 2).unwrap().is_zero());
    }

    #[test]
    fn rejects_l_two() {
        assert!(matches!(
            j_tensor(&Tensor::zeros(1), 1, 1),
            Err(ConnectionError::SingularL(2))
        ));
        assert!(j_tensor(&Tensor::zeros(5), 2, 2).is_err());
    }

    #[test]
    fn m_one_is_minus_p() {
        let ric = Tensor::from_fn(3, |[x, y]| {
            rational((x * 7 + y * 3) as i64 - 4, 1 + y as i64)
        });
        let j = j_tensor(&ric, 3, 1).unwrap();
        let p = p_tensor(&ric, 3).unwrap();
        assert!(j.iter().all(|(idx, v)| *v == -p[idx].clone()));
    }

    #[test]
    fn symmetric_m_one() {
        let ric = Tensor::from_fn(4, |[x, y]| rational((x + y) as i64, 2 + (x * y) as i64));
        let j = j_tensor(&ric, 4, 1).unwrap();
        // -(n+1)/(n^2-1) = -1/3
        assert!(j
            .iter()
            .all(|(idx, v)| *v == -ric[idx].clone() / rational(3, 1)));
    }
}

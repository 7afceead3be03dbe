use castellan::connection::{
    canonical_connection, check_product_formulas, graded_components, j_tensor, p_tensor,
    product_connection, rational, tensors, weyl_trace, BracketTerms, InvariantConnection, Matrix,
    Rational, TableRow, Tensor,
};
use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_rational(rng: &mut impl Rng) -> Rational {
    rational(rng.gen_range(-9..=9), rng.gen_range(1..=6))
}

fn random_matrix(rng: &mut impl Rng, m: usize) -> Matrix {
    Matrix::from_fn(m, |_, _| random_rational(rng))
}

fn random_sl(rng: &mut impl Rng, m: usize) -> Matrix {
    random_matrix(rng, m).trace_free()
}

#[test]
fn canonical_connections_are_torsion_free_projectively_flat_not_ricci_flat() {
    for m in 2..=4 {
        let set = tensors(&canonical_connection(m).unwrap()).unwrap();
        assert!(set.torsion.is_zero(), "m={m}");
        assert!(set.weyl.is_zero(), "m={m}");
        assert!(!set.ricci.is_zero(), "m={m}");
        assert!(weyl_trace(&set.weyl).is_zero(), "m={m}");
    }
}

#[test]
fn torsion_and_curvature_are_antisymmetric() {
    let set = tensors(&canonical_connection(3).unwrap()).unwrap();
    for ([a, b, c, d], v) in set.curvature.iter() {
        assert_eq!(*v, -set.curvature[[b, a, c, d]].clone());
    }
    for ([a, b, c], v) in set.torsion.iter() {
        assert_eq!(*v, -set.torsion[[b, a, c]].clone());
    }
}

#[test]
fn ricci_agrees_with_direct_matrix_trace() {
    // Ric(X,Y) = tr(Z -> R(Z,X)Y), evaluated on matrices with the bar product.
    let m = 3;
    let conn = canonical_connection(m).unwrap();
    let set = tensors(&conn).unwrap();
    let basis = castellan::connection::MatrixBasis::standard(m).unwrap();
    let nabla = |x: &Matrix, y: &Matrix| x.mul(y).trace_free();
    let els = basis.elements();
    for (xi, x) in els.iter().enumerate().step_by(2) {
        for (yi, y) in els.iter().enumerate().step_by(3) {
            let mut tr = Rational::zero();
            for (zi, z) in els.iter().enumerate() {
                let r = nabla(z, &nabla(x, y))
                    .sub(&nabla(x, &nabla(z, y)))
                    .sub(&nabla(&z.commutator(x), y));
                tr += &basis.coordinates(&r)[zi];
            }
            assert_eq!(tr, set.ricci[[xi, yi]]);
        }
    }
}

#[test]
fn product_with_flat_torus_is_not_projectively_flat() {
    for m in 2..=4 {
        for d in [1, 2] {
            let a = InvariantConnection::flat_abelian(d);
            let b = canonical_connection(m).unwrap();
            let set = tensors(&product_connection(&a, &b)).unwrap();
            assert!(!set.weyl.is_zero(), "m={m} d={d}");
            let check = check_product_formulas(&a, &b, &set).unwrap();
            assert!(check.formulas_hold(), "m={m} d={d}: {check:?}");
            assert!(!check.weyl_second_vanishes);
        }
    }
}

#[test]
fn product_second_weyl_component_is_factor_weyl_at_total_dimension() {
    let (d, m) = (2, 2);
    let a = InvariantConnection::flat_abelian(d);
    let b = canonical_connection(m).unwrap();
    let set = tensors(&product_connection(&a, &b)).unwrap();
    let fiber = tensors(&b).unwrap();
    let total = d + fiber.ricci.dim();
    let p_total = p_tensor(&fiber.ricci, total).unwrap();
    let w_total = castellan::connection::weyl_tensor(&fiber.curvature, &p_total);
    for ([x, y, z, e], v) in w_total.iter() {
        assert_eq!(set.weyl[[d + x, d + y, d + z, d + e]], *v);
    }
    // first component restricted to fiber arguments: [P'(X',Y') - P'(Y',X')]Z on torus Z
    for x in 0..3 {
        for y in 0..3 {
            for z in 0..d {
                let skew = &p_total[[x, y]] - &p_total[[y, x]];
                assert_eq!(set.weyl[[d + x, d + y, z, z]], skew);
            }
        }
    }
}

#[test]
fn flat_times_flat_is_flat() {
    let a = InvariantConnection::flat_abelian(2);
    let b = InvariantConnection::flat_abelian(3);
    let set = tensors(&product_connection(&a, &b)).unwrap();
    assert!(set.torsion.is_zero() && set.curvature.is_zero() && set.weyl.is_zero());
}

#[test]
fn left_multiplication_is_a_homomorphism_and_bracket_formulas_hold() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for m in 2..=4 {
        let base = graded_components(m).unwrap();
        for _ in 0..100 {
            let (x, y, xi) = (
                random_sl(&mut rng, m),
                random_sl(&mut rng, m),
                random_sl(&mut rng, m),
            );
            let fx = base.operator(&x).0;
            let fy = base.operator(&y).0;
            assert_eq!(base.operator(&x.commutator(&y)).0, fx.commutator(&fy));
            let z = random_matrix(&mut rng, m);
            assert_eq!(base.apply(&x, &z), x.mul(&z));

            let g = base.clone().with_shift(xi).unwrap();
            assert_eq!(
                g.bracket_terms(&x, &y),
                BracketTerms::closed_form(&g, &x, &y)
            );
            assert_eq!(g.f1_shifted_operator(&x, &y), g.f1_shifted(&x, &y));
        }
    }
}

#[test]
fn shifted_component_never_vanishes_on_table() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for m in 2..=4 {
        for _ in 0..100 {
            let g = graded_components(m)
                .unwrap()
                .with_shift(random_sl(&mut rng, m))
                .unwrap();
            assert!(g.nonvanishing_witness().is_some());
        }
    }
}

#[test]
fn table_rows_against_computed_values() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for m in 2..=4 {
        for _ in 0..100 {
            let xi = random_sl(&mut rng, m);
            let g = graded_components(m)
                .unwrap()
                .with_shift(xi.clone())
                .unwrap();
            for i in 0..m - 1 {
                for row in TableRow::ALL {
                    let (x, y) = row.matrices(m, i);
                    let computed = g.f1_shifted(&x, &y);
                    let printed = row.tabulated(&xi, i);
                    match row {
                        // printed with the opposite overall sign
                        TableRow::Two => assert_eq!(computed, -printed),
                        _ => assert_eq!(computed, printed),
                    }
                }
            }
        }
    }
}

#[test]
fn j_reduces_to_minus_p_for_one_column() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in 2..=6 {
        for _ in 0..20 {
            let ric = Tensor::<2>::from_fn(n, |_| random_rational(&mut rng));
            let j = j_tensor(&ric, n, 1).unwrap();
            let p = p_tensor(&ric, n).unwrap();
            assert!(j.iter().all(|(idx, v)| *v == -p[idx].clone()));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn trace_free_is_an_idempotent_projection(m in 1usize..5, raw in prop::collection::vec((-20i64..20, 1i64..7), 16)) {
        let x = Matrix::from_fn(m, |i, j| {
            let (p, q) = raw[i * 4 + j];
            rational(p, q)
        });
        let bar = x.trace_free();
        prop_assert!(bar.trace().is_zero());
        prop_assert_eq!(bar.trace_free(), bar.clone());
        prop_assert_eq!(x.sub(&bar), Matrix::identity(m).scale(&(x.trace() / rational(m as i64, 1))));
    }

    #[test]
    fn j_is_linear_in_ricci(n in 1usize..4, m in 1usize..4, seed in any::<u64>()) {
        prop_assume!(n + m > 2);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dim = n * m;
        let a = Tensor::<2>::from_fn(dim, |_| random_rational(&mut rng));
        let b = Tensor::<2>::from_fn(dim, |_| random_rational(&mut rng));
        let sum = Tensor::<2>::from_fn(dim, |idx| &a[idx] + &b[idx]);
        let (ja, jb, js) = (j_tensor(&a, n, m).unwrap(), j_tensor(&b, n, m).unwrap(), j_tensor(&sum, n, m).unwrap());
        prop_assert!(js.iter().all(|(idx, v)| *v == &ja[idx] + &jb[idx]));
    }
}

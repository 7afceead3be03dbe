mod common;

use castellan::{castle, neighbors, reduce_to_root, residual, CastlingTuple, MoveKind};
use common::{canonical, params, to_i128, tuple};
use num_bigint::BigInt;
use proptest::prelude::*;

fn param_pairs() -> impl Strategy<Value = (u64, u64)> {
    (3u64..=12).prop_flat_map(|l| (Just(l), 1..=l / 2))
}

fn walk(l: u64, alpha: u64, choices: &[usize]) -> Vec<CastlingTuple> {
    let p = params(l, alpha);
    let mut path = vec![p.root()];
    for &c in choices {
        let moves = neighbors(&p, path.last().unwrap());
        path.push(moves[c % moves.len()].after.clone());
    }
    path
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn walks_stay_on_solutions((l, alpha) in param_pairs(), choices in prop::collection::vec(0usize..8, 0..8)) {
        let p = params(l, alpha);
        for t in walk(l, alpha, &choices) {
            prop_assert_eq!(residual(&p, &t), BigInt::from(0));
            prop_assert!(t.entries().iter().all(|k| *k >= BigInt::from(alpha)));
            let trace = reduce_to_root(&p, &t).unwrap();
            prop_assert!(trace.reached_root(), "{} did not descend: {}", t, trace.outcome_text());
        }
    }

    #[test]
    fn castling_twice_is_identity((l, alpha) in param_pairs(), choices in prop::collection::vec(0usize..8, 0..6), pick in 0usize..8) {
        let p = params(l, alpha);
        let t = walk(l, alpha, &choices).pop().unwrap();
        let kinds: Vec<MoveKind> = (0..t.len()).map(MoveKind::At).chain([MoveKind::Append]).collect();
        let kind = kinds[pick % kinds.len()];
        if let Ok(mv) = castle(&p, &t, kind) {
            let back = castle(&p, &mv.after, mv.inverse_kind()).unwrap();
            prop_assert_eq!(back.after, t);
        }
    }

    #[test]
    fn castle_matches_direct_formula(l in 3i128..20, raw in prop::collection::vec(1i128..50, 0..5), pick in 0usize..6) {
        let ks = canonical(raw);
        let t = tuple(&ks);
        let p = params(l as u64, 1);
        let product: i128 = ks.iter().product();
        let (kind, expected) = if pick < ks.len() {
            let others: i128 = product / ks[pick];
            let mut next = ks.clone();
            next[pick] = l * others - ks[pick];
            (MoveKind::At(pick), next)
        } else {
            let mut next = ks.clone();
            next.push(l * product - 1);
            (MoveKind::Append, next)
        };
        match castle(&p, &t, kind) {
            Ok(mv) => prop_assert_eq!(to_i128(&mv.after), canonical(expected)),
            Err(_) => prop_assert!(expected.iter().any(|&k| k <= 0)),
        }
    }

    #[test]
    fn residual_matches_direct_formula(l in 3u64..30, raw in prop::collection::vec(1i128..1000, 0..6)) {
        let alpha = (l / 3).max(1);
        let ks = canonical(raw);
        let expected = common::residual(l as i128, alpha as i128, &ks);
        prop_assert_eq!(residual(&params(l, alpha), &tuple(&ks)), BigInt::from(expected));
    }

    #[test]
    fn canonical_form_ignores_order_and_ones(raw in prop::collection::vec(1u32..40, 0..8)) {
        let mut shuffled = raw.clone();
        shuffled.reverse();
        shuffled.push(1);
        prop_assert_eq!(CastlingTuple::new(raw).unwrap(), CastlingTuple::new(shuffled).unwrap());
    }
}

#[test]
fn descent_of_figure_nodes() {
    let p = params(3, 1);
    for ks in [
        &[13i128, 34, 1325][..],
        &[29, 169, 14701],
        &[2, 169, 985],
        &[34, 89],
    ] {
        let trace = reduce_to_root(&p, &tuple(ks)).unwrap();
        assert!(trace.reached_root());
        assert_eq!(trace.moves.len(), 5, "{ks:?}");
        let maxima: Vec<BigInt> = trace.tuples().iter().map(|t| t.max_entry()).collect();
        assert!(maxima.windows(2).all(|w| w[1] < w[0]));
    }
}

#[test]
fn non_solutions_and_cube_points_do_not_descend() {
    let trace = reduce_to_root(&params(3, 1), &tuple(&[2, 6])).unwrap();
    assert!(!trace.reached_root());
    let trace = reduce_to_root(&params(14, 7), &tuple(&[2, 2])).unwrap();
    assert_eq!(trace.outcome_text(), "not reachable: entry below alpha (2)");
}

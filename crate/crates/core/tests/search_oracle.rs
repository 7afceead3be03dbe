mod common;

use castellan::search::{
    classify_partition, search, SearchBox, SolutionTag, DEFAULT_SEARCH_BUDGET,
};
use common::{all_tuples, descends_to_root, params, residual, to_i128};

fn naive(l: i128, alpha: i128, lo: i128, hi: i128, j_max: usize) -> Vec<(Vec<i128>, SolutionTag)> {
    let mut found: Vec<Vec<i128>> = all_tuples(lo.max(2), hi, j_max)
        .into_iter()
        .filter(|t| residual(l, alpha, t) == 0)
        .collect();
    if lo <= 1 && 1 <= hi && residual(l, alpha, &[]) == 0 {
        found.push(vec![]);
    }
    found.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    found
        .into_iter()
        .map(|t| {
            let in_cube = match t.last() {
                None => alpha >= 2,
                Some(&top) => top < alpha,
            };
            let tag = if in_cube {
                SolutionTag::InCube
            } else if descends_to_root(l, alpha, &t) {
                SolutionTag::Reachable
            } else {
                SolutionTag::Anomalous
            };
            (t, tag)
        })
        .collect()
}

#[test]
fn pruned_search_matches_naive_scan() {
    for l in 3u64..=10 {
        for alpha in 1..=l / 2 {
            for (lo, hi, j) in [(1, 30, 4), (2, 30, 3), (3, 17, 4), (1, 1, 2)] {
                let b = SearchBox::new(params(l, alpha), j, lo, hi).unwrap();
                let report = search(&b, DEFAULT_SEARCH_BUDGET).unwrap();
                let got: Vec<(Vec<i128>, SolutionTag)> = report
                    .solutions
                    .iter()
                    .map(|s| (to_i128(&s.tuple), s.tag))
                    .collect();
                let want = naive(l as i128, alpha as i128, lo as i128, hi as i128, j);
                assert_eq!(got, want, "l={l} alpha={alpha} box=[{lo},{hi}] j={j}");
            }
        }
    }
}

#[test]
fn cubes_for_small_alpha_are_empty() {
    for alpha in 1..=3u64 {
        for l in (2 * alpha).max(3)..=20 {
            let report = search(
                &SearchBox::cube(params(l, alpha), 6).unwrap(),
                DEFAULT_SEARCH_BUDGET,
            )
            .unwrap();
            assert!(report.solutions.is_empty(), "l={l} alpha={alpha}");
        }
    }
}

#[test]
fn cube_finding_at_fourteen_seven() {
    assert_eq!(residual(14, 7, &[2, 2]), 0);
    let report = search(
        &SearchBox::cube(params(14, 7), 2).unwrap(),
        DEFAULT_SEARCH_BUDGET,
    )
    .unwrap();
    let got: Vec<_> = report
        .solutions
        .iter()
        .map(|s| (to_i128(&s.tuple), s.tag))
        .collect();
    assert_eq!(got, vec![(vec![2, 2], SolutionTag::InCube)]);
    assert!(classify_partition(&report).unwrap().holds);
}

#[test]
fn order_of_search_is_irrelevant_to_output() {
    let b = SearchBox::new(params(3, 1), 3, 1, 500).unwrap();
    let first = search(&b, DEFAULT_SEARCH_BUDGET).unwrap();
    let second = search(&b, DEFAULT_SEARCH_BUDGET).unwrap();
    assert_eq!(first.to_json(), second.to_json());
}

//! Independent reference implementations shared by the integration tests.
//! They work on plain `i128` sorted vectors and never call the library.

#![allow(dead_code)]

use castellan::{CastlingParams, CastlingTuple};
use num_bigint::BigInt;

pub fn params(l: u64, alpha: u64) -> CastlingParams {
    CastlingParams::new(l, alpha).unwrap()
}

pub fn tuple(entries: &[i128]) -> CastlingTuple {
    CastlingTuple::new(entries.iter().map(|&k| BigInt::from(k))).unwrap()
}

pub fn to_i128(t: &CastlingTuple) -> Vec<i128> {
    t.entries()
        .iter()
        .map(|k| i128::try_from(k).expect("entry fits in i128"))
        .collect()
}

/// `alpha (l - alpha) + sum k^2 - j + 1 - l prod k` for a tuple without 1s.
pub fn residual(l: i128, alpha: i128, ks: &[i128]) -> i128 {
    let squares: i128 = ks.iter().map(|k| k * k).sum();
    let product: i128 = ks.iter().product();
    alpha * (l - alpha) + squares - ks.len() as i128 + 1 - l * product
}

/// Sorted, 1s removed.
pub fn canonical(mut ks: Vec<i128>) -> Vec<i128> {
    ks.retain(|&k| k != 1);
    ks.sort_unstable();
    ks
}

pub fn root(alpha: i128) -> Vec<i128> {
    if alpha == 1 {
        vec![]
    } else {
        vec![alpha]
    }
}

/// Repeatedly replaces the largest entry while that strictly lowers the
/// maximum; true when the root is reached.
pub fn descends_to_root(l: i128, alpha: i128, start: &[i128]) -> bool {
    if residual(l, alpha, start) != 0 || start.iter().any(|&k| k < alpha) {
        return false;
    }
    let target = root(alpha);
    let mut cur = start.to_vec();
    while cur != target {
        let Some(&top) = cur.last() else {
            return false;
        };
        let rest: i128 = cur[..cur.len() - 1].iter().product();
        let next = l * rest - top;
        if next <= 0 || next >= top {
            return false;
        }
        let mut ks = cur[..cur.len() - 1].to_vec();
        ks.push(next);
        cur = canonical(ks);
    }
    true
}

/// Every nondecreasing tuple with entries in `[lo, hi]` (`lo >= 2`) and
/// length `1..=j_max`.
pub fn all_tuples(lo: i128, hi: i128, j_max: usize) -> Vec<Vec<i128>> {
    let mut out = Vec::new();
    let mut stack: Vec<Vec<i128>> = (lo..=hi).map(|k| vec![k]).collect();
    while let Some(t) = stack.pop() {
        if t.len() < j_max {
            let last = *t.last().unwrap();
            for k in last..=hi {
                let mut next = t.clone();
                next.push(k);
                stack.push(next);
            }
        }
        out.push(t);
    }
    out
}

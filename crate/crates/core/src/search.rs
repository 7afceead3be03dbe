//! Exhaustive bounded searches over the castling equation.
//!
//! Candidates are canonical tuples `k_1 <= ... <= k_j` with `1 <= j <= j_max`
//! and entries in `[max(entry_min, 2), entry_max]`. The empty tuple (every
//! all-ones tuple) is a candidate when 1 lies in the entry range.
//!
//! For a fixed prefix `k_1..k_{j-1}` the residual is the monic quadratic
//! `z^2 - P z + C` in the last entry, with `P = l k_1..k_{j-1}` and
//! `C = alpha beta - j + 1 + sum k_i^2`, so the last entry is solved for
//! exactly. Earlier loops stop as soon as the smallest completion of the
//! prefix puts both `k_{j-1}` and `entry_max` strictly between the two roots;
//! both values of the quadratic only decrease as prefix entries grow, so no
//! larger prefix can produce a solution either.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::castling::{reduce_to_root, residual, CastlingError, CastlingParams, CastlingTuple};
use crate::json::{tuple_to_json, JsonInt};

pub const DEFAULT_SEARCH_BUDGET: u64 = 200_000_000;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("invalid search box: {0}")]
    InvalidBox(String),
    #[error("search budget of {budget} steps exceeded ({} solutions so far)", partial.solutions.len())]
    BudgetExceeded {
        budget: u64,
        partial: Box<SearchReport>,
    },
    #[error("classification needs an exhausted search report")]
    RequiresExhaustive,
    #[error(transparent)]
    Castling(#[from] CastlingError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBox {
    pub params: CastlingParams,
    pub j_max: usize,
    pub entry_min: BigInt,
    /// May be `entry_min - 1` or lower, which leaves no candidate entries.
    pub entry_max: BigInt,
}

impl SearchBox {
    pub fn new(
        params: CastlingParams,
        j_max: usize,
        entry_min: impl Into<BigInt>,
        entry_max: impl Into<BigInt>,
    ) -> Result<Self, SearchError> {
        let entry_min = entry_min.into();
        let entry_max = entry_max.into();
        if j_max == 0 {
            return Err(SearchError::InvalidBox("j_max must be at least 1".into()));
        }
        if !entry_min.is_positive() {
            return Err(SearchError::InvalidBox(format!(
                "entry_min must be positive, got {entry_min}"
            )));
        }
        Ok(Self {
            params,
            j_max,
            entry_min,
            entry_max,
        })
    }

    /// The cube `C_alpha^j`: every entry at most `alpha - 1`.
    pub fn cube(params: CastlingParams, j_max: usize) -> Result<Self, SearchError> {
        Self::new(params, j_max, 1, params.alpha() - 1)
    }

    /// Whether `t` is one of this box's candidates.
    pub fn contains(&self, t: &CastlingTuple) -> bool {
        if t.is_empty() {
            return self.entry_min <= BigInt::one() && BigInt::one() <= self.entry_max;
        }
        t.len() <= self.j_max
            && t.entries()
                .iter()
                .all(|k| *k >= self.entry_min && *k <= self.entry_max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolutionTag {
    InCube,
    Reachable,
    Anomalous,
}

impl fmt::Display for SolutionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolutionTag::InCube => "in_cube",
            SolutionTag::Reachable => "reachable",
            SolutionTag::Anomalous => "anomalous",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaggedSolution {
    pub tuple: CastlingTuple,
    pub tag: SolutionTag,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub search_box: SearchBox,
    /// Ordered by length, then lexicographically.
    pub solutions: Vec<TaggedSolution>,
    pub exhausted: bool,
    pub steps: u64,
}

impl SearchReport {
    pub fn tuples(&self) -> impl Iterator<Item = &CastlingTuple> {
        self.solutions.iter().map(|s| &s.tuple)
    }

    pub fn with_tag(&self, tag: SolutionTag) -> impl Iterator<Item = &CastlingTuple> {
        self.solutions
            .iter()
            .filter(move |s| s.tag == tag)
            .map(|s| &s.tuple)
    }

    pub fn to_json(&self) -> String {
        let b = &self.search_box;
        let doc = ReportDoc {
            search_box: BoxDoc {
                l: b.params.l(),
                alpha: b.params.alpha(),
                j_max: b.j_max,
                entry_min: JsonInt(b.entry_min.clone()),
                entry_max: JsonInt(b.entry_max.clone()),
            },
            solutions: self
                .solutions
                .iter()
                .map(|s| SolutionDoc {
                    tuple: tuple_to_json(&s.tuple),
                    tag: s.tag,
                })
                .collect(),
            exhausted: self.exhausted,
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("reports serialize");
        s.push('\n');
        s
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ReportDoc {
    #[serde(rename = "box")]
    pub search_box: BoxDoc,
    pub solutions: Vec<SolutionDoc>,
    pub exhausted: bool,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct BoxDoc {
    pub l: u64,
    pub alpha: u64,
    pub j_max: usize,
    pub entry_min: JsonInt,
    pub entry_max: JsonInt,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SolutionDoc {
    pub tuple: Vec<JsonInt>,
    pub tag: SolutionTag,
}

/// Tags a solution tuple. The empty tuple stands for all-ones tuples, which
/// lie in the cube only when `alpha >= 2`.
pub fn tag_solution(
    params: &CastlingParams,
    t: &CastlingTuple,
) -> Result<SolutionTag, CastlingError> {
    let below = BigInt::from(params.alpha() - 1);
    let in_cube = if t.is_empty() {
        params.alpha() >= 2
    } else {
        t.max_entry() <= below
    };
    if in_cube {
        return Ok(SolutionTag::InCube);
    }
    if reduce_to_root(params, t)?.reached_root() {
        Ok(SolutionTag::Reachable)
    } else {
        Ok(SolutionTag::Anomalous)
    }
}

struct Searcher<'a> {
    params: &'a CastlingParams,
    l: BigInt,
    alpha_beta: BigInt,
    lo: BigInt,
    hi: BigInt,
    budget: u64,
    steps: u64,
    found: Vec<CastlingTuple>,
}

struct OutOfBudget;

impl Searcher<'_> {
    fn tick(&mut self) -> Result<(), OutOfBudget> {
        self.steps += 1;
        if self.steps > self.budget {
            Err(OutOfBudget)
        } else {
            Ok(())
        }
    }

    /// `(P, C)` of the last-entry quadratic for a prefix of length `j - 1`.
    fn quadratic(&self, prefix: &[BigInt], j: usize) -> (BigInt, BigInt) {
        let p = &self.l * prefix.iter().product::<BigInt>();
        let squares: BigInt = prefix.iter().map(|k| k * k).sum();
        let c = &self.alpha_beta + squares + 1 - BigInt::from(j);
        (p, c)
    }

    fn run(&mut self, prefix: &mut Vec<BigInt>, j: usize) -> Result<(), OutOfBudget> {
        if prefix.len() + 1 == j {
            self.tick()?;
            self.solve_last(prefix, j);
            return Ok(());
        }
        let mut v = prefix.last().cloned().unwrap_or_else(|| self.lo.clone());
        while v <= self.hi {
            self.tick()?;
            if self.completion_is_hopeless(prefix, &v, j) {
                break;
            }
            prefix.push(v.clone());
            let r = self.run(prefix, j);
            prefix.pop();
            r?;
            v += 1;
        }
        Ok(())
    }

    fn completion_is_hopeless(&self, prefix: &[BigInt], v: &BigInt, j: usize) -> bool {
        let mut completion = prefix.to_vec();
        completion.resize(j - 1, v.clone());
        let (p, c) = self.quadratic(&completion, j);
        let f = |z: &BigInt| z * z - &p * z + &c;
        f(v).is_negative() && f(&self.hi).is_negative()
    }

    fn solve_last(&mut self, prefix: &[BigInt], j: usize) {
        let (p, c) = self.quadratic(prefix, j);
        let disc = &p * &p - BigInt::from(4) * &c;
        if disc.is_negative() {
            return;
        }
        let s = disc.sqrt();
        if &s * &s != disc {
            return;
        }
        let lower = prefix
            .last()
            .map_or(&self.lo, |last| last.max(&self.lo))
            .clone();
        let mut roots = vec![&p - &s, &p + &s];
        roots.dedup();
        for twice in roots {
            if twice.is_odd() {
                continue;
            }
            let z: BigInt = twice / 2;
            if z >= lower && z <= self.hi {
                let mut entries = prefix.to_vec();
                entries.push(z);
                let t = CastlingTuple::new(entries).expect("entries are at least 2");
                debug_assert!(residual(self.params, &t).is_zero());
                self.found.push(t);
            }
        }
    }
}

/// Finds every solution in the box, tagging each one.
///
/// `budget` caps the number of loop steps; when it runs out the partial
/// report is returned inside `BudgetExceeded` with `exhausted = false`.
pub fn search(search_box: &SearchBox, budget: u64) -> Result<SearchReport, SearchError> {
    let params = &search_box.params;
    let mut searcher = Searcher {
        params,
        l: BigInt::from(params.l()),
        alpha_beta: BigInt::from(params.alpha()) * BigInt::from(params.beta()),
        lo: search_box.entry_min.clone().max(BigInt::from(2)),
        hi: search_box.entry_max.clone(),
        budget,
        steps: 0,
        found: Vec::new(),
    };

    let one = BigInt::one();
    if search_box.entry_min <= one && one <= search_box.entry_max {
        let empty = CastlingTuple::empty();
        if residual(params, &empty).is_zero() {
            searcher.found.push(empty);
        }
    }
    let mut exhausted = true;
    if searcher.lo <= searcher.hi {
        for j in 1..=search_box.j_max {
            if searcher.run(&mut Vec::with_capacity(j), j).is_err() {
                exhausted = false;
                break;
            }
        }
    }

    let mut found = std::mem::take(&mut searcher.found);
    found.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    found.dedup();
    let solutions = found
        .into_iter()
        .map(|tuple| {
            let tag = tag_solution(params, &tuple)?;
            Ok(TaggedSolution { tuple, tag })
        })
        .collect::<Result<Vec<_>, CastlingError>>()?;
    let report = SearchReport {
        search_box: search_box.clone(),
        solutions,
        exhausted,
        steps: searcher.steps,
    };
    if exhausted {
        Ok(report)
    } else {
        Err(SearchError::BudgetExceeded {
            budget,
            partial: Box::new(report),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionVerdict {
    /// Every solution is either in the cube or reachable from the root.
    pub holds: bool,
    pub witnesses: Vec<CastlingTuple>,
}

pub fn classify_partition(report: &SearchReport) -> Result<PartitionVerdict, SearchError> {
    if !report.exhausted {
        return Err(SearchError::RequiresExhaustive);
    }
    let witnesses: Vec<CastlingTuple> = report.with_tag(SolutionTag::Anomalous).cloned().collect();
    Ok(PartitionVerdict {
        holds: witnesses.is_empty(),
        witnesses,
    })
}

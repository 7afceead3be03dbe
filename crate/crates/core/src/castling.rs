//! Castling transforms on tuples of positive integers.
//!
//! For fixed `(l, alpha)` the unknowns `(k_1, ..., k_j)` of
//!
//! ```text
//! alpha (l - alpha) + k_1^2 + ... + k_j^2 - j + 1 = l k_1 ... k_j
//! ```
//!
//! are acted on by the castling involutions `k_i -> l * prod_{m != i} k_m - k_i`
//! and by the append move `(k_1, ..., k_j) -> (k_1, ..., k_j, l k_1 ... k_j - 1)`.
//! Entries equal to 1 carry no information and are stripped, so the append
//! move is the position move applied to a virtual trailing 1.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CastlingError {
    #[error("invalid parameters l={l}, alpha={alpha}: need l >= 3 and 1 <= alpha <= l - alpha")]
    InvalidParams { l: u64, alpha: u64 },
    #[error("tuple entries must be positive, got {0}")]
    NonPositiveEntry(BigInt),
    #[error("position {position} is out of range for a tuple of length {len}")]
    PositionOutOfRange { position: usize, len: usize },
    #[error("castling {tuple} at {kind} yields non-positive entry {value}")]
    NonPositiveResult {
        tuple: CastlingTuple,
        kind: MoveKind,
        value: BigInt,
    },
    #[error("residual drifted to {residual} at {tuple} during descent")]
    ResidualDrift {
        tuple: CastlingTuple,
        residual: BigInt,
    },
}

/// The pair `(l, alpha)` fixing the equation. `beta = l - alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CastlingParams {
    l: u64,
    alpha: u64,
}

impl CastlingParams {
    pub fn new(l: u64, alpha: u64) -> Result<Self, CastlingError> {
        if l < 3 || alpha == 0 || alpha > l - alpha {
            return Err(CastlingError::InvalidParams { l, alpha });
        }
        Ok(Self { l, alpha })
    }

    pub fn l(&self) -> u64 {
        self.l
    }

    pub fn alpha(&self) -> u64 {
        self.alpha
    }

    pub fn beta(&self) -> u64 {
        self.l - self.alpha
    }

    /// Empty tuple for `alpha = 1`, `(alpha)` otherwise.
    pub fn root(&self) -> CastlingTuple {
        if self.alpha == 1 {
            CastlingTuple::empty()
        } else {
            CastlingTuple(vec![BigInt::from(self.alpha)])
        }
    }
}

impl fmt::Display for CastlingParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(l={}, alpha={})", self.l, self.alpha)
    }
}

/// A canonical tuple: sorted ascending, every entry at least 2.
///
/// Tuples that differ only in order or in entries equal to 1 have the same
/// canonical form, and the residual does not see the difference.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct CastlingTuple(Vec<BigInt>);

impl CastlingTuple {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// Canonicalizes raw positive entries, rejecting zero and negatives.
    pub fn new<I, T>(raw: I) -> Result<Self, CastlingError>
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let mut entries = Vec::new();
        for value in raw {
            let value = value.into();
            if !value.is_positive() {
                return Err(CastlingError::NonPositiveEntry(value));
            }
            if !value.is_one() {
                entries.push(value);
            }
        }
        entries.sort();
        Ok(Self(entries))
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest entry; the empty tuple stands for `(1)`.
    pub fn max_entry(&self) -> BigInt {
        self.0.last().cloned().unwrap_or_else(BigInt::one)
    }

    pub fn product(&self) -> BigInt {
        self.0.iter().product()
    }

    /// Comma-separated entries, `()` for the empty tuple.
    pub fn to_csv_string(&self) -> String {
        if self.0.is_empty() {
            return "()".to_string();
        }
        join(&self.0, ",")
    }

    /// `k1xk2x...xkj`, with `1` for the empty tuple (the figure's base node).
    pub fn to_label(&self) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        join(&self.0, "x")
    }

    /// The tuple with the entry at `index` removed.
    pub fn without(&self, index: usize) -> Self {
        let mut entries = self.0.clone();
        entries.remove(index);
        Self(entries)
    }

    /// The canonical tuple obtained by replacing (or, for `None`, appending)
    /// one entry with a positive value.
    fn replaced(&self, index: Option<usize>, value: BigInt) -> Self {
        let mut entries = self.0.clone();
        match index {
            Some(i) => entries[i] = value,
            None => entries.push(value),
        }
        entries.retain(|k| !k.is_one());
        entries.sort();
        Self(entries)
    }
}

fn join(values: &[BigInt], sep: &str) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

impl fmt::Display for CastlingTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", join(&self.0, ","))
    }
}

/// Where a castling transform acts: at a canonical index (0-based), or at
/// the virtual trailing 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    At(usize),
    Append,
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MoveKind::At(i) => write!(f, "position {}", i + 1),
            MoveKind::Append => write!(f, "append"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CastlingMove {
    pub kind: MoveKind,
    pub before: CastlingTuple,
    pub after: CastlingTuple,
    pub new_value: BigInt,
    /// Set when `after == before`; such moves are never graph edges.
    pub self_loop: bool,
}

impl CastlingMove {
    /// The move undoing this one: the new value sits at its canonical index
    /// in `after`, or was stripped when it equals 1.
    pub fn inverse_kind(&self) -> MoveKind {
        if self.new_value.is_one() {
            MoveKind::Append
        } else {
            let index = self
                .after
                .entries()
                .iter()
                .rposition(|k| *k == self.new_value)
                .expect("new value is an entry of the after-tuple");
            MoveKind::At(index)
        }
    }
}

/// `alpha (l - alpha) + sum k_i^2 - j + 1 - l prod k_i`; zero exactly on solutions.
pub fn residual(params: &CastlingParams, t: &CastlingTuple) -> BigInt {
    let alpha = BigInt::from(params.alpha);
    let beta = BigInt::from(params.beta());
    let squares: BigInt = t.0.iter().map(|k| k * k).sum();
    let j = BigInt::from(t.len());
    alpha * beta + squares - j + 1 - BigInt::from(params.l) * t.product()
}

pub fn is_solution(params: &CastlingParams, t: &CastlingTuple) -> bool {
    residual(params, t).is_zero()
}

/// Applies one castling transform.
///
/// Returns `NonPositiveResult` when the computed entry is not positive, and
/// flags (without failing) moves that leave the tuple unchanged.
pub fn castle(
    params: &CastlingParams,
    t: &CastlingTuple,
    kind: MoveKind,
) -> Result<CastlingMove, CastlingError> {
    let l = BigInt::from(params.l);
    let (index, old) = match kind {
        MoveKind::At(i) => {
            let old = t.0.get(i).ok_or(CastlingError::PositionOutOfRange {
                position: i,
                len: t.len(),
            })?;
            (Some(i), old.clone())
        }
        MoveKind::Append => (None, BigInt::one()),
    };
    let others: BigInt =
        t.0.iter()
            .enumerate()
            .filter(|(m, _)| Some(*m) != index)
            .map(|(_, k)| k)
            .product();
    let new_value = l * others - &old;
    if !new_value.is_positive() {
        return Err(CastlingError::NonPositiveResult {
            tuple: t.clone(),
            kind,
            value: new_value,
        });
    }
    let after = t.replaced(index, new_value.clone());
    Ok(CastlingMove {
        kind,
        self_loop: after == *t,
        before: t.clone(),
        after,
        new_value,
    })
}

/// All distinct non-self-loop moves out of `t`, positions first, append last.
///
/// Equal entries give the same after-tuple and are reported once; moves with
/// a non-positive result are skipped. Solution-ness is not checked.
pub fn neighbors(params: &CastlingParams, t: &CastlingTuple) -> Vec<CastlingMove> {
    let kinds = (0..t.len())
        .filter(|&i| i == 0 || t.0[i] != t.0[i - 1])
        .map(MoveKind::At)
        .chain(std::iter::once(MoveKind::Append));
    let mut moves: Vec<CastlingMove> = Vec::new();
    for kind in kinds {
        let Ok(mv) = castle(params, t, kind) else {
            continue;
        };
        if mv.self_loop || moves.iter().any(|m| m.after == mv.after) {
            continue;
        }
        moves.push(mv);
    }
    moves
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NotReachableReason {
    EntryBelowAlpha { entry: BigInt },
    DescentStuck { at: CastlingTuple },
}

impl fmt::Display for NotReachableReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotReachableReason::EntryBelowAlpha { entry } => {
                write!(f, "entry below alpha ({entry})")
            }
            NotReachableReason::DescentStuck { at } => write!(f, "descent stuck at {at}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReductionOutcome {
    ReachedRoot,
    NotSolution { residual: BigInt },
    NotReachable(NotReachableReason),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionTrace {
    pub start: CastlingTuple,
    pub moves: Vec<CastlingMove>,
    pub outcome: ReductionOutcome,
}

impl ReductionTrace {
    /// `start` followed by the after-tuple of every move.
    pub fn tuples(&self) -> Vec<&CastlingTuple> {
        std::iter::once(&self.start)
            .chain(self.moves.iter().map(|m| &m.after))
            .collect()
    }

    pub fn reached_root(&self) -> bool {
        self.outcome == ReductionOutcome::ReachedRoot
    }

    /// Short description of the outcome, e.g. `reached root` or
    /// `not reachable: entry below alpha (2)`.
    pub fn outcome_text(&self) -> String {
        match &self.outcome {
            ReductionOutcome::ReachedRoot => "reached root".to_string(),
            ReductionOutcome::NotSolution { residual } => {
                format!("not a solution (residual {residual})")
            }
            ReductionOutcome::NotReachable(reason) => format!("not reachable: {reason}"),
        }
    }
}

/// Descends from `t` towards the root by always castling the largest entry.
///
/// The maximum entry strictly decreases at every step, so the loop is
/// bounded; a step that fails to decrease ends in `DescentStuck`. An `Err`
/// means the residual left zero mid-descent, which castling cannot do.
pub fn reduce_to_root(
    params: &CastlingParams,
    t: &CastlingTuple,
) -> Result<ReductionTrace, CastlingError> {
    let mut trace = ReductionTrace {
        start: t.clone(),
        moves: Vec::new(),
        outcome: ReductionOutcome::ReachedRoot,
    };
    let r = residual(params, t);
    if !r.is_zero() {
        trace.outcome = ReductionOutcome::NotSolution { residual: r };
        return Ok(trace);
    }
    let alpha = BigInt::from(params.alpha);
    if let Some(entry) = t.0.iter().find(|k| **k < alpha) {
        trace.outcome = ReductionOutcome::NotReachable(NotReachableReason::EntryBelowAlpha {
            entry: entry.clone(),
        });
        return Ok(trace);
    }

    let root = params.root();
    let mut current = t.clone();
    while current != root {
        let stuck = |at: &CastlingTuple| {
            ReductionOutcome::NotReachable(NotReachableReason::DescentStuck { at: at.clone() })
        };
        if current.is_empty() {
            trace.outcome = stuck(&current);
            return Ok(trace);
        }
        // Ties on the maximum go to the last index.
        let last = current.len() - 1;
        let mv = match castle(params, &current, MoveKind::At(last)) {
            Ok(mv) if mv.after.max_entry() < current.max_entry() => mv,
            _ => {
                trace.outcome = stuck(&current);
                return Ok(trace);
            }
        };
        let r = residual(params, &mv.after);
        if !r.is_zero() {
            return Err(CastlingError::ResidualDrift {
                tuple: mv.after,
                residual: r,
            });
        }
        current = mv.after.clone();
        trace.moves.push(mv);
    }
    Ok(trace)
}

//! Breadth-first enumeration of the castling solution tree.
//!
//! Edges are oriented by strictly increasing maximum entry, so every node
//! other than the root has exactly one parent: the tuple obtained by
//! castling its (unique) largest entry. Each node carries the quotient
//! annotations obtained by removing one entry.

mod export;

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use thiserror::Error;

use crate::castling::{neighbors, CastlingError, CastlingMove, CastlingParams, CastlingTuple};

pub use export::ExportFormat;

pub const DEFAULT_NODE_BUDGET: usize = 1_000_000;

#[derive(Debug, Error)]
pub enum TreeError {
    #[error("max_entry {max_entry} is below alpha = {alpha}")]
    InvalidConfig { max_entry: BigInt, alpha: u64 },
    #[error("node budget of {budget} exceeded; tighten max_entry or max_depth")]
    BudgetExceeded { budget: usize },
    #[error("malformed tree document: {0}")]
    Parse(String),
    #[error(transparent)]
    Castling(#[from] CastlingError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationConfig {
    pub params: CastlingParams,
    pub max_depth: usize,
    /// Bound applied to every entry, not to the product.
    pub max_entry: BigInt,
    pub include_quotients: bool,
    pub node_budget: usize,
}

impl EnumerationConfig {
    pub fn new(
        params: CastlingParams,
        max_depth: usize,
        max_entry: impl Into<BigInt>,
    ) -> Result<Self, TreeError> {
        let max_entry = max_entry.into();
        if max_entry < BigInt::from(params.alpha()) {
            return Err(TreeError::InvalidConfig {
                max_entry,
                alpha: params.alpha(),
            });
        }
        Ok(Self {
            params,
            max_depth,
            max_entry,
            include_quotients: true,
            node_budget: DEFAULT_NODE_BUDGET,
        })
    }

    pub fn with_quotients(mut self, include: bool) -> Self {
        self.include_quotients = include;
        self
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.node_budget = budget;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GeometryKind {
    /// `l * prod_{i != s} k_i - k_s = 1`.
    Projective,
    /// Grassmannian structure of type `(beta, alpha)`.
    Grassmannian { beta: BigInt, alpha: BigInt },
}

/// The quotient obtained by removing one entry from a solution tuple.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeometryLabel {
    pub removed_entry: BigInt,
    pub remaining: CastlingTuple,
    pub kind: GeometryKind,
}

impl GeometryLabel {
    /// `GL(beta)⊗GL(alpha)` for Grassmannian quotients.
    pub fn group_label(&self) -> Option<String> {
        match &self.kind {
            GeometryKind::Projective => None,
            GeometryKind::Grassmannian { beta, alpha } => Some(format!("GL({beta})⊗GL({alpha})")),
        }
    }
}

impl fmt::Display for GeometryLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.group_label() {
            Some(group) => write!(f, "{} [{}]", self.remaining.to_label(), group),
            None => write!(f, "{} [projective]", self.remaining.to_label()),
        }
    }
}

/// One label per distinct entry of `t`.
///
/// Only meaningful for solution tuples, where the castled value is always
/// positive; entries whose castled value is not positive are skipped.
pub fn annotate_quotients(params: &CastlingParams, t: &CastlingTuple) -> Vec<GeometryLabel> {
    let l = BigInt::from(params.l());
    let entries = t.entries();
    let mut labels = Vec::new();
    for (s, removed) in entries.iter().enumerate() {
        if s > 0 && entries[s - 1] == *removed {
            continue;
        }
        let remaining = t.without(s);
        let partner = &l * remaining.product() - removed;
        let kind = if partner.is_one() {
            GeometryKind::Projective
        } else if partner.is_positive() {
            GeometryKind::Grassmannian {
                beta: partner,
                alpha: removed.clone(),
            }
        } else {
            continue;
        };
        labels.push(GeometryLabel {
            removed_entry: removed.clone(),
            remaining,
            kind,
        });
    }
    labels
}

/// `sum (k_i^2 - 1)`, the dimension of `prod PL(k_i)`.
pub fn fiber_dimension(t: &CastlingTuple) -> BigInt {
    t.entries().iter().map(|k| k * k - 1).sum()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeNode {
    pub tuple: CastlingTuple,
    pub depth: usize,
    pub parent_move: Option<CastlingMove>,
    pub fiber_dimension: BigInt,
    pub quotients: Vec<GeometryLabel>,
}

impl TreeNode {
    /// The `k_i` of the structure group `prod PL(k_i)`.
    pub fn structure_group(&self) -> &[BigInt] {
        self.tuple.entries()
    }

    pub fn parent(&self) -> Option<&CastlingTuple> {
        self.parent_move.as_ref().map(|m| &m.before)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CastlingTree {
    config: EnumerationConfig,
    nodes: Vec<TreeNode>,
    index: HashMap<CastlingTuple, usize>,
}

impl CastlingTree {
    fn from_nodes(config: EnumerationConfig, nodes: Vec<TreeNode>) -> Self {
        let index = nodes
            .iter()
            .enumerate()
            .map(|(i, n)| (n.tuple.clone(), i))
            .collect();
        Self {
            config,
            nodes,
            index,
        }
    }

    pub fn config(&self) -> &EnumerationConfig {
        &self.config
    }

    pub fn params(&self) -> &CastlingParams {
        &self.config.params
    }

    /// Nodes ordered by depth, then lexicographically by entries.
    pub fn nodes(&self) -> &[TreeNode] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn get(&self, t: &CastlingTuple) -> Option<&TreeNode> {
        self.index.get(t).map(|&i| &self.nodes[i])
    }

    pub fn contains(&self, t: &CastlingTuple) -> bool {
        self.index.contains_key(t)
    }

    /// Castling edges, parent to child, in node order.
    pub fn edges(&self) -> impl Iterator<Item = &CastlingMove> {
        self.nodes.iter().filter_map(|n| n.parent_move.as_ref())
    }

    pub fn export(&self, format: ExportFormat) -> Vec<u8> {
        export::export(self, format)
    }

    pub fn from_json(input: &str) -> Result<Self, TreeError> {
        export::from_json(input)
    }
}

fn make_node(
    config: &EnumerationConfig,
    tuple: CastlingTuple,
    depth: usize,
    parent_move: Option<CastlingMove>,
) -> TreeNode {
    let quotients = if config.include_quotients {
        annotate_quotients(&config.params, &tuple)
    } else {
        Vec::new()
    };
    TreeNode {
        fiber_dimension: fiber_dimension(&tuple),
        tuple,
        depth,
        parent_move,
        quotients,
    }
}

/// Enumerates every solution reachable from the root within the bounds.
///
/// Children of a node are its castling moves whose result has a strictly
/// larger maximum and all entries at most `max_entry`.
pub fn enumerate(config: &EnumerationConfig) -> Result<CastlingTree, TreeError> {
    let params = &config.params;
    let mut seen: HashSet<CastlingTuple> = HashSet::new();
    let root = params.root();
    seen.insert(root.clone());
    let mut nodes = vec![make_node(config, root, 0, None)];
    let mut level_start = 0;

    for depth in 1..=config.max_depth {
        let mut next: Vec<CastlingMove> = Vec::new();
        for parent in &nodes[level_start..] {
            let parent_max = parent.tuple.max_entry();
            for mv in neighbors(params, &parent.tuple) {
                if mv.after.max_entry() <= parent_max || mv.after.max_entry() > config.max_entry {
                    continue;
                }
                if seen.insert(mv.after.clone()) {
                    next.push(mv);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        if nodes.len() + next.len() > config.node_budget {
            return Err(TreeError::BudgetExceeded {
                budget: config.node_budget,
            });
        }
        next.sort_by(|a, b| a.after.cmp(&b.after));
        level_start = nodes.len();
        nodes.extend(
            next.into_iter()
                .map(|mv| make_node(config, mv.after.clone(), depth, Some(mv))),
        );
    }
    Ok(CastlingTree::from_nodes(config.clone(), nodes))
}

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{make_node, CastlingTree, EnumerationConfig, GeometryKind, TreeError, TreeNode};
use crate::castling::{neighbors, CastlingParams};
use crate::json::{tuple_from_json, tuple_to_json, JsonInt};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Json,
    Csv,
}

impl FromStr for ExportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dot" => Ok(Self::Dot),
            "json" => Ok(Self::Json),
            "csv" => Ok(Self::Csv),
            other => Err(format!("unknown export format `{other}`")),
        }
    }
}

pub(super) fn export(tree: &CastlingTree, format: ExportFormat) -> Vec<u8> {
    match format {
        ExportFormat::Dot => to_dot(tree).into_bytes(),
        ExportFormat::Json => to_json(tree).into_bytes(),
        ExportFormat::Csv => to_csv(tree),
    }
}

fn quote(id: &str) -> String {
    format!("\"{}\"", id.replace('"', "\\\""))
}

// Solution nodes are red and underlined, Grassmannian quotients blue with
// their group under the tuple. Castling edges point from child to parent.
fn to_dot(tree: &CastlingTree) -> String {
    let mut out = String::new();
    let params = tree.params();
    let _ = writeln!(out, "digraph castling {{");
    let _ = writeln!(
        out,
        "    label=\"castling tree l={} alpha={}\";",
        params.l(),
        params.alpha()
    );
    let _ = writeln!(out, "    rankdir=BT;");
    let _ = writeln!(out, "    node [shape=plaintext];");

    let mut emitted: BTreeSet<String> = BTreeSet::new();
    for node in tree.nodes() {
        let id = node.tuple.to_label();
        let _ = writeln!(
            out,
            "    {} [label=<<U>{}</U>>, fontcolor=red];",
            quote(&id),
            id
        );
        emitted.insert(id);
    }
    for node in tree.nodes() {
        if let Some(parent) = node.parent() {
            let _ = writeln!(
                out,
                "    {} -> {};",
                quote(&node.tuple.to_label()),
                quote(&parent.to_label())
            );
        }
    }
    for node in tree.nodes() {
        let from = quote(&node.tuple.to_label());
        for q in &node.quotients {
            let target = match q.group_label() {
                Some(group) => {
                    let id = q.to_string();
                    if emitted.insert(id.clone()) {
                        let _ = writeln!(
                            out,
                            "    {} [label=<<U>{}</U><BR/>{}>, fontcolor=blue];",
                            quote(&id),
                            q.remaining.to_label(),
                            group
                        );
                    }
                    id
                }
                None => {
                    let id = q.remaining.to_label();
                    if emitted.insert(id.clone()) {
                        let _ = writeln!(
                            out,
                            "    {} [label=<<U>{}</U>>, fontcolor=red];",
                            quote(&id),
                            id
                        );
                    }
                    id
                }
            };
            let _ = writeln!(out, "    {} -> {} [style=dashed];", from, quote(&target));
        }
    }
    let _ = writeln!(out, "}}");
    out
}

fn to_csv(tree: &CastlingTree) -> Vec<u8> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer
        .write_record(["depth", "tuple", "fiber_dimension", "quotients"])
        .expect("writing to memory");
    for node in tree.nodes() {
        let quotients = node
            .quotients
            .iter()
            .map(|q| q.to_string())
            .collect::<Vec<_>>()
            .join(";");
        writer
            .write_record([
                node.depth.to_string(),
                node.tuple.to_label(),
                node.fiber_dimension.to_string(),
                quotients,
            ])
            .expect("writing to memory");
    }
    writer.into_inner().expect("writing to memory")
}

#[derive(Debug, Serialize, Deserialize)]
struct TreeDoc {
    params: ParamsDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    bounds: Option<BoundsDoc>,
    nodes: Vec<NodeDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
struct ParamsDoc {
    l: u64,
    alpha: u64,
}

#[derive(Debug, Serialize, Deserialize)]
struct BoundsDoc {
    max_depth: usize,
    max_entry: JsonInt,
    include_quotients: bool,
    node_budget: usize,
}

#[derive(Debug, Serialize, Deserialize)]
struct NodeDoc {
    tuple: Vec<JsonInt>,
    depth: usize,
    fiber_dim: JsonInt,
    parent: Option<Vec<JsonInt>>,
    quotients: Vec<QuotientDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
struct QuotientDoc {
    removed: JsonInt,
    remaining: Vec<JsonInt>,
    kind: String,
    beta: Option<JsonInt>,
    alpha: Option<JsonInt>,
}

fn to_json(tree: &CastlingTree) -> String {
    let config = tree.config();
    let doc = TreeDoc {
        params: ParamsDoc {
            l: config.params.l(),
            alpha: config.params.alpha(),
        },
        bounds: Some(BoundsDoc {
            max_depth: config.max_depth,
            max_entry: JsonInt(config.max_entry.clone()),
            include_quotients: config.include_quotients,
            node_budget: config.node_budget,
        }),
        nodes: tree.nodes().iter().map(node_doc).collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("tree documents serialize");
    s.push('\n');
    s
}

fn node_doc(node: &TreeNode) -> NodeDoc {
    NodeDoc {
        tuple: tuple_to_json(&node.tuple),
        depth: node.depth,
        fiber_dim: JsonInt(node.fiber_dimension.clone()),
        parent: node.parent().map(tuple_to_json),
        quotients: node
            .quotients
            .iter()
            .map(|q| {
                let (kind, beta, alpha) = match &q.kind {
                    GeometryKind::Projective => ("projective", None, None),
                    GeometryKind::Grassmannian { beta, alpha } => {
                        ("grassmannian", Some(beta.into()), Some(alpha.into()))
                    }
                };
                QuotientDoc {
                    removed: JsonInt(q.removed_entry.clone()),
                    remaining: tuple_to_json(&q.remaining),
                    kind: kind.to_string(),
                    beta,
                    alpha,
                }
            })
            .collect(),
    }
}

/// Rebuilds a tree from its JSON export. Parent moves are recomputed from
/// the parent tuple; quotients are re-derived and must match the document.
pub(super) fn from_json(input: &str) -> Result<CastlingTree, TreeError> {
    let doc: TreeDoc = serde_json::from_str(input).map_err(|e| TreeError::Parse(e.to_string()))?;
    let params = CastlingParams::new(doc.params.l, doc.params.alpha)?;

    let mut nodes = Vec::with_capacity(doc.nodes.len());
    let mut any_quotients = false;
    for nd in &doc.nodes {
        let tuple = tuple_from_json(nd.tuple.clone())?;
        let parent_move = match &nd.parent {
            None => None,
            Some(parent) => {
                let parent = tuple_from_json(parent.clone())?;
                let mv = neighbors(&params, &parent)
                    .into_iter()
                    .find(|m| m.after == tuple)
                    .ok_or_else(|| {
                        TreeError::Parse(format!("{tuple} is not a castling move of {parent}"))
                    })?;
                Some(mv)
            }
        };
        any_quotients |= !nd.quotients.is_empty();
        nodes.push((tuple, nd.depth, parent_move, nd));
    }

    let bounds = match doc.bounds {
        Some(b) => b,
        None => BoundsDoc {
            max_depth: nodes.iter().map(|n| n.1).max().unwrap_or(0),
            max_entry: JsonInt(
                nodes
                    .iter()
                    .map(|n| n.0.max_entry())
                    .max()
                    .unwrap_or_else(|| BigInt::from(params.alpha()))
                    .max(BigInt::from(params.alpha())),
            ),
            include_quotients: any_quotients,
            node_budget: super::DEFAULT_NODE_BUDGET,
        },
    };
    let config = EnumerationConfig::new(params, bounds.max_depth, bounds.max_entry.0)?
        .with_quotients(bounds.include_quotients)
        .with_budget(bounds.node_budget);

    let mut built = Vec::with_capacity(nodes.len());
    for (tuple, depth, parent_move, nd) in nodes {
        let node = make_node(&config, tuple, depth, parent_move);
        let expected = node_doc(&node);
        if serde_json::to_value(&expected.quotients).ok()
            != serde_json::to_value(&nd.quotients).ok()
            || expected.fiber_dim != nd.fiber_dim
        {
            return Err(TreeError::Parse(format!(
                "annotations of {} do not match the tuple",
                node.tuple
            )));
        }
        built.push(node);
    }
    Ok(CastlingTree::from_nodes(config, built))
}

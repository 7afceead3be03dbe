//! Text and JSON renderings of subcommand results.

use castellan::castling::ReductionOutcome;
use castellan::json::{tuple_to_json, JsonInt};
use castellan::search::{PartitionVerdict, SearchReport};
use castellan::{CastlingMove, CastlingParams, CastlingTuple, ReductionTrace};
use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Value};

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

pub fn verify(
    params: &CastlingParams,
    t: &CastlingTuple,
    residual: &BigInt,
    as_json: bool,
) -> String {
    let solution = residual.is_zero();
    if as_json {
        return pretty(&json!({
            "l": params.l(),
            "alpha": params.alpha(),
            "tuple": tuple_to_json(t),
            "residual": JsonInt(residual.clone()),
            "solution": solution,
        }));
    }
    format!("residual={residual} solution={solution}\n")
}

pub fn step(mv: &CastlingMove, as_json: bool) -> String {
    if as_json {
        return pretty(&json!({
            "before": tuple_to_json(&mv.before),
            "move": mv.kind.to_string(),
            "new_value": JsonInt(mv.new_value.clone()),
            "after": tuple_to_json(&mv.after),
            "self_loop": mv.self_loop,
        }));
    }
    format!("{}\n", mv.after.to_csv_string())
}

fn outcome_key(outcome: &ReductionOutcome) -> &'static str {
    match outcome {
        ReductionOutcome::ReachedRoot => "reached_root",
        ReductionOutcome::NotSolution { .. } => "not_solution",
        ReductionOutcome::NotReachable(_) => "not_reachable",
    }
}

pub fn reduce(trace: &ReductionTrace, as_json: bool) -> String {
    if as_json {
        let steps: Vec<Value> = trace
            .moves
            .iter()
            .map(|m| {
                json!({
                    "move": m.kind.to_string(),
                    "new_value": JsonInt(m.new_value.clone()),
                    "after": tuple_to_json(&m.after),
                })
            })
            .collect();
        return pretty(&json!({
            "start": tuple_to_json(&trace.start),
            "steps": steps,
            "outcome": outcome_key(&trace.outcome),
            "detail": trace.outcome_text(),
        }));
    }
    let mut out = format!("start {}\n", trace.start.to_csv_string());
    for m in &trace.moves {
        out += &format!(
            "castle {} -> {} (new value {})\n",
            m.kind,
            m.after.to_csv_string(),
            m.new_value
        );
    }
    out += &format!(
        "{} after {} steps\n",
        trace.outcome_text(),
        trace.moves.len()
    );
    out
}

pub fn search_report(
    report: &SearchReport,
    verdict: Option<&PartitionVerdict>,
    as_json: bool,
) -> String {
    if as_json {
        return report.to_json();
    }
    let b = &report.search_box;
    let mut out = format!(
        "box l={} alpha={} j_max={} entries=[{},{}] exhausted={}\n",
        b.params.l(),
        b.params.alpha(),
        b.j_max,
        b.entry_min,
        b.entry_max,
        report.exhausted
    );
    for s in &report.solutions {
        out += &format!("{} {}\n", s.tuple.to_csv_string(), s.tag);
    }
    out += &format!("solutions={}\n", report.solutions.len());
    if let Some(v) = verdict {
        out += &format!("partition_holds={}\n", v.holds);
    }
    out
}

//! JSON views of library results. Elements are always given by label and
//! sets as sorted label arrays; object keys come out sorted.

use posetrep_core::conditions::{ConditionReport, LatticeProfile, TripleFailure, TripleWitness};
use posetrep_core::filters::{Filter, FilterViolation, ViolationKind};
use posetrep_core::representation::{RepViolation, SeparationReport};
use posetrep_core::search::Evidence;
use posetrep_core::spectrum::SpectrumReport;
use posetrep_core::{ElementSet, Poset};
use serde_json::{json, Value};

use crate::format::{arity_to_value, signature_to_value};

pub fn set(p: &Poset, s: ElementSet) -> Value {
    let mut labels = p.labels_of(s);
    labels.sort_unstable();
    json!(labels)
}

fn opt_label(p: &Poset, i: Option<usize>) -> Value {
    i.map_or(Value::Null, |i| json!(p.label(i)))
}

pub fn filter(p: &Poset, f: &Filter) -> Value {
    set(p, f.members)
}

pub fn filter_violation(p: &Poset, v: &FilterViolation) -> Value {
    let kind = match v.kind {
        ViolationKind::NotUpClosed => "not_up_closed",
        ViolationKind::MeetEscape => "meet_escape",
        ViolationKind::JoinNotPrime => "join_not_prime",
    };
    json!({ "kind": kind, "subset": set(p, v.witness.0), "element": p.label(v.witness.1) })
}

pub fn separation(p: &Poset, r: &SeparationReport) -> Value {
    let failing: Vec<Value> = r
        .failing_pairs()
        .map(|(a, b)| json!([p.label(a), p.label(b)]))
        .collect();
    json!({
        "signature": signature_to_value(r.signature),
        "representable": r.verdict,
        "pairs_checked": r.pairs.len(),
        "failing_pairs": failing,
    })
}

fn triple(p: &Poset, w: &TripleWitness) -> Value {
    json!({
        "x": p.label(w.x),
        "y": p.label(w.y),
        "z": p.label(w.z),
        "join_yz": opt_label(p, w.join_yz),
        "lhs": opt_label(p, w.lhs),
        "meet_xy": opt_label(p, w.meet_xy),
        "meet_xz": opt_label(p, w.meet_xz),
        "rhs": opt_label(p, w.rhs),
        "failure": match w.failure {
            TripleFailure::Undefined => "rhs_undefined",
            TripleFailure::Unequal => "unequal",
        },
    })
}

pub fn condition(p: &Poset, r: &ConditionReport) -> Value {
    json!({
        "holds": r.holds,
        "counterexample": r.counterexample.as_ref().map_or(Value::Null, |w| triple(p, w)),
    })
}

pub fn lattice(p: &Poset, prof: &LatticeProfile) -> Value {
    let Some(f) = &prof.lattice else {
        return json!({ "is_lattice": false });
    };
    json!({
        "is_lattice": true,
        "distributive": f.is_distributive,
        "distributive_identity": f.distributive_identity,
        "no_m3_n5": f.no_m3_n5,
        "join_irreducibles": set(p, f.join_irreducibles),
        "meet_irreducibles": set(p, f.meet_irreducibles),
        "irreducibles_by_covers_agree": f.irreducibles_by_covers_agree,
        "join_dense": f.join_dense,
        "meet_dense": f.meet_dense,
        "frame_law": f.frame_law,
        "coframe_law": f.coframe_law,
    })
}

pub fn rep_violation(p: &Poset, v: &RepViolation) -> Value {
    match *v {
        RepViolation::OrderEmbedding { p: a, q: b, le, subset } => json!({
            "kind": "order_embedding", "p": p.label(a), "q": p.label(b), "le": le, "subset": subset,
        }),
        RepViolation::MeetNotIntersection { antichain, meet } => json!({
            "kind": "meet_not_intersection", "antichain": set(p, antichain), "meet": p.label(meet),
        }),
        RepViolation::JoinNotUnion { antichain, join } => json!({
            "kind": "join_not_union", "antichain": set(p, antichain), "join": p.label(join),
        }),
        RepViolation::TopNotGround { top } => json!({ "kind": "top_not_ground", "top": p.label(top) }),
        RepViolation::BottomNotEmpty { bottom } => json!({ "kind": "bottom_not_empty", "bottom": p.label(bottom) }),
    }
}

pub fn spectrum(r: &SpectrumReport) -> Value {
    json!({
        "arities": r.arities.iter().map(|&a| arity_to_value(a)).collect::<Vec<_>>(),
        "matrix": r.matrix,
        "frontier": r.frontier.iter().map(|&s| signature_to_value(s)).collect::<Vec<_>>(),
        "decided": r.decided,
        "downward_closed": r.is_downward_closed(),
    })
}

pub fn evidence(p: &Poset, e: &Evidence) -> Value {
    match e {
        Evidence::Condition(r) => {
            let mut v = condition(p, r);
            v["condition"] = json!(format!("{:?}", r.condition).to_lowercase());
            v
        }
        Evidence::Separation {
            signature,
            verdict,
            failing_pairs,
        } => json!({
            "signature": signature_to_value(*signature),
            "representable": verdict,
            "failing_pairs": failing_pairs
                .iter()
                .map(|&(a, b)| json!([p.label(a), p.label(b)]))
                .collect::<Vec<_>>(),
        }),
        Evidence::Lattice {
            is_lattice,
            distributive,
        } => json!({ "is_lattice": is_lattice, "distributive": distributive }),
        Evidence::Complete { verdict } => json!({ "completely_representable": verdict }),
    }
}

/// Indented `key: value` lines for `--text`.
pub fn text(v: &Value) -> String {
    let mut out = String::new();
    write_text(v, 0, &mut out);
    out
}

fn write_text(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match x {
                    Value::Object(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        write_text(x, depth + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", inline(x))),
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", inline(other))),
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(xs) => format!("[{}]", xs.iter().map(inline).collect::<Vec<_>>().join(", ")),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

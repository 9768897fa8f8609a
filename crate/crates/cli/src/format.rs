//! Poset and representation JSON.
//!
//! Posets: `{"elements": [..], "covers": [[a, b], ..]}` or the same with
//! `"order"` in place of `"covers"`. Both are closed transitively; `order`
//! input that was not already transitive is reported as such.
//!
//! Representations: `{"ground": [..], "map": {label: [points]}, "alpha":
//! 3 | "ALL", "beta": ..}`.

use std::collections::{BTreeMap, BTreeSet};

use posetrep_core::representation::Representation;
use posetrep_core::{Arity, BuildMode, Poset, Signature};
use serde_json::{json, Map, Value};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum InputError {
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("schema error at {pointer}: {message}")]
    Schema { pointer: String, message: String },
}

fn schema(pointer: impl Into<String>, message: impl Into<String>) -> InputError {
    InputError::Schema {
        pointer: pointer.into(),
        message: message.into(),
    }
}

fn parse_json(text: &str) -> Result<Value, InputError> {
    serde_json::from_str(text).map_err(|e| InputError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

/// JSON pointer token escaping.
fn token(s: &str) -> String {
    s.replace('~', "~0").replace('/', "~1")
}

#[derive(Debug, Clone)]
pub struct ParsedPoset {
    pub poset: Poset,
    pub mode: BuildMode,
    /// Order pairs added by transitive closure of `order` input.
    pub closure_added: usize,
}

pub fn parse_poset(text: &str) -> Result<ParsedPoset, InputError> {
    poset_from_value(&parse_json(text)?)
}

pub fn poset_from_value(v: &Value) -> Result<ParsedPoset, InputError> {
    let obj = v.as_object().ok_or_else(|| schema("", "expected an object"))?;
    let elements = obj
        .get("elements")
        .ok_or_else(|| schema("/elements", "missing"))?
        .as_array()
        .ok_or_else(|| schema("/elements", "expected an array of labels"))?;
    let mut labels = Vec::with_capacity(elements.len());
    let mut index = BTreeMap::new();
    for (i, e) in elements.iter().enumerate() {
        let label = e
            .as_str()
            .ok_or_else(|| schema(format!("/elements/{i}"), "expected a string"))?;
        if index.insert(label.to_string(), i).is_some() {
            return Err(schema(format!("/elements/{i}"), format!("duplicate label `{label}`")));
        }
        labels.push(label.to_string());
    }
    let (key, mode) = match (obj.get("covers"), obj.get("order")) {
        (Some(_), Some(_)) => return Err(schema("/order", "give either covers or order, not both")),
        (_, Some(_)) => ("order", BuildMode::Order),
        _ => ("covers", BuildMode::Covers),
    };
    let mut pairs = Vec::new();
    if let Some(rel) = obj.get(key) {
        let rel = rel
            .as_array()
            .ok_or_else(|| schema(format!("/{key}"), "expected an array of pairs"))?;
        for (i, pair) in rel.iter().enumerate() {
            let pair = pair
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| schema(format!("/{key}/{i}"), "expected a pair [lower, upper]"))?;
            let mut ends = [0; 2];
            for (j, end) in pair.iter().enumerate() {
                let pointer = format!("/{key}/{i}/{j}");
                let label = end.as_str().ok_or_else(|| schema(&pointer, "expected a string"))?;
                ends[j] = *index
                    .get(label)
                    .ok_or_else(|| schema(&pointer, format!("unknown label `{label}`")))?;
            }
            pairs.push((ends[0], ends[1]));
        }
    }
    let poset = Poset::from_index_pairs(labels, &pairs).map_err(|e| schema(format!("/{key}"), e.to_string()))?;
    let given: BTreeSet<(usize, usize)> = pairs.into_iter().filter(|(a, b)| a != b).collect();
    let closure_added = match mode {
        BuildMode::Order => poset.order_pairs().iter().filter(|(a, b)| a != b).count() - given.len(),
        BuildMode::Covers => 0,
    };
    Ok(ParsedPoset {
        poset,
        mode,
        closure_added,
    })
}

pub fn poset_to_value(p: &Poset) -> Value {
    let covers: Vec<Value> = p
        .cover_pairs()
        .into_iter()
        .map(|(a, b)| json!([p.label(a), p.label(b)]))
        .collect();
    json!({ "elements": p.labels(), "covers": covers })
}

pub fn arity_to_value(a: Arity) -> Value {
    match a {
        Arity::Finite(k) => json!(k),
        Arity::All => json!("ALL"),
    }
}

pub fn signature_to_value(sig: Signature) -> Value {
    json!({ "alpha": arity_to_value(sig.alpha), "beta": arity_to_value(sig.beta) })
}

fn arity_from_value(v: &Value, pointer: &str) -> Result<Arity, InputError> {
    let parsed = match v {
        Value::Number(n) => n.as_u64().map(|k| k.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    };
    parsed
        .ok_or_else(|| schema(pointer, "expected an integer or \"ALL\""))?
        .parse()
        .map_err(|e: posetrep_core::Error| schema(pointer, e.to_string()))
}

/// Reads a representation of `p`; every element must be mapped.
pub fn parse_representation(text: &str, p: &Poset) -> Result<Representation, InputError> {
    let v = parse_json(text)?;
    let obj = v.as_object().ok_or_else(|| schema("", "expected an object"))?;
    let ground_v = obj
        .get("ground")
        .ok_or_else(|| schema("/ground", "missing"))?
        .as_array()
        .ok_or_else(|| schema("/ground", "expected an array of point names"))?;
    let mut ground = Vec::new();
    let mut points = BTreeMap::new();
    for (i, g) in ground_v.iter().enumerate() {
        let name = g
            .as_str()
            .ok_or_else(|| schema(format!("/ground/{i}"), "expected a string"))?;
        if points.insert(name.to_string(), i).is_some() {
            return Err(schema(format!("/ground/{i}"), format!("duplicate point `{name}`")));
        }
        ground.push(name.to_string());
    }
    let map_v: &Map<String, Value> = obj
        .get("map")
        .ok_or_else(|| schema("/map", "missing"))?
        .as_object()
        .ok_or_else(|| schema("/map", "expected an object"))?;
    for label in map_v.keys() {
        if p.index_of(label).is_none() {
            return Err(schema(format!("/map/{}", token(label)), format!("unknown element `{label}`")));
        }
    }
    let mut map = Vec::with_capacity(p.len());
    for label in p.labels() {
        let pointer = format!("/map/{}", token(label));
        let image = map_v
            .get(label)
            .ok_or_else(|| schema(&pointer, "element not mapped"))?
            .as_array()
            .ok_or_else(|| schema(&pointer, "expected an array of points"))?;
        let mut set = BTreeSet::new();
        for (i, pt) in image.iter().enumerate() {
            let pp = format!("{pointer}/{i}");
            let name = pt.as_str().ok_or_else(|| schema(&pp, "expected a string"))?;
            set.insert(*points.get(name).ok_or_else(|| schema(&pp, format!("unknown point `{name}`")))?);
        }
        map.push(set);
    }
    let arity = |key: &str| match obj.get(key) {
        Some(v) => arity_from_value(v, &format!("/{key}")),
        None => Ok(Arity::All),
    };
    let signature = Signature::new(arity("alpha")?, arity("beta")?);
    Ok(Representation {
        ground,
        map,
        signature: signature.canonical(p.len()),
    })
}

pub fn representation_to_value(p: &Poset, h: &Representation) -> Value {
    let map: Map<String, Value> = p
        .labels()
        .iter()
        .zip(&h.map)
        .map(|(label, image)| {
            let pts: Vec<&str> = image.iter().map(|&i| h.ground[i].as_str()).collect();
            (label.clone(), json!(pts))
        })
        .collect();
    json!({
        "ground": h.ground,
        "map": map,
        "alpha": arity_to_value(h.signature.alpha),
        "beta": arity_to_value(h.signature.beta),
    })
}

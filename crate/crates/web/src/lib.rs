//! Browser bindings: build a small concrete orthomodular poset, classify it,
//! lay out its Hasse diagram, list two-valued states, and run exact LP
//! queries over its state polytope. Every exported function returns JSON; on
//! failure the JSON is `{"error": "..."}`.

use effectlab::classify::classify;
use effectlab::concrete::{closure, even_subsets, points, powerset, SetSystem};
use effectlab::rational;
use effectlab::states::{two_valued_states, State, StatePolytopeQuery, StateSpace};
use effectlab::{EffectAlgebra, ElementId};
use serde::Serialize;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest carrier the demo accepts.
const MAX_ELEMENTS: usize = 64;

#[derive(Debug, Serialize)]
pub struct Node {
    pub id: usize,
    pub label: String,
    pub rank: usize,
    pub slot: usize,
}

#[derive(Debug, Serialize)]
pub struct Layout {
    pub nodes: Vec<Node>,
    /// `(lower, upper)` cover pairs.
    pub edges: Vec<(usize, usize)>,
    pub height: usize,
}

/// Parses seeds like `ab, cd` over the letters `a..` of the ground set.
fn parse_seeds(m: usize, text: &str) -> Result<Vec<(Option<String>, u64)>, String> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|w| !w.is_empty())
        .map(|word| {
            let mut mask = 0u64;
            for ch in word.chars() {
                let p = (ch as u32).wrapping_sub('a' as u32) as usize;
                if p >= m {
                    return Err(format!(
                        "point `{ch}` is outside a..{}",
                        (b'a' + m as u8 - 1) as char
                    ));
                }
                mask |= 1 << p;
            }
            Ok((None, mask))
        })
        .collect()
}

pub fn build_family(kind: &str, m: usize, seeds: &str) -> Result<SetSystem, String> {
    if m == 0 || m > 12 {
        return Err("ground size must lie in 1..=12".into());
    }
    let sys = match kind {
        "even" => even_subsets(m),
        "powerset" => powerset(m),
        "closure" => closure(m, &parse_seeds(m, seeds)?),
        other => return Err(format!("unknown family `{other}`")),
    }
    .map_err(|e| e.to_string())?;
    if sys.len() > MAX_ELEMENTS {
        return Err(format!(
            "{} elements exceed the demo limit of {MAX_ELEMENTS}",
            sys.len()
        ));
    }
    Ok(sys)
}

/// Ranks by longest cover path from zero; slots order nodes within a rank.
pub fn layout(alg: &EffectAlgebra) -> Layout {
    let covers = alg.hasse_covers();
    let mut rank = vec![0usize; alg.n()];
    let mut order: Vec<ElementId> = alg.elements().collect();
    order.sort_by_key(|&e| alg.elements().filter(|&d| alg.lt(d, e)).count());
    for &e in &order {
        for &(lo, hi) in &covers {
            if hi == e {
                rank[e.index()] = rank[e.index()].max(rank[lo.index()] + 1);
            }
        }
    }
    let height = rank.iter().copied().max().unwrap_or(0);
    let mut next_slot = vec![0usize; height + 1];
    let nodes = alg
        .elements()
        .map(|e| {
            let r = rank[e.index()];
            let slot = next_slot[r];
            next_slot[r] += 1;
            Node {
                id: e.index(),
                label: alg.label(e).to_string(),
                rank: r,
                slot,
            }
        })
        .collect();
    let edges = covers
        .iter()
        .map(|&(lo, hi)| (lo.index(), hi.index()))
        .collect();
    Layout {
        nodes,
        edges,
        height,
    }
}

fn block_sets(sys: &SetSystem) -> Vec<String> {
    sys.blocks()
        .iter()
        .map(|&mask| {
            let pts: String = points(mask).map(|p| (b'a' + p as u8) as char).collect();
            format!("{{{pts}}}")
        })
        .collect()
}

fn state_json(alg: &EffectAlgebra, s: &State) -> Value {
    let values: Vec<String> = alg
        .elements()
        .map(|e| rational::format(s.value(e)))
        .collect();
    let ones: Vec<usize> = alg
        .elements()
        .filter(|&e| s.is_one(e))
        .map(|e| e.index())
        .collect();
    json!({ "values": values, "ones": ones })
}

pub fn report(kind: &str, m: usize, seeds: &str) -> Result<Value, String> {
    let sys = build_family(kind, m, seeds)?;
    let alg = sys.to_algebra().map_err(|e| e.to_string())?;
    let report = classify(&alg, true);
    let flags: serde_json::Map<String, Value> = report
        .flags
        .iter()
        .map(|(p, v)| (p.key().to_string(), Value::Bool(*v)))
        .collect();
    let witnesses: serde_json::Map<String, Value> = report
        .witnesses
        .iter()
        .map(|(p, w)| (p.key().to_string(), Value::String(w.render(&alg))))
        .collect();
    Ok(json!({
        "elements": alg.n(),
        "sets": block_sets(&sys),
        "flags": flags,
        "witnesses": witnesses,
        "layout": layout(&alg),
    }))
}

pub fn states(kind: &str, m: usize, seeds: &str) -> Result<Value, String> {
    let sys = build_family(kind, m, seeds)?;
    let alg = sys.to_algebra().map_err(|e| e.to_string())?;
    let list: Vec<Value> = two_valued_states(&alg)
        .iter()
        .map(|s| state_json(&alg, s))
        .collect();
    Ok(json!({ "count": list.len(), "states": list }))
}

/// `pins` is `label=value` separated by commas; `objective` is `min LABEL`,
/// `max LABEL` or empty for a feasibility query.
pub fn lp(kind: &str, m: usize, seeds: &str, pins: &str, objective: &str) -> Result<Value, String> {
    let sys = build_family(kind, m, seeds)?;
    let alg = sys.to_algebra().map_err(|e| e.to_string())?;
    let mut query = StatePolytopeQuery::new();
    for pin in pins.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (e, v) = pin
            .split_once('=')
            .ok_or(format!("pin `{pin}` is not LABEL=VALUE"))?;
        let e = alg.resolve(e.trim()).map_err(|e| e.to_string())?;
        let v = rational::parse(v.trim()).ok_or(format!("bad value in `{pin}`"))?;
        query = query.pin(e, v);
    }
    let words: Vec<&str> = objective.split_whitespace().collect();
    match words.as_slice() {
        [] => {}
        [dir, label] => {
            let e = alg.resolve(label).map_err(|e| e.to_string())?;
            query = match *dir {
                "min" => query.minimize(e),
                "max" => query.maximize(e),
                other => return Err(format!("objective direction `{other}` is not min or max")),
            };
        }
        _ => return Err("objective must be `min LABEL` or `max LABEL`".into()),
    }
    Ok(match StateSpace::new(&alg).extremize(&query) {
        None => json!({ "feasible": false }),
        Some((value, s)) => json!({
            "feasible": true,
            "value": query.objective.map(|_| rational::format(&value)),
            "state": state_json(&alg, &s),
        }),
    })
}

fn to_js(result: Result<Value, String>) -> String {
    match result {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

#[wasm_bindgen]
pub fn classify_family(kind: &str, m: usize, seeds: &str) -> String {
    to_js(report(kind, m, seeds))
}

#[wasm_bindgen]
pub fn two_valued(kind: &str, m: usize, seeds: &str) -> String {
    to_js(states(kind, m, seeds))
}

#[wasm_bindgen]
pub fn lp_query(kind: &str, m: usize, seeds: &str, pins: &str, objective: &str) -> String {
    to_js(lp(kind, m, seeds, pins, objective))
}

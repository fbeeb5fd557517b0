//! On-disk and on-the-wire encodings.
//!
//! - Eventually periodic set: `{"threshold": n, "prefix": [bits], "period": p, "residues": [ints]}`
//! - Density: `{"num": int, "den": int}`
//! - Finite collection: `{"sets": [[...], ...]}`
//! - Indexed family: `{"kind": "...", "params": {...}, "universe": [...]}`
//! - DFA: `{"states": [...], "alphabet": [...], "delta": {"state,symbol": state}, "start": s, "accept": [...]}`,
//!   or `{"regex": "...", "alphabet": [...]}` on input
//! - Hypergraph: `{"vertices": [...], "edges": [[...], ...]}`, or `edge { v1 v4 }` lines
//!
//! Elements are JSON integers (naturals) or strings. Indices of periodic sets
//! start at 0.

use std::collections::{BTreeMap, BTreeSet};

use mostset_core::automata::{regex_parse, regex_to_dfa, Dfa, LanguageFamily};
use mostset_core::collections::Family;
use mostset_core::density::{Density, EventuallyPeriodicSet, RawPeriodicSet};
use mostset_core::hypergraph::Hypergraph;
use mostset_core::Element;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::error::CliError;

type Result<T> = std::result::Result<T, CliError>;

fn malformed(what: &str, err: impl std::fmt::Display) -> CliError {
    CliError::Parse(format!("malformed {what}: {err}"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
enum Bit {
    Int(u8),
    Bool(bool),
}

impl Bit {
    fn value(self) -> Result<bool> {
        match self {
            Bit::Bool(b) => Ok(b),
            Bit::Int(0) => Ok(false),
            Bit::Int(1) => Ok(true),
            Bit::Int(other) => Err(CliError::Parse(format!("prefix bit {other} is not 0 or 1"))),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SetSpec {
    threshold: usize,
    prefix: Vec<Bit>,
    period: usize,
    residues: Vec<usize>,
}

pub fn set_from_value(value: &Value) -> Result<EventuallyPeriodicSet> {
    let spec: SetSpec = serde_json::from_value(value.clone()).map_err(|e| malformed("set", e))?;
    let prefix = spec
        .prefix
        .iter()
        .map(|b| b.value())
        .collect::<Result<Vec<_>>>()?;
    let raw = RawPeriodicSet {
        threshold: spec.threshold,
        prefix,
        period: spec.period,
        residues: spec.residues,
    };
    Ok(EventuallyPeriodicSet::from_raw(&raw)?)
}

pub fn parse_set(text: &str) -> Result<EventuallyPeriodicSet> {
    let value: Value = serde_json::from_str(text).map_err(|e| malformed("set", e))?;
    set_from_value(&value)
}

pub fn set_to_value(set: &EventuallyPeriodicSet) -> Value {
    let raw = set.to_raw();
    json!({
        "threshold": raw.threshold,
        "prefix": raw.prefix.iter().map(|&b| b as u8).collect::<Vec<_>>(),
        "period": raw.period,
        "residues": raw.residues,
    })
}

pub fn density_to_value(d: Density) -> Value {
    json!({"num": d.numer(), "den": d.denom()})
}

pub fn ratio_to_value(r: Ratio<u64>) -> Value {
    json!({"num": r.numer(), "den": r.denom()})
}

/// Parses `P/Q` (or a bare integer) into a rational.
pub fn parse_ratio(text: &str) -> Result<Ratio<u64>> {
    let bad = || CliError::Parse(format!("malformed rational {text:?}, expected P/Q"));
    let (p, q) = match text.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (text.trim(), "1"),
    };
    let p: u64 = p.parse().map_err(|_| bad())?;
    let q: u64 = q.parse().map_err(|_| bad())?;
    if q == 0 {
        return Err(bad());
    }
    Ok(Ratio::new(p, q))
}

pub fn element_from_value(value: &Value) -> Result<Element> {
    match value {
        Value::Number(n) => n
            .as_u64()
            .map(Element::Nat)
            .ok_or_else(|| CliError::Parse(format!("element {n} is not a natural number"))),
        Value::String(s) => Ok(Element::Sym(s.clone())),
        other => Err(CliError::Parse(format!(
            "element {other} is neither an integer nor a string"
        ))),
    }
}

/// Command-line element: a JSON literal, or else the raw text as a symbol.
pub fn parse_element(text: &str) -> Result<Element> {
    match serde_json::from_str::<Value>(text) {
        Ok(v @ (Value::Number(_) | Value::String(_))) => element_from_value(&v),
        _ => Ok(Element::sym(text)),
    }
}

pub fn element_to_value(e: &Element) -> Value {
    match e {
        Element::Nat(n) => json!(n),
        Element::Sym(s) => json!(s),
    }
}

fn elements(value: &Value, what: &str) -> Result<Vec<Element>> {
    value
        .as_array()
        .ok_or_else(|| CliError::Parse(format!("{what} must be an array")))?
        .iter()
        .map(element_from_value)
        .collect()
}

fn element_set(value: &Value, what: &str) -> Result<BTreeSet<Element>> {
    Ok(elements(value, what)?.into_iter().collect())
}

pub fn parse_collection(text: &str) -> Result<Vec<BTreeSet<Element>>> {
    let value: Value = serde_json::from_str(text).map_err(|e| malformed("collection", e))?;
    let sets = value
        .get("sets")
        .and_then(Value::as_array)
        .ok_or_else(|| CliError::Parse("collection needs a \"sets\" array".into()))?;
    sets.iter().map(|s| element_set(s, "each set")).collect()
}

/// A family file, which describes either a family of sets of elements or a
/// family of languages.
pub enum FamilyFile {
    Sets(Family),
    Languages(LanguageFamily),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilySpec {
    kind: String,
    #[serde(default)]
    params: Map<String, Value>,
    #[serde(default)]
    universe: Vec<Value>,
}

fn param<'a>(params: &'a Map<String, Value>, key: &str, kind: &str) -> Result<&'a Value> {
    params
        .get(key)
        .ok_or_else(|| CliError::Parse(format!("{kind} family needs params.{key}")))
}

pub fn parse_family(text: &str) -> Result<FamilyFile> {
    let spec: FamilySpec = serde_json::from_str(text).map_err(|e| malformed("family", e))?;
    let universe = spec
        .universe
        .iter()
        .map(element_from_value)
        .collect::<Result<Vec<_>>>()?;
    let params = &spec.params;
    let kind = spec.kind.as_str();
    let family = match kind {
        "prime_prefix" => Family::prime_prefix(universe),
        "constant" => Family::constant(
            element_set(param(params, "set", kind)?, "params.set")?,
            universe,
        ),
        "cumulative" => {
            let base = match params.get("base") {
                Some(b) => element_set(b, "params.base")?,
                None => BTreeSet::new(),
            };
            let steps = param(params, "steps", kind)?
                .as_object()
                .ok_or_else(|| {
                    CliError::Parse("params.steps must map step numbers to arrays".into())
                })?
                .iter()
                .map(|(k, v)| {
                    let step: u64 = k.parse().map_err(|_| {
                        CliError::Parse(format!("step {k:?} is not a natural number"))
                    })?;
                    Ok((step, element_set(v, "each step")?))
                })
                .collect::<Result<BTreeMap<_, _>>>()?;
            Family::cumulative(base, steps, universe)?
        }
        "periodic_table" => {
            let entries = param(params, "entries", kind)?
                .as_array()
                .ok_or_else(|| CliError::Parse("params.entries must be an array".into()))?;
            let mut table = BTreeMap::new();
            for entry in entries {
                let element = entry
                    .get("element")
                    .ok_or_else(|| CliError::Parse("table entry needs \"element\"".into()))?;
                let set = entry
                    .get("set")
                    .ok_or_else(|| CliError::Parse("table entry needs \"set\"".into()))?;
                table.insert(element_from_value(element)?, set_from_value(set)?);
            }
            Family::periodic_table(table, universe)
        }
        "pairwise_disjoint" => {
            let blocks = param(params, "blocks", kind)?
                .as_array()
                .ok_or_else(|| CliError::Parse("params.blocks must be an array".into()))?
                .iter()
                .map(|b| element_set(b, "each block"))
                .collect::<Result<Vec<_>>>()?;
            Family::pairwise_disjoint(blocks, universe)?
        }
        "cumulative_0n1n" | "cyclic" => {
            let max_len = match params.get("max_len") {
                Some(v) => v.as_u64().ok_or_else(|| {
                    CliError::Parse("params.max_len must be a natural number".into())
                })? as usize,
                None => 0,
            };
            let family = if kind == "cyclic" {
                let dfas = param(params, "automata", kind)?
                    .as_array()
                    .ok_or_else(|| CliError::Parse("params.automata must be an array".into()))?
                    .iter()
                    .map(dfa_from_value)
                    .collect::<Result<Vec<_>>>()?;
                LanguageFamily::cyclic(dfas, max_len)?
            } else {
                LanguageFamily::cumulative_0n1n(max_len)
            };
            return Ok(FamilyFile::Languages(family));
        }
        other => return Err(CliError::Parse(format!("unknown family kind {other:?}"))),
    };
    Ok(FamilyFile::Sets(family))
}

fn symbol(value: &Value) -> Result<char> {
    let s = value
        .as_str()
        .ok_or_else(|| CliError::Parse(format!("alphabet symbol {value} must be a string")))?;
    let mut chars = s.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) if c != ',' => Ok(c),
        _ => Err(CliError::Parse(format!(
            "alphabet symbol {s:?} must be one character other than ','"
        ))),
    }
}

fn state_name(value: &Value) -> Result<String> {
    match value {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        other => Err(CliError::Parse(format!(
            "state {other} must be a string or integer"
        ))),
    }
}

pub fn dfa_from_value(value: &Value) -> Result<Dfa> {
    let obj = value
        .as_object()
        .ok_or_else(|| CliError::Parse("automaton must be a JSON object".into()))?;
    let alphabet = obj
        .get("alphabet")
        .and_then(Value::as_array)
        .ok_or_else(|| CliError::Parse("automaton needs an \"alphabet\" array".into()))?
        .iter()
        .map(symbol)
        .collect::<Result<Vec<_>>>()?;
    if let Some(regex) = obj.get("regex") {
        let text = regex
            .as_str()
            .ok_or_else(|| CliError::Parse("\"regex\" must be a string".into()))?;
        let r = regex_parse(text, &alphabet)?;
        return Ok(regex_to_dfa(&r, &alphabet)?);
    }

    let names = obj
        .get("states")
        .and_then(Value::as_array)
        .ok_or_else(|| CliError::Parse("automaton needs a \"states\" array".into()))?
        .iter()
        .map(state_name)
        .collect::<Result<Vec<_>>>()?;
    let index: BTreeMap<&str, usize> = names
        .iter()
        .enumerate()
        .map(|(i, n)| (n.as_str(), i))
        .collect();
    if index.len() != names.len() {
        return Err(CliError::Parse("automaton has repeated state names".into()));
    }
    let lookup = |v: &Value| -> Result<usize> {
        let name = state_name(v)?;
        index
            .get(name.as_str())
            .copied()
            .ok_or_else(|| CliError::Parse(format!("unknown state {name:?}")))
    };
    let delta_obj = obj
        .get("delta")
        .and_then(Value::as_object)
        .ok_or_else(|| CliError::Parse("automaton needs a \"delta\" object".into()))?;
    let mut delta = vec![vec![None; alphabet.len()]; names.len()];
    for (key, target) in delta_obj {
        let (state, sym) = key
            .rsplit_once(',')
            .ok_or_else(|| CliError::Parse(format!("delta key {key:?} is not \"state,symbol\"")))?;
        let q = *index
            .get(state)
            .ok_or_else(|| CliError::Parse(format!("unknown state {state:?} in delta")))?;
        let mut chars = sym.chars();
        let a = match (chars.next(), chars.next()) {
            (Some(c), None) => alphabet.iter().position(|&x| x == c),
            _ => None,
        }
        .ok_or_else(|| CliError::Parse(format!("unknown symbol {sym:?} in delta")))?;
        delta[q][a] = Some(lookup(target)?);
    }
    let delta = delta
        .into_iter()
        .enumerate()
        .map(|(q, row)| {
            row.into_iter()
                .enumerate()
                .map(|(a, t)| {
                    t.ok_or_else(|| {
                        CliError::Parse(format!(
                            "delta is missing \"{},{}\"",
                            names[q], alphabet[a]
                        ))
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let start = lookup(
        obj.get("start")
            .ok_or_else(|| CliError::Parse("automaton needs a \"start\" state".into()))?,
    )?;
    let accept = obj
        .get("accept")
        .and_then(Value::as_array)
        .ok_or_else(|| CliError::Parse("automaton needs an \"accept\" array".into()))?
        .iter()
        .map(lookup)
        .collect::<Result<Vec<_>>>()?;
    Ok(Dfa::new(alphabet, delta, start, accept)?)
}

/// One automaton, or an array of them.
pub fn parse_dfas(text: &str) -> Result<Vec<Dfa>> {
    let value: Value = serde_json::from_str(text).map_err(|e| malformed("automaton", e))?;
    match &value {
        Value::Array(items) => items.iter().map(dfa_from_value).collect(),
        _ => Ok(vec![dfa_from_value(&value)?]),
    }
}

/// Emits the automaton with states renamed `0, 1, ...` in breadth-first
/// order from the start state.
pub fn dfa_to_value(dfa: &Dfa) -> Value {
    let dfa = dfa.canonical();
    let mut delta = Map::new();
    for q in 0..dfa.num_states() {
        for (a, c) in dfa.alphabet().iter().enumerate() {
            delta.insert(format!("{q},{c}"), json!(dfa.next(q, a)));
        }
    }
    json!({
        "states": (0..dfa.num_states()).collect::<Vec<_>>(),
        "alphabet": dfa.alphabet().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "delta": delta,
        "start": dfa.start(),
        "accept": dfa.accepting_states().collect::<Vec<_>>(),
    })
}

/// Hypergraph from JSON, or from `edge { ... }` lines when the text is not
/// JSON.
pub fn parse_hypergraph(text: &str) -> Result<Hypergraph<Element>> {
    if text.trim_start().starts_with('{') {
        let value: Value = serde_json::from_str(text).map_err(|e| malformed("hypergraph", e))?;
        let vertices = elements(
            value
                .get("vertices")
                .ok_or_else(|| CliError::Parse("hypergraph needs \"vertices\"".into()))?,
            "vertices",
        )?;
        let edges = value
            .get("edges")
            .and_then(Value::as_array)
            .ok_or_else(|| CliError::Parse("hypergraph needs an \"edges\" array".into()))?
            .iter()
            .map(|e| element_set(e, "each edge"))
            .collect::<Result<Vec<_>>>()?;
        return Ok(Hypergraph::new(vertices, edges)?);
    }
    parse_hypergraph_text(text)
}

/// The line format: `vertices { a b c }` declares vertices (optional),
/// `edge { a b }` adds a hyperedge, `#` starts a comment.
fn parse_hypergraph_text(text: &str) -> Result<Hypergraph<Element>> {
    let mut declared: Option<Vec<Element>> = None;
    let mut edges = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = || CliError::Parse(format!("line {}: expected `edge {{ ... }}`", lineno + 1));
        let (head, rest) = line.split_once('{').ok_or_else(bad)?;
        let body = rest.trim_end().strip_suffix('}').ok_or_else(bad)?;
        let items: Vec<Element> = body.split_whitespace().map(Element::sym).collect();
        match head.trim() {
            "edge" => edges.push(items.into_iter().collect::<BTreeSet<_>>()),
            "vertices" => declared.get_or_insert_with(Vec::new).extend(items),
            _ => return Err(bad()),
        }
    }
    Ok(match declared {
        Some(vertices) => Hypergraph::new(vertices, edges)?,
        None => Hypergraph::from_edges(edges)?,
    })
}

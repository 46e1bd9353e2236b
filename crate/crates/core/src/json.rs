//! JSON form of graph sets and verdicts.
//!
//! ```json
//! {"functions": [{"name": "A", "params": ["x", "y"]}],
//!  "graphs": [{"name": "G01", "source": "A", "target": "A",
//!              "arcs": [{"from": "x", "kind": "strict", "to": "x"}]}]}
//! ```
//!
//! Parameters and functions are referenced by name. Input errors carry a
//! JSON pointer to the offending value. Object keys come out sorted, so the
//! output for a given value is byte-stable.

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::criterion::Verdict;
use crate::descent::LassoMultipath;
use crate::graph::{Arc, ArcKind, FunSig, GraphSet, SizeChangeGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{}: {message}", if pointer.is_empty() { "/" } else { pointer.as_str() })]
pub struct SchemaError {
    pub pointer: String,
    pub message: String,
}

fn err(pointer: impl Into<String>, message: impl Into<String>) -> SchemaError {
    SchemaError {
        pointer: pointer.into(),
        message: message.into(),
    }
}

fn field<'v>(obj: &'v Map<String, Value>, at: &str, key: &str) -> Result<&'v Value, SchemaError> {
    obj.get(key)
        .ok_or_else(|| err(at, format!("missing field `{key}`")))
}

fn object<'v>(v: &'v Value, at: &str) -> Result<&'v Map<String, Value>, SchemaError> {
    v.as_object().ok_or_else(|| err(at, "expected an object"))
}

fn array<'v>(v: &'v Value, at: &str) -> Result<&'v Vec<Value>, SchemaError> {
    v.as_array().ok_or_else(|| err(at, "expected an array"))
}

fn string<'v>(v: &'v Value, at: &str) -> Result<&'v str, SchemaError> {
    v.as_str().ok_or_else(|| err(at, "expected a string"))
}

fn parse_arc(v: &Value, at: &str, source: &FunSig, target: &FunSig) -> Result<Arc, SchemaError> {
    let obj = object(v, at)?;
    let from = string(field(obj, at, "from")?, &format!("{at}/from"))?;
    let to = string(field(obj, at, "to")?, &format!("{at}/to"))?;
    let kind = match string(field(obj, at, "kind")?, &format!("{at}/kind"))? {
        "strict" => ArcKind::Strict,
        "nonstrict" => ArcKind::NonStrict,
        other => {
            return Err(err(
                format!("{at}/kind"),
                format!("unknown arc kind `{other}` (expected strict|nonstrict)"),
            ))
        }
    };
    let src = source.param_index(from).ok_or_else(|| {
        err(
            format!("{at}/from"),
            format!("`{from}` is not a parameter of `{}`", source.name()),
        )
    })?;
    let tgt = target.param_index(to).ok_or_else(|| {
        err(
            format!("{at}/to"),
            format!("`{to}` is not a parameter of `{}`", target.name()),
        )
    })?;
    Ok(Arc { src, tgt, kind })
}

pub fn graph_set_from_value(v: &Value) -> Result<GraphSet, SchemaError> {
    let root = object(v, "")?;
    let mut sigs = Vec::new();
    for (i, f) in array(field(root, "", "functions")?, "/functions")?
        .iter()
        .enumerate()
    {
        let at = format!("/functions/{i}");
        let obj = object(f, &at)?;
        let name = string(field(obj, &at, "name")?, &format!("{at}/name"))?;
        let params = array(field(obj, &at, "params")?, &format!("{at}/params"))?
            .iter()
            .enumerate()
            .map(|(j, p)| string(p, &format!("{at}/params/{j}")).map(str::to_string))
            .collect::<Result<Vec<_>, _>>()?;
        sigs.push(FunSig::new(name, params).map_err(|e| err(&at, e.to_string()))?);
    }
    let mut gs = GraphSet::new(sigs).map_err(|e| err("/functions", e.to_string()))?;
    for (i, g) in array(field(root, "", "graphs")?, "/graphs")?
        .iter()
        .enumerate()
    {
        let at = format!("/graphs/{i}");
        let obj = object(g, &at)?;
        let name = match obj.get("name") {
            None | Some(Value::Null) => None,
            Some(n) => Some(string(n, &format!("{at}/name"))?.to_string()),
        };
        let endpoint = |key: &str| {
            let ptr = format!("{at}/{key}");
            let n = string(field(obj, &at, key)?, &ptr)?;
            gs.fun_by_name(n)
                .ok_or_else(|| err(&ptr, format!("unknown function `{n}`")))
        };
        let (source, target) = (endpoint("source")?, endpoint("target")?);
        let (ssig, tsig) = (gs.sig(source), gs.sig(target));
        let arcs = match obj.get("arcs") {
            None => Vec::new(),
            Some(a) => array(a, &format!("{at}/arcs"))?
                .iter()
                .enumerate()
                .map(|(j, a)| parse_arc(a, &format!("{at}/arcs/{j}"), ssig, tsig))
                .collect::<Result<Vec<_>, _>>()?,
        };
        let graph = SizeChangeGraph::new(source, ssig.arity(), target, tsig.arity(), arcs)
            .map_err(|e| err(format!("{at}/arcs"), e.to_string()))?;
        gs.push(name, graph).map_err(|e| err(&at, e.to_string()))?;
    }
    Ok(gs)
}

pub fn graph_set_from_json(text: &str) -> Result<GraphSet, SchemaError> {
    let v: Value = serde_json::from_str(text).map_err(|e| err("", format!("invalid JSON: {e}")))?;
    graph_set_from_value(&v)
}

fn arcs_value(gs: &GraphSet, g: &SizeChangeGraph) -> Value {
    let (s, t) = (gs.sig(g.source()), gs.sig(g.target()));
    g.arcs()
        .iter()
        .map(|a| {
            json!({
                "from": s.params()[a.src],
                "kind": a.kind.keyword(),
                "to": t.params()[a.tgt],
            })
        })
        .collect()
}

/// An unnamed graph over the signatures of `gs`.
pub fn graph_to_value(gs: &GraphSet, g: &SizeChangeGraph) -> Value {
    json!({
        "source": gs.sig(g.source()).name(),
        "target": gs.sig(g.target()).name(),
        "arcs": arcs_value(gs, g),
    })
}

pub fn graph_set_to_value(gs: &GraphSet) -> Value {
    json!({
        "functions": gs
            .sigs()
            .iter()
            .map(|s| json!({"name": s.name(), "params": s.params()}))
            .collect::<Vec<_>>(),
        "graphs": gs
            .graphs()
            .iter()
            .enumerate()
            .map(|(i, g)| {
                let mut v = graph_to_value(gs, g);
                v["name"] = json!(gs.name(i));
                v
            })
            .collect::<Vec<_>>(),
    })
}

pub fn graph_set_to_json(gs: &GraphSet) -> String {
    let mut s =
        serde_json::to_string_pretty(&graph_set_to_value(gs)).expect("JSON values serialize");
    s.push('\n');
    s
}

pub fn lasso_to_value(gs: &GraphSet, lasso: &LassoMultipath) -> Value {
    json!({
        "prefix": gs.word_names(&lasso.prefix),
        "period": gs.word_names(&lasso.period),
    })
}

/// `{"sct": bool, "failing_idempotent": graph | null, "lasso": lasso | null}`;
/// the failing idempotent also carries its `witness` word.
pub fn verdict_to_value(gs: &GraphSet, verdict: &Verdict) -> Value {
    match verdict {
        Verdict::Sct => json!({"sct": true, "failing_idempotent": null, "lasso": null}),
        Verdict::NotSct(cx) => {
            let mut failing = graph_to_value(gs, &cx.failing.graph);
            failing["witness"] = json!(gs.word_names(&cx.failing.witness));
            json!({
                "sct": false,
                "failing_idempotent": failing,
                "lasso": lasso_to_value(gs, &cx.lasso),
            })
        }
    }
}

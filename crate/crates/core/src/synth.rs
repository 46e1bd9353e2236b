//! Compiles a graph set into a program that it describes.
//!
//! All functions are padded to a common arity `n`. A function with `k`
//! outgoing graphs dispatches on its first parameter:
//!
//! ```text
//! f(x0, …, x{n-1}) = if x0 = 0 then call_0 else if x0 = 1 then call_1 … else call_{k-1}
//! ```
//!
//! where branch `h` calls the target of the `h`-th outgoing graph (input
//! order). Argument `j` is `xs - 1` for a strict arc `xs ↓ j`, `xs` for a
//! non-strict arc `xs ⇓ j`, and `xj + 1` when nothing enters `j`. Functions
//! without outgoing graphs return `x0`. Syntactic extraction of the result
//! gives back the input graphs; padding parameters never carry arcs.

use thiserror::Error;

use crate::graph::{ArcKind, FunId, FunSig, GraphSet, SizeChangeGraph};
use crate::lang::{
    is_identifier, BoolExpr, CallSiteId, CondExpr, Expr, FunDef, LangError, Program,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SynthError {
    #[error("cannot synthesize a program from an empty graph set")]
    Empty,
    #[error("graph {graph} has several arcs into parameter {param}")]
    ConflictingArcs { graph: String, param: String },
    #[error("synthesized program is invalid: {0}")]
    Program(#[from] LangError),
}

fn padded_params(sig: &FunSig, n: usize) -> Vec<String> {
    let mut params = sig.params().to_vec();
    let mut j = params.len();
    while params.len() < n {
        let mut name = format!("pad{j}");
        while params.contains(&name) || !is_identifier(&name) {
            name.push('_');
        }
        params.push(name);
        j += 1;
    }
    params
}

fn call_for(
    gs: &GraphSet,
    index: usize,
    g: &SizeChangeGraph,
    n: usize,
) -> Result<Expr, SynthError> {
    let args = (0..n)
        .map(|j| {
            let mut incoming = g.arcs().iter().filter(|a| a.tgt == j);
            match (incoming.next(), incoming.next()) {
                (None, _) => Ok(Expr::Succ(j)),
                (Some(a), None) => Ok(match a.kind {
                    ArcKind::Strict => Expr::Pred(a.src),
                    ArcKind::NonStrict => Expr::Var(a.src),
                }),
                (Some(_), Some(_)) => Err(SynthError::ConflictingArcs {
                    graph: gs.name(index).to_string(),
                    param: gs.sig(g.target()).params()[j].clone(),
                }),
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Expr::Call {
        callee: g.target(),
        args,
        site: CallSiteId(0),
    })
}

pub fn synthesize(gs: &GraphSet) -> Result<Program, SynthError> {
    if gs.is_empty() {
        return Err(SynthError::Empty);
    }
    let n = gs.sigs().iter().map(FunSig::arity).max().unwrap_or(1);
    let mut defs = Vec::with_capacity(gs.sigs().len());
    for (fi, sig) in gs.sigs().iter().enumerate() {
        let padded = FunSig::new(sig.name(), padded_params(sig, n))
            .expect("padding keeps parameter names distinct");
        let calls = gs
            .graphs()
            .iter()
            .enumerate()
            .filter(|(_, g)| g.source() == FunId(fi))
            .map(|(i, g)| call_for(gs, i, g, n))
            .collect::<Result<Vec<_>, _>>()?;
        let body = match calls.split_last() {
            None => CondExpr::Leaf(Expr::Var(0)),
            Some((last, rest)) => rest.iter().enumerate().rev().fold(
                CondExpr::Leaf(last.clone()),
                |otherwise, (h, call)| {
                    CondExpr::If(
                        BoolExpr::eq_const(0, h as u64),
                        Box::new(CondExpr::Leaf(call.clone())),
                        Box::new(otherwise),
                    )
                },
            ),
        };
        defs.push(FunDef { sig: padded, body });
    }
    Ok(Program::new(defs, FunId(0))?)
}

/// A graph keyed by names only, so graphs over padded and unpadded
/// signatures compare equal when their arcs agree.
pub type NamedGraph = (String, String, Vec<(String, ArcKind, String)>);

pub fn named_graph(sigs: &[FunSig], g: &SizeChangeGraph) -> NamedGraph {
    let (s, t) = (&sigs[g.source().0], &sigs[g.target().0]);
    (
        s.name().to_string(),
        t.name().to_string(),
        g.arcs()
            .iter()
            .map(|a| (s.params()[a.src].clone(), a.kind, t.params()[a.tgt].clone()))
            .collect(),
    )
}

/// The graphs of `gs` as a sorted multiset of [`NamedGraph`]s.
pub fn named_multiset(gs: &GraphSet) -> Vec<NamedGraph> {
    let mut out: Vec<NamedGraph> = gs
        .graphs()
        .iter()
        .map(|g| named_graph(gs.sigs(), g))
        .collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extract::{extract_description, ExtractionMode};
    use crate::graph::Arc;
    use crate::lang::parse_program;

    fn ackermann_graphs() -> GraphSet {
        let mut gs = GraphSet::new(vec![FunSig::new("A", ["x", "y"]).unwrap()]).unwrap();
        let a = FunId(0);
        gs.push(
            Some("G01".into()),
            SizeChangeGraph::new(a, 2, a, 2, [Arc::strict(0, 0)]).unwrap(),
        )
        .unwrap();
        gs.push(
            Some("G2".into()),
            SizeChangeGraph::new(a, 2, a, 2, [Arc::nonstrict(0, 0), Arc::strict(1, 1)]).unwrap(),
        )
        .unwrap();
        gs
    }

    #[test]
    fn ackermann_schema() {
        let p = synthesize(&ackermann_graphs()).unwrap();
        assert_eq!(
            p.to_string(),
            "A(x, y) = if x = 0 then A(x - 1, y + 1) else A(x, y - 1)\n"
        );
        let d = extract_description(&p, ExtractionMode::Syntactic);
        assert_eq!(
            named_multiset(&d.to_graph_set(&p)),
            named_multiset(&ackermann_graphs())
        );
    }

    #[test]
    fn empty_graph_increments_everything() {
        let mut gs = GraphSet::new(vec![FunSig::new("f", ["x"]).unwrap()]).unwrap();
        gs.push(None, SizeChangeGraph::empty(FunId(0), 1, FunId(0), 1))
            .unwrap();
        assert_eq!(synthesize(&gs).unwrap().to_string(), "f(x) = f(x + 1)\n");
    }

    #[test]
    fn padding_and_sinks() {
        let mut gs = GraphSet::new(vec![
            FunSig::new("f", ["a"]).unwrap(),
            FunSig::new("g", ["b", "c"]).unwrap(),
        ])
        .unwrap();
        gs.push(
            None,
            SizeChangeGraph::new(FunId(0), 1, FunId(1), 2, [Arc::strict(0, 1)]).unwrap(),
        )
        .unwrap();
        let p = synthesize(&gs).unwrap();
        assert_eq!(p.to_string(), "f(a, pad1) = g(a + 1, a - 1)\ng(b, c) = b\n");
        let reparsed = parse_program(&p.to_string()).unwrap();
        assert_eq!(reparsed, p);
        let d = extract_description(&p, ExtractionMode::Syntactic);
        assert_eq!(named_multiset(&d.to_graph_set(&p)), named_multiset(&gs));
    }

    #[test]
    fn three_way_dispatch_uses_eq_const() {
        let mut gs = GraphSet::new(vec![FunSig::new("f", ["x"]).unwrap()]).unwrap();
        for arcs in [vec![Arc::strict(0, 0)], vec![Arc::nonstrict(0, 0)], vec![]] {
            gs.push(
                None,
                SizeChangeGraph::new(FunId(0), 1, FunId(0), 1, arcs).unwrap(),
            )
            .unwrap();
        }
        let p = synthesize(&gs).unwrap();
        assert_eq!(
            p.to_string(),
            "f(x) = if x = 0 then f(x - 1) else if x = 1 then f(x) else f(x + 1)\n"
        );
    }

    #[test]
    fn conflicting_arcs_rejected() {
        let mut gs = GraphSet::new(vec![FunSig::new("f", ["x", "y"]).unwrap()]).unwrap();
        gs.push(
            Some("bad".into()),
            SizeChangeGraph::new(
                FunId(0),
                2,
                FunId(0),
                2,
                [Arc::strict(0, 0), Arc::nonstrict(1, 0)],
            )
            .unwrap(),
        )
        .unwrap();
        assert_eq!(
            synthesize(&gs),
            Err(SynthError::ConflictingArcs {
                graph: "bad".into(),
                param: "x".into()
            })
        );
        assert_eq!(
            synthesize(&GraphSet::new(vec![]).unwrap()),
            Err(SynthError::Empty)
        );
    }
}

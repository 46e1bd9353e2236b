//! Random generators and reference implementations shared by the
//! integration tests.

#![allow(dead_code)]

use rand::Rng;
use sct_core::{Arc, ArcKind, FunId, FunSig, GraphSet, SizeChangeGraph};

/// Composition computed straight from the path definition: `x -> z` exists
/// iff some `y` links them, and it is strict iff some linking path contains a
/// strict arc.
pub fn reference_compose(a: &SizeChangeGraph, b: &SizeChangeGraph) -> SizeChangeGraph {
    assert_eq!(a.target(), b.source());
    let mut arcs = Vec::new();
    for x in 0..a.source_arity() {
        for z in 0..b.target_arity() {
            let mut any = false;
            let mut strict = false;
            for y in 0..a.target_arity() {
                if let (Some(r1), Some(r2)) = (a.arc(x, y), b.arc(y, z)) {
                    any = true;
                    strict |= r1 == ArcKind::Strict || r2 == ArcKind::Strict;
                }
            }
            if any {
                arcs.push(Arc {
                    src: x,
                    tgt: z,
                    kind: if strict {
                        ArcKind::Strict
                    } else {
                        ArcKind::NonStrict
                    },
                });
            }
        }
    }
    SizeChangeGraph::new(
        a.source(),
        a.source_arity(),
        b.target(),
        b.target_arity(),
        arcs,
    )
    .expect("reference composition is well formed")
}

pub fn reference_power(g: &SizeChangeGraph, n: usize) -> SizeChangeGraph {
    let mut acc = g.clone();
    for _ in 1..n {
        acc = reference_compose(&acc, g);
    }
    acc
}

/// A graph where every (source, target) parameter pair independently gets no
/// arc, a non-strict arc or a strict arc.
pub fn random_graph(
    rng: &mut impl Rng,
    source: FunId,
    source_arity: usize,
    target: FunId,
    target_arity: usize,
) -> SizeChangeGraph {
    let mut arcs = Vec::new();
    for s in 0..source_arity {
        for t in 0..target_arity {
            match rng.gen_range(0..3) {
                0 => {}
                1 => arcs.push(Arc::nonstrict(s, t)),
                _ => arcs.push(Arc::strict(s, t)),
            }
        }
    }
    SizeChangeGraph::new(source, source_arity, target, target_arity, arcs).unwrap()
}

/// A graph with at most one arc into every target parameter, as produced by
/// extraction from a call site.
pub fn random_call_graph(
    rng: &mut impl Rng,
    source: FunId,
    source_arity: usize,
    target: FunId,
    target_arity: usize,
) -> SizeChangeGraph {
    let arcs = (0..target_arity).filter_map(|t| match rng.gen_range(0..3) {
        0 => None,
        1 => Some(Arc::nonstrict(rng.gen_range(0..source_arity), t)),
        _ => Some(Arc::strict(rng.gen_range(0..source_arity), t)),
    });
    SizeChangeGraph::new(
        source,
        source_arity,
        target,
        target_arity,
        arcs.collect::<Vec<_>>(),
    )
    .unwrap()
}

pub fn random_sigs(rng: &mut impl Rng, max_funs: usize, max_arity: usize) -> Vec<FunSig> {
    let funs = rng.gen_range(1..=max_funs);
    (0..funs)
        .map(|f| {
            let arity = rng.gen_range(1..=max_arity);
            FunSig::new(format!("f{f}"), (0..arity).map(|p| format!("x{p}"))).unwrap()
        })
        .collect()
}

pub fn random_graph_set_with(
    rng: &mut impl Rng,
    max_funs: usize,
    max_arity: usize,
    max_graphs: usize,
    call_graphs_only: bool,
) -> GraphSet {
    let sigs = random_sigs(rng, max_funs, max_arity);
    let mut gs = GraphSet::new(sigs.clone()).unwrap();
    let graphs = rng.gen_range(1..=max_graphs);
    for _ in 0..graphs {
        let s = rng.gen_range(0..sigs.len());
        let t = rng.gen_range(0..sigs.len());
        let (sa, ta) = (sigs[s].arity(), sigs[t].arity());
        let g = if call_graphs_only {
            random_call_graph(rng, FunId(s), sa, FunId(t), ta)
        } else {
            random_graph(rng, FunId(s), sa, FunId(t), ta)
        };
        gs.push(None, g).unwrap();
    }
    gs
}

pub fn random_graph_set(
    rng: &mut impl Rng,
    max_funs: usize,
    max_arity: usize,
    max_graphs: usize,
) -> GraphSet {
    random_graph_set_with(rng, max_funs, max_arity, max_graphs, false)
}

/// Ackermann's closed forms for `x ≤ 3`.
pub fn ackermann_closed_form(x: u64, y: u64) -> u64 {
    match x {
        0 => y + 1,
        1 => y + 2,
        2 => 2 * y + 3,
        3 => (1u64 << (y + 3)) - 3,
        _ => panic!("closed form only for x <= 3"),
    }
}

//! Composition closure of a graph set, with a derivation word per element.

use std::collections::HashMap;

use crate::graph::{GraphSet, SizeChangeGraph};

/// A closure element together with a word over base-graph indices whose
/// left-to-right composition is exactly `graph`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedGraph {
    pub graph: SizeChangeGraph,
    pub witness: Vec<usize>,
}

#[derive(Debug, Clone, Default)]
pub struct Closure {
    elements: Vec<DerivedGraph>,
    index: HashMap<SizeChangeGraph, usize>,
}

impl Closure {
    /// Elements in shortlex order of their witness words.
    pub fn elements(&self) -> &[DerivedGraph] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, g: &SizeChangeGraph) -> bool {
        self.index.contains_key(g)
    }

    pub fn position(&self, g: &SizeChangeGraph) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn get(&self, g: &SizeChangeGraph) -> Option<&DerivedGraph> {
        self.position(g).map(|i| &self.elements[i])
    }

    pub fn idempotents(&self) -> impl Iterator<Item = &DerivedGraph> {
        self.elements.iter().filter(|d| d.graph.is_idempotent())
    }

    /// Longest witness word; bounds the words any element needs.
    pub fn max_witness_len(&self) -> usize {
        self.elements
            .iter()
            .map(|d| d.witness.len())
            .max()
            .unwrap_or(0)
    }

    fn insert(&mut self, graph: SizeChangeGraph, witness: Vec<usize>) {
        if !self.index.contains_key(&graph) {
            self.index.insert(graph.clone(), self.elements.len());
            self.elements.push(DerivedGraph { graph, witness });
        }
    }
}

/// Smallest superset of `gs` closed under composition.
///
/// Words are explored breadth-first and extended on the right by base graphs
/// in index order. The element list doubles as the FIFO queue, so elements
/// are discovered in shortlex order of their witnesses and each witness is
/// the shortlex-least word composing to its graph.
pub fn closure(gs: &GraphSet) -> Closure {
    let mut cl = Closure::default();
    for (i, g) in gs.graphs().iter().enumerate() {
        cl.insert(g.clone(), vec![i]);
    }
    let mut cursor = 0;
    while cursor < cl.elements.len() {
        let current = cl.elements[cursor].clone();
        for (i, base) in gs.graphs().iter().enumerate() {
            if current.graph.target() != base.source() {
                continue;
            }
            let next = current
                .graph
                .compose(base)
                .expect("endpoints checked and arities fixed by the graph set");
            if !cl.contains(&next) {
                let mut witness = current.witness.clone();
                witness.push(i);
                cl.insert(next, witness);
            }
        }
        cursor += 1;
    }
    cl
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Arc, FunId, FunSig};

    fn ackermann() -> GraphSet {
        let mut gs = GraphSet::new(vec![FunSig::new("A", ["x", "y"]).unwrap()]).unwrap();
        let f = FunId(0);
        gs.push(
            Some("G01".into()),
            SizeChangeGraph::new(f, 2, f, 2, [Arc::strict(0, 0)]).unwrap(),
        )
        .unwrap();
        gs.push(
            Some("G2".into()),
            SizeChangeGraph::new(f, 2, f, 2, [Arc::nonstrict(0, 0), Arc::strict(1, 1)]).unwrap(),
        )
        .unwrap();
        gs
    }

    #[test]
    fn ackermann_closure_is_the_base_set() {
        let gs = ackermann();
        let cl = closure(&gs);
        assert_eq!(cl.len(), 2);
        assert_eq!(cl.elements()[0].witness, vec![0]);
        assert_eq!(cl.elements()[1].witness, vec![1]);
        assert_eq!(cl.max_witness_len(), 1);
    }

    #[test]
    fn idempotent_singleton() {
        let mut gs = GraphSet::new(vec![FunSig::new("f", ["x"]).unwrap()]).unwrap();
        let f = FunId(0);
        gs.push(
            None,
            SizeChangeGraph::new(f, 1, f, 1, [Arc::strict(0, 0)]).unwrap(),
        )
        .unwrap();
        assert_eq!(closure(&gs).len(), 1);
    }

    #[test]
    fn witnesses_are_shortlex_minimal() {
        // swap S: S;S = I, I;S = S -> closure {S, I} with I witnessed by (S,S)
        let mut gs = GraphSet::new(vec![FunSig::new("f", ["x", "y"]).unwrap()]).unwrap();
        let f = FunId(0);
        gs.push(
            Some("S".into()),
            SizeChangeGraph::new(f, 2, f, 2, [Arc::nonstrict(0, 1), Arc::nonstrict(1, 0)]).unwrap(),
        )
        .unwrap();
        let cl = closure(&gs);
        assert_eq!(cl.len(), 2);
        assert_eq!(cl.elements()[1].witness, vec![0, 0]);
        for d in cl.elements() {
            assert_eq!(gs.compose_word(&d.witness).unwrap(), d.graph);
        }
    }

    #[test]
    fn non_composable_graphs_do_not_combine() {
        let mut gs = GraphSet::new(vec![
            FunSig::new("f", ["x"]).unwrap(),
            FunSig::new("g", ["y"]).unwrap(),
        ])
        .unwrap();
        let (f, g) = (FunId(0), FunId(1));
        gs.push(
            None,
            SizeChangeGraph::new(f, 1, g, 1, [Arc::strict(0, 0)]).unwrap(),
        )
        .unwrap();
        gs.push(None, SizeChangeGraph::new(f, 1, g, 1, []).unwrap())
            .unwrap();
        assert_eq!(closure(&gs).len(), 2);
    }
}

//! From call sites to size-change graphs.
//!
//! Each argument contributes at most one arc, into its own target parameter:
//! a bare parameter `x` gives `x ⇓ y`, and `x - 1` gives `x ↓ y`. Under monus
//! `x - 1` only decreases when `x > 0`, so [`ExtractionMode::Guarded`] keeps
//! the strict arc only when the enclosing guards establish that, while
//! [`ExtractionMode::Syntactic`] always keeps it. Every other argument shape
//! yields no arc.

use std::fmt;
use std::str::FromStr;

use crate::graph::{Arc, GraphSet, ScgError, SizeChangeGraph};
use crate::lang::{enumerate_call_sites, CallSite, CallSiteId, Expr, GuardContext, Program};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ExtractionMode {
    #[default]
    Guarded,
    Syntactic,
}

impl fmt::Display for ExtractionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExtractionMode::Guarded => "guarded",
            ExtractionMode::Syntactic => "syntactic",
        })
    }
}

impl FromStr for ExtractionMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "guarded" => Ok(ExtractionMode::Guarded),
            "syntactic" => Ok(ExtractionMode::Syntactic),
            other => Err(format!(
                "unknown mode `{other}` (expected guarded|syntactic)"
            )),
        }
    }
}

/// One graph per call site, indexed by [`CallSiteId`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Description {
    mode: ExtractionMode,
    graphs: Vec<SizeChangeGraph>,
}

impl Description {
    pub fn mode(&self) -> ExtractionMode {
        self.mode
    }

    pub fn graphs(&self) -> &[SizeChangeGraph] {
        &self.graphs
    }

    pub fn graph(&self, site: CallSiteId) -> &SizeChangeGraph {
        &self.graphs[site.0]
    }

    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    /// Replaces the graph of one site; the endpoints must stay the same.
    pub fn set_graph(&mut self, site: CallSiteId, g: SizeChangeGraph) -> Result<(), ScgError> {
        let old = self
            .graphs
            .get(site.0)
            .ok_or(ScgError::UnknownGraph(site.0))?;
        if (
            old.source(),
            old.target(),
            old.source_arity(),
            old.target_arity(),
        ) != (g.source(), g.target(), g.source_arity(), g.target_arity())
        {
            return Err(ScgError::InvalidGraphSet(format!(
                "replacement graph for {site} has different endpoints"
            )));
        }
        self.graphs[site.0] = g;
        Ok(())
    }

    /// The description as a graph set over the program's signatures, with
    /// graphs named after their call sites (`tau0`, `tau1`, …).
    pub fn to_graph_set(&self, p: &Program) -> GraphSet {
        let mut gs = GraphSet::new(p.sigs()).expect("program function names are distinct");
        for (i, g) in self.graphs.iter().enumerate() {
            gs.push(Some(CallSiteId(i).to_string()), g.clone())
                .expect("extracted graphs match the program signatures");
        }
        gs
    }
}

pub fn arc_for_argument(
    e: &Expr,
    tgt: usize,
    ctx: &GuardContext,
    mode: ExtractionMode,
) -> Option<Arc> {
    match e {
        Expr::Var(x) => Some(Arc::nonstrict(*x, tgt)),
        Expr::Pred(x) => Some(
            if mode == ExtractionMode::Syntactic || ctx.implies_positive(*x) {
                Arc::strict(*x, tgt)
            } else {
                Arc::nonstrict(*x, tgt)
            },
        ),
        Expr::Const(_) | Expr::Succ(_) | Expr::Prim(..) | Expr::Call { .. } => None,
    }
}

pub fn extract_graph(p: &Program, site: &CallSite, mode: ExtractionMode) -> SizeChangeGraph {
    let arcs = site
        .args
        .iter()
        .enumerate()
        .filter_map(|(j, e)| arc_for_argument(e, j, &site.guard, mode));
    SizeChangeGraph::new(
        site.caller,
        p.def(site.caller).sig.arity(),
        site.callee,
        p.def(site.callee).sig.arity(),
        arcs,
    )
    .expect("each argument position contributes at most one arc")
}

pub fn extract_description(p: &Program, mode: ExtractionMode) -> Description {
    let graphs = enumerate_call_sites(p)
        .iter()
        .map(|s| extract_graph(p, s, mode))
        .collect();
    Description { mode, graphs }
}

//! Bundled example inputs.

use crate::extract::{extract_description, Description, ExtractionMode};
use crate::graph::{Arc, FunId, GraphSet, SizeChangeGraph};
use crate::json::graph_set_from_json;
use crate::lang::{parse_program, CallSiteId, Program};

pub const ACKERMANN_SCT: &str = include_str!("../fixtures/ackermann.sct");
pub const SWAP_SCT: &str = include_str!("../fixtures/swap.sct");
pub const ACKERMANN_GRAPHS_JSON: &str = include_str!("../fixtures/ackermann-graphs.json");
pub const SWAP_GRAPHS_JSON: &str = include_str!("../fixtures/swap-graphs.json");
pub const SPP_WARMUP_JSON: &str = include_str!("../fixtures/spp-warmup.json");

/// File name and contents of every bundled fixture.
pub const ALL: &[(&str, &str)] = &[
    ("ackermann.sct", ACKERMANN_SCT),
    ("ackermann-graphs.json", ACKERMANN_GRAPHS_JSON),
    ("swap.sct", SWAP_SCT),
    ("swap-graphs.json", SWAP_GRAPHS_JSON),
    ("spp-warmup.json", SPP_WARMUP_JSON),
];

pub fn get(name: &str) -> Option<&'static str> {
    ALL.iter().find(|(n, _)| *n == name).map(|(_, text)| *text)
}

pub fn ackermann() -> Program {
    parse_program(ACKERMANN_SCT).expect("bundled program parses")
}

pub fn ackermann_graphs() -> GraphSet {
    graph_set_from_json(ACKERMANN_GRAPHS_JSON).expect("bundled graph set is valid")
}

pub fn swap_graphs() -> GraphSet {
    graph_set_from_json(SWAP_GRAPHS_JSON).expect("bundled graph set is valid")
}

pub fn spp_warmup() -> GraphSet {
    graph_set_from_json(SPP_WARMUP_JSON).expect("bundled graph set is valid")
}

/// The guarded Ackermann description with an unsound `y ↓ y` added at the
/// first call site, which passes the constant 1 as `y`.
pub fn corrupted_ackermann_description() -> (Program, Description) {
    let p = ackermann();
    let mut d = extract_description(&p, ExtractionMode::Guarded);
    let g = SizeChangeGraph::new(
        FunId(0),
        2,
        FunId(0),
        2,
        [Arc::strict(0, 0), Arc::strict(1, 1)],
    )
    .expect("valid graph");
    d.set_graph(CallSiteId(0), g).expect("same endpoints");
    (p, d)
}

//! Size-change termination analysis.
//!
//! The crate covers the whole pipeline: a small first-order language over the
//! naturals ([`lang`]), a fueled interpreter ([`interp`]), extraction of
//! size-change graphs from call sites ([`extract`]), the graph algebra and the
//! closure criterion ([`graph`], [`closure`], [`criterion`], [`descent`]), the
//! inverse construction from graphs to programs ([`synth`]), a brute-force
//! cross-check ([`oracle`]) and executable versions of the pigeonhole and
//! triangle-Ramsey constructions behind the criterion ([`principles`]).

pub mod closure;
pub mod criterion;
pub mod descent;
pub mod extract;
pub mod fixtures;
pub mod graph;
pub mod interp;
pub mod json;
pub mod lang;
pub mod oracle;
pub mod principles;
pub mod synth;

pub use closure::{closure, Closure, DerivedGraph};
pub use criterion::{check_closure, check_sct_criterion, Counterexample, Verdict};
pub use descent::{
    decide_periodic_descent, descent_parameters, induced_pair_coloring, DescentWitness,
    LassoMultipath,
};
pub use extract::{extract_description, extract_graph, Description, ExtractionMode};
pub use graph::{Arc, ArcKind, FunId, FunSig, GraphSet, ScgError, SizeChangeGraph};
pub use interp::{eval, sample_safety, trace_transitions, EvalError, SafetyConfig, SafetyReport};
pub use oracle::{bounded_lasso_oracle, enumerate_cyclic_words, OracleReport};
pub use synth::{synthesize, SynthError};

//! The closure criterion: a graph set is size-change terminating iff every
//! idempotent element of its closure has a strict self-arc.

use crate::closure::{closure, Closure, DerivedGraph};
use crate::descent::{decide_periodic_descent, LassoMultipath};
use crate::graph::GraphSet;

/// A failing idempotent and the periodic multipath built from its witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub failing: DerivedGraph,
    pub lasso: LassoMultipath,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Sct,
    NotSct(Counterexample),
}

impl Verdict {
    pub fn is_sct(&self) -> bool {
        matches!(self, Verdict::Sct)
    }

    pub fn counterexample(&self) -> Option<&Counterexample> {
        match self {
            Verdict::Sct => None,
            Verdict::NotSct(c) => Some(c),
        }
    }
}

pub fn check_sct_criterion(gs: &GraphSet) -> Verdict {
    check_closure(gs, &closure(gs))
}

/// Criterion over an already computed closure of `gs`. The first failing
/// idempotent in shortlex witness order is reported.
pub fn check_closure(gs: &GraphSet, cl: &Closure) -> Verdict {
    let Some(failing) = cl
        .idempotents()
        .find(|d| !d.graph.has_strict_self_arc())
        .cloned()
    else {
        return Verdict::Sct;
    };
    let lasso = LassoMultipath::periodic(failing.witness.clone());
    let descent = decide_periodic_descent(&lasso, gs)
        .expect("closure witnesses of idempotents form cyclic composable words");
    assert!(
        descent.is_none(),
        "failing idempotent produced a descending lasso"
    );
    Verdict::NotSct(Counterexample { failing, lasso })
}

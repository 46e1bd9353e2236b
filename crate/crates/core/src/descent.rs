//! Ultimately periodic multipaths and the exact descent decision for them.

use crate::graph::{GraphSet, ScgError, SizeChangeGraph};

/// The infinite multipath `prefix · period · period · …` over the graphs of a
/// [`GraphSet`], given by base-graph indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LassoMultipath {
    pub prefix: Vec<usize>,
    pub period: Vec<usize>,
}

impl LassoMultipath {
    pub fn new(prefix: Vec<usize>, period: Vec<usize>) -> Self {
        LassoMultipath { prefix, period }
    }

    pub fn periodic(period: Vec<usize>) -> Self {
        LassoMultipath {
            prefix: Vec::new(),
            period,
        }
    }

    /// Graph index at position `pos` of the unrolled multipath.
    pub fn graph_at(&self, pos: usize) -> usize {
        if pos < self.prefix.len() {
            self.prefix[pos]
        } else {
            self.period[(pos - self.prefix.len()) % self.period.len()]
        }
    }

    /// Checks that `prefix · period · period` is composable; this also forces
    /// the period to be cyclic.
    pub fn validate(&self, gs: &GraphSet) -> Result<(), ScgError> {
        if self.period.is_empty() {
            return Err(ScgError::EmptyPeriod);
        }
        let steps = self.prefix.len() + 2 * self.period.len();
        let mut previous: Option<&SizeChangeGraph> = None;
        for pos in 0..steps {
            let g = gs.graph(self.graph_at(pos))?;
            if let Some(p) = previous {
                if p.target() != g.source() {
                    return Err(ScgError::NotComposable {
                        left_target: p.target(),
                        right_source: g.source(),
                    });
                }
            }
            previous = Some(g);
        }
        Ok(())
    }
}

/// An infinite descent along `param`: from multipath position `start`, every
/// block of `block_len` periods carries `param ↓ param`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DescentWitness {
    pub param: usize,
    pub start: usize,
    pub block_len: usize,
}

fn period_idempotent(
    lasso: &LassoMultipath,
    gs: &GraphSet,
) -> Result<(SizeChangeGraph, usize), ScgError> {
    lasso.validate(gs)?;
    gs.compose_word(&lasso.period)?.idempotent_power()
}

/// Decides whether `lasso` has an infinite descent.
///
/// With `V` the composition of the period and `E = V^n` its idempotent
/// power, the multipath has infinite descent iff `E` has a strict self-arc:
/// a descending thread crosses block boundaries infinitely often and, by
/// pigeonhole over the finitely many parameters, revisits one of them.
pub fn decide_periodic_descent(
    lasso: &LassoMultipath,
    gs: &GraphSet,
) -> Result<Option<DescentWitness>, ScgError> {
    Ok(descent_parameters(lasso, gs)?.into_iter().next())
}

/// All parameters carrying a strict self-arc in the period's idempotent power,
/// ascending.
pub fn descent_parameters(
    lasso: &LassoMultipath,
    gs: &GraphSet,
) -> Result<Vec<DescentWitness>, ScgError> {
    let (idem, n) = period_idempotent(lasso, gs)?;
    Ok(idem
        .strict_self_arcs()
        .map(|param| DescentWitness {
            param,
            start: lasso.prefix.len(),
            block_len: n,
        })
        .collect())
}

/// `c(i, j) = G_i ; … ; G_{j-1}` on the unrolled multipath.
pub fn induced_pair_coloring(
    lasso: &LassoMultipath,
    gs: &GraphSet,
    i: usize,
    j: usize,
) -> Result<SizeChangeGraph, ScgError> {
    if i >= j {
        return Err(ScgError::Domain(format!(
            "pair coloring needs i < j, got ({i}, {j})"
        )));
    }
    if lasso.period.is_empty() {
        return Err(ScgError::EmptyPeriod);
    }
    let word: Vec<usize> = (i..j).map(|p| lasso.graph_at(p)).collect();
    gs.compose_word(&word)
}

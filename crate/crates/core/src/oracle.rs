//! Brute-force SCT check by enumerating cyclic words.
//!
//! Every cyclic word `w` spans the periodic multipath `w^ω`; if the
//! idempotent power of its composition has no strict self-arc, that multipath
//! has no infinite descent. This is independent of the closure fixpoint and
//! serves to cross-check [`crate::check_sct_criterion`].

use crate::descent::LassoMultipath;
use crate::graph::{GraphSet, SizeChangeGraph};

/// Composable words of length `1..=max_len` whose source equals their target,
/// in shortlex order.
pub struct CyclicWords<'g> {
    gs: &'g GraphSet,
    max_len: usize,
    len: usize,
    word: Vec<usize>,
}

impl CyclicWords<'_> {
    fn composable(&self, prev: Option<usize>, next: usize) -> bool {
        let graphs = self.gs.graphs();
        prev.is_none_or(|p| graphs[p].target() == graphs[next].source())
    }

    /// Advances `word` to the next composable word of length `len` in
    /// lexicographic order, starting from the first one when `word` is empty.
    fn advance(&mut self) -> bool {
        let n = self.gs.len();
        let mut candidate = match self.word.pop() {
            None => 0,
            Some(last) => last + 1,
        };
        loop {
            let prev = self.word.last().copied();
            match (candidate..n).find(|&g| self.composable(prev, g)) {
                Some(g) => {
                    self.word.push(g);
                    if self.word.len() == self.len {
                        return true;
                    }
                    candidate = 0;
                }
                None => match self.word.pop() {
                    Some(p) => candidate = p + 1,
                    None => return false,
                },
            }
        }
    }
}

impl Iterator for CyclicWords<'_> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let graphs = self.gs.graphs();
        while self.len <= self.max_len {
            if self.advance() {
                let (first, last) = (self.word[0], self.word[self.len - 1]);
                if graphs[last].target() == graphs[first].source() {
                    return Some(self.word.clone());
                }
            } else {
                self.len += 1;
                self.word.clear();
            }
        }
        None
    }
}

pub fn enumerate_cyclic_words(gs: &GraphSet, max_len: usize) -> CyclicWords<'_> {
    CyclicWords {
        gs,
        max_len,
        len: 1,
        word: Vec::new(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleReport {
    /// A cyclic word whose periodic multipath has no infinite descent.
    NotSct {
        lasso: LassoMultipath,
        idempotent: SizeChangeGraph,
    },
    NoCounterexampleUpTo(usize),
}

impl OracleReport {
    pub fn found_counterexample(&self) -> bool {
        matches!(self, OracleReport::NotSct { .. })
    }
}

pub fn bounded_lasso_oracle(gs: &GraphSet, max_len: usize) -> OracleReport {
    for word in enumerate_cyclic_words(gs, max_len) {
        let (idempotent, _) = gs
            .compose_word(&word)
            .and_then(|g| g.idempotent_power())
            .expect("cyclic words compose to cyclic graphs");
        if !idempotent.has_strict_self_arc() {
            return OracleReport::NotSct {
                lasso: LassoMultipath::periodic(word),
                idempotent,
            };
        }
    }
    OracleReport::NoCounterexampleUpTo(max_len)
}

//! The graph family `G_{χ,i}` and the choice-function multipath.
//!
//! There is one function with a parameter `z_I` for every nonempty `I ⊆ k`.
//! Each `I` is enumerated in ascending order as `σ_I`. For a choice function
//! `χ` (with `χ_I ∈ I`) and a color `i`, the active family is
//!
//! ```text
//! 𝒜 = { I : χ_I = last(σ_I) and σ_I(0) = i }
//! ```
//!
//! and with `m` the largest size in `𝒜`, `G_{χ,i}` has `z_I ↓ z_I` for
//! `I ∈ 𝒜` with `|I| = m` and `z_I ⇓ z_I` for `I ∉ 𝒜` with `|I| ≥ m`.
//!
//! Given a coloring `c`, the choice function evolves by
//!
//! ```text
//! χ_I(x+1) = σ_I(0)   if |I| = 1
//!          = c(x)     if χ_I(x) = σ_I(j) and σ_I(j+1 mod |I|) = c(x)
//!          = χ_I(x)   otherwise
//! ```
//!
//! and the multipath `G_x = G_{χ(x),c(x)}` descends exactly along `z_I` for
//! `I` the set of colors occurring infinitely often.

use std::collections::hash_map::Entry;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

use crate::descent::LassoMultipath;
use crate::graph::{Arc, FunId, FunSig, GraphSet, SizeChangeGraph};

use super::coloring::{spp_witness, EpColoring};
use super::PrinciplesError;

/// Largest `k` for which single graphs and multipaths are built.
pub const MAX_K: usize = 8;
/// Largest `k` for which the whole family is materialized.
pub const MAX_FAMILY_K: usize = 3;

fn check_k(k: usize, max: usize) -> Result<(), PrinciplesError> {
    if (1..=max).contains(&k) {
        Ok(())
    } else {
        Err(PrinciplesError::KOutOfRange { k, max })
    }
}

/// A nonempty set of colors with its ascending enumeration `σ_I`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSet {
    sigma: Vec<usize>,
}

impl IndexSet {
    pub fn new(members: impl IntoIterator<Item = usize>) -> Result<Self, PrinciplesError> {
        let set: BTreeSet<usize> = members.into_iter().collect();
        if set.is_empty() {
            return Err(PrinciplesError::InvalidIndexSet(
                "index sets are nonempty".into(),
            ));
        }
        Ok(IndexSet {
            sigma: set.into_iter().collect(),
        })
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn len(&self) -> usize {
        self.sigma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigma.is_empty()
    }

    pub fn first(&self) -> usize {
        self.sigma[0]
    }

    pub fn last(&self) -> usize {
        self.sigma[self.sigma.len() - 1]
    }

    pub fn contains(&self, color: usize) -> bool {
        self.sigma.binary_search(&color).is_ok()
    }

    /// `z0`, `z1`, `z0_1`, …
    pub fn param_name(&self) -> String {
        let members: Vec<String> = self.sigma.iter().map(usize::to_string).collect();
        format!("z{}", members.join("_"))
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let members: Vec<String> = self.sigma.iter().map(usize::to_string).collect();
        write!(f, "{{{}}}", members.join(","))
    }
}

/// All nonempty subsets of `0..k`, by size and then lexicographically. This
/// is also the parameter order of [`reduction_signature`].
pub fn index_sets(k: usize) -> Vec<IndexSet> {
    let mut sets: Vec<IndexSet> = (1u32..1 << k)
        .map(|mask| IndexSet {
            sigma: (0..k).filter(|&c| mask & (1 << c) != 0).collect(),
        })
        .collect();
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.sigma.cmp(&b.sigma)));
    sets
}

pub fn reduction_signature(k: usize) -> Result<FunSig, PrinciplesError> {
    check_k(k, MAX_K)?;
    let params: Vec<String> = index_sets(k).iter().map(IndexSet::param_name).collect();
    Ok(FunSig::new("Z", params).expect("index set names are distinct identifiers"))
}

/// A choice function `χ`, one value per index set in [`index_sets`] order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ChoiceState {
    k: usize,
    chi: Vec<usize>,
}

impl ChoiceState {
    /// `χ_I = σ_I(0)` for every `I`.
    pub fn initial(k: usize) -> Result<Self, PrinciplesError> {
        check_k(k, MAX_K)?;
        Ok(ChoiceState {
            k,
            chi: index_sets(k).iter().map(IndexSet::first).collect(),
        })
    }

    pub fn from_values(k: usize, chi: Vec<usize>) -> Result<Self, PrinciplesError> {
        check_k(k, MAX_K)?;
        let sets = index_sets(k);
        if chi.len() != sets.len() {
            return Err(PrinciplesError::InvalidChoice(format!(
                "expected {} values, got {}",
                sets.len(),
                chi.len()
            )));
        }
        if let Some((set, &v)) = sets.iter().zip(&chi).find(|(s, &v)| !s.contains(v)) {
            return Err(PrinciplesError::InvalidChoice(format!(
                "value {v} chosen for {set} is not a member"
            )));
        }
        Ok(ChoiceState { k, chi })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn values(&self) -> &[usize] {
        &self.chi
    }

    pub fn get(&self, set: &IndexSet) -> Option<usize> {
        index_sets(self.k)
            .iter()
            .position(|s| s == set)
            .map(|i| self.chi[i])
    }

    pub fn is_valid(&self) -> bool {
        let sets = index_sets(self.k);
        sets.len() == self.chi.len() && sets.iter().zip(&self.chi).all(|(s, &v)| s.contains(v))
    }

    fn stepped(&self, sets: &[IndexSet], color: usize) -> ChoiceState {
        let chi = sets
            .iter()
            .zip(&self.chi)
            .map(|(set, &current)| {
                if set.len() == 1 {
                    return set.first();
                }
                let j = set
                    .sigma
                    .iter()
                    .position(|&c| c == current)
                    .expect("choice values are members");
                if set.sigma[(j + 1) % set.len()] == color {
                    color
                } else {
                    current
                }
            })
            .collect();
        ChoiceState { k: self.k, chi }
    }

    fn active_in(&self, sets: &[IndexSet], color: usize) -> Vec<usize> {
        sets.iter()
            .zip(&self.chi)
            .enumerate()
            .filter(|(_, (set, &v))| v == set.last() && set.first() == color)
            .map(|(i, _)| i)
            .collect()
    }

    fn graph_in(&self, sets: &[IndexSet], color: usize) -> SizeChangeGraph {
        let active = self.active_in(sets, color);
        let m = active
            .iter()
            .map(|&i| sets[i].len())
            .max()
            .expect("the singleton of the color is always active");
        let arcs =
            sets.iter()
                .enumerate()
                .filter_map(|(p, set)| match (active.contains(&p), set.len()) {
                    (true, len) if len == m => Some(Arc::strict(p, p)),
                    (false, len) if len >= m => Some(Arc::nonstrict(p, p)),
                    _ => None,
                });
        SizeChangeGraph::new(FunId(0), sets.len(), FunId(0), sets.len(), arcs)
            .expect("self-arcs on distinct parameters")
    }
}

fn check_color(state: &ChoiceState, color: usize) -> Result<(), PrinciplesError> {
    if color < state.k {
        Ok(())
    } else {
        Err(PrinciplesError::ColorOutOfRange { color, k: state.k })
    }
}

pub fn chi_step(state: &ChoiceState, color: usize) -> Result<ChoiceState, PrinciplesError> {
    check_color(state, color)?;
    Ok(state.stepped(&index_sets(state.k), color))
}

/// The active family `𝒜` of `χ` and color `i`.
pub fn active_sets(state: &ChoiceState, color: usize) -> Result<Vec<IndexSet>, PrinciplesError> {
    check_color(state, color)?;
    let sets = index_sets(state.k);
    Ok(state
        .active_in(&sets, color)
        .into_iter()
        .map(|i| sets[i].clone())
        .collect())
}

/// `G_{χ,i}` over [`reduction_signature`]`(k)`.
pub fn graph_for(state: &ChoiceState, color: usize) -> Result<SizeChangeGraph, PrinciplesError> {
    check_color(state, color)?;
    Ok(state.graph_in(&index_sets(state.k), color))
}

/// All graphs `G_{χ,i}`, colors outermost and choice functions in odometer
/// order (last index set fastest), keeping the first of structurally equal
/// graphs.
pub fn spp_reduction_family(k: usize) -> Result<GraphSet, PrinciplesError> {
    check_k(k, MAX_FAMILY_K)?;
    let sets = index_sets(k);
    let mut gs = GraphSet::new(vec![reduction_signature(k)?]).expect("single signature");
    let mut seen = BTreeSet::new();
    for color in 0..k {
        let mut digits = vec![0usize; sets.len()];
        loop {
            let state = ChoiceState {
                k,
                chi: sets.iter().zip(&digits).map(|(s, &d)| s.sigma[d]).collect(),
            };
            let g = state.graph_in(&sets, color);
            if seen.insert(g.clone()) {
                gs.push(None, g).expect("graph over the family signature");
            }
            let Some(pos) = (0..sets.len())
                .rev()
                .find(|&p| digits[p] + 1 < sets[p].len())
            else {
                break;
            };
            digits[pos] += 1;
            digits[pos + 1..].fill(0);
        }
    }
    Ok(gs)
}

/// Three graphs on `z0, z1, z2`: `G_i` has the strict arc `z_i ↓ z_i` and
/// non-strict arcs `z_j ⇓ z_j` for `j > i`.
pub fn warmup_family() -> GraphSet {
    let sig = FunSig::new("Z", ["z0", "z1", "z2"]).expect("valid signature");
    let mut gs = GraphSet::new(vec![sig]).expect("single signature");
    for i in 0..3 {
        let arcs =
            std::iter::once(Arc::strict(i, i)).chain((i + 1..3).map(|j| Arc::nonstrict(j, j)));
        let g = SizeChangeGraph::new(FunId(0), 3, FunId(0), 3, arcs).expect("self-arcs");
        gs.push(Some(format!("G{i}")), g)
            .expect("graph over the warm-up signature");
    }
    gs
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReversalStep {
    pub x: usize,
    pub color: usize,
    pub chi: Vec<usize>,
    /// Positions in [`index_sets`] of the active family `𝒜_x`.
    pub active: Vec<usize>,
    /// Index of `G_x` in [`ReversalRun::graphs`].
    pub graph: usize,
}

/// The multipath `G_x = G_{χ(x),c(x)}` cut at the first repeated
/// (choice function, period position) pair. Steps `cycle_start ..
/// cycle_start + cycle_len` repeat forever.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReversalRun {
    pub k: usize,
    pub sets: Vec<IndexSet>,
    pub graphs: GraphSet,
    pub lasso: LassoMultipath,
    pub trace: Vec<ReversalStep>,
    pub cycle_start: usize,
    pub cycle_len: usize,
}

impl ReversalRun {
    pub fn cycle(&self) -> &[ReversalStep] {
        &self.trace[self.cycle_start..self.cycle_start + self.cycle_len]
    }

    /// Whether `set` is active at some step of the cycle, i.e. at infinitely
    /// many steps of the multipath.
    pub fn active_in_cycle(&self, set: &IndexSet) -> bool {
        match self.sets.iter().position(|s| s == set) {
            Some(p) => self.cycle().iter().any(|step| step.active.contains(&p)),
            None => false,
        }
    }
}

pub fn build_reversal_multipath(c: &EpColoring) -> Result<ReversalRun, PrinciplesError> {
    let k = c.k();
    check_k(k, MAX_K)?;
    let sets = index_sets(k);
    let mut graphs = GraphSet::new(vec![reduction_signature(k)?]).expect("single signature");
    let mut graph_ids: HashMap<SizeChangeGraph, usize> = HashMap::new();
    let mut seen: HashMap<(ChoiceState, usize), usize> = HashMap::new();
    let mut trace = Vec::new();
    let mut state = ChoiceState::initial(k)?;
    let plen = c.prefix().len();
    let cycle_start = loop {
        let x = trace.len();
        if x >= plen {
            let key = (state.clone(), (x - plen) % c.period().len());
            match seen.entry(key) {
                Entry::Occupied(e) => break *e.get(),
                Entry::Vacant(e) => {
                    e.insert(x);
                }
            }
        }
        let color = c.color_at(x);
        let g = state.graph_in(&sets, color);
        let graph = match graph_ids.entry(g) {
            Entry::Occupied(e) => *e.get(),
            Entry::Vacant(e) => {
                let id = graphs
                    .push(None, e.key().clone())
                    .expect("graph over the family signature");
                *e.insert(id)
            }
        };
        trace.push(ReversalStep {
            x,
            color,
            chi: state.chi.clone(),
            active: state.active_in(&sets, color),
            graph,
        });
        state = state.stepped(&sets, color);
    };
    let words: Vec<usize> = trace.iter().map(|s| s.graph).collect();
    let lasso = LassoMultipath::new(words[..cycle_start].to_vec(), words[cycle_start..].to_vec());
    let cycle_len = trace.len() - cycle_start;
    Ok(ReversalRun {
        k,
        sets,
        graphs,
        lasso,
        trace,
        cycle_start,
        cycle_len,
    })
}

/// Both sides of "every color of `I` occurs infinitely often" iff "`I` is
/// active infinitely often".
pub fn check_claim_ax(c: &EpColoring, set: &IndexSet) -> Result<(bool, bool), PrinciplesError> {
    if set.last() >= c.k() {
        return Err(PrinciplesError::ColorOutOfRange {
            color: set.last(),
            k: c.k(),
        });
    }
    let witness = spp_witness(c);
    let lhs = set.sigma().iter().all(|i| witness.contains(i));
    let rhs = build_reversal_multipath(c)?.active_in_cycle(set);
    Ok((lhs, rhs))
}

//! Size-change graphs and their composition semigroup.
//!
//! A graph `G: f -> g` relates the parameters of a caller `f` to those of a
//! callee `g`. Arcs are either strict (the value strictly decreases) or
//! non-strict (the value does not increase). Parameters are referenced by
//! index; names live on [`FunSig`] and are only used at the interfaces.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

/// Errors raised by the graph algebra.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScgError {
    #[error("cannot compose: target {left_target} of the first graph is not the source {right_source} of the second")]
    NotComposable {
        left_target: FunId,
        right_source: FunId,
    },
    #[error("graph {from} -> {to} is not cyclic (source and target differ)")]
    NotCyclic { from: FunId, to: FunId },
    #[error("arity mismatch at {fun}: {expected} vs {found}")]
    ArityMismatch {
        fun: FunId,
        expected: usize,
        found: usize,
    },
    #[error("invalid signature: {0}")]
    InvalidSignature(String),
    #[error("invalid arc: {0}")]
    InvalidArc(String),
    #[error("invalid graph set: {0}")]
    InvalidGraphSet(String),
    #[error("graph index {0} is out of range")]
    UnknownGraph(usize),
    #[error("empty word")]
    EmptyWord,
    #[error("lasso period is empty")]
    EmptyPeriod,
    #[error("domain error: {0}")]
    Domain(String),
}

/// Index of a function signature inside a [`GraphSet`] or program.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
#[serde(transparent)]
pub struct FunId(pub usize);

impl fmt::Display for FunId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Function name plus its ordered, pairwise distinct parameter names.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FunSig {
    name: String,
    params: Vec<String>,
}

impl FunSig {
    pub fn new(
        name: impl Into<String>,
        params: impl IntoIterator<Item = impl Into<String>>,
    ) -> Result<Self, ScgError> {
        let name = name.into();
        let params: Vec<String> = params.into_iter().map(Into::into).collect();
        if name.is_empty() {
            return Err(ScgError::InvalidSignature("empty function name".into()));
        }
        if params.is_empty() {
            return Err(ScgError::InvalidSignature(format!(
                "function {name} must have at least one parameter"
            )));
        }
        for (i, p) in params.iter().enumerate() {
            if p.is_empty() {
                return Err(ScgError::InvalidSignature(format!(
                    "function {name} has an empty parameter name"
                )));
            }
            if params[..i].contains(p) {
                return Err(ScgError::InvalidSignature(format!(
                    "function {name} repeats parameter {p}"
                )));
            }
        }
        Ok(FunSig { name, params })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn arity(&self) -> usize {
        self.params.len()
    }

    pub fn param_index(&self, name: &str) -> Option<usize> {
        self.params.iter().position(|p| p == name)
    }
}

/// Strict (`↓`) or non-strict (`⇓`). `NonStrict < Strict`, which is the order
/// in which composition merges parallel paths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ArcKind {
    NonStrict,
    Strict,
}

impl ArcKind {
    pub fn symbol(self) -> &'static str {
        match self {
            ArcKind::Strict => "↓",
            ArcKind::NonStrict => "⇓",
        }
    }

    pub fn keyword(self) -> &'static str {
        match self {
            ArcKind::Strict => "strict",
            ArcKind::NonStrict => "nonstrict",
        }
    }

    /// Kind of the two-step path through `self` then `next`.
    pub fn then(self, next: ArcKind) -> ArcKind {
        self.max(next)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arc {
    pub src: usize,
    pub tgt: usize,
    pub kind: ArcKind,
}

impl Arc {
    pub fn new(src: usize, kind: ArcKind, tgt: usize) -> Self {
        Arc { src, tgt, kind }
    }

    pub fn strict(src: usize, tgt: usize) -> Self {
        Arc::new(src, ArcKind::Strict, tgt)
    }

    pub fn nonstrict(src: usize, tgt: usize) -> Self {
        Arc::new(src, ArcKind::NonStrict, tgt)
    }
}

/// A bipartite arc set between two signatures.
///
/// Arcs are kept sorted by `(src, tgt)` with at most one arc per pair, so the
/// derived `Eq`/`Hash` are structural equality on graphs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SizeChangeGraph {
    source: FunId,
    target: FunId,
    source_arity: usize,
    target_arity: usize,
    arcs: Vec<Arc>,
}

impl SizeChangeGraph {
    pub fn new(
        source: FunId,
        source_arity: usize,
        target: FunId,
        target_arity: usize,
        arcs: impl IntoIterator<Item = Arc>,
    ) -> Result<Self, ScgError> {
        let mut arcs: Vec<Arc> = arcs.into_iter().collect();
        for a in &arcs {
            if a.src >= source_arity || a.tgt >= target_arity {
                return Err(ScgError::InvalidArc(format!(
                    "arc {} -> {} out of range for arities {source_arity}/{target_arity}",
                    a.src, a.tgt
                )));
            }
        }
        arcs.sort();
        if let Some(w) = arcs
            .windows(2)
            .find(|w| (w[0].src, w[0].tgt) == (w[1].src, w[1].tgt))
        {
            return Err(ScgError::InvalidArc(format!(
                "two arcs between parameters {} and {}",
                w[0].src, w[0].tgt
            )));
        }
        Ok(SizeChangeGraph {
            source,
            target,
            source_arity,
            target_arity,
            arcs,
        })
    }

    pub fn empty(source: FunId, source_arity: usize, target: FunId, target_arity: usize) -> Self {
        SizeChangeGraph {
            source,
            target,
            source_arity,
            target_arity,
            arcs: Vec::new(),
        }
    }

    /// The all-non-strict identity on `f`, neutral for composition.
    pub fn identity(f: FunId, arity: usize) -> Self {
        SizeChangeGraph {
            source: f,
            target: f,
            source_arity: arity,
            target_arity: arity,
            arcs: (0..arity).map(|p| Arc::nonstrict(p, p)).collect(),
        }
    }

    pub fn source(&self) -> FunId {
        self.source
    }

    pub fn target(&self) -> FunId {
        self.target
    }

    pub fn source_arity(&self) -> usize {
        self.source_arity
    }

    pub fn target_arity(&self) -> usize {
        self.target_arity
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc(&self, src: usize, tgt: usize) -> Option<ArcKind> {
        self.arcs
            .binary_search_by(|a| (a.src, a.tgt).cmp(&(src, tgt)))
            .ok()
            .map(|i| self.arcs[i].kind)
    }

    pub fn is_cyclic(&self) -> bool {
        self.source == self.target
    }

    /// Parameters `p` with `p ↓ p`, ascending.
    pub fn strict_self_arcs(&self) -> impl Iterator<Item = usize> + '_ {
        self.arcs
            .iter()
            .filter(|a| a.src == a.tgt && a.kind == ArcKind::Strict)
            .map(|a| a.src)
    }

    pub fn has_strict_self_arc(&self) -> bool {
        self.strict_self_arcs().next().is_some()
    }

    /// `self ; next`: an arc `x -> z` exists iff some `y` links them, and it
    /// is strict iff at least one linking path contains a strict arc.
    pub fn compose(&self, next: &SizeChangeGraph) -> Result<SizeChangeGraph, ScgError> {
        if self.target != next.source {
            return Err(ScgError::NotComposable {
                left_target: self.target,
                right_source: next.source,
            });
        }
        if self.target_arity != next.source_arity {
            return Err(ScgError::ArityMismatch {
                fun: self.target,
                expected: self.target_arity,
                found: next.source_arity,
            });
        }
        // next.arcs is sorted by src: offsets[y]..offsets[y+1] are the arcs leaving y
        let mut offsets = vec![0usize; next.source_arity + 1];
        for a in &next.arcs {
            offsets[a.src + 1] += 1;
        }
        for y in 0..next.source_arity {
            offsets[y + 1] += offsets[y];
        }
        let width = next.target_arity;
        let mut cells: Vec<Option<ArcKind>> = vec![None; self.source_arity * width];
        for first in &self.arcs {
            for second in &next.arcs[offsets[first.tgt]..offsets[first.tgt + 1]] {
                let cell = &mut cells[first.src * width + second.tgt];
                let kind = first.kind.then(second.kind);
                *cell = Some(cell.map_or(kind, |k| k.max(kind)));
            }
        }
        let arcs = cells
            .iter()
            .enumerate()
            .filter_map(|(i, k)| k.map(|kind| Arc::new(i / width, kind, i % width)))
            .collect();
        Ok(SizeChangeGraph {
            source: self.source,
            target: next.target,
            source_arity: self.source_arity,
            target_arity: next.target_arity,
            arcs,
        })
    }

    /// `G ; G = G`. Graphs whose source differs from their target are never
    /// idempotent.
    pub fn is_idempotent(&self) -> bool {
        self.is_cyclic() && self.compose(self).is_ok_and(|sq| &sq == self)
    }

    /// The unique idempotent among `g, g², g³, …` and the least exponent
    /// reaching it.
    pub fn idempotent_power(&self) -> Result<(SizeChangeGraph, usize), ScgError> {
        if !self.is_cyclic() {
            return Err(ScgError::NotCyclic {
                from: self.source,
                to: self.target,
            });
        }
        let bound = graph_count_bound(self.source_arity, self.target_arity);
        let mut power = self.clone();
        let mut exponent = 1usize;
        loop {
            let square = power.compose(&power)?;
            if square == power {
                return Ok((power, exponent));
            }
            power = power.compose(self)?;
            exponent += 1;
            debug_assert!(
                (exponent as u128) <= bound.saturating_add(1),
                "cyclic semigroup exceeded its size bound"
            );
        }
    }
}

/// Number of distinct graphs between signatures of the given arities:
/// each parameter pair carries no arc, a strict arc, or a non-strict arc.
pub fn graph_count_bound(source_arity: usize, target_arity: usize) -> u128 {
    let cells = (source_arity * target_arity) as u32;
    3u128.checked_pow(cells).unwrap_or(u128::MAX)
}

/// A finite family of signatures and graphs over them, with stable indices
/// and a unique name per graph.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GraphSet {
    sigs: Vec<FunSig>,
    graphs: Vec<SizeChangeGraph>,
    names: Vec<String>,
    by_name: HashMap<String, usize>,
}

impl GraphSet {
    pub fn new(sigs: Vec<FunSig>) -> Result<Self, ScgError> {
        for (i, s) in sigs.iter().enumerate() {
            if sigs[..i].iter().any(|t| t.name() == s.name()) {
                return Err(ScgError::InvalidGraphSet(format!(
                    "duplicate function {}",
                    s.name()
                )));
            }
        }
        Ok(GraphSet {
            sigs,
            ..Default::default()
        })
    }

    pub fn sigs(&self) -> &[FunSig] {
        &self.sigs
    }

    pub fn sig(&self, f: FunId) -> &FunSig {
        &self.sigs[f.0]
    }

    pub fn fun_by_name(&self, name: &str) -> Option<FunId> {
        self.sigs.iter().position(|s| s.name() == name).map(FunId)
    }

    pub fn graphs(&self) -> &[SizeChangeGraph] {
        &self.graphs
    }

    pub fn graph(&self, i: usize) -> Result<&SizeChangeGraph, ScgError> {
        self.graphs.get(i).ok_or(ScgError::UnknownGraph(i))
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.by_name.get(name).copied()
    }

    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    /// Adds a graph, naming it `G<index>` when no name is given.
    pub fn push(
        &mut self,
        name: Option<String>,
        graph: SizeChangeGraph,
    ) -> Result<usize, ScgError> {
        for (f, arity) in [
            (graph.source, graph.source_arity),
            (graph.target, graph.target_arity),
        ] {
            let sig = self.sigs.get(f.0).ok_or_else(|| {
                ScgError::InvalidGraphSet(format!("graph endpoint {f} is not a known function"))
            })?;
            if sig.arity() != arity {
                return Err(ScgError::ArityMismatch {
                    fun: f,
                    expected: sig.arity(),
                    found: arity,
                });
            }
        }
        let index = self.graphs.len();
        let name = name.unwrap_or_else(|| format!("G{index}"));
        if self.by_name.contains_key(&name) {
            return Err(ScgError::InvalidGraphSet(format!(
                "duplicate graph name {name}"
            )));
        }
        self.by_name.insert(name.clone(), index);
        self.names.push(name);
        self.graphs.push(graph);
        Ok(index)
    }

    /// Builds a graph over two named signatures from `(from, kind, to)` triples.
    pub fn graph_from_names(
        &self,
        source: &str,
        target: &str,
        arcs: &[(&str, ArcKind, &str)],
    ) -> Result<SizeChangeGraph, ScgError> {
        let lookup = |name: &str| {
            self.fun_by_name(name)
                .ok_or_else(|| ScgError::InvalidGraphSet(format!("unknown function {name}")))
        };
        let (s, t) = (lookup(source)?, lookup(target)?);
        let (ss, ts) = (self.sig(s), self.sig(t));
        let arcs = arcs
            .iter()
            .map(|&(from, kind, to)| {
                let src = ss.param_index(from).ok_or_else(|| {
                    ScgError::InvalidArc(format!("{source} has no parameter {from}"))
                })?;
                let tgt = ts.param_index(to).ok_or_else(|| {
                    ScgError::InvalidArc(format!("{target} has no parameter {to}"))
                })?;
                Ok(Arc::new(src, kind, tgt))
            })
            .collect::<Result<Vec<_>, ScgError>>()?;
        SizeChangeGraph::new(s, ss.arity(), t, ts.arity(), arcs)
    }

    /// Left-to-right composition of a word of graph indices.
    pub fn compose_word(&self, word: &[usize]) -> Result<SizeChangeGraph, ScgError> {
        let (&first, rest) = word.split_first().ok_or(ScgError::EmptyWord)?;
        rest.iter().try_fold(self.graph(first)?.clone(), |acc, &i| {
            acc.compose(self.graph(i)?)
        })
    }

    pub fn word_names(&self, word: &[usize]) -> Vec<String> {
        word.iter().map(|&i| self.names[i].clone()).collect()
    }

    /// Human-readable rendering, e.g. `A -> A {x↓x, y⇓y}`.
    pub fn display_graph(&self, g: &SizeChangeGraph) -> String {
        let (s, t) = (self.sig(g.source), self.sig(g.target));
        let arcs: Vec<String> = g
            .arcs
            .iter()
            .map(|a| format!("{}{}{}", s.params[a.src], a.kind.symbol(), t.params[a.tgt]))
            .collect();
        format!("{} -> {} {{{}}}", s.name, t.name, arcs.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const F: FunId = FunId(0);

    fn g(arcs: &[Arc]) -> SizeChangeGraph {
        SizeChangeGraph::new(F, 2, F, 2, arcs.iter().copied()).unwrap()
    }

    fn ack_g01() -> SizeChangeGraph {
        g(&[Arc::strict(0, 0)])
    }

    fn ack_g2() -> SizeChangeGraph {
        g(&[Arc::nonstrict(0, 0), Arc::strict(1, 1)])
    }

    fn swap() -> SizeChangeGraph {
        g(&[Arc::nonstrict(0, 1), Arc::nonstrict(1, 0)])
    }

    #[test]
    fn ackermann_compositions() {
        assert_eq!(
            ack_g01().compose(&ack_g2()).unwrap(),
            g(&[Arc::strict(0, 0)])
        );
        assert_eq!(ack_g2().compose(&ack_g01()).unwrap(), ack_g01());
        assert_eq!(ack_g2().compose(&ack_g2()).unwrap(), ack_g2());
    }

    #[test]
    fn identity_is_neutral() {
        let h = SizeChangeGraph::new(F, 2, FunId(1), 3, [Arc::strict(0, 2), Arc::nonstrict(1, 0)])
            .unwrap();
        assert_eq!(SizeChangeGraph::identity(F, 2).compose(&h).unwrap(), h);
        assert_eq!(
            h.compose(&SizeChangeGraph::identity(FunId(1), 3)).unwrap(),
            h
        );
    }

    #[test]
    fn swap_squares_to_identity() {
        let sq = swap().compose(&swap()).unwrap();
        assert_eq!(sq, g(&[Arc::nonstrict(0, 0), Arc::nonstrict(1, 1)]));
        assert!(!swap().is_idempotent());
        assert_eq!(swap().idempotent_power().unwrap(), (sq, 2));
    }

    #[test]
    fn strict_wins_over_parallel_nonstrict_paths() {
        // x⇓y, x⇓z then y⇓w, z↓w: two paths x->w, one strict
        let a =
            SizeChangeGraph::new(F, 3, F, 3, [Arc::nonstrict(0, 1), Arc::nonstrict(0, 2)]).unwrap();
        let b =
            SizeChangeGraph::new(F, 3, F, 3, [Arc::nonstrict(1, 0), Arc::strict(2, 0)]).unwrap();
        assert_eq!(a.compose(&b).unwrap().arc(0, 0), Some(ArcKind::Strict));
    }

    #[test]
    fn idempotence_examples() {
        assert!(ack_g2().is_idempotent());
        assert!(SizeChangeGraph::empty(F, 1, F, 1).is_idempotent());
        assert!(!SizeChangeGraph::empty(F, 1, FunId(1), 1).is_idempotent());
        assert_eq!(ack_g2().idempotent_power().unwrap(), (ack_g2(), 1));
        let d = g(&[Arc::strict(0, 1), Arc::strict(1, 0)]);
        assert_eq!(
            d.idempotent_power().unwrap(),
            (g(&[Arc::strict(0, 0), Arc::strict(1, 1)]), 2)
        );
    }

    #[test]
    fn composability_errors() {
        let h = SizeChangeGraph::empty(FunId(1), 2, F, 2);
        assert!(matches!(h.compose(&h), Err(ScgError::NotComposable { .. })));
        assert!(matches!(
            h.idempotent_power(),
            Err(ScgError::NotCyclic { .. })
        ));
    }

    #[test]
    fn rejects_duplicate_and_out_of_range_arcs() {
        assert!(
            SizeChangeGraph::new(F, 1, F, 1, [Arc::strict(0, 0), Arc::nonstrict(0, 0)]).is_err()
        );
        assert!(SizeChangeGraph::new(F, 1, F, 1, [Arc::strict(0, 1)]).is_err());
    }

    #[test]
    fn signatures_validate() {
        assert!(FunSig::new("f", Vec::<String>::new()).is_err());
        assert!(FunSig::new("f", ["x", "x"]).is_err());
        assert_eq!(
            FunSig::new("f", ["x", "y"]).unwrap().param_index("y"),
            Some(1)
        );
    }

    #[test]
    fn graph_set_names_and_words() {
        let mut gs = GraphSet::new(vec![FunSig::new("A", ["x", "y"]).unwrap()]).unwrap();
        let g01 = gs
            .graph_from_names("A", "A", &[("x", ArcKind::Strict, "x")])
            .unwrap();
        let g2 = gs
            .graph_from_names(
                "A",
                "A",
                &[("x", ArcKind::NonStrict, "x"), ("y", ArcKind::Strict, "y")],
            )
            .unwrap();
        gs.push(Some("G01".into()), g01.clone()).unwrap();
        gs.push(None, g2).unwrap();
        assert_eq!(gs.name(1), "G1");
        assert!(gs.push(Some("G01".into()), g01.clone()).is_err());
        assert_eq!(gs.compose_word(&[0, 1]).unwrap(), g01);
        assert_eq!(gs.display_graph(&g01), "A -> A {x↓x}");
        assert_eq!(gs.compose_word(&[]), Err(ScgError::EmptyWord));
    }

    #[test]
    fn count_bound() {
        assert_eq!(graph_count_bound(2, 2), 81);
        assert_eq!(graph_count_bound(1, 3), 27);
    }
}

use crate::graph::FunId;

use super::ast::{BoolExpr, CallSiteId, CondExpr, Expr, Program};

/// A branch condition on the path to a call, with the branch taken.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Fact {
    pub cond: BoolExpr,
    pub positive: bool,
}

/// Branch conditions enclosing a call site, outermost first.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct GuardContext {
    pub facts: Vec<Fact>,
}

impl GuardContext {
    /// Whether the facts syntactically entail `param > 0`. Only these rules
    /// apply: `¬(x=0)`, `x=1`, `y<x`, and `x=c` with `c ≥ 1`. A leading `¬`
    /// flips the polarity of a fact.
    pub fn implies_positive(&self, param: usize) -> bool {
        self.facts
            .iter()
            .any(|f| entails_positive(&f.cond, f.positive, param))
    }
}

fn entails_positive(cond: &BoolExpr, positive: bool, x: usize) -> bool {
    match (cond, positive) {
        (BoolExpr::Not(inner), _) => entails_positive(inner, !positive, x),
        (BoolExpr::EqZero(p), false) => *p == x,
        (BoolExpr::EqOne(p), true) => *p == x,
        (BoolExpr::EqConst(p, c), true) => *p == x && *c >= 1,
        (BoolExpr::Lt(_, p), true) => *p == x,
        _ => false,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CallSite {
    pub id: CallSiteId,
    pub caller: FunId,
    pub callee: FunId,
    pub args: Vec<Expr>,
    pub guard: GuardContext,
}

/// All call sites in document order. Entering a then-branch records the
/// condition positively and an else-branch negatively; calls nested in
/// arguments share the guard of the enclosing call.
pub fn enumerate_call_sites(p: &Program) -> Vec<CallSite> {
    let mut out = Vec::with_capacity(p.call_site_count());
    for (i, d) in p.defs().iter().enumerate() {
        let mut guard = GuardContext::default();
        walk_cond(&d.body, FunId(i), &mut guard, &mut out);
    }
    debug_assert!(out.iter().enumerate().all(|(i, s)| s.id == CallSiteId(i)));
    out
}

fn walk_cond(c: &CondExpr, caller: FunId, guard: &mut GuardContext, out: &mut Vec<CallSite>) {
    match c {
        CondExpr::Leaf(e) => walk_expr(e, caller, guard, out),
        CondExpr::If(b, t, e) => {
            for (branch, positive) in [(t, true), (e, false)] {
                guard.facts.push(Fact {
                    cond: b.clone(),
                    positive,
                });
                walk_cond(branch, caller, guard, out);
                guard.facts.pop();
            }
        }
    }
}

fn walk_expr(e: &Expr, caller: FunId, guard: &GuardContext, out: &mut Vec<CallSite>) {
    match e {
        Expr::Var(_) | Expr::Const(_) | Expr::Succ(_) | Expr::Pred(_) => {}
        Expr::Prim(_, args) => args.iter().for_each(|a| walk_expr(a, caller, guard, out)),
        Expr::Call { callee, args, site } => {
            out.push(CallSite {
                id: *site,
                caller,
                callee: *callee,
                args: args.clone(),
                guard: guard.clone(),
            });
            args.iter().for_each(|a| walk_expr(a, caller, guard, out));
        }
    }
}

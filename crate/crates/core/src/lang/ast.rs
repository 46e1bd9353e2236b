use std::collections::HashSet;
use std::fmt;

use crate::graph::{FunId, FunSig};

use super::{Diagnostic, LangError};

/// Call sites are numbered in document order across the whole program.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CallSiteId(pub usize);

impl fmt::Display for CallSiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tau{}", self.0)
    }
}

/// Primitive operators. All are binary and total on the naturals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PrimOp {
    Plus,
    Times,
    Max,
    Min,
}

impl PrimOp {
    pub const ALL: [PrimOp; 4] = [PrimOp::Plus, PrimOp::Times, PrimOp::Max, PrimOp::Min];

    pub fn name(self) -> &'static str {
        match self {
            PrimOp::Plus => "plus",
            PrimOp::Times => "times",
            PrimOp::Max => "max",
            PrimOp::Min => "min",
        }
    }

    pub fn from_name(name: &str) -> Option<PrimOp> {
        PrimOp::ALL.into_iter().find(|op| op.name() == name)
    }

    pub fn arity(self) -> usize {
        2
    }
}

/// Arithmetic expressions. Parameters are indices into the enclosing
/// function's parameter list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Var(usize),
    /// Numeric literal; the Ackermann-style `A(x-1, 1)` needs it.
    Const(u64),
    Succ(usize),
    /// `x - 1` with monus semantics.
    Pred(usize),
    Prim(PrimOp, Vec<Expr>),
    Call {
        callee: FunId,
        args: Vec<Expr>,
        site: CallSiteId,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BoolExpr {
    EqZero(usize),
    EqOne(usize),
    /// `x = c` for `c >= 2`; an extension used by synthesized dispatch code.
    EqConst(usize, u64),
    Lt(usize, usize),
    Le(usize, usize),
    And(Box<BoolExpr>, Box<BoolExpr>),
    Or(Box<BoolExpr>, Box<BoolExpr>),
    Not(Box<BoolExpr>),
}

impl BoolExpr {
    /// `x = c` in its canonical constructor.
    pub fn eq_const(param: usize, c: u64) -> BoolExpr {
        match c {
            0 => BoolExpr::EqZero(param),
            1 => BoolExpr::EqOne(param),
            c => BoolExpr::EqConst(param, c),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CondExpr {
    Leaf(Expr),
    If(BoolExpr, Box<CondExpr>, Box<CondExpr>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FunDef {
    pub sig: FunSig,
    pub body: CondExpr,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Program {
    defs: Vec<FunDef>,
    initial: FunId,
    call_sites: usize,
}

pub const KEYWORDS: [&str; 3] = ["if", "then", "else"];

pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
        && !KEYWORDS.contains(&s)
}

impl Program {
    /// Validates the definitions and renumbers call sites in document order
    /// (pre-order, left to right, definition by definition).
    pub fn new(mut defs: Vec<FunDef>, initial: FunId) -> Result<Program, LangError> {
        let mut diags = Vec::new();
        if defs.is_empty() {
            diags.push(Diagnostic::general("program has no definitions"));
        }
        if initial.0 >= defs.len().max(1) {
            diags.push(Diagnostic::general(format!(
                "initial function index {} out of range",
                initial.0
            )));
        }
        let mut seen = HashSet::new();
        for d in &defs {
            let name = d.sig.name();
            if !is_identifier(name) || PrimOp::from_name(name).is_some() {
                diags.push(Diagnostic::general(format!(
                    "`{name}` is not a valid function name"
                )));
            }
            if !seen.insert(name) {
                diags.push(Diagnostic::general(format!("duplicate function `{name}`")));
            }
            for p in d.sig.params() {
                if !is_identifier(p) {
                    diags.push(Diagnostic::general(format!(
                        "`{p}` is not a valid parameter name in `{name}`"
                    )));
                }
            }
        }
        let arities: Vec<usize> = defs.iter().map(|d| d.sig.arity()).collect();
        for d in &defs {
            check_cond(&d.body, &d.sig, &arities, &mut diags);
        }
        if !diags.is_empty() {
            return Err(LangError::Invalid(diags));
        }
        let mut next = 0;
        for d in &mut defs {
            relabel_cond(&mut d.body, &mut next);
        }
        Ok(Program {
            defs,
            initial,
            call_sites: next,
        })
    }

    pub fn defs(&self) -> &[FunDef] {
        &self.defs
    }

    pub fn def(&self, f: FunId) -> &FunDef {
        &self.defs[f.0]
    }

    pub fn initial(&self) -> FunId {
        self.initial
    }

    pub fn lookup(&self, name: &str) -> Option<FunId> {
        self.defs
            .iter()
            .position(|d| d.sig.name() == name)
            .map(FunId)
    }

    pub fn sigs(&self) -> Vec<FunSig> {
        self.defs.iter().map(|d| d.sig.clone()).collect()
    }

    pub fn call_site_count(&self) -> usize {
        self.call_sites
    }
}

fn check_param(p: usize, sig: &FunSig, diags: &mut Vec<Diagnostic>) {
    if p >= sig.arity() {
        diags.push(Diagnostic::general(format!(
            "parameter index {p} out of range in `{}`",
            sig.name()
        )));
    }
}

fn check_bool(b: &BoolExpr, sig: &FunSig, diags: &mut Vec<Diagnostic>) {
    match b {
        BoolExpr::EqZero(x) | BoolExpr::EqOne(x) | BoolExpr::EqConst(x, _) => {
            check_param(*x, sig, diags)
        }
        BoolExpr::Lt(x, y) | BoolExpr::Le(x, y) => {
            check_param(*x, sig, diags);
            check_param(*y, sig, diags);
        }
        BoolExpr::And(l, r) | BoolExpr::Or(l, r) => {
            check_bool(l, sig, diags);
            check_bool(r, sig, diags);
        }
        BoolExpr::Not(b) => check_bool(b, sig, diags),
    }
}

fn check_expr(e: &Expr, sig: &FunSig, arities: &[usize], diags: &mut Vec<Diagnostic>) {
    match e {
        Expr::Var(x) | Expr::Succ(x) | Expr::Pred(x) => check_param(*x, sig, diags),
        Expr::Const(_) => {}
        Expr::Prim(op, args) => {
            if args.len() != op.arity() {
                diags.push(Diagnostic::general(format!(
                    "`{}` expects {} arguments, got {}",
                    op.name(),
                    op.arity(),
                    args.len()
                )));
            }
            args.iter().for_each(|a| check_expr(a, sig, arities, diags));
        }
        Expr::Call { callee, args, .. } => {
            match arities.get(callee.0) {
                None => diags.push(Diagnostic::general(format!(
                    "call to unknown function index {}",
                    callee.0
                ))),
                Some(&n) if n != args.len() => diags.push(Diagnostic::general(format!(
                    "call from `{}` passes {} arguments to a function of arity {n}",
                    sig.name(),
                    args.len()
                ))),
                Some(_) => {}
            }
            args.iter().for_each(|a| check_expr(a, sig, arities, diags));
        }
    }
}

fn check_cond(c: &CondExpr, sig: &FunSig, arities: &[usize], diags: &mut Vec<Diagnostic>) {
    match c {
        CondExpr::Leaf(e) => check_expr(e, sig, arities, diags),
        CondExpr::If(b, t, e) => {
            check_bool(b, sig, diags);
            check_cond(t, sig, arities, diags);
            check_cond(e, sig, arities, diags);
        }
    }
}

fn relabel_expr(e: &mut Expr, next: &mut usize) {
    match e {
        Expr::Var(_) | Expr::Const(_) | Expr::Succ(_) | Expr::Pred(_) => {}
        Expr::Prim(_, args) => args.iter_mut().for_each(|a| relabel_expr(a, next)),
        Expr::Call { args, site, .. } => {
            *site = CallSiteId(*next);
            *next += 1;
            args.iter_mut().for_each(|a| relabel_expr(a, next));
        }
    }
}

fn relabel_cond(c: &mut CondExpr, next: &mut usize) {
    match c {
        CondExpr::Leaf(e) => relabel_expr(e, next),
        CondExpr::If(_, t, e) => {
            relabel_cond(t, next);
            relabel_cond(e, next);
        }
    }
}

// Pretty printing. The output re-parses to an identical AST.

struct WithSig<'a, T> {
    node: &'a T,
    sig: &'a FunSig,
    program: &'a Program,
}

impl<'a, T> WithSig<'a, T> {
    fn with<U>(&self, node: &'a U) -> WithSig<'a, U> {
        WithSig {
            node,
            sig: self.sig,
            program: self.program,
        }
    }

    fn param(&self, i: usize) -> &'a str {
        &self.sig.params()[i]
    }
}

impl WithSig<'_, Expr> {
    fn write_call(&self, f: &mut fmt::Formatter<'_>, name: &str, args: &[Expr]) -> fmt::Result {
        write!(f, "{name}(")?;
        for (i, a) in args.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", self.with(a))?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for WithSig<'_, Expr> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node {
            Expr::Var(x) => write!(f, "{}", self.param(*x)),
            Expr::Const(c) => write!(f, "{c}"),
            Expr::Succ(x) => write!(f, "{} + 1", self.param(*x)),
            Expr::Pred(x) => write!(f, "{} - 1", self.param(*x)),
            Expr::Prim(op, args) => self.write_call(f, op.name(), args),
            Expr::Call { callee, args, .. } => {
                self.write_call(f, self.program.def(*callee).sig.name(), args)
            }
        }
    }
}

impl WithSig<'_, BoolExpr> {
    // Binary operands are parenthesized unless they are a left operand of the
    // same connective (the parser is left associative).
    fn write_operand(
        &self,
        f: &mut fmt::Formatter<'_>,
        child: &BoolExpr,
        bare: bool,
    ) -> fmt::Result {
        let compound = matches!(child, BoolExpr::And(..) | BoolExpr::Or(..));
        if compound && !bare {
            write!(f, "({})", self.with(child))
        } else {
            write!(f, "{}", self.with(child))
        }
    }
}

impl fmt::Display for WithSig<'_, BoolExpr> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node {
            BoolExpr::EqZero(x) => write!(f, "{} = 0", self.param(*x)),
            BoolExpr::EqOne(x) => write!(f, "{} = 1", self.param(*x)),
            BoolExpr::EqConst(x, c) => write!(f, "{} = {c}", self.param(*x)),
            BoolExpr::Lt(x, y) => write!(f, "{} < {}", self.param(*x), self.param(*y)),
            BoolExpr::Le(x, y) => write!(f, "{} <= {}", self.param(*x), self.param(*y)),
            BoolExpr::And(l, r) => {
                self.write_operand(f, l, matches!(**l, BoolExpr::And(..)))?;
                write!(f, " && ")?;
                self.write_operand(f, r, false)
            }
            BoolExpr::Or(l, r) => {
                self.write_operand(f, l, matches!(**l, BoolExpr::Or(..)))?;
                write!(f, " || ")?;
                self.write_operand(f, r, false)
            }
            BoolExpr::Not(inner) => write!(f, "!({})", self.with(&**inner)),
        }
    }
}

impl fmt::Display for WithSig<'_, CondExpr> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node {
            CondExpr::Leaf(e) => write!(f, "{}", self.with(e)),
            CondExpr::If(b, t, e) => write!(
                f,
                "if {} then {} else {}",
                self.with(b),
                self.with(&**t),
                self.with(&**e)
            ),
        }
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.defs {
            writeln!(
                f,
                "{}({}) = {}",
                d.sig.name(),
                d.sig.params().join(", "),
                WithSig {
                    node: &d.body,
                    sig: &d.sig,
                    program: self
                }
            )?;
        }
        Ok(())
    }
}

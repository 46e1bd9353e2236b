//! Recursive-descent parser for program text.
//!
//! ```text
//! program ::= def (';'? def)* ';'?
//! def     ::= f '(' x (',' x)* ')' '=' cond
//! cond    ::= 'if' bool 'then' cond 'else' cond | aexp
//! aexp    ::= n | x | x '+' 1 | x '-' 1 | op '(' aexp, … ')' | f '(' aexp, … ')'
//! bool    ::= and ('||' and)*
//! and     ::= unary ('&&' unary)*
//! unary   ::= '!' unary | '(' bool ')' | x '=' n | x '<' y | x '<=' y
//! ```

use std::collections::HashMap;

use crate::graph::{FunId, FunSig};

use super::ast::{BoolExpr, CallSiteId, CondExpr, Expr, FunDef, PrimOp, Program};
use super::lexer::{lex, Tok, Token};
use super::{Diagnostic, LangError};

struct PendingCall {
    name: String,
    argc: usize,
    line: usize,
    column: usize,
}

struct Parser<'t> {
    tokens: &'t [Token],
    pos: usize,
    eof: (usize, usize),
    pending: Vec<PendingCall>,
    diags: Vec<Diagnostic>,
}

type PResult<T> = Result<T, Diagnostic>;

impl<'t> Parser<'t> {
    fn peek(&self) -> Option<&'t Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn peek_at(&self, offset: usize) -> Option<&'t Tok> {
        self.tokens.get(self.pos + offset).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.tokens
            .get(self.pos)
            .map_or(self.eof, |t| (t.line, t.column))
    }

    fn error<T>(&self, msg: impl Into<String>) -> PResult<T> {
        let (l, c) = self.here();
        Err(Diagnostic::at(l, c, msg))
    }

    fn unexpected<T>(&self, wanted: &str) -> PResult<T> {
        match self.peek() {
            Some(t) => self.error(format!("expected {wanted}, found {}", t.describe())),
            None => self.error(format!("expected {wanted}, found end of input")),
        }
    }

    fn expect(&mut self, tok: Tok) -> PResult<()> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            self.unexpected(&tok.describe())
        }
    }

    fn ident(&mut self) -> PResult<String> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(s.clone())
            }
            _ => self.unexpected("an identifier"),
        }
    }

    fn param(&mut self, sig: &FunSig) -> PResult<usize> {
        let (l, c) = self.here();
        let name = self.ident()?;
        Ok(sig.param_index(&name).unwrap_or_else(|| {
            self.diags.push(Diagnostic::at(
                l,
                c,
                format!("unknown parameter `{name}` in `{}`", sig.name()),
            ));
            0
        }))
    }

    fn program(&mut self) -> PResult<Vec<(FunDef, (usize, usize))>> {
        let mut defs = Vec::new();
        if self.peek().is_none() {
            return self.error("expected a function definition, found end of input");
        }
        while self.peek().is_some() {
            defs.push(self.def()?);
            if self.peek() == Some(&Tok::Semi) {
                self.pos += 1;
            }
        }
        Ok(defs)
    }

    fn def(&mut self) -> PResult<(FunDef, (usize, usize))> {
        let at = self.here();
        let name = self.ident()?;
        if PrimOp::from_name(&name).is_some() {
            self.diags.push(Diagnostic::at(
                at.0,
                at.1,
                format!("`{name}` is a primitive operator and cannot be redefined"),
            ));
        }
        self.expect(Tok::LParen)?;
        let mut params = vec![self.ident()?];
        while self.peek() == Some(&Tok::Comma) {
            self.pos += 1;
            let (l, c) = self.here();
            let p = self.ident()?;
            if params.contains(&p) {
                self.diags
                    .push(Diagnostic::at(l, c, format!("duplicate parameter `{p}`")));
            } else {
                params.push(p);
            }
        }
        self.expect(Tok::RParen)?;
        self.expect(Tok::Eq)?;
        let sig =
            FunSig::new(name, params).map_err(|e| Diagnostic::at(at.0, at.1, e.to_string()))?;
        let body = self.cond(&sig)?;
        Ok((FunDef { sig, body }, at))
    }

    fn cond(&mut self, sig: &FunSig) -> PResult<CondExpr> {
        if self.peek() == Some(&Tok::If) {
            self.pos += 1;
            let b = self.bool_or(sig)?;
            self.expect(Tok::Then)?;
            let t = self.cond(sig)?;
            self.expect(Tok::Else)?;
            let e = self.cond(sig)?;
            Ok(CondExpr::If(b, Box::new(t), Box::new(e)))
        } else {
            Ok(CondExpr::Leaf(self.aexp(sig)?))
        }
    }

    fn args(&mut self, sig: &FunSig) -> PResult<Vec<Expr>> {
        self.expect(Tok::LParen)?;
        let mut args = vec![self.aexp(sig)?];
        while self.peek() == Some(&Tok::Comma) {
            self.pos += 1;
            args.push(self.aexp(sig)?);
        }
        self.expect(Tok::RParen)?;
        Ok(args)
    }

    fn aexp(&mut self, sig: &FunSig) -> PResult<Expr> {
        let (l, c) = self.here();
        match self.peek() {
            Some(Tok::Number(n)) => {
                self.pos += 1;
                Ok(Expr::Const(*n))
            }
            Some(Tok::Ident(name)) if self.peek_at(1) == Some(&Tok::LParen) => {
                self.pos += 1;
                if let Some(op) = PrimOp::from_name(name) {
                    let args = self.args(sig)?;
                    if args.len() != op.arity() {
                        self.diags.push(Diagnostic::at(
                            l,
                            c,
                            format!(
                                "`{}` expects {} arguments, got {}",
                                op.name(),
                                op.arity(),
                                args.len()
                            ),
                        ));
                    }
                    return Ok(Expr::Prim(op, args));
                }
                // pre-order numbering: the call is labelled before its arguments
                let site = CallSiteId(self.pending.len());
                self.pending.push(PendingCall {
                    name: name.clone(),
                    argc: 0,
                    line: l,
                    column: c,
                });
                let args = self.args(sig)?;
                self.pending[site.0].argc = args.len();
                Ok(Expr::Call {
                    callee: FunId(usize::MAX),
                    args,
                    site,
                })
            }
            Some(Tok::Ident(_)) => {
                let x = self.param(sig)?;
                let op = match self.peek() {
                    Some(Tok::Plus) => Expr::Succ(x),
                    Some(Tok::Minus) => Expr::Pred(x),
                    _ => return Ok(Expr::Var(x)),
                };
                self.pos += 1;
                match self.peek() {
                    Some(Tok::Number(1)) => {
                        self.pos += 1;
                        Ok(op)
                    }
                    _ => self.unexpected("`1` (only `x + 1` and `x - 1` are supported)"),
                }
            }
            _ => self.unexpected("an arithmetic expression"),
        }
    }

    fn bool_or(&mut self, sig: &FunSig) -> PResult<BoolExpr> {
        let mut lhs = self.bool_and(sig)?;
        while self.peek() == Some(&Tok::Or) {
            self.pos += 1;
            lhs = BoolExpr::Or(Box::new(lhs), Box::new(self.bool_and(sig)?));
        }
        Ok(lhs)
    }

    fn bool_and(&mut self, sig: &FunSig) -> PResult<BoolExpr> {
        let mut lhs = self.bool_unary(sig)?;
        while self.peek() == Some(&Tok::And) {
            self.pos += 1;
            lhs = BoolExpr::And(Box::new(lhs), Box::new(self.bool_unary(sig)?));
        }
        Ok(lhs)
    }

    fn bool_unary(&mut self, sig: &FunSig) -> PResult<BoolExpr> {
        match self.peek() {
            Some(Tok::Not) => {
                self.pos += 1;
                Ok(BoolExpr::Not(Box::new(self.bool_unary(sig)?)))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let b = self.bool_or(sig)?;
                self.expect(Tok::RParen)?;
                Ok(b)
            }
            Some(Tok::Ident(_)) => {
                let x = self.param(sig)?;
                match self.peek() {
                    Some(Tok::Eq) => {
                        self.pos += 1;
                        match self.peek() {
                            Some(Tok::Number(n)) => {
                                self.pos += 1;
                                Ok(BoolExpr::eq_const(x, *n))
                            }
                            _ => self.unexpected("a number"),
                        }
                    }
                    Some(Tok::Lt) => {
                        self.pos += 1;
                        Ok(BoolExpr::Lt(x, self.param(sig)?))
                    }
                    Some(Tok::Le) => {
                        self.pos += 1;
                        Ok(BoolExpr::Le(x, self.param(sig)?))
                    }
                    _ => self.unexpected("`=`, `<` or `<=`"),
                }
            }
            _ => self.unexpected("a condition"),
        }
    }
}

fn resolve_expr(e: &mut Expr, targets: &[Option<FunId>]) {
    match e {
        Expr::Var(_) | Expr::Const(_) | Expr::Succ(_) | Expr::Pred(_) => {}
        Expr::Prim(_, args) => args.iter_mut().for_each(|a| resolve_expr(a, targets)),
        Expr::Call { callee, args, site } => {
            if let Some(f) = targets[site.0] {
                *callee = f;
            }
            args.iter_mut().for_each(|a| resolve_expr(a, targets));
        }
    }
}

fn resolve_cond(c: &mut CondExpr, targets: &[Option<FunId>]) {
    match c {
        CondExpr::Leaf(e) => resolve_expr(e, targets),
        CondExpr::If(_, t, e) => {
            resolve_cond(t, targets);
            resolve_cond(e, targets);
        }
    }
}

/// Parses and validates program text. The first function is the initial one.
pub fn parse_program(text: &str) -> Result<Program, LangError> {
    let tokens = lex(text).map_err(LangError::Syntax)?;
    let eof = text
        .lines()
        .enumerate()
        .last()
        .map_or((1, 1), |(i, l)| (i + 1, l.chars().count() + 1));
    let mut p = Parser {
        tokens: &tokens,
        pos: 0,
        eof,
        pending: Vec::new(),
        diags: Vec::new(),
    };
    let parsed = p.program().map_err(LangError::Syntax)?;
    let mut diags = std::mem::take(&mut p.diags);

    let mut by_name: HashMap<&str, FunId> = HashMap::new();
    for (i, (d, (l, c))) in parsed.iter().enumerate() {
        if by_name.insert(d.sig.name(), FunId(i)).is_some() {
            diags.push(Diagnostic::at(
                *l,
                *c,
                format!("duplicate function `{}`", d.sig.name()),
            ));
        }
    }
    let targets: Vec<Option<FunId>> = p
        .pending
        .iter()
        .map(|call| match by_name.get(call.name.as_str()) {
            None => {
                diags.push(Diagnostic::at(
                    call.line,
                    call.column,
                    format!("call to undefined function `{}`", call.name),
                ));
                None
            }
            Some(&f) => {
                let arity = parsed[f.0].0.sig.arity();
                if arity != call.argc {
                    diags.push(Diagnostic::at(
                        call.line,
                        call.column,
                        format!(
                            "`{}` expects {arity} arguments, got {}",
                            call.name, call.argc
                        ),
                    ));
                }
                Some(f)
            }
        })
        .collect();
    if !diags.is_empty() {
        return Err(LangError::Invalid(diags));
    }
    let defs = parsed
        .into_iter()
        .map(|(mut d, _)| {
            resolve_cond(&mut d.body, &targets);
            d
        })
        .collect();
    Program::new(defs, FunId(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    const ACK: &str =
        "A(x,y) = if x=0 then y+1 else\n  if y=0 then A(x-1,1)\n  else A(x-1,A(x,y-1))\n";

    fn call(callee: usize, site: usize, args: Vec<Expr>) -> Expr {
        Expr::Call {
            callee: FunId(callee),
            args,
            site: CallSiteId(site),
        }
    }

    #[test]
    fn ackermann_structure() {
        let p = parse_program(ACK).unwrap();
        assert_eq!(p.defs().len(), 1);
        assert_eq!(p.call_site_count(), 3);
        let expected = CondExpr::If(
            BoolExpr::EqZero(0),
            Box::new(CondExpr::Leaf(Expr::Succ(1))),
            Box::new(CondExpr::If(
                BoolExpr::EqZero(1),
                Box::new(CondExpr::Leaf(call(
                    0,
                    0,
                    vec![Expr::Pred(0), Expr::Const(1)],
                ))),
                Box::new(CondExpr::Leaf(call(
                    0,
                    1,
                    vec![Expr::Pred(0), call(0, 2, vec![Expr::Var(0), Expr::Pred(1)])],
                ))),
            )),
        );
        assert_eq!(p.defs()[0].body, expected);
    }

    #[test]
    fn empty_input_is_a_syntax_error() {
        assert!(matches!(parse_program(""), Err(LangError::Syntax(_))));
        assert!(matches!(
            parse_program("  # only a comment\n"),
            Err(LangError::Syntax(_))
        ));
    }

    #[test]
    fn undefined_callee() {
        let err = parse_program("f(x)=g(x,x)").unwrap_err();
        let LangError::Invalid(diags) = err else {
            panic!("expected validation error")
        };
        assert_eq!(diags.len(), 1);
        assert!(diags[0].message.contains("undefined function `g`"));
        assert_eq!((diags[0].line, diags[0].column), (Some(1), Some(6)));
    }

    #[test]
    fn validation_diagnostics() {
        for (src, needle) in [
            ("f(x) = y", "unknown parameter `y`"),
            ("f(x) = x\nf(y) = y", "duplicate function `f`"),
            ("f(x, x) = x", "duplicate parameter"),
            ("f(x) = g(x)\ng(x, y) = x", "expects 2 arguments"),
            ("f(x) = plus(x)", "expects 2 arguments"),
            ("max(x) = x", "primitive operator"),
        ] {
            let err = parse_program(src).unwrap_err();
            assert!(
                err.to_string().contains(needle),
                "{src}: {err} does not mention {needle}"
            );
        }
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let LangError::Syntax(d) = parse_program("f(x) = x + 2").unwrap_err() else {
            panic!()
        };
        assert_eq!((d.line, d.column), (Some(1), Some(12)));
        assert!(matches!(
            parse_program("f(x) = if x = 0 then x"),
            Err(LangError::Syntax(_))
        ));
        assert!(matches!(
            parse_program("f() = 1"),
            Err(LangError::Syntax(_))
        ));
    }

    #[test]
    fn separators_and_connectives() {
        let p =
            parse_program("f(x, y) = if x < y && !(y = 3) || x <= y then g(y) else x; g(z) = z")
                .unwrap();
        assert_eq!(p.defs().len(), 2);
        let CondExpr::If(b, _, _) = &p.defs()[0].body else {
            panic!()
        };
        assert_eq!(
            *b,
            BoolExpr::Or(
                Box::new(BoolExpr::And(
                    Box::new(BoolExpr::Lt(0, 1)),
                    Box::new(BoolExpr::Not(Box::new(BoolExpr::EqConst(1, 3))))
                )),
                Box::new(BoolExpr::Le(0, 1))
            )
        );
    }

    #[test]
    fn pretty_print_reparses() {
        let p = parse_program(ACK).unwrap();
        let text = p.to_string();
        assert_eq!(
            text,
            "A(x, y) = if x = 0 then y + 1 else if y = 0 then A(x - 1, 1) else A(x - 1, A(x, y - 1))\n"
        );
        assert_eq!(parse_program(&text).unwrap(), p);
    }
}

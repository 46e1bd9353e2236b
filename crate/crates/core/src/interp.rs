//! Fueled call-by-value evaluation over the naturals, state-transition
//! tracing, and randomized safety sampling of descriptions.
//!
//! Evaluation runs on an explicit task stack, so deep recursion is bounded by
//! fuel rather than by the host stack. Fuel is spent once per function entry,
//! including the initial one.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::extract::Description;
use crate::graph::{ArcKind, FunId};
use crate::lang::{BoolExpr, CallSiteId, CondExpr, Expr, PrimOp, Program};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("out of fuel")]
    OutOfFuel,
    #[error("unknown function `{0}`")]
    UnknownFunction(String),
    #[error("`{name}` expects {expected} arguments, got {found}")]
    ArityMismatch {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("arithmetic overflow")]
    Overflow,
}

/// A program state `(f, u)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct State {
    pub fun: FunId,
    pub values: Vec<u64>,
}

/// `(f, u) -τ-> (g, v)` where `v` are the evaluated arguments of call site `τ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transition {
    pub from: State,
    pub site: CallSiteId,
    pub to: State,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceStop {
    Returned(u64),
    OutOfFuel,
    Truncated,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub transitions: Vec<Transition>,
    pub stop: TraceStop,
}

enum Task<'p> {
    Cond(&'p CondExpr),
    Expr(&'p Expr),
    Prim(PrimOp, usize),
    Call {
        callee: FunId,
        argc: usize,
        site: CallSiteId,
    },
    Return,
}

enum Outcome {
    Returned(u64),
    OutOfFuel,
    Stopped,
}

fn eval_bool(b: &BoolExpr, env: &[u64]) -> bool {
    match b {
        BoolExpr::EqZero(x) => env[*x] == 0,
        BoolExpr::EqOne(x) => env[*x] == 1,
        BoolExpr::EqConst(x, c) => env[*x] == *c,
        BoolExpr::Lt(x, y) => env[*x] < env[*y],
        BoolExpr::Le(x, y) => env[*x] <= env[*y],
        // both operands are evaluated; atoms have no effects
        BoolExpr::And(l, r) => {
            let (l, r) = (eval_bool(l, env), eval_bool(r, env));
            l && r
        }
        BoolExpr::Or(l, r) => {
            let (l, r) = (eval_bool(l, env), eval_bool(r, env));
            l || r
        }
        BoolExpr::Not(b) => !eval_bool(b, env),
    }
}

fn apply_prim(op: PrimOp, args: &[u64]) -> Result<u64, EvalError> {
    let (a, b) = (args[0], args[1]);
    match op {
        PrimOp::Plus => a.checked_add(b).ok_or(EvalError::Overflow),
        PrimOp::Times => a.checked_mul(b).ok_or(EvalError::Overflow),
        PrimOp::Max => Ok(a.max(b)),
        PrimOp::Min => Ok(a.min(b)),
    }
}

/// Runs `start` to completion, reporting each transition to `observe` as
/// soon as the call's arguments are evaluated. `observe` returning `false`
/// stops the run.
fn run(
    p: &Program,
    start: &State,
    mut fuel: u64,
    observe: &mut dyn FnMut(&Transition) -> bool,
) -> Result<Outcome, EvalError> {
    let def = p
        .defs()
        .get(start.fun.0)
        .ok_or_else(|| EvalError::UnknownFunction(format!("#{}", start.fun.0)))?;
    if def.sig.arity() != start.values.len() {
        return Err(EvalError::ArityMismatch {
            name: def.sig.name().to_string(),
            expected: def.sig.arity(),
            found: start.values.len(),
        });
    }
    if fuel == 0 {
        return Ok(Outcome::OutOfFuel);
    }
    fuel -= 1;
    let mut frames: Vec<State> = vec![start.clone()];
    let mut values: Vec<u64> = Vec::new();
    let mut tasks: Vec<Task<'_>> = vec![Task::Return, Task::Cond(&def.body)];
    while let Some(task) = tasks.pop() {
        let env = &frames
            .last()
            .expect("a frame is live while tasks remain")
            .values;
        match task {
            Task::Cond(CondExpr::Leaf(e)) => tasks.push(Task::Expr(e)),
            Task::Cond(CondExpr::If(b, t, e)) => {
                tasks.push(Task::Cond(if eval_bool(b, env) { t } else { e }));
            }
            Task::Expr(e) => match e {
                Expr::Var(x) => values.push(env[*x]),
                Expr::Const(c) => values.push(*c),
                Expr::Succ(x) => values.push(env[*x].checked_add(1).ok_or(EvalError::Overflow)?),
                Expr::Pred(x) => values.push(env[*x].saturating_sub(1)),
                Expr::Prim(op, args) => {
                    tasks.push(Task::Prim(*op, args.len()));
                    tasks.extend(args.iter().rev().map(Task::Expr));
                }
                Expr::Call { callee, args, site } => {
                    tasks.push(Task::Call {
                        callee: *callee,
                        argc: args.len(),
                        site: *site,
                    });
                    tasks.extend(args.iter().rev().map(Task::Expr));
                }
            },
            Task::Prim(op, argc) => {
                let args = values.split_off(values.len() - argc);
                values.push(apply_prim(op, &args)?);
            }
            Task::Call { callee, argc, site } => {
                let args = values.split_off(values.len() - argc);
                let transition = Transition {
                    from: frames.last().expect("caller frame").clone(),
                    site,
                    to: State {
                        fun: callee,
                        values: args,
                    },
                };
                if !observe(&transition) {
                    return Ok(Outcome::Stopped);
                }
                if fuel == 0 {
                    return Ok(Outcome::OutOfFuel);
                }
                fuel -= 1;
                tasks.push(Task::Return);
                tasks.push(Task::Cond(&p.def(callee).body));
                frames.push(transition.to);
            }
            Task::Return => {
                frames.pop();
                if frames.is_empty() {
                    let v = values.pop().expect("function body leaves a value");
                    return Ok(Outcome::Returned(v));
                }
            }
        }
    }
    unreachable!("the initial Return task ends evaluation")
}

/// Evaluates `f(args)` under call-by-value, left to right, with `x - 1` as
/// monus.
pub fn eval(p: &Program, f: &str, args: &[u64], fuel: u64) -> Result<u64, EvalError> {
    let fun = p
        .lookup(f)
        .ok_or_else(|| EvalError::UnknownFunction(f.to_string()))?;
    eval_state(
        p,
        &State {
            fun,
            values: args.to_vec(),
        },
        fuel,
    )
}

pub fn eval_state(p: &Program, s: &State, fuel: u64) -> Result<u64, EvalError> {
    match run(p, s, fuel, &mut |_| true)? {
        Outcome::Returned(v) => Ok(v),
        Outcome::OutOfFuel | Outcome::Stopped => Err(EvalError::OutOfFuel),
    }
}

/// The transitions taken while evaluating from `s`, in the order the calls
/// are made, cut off after `max_len` transitions or when fuel runs out.
pub fn trace_transitions(
    p: &Program,
    s: &State,
    fuel: u64,
    max_len: usize,
) -> Result<Trace, EvalError> {
    let mut transitions = Vec::new();
    if max_len == 0 {
        return Ok(Trace {
            transitions,
            stop: TraceStop::Truncated,
        });
    }
    let outcome = run(p, s, fuel, &mut |t| {
        transitions.push(t.clone());
        transitions.len() < max_len
    })?;
    let stop = match outcome {
        Outcome::Returned(v) => TraceStop::Returned(v),
        Outcome::OutOfFuel => TraceStop::OutOfFuel,
        Outcome::Stopped => TraceStop::Truncated,
    };
    Ok(Trace { transitions, stop })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SafetyConfig {
    pub trials: usize,
    pub value_bound: u64,
    pub fuel: u64,
    pub seed: u64,
}

impl Default for SafetyConfig {
    fn default() -> Self {
        SafetyConfig {
            trials: 1000,
            value_bound: 3,
            fuel: 1_000_000,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ViolatedArc {
    pub from: String,
    pub kind: &'static str,
    pub to: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub site: usize,
    pub arc: ViolatedArc,
    pub u: Vec<u64>,
    pub v: Vec<u64>,
}

/// Outcome of [`sample_safety`]. `converged` counts trials that returned;
/// `skipped` counts trials cut off by fuel, whose pending transition is never
/// checked; `violation_count` may exceed the stored `violations`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SafetyReport {
    pub violations: Vec<Violation>,
    pub violation_count: usize,
    pub transitions_checked: usize,
    pub converged: usize,
    pub skipped: usize,
}

const MAX_STORED_VIOLATIONS: usize = 100;

/// Runs the program from random states and checks every observed transition
/// `(f, u) -τ-> (g, v)` against each arc `x_i -r-> y_j` of the graph for `τ`:
/// strict arcs need `u_i > v_j`, non-strict ones `u_i >= v_j`.
pub fn sample_safety(p: &Program, d: &Description, cfg: &SafetyConfig) -> SafetyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut report = SafetyReport {
        violations: Vec::new(),
        violation_count: 0,
        transitions_checked: 0,
        converged: 0,
        skipped: 0,
    };
    for _ in 0..cfg.trials {
        let fun = FunId(rng.gen_range(0..p.defs().len()));
        let values = (0..p.def(fun).sig.arity())
            .map(|_| rng.gen_range(0..=cfg.value_bound))
            .collect();
        let start = State { fun, values };
        let outcome = run(p, &start, cfg.fuel, &mut |t| {
            report.transitions_checked += 1;
            let g = d.graph(t.site);
            for a in g.arcs() {
                let (u, v) = (t.from.values[a.src], t.to.values[a.tgt]);
                let safe = match a.kind {
                    ArcKind::Strict => u > v,
                    ArcKind::NonStrict => u >= v,
                };
                if !safe {
                    report.violation_count += 1;
                    if report.violations.len() < MAX_STORED_VIOLATIONS {
                        report.violations.push(Violation {
                            site: t.site.0,
                            arc: ViolatedArc {
                                from: p.def(t.from.fun).sig.params()[a.src].clone(),
                                kind: a.kind.keyword(),
                                to: p.def(t.to.fun).sig.params()[a.tgt].clone(),
                            },
                            u: t.from.values.clone(),
                            v: t.to.values.clone(),
                        });
                    }
                }
            }
            true
        });
        match outcome {
            Ok(Outcome::Returned(_)) => report.converged += 1,
            // overflow aborts a trial like fuel exhaustion does
            Ok(Outcome::OutOfFuel) | Ok(Outcome::Stopped) | Err(_) => report.skipped += 1,
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::parse_program;

    const ACK: &str = "A(x,y) = if x=0 then y+1 else if y=0 then A(x-1,1) else A(x-1,A(x,y-1))";

    #[test]
    fn ackermann_small_values() {
        let p = parse_program(ACK).unwrap();
        assert_eq!(eval(&p, "A", &[2, 2], 1_000_000), Ok(7));
        assert_eq!(eval(&p, "A", &[0, 5], 1), Ok(6));
    }

    #[test]
    fn zero_fuel() {
        let p = parse_program(ACK).unwrap();
        assert_eq!(eval(&p, "A", &[0, 0], 0), Err(EvalError::OutOfFuel));
        assert_eq!(eval(&p, "A", &[3, 3], 10), Err(EvalError::OutOfFuel));
    }

    #[test]
    fn monus_at_zero() {
        let p = parse_program("f(x) = x - 1").unwrap();
        assert_eq!(eval(&p, "f", &[0], 1), Ok(0));
        assert_eq!(eval(&p, "f", &[5], 1), Ok(4));
    }

    #[test]
    fn errors() {
        let p = parse_program(ACK).unwrap();
        assert!(matches!(
            eval(&p, "A", &[1], 10),
            Err(EvalError::ArityMismatch { .. })
        ));
        assert!(matches!(
            eval(&p, "B", &[1], 10),
            Err(EvalError::UnknownFunction(_))
        ));
        let q = parse_program("f(x) = times(x, x)").unwrap();
        assert_eq!(eval(&q, "f", &[u64::MAX], 1), Err(EvalError::Overflow));
    }

    #[test]
    fn primitives_and_guards() {
        let p = parse_program(
            "f(x, y) = if x < y && !(y = 3) then plus(x, y) else if x <= y || x = 7 then max(x, min(y, 2)) else times(x, 2)",
        )
        .unwrap();
        assert_eq!(eval(&p, "f", &[1, 2], 1), Ok(3));
        assert_eq!(eval(&p, "f", &[1, 3], 1), Ok(2));
        assert_eq!(eval(&p, "f", &[7, 1], 1), Ok(7));
        assert_eq!(eval(&p, "f", &[5, 1], 1), Ok(10));
    }

    #[test]
    fn deep_recursion_does_not_use_host_stack() {
        let p = parse_program("f(x) = if x = 0 then 0 else f(x - 1)").unwrap();
        assert_eq!(eval(&p, "f", &[500_000], 1_000_000), Ok(0));
        let q = parse_program("g(x) = g(x + 1)").unwrap();
        assert_eq!(eval(&q, "g", &[0], 200_000), Err(EvalError::OutOfFuel));
    }

    #[test]
    fn traces() {
        let p = parse_program(ACK).unwrap();
        let t = trace_transitions(
            &p,
            &State {
                fun: FunId(0),
                values: vec![1, 0],
            },
            1000,
            100,
        )
        .unwrap();
        assert_eq!(t.transitions[0].site, CallSiteId(0));
        assert_eq!(t.transitions[0].to.values, vec![0, 1]);
        assert_eq!(t.stop, TraceStop::Returned(2));

        let t = trace_transitions(
            &p,
            &State {
                fun: FunId(0),
                values: vec![1, 1],
            },
            1000,
            1,
        )
        .unwrap();
        assert_eq!(t.transitions.len(), 1);
        assert_eq!(t.transitions[0].site, CallSiteId(2));
        assert_eq!(t.transitions[0].to.values, vec![1, 0]);
        assert_eq!(t.stop, TraceStop::Truncated);

        let t = trace_transitions(
            &p,
            &State {
                fun: FunId(0),
                values: vec![0, 4],
            },
            1000,
            10,
        )
        .unwrap();
        assert!(t.transitions.is_empty());
        assert_eq!(t.stop, TraceStop::Returned(5));
    }
}

//! `sct`: command-line front end for the size-change termination analyzer.
//!
//! Exit codes: 0 on success or a terminating verdict, 1 for a definite
//! non-terminating verdict (`NOT_SCT` or an oracle counterexample), 2 for
//! input and usage errors, 3 when the criterion and the oracle disagree or a
//! run exhausts its fuel.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sct_core::descent::descent_parameters;
use sct_core::extract::{extract_description, ExtractionMode};
use sct_core::interp::{eval, sample_safety, EvalError, SafetyConfig};
use sct_core::json::{
    graph_set_from_json, graph_set_to_value, graph_to_value, lasso_to_value, verdict_to_value,
};
use sct_core::lang::{parse_program, LangError, Program};
use sct_core::oracle::{bounded_lasso_oracle, OracleReport};
use sct_core::principles::{
    build_reversal_multipath, check_claim_ax, spp_reduction_family, spp_witness, star_search,
    EpColoring, PairColoring,
};
use sct_core::{check_closure, closure, fixtures, synthesize, GraphSet};

#[derive(Parser)]
#[command(name = "sct", version, about = "Size-change termination analyzer")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a program, extract its description and decide SCT
    Analyze {
        file: PathBuf,
        #[command(flatten)]
        mode: ModeArg,
    },
    /// Extract the size-change graphs of a program as graph-set JSON
    Extract {
        file: PathBuf,
        #[command(flatten)]
        mode: ModeArg,
        #[command(flatten)]
        out: OutArg,
    },
    /// Build a program whose syntactic description is the given graph set
    Synth {
        graphs: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Evaluate a function call
    Run {
        file: PathBuf,
        function: String,
        args: Vec<u64>,
        #[arg(long, default_value_t = 1_000_000)]
        fuel: u64,
    },
    /// Check the extracted description against random executions
    Safety {
        file: PathBuf,
        #[command(flatten)]
        mode: ModeArg,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        /// Largest initial argument value
        #[arg(long, default_value_t = 3)]
        bound: u64,
        #[arg(long, default_value_t = 1_000_000)]
        fuel: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Search cyclic words for a multipath without infinite descent
    Oracle {
        graphs: PathBuf,
        #[arg(long)]
        max_word_len: usize,
        /// Also run the closure criterion and check that both agree
        #[arg(long)]
        compare: bool,
    },
    /// Operations on graph-set JSON files
    Graphs {
        #[command(subcommand)]
        command: GraphsCommand,
    },
    /// Pigeonhole and triangle constructions
    Principles {
        #[command(subcommand)]
        command: PrinciplesCommand,
    },
    /// Bundled example inputs
    Fixtures {
        #[command(subcommand)]
        command: FixturesCommand,
    },
}

#[derive(Subcommand)]
enum GraphsCommand {
    /// Decide SCT for a graph set
    Check {
        graphs: PathBuf,
        /// Cross-check with the bounded oracle up to this word length
        #[arg(long, value_name = "L")]
        oracle: Option<usize>,
    },
}

#[derive(Subcommand)]
enum PrinciplesCommand {
    /// Materialize the reduction family for k colors
    SppFamily {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Simulate the choice-function multipath for an eventually periodic coloring
    Reversal {
        #[arg(long)]
        k: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        period: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        prefix: Vec<usize>,
    },
    /// Search a pair coloring for a monochromatic star of triangles
    Star {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum)]
        pattern: Pattern,
        /// Coloring file for `--pattern file`
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, default_value_t = 5)]
        min_triangles: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Pattern {
    /// c(i, j) = (j - i) mod k
    Parity,
    /// c(i, j) = 0
    Constant,
    /// JSON `{"k": K, "rows": [[c(0,1), c(0,2), …], [c(1,2), …], …]}`
    File,
}

#[derive(Subcommand)]
enum FixturesCommand {
    /// List bundled fixtures
    List,
    /// Print one fixture
    Show { name: String },
    /// Write all fixtures into a directory
    Write { dir: PathBuf },
}

#[derive(Args)]
struct ModeArg {
    #[arg(long, default_value = "guarded", value_parser = parse_mode)]
    mode: ExtractionMode,
}

fn parse_mode(s: &str) -> Result<ExtractionMode, String> {
    s.parse()
}

#[derive(Args)]
struct OutArg {
    /// Write the result here instead of standard output
    #[arg(short, long)]
    output: Option<PathBuf>,
}

impl OutArg {
    fn emit(&self, text: &str) -> anyhow::Result<()> {
        match &self.output {
            Some(path) => {
                fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
            }
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_program(path: &Path) -> anyhow::Result<Program> {
    let text = read(path)?;
    parse_program(&text).map_err(|e| {
        let diags = match e {
            LangError::Syntax(d) => vec![d],
            LangError::Invalid(ds) => ds,
        };
        let lines: Vec<String> = diags
            .iter()
            .map(|d| format!("{}:{d}", path.display()))
            .collect();
        anyhow::anyhow!(lines.join("\n"))
    })
}

fn load_graphs(path: &Path) -> anyhow::Result<GraphSet> {
    let text = read(path)?;
    graph_set_from_json(&text).with_context(|| format!("{}: schema error", path.display()))
}

fn verdict_code(sct: bool) -> ExitCode {
    if sct {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn oracle_value(gs: &GraphSet, report: &OracleReport) -> Value {
    match report {
        OracleReport::NotSct { lasso, idempotent } => json!({
            "counterexample": true,
            "lasso": lasso_to_value(gs, lasso),
            "idempotent": graph_to_value(gs, idempotent),
        }),
        OracleReport::NoCounterexampleUpTo(l) => json!({
            "counterexample": false,
            "max_word_len": l,
        }),
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Analyze { file, mode } => {
            let p = load_program(&file)?;
            let d = extract_description(&p, mode.mode);
            let gs = d.to_graph_set(&p);
            let cl = closure(&gs);
            let verdict = check_closure(&gs, &cl);
            let v = verdict_to_value(&gs, &verdict);
            let counterexample = if verdict.is_sct() {
                Value::Null
            } else {
                json!({"failing_idempotent": v["failing_idempotent"], "lasso": v["lasso"]})
            };
            print!(
                "{}",
                pretty(&json!({
                    "sct": verdict.is_sct(),
                    "mode": mode.mode.to_string(),
                    "description": graph_set_to_value(&gs),
                    "closure_size": cl.len(),
                    "counterexample": counterexample,
                }))
            );
            Ok(verdict_code(verdict.is_sct()))
        }
        Command::Extract { file, mode, out } => {
            let p = load_program(&file)?;
            let gs = extract_description(&p, mode.mode).to_graph_set(&p);
            out.emit(&pretty(&graph_set_to_value(&gs)))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Synth { graphs, out } => {
            let gs = load_graphs(&graphs)?;
            let p = synthesize(&gs)?;
            out.emit(&p.to_string())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Run {
            file,
            function,
            args,
            fuel,
        } => {
            let p = load_program(&file)?;
            match eval(&p, &function, &args, fuel) {
                Ok(value) => {
                    print!(
                        "{}",
                        pretty(&json!({"function": function, "args": args, "value": value}))
                    );
                    Ok(ExitCode::SUCCESS)
                }
                Err(EvalError::OutOfFuel) => {
                    print!(
                        "{}",
                        pretty(
                            &json!({"function": function, "args": args, "value": null, "out_of_fuel": true})
                        )
                    );
                    Ok(ExitCode::from(3))
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Safety {
            file,
            mode,
            trials,
            bound,
            fuel,
            seed,
        } => {
            let p = load_program(&file)?;
            let d = extract_description(&p, mode.mode);
            let cfg = SafetyConfig {
                trials,
                value_bound: bound,
                fuel,
                seed,
            };
            let report = sample_safety(&p, &d, &cfg);
            print!("{}", pretty(&serde_json::to_value(&report)?));
            Ok(ExitCode::SUCCESS)
        }
        Command::Oracle {
            graphs,
            max_word_len,
            compare,
        } => {
            let gs = load_graphs(&graphs)?;
            let report = bounded_lasso_oracle(&gs, max_word_len);
            let mut v = oracle_value(&gs, &report);
            let mut code = verdict_code(!report.found_counterexample());
            if compare {
                let sct = sct_core::check_sct_criterion(&gs).is_sct();
                let agree = sct != report.found_counterexample();
                v["criterion_sct"] = json!(sct);
                v["agree"] = json!(agree);
                if !agree {
                    code = ExitCode::from(3);
                }
            }
            print!("{}", pretty(&v));
            Ok(code)
        }
        Command::Graphs {
            command: GraphsCommand::Check { graphs, oracle },
        } => {
            let gs = load_graphs(&graphs)?;
            let cl = closure(&gs);
            let verdict = check_closure(&gs, &cl);
            let mut v = verdict_to_value(&gs, &verdict);
            v["closure_size"] = json!(cl.len());
            let mut code = verdict_code(verdict.is_sct());
            if let Some(l) = oracle {
                let report = bounded_lasso_oracle(&gs, l);
                let agree = verdict.is_sct() != report.found_counterexample();
                v["oracle"] = oracle_value(&gs, &report);
                v["agree"] = json!(agree);
                if !agree {
                    code = ExitCode::from(3);
                }
            }
            print!("{}", pretty(&v));
            Ok(code)
        }
        Command::Principles { command } => principles(command),
        Command::Fixtures { command } => {
            match command {
                FixturesCommand::List => {
                    for (name, _) in fixtures::ALL {
                        println!("{name}");
                    }
                }
                FixturesCommand::Show { name } => match fixtures::get(&name) {
                    Some(text) => print!("{text}"),
                    None => bail!("no fixture named `{name}`"),
                },
                FixturesCommand::Write { dir } => {
                    fs::create_dir_all(&dir)
                        .with_context(|| format!("cannot create {}", dir.display()))?;
                    for (name, text) in fixtures::ALL {
                        let path = dir.join(name);
                        fs::write(&path, text)
                            .with_context(|| format!("cannot write {}", path.display()))?;
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn load_pair_coloring(path: &Path, k: Option<usize>) -> anyhow::Result<PairColoring> {
    let v: Value = serde_json::from_str(&read(path)?)
        .with_context(|| format!("{}: invalid JSON", path.display()))?;
    let k = match (v.get("k").and_then(Value::as_u64), k) {
        (Some(k), _) => k as usize,
        (None, Some(k)) => k,
        (None, None) => bail!("{}: missing `k`", path.display()),
    };
    let rows: Vec<Vec<usize>> = serde_json::from_value(
        v.get("rows").cloned().unwrap_or(Value::Null),
    )
    .with_context(|| {
        format!(
            "{}: `rows` must be an array of arrays of colors",
            path.display()
        )
    })?;
    let n = rows.len() + 1;
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n - i - 1 {
            bail!(
                "{}: row {i} has {} entries, expected {}",
                path.display(),
                row.len(),
                n - i - 1
            );
        }
    }
    Ok(PairColoring::new(k, n, |i, j| rows[i][j - i - 1])?)
}

fn principles(command: PrinciplesCommand) -> anyhow::Result<ExitCode> {
    match command {
        PrinciplesCommand::SppFamily { k, out } => {
            let gs = spp_reduction_family(k)?;
            out.emit(&pretty(&graph_set_to_value(&gs)))?;
        }
        PrinciplesCommand::Reversal { k, period, prefix } => {
            let c = EpColoring::new(k, prefix, period)?;
            let run = build_reversal_multipath(&c)?;
            let witness: Vec<usize> = spp_witness(&c).into_iter().collect();
            let descents: Vec<String> = descent_parameters(&run.lasso, &run.graphs)?
                .into_iter()
                .map(|w| run.sets[w.param].param_name())
                .collect();
            let claims: Vec<Value> = run
                .sets
                .iter()
                .map(|s| {
                    let (lhs, rhs) = check_claim_ax(&c, s)?;
                    Ok(json!({"set": s.param_name(), "colors_recur": lhs, "active_in_cycle": rhs}))
                })
                .collect::<anyhow::Result<_>>()?;
            let trace: Vec<Value> = run
                .trace
                .iter()
                .map(|s| {
                    json!({
                        "x": s.x,
                        "color": s.color,
                        "chi": s.chi,
                        "active": s.active.iter().map(|&i| run.sets[i].param_name()).collect::<Vec<_>>(),
                        "graph": run.graphs.name(s.graph),
                    })
                })
                .collect();
            print!(
                "{}",
                pretty(&json!({
                    "spp_witness": witness,
                    "descent_params": descents,
                    "lasso": lasso_to_value(&run.graphs, &run.lasso),
                    "cycle_start": run.cycle_start,
                    "cycle_len": run.cycle_len,
                    "graphs": graph_set_to_value(&run.graphs),
                    "claims": claims,
                    "trace": trace,
                }))
            );
        }
        PrinciplesCommand::Star {
            n,
            k,
            pattern,
            file,
            min_triangles,
        } => {
            let coloring = match pattern {
                Pattern::File => {
                    let Some(path) = file else {
                        bail!("--pattern file needs --file");
                    };
                    load_pair_coloring(&path, k)?
                }
                Pattern::Parity | Pattern::Constant => {
                    let n = n.context("--n is required for this pattern")?;
                    let k = k.unwrap_or(2);
                    if k == 0 {
                        bail!("--k must be positive");
                    }
                    match pattern {
                        Pattern::Parity => PairColoring::new(k, n, |i, j| (j - i) % k)?,
                        _ => PairColoring::new(k, n, |_, _| 0)?,
                    }
                }
            };
            let v = match star_search(&coloring, min_triangles) {
                Some(w) => json!({"found": true, "t": w.t, "color": w.color, "pairs": w.pairs}),
                None => json!({"found": false}),
            };
            print!("{}", pretty(&v));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("sct: {e:#}");
            ExitCode::from(2)
        }
    }
}

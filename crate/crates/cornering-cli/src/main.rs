use std::io::{self, BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cornering::base::BaseRule;
use cornering::coherence::decide_vertical_eq;
use cornering::dsl::{parse_workspace, print_base, trace_json, write_trace, Workspace};
use cornering::engine::{
    available_steps, pop, reduce_beta_random, reduce_combined, reduce_interleaved_random, split_base, EngineError, Step, Strategy, Trace,
};
use cornering::harness::{run_suite, Suite};
use cornering::term::{path_to_string, Node, Term};

const OK: u8 = 0;
const FALSE: u8 = 1;
const USAGE: u8 = 2;
const BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "cornering", version, about = "Typed process terms with corners and protocol choice")]
struct Cli {
    /// Workspace file (`.corn`).
    #[arg(short, long, global = true, env = "CORNERING_FILE")]
    file: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Switch {
    On,
    Off,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    /// Popped-form normalization, then base rules.
    Pop,
    /// One β step, then one base rewrite, alternating.
    Interleaved,
    /// Normalize base leaves before every pop.
    Exhaustive,
    /// A seeded random maximal strategy.
    Random,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Termination,
    Confluence,
    Measure,
    Eta,
    Commutation,
    Flat,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Termination => Suite::Termination,
            SuiteArg::Confluence => Suite::Confluence,
            SuiteArg::Measure => Suite::Measure,
            SuiteArg::Eta => Suite::Eta,
            SuiteArg::Commutation => Suite::Commutation,
            SuiteArg::Flat => Suite::Flat,
        }
    }
}

#[derive(clap::Args)]
struct TraceArgs {
    /// Print the `cornering-trace v1` record after the result.
    #[arg(long)]
    trace: bool,
    /// Print the trace as JSON after the result.
    #[arg(long)]
    trace_json: bool,
    /// Write the `cornering-trace v1` record to a file.
    #[arg(long, value_name = "FILE")]
    trace_out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Load the workspace and print the type of every named term.
    Check,
    /// Reduce a named term.
    Reduce {
        name: String,
        #[arg(long, value_enum, default_value = "pop")]
        strategy: StrategyArg,
        #[arg(long, default_value_t = 100_000)]
        max_steps: usize,
        /// Use the base rules of the workspace.
        #[arg(long, value_enum, default_value = "off")]
        rules: Switch,
        #[arg(long, env = "CORNERING_SEED", default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        trace: TraceArgs,
    },
    /// Bring a named term into popped form.
    Pop {
        name: String,
        #[command(flatten)]
        trace: TraceArgs,
    },
    /// Split a closed term after the first `k` atoms of its open boundary.
    Split {
        name: String,
        k: usize,
        #[command(flatten)]
        trace: TraceArgs,
    },
    /// Decide equality of two vertical terms.
    Eq {
        a: String,
        b: String,
        #[arg(long, value_enum, default_value = "off")]
        rules: Switch,
    },
    /// Step through a reduction interactively.
    Step {
        name: String,
        #[arg(long, value_enum, default_value = "off")]
        rules: Switch,
    },
    /// Run a seeded property suite.
    Harness {
        #[arg(value_enum)]
        suite: SuiteArg,
        #[arg(long, env = "CORNERING_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        count: Option<usize>,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
}

struct Failure(u8, String);

impl From<EngineError> for Failure {
    fn from(e: EngineError) -> Failure {
        let code = if matches!(e, EngineError::BudgetExceeded(_)) { BUDGET } else { USAGE };
        Failure(code, e.to_string())
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure(USAGE, msg.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn load(file: &Option<PathBuf>) -> Result<Workspace, Failure> {
    let path = file.as_ref().ok_or_else(|| usage("no workspace file; pass --file or set CORNERING_FILE"))?;
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    parse_workspace(&text).map_err(|ds| {
        let lines: Vec<String> = ds.iter().map(|d| format!("{}:{d}", path.display())).collect();
        usage(lines.join("\n"))
    })
}

fn named<'a>(ws: &'a Workspace, name: &str) -> Result<&'a Term, Failure> {
    ws.term(name).ok_or_else(|| usage(format!("unknown term `{name}`")))
}

fn rules(ws: &Workspace, s: Switch) -> &[BaseRule] {
    match s {
        Switch::On => &ws.signature.rules,
        Switch::Off => &[],
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    if let Command::Harness { suite, seed, count, json } = cli.command {
        let suite = Suite::from(suite);
        let report = run_suite(suite, seed, count.unwrap_or_else(|| suite.default_count()));
        if json {
            println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
        } else {
            println!("{report}");
        }
        return Ok(if report.passed() { OK } else { FALSE });
    }
    let ws = load(&cli.file)?;
    match cli.command {
        Command::Check => {
            for n in ws.term_names() {
                println!("{n} : {}", ws.term(&n).expect("declared").ty());
            }
            Ok(OK)
        }
        Command::Reduce { name, strategy, max_steps, rules: r, seed, trace } => {
            let a = named(&ws, &name)?;
            let rs = rules(&ws, r);
            let (end, tr) = match strategy {
                StrategyArg::Pop if rs.is_empty() => {
                    let (end, _, tr) = pop(a)?;
                    (end, tr)
                }
                StrategyArg::Pop => reduce_combined(a, rs, Strategy::PopFirst, max_steps)?,
                StrategyArg::Interleaved => reduce_combined(a, rs, Strategy::Interleaved, max_steps)?,
                StrategyArg::Exhaustive => reduce_combined(a, rs, Strategy::Exhaustive, max_steps)?,
                StrategyArg::Random => {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    if rs.is_empty() {
                        reduce_beta_random(a, &mut rng, max_steps)?
                    } else {
                        reduce_interleaved_random(a, rs, &mut rng, max_steps)?
                    }
                }
            };
            if tr.steps.len() > max_steps {
                return Err(EngineError::BudgetExceeded(max_steps).into());
            }
            print_result(&end);
            emit_trace(&tr, &trace)?;
            Ok(OK)
        }
        Command::Pop { name, trace } => {
            let (end, form, tr) = pop(named(&ws, &name)?)?;
            print_result(&end);
            println!("shape: {}", form.kind().name());
            emit_trace(&tr, &trace)?;
            Ok(OK)
        }
        Command::Split { name, k, trace } => {
            let a = named(&ws, &name)?;
            let (a0, a1, tr) = split_base(a, k)?;
            let whole = Term::vcomp(a0.clone(), a1.clone()).map_err(EngineError::from)?;
            if tr.replay(&[])? != whole {
                return Err(Failure(FALSE, "split does not recompose".into()));
            }
            println!("{a0} : {}", a0.ty());
            println!("{a1} : {}", a1.ty());
            emit_trace(&tr, &trace)?;
            Ok(OK)
        }
        Command::Eq { a, b, rules: r } => {
            let same = decide_vertical_eq(named(&ws, &a)?, named(&ws, &b)?, rules(&ws, r))?;
            println!("{same}");
            Ok(if same { OK } else { FALSE })
        }
        Command::Step { name, rules: r } => {
            let a = named(&ws, &name)?.clone();
            let stdin = io::stdin();
            step_loop(a, rules(&ws, r), &mut stdin.lock(), &mut io::stdout()).map_err(|e| usage(e.to_string()))?;
            Ok(OK)
        }
        Command::Harness { .. } => unreachable!("handled above"),
    }
}

fn print_result(t: &Term) {
    println!("{t}");
    if let Node::Base(f) = t.node() {
        println!("base: {}", print_base(f));
    }
}

fn emit_trace(tr: &Trace, args: &TraceArgs) -> Result<(), Failure> {
    if args.trace {
        print!("{}", write_trace(tr));
    }
    if args.trace_json {
        println!("{}", serde_json::to_string_pretty(&trace_json(tr)).expect("trace serializes"));
    }
    if let Some(p) = &args.trace_out {
        std::fs::write(p, write_trace(tr)).map_err(|e| usage(format!("{}: {e}", p.display())))?;
    }
    Ok(())
}

/// The rest of a normalizing reduction from `t`, used as the default choice.
fn plan(t: &Term, rules: &[BaseRule]) -> Vec<Step> {
    let r = if rules.is_empty() {
        pop(t).map(|(_, _, tr)| tr)
    } else {
        reduce_combined(t, rules, Strategy::PopFirst, 100_000).map(|(_, tr)| tr)
    };
    let mut steps = r.map(|tr| tr.steps).unwrap_or_default();
    steps.reverse();
    steps
}

fn step_loop(start: Term, rules: &[BaseRule], input: &mut impl BufRead, out: &mut impl Write) -> io::Result<()> {
    let mut trace = Trace::empty(start.clone());
    let mut cur = start;
    let mut planned = plan(&cur, rules);
    loop {
        writeln!(out, "term: {cur}")?;
        writeln!(out, "#: {}", cur.special())?;
        let mut steps = available_steps(&cur, rules);
        let redexes = steps.iter().any(|s| !matches!(s.kind, cornering::engine::StepKind::Struct(..)));
        if planned.is_empty() && !redexes {
            writeln!(out, "normal form")?;
            return Ok(());
        }
        if let Some(next) = planned.last() {
            match steps.iter().position(|s| s == next) {
                Some(i) => {
                    let s = steps.remove(i);
                    steps.insert(0, s);
                }
                None => steps.insert(0, next.clone()),
            }
        }
        for (i, s) in steps.iter().enumerate() {
            writeln!(out, "  [{i}] {} @ {}: {} -> {}", s.kind.label(), path_to_string(&s.path), s.before, s.after)?;
        }
        let choice = loop {
            write!(out, "step> ")?;
            out.flush()?;
            let mut line = String::new();
            if input.read_line(&mut line)? == 0 {
                return Ok(());
            }
            match line.trim() {
                "quit" | "q" => return Ok(()),
                "trace" => write!(out, "{}", write_trace(&trace))?,
                s => match s.parse::<usize>() {
                    Ok(i) if i < steps.len() => break i,
                    _ => writeln!(out, "invalid choice `{s}`; enter an index, `trace` or `quit`")?,
                },
            }
        };
        let s = steps.swap_remove(choice);
        let next = cur.replace(&s.path, s.after.clone()).map_err(|e| io::Error::other(e.to_string()))?;
        if choice == 0 && planned.last() == Some(&s) {
            planned.pop();
        } else {
            planned = plan(&next, rules);
        }
        writeln!(out, "{} ({} -> {})", s.kind.label(), cur.special(), next.special())?;
        trace.steps.push(s);
        trace.end = next.clone();
        cur = next;
    }
}

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use ipl_core::audit::audit;
use ipl_core::extraction::{check_derivation, extract_model, soundness_audit};
use ipl_core::formula::GoalUniverse;
use ipl_core::gbu::{
    bsearch, check_g3i, check_gbu, g3i_dot, g3i_json, g3i_text, g3i_typeset, gbu_dot, gbu_json,
    gbu_text, gbu_typeset, to_g3i,
};
use ipl_core::gen::{nishimura_text, random_formulas};
use ipl_core::kripke::check_countermodel;
use ipl_core::saturation::{fsearch, IterationStats, SearchOptions};

const VALID: u8 = 0;
const NOT_VALID: u8 = 1;
const BAD_INPUT: u8 = 2;
const INTERNAL: u8 = 3;

/// Decides intuitionistic propositional formulas and prints a checked certificate:
/// a sequent calculus proof when valid, a Kripke countermodel otherwise.
#[derive(Parser)]
#[command(name = "ipl", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide one formula. Exit code 0 valid, 1 not valid, 2 bad input, 3 internal error.
    Decide(DecideArgs),
    /// Print generated formulas, one per line.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Run every cross-check on one formula.
    Audit {
        /// File holding the formula, or `-` for standard input.
        input: PathBuf,
        /// Shuffle seeds for the order-independence check.
        #[arg(long, value_delimiter = ',', default_values_t = [1u64, 2, 3])]
        seeds: Vec<u64>,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// The i-th one-variable Nishimura formula.
    Nishimura { i: usize },
    Random {
        #[arg(long, default_value_t = 3)]
        vars: usize,
        #[arg(long, default_value_t = 12)]
        size: usize,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
    Graph,
    Typeset,
}

#[derive(Args)]
struct DecideArgs {
    /// File holding the formula, or `-` for standard input.
    input: PathBuf,
    /// Delay joins so the countermodel has minimal height.
    #[arg(long)]
    minimal_height: bool,
    #[arg(long)]
    no_backward_subsumption: bool,
    /// Write the countermodel here as well.
    #[arg(long, value_name = "FILE")]
    countermodel: Option<PathBuf>,
    /// Write the forward derivation (not valid) or backward derivation (valid) here.
    #[arg(long, value_name = "FILE")]
    derivation: Option<PathBuf>,
    /// Write the final database here.
    #[arg(long, value_name = "FILE")]
    db_dump: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Per-iteration counters on standard error.
    #[arg(long)]
    stats: bool,
    /// Shuffle every batch with this seed.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_name = "N")]
    max_iterations: Option<usize>,
}

fn read_input(path: &Path) -> anyhow::Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading standard input")?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

/// Reads and parses, reporting failures with exit code 2.
fn load(path: &Path) -> Result<GoalUniverse, ExitCode> {
    let text = read_input(path).map_err(|e| {
        eprintln!("error: {e:#}");
        ExitCode::from(BAD_INPUT)
    })?;
    GoalUniverse::parse(&text).map_err(|e| {
        eprintln!("parse error: {e}");
        ExitCode::from(BAD_INPUT)
    })
}

fn write_out(path: &Option<PathBuf>, content: &str) -> anyhow::Result<()> {
    if let Some(p) = path {
        std::fs::write(p, content).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(())
}

fn comment(format: Format, line: &str) -> String {
    match format {
        Format::Text | Format::Structured => line.to_string(),
        Format::Graph => format!("// {line}"),
        Format::Typeset => format!("% {line}"),
    }
}

fn print_stats(stats: &[IterationStats]) {
    for s in stats {
        eprintln!(
            "iteration {}{}: generated {} forward-subsumed {} backward-removed {} added {} db {} join-sets {}",
            s.iteration,
            if s.joins { " (joins)" } else { "" },
            s.generated,
            s.forward_subsumed,
            s.backward_removed,
            s.added,
            s.db_size,
            s.join_sets
        );
    }
}

fn decide(args: &DecideArgs) -> ExitCode {
    let u = match load(&args.input) {
        Ok(u) => u,
        Err(code) => return code,
    };
    match run_decide(&u, args) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("internal error: {e:#}");
            ExitCode::from(INTERNAL)
        }
    }
}

fn run_decide(u: &GoalUniverse, args: &DecideArgs) -> anyhow::Result<u8> {
    let opts = SearchOptions::new()
        .min_height(args.minimal_height)
        .backward_subsumption(!args.no_backward_subsumption)
        .shuffle(args.seed)
        .max_iterations(args.max_iterations);
    let start = Instant::now();
    let result = fsearch(u, opts)?;
    let search_time = start.elapsed();
    if args.stats {
        print_stats(&result.stats);
        eprintln!("forward search: {:.3} ms", search_time.as_secs_f64() * 1e3);
    }
    write_out(&args.db_dump, &result.db.dump(u))?;
    let fmt = args.format;

    if let Some(root) = result.proof() {
        let store = result.db.store();
        check_derivation(u, store, root).map_err(|e| anyhow!("derivation check failed: {e}"))?;
        let extracted = extract_model(u, store, root)?;
        let model = &extracted.model;
        check_countermodel(model, u)?;
        soundness_audit(u, store, root, &extracted).map_err(|e| anyhow!("soundness audit failed: {e}"))?;

        let rendered = match fmt {
            Format::Text => model.to_text(),
            Format::Structured => serde_json::to_string_pretty(&model.to_json())? + "\n",
            Format::Graph => model.to_dot(),
            Format::Typeset => model.to_tikz(),
        };
        write_out(&args.countermodel, &rendered)?;
        let derivation = match fmt {
            Format::Text => store.linearize(u, root),
            Format::Structured => serde_json::to_string_pretty(&store.linear_json(u, root))? + "\n",
            Format::Graph => store.to_dot(u, root),
            Format::Typeset => store.linear_typeset(u, root),
        };
        write_out(&args.derivation, &derivation)?;
        if fmt == Format::Structured {
            let out = json!({
                "goal": u.show(u.goal()),
                "verdict": "not valid",
                "countermodel": model.to_json(),
            });
            println!("{}", serde_json::to_string_pretty(&out)?);
        } else {
            println!("{}", comment(fmt, "not valid"));
            println!(
                "{}",
                comment(fmt, &format!("countermodel with {} worlds, height {}", model.len(), model.height()))
            );
            print!("{rendered}");
        }
        return Ok(NOT_VALID);
    }

    let start = Instant::now();
    let (d, stats) = bsearch(u, &result.db)?;
    check_gbu(u, &d).map_err(|e| anyhow!("backward derivation check failed: {e}"))?;
    let g = to_g3i(u, &d);
    check_g3i(u, &g).map_err(|e| anyhow!("certificate check failed: {e}"))?;
    if args.stats {
        eprintln!(
            "backward search: {} calls, {} queries, {} critical choices, {:.3} ms",
            stats.calls,
            stats.queries,
            stats.choices.len(),
            start.elapsed().as_secs_f64() * 1e3
        );
    }
    let derivation = match fmt {
        Format::Text => gbu_text(u, &d),
        Format::Structured => serde_json::to_string_pretty(&gbu_json(u, &d))? + "\n",
        Format::Graph => gbu_dot(u, &d),
        Format::Typeset => gbu_typeset(u, &d),
    };
    write_out(&args.derivation, &derivation)?;
    match fmt {
        Format::Structured => {
            let out = json!({
                "goal": u.show(u.goal()),
                "verdict": "valid",
                "derivation": g3i_json(u, &g),
            });
            println!("{}", serde_json::to_string_pretty(&out)?);
        }
        _ => {
            println!("{}", comment(fmt, "valid"));
            println!("{}", comment(fmt, &format!("sequent calculus proof with {} nodes", g.size())));
            let rendered = match fmt {
                Format::Graph => g3i_dot(u, &g),
                Format::Typeset => g3i_typeset(u, &g),
                _ => g3i_text(u, &g),
            };
            print!("{rendered}");
        }
    }
    Ok(VALID)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Decide(args) => decide(&args),
        Command::Gen(GenCommand::Nishimura { i }) => {
            if i == 0 {
                eprintln!("error: Nishimura formulas are numbered from 1");
                return ExitCode::from(BAD_INPUT);
            }
            println!("{}", nishimura_text(i));
            ExitCode::SUCCESS
        }
        Command::Gen(GenCommand::Random { vars, size, count, seed }) => {
            if vars == 0 || size == 0 {
                eprintln!("error: --vars and --size must be positive");
                return ExitCode::from(BAD_INPUT);
            }
            for f in random_formulas(seed, vars, size, count) {
                println!("{f}");
            }
            ExitCode::SUCCESS
        }
        Command::Audit { input, seeds } => {
            let u = match load(&input) {
                Ok(u) => u,
                Err(code) => return code,
            };
            let report = audit(&u, &seeds);
            print!("{report}");
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
    }
}

use clap::{Parser, Subcommand};
use segalkit_cli::{commands, exit_code_for, report, run_suite_with_corpus, EXIT_FAIL, EXIT_PASS};
use std::path::PathBuf;
use std::process::ExitCode;

/// Finite simplicial and bisimplicial machinery: object factories, fibration
/// and completeness checks, and the verification suite.
#[derive(Parser)]
#[command(name = "segalkit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an object or map and write it as JSON.
    Make {
        /// standard | boundary | horn | box | boundary-box | f | f-horn |
        /// cat | rep-functor | nerve | disc-nerve | disc | constant |
        /// product | pushout | elements | pi | terminal-map
        kind: String,
        /// numeric parameters, e.g. `box 1 1`
        params: Vec<String>,
        /// input files, repeatable
        #[arg(long = "in", value_name = "FILE")]
        inputs: Vec<String>,
        /// nerve truncation dimension where needed
        #[arg(long)]
        dim: Option<usize>,
        /// construction bound where needed (e.g. the twisted projection)
        #[arg(long)]
        bound: Option<usize>,
        /// output file (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one check and report pass/fail.
    Check {
        /// kan-fib | trivial-fib | reedy-fib | left-fib | segal | complete |
        /// ho-cat | heq | yoneda-eval | yoneda-ff | cyl-fiber | prism |
        /// skeleton-pushout | homology | we-necessary | pi0
        kind: String,
        /// input files, repeatable
        #[arg(long = "in", value_name = "FILE")]
        inputs: Vec<String>,
        /// dimension bound for the check
        #[arg(long, default_value_t = 3)]
        bound: usize,
        /// emit the report as JSON
        #[arg(long)]
        json: bool,
        /// emit the report as text (default)
        #[arg(long)]
        text: bool,
    },
    /// Run the full verification suite.
    Suite {
        /// corpus directory; generated when empty
        #[arg(long, default_value = "corpus")]
        corpus: PathBuf,
        /// seed for the randomized criteria
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        text: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e) as u8)
        }
    }
}

fn run(cli: Cli) -> segalkit::Result<i32> {
    match cli.command {
        Command::Make { kind, params, inputs, dim, bound, out } => {
            let doc = commands::cmd_make(&kind, &params, &inputs, dim, bound)?;
            let text = segalkit::objfile::to_canonical_string(&doc);
            match out {
                Some(path) => std::fs::write(&path, text)
                    .map_err(|e| segalkit::Error::Parse(format!("write {path:?}: {e}")))?,
                None => print!("{text}"),
            }
            Ok(EXIT_PASS)
        }
        Command::Check { kind, inputs, bound, json, text: _ } => {
            let r = commands::cmd_check(&kind, &inputs, bound)?;
            if json {
                let mut s = serde_json::to_string_pretty(&r).expect("report");
                s.push('\n');
                print!("{s}");
            } else {
                println!("{}", r.render_text());
            }
            Ok(if r.passed() { EXIT_PASS } else { EXIT_FAIL })
        }
        Command::Suite { corpus, seed, json, text: _ } => {
            let s = run_suite_with_corpus(&corpus, seed)?;
            if json {
                let bytes = report::to_json_bytes(&s);
                print!("{}", String::from_utf8_lossy(&bytes));
            } else {
                for r in &s.reports {
                    println!("{}", r.render_text());
                }
                println!(
                    "suite: {} checks, {}",
                    s.reports.len(),
                    if s.all_passed { "all passed" } else { "FAILURES" }
                );
            }
            Ok(if s.all_passed { EXIT_PASS } else { EXIT_FAIL })
        }
    }
}

//! `hatcheck`: analyze graphs, solve small games exactly, evaluate bounds
//! and check adversary constructions against many strategies.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "hatcheck", version, about)]
struct Cli {
    /// Print the report as JSON instead of `key: value` lines.
    #[arg(long, global = true)]
    dump: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Seq {
    Sylvester,
    A,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Lemma {
    Is,
    Two,
    Rus,
    Blocks,
    Closure,
    Circ,
    Tary,
}

#[derive(Subcommand)]
enum Cmd {
    /// Blocks, cut vertices, circumference, DFS certificates, colour classes.
    Analyze { graph: PathBuf },
    /// Decide who wins at a budget, or sweep for the hat guessing number.
    Solve {
        graph: PathBuf,
        /// Guesses per player, 1 or 2.
        #[arg(long, default_value_t = 1)]
        guesses: usize,
        /// One colour count for every vertex, or a comma-separated list.
        #[arg(long)]
        budget: Option<String>,
        /// Raise a uniform budget from 1 until the adversary wins.
        #[arg(long)]
        sweep: bool,
    },
    /// Evaluate one of the numeric bounds.
    Bound {
        /// Sequence term to print; needs `--n`.
        #[arg(long, value_enum, requires = "n")]
        seq: Option<Seq>,
        #[arg(long)]
        n: Option<u32>,
        /// Bound for graphs of this circumference.
        #[arg(long)]
        circ: Option<u64>,
        /// Bound for graphs without the complete T-ary tree of height H.
        #[arg(long, num_args = 2, value_names = ["H", "T"])]
        tary: Option<Vec<u64>>,
        /// `e t` bound for maximum degree below t.
        #[arg(long)]
        lll: Option<u64>,
    },
    /// Run an adversary construction against enumerated or random strategies.
    Verify {
        graph: PathBuf,
        /// Which construction to build.
        #[arg(long, value_enum)]
        lemma: Lemma,
        /// A count of random strategies; `exhaustive` enumerates when the space is at most 10^5 and otherwise draws 10^4 random strategies; `auto` does the same with 10^3.
        #[arg(long, default_value = "1000")]
        trials: String,
        /// Seed of the trial generator.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Colour count the premise is stated for; the oracle then uses `ell + 1`.
        #[arg(long)]
        ell: Option<u32>,
        /// The distinguished vertex (`two`) or cut vertex (`rus`).
        #[arg(long)]
        vertex: Option<usize>,
        /// Comma-separated vertices: the peeled set (`is`) or side one (`rus`).
        #[arg(long)]
        set: Option<String>,
        /// The two colours offered at the vertex (`two`), e.g. `0,1`.
        #[arg(long)]
        colors: Option<String>,
        /// Root of the tree (`closure`).
        #[arg(long, default_value_t = 0)]
        root: usize,
        /// Arity of the forbidden tree (`tary`).
        #[arg(long)]
        t: Option<u64>,
        /// Height of the forbidden tree (`tary`).
        #[arg(long)]
        h: Option<u32>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let echo = std::iter::once("hatcheck".to_string())
        .chain(std::env::args().skip(1))
        .collect::<Vec<_>>()
        .join(" ");
    let guards = match std::env::var("HATCHECK_GUARDS") {
        Ok(s) => s.parse(),
        Err(_) => Ok(Default::default()),
    };
    let report = match guards {
        Err(e) => {
            let mut r = report::Report::new(echo, &[], None);
            r.fail(report::Status::Input, format!("HATCHECK_GUARDS: {e}"));
            r
        }
        Ok(guards) => match cli.cmd {
            Cmd::Analyze { graph } => commands::analyze(echo, &graph, &guards),
            Cmd::Solve { graph, guesses, budget, sweep } => {
                commands::solve(echo, &graph, guesses, budget.as_deref(), sweep, &guards)
            }
            Cmd::Bound { seq, n, circ, tary, lll } => commands::bound(echo, seq, n, circ, tary, lll),
            Cmd::Verify { graph, lemma, trials, seed, ell, vertex, set, colors, root, t, h } => {
                let opts = commands::VerifyOptions { lemma, trials, seed, ell, vertex, set, colors, root, t, h };
                commands::verify(echo, &graph, &opts, &guards)
            }
        },
    };
    let ms = start.elapsed().as_millis();
    if cli.dump {
        print!("{}", report.to_json(ms));
    } else {
        print!("{}", report.render(ms));
    }
    report.status.into()
}

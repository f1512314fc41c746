use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use superreal_cli::{run, CliError, Command, Format, RunConfig};

/// Exact verification harness for real structures of matrix Lie superalgebras and supergroups.
#[derive(Parser)]
#[command(name = "superreal", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the identity suite for a descriptor (`sl 2 1 sigma1`) or a group lift (`SL 2 1 Sigma1`).
    Verify(Target),
    /// Exact basis of the fixed points over the chosen algebra.
    FixedBasis(Target),
    /// Compactness of every descriptor's fixed even subalgebra.
    CompactScan(Algebra),
    /// The explicit non-representability witness of a graded descriptor.
    Witness(Target),
}

#[derive(Args)]
struct Algebra {
    /// gl, sl, osp (Lie level) or SL, OSp (group level)
    kind: String,
    /// Size of the even block.
    m: usize,
    /// Full size of the odd block (even for osp).
    n: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Target {
    /// gl, sl, osp (Lie level) or SL, OSp (group level)
    kind: String,
    /// Size of the even block.
    m: usize,
    /// Full size of the odd block (even for osp).
    n: usize,
    /// sigma1..sigma4, omega1..omega3, xi1, xi2, psi1, psi2 (capitalized for group lifts)
    descriptor: String,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// First descriptor parameter (defaults to 0 when the descriptor takes one).
    #[arg(long)]
    p: Option<usize>,
    /// Second descriptor parameter (defaults to 0 when the descriptor takes one).
    #[arg(long)]
    q: Option<usize>,
    /// Conjugate pairs of odd generators in the test algebra.
    #[arg(long, default_value_t = 1)]
    odd_pairs: usize,
    /// Self-real odd generators (standard conjugation only).
    #[arg(long, default_value_t = 0)]
    odd_selfreal: usize,
    /// Even square-zero generators.
    #[arg(long, default_value_t = 0)]
    even_nil: usize,
    #[arg(long, default_value_t = 20)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Use the printed (linear) form of xi2 instead of the corrected one.
    #[arg(long)]
    strict_printed: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

fn config(command: Command, kind: String, m: usize, n: usize, descriptor: Option<String>, c: Common) -> RunConfig {
    RunConfig {
        command,
        kind,
        m,
        n,
        descriptor,
        p: c.p,
        q: c.q,
        odd_pairs: c.odd_pairs,
        odd_selfreal: c.odd_selfreal,
        even_nil: c.even_nil,
        samples: c.samples,
        seed: c.seed,
        format: match c.format {
            OutputFormat::Text => Format::Text,
            OutputFormat::Json => Format::Json,
        },
        strict_printed: c.strict_printed,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match cli.command {
        Cmd::Verify(t) => config(Command::Verify, t.kind, t.m, t.n, Some(t.descriptor), t.common),
        Cmd::FixedBasis(t) => config(Command::FixedBasis, t.kind, t.m, t.n, Some(t.descriptor), t.common),
        Cmd::Witness(t) => config(Command::Witness, t.kind, t.m, t.n, Some(t.descriptor), t.common),
        Cmd::CompactScan(a) => config(Command::CompactScan, a.kind, a.m, a.n, None, a.common),
    };
    let outcome = run(&cfg).and_then(|report| Ok((report.render()?, report.passed())));
    match outcome {
        Ok((text, passed)) => {
            print!("{text}");
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e @ CliError::Usage(_)) => {
            eprintln!("{e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}

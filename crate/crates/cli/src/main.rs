use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

mod commands;
mod out;
mod suites;

use commands::{Ctx, FormOp, Run};
use suites::Suite;

/// Diophantine approximation over F_p((1/T)).
#[derive(Parser)]
#[command(name = "fqdioph", version)]
struct Cli {
    /// Field characteristic.
    #[arg(long, global = true)]
    p: Option<u64>,
    /// Absolute precision for surd expansions and rational inputs.
    #[arg(long, global = true, default_value_t = 40)]
    prec: i64,
    /// Print JSON instead of indented text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for exhaustive searches.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Continued fraction of a surd, rational or series.
    Cf {
        #[arg(long)]
        input: String,
        #[arg(long, default_value_t = 12)]
        max_terms: usize,
        /// Check the first n convergents against the exact error exponent.
        #[arg(long, value_name = "N")]
        verify_quality: Option<usize>,
    },
    /// One θ: `deg x < h`, `||xθ|| <= q^-h`. Several: the simultaneous system.
    Approx {
        #[arg(long, allow_hyphen_values = true)]
        h: i64,
        #[arg(long, required = true, num_args = 1..)]
        theta: Vec<String>,
        /// Use the simultaneous system even for a single θ.
        #[arg(long)]
        simultaneous: bool,
    },
    /// `||Σ x_i θ_i|| <= q^(-n(h+1))` with every `deg x_i <= h`.
    ApproxTranspose {
        #[arg(long, allow_hyphen_values = true)]
        h: i64,
        #[arg(long, required = true, num_args = 1..)]
        theta: Vec<String>,
    },
    /// n linear forms in m unknowns; rows are `;`-separated specs.
    ApproxGeneral {
        #[arg(long, allow_hyphen_values = true)]
        h: Option<i64>,
        #[arg(long)]
        row: Vec<String>,
        /// JSON file (`-` for stdin) with `theta`, optionally `p` and `h`.
        #[arg(long)]
        input: Option<String>,
    },
    /// Nonzero point of a linear-forms instance file.
    SolveGamma {
        #[arg(long)]
        input: String,
    },
    /// Transposed-system certificate from an `approx-general` solution.
    Transfer {
        #[arg(long)]
        input: String,
    },
    /// Approximation constants of a binary quadratic form `a;b;c`.
    Form {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, value_enum)]
        op: FormOp,
    },
    /// Run a verification suite; exits 5 if any assertion fails.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 3)]
        max_deg: usize,
    },
    /// Empirical B(θ, λ) over degree windows.
    EstimateB {
        #[arg(long, required = true, num_args = 1..)]
        theta: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, default_value_t = 4)]
        max_deg: usize,
    },
}

fn dispatch(cli: &Cli) -> Run {
    let ctx = Ctx {
        p: cli.p,
        prec: cli.prec,
    };
    match &cli.cmd {
        Cmd::Cf {
            input,
            max_terms,
            verify_quality,
        } => commands::cf(&ctx, input, *max_terms, *verify_quality),
        Cmd::Approx { h, theta, simultaneous } => commands::approx(&ctx, *h, theta, *simultaneous),
        Cmd::ApproxTranspose { h, theta } => commands::approx_transpose(&ctx, *h, theta),
        Cmd::ApproxGeneral { h, row, input } => commands::approx_general(&ctx, *h, row, input.as_deref()),
        Cmd::SolveGamma { input } => commands::solve_gamma_cmd(&ctx, input),
        Cmd::Transfer { input } => commands::transfer_cmd(&ctx, input),
        Cmd::Form { f, op } => commands::form(&ctx, f, *op),
        Cmd::Verify { suite, max_deg } => suites::run(ctx.field(None)?, *suite, *max_deg, ctx.prec),
        Cmd::EstimateB {
            theta,
            lambda,
            max_deg,
        } => commands::estimate_b_cmd(&ctx, theta, lambda, *max_deg),
    }
}

fn emit(v: &Value, as_json: bool) {
    if as_json {
        println!("{}", serde_json::to_string_pretty(v).unwrap());
    } else {
        print!("{}", out::text(v));
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("--jobs: {e}");
            return ExitCode::from(2);
        }
    }
    match dispatch(&cli) {
        Ok(done) => {
            emit(&done.value, cli.json);
            ExitCode::from(done.code)
        }
        Err(fail) => {
            let code = fail.exit_code();
            if cli.json {
                emit(&json!({ "schema": out::SCHEMA, "error": fail.to_json(), "exit_code": code }), true);
            } else {
                eprintln!("error: {}", fail.message());
            }
            ExitCode::from(code)
        }
    }
}

use std::fmt::Write as _;
use std::io::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use weber_cli::{compute_invariant, render_json, render_text, CliError};
use weber_core::invariant::generate_condition_table;
use weber_core::modular::{comparison_table, degrees, modular_polynomial, ModularError};

#[derive(Parser)]
#[command(name = "weber", version, about = "Class invariants from generalised Weber functions")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Select the exponent for (N, D) and compute the class polynomial
    Invariant {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        /// Working precision in bits (default: estimated)
        #[arg(long)]
        prec: Option<usize>,
        /// Use sqrt(D) times the function
        #[arg(long)]
        sqrtd: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print a condition table or the height comparison
    Table(TableArgs),
    /// Compute the modular polynomial of w_N^s
    Modpoly {
        #[arg(long)]
        n: i64,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false, id = "what")]
struct TableArgs {
    #[arg(long, group = "what")]
    n: Option<i64>,
    #[arg(long, group = "what")]
    heights: bool,
    /// Smallest gain listed, as an integer or fraction
    #[arg(long, default_value = "13", requires = "heights")]
    min_gain: String,
    #[arg(long, default_value_t = 20, requires = "heights")]
    max_degj: i64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn run(cli: Cli) -> Result<String, CliError> {
    let mut out = String::new();
    match cli.cmd {
        Cmd::Invariant { n, d, prec, sqrtd, format } => {
            let c = compute_invariant(n, d, prec, sqrtd)?;
            match format {
                Format::Text => out.push_str(&render_text(&c, sqrtd)),
                Format::Json => out = render_json(&c.record) + "\n",
            }
        }
        Cmd::Table(TableArgs { n: Some(n), .. }) => {
            if n < 2 {
                return Err(CliError::Usage(format!("N={n} must be at least 2")));
            }
            out = generate_condition_table(n).to_string();
        }
        Cmd::Table(TableArgs { min_gain, max_degj, .. }) => {
            let g: Ratio<i64> = min_gain.parse().map_err(|_| CliError::Usage(format!("bad gain {min_gain}")))?;
            for h in comparison_table(g, max_degj) {
                let _ = writeln!(out, "{} {} {}", h.func, h.gain, h.deg_j);
            }
        }
        Cmd::Modpoly { n } => {
            let deg = degrees(n).map_err(|e| CliError::Usage(e.to_string()))?;
            let _ = writeln!(out, "deg_F = {}, deg_J = {}", deg.psi, deg.deg_j);
            match modular_polynomial(n) {
                Ok(p) => {
                    let _ = writeln!(out, "{p}");
                }
                Err(ModularError::TooLarge(_)) => eprintln!("N={n} is above the interpolation guard; degrees only"),
                Err(e) => return Err(CliError::Other(e.to_string())),
            }
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            // a closed pipe (e.g. `| head`) is not an error
            let _ = std::io::stdout().lock().write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

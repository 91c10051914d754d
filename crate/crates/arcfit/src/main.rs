use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use arcfit::cli::{
    error_curve_csv, error_curve_svg, format_roots_text, format_solution_text, format_table,
    format_verify_text, parse_phi, roots_report, run_verify, SolutionJson,
};
use arcfit::verify::{solve, ProbeConfig};
use arcfit::ArcSpec;

#[derive(Parser)]
#[command(
    name = "arcfit",
    about = "Optimal minimax polynomial interpolants of circular arcs (degrees 2-4)",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum TextFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum CurveFormat {
    Csv,
    Svg,
}

#[derive(Subcommand)]
enum Command {
    /// Solve for the optimal interpolant of one arc
    Interpolate {
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=4))]
        degree: u8,
        /// Half-angle: radians, `pi/k`, or `m*pi/k`
        #[arg(long)]
        phi: String,
        #[arg(long, value_enum, default_value = "text")]
        format: TextFormat,
    },
    /// Print the six-row reference table for a degree
    Table {
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=4))]
        degree: u8,
    },
    /// Emit the error curve of the optimal interpolant to a file
    ErrorCurve {
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=4))]
        degree: u8,
        #[arg(long)]
        phi: String,
        #[arg(long, default_value_t = 512, value_parser = clap::value_parser!(u64).range(64..))]
        samples: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "csv")]
        format: CurveFormat,
    },
    /// Verify equioscillation and local optimality of a solved interpolant
    Verify {
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=4))]
        degree: u8,
        #[arg(long)]
        phi: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// RNG seed for the probe starts (falls back to the SEED env var)
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value = "text")]
        format: TextFormat,
        #[arg(long, hide = true)]
        inject_line_segment: bool,
    },
    /// List all real roots of the quartic resolvent with amplitudes
    Roots {
        #[arg(long)]
        phi: String,
        #[arg(long, value_enum, default_value = "text")]
        format: TextFormat,
    },
}

const EXIT_VERIFY_FAIL: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_IO: u8 = 3;

fn arc_from(phi_expr: &str) -> arcfit::Result<ArcSpec> {
    ArcSpec::new(parse_phi(phi_expr)?)
}

fn run(cli: Cli) -> Result<(), u8> {
    let input_err = |e: arcfit::ArcFitError| {
        eprintln!("error: {e}");
        EXIT_INPUT
    };
    match cli.command {
        Command::Interpolate {
            degree,
            phi,
            format,
        } => {
            let arc = arc_from(&phi).map_err(input_err)?;
            let sol = solve(&arc, degree).map_err(input_err)?;
            match format {
                TextFormat::Text => print!("{}", format_solution_text(&sol)),
                TextFormat::Json => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&SolutionJson::from(&sol)).unwrap()
                    )
                }
            }
            Ok(())
        }
        Command::Table { degree } => {
            print!("{}", format_table(degree).map_err(input_err)?);
            Ok(())
        }
        Command::ErrorCurve {
            degree,
            phi,
            samples,
            out,
            format,
        } => {
            let arc = arc_from(&phi).map_err(input_err)?;
            let sol = solve(&arc, degree).map_err(input_err)?;
            let payload = match format {
                CurveFormat::Csv => error_curve_csv(&sol, samples as usize),
                CurveFormat::Svg => error_curve_svg(&sol, samples as usize),
            };
            std::fs::write(&out, payload).map_err(|e| {
                eprintln!("error: cannot write {}: {e}", out.display());
                EXIT_IO
            })?;
            Ok(())
        }
        Command::Verify {
            degree,
            phi,
            trials,
            seed,
            format,
            inject_line_segment,
        } => {
            let arc = arc_from(&phi).map_err(input_err)?;
            let seed = seed
                .or_else(|| std::env::var("SEED").ok().and_then(|s| s.parse().ok()))
                .unwrap_or(ProbeConfig::default().seed);
            let cfg = ProbeConfig {
                trials,
                seed,
                ..ProbeConfig::default()
            };
            let rep = run_verify(&arc, degree, &cfg, inject_line_segment).map_err(input_err)?;
            match format {
                TextFormat::Text => print!("{}", format_verify_text(&rep)),
                TextFormat::Json => println!("{}", serde_json::to_string_pretty(&rep).unwrap()),
            }
            if rep.pass {
                Ok(())
            } else {
                Err(EXIT_VERIFY_FAIL)
            }
        }
        Command::Roots { phi, format } => {
            let arc = arc_from(&phi).map_err(input_err)?;
            let rep = roots_report(&arc).map_err(input_err)?;
            match format {
                TextFormat::Text => print!("{}", format_roots_text(&rep)),
                TextFormat::Json => println!("{}", serde_json::to_string_pretty(&rep).unwrap()),
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(code) => ExitCode::from(code),
    }
}

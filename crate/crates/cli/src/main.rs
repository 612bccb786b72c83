use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use octopoly_cli::{
    cmd_classify, cmd_companion, cmd_lmr, cmd_orbit, cmd_render, cmd_rmr, cmd_roots, cmd_selftest,
    CliError, CliResult, LmrAction, Mode, RenderArgs, DEFAULT_SEED,
};

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Real,
}

/// Roots, multiple-root sets and dynamics of octonion polynomials.
///
/// POLY is a file (or `-` for stdin) holding a polynomial in text form such
/// as `x^2 + ix - ij + 1`, or a JSON object `{"coeffs": [[c0..c7], ...]}`.
#[derive(Parser)]
#[command(name = "octopoly", version)]
struct Cli {
    /// Scalar backend.
    #[arg(long, value_enum, default_value = "real", global = true)]
    mode: ModeArg,
    /// Tolerance for real-mode comparisons.
    #[arg(long, global = true)]
    eps: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    seed: u64,
    #[arg(long, default_value_t = 50, global = true)]
    max_iter: usize,
    #[arg(long, default_value_t = 2.0, global = true)]
    escape_radius: f64,
    /// Read the polynomial from this string instead of a file.
    #[arg(long, global = true)]
    expr: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Isolated roots and spherical classes.
    Roots { poly: Option<PathBuf> },
    /// Coefficients of conj(f)·f.
    Companion { poly: Option<PathBuf> },
    /// Classes of the right multiple root set; with --element, membership and a witness.
    Rmr {
        poly: Option<PathBuf>,
        #[arg(long)]
        element: Option<String>,
    },
    /// Left multiple root set.
    Lmr {
        #[command(subcommand)]
        action: LmrCmd,
    },
    /// Classify fixed points of a monic quadratic, or the point --alpha.
    Classify {
        poly: Option<PathBuf>,
        #[arg(long)]
        alpha: Option<String>,
    },
    /// Orbit of --start as CSV.
    Orbit {
        poly: Option<PathBuf>,
        #[arg(long)]
        start: String,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Escape-time image of a real 2-plane, as binary PGM.
    Render {
        poly: Option<PathBuf>,
        #[arg(long, default_value = "0")]
        base: String,
        #[arg(long, default_value = "1")]
        dir_u: String,
        #[arg(long, default_value = "i")]
        dir_v: String,
        #[arg(long, default_value_t = 256)]
        width: usize,
        #[arg(long, default_value_t = 256)]
        height: usize,
        /// Units per pixel.
        #[arg(long)]
        scale: Option<f64>,
        /// Output file; stdout if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reproduce the built-in worked examples.
    Selftest,
}

#[derive(Subcommand)]
enum LmrCmd {
    Describe {
        poly: Option<PathBuf>,
    },
    Sample {
        count: usize,
        seed: Option<u64>,
        poly: Option<PathBuf>,
    },
    Contains {
        element: String,
        poly: Option<PathBuf>,
    },
}

fn read_poly(cli: &Cli, path: Option<&PathBuf>) -> CliResult<String> {
    if let Some(e) = &cli.expr {
        return Ok(e.clone());
    }
    match path {
        Some(p) if p.as_os_str() != "-" => Ok(std::fs::read_to_string(p)?),
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn run(cli: &Cli) -> CliResult<()> {
    if let Some(eps) = cli.eps {
        octopoly::set_epsilon(eps)?;
    }
    let mode = match cli.mode {
        ModeArg::Exact => Mode::Exact,
        ModeArg::Real => Mode::Real,
    };
    let text = match &cli.command {
        Command::Roots { poly } => cmd_roots(&read_poly(cli, poly.as_ref())?, mode)?,
        Command::Companion { poly } => cmd_companion(&read_poly(cli, poly.as_ref())?, mode)?,
        Command::Rmr { poly, element } => {
            cmd_rmr(&read_poly(cli, poly.as_ref())?, mode, element.as_deref(), cli.seed)?
        }
        Command::Lmr { action } => {
            let (poly, action) = match action {
                LmrCmd::Describe { poly } => (poly, LmrAction::Describe),
                LmrCmd::Sample { count, seed, poly } => (
                    poly,
                    LmrAction::Sample {
                        count: *count,
                        seed: seed.unwrap_or(cli.seed),
                    },
                ),
                LmrCmd::Contains { element, poly } => (
                    poly,
                    LmrAction::Contains {
                        element: element.clone(),
                    },
                ),
            };
            cmd_lmr(&read_poly(cli, poly.as_ref())?, mode, &action)?
        }
        Command::Classify { poly, alpha } => {
            cmd_classify(&read_poly(cli, poly.as_ref())?, alpha.as_deref(), cli.max_iter)?
        }
        Command::Orbit { poly, start, tol } => cmd_orbit(
            &read_poly(cli, poly.as_ref())?,
            start,
            cli.max_iter,
            cli.escape_radius,
            *tol,
        )?,
        Command::Render {
            poly,
            base,
            dir_u,
            dir_v,
            width,
            height,
            scale,
            out,
        } => {
            let args = RenderArgs {
                base: base.clone(),
                dir_u: dir_u.clone(),
                dir_v: dir_v.clone(),
                width: *width,
                height: *height,
                scale: *scale,
                max_iter: u32::try_from(cli.max_iter).unwrap_or(u32::MAX),
                escape_radius: cli.escape_radius,
            };
            let img = cmd_render(&read_poly(cli, poly.as_ref())?, &args)?;
            match out {
                Some(p) => std::fs::write(p, img)?,
                None => std::io::stdout().write_all(&img)?,
            }
            return Ok(());
        }
        Command::Selftest => {
            let (ok, table) = cmd_selftest();
            print!("{table}");
            if !ok {
                return Err(CliError::SelfTestFailed);
            }
            return Ok(());
        }
    };
    print!("{text}");
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

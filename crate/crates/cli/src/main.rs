use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qthermo_cli::config::{GridSpec, TOLERANCE_ENV};
use qthermo_cli::{execute, exit, BetaSpec, CliError, CommandKind, Format, RunConfig};

#[derive(Parser, Debug)]
#[command(
    name = "qthermo",
    version,
    about = "Quantum Fisher information, Jeffreys priors and Gibbs thermostatistics of two-level complex and quaternionic systems"
)]
struct Cli {
    /// Run the JSON RunConfig in this file instead of a subcommand.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,

    /// Write output here instead of stdout (directory for `figures`).
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Option<Cmd>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Closed-form and SLD-based quantum Fisher information at a point.
    Qfi(PointArgs),
    /// Jeffreys priors and structure functions.
    #[command(subcommand)]
    Prior(PriorCmd),
    /// Gibbs distributions over z and their thermostatistics.
    #[command(subcommand)]
    Gibbs(GibbsCmd),
    /// Write fig1.csv … fig6.csv and manifest.json.
    Figures {
        /// Output directory.
        #[arg(long)]
        output_dir: Option<PathBuf>,
        /// Also render SVG charts.
        #[arg(long)]
        svg: bool,
    },
}

#[derive(Args, Debug)]
struct FamilyArg {
    /// 1 = complex, 2 = quaternionic.
    #[arg(long)]
    n: usize,
}

#[derive(Args, Debug)]
struct PointArgs {
    #[command(flatten)]
    family: FamilyArg,
    /// Comma-separated coordinates: x,y,z (n = 1) or u,v,x,y,z (n = 2).
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        required = true
    )]
    point: Vec<f64>,
}

#[derive(Subcommand, Debug)]
enum PriorCmd {
    /// Prior density at a point.
    Pdf(PointArgs),
    /// Structure function at z.
    Structure {
        #[command(flatten)]
        family: FamilyArg,
        #[arg(long, allow_negative_numbers = true)]
        z: f64,
    },
    /// Total prior mass by radial quadrature.
    Normcheck {
        #[command(flatten)]
        family: FamilyArg,
    },
    /// Uniformity of the marginal over the last coordinate.
    Marginalcheck {
        #[command(flatten)]
        family: FamilyArg,
    },
    /// Seeded draws from the prior, as CSV.
    Sample {
        #[command(flatten)]
        family: FamilyArg,
        #[arg(long)]
        count: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Args, Debug)]
struct BetaArgs {
    #[command(flatten)]
    family: FamilyArg,
    #[arg(long, allow_negative_numbers = true)]
    beta: f64,
}

#[derive(Subcommand, Debug)]
enum GibbsCmd {
    /// Density at z.
    Pdf {
        #[command(flatten)]
        beta: BetaArgs,
        #[arg(long, allow_negative_numbers = true)]
        z: f64,
    },
    Mean(BetaArgs),
    Var(BetaArgs),
    Entropy(BetaArgs),
    Fisher(BetaArgs),
    Jeffreys(BetaArgs),
    /// Evaluate a quantity on a beta grid.
    Sweep {
        /// mean, variance, relative_entropy, fisher or jeffreys.
        #[arg(long)]
        quantity: String,
        #[command(flatten)]
        family: FamilyArg,
        #[arg(long, allow_negative_numbers = true)]
        beta_min: f64,
        #[arg(long, allow_negative_numbers = true)]
        beta_max: f64,
        #[arg(long)]
        beta_step: f64,
    },
}

fn config_from_command(cmd: Cmd) -> RunConfig {
    let with_point = |kind, a: PointArgs| {
        let mut c = RunConfig::new(kind);
        c.n = Some(a.family.n);
        c.point = Some(a.point);
        c
    };
    let with_n = |kind, n: usize| {
        let mut c = RunConfig::new(kind);
        c.n = Some(n);
        c
    };
    let with_beta = |kind, a: BetaArgs| {
        let mut c = with_n(kind, a.family.n);
        c.beta = Some(BetaSpec::Value(a.beta));
        c
    };
    match cmd {
        Cmd::Qfi(a) => with_point(CommandKind::Qfi, a),
        Cmd::Prior(p) => match p {
            PriorCmd::Pdf(a) => with_point(CommandKind::PriorPdf, a),
            PriorCmd::Structure { family, z } => {
                let mut c = with_n(CommandKind::PriorStructure, family.n);
                c.z = Some(z);
                c
            }
            PriorCmd::Normcheck { family } => with_n(CommandKind::PriorNormcheck, family.n),
            PriorCmd::Marginalcheck { family } => with_n(CommandKind::PriorMarginalcheck, family.n),
            PriorCmd::Sample {
                family,
                count,
                seed,
            } => {
                let mut c = with_n(CommandKind::PriorSample, family.n);
                c.count = count;
                c.seed = seed;
                c
            }
        },
        Cmd::Gibbs(g) => match g {
            GibbsCmd::Pdf { beta, z } => {
                let mut c = with_beta(CommandKind::GibbsPdf, beta);
                c.z = Some(z);
                c
            }
            GibbsCmd::Mean(a) => with_beta(CommandKind::GibbsMean, a),
            GibbsCmd::Var(a) => with_beta(CommandKind::GibbsVar, a),
            GibbsCmd::Entropy(a) => with_beta(CommandKind::GibbsEntropy, a),
            GibbsCmd::Fisher(a) => with_beta(CommandKind::GibbsFisher, a),
            GibbsCmd::Jeffreys(a) => with_beta(CommandKind::GibbsJeffreys, a),
            GibbsCmd::Sweep {
                quantity,
                family,
                beta_min,
                beta_max,
                beta_step,
            } => {
                let mut c = with_n(CommandKind::GibbsSweep, family.n);
                c.quantity = Some(quantity);
                c.beta = Some(BetaSpec::Grid(GridSpec {
                    min: beta_min,
                    max: beta_max,
                    step: beta_step,
                }));
                c
            }
        },
        Cmd::Figures { output_dir, svg } => {
            let mut c = RunConfig::new(CommandKind::Figures);
            c.output_path = output_dir;
            c.svg = svg;
            c
        }
    }
}

fn build_config(cli: Cli) -> Result<RunConfig, CliError> {
    let mut config = match (cli.config, cli.command) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(&path)?;
            RunConfig::from_json(&text)?
        }
        (None, Some(cmd)) => config_from_command(cmd),
        (Some(_), Some(_)) => {
            return Err(CliError::Usage(
                "--config and a subcommand are mutually exclusive".into(),
            ))
        }
        (None, None) => {
            return Err(CliError::Usage(
                "a subcommand or --config is required (see --help)".into(),
            ))
        }
    };
    if let Some(f) = cli.format {
        config.format = match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        };
    }
    if let Some(out) = cli.output {
        config.output_path = Some(out);
    }
    Ok(config)
}

fn run() -> Result<i32, CliError> {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            // Help and version go to stdout and are not failures.
            return Ok(if e.use_stderr() {
                exit::USAGE
            } else {
                exit::OK
            });
        }
    };
    let config = build_config(cli)?;
    let env = std::env::var(TOLERANCE_ENV).ok();
    let report = execute(&config, env.as_deref())?;

    if let Some(text) = &report.text {
        match (&config.output_path, config.command) {
            (Some(path), kind) if kind != CommandKind::Figures => std::fs::write(path, text)?,
            _ => {
                let mut out = std::io::stdout().lock();
                out.write_all(text.as_bytes())?;
                out.flush()?;
            }
        }
    }
    let failed: Vec<_> = report.checks.iter().filter(|c| !c.passed).collect();
    for c in &failed {
        eprintln!("assertion failed: {} ({})", c.name, c.detail);
    }
    Ok(if failed.is_empty() {
        exit::OK
    } else {
        exit::NUMERICAL
    })
}

fn main() -> ExitCode {
    let code = match run() {
        Ok(code) => code,
        Err(e) => {
            let msg = e.to_string();
            if !msg.is_empty() {
                eprintln!("error: {msg}");
            }
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use carrousel_core::assembly::TrunkStub;
use carrousel_core::pipeline::{eta_grid, run_pipeline, ProbeConfig, RunConfig};
use carrousel_core::puiseux::exp_serde;
use carrousel_core::Error;
use clap::Parser;

const EXIT_FAILURE: u8 = 1;
const EXIT_PARSE: u8 = 3;
const EXIT_HYPOTHESIS: u8 = 4;
const EXIT_TRUNCATION: u8 = 5;
const EXIT_TRUNK: u8 = 6;
const EXIT_INTERNAL: u8 = 70;

/// Carrousel decomposition of the vanishing zone of a surface germ f(x, y, z) = 0.
#[derive(Parser, Debug)]
#[command(name = "carrousel", version)]
struct Cli {
    /// Polynomial expression, or a file containing one.
    #[arg(short, long)]
    input: String,
    /// Truncation order (integer or fraction such as 7/2).
    #[arg(long, default_value = "5")]
    truncation: String,
    /// Write the JSON report to this path.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Write the decomposition graph in DOT syntax to this path.
    #[arg(long)]
    dot: Option<PathBuf>,
    /// Run the numeric probe of the first-exponent pairs.
    #[arg(long)]
    probe: bool,
    /// Modulus of x at which the probe samples.
    #[arg(long, default_value_t = 0.5)]
    probe_alpha: f64,
    /// Smallest |t| used by the probe.
    #[arg(long, default_value_t = 1e-6)]
    probe_eta: f64,
    /// Largest denominator when snapping probe slopes to fractions.
    #[arg(long, default_value_t = 12)]
    denominator_bound: i64,
    /// Trunk description (TOML).
    #[arg(long)]
    trunk: Option<PathBuf>,
    /// Coordinate change "λ,μ,ν": f(x, y + λx, z + μx + νy).
    #[arg(long)]
    shear: Option<String>,
    /// Seed for the probe phases.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

enum Failure {
    Core(Error),
    Other(anyhow::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Other(e)
    }
}

fn read_input(s: &str) -> anyhow::Result<String> {
    let p = Path::new(s);
    if p.is_file() {
        let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
        Ok(text.trim().to_string())
    } else {
        Ok(s.to_string())
    }
}

fn parse_shear(s: &str) -> anyhow::Result<(i64, i64, i64)> {
    let v: Vec<i64> = s
        .split(',')
        .map(|p| p.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .with_context(|| format!("shear '{}' is not three integers", s))?;
    match v.as_slice() {
        [a, b, c] => Ok((*a, *b, *c)),
        _ => anyhow::bail!("shear '{}' needs three comma-separated integers", s),
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let input = read_input(&cli.input)?;
    let mut cfg = RunConfig::new(&input);
    cfg.truncation = exp_serde::parse(&cli.truncation).ok_or_else(|| Error::Parse {
        position: 0,
        message: format!("bad truncation '{}'", cli.truncation),
        expected: "a positive integer or fraction".into(),
    })?;
    cfg.shear = cli.shear.as_deref().map(parse_shear).transpose()?;
    if let Some(p) = &cli.trunk {
        let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
        cfg.trunk = Some(TrunkStub::parse(&text)?);
    }
    if cli.probe {
        cfg.probe = Some(ProbeConfig {
            alpha: cli.probe_alpha,
            etas: eta_grid(cli.probe_eta),
            denominator_bound: cli.denominator_bound,
            seed: cli.seed,
            ..ProbeConfig::default()
        });
    }
    let report = run_pipeline(&cfg)?;
    print!("{}", report.to_text());
    if let Some(p) = &cli.json {
        std::fs::write(p, report.to_json()?).with_context(|| format!("writing {}", p.display()))?;
    }
    if let Some(p) = &cli.dot {
        std::fs::write(p, report.to_dot()).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Core(e)) => {
            eprintln!("error [{}]: {}", e.module(), e);
            eprintln!("hint: {}", e.hint());
            ExitCode::from(match e {
                Error::Parse { .. } | Error::UnknownVariable { .. } => EXIT_PARSE,
                Error::HypothesisViolation(_) => EXIT_HYPOTHESIS,
                Error::TruncationTooShort(_) => EXIT_TRUNCATION,
                Error::InvalidTrunk(_) => EXIT_TRUNK,
                Error::Internal(_) => EXIT_INTERNAL,
                _ => EXIT_FAILURE,
            })
        }
        Err(Failure::Other(e)) => {
            eprintln!("error: {:#}", e);
            ExitCode::from(EXIT_FAILURE)
        }
    }
}

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hodge_obstruct::pipeline::{self, CoefficientMode, ObstructionReport, PipelineConfig};

#[derive(Parser)]
#[command(
    version,
    about = "Ring-level obstructions to projectivity for manifolds built from tori"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// TOML pipeline configuration; without it the shipped default instance is used.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Blow-up model: 1 = subtori only, 2 = intersection points first.
    #[arg(long, global = true, value_parser = clap::value_parser!(u8).range(1..=2))]
    level: Option<u8>,
    /// Largest prime tried for Frobenius witnesses.
    #[arg(long, global = true)]
    prime_bound: Option<u64>,
    /// Seed for every randomized check.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Condition (P) and the symmetric Galois certificate.
    CertifyPoly,
    /// Torus, Hodge data and the four kernel lattices.
    BuildTorus,
    /// Orbit bound on the Néron-Severi rank.
    NsCheck,
    /// Blown-up T × T: kernels of the subtorus classes recover ᵗφ.
    TheoremEven,
    /// The same on X × F with F an elliptic curve.
    TheoremOdd,
    /// Components of the non-injectivity locus over Q.
    DeligneQ,
    /// Components over C, forced rational by distinct multiplicities.
    DeligneC,
    /// Kummer pair: q_c vanishes on A^2 and an isotropic plane exists.
    Kummer,
}

#[derive(ValueEnum, Clone, Copy)]
enum Format {
    Json,
    Text,
}

fn default_config(cmd: Command) -> PipelineConfig {
    match cmd {
        Command::Kummer => PipelineConfig::for_polynomial(&[1, 1, 0, 0, 0, 0, 1]),
        Command::TheoremOdd => {
            let mut c = PipelineConfig::for_polynomial(&[1, 1, 0, 0, 1]);
            c.factor = Some("elliptic".into());
            c
        }
        _ => PipelineConfig::for_polynomial(&[1, 1, 0, 0, 1]),
    }
}

fn run(cmd: Command, cfg: &PipelineConfig) -> ObstructionReport {
    match cmd {
        Command::CertifyPoly => pipeline::pipeline_certify(cfg),
        Command::BuildTorus => pipeline::pipeline_build_torus(cfg),
        Command::NsCheck => pipeline::pipeline_ns_check(cfg),
        Command::TheoremEven => pipeline::pipeline_theorem_even(cfg),
        Command::TheoremOdd => pipeline::pipeline_theorem_odd(cfg),
        Command::DeligneQ => pipeline::pipeline_deligne(cfg, CoefficientMode::Q),
        Command::DeligneC => pipeline::pipeline_deligne(cfg, CoefficientMode::C),
        Command::Kummer => pipeline::pipeline_kummer(cfg),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut cfg = match &cli.config {
        Some(p) => match PipelineConfig::load(p) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        },
        None => default_config(cli.command),
    };
    if let Some(l) = cli.level {
        cfg.level = l;
    }
    if let Some(b) = cli.prime_bound {
        cfg.prime_bound = b;
    }
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    let report = run(cli.command, &cfg);
    match cli.format {
        Format::Json => print!("{}", report.to_json()),
        Format::Text => print!("{}", report.to_text()),
    }
    ExitCode::from(report.verdict.exit_code() as u8)
}

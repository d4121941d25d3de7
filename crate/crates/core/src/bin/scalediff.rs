use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use scalediff::fixturegen::{generate_corpus, write_corpus, CorpusSpec};
use scalediff::pipeline::{evaluate_dir, load_labels};
use scalediff::{analyze_dirs, AnalysisConfig, Verdict};

#[derive(Parser)]
#[command(
    name = "scalediff",
    version,
    about = "Find scaling bugs between two GUI snapshots"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Compare a default-scale snapshot with a larger-scale one.
    Detect {
        default: PathBuf,
        scaled: PathBuf,
        /// TOML or JSON analysis config.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Score the detector on a labeled corpus.
    Evaluate {
        corpus: PathBuf,
        #[arg(long)]
        labels: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Write a synthetic labeled corpus.
    Generate {
        /// JSON corpus spec; built-in defaults when absent.
        #[arg(long)]
        spec: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
}

fn config(path: Option<&PathBuf>) -> Result<AnalysisConfig> {
    match path {
        Some(p) => {
            AnalysisConfig::load(p).with_context(|| format!("loading config {}", p.display()))
        }
        None => Ok(AnalysisConfig::default()),
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Detect {
            default,
            scaled,
            config: cfg,
            out,
            format,
        } => {
            let cfg = config(cfg.as_ref())?;
            let report = analyze_dirs(&default, &scaled, &cfg)?;
            if let Some(out) = &out {
                std::fs::write(out, report.to_json_pretty())
                    .with_context(|| format!("writing {}", out.display()))?;
            }
            match (format, &out) {
                (Format::Text, _) => print!("{}", report.to_text()),
                (Format::Json, None) => println!("{}", report.to_json_pretty()),
                (Format::Json, Some(_)) => {}
            }
            Ok(match report.verdict {
                Verdict::Clean => ExitCode::SUCCESS,
                Verdict::Buggy => ExitCode::from(1),
            })
        }
        Command::Evaluate {
            corpus,
            labels,
            config: cfg,
        } => {
            let cfg = config(cfg.as_ref())?;
            let labels = load_labels(&labels)?;
            let (metrics, _) = evaluate_dir(&corpus, &labels, &cfg)?;
            println!("{}", serde_json::to_string_pretty(&metrics)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Generate { spec, out } => {
            let spec: CorpusSpec = match &spec {
                Some(p) => {
                    let text = std::fs::read_to_string(p)
                        .with_context(|| format!("reading {}", p.display()))?;
                    serde_json::from_str(&text)
                        .with_context(|| format!("parsing {}", p.display()))?
                }
                None => CorpusSpec::default(),
            };
            let cases = generate_corpus(&spec)?;
            write_corpus(&cases, &out)?;
            eprintln!("wrote {} cases to {}", cases.len(), out.display());
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use log::info;
use thiserror::Error;

use prooflab::finitary::{check_proof, parse_script, Proof};
use prooflab::infinitary::{check_local, render, trace, Deriv, DerivError, Sampler, TraceFormat};
use prooflab::ord::{parse_query, OrdCode, OrdError};
use prooflab::syntax::Var;
use prooflab::universe::{DeskSet, HfSet, Hull};

/// Directory for trace files when `--out` is not given.
const OUT_ENV: &str = "PROOFLAB_OUT";

/// Draws per universal (⋀) when a seed is given.
const SEEDED_DRAWS: usize = 8;

#[derive(Parser, Debug)]
#[command(
    name = "prooflab",
    version,
    about = "Ordinal codes, proof checking and cut-elimination runs"
)]
struct Cli {
    /// Reflection parameter: proofs may use Π_{N+1}-reflection.
    #[arg(long = "N", global = true, default_value_t = 2)]
    n: u32,
    /// Expansion depth for checking and tracing.
    #[arg(long, global = true, default_value_t = 3)]
    depth: usize,
    /// Seed for sampling premises of unbounded (⋀); without it a fixed
    /// enumeration of small sets is used.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Records,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Normal form of an ordinal expression, or `a ? b` to compare.
    Ord { expr: String },
    /// Check a proof script and report its embedding signature.
    Check { file: PathBuf },
    /// Embed a proof, eliminate cuts and trace the result.
    Elim {
        file: PathBuf,
        /// Rounds of cut-elimination; defaults to the embedding rank.
        #[arg(long)]
        rounds: Option<u32>,
        /// Value for a free variable, e.g. `--set x={{}}`; others are ∅.
        #[arg(long = "set", value_name = "VAR=SET")]
        sets: Vec<String>,
        /// Trace file; defaults to $PROOFLAB_OUT/<name>.trace, else stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Ord(#[from] OrdError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {message}")]
    Script { path: PathBuf, message: String },
    #[error("{0}")]
    Deriv(#[from] DerivError),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Check(String),
}

/// Everything a run depends on.
#[derive(Debug)]
struct RunConfig {
    n: u32,
    depth: usize,
    sampler: Sampler,
    format: TraceFormat,
}

impl RunConfig {
    fn from_cli(cli: &Cli) -> Result<RunConfig, CliError> {
        if cli.n < 2 {
            return Err(CliError::Usage(format!("--N must be at least 2, got {}", cli.n)));
        }
        let sampler = match cli.seed {
            Some(seed) => Sampler::Seeded {
                seed,
                count: SEEDED_DRAWS,
            },
            None => Sampler::Default,
        };
        let format = match cli.format {
            Format::Text => TraceFormat::Text,
            Format::Records => TraceFormat::Records,
        };
        Ok(RunConfig {
            n: cli.n,
            depth: cli.depth,
            sampler,
            format,
        })
    }
}

fn load(path: &Path, n: u32) -> Result<Arc<Proof>, CliError> {
    let src = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.into(),
        source,
    })?;
    let proof = parse_script(&src).map_err(|e| CliError::Script {
        path: path.into(),
        message: e.to_string(),
    })?;
    check_proof(&proof, n).map_err(|d| CliError::Script {
        path: path.into(),
        message: d.to_string(),
    })?;
    Ok(Arc::new(proof))
}

fn free_vars(proof: &Proof) -> Vec<Var> {
    proof
        .end_sequent()
        .map(|s| s.free_vars().into_iter().collect())
        .unwrap_or_default()
}

fn cmd_ord(expr: &str, out: &mut impl Write) -> Result<(), CliError> {
    let answer = parse_query(expr)?.answer();
    writeln!(out, "{answer}").map_err(|source| CliError::Io {
        path: "<stdout>".into(),
        source,
    })
}

fn cmd_check(path: &Path, cfg: &RunConfig, out: &mut String) -> Result<(), CliError> {
    let proof = load(path, cfg.n)?;
    let m = proof.embedding_rank();
    let end = proof.end_sequent().expect("checked proofs are non-empty");
    let mut parts: Vec<String> = Vec::new();
    if m > 0 {
        parts.push(OrdCode::omega_times(u64::from(m)).to_string());
    }
    parts.extend(free_vars(&proof).into_iter().map(|v| format!("3*rank({v})")));
    let bound = if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" # ")
    };
    out.push_str(&format!("ok: {}\n", path.display()));
    out.push_str(&format!("end sequent: {end}\n"));
    out.push_str(&format!("embedding rank: {m}\n"));
    out.push_str(&format!("embedding bound: {bound}\n"));
    Ok(())
}

fn parse_assignment(proof: &Proof, sets: &[String]) -> Result<Vec<(Var, DeskSet)>, CliError> {
    let mut assign: Vec<(Var, DeskSet)> = free_vars(proof).into_iter().map(|v| (v, DeskSet::empty())).collect();
    for s in sets {
        let (name, value) = s
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("--set expects VAR=SET, got {s}")))?;
        let set = HfSet::parse(value.trim()).map_err(|e| CliError::Usage(format!("--set {s}: {e}")))?;
        let slot = assign
            .iter_mut()
            .find(|(v, _)| v.name() == name.trim())
            .ok_or_else(|| CliError::Usage(format!("{name} is not free in the end sequent")))?;
        slot.1 = DeskSet::Concrete(set);
    }
    Ok(assign)
}

struct ElimRun {
    trace: String,
    summary: String,
}

fn cmd_elim(path: &Path, rounds: Option<u32>, sets: &[String], cfg: &RunConfig) -> Result<ElimRun, CliError> {
    let proof = load(path, cfg.n)?;
    let assign = parse_assignment(&proof, sets)?;
    let emb = Deriv::embed(proof, &assign, &Hull::new())?;
    let m = emb.rank();
    let rounds = rounds.unwrap_or(m);
    let mut d = emb.clone();
    for round in 0..rounds {
        d = Deriv::elim_cuts(&d)?;
        info!("round {}: rank {}, bound {}", round + 1, d.rank(), d.bound());
    }
    let report = check_local(&d, cfg.depth, &cfg.sampler, cfg.n);
    if let Some(v) = &report.violation {
        return Err(CliError::Check(format!(
            "check failed at node {}: {}: {}",
            v.node, v.code, v.message
        )));
    }
    let rows = trace(&d, cfg.depth, &cfg.sampler)?;
    let mut summary = String::new();
    summary.push_str(&format!("embedding: rank {m}, bound {}\n", emb.bound()));
    summary.push_str(&format!("rounds: {rounds}\n"));
    summary.push_str(&format!("final: rank {}, bound {}\n", d.rank(), d.bound()));
    summary.push_str(&format!("check: {report}\n"));
    if rounds == m {
        let want = emb.bound().omega_tower(m);
        if d.rank() != 0 || *d.bound() != want {
            return Err(CliError::Check(format!(
                "after {m} rounds expected rank 0 and bound {want}, got rank {} and bound {}",
                d.rank(),
                d.bound()
            )));
        }
        summary.push_str(&format!(
            "cut-free: bound is the {m}-fold omega power of {}\n",
            emb.bound()
        ));
    }
    Ok(ElimRun {
        trace: render(&rows, cfg.format),
        summary,
    })
}

fn trace_path(file: &Path, out: Option<&Path>) -> Option<PathBuf> {
    if let Some(p) = out {
        return Some(p.to_path_buf());
    }
    let dir = std::env::var_os(OUT_ENV)?;
    let stem = file
        .file_stem()
        .map_or_else(|| "proof".into(), |s| s.to_string_lossy().into_owned());
    Some(PathBuf::from(dir).join(format!("{stem}.trace")))
}

fn run(cli: &Cli) -> Result<String, CliError> {
    let cfg = RunConfig::from_cli(cli)?;
    let mut out = String::new();
    match &cli.command {
        Command::Ord { expr } => {
            let mut buf = Vec::new();
            cmd_ord(expr, &mut buf)?;
            out.push_str(&String::from_utf8_lossy(&buf));
        }
        Command::Check { file } => cmd_check(file, &cfg, &mut out)?,
        Command::Elim {
            file,
            rounds,
            sets,
            out: dest,
        } => {
            let run = cmd_elim(file, *rounds, sets, &cfg)?;
            match trace_path(file, dest.as_deref()) {
                Some(p) => {
                    if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                        std::fs::create_dir_all(dir).map_err(|source| CliError::Io {
                            path: dir.into(),
                            source,
                        })?;
                    }
                    std::fs::write(&p, &run.trace).map_err(|source| CliError::Io {
                        path: p.clone(),
                        source,
                    })?;
                    out.push_str(&format!("trace: {}\n", p.display()));
                }
                None => out.push_str(&run.trace),
            }
            out.push_str(&run.summary);
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

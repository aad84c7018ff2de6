//! `markovrank` command-line front end.
//!
//! Exit status: 0 on success, 1 on input or validation errors, 2 when the
//! eigenvalue 1 does not have multiplicity one.

mod output;

use std::collections::HashMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use markovrank::experiments::{invariance_sweep_with, SweepOptions};
use markovrank::graph::{load_edge_list, parse_dense_matrix, read_roster};
use markovrank::rank_stats::{agreement_count, is_finer, is_identical_rank};
use markovrank::{
    gen_block, gen_er, markovrank as markov_rank, pagerank as page_rank, AdjacencyMatrix,
    BlockSpec, EdgeColumns, Method, PowerIterConfig, ScoreVector,
};

use crate::output::{records, records_csv, records_json};

#[derive(Parser)]
#[command(
    name = "markovrank",
    version,
    about = "PageRank and MarkovRank for directed networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// α-PageRank of a network
    Pagerank {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 0.85, allow_negative_numbers = true)]
        alpha: f64,
        #[command(flatten)]
        solve: SolveArgs,
    },
    /// ε-MarkovRank of a network
    Markovrank {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        epsilon: f64,
        #[command(flatten)]
        solve: SolveArgs,
    },
    /// Compare the rank statistics of two score files (`label,score[,rank]`)
    Compare {
        file_a: PathBuf,
        file_b: PathBuf,
        #[arg(long, default_value_t = markovrank::rank_stats::DEFAULT_TIE_TOLERANCE)]
        tie_tol: f64,
        #[arg(long, value_enum, default_value_t = CompareFormat::Text)]
        out: CompareFormat,
    },
    /// Generate a random adjacency matrix as dense CSV
    Gen {
        #[arg(long, value_enum)]
        model: Model,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Block layout, e.g. `80x80@0.1,80x20@0;20x80@0.1,20x20@0.1`
        #[arg(long)]
        blocks: Option<String>,
        /// Keep diagonal draws instead of forcing a zero diagonal
        #[arg(long)]
        keep_diagonal: bool,
        /// Output file (stdout when absent)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep PageRank over α and MarkovRank over ε and compare rank statistics
    Sweep {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_delimiter = ',', default_values_t = [0.8, 0.85, 0.9, 0.95, 0.99, 1.0])]
        alphas: Vec<f64>,
        #[arg(long, value_delimiter = ',', default_values_t = [0.0, 1e-12, 0.1, 0.5, 1.0])]
        epsilons: Vec<f64>,
        #[arg(long, value_enum, default_value_t = MethodArg::Exact)]
        method: MethodArg,
        #[arg(long, default_value_t = 1e-15)]
        tol: f64,
        #[arg(long, default_value_t = markovrank::rank_stats::DEFAULT_TIE_TOLERANCE)]
        tie_tol: f64,
        #[arg(long, value_enum, default_value_t = SweepFormat::Json)]
        out: SweepFormat,
        /// Output file (stdout when absent)
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct InputArgs {
    /// Network file
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Dense)]
    format: Format,
    /// Roster CSV fixing node set and order (edge lists only)
    #[arg(long)]
    roster: Option<PathBuf>,
    #[arg(long, default_value = "screen_name")]
    roster_column: String,
    #[arg(long, default_value = "following")]
    following_column: String,
    #[arg(long, default_value = "followed")]
    followed_column: String,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long, value_enum, default_value_t = MethodArg::Exact)]
    method: MethodArg,
    /// Power-iteration stopping tolerance
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = RecordFormat::Csv)]
    out: RecordFormat,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dense,
    Edgelist,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Exact,
    Power,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Exact => Method::Exact,
            MethodArg::Power => Method::Power,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum RecordFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum CompareFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Er,
    Block,
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_network(args: &InputArgs) -> anyhow::Result<AdjacencyMatrix> {
    let text = read(&args.input)?;
    let network = match args.format {
        Format::Dense => {
            if args.roster.is_some() {
                bail!("--roster applies to edge lists only");
            }
            parse_dense_matrix(&text, None)?
        }
        Format::Edgelist => {
            let roster = match &args.roster {
                Some(path) => Some(read_roster(read(path)?.as_bytes(), &args.roster_column)?),
                None => None,
            };
            let columns = EdgeColumns {
                following: args.following_column.clone(),
                followed: args.followed_column.clone(),
            };
            load_edge_list(text.as_bytes(), &columns, roster.as_deref())?
        }
    };
    Ok(network)
}

fn emit(text: &str, path: Option<&Path>) -> anyhow::Result<()> {
    match path {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn print_scores(scores: &ScoreVector, format: RecordFormat) -> anyhow::Result<()> {
    if scores.is_degenerate() {
        eprintln!(
            "WARN: some scores are <= {:e} or negative; the ranking is numerically unstable",
            markovrank::eigenrank::DEGENERACY_THRESHOLD
        );
    }
    let recs = records(scores);
    let text = match format {
        RecordFormat::Csv => records_csv(&recs),
        RecordFormat::Json => records_json(&recs),
    };
    emit(&text, None)
}

#[derive(Deserialize)]
struct ScoreRow {
    label: String,
    score: f64,
}

fn read_scores(path: &Path) -> anyhow::Result<ScoreVector> {
    let mut rdr =
        csv::Reader::from_path(path).with_context(|| format!("reading {}", path.display()))?;
    let mut labels = Vec::new();
    let mut values = Vec::new();
    for row in rdr.deserialize() {
        let row: ScoreRow = row.with_context(|| format!("parsing {}", path.display()))?;
        labels.push(row.label);
        values.push(row.score);
    }
    Ok(ScoreVector::new(labels, values)?)
}

/// Reorders `b` to the label order of `a`.
fn align(a: &ScoreVector, b: &ScoreVector) -> anyhow::Result<Vec<f64>> {
    if a.len() != b.len() {
        bail!("score files cover {} and {} nodes", a.len(), b.len());
    }
    let index: HashMap<&str, f64> = b
        .labels()
        .iter()
        .map(String::as_str)
        .zip(b.values().iter().copied())
        .collect();
    if index.len() != b.len() {
        bail!("duplicate labels in the second score file");
    }
    a.labels()
        .iter()
        .map(|l| {
            index
                .get(l.as_str())
                .copied()
                .with_context(|| format!("label {l:?} missing from the second score file"))
        })
        .collect()
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Pagerank {
            input,
            alpha,
            solve,
        } => {
            let network = load_network(&input)?;
            let cfg = PowerIterConfig::with_tolerance(solve.tol);
            let scores = page_rank(&network, alpha, solve.method.into(), &cfg)?;
            print_scores(&scores, solve.out)
        }
        Command::Markovrank {
            input,
            epsilon,
            solve,
        } => {
            let network = load_network(&input)?;
            let cfg = PowerIterConfig::with_tolerance(solve.tol);
            let scores = markov_rank(&network, epsilon, solve.method.into(), &cfg)?;
            print_scores(&scores, solve.out)
        }
        Command::Compare {
            file_a,
            file_b,
            tie_tol,
            out,
        } => {
            let a = read_scores(&file_a)?;
            let b = read_scores(&file_b)?;
            let x = a.values();
            let y = align(&a, &b)?;
            let agreement = agreement_count(x, &y, tie_tol)?;
            let identical = is_identical_rank(x, &y, tie_tol)?;
            let a_finer_b = is_finer(x, &y, tie_tol)?;
            let b_finer_a = is_finer(&y, x, tie_tol)?;
            let text = match out {
                CompareFormat::Text => format!(
                    "agreement {agreement}\nidentical {identical}\na_finer_b {a_finer_b}\nb_finer_a {b_finer_a}\n"
                ),
                CompareFormat::Json => {
                    let mut s = serde_json::to_string_pretty(&serde_json::json!({
                        "n": x.len(),
                        "agreement": agreement,
                        "identical": identical,
                        "a_finer_b": a_finer_b,
                        "b_finer_a": b_finer_a,
                    }))?;
                    s.push('\n');
                    s
                }
            };
            emit(&text, None)
        }
        Command::Gen {
            model,
            n,
            p,
            seed,
            blocks,
            keep_diagonal,
            out,
        } => {
            let network = match model {
                Model::Er => {
                    let (Some(n), Some(p)) = (n, p) else {
                        bail!("--model er needs --n and --p");
                    };
                    if keep_diagonal {
                        gen_block(&BlockSpec::uniform(n, p, false, seed))?
                    } else {
                        gen_er(n, p, seed)?
                    }
                }
                Model::Block => {
                    let Some(blocks) = blocks else {
                        bail!("--model block needs --blocks");
                    };
                    gen_block(&BlockSpec::parse(&blocks, !keep_diagonal, seed)?)?
                }
            };
            emit(&network.to_dense_csv(), out.as_deref())
        }
        Command::Sweep {
            input,
            alphas,
            epsilons,
            method,
            tol,
            tie_tol,
            out,
            output,
        } => {
            let network = load_network(&input)?;
            let options = SweepOptions {
                method: method.into(),
                power: PowerIterConfig::with_tolerance(tol),
                tie_tolerance: tie_tol,
            };
            let report = invariance_sweep_with(&network, &alphas, &epsilons, &options);
            let mut text = match out {
                SweepFormat::Json => report.to_json()?,
                SweepFormat::Csv => report.to_csv()?,
            };
            if !text.ends_with('\n') {
                text.push('\n');
            }
            emit(&text, output.as_deref())
        }
    }
}

fn main() -> ExitCode {
    // clap reports usage errors with status 2, which is reserved here
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            match err.downcast_ref::<markovrank::Error>() {
                Some(markovrank::Error::Multiplicity { .. }) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

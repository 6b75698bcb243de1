use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use stancegraph::decoder::{decode, EdgeProbTensor};
use stancegraph::io::dataset::format_dataset_row;
use stancegraph::io::{self, Config, DatasetRow, ReportFile};
use stancegraph::metrics::evaluate_corpus;
use stancegraph::order::{reorder, Ordering};
use stancegraph::perturb::perturb;
use stancegraph::stats::{compute_stats, StatsSummary};
use stancegraph::validate::{validate, ValidationReport};
use stancegraph::ExplanationGraph;

#[derive(Parser)]
#[command(name = "stancegraph", version, about = "Explanation graphs for stance prediction")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// key = value run configuration
    #[arg(long)]
    config: Option<PathBuf>,
    /// Write output here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check structural constraints for every dataset graph, or one graph
    Validate {
        #[arg(long, conflicts_with = "graph")]
        dataset: Option<PathBuf>,
        #[arg(long, requires_all = ["belief", "argument"])]
        graph: Option<String>,
        #[arg(long)]
        belief: Option<String>,
        #[arg(long)]
        argument: Option<String>,
        /// Exit with status 1 when any graph is invalid
        #[arg(long)]
        strict: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Average graph statistics per dataset file plus a total row
    Stats {
        #[arg(long, required = true)]
        dataset: Vec<PathBuf>,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Score predictions against a dataset and emit a JSON report
    Eval {
        #[arg(long)]
        dataset: PathBuf,
        #[arg(long)]
        predictions: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Decode graphs from edge probability tensors (JSON object or array)
    Decode {
        #[arg(long, required = true)]
        tensor: Vec<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Emit (belief, graph, label) rows with perturbed negatives
    SecaData {
        #[arg(long)]
        dataset: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Perturbed graphs per gold graph
        #[arg(long, default_value_t = 1)]
        negatives: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Rewrite dataset graphs in a chosen edge order
    Linearize {
        #[arg(long)]
        dataset: PathBuf,
        #[arg(long, default_value = "dfs")]
        ordering: Ordering,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Exit with status 1 when any row is skipped
        #[arg(long)]
        strict: bool,
        #[command(flatten)]
        common: Common,
    },
}

fn open_out(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(std::io::stdout().lock())),
    })
}

fn load_config(path: Option<&Path>) -> Result<Config> {
    Ok(match path {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    })
}

fn load_dataset(path: &Path) -> Result<Vec<DatasetRow>> {
    let rows = io::dataset::parse_dataset(&io::read_text(path)?)
        .with_context(|| format!("{}", path.display()))?;
    if rows.is_empty() {
        bail!(io::IoError::Empty(path.display().to_string()));
    }
    Ok(rows)
}

#[derive(Serialize)]
struct ValidationLine<'a> {
    row: usize,
    graph: usize,
    valid: bool,
    failures: Vec<&'static str>,
    checks: &'a ValidationReport,
}

fn cmd_validate(
    dataset: Option<PathBuf>,
    single: Option<(String, String, String)>,
    strict: bool,
    common: Common,
) -> Result<u8> {
    let vocab = load_config(common.config.as_deref())?.vocab()?;
    let items: Vec<(usize, usize, ExplanationGraph, String, String)> = match (dataset, single) {
        (Some(path), _) => load_dataset(&path)?
            .into_iter()
            .flat_map(|r| {
                let (line, belief, argument) = (r.line, r.belief, r.argument);
                r.graphs
                    .into_iter()
                    .enumerate()
                    .map(move |(k, g)| (line, k + 1, g, belief.clone(), argument.clone()))
            })
            .collect(),
        (None, Some((graph, belief, argument))) => {
            let g = ExplanationGraph::parse(&graph).context("row 1")?;
            vec![(1, 1, g, belief, argument)]
        }
        (None, None) => bail!("pass --dataset or --graph with --belief and --argument"),
    };
    let mut out = open_out(common.out.as_deref())?;
    let mut invalid = 0;
    for (row, graph, g, belief, argument) in &items {
        let report = validate(g, belief, argument, &vocab);
        invalid += usize::from(!report.overall);
        let line = ValidationLine {
            row: *row,
            graph: *graph,
            valid: report.overall,
            failures: report.failures(),
            checks: &report,
        };
        writeln!(out, "{}", serde_json::to_string(&line)?)?;
    }
    out.flush()?;
    eprintln!("{} of {} graphs valid", items.len() - invalid, items.len());
    Ok(if strict && invalid > 0 { 1 } else { 0 })
}

#[derive(Serialize)]
struct StatsRow {
    split: String,
    #[serde(flatten)]
    summary: StatsSummary,
    skipped: usize,
}

fn cmd_stats(paths: Vec<PathBuf>, json: bool, common: Common) -> Result<u8> {
    let mut table = Vec::new();
    let mut all = Vec::new();
    let mut all_skipped = 0;
    for path in &paths {
        let split = path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into());
        let mut stats = Vec::new();
        let mut skipped = 0;
        for row in load_dataset(path)? {
            for g in &row.graphs {
                match compute_stats(g, &row.belief, &row.argument) {
                    Ok(s) => stats.push(s),
                    Err(e) => {
                        eprintln!("warning: {}: row {}: skipped ({e})", path.display(), row.line);
                        skipped += 1;
                    }
                }
            }
        }
        let summary = StatsSummary::from_stats(&stats)
            .with_context(|| format!("{}: no graph has defined statistics", path.display()))?;
        all.extend(stats);
        all_skipped += skipped;
        table.push(StatsRow { split, summary, skipped });
    }
    let total = StatsSummary::from_stats(&all).expect("non-empty by construction");
    table.push(StatsRow { split: "Total".into(), summary: total, skipped: all_skipped });

    let mut out = open_out(common.out.as_deref())?;
    if json {
        writeln!(out, "{}", serde_json::to_string_pretty(&table)?)?;
    } else {
        writeln!(out, "{:<12} {:>7} {:>6} {:>6} {:>6} {:>6} {:>7} {:>7}", "split", "graphs", "#N", "#E", "#EN", "D", "%NL", "%EN")?;
        for r in &table {
            let s = &r.summary;
            writeln!(
                out,
                "{:<12} {:>7} {:>6.2} {:>6.2} {:>6.2} {:>6.2} {:>7.1} {:>7.1}",
                r.split, s.graphs, s.mean_nodes, s.mean_edges, s.mean_external_nodes, s.mean_depth,
                s.pct_non_linear, s.pct_with_external
            )?;
        }
    }
    out.flush()?;
    Ok(0)
}

fn cmd_eval(dataset: PathBuf, predictions: PathBuf, common: Common) -> Result<u8> {
    let config = load_config(common.config.as_deref())?;
    let rows = load_dataset(&dataset)?;
    let preds = io::dataset::parse_predictions(&io::read_text(&predictions)?, config.strict_parse)
        .with_context(|| format!("{}", predictions.display()))?;
    if preds.len() != rows.len() {
        bail!(io::IoError::RowMismatch { dataset: rows.len(), predictions: preds.len() });
    }
    let scorer_set = config.scorers()?;
    let report = evaluate_corpus(
        &io::to_samples(&rows),
        &io::to_predictions(&preds),
        scorer_set.scorers(),
        &config.eval_config()?,
    )?;
    let file = ReportFile::new(&report);
    let mut out = open_out(common.out.as_deref())?;
    writeln!(out, "{}", file.to_json())?;
    out.flush()?;
    let a = &file.aggregate;
    eprintln!(
        "SA {:.2}  StCA {:.2}  SeCA {:.2}  GBS {:.2}  GED {:.4}  EA {:.2}",
        a.sa, a.stca, a.seca, a.gbs, a.ged, a.ea
    );
    Ok(0)
}

fn read_tensors(path: &Path) -> Result<Vec<Result<EdgeProbTensor, String>>> {
    let text = io::read_text(path)?;
    let value: serde_json::Value =
        serde_json::from_str(&text).with_context(|| format!("{}: invalid json", path.display()))?;
    let items = match value {
        serde_json::Value::Array(items) => items,
        other => vec![other],
    };
    Ok(items
        .into_iter()
        .map(|v| EdgeProbTensor::from_json(&v.to_string()).map_err(|e| e.to_string()))
        .collect())
}

fn cmd_decode(paths: Vec<PathBuf>, common: Common) -> Result<u8> {
    let vocab = load_config(common.config.as_deref())?.vocab()?;
    let mut out = open_out(common.out.as_deref())?;
    let mut failures = 0;
    for path in &paths {
        for (i, tensor) in read_tensors(path)?.into_iter().enumerate() {
            match tensor.and_then(|t| decode(&t, &vocab).map_err(|e| e.to_string())) {
                Ok(d) => writeln!(out, "{}", d.graph)?,
                Err(e) => {
                    eprintln!("error: {} tensor {}: {e}", path.display(), i + 1);
                    failures += 1;
                }
            }
        }
    }
    out.flush()?;
    Ok(if failures > 0 { 2 } else { 0 })
}

fn cmd_seca_data(dataset: PathBuf, seed: u64, negatives: usize, common: Common) -> Result<u8> {
    let vocab = load_config(common.config.as_deref())?.vocab()?;
    let rows = load_dataset(&dataset)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = open_out(common.out.as_deref())?;
    for row in &rows {
        for g in &row.graphs {
            writeln!(out, "{}\t{}\t{}", row.belief, g, row.stance)?;
            for _ in 0..negatives {
                let ops = rng.gen_range(1..=3);
                let sub_seed: u64 = rng.gen();
                match perturb(g, &vocab, ops, sub_seed) {
                    Ok(p) => writeln!(out, "{}\t{}\tincorrect", row.belief, p)?,
                    Err(e) => eprintln!("warning: row {}: no perturbation ({e})", row.line),
                }
            }
        }
    }
    out.flush()?;
    Ok(0)
}

fn cmd_linearize(dataset: PathBuf, ordering: Ordering, seed: u64, strict: bool, common: Common) -> Result<u8> {
    let rows = load_dataset(&dataset)?;
    let mut out = open_out(common.out.as_deref())?;
    let mut skipped = 0;
    for row in &rows {
        match row.graphs.iter().map(|g| reorder(g, ordering, seed)).collect::<Result<Vec<_>, _>>() {
            Ok(graphs) => writeln!(out, "{}", format_dataset_row(&row.belief, &row.argument, row.stance, &graphs))?,
            Err(e) => {
                eprintln!("warning: row {}: skipped ({e})", row.line);
                skipped += 1;
            }
        }
    }
    out.flush()?;
    Ok(if strict && skipped > 0 { 1 } else { 0 })
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Validate { dataset, graph, belief, argument, strict, common } => {
            let single = graph.map(|g| (g, belief.unwrap_or_default(), argument.unwrap_or_default()));
            cmd_validate(dataset, single, strict, common)
        }
        Command::Stats { dataset, json, common } => cmd_stats(dataset, json, common),
        Command::Eval { dataset, predictions, common } => cmd_eval(dataset, predictions, common),
        Command::Decode { tensor, common } => cmd_decode(tensor, common),
        Command::SecaData { dataset, seed, negatives, common } => cmd_seca_data(dataset, seed, negatives, common),
        Command::Linearize { dataset, ordering, seed, strict, common } => {
            cmd_linearize(dataset, ordering, seed, strict, common)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

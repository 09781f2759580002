use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use cbir::evaluation::{evaluate_all, n_range, sweep_curves};
use cbir::index_store::{build_index, ingest_dataset, load_index, save_index, FeatureIndex};
use cbir::{decode_image, extract_feature, query_with, Metric, QuantizationScheme, QueryOptions};
use clap::{Args, Parser, Subcommand};

/// Color/texture image retrieval: build feature indexes, query them and
/// measure precision and recall.
#[derive(Debug, Parser)]
#[command(name = "cbir", version)]
struct Cli {
    /// Worker threads for extraction and evaluation (0 = one per core).
    #[arg(long, global = true, env = "CBIR_THREADS", default_value_t = 0)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the feature vector of one image.
    Extract {
        #[arg(long)]
        image: PathBuf,
        #[command(flatten)]
        scheme: SchemeArg,
        /// Write the record here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Extract features for a dataset directory and write an index file.
    Index {
        #[arg(long)]
        dataset: PathBuf,
        #[command(flatten)]
        scheme: SchemeArg,
        /// Default metric recorded in the index.
        #[arg(long, default_value = "d1")]
        metric: Metric,
        #[arg(long)]
        out: PathBuf,
    },
    /// Rank the index against a query image or an indexed id.
    Query {
        #[arg(long)]
        index: PathBuf,
        #[arg(long, required_unless_present = "id", conflicts_with = "id")]
        image: Option<PathBuf>,
        /// Use the stored features of an indexed record as the query.
        #[arg(long)]
        id: Option<String>,
        #[command(flatten)]
        ranking: RankingArgs,
        /// Drop the query's own record from the results.
        #[arg(long)]
        exclude_self: bool,
        /// Print the result as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Use every indexed image as a query and report precision/recall.
    Evaluate {
        #[arg(long)]
        index: PathBuf,
        #[command(flatten)]
        ranking: RankingArgs,
        /// JSON report destination.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Plain-text table destination (always printed to stdout).
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Precision/recall over a sweep of retrieval depths, as CSV.
    Curves {
        #[arg(long)]
        index: PathBuf,
        #[arg(long)]
        metric: Option<Metric>,
        /// Use depths 16, 32, ..., 96 instead of 10, 20, ..., 100.
        #[arg(long, conflicts_with = "n_values")]
        step16: bool,
        /// Explicit comma-separated depths.
        #[arg(long, value_delimiter = ',')]
        n_values: Option<Vec<usize>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct SchemeArg {
    /// Hue and saturation bin counts as K,L (or HSV(K,L,256)).
    #[arg(long, default_value = "18,10")]
    scheme: QuantizationScheme,
}

#[derive(Debug, Args)]
struct RankingArgs {
    /// d1 | euclidean | manhattan | canberra | chisq (default: the index's).
    #[arg(long)]
    metric: Option<Metric>,
    /// Retrieval depth.
    #[arg(short = 'n', long = "n", default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
    n: u64,
}

fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load(path: &Path) -> Result<FeatureIndex> {
    load_index(path).with_context(|| format!("loading index {}", path.display()))
}

/// Longest indexed id that the image path ends with, on a component boundary.
fn id_for_path<'a>(index: &'a FeatureIndex, image: &Path) -> Option<&'a str> {
    let path = image.to_string_lossy().replace('\\', "/");
    index
        .records()
        .iter()
        .map(|r| r.id.as_str())
        .filter(|id| path == *id || path.ends_with(&format!("/{id}")))
        .max_by_key(|id| id.len())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Extract { image, scheme, out } => {
            let rgb = decode_image(&image)?;
            let feature = extract_feature(&rgb, scheme.scheme)?;
            let values: Vec<String> = feature.values().iter().map(f64::to_string).collect();
            let line = format!(
                "{}\t{}\t{}\n",
                image.display(),
                scheme.scheme,
                values.join(" ")
            );
            write_output(out.as_deref(), &line)?;
        }
        Command::Index {
            dataset,
            scheme,
            metric,
            out,
        } => {
            let images = ingest_dataset(&dataset)?;
            let built = build_index(&images, scheme.scheme)?;
            let index =
                FeatureIndex::from_records(built.scheme(), metric, built.records().to_vec())?;
            save_index(&index, &out).with_context(|| format!("writing {}", out.display()))?;
            eprintln!(
                "indexed {} images in {} classes with {} -> {}",
                index.len(),
                index.class_sizes().len(),
                index.scheme(),
                out.display()
            );
        }
        Command::Query {
            index,
            image,
            id,
            ranking,
            exclude_self,
            json,
        } => {
            let index = load(&index)?;
            let metric = ranking.metric.unwrap_or(index.metric_default());
            let (feature, query_id) = match (&image, &id) {
                (Some(path), _) => {
                    let rgb = decode_image(path)?;
                    (
                        extract_feature(&rgb, index.scheme())?,
                        id_for_path(&index, path).map(str::to_string),
                    )
                }
                (None, Some(id)) => match index.get(id) {
                    Some(r) => (r.feature.clone(), Some(id.clone())),
                    None => bail!("id {id:?} is not in the index"),
                },
                (None, None) => unreachable!("clap requires --image or --id"),
            };
            if exclude_self && query_id.is_none() {
                bail!("--exclude-self: query image does not correspond to an indexed id");
            }
            let opts = QueryOptions {
                query_id: query_id.as_deref(),
                exclude_self,
            };
            let result = query_with(&index, &feature, metric, ranking.n as usize, &opts)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&result)?);
            } else {
                println!("rank\tid\tlabel\tdistance");
                for (rank, hit) in result.hits.iter().enumerate() {
                    println!(
                        "{}\t{}\t{}\t{:.10}",
                        rank + 1,
                        hit.id,
                        hit.label,
                        hit.distance
                    );
                }
            }
        }
        Command::Evaluate {
            index,
            ranking,
            out,
            table,
        } => {
            let index = load(&index)?;
            let metric = ranking.metric.unwrap_or(index.metric_default());
            let report = evaluate_all(&index, metric, ranking.n as usize)?;
            let text = report.to_table();
            print!("{text}");
            if let Some(path) = table {
                write_output(Some(&path), &text)?;
            }
            if let Some(path) = out {
                write_output(Some(&path), &report.to_json())?;
            }
        }
        Command::Curves {
            index,
            metric,
            step16,
            n_values,
            out,
        } => {
            let index = load(&index)?;
            let metric = metric.unwrap_or(index.metric_default());
            let ns = match n_values {
                Some(ns) => ns,
                None if step16 => n_range(16, 96, 16),
                None => n_range(10, 100, 10),
            };
            let curve = sweep_curves(&index, metric, &ns)?;
            write_output(out.as_deref(), &curve.to_csv())?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
        {
            eprintln!(
                "error: cannot configure {} worker threads: {e}",
                cli.threads
            );
            return ExitCode::FAILURE;
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

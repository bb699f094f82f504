//! Command-line interface.
//!
//! Data goes to standard output and diagnostics to standard error. A failed
//! run prints `error[<category>]: <message>` and exits with the category's
//! code: usage 2, io 3, parse 4, validation 5, analysis 6.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gridrobust_core::{
    assess_asset, betweenness_with, compare_rankings_with, generate, AssetId, AssetRobustness,
    Direction, EnumerationLimits, Error as CoreError, LimitPolicy, SynthSpec, DEFAULT_BUCKET_EDGES,
};
use log::{info, warn};

use crate::error::Error;
use crate::gridfile::{read_grid, write_grid, GridFormat};
use crate::numfmt::Precision;
use crate::parallel::{par_criticality_sweep, par_network_robustness, thread_pool};
use crate::report::{emit_report, BetweennessView, GridSummary, Report, ReportFormat};

#[derive(Debug, Parser)]
#[command(
    name = "gridrobust",
    version,
    about = "Upstream robustness and criticality of distribution grids"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OnLimitArg {
    Fail,
    Truncate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PresetArg {
    Substation,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Output format for reports and for `synth` output files.
    #[arg(long, global = true, value_enum, default_value = "csv")]
    pub format: FormatArg,
    /// Longest path, in intermediate assets, to enumerate (0: unlimited).
    #[arg(long, global = true, default_value_t = EnumerationLimits::DEFAULT_MAX_PATH_LENGTH)]
    pub max_path_len: usize,
    /// Most paths to enumerate per target (0: unlimited).
    #[arg(long, global = true, default_value_t = EnumerationLimits::DEFAULT_MAX_PATHS)]
    pub max_paths: usize,
    /// What to do when a path limit is reached.
    #[arg(long, global = true, value_enum, default_value = "fail")]
    pub on_limit: OnLimitArg,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    pub jobs: Option<u16>,
    /// Print floats in shortest round-trip form instead of 6 significant digits.
    #[arg(long, global = true)]
    pub full_precision: bool,
}

impl GlobalArgs {
    fn limits(&self) -> EnumerationLimits {
        EnumerationLimits::default()
            .with_max_path_length(self.max_path_len)
            .with_max_paths(self.max_paths)
            .with_policy(match self.on_limit {
                OnLimitArg::Fail => LimitPolicy::Fail,
                OnLimitArg::Truncate => LimitPolicy::Truncate,
            })
    }

    fn report_format(&self) -> ReportFormat {
        match self.format {
            FormatArg::Csv => ReportFormat::Csv,
            FormatArg::Json => ReportFormat::Json,
        }
    }

    fn precision(&self) -> Precision {
        if self.full_precision {
            Precision::Full
        } else {
            Precision::default()
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a grid and check its invariants.
    Validate { grid: PathBuf },
    /// Upstream robustness of load points and the network mean.
    Robustness {
        grid: PathBuf,
        /// Report these assets instead of every load point.
        #[arg(long, value_delimiter = ',')]
        targets: Option<Vec<String>>,
    },
    /// Removal sweep: criticality of every asset.
    Criticality {
        grid: PathBuf,
        /// Only print the K most critical assets.
        #[arg(long)]
        top: Option<usize>,
        /// Bucket edges in percent.
        #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_BUCKET_EDGES)]
        buckets: Vec<f64>,
        /// Only evaluate these assets.
        #[arg(long, value_delimiter = ',')]
        candidates: Option<Vec<String>>,
    },
    /// Shortest-path betweenness, normalized by its maximum.
    Betweenness {
        grid: PathBuf,
        #[arg(long)]
        undirected_betweenness: bool,
    },
    /// Compare removal criticality against normalized betweenness.
    Compare {
        grid: PathBuf,
        #[arg(long)]
        top: usize,
        #[arg(long)]
        undirected_betweenness: bool,
        /// Rank gap above which an asset is listed as divergent (default: K).
        #[arg(long)]
        divergence_threshold: Option<usize>,
    },
    /// Generate a synthetic radial grid with tie lines.
    Synth {
        #[arg(long, value_enum)]
        preset: Option<PresetArg>,
        #[arg(long)]
        sources: Option<u32>,
        #[arg(long)]
        depth: Option<u32>,
        #[arg(long)]
        branching: Option<u32>,
        #[arg(long)]
        tie_fraction: Option<f64>,
        #[arg(long)]
        load_fraction: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output directory (csv) or file (json).
        #[arg(short, long)]
        output: PathBuf,
    },
}

const UNPRESET: SynthSpec = SynthSpec {
    sources: 1,
    depth: 3,
    branching: 3,
    tie_fraction: 0.0,
    load_fraction: 0.5,
    seed: 0,
};

fn ids(list: &[String]) -> Vec<AssetId> {
    list.iter().map(AssetId::new).collect()
}

/// Runs one parsed command and returns the bytes for standard output.
pub fn execute(cli: &Cli) -> Result<Vec<u8>, Error> {
    let g = &cli.global;
    let limits = g.limits();
    let format = g.report_format();
    let precision = g.precision();
    let pool = || thread_pool(g.jobs.map(usize::from));

    match &cli.command {
        Command::Validate { grid } => {
            let graph = read_grid(grid)?;
            if graph.source_count() == 0 {
                warn!("grid has no source asset; analyses will fail");
            }
            if graph.load_points().is_empty() {
                warn!("grid has no load point; network analyses will fail");
            }
            Ok(emit_report(
                &Report::Grid(GridSummary::of(&graph)),
                format,
                precision,
            ))
        }
        Command::Robustness { grid, targets } => {
            let graph = read_grid(grid)?;
            let network = par_network_robustness(&pool()?, &graph, &limits)?;
            if !network.truncated.is_empty() {
                warn!(
                    "{} load point(s) hit a path limit; their values are lower bounds",
                    network.truncated.len()
                );
            }
            let rows: Option<Vec<AssetRobustness>> = targets
                .as_ref()
                .map(|t| {
                    t.iter()
                        .map(|id| assess_asset(&graph, id, &limits))
                        .collect::<Result<_, CoreError>>()
                })
                .transpose()?;
            Ok(emit_report(
                &Report::Robustness {
                    network: &network,
                    targets: rows.as_deref(),
                },
                format,
                precision,
            ))
        }
        Command::Criticality {
            grid,
            top,
            buckets,
            candidates,
        } => {
            let graph = read_grid(grid)?;
            let candidates = candidates.as_deref().map(ids);
            let ranking =
                par_criticality_sweep(&pool()?, &graph, &limits, candidates.as_deref(), buckets)?;
            info!("evaluated {} candidate(s)", ranking.len());
            Ok(emit_report(
                &Report::Criticality {
                    ranking: &ranking,
                    top: *top,
                },
                format,
                precision,
            ))
        }
        Command::Betweenness {
            grid,
            undirected_betweenness,
        } => {
            let graph = read_grid(grid)?;
            let direction = direction(*undirected_betweenness);
            let view = match betweenness_with(&graph, direction) {
                Ok(report) => BetweennessView::from(&report),
                Err(CoreError::AllZeroBetweenness { raw }) => {
                    warn!("every betweenness value is zero; normalized values omitted");
                    BetweennessView {
                        raw,
                        normalized: None,
                        direction,
                    }
                }
                Err(e) => return Err(e.into()),
            };
            Ok(emit_report(&Report::Betweenness(&view), format, precision))
        }
        Command::Compare {
            grid,
            top,
            undirected_betweenness,
            divergence_threshold,
        } => {
            let graph = read_grid(grid)?;
            let rups =
                par_criticality_sweep(&pool()?, &graph, &limits, None, &DEFAULT_BUCKET_EDGES)?;
            let b = betweenness_with(&graph, direction(*undirected_betweenness))?.to_ranking();
            let report =
                compare_rankings_with(&rups, &b, *top, divergence_threshold.unwrap_or(*top))?;
            Ok(emit_report(&Report::Comparison(&report), format, precision))
        }
        Command::Synth {
            preset,
            sources,
            depth,
            branching,
            tie_fraction,
            load_fraction,
            seed,
            output,
        } => {
            let base = match preset {
                Some(PresetArg::Substation) => SynthSpec::substation(*seed),
                None => SynthSpec {
                    seed: *seed,
                    ..UNPRESET
                },
            };
            let spec = SynthSpec {
                sources: sources.unwrap_or(base.sources),
                depth: depth.unwrap_or(base.depth),
                branching: branching.unwrap_or(base.branching),
                tie_fraction: tie_fraction.unwrap_or(base.tie_fraction),
                load_fraction: load_fraction.unwrap_or(base.load_fraction),
                seed: *seed,
            };
            let graph = generate(&spec).map_err(|e| Error::Usage(e.to_string()))?;
            let grid_format = match g.format {
                FormatArg::Csv => GridFormat::Csv,
                FormatArg::Json => GridFormat::Json,
            };
            write_grid(&graph, output, grid_format)?;
            info!("wrote {} assets to {}", graph.len(), output.display());
            Ok(emit_report(
                &Report::Grid(GridSummary::of(&graph)),
                format,
                precision,
            ))
        }
    }
}

fn direction(undirected: bool) -> Direction {
    if undirected {
        Direction::Undirected
    } else {
        Direction::Directed
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn clap_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn globals_after_subcommand() {
        let cli = Cli::try_parse_from([
            "gridrobust",
            "criticality",
            "g",
            "--format",
            "json",
            "--max-paths",
            "5",
            "--on-limit",
            "truncate",
            "--buckets",
            "5,50",
        ])
        .unwrap();
        assert_eq!(cli.global.format, FormatArg::Json);
        let limits = cli.global.limits();
        assert_eq!(limits.max_paths_per_target.map(|n| n.get()), Some(5));
        assert_eq!(limits.on_limit, LimitPolicy::Truncate);
        match cli.command {
            Command::Criticality { buckets, .. } => assert_eq!(buckets, vec![5.0, 50.0]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn defaults() {
        let cli = Cli::try_parse_from(["gridrobust", "criticality", "g"]).unwrap();
        assert_eq!(cli.global.limits(), EnumerationLimits::default());
        assert!(
            matches!(cli.command, Command::Criticality { ref buckets, .. } if buckets == &DEFAULT_BUCKET_EDGES)
        );
    }

    #[test]
    fn jobs_must_be_positive() {
        assert!(Cli::try_parse_from(["gridrobust", "--jobs", "0", "validate", "g"]).is_err());
    }
}

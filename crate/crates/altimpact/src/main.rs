use std::path::PathBuf;
use std::process::ExitCode;

use altimpact::commands::{self, parse_pair, RunConfig, Source};
use altimpact_core::{Category, Date, DateWindow, IndicatorSet};
use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};

/// Altmetric impact analysis of a literature-review sample.
#[derive(Debug, Parser)]
#[command(name = "altimpact", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Resolve DOIs and gather indicators into the knowledge graph.
    Harvest(Opts),
    /// Summary tables, densities and correlations of the graph.
    Analyze(Opts),
    /// Geometric and impact-score selections.
    Select(Opts),
    /// Cross the selections with STROBE quality scores.
    Assess(Opts),
    /// Markdown digest of the run.
    Report(Opts),
    /// harvest, analyze, select, assess and report in one go.
    RunAll(Opts),
}

#[derive(Debug, Args)]
struct Opts {
    /// Sample CSV (id, authors, title, doi[, publication_date, journal]).
    #[arg(long)]
    sample: Option<PathBuf>,
    /// Indicator fixture JSON, used instead of the live services.
    #[arg(long, conflicts_with = "live")]
    fixture: Option<PathBuf>,
    /// DOI resolver fixture JSON; without it the sample's DOIs are trusted.
    #[arg(long, requires = "fixture")]
    resolver: Option<PathBuf>,
    /// Query Crossref, Scopus and PlumX (see ALTIMPACT_* variables).
    #[arg(long)]
    live: bool,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    #[arg(long, default_value_t = 0.95)]
    quantile: f64,
    /// Impact-score sets: C, A, I, I', A' or categories joined by '+'.
    #[arg(long, value_delimiter = ',')]
    sets: Vec<IndicatorSet>,
    /// Geometric pairs such as c:s.
    #[arg(long, value_delimiter = ',', value_parser = parse_pair)]
    pairs: Vec<(Category, Category)>,
    #[arg(long)]
    window_start: Option<Date>,
    #[arg(long)]
    window_end: Option<Date>,
    /// STROBE checklist CSV (doi, reviewer, item_1..item_22).
    #[arg(long)]
    checklists: Option<PathBuf>,
    #[arg(long, default_value_t = 4)]
    threads: usize,
}

impl Opts {
    fn into_config(self) -> anyhow::Result<RunConfig> {
        let mut config = RunConfig::new(self.out);
        let default = DateWindow::covid19_default();
        config.window = DateWindow::new(
            self.window_start.unwrap_or(default.start()),
            self.window_end.unwrap_or(default.end()),
        )
        .context("invalid publication window")?;
        config.source = match (self.fixture, self.live) {
            (Some(indicators), false) => Some(Source::Fixture {
                indicators,
                resolver: self.resolver,
            }),
            (None, true) => Some(Source::Live),
            (None, false) => None,
            (Some(_), true) => bail!("--fixture and --live are mutually exclusive"),
        };
        config.sample = self.sample;
        config.quantile = self.quantile;
        if !self.sets.is_empty() {
            config.sets = self.sets;
        }
        if !self.pairs.is_empty() {
            config.pairs = self.pairs;
        }
        config.checklists = self.checklists;
        config.threads = self.threads;
        config.validate()?;
        Ok(config)
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = Cli::parse();
    let (run, opts): (fn(&RunConfig) -> _, Opts) = match cli.command {
        Command::Harvest(o) => (commands::cmd_harvest, o),
        Command::Analyze(o) => (commands::cmd_analyze, o),
        Command::Select(o) => (commands::cmd_select, o),
        Command::Assess(o) => (commands::cmd_assess, o),
        Command::Report(o) => (commands::cmd_report, o),
        Command::RunAll(o) => (commands::cmd_run_all, o),
    };
    let result = opts
        .into_config()
        .and_then(|config| run(&config).map_err(anyhow::Error::from));
    match result {
        Ok(outcome) => ExitCode::from(outcome.exit_code()),
        Err(e) => {
            log::error!("{e:#}");
            ExitCode::from(1)
        }
    }
}

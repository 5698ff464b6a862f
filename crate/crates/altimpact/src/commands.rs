//! Pipeline stages behind the command-line interface. Each stage reads its
//! inputs from files, writes its outputs under the output directory and
//! reports whether it ran fully or only partially.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use altimpact_core::assess::{self, merge_reviews, Mark, QualityReport, StrobeChecklist};
use altimpact_core::kgraph::{self, parse_triples};
use altimpact_core::select::{self, Method, SelectionMatrix};
use altimpact_core::{
    Category, DateWindow, Doi, IndicatorSet, KnowledgeGraph, PaperRecord, SampleSet,
    SelectionResult, Timestamp,
};
use log::{info, warn};
use serde::Serialize;

use crate::analyze::{analyze, write_analysis};
use crate::fixture::{FixtureResolver, FixtureStore, SampleDoiResolver};
use crate::formats::{
    file_label, fmt_num, kg_to_json, observations_to_json, parse_checklists,
    selection_matrix_from_csv, selection_matrix_to_csv, to_json_bytes, write_atomic, FormatError,
};
use crate::harvest::{run_pipeline, Backends, MetadataResolver, PipelineOutput};
use crate::ingest::{parse_sample, IngestError};
use crate::live::{CrossrefResolver, LiveConfig, PlumxAltmetrics, ScopusCitations};

pub const OBSERVATIONS_FILE: &str = "observations.json";
pub const KG_FILE: &str = "kg.triples";
pub const KG_JSON_FILE: &str = "kg.json";
pub const FAILURES_FILE: &str = "failures.json";
pub const RESOLUTIONS_FILE: &str = "resolutions.csv";
pub const SELECTIONS_FILE: &str = "selections.csv";
pub const SELECTIONS_JSON_FILE: &str = "selections.json";
pub const SELECTION_MATRIX_FILE: &str = "selection_matrix.csv";
pub const QUALITY_REPORT_FILE: &str = "quality_report.csv";
pub const STROBE_SCORES_FILE: &str = "strobe_scores.csv";
pub const REPORT_FILE: &str = "report.md";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Ingest { path: PathBuf, source: IngestError },
    #[error("{path}: {source}")]
    Format { path: PathBuf, source: FormatError },
    #[error("no knowledge graph at {0}; run harvest first")]
    MissingKg(PathBuf),
    #[error("the knowledge graph at {0} is empty")]
    EmptyKg(PathBuf),
    #[error("no selection matrix at {0}; run select first")]
    MissingSelections(PathBuf),
    #[error("no STROBE checklists given")]
    MissingChecklists,
    #[error("reviewers disagree on {0} and no consensus checklist was given")]
    NoConsensus(Doi),
    #[error("cannot build the knowledge graph: {0}")]
    Graph(#[from] kgraph::KgError),
    #[error("{path}:{line}: {reason}")]
    Triples {
        path: PathBuf,
        line: usize,
        reason: String,
    },
}

/// How a stage finished when it did not hit a hard error.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Outcome {
    Success,
    /// Outputs were written, but some items failed.
    Partial,
}

impl Outcome {
    pub fn exit_code(self) -> u8 {
        match self {
            Outcome::Success => 0,
            Outcome::Partial => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Fixture {
        indicators: PathBuf,
        resolver: Option<PathBuf>,
    },
    Live,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub sample: Option<PathBuf>,
    pub source: Option<Source>,
    pub out: PathBuf,
    pub window: DateWindow,
    pub quantile: f64,
    pub sets: Vec<IndicatorSet>,
    pub pairs: Vec<(Category, Category)>,
    pub checklists: Option<PathBuf>,
    pub threads: usize,
}

pub fn default_pairs() -> Vec<(Category, Category)> {
    use Category::*;
    vec![
        (Citations, SocialMedia),
        (Citations, Mentions),
        (SocialMedia, Mentions),
    ]
}

impl RunConfig {
    pub fn new(out: impl Into<PathBuf>) -> Self {
        RunConfig {
            sample: None,
            source: None,
            out: out.into(),
            window: DateWindow::covid19_default(),
            quantile: 0.95,
            sets: IndicatorSet::standard().to_vec(),
            pairs: default_pairs(),
            checklists: None,
            threads: 4,
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if !(self.quantile > 0.0 && self.quantile < 1.0) {
            return Err(CliError::Config(format!(
                "quantile must lie strictly between 0 and 1, got {}",
                self.quantile
            )));
        }
        if self.threads == 0 {
            return Err(CliError::Config("threads must be at least 1".into()));
        }
        Ok(())
    }

    fn path(&self, name: &str) -> PathBuf {
        self.out.join(name)
    }
}

/// Parses `c:s`-style pairs of category names or letters.
pub fn parse_pair(s: &str) -> Result<(Category, Category), String> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| format!("expected two categories joined by ':', got {s:?}"))?;
    let cat = |x: &str| x.trim().parse::<Category>().map_err(|e| e.to_string());
    Ok((cat(a)?, cat(b)?))
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    write_atomic(path, bytes).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn format_err(path: &Path) -> impl FnOnce(FormatError) -> CliError + '_ {
    move |source| CliError::Format {
        path: path.to_path_buf(),
        source,
    }
}

fn csv_bytes(header: &[&str], rows: &[Vec<String>]) -> Result<Vec<u8>, FormatError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    w.into_inner()
        .map_err(|e| FormatError::Invalid(e.to_string()))
}

fn write_csv(path: &Path, header: &[&str], rows: &[Vec<String>]) -> Result<(), CliError> {
    let bytes = csv_bytes(header, rows).map_err(format_err(path))?;
    write(path, &bytes)
}

pub fn load_sample(config: &RunConfig) -> Result<SampleSet, CliError> {
    let path = config
        .sample
        .as_deref()
        .ok_or_else(|| CliError::Config("--sample is required".into()))?;
    let sample = parse_sample(&read(path)?, config.window).map_err(|source| CliError::Ingest {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(sample)
}

/// Retrieval time stamped on observations. Fixture runs honour
/// `SOURCE_DATE_EPOCH` (default 0) so their output is reproducible.
pub fn retrieval_time(source: &Source) -> Timestamp {
    match source {
        Source::Fixture { .. } => Timestamp(
            std::env::var("SOURCE_DATE_EPOCH")
                .ok()
                .and_then(|s| s.trim().parse().ok())
                .unwrap_or(0),
        ),
        Source::Live => Timestamp(
            SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs() as i64)
                .unwrap_or(0),
        ),
    }
}

fn harvest_with(
    config: &RunConfig,
    sample: &SampleSet,
    source: &Source,
) -> Result<PipelineOutput, CliError> {
    let at = retrieval_time(source);
    match source {
        Source::Fixture {
            indicators,
            resolver,
        } => {
            let store =
                FixtureStore::from_json(&read(indicators)?).map_err(|e| CliError::Format {
                    path: indicators.clone(),
                    source: FormatError::Invalid(e.to_string()),
                })?;
            info!("fixture holds {} DOIs", store.len());
            let table =
                match resolver {
                    Some(p) => Some(FixtureResolver::from_json(&read(p)?).map_err(|e| {
                        CliError::Format {
                            path: p.clone(),
                            source: FormatError::Invalid(e.to_string()),
                        }
                    })?),
                    None => None,
                };
            let resolver: &dyn MetadataResolver = match &table {
                Some(t) => t,
                None => &SampleDoiResolver,
            };
            let (citations, altmetrics) = (store.citations(), store.altmetrics());
            let backends = Backends {
                resolver,
                citations: &citations,
                altmetrics: &altmetrics,
            };
            Ok(run_pipeline(sample, &backends, at, config.threads))
        }
        Source::Live => {
            let live = LiveConfig::from_env().map_err(CliError::Config)?;
            info!("live harvest with {live:?}");
            let resolver = CrossrefResolver::new(&live);
            let citations = ScopusCitations::new(&live);
            let altmetrics = PlumxAltmetrics::new(&live);
            let backends = Backends {
                resolver: &resolver,
                citations: &citations,
                altmetrics: &altmetrics,
            };
            Ok(run_pipeline(sample, &backends, at, config.threads))
        }
    }
}

/// Resolves and harvests the sample, then writes the observations, the
/// graph (triples and JSON), the failure log and the DOI resolutions.
pub fn cmd_harvest(config: &RunConfig) -> Result<Outcome, CliError> {
    config.validate()?;
    let source = config
        .source
        .as_ref()
        .ok_or_else(|| CliError::Config("give exactly one of --fixture or --live".into()))?;
    let sample = load_sample(config)?;
    for w in altimpact_core::sample::validate_sample(&sample) {
        warn!("{}: {w:?}", w.local_id());
    }
    info!("harvesting {} records", sample.len());
    let output = harvest_with(config, &sample, source)?;
    let kg = kgraph::populate(&output.observations)?;

    let path = config.path(OBSERVATIONS_FILE);
    write(
        &path,
        &observations_to_json(&output.observations).map_err(format_err(&path))?,
    )?;
    write(&config.path(KG_FILE), kg.to_triples_text().as_bytes())?;
    let path = config.path(KG_JSON_FILE);
    write(&path, &kg_to_json(&kg).map_err(format_err(&path))?)?;
    let path = config.path(FAILURES_FILE);
    write(
        &path,
        &to_json_bytes(&output.failures).map_err(format_err(&path))?,
    )?;
    let rows: Vec<Vec<String>> = output
        .resolutions
        .iter()
        .map(|r| {
            vec![
                r.local_id.clone(),
                r.local_doi.as_ref().map(Doi::to_string).unwrap_or_default(),
                r.doi.to_string(),
                r.candidates.to_string(),
                r.mismatch().to_string(),
            ]
        })
        .collect();
    write_csv(
        &config.path(RESOLUTIONS_FILE),
        &["local_id", "sample_doi", "doi", "candidates", "mismatch"],
        &rows,
    )?;

    let mismatches = output.resolutions.iter().filter(|r| r.mismatch()).count();
    info!(
        "{} observations over {} articles; {} DOI mismatches; {} failures",
        output.observations.len(),
        kg.article_count(),
        mismatches,
        output.failures.len()
    );
    Ok(if output.failures.is_empty() {
        Outcome::Success
    } else {
        Outcome::Partial
    })
}

/// Sample records keyed by the DOI they resolved to during harvest, falling
/// back to the DOI written in the sample.
pub fn records_by_doi<'a>(
    config: &RunConfig,
    sample: &'a SampleSet,
) -> Result<BTreeMap<Doi, &'a PaperRecord>, CliError> {
    let mut out: BTreeMap<Doi, &PaperRecord> = sample
        .records()
        .iter()
        .filter_map(|r| Some((r.doi.clone()?, r)))
        .collect();
    let path = config.path(RESOLUTIONS_FILE);
    if !path.exists() {
        return Ok(out);
    }
    let bytes = read(&path)?;
    let mut reader = csv::Reader::from_reader(bytes.as_slice());
    for row in reader.records() {
        let row = row.map_err(|e| CliError::Format {
            path: path.clone(),
            source: e.into(),
        })?;
        let (Some(id), Some(doi)) = (row.get(0), row.get(2)) else {
            continue;
        };
        if let (Some(record), Ok(doi)) = (sample.get(id), Doi::parse(doi)) {
            out.insert(doi, record);
        }
    }
    Ok(out)
}

pub fn load_kg(config: &RunConfig) -> Result<KnowledgeGraph, CliError> {
    let path = config.path(KG_FILE);
    if !path.exists() {
        return Err(CliError::MissingKg(path));
    }
    let bytes = read(&path)?;
    let text = String::from_utf8(bytes).map_err(|e| CliError::Triples {
        path: path.clone(),
        line: 0,
        reason: e.to_string(),
    })?;
    let triples = parse_triples(&text).map_err(|e| CliError::Triples {
        path: path.clone(),
        line: e.line,
        reason: e.reason.to_string(),
    })?;
    let kg = KnowledgeGraph::from_triples(triples)?;
    if kg.is_empty() {
        return Err(CliError::EmptyKg(path));
    }
    Ok(kg)
}

pub fn analysis_dir(config: &RunConfig) -> PathBuf {
    config.path("analysis")
}

pub fn cmd_analyze(config: &RunConfig) -> Result<Outcome, CliError> {
    config.validate()?;
    let kg = load_kg(config)?;
    let analysis = analyze(&kg);
    let dir = analysis_dir(config);
    write_analysis(&analysis, &dir).map_err(format_err(&dir))?;
    for c in &analysis.category_correlations {
        info!("r({}, {}) = {:.3}", c.a, c.b, c.result.r);
    }
    Ok(Outcome::Success)
}

#[derive(Debug, Serialize)]
struct MethodSummary {
    method: String,
    thresholds: Vec<f64>,
    selected: Vec<String>,
}

#[derive(Debug, Serialize)]
struct MethodFailure {
    method: String,
    error: String,
}

#[derive(Debug, Serialize)]
struct SelectionsJson {
    quantile: f64,
    methods: Vec<MethodSummary>,
    errors: Vec<MethodFailure>,
}

/// Every configured method over the graph's category matrix. Methods that
/// cannot be computed are returned separately and do not stop the others.
pub fn run_selections(
    kg: &KnowledgeGraph,
    config: &RunConfig,
) -> (Vec<SelectionResult>, Vec<(String, select::SelectError)>) {
    let matrix = kg.to_matrix(&Category::ALL);
    let mut ok = Vec::new();
    let mut failed = Vec::new();
    for &(a, b) in &config.pairs {
        match select::geometric_select(&matrix, a, b, config.quantile) {
            Ok(r) => ok.push(r),
            Err(e) => failed.push((Method::Geometric(a, b).label(), e)),
        }
    }
    for set in &config.sets {
        match select::cis(&matrix, set).and_then(|s| select::cis_select(set, &s, config.quantile)) {
            Ok(r) => ok.push(r),
            Err(e) => failed.push((Method::Cis(set.clone()).label(), e)),
        }
    }
    (ok, failed)
}

pub fn cmd_select(config: &RunConfig) -> Result<Outcome, CliError> {
    config.validate()?;
    let kg = load_kg(config)?;
    // publication dates for the time-series plot data, when a sample is given
    let sample = match &config.sample {
        Some(_) => Some(load_sample(config)?),
        None => None,
    };
    let (results, failed) = run_selections(&kg, config);
    for (m, e) in &failed {
        warn!("{m}: {e}");
    }

    let mut rows = Vec::new();
    for r in &results {
        let label = r.method.label();
        for (doi, scores) in &r.scores {
            rows.push(vec![
                doi.to_string(),
                label.clone(),
                scores
                    .iter()
                    .map(|s| fmt_num(*s))
                    .collect::<Vec<_>>()
                    .join(";"),
                r.thresholds
                    .iter()
                    .map(|t| fmt_num(*t))
                    .collect::<Vec<_>>()
                    .join(";"),
                (r.is_selected(doi) as u8).to_string(),
            ]);
        }
    }
    write_csv(
        &config.path(SELECTIONS_FILE),
        &["doi", "method", "score", "threshold", "selected"],
        &rows,
    )?;

    let matrix = select::selection_matrix(&results);
    let path = config.path(SELECTION_MATRIX_FILE);
    write(
        &path,
        &selection_matrix_to_csv(&matrix).map_err(format_err(&path))?,
    )?;

    let summary = SelectionsJson {
        quantile: config.quantile,
        methods: results
            .iter()
            .map(|r| MethodSummary {
                method: r.method.label(),
                thresholds: r.thresholds.clone(),
                selected: r.selected.iter().map(Doi::to_string).collect(),
            })
            .collect(),
        errors: failed
            .iter()
            .map(|(m, e)| MethodFailure {
                method: m.clone(),
                error: e.to_string(),
            })
            .collect(),
    };
    let path = config.path(SELECTIONS_JSON_FILE);
    write(&path, &to_json_bytes(&summary).map_err(format_err(&path))?)?;

    write_plot_data(config, &results, sample.as_ref())?;
    for r in &results {
        info!("{}: {} selected", r.method.label(), r.selected.len());
    }
    Ok(if failed.is_empty() {
        Outcome::Success
    } else {
        Outcome::Partial
    })
}

fn write_plot_data(
    config: &RunConfig,
    results: &[SelectionResult],
    sample: Option<&SampleSet>,
) -> Result<(), CliError> {
    let dir = config.path("plots");
    let dates: BTreeMap<Doi, String> = match sample {
        Some(sample) => records_by_doi(config, sample)?
            .into_iter()
            .filter_map(|(d, r)| Some((d, r.publication_date?.to_string())))
            .collect(),
        None => BTreeMap::new(),
    };
    for r in results {
        let label = file_label(&r.method.label());
        match &r.method {
            Method::Geometric(a, b) => {
                let rows: Vec<Vec<String>> = r
                    .scores
                    .iter()
                    .map(|(doi, z)| {
                        vec![
                            doi.to_string(),
                            fmt_num(z[0]),
                            fmt_num(z[1]),
                            (r.is_selected(doi) as u8).to_string(),
                        ]
                    })
                    .collect();
                let (za, zb) = (format!("z_{}", a.name()), format!("z_{}", b.name()));
                write_csv(
                    &dir.join(format!("zplane_{label}.csv")),
                    &["doi", &za, &zb, "selected"],
                    &rows,
                )?;
                write_csv(
                    &dir.join(format!("zplane_{label}_thresholds.csv")),
                    &[&za, &zb],
                    &[r.thresholds.iter().map(|t| fmt_num(*t)).collect()],
                )?;
            }
            Method::Cis(_) => {
                let threshold = fmt_num(r.thresholds[0]);
                let mut rows: Vec<Vec<String>> = r
                    .scores
                    .iter()
                    .map(|(doi, s)| {
                        vec![
                            doi.to_string(),
                            dates.get(doi).cloned().unwrap_or_default(),
                            fmt_num(s[0]),
                            threshold.clone(),
                            (r.is_selected(doi) as u8).to_string(),
                        ]
                    })
                    .collect();
                rows.sort_by(|x, y| (&x[1], &x[0]).cmp(&(&y[1], &y[0])));
                write_csv(
                    &dir.join(format!("timeline_{label}.csv")),
                    &["doi", "publication_date", "cis", "threshold", "selected"],
                    &rows,
                )?;
            }
        }
    }
    Ok(())
}

/// One scored checklist per article, with the number of items on which the
/// two reviewers differed.
#[derive(Debug, Clone, PartialEq)]
pub struct ArticleAssessment {
    pub checklist: StrobeChecklist,
    pub disagreements: usize,
}

/// Groups checklist rows per DOI. A `consensus` row is used when present and
/// is mandatory when the experts disagree.
pub fn consolidate(checklists: Vec<StrobeChecklist>) -> Result<Vec<ArticleAssessment>, CliError> {
    let mut by_doi: BTreeMap<Doi, Vec<StrobeChecklist>> = BTreeMap::new();
    for c in checklists {
        by_doi.entry(c.doi.clone()).or_default().push(c);
    }
    let mut out = Vec::new();
    for (doi, rows) in by_doi {
        let consensus = rows
            .iter()
            .find(|c| c.reviewer.eq_ignore_ascii_case("consensus"))
            .cloned();
        let experts: Vec<&StrobeChecklist> = rows
            .iter()
            .filter(|c| !c.reviewer.eq_ignore_ascii_case("consensus"))
            .collect();
        let assessment = match (experts.as_slice(), consensus) {
            ([a, b, ..], Some(c)) => {
                let (checklist, disagreements) =
                    merge_reviews(a, b, &c).map_err(|e| CliError::Config(e.to_string()))?;
                ArticleAssessment {
                    checklist,
                    disagreements,
                }
            }
            ([a, b, ..], None) => {
                let (checklist, disagreements) =
                    merge_reviews(a, b, a).map_err(|e| CliError::Config(e.to_string()))?;
                if disagreements > 0 {
                    return Err(CliError::NoConsensus(doi));
                }
                ArticleAssessment {
                    checklist,
                    disagreements,
                }
            }
            (_, Some(c)) => ArticleAssessment {
                checklist: c,
                disagreements: 0,
            },
            ([a], None) => ArticleAssessment {
                checklist: (*a).clone(),
                disagreements: 0,
            },
            ([], None) => unreachable!("every group has at least one row"),
        };
        out.push(assessment);
    }
    Ok(out)
}

pub fn load_selection_matrix(config: &RunConfig) -> Result<SelectionMatrix, CliError> {
    let path = config.path(SELECTION_MATRIX_FILE);
    if !path.exists() {
        return Err(CliError::MissingSelections(path));
    }
    selection_matrix_from_csv(&read(&path)?).map_err(format_err(&path))
}

/// Scores the checklists and marks every selected cell of the selection
/// matrix with the article's quality verdict.
pub fn assess_selections(
    matrix: &SelectionMatrix,
    assessments: &[ArticleAssessment],
) -> Result<(QualityReport, f64), CliError> {
    let checklists: Vec<StrobeChecklist> =
        assessments.iter().map(|a| a.checklist.clone()).collect();
    let scores: Vec<f64> = checklists.iter().map(assess::strobe_score).collect();
    let threshold = assess::quality_threshold(&scores)
        .map_err(|e| CliError::Config(format!("cannot derive the quality threshold: {e}")))?;
    let verdicts = assess::verdicts(&checklists, threshold);
    Ok((assess::quality_report(matrix, &verdicts), threshold))
}

pub fn cmd_assess(config: &RunConfig) -> Result<Outcome, CliError> {
    config.validate()?;
    let path = config
        .checklists
        .as_ref()
        .ok_or(CliError::MissingChecklists)?;
    if !path.exists() {
        return Err(CliError::Io {
            path: path.clone(),
            source: std::io::Error::new(std::io::ErrorKind::NotFound, "checklist file not found"),
        });
    }
    let checklists = parse_checklists(&read(path)?).map_err(format_err(path))?;
    if checklists.is_empty() {
        return Err(CliError::MissingChecklists);
    }
    let matrix = load_selection_matrix(config)?;
    let assessments = consolidate(checklists)?;
    let (report, threshold) = assess_selections(&matrix, &assessments)?;
    info!("quality threshold {threshold:.4}");

    let rows: Vec<Vec<String>> = assessments
        .iter()
        .map(|a| {
            let score = assess::strobe_score(&a.checklist);
            vec![
                a.checklist.doi.to_string(),
                a.checklist.checked().to_string(),
                fmt_num(score),
                a.disagreements.to_string(),
                (score >= threshold).to_string(),
            ]
        })
        .collect();
    write_csv(
        &config.path(STROBE_SCORES_FILE),
        &["doi", "checked", "score", "disagreements", "strong"],
        &rows,
    )?;

    let journals: BTreeMap<Doi, String> = match &config.sample {
        Some(_) => {
            let sample = load_sample(config)?;
            records_by_doi(config, &sample)?
                .into_iter()
                .filter_map(|(d, r)| Some((d, r.journal.clone()?)))
                .collect()
        }
        None => BTreeMap::new(),
    };
    let mut header = vec!["doi", "journal"];
    header.extend(report.methods.iter().map(String::as_str));
    let rows: Vec<Vec<String>> = report
        .rows
        .iter()
        .map(|(doi, marks)| {
            let mut row = vec![
                doi.to_string(),
                journals.get(doi).cloned().unwrap_or_default(),
            ];
            row.extend(marks.iter().map(|m| m.symbol().to_string()));
            row
        })
        .collect();
    write_csv(&config.path(QUALITY_REPORT_FILE), &header, &rows)?;

    let unassessed = report
        .rows
        .iter()
        .filter(|(_, m)| m.contains(&Mark::Unassessed))
        .count();
    if unassessed > 0 {
        warn!("{unassessed} selected articles have no checklist");
    }
    Ok(Outcome::Success)
}

/// A short Markdown digest of the graph, the selections and, when present,
/// the quality report.
pub fn cmd_report(config: &RunConfig) -> Result<Outcome, CliError> {
    config.validate()?;
    let kg = load_kg(config)?;
    let analysis = analyze(&kg);
    let (results, failed) = run_selections(&kg, config);
    let mut md = String::new();
    md.push_str("# altimpact report\n\n");
    md.push_str(&format!(
        "{} articles, {} triples.\n\n## Category correlations\n\n| a | b | r | p |\n|---|---|---|---|\n",
        kg.article_count(),
        kg.triples().len()
    ));
    for c in &analysis.category_correlations {
        md.push_str(&format!(
            "| {} | {} | {} | {} |\n",
            c.a,
            c.b,
            fmt_num(c.result.r),
            fmt_num(c.result.p_value)
        ));
    }
    md.push_str("\n## Zero-filtered subgraphs\n\n| subgraph | articles |\n|---|---|\n");
    for s in &analysis.subgraphs {
        md.push_str(&format!("| {} | {} |\n", s.name, s.articles));
    }
    md.push_str(&format!(
        "\n## Selections at q = {}\n\n| method | thresholds | selected |\n|---|---|---|\n",
        config.quantile
    ));
    for r in &results {
        let t: Vec<String> = r.thresholds.iter().map(|t| fmt_num(*t)).collect();
        md.push_str(&format!(
            "| {} | {} | {} |\n",
            r.method.label(),
            t.join(", "),
            r.selected.len()
        ));
    }
    for (m, e) in &failed {
        md.push_str(&format!("| {m} | failed: {e} | |\n"));
    }
    let quality = config.path(QUALITY_REPORT_FILE);
    if quality.exists() {
        let text = String::from_utf8_lossy(&read(&quality)?).into_owned();
        let strong_rows = text.lines().skip(1).filter(|l| l.contains('+')).count();
        md.push_str(&format!(
            "\n## Quality\n\n{} selected articles, {} with at least one strong mark.\n",
            text.lines().count().saturating_sub(1),
            strong_rows
        ));
    }
    write(&config.path(REPORT_FILE), md.as_bytes())?;
    Ok(if failed.is_empty() {
        Outcome::Success
    } else {
        Outcome::Partial
    })
}

/// harvest, analyze, select, then assess when checklists are given, then
/// report. Stops at the first hard error.
pub fn cmd_run_all(config: &RunConfig) -> Result<Outcome, CliError> {
    let mut worst = cmd_harvest(config)?;
    worst = worst.max(cmd_analyze(config)?);
    worst = worst.max(cmd_select(config)?);
    if config.checklists.is_some() {
        worst = worst.max(cmd_assess(config)?);
    }
    Ok(worst.max(cmd_report(config)?))
}

//! Descriptive analysis of the indicator graph: summary tables, source
//! coverage, density curves, correlation matrices and zero-filtered
//! subgraphs.

use std::collections::BTreeSet;
use std::path::Path;

use altimpact_core::stats::{self, CorrelationResult, KdeCurve, Summary};
use altimpact_core::{Category, IndicatorKey, KnowledgeGraph};
use log::{info, warn};

use crate::formats::{fmt_num, write_atomic, FormatError};

/// Category pairs at or below this r are not broken down by source.
pub const DRILL_DOWN_R: f64 = 0.6;
pub const KDE_POINTS: usize = 256;
/// Grid padding either side of the data, in bandwidths.
pub const KDE_PAD: f64 = 4.0;

/// The zero-filtered subgraphs studied by default.
pub fn default_subgraphs() -> Vec<(&'static str, Vec<Category>)> {
    use Category::*;
    vec![
        ("KG_ms", vec![Mentions, SocialMedia]),
        ("KG_mc", vec![Mentions, Citations]),
        ("KG_sc", vec![SocialMedia, Citations]),
        ("KG_msc", vec![Mentions, SocialMedia, Citations]),
    ]
}

#[derive(Debug, Clone, PartialEq)]
pub struct Correlation {
    pub a: String,
    pub b: String,
    pub result: CorrelationResult,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SubgraphAnalysis {
    pub name: String,
    pub categories: Vec<Category>,
    pub articles: usize,
    pub correlations: Vec<Correlation>,
    /// Per article, min-max normalised category values in `categories`
    /// order.
    pub trends: Vec<(String, Vec<f64>)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KdeSeries {
    pub name: String,
    /// "abs" or "z".
    pub scale: &'static str,
    pub curve: KdeCurve,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SourceDrillDown {
    pub categories: (Category, Category),
    pub correlations: Vec<Correlation>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Analysis {
    pub articles: usize,
    pub metric_summaries: Vec<(IndicatorKey, Summary)>,
    pub category_summaries: Vec<(Category, Summary)>,
    /// Articles with a strictly positive value, per indicator.
    pub source_counts: Vec<(IndicatorKey, usize)>,
    pub category_correlations: Vec<Correlation>,
    pub drill_downs: Vec<SourceDrillDown>,
    pub subgraphs: Vec<SubgraphAnalysis>,
    pub kde: Vec<KdeSeries>,
}

impl Analysis {
    pub fn category_correlation(&self, a: Category, b: Category) -> Option<&CorrelationResult> {
        find_pair(&self.category_correlations, a.name(), b.name())
    }

    pub fn source_correlation(&self, a: &str, b: &str) -> Option<&CorrelationResult> {
        self.drill_downs
            .iter()
            .find_map(|d| find_pair(&d.correlations, a, b))
    }

    pub fn subgraph(&self, name: &str) -> Option<&SubgraphAnalysis> {
        self.subgraphs.iter().find(|s| s.name == name)
    }
}

pub fn find_pair<'a>(list: &'a [Correlation], a: &str, b: &str) -> Option<&'a CorrelationResult> {
    list.iter()
        .find(|c| (c.a == a && c.b == b) || (c.a == b && c.b == a))
        .map(|c| &c.result)
}

fn to_f64(v: &[u64]) -> Vec<f64> {
    v.iter().map(|&x| x as f64).collect()
}

fn correlate(a: &str, x: &[f64], b: &str, y: &[f64]) -> Option<Correlation> {
    match stats::pearson(x, y) {
        Ok(result) => Some(Correlation {
            a: a.to_string(),
            b: b.to_string(),
            result,
        }),
        Err(e) => {
            warn!("skipping correlation {a} / {b}: {e}");
            None
        }
    }
}

fn kde_series(name: String, raw: &[f64], out: &mut Vec<KdeSeries>) {
    let Ok(z) = stats::zscores(raw) else {
        warn!("skipping density of {name}: degenerate distribution");
        return;
    };
    for (scale, values) in [("abs", raw), ("z", z.scores.as_slice())] {
        let curve = stats::silverman_bandwidth(values)
            .and_then(|h| stats::kde_grid(values, h, KDE_POINTS, KDE_PAD).map(|g| (h, g)))
            .and_then(|(h, grid)| stats::kde(values, &grid, Some(h)));
        match curve {
            Ok(curve) => out.push(KdeSeries {
                name: name.clone(),
                scale,
                curve,
            }),
            Err(e) => warn!("skipping density of {name} ({scale}): {e}"),
        }
    }
}

pub fn slug(s: &str) -> String {
    let mut out = String::new();
    for c in s.chars() {
        if c.is_ascii_alphanumeric() {
            out.push(c.to_ascii_lowercase());
        } else if !out.ends_with('_') {
            out.push('_');
        }
    }
    out.trim_matches('_').to_string()
}

fn metric_label(key: &IndicatorKey) -> String {
    format!("{}/{}", key.category, key.metric)
}

pub fn analyze(kg: &KnowledgeGraph) -> Analysis {
    let keys: Vec<IndicatorKey> = kg.indicator_keys().into_iter().cloned().collect();
    let matrix = kg.to_matrix(&Category::ALL);
    let cat_cols: Vec<(Category, Vec<f64>)> = Category::ALL
        .iter()
        .map(|&c| (c, matrix.column_f64(c).unwrap_or_default()))
        .collect();
    let source_cols: Vec<(IndicatorKey, Vec<u64>)> = keys
        .iter()
        .map(|k| (k.clone(), kg.source_column(k)))
        .collect();

    let mut kde = Vec::new();
    let mut category_summaries = Vec::new();
    for (c, col) in &cat_cols {
        if let Ok(s) = stats::summary(col) {
            category_summaries.push((*c, s));
        }
        kde_series(slug(c.name()), col, &mut kde);
    }
    let mut metric_summaries = Vec::new();
    let mut source_counts = Vec::new();
    for (k, col) in &source_cols {
        let col_f = to_f64(col);
        if let Ok(s) = stats::summary(&col_f) {
            metric_summaries.push((k.clone(), s));
        }
        source_counts.push((k.clone(), col.iter().filter(|&&v| v > 0).count()));
        kde_series(
            format!("{}_{}", slug(k.category.name()), slug(&k.metric)),
            &col_f,
            &mut kde,
        );
    }

    let mut category_correlations = Vec::new();
    for (i, (a, x)) in cat_cols.iter().enumerate() {
        for (b, y) in &cat_cols[i + 1..] {
            category_correlations.extend(correlate(a.name(), x, b.name(), y));
        }
    }

    let mut drill_downs = Vec::new();
    for c in &category_correlations {
        if c.result.r <= DRILL_DOWN_R {
            info!(
                "no source drill-down for {} / {} (r = {:.3})",
                c.a, c.b, c.result.r
            );
            continue;
        }
        let (Ok(ca), Ok(cb)) = (c.a.parse::<Category>(), c.b.parse::<Category>()) else {
            continue;
        };
        let mut correlations = Vec::new();
        for (ka, xa) in source_cols.iter().filter(|(k, _)| k.category == ca) {
            for (kb, xb) in source_cols.iter().filter(|(k, _)| k.category == cb) {
                correlations.extend(correlate(&ka.source, &to_f64(xa), &kb.source, &to_f64(xb)));
            }
        }
        drill_downs.push(SourceDrillDown {
            categories: (ca, cb),
            correlations,
        });
    }

    let subgraphs = default_subgraphs()
        .into_iter()
        .map(|(name, cats)| subgraph_analysis(kg, name, &cats))
        .collect();

    Analysis {
        articles: kg.article_count(),
        metric_summaries,
        category_summaries,
        source_counts,
        category_correlations,
        drill_downs,
        subgraphs,
        kde,
    }
}

pub fn subgraph_analysis(kg: &KnowledgeGraph, name: &str, cats: &[Category]) -> SubgraphAnalysis {
    let sub = kg.zero_filtered_subgraph(cats);
    let m = sub.to_matrix(cats);
    let cols: Vec<(Category, Vec<f64>)> = cats
        .iter()
        .map(|&c| (c, m.column_f64(c).unwrap_or_default()))
        .collect();
    let mut correlations = Vec::new();
    for (i, (a, x)) in cols.iter().enumerate() {
        for (b, y) in &cols[i + 1..] {
            correlations.extend(correlate(a.name(), x, b.name(), y));
        }
    }
    let normalised: Vec<Vec<f64>> = cols
        .iter()
        .map(|(_, col)| stats::minmax_normalize(col).unwrap_or_else(|_| vec![0.0; col.len()]))
        .collect();
    let trends = m
        .papers
        .iter()
        .enumerate()
        .map(|(k, d)| (d.to_string(), normalised.iter().map(|col| col[k]).collect()))
        .collect();
    SubgraphAnalysis {
        name: name.to_string(),
        categories: cats.to_vec(),
        articles: sub.article_count(),
        correlations,
        trends,
    }
}

fn write_csv(path: &Path, header: &[&str], rows: Vec<Vec<String>>) -> Result<(), FormatError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(&r)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| FormatError::Invalid(e.to_string()))?;
    write_atomic(path, &bytes)?;
    Ok(())
}

fn correlation_rows(list: &[Correlation]) -> Vec<Vec<String>> {
    list.iter()
        .map(|c| {
            vec![
                c.a.clone(),
                c.b.clone(),
                c.result.n.to_string(),
                fmt_num(c.result.r),
                fmt_num(c.result.p_value),
                fmt_num(c.result.standard_error),
            ]
        })
        .collect()
}

const CORR_HEADER: [&str; 6] = ["a", "b", "n", "r", "p_value", "standard_error"];

fn summary_row(level: &str, c: Category, metric: &str, source: &str, s: &Summary) -> Vec<String> {
    vec![
        level.into(),
        c.name().into(),
        metric.into(),
        source.into(),
        fmt_num(s.max),
        fmt_num(s.mean),
        fmt_num(s.median),
    ]
}

/// Writes every analysis table under `dir`.
pub fn write_analysis(a: &Analysis, dir: &Path) -> Result<(), FormatError> {
    let mut rows = Vec::new();
    for (c, s) in &a.category_summaries {
        for (k, ms) in a.metric_summaries.iter().filter(|(k, _)| k.category == *c) {
            rows.push(summary_row("metric", *c, &k.metric, &k.source, ms));
        }
        rows.push(summary_row("total", *c, "", "", s));
    }
    write_csv(
        &dir.join("summary.csv"),
        &[
            "level", "category", "metric", "source", "max", "mean", "median",
        ],
        rows,
    )?;

    let rows = a
        .source_counts
        .iter()
        .map(|(k, n)| {
            vec![
                k.source.clone(),
                k.category.name().into(),
                k.metric.clone(),
                n.to_string(),
                k.is_known().to_string(),
            ]
        })
        .collect();
    write_csv(
        &dir.join("sources.csv"),
        &["source", "category", "metric", "articles", "known"],
        rows,
    )?;

    write_csv(
        &dir.join("correlations_categories.csv"),
        &CORR_HEADER,
        correlation_rows(&a.category_correlations),
    )?;
    for d in &a.drill_downs {
        let name = format!(
            "correlations_sources_{}_{}.csv",
            slug(d.categories.0.name()),
            slug(d.categories.1.name())
        );
        write_csv(
            &dir.join(name),
            &CORR_HEADER,
            correlation_rows(&d.correlations),
        )?;
    }

    let mut size_rows = Vec::new();
    for s in &a.subgraphs {
        let cats: Vec<&str> = s.categories.iter().map(Category::name).collect();
        size_rows.push(vec![s.name.clone(), cats.join("+"), s.articles.to_string()]);
        write_csv(
            &dir.join(format!("subgraph_{}_correlations.csv", s.name)),
            &CORR_HEADER,
            correlation_rows(&s.correlations),
        )?;
        let mut header = vec!["doi"];
        header.extend(cats.iter().copied());
        let rows = s
            .trends
            .iter()
            .map(|(d, v)| {
                std::iter::once(d.clone())
                    .chain(v.iter().map(|x| fmt_num(*x)))
                    .collect()
            })
            .collect();
        write_csv(
            &dir.join(format!("subgraph_{}_trends.csv", s.name)),
            &header,
            rows,
        )?;
    }
    write_csv(
        &dir.join("subgraphs.csv"),
        &["name", "categories", "articles"],
        size_rows,
    )?;

    let kde_dir = dir.join("kde");
    let mut kde_rows = Vec::new();
    for k in &a.kde {
        let rows = k
            .curve
            .eval_points
            .iter()
            .zip(&k.curve.densities)
            .map(|(x, d)| vec![fmt_num(*x), fmt_num(*d)])
            .collect();
        write_csv(
            &kde_dir.join(format!("{}_{}.csv", k.scale, k.name)),
            &["x", "density"],
            rows,
        )?;
        let peak = k.curve.max_density();
        let span = k
            .curve
            .span_above(peak / 2.0)
            .unwrap_or((f64::NAN, f64::NAN));
        kde_rows.push(vec![
            k.name.clone(),
            k.scale.into(),
            fmt_num(k.curve.bandwidth),
            fmt_num(peak),
            fmt_num(span.0),
            fmt_num(span.1),
        ]);
    }
    write_csv(
        &kde_dir.join("bandwidths.csv"),
        &[
            "series",
            "scale",
            "bandwidth",
            "peak_density",
            "half_peak_from",
            "half_peak_to",
        ],
        kde_rows,
    )?;
    Ok(())
}

/// Names of the metric series, for reporting.
pub fn metric_names(a: &Analysis) -> BTreeSet<String> {
    a.metric_summaries
        .iter()
        .map(|(k, _)| metric_label(k))
        .collect()
}

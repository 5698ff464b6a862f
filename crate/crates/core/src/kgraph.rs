//! The indicator knowledge graph.
//!
//! Each article is a node `https://doi.org/<doi>`. Each observation becomes
//! an indicator node linked from its article by `hasIndicator` and described
//! by `hasCategory`, `hasMetric`, `hasSource`, `hasValue` and `retrievedAt`.
//! The triples are the source of truth; the lookup indexes are rebuilt from
//! them by [`KnowledgeGraph::from_triples`].

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::{self, Write as _};

use crate::date::Timestamp;
use crate::doi::{Doi, DOI_IRI_PREFIX};
use crate::indicator::{Category, IndicatorKey, IndicatorObservation};

pub const VOCAB: &str = "https://w3id.org/altimpact/vocab#";
pub const INDICATOR_PREFIX: &str = "https://w3id.org/altimpact/indicator/";
pub const HAS_INDICATOR: &str = "https://w3id.org/altimpact/vocab#hasIndicator";
pub const HAS_CATEGORY: &str = "https://w3id.org/altimpact/vocab#hasCategory";
pub const HAS_METRIC: &str = "https://w3id.org/altimpact/vocab#hasMetric";
pub const HAS_SOURCE: &str = "https://w3id.org/altimpact/vocab#hasSource";
pub const HAS_VALUE: &str = "https://w3id.org/altimpact/vocab#hasValue";
pub const RETRIEVED_AT: &str = "https://w3id.org/altimpact/vocab#retrievedAt";

const XSD: &str = "http://www.w3.org/2001/XMLSchema#";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Datatype {
    Integer,
    String,
    DateTime,
}

impl Datatype {
    pub fn local_name(&self) -> &'static str {
        match self {
            Datatype::Integer => "integer",
            Datatype::String => "string",
            Datatype::DateTime => "dateTime",
        }
    }

    fn from_iri(iri: &str) -> Option<Self> {
        match iri.strip_prefix(XSD)? {
            "integer" => Some(Datatype::Integer),
            "string" => Some(Datatype::String),
            "dateTime" => Some(Datatype::DateTime),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Iri(String),
    Literal { lexical: String, datatype: Datatype },
}

impl Term {
    fn string(s: &str) -> Self {
        Term::Literal {
            lexical: String::from(s),
            datatype: Datatype::String,
        }
    }

    fn literal_of(&self, datatype: Datatype) -> Option<&str> {
        match self {
            Term::Literal {
                lexical,
                datatype: d,
            } if *d == datatype => Some(lexical),
            _ => None,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Iri(iri) => write!(f, "<{iri}>"),
            Term::Literal { lexical, datatype } => {
                f.write_char('"')?;
                for c in lexical.chars() {
                    match c {
                        '"' => f.write_str("\\\"")?,
                        '\\' => f.write_str("\\\\")?,
                        '\t' => f.write_str("\\t")?,
                        '\n' => f.write_str("\\n")?,
                        '\r' => f.write_str("\\r")?,
                        c => f.write_char(c)?,
                    }
                }
                write!(f, "\"^^<{XSD}{}>", datatype.local_name())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub subject: String,
    pub predicate: String,
    pub object: Term,
}

impl Triple {
    fn new(subject: &str, predicate: &str, object: Term) -> Self {
        Triple {
            subject: String::from(subject),
            predicate: String::from(predicate),
            object,
        }
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "<{}>\t<{}>\t{}",
            self.subject, self.predicate, self.object
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KgError {
    #[error("conflicting values {first} and {second} for {doi} {key}")]
    DuplicateObservation {
        doi: Doi,
        key: IndicatorKey,
        first: u64,
        second: u64,
    },
    #[error("no article node for {0}")]
    UnknownArticle(Doi),
    #[error("malformed triple: {0}")]
    MalformedTriple(String),
    #[error("indicator node {0} lacks {1}")]
    IncompleteIndicator(String, &'static str),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {reason}")]
pub struct ParseError {
    pub line: usize,
    pub reason: String,
}

fn is_iri_safe(b: u8, keep_slash: bool) -> bool {
    b.is_ascii_alphanumeric()
        || matches!(b, b'-' | b'.' | b'_' | b'~' | b'(' | b')')
        || (keep_slash && b == b'/')
}

fn encode_into(s: &str, out: &mut String, keep_slash: bool) {
    for &b in s.as_bytes() {
        if is_iri_safe(b, keep_slash) {
            out.push(b as char);
        } else {
            let _ = write!(out, "%{b:02X}");
        }
    }
}

/// Appends `s` percent-encoding every byte outside the unreserved set plus
/// `/`, `(` and `)`.
pub fn percent_encode_into(s: &str, out: &mut String) {
    encode_into(s, out, true);
}

/// Like [`percent_encode_into`], but also encodes `/` so the result can be
/// used as a single path segment.
pub fn percent_encode_segment_into(s: &str, out: &mut String) {
    encode_into(s, out, false);
}

pub fn percent_decode(s: &str) -> Option<String> {
    let b = s.as_bytes();
    let mut bytes = Vec::with_capacity(b.len());
    let mut i = 0;
    while i < b.len() {
        if b[i] == b'%' {
            let hex = s.get(i + 1..i + 3)?;
            bytes.push(u8::from_str_radix(hex, 16).ok()?);
            i += 3;
        } else {
            bytes.push(b[i]);
            i += 1;
        }
    }
    String::from_utf8(bytes).ok()
}

pub fn indicator_iri(doi: &Doi, key: &IndicatorKey) -> String {
    let mut out = String::from(INDICATOR_PREFIX);
    for (k, part) in [doi.as_str(), key.category.name(), &key.metric, &key.source]
        .into_iter()
        .enumerate()
    {
        if k > 0 {
            out.push('/');
        }
        percent_encode_segment_into(part, &mut out);
    }
    out
}

fn doi_from_iri(iri: &str) -> Option<Doi> {
    let encoded = iri.strip_prefix(DOI_IRI_PREFIX)?;
    Doi::parse(&percent_decode(encoded)?).ok()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndicatorValue {
    pub value: u64,
    pub retrieved_at: Timestamp,
}

/// Immutable once built; all queries are read-only.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct KnowledgeGraph {
    triples: BTreeSet<Triple>,
    articles: BTreeMap<Doi, String>,
    indicators: BTreeMap<Doi, BTreeMap<IndicatorKey, IndicatorValue>>,
}

fn observation_triples(obs: &IndicatorObservation) -> [Triple; 6] {
    let article = obs.doi.iri();
    let node = indicator_iri(&obs.doi, &obs.key);
    [
        Triple::new(&article, HAS_INDICATOR, Term::Iri(node.clone())),
        Triple::new(&node, HAS_CATEGORY, Term::string(obs.key.category.name())),
        Triple::new(&node, HAS_METRIC, Term::string(&obs.key.metric)),
        Triple::new(&node, HAS_SOURCE, Term::string(&obs.key.source)),
        Triple::new(
            &node,
            HAS_VALUE,
            Term::Literal {
                lexical: obs.value.to_string(),
                datatype: Datatype::Integer,
            },
        ),
        Triple::new(
            &node,
            RETRIEVED_AT,
            Term::Literal {
                lexical: obs.retrieved_at.to_string(),
                datatype: Datatype::DateTime,
            },
        ),
    ]
}

/// Builds the graph from observations. Repeated observations with equal
/// values collapse to the earliest retrieval; differing values are an error.
pub fn populate(observations: &[IndicatorObservation]) -> Result<KnowledgeGraph, KgError> {
    let mut sorted: Vec<&IndicatorObservation> = observations.iter().collect();
    sorted.sort();
    let mut kept: Vec<&IndicatorObservation> = Vec::with_capacity(sorted.len());
    for obs in sorted {
        match kept.last() {
            Some(prev) if prev.doi == obs.doi && prev.key == obs.key => {
                if prev.value != obs.value {
                    return Err(KgError::DuplicateObservation {
                        doi: obs.doi.clone(),
                        key: obs.key.clone(),
                        first: prev.value,
                        second: obs.value,
                    });
                }
            }
            _ => kept.push(obs),
        }
    }
    let triples = kept.into_iter().flat_map(observation_triples).collect();
    KnowledgeGraph::from_triples(triples)
}

#[derive(Default)]
struct PartialIndicator<'a> {
    category: Option<&'a str>,
    metric: Option<&'a str>,
    source: Option<&'a str>,
    value: Option<&'a str>,
    retrieved_at: Option<&'a str>,
}

impl KnowledgeGraph {
    /// Rebuilds the article and indicator indexes from a triple set.
    pub fn from_triples(triples: BTreeSet<Triple>) -> Result<Self, KgError> {
        let malformed = |t: &Triple| KgError::MalformedTriple(t.to_string());
        let mut links: Vec<(&str, &str)> = Vec::new();
        let mut nodes: BTreeMap<&str, PartialIndicator<'_>> = BTreeMap::new();
        for t in &triples {
            if t.subject.is_empty() || t.predicate.is_empty() {
                return Err(malformed(t));
            }
            if t.predicate == HAS_INDICATOR {
                match &t.object {
                    Term::Iri(node) if !node.is_empty() => links.push((&t.subject, node)),
                    _ => return Err(malformed(t)),
                }
                continue;
            }
            let entry = nodes.entry(t.subject.as_str()).or_default();
            let (slot, datatype) = match t.predicate.as_str() {
                HAS_CATEGORY => (&mut entry.category, Datatype::String),
                HAS_METRIC => (&mut entry.metric, Datatype::String),
                HAS_SOURCE => (&mut entry.source, Datatype::String),
                HAS_VALUE => (&mut entry.value, Datatype::Integer),
                RETRIEVED_AT => (&mut entry.retrieved_at, Datatype::DateTime),
                _ => return Err(malformed(t)),
            };
            let lexical = t.object.literal_of(datatype).ok_or_else(|| malformed(t))?;
            if slot.replace(lexical).is_some() {
                return Err(malformed(t));
            }
        }

        let mut articles = BTreeMap::new();
        let mut indicators: BTreeMap<Doi, BTreeMap<IndicatorKey, IndicatorValue>> = BTreeMap::new();
        let mut linked = BTreeSet::new();
        for (article, node) in links {
            let doi = doi_from_iri(article)
                .ok_or_else(|| KgError::MalformedTriple(format!("bad article IRI <{article}>")))?;
            let part = nodes.get(node).ok_or(KgError::IncompleteIndicator(
                String::from(node),
                "properties",
            ))?;
            let missing = |what| KgError::IncompleteIndicator(String::from(node), what);
            let category: Category = part
                .category
                .ok_or_else(|| missing("hasCategory"))?
                .parse()
                .map_err(|_| missing("a known category"))?;
            let key = IndicatorKey::new(
                category,
                part.metric.ok_or_else(|| missing("hasMetric"))?,
                part.source.ok_or_else(|| missing("hasSource"))?,
            );
            let value = part
                .value
                .ok_or_else(|| missing("hasValue"))?
                .parse::<u64>()
                .map_err(|_| missing("a non-negative integer value"))?;
            let retrieved_at =
                Timestamp::parse_rfc3339(part.retrieved_at.ok_or_else(|| missing("retrievedAt"))?)
                    .map_err(|_| missing("a valid retrievedAt"))?;
            if !linked.insert(node) {
                return Err(KgError::MalformedTriple(format!("<{node}> linked twice")));
            }
            let per_doi = indicators.entry(doi.clone()).or_default();
            if let Some(prev) = per_doi.get(&key) {
                return Err(KgError::DuplicateObservation {
                    doi,
                    key,
                    first: prev.value,
                    second: value,
                });
            }
            per_doi.insert(
                key,
                IndicatorValue {
                    value,
                    retrieved_at,
                },
            );
            articles.entry(doi).or_insert_with(|| String::from(article));
        }
        if let Some(orphan) = nodes.keys().find(|n| !linked.contains(*n)) {
            return Err(KgError::MalformedTriple(format!(
                "indicator node <{orphan}> has no article"
            )));
        }
        Ok(KnowledgeGraph {
            triples,
            articles,
            indicators,
        })
    }

    pub fn triples(&self) -> &BTreeSet<Triple> {
        &self.triples
    }

    pub fn is_empty(&self) -> bool {
        self.articles.is_empty()
    }

    /// Number of article nodes.
    pub fn article_count(&self) -> usize {
        self.articles.len()
    }

    /// Article DOIs in lexicographic order.
    pub fn articles(&self) -> impl Iterator<Item = &Doi> {
        self.articles.keys()
    }

    pub fn article_iri(&self, doi: &Doi) -> Option<&str> {
        self.articles.get(doi).map(String::as_str)
    }

    pub fn contains(&self, doi: &Doi) -> bool {
        self.articles.contains_key(doi)
    }

    pub fn indicators_of(
        &self,
        doi: &Doi,
    ) -> Option<impl Iterator<Item = (&IndicatorKey, &IndicatorValue)>> {
        self.indicators.get(doi).map(|m| m.iter())
    }

    pub fn value(&self, doi: &Doi, key: &IndicatorKey) -> Option<u64> {
        self.indicators.get(doi)?.get(key).map(|v| v.value)
    }

    /// All observations in canonical order.
    pub fn observations(&self) -> Vec<IndicatorObservation> {
        self.indicators
            .iter()
            .flat_map(|(doi, m)| {
                m.iter().map(move |(key, v)| {
                    IndicatorObservation::new(doi.clone(), key.clone(), v.value, v.retrieved_at)
                })
            })
            .collect()
    }

    /// Every distinct (category, metric, source) present, in canonical order.
    pub fn indicator_keys(&self) -> BTreeSet<&IndicatorKey> {
        self.indicators.values().flat_map(|m| m.keys()).collect()
    }

    /// Sum of the article's metric values under `category`; 0 when none.
    pub fn category_value(&self, doi: &Doi, category: Category) -> Result<u64, KgError> {
        let per_doi = self
            .indicators
            .get(doi)
            .ok_or_else(|| KgError::UnknownArticle(doi.clone()))?;
        Ok(per_doi
            .iter()
            .filter(|(k, _)| k.category == category)
            .fold(0u64, |acc, (_, v)| acc.saturating_add(v.value)))
    }

    /// Papers × categories matrix of category values. Columns follow the
    /// canonical category order whatever order `categories` is given in.
    pub fn to_matrix(&self, categories: &[Category]) -> IndicatorMatrix {
        let mut cats = categories.to_vec();
        cats.sort();
        cats.dedup();
        let papers: Vec<Doi> = self.articles.keys().cloned().collect();
        let values = papers
            .iter()
            .map(|doi| {
                cats.iter()
                    .map(|c| self.category_value(doi, *c).unwrap_or(0))
                    .collect()
            })
            .collect();
        IndicatorMatrix {
            papers,
            categories: cats,
            values,
        }
    }

    /// Per-article values of one (category, metric, source), absent as 0.
    pub fn source_column(&self, key: &IndicatorKey) -> Vec<u64> {
        self.articles
            .keys()
            .map(|doi| self.value(doi, key).unwrap_or(0))
            .collect()
    }

    /// Keeps the articles whose value is strictly positive in every listed
    /// category, with their triples unchanged.
    pub fn zero_filtered_subgraph(&self, categories: &[Category]) -> KnowledgeGraph {
        let kept: BTreeSet<&Doi> = self
            .articles
            .keys()
            .filter(|doi| {
                categories
                    .iter()
                    .all(|c| self.category_value(doi, *c).is_ok_and(|v| v > 0))
            })
            .collect();
        let kept_iris: BTreeSet<&str> = kept.iter().map(|d| self.articles[*d].as_str()).collect();
        let kept_nodes: BTreeSet<&str> = self
            .triples
            .iter()
            .filter(|t| t.predicate == HAS_INDICATOR && kept_iris.contains(t.subject.as_str()))
            .filter_map(|t| match &t.object {
                Term::Iri(node) => Some(node.as_str()),
                Term::Literal { .. } => None,
            })
            .collect();
        let triples = self
            .triples
            .iter()
            .filter(|t| {
                kept_iris.contains(t.subject.as_str()) || kept_nodes.contains(t.subject.as_str())
            })
            .cloned()
            .collect();
        KnowledgeGraph {
            triples,
            articles: self
                .articles
                .iter()
                .filter(|(d, _)| kept.contains(d))
                .map(|(d, i)| (d.clone(), i.clone()))
                .collect(),
            indicators: self
                .indicators
                .iter()
                .filter(|(d, _)| kept.contains(d))
                .map(|(d, m)| (d.clone(), m.clone()))
                .collect(),
        }
    }

    /// One tab-separated line per triple, sorted bytewise, each line ending
    /// in `\n`.
    pub fn to_triples_text(&self) -> String {
        let mut lines: Vec<String> = self.triples.iter().map(Triple::to_string).collect();
        lines.sort_unstable();
        let mut out = String::with_capacity(lines.iter().map(|l| l.len() + 1).sum());
        for line in lines {
            out.push_str(&line);
            out.push('\n');
        }
        out
    }
}

fn parse_term(s: &str) -> Result<Term, String> {
    if let Some(iri) = s.strip_prefix('<').and_then(|r| r.strip_suffix('>')) {
        if iri.is_empty() || iri.contains(['<', '>']) {
            return Err(format!("bad IRI {s:?}"));
        }
        return Ok(Term::Iri(String::from(iri)));
    }
    let rest = s
        .strip_prefix('"')
        .ok_or_else(|| format!("expected IRI or literal, got {s:?}"))?;
    let mut lexical = String::new();
    let mut chars = rest.char_indices();
    let end = loop {
        match chars.next() {
            Some((i, '"')) => break i,
            Some((_, '\\')) => match chars.next() {
                Some((_, '"')) => lexical.push('"'),
                Some((_, '\\')) => lexical.push('\\'),
                Some((_, 't')) => lexical.push('\t'),
                Some((_, 'n')) => lexical.push('\n'),
                Some((_, 'r')) => lexical.push('\r'),
                _ => return Err(format!("bad escape in {s:?}")),
            },
            Some((_, c)) => lexical.push(c),
            None => return Err(format!("unterminated literal {s:?}")),
        }
    };
    let datatype = rest[end + 1..]
        .strip_prefix("^^<")
        .and_then(|r| r.strip_suffix('>'))
        .and_then(Datatype::from_iri)
        .ok_or_else(|| format!("literal without a supported datatype: {s:?}"))?;
    Ok(Term::Literal { lexical, datatype })
}

fn parse_iri(s: &str) -> Result<String, String> {
    match parse_term(s)? {
        Term::Iri(iri) => Ok(iri),
        Term::Literal { .. } => Err(format!("expected IRI, got {s:?}")),
    }
}

/// Parses the tab-separated triple format written by
/// [`KnowledgeGraph::to_triples_text`].
pub fn parse_triples(text: &str) -> Result<BTreeSet<Triple>, ParseError> {
    let mut out = BTreeSet::new();
    for (k, line) in text.lines().enumerate() {
        if line.is_empty() {
            continue;
        }
        let err = |reason: String| ParseError {
            line: k + 1,
            reason,
        };
        let mut parts = line.splitn(3, '\t');
        let (Some(s), Some(p), Some(o)) = (parts.next(), parts.next(), parts.next()) else {
            return Err(err(String::from("expected three tab-separated terms")));
        };
        out.insert(Triple {
            subject: parse_iri(s).map_err(err)?,
            predicate: parse_iri(p).map_err(err)?,
            object: parse_term(o).map_err(err)?,
        });
    }
    Ok(out)
}

/// Category values of every article, rows by DOI, columns in canonical
/// category order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndicatorMatrix {
    pub papers: Vec<Doi>,
    pub categories: Vec<Category>,
    pub values: Vec<Vec<u64>>,
}

impl IndicatorMatrix {
    pub fn column(&self, category: Category) -> Option<Vec<u64>> {
        let j = self.categories.iter().position(|c| *c == category)?;
        Some(self.values.iter().map(|row| row[j]).collect())
    }

    pub fn column_f64(&self, category: Category) -> Option<Vec<f64>> {
        self.column(category)
            .map(|c| c.into_iter().map(|v| v as f64).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn obs(
        doi: &str,
        cat: Category,
        metric: &str,
        source: &str,
        value: u64,
    ) -> IndicatorObservation {
        IndicatorObservation::new(
            Doi::parse(doi).unwrap(),
            IndicatorKey::new(cat, metric, source),
            value,
            Timestamp(1_582_502_400),
        )
    }

    #[test]
    fn single_observation_emits_six_triples() {
        let kg = populate(&[obs(
            "10.1/a",
            Category::Mentions,
            "Blog Mentions",
            "Blog",
            3,
        )])
        .unwrap();
        assert_eq!(kg.article_count(), 1);
        assert_eq!(kg.triples().len(), 6);
        let text = kg.to_triples_text();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 6);
        assert!(lines.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(
            lines[0],
            "<https://doi.org/10.1/a>\t<https://w3id.org/altimpact/vocab#hasIndicator>\t\
             <https://w3id.org/altimpact/indicator/10.1%2Fa/Mentions/Blog%20Mentions/Blog>"
        );
        assert!(text.contains("\"3\"^^<http://www.w3.org/2001/XMLSchema#integer>"));
        assert!(
            text.contains("\"2020-02-24T00:00:00Z\"^^<http://www.w3.org/2001/XMLSchema#dateTime>")
        );
    }

    #[test]
    fn empty_graph() {
        let kg = populate(&[]).unwrap();
        assert!(kg.is_empty());
        assert_eq!(kg.to_triples_text(), "");
        assert_eq!(kg.to_matrix(&Category::ALL).values.len(), 0);
    }

    #[test]
    fn category_value_sums_metrics() {
        let kg = populate(&[
            obs("10.1/a", Category::Mentions, "Blog Mentions", "Blog", 22),
            obs("10.1/a", Category::Mentions, "News Mentions", "News", 253),
            obs(
                "10.1/a",
                Category::Mentions,
                "Q&A Site Mentions",
                "Stack Exchange",
                0,
            ),
            obs("10.1/a", Category::Mentions, "References", "Wikipedia", 0),
            obs("10.1/b", Category::Citations, "Citation Count", "Scopus", 4),
        ])
        .unwrap();
        let a = Doi::parse("10.1/a").unwrap();
        let b = Doi::parse("10.1/b").unwrap();
        assert_eq!(kg.category_value(&a, Category::Mentions).unwrap(), 275);
        assert_eq!(kg.category_value(&b, Category::Mentions).unwrap(), 0);
        let missing = Doi::parse("10.1/zzz").unwrap();
        assert_eq!(
            kg.category_value(&missing, Category::Mentions),
            Err(KgError::UnknownArticle(missing))
        );
        let m = kg.to_matrix(&[Category::Mentions, Category::Citations, Category::Mentions]);
        assert_eq!(m.categories, vec![Category::Citations, Category::Mentions]);
        assert_eq!(m.papers, vec![a, b]);
        assert_eq!(m.values, vec![vec![0, 275], vec![4, 0]]);
    }

    #[test]
    fn duplicates() {
        let same = obs(
            "10.1/a",
            Category::Usage,
            "Abstract Views",
            "Digital Commons",
            5,
        );
        let mut later = same.clone();
        later.retrieved_at = Timestamp(1_600_000_000);
        let kg = populate(&[later, same.clone()]).unwrap();
        assert_eq!(kg.observations(), vec![same.clone()]);

        let mut other = same.clone();
        other.value = 6;
        assert!(matches!(
            populate(&[same, other]),
            Err(KgError::DuplicateObservation {
                first: 5,
                second: 6,
                ..
            })
        ));
    }

    #[test]
    fn zero_filter_keeps_positive_articles() {
        let kg = populate(&[
            obs("10.1/a", Category::Mentions, "News Mentions", "News", 1),
            obs("10.1/a", Category::SocialMedia, "Tweets", "Twitter", 2),
            obs("10.1/b", Category::Mentions, "News Mentions", "News", 0),
            obs("10.1/b", Category::SocialMedia, "Tweets", "Twitter", 9),
        ])
        .unwrap();
        let sub = kg.zero_filtered_subgraph(&[Category::Mentions, Category::SocialMedia]);
        assert_eq!(
            sub.articles().map(Doi::as_str).collect::<Vec<_>>(),
            vec!["10.1/a"]
        );
        assert_eq!(sub.triples().len(), 12);
        assert!(sub.triples().is_subset(kg.triples()));
        assert_eq!(
            sub,
            KnowledgeGraph::from_triples(sub.triples().clone()).unwrap()
        );
        assert!(kg.zero_filtered_subgraph(&[Category::Usage]).is_empty());
    }

    #[test]
    fn triples_round_trip() {
        let kg = populate(&[
            obs(
                "10.1016/s0140-6736(20)30183-5",
                Category::SocialMedia,
                "Shares, Likes & Comments",
                "Facebook",
                33043,
            ),
            obs(
                "10.1/q\"uote",
                Category::Mentions,
                "Q&A Site Mentions",
                "Stack Exchange",
                1,
            ),
        ])
        .unwrap();
        let text = kg.to_triples_text();
        let back = KnowledgeGraph::from_triples(parse_triples(&text).unwrap()).unwrap();
        assert_eq!(back, kg);
        assert_eq!(back.to_triples_text(), text);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_triples("<a>\t<b>\n").is_err());
        assert!(parse_triples("<a>\t<b>\t\"x\"^^<urn:other>\n").is_err());
        assert!(
            parse_triples("<a>\t\"b\"^^<http://www.w3.org/2001/XMLSchema#string>\t<c>\n").is_err()
        );
        let mut triples = populate(&[obs(
            "10.1/a",
            Category::Usage,
            "Abstract Views",
            "Digital Commons",
            5,
        )])
        .unwrap()
        .triples()
        .clone();
        let value = triples
            .iter()
            .find(|t| t.predicate == HAS_VALUE)
            .unwrap()
            .clone();
        triples.remove(&value);
        assert!(matches!(
            KnowledgeGraph::from_triples(triples),
            Err(KgError::IncompleteIndicator(_, "hasValue"))
        ));
    }

    #[test]
    fn percent_encoding_round_trips() {
        let mut out = String::new();
        percent_encode_segment_into("Q&A Site/Mentions é", &mut out);
        assert_eq!(out, "Q%26A%20Site%2FMentions%20%C3%A9");
        assert_eq!(percent_decode(&out).unwrap(), "Q&A Site/Mentions é");
        assert_eq!(percent_decode("%zz"), None);
    }
}

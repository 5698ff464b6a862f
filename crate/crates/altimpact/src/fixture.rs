//! Offline stand-ins for the resolver and the indicator services.
//!
//! Indicator fixture: a JSON object keyed by DOI,
//! `{"citation_count": int|null, "altmetrics": [{"category", "metric",
//! "source", "value"}]}`. Resolver fixture: a JSON array of
//! `{"author", "title", "dois": [ranked DOIs]}`.

use std::collections::BTreeMap;

use altimpact_core::indicator::{CITATION_COUNT, SCOPUS};
use altimpact_core::{Category, Doi, IndicatorKey, IndicatorObservation, PaperRecord, Timestamp};
use serde::{Deserialize, Serialize};

use crate::harvest::{HarvestError, IndicatorBackend, MetadataResolver};

#[derive(Debug, thiserror::Error)]
pub enum FixtureError {
    #[error("fixture is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("fixture key {0:?} is not a DOI")]
    BadDoi(String),
    #[error("fixture lists {0} twice")]
    DuplicateDoi(Doi),
    #[error("{doi}: unknown category {category:?}")]
    BadCategory { doi: Doi, category: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureAltmetric {
    pub category: String,
    pub metric: String,
    pub source: String,
    pub value: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureEntry {
    #[serde(default)]
    pub citation_count: Option<u64>,
    #[serde(default)]
    pub altmetrics: Vec<FixtureAltmetric>,
}

/// Citation count and altmetric values of one DOI.
type Entry = (Option<u64>, Vec<(IndicatorKey, u64)>);

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FixtureStore {
    entries: BTreeMap<Doi, Entry>,
}

impl FixtureStore {
    pub fn from_json(bytes: &[u8]) -> Result<Self, FixtureError> {
        let raw: BTreeMap<String, FixtureEntry> = serde_json::from_slice(bytes)?;
        let mut entries = BTreeMap::new();
        for (key, entry) in raw {
            let doi = Doi::parse(&key).map_err(|_| FixtureError::BadDoi(key.clone()))?;
            let mut alts = Vec::with_capacity(entry.altmetrics.len());
            for a in entry.altmetrics {
                let category: Category =
                    a.category.parse().map_err(|_| FixtureError::BadCategory {
                        doi: doi.clone(),
                        category: a.category.clone(),
                    })?;
                alts.push((IndicatorKey::new(category, &a.metric, &a.source), a.value));
            }
            if entries
                .insert(doi.clone(), (entry.citation_count, alts))
                .is_some()
            {
                return Err(FixtureError::DuplicateDoi(doi));
            }
        }
        Ok(FixtureStore { entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn citations(&self) -> FixtureBackend<'_> {
        FixtureBackend {
            store: self,
            citations: true,
        }
    }

    pub fn altmetrics(&self) -> FixtureBackend<'_> {
        FixtureBackend {
            store: self,
            citations: false,
        }
    }
}

pub struct FixtureBackend<'a> {
    store: &'a FixtureStore,
    citations: bool,
}

impl IndicatorBackend for FixtureBackend<'_> {
    fn name(&self) -> &str {
        if self.citations {
            "fixture citations"
        } else {
            "fixture altmetrics"
        }
    }

    fn fetch(&self, doi: &Doi, at: Timestamp) -> Result<Vec<IndicatorObservation>, HarvestError> {
        let Some((cites, alts)) = self.store.entries.get(doi) else {
            return Ok(Vec::new());
        };
        let obs = |key: IndicatorKey, value| IndicatorObservation::new(doi.clone(), key, value, at);
        if self.citations {
            Ok(cites
                .map(|v| {
                    obs(
                        IndicatorKey::new(Category::Citations, CITATION_COUNT, SCOPUS),
                        v,
                    )
                })
                .into_iter()
                .collect())
        } else {
            Ok(alts.iter().map(|(k, v)| obs(k.clone(), *v)).collect())
        }
    }
}

fn normalise(s: &str) -> String {
    s.split_whitespace()
        .collect::<Vec<_>>()
        .join(" ")
        .to_lowercase()
}

#[derive(Debug, Clone, Deserialize)]
struct ResolverEntry {
    author: Option<String>,
    title: String,
    dois: Vec<String>,
}

/// Matches on (first author, title), ignoring case and runs of whitespace.
#[derive(Debug, Clone, Default)]
pub struct FixtureResolver {
    entries: BTreeMap<(String, String), Vec<Doi>>,
}

impl FixtureResolver {
    pub fn from_json(bytes: &[u8]) -> Result<Self, FixtureError> {
        let raw: Vec<ResolverEntry> = serde_json::from_slice(bytes)?;
        let mut entries = BTreeMap::new();
        for e in raw {
            let dois = e
                .dois
                .iter()
                .map(|d| Doi::parse(d).map_err(|_| FixtureError::BadDoi(d.clone())))
                .collect::<Result<Vec<_>, _>>()?;
            let key = (
                normalise(e.author.as_deref().unwrap_or("")),
                normalise(&e.title),
            );
            entries.entry(key).or_insert_with(Vec::new).extend(dois);
        }
        Ok(FixtureResolver { entries })
    }
}

impl MetadataResolver for FixtureResolver {
    fn candidates(&self, record: &PaperRecord) -> Result<Vec<Doi>, HarvestError> {
        let key = (
            normalise(record.first_author().unwrap_or("")),
            normalise(&record.title),
        );
        Ok(self.entries.get(&key).cloned().unwrap_or_default())
    }
}

/// Trusts the DOI recorded in the sample.
pub struct SampleDoiResolver;

impl MetadataResolver for SampleDoiResolver {
    fn candidates(&self, record: &PaperRecord) -> Result<Vec<Doi>, HarvestError> {
        Ok(record.doi.iter().cloned().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIXTURE: &str = r#"{
        "10.1/A": {"citation_count": 82, "altmetrics": [
            {"category": "SocialMedia", "metric": "Tweets", "source": "Twitter", "value": 100}]},
        "10.1/b": {"citation_count": null, "altmetrics": []},
        "10.1/c": {"citation_count": 4}
    }"#;

    #[test]
    fn lookups() {
        let store = FixtureStore::from_json(FIXTURE.as_bytes()).unwrap();
        let at = Timestamp(0);
        let a = Doi::parse("10.1/a").unwrap();
        let both: Vec<_> = [store.citations(), store.altmetrics()]
            .iter()
            .flat_map(|b| b.fetch(&a, at).unwrap())
            .collect();
        assert_eq!(both.len(), 2);
        assert_eq!(both[0].value, 82);
        assert_eq!(both[1].key.metric, "Tweets");
        let b = Doi::parse("10.1/b").unwrap();
        assert!(store.citations().fetch(&b, at).unwrap().is_empty());
        let c = Doi::parse("10.1/c").unwrap();
        let only = store.citations().fetch(&c, at).unwrap();
        assert_eq!(only[0].key.category, Category::Citations);
        assert!(store.altmetrics().fetch(&c, at).unwrap().is_empty());
        let none = Doi::parse("10.1/zzz").unwrap();
        assert!(store.citations().fetch(&none, at).unwrap().is_empty());
    }

    #[test]
    fn rejects_bad_fixtures() {
        assert!(matches!(
            FixtureStore::from_json(br#"{"nope": {}}"#),
            Err(FixtureError::BadDoi(_))
        ));
        assert!(matches!(
            FixtureStore::from_json(br#"{"10.1/a": {}, "10.1/A": {}}"#),
            Err(FixtureError::DuplicateDoi(_))
        ));
        assert!(matches!(
            FixtureStore::from_json(
                br#"{"10.1/a": {"altmetrics": [{"category": "Vibes", "metric": "x", "source": "y", "value": 1}]}}"#
            ),
            Err(FixtureError::BadCategory { .. })
        ));
    }

    #[test]
    fn resolver_normalises_keys() {
        let r = FixtureResolver::from_json(
            br#"[{"author": "Huang  C", "title": "Clinical Features", "dois": ["10.1/x", "10.1/y"]}]"#,
        )
        .unwrap();
        let record = PaperRecord {
            local_id: "P1".into(),
            authors: vec!["huang c".into()],
            title: "clinical   features".into(),
            doi: None,
            publication_date: None,
            journal: None,
        };
        let found = r.candidates(&record).unwrap();
        assert_eq!(found.len(), 2);
        assert_eq!(found[0].as_str(), "10.1/x");
    }
}

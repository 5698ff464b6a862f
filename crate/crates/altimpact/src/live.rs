//! HTTP clients for Crossref (DOI resolution), Scopus (citation counts) and
//! PlumX (altmetrics).
//!
//! Configuration comes from the environment:
//!
//! | variable | default |
//! |---|---|
//! | `ALTIMPACT_CROSSREF_URL` | `https://api.crossref.org` |
//! | `ALTIMPACT_CROSSREF_MAILTO` | unset |
//! | `ALTIMPACT_ELSEVIER_URL` | `https://api.elsevier.com` |
//! | `ALTIMPACT_ELSEVIER_API_KEY` | required |
//!
//! The API key is sent as a header and never logged.

use std::time::Duration;

use altimpact_core::indicator::{CITATION_COUNT, SCOPUS};
use altimpact_core::kgraph::percent_encode_into;
use altimpact_core::{Category, Doi, IndicatorKey, IndicatorObservation, PaperRecord, Timestamp};
use log::{debug, warn};
use serde_json::Value;

use crate::harvest::{HarvestError, IndicatorBackend, MetadataResolver};

pub const ENV_CROSSREF_URL: &str = "ALTIMPACT_CROSSREF_URL";
pub const ENV_CROSSREF_MAILTO: &str = "ALTIMPACT_CROSSREF_MAILTO";
pub const ENV_ELSEVIER_URL: &str = "ALTIMPACT_ELSEVIER_URL";
pub const ENV_ELSEVIER_API_KEY: &str = "ALTIMPACT_ELSEVIER_API_KEY";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RetryPolicy {
    pub attempts: u32,
    pub initial_backoff: Duration,
}

impl Default for RetryPolicy {
    /// 3 attempts, waiting 1 s then 2 s.
    fn default() -> Self {
        RetryPolicy {
            attempts: 3,
            initial_backoff: Duration::from_secs(1),
        }
    }
}

#[derive(Clone)]
pub struct LiveConfig {
    pub crossref_url: String,
    pub crossref_mailto: Option<String>,
    pub elsevier_url: String,
    pub elsevier_api_key: String,
    pub retry: RetryPolicy,
    pub timeout: Duration,
}

impl std::fmt::Debug for LiveConfig {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LiveConfig")
            .field("crossref_url", &self.crossref_url)
            .field("elsevier_url", &self.elsevier_url)
            .field("elsevier_api_key", &"<redacted>")
            .field("retry", &self.retry)
            .finish()
    }
}

impl LiveConfig {
    pub fn from_env() -> Result<Self, String> {
        let var = |name: &str| std::env::var(name).ok().filter(|v| !v.trim().is_empty());
        Ok(LiveConfig {
            crossref_url: var(ENV_CROSSREF_URL)
                .unwrap_or_else(|| "https://api.crossref.org".into()),
            crossref_mailto: var(ENV_CROSSREF_MAILTO),
            elsevier_url: var(ENV_ELSEVIER_URL)
                .unwrap_or_else(|| "https://api.elsevier.com".into()),
            elsevier_api_key: var(ENV_ELSEVIER_API_KEY)
                .ok_or_else(|| format!("{ENV_ELSEVIER_API_KEY} must be set for live harvesting"))?,
            retry: RetryPolicy::default(),
            timeout: Duration::from_secs(30),
        })
    }
}

struct Http {
    agent: ureq::Agent,
    retry: RetryPolicy,
}

enum Attempt {
    Done(Option<Value>),
    Retry(String),
    Fail(String),
}

impl Http {
    fn new(timeout: Duration, retry: RetryPolicy) -> Self {
        let agent = ureq::Agent::config_builder()
            .timeout_global(Some(timeout))
            .http_status_as_error(false)
            .build()
            .into();
        Http { agent, retry }
    }

    fn once(&self, url: &str, query: &[(&str, &str)], headers: &[(&str, &str)]) -> Attempt {
        let mut req = self.agent.get(url).header("Accept", "application/json");
        for (k, v) in query {
            req = req.query(*k, *v);
        }
        for (k, v) in headers {
            req = req.header(*k, *v);
        }
        let mut resp = match req.call() {
            Ok(r) => r,
            Err(e) => return Attempt::Retry(e.to_string()),
        };
        let status = resp.status().as_u16();
        match status {
            200..=299 => match resp.body_mut().read_to_string() {
                Ok(text) => match serde_json::from_str(&text) {
                    Ok(v) => Attempt::Done(Some(v)),
                    Err(e) => Attempt::Fail(format!("unparseable response: {e}")),
                },
                Err(e) => Attempt::Retry(e.to_string()),
            },
            404 => Attempt::Done(None),
            429 | 500..=599 => Attempt::Retry(format!("HTTP {status}")),
            _ => Attempt::Fail(format!("HTTP {status}")),
        }
    }

    /// `Ok(None)` when the service has no record.
    fn get_json(
        &self,
        url: &str,
        query: &[(&str, &str)],
        headers: &[(&str, &str)],
    ) -> Result<Option<Value>, String> {
        let mut wait = self.retry.initial_backoff;
        let mut last = String::from("no attempt made");
        for attempt in 1..=self.retry.attempts.max(1) {
            match self.once(url, query, headers) {
                Attempt::Done(v) => return Ok(v),
                Attempt::Fail(e) => return Err(e),
                Attempt::Retry(e) => {
                    debug!("GET {url} attempt {attempt} failed: {e}");
                    last = e;
                }
            }
            if attempt < self.retry.attempts {
                std::thread::sleep(wait);
                wait *= 2;
            }
        }
        warn!("GET {url} gave up after {} attempts", self.retry.attempts);
        Err(last)
    }
}

pub struct CrossrefResolver {
    http: Http,
    base: String,
    mailto: Option<String>,
}

impl CrossrefResolver {
    pub fn new(config: &LiveConfig) -> Self {
        CrossrefResolver {
            http: Http::new(config.timeout, config.retry),
            base: config.crossref_url.trim_end_matches('/').to_string(),
            mailto: config.crossref_mailto.clone(),
        }
    }
}

/// DOIs of `message.items`, in the order Crossref ranked them.
pub fn crossref_dois(body: &Value) -> Vec<Doi> {
    body.pointer("/message/items")
        .and_then(Value::as_array)
        .map(|items| {
            items
                .iter()
                .filter_map(|i| i.get("DOI")?.as_str())
                .filter_map(|d| Doi::parse(d).ok())
                .collect()
        })
        .unwrap_or_default()
}

impl MetadataResolver for CrossrefResolver {
    fn candidates(&self, record: &PaperRecord) -> Result<Vec<Doi>, HarvestError> {
        let url = format!("{}/works", self.base);
        let mut query = vec![
            ("query.bibliographic", record.title.as_str()),
            ("rows", "5"),
        ];
        if let Some(author) = record.first_author() {
            query.push(("query.author", author));
        }
        if let Some(m) = &self.mailto {
            query.push(("mailto", m));
        }
        match self.http.get_json(&url, &query, &[]) {
            Ok(Some(body)) => Ok(crossref_dois(&body)),
            Ok(None) => Ok(Vec::new()),
            Err(e) => Err(HarvestError::ResolverUnavailable(e)),
        }
    }
}

fn doi_path(doi: &Doi) -> String {
    let mut out = String::new();
    percent_encode_into(doi.as_str(), &mut out);
    out
}

pub struct ScopusCitations {
    http: Http,
    base: String,
    key: String,
}

impl ScopusCitations {
    pub fn new(config: &LiveConfig) -> Self {
        ScopusCitations {
            http: Http::new(config.timeout, config.retry),
            base: config.elsevier_url.trim_end_matches('/').to_string(),
            key: config.elsevier_api_key.clone(),
        }
    }
}

/// `citedby-count` of the first search entry, if any.
pub fn scopus_citations(body: &Value) -> Option<u64> {
    let entry = body.pointer("/search-results/entry/0")?;
    match entry.get("citedby-count")? {
        Value::String(s) => s.trim().parse().ok(),
        Value::Number(n) => n.as_u64(),
        _ => None,
    }
}

impl IndicatorBackend for ScopusCitations {
    fn name(&self) -> &str {
        "scopus"
    }

    fn fetch(&self, doi: &Doi, at: Timestamp) -> Result<Vec<IndicatorObservation>, HarvestError> {
        let url = format!("{}/content/search/scopus", self.base);
        let query = format!("DOI({doi})");
        let body = self
            .http
            .get_json(
                &url,
                &[("query", &query), ("field", "citedby-count")],
                &[("X-ELS-APIKey", &self.key)],
            )
            .map_err(|message| HarvestError::Backend {
                backend: self.name().into(),
                message,
            })?;
        Ok(body
            .as_ref()
            .and_then(scopus_citations)
            .map(|v| {
                IndicatorObservation::new(
                    doi.clone(),
                    IndicatorKey::new(Category::Citations, CITATION_COUNT, SCOPUS),
                    v,
                    at,
                )
            })
            .into_iter()
            .collect())
    }
}

pub struct PlumxAltmetrics {
    http: Http,
    base: String,
    key: String,
}

impl PlumxAltmetrics {
    pub fn new(config: &LiveConfig) -> Self {
        PlumxAltmetrics {
            http: Http::new(config.timeout, config.retry),
            base: config.elsevier_url.trim_end_matches('/').to_string(),
            key: config.elsevier_api_key.clone(),
        }
    }
}

/// Display names for PlumX count types; unknown types keep their raw name
/// and surface as indicators outside the known hierarchy.
fn plumx_metric(count_type: &str) -> &str {
    match count_type {
        "CITED_BY_COUNT" | "CITATION_INDEXES" => CITATION_COUNT,
        "READER_COUNT" => "Readers",
        "BLOG_COUNT" => "Blog Mentions",
        "NEWS_COUNT" => "News Mentions",
        "QA_SITE_MENTIONS" => "Q&A Site Mentions",
        "REFERENCE_COUNT" => "References",
        "FACEBOOK_COUNT" => "Shares, Likes & Comments",
        "TWEET_COUNT" => "Tweets",
        "ABSTRACT_VIEWS" => "Abstract Views",
        other => other,
    }
}

/// Flattens `count_categories[].count_types[].sources[]` into
/// observations. Citation counts from PlumX are skipped because Scopus is
/// the citation source.
pub fn plumx_observations(body: &Value, doi: &Doi, at: Timestamp) -> Vec<IndicatorObservation> {
    let mut out = Vec::new();
    let Some(categories) = body.get("count_categories").and_then(Value::as_array) else {
        return out;
    };
    for cat in categories {
        let Some(category) = cat
            .get("name")
            .and_then(Value::as_str)
            .and_then(|n| n.parse::<Category>().ok())
        else {
            continue;
        };
        if category == Category::Citations {
            continue;
        }
        for ty in cat
            .get("count_types")
            .and_then(Value::as_array)
            .into_iter()
            .flatten()
        {
            let Some(type_name) = ty.get("name").and_then(Value::as_str) else {
                continue;
            };
            let metric = plumx_metric(type_name);
            for src in ty
                .get("sources")
                .and_then(Value::as_array)
                .into_iter()
                .flatten()
            {
                let (Some(source), Some(total)) = (
                    src.get("name").and_then(Value::as_str),
                    src.get("total").and_then(Value::as_u64),
                ) else {
                    continue;
                };
                out.push(IndicatorObservation::new(
                    doi.clone(),
                    IndicatorKey::new(category, metric, source),
                    total,
                    at,
                ));
            }
        }
    }
    out
}

impl IndicatorBackend for PlumxAltmetrics {
    fn name(&self) -> &str {
        "plumx"
    }

    fn fetch(&self, doi: &Doi, at: Timestamp) -> Result<Vec<IndicatorObservation>, HarvestError> {
        let url = format!("{}/analytics/plumx/doi/{}", self.base, doi_path(doi));
        let body = self
            .http
            .get_json(&url, &[], &[("X-ELS-APIKey", &self.key)])
            .map_err(|message| HarvestError::Backend {
                backend: self.name().into(),
                message,
            })?;
        Ok(body
            .map(|b| plumx_observations(&b, doi, at))
            .unwrap_or_default())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn parses_crossref() {
        let body = json!({"message": {"items": [{"DOI": "10.1016/S0140-6736(20)30183-5"}, {"DOI": "bad"}, {"DOI": "10.1/x"}]}});
        let dois = crossref_dois(&body);
        assert_eq!(dois.len(), 2);
        assert_eq!(dois[0].as_str(), "10.1016/s0140-6736(20)30183-5");
        assert!(crossref_dois(&json!({})).is_empty());
    }

    #[test]
    fn parses_scopus() {
        assert_eq!(
            scopus_citations(&json!({"search-results": {"entry": [{"citedby-count": "82"}]}})),
            Some(82)
        );
        assert_eq!(
            scopus_citations(
                &json!({"search-results": {"entry": [{"error": "Result set was empty"}]}})
            ),
            None
        );
    }

    #[test]
    fn parses_plumx() {
        let body = json!({"count_categories": [
            {"name": "socialMedia", "count_types": [
                {"name": "TWEET_COUNT", "sources": [{"name": "Twitter", "total": 12154}]},
                {"name": "FACEBOOK_COUNT", "sources": [{"name": "Facebook", "total": 33043}]}]},
            {"name": "citation", "count_types": [{"name": "CITED_BY_COUNT", "sources": [{"name": "Scopus", "total": 3}]}]},
            {"name": "mention", "count_types": [{"name": "NEW_THING", "sources": [{"name": "Somewhere", "total": 1}]}]}
        ]});
        let doi = Doi::parse("10.1/a").unwrap();
        let obs = plumx_observations(&body, &doi, Timestamp(0));
        assert_eq!(obs.len(), 3);
        assert!(obs[0].is_known() && obs[1].is_known());
        assert_eq!(obs[1].key.metric, "Shares, Likes & Comments");
        assert!(!obs[2].is_known());
    }

    #[test]
    fn debug_hides_the_key() {
        let cfg = LiveConfig {
            crossref_url: "http://x".into(),
            crossref_mailto: None,
            elsevier_url: "http://y".into(),
            elsevier_api_key: "s3cret".into(),
            retry: RetryPolicy::default(),
            timeout: Duration::from_secs(1),
        };
        assert!(!format!("{cfg:?}").contains("s3cret"));
    }
}

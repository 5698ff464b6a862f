//! DOI resolution and indicator gathering.
//!
//! Each sample record is resolved to a DOI, then its citation count and
//! altmetrics are gathered from two independent backends. Records are
//! processed in parallel; the merged observation list is sorted, so output
//! does not depend on scheduling.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;

use altimpact_core::{Doi, IndicatorObservation, PaperRecord, SampleSet, Timestamp};
use log::{debug, info, warn};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HarvestError {
    #[error("no DOI found for {0:?}")]
    ResolutionFailed(String),
    #[error("resolver unavailable: {0}")]
    ResolverUnavailable(String),
    #[error("{backend}: {message}")]
    Backend { backend: String, message: String },
}

/// Looks up DOIs for a sample record, best match first.
pub trait MetadataResolver: Sync {
    fn candidates(&self, record: &PaperRecord) -> Result<Vec<Doi>, HarvestError>;
}

/// One source of indicator values keyed by DOI. An empty result means the
/// backend has no data for the DOI.
pub trait IndicatorBackend: Sync {
    fn name(&self) -> &str;
    fn fetch(&self, doi: &Doi, at: Timestamp) -> Result<Vec<IndicatorObservation>, HarvestError>;
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Resolution {
    pub local_id: String,
    pub local_doi: Option<Doi>,
    pub doi: Doi,
    pub candidates: usize,
}

impl Resolution {
    pub fn mismatch(&self) -> bool {
        self.local_doi.as_ref().is_some_and(|d| *d != self.doi)
    }
}

/// Takes the resolver's top-ranked DOI. When it disagrees with the DOI
/// recorded in the sample, the resolver wins and the mismatch is logged.
pub fn resolve_doi(
    record: &PaperRecord,
    resolver: &dyn MetadataResolver,
) -> Result<Resolution, HarvestError> {
    let found = resolver.candidates(record)?;
    let Some(doi) = found.first().cloned() else {
        return Err(HarvestError::ResolutionFailed(record.title.clone()));
    };
    if found.len() > 1 {
        info!(
            "{}: {} candidate DOIs, keeping top-ranked {doi}",
            record.local_id,
            found.len()
        );
    }
    let resolution = Resolution {
        local_id: record.local_id.clone(),
        local_doi: record.doi.clone(),
        doi,
        candidates: found.len(),
    };
    if resolution.mismatch() {
        warn!(
            "{}: sample DOI {} differs from resolved {}; keeping the resolved DOI",
            record.local_id,
            record.doi.as_ref().map(Doi::as_str).unwrap_or_default(),
            resolution.doi
        );
    }
    Ok(resolution)
}

/// Citation and altmetric observations for one DOI. The two gatherings run
/// on separate threads.
pub fn harvest_indicators(
    doi: &Doi,
    citations: &dyn IndicatorBackend,
    altmetrics: &dyn IndicatorBackend,
    at: Timestamp,
) -> (
    Result<Vec<IndicatorObservation>, HarvestError>,
    Result<Vec<IndicatorObservation>, HarvestError>,
) {
    thread::scope(|s| {
        let c = s.spawn(|| citations.fetch(doi, at));
        let a = altmetrics.fetch(doi, at);
        (c.join().expect("citation backend panicked"), a)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Stage {
    Resolve,
    Citations,
    Altmetrics,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct PipelineFailure {
    pub local_id: String,
    pub stage: Stage,
    #[serde(serialize_with = "doi_text")]
    pub doi: Option<Doi>,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PipelineOutput {
    /// Sorted by (doi, category, metric, source).
    pub observations: Vec<IndicatorObservation>,
    /// Sorted by local id, then stage.
    pub failures: Vec<PipelineFailure>,
    /// Sorted by local id.
    pub resolutions: Vec<Resolution>,
}

fn doi_text<S: serde::Serializer>(doi: &Option<Doi>, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_some(&doi.as_ref().map(Doi::as_str))
}

pub struct Backends<'a> {
    pub resolver: &'a dyn MetadataResolver,
    pub citations: &'a dyn IndicatorBackend,
    pub altmetrics: &'a dyn IndicatorBackend,
}

fn process(
    record: &PaperRecord,
    backends: &Backends<'_>,
    at: Timestamp,
    out: &Mutex<PipelineOutput>,
) {
    let fail = |stage, doi: Option<&Doi>, e: HarvestError| PipelineFailure {
        local_id: record.local_id.clone(),
        stage,
        doi: doi.cloned(),
        message: e.to_string(),
    };
    let resolution = match resolve_doi(record, backends.resolver) {
        Ok(r) => r,
        Err(e) => {
            warn!("{}: resolution failed: {e}", record.local_id);
            out.lock()
                .unwrap()
                .failures
                .push(fail(Stage::Resolve, None, e));
            return;
        }
    };
    let doi = resolution.doi.clone();
    let (cites, alts) = harvest_indicators(&doi, backends.citations, backends.altmetrics, at);
    let mut guard = out.lock().unwrap();
    for (stage, result) in [(Stage::Citations, cites), (Stage::Altmetrics, alts)] {
        match result {
            Ok(obs) => {
                for o in &obs {
                    if !o.is_known() {
                        warn!("{doi}: indicator {} is outside the known hierarchy", o.key);
                    }
                }
                guard.observations.extend(obs);
            }
            Err(e) => {
                warn!("{}: {stage:?} failed for {doi}: {e}", record.local_id);
                guard.failures.push(fail(stage, Some(&doi), e));
            }
        }
    }
    guard.resolutions.push(resolution);
}

/// Resolves and harvests every record with `threads` workers. Failures are
/// collected per record and stage; they never abort the run.
pub fn run_pipeline(
    sample: &SampleSet,
    backends: &Backends<'_>,
    at: Timestamp,
    threads: usize,
) -> PipelineOutput {
    let out = Mutex::new(PipelineOutput::default());
    let next = AtomicUsize::new(0);
    let records = sample.records();
    let workers = threads.clamp(1, records.len().max(1));
    thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                let Some(record) = records.get(k) else { break };
                debug!("processing {}", record.local_id);
                process(record, backends, at, &out);
            });
        }
    });
    let mut out = out.into_inner().unwrap();
    out.observations.sort();
    let before = out.observations.len();
    // several records may resolve to the same DOI
    out.observations
        .dedup_by(|b, a| a.doi == b.doi && a.key == b.key && a.value == b.value);
    if out.observations.len() < before {
        warn!(
            "dropped {} repeated observations from records sharing a DOI",
            before - out.observations.len()
        );
    }
    out.failures.sort();
    out.resolutions.sort_by(|a, b| a.local_id.cmp(&b.local_id));
    out
}

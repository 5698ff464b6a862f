//! Canonical paper records from the literature-review sample.

use alloc::string::String;
use alloc::vec::Vec;

use crate::date::{Date, DateWindow};
use crate::doi::Doi;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaperRecord {
    pub local_id: String,
    /// First element is the first author.
    pub authors: Vec<String>,
    pub title: String,
    pub doi: Option<Doi>,
    pub publication_date: Option<Date>,
    pub journal: Option<String>,
}

impl PaperRecord {
    pub fn first_author(&self) -> Option<&str> {
        self.authors.first().map(String::as_str)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SampleError {
    #[error("duplicate local id {0:?}")]
    DuplicateLocalId(String),
    #[error("record {0:?} has an empty title")]
    EmptyTitle(String),
}

/// The review sample: immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleSet {
    records: Vec<PaperRecord>,
    window: DateWindow,
}

impl SampleSet {
    pub fn new(records: Vec<PaperRecord>, window: DateWindow) -> Result<Self, SampleError> {
        let mut ids: Vec<&str> = records.iter().map(|r| r.local_id.as_str()).collect();
        ids.sort_unstable();
        if let Some(dup) = ids.windows(2).find(|w| w[0] == w[1]) {
            return Err(SampleError::DuplicateLocalId(String::from(dup[0])));
        }
        if let Some(r) = records.iter().find(|r| r.title.trim().is_empty()) {
            return Err(SampleError::EmptyTitle(r.local_id.clone()));
        }
        Ok(SampleSet { records, window })
    }

    pub fn records(&self) -> &[PaperRecord] {
        &self.records
    }

    pub fn window(&self) -> DateWindow {
        self.window
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn get(&self, local_id: &str) -> Option<&PaperRecord> {
        self.records.iter().find(|r| r.local_id == local_id)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum ValidationWarning {
    OutOfWindow { local_id: String, date: Date },
    MissingDoi { local_id: String },
    EmptyAuthors { local_id: String },
}

impl ValidationWarning {
    pub fn local_id(&self) -> &str {
        match self {
            ValidationWarning::OutOfWindow { local_id, .. }
            | ValidationWarning::MissingDoi { local_id }
            | ValidationWarning::EmptyAuthors { local_id } => local_id,
        }
    }
}

/// Non-fatal problems, ordered by local id. Records dated outside the
/// window are flagged here rather than rejected at parse time.
pub fn validate_sample(sample: &SampleSet) -> Vec<ValidationWarning> {
    let mut warnings = Vec::new();
    for r in sample.records() {
        if let Some(date) = r.publication_date {
            if !sample.window().contains(date) {
                warnings.push(ValidationWarning::OutOfWindow {
                    local_id: r.local_id.clone(),
                    date,
                });
            }
        }
        if r.doi.is_none() {
            warnings.push(ValidationWarning::MissingDoi {
                local_id: r.local_id.clone(),
            });
        }
        if r.authors.iter().all(|a| a.trim().is_empty()) {
            warnings.push(ValidationWarning::EmptyAuthors {
                local_id: r.local_id.clone(),
            });
        }
    }
    warnings.sort_by(|a, b| a.local_id().cmp(b.local_id()).then_with(|| a.cmp(b)));
    warnings
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn record(id: &str, date: &str, doi: Option<&str>) -> PaperRecord {
        PaperRecord {
            local_id: id.into(),
            authors: vec!["Rossi A".into()],
            title: "A study".into(),
            doi: doi.map(|d| Doi::parse(d).unwrap()),
            publication_date: Some(Date::parse(date).unwrap()),
            journal: None,
        }
    }

    #[test]
    fn out_of_window_is_a_warning() {
        let sample = SampleSet::new(
            vec![record("P1", "2020-03-01", Some("10.1/a"))],
            DateWindow::covid19_default(),
        )
        .unwrap();
        let w = validate_sample(&sample);
        assert_eq!(
            w,
            vec![ValidationWarning::OutOfWindow {
                local_id: "P1".into(),
                date: Date::parse("2020-03-01").unwrap()
            }]
        );
    }

    #[test]
    fn clean_sample_has_no_warnings() {
        let sample = SampleSet::new(
            vec![
                record("P1", "2020-01-20", Some("10.1/a")),
                record("P2", "2020-02-24", Some("10.1/b")),
            ],
            DateWindow::covid19_default(),
        )
        .unwrap();
        assert!(validate_sample(&sample).is_empty());
    }

    #[test]
    fn missing_doi_and_authors() {
        let mut r = record("P2", "2020-01-20", None);
        r.authors.clear();
        let sample = SampleSet::new(
            vec![r, record("P1", "2020-01-20", None)],
            DateWindow::covid19_default(),
        )
        .unwrap();
        let w = validate_sample(&sample);
        assert_eq!(w.len(), 3);
        assert_eq!(
            w[0],
            ValidationWarning::MissingDoi {
                local_id: "P1".into()
            }
        );
        assert_eq!(w[1].local_id(), "P2");
        assert_eq!(w[2].local_id(), "P2");
    }

    #[test]
    fn duplicate_ids_rejected() {
        let err = SampleSet::new(
            vec![
                record("A", "2020-01-20", None),
                record("A", "2020-01-21", None),
            ],
            DateWindow::covid19_default(),
        )
        .unwrap_err();
        assert_eq!(err, SampleError::DuplicateLocalId("A".into()));
    }
}

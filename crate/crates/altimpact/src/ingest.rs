//! Reading and writing the literature-review sample spreadsheet.
//!
//! Header: `id,authors,title,doi,publication_date`, plus an optional
//! `journal` column. Authors are separated by `;`.

use altimpact_core::sample::SampleError;
use altimpact_core::{Date, DateWindow, Doi, PaperRecord, SampleSet};

#[derive(Debug, thiserror::Error)]
pub enum IngestError {
    #[error("malformed CSV: {0}")]
    MalformedCsv(String),
    #[error("missing required column {0:?}")]
    MissingColumn(&'static str),
    #[error("row {row}: {reason}")]
    BadRow { row: usize, reason: String },
    #[error(transparent)]
    Sample(#[from] SampleError),
}

impl From<csv::Error> for IngestError {
    fn from(e: csv::Error) -> Self {
        IngestError::MalformedCsv(e.to_string())
    }
}

pub const AUTHOR_DELIMITER: char = ';';

struct Columns {
    id: usize,
    authors: usize,
    title: usize,
    doi: usize,
    date: Option<usize>,
    journal: Option<usize>,
}

impl Columns {
    fn locate(headers: &csv::StringRecord) -> Result<Self, IngestError> {
        let find = |name: &str| {
            headers
                .iter()
                .position(|h| h.trim().eq_ignore_ascii_case(name))
        };
        let require = |name: &'static str| find(name).ok_or(IngestError::MissingColumn(name));
        Ok(Columns {
            id: require("id")?,
            authors: require("authors")?,
            title: require("title")?,
            doi: require("doi")?,
            date: find("publication_date"),
            journal: find("journal"),
        })
    }
}

fn non_empty(cell: Option<&str>) -> Option<&str> {
    cell.map(str::trim).filter(|c| !c.is_empty())
}

pub fn split_authors(cell: &str) -> Vec<String> {
    cell.split(AUTHOR_DELIMITER)
        .map(str::trim)
        .filter(|a| !a.is_empty())
        .map(String::from)
        .collect()
}

pub fn parse_sample(bytes: &[u8], window: DateWindow) -> Result<SampleSet, IngestError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(false)
        .from_reader(bytes);
    let headers = reader.headers()?.clone();
    if headers.iter().all(|h| h.trim().is_empty()) {
        return Err(IngestError::MalformedCsv("missing header row".into()));
    }
    let cols = Columns::locate(&headers)?;
    let mut records = Vec::new();
    for (k, row) in reader.records().enumerate() {
        let row = row?;
        // header is line 1
        let line = k + 2;
        let bad = |reason: String| IngestError::BadRow { row: line, reason };
        let local_id = non_empty(row.get(cols.id))
            .ok_or_else(|| bad("empty id".into()))?
            .to_string();
        let doi = non_empty(row.get(cols.doi))
            .map(Doi::parse)
            .transpose()
            .map_err(|e| bad(e.to_string()))?;
        let publication_date = non_empty(cols.date.and_then(|c| row.get(c)))
            .map(Date::parse)
            .transpose()
            .map_err(|e| bad(format!("publication_date: {e}")))?;
        records.push(PaperRecord {
            local_id,
            authors: split_authors(row.get(cols.authors).unwrap_or("")),
            title: row.get(cols.title).unwrap_or("").trim().to_string(),
            doi,
            publication_date,
            journal: non_empty(cols.journal.and_then(|c| row.get(c))).map(String::from),
        });
    }
    Ok(SampleSet::new(records, window)?)
}

pub fn write_sample(sample: &SampleSet) -> Result<Vec<u8>, IngestError> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record([
        "id",
        "authors",
        "title",
        "doi",
        "publication_date",
        "journal",
    ])?;
    for r in sample.records() {
        let authors = r.authors.join("; ");
        let doi = r.doi.as_ref().map(Doi::to_string).unwrap_or_default();
        let date = r
            .publication_date
            .map(|d| d.to_string())
            .unwrap_or_default();
        writer.write_record([
            r.local_id.as_str(),
            &authors,
            &r.title,
            &doi,
            &date,
            r.journal.as_deref().unwrap_or(""),
        ])?;
    }
    writer
        .into_inner()
        .map_err(|e| IngestError::MalformedCsv(e.to_string()))
}

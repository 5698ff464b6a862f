//! On-disk formats: observation and graph JSON, STROBE checklists, the
//! selection matrix, number formatting and atomic writes.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write as _};
use std::path::Path;

use altimpact_core::assess::{StrobeChecklist, STROBE_ITEMS};
use altimpact_core::select::SelectionMatrix;
use altimpact_core::{
    Category, Doi, IndicatorKey, IndicatorObservation, KnowledgeGraph, Timestamp,
};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid CSV: {0}")]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("{0}")]
    Invalid(String),
}

/// Six significant digits, trailing zeros trimmed, no negative zero.
pub fn fmt_num(x: f64) -> String {
    if !x.is_finite() {
        return if x.is_nan() {
            "NaN".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    if x == 0.0 {
        return "0".into();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let s = if (-5..15).contains(&magnitude) {
        let decimals = (5 - magnitude).max(0) as usize;
        let s = format!("{x:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        let s = format!("{x:.5e}");
        let (mantissa, exp) = s.split_once('e').unwrap_or((&s, "0"));
        let mantissa = mantissa.trim_end_matches('0').trim_end_matches('.');
        format!("{mantissa}e{exp}")
    };
    // rounding can turn a tiny negative into "-0"
    if s.trim_start_matches('-')
        .chars()
        .all(|c| c == '0' || c == '.')
    {
        "0".into()
    } else {
        s
    }
}

/// Writes to a temporary sibling, then renames over `path`, so readers see
/// either the old file or the complete new one.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> io::Result<()> {
    let dir = path
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    fs::create_dir_all(dir)?;
    let name = path
        .file_name()
        .ok_or_else(|| io::Error::new(io::ErrorKind::InvalidInput, "path has no file name"))?;
    let tmp = dir.join(format!(
        ".{}.tmp{}",
        name.to_string_lossy(),
        std::process::id()
    ));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path).inspect_err(|_| {
        let _ = fs::remove_file(&tmp);
    })
}

pub fn to_json_bytes<T: Serialize + ?Sized>(value: &T) -> Result<Vec<u8>, FormatError> {
    let mut out = serde_json::to_vec_pretty(value)?;
    out.push(b'\n');
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObservationRecord {
    pub doi: String,
    pub category: String,
    pub metric: String,
    pub source: String,
    pub value: u64,
    pub retrieved_at: String,
    pub known: bool,
}

impl From<&IndicatorObservation> for ObservationRecord {
    fn from(o: &IndicatorObservation) -> Self {
        ObservationRecord {
            doi: o.doi.to_string(),
            category: o.key.category.to_string(),
            metric: o.key.metric.clone(),
            source: o.key.source.clone(),
            value: o.value,
            retrieved_at: o.retrieved_at.to_string(),
            known: o.is_known(),
        }
    }
}

impl TryFrom<&ObservationRecord> for IndicatorObservation {
    type Error = FormatError;

    fn try_from(r: &ObservationRecord) -> Result<Self, Self::Error> {
        let invalid =
            |what: &str| FormatError::Invalid(format!("observation for {}: {what}", r.doi));
        let doi = Doi::parse(&r.doi).map_err(|e| FormatError::Invalid(e.to_string()))?;
        let category: Category = r
            .category
            .parse()
            .map_err(|_| invalid("unknown category"))?;
        let retrieved_at =
            Timestamp::parse_rfc3339(&r.retrieved_at).map_err(|_| invalid("bad retrieved_at"))?;
        Ok(IndicatorObservation::new(
            doi,
            IndicatorKey::new(category, &r.metric, &r.source),
            r.value,
            retrieved_at,
        ))
    }
}

/// A JSON array in canonical observation order.
pub fn observations_to_json(obs: &[IndicatorObservation]) -> Result<Vec<u8>, FormatError> {
    let mut sorted: Vec<&IndicatorObservation> = obs.iter().collect();
    sorted.sort();
    let records: Vec<ObservationRecord> = sorted.into_iter().map(ObservationRecord::from).collect();
    to_json_bytes(&records)
}

pub fn observations_from_json(bytes: &[u8]) -> Result<Vec<IndicatorObservation>, FormatError> {
    let records: Vec<ObservationRecord> = serde_json::from_slice(bytes)?;
    let mut obs = records
        .iter()
        .map(IndicatorObservation::try_from)
        .collect::<Result<Vec<_>, _>>()?;
    obs.sort();
    Ok(obs)
}

#[derive(Debug, Serialize)]
struct JsonIndicator<'a> {
    category: &'a str,
    metric: &'a str,
    source: &'a str,
    value: u64,
    retrieved_at: String,
}

#[derive(Debug, Serialize)]
struct JsonArticle<'a> {
    iri: &'a str,
    indicators: Vec<JsonIndicator<'a>>,
}

/// One entry per article, keyed by DOI in lexicographic order.
pub fn kg_to_json(kg: &KnowledgeGraph) -> Result<Vec<u8>, FormatError> {
    let mut out: BTreeMap<&str, JsonArticle<'_>> = BTreeMap::new();
    for doi in kg.articles() {
        let indicators = kg
            .indicators_of(doi)
            .into_iter()
            .flatten()
            .map(|(k, v)| JsonIndicator {
                category: k.category.name(),
                metric: &k.metric,
                source: &k.source,
                value: v.value,
                retrieved_at: v.retrieved_at.to_string(),
            })
            .collect();
        let iri = kg.article_iri(doi).unwrap_or_default();
        out.insert(doi.as_str(), JsonArticle { iri, indicators });
    }
    to_json_bytes(&out)
}

fn parse_flag(cell: &str) -> Option<bool> {
    match cell.trim().to_ascii_lowercase().as_str() {
        "1" | "true" | "yes" | "y" | "x" => Some(true),
        "0" | "false" | "no" | "n" | "" => Some(false),
        _ => None,
    }
}

/// Rows of `doi,reviewer,item_1..item_22` with 0/1 cells.
pub fn parse_checklists(bytes: &[u8]) -> Result<Vec<StrobeChecklist>, FormatError> {
    let mut reader = csv::Reader::from_reader(bytes);
    let headers = reader.headers()?.clone();
    let col = |name: &str| {
        headers
            .iter()
            .position(|h| h.trim().eq_ignore_ascii_case(name))
    };
    let doi_col =
        col("doi").ok_or_else(|| FormatError::Invalid("checklists lack a doi column".into()))?;
    let reviewer_col = col("reviewer");
    let item_cols: Vec<usize> = (1..=STROBE_ITEMS)
        .map(|k| {
            col(&format!("item_{k}"))
                .ok_or_else(|| FormatError::Invalid(format!("checklists lack column item_{k}")))
        })
        .collect::<Result<_, _>>()?;
    let mut out = Vec::new();
    for (line, row) in reader.records().enumerate() {
        let row = row?;
        let bad =
            |what: String| FormatError::Invalid(format!("checklist row {}: {what}", line + 2));
        let doi = Doi::parse(row.get(doi_col).unwrap_or("")).map_err(|e| bad(e.to_string()))?;
        let items = item_cols
            .iter()
            .map(|&c| {
                parse_flag(row.get(c).unwrap_or(""))
                    .ok_or_else(|| bad(format!("bad item cell in column {}", c + 1)))
            })
            .collect::<Result<Vec<bool>, _>>()?;
        let reviewer = reviewer_col.and_then(|c| row.get(c)).unwrap_or("").trim();
        out.push(StrobeChecklist::new(doi, reviewer, &items).map_err(|e| bad(e.to_string()))?);
    }
    Ok(out)
}

pub fn selection_matrix_to_csv(m: &SelectionMatrix) -> Result<Vec<u8>, FormatError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["doi".to_string()];
    header.extend(m.methods.iter().cloned());
    w.write_record(&header)?;
    for (doi, cells) in &m.rows {
        let mut rec = vec![doi.to_string()];
        rec.extend(cells.iter().map(|c| if *c { "1" } else { "0" }.to_string()));
        w.write_record(&rec)?;
    }
    w.into_inner()
        .map_err(|e| FormatError::Invalid(e.to_string()))
}

pub fn selection_matrix_from_csv(bytes: &[u8]) -> Result<SelectionMatrix, FormatError> {
    let mut reader = csv::Reader::from_reader(bytes);
    let headers = reader.headers()?.clone();
    if headers.get(0).map(str::trim) != Some("doi") {
        return Err(FormatError::Invalid(
            "selection matrix must start with a doi column".into(),
        ));
    }
    let methods: Vec<String> = headers.iter().skip(1).map(String::from).collect();
    let mut rows = Vec::new();
    for row in reader.records() {
        let row = row?;
        let doi = Doi::parse(row.get(0).unwrap_or(""))
            .map_err(|e| FormatError::Invalid(e.to_string()))?;
        let cells = row
            .iter()
            .skip(1)
            .map(|c| parse_flag(c).ok_or_else(|| FormatError::Invalid(format!("bad cell {c:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push((doi, cells));
    }
    Ok(SelectionMatrix { methods, rows })
}

/// Filesystem-safe form of a method label (`CIS_I'` → `CIS_Iprime`).
pub fn file_label(label: &str) -> String {
    label.replace('\'', "prime")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_formatting() {
        assert_eq!(fmt_num(0.0), "0");
        assert_eq!(fmt_num(-0.0), "0");
        assert_eq!(fmt_num(1.0), "1");
        assert_eq!(fmt_num(457.3632075), "457.363");
        assert_eq!(fmt_num(0.8134567), "0.813457");
        assert_eq!(fmt_num(-1.2699999), "-1.27");
        assert_eq!(fmt_num(123456789.0), "123456789");
        assert_eq!(fmt_num(1.5e-9), "1.5e-9");
        assert_eq!(fmt_num(-1e-12), "-1e-12");
        assert_eq!(fmt_num(0.000012345678), "0.0000123457");
    }

    #[test]
    fn atomic_write_replaces() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("a.txt");
        write_atomic(&p, b"one").unwrap();
        write_atomic(&p, b"two").unwrap();
        assert_eq!(fs::read(&p).unwrap(), b"two");
        assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
    }

    #[test]
    fn checklist_parsing() {
        let mut csv = String::from("doi,reviewer");
        for k in 1..=22 {
            csv.push_str(&format!(",item_{k}"));
        }
        csv.push_str("\n10.1/A,expert1");
        for k in 0..22 {
            csv.push_str(if k < 20 { ",1" } else { ",0" });
        }
        csv.push('\n');
        let c = parse_checklists(csv.as_bytes()).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].checked(), 20);
        assert_eq!(c[0].doi.as_str(), "10.1/a");
        assert!(parse_checklists(b"doi,reviewer,item_1\n").is_err());
    }

    #[test]
    fn matrix_round_trip() {
        let m = SelectionMatrix {
            methods: vec!["CIS_I'".into(), "G_cs".into()],
            rows: vec![(Doi::parse("10.1/a").unwrap(), vec![true, false])],
        };
        let bytes = selection_matrix_to_csv(&m).unwrap();
        assert_eq!(selection_matrix_from_csv(&bytes).unwrap(), m);
    }
}

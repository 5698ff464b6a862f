//! STROBE checklist scoring and the quality cross-tabulation of selections.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::doi::Doi;
use crate::select::SelectionMatrix;
use crate::stats::{self, StatsError};

pub const STROBE_ITEMS: usize = 22;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AssessError {
    #[error("a STROBE checklist has {STROBE_ITEMS} items, got {0}")]
    WrongItemCount(usize),
    #[error("checklists disagree on the DOI: {0} vs {1}")]
    DoiMismatch(Doi, Doi),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrobeChecklist {
    pub doi: Doi,
    pub reviewer: String,
    pub items: [bool; STROBE_ITEMS],
}

impl StrobeChecklist {
    pub fn new(doi: Doi, reviewer: &str, items: &[bool]) -> Result<Self, AssessError> {
        let items: [bool; STROBE_ITEMS] = items
            .try_into()
            .map_err(|_| AssessError::WrongItemCount(items.len()))?;
        Ok(StrobeChecklist {
            doi,
            reviewer: String::from(reviewer),
            items,
        })
    }

    pub fn checked(&self) -> usize {
        self.items.iter().filter(|i| **i).count()
    }
}

/// Fraction of checked items.
pub fn strobe_score(checklist: &StrobeChecklist) -> f64 {
    checklist.checked() as f64 / STROBE_ITEMS as f64
}

/// Returns the consensus checklist and the number of items on which the two
/// reviewers differ.
pub fn merge_reviews(
    a: &StrobeChecklist,
    b: &StrobeChecklist,
    consensus: &StrobeChecklist,
) -> Result<(StrobeChecklist, usize), AssessError> {
    for other in [b, consensus] {
        if other.doi != a.doi {
            return Err(AssessError::DoiMismatch(a.doi.clone(), other.doi.clone()));
        }
    }
    let disagreements = a.items.iter().zip(&b.items).filter(|(x, y)| x != y).count();
    Ok((consensus.clone(), disagreements))
}

/// Lower bound of the fourth quartile of the scores.
pub fn quality_threshold(scores: &[f64]) -> Result<f64, StatsError> {
    stats::quantile_lower_bound(scores, 0.75)
}

#[derive(Debug, Clone, PartialEq)]
pub struct QualityVerdict {
    pub doi: Doi,
    pub score: f64,
    pub strong: bool,
}

pub fn verdicts(checklists: &[StrobeChecklist], threshold: f64) -> BTreeMap<Doi, QualityVerdict> {
    checklists
        .iter()
        .map(|c| {
            let score = strobe_score(c);
            let v = QualityVerdict {
                doi: c.doi.clone(),
                score,
                strong: score >= threshold,
            };
            (c.doi.clone(), v)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mark {
    Strong,
    Weak,
    Unassessed,
    NotSelected,
}

impl Mark {
    pub fn symbol(&self) -> &'static str {
        match self {
            Mark::Strong => "+",
            Mark::Weak => "•",
            Mark::Unassessed => "unassessed",
            Mark::NotSelected => "",
        }
    }
}

impl fmt::Display for Mark {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QualityReport {
    pub methods: Vec<String>,
    pub rows: Vec<(Doi, Vec<Mark>)>,
}

impl QualityReport {
    pub fn row(&self, doi: &Doi) -> Option<&[Mark]> {
        self.rows
            .iter()
            .find(|(d, _)| d == doi)
            .map(|(_, m)| m.as_slice())
    }

    pub fn column(&self, method: &str) -> Option<Vec<Mark>> {
        let j = self.methods.iter().position(|m| m == method)?;
        Some(self.rows.iter().map(|(_, r)| r[j]).collect())
    }
}

/// Annotates every selected cell with the article's quality verdict.
pub fn quality_report(
    matrix: &SelectionMatrix,
    verdicts: &BTreeMap<Doi, QualityVerdict>,
) -> QualityReport {
    let rows = matrix
        .rows
        .iter()
        .map(|(doi, cells)| {
            let mark = match verdicts.get(doi) {
                Some(v) if v.strong => Mark::Strong,
                Some(_) => Mark::Weak,
                None => Mark::Unassessed,
            };
            let marks = cells
                .iter()
                .map(|sel| if *sel { mark } else { Mark::NotSelected })
                .collect();
            (doi.clone(), marks)
        })
        .collect();
    QualityReport {
        methods: matrix.methods.clone(),
        rows,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn checklist(doi: &str, checked: usize) -> StrobeChecklist {
        let items: Vec<bool> = (0..STROBE_ITEMS).map(|k| k < checked).collect();
        StrobeChecklist::new(Doi::parse(doi).unwrap(), "expert1", &items).unwrap()
    }

    #[test]
    fn scores() {
        assert_eq!(strobe_score(&checklist("10.1/a", 22)), 1.0);
        assert_eq!(strobe_score(&checklist("10.1/a", 0)), 0.0);
        assert!((strobe_score(&checklist("10.1/a", 20)) - 20.0 / 22.0).abs() < 1e-15);
        assert_eq!(
            StrobeChecklist::new(Doi::parse("10.1/a").unwrap(), "x", &[true; 21]),
            Err(AssessError::WrongItemCount(21))
        );
    }

    #[test]
    fn merging() {
        let a = checklist("10.1/a", 10);
        let (c, d) = merge_reviews(&a, &a, &a).unwrap();
        assert_eq!((c, d), (a.clone(), 0));
        let b = checklist("10.1/a", 13);
        let consensus = checklist("10.1/a", 12);
        assert_eq!(
            merge_reviews(&a, &b, &consensus).unwrap(),
            (consensus.clone(), 3)
        );
        assert_eq!(merge_reviews(&b, &a, &consensus).unwrap().1, 3);
        let other = checklist("10.1/b", 12);
        assert!(matches!(
            merge_reviews(&a, &b, &other),
            Err(AssessError::DoiMismatch(..))
        ));
    }

    #[test]
    fn threshold() {
        let t = quality_threshold(&[0.5, 0.6, 0.7, 1.0]).unwrap();
        assert!((t - 0.775).abs() < 1e-12);
        assert_eq!(quality_threshold(&[0.4; 5]).unwrap(), 0.4);
        assert_eq!(quality_threshold(&[]), Err(StatsError::EmptyInput));
    }

    #[test]
    fn report_marks() {
        let d = |s: &str| Doi::parse(s).unwrap();
        let m = SelectionMatrix {
            methods: vec!["CIS_C".into(), "G_cs".into()],
            rows: vec![
                (d("10.1/a"), vec![true, true]),
                (d("10.1/b"), vec![true, false]),
                (d("10.1/c"), vec![false, true]),
            ],
        };
        let v = verdicts(&[checklist("10.1/a", 21), checklist("10.1/b", 15)], 0.9);
        let r = quality_report(&m, &v);
        assert_eq!(r.row(&d("10.1/a")).unwrap(), &[Mark::Strong, Mark::Strong]);
        assert_eq!(
            r.row(&d("10.1/b")).unwrap(),
            &[Mark::Weak, Mark::NotSelected]
        );
        assert_eq!(
            r.row(&d("10.1/c")).unwrap(),
            &[Mark::NotSelected, Mark::Unassessed]
        );
        assert_eq!(r.column("G_cs").unwrap().len(), 3);
    }
}

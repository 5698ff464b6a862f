//! Selection of candidate impactful papers: geometric Q95 selection on a
//! pair of category z-scores, and the Comprehensive Impact Score (CIS), the
//! mean z-score over an indicator set.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::doi::Doi;
use crate::indicator::Category;
use crate::kgraph::IndicatorMatrix;
use crate::stats::{self, StatsError};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SelectError {
    #[error("category {0} is not a column of the indicator matrix")]
    UnknownCategory(Category),
    #[error("indicator set is empty")]
    EmptyIndicatorSet,
    #[error("category {category}: {source}")]
    Stats {
        category: Category,
        source: StatsError,
    },
    #[error(transparent)]
    Quantile(StatsError),
    #[error("unknown indicator set {0:?}")]
    UnknownSet(String),
}

/// Short axis letter used in method labels.
pub fn category_letter(c: Category) -> char {
    match c {
        Category::Citations => 'c',
        Category::Captures => 'r',
        Category::Mentions => 'm',
        Category::SocialMedia => 's',
        Category::Usage => 'u',
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SetName {
    C,
    A,
    I,
    Iprime,
    Aprime,
    Custom,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndicatorSet {
    pub name: SetName,
    /// Canonical order, no duplicates.
    pub categories: Vec<Category>,
}

impl IndicatorSet {
    pub fn named(name: SetName) -> Self {
        use Category::*;
        let categories = match name {
            SetName::C => alloc::vec![Citations],
            SetName::A => alloc::vec![Captures, Mentions, SocialMedia, Usage],
            SetName::I => Category::ALL.to_vec(),
            SetName::Iprime => alloc::vec![Citations, Mentions, SocialMedia],
            SetName::Aprime => alloc::vec![Mentions, SocialMedia],
            SetName::Custom => Vec::new(),
        };
        IndicatorSet { name, categories }
    }

    pub fn custom(categories: &[Category]) -> Self {
        let mut categories = categories.to_vec();
        categories.sort();
        categories.dedup();
        IndicatorSet {
            name: SetName::Custom,
            categories,
        }
    }

    /// The five predefined sets in reporting order.
    pub fn standard() -> [IndicatorSet; 5] {
        [
            SetName::C,
            SetName::A,
            SetName::I,
            SetName::Iprime,
            SetName::Aprime,
        ]
        .map(Self::named)
    }

    /// `C`, `A`, `I`, `I'`, `A'`, or the category letters of a custom set.
    pub fn label(&self) -> String {
        match self.name {
            SetName::C => "C".into(),
            SetName::A => "A".into(),
            SetName::I => "I".into(),
            SetName::Iprime => "I'".into(),
            SetName::Aprime => "A'".into(),
            SetName::Custom => self
                .categories
                .iter()
                .map(|c| category_letter(*c))
                .collect(),
        }
    }
}

impl FromStr for IndicatorSet {
    type Err = SelectError;

    /// Accepts the predefined names (`I'` may be written `Iprime`) or a
    /// `+`-separated list of categories such as `Mentions+SocialMedia`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let name = match s {
            "C" => Some(SetName::C),
            "A" => Some(SetName::A),
            "I" => Some(SetName::I),
            "I'" | "Iprime" | "iprime" => Some(SetName::Iprime),
            "A'" | "Aprime" | "aprime" => Some(SetName::Aprime),
            _ => None,
        };
        if let Some(name) = name {
            return Ok(IndicatorSet::named(name));
        }
        let cats = s
            .split('+')
            .map(|part| part.parse::<Category>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| SelectError::UnknownSet(String::from(s)))?;
        Ok(IndicatorSet::custom(&cats))
    }
}

impl fmt::Display for IndicatorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Method {
    Geometric(Category, Category),
    Cis(IndicatorSet),
}

impl Method {
    /// `G_cs` for a geometric pair, `CIS_I'` for an impact-score set.
    pub fn label(&self) -> String {
        match self {
            Method::Geometric(a, b) => {
                let mut s = String::from("G_");
                s.push(category_letter(*a));
                s.push(category_letter(*b));
                s
            }
            Method::Cis(set) => {
                let mut s = String::from("CIS_");
                s.push_str(&set.label());
                s
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SelectionResult {
    pub method: Method,
    /// One threshold per axis: two for geometric selection, one for CIS.
    pub thresholds: Vec<f64>,
    pub selected: BTreeSet<Doi>,
    /// Per-paper scores, aligned with `thresholds`.
    pub scores: BTreeMap<Doi, Vec<f64>>,
}

impl SelectionResult {
    pub fn is_selected(&self, doi: &Doi) -> bool {
        self.selected.contains(doi)
    }
}

fn category_z(matrix: &IndicatorMatrix, category: Category) -> Result<Vec<f64>, SelectError> {
    let column = matrix
        .column_f64(category)
        .ok_or(SelectError::UnknownCategory(category))?;
    stats::zscores(&column)
        .map(|z| z.scores)
        .map_err(|source| SelectError::Stats { category, source })
}

/// Papers whose z-scores reach the `q`-quantile lower bound on both axes.
pub fn geometric_select(
    matrix: &IndicatorMatrix,
    cat_a: Category,
    cat_b: Category,
    q: f64,
) -> Result<SelectionResult, SelectError> {
    let za = category_z(matrix, cat_a)?;
    let zb = category_z(matrix, cat_b)?;
    let ta = stats::quantile_lower_bound(&za, q).map_err(SelectError::Quantile)?;
    let tb = stats::quantile_lower_bound(&zb, q).map_err(SelectError::Quantile)?;
    let mut selected = BTreeSet::new();
    let mut scores = BTreeMap::new();
    for (k, doi) in matrix.papers.iter().enumerate() {
        if za[k] >= ta && zb[k] >= tb {
            selected.insert(doi.clone());
        }
        scores.insert(doi.clone(), alloc::vec![za[k], zb[k]]);
    }
    Ok(SelectionResult {
        method: Method::Geometric(cat_a, cat_b),
        thresholds: alloc::vec![ta, tb],
        selected,
        scores,
    })
}

/// Mean z-score over the set's categories for every paper of the matrix.
pub fn cis(
    matrix: &IndicatorMatrix,
    set: &IndicatorSet,
) -> Result<BTreeMap<Doi, f64>, SelectError> {
    if set.categories.is_empty() {
        return Err(SelectError::EmptyIndicatorSet);
    }
    let columns = set
        .categories
        .iter()
        .map(|c| category_z(matrix, *c))
        .collect::<Result<Vec<_>, _>>()?;
    let width = columns.len() as f64;
    Ok(matrix
        .papers
        .iter()
        .enumerate()
        .map(|(k, doi)| {
            let sum: f64 = columns.iter().map(|z| z[k]).sum();
            (doi.clone(), sum / width)
        })
        .collect())
}

/// Papers whose score reaches the `q`-quantile lower bound of all scores.
pub fn cis_select(
    set: &IndicatorSet,
    scores: &BTreeMap<Doi, f64>,
    q: f64,
) -> Result<SelectionResult, SelectError> {
    let values: Vec<f64> = scores.values().copied().collect();
    let t = stats::quantile_lower_bound(&values, q).map_err(SelectError::Quantile)?;
    Ok(SelectionResult {
        method: Method::Cis(set.clone()),
        thresholds: alloc::vec![t],
        selected: scores
            .iter()
            .filter(|(_, s)| **s >= t)
            .map(|(d, _)| d.clone())
            .collect(),
        scores: scores
            .iter()
            .map(|(d, s)| (d.clone(), alloc::vec![*s]))
            .collect(),
    })
}

/// Boolean table over the union of selected papers, one column per method.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SelectionMatrix {
    pub methods: Vec<String>,
    /// Rows in DOI order.
    pub rows: Vec<(Doi, Vec<bool>)>,
}

impl SelectionMatrix {
    pub fn row(&self, doi: &Doi) -> Option<&[bool]> {
        self.rows
            .iter()
            .find(|(d, _)| d == doi)
            .map(|(_, r)| r.as_slice())
    }
}

pub fn selection_matrix(results: &[SelectionResult]) -> SelectionMatrix {
    let union: BTreeSet<&Doi> = results.iter().flat_map(|r| r.selected.iter()).collect();
    SelectionMatrix {
        methods: results.iter().map(|r| r.method.label()).collect(),
        rows: union
            .into_iter()
            .map(|doi| {
                (
                    doi.clone(),
                    results.iter().map(|r| r.is_selected(doi)).collect(),
                )
            })
            .collect(),
    }
}

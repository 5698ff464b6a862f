//! The category → metric → source indicator hierarchy.

use alloc::string::String;
use core::fmt;
use core::str::FromStr;

use crate::date::Timestamp;
use crate::doi::Doi;

/// Top level of the indicator hierarchy. The declaration order is the
/// canonical column order of an [`IndicatorMatrix`](crate::IndicatorMatrix).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Category {
    Citations,
    Captures,
    Mentions,
    SocialMedia,
    Usage,
}

impl Category {
    pub const ALL: [Category; 5] = [
        Category::Citations,
        Category::Captures,
        Category::Mentions,
        Category::SocialMedia,
        Category::Usage,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Category::Citations => "Citations",
            Category::Captures => "Captures",
            Category::Mentions => "Mentions",
            Category::SocialMedia => "SocialMedia",
            Category::Usage => "Usage",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown indicator category {0:?}")]
pub struct UnknownCategory(pub String);

impl FromStr for Category {
    type Err = UnknownCategory;

    /// Accepts the canonical names plus the spellings used by PlumX
    /// ("Social Media", "Capture"), case-insensitively.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let folded: String = s
            .chars()
            .filter(|c| !c.is_whitespace() && *c != '_' && *c != '-')
            .flat_map(char::to_lowercase)
            .collect();
        match folded.as_str() {
            "citations" | "citation" | "c" => Ok(Category::Citations),
            "captures" | "capture" | "r" => Ok(Category::Captures),
            "mentions" | "mention" | "m" => Ok(Category::Mentions),
            "socialmedia" | "social" | "s" => Ok(Category::SocialMedia),
            "usage" | "u" => Ok(Category::Usage),
            _ => Err(UnknownCategory(String::from(s))),
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Position of one indicator in the hierarchy.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndicatorKey {
    pub category: Category,
    pub metric: String,
    pub source: String,
}

impl IndicatorKey {
    pub fn new(category: Category, metric: &str, source: &str) -> Self {
        IndicatorKey {
            category,
            metric: String::from(metric),
            source: String::from(source),
        }
    }

    pub fn citation_count() -> Self {
        IndicatorKey::new(Category::Citations, CITATION_COUNT, SCOPUS)
    }

    /// Whether the (category, metric, source) triple is one of the
    /// documented PlumX/Scopus indicators. Unknown triples are kept but
    /// flagged by callers.
    pub fn is_known(&self) -> bool {
        KNOWN_HIERARCHY.iter().any(|(c, m, s)| {
            *c == self.category && *m == self.metric.as_str() && *s == self.source.as_str()
        })
    }
}

impl fmt::Display for IndicatorKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}/{}", self.category, self.metric, self.source)
    }
}

pub const CITATION_COUNT: &str = "Citation Count";
pub const SCOPUS: &str = "Scopus";

/// Indicators recorded for the COVID-19 corpus.
pub const KNOWN_HIERARCHY: [(Category, &str, &str); 9] = [
    (Category::Citations, CITATION_COUNT, SCOPUS),
    (Category::Captures, "Readers", "Mendeley"),
    (Category::Mentions, "Blog Mentions", "Blog"),
    (Category::Mentions, "News Mentions", "News"),
    (Category::Mentions, "Q&A Site Mentions", "Stack Exchange"),
    (Category::Mentions, "References", "Wikipedia"),
    (
        Category::SocialMedia,
        "Shares, Likes & Comments",
        "Facebook",
    ),
    (Category::SocialMedia, "Tweets", "Twitter"),
    (Category::Usage, "Abstract Views", "Digital Commons"),
];

/// One harvested indicator value for one DOI.
///
/// Ordering is by (doi, category, metric, source), which is the canonical
/// order of observation files.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndicatorObservation {
    pub doi: Doi,
    pub key: IndicatorKey,
    pub value: u64,
    pub retrieved_at: Timestamp,
}

impl IndicatorObservation {
    pub fn new(doi: Doi, key: IndicatorKey, value: u64, retrieved_at: Timestamp) -> Self {
        IndicatorObservation {
            doi,
            key,
            value,
            retrieved_at,
        }
    }

    pub fn is_known(&self) -> bool {
        self.key.is_known()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn category_spellings() {
        assert_eq!(
            "Social Media".parse::<Category>().unwrap(),
            Category::SocialMedia
        );
        assert_eq!("capture".parse::<Category>().unwrap(), Category::Captures);
        assert_eq!("USAGE".parse::<Category>().unwrap(), Category::Usage);
        assert!("Readers".parse::<Category>().is_err());
        for c in Category::ALL {
            assert_eq!(c.name().parse::<Category>().unwrap(), c);
        }
    }

    #[test]
    fn canonical_order() {
        let mut shuffled = [
            Category::Usage,
            Category::Mentions,
            Category::Citations,
            Category::SocialMedia,
            Category::Captures,
        ];
        shuffled.sort();
        assert_eq!(shuffled, Category::ALL);
    }

    #[test]
    fn hierarchy_membership() {
        assert!(IndicatorKey::citation_count().is_known());
        assert!(IndicatorKey::new(Category::SocialMedia, "Tweets", "Twitter").is_known());
        assert!(!IndicatorKey::new(Category::SocialMedia, "Tweets", "Mastodon").is_known());
        assert!(!IndicatorKey::new(Category::Mentions, "Tweets", "Twitter").is_known());
    }
}

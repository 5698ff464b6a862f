use alloc::string::String;
use core::fmt;
use core::str::FromStr;

/// A Digital Object Identifier, stored trimmed and lower-cased.
///
/// DOIs are case-insensitive, so two DOIs that differ only in case are the
/// same `Doi`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Doi(String);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid DOI {0:?}: expected \"10.<registrant>/<suffix>\"")]
pub struct InvalidDoi(pub String);

impl Doi {
    pub fn parse(raw: &str) -> Result<Self, InvalidDoi> {
        let trimmed = raw.trim();
        let value = trimmed.to_lowercase();
        let valid = value.starts_with("10.")
            && value
                .find('/')
                .is_some_and(|slash| slash > 3 && slash + 1 < value.len())
            && !value.chars().any(|c| c.is_whitespace() || c.is_control());
        if valid {
            Ok(Doi(value))
        } else {
            Err(InvalidDoi(String::from(trimmed)))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// `https://doi.org/<doi>` with characters outside the IRI-safe set
    /// percent-encoded.
    pub fn iri(&self) -> String {
        let mut out = String::from(DOI_IRI_PREFIX);
        crate::kgraph::percent_encode_into(&self.0, &mut out);
        out
    }
}

pub(crate) const DOI_IRI_PREFIX: &str = "https://doi.org/";

impl FromStr for Doi {
    type Err = InvalidDoi;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Doi::parse(s)
    }
}

impl fmt::Display for Doi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl AsRef<str> for Doi {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

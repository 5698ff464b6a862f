//! Allocation-only core of the altimpact toolkit.
//!
//! Everything here is a pure function of its inputs: the indicator
//! vocabulary (category → metric → source), the indicator knowledge graph
//! and its canonical triple encoding, the statistics used to study
//! indicator behaviour (z-scores, Gaussian KDE, Pearson correlation with
//! Student-t significance, quantiles), the Q95 geometric and composite
//! impact-score selections, and STROBE quality scoring.
//!
//! File formats, harvesting backends and the command line live in the
//! `altimpact` crate.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

pub mod assess;
pub mod date;
pub mod doi;
pub mod indicator;
pub mod kgraph;
pub mod sample;
pub mod select;
pub mod stats;

pub use date::{Date, DateWindow, Timestamp};
pub use doi::Doi;
pub use indicator::{Category, IndicatorKey, IndicatorObservation};
pub use kgraph::{IndicatorMatrix, KnowledgeGraph};
pub use sample::{PaperRecord, SampleSet, ValidationWarning};
pub use select::{IndicatorSet, SelectionResult};

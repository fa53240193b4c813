//! Rule-based plain-language linter for Spanish legal-administrative text.
//!
//! The pipeline is: parse plain text or HTML into a [`Document`], run the
//! rule catalog over it with a [`RuleConfig`] and a [`LexiconSet`], and get
//! back span-anchored [`Diagnostic`]s. Two rule profiles are provided:
//! `artext` (the baseline recommendation set with its documented thresholds)
//! and `lengclaro` (the revised set with average-length mode, expanded
//! passive detection and the additional lexical and orthographic rules).
//!
//! ```
//! use claro_core::{lint, parse_plain, LexiconSet, Profile, RuleConfig};
//!
//! let lexicons = LexiconSet::embedded();
//! let doc = parse_plain("Cuando uno de ellos solicitare el ingreso mínimo vital.");
//! let diagnostics = lint(&doc, &RuleConfig::for_profile(Profile::Artext), &lexicons);
//! assert!(diagnostics.iter().any(|d| d.rule_id.as_str() == "b4"));
//! ```

pub mod dataset;
pub mod lexicons;
pub mod metrics;
pub mod morphology;
pub mod report;
pub mod rules;
pub mod textmodel;

pub use dataset::{DatasetEntry, DatasetError, ScanReport, Version};
pub use lexicons::{LexiconError, LexiconSet, Table};
pub use metrics::{compare, measure, DocMetrics, MetricsError, Trio, TrioReport};
pub use report::LintReport;
pub use rules::{
    lint, lint_with_threads, Category, ConfigError, Diagnostic, Profile, RuleConfig, RuleId,
    Severity,
};
pub use textmodel::{
    parse_html, parse_plain, tokenize, Block, BlockKind, Document, Sentence, SourceFormat, Span,
    TextError, TextParser, Token, TokenShape,
};

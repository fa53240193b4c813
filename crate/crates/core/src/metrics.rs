//! Per-document clarity indicators and version comparison within a trio.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::dataset::Version;
use crate::lexicons::LexiconSet;
use crate::rules::{lint, RuleConfig, RuleId};
use crate::textmodel::Document;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DocMetrics {
    pub sentence_count: usize,
    /// All word tokens, headings and list items included.
    pub word_count: usize,
    /// Mean over sentences of paragraphs and list introductions only.
    pub mean_sentence_words: f64,
    pub max_sentence_words: usize,
    pub paragraph_count: usize,
    pub mean_paragraph_words: f64,
    pub diagnostics_by_rule: BTreeMap<RuleId, usize>,
    pub diagnostics_per_1000_words: f64,
}

fn mean(total: usize, n: usize) -> f64 {
    if n == 0 {
        0.0
    } else {
        total as f64 / n as f64
    }
}

pub fn measure(doc: &Document, config: &RuleConfig, lexicons: &LexiconSet) -> DocMetrics {
    let prose: Vec<_> = doc.blocks.iter().filter(|b| b.kind.is_prose()).collect();
    let prose_sentences: Vec<usize> = prose.iter().flat_map(|b| &b.sentences).map(|s| s.word_count).collect();
    let word_count = doc.word_count();

    let mut diagnostics_by_rule = BTreeMap::new();
    let diagnostics = lint(doc, config, lexicons);
    for d in &diagnostics {
        *diagnostics_by_rule.entry(d.rule_id).or_insert(0) += 1;
    }

    DocMetrics {
        sentence_count: doc.sentences().count(),
        word_count,
        mean_sentence_words: mean(prose_sentences.iter().sum(), prose_sentences.len()),
        max_sentence_words: doc.sentences().map(|(_, s)| s.word_count).max().unwrap_or(0),
        paragraph_count: prose.len(),
        mean_paragraph_words: mean(prose.iter().map(|b| b.word_count()).sum(), prose.len()),
        diagnostics_by_rule,
        diagnostics_per_1000_words: mean(diagnostics.len() * 1000, word_count),
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MetricsError {
    #[error("document {doc_number}: at least two versions are needed to compare, found {present:?}")]
    MissingVersion { doc_number: u32, present: Vec<Version> },
}

/// The versions of one document that are available.
#[derive(Debug, Clone, Default)]
pub struct Trio {
    pub doc_number: u32,
    pub documents: BTreeMap<Version, Document>,
}

impl Trio {
    pub fn new(doc_number: u32) -> Self {
        Self { doc_number, documents: BTreeMap::new() }
    }

    pub fn with(mut self, version: Version, doc: Document) -> Self {
        self.documents.insert(version, doc);
        self
    }

    pub fn missing(&self) -> Vec<Version> {
        Version::ALL.into_iter().filter(|v| !self.documents.contains_key(v)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrioReport {
    pub doc_number: u32,
    pub metrics: BTreeMap<Version, DocMetrics>,
    pub missing: Vec<Version>,
    /// The version the others are compared against: the original when
    /// present, otherwise the earliest version available.
    pub baseline: Version,
    /// For each other version, per rule: baseline count minus its count.
    pub deltas: BTreeMap<Version, BTreeMap<RuleId, i64>>,
}

pub fn compare(trio: &Trio, config: &RuleConfig, lexicons: &LexiconSet) -> Result<TrioReport, MetricsError> {
    if trio.documents.len() < 2 {
        return Err(MetricsError::MissingVersion {
            doc_number: trio.doc_number,
            present: trio.documents.keys().copied().collect(),
        });
    }
    let metrics: BTreeMap<Version, DocMetrics> = trio
        .documents
        .par_iter()
        .map(|(v, doc)| (*v, measure(doc, config, lexicons)))
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    let baseline = *metrics.keys().next().expect("two versions");
    let count = |v: &Version, id: RuleId| metrics[v].diagnostics_by_rule.get(&id).copied().unwrap_or(0) as i64;
    let deltas = metrics
        .keys()
        .filter(|v| **v != baseline)
        .map(|v| {
            let per_rule = RuleId::ALL
                .iter()
                .copied()
                .filter(|id| config.is_enabled(*id))
                .map(|id| (id, count(&baseline, id) - count(v, id)))
                .collect();
            (*v, per_rule)
        })
        .collect();
    Ok(TrioReport { doc_number: trio.doc_number, metrics, missing: trio.missing(), baseline, deltas })
}

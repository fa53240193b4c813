//! The rule engine: runs the enabled rules of a [`RuleConfig`] over a
//! [`Document`] and returns span-anchored [`Diagnostic`]s in canonical order.

mod catalog;
mod config;
mod discourse;
mod lexical;
mod morphosyntactic;
mod orthography;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::lexicons::LexiconSet;
use crate::textmodel::{Block, Document, Span};

pub use catalog::{catalog, RuleInfo};
pub use config::{default_rules, Category, ConfigError, Profile, RuleConfig, RuleId, Severity, Thresholds};

const SNIPPET_MAX_CHARS: usize = 80;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub rule_id: RuleId,
    pub category: Category,
    pub severity: Severity,
    /// Char offsets into the document text.
    pub span: Span,
    /// Byte offsets into the HTML source, when there is one.
    pub source_span: Option<Span>,
    pub message: String,
    pub suggestions: Vec<String>,
    pub snippet: String,
}

impl Diagnostic {
    fn sort_key(&self) -> (usize, RuleId, usize, &str) {
        (self.span.start, self.rule_id, self.span.end, &self.message)
    }
}

/// Shared inputs of every rule.
pub(crate) struct Ctx<'a> {
    pub doc: &'a Document,
    pub config: &'a RuleConfig,
    pub lex: &'a LexiconSet,
}

impl Ctx<'_> {
    pub fn on(&self, id: RuleId) -> bool {
        self.config.is_enabled(id)
    }

    pub fn profile(&self) -> Profile {
        self.config.profile
    }

    pub fn diag(&self, id: RuleId, severity: Severity, span: Span, message: impl Into<String>) -> Diagnostic {
        Diagnostic {
            rule_id: id,
            category: id.category(),
            severity,
            span,
            source_span: self.doc.source_span(span),
            message: message.into(),
            suggestions: Vec::new(),
            snippet: snippet(&self.doc.content_text(span)),
        }
    }
}

pub(crate) fn snippet(text: &str) -> String {
    let flat: String = text.split_whitespace().collect::<Vec<_>>().join(" ");
    if flat.chars().count() <= SNIPPET_MAX_CHARS {
        flat
    } else {
        let mut cut: String = flat.chars().take(SNIPPET_MAX_CHARS - 3).collect();
        cut.push('…');
        cut
    }
}

fn block_pass(ctx: &Ctx, block: &Block) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    discourse::block(ctx, block, &mut out);
    morphosyntactic::block(ctx, block, &mut out);
    lexical::block(ctx, block, &mut out);
    orthography::block(ctx, block, &mut out);
    out
}

fn document_pass(ctx: &Ctx) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    discourse::document(ctx, &mut out);
    morphosyntactic::document(ctx, &mut out);
    lexical::document(ctx, &mut out);
    out
}

fn finish(mut diagnostics: Vec<Diagnostic>, config: &RuleConfig) -> Vec<Diagnostic> {
    diagnostics.retain(|d| config.is_enabled(d.rule_id));
    diagnostics.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    diagnostics.dedup();
    diagnostics
}

/// Runs every enabled rule over `doc`. Blocks are processed on the global
/// rayon pool; the result does not depend on scheduling.
pub fn lint(doc: &Document, config: &RuleConfig, lexicons: &LexiconSet) -> Vec<Diagnostic> {
    let ctx = Ctx { doc, config, lex: lexicons };
    let mut diagnostics: Vec<Diagnostic> = doc
        .blocks
        .par_iter()
        .flat_map_iter(|block| block_pass(&ctx, block))
        .collect();
    diagnostics.extend(document_pass(&ctx));
    finish(diagnostics, config)
}

/// [`lint`] on a dedicated pool of `threads` workers (1 runs inline).
pub fn lint_with_threads(
    doc: &Document,
    config: &RuleConfig,
    lexicons: &LexiconSet,
    threads: usize,
) -> Vec<Diagnostic> {
    if threads <= 1 {
        let ctx = Ctx { doc, config, lex: lexicons };
        let mut diagnostics: Vec<Diagnostic> =
            doc.blocks.iter().flat_map(|b| block_pass(&ctx, b)).collect();
        diagnostics.extend(document_pass(&ctx));
        return finish(diagnostics, config);
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("thread pool");
    pool.install(|| lint(doc, config, lexicons))
}

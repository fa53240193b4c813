use std::collections::BTreeMap;

use super::{Ctx, Diagnostic, RuleId, Severity};
use crate::lexicons::Table;
use crate::morphology::nominal::{expansion_after, expansion_before};
use crate::morphology::{find_acronyms, is_acronym_candidate, AcronymMatch};
use crate::textmodel::{tokenize, Block, Sentence, Span};

const SUBSTITUTIONS: &[(RuleId, Table, &str)] = &[
    (RuleId::C1, Table::SubjectivityIndicators, "signals subjectivity; administrative texts should stay objective"),
    (RuleId::C4, Table::TransparentTerms, "belongs to a high register; use a more common word"),
    (RuleId::C5, Table::DifficultExpressions, "is hard to understand; use a clearer expression"),
    (RuleId::C6, Table::InaccurateWords, "is vague; use a more precise word"),
    (RuleId::C7, Table::RedundantExpressions, "is redundant"),
    (RuleId::C8, Table::LongWords, "has a shorter alternative"),
    (RuleId::C9, Table::SuperfluousPhrases, "adds nothing; remove it or use the main verb"),
];

/// Spans of full forms that explain an adjacent acronym.
fn expansion_spans(ctx: &Ctx, sentence: &Sentence) -> Vec<Span> {
    let tokens = &sentence.tokens;
    tokens
        .iter()
        .enumerate()
        .filter(|(_, t)| is_acronym_candidate(t, ctx.lex))
        .filter_map(|(i, t)| {
            expansion_after(tokens, i, &t.surface).or_else(|| expansion_before(tokens, i, &t.surface))
        })
        .collect()
}

fn foreign_words(ctx: &Ctx, sentence: &Sentence, out: &mut Vec<Diagnostic>) {
    let expansions = expansion_spans(ctx, sentence);
    let first_word = sentence.tokens.iter().position(|t| t.is_word);
    for m in ctx.lex.match_phrases(&sentence.tokens, Table::ForeignWords) {
        let head = &sentence.tokens[m.tokens.start];
        let in_expansion = expansions.iter().any(|e| e.contains(m.span));
        if !in_expansion {
            if head.is_all_caps() && head.surface.chars().count() > 1 {
                continue;
            }
            if head.starts_uppercase() && Some(m.tokens.start) != first_word {
                continue;
            }
        }
        let mut d = ctx.diag(
            RuleId::C10,
            Severity::Warn,
            m.span,
            format!("\"{}\" is a foreign word; use a Spanish equivalent", ctx.doc.slice(m.span)),
        );
        d.suggestions = m.replacements;
        out.push(d);
    }
}

pub(super) fn block(ctx: &Ctx, block: &Block, out: &mut Vec<Diagnostic>) {
    for sentence in &block.sentences {
        for &(id, table, why) in SUBSTITUTIONS {
            if !ctx.on(id) {
                continue;
            }
            for m in ctx.lex.match_phrases(&sentence.tokens, table) {
                let mut d = ctx.diag(id, Severity::Warn, m.span, format!("\"{}\" {why}", ctx.doc.slice(m.span)));
                d.suggestions = m.replacements;
                out.push(d);
            }
        }
        if ctx.on(RuleId::C10) {
            foreign_words(ctx, sentence, out);
        }
    }
}

fn title_of(ctx: &Ctx, occurrence: &AcronymMatch) -> Option<String> {
    let title = ctx.doc.blocks[occurrence.block].html_attrs.get(&occurrence.surface)?;
    Some(title.split_whitespace().collect::<Vec<_>>().join(" "))
}

fn acronyms(ctx: &Ctx, out: &mut Vec<Diagnostic>) {
    let found = find_acronyms(ctx.doc, ctx.lex);
    let mut groups: BTreeMap<&str, Vec<&AcronymMatch>> = BTreeMap::new();
    for a in &found {
        groups.entry(a.surface.as_str()).or_default().push(a);
    }
    let all_expansions: Vec<Span> = found.iter().filter_map(|a| a.expansion.map(|e| e.1)).collect();

    for (surface, occurrences) in groups {
        let first = occurrences[0];
        if ctx.on(RuleId::C2) && first.expansion.is_none() {
            let glosses = ctx.lex.table(Table::AcronymGlosses).replacements(surface).map(<[String]>::to_vec);
            let d = if first.clarified_by_markup {
                let mut d = ctx.diag(
                    RuleId::C2,
                    Severity::Info,
                    first.span,
                    format!(
                        "Acronym {surface} is explained only in the markup; readers may miss the explanation, so write the full form at its first mention"
                    ),
                );
                d.suggestions = glosses.unwrap_or_else(|| title_of(ctx, first).into_iter().collect());
                d
            } else {
                let mut d = ctx.diag(
                    RuleId::C2,
                    Severity::Warn,
                    first.span,
                    format!("Acronym {surface} used without its full form at its first mention"),
                );
                d.suggestions = glosses.unwrap_or_default();
                d
            };
            out.push(d);
        }

        if !ctx.on(RuleId::C3) {
            continue;
        }
        let Some(intro) = occurrences.iter().find(|a| a.expansion.is_some()) else { continue };
        if intro.span.start > first.span.start {
            out.push(ctx.diag(
                RuleId::C3,
                Severity::Warn,
                intro.span,
                format!("Acronym {surface} is introduced after it was first used; give the full form at the first mention"),
            ));
        }
        let (_, full_span) = intro.expansion.expect("checked");
        let full: Vec<String> =
            tokenize(ctx.doc.slice(full_span)).into_iter().filter(|t| t.is_word).map(|t| t.lower).collect();
        for (_, sentence) in ctx.doc.sentences() {
            let words: Vec<_> = sentence.words().collect();
            if words.len() < full.len() {
                continue;
            }
            for at in 0..=words.len() - full.len() {
                let window = &words[at..at + full.len()];
                if !window.iter().zip(&full).all(|(t, w)| t.lower == *w) {
                    continue;
                }
                let span = window[0].span.cover(window[window.len() - 1].span);
                if span.start <= intro.span.start || all_expansions.iter().any(|e| e.overlaps(span)) {
                    continue;
                }
                let mut d = ctx.diag(
                    RuleId::C3,
                    Severity::Warn,
                    span,
                    format!("Full form repeated after {surface} was introduced; use the acronym consistently"),
                );
                d.suggestions.push(surface.to_string());
                out.push(d);
            }
        }
    }
}

pub(super) fn document(ctx: &Ctx, out: &mut Vec<Diagnostic>) {
    if ctx.on(RuleId::C2) || ctx.on(RuleId::C3) {
        acronyms(ctx, out);
    }
}

use serde::Serialize;

use super::is_function_word;
use crate::lexicons::{LexiconSet, Table};
use crate::textmodel::{Document, Sentence, Span, Token};

const NOMINALIZATION_SUFFIXES: &[&str] = &["ción", "ciones", "sión", "siones"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Nominalization {
    pub span: Span,
    pub surface: String,
    /// Index into the sentence's tokens.
    pub token: usize,
    /// Followed by a *de*/*del* complement ("la utilización de").
    pub has_de_complement: bool,
}

/// Lowercase -ción/-sión nouns that are not in the exclusion table.
pub fn find_nominalizations(sentence: &Sentence, lexicons: &LexiconSet) -> Vec<Nominalization> {
    let tokens = &sentence.tokens;
    let excluded = lexicons.table(Table::NominalizationExclusions).coverage(tokens);
    let mut out = Vec::new();
    for (i, token) in tokens.iter().enumerate() {
        if !token.is_word || !token.starts_lowercase() || excluded[i] {
            continue;
        }
        let Some(suffix) = NOMINALIZATION_SUFFIXES.iter().find(|s| token.lower.ends_with(*s)) else {
            continue;
        };
        if token.lower.chars().count() <= suffix.chars().count() + 1 {
            continue;
        }
        let has_de_complement = tokens.get(i + 1).is_some_and(|n| n.lower == "de" || n.lower == "del");
        out.push(Nominalization {
            span: token.span,
            surface: token.surface.clone(),
            token: i,
            has_de_complement,
        });
    }
    out
}

/// Words skipped when reading the initials of an expansion.
const INITIALS_SKIP: &[&str] = &["de", "del", "la", "las", "los", "el", "y", "e", "para", "en", "a", "por"];

/// Whether the initials of `words` (minus articles and prepositions) spell
/// `acronym`.
pub fn initials_match<S: AsRef<str>>(words: &[S], acronym: &str) -> bool {
    let initials: String = words
        .iter()
        .map(AsRef::as_ref)
        .filter(|w| !INITIALS_SKIP.contains(&w.to_lowercase().as_str()))
        .filter_map(|w| w.chars().next())
        .flat_map(char::to_lowercase)
        .collect();
    let letters: String = acronym.chars().filter(|c| c.is_alphabetic()).flat_map(char::to_lowercase).collect();
    !letters.is_empty() && initials == letters
}

/// 2 to 6 characters, uppercase letters and digits, starting with a letter and
/// not in the exclusion table.
pub fn is_acronym_candidate(token: &Token, lexicons: &LexiconSet) -> bool {
    let s = token.surface.as_str();
    let len = s.chars().count();
    token.is_word
        && (2..=6).contains(&len)
        && s.chars().next().is_some_and(|c| c.is_uppercase())
        && s.chars().all(|c| c.is_ascii_uppercase() || c.is_ascii_digit() || c == 'Ñ')
        && !lexicons.contains(Table::AcronymExclusions, s)
}

/// Three or more capitalized words, at least one of them a function word or
/// longer than an acronym could be: a heading or a shouted sentence.
pub(crate) fn is_shouting(sentence: &Sentence) -> bool {
    let caps: Vec<&Token> = sentence.words().filter(|t| t.is_all_caps()).collect();
    caps.len() >= 3
        && caps
            .iter()
            .any(|t| t.surface.chars().count() > 6 || is_function_word(&t.lower))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExpansionStyle {
    /// "INSS (Instituto Nacional de la Seguridad Social)"
    FullFormAfter,
    /// "Instituto Nacional de la Seguridad Social (INSS)"
    FullFormBefore,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AcronymMatch {
    pub surface: String,
    pub span: Span,
    pub block: usize,
    /// Sentence index within the block.
    pub sentence: usize,
    /// Token index within the sentence.
    pub token: usize,
    /// The HTML carried a title for this acronym (`<abbr>`/`<acronym>`).
    pub clarified_by_markup: bool,
    pub expansion: Option<(ExpansionStyle, Span)>,
}

const MAX_EXPANSION_WORDS: usize = 12;

pub(crate) fn expansion_after(tokens: &[Token], at: usize, acronym: &str) -> Option<Span> {
    if tokens.get(at + 1)?.surface != "(" {
        return None;
    }
    let close = (at + 2..tokens.len()).find(|&i| tokens[i].surface == ")")?;
    let inner = &tokens[at + 2..close];
    if inner.is_empty() || !inner.iter().all(|t| t.is_word) {
        return None;
    }
    let words: Vec<&str> = inner.iter().map(|t| t.surface.as_str()).collect();
    initials_match(&words, acronym).then(|| inner[0].span.cover(inner[inner.len() - 1].span))
}

pub(crate) fn expansion_before(tokens: &[Token], at: usize, acronym: &str) -> Option<Span> {
    if at < 2 || tokens[at - 1].surface != "(" || tokens.get(at + 1).is_none_or(|t| t.surface != ")") {
        return None;
    }
    let end = at - 1;
    (1..=MAX_EXPANSION_WORDS.min(end)).find_map(|n| {
        let inner = &tokens[end - n..end];
        if !inner.iter().all(|t| t.is_word) {
            return None;
        }
        let words: Vec<&str> = inner.iter().map(|t| t.surface.as_str()).collect();
        initials_match(&words, acronym).then(|| inner[0].span.cover(inner[n - 1].span))
    })
}

/// Every acronym occurrence in document order.
pub fn find_acronyms(doc: &Document, lexicons: &LexiconSet) -> Vec<AcronymMatch> {
    let mut out = Vec::new();
    for (b, block) in doc.blocks.iter().enumerate() {
        for (s, sentence) in block.sentences.iter().enumerate() {
            if is_shouting(sentence) {
                continue;
            }
            for (i, token) in sentence.tokens.iter().enumerate() {
                if !is_acronym_candidate(token, lexicons) {
                    continue;
                }
                let expansion = expansion_after(&sentence.tokens, i, &token.surface)
                    .map(|sp| (ExpansionStyle::FullFormAfter, sp))
                    .or_else(|| {
                        expansion_before(&sentence.tokens, i, &token.surface)
                            .map(|sp| (ExpansionStyle::FullFormBefore, sp))
                    });
                out.push(AcronymMatch {
                    surface: token.surface.clone(),
                    span: token.span,
                    block: b,
                    sentence: s,
                    token: i,
                    clarified_by_markup: block.html_attrs.contains_key(&token.surface),
                    expansion,
                });
            }
        }
    }
    out
}

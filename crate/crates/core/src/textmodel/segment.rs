use std::collections::HashSet;

use super::Span;

/// Seed abbreviations (without the trailing period) that never end a sentence.
pub const DEFAULT_ABBREVIATIONS: &[&str] = &[
    "admón", "apdo", "art", "arts", "avda", "d", "dña", "dr", "dra", "ej", "núm", "núms", "pág",
    "págs", "sr", "sra", "sras", "sres", "srta", "ud", "uds", "vd", "vds",
];

fn is_terminator(c: char) -> bool {
    matches!(c, '.' | '!' | '?' | '…')
}

fn is_closer(c: char) -> bool {
    matches!(c, '"' | '»' | '”' | '’' | '\'' | ')' | ']')
}

/// The whitespace-delimited word that ends right before `at`, lowercased and
/// without leading punctuation.
fn word_before(chars: &[char], at: usize) -> String {
    let mut start = at;
    while start > 0 && !chars[start - 1].is_whitespace() {
        start -= 1;
    }
    chars[start..at]
        .iter()
        .skip_while(|c| !c.is_alphanumeric())
        .collect::<String>()
        .to_lowercase()
}

fn trimmed(chars: &[char], start: usize, end: usize) -> Option<Span> {
    let mut s = start;
    let mut e = end;
    while s < e && chars[s].is_whitespace() {
        s += 1;
    }
    while e > s && chars[e - 1].is_whitespace() {
        e -= 1;
    }
    (s < e).then(|| Span::new(s, e))
}

pub(super) fn segment(abbreviations: &HashSet<String>, text: &str) -> Vec<Span> {
    let chars: Vec<char> = text.chars().collect();
    let mut sentences = Vec::new();
    let mut start = 0;
    let mut i = 0;
    while i < chars.len() {
        if !is_terminator(chars[i]) {
            i += 1;
            continue;
        }
        let mut j = i;
        while j < chars.len() && is_terminator(chars[j]) {
            j += 1;
        }
        let single_period = j - i == 1 && chars[i] == '.';
        while j < chars.len() && is_closer(chars[j]) {
            j += 1;
        }
        let at_break = j == chars.len() || chars[j].is_whitespace();
        let abbreviation = single_period && abbreviations.contains(&word_before(&chars, i));
        if at_break && !abbreviation {
            sentences.extend(trimmed(&chars, start, j));
            start = j;
        }
        i = j;
    }
    sentences.extend(trimmed(&chars, start, chars.len()));
    sentences
}

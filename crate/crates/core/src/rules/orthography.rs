use super::{Ctx, Diagnostic, RuleId, Severity};
use crate::lexicons::Table;
use crate::morphology::is_acronym_candidate;
use crate::morphology::nominal::is_shouting;
use crate::textmodel::{Block, BlockKind, Sentence, Token};

const F1_MIN_LETTERS: usize = 4;
const F2_MAX_DIGITS: usize = 6;

fn capitals(ctx: &Ctx, block: &Block, out: &mut Vec<Diagnostic>) {
    let words: Vec<&Token> = block.tokens().filter(|t| t.is_word).collect();
    let letters = |t: &Token| t.surface.chars().filter(|c| c.is_alphabetic()).count();
    if matches!(block.kind, BlockKind::Heading(_))
        && words.iter().any(|t| letters(t) >= 2)
        && words.iter().all(|t| !t.surface.chars().any(char::is_lowercase))
        && !(words.len() == 1 && is_acronym_candidate(words[0], ctx.lex))
    {
        out.push(ctx.diag(
            RuleId::F1,
            Severity::Warn,
            ctx.doc.content_span(block),
            "Heading written entirely in capitals; use sentence case",
        ));
        return;
    }
    for sentence in &block.sentences {
        let shouting = is_shouting(sentence);
        for t in sentence.words() {
            if !t.is_all_caps() || letters(t) < F1_MIN_LETTERS {
                continue;
            }
            let acronym = is_acronym_candidate(t, ctx.lex) && !shouting;
            if acronym || ctx.lex.contains(Table::AcronymExclusions, &t.surface) {
                continue;
            }
            out.push(ctx.diag(
                RuleId::F1,
                Severity::Warn,
                t.span,
                format!("\"{}\" is written in capitals; use lowercase", t.surface),
            ));
        }
    }
}

/// Value of a run of spelled-out number words starting at `words[at]`, with
/// the number of words consumed.
fn spelled_number(ctx: &Ctx, words: &[&Token], at: usize) -> Option<(u64, usize)> {
    let mut total = 0u64;
    let mut current = 0u64;
    let mut i = at;
    let mut consumed = 0;
    while i < words.len() {
        if words[i].lower == "y" && consumed > 0 {
            // "treinta y dos": a unit must follow
            match words.get(i + 1).and_then(|w| ctx.lex.number_value(&w.lower)) {
                Some(v) if (1..10).contains(&v) => {
                    i += 1;
                    continue;
                }
                _ => break,
            }
        }
        let Some(value) = ctx.lex.number_value(&words[i].lower) else { break };
        if value == 1000 {
            total += current.max(1) * 1000;
            current = 0;
        } else {
            current += value;
        }
        i += 1;
        consumed = i - at;
    }
    (consumed > 0).then_some((total + current, consumed))
}

fn millions(value: u64) -> String {
    let whole = value / 1_000_000;
    let rest = value % 1_000_000;
    let unit = if value == 1_000_000 { "millón" } else { "millones" };
    if rest == 0 {
        return format!("{whole} {unit}");
    }
    let frac = format!("{:02}", rest * 100 / 1_000_000);
    let frac = frac.trim_end_matches('0');
    if frac.is_empty() {
        format!("{whole} {unit}")
    } else {
        format!("{whole},{frac} {unit}")
    }
}

fn numerals(ctx: &Ctx, sentence: &Sentence, out: &mut Vec<Diagnostic>) {
    let words: Vec<&Token> = sentence.words().collect();
    let mut i = 0;
    while i < words.len() {
        let word = words[i];
        if word.is_digits() {
            let digits: String = word.surface.chars().filter(char::is_ascii_digit).collect();
            let decimal = word.surface.contains(',');
            if !decimal && digits.len() > F2_MAX_DIGITS {
                let mut d = ctx.diag(
                    RuleId::F2,
                    Severity::Warn,
                    word.span,
                    format!("Figure with {} digits is hard to read; use words for the large units", digits.len()),
                );
                if let Ok(value) = digits.parse::<u64>() {
                    d.suggestions.push(millions(value));
                }
                out.push(d);
            }
            i += 1;
            continue;
        }
        match spelled_number(ctx, &words, i) {
            Some((value, consumed)) => {
                if (11..=9999).contains(&value) {
                    let span = word.span.cover(words[i + consumed - 1].span);
                    let mut d = ctx.diag(
                        RuleId::F2,
                        Severity::Warn,
                        span,
                        format!("Number \"{}\" spelled out; write it in figures", ctx.doc.slice(span)),
                    );
                    d.suggestions.push(value.to_string());
                    out.push(d);
                }
                i += consumed;
            }
            None => i += 1,
        }
    }
}

pub(super) fn block(ctx: &Ctx, block: &Block, out: &mut Vec<Diagnostic>) {
    if ctx.on(RuleId::F1) {
        capitals(ctx, block, out);
    }
    if ctx.on(RuleId::F2) {
        for sentence in &block.sentences {
            numerals(ctx, sentence, out);
        }
    }
}

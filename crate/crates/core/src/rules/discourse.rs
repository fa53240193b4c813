use std::collections::HashMap;

use super::{Ctx, Diagnostic, Profile, RuleId, Severity};
use crate::lexicons::Table;
use crate::textmodel::{Block, BlockKind, Sentence, Token};

const COORDINATORS: &[&str] = &["y", "e", "o", "u", "ni", "pero", "sino", "aunque"];
const SERIES_SEPARATORS: &[&str] = &[",", "y", "e", "o", "u"];

/// Sentence length above which a4 fires in the active profile.
fn sentence_limit(ctx: &Ctx) -> usize {
    let t = &ctx.config.thresholds;
    match ctx.profile() {
        Profile::Artext => t.long_sentence_words,
        Profile::Lengclaro => t.hard_sentence_cap_words,
    }
}

/// Coordinated main clauses: a semicolon, or a comma right before a
/// coordinating conjunction.
fn is_compound(sentence: &Sentence) -> bool {
    let tokens = &sentence.tokens;
    tokens.iter().enumerate().any(|(i, t)| {
        t.surface == ";"
            || (t.surface == "," && tokens.get(i + 1).is_some_and(|n| COORDINATORS.contains(&n.lower.as_str())))
    })
}

/// Number of series separators outside parentheses.
fn series_separators(sentence: &Sentence) -> usize {
    let mut depth = 0usize;
    let mut count = 0;
    for t in &sentence.tokens {
        match t.surface.as_str() {
            "(" => depth += 1,
            ")" => depth = depth.saturating_sub(1),
            s if depth == 0 && SERIES_SEPARATORS.contains(&s.to_lowercase().as_str()) => count += 1,
            _ => {}
        }
    }
    count
}

fn clause_initial(tokens: &[Token], at: usize) -> bool {
    at == 0 || matches!(tokens[at - 1].surface.as_str(), "," | ";" | ":")
}

pub(super) fn block(ctx: &Ctx, block: &Block, out: &mut Vec<Diagnostic>) {
    let t = &ctx.config.thresholds;
    let content = ctx.doc.content_span(block);

    // A text that is a single paragraph has no paragraph structure to improve.
    let several_paragraphs = || ctx.doc.blocks.iter().filter(|b| b.kind.is_prose()).nth(1).is_some();
    if ctx.on(RuleId::A1) && block.kind == BlockKind::Paragraph && block.sentences.len() == 1 && several_paragraphs() {
        let severity = match ctx.profile() {
            Profile::Artext => Severity::Warn,
            Profile::Lengclaro => Severity::Info,
        };
        out.push(ctx.diag(
            RuleId::A1,
            severity,
            content,
            "Paragraph with a single sentence; paragraphs should develop an idea in at least two sentences",
        ));
    }

    if ctx.on(RuleId::A2) && block.kind.is_prose() && block.word_count() > t.long_paragraph_words {
        out.push(ctx.diag(
            RuleId::A2,
            Severity::Warn,
            content,
            format!(
                "Paragraph of {} words exceeds {}; split it into shorter paragraphs",
                block.word_count(),
                t.long_paragraph_words
            ),
        ));
    }

    let limit = sentence_limit(ctx);
    for sentence in &block.sentences {
        let long = sentence.word_count > limit;
        if ctx.on(RuleId::A4) && long {
            out.push(ctx.diag(
                RuleId::A4,
                Severity::Warn,
                sentence.span,
                format!("Sentence of {} words exceeds {}; split it", sentence.word_count, limit),
            ));
        }
        if ctx.on(RuleId::A5)
            && ctx.profile() == Profile::Artext
            && sentence.word_count > t.long_sentence_words
            && is_compound(sentence)
        {
            out.push(ctx.diag(
                RuleId::A5,
                Severity::Warn,
                sentence.span,
                "Long sentence made of coordinated clauses; divide it into two or more sentences",
            ));
        }
        if ctx.on(RuleId::A7)
            && block.kind.is_prose()
            && long
            && series_separators(sentence) + 1 >= t.min_list_items
        {
            let mut d = ctx.diag(
                RuleId::A7,
                Severity::Warn,
                sentence.span,
                "Long enumeration inside a sentence; consider a bulleted list",
            );
            d.suggestions.push(
                "Introduce the list with a statement ending in a colon and give every item the same structure"
                    .to_string(),
            );
            out.push(d);
        }
    }

    if ctx.on(RuleId::A6) && ctx.profile() == Profile::Artext && block.kind.is_prose() {
        let connectors = ctx.lex.table(Table::Connectors);
        let mut seen: HashMap<String, usize> = HashMap::new();
        for sentence in &block.sentences {
            for m in connectors.find(&sentence.tokens) {
                if !clause_initial(&sentence.tokens, m.tokens.start) {
                    continue;
                }
                let n = seen.entry(m.entry.clone()).or_default();
                *n += 1;
                if *n >= 2 {
                    let mut d = ctx.diag(
                        RuleId::A6,
                        Severity::Info,
                        m.span,
                        format!("Connector \"{}\" repeated in this paragraph; vary the connectors", m.entry),
                    );
                    d.suggestions = m.replacements.clone();
                    out.push(d);
                }
            }
        }
    }
}

pub(super) fn document(ctx: &Ctx, out: &mut Vec<Diagnostic>) {
    if ctx.on(RuleId::A3) && ctx.profile() == Profile::Artext {
        let connectors = ctx.lex.table(Table::Connectors);
        let mut chain = 0;
        for block in &ctx.doc.blocks {
            match block.kind {
                BlockKind::Heading(_) => chain = 0,
                kind if kind.is_prose() => {
                    chain += 1;
                    let Some(first) = block.sentences.first() else { continue };
                    let opens = connectors.find(&first.tokens).first().is_some_and(|m| m.tokens.start == 0);
                    if chain >= 2 && !opens {
                        let span = first.tokens.first().map_or(first.span, |t| t.span);
                        out.push(ctx.diag(
                            RuleId::A3,
                            Severity::Info,
                            span,
                            "Paragraph does not open with a discourse connector linking it to the previous one",
                        ));
                    }
                }
                _ => {}
            }
        }
    }

    if ctx.on(RuleId::A5) && ctx.profile() == Profile::Lengclaro {
        let (words, sentences) = ctx
            .doc
            .blocks
            .iter()
            .filter(|b| b.kind.is_prose())
            .flat_map(|b| &b.sentences)
            .fold((0usize, 0usize), |(w, n), s| (w + s.word_count, n + 1));
        let target = ctx.config.thresholds.avg_sentence_words_target;
        if sentences > 0 && words > target * sentences {
            out.push(ctx.diag(
                RuleId::A5,
                Severity::Warn,
                ctx.doc.full_span(),
                format!(
                    "Average sentence length is {:.1} words, above the target of {}; shorten the longest sentences",
                    words as f64 / sentences as f64,
                    target
                ),
            ));
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::rules::{lint, RuleConfig, RuleId};
    use crate::textmodel::parse_plain;
    use crate::{LexiconSet, Profile};

    fn ids(text: &str, profile: Profile) -> Vec<RuleId> {
        let lex = LexiconSet::embedded();
        lint(&parse_plain(text), &RuleConfig::for_profile(profile), &lex).into_iter().map(|d| d.rule_id).collect()
    }

    fn count(text: &str, profile: Profile, id: RuleId) -> usize {
        ids(text, profile).into_iter().filter(|r| *r == id).count()
    }

    #[test]
    fn a1_only_on_paragraphs() {
        let text = "Una sola frase en el párrafo.\n\nDos frases aquí. Y otra más.\n\n- Nacimiento y cuidado de menor";
        assert_eq!(count(text, Profile::Artext, RuleId::A1), 1);
        let lex = LexiconSet::embedded();
        let d = lint(&parse_plain(text), &RuleConfig::for_profile(Profile::Lengclaro), &lex);
        assert!(d.iter().filter(|d| d.rule_id == RuleId::A1).all(|d| d.severity == crate::Severity::Info));
        assert_eq!(count("Hola.", Profile::Artext, RuleId::A1), 0);
    }

    #[test]
    fn a3_and_a6_connectors() {
        let text = "Primer párrafo sin más. Con dos frases.\n\nAdemás, el segundo empieza bien. Vale.\n\nEl tercero no. Si llueve, salimos. Si no, nos quedamos.";
        assert_eq!(count(text, Profile::Artext, RuleId::A3), 1);
        assert_eq!(count(text, Profile::Artext, RuleId::A6), 1);
        assert_eq!(count(text, Profile::Lengclaro, RuleId::A3), 0);
        assert_eq!(count(text, Profile::Lengclaro, RuleId::A6), 0);
    }

    #[test]
    fn a3_chain_resets_at_headings() {
        let text = "Uno. Dos.\n\n# Sección\n\nOtro párrafo. Sí.";
        assert_eq!(count(text, Profile::Artext, RuleId::A3), 0);
    }

    #[test]
    fn a5_compound_in_artext() {
        let long = "El solicitante presentará la documentación requerida en la oficina correspondiente de su provincia, y la administración resolverá la solicitud en el plazo máximo de tres meses desde su entrada.";
        assert_eq!(count(long, Profile::Artext, RuleId::A5), 1);
        assert_eq!(count(long, Profile::Artext, RuleId::A4), 1);
    }

    #[test]
    fn a7_needs_enough_items() {
        let three = format!("{} uno, dos y tres.", "palabra ".repeat(40));
        assert_eq!(count(&three, Profile::Lengclaro, RuleId::A7), 0);
        let four = format!("{} uno, dos, tres y cuatro.", "palabra ".repeat(40));
        assert_eq!(count(&four, Profile::Lengclaro, RuleId::A7), 1);
        assert_eq!(count("Compra y venta de inmuebles", Profile::Lengclaro, RuleId::A7), 0);
    }
}

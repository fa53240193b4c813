use std::collections::BTreeMap;
use std::sync::OnceLock;

use regex::Regex;

use super::{mark_list_intros, Block, BlockKind, Document, SourceFormat, Span, TextParser};

fn list_marker() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"^[ \t]*(?:[-*•]|\d+[.)]|[A-Za-z]\))[ \t]+").unwrap())
}

fn heading_marker() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"^[ \t]*(#{1,6})[ \t]+").unwrap())
}

struct Line<'a> {
    text: &'a str,
    /// Char offset of the line start in the document.
    start: usize,
}

impl Line<'_> {
    fn char_len(&self) -> usize {
        self.text.chars().count()
    }

    fn is_blank(&self) -> bool {
        self.text.trim().is_empty()
    }

    fn is_indented(&self) -> bool {
        self.text.starts_with([' ', '\t'])
    }
}

/// A block under construction: its kind, the char span of the whole block
/// (markers included) and where its content starts.
struct Pending {
    kind: BlockKind,
    start: usize,
    content_start: usize,
    end: usize,
}

pub(super) fn parse(parser: &TextParser, text: &str) -> Document {
    let mut lines = Vec::new();
    let mut offset = 0;
    for raw in text.split('\n') {
        let line = Line { text: raw.strip_suffix('\r').unwrap_or(raw), start: offset };
        offset += raw.chars().count() + 1;
        lines.push(line);
    }

    let mut pending: Vec<Pending> = Vec::new();
    let mut current: Option<Pending> = None;
    for line in &lines {
        if line.is_blank() {
            pending.extend(current.take());
            continue;
        }
        let line_end = line.start + line.char_len();
        if let Some(m) = heading_marker().captures(line.text) {
            pending.extend(current.take());
            let level = m[1].len() as u8;
            let marker_chars = m[0].chars().count();
            pending.push(Pending {
                kind: BlockKind::Heading(level),
                start: line.start,
                content_start: line.start + marker_chars,
                end: line_end,
            });
        } else if let Some(m) = list_marker().find(line.text) {
            pending.extend(current.take());
            current = Some(Pending {
                kind: BlockKind::ListItem,
                start: line.start,
                content_start: line.start + m.as_str().chars().count(),
                end: line_end,
            });
        } else {
            match current.as_mut() {
                Some(block) if block.kind == BlockKind::Paragraph => block.end = line_end,
                Some(block) if block.kind == BlockKind::ListItem && line.is_indented() => {
                    block.end = line_end
                }
                _ => {
                    pending.extend(current.take());
                    current = Some(Pending {
                        kind: BlockKind::Paragraph,
                        start: line.start,
                        content_start: line.start,
                        end: line_end,
                    });
                }
            }
        }
    }
    pending.extend(current);

    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let byte_at = |i: usize| chars.get(i).map_or(text.len(), |&(b, _)| b);
    let mut blocks: Vec<Block> = pending
        .into_iter()
        .map(|p| {
            let content = &text[byte_at(p.content_start)..byte_at(p.end)];
            // trailing whitespace belongs to no block
            let trimmed_end = p.end - (content.chars().count() - content.trim_end().chars().count());
            let content = content.trim_end();
            parser.build_block(
                p.kind,
                Span::new(p.start, trimmed_end),
                content,
                p.content_start,
                BTreeMap::new(),
            )
        })
        .collect();
    mark_list_intros(text, &mut blocks);
    Document::new(text.to_string(), blocks, SourceFormat::Plain, None)
}

#[cfg(test)]
mod tests {
    use super::super::parse_plain;
    use super::*;

    fn kinds(doc: &Document) -> Vec<BlockKind> {
        doc.blocks.iter().map(|b| b.kind).collect()
    }

    #[test]
    fn two_paragraphs() {
        let doc = parse_plain("Hola.\n\nAdiós.");
        assert_eq!(kinds(&doc), [BlockKind::Paragraph, BlockKind::Paragraph]);
        assert!(doc.blocks.iter().all(|b| b.sentences.len() == 1));
        assert_eq!(doc.slice(doc.blocks[1].span), "Adiós.");
    }

    #[test]
    fn list_with_introduction() {
        let doc = parse_plain(
            "Para obtener un certificado:\n- Una vez identificado...\n- Disponer del software...",
        );
        assert_eq!(kinds(&doc), [BlockKind::ListIntro, BlockKind::ListItem, BlockKind::ListItem]);
        assert_eq!(doc.slice(doc.content_span(&doc.blocks[1])), "Una vez identificado...");
    }

    #[test]
    fn list_markers() {
        let doc = parse_plain("* uno\n• dos\n3. tres\nb) cuatro\n4) cinco");
        assert_eq!(doc.blocks.len(), 5);
        assert!(doc.blocks.iter().all(|b| b.kind == BlockKind::ListItem));
        assert_eq!(doc.blocks[2].sentences[0].word_count, 1);
    }

    #[test]
    fn headings_and_wrapped_paragraphs() {
        let doc = parse_plain("## Solicitud y Renovación\nPrimera línea\nsegunda línea.\n");
        assert_eq!(kinds(&doc), [BlockKind::Heading(2), BlockKind::Paragraph]);
        assert_eq!(doc.blocks[1].sentences.len(), 1);
        assert_eq!(doc.blocks[1].word_count(), 4);
    }

    #[test]
    fn indented_continuation_stays_in_list_item() {
        let doc = parse_plain("- primera parte\n  y continuación.\nOtro párrafo.");
        assert_eq!(kinds(&doc), [BlockKind::ListItem, BlockKind::Paragraph]);
        assert_eq!(doc.blocks[0].word_count(), 4);
    }

    #[test]
    fn crlf_input() {
        let doc = parse_plain("Hola.\r\n\r\nAdiós.\r\n");
        assert_eq!(doc.blocks.len(), 2);
        assert_eq!(doc.slice(doc.blocks[0].span), "Hola.");
    }
}

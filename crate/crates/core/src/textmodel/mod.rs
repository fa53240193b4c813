//! Structured document model: blocks, sentences and tokens with exact spans.
//!
//! All spans are measured in Unicode scalar values (chars), 0-based and
//! half-open, over [`Document::text`]. HTML documents additionally carry a
//! per-char map back to byte ranges of the original markup.

mod html;
mod plain;
mod segment;
mod tokenize;

use std::collections::{BTreeMap, HashSet};
use std::ops::Range;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use segment::DEFAULT_ABBREVIATIONS;
pub use tokenize::tokenize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TextError {
    #[error("input is not valid UTF-8 (first invalid byte at offset {valid_up_to})")]
    MalformedEncoding { valid_up_to: usize },
}

/// Half-open char range `[start, end)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(start <= end, "span start {start} > end {end}");
        Self { start, end }
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }

    pub fn contains(&self, other: Span) -> bool {
        self.start <= other.start && other.end <= self.end
    }

    pub fn overlaps(&self, other: Span) -> bool {
        self.start < other.end && other.start < self.end
    }

    pub fn shift(self, by: usize) -> Span {
        Span::new(self.start + by, self.end + by)
    }

    /// Smallest span covering both.
    pub fn cover(self, other: Span) -> Span {
        Span::new(self.start.min(other.start), self.end.max(other.end))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TokenShape {
    Lowercase,
    Capitalized,
    AllCaps,
    Mixed,
    NonAlpha,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub surface: String,
    pub lower: String,
    pub span: Span,
    /// Contains at least one letter or digit.
    pub is_word: bool,
    pub shape: TokenShape,
}

impl Token {
    pub fn is_all_caps(&self) -> bool {
        self.shape == TokenShape::AllCaps
    }

    pub fn starts_uppercase(&self) -> bool {
        self.surface.chars().next().is_some_and(char::is_uppercase)
    }

    pub fn starts_lowercase(&self) -> bool {
        self.surface.chars().next().is_some_and(char::is_lowercase)
    }

    pub fn is_digits(&self) -> bool {
        self.is_word && self.surface.chars().all(|c| c.is_ascii_digit() || c == '.' || c == ',')
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    pub tokens: Vec<Token>,
    pub span: Span,
    pub word_count: usize,
}

impl Sentence {
    pub fn words(&self) -> impl Iterator<Item = &Token> {
        self.tokens.iter().filter(|t| t.is_word)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "level")]
pub enum BlockKind {
    Paragraph,
    Heading(u8),
    ListItem,
    /// A paragraph ending in a colon directly followed by list items.
    ListIntro,
}

impl BlockKind {
    /// Running prose: ordinary paragraphs and list introductions.
    pub fn is_prose(self) -> bool {
        matches!(self, BlockKind::Paragraph | BlockKind::ListIntro)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub kind: BlockKind,
    pub sentences: Vec<Sentence>,
    pub span: Span,
    /// Markup-only facts about the block, keyed by surface. Acronym and abbr
    /// `title` attributes end up here.
    pub html_attrs: BTreeMap<String, String>,
}

impl Block {
    pub fn word_count(&self) -> usize {
        self.sentences.iter().map(|s| s.word_count).sum()
    }

    pub fn tokens(&self) -> impl Iterator<Item = &Token> {
        self.sentences.iter().flat_map(|s| s.tokens.iter())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SourceFormat {
    Plain,
    Html,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub text: String,
    pub blocks: Vec<Block>,
    pub source_format: SourceFormat,
    /// For HTML input: byte range in the source for every char of `text`.
    pub source_map: Option<Vec<Range<usize>>>,
    /// Byte offset of every char of `text`, plus one trailing entry.
    char_bytes: Vec<usize>,
}

impl Document {
    fn new(
        text: String,
        blocks: Vec<Block>,
        source_format: SourceFormat,
        source_map: Option<Vec<Range<usize>>>,
    ) -> Self {
        let mut char_bytes: Vec<usize> = text.char_indices().map(|(i, _)| i).collect();
        char_bytes.push(text.len());
        Self { text, blocks, source_format, source_map, char_bytes }
    }

    pub fn empty(source_format: SourceFormat) -> Self {
        Self::new(String::new(), Vec::new(), source_format, None)
    }

    pub fn char_len(&self) -> usize {
        self.char_bytes.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Span covering the whole text.
    pub fn full_span(&self) -> Span {
        Span::new(0, self.char_len())
    }

    pub fn slice(&self, span: Span) -> &str {
        &self.text[self.char_bytes[span.start]..self.char_bytes[span.end]]
    }

    /// Byte range in the original source, for HTML documents.
    pub fn source_span(&self, span: Span) -> Option<Span> {
        let map = self.source_map.as_ref()?;
        if map.is_empty() {
            return Some(Span::default());
        }
        if span.is_empty() {
            let at = map.get(span.start).map_or_else(|| map[map.len() - 1].end, |r| r.start);
            return Some(Span::new(at, at));
        }
        Some(Span::new(map[span.start].start, map[span.end - 1].end))
    }

    pub fn sentences(&self) -> impl Iterator<Item = (&Block, &Sentence)> {
        self.blocks.iter().flat_map(|b| b.sentences.iter().map(move |s| (b, s)))
    }

    pub fn word_count(&self) -> usize {
        self.blocks.iter().map(Block::word_count).sum()
    }

    /// Renders the block structure in the plain-text convention understood by
    /// [`parse_plain`]: blank-line separated blocks, `#` heading prefixes and
    /// `- ` list markers. Markup-only attributes are lost.
    pub fn to_plain_markup(&self) -> String {
        let mut out = String::new();
        let mut prev: Option<BlockKind> = None;
        for block in &self.blocks {
            if let Some(prev) = prev {
                let both_list = matches!(prev, BlockKind::ListItem | BlockKind::ListIntro)
                    && block.kind == BlockKind::ListItem;
                out.push_str(if both_list { "\n" } else { "\n\n" });
            }
            let content = self.slice(self.content_span(block));
            match block.kind {
                BlockKind::Heading(level) => {
                    out.push_str(&"#".repeat(usize::from(level)));
                    out.push(' ');
                }
                BlockKind::ListItem => out.push_str("- "),
                BlockKind::Paragraph | BlockKind::ListIntro => {}
            }
            out.push_str(content);
            prev = Some(block.kind);
        }
        out
    }

    /// Text of `span` restricted to block contents, with blocks joined by a
    /// space. List and heading markers are left out.
    pub fn content_text(&self, span: Span) -> String {
        let mut parts = Vec::new();
        for block in &self.blocks {
            let content = self.content_span(block);
            let (start, end) = (content.start.max(span.start), content.end.min(span.end));
            if start < end {
                parts.push(self.slice(Span::new(start, end)));
            }
        }
        parts.join(" ")
    }

    /// Span of the block's content, excluding any list or heading marker.
    pub fn content_span(&self, block: &Block) -> Span {
        match (block.sentences.first(), block.sentences.last()) {
            (Some(first), Some(last)) => Span::new(first.span.start, last.span.end),
            _ => Span::new(block.span.end, block.span.end),
        }
    }
}

/// Parser configured with the abbreviation list used for sentence splitting.
#[derive(Debug, Clone)]
pub struct TextParser {
    abbreviations: HashSet<String>,
}

impl Default for TextParser {
    fn default() -> Self {
        Self::with_abbreviations(DEFAULT_ABBREVIATIONS.iter().map(|s| s.to_string()))
    }
}

impl TextParser {
    /// Abbreviations are given without their trailing period and are
    /// matched case-insensitively.
    pub fn with_abbreviations<I, S>(abbreviations: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        Self {
            abbreviations: abbreviations
                .into_iter()
                .map(|a| a.as_ref().trim_end_matches('.').to_lowercase())
                .collect(),
        }
    }

    pub fn parse_plain(&self, text: &str) -> Document {
        plain::parse(self, text)
    }

    pub fn parse_html(&self, html: &[u8]) -> Result<Document, TextError> {
        html::parse(self, html)
    }

    /// Sentence boundaries in `block_text`, as char spans relative to it.
    pub fn segment_sentences(&self, block_text: &str) -> Vec<Span> {
        segment::segment(&self.abbreviations, block_text)
    }

    /// Builds a block whose content starts at char `offset` of the document.
    fn build_block(
        &self,
        kind: BlockKind,
        span: Span,
        content: &str,
        content_offset: usize,
        html_attrs: BTreeMap<String, String>,
    ) -> Block {
        let chars: Vec<(usize, char)> = content.char_indices().collect();
        let byte_at = |i: usize| chars.get(i).map_or(content.len(), |&(b, _)| b);
        let sentences = self
            .segment_sentences(content)
            .into_iter()
            .map(|rel| {
                let text = &content[byte_at(rel.start)..byte_at(rel.end)];
                let tokens: Vec<Token> = tokenize(text)
                    .into_iter()
                    .map(|mut t| {
                        t.span = t.span.shift(content_offset + rel.start);
                        t
                    })
                    .collect();
                let word_count = tokens.iter().filter(|t| t.is_word).count();
                Sentence { tokens, span: rel.shift(content_offset), word_count }
            })
            .collect();
        Block { kind, sentences, span, html_attrs }
    }
}

fn default_parser() -> &'static TextParser {
    static PARSER: OnceLock<TextParser> = OnceLock::new();
    PARSER.get_or_init(TextParser::default)
}

/// Parses plain text with the default abbreviation list.
pub fn parse_plain(text: &str) -> Document {
    default_parser().parse_plain(text)
}

/// Parses an HTML byte stream with the default abbreviation list.
pub fn parse_html(html: &[u8]) -> Result<Document, TextError> {
    default_parser().parse_html(html)
}

/// Sentence boundaries with the default abbreviation list.
pub fn segment_sentences(block_text: &str) -> Vec<Span> {
    default_parser().segment_sentences(block_text)
}

/// Marks paragraphs that end in a colon and are directly followed by list
/// items as list introductions.
fn mark_list_intros(doc_text: &str, blocks: &mut [Block]) {
    let chars: Vec<char> = doc_text.chars().collect();
    for i in 0..blocks.len().saturating_sub(1) {
        if blocks[i].kind != BlockKind::Paragraph || blocks[i + 1].kind != BlockKind::ListItem {
            continue;
        }
        let span = blocks[i].span;
        let last = chars[span.start..span.end].iter().rev().find(|c| !c.is_whitespace());
        if last == Some(&':') {
            blocks[i].kind = BlockKind::ListIntro;
        }
    }
}

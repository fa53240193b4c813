//! Tolerant HTML scanner. It only needs block structure, visible text and a
//! few attributes, so it tracks an element stack instead of building a tree.

use std::collections::BTreeMap;
use std::ops::Range;

use super::{mark_list_intros, BlockKind, Document, SourceFormat, Span, TextError, TextParser};

const VOID: &[&str] = &[
    "area", "base", "br", "col", "embed", "hr", "img", "input", "link", "meta", "param", "source",
    "track", "wbr",
];

/// Elements whose content is never parsed as markup.
const RAW_TEXT: &[&str] = &["script", "style", "title", "textarea"];

/// Containers whose text is not part of the readable content.
const SKIPPED: &[&str] = &["head", "nav", "footer", "aside", "noscript", "template"];

const BLOCK_LEVEL: &[&str] = &[
    "address", "article", "blockquote", "body", "caption", "dd", "details", "div", "dl", "dt",
    "fieldset", "figcaption", "figure", "form", "h1", "h2", "h3", "h4", "h5", "h6", "header",
    "hr", "html", "legend", "li", "main", "ol", "p", "pre", "section", "summary", "table",
    "tbody", "td", "tfoot", "th", "thead", "tr", "ul",
];

fn block_kind(name: &str) -> Option<BlockKind> {
    match name {
        "p" | "dt" | "dd" | "td" | "th" | "caption" | "figcaption" | "pre" | "blockquote"
        | "summary" => Some(BlockKind::Paragraph),
        "li" => Some(BlockKind::ListItem),
        _ => {
            let level = name.strip_prefix('h')?.parse::<u8>().ok()?;
            (1..=6).contains(&level).then_some(BlockKind::Heading(level))
        }
    }
}

struct Tag {
    name: String,
    end: bool,
    self_closing: bool,
    attrs: Vec<(String, String)>,
}

struct Open {
    name: String,
    kind: Option<BlockKind>,
    skipped: bool,
}

/// An `<abbr>`/`<acronym>` whose text is being collected.
struct OpenTitle {
    buffer_start: usize,
    title: String,
}

#[derive(Default)]
struct Buffer {
    chars: Vec<(char, Range<usize>)>,
    pending_space: Option<Range<usize>>,
    attrs: BTreeMap<String, String>,
}

struct Builder<'p> {
    parser: &'p TextParser,
    stack: Vec<Open>,
    buffer: Buffer,
    titles: Vec<OpenTitle>,
    text: String,
    map: Vec<Range<usize>>,
    chars_out: usize,
    blocks: Vec<super::Block>,
}

impl Builder<'_> {
    fn skipping(&self) -> bool {
        self.stack.iter().any(|o| o.skipped)
    }

    fn current_kind(&self) -> BlockKind {
        self.stack.iter().rev().find_map(|o| o.kind).unwrap_or(BlockKind::Paragraph)
    }

    fn push_char(&mut self, c: char, range: Range<usize>) {
        if self.skipping() {
            return;
        }
        if c.is_whitespace() {
            if self.buffer.pending_space.is_none() {
                self.buffer.pending_space = Some(range);
            }
            return;
        }
        if let Some(space) = self.buffer.pending_space.take() {
            if !self.buffer.chars.is_empty() {
                self.buffer.chars.push((' ', space));
            }
        }
        self.buffer.chars.push((c, range));
    }

    fn flush(&mut self) {
        let buffer = std::mem::take(&mut self.buffer);
        self.titles.clear();
        if buffer.chars.is_empty() {
            return;
        }
        if !self.blocks.is_empty() {
            let at = self.map.last().map_or(0, |r| r.end);
            for _ in 0..2 {
                self.text.push('\n');
                self.map.push(at..at);
            }
            self.chars_out += 2;
        }
        let start = self.chars_out;
        let content: String = buffer.chars.iter().map(|(c, _)| *c).collect();
        self.text.push_str(&content);
        self.map.extend(buffer.chars.into_iter().map(|(_, r)| r));
        self.chars_out += content.chars().count();
        let block = self.parser.build_block(
            self.current_kind(),
            Span::new(start, self.chars_out),
            &content,
            start,
            buffer.attrs,
        );
        self.blocks.push(block);
    }

    fn open(&mut self, tag: &Tag, source: Range<usize>) {
        let name = tag.name.as_str();
        if BLOCK_LEVEL.contains(&name) || SKIPPED.contains(&name) {
            self.flush();
        }
        if name == "br" {
            self.push_char(' ', source);
            return;
        }
        if matches!(name, "abbr" | "acronym") && !tag.self_closing {
            if let Some((_, title)) = tag.attrs.iter().find(|(k, _)| k == "title") {
                self.titles.push(OpenTitle {
                    buffer_start: self.buffer.chars.len(),
                    title: title.trim().to_string(),
                });
            }
        }
        if VOID.contains(&name) || tag.self_closing {
            return;
        }
        self.stack.push(Open {
            name: tag.name.clone(),
            kind: block_kind(name),
            skipped: SKIPPED.contains(&name),
        });
    }

    fn close(&mut self, name: &str) {
        let Some(pos) = self.stack.iter().rposition(|o| o.name == name) else {
            return;
        };
        if matches!(name, "abbr" | "acronym") {
            if let Some(open) = self.titles.pop() {
                let surface: String = self.buffer.chars[open.buffer_start.min(self.buffer.chars.len())..]
                    .iter()
                    .map(|(c, _)| *c)
                    .collect();
                let surface = surface.trim();
                if !surface.is_empty() && !open.title.is_empty() {
                    self.buffer.attrs.insert(surface.to_string(), open.title);
                }
            }
        }
        let flushes = self.stack[pos..]
            .iter()
            .any(|o| BLOCK_LEVEL.contains(&o.name.as_str()) || o.skipped);
        if flushes {
            self.flush();
        }
        self.stack.truncate(pos);
    }
}

fn find_ci(haystack: &str, from: usize, needle: &str) -> Option<usize> {
    let hay = haystack.as_bytes();
    let needle = needle.as_bytes();
    (from..hay.len().saturating_sub(needle.len() - 1))
        .find(|&i| hay[i..i + needle.len()].eq_ignore_ascii_case(needle))
}

fn parse_tag(src: &str, at: usize) -> Option<(Tag, usize)> {
    let bytes = src.as_bytes();
    let mut i = at + 1;
    let end = bytes.get(i) == Some(&b'/');
    if end {
        i += 1;
    }
    if !bytes.get(i)?.is_ascii_alphabetic() {
        return None;
    }
    let name_start = i;
    while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'-') {
        i += 1;
    }
    let name = src[name_start..i].to_ascii_lowercase();
    let mut attrs = Vec::new();
    let mut self_closing = false;
    loop {
        while i < bytes.len() && bytes[i].is_ascii_whitespace() {
            i += 1;
        }
        match bytes.get(i) {
            None => return Some((Tag { name, end, self_closing, attrs }, bytes.len())),
            Some(b'>') => return Some((Tag { name, end, self_closing, attrs }, i + 1)),
            Some(b'/') => {
                self_closing = true;
                i += 1;
                continue;
            }
            _ => {}
        }
        self_closing = false;
        let key_start = i;
        while i < bytes.len() && !matches!(bytes[i], b'=' | b'>' | b'/') && !bytes[i].is_ascii_whitespace() {
            i += 1;
        }
        let key = src[key_start..i].to_ascii_lowercase();
        while i < bytes.len() && bytes[i].is_ascii_whitespace() {
            i += 1;
        }
        let mut value = String::new();
        if bytes.get(i) == Some(&b'=') {
            i += 1;
            while i < bytes.len() && bytes[i].is_ascii_whitespace() {
                i += 1;
            }
            match bytes.get(i) {
                Some(&q @ (b'"' | b'\'')) => {
                    let close = src[i + 1..].find(q as char).map_or(bytes.len(), |p| i + 1 + p);
                    value = html_escape::decode_html_entities(&src[i + 1..close]).into_owned();
                    i = (close + 1).min(bytes.len());
                }
                _ => {
                    let v_start = i;
                    while i < bytes.len() && bytes[i] != b'>' && !bytes[i].is_ascii_whitespace() {
                        i += 1;
                    }
                    value = html_escape::decode_html_entities(&src[v_start..i]).into_owned();
                }
            }
        }
        if !key.is_empty() {
            attrs.push((key, value));
        } else if i < bytes.len() && !matches!(bytes[i], b'>' | b'/') {
            i += 1;
        }
    }
}

/// Decodes an entity starting at `at` (which holds `&`). Returns the decoded
/// text and the byte offset just past the entity.
fn entity(src: &str, at: usize) -> Option<(String, usize)> {
    let rest = &src[at + 1..];
    let len = rest
        .char_indices()
        .take(32)
        .find(|&(_, c)| !(c.is_ascii_alphanumeric() || c == '#'))
        .filter(|&(_, c)| c == ';')
        .map(|(i, _)| i)?;
    if len == 0 {
        return None;
    }
    let raw = &src[at..at + len + 2];
    let decoded = html_escape::decode_html_entities(raw);
    (decoded != raw).then(|| (decoded.into_owned(), at + len + 2))
}

pub(super) fn parse(parser: &TextParser, input: &[u8]) -> Result<Document, TextError> {
    let (bom, body) = match input.strip_prefix(b"\xEF\xBB\xBF") {
        Some(rest) => (3, rest),
        None => (0, input),
    };
    let src = std::str::from_utf8(body)
        .map_err(|e| TextError::MalformedEncoding { valid_up_to: bom + e.valid_up_to() })?;

    let mut b = Builder {
        parser,
        stack: Vec::new(),
        buffer: Buffer::default(),
        titles: Vec::new(),
        text: String::new(),
        map: Vec::new(),
        chars_out: 0,
        blocks: Vec::new(),
    };
    let bytes = src.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'<' if src[i..].starts_with("<!--") => {
                i = src[i + 4..].find("-->").map_or(bytes.len(), |p| i + 4 + p + 3);
            }
            b'<' if matches!(bytes.get(i + 1), Some(b'!' | b'?')) => {
                i = src[i..].find('>').map_or(bytes.len(), |p| i + p + 1);
            }
            b'<' => match parse_tag(src, i) {
                Some((tag, next)) if tag.end => {
                    b.close(&tag.name);
                    i = next;
                }
                Some((tag, next)) if RAW_TEXT.contains(&tag.name.as_str()) => {
                    b.flush();
                    i = if tag.self_closing {
                        next
                    } else {
                        let close = format!("</{}", tag.name);
                        find_ci(src, next, &close)
                            .map_or(bytes.len(), |p| src[p..].find('>').map_or(bytes.len(), |q| p + q + 1))
                    };
                }
                Some((tag, next)) => {
                    b.open(&tag, bom + i..bom + next);
                    i = next;
                }
                None => {
                    b.push_char('<', bom + i..bom + i + 1);
                    i += 1;
                }
            },
            b'&' => match entity(src, i) {
                Some((decoded, next)) => {
                    for c in decoded.chars() {
                        b.push_char(c, bom + i..bom + next);
                    }
                    i = next;
                }
                None => {
                    b.push_char('&', bom + i..bom + i + 1);
                    i += 1;
                }
            },
            _ => {
                let c = src[i..].chars().next().expect("in bounds");
                let len = c.len_utf8();
                b.push_char(c, bom + i..bom + i + len);
                i += len;
            }
        }
    }
    b.flush();

    let mut blocks = b.blocks;
    mark_list_intros(&b.text, &mut blocks);
    Ok(Document::new(b.text, blocks, SourceFormat::Html, Some(b.map)))
}

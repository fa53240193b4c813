//! Word and phrase tables that drive the lexical rules and the exclusion
//! lists used by the morphology predicates.
//!
//! Tables live in a small text format (see `data/default.lex`). The embedded
//! defaults can be extended or overridden with extra files: an entry with the
//! same phrase replaces the default one.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::Range;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::OnceLock;

use thiserror::Error;

use crate::textmodel::{tokenize, Span, TextParser, Token};

const EMBEDDED: &str = include_str!("../data/default.lex");

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("{file}:{line}: {message}")]
    Parse { file: String, line: usize, message: String },
    #[error("cannot read lexicon file {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("unknown lexicon table `{0}`")]
    UnknownTable(String),
}

macro_rules! tables {
    ($($variant:ident => $name:literal,)*) => {
        /// Named tables of a [`LexiconSet`].
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum Table { $($variant,)* }

        impl Table {
            pub const ALL: &'static [Table] = &[$(Table::$variant,)*];

            pub fn name(self) -> &'static str {
                match self { $(Table::$variant => $name,)* }
            }
        }

        impl FromStr for Table {
            type Err = LexiconError;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                match s {
                    $($name => Ok(Table::$variant),)*
                    _ => Err(LexiconError::UnknownTable(s.to_string())),
                }
            }
        }
    };
}

tables! {
    TransparentTerms => "transparent_terms",
    DifficultExpressions => "difficult_expressions",
    InaccurateWords => "inaccurate_words",
    RedundantExpressions => "redundant_expressions",
    LongWords => "long_words",
    SuperfluousPhrases => "superfluous_phrases",
    SubjectivityIndicators => "subjectivity_indicators",
    ForeignWords => "foreign_words",
    NominalizationExclusions => "nominalization_exclusions",
    FalseParticiples => "false_participles",
    IrregularParticiples => "irregular_participles",
    FalseGerunds => "false_gerunds",
    FutureSubjunctiveIrregular => "future_subjunctive_irregular",
    FutureSubjunctiveExclusions => "future_subjunctive_exclusions",
    FalseFirstPlural => "false_first_plural",
    AcronymExclusions => "acronym_exclusions",
    AcronymGlosses => "acronym_glosses",
    NumberWords => "number_words",
    Connectors => "connectors",
    NegationMarkers => "negation_markers",
    Abbreviations => "abbreviations",
}

impl fmt::Display for Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    /// The phrase as written, case-folded.
    pub phrase: String,
    /// Lowercased token sequence of the phrase.
    pub tokens: Vec<String>,
    pub replacements: Vec<String>,
    /// The last token matches as a prefix.
    pub stem: bool,
}

impl Entry {
    fn matches_at(&self, tokens: &[Token], at: usize) -> bool {
        if at + self.tokens.len() > tokens.len() {
            return false;
        }
        let last = self.tokens.len() - 1;
        self.tokens.iter().enumerate().all(|(i, key)| {
            let lower = &tokens[at + i].lower;
            if self.stem && i == last {
                lower.starts_with(key.as_str())
            } else {
                lower == key
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhraseMatch {
    pub span: Span,
    /// Indices into the token slice that was scanned.
    pub tokens: Range<usize>,
    pub entry: String,
    pub replacements: Vec<String>,
}

#[derive(Debug, Clone, Default)]
pub struct LexiconTable {
    entries: BTreeMap<String, Entry>,
    exclusions: BTreeMap<String, Vec<String>>,
    /// First key token to the entries starting with it (stem entries of one
    /// token are kept apart).
    by_first: HashMap<String, Vec<String>>,
    stems: Vec<String>,
}

impl LexiconTable {
    fn insert(&mut self, entry: Entry) {
        self.entries.insert(entry.phrase.clone(), entry);
    }

    fn reindex(&mut self) {
        self.by_first.clear();
        self.stems.clear();
        for (phrase, entry) in &self.entries {
            if entry.stem && entry.tokens.len() == 1 {
                self.stems.push(phrase.clone());
            } else {
                self.by_first.entry(entry.tokens[0].clone()).or_default().push(phrase.clone());
            }
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = &Entry> {
        self.entries.values()
    }

    pub fn get(&self, phrase: &str) -> Option<&Entry> {
        self.entries.get(&phrase.to_lowercase())
    }

    /// Exact single-word or phrase membership, case-insensitive.
    pub fn contains(&self, phrase: &str) -> bool {
        self.get(phrase).is_some()
    }

    pub fn replacements(&self, phrase: &str) -> Option<&[String]> {
        self.get(phrase).map(|e| e.replacements.as_slice())
    }

    pub fn exclusions(&self) -> impl Iterator<Item = &str> {
        self.exclusions.keys().map(String::as_str)
    }

    fn longest_at(&self, tokens: &[Token], at: usize) -> Option<&Entry> {
        let lower = &tokens[at].lower;
        let candidates = self.by_first.get(lower).into_iter().flatten().chain(&self.stems);
        candidates
            .filter_map(|p| self.entries.get(p))
            .filter(|e| e.matches_at(tokens, at))
            .max_by(|a, b| a.tokens.len().cmp(&b.tokens.len()).then_with(|| b.phrase.cmp(&a.phrase)))
    }

    /// Token ranges covered by context exclusions.
    fn excluded_ranges(&self, tokens: &[Token]) -> Vec<Range<usize>> {
        let mut ranges = Vec::new();
        for words in self.exclusions.values() {
            for at in 0..tokens.len() {
                let fits = at + words.len() <= tokens.len()
                    && words.iter().enumerate().all(|(i, w)| tokens[at + i].lower == *w);
                if fits {
                    ranges.push(at..at + words.len());
                }
            }
        }
        ranges
    }

    /// Leftmost-longest matches over `tokens`, every occurrence reported.
    /// Matches inside a context-exclusion phrase are dropped.
    pub fn find(&self, tokens: &[Token]) -> Vec<PhraseMatch> {
        let excluded = self.excluded_ranges(tokens);
        let mut out = Vec::new();
        let mut at = 0;
        while at < tokens.len() {
            let Some(entry) = self.longest_at(tokens, at) else {
                at += 1;
                continue;
            };
            let range = at..at + entry.tokens.len();
            if excluded.iter().any(|x| x.start <= range.start && range.end <= x.end) {
                at += 1;
                continue;
            }
            out.push(PhraseMatch {
                span: tokens[range.start].span.cover(tokens[range.end - 1].span),
                tokens: range.clone(),
                entry: entry.phrase.clone(),
                replacements: entry.replacements.clone(),
            });
            at = range.end;
        }
        out
    }

    /// For each token, whether some match of this table covers it.
    pub fn coverage(&self, tokens: &[Token]) -> Vec<bool> {
        let mut covered = vec![false; tokens.len()];
        for m in self.find(tokens) {
            covered[m.tokens].iter_mut().for_each(|c| *c = true);
        }
        covered
    }
}

/// Immutable set of all tables.
#[derive(Debug, Clone)]
pub struct LexiconSet {
    tables: BTreeMap<Table, LexiconTable>,
}

impl Default for LexiconSet {
    fn default() -> Self {
        Self::embedded()
    }
}

impl LexiconSet {
    /// The tables shipped with the crate.
    pub fn embedded() -> Self {
        static EMBEDDED_SET: OnceLock<LexiconSet> = OnceLock::new();
        EMBEDDED_SET
            .get_or_init(|| {
                let mut set = Self::empty();
                set.merge_str("<embedded>", EMBEDDED).expect("embedded lexicon parses");
                set
            })
            .clone()
    }

    fn empty() -> Self {
        Self { tables: Table::ALL.iter().map(|&t| (t, LexiconTable::default())).collect() }
    }

    /// Embedded tables with override files merged in order.
    pub fn load<P: AsRef<Path>>(overrides: &[P]) -> Result<Self, LexiconError> {
        let mut set = Self::embedded();
        for path in overrides {
            let path = path.as_ref();
            let text = std::fs::read_to_string(path)
                .map_err(|source| LexiconError::Io { path: path.to_path_buf(), source })?;
            set.merge_str(&path.display().to_string(), &text)?;
        }
        Ok(set)
    }

    /// Merges tables written in the lexicon file format. `file` only labels
    /// errors.
    pub fn merge_str(&mut self, file: &str, text: &str) -> Result<(), LexiconError> {
        let parse_err = |line: usize, message: String| LexiconError::Parse {
            file: file.to_string(),
            line,
            message,
        };
        let mut current: Option<Table> = None;
        let mut touched = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line_no = n + 1;
            let line = raw.trim_end_matches('\r');
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            let trimmed = line.trim();
            if let Some(name) = trimmed.strip_prefix('[') {
                let name = name
                    .strip_suffix(']')
                    .ok_or_else(|| parse_err(line_no, "unterminated section header".into()))?;
                let table = name
                    .trim()
                    .parse::<Table>()
                    .map_err(|_| parse_err(line_no, format!("unknown table `{}`", name.trim())))?;
                current = Some(table);
                touched.push(table);
                continue;
            }
            let table = current
                .ok_or_else(|| parse_err(line_no, "entry before any [table] header".into()))?;
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() > 2 {
                return Err(parse_err(line_no, "more than one tab on the line".into()));
            }
            let phrase = fields[0].trim();
            let target = self.tables.get_mut(&table).expect("all tables present");
            if let Some(excluded) = phrase.strip_prefix('!') {
                let words = key_tokens(excluded);
                if words.is_empty() {
                    return Err(parse_err(line_no, "empty exclusion phrase".into()));
                }
                target.exclusions.insert(excluded.trim().to_lowercase(), words);
                continue;
            }
            let (phrase, stem) = match phrase.strip_suffix('*') {
                Some(p) => (p.trim_end(), true),
                None => (phrase, false),
            };
            if phrase.contains('*') {
                return Err(parse_err(line_no, "`*` is only allowed at the end of a phrase".into()));
            }
            let tokens = key_tokens(phrase);
            if tokens.is_empty() {
                return Err(parse_err(line_no, "empty phrase".into()));
            }
            let replacements: Vec<String> = fields
                .get(1)
                .map(|r| r.split('|').map(str::trim).filter(|r| !r.is_empty()).map(String::from).collect())
                .unwrap_or_default();
            if table == Table::NumberWords
                && replacements.first().and_then(|r| r.parse::<u64>().ok()).is_none()
            {
                return Err(parse_err(line_no, "number word needs an integer value".into()));
            }
            target.insert(Entry { phrase: phrase.to_lowercase(), tokens, replacements, stem });
        }
        for table in touched {
            self.tables.get_mut(&table).expect("all tables present").reindex();
        }
        Ok(())
    }

    pub fn table(&self, table: Table) -> &LexiconTable {
        &self.tables[&table]
    }

    pub fn table_by_name(&self, name: &str) -> Result<&LexiconTable, LexiconError> {
        Ok(self.table(name.parse()?))
    }

    pub fn contains(&self, table: Table, phrase: &str) -> bool {
        self.table(table).contains(phrase)
    }

    /// Matches of `table` over a token sequence (usually a sentence).
    pub fn match_phrases(&self, tokens: &[Token], table: Table) -> Vec<PhraseMatch> {
        self.table(table).find(tokens)
    }

    /// Like [`match_phrases`](Self::match_phrases) with the table named by a string.
    pub fn match_phrases_named(
        &self,
        tokens: &[Token],
        table: &str,
    ) -> Result<Vec<PhraseMatch>, LexiconError> {
        Ok(self.table_by_name(table)?.find(tokens))
    }

    /// Integer value of a spelled-out number word.
    pub fn number_value(&self, word: &str) -> Option<u64> {
        self.table(Table::NumberWords).replacements(word)?.first()?.parse().ok()
    }

    /// A text parser using this set's abbreviation table.
    pub fn text_parser(&self) -> TextParser {
        TextParser::with_abbreviations(self.table(Table::Abbreviations).entries().map(|e| &e.phrase))
    }
}

fn key_tokens(phrase: &str) -> Vec<String> {
    tokenize(phrase.trim()).into_iter().map(|t| t.lower).collect()
}

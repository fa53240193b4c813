//! Suffix- and lexicon-based predicates over Spanish word forms.
//!
//! Nothing here is a tagger: every predicate is a small, testable heuristic
//! backed by exclusion tables from [`LexiconSet`].

pub(crate) mod nominal;
pub(crate) mod passives;
mod person;

use serde::Serialize;

use crate::lexicons::{LexiconSet, Table};
use crate::textmodel::Token;

pub use nominal::{find_acronyms, find_nominalizations, initials_match, ExpansionStyle, is_acronym_candidate, AcronymMatch, Nominalization};
pub use passives::{find_passives, PassiveKind, PassiveMatch};
pub use person::{find_person_markers, PersonKind, PersonMarker};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerbFormKind {
    Gerund,
    Participle,
    FutureSubjunctive,
    Finite1pPlural,
    FiniteExplicit1pSingular,
    Infinitive,
    Other,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Gender {
    Masculine,
    Feminine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Number {
    Singular,
    Plural,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Agreement {
    pub gender: Gender,
    pub number: Number,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct VerbFormTag {
    pub kind: VerbFormKind,
    /// Participles only.
    pub agreement: Option<Agreement>,
}

impl VerbFormTag {
    fn of(kind: VerbFormKind) -> Self {
        Self { kind, agreement: None }
    }
}

/// Object and reflexive pronouns that attach to gerunds, infinitives and
/// imperatives. Longer forms first so that `les` wins over `le`.
const ENCLITICS: &[&str] = &["nos", "les", "los", "las", "se", "me", "te", "le", "lo", "la", "os"];

pub(crate) fn deaccent(s: &str) -> String {
    s.chars()
        .map(|c| match c {
            'á' => 'a',
            'é' => 'e',
            'í' => 'i',
            'ó' => 'o',
            'ú' => 'u',
            other => other,
        })
        .collect()
}

fn has_accent(s: &str) -> bool {
    s.chars().any(|c| matches!(c, 'á' | 'é' | 'í' | 'ó' | 'ú'))
}

/// Splits up to two enclitic pronouns off `word` (lowercase), returning the
/// base without its written accent and the clitics. Only splits when the base
/// ends like a gerund or an infinitive.
pub fn strip_enclitics(word: &str) -> (String, Vec<&'static str>) {
    fn split(word: &str, depth: usize) -> Option<(String, Vec<&'static str>)> {
        if depth == 2 {
            return None;
        }
        for clitic in ENCLITICS {
            let Some(base) = word.strip_suffix(clitic) else { continue };
            let plain = deaccent(base);
            if ends_like_verb_base(&plain) {
                return Some((plain, vec![clitic]));
            }
            if let Some((inner, mut more)) = split(base, depth + 1) {
                more.push(clitic);
                return Some((inner, more));
            }
        }
        None
    }
    split(word, 0).unwrap_or_else(|| (word.to_string(), Vec::new()))
}

fn ends_like_verb_base(base: &str) -> bool {
    let len = base.chars().count();
    len >= 4
        && (base.ends_with("ando")
            || base.ends_with("iendo")
            || base.ends_with("yendo")
            || base.ends_with("ar")
            || base.ends_with("er")
            || base.ends_with("ir"))
}

fn stem_len(word: &str, suffix: &str) -> usize {
    word.chars().count() - suffix.chars().count()
}

pub fn is_gerund(word: &str, lexicons: &LexiconSet) -> bool {
    let lower = word.to_lowercase();
    if lexicons.contains(Table::FalseGerunds, &lower) {
        return false;
    }
    let (base, _) = strip_enclitics(&lower);
    if lexicons.contains(Table::FalseGerunds, &base) {
        return false;
    }
    if has_accent(&base) {
        return false;
    }
    ["ando", "iendo", "yendo"]
        .iter()
        .any(|s| base.ends_with(s) && (stem_len(&base, s) >= 1 || base == "yendo"))
}

pub fn is_infinitive(word: &str) -> bool {
    let lower = word.to_lowercase();
    if matches!(lower.as_str(), "ser" | "ir" | "ver" | "dar" | "oír" | "reír") {
        return true;
    }
    const NOUNS: &[&str] = &[
        "lugar", "hogar", "mujer", "poder", "deber", "placer", "militar", "familiar", "particular",
        "similar", "titular", "mar", "par", "bar", "ayer", "taller", "alquiler", "carácter",
        "cáncer", "menor", "mayor", "popular", "regular", "exterior", "interior", "anterior",
        "posterior", "superior", "inferior", "escolar", "auxiliar", "collar", "pilar", "azar",
        "altar", "hangar", "dólar", "cualquier", "primer", "tercer",
    ];
    if NOUNS.contains(&lower.as_str()) {
        return false;
    }
    let (base, _) = strip_enclitics(&lower);
    let base = if base == lower { lower.replace("ír", "ir") } else { base };
    base.chars().count() >= 4 && (base.ends_with("ar") || base.ends_with("er") || base.ends_with("ir"))
}

const PARTICIPLE_SUFFIXES: &[(&str, Gender, Number)] = &[
    ("ados", Gender::Masculine, Number::Plural),
    ("adas", Gender::Feminine, Number::Plural),
    ("idos", Gender::Masculine, Number::Plural),
    ("idas", Gender::Feminine, Number::Plural),
    ("ídos", Gender::Masculine, Number::Plural),
    ("ídas", Gender::Feminine, Number::Plural),
    ("ado", Gender::Masculine, Number::Singular),
    ("ada", Gender::Feminine, Number::Singular),
    ("ido", Gender::Masculine, Number::Singular),
    ("ida", Gender::Feminine, Number::Singular),
    ("ído", Gender::Masculine, Number::Singular),
    ("ída", Gender::Feminine, Number::Singular),
];

/// Agreement read off a final -o/-a/-os/-as.
pub(crate) fn agreement_from_ending(word: &str) -> Option<Agreement> {
    let (gender, number) = if word.ends_with("os") {
        (Gender::Masculine, Number::Plural)
    } else if word.ends_with("as") {
        (Gender::Feminine, Number::Plural)
    } else if word.ends_with('o') {
        (Gender::Masculine, Number::Singular)
    } else if word.ends_with('a') {
        (Gender::Feminine, Number::Singular)
    } else {
        return None;
    };
    Some(Agreement { gender, number })
}

/// Irregular participles are listed in their masculine singular form.
fn irregular_participle(lower: &str, lexicons: &LexiconSet) -> Option<Agreement> {
    let agreement = agreement_from_ending(lower)?;
    let table = lexicons.table(Table::IrregularParticiples);
    let base = match agreement {
        Agreement { number: Number::Plural, .. } => &lower[..lower.len() - 2],
        _ => &lower[..lower.len() - 1],
    };
    table.contains(&format!("{base}o")).then_some(agreement)
}

/// `Some(agreement)` when `word` is a past participle.
pub fn participle_agreement(word: &str, lexicons: &LexiconSet) -> Option<Agreement> {
    let lower = word.to_lowercase();
    if lexicons.contains(Table::FalseParticiples, &lower) {
        return None;
    }
    if let Some(agreement) = irregular_participle(&lower, lexicons) {
        return Some(agreement);
    }
    let &(suffix, gender, number) = PARTICIPLE_SUFFIXES.iter().find(|(s, ..)| lower.ends_with(s))?;
    let stem = &lower[..lower.len() - suffix.len()];
    // participles are stressed on the suffix; a written accent earlier
    // means an esdrújula adjective such as "rápido" or "válida"
    if stem.chars().count() < 2 || has_accent(stem) || !stem.chars().all(char::is_alphabetic) {
        return None;
    }
    Some(Agreement { gender, number })
}

pub fn is_participle(word: &str, lexicons: &LexiconSet) -> bool {
    participle_agreement(word, lexicons).is_some()
}

/// Future subjunctive endings with their imperfect subjunctive replacements.
const FUTURE_SUBJUNCTIVE: &[(&str, [&str; 2])] = &[
    ("áremos", ["ásemos", "áramos"]),
    ("iéremos", ["iésemos", "iéramos"]),
    ("yéremos", ["yésemos", "yéramos"]),
    ("jéremos", ["jésemos", "jéramos"]),
    ("areis", ["aseis", "arais"]),
    ("iereis", ["ieseis", "ierais"]),
    ("yereis", ["yeseis", "yerais"]),
    ("jereis", ["jeseis", "jerais"]),
    ("ares", ["ases", "aras"]),
    ("ieres", ["ieses", "ieras"]),
    ("yeres", ["yeses", "yeras"]),
    ("jeres", ["jeses", "jeras"]),
    ("aren", ["asen", "aran"]),
    ("ieren", ["iesen", "ieran"]),
    ("yeren", ["yesen", "yeran"]),
    ("jeren", ["jesen", "jeran"]),
    ("are", ["ase", "ara"]),
    ("iere", ["iese", "iera"]),
    ("yere", ["yese", "yera"]),
    ("jere", ["jese", "jera"]),
];

/// Present-tense stems that end like a future subjunctive: "quiere",
/// "prefieren", "sugiere", "hieren".
const PRESENT_LOOKALIKES: &[&str] = &["quier", "fier", "gier", "hier"];

/// Plural nouns and adjectives in -ares.
const ARES_NOUN_ENDINGS: &[&str] = &["lares", "gares", "iares"];

fn future_subjunctive_suffix(lower: &str) -> Option<&'static (&'static str, [&'static str; 2])> {
    let entry = FUTURE_SUBJUNCTIVE.iter().find(|(s, _)| lower.ends_with(s))?;
    let (suffix, _) = entry;
    let stem = &lower[..lower.len() - suffix.len()];
    // the -jere/-yere families keep short irregular stems: "dijere", "leyere"
    let min_stem = if suffix.starts_with(['j', 'y']) { 2 } else { 3 };
    if stem.chars().count() < min_stem || !stem.chars().all(char::is_alphabetic) || has_accent(stem) {
        return None;
    }
    let present_lookalike = PRESENT_LOOKALIKES
        .iter()
        .any(|p| ["e", "es", "en"].iter().any(|e| lower.ends_with(&format!("{p}{e}"))));
    if present_lookalike {
        return None;
    }
    if suffix.starts_with("ares") && ARES_NOUN_ENDINGS.iter().any(|e| lower.ends_with(e)) {
        return None;
    }
    Some(entry)
}

pub fn is_future_subjunctive(word: &str, lexicons: &LexiconSet) -> bool {
    let lower = word.to_lowercase();
    if lexicons.contains(Table::FutureSubjunctiveExclusions, &lower) {
        return false;
    }
    lexicons.contains(Table::FutureSubjunctiveIrregular, &lower) || future_subjunctive_suffix(&lower).is_some()
}

/// Imperfect subjunctive alternatives for a future subjunctive form, keeping
/// the capitalization of the first letter.
pub fn imperfect_subjunctive(word: &str, lexicons: &LexiconSet) -> Vec<String> {
    let lower = word.to_lowercase();
    let forms: Vec<String> = if let Some(r) = lexicons.table(Table::FutureSubjunctiveIrregular).replacements(&lower) {
        r.to_vec()
    } else if let Some((suffix, reps)) = future_subjunctive_suffix(&lower) {
        let stem = &lower[..lower.len() - suffix.len()];
        reps.iter().map(|r| format!("{stem}{r}")).collect()
    } else {
        Vec::new()
    };
    if word.chars().next().is_some_and(char::is_uppercase) {
        forms.into_iter().map(|f| capitalize(&f)).collect()
    } else {
        forms
    }
}

fn capitalize(s: &str) -> String {
    let mut chars = s.chars();
    match chars.next() {
        Some(first) => first.to_uppercase().chain(chars).collect(),
        None => String::new(),
    }
}

const FIRST_PLURAL_VERB_ENDINGS: &[&str] =
    &["ábamos", "íamos", "áramos", "iéramos", "ásemos", "iésemos", "áremos", "iéremos", "éramos"];

/// Unambiguous first-person-plural verb form by suffix.
pub fn is_first_plural_verb(word: &str, lexicons: &LexiconSet) -> bool {
    let lower = word.to_lowercase();
    if lexicons.contains(Table::FalseFirstPlural, &lower) {
        return false;
    }
    if matches!(lower.as_str(), "somos" | "fuimos") {
        return true;
    }
    if FIRST_PLURAL_VERB_ENDINGS.iter().any(|e| lower.ends_with(e)) {
        return true;
    }
    let Some(suffix) = ["amos", "emos", "imos"].into_iter().find(|s| lower.ends_with(s)) else {
        return false;
    };
    let stem = &lower[..lower.len() - suffix.len()];
    !stem.is_empty() && !has_accent(stem) && stem.chars().all(char::is_alphabetic)
}

/// Words that never carry a verb-form tag.
const FUNCTION_WORDS: &[&str] = &[
    "a", "al", "ante", "bajo", "con", "contra", "de", "del", "desde", "durante", "e", "el", "ella",
    "ellas", "ellos", "en", "entre", "es", "hacia", "hasta", "la", "las", "le", "les", "lo", "los",
    "mediante", "ni", "no", "o", "para", "pero", "por", "que", "se", "según", "si", "sin", "sobre",
    "su", "sus", "tras", "u", "un", "una", "unas", "uno", "unos", "y",
];

pub(crate) fn is_function_word(lower: &str) -> bool {
    FUNCTION_WORDS.contains(&lower)
}

/// Tags a word token. `prev` is the preceding word token, used to attach
/// explicit first-person-singular subjects ("yo confirmo").
pub fn tag_verb_form(token: &Token, prev: Option<&Token>, lexicons: &LexiconSet) -> VerbFormTag {
    let lower = token.lower.as_str();
    if !token.is_word || is_function_word(lower) {
        return VerbFormTag::of(VerbFormKind::Other);
    }
    if is_gerund(lower, lexicons) {
        return VerbFormTag::of(VerbFormKind::Gerund);
    }
    if let Some(agreement) = participle_agreement(lower, lexicons) {
        return VerbFormTag { kind: VerbFormKind::Participle, agreement: Some(agreement) };
    }
    if is_future_subjunctive(lower, lexicons) {
        return VerbFormTag::of(VerbFormKind::FutureSubjunctive);
    }
    if is_infinitive(lower) {
        return VerbFormTag::of(VerbFormKind::Infinitive);
    }
    if is_first_plural_verb(lower, lexicons) {
        return VerbFormTag::of(VerbFormKind::Finite1pPlural);
    }
    if prev.is_some_and(|p| p.lower == "yo") && token.starts_lowercase() {
        return VerbFormTag::of(VerbFormKind::FiniteExplicit1pSingular);
    }
    VerbFormTag::of(VerbFormKind::Other)
}

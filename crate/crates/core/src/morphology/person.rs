use serde::Serialize;

use super::is_first_plural_verb;
use crate::lexicons::LexiconSet;
use crate::textmodel::{Sentence, Span};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PersonKind {
    FirstPlural,
    /// Only the explicit pronoun *yo*.
    FirstSingular,
    /// Informal address (*tú*).
    Informal,
    /// Formal address (*usted*).
    Formal,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PersonMarker {
    pub kind: PersonKind,
    pub span: Span,
    pub surface: String,
    pub token: usize,
}

const FIRST_PLURAL_WORDS: &[&str] = &[
    "nosotros", "nosotras", "nuestro", "nuestra", "nuestros", "nuestras",
];

const INFORMAL_PRONOUNS: &[&str] = &["tú", "ti", "contigo"];

const FORMAL_WORDS: &[&str] = &["usted", "ustedes", "ud", "uds", "vd", "vds"];

/// Frequent second-person verb forms of administrative texts.
const INFORMAL_VERBS: &[&str] = &[
    "puedes", "debes", "tienes", "quieres", "necesitas", "puedas", "debas", "tengas", "quieras",
    "eres", "estás", "sabes", "vas", "hayas", "podrás", "deberás", "tendrás", "accedes", "accedas",
    "solicitas", "solicites", "recibes", "recibirás", "introduces", "introduzcas", "consultas",
    "consultes", "necesites", "obtienes", "obtendrás", "quieras", "dispones", "dispongas",
];

/// Words after which a final -as/-es reads as a verb.
const VERB_CONTEXT: &[&str] = &["que", "si", "cuando", "tú", "no", "te", "ya", "también"];

/// -as/-es words that are not second-person verbs.
const NOT_INFORMAL: &[&str] = &[
    "personas", "cuantías", "pensiones", "prestaciones", "condiciones", "cuotas", "mayores",
    "menores", "demás", "veces", "antes", "después", "además", "mientras", "entonces", "gracias",
    "aquellas", "aquellos", "algunas", "ningunas", "muchas", "todas", "ambas", "otras", "mismas",
    "nuestras", "estas", "esas", "cuales", "iguales", "personales", "anteriores", "posteriores",
];

fn is_informal_verb(lower: &str, prev: Option<&str>) -> bool {
    if INFORMAL_VERBS.contains(&lower) || (lower.ends_with("zcas") && lower.chars().count() > 5) {
        return true;
    }
    prev.is_some_and(|p| VERB_CONTEXT.contains(&p))
        && lower.chars().count() >= 6
        && (lower.ends_with("as") || lower.ends_with("es"))
        && !lower.ends_with("ciones")
        && !NOT_INFORMAL.contains(&lower)
}

/// Grammatical person markers of a sentence, in token order.
pub fn find_person_markers(sentence: &Sentence, lexicons: &LexiconSet) -> Vec<PersonMarker> {
    let tokens = &sentence.tokens;
    let mut out = Vec::new();
    let mut prev_word: Option<&str> = None;
    for (i, token) in tokens.iter().enumerate() {
        if !token.is_word {
            continue;
        }
        let lower = token.lower.as_str();
        let next_is_word = tokens.get(i + 1).is_some_and(|t| t.is_word);
        let kind = if FIRST_PLURAL_WORDS.contains(&lower) || is_first_plural_verb(lower, lexicons) {
            Some(PersonKind::FirstPlural)
        } else if lower == "yo" {
            Some(PersonKind::FirstSingular)
        } else if FORMAL_WORDS.contains(&lower) {
            Some(PersonKind::Formal)
        } else if INFORMAL_PRONOUNS.contains(&lower)
            || (lower == "te" && next_is_word)
            || (matches!(lower, "tu" | "tus") && next_is_word)
            || is_informal_verb(lower, prev_word)
        {
            Some(PersonKind::Informal)
        } else {
            None
        };
        if let Some(kind) = kind {
            out.push(PersonMarker { kind, span: token.span, surface: token.surface.clone(), token: i });
        }
        prev_word = Some(lower);
    }
    out
}

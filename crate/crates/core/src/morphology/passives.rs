use std::ops::Range;

use serde::Serialize;

use super::{is_function_word, is_gerund, is_infinitive, is_participle};
use crate::lexicons::LexiconSet;
use crate::textmodel::{Sentence, Span, Token};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PassiveKind {
    /// Finite *ser* (or *haber* + *sido*) followed by a participle.
    Periphrastic,
    /// A modal or linked periphrasis around infinitive *ser*: "deberá ser presentada".
    PeriphrasticInPeriphrasis,
    /// *se* + finite third-person verb.
    Reflexive,
    /// Reflexive passive whose agent is introduced by *por* or *de*.
    ReflexiveWithAgent,
}

impl PassiveKind {
    pub fn describe(self) -> &'static str {
        match self {
            PassiveKind::Periphrastic => "periphrastic passive",
            PassiveKind::PeriphrasticInPeriphrasis => "passive inside a verbal periphrasis",
            PassiveKind::Reflexive => "reflexive passive",
            PassiveKind::ReflexiveWithAgent => "reflexive passive with an explicit agent",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PassiveMatch {
    pub kind: PassiveKind,
    pub span: Span,
    pub agent_span: Option<Span>,
    /// Range over the sentence's word tokens (punctuation skipped).
    #[serde(skip)]
    pub words: Range<usize>,
}

const SER_FINITE: &[&str] = &[
    "soy", "eres", "es", "somos", "sois", "son", "era", "eras", "éramos", "erais", "eran", "fui",
    "fuiste", "fue", "fuimos", "fuisteis", "fueron", "seré", "serás", "será", "seremos", "seréis",
    "serán", "sería", "serías", "seríamos", "seríais", "serían", "sea", "seas", "seamos", "seáis",
    "sean", "fuera", "fueras", "fuéramos", "fuerais", "fueran", "fuese", "fueses", "fuésemos",
    "fueseis", "fuesen", "fuere", "fueres", "fuéremos", "fuereis", "fueren",
];

const HABER_FINITE: &[&str] = &[
    "he", "has", "ha", "hemos", "habéis", "han", "había", "habías", "habíamos", "habíais",
    "habían", "hube", "hubiste", "hubo", "hubimos", "hubisteis", "hubieron", "habré", "habrás",
    "habrá", "habremos", "habréis", "habrán", "habría", "habrías", "habríamos", "habríais",
    "habrían", "haya", "hayas", "hayamos", "hayáis", "hayan", "hubiera", "hubieras", "hubiéramos",
    "hubierais", "hubieran", "hubiese", "hubieses", "hubiésemos", "hubieseis", "hubiesen",
    "hubiere", "hubieren",
];

const HABER_THIRD: &[&str] = &[
    "ha", "han", "había", "habían", "hubo", "hubieron", "habrá", "habrán", "habría", "habrían",
    "haya", "hayan", "hubiera", "hubieran", "hubiese", "hubiesen", "hubiere", "hubieren",
];

/// Auxiliaries that need a linking word before the infinitive.
const LINKED_AUX: &[(&[&str], &str)] = &[
    (
        &[
            "tiene", "tienen", "tenía", "tenían", "tendrá", "tendrán", "tendría", "tendrían",
            "tenga", "tengan", "tuvo", "tuvieron", "tuviera", "tuvieran", "tienes", "tengo",
        ],
        "que",
    ),
    (&["ha", "han", "había", "habían", "habrá", "habrán", "habría", "habrían", "haya", "hayan"], "de"),
    (&["va", "van", "iba", "iban", "irá", "irán", "iría", "irían", "vaya", "vayan"], "a"),
];

const MODAL_PREFIXES: &[&str] = &["deb", "pued", "pod", "suel", "sol"];

const CLITICS: &[&str] = &["le", "les", "lo", "la", "los", "las", "me", "te", "nos"];

pub(crate) const PREPOSITIONS: &[&str] = &[
    "a", "al", "ante", "bajo", "con", "contra", "de", "del", "desde", "durante", "en", "entre",
    "hacia", "hasta", "mediante", "para", "por", "según", "sin", "sobre", "tras",
];

pub(crate) const DETERMINERS: &[&str] = &[
    "el", "la", "los", "las", "un", "una", "unos", "unas", "este", "esta", "estos", "estas", "ese",
    "esa", "esos", "esas", "aquel", "aquella", "su", "sus", "dicho", "dicha", "dichos", "dichas",
    "cada", "todo", "toda", "todos", "todas", "nuestro", "nuestra", "nuestros", "nuestras",
];

const AGENT_STOPS: &[&str] = &["y", "e", "o", "u", "ni", "que", "pero", "como", "conforme", "cuando", "si"];

const AGENT_WINDOW: usize = 8;
const AGENT_MAX_WORDS: usize = 5;

/// The word tokens of a sentence plus, for each, the index of the original
/// token (used to detect punctuation between words).
pub(crate) struct Words<'a> {
    pub tokens: Vec<&'a Token>,
    pub index: Vec<usize>,
}

impl<'a> Words<'a> {
    pub fn new(tokens: &'a [Token]) -> Self {
        let (index, tokens) = tokens.iter().enumerate().filter(|(_, t)| t.is_word).unzip();
        Self { tokens, index }
    }

    fn lower(&self, i: usize) -> &str {
        &self.tokens[i].lower
    }

    fn len(&self) -> usize {
        self.tokens.len()
    }

    /// Punctuation sits between word `i` and word `i + 1`.
    fn punct_after(&self, i: usize) -> bool {
        self.index[i + 1] != self.index[i] + 1
    }

    fn span(&self, range: &Range<usize>) -> Span {
        self.tokens[range.start].span.cover(self.tokens[range.end - 1].span)
    }
}

pub(crate) fn is_ser_finite(w: &str) -> bool {
    SER_FINITE.contains(&w)
}

pub(crate) fn is_haber_finite(w: &str) -> bool {
    HABER_FINITE.contains(&w)
}

pub(crate) fn is_modal(w: &str) -> bool {
    MODAL_PREFIXES.iter().any(|p| w.starts_with(p)) && !is_infinitive(w) && w.chars().count() > 3
}

/// A finite third-person verb form, judged by its ending.
pub(crate) fn is_finite_third(w: &str, lexicons: &LexiconSet) -> bool {
    if HABER_THIRD.contains(&w) || is_ser_finite(w) {
        return true;
    }
    if w.chars().count() < 3
        || is_function_word(w)
        || DETERMINERS.contains(&w)
        || !w.chars().all(char::is_alphabetic)
        || is_participle(w, lexicons)
        || is_gerund(w, lexicons)
        || is_infinitive(w)
    {
        return false;
    }
    let last = w.chars().last().unwrap();
    let before_last = w.chars().rev().nth(1).unwrap();
    matches!(last, 'a' | 'e' | 'á' | 'ó') || (last == 'n' && matches!(before_last, 'a' | 'e' | 'á'))
}

/// First participle among the next `max` words after `after`.
fn participle_within(words: &Words, after: usize, max: usize, lexicons: &LexiconSet) -> Option<usize> {
    (after + 1..=after + max)
        .take_while(|&j| j < words.len())
        .find(|&j| is_participle(words.lower(j), lexicons))
}

fn periphrastic_at(words: &Words, i: usize, lexicons: &LexiconSet) -> Option<usize> {
    let w = words.lower(i);
    if is_ser_finite(w) {
        return participle_within(words, i, 2, lexicons);
    }
    if is_haber_finite(w) && i + 1 < words.len() && words.lower(i + 1) == "sido" {
        return participle_within(words, i + 1, 2, lexicons);
    }
    None
}

fn in_periphrasis_at(words: &Words, i: usize, lexicons: &LexiconSet) -> Option<usize> {
    let w = words.lower(i);
    let ser_at = if is_modal(w) {
        i + 1
    } else if LINKED_AUX
        .iter()
        .any(|(forms, link)| forms.contains(&w) && i + 1 < words.len() && words.lower(i + 1) == *link)
    {
        i + 2
    } else {
        return None;
    };
    if ser_at >= words.len() || words.lower(ser_at) != "ser" {
        return None;
    }
    participle_within(words, ser_at, 2, lexicons)
}

/// End (inclusive) of the verb of a reflexive passive starting at `se`.
fn reflexive_verb_end(words: &Words, se: usize, lexicons: &LexiconSet) -> Option<usize> {
    if words.lower(se) != "se" {
        return None;
    }
    let mut v = se + 1;
    if v < words.len() && CLITICS.contains(&words.lower(v)) {
        v += 1;
    }
    if v >= words.len() || !is_finite_third(words.lower(v), lexicons) {
        return None;
    }
    if HABER_THIRD.contains(&words.lower(v)) && v + 1 < words.len() && is_participle(words.lower(v + 1), lexicons) {
        return Some(v + 1);
    }
    Some(v)
}

/// The agent phrase after a reflexive verb, as an inclusive word range.
fn agent_after(words: &Words, verb_end: usize) -> Option<(usize, usize)> {
    let k = (verb_end + 1..=verb_end + AGENT_WINDOW)
        .take_while(|&k| k < words.len())
        .find(|&k| PREPOSITIONS.contains(&words.lower(k)))?;
    let prep = words.lower(k);
    if !matches!(prep, "por" | "de" | "del") || k + 1 >= words.len() || words.punct_after(k) {
        return None;
    }
    let head = words.tokens[k + 1];
    if !(prep == "del" || DETERMINERS.contains(&head.lower.as_str()) || head.starts_uppercase()) {
        return None;
    }
    let mut end = k + 1;
    while end + 1 < words.len()
        && end + 1 - k < AGENT_MAX_WORDS
        && !words.punct_after(end)
        && !PREPOSITIONS.contains(&words.lower(end + 1))
        && !AGENT_STOPS.contains(&words.lower(end + 1))
    {
        end += 1;
    }
    Some((k, end))
}

/// (kind, inclusive end word, agent word range)
type Candidate = (PassiveKind, usize, Option<(usize, usize)>);

/// Longest match starting at word `i`.
fn longest_at(
    words: &Words,
    i: usize,
    lexicons: &LexiconSet,
) -> Option<Candidate> {
    let mut best: Option<Candidate> = None;
    let mut offer = |kind, end: usize, agent| {
        if best.is_none_or(|(_, e, _)| end > e) {
            best = Some((kind, end, agent));
        }
    };
    if let Some(end) = periphrastic_at(words, i, lexicons) {
        offer(PassiveKind::Periphrastic, end, None);
    }
    if let Some(end) = in_periphrasis_at(words, i, lexicons) {
        offer(PassiveKind::PeriphrasticInPeriphrasis, end, None);
    }
    if let Some(verb_end) = reflexive_verb_end(words, i, lexicons) {
        match agent_after(words, verb_end) {
            Some(agent) => offer(PassiveKind::ReflexiveWithAgent, agent.1, Some(agent)),
            None => offer(PassiveKind::Reflexive, verb_end, None),
        }
    }
    best
}

/// All passive constructions of a sentence, leftmost-longest and
/// non-overlapping.
pub fn find_passives(sentence: &Sentence, lexicons: &LexiconSet) -> Vec<PassiveMatch> {
    find_passives_in(&sentence.tokens, lexicons)
}

pub(crate) fn find_passives_in(tokens: &[Token], lexicons: &LexiconSet) -> Vec<PassiveMatch> {
    let words = Words::new(tokens);
    let mut out = Vec::new();
    let mut i = 0;
    while i < words.len() {
        match longest_at(&words, i, lexicons) {
            Some((kind, end, agent)) => {
                let range = i..end + 1;
                out.push(PassiveMatch {
                    kind,
                    span: words.span(&range),
                    agent_span: agent.map(|(s, e)| words.span(&(s..e + 1))),
                    words: range,
                });
                i = end + 1;
            }
            None => i += 1,
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::textmodel::{parse_plain, tokenize};
    use proptest::prelude::*;

    fn passives(text: &str) -> Vec<(PassiveKind, String)> {
        let lex = LexiconSet::embedded();
        let tokens = tokenize(text);
        let chars: Vec<char> = text.chars().collect();
        find_passives_in(&tokens, &lex)
            .into_iter()
            .map(|m| (m.kind, chars[m.span.start..m.span.end].iter().collect()))
            .collect()
    }

    #[test]
    fn proof_of_life_paragraph() {
        let found = passives(
            "La fe de vida deberá ser presentada en la Dirección Provincial del INSS que gestiona su pensión, información que ha sido comunicada a los pensionistas en la notificación de la revalorización de la pensión, durante el primer trimestre de cada año.",
        );
        assert_eq!(found, [
            (PassiveKind::PeriphrasticInPeriphrasis, "deberá ser presentada".to_string()),
            (PassiveKind::Periphrastic, "ha sido comunicada".to_string()),
        ]);
    }

    #[test]
    fn reflexive_with_agent_passage() {
        let found = passives(
            "Los requisitos de ingresos y patrimonio para el acceso y mantenimiento de la prestación económica de IMV se realizará por la entidad gestora conforme a la información que se obtenga por medios telemáticos de la Agencia Estatal de Administración Tributaria",
        );
        assert_eq!(found, [
            (PassiveKind::ReflexiveWithAgent, "se realizará por la entidad gestora".to_string()),
            (PassiveKind::Reflexive, "se obtenga".to_string()),
        ]);
        let lex = LexiconSet::embedded();
        let text = "se realizará por la entidad gestora";
        let m = &find_passives_in(&tokenize(text), &lex)[0];
        assert_eq!(m.agent_span, Some(Span::new(13, 35)));
    }

    #[test]
    fn simple_cases() {
        assert_eq!(passives("El documento fue aprobado ayer.")[0].0, PassiveKind::Periphrastic);
        assert_eq!(passives("Esta información se ha comunicado a los pensionistas.")[0], (
            PassiveKind::Reflexive,
            "se ha comunicado".to_string()
        ));
        assert_eq!(passives("se le indicará los documentos")[0].0, PassiveKind::Reflexive);
        assert!(passives("Debe ser rápido.").is_empty());
        assert!(passives("Es muy sencillo.").is_empty());
        assert!(passives("Para ser atendido, pida cita.").is_empty());
        assert_eq!(passives("Tiene que ser firmada por el titular.")[0].0, PassiveKind::PeriphrasticInPeriphrasis);
    }

    #[test]
    fn spans_inside_sentence() {
        let doc = parse_plain("Primero. La solicitud deberá ser presentada por el interesado.");
        let lex = LexiconSet::embedded();
        for (_, s) in doc.sentences() {
            for m in find_passives(s, &lex) {
                assert!(s.span.contains(m.span));
            }
        }
    }

    // Exhaustive oracle: enumerate every word window and keep those that the
    // grammar accepts as a whole, then pick leftmost-longest.
    fn oracle(tokens: &[Token], lex: &LexiconSet) -> Vec<(PassiveKind, Range<usize>)> {
        let words: Vec<&Token> = tokens.iter().filter(|t| t.is_word).collect();
        let positions: Vec<usize> =
            tokens.iter().enumerate().filter(|(_, t)| t.is_word).map(|(i, _)| i).collect();
        let n = words.len();
        let w = |i: usize| words.get(i).map_or("", |t| t.lower.as_str());
        let part = |i: usize| i < n && is_participle(w(i), lex);
        let adjacent = |i: usize| positions[i + 1] == positions[i] + 1;
        let first_participle_is = |from: usize, j: usize| (from..j).all(|x| !part(x)) && part(j);

        let accepts = |i: usize, j: usize| -> Option<PassiveKind> {
            let mut kinds = Vec::new();
            // ser + participle
            if is_ser_finite(w(i)) && (j == i + 1 || j == i + 2) && first_participle_is(i + 1, j) {
                kinds.push(PassiveKind::Periphrastic);
            }
            if is_haber_finite(w(i)) && j > i + 1 && w(i + 1) == "sido" && j <= i + 3 && first_participle_is(i + 2, j) {
                kinds.push(PassiveKind::Periphrastic);
            }
            // aux + ser + participle
            for ser in [i + 1, i + 2] {
                let aux_ok = if ser == i + 1 {
                    is_modal(w(i))
                } else {
                    LINKED_AUX.iter().any(|(f, l)| f.contains(&w(i)) && w(i + 1) == *l)
                };
                if aux_ok && ser < j && w(ser) == "ser" && j <= ser + 2 && first_participle_is(ser + 1, j) {
                    kinds.push(PassiveKind::PeriphrasticInPeriphrasis);
                }
            }
            // se [clitic] verb [participle] [agent]
            if w(i) == "se" && j > i {
                let v = if i + 1 < n && CLITICS.contains(&w(i + 1)) { i + 2 } else { i + 1 };
                if v < n && is_finite_third(w(v), lex) {
                    let verb_end = if HABER_THIRD.contains(&w(v)) && v + 1 < n && part(v + 1) { v + 1 } else { v };
                    let first_prep = (verb_end + 1..n.min(verb_end + 1 + AGENT_WINDOW)).find(|&k| PREPOSITIONS.contains(&w(k)));
                    let agent = first_prep.filter(|&k| {
                        matches!(w(k), "por" | "de" | "del")
                            && k + 1 < n
                            && adjacent(k)
                            && (w(k) == "del" || DETERMINERS.contains(&w(k + 1)) || words[k + 1].starts_uppercase())
                    });
                    match agent {
                        Some(k) => {
                            let mut e = k + 1;
                            while e + 1 < n && e + 1 - k < AGENT_MAX_WORDS && adjacent(e)
                                && !PREPOSITIONS.contains(&w(e + 1)) && !AGENT_STOPS.contains(&w(e + 1))
                            {
                                e += 1;
                            }
                            if j == e {
                                kinds.push(PassiveKind::ReflexiveWithAgent);
                            }
                        }
                        None if j == verb_end => kinds.push(PassiveKind::Reflexive),
                        None => {}
                    }
                }
            }
            kinds.into_iter().next()
        };

        let mut out = Vec::new();
        let mut i = 0;
        while i < n {
            let best = (i..n).rev().find_map(|j| accepts(i, j).map(|k| (k, j)));
            match best {
                Some((k, j)) => {
                    out.push((k, i..j + 1));
                    i = j + 1;
                }
                None => i += 1,
            }
        }
        out
    }

    const VOCAB: &[&str] = &[
        "se", "le", "la", "el", "los", "por", "de", "del", "a", "en", "que", "y", "ser", "es", "fue",
        "será", "son", "ha", "han", "sido", "deberá", "puede", "tiene", "va", "presentada",
        "comunicado", "aprobados", "hecho", "realizará", "obtenga", "aplica", "entidad", "gestora",
        "Agencia", "medios", "documento", ",", ".", "requisito", "muy",
    ];

    proptest! {
        #[test]
        fn matches_brute_force_oracle(picks in proptest::collection::vec(0..VOCAB.len(), 0..=12)) {
            let text = picks.iter().map(|&i| VOCAB[i]).collect::<Vec<_>>().join(" ");
            let lex = LexiconSet::embedded();
            let tokens = tokenize(&text);
            let fast: Vec<(PassiveKind, Range<usize>)> =
                find_passives_in(&tokens, &lex).into_iter().map(|m| (m.kind, m.words)).collect();
            prop_assert_eq!(fast, oracle(&tokens, &lex), "{}", text);
        }

        #[test]
        fn matches_are_ordered_and_disjoint(picks in proptest::collection::vec(0..VOCAB.len(), 0..=20)) {
            let text = picks.iter().map(|&i| VOCAB[i]).collect::<Vec<_>>().join(" ");
            let lex = LexiconSet::embedded();
            let found = find_passives_in(&tokenize(&text), &lex);
            for pair in found.windows(2) {
                prop_assert!(pair[0].span.end <= pair[1].span.start);
            }
            for m in &found {
                prop_assert!(!m.span.is_empty() && m.span.end <= text.chars().count());
            }
        }
    }
}

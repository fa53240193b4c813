use serde::Serialize;

use super::config::{default_rules, Category, Profile, RuleId};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RuleInfo {
    pub id: RuleId,
    pub category: Category,
    /// Profiles that enable the rule by default.
    pub profiles: Vec<Profile>,
    pub thresholds: Vec<&'static str>,
    pub description: &'static str,
}

fn describe(id: RuleId) -> (&'static str, &'static [&'static str]) {
    use RuleId::*;
    match id {
        A1 => ("Paragraph made of a single sentence", &[]),
        A2 => ("Paragraph longer than the word limit", &["long_paragraph_words"]),
        A3 => ("Paragraph that does not open with a discourse connector", &[]),
        A4 => ("Sentence longer than the word limit", &["long_sentence_words", "hard_sentence_cap_words"]),
        A5 => (
            "Long compound sentence, or average sentence length above the target",
            &["long_sentence_words", "avg_sentence_words_target"],
        ),
        A6 => ("Same connector repeated within a paragraph", &[]),
        A7 => ("Long enumeration that reads better as a list", &["min_list_items"]),
        B1 => ("Passive construction; prefer the active voice", &[]),
        B2 => ("Gerund", &[]),
        B3 => ("Participle construction", &[]),
        B4 => ("Archaic future subjunctive", &[]),
        B5 => ("Inconsistent first-person reference to the sender", &[]),
        B6 => ("Nominalization that hides the action", &[]),
        B7 => ("Several negations in one sentence", &["negation_min_count"]),
        B8 => ("Mixed informal and formal address", &[]),
        B9 => ("Long parenthetical remark", &["parenthetical_min_words"]),
        C1 => ("Word that signals subjectivity", &[]),
        C2 => ("Acronym used without its full form", &[]),
        C3 => ("Acronym not used consistently", &[]),
        C4 => ("High-register word with a plainer alternative", &[]),
        C5 => ("Expression that hinders clarity", &[]),
        C6 => ("Inaccurate word", &[]),
        C7 => ("Redundant expression", &[]),
        C8 => ("Long word with a shorter alternative", &[]),
        C9 => ("Superfluous phrase or supporting verb", &[]),
        C10 => ("Foreign word", &[]),
        F1 => ("Excessive capital letters", &[]),
        F2 => ("Number spelled out, or a figure with too many digits", &[]),
    }
}

/// Every rule with its category, default profiles and thresholds.
pub fn catalog() -> Vec<RuleInfo> {
    RuleId::ALL
        .iter()
        .map(|&id| {
            let (description, thresholds) = describe(id);
            RuleInfo {
                id,
                category: id.category(),
                profiles: Profile::ALL.into_iter().filter(|p| default_rules(*p).contains(&id)).collect(),
                thresholds: thresholds.to_vec(),
                description,
            }
        })
        .collect()
}

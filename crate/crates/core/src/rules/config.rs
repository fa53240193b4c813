use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConfigError {
    #[error("unknown rule id `{0}`")]
    UnknownRule(String),
    #[error("unknown profile `{0}` (expected artext or lengclaro)")]
    UnknownProfile(String),
    #[error("unknown threshold `{0}`")]
    UnknownThreshold(String),
    #[error("threshold {name} must be at least 1, got {value}")]
    ThresholdTooSmall { name: &'static str, value: usize },
    #[error("hard_sentence_cap_words ({cap}) must exceed avg_sentence_words_target ({target})")]
    CapBelowAverage { cap: usize, target: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Category {
    Discourse,
    Morphosyntactic,
    Lexical,
    Orthography,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Severity {
    Info,
    Warn,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Profile {
    Artext,
    Lengclaro,
}

impl Profile {
    pub const ALL: [Profile; 2] = [Profile::Artext, Profile::Lengclaro];

    pub fn as_str(self) -> &'static str {
        match self {
            Profile::Artext => "artext",
            Profile::Lengclaro => "lengclaro",
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Profile {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "artext" => Ok(Profile::Artext),
            "lengclaro" => Ok(Profile::Lengclaro),
            _ => Err(ConfigError::UnknownProfile(s.to_string())),
        }
    }
}

macro_rules! rule_ids {
    ($($variant:ident = $name:literal, $category:ident;)*) => {
        /// Rule identifiers. The declaration order is the canonical order used
        /// when sorting diagnostics.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum RuleId { $($variant,)* }

        impl RuleId {
            pub const ALL: &'static [RuleId] = &[$(RuleId::$variant,)*];

            pub fn as_str(self) -> &'static str {
                match self { $(RuleId::$variant => $name,)* }
            }

            pub fn category(self) -> Category {
                match self { $(RuleId::$variant => Category::$category,)* }
            }
        }

        impl FromStr for RuleId {
            type Err = ConfigError;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                match s.trim().to_ascii_lowercase().as_str() {
                    $($name => Ok(RuleId::$variant),)*
                    _ => Err(ConfigError::UnknownRule(s.to_string())),
                }
            }
        }
    };
}

rule_ids! {
    A1 = "a1", Discourse;
    A2 = "a2", Discourse;
    A3 = "a3", Discourse;
    A4 = "a4", Discourse;
    A5 = "a5", Discourse;
    A6 = "a6", Discourse;
    A7 = "a7", Discourse;
    B1 = "b1", Morphosyntactic;
    B2 = "b2", Morphosyntactic;
    B3 = "b3", Morphosyntactic;
    B4 = "b4", Morphosyntactic;
    B5 = "b5", Morphosyntactic;
    B6 = "b6", Morphosyntactic;
    B7 = "b7", Morphosyntactic;
    B8 = "b8", Morphosyntactic;
    B9 = "b9", Morphosyntactic;
    C1 = "c1", Lexical;
    C2 = "c2", Lexical;
    C3 = "c3", Lexical;
    C4 = "c4", Lexical;
    C5 = "c5", Lexical;
    C6 = "c6", Lexical;
    C7 = "c7", Lexical;
    C8 = "c8", Lexical;
    C9 = "c9", Lexical;
    C10 = "c10", Lexical;
    F1 = "f1", Orthography;
    F2 = "f2", Orthography;
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for RuleId {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for RuleId {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Numeric knobs of the rule set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Thresholds {
    pub long_paragraph_words: usize,
    pub long_sentence_words: usize,
    pub avg_sentence_words_target: usize,
    pub hard_sentence_cap_words: usize,
    pub min_list_items: usize,
    pub parenthetical_min_words: usize,
    pub negation_min_count: usize,
}

impl Default for Thresholds {
    fn default() -> Self {
        Self {
            long_paragraph_words: 135,
            long_sentence_words: 25,
            avg_sentence_words_target: 20,
            hard_sentence_cap_words: 35,
            min_list_items: 4,
            parenthetical_min_words: 5,
            negation_min_count: 2,
        }
    }
}

impl Thresholds {
    pub const NAMES: [&'static str; 7] = [
        "long_paragraph_words",
        "long_sentence_words",
        "avg_sentence_words_target",
        "hard_sentence_cap_words",
        "min_list_items",
        "parenthetical_min_words",
        "negation_min_count",
    ];

    fn slot(&mut self, name: &str) -> Option<(&'static str, &mut usize)> {
        let pos = Self::NAMES.iter().position(|n| *n == name)?;
        let slot = match pos {
            0 => &mut self.long_paragraph_words,
            1 => &mut self.long_sentence_words,
            2 => &mut self.avg_sentence_words_target,
            3 => &mut self.hard_sentence_cap_words,
            4 => &mut self.min_list_items,
            5 => &mut self.parenthetical_min_words,
            _ => &mut self.negation_min_count,
        };
        Some((Self::NAMES[pos], slot))
    }

    pub fn get(&self, name: &str) -> Option<usize> {
        let mut copy = *self;
        copy.slot(name).map(|(_, v)| *v)
    }

    pub fn set(&mut self, name: &str, value: usize) -> Result<(), ConfigError> {
        let (_, slot) = self.slot(name).ok_or_else(|| ConfigError::UnknownThreshold(name.to_string()))?;
        *slot = value;
        Ok(())
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        for name in Self::NAMES {
            let value = self.get(name).expect("known name");
            if value < 1 {
                return Err(ConfigError::ThresholdTooSmall { name, value });
            }
        }
        if self.hard_sentence_cap_words <= self.avg_sentence_words_target {
            return Err(ConfigError::CapBelowAverage {
                cap: self.hard_sentence_cap_words,
                target: self.avg_sentence_words_target,
            });
        }
        Ok(())
    }
}

/// Which rules run, with which thresholds. Rule behaviour that differs
/// between profiles (a1 severity, a4/a5 mode, b1/b2/b3/b6 scope) follows
/// `profile`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleConfig {
    pub profile: Profile,
    pub enabled: BTreeSet<RuleId>,
    pub thresholds: Thresholds,
}

impl RuleConfig {
    pub fn for_profile(profile: Profile) -> Self {
        Self {
            profile,
            enabled: default_rules(profile).iter().copied().collect(),
            thresholds: Thresholds::default(),
        }
    }

    pub fn is_enabled(&self, id: RuleId) -> bool {
        self.enabled.contains(&id)
    }

    /// Replaces the enabled set with exactly `ids`.
    pub fn only<I, S>(mut self, ids: I) -> Result<Self, ConfigError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        self.enabled = ids.into_iter().map(|s| s.as_ref().parse()).collect::<Result<_, _>>()?;
        Ok(self)
    }

    pub fn without(mut self, id: RuleId) -> Self {
        self.enabled.remove(&id);
        self
    }

    pub fn with_threshold(mut self, name: &str, value: usize) -> Result<Self, ConfigError> {
        self.thresholds.set(name, value)?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        self.thresholds.validate()
    }
}

const ARTEXT_RULES: &[RuleId] = {
    use RuleId::*;
    &[A1, A2, A3, A4, A5, A6, A7, B1, B2, B3, B4, B5, B6, B7, C1, C2, C3, C4, C5, C6, C7, C8]
};

const LENGCLARO_RULES: &[RuleId] = {
    use RuleId::*;
    &[
        A1, A2, A4, A5, A7, B1, B2, B3, B4, B5, B6, B7, B8, B9, C1, C2, C3, C4, C5, C7, C8, C9, C10,
        F1, F2,
    ]
};

pub fn default_rules(profile: Profile) -> &'static [RuleId] {
    match profile {
        Profile::Artext => ARTEXT_RULES,
        Profile::Lengclaro => LENGCLARO_RULES,
    }
}

//! The JSON report shared by the command line and the HTTP service.

use serde::Serialize;

use crate::rules::{Diagnostic, Profile};

pub const REPORT_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportEntry {
    /// Input the diagnostic belongs to, when linting several files.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub file: Option<String>,
    #[serde(flatten)]
    pub diagnostic: Diagnostic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LintReport {
    pub version: String,
    pub profile: Profile,
    pub diagnostics: Vec<ReportEntry>,
}

impl LintReport {
    pub fn new(profile: Profile) -> Self {
        Self { version: REPORT_VERSION.to_string(), profile, diagnostics: Vec::new() }
    }

    pub fn extend(&mut self, file: Option<&str>, diagnostics: impl IntoIterator<Item = Diagnostic>) {
        self.diagnostics.extend(
            diagnostics.into_iter().map(|diagnostic| ReportEntry { file: file.map(str::to_string), diagnostic }),
        );
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{lint, parse_plain, LexiconSet, RuleConfig};

    #[test]
    fn schema_fields_in_order() {
        let doc = parse_plain("Cuando uno de ellos solicitare el ingreso.");
        let cfg = RuleConfig::for_profile(Profile::Artext).only(["b4"]).unwrap();
        let mut report = LintReport::new(Profile::Artext);
        report.extend(None, lint(&doc, &cfg, &LexiconSet::embedded()));
        let json = serde_json::to_string(&report).unwrap();
        assert!(json.starts_with(r#"{"version":"1","profile":"artext","diagnostics":[{"rule_id":"b4","category":"morphosyntactic","severity":"warn","span":{"start":20,"end":30},"source_span":null,"message":"#), "{json}");
        assert!(json.contains(r#""suggestions":["solicitase","solicitara"],"snippet":"solicitare"}]}"#));
    }
}

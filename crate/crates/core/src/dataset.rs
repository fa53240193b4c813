//! Corpus discovery: `<doc_number>_<version>.html` files in one directory.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::metrics::Trio;
use crate::textmodel::{TextError, TextParser};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Version {
    Original,
    Artext,
    Lengclaro,
}

impl Version {
    pub const ALL: [Version; 3] = [Version::Original, Version::Artext, Version::Lengclaro];

    pub fn as_str(self) -> &'static str {
        match self {
            Version::Original => "original",
            Version::Artext => "artext",
            Version::Lengclaro => "lengclaro",
        }
    }
}

impl fmt::Display for Version {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Version {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Version::ALL.into_iter().find(|v| v.as_str() == s).ok_or_else(|| format!("unknown version {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct DatasetEntry {
    pub doc_number: u32,
    pub version: Version,
    pub path: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Violation {
    pub file_name: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IncompleteTrio {
    pub doc_number: u32,
    pub missing: Vec<Version>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    /// Sorted by document number, then version.
    pub entries: Vec<DatasetEntry>,
    pub violations: Vec<Violation>,
    pub incomplete: Vec<IncompleteTrio>,
}

impl ScanReport {
    /// Entries grouped by document number.
    pub fn by_document(&self) -> BTreeMap<u32, Vec<&DatasetEntry>> {
        let mut groups: BTreeMap<u32, Vec<&DatasetEntry>> = BTreeMap::new();
        for e in &self.entries {
            groups.entry(e.doc_number).or_default().push(e);
        }
        groups
    }
}

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}: {source}", path.display())]
    Parse { path: PathBuf, source: TextError },
    #[error("no entries to load")]
    NoEntries,
    #[error("entries belong to different documents ({0} and {1})")]
    MixedDocuments(u32, u32),
}

/// Classifies one file name: `None` for files that are not HTML at all.
fn classify(name: &str) -> Option<Result<(u32, Version), String>> {
    let dot = name.rfind('.')?;
    let (stem, ext) = (&name[..dot], &name[dot + 1..]);
    if !ext.eq_ignore_ascii_case("html") {
        return None;
    }
    if ext != "html" {
        return Some(Err(format!("extension must be lowercase \".html\", found \".{ext}\"")));
    }
    let Some((number, version)) = stem.split_once('_') else {
        return Some(Err("expected <doc_number>_<version>.html".to_string()));
    };
    let valid_number = !number.is_empty() && !number.starts_with('0') && number.bytes().all(|b| b.is_ascii_digit());
    let Some(doc_number) = valid_number.then(|| number.parse::<u32>().ok()).flatten() else {
        return Some(Err(format!("document number {number:?} is not a positive integer")));
    };
    Some(match version.parse::<Version>() {
        Ok(v) => Ok((doc_number, v)),
        Err(_) => Err(format!("unknown version {version:?}; expected original, artext or lengclaro")),
    })
}

pub fn scan(dir: &Path) -> Result<ScanReport, DatasetError> {
    let io = |source| DatasetError::Io { path: dir.to_path_buf(), source };
    let mut report = ScanReport::default();
    for item in std::fs::read_dir(dir).map_err(io)? {
        let item = item.map_err(io)?;
        if !item.file_type().map_err(io)?.is_file() {
            continue;
        }
        let name = item.file_name().to_string_lossy().into_owned();
        match classify(&name) {
            None => {}
            Some(Ok((doc_number, version))) => {
                report.entries.push(DatasetEntry { doc_number, version, path: item.path() })
            }
            Some(Err(reason)) => report.violations.push(Violation { file_name: name, reason }),
        }
    }
    report.entries.sort();
    report.violations.sort();
    report.incomplete = report
        .by_document()
        .into_iter()
        .filter_map(|(doc_number, entries)| {
            let missing: Vec<Version> =
                Version::ALL.into_iter().filter(|v| !entries.iter().any(|e| e.version == *v)).collect();
            (!missing.is_empty()).then_some(IncompleteTrio { doc_number, missing })
        })
        .collect();
    Ok(report)
}

/// Reads and parses the files of one document in parallel.
pub fn load_trio(entries: &[DatasetEntry], parser: &TextParser) -> Result<Trio, DatasetError> {
    let first = entries.first().ok_or(DatasetError::NoEntries)?;
    if let Some(other) = entries.iter().find(|e| e.doc_number != first.doc_number) {
        return Err(DatasetError::MixedDocuments(first.doc_number, other.doc_number));
    }
    let docs = entries
        .par_iter()
        .map(|e| {
            let bytes = std::fs::read(&e.path).map_err(|source| DatasetError::Io { path: e.path.clone(), source })?;
            let doc =
                parser.parse_html(&bytes).map_err(|source| DatasetError::Parse { path: e.path.clone(), source })?;
            Ok((e.version, doc))
        })
        .collect::<Result<Vec<_>, DatasetError>>()?;
    Ok(Trio { doc_number: first.doc_number, documents: docs.into_iter().collect() })
}

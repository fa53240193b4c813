//! `claro`: lint Spanish administrative texts and compare corpus versions.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use claro_core::dataset::{self, IncompleteTrio, Violation};
use claro_core::{
    compare, lint, Diagnostic, LexiconSet, LintReport, Profile, RuleConfig, Severity, TextParser, TrioReport,
    Version,
};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Parser)]
#[command(name = "claro", version, about = "Plain-language linter for Spanish legal-administrative text")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lint plain-text or HTML files.
    Lint {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        /// Parse every input as HTML (otherwise inferred from the extension).
        #[arg(long)]
        html: bool,
        #[command(flatten)]
        opts: Options,
    },
    /// Compare the versions of every document in a corpus directory.
    Corpus {
        dir: PathBuf,
        #[command(flatten)]
        opts: Options,
    },
}

#[derive(Args)]
struct Options {
    #[arg(long, default_value = "lengclaro", value_parser = parse_profile)]
    profile: Profile,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Comma-separated rule ids; only these run.
    #[arg(long, value_delimiter = ',')]
    rules: Option<Vec<String>>,
    /// Lexicon file merged over the built-in tables (repeatable).
    #[arg(long = "lexicon")]
    lexicons: Vec<PathBuf>,
    /// Threshold override, e.g. long_sentence_words=30 (repeatable).
    #[arg(long = "threshold", value_parser = parse_threshold)]
    thresholds: Vec<(String, usize)>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
}

fn parse_profile(s: &str) -> Result<Profile, String> {
    s.parse().map_err(|e: claro_core::ConfigError| e.to_string())
}

fn parse_threshold(s: &str) -> Result<(String, usize), String> {
    let (name, value) = s.split_once('=').ok_or("expected <name>=<int>")?;
    let value = value.trim().parse().map_err(|_| format!("{value:?} is not a non-negative integer"))?;
    Ok((name.trim().to_string(), value))
}

struct Setup {
    config: RuleConfig,
    lexicons: LexiconSet,
    parser: TextParser,
}

impl Options {
    fn setup(&self) -> Result<Setup, String> {
        let mut config = RuleConfig::for_profile(self.profile);
        if let Some(rules) = &self.rules {
            config = config.only(rules.iter().map(|r| r.trim()).filter(|r| !r.is_empty())).map_err(|e| e.to_string())?;
        }
        for (name, value) in &self.thresholds {
            config.thresholds.set(name, *value).map_err(|e| e.to_string())?;
        }
        config.validate().map_err(|e| e.to_string())?;
        let lexicons = LexiconSet::load(&self.lexicons).map_err(|e| e.to_string())?;
        let parser = lexicons.text_parser();
        Ok(Setup { config, lexicons, parser })
    }
}

fn is_html_path(path: &Path) -> bool {
    path.extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| e.eq_ignore_ascii_case("html") || e.eq_ignore_ascii_case("htm"))
}

fn lint_file(path: &Path, force_html: bool, setup: &Setup) -> Result<Vec<Diagnostic>, String> {
    let bytes = std::fs::read(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let doc = if force_html || is_html_path(path) {
        setup.parser.parse_html(&bytes)
    } else {
        std::str::from_utf8(&bytes)
            .map(|text| setup.parser.parse_plain(text))
            .map_err(|e| claro_core::TextError::MalformedEncoding { valid_up_to: e.valid_up_to() })
    }
    .map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(lint(&doc, &setup.config, &setup.lexicons))
}

fn cmd_lint(paths: &[PathBuf], html: bool, opts: &Options) -> Result<ExitCode, String> {
    let setup = opts.setup()?;
    let results: Vec<_> = paths.par_iter().map(|p| lint_file(p, html, &setup)).collect();

    let mut report = LintReport::new(opts.profile);
    let mut failed = false;
    for (path, result) in paths.iter().zip(results) {
        match result {
            Ok(diagnostics) => report.extend(Some(&path.display().to_string()), diagnostics),
            Err(message) => {
                eprintln!("claro: {message}");
                failed = true;
            }
        }
    }
    match opts.format {
        Format::Json => println!("{}", report.to_json()),
        Format::Human => {
            for entry in &report.diagnostics {
                let d = &entry.diagnostic;
                let file = entry.file.as_deref().unwrap_or("-");
                println!("{file}:{}-{} {} {}", d.span.start, d.span.end, d.rule_id, d.message);
            }
        }
    }
    Ok(if failed {
        ExitCode::from(2)
    } else if report.diagnostics.iter().any(|e| e.diagnostic.severity == Severity::Warn) {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

#[derive(Serialize)]
struct CorpusReport {
    version: &'static str,
    profile: Profile,
    trios: Vec<TrioReport>,
    violations: Vec<Violation>,
    incomplete: Vec<IncompleteTrio>,
}

fn print_table(report: &CorpusReport) {
    println!("{:<6} {:<26} {:<18} {:<14} changes", "doc", "versions", "words", "diagnostics");
    for trio in &report.trios {
        let versions: Vec<&str> = trio.metrics.keys().map(|v| v.as_str()).collect();
        let words: Vec<String> = trio.metrics.values().map(|m| m.word_count.to_string()).collect();
        let diags: Vec<String> =
            trio.metrics.values().map(|m| m.diagnostics_by_rule.values().sum::<usize>().to_string()).collect();
        let changes: Vec<String> = trio
            .deltas
            .iter()
            .map(|(v, per_rule)| {
                let moved: Vec<String> =
                    per_rule.iter().filter(|(_, d)| **d != 0).map(|(id, d)| format!("{id}{d:+}")).collect();
                format!("{v}[{}]", moved.join(" "))
            })
            .collect();
        println!(
            "{:<6} {:<26} {:<18} {:<14} {}",
            trio.doc_number,
            versions.join(","),
            words.join("/"),
            diags.join("/"),
            changes.join(" ")
        );
    }
    for v in &report.violations {
        println!("violation: {}: {}", v.file_name, v.reason);
    }
    for t in &report.incomplete {
        let missing: Vec<&str> = t.missing.iter().map(|v| Version::as_str(*v)).collect();
        println!("incomplete: document {} is missing {}", t.doc_number, missing.join(", "));
    }
}

fn cmd_corpus(dir: &Path, opts: &Options) -> Result<ExitCode, String> {
    let setup = opts.setup()?;
    let scan = dataset::scan(dir).map_err(|e| e.to_string())?;
    let groups = scan.by_document();
    let comparable: Vec<Vec<_>> = groups
        .values()
        .filter(|entries| entries.len() >= 2)
        .map(|entries| entries.iter().map(|e| (*e).clone()).collect())
        .collect();
    let trios = comparable
        .par_iter()
        .map(|entries| {
            let trio = dataset::load_trio(entries, &setup.parser).map_err(|e| e.to_string())?;
            compare(&trio, &setup.config, &setup.lexicons).map_err(|e| e.to_string())
        })
        .collect::<Result<Vec<_>, String>>()?;
    let report = CorpusReport {
        version: claro_core::report::REPORT_VERSION,
        profile: opts.profile,
        trios,
        violations: scan.violations,
        incomplete: scan.incomplete,
    };
    match opts.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report).expect("report serializes")),
        Format::Human => print_table(&report),
    }
    Ok(if report.violations.is_empty() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Lint { paths, html, opts } => cmd_lint(paths, *html, opts),
        Command::Corpus { dir, opts } => cmd_corpus(dir, opts),
    };
    result.unwrap_or_else(|message| {
        eprintln!("claro: {message}");
        ExitCode::from(2)
    })
}

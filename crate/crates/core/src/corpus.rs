//! Group corpora: a text file of group specs, one per line, with `#` comments.
//! A trailing comment on a spec line is used as the group's label.

use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::group::{make_group_with, Group, Limits};

pub const DEFAULT_CORPUS: &str = include_str!("../data/default_corpus.txt");

/// Environment variable naming a corpus file to use instead of the default.
pub const CORPUS_ENV: &str = "BISETKIT_CORPUS";

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub spec: String,
    pub label: String,
    pub group: Group,
}

pub fn parse_corpus(text: &str, limits: Limits) -> Result<Vec<CorpusEntry>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let (body, comment) = match line.split_once('#') {
            Some((b, c)) => (b.trim(), Some(c.trim())),
            None => (line.trim(), None),
        };
        if body.is_empty() {
            continue;
        }
        let group = make_group_with(body, limits).map_err(|e| match e {
            Error::Parse { spec, reason } => Error::Parse { spec, reason: format!("line {}: {reason}", lineno + 1) },
            other => other,
        })?;
        let label = comment.filter(|c| !c.is_empty()).unwrap_or(body).to_string();
        out.push(CorpusEntry { spec: body.to_string(), label: label.clone(), group: group.renamed(label) });
    }
    Ok(out)
}

/// The corpus file to read: `path` if given, else `$BISETKIT_CORPUS`, else
/// `None` for the built-in corpus.
pub fn corpus_path(path: Option<&Path>) -> Option<PathBuf> {
    path.map(Path::to_path_buf)
        .or_else(|| std::env::var_os(CORPUS_ENV).filter(|v| !v.is_empty()).map(PathBuf::from))
}

pub fn load_corpus(path: Option<&Path>, limits: Limits) -> Result<Vec<CorpusEntry>> {
    match corpus_path(path) {
        Some(p) => {
            let text = std::fs::read_to_string(&p)
                .map_err(|e| Error::parse(&p.display().to_string(), format!("cannot read corpus: {e}")))?;
            parse_corpus(&text, limits)
        }
        None => parse_corpus(DEFAULT_CORPUS, limits),
    }
}

pub fn default_corpus() -> Vec<CorpusEntry> {
    parse_corpus(DEFAULT_CORPUS, Limits::default()).expect("built-in corpus parses")
}

const TWO_GROUPS: &[(&str, &str)] = &[
    ("C1", "C1"),
    ("C2", "C2"),
    ("C4", "C4"),
    ("C2xC2", "C2xC2"),
    ("C8", "C8"),
    ("C2xC4", "C2xC4"),
    ("C2xC2xC2", "C2xC2xC2"),
    ("D8", "D8"),
    ("Q8", "Q8"),
    ("C16", "C16"),
    ("C4xC4", "C4xC4"),
    ("C2^2:C4", "perm:8:[(7 8);(1 3 2 4)(5 7)(6 8)]"),
    ("C4:C4", "perm:8:[(5 7 6 8);(1 3 2 4)(7 8)]"),
    ("C2xC8", "C2xC8"),
    ("M16", "perm:8:[(1 2 3 4 5 6 7 8);(2 6)(4 8)]"),
    ("D16", "D16"),
    ("SD16", "perm:8:[(1 2 3 4 5 6 7 8);(2 4)(3 7)(6 8)]"),
    ("Q16", "Q16"),
    ("C2xC2xC4", "C2xC2xC4"),
    ("C2xD8", "C2xD8"),
    ("C2xQ8", "C2xQ8"),
    ("Pauli", "perm:8:[(5 6)(7 8);(1 3 2 4)(5 7 6 8);(1 5)(2 6)(3 7)(4 8)]"),
    ("Elem(2,4)", "Elem(2,4)"),
];

const THREE_GROUPS: &[(&str, &str)] = &[
    ("C1", "C1"),
    ("C3", "C3"),
    ("C9", "C9"),
    ("C3xC3", "C3xC3"),
    ("C27", "C27"),
    ("C3xC9", "C3xC9"),
    ("Elem(3,3)", "Elem(3,3)"),
    ("Heis27", "perm:9:[(1 4 7)(2 5 8)(3 6 9);(4 5 6)(7 9 8)]"),
    ("C9:C3", "perm:9:[(1 2 3 4 5 6 7 8 9);(2 5 8)(3 9 6)]"),
];

/// Every p-group up to isomorphism of order at most 16 (p = 2) or 27 (p = 3),
/// as labelled groups.
pub fn small_p_groups(p: usize) -> Result<Vec<Group>> {
    let table = match p {
        2 => TWO_GROUPS,
        3 => THREE_GROUPS,
        _ => return Err(Error::Precondition(format!("no shape list for p = {p}"))),
    };
    table
        .iter()
        .map(|(label, spec)| Ok(make_group_with(spec, Limits::default())?.renamed(*label)))
        .collect()
}

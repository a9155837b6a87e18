//! Text formats for manifold definitions and differential ideals.
//!
//! Manifold file:
//! ```text
//! dim 6
//! d 5 = 13+42
//! d 6 = 14+23
//! ```
//! Omitted generators are closed. Ideal file, one generator per line:
//! `d: <form>` is the bundle derivative of a form on the θ generators, a bare
//! `<form>` is taken as is on the bundle generators. In both formats `#`
//! starts a comment and blank lines are ignored.

use std::fmt;

use coframe_core::{parse_form, EdsProblem, Form, FrameManifold};

/// A diagnostic attached to a 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FileError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for FileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for FileError {}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(k, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((k + 1, line))
    })
}

fn err(line: usize, message: impl Into<String>) -> FileError {
    FileError { line, message: message.into() }
}

pub fn parse_manifold_file(text: &str) -> Result<FrameManifold, FileError> {
    let mut lines = content_lines(text);
    let (first, header) = lines.next().ok_or_else(|| err(1, "missing `dim <n>` line"))?;
    let n: usize = header
        .strip_prefix("dim")
        .and_then(|rest| rest.trim().parse().ok())
        .ok_or_else(|| err(first, format!("expected `dim <n>`, found `{header}`")))?;
    let mut manifold = FrameManifold::new(n).map_err(|e| err(first, e.to_string()))?;
    for (line, entry) in lines {
        let (lhs, rhs) =
            entry.split_once('=').ok_or_else(|| err(line, format!("expected `d <i> = <form>`, found `{entry}`")))?;
        let index: usize = lhs
            .trim()
            .strip_prefix('d')
            .and_then(|i| i.trim().parse().ok())
            .ok_or_else(|| err(line, format!("expected `d <i>`, found `{}`", lhs.trim())))?;
        let value = parse_form(n, rhs).map_err(|e| err(line, e.to_string()))?;
        manifold.declare_d(index, value).map_err(|e| err(line, e.to_string()))?;
    }
    for i in 1..=n {
        if manifold.declared(i).is_none() {
            manifold.declare_d(i, Form::zero()).expect("undeclared index in range");
        }
    }
    Ok(manifold)
}

pub fn parse_ideal_file(text: &str, problem: &EdsProblem) -> Result<Vec<Form>, FileError> {
    let n = problem.base_dimension();
    let bundle = n * (n + 1);
    content_lines(text)
        .map(|(line, entry)| {
            let form = match entry.strip_prefix("d:") {
                Some(rest) => {
                    let theta = parse_form(n, rest).map_err(|e| err(line, e.to_string()))?;
                    problem.d(&theta).map_err(|e| err(line, e.to_string()))?
                }
                None => parse_form(bundle, entry).map_err(|e| err(line, e.to_string()))?,
            };
            Ok(form)
        })
        .collect()
}

/// Parses a flag such as `2,1,3` into a permutation of θ indices.
pub fn parse_flag(text: &str) -> Result<Vec<usize>, String> {
    text.split(',')
        .map(|s| s.trim().parse::<usize>().map_err(|_| format!("invalid flag entry `{}`", s.trim())))
        .collect()
}

//! Shared helpers for the line-based input formats.

use thiserror::Error;

/// Error in one of the line-based formats; `line` is 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError { line, message: message.into() }
    }
}

/// Non-blank lines with `#` comments removed, paired with 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

/// Splits `key: rest` into its trimmed parts.
pub(crate) fn split_header<'a>(line: &'a str, key: &str) -> Option<&'a str> {
    let rest = line.strip_prefix(key)?;
    let rest = rest.trim_start();
    rest.strip_prefix(':').map(str::trim)
}

/// Names may not contain whitespace or the separators used by the formats.
pub(crate) fn valid_name(name: &str) -> bool {
    !name.is_empty() && name != "->" && !name.contains(|c: char| c.is_whitespace() || c == ':' || c == '=' || c == '#')
}

/// Arrow and element names also appear in element literals, so they may not
/// contain `+` or `*` either.
pub(crate) fn valid_symbol(name: &str) -> bool {
    valid_name(name) && !name.contains(['+', '*'])
}

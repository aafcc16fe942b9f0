//! Helpers shared by the line-oriented text formats (edge lists, symbolic
//! maps, formulas).

use thiserror::Error;

/// A parse failure, pinned to a 1-based line number of the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

/// Yields `(line_number, trimmed_line)` for every line that is neither blank
/// nor a `#` comment.
pub(crate) fn content_lines(input: &str) -> impl Iterator<Item = (usize, &str)> {
    input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub(crate) fn parse_count(token: &str, line: usize, what: &str) -> Result<usize, ParseError> {
    if token.starts_with('-') {
        return Err(ParseError::new(line, format!("{what} must be non-negative, got `{token}`")));
    }
    token
        .parse::<usize>()
        .map_err(|_| ParseError::new(line, format!("invalid {what} `{token}`")))
}

/// Splits a line into exactly `N` whitespace-separated tokens.
pub(crate) fn exact_tokens<'a, const N: usize>(
    text: &'a str,
    line: usize,
    what: &str,
) -> Result<[&'a str; N], ParseError> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    tokens.try_into().map_err(|t: Vec<&str>| {
        ParseError::new(line, format!("{what}: expected {N} fields, found {}", t.len()))
    })
}

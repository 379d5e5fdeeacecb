//! Line tokenizing shared by the instance parsers.

use super::ParseError;

/// Non-empty, non-comment lines as `(line_number, tokens)`.
///
/// Lines whose first non-blank character is `#` or `%` are comments.
pub(crate) fn data_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with('%') {
            None
        } else {
            Some((i + 1, line.split_whitespace().collect()))
        }
    })
}

pub(crate) fn parse_usize(token: &str, line: usize, what: &str) -> Result<usize, ParseError> {
    token.parse().map_err(|_| ParseError::Malformed {
        line,
        reason: format!("expected {what}, found `{token}`"),
    })
}

pub(crate) fn parse_i64(token: &str, line: usize, what: &str) -> Result<i64, ParseError> {
    token.parse().map_err(|_| ParseError::Malformed {
        line,
        reason: format!("expected {what}, found `{token}`"),
    })
}

pub(crate) fn parse_f64(token: &str, line: usize, what: &str) -> Result<f64, ParseError> {
    match token.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(ParseError::Malformed {
            line,
            reason: format!("expected finite {what}, found `{token}`"),
        }),
    }
}

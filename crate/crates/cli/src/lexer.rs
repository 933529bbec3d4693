//! Whitespace tokenizer shared by the text formats.

use std::fmt;

use brick_core::scalar::parse_scalar;
use brick_core::Scalar;

/// A parse failure at a 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        Self { line, column, message: message.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Token<'a> {
    pub text: &'a str,
    /// 1-based, counted in characters.
    pub column: usize,
}

/// Splits a line on ASCII whitespace, keeping columns.
fn tokenize(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    for (column, (byte, ch)) in line.char_indices().enumerate() {
        match (ch.is_ascii_whitespace(), start) {
            (false, None) => start = Some((byte, column + 1)),
            (true, Some((b, c))) => {
                out.push(Token { text: &line[b..byte], column: c });
                start = None;
            }
            _ => {}
        }
    }
    if let Some((b, c)) = start {
        out.push(Token { text: &line[b..], column: c });
    }
    out
}

/// Non-blank, non-comment lines with their 1-based numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l)).filter(|(_, l)| {
        let t = l.trim_start();
        !t.is_empty() && !t.starts_with('#')
    })
}

/// Cursor over the tokens of one line.
pub(crate) struct Cursor<'a> {
    line_no: usize,
    line: &'a str,
    tokens: Vec<Token<'a>>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(line_no: usize, line: &'a str) -> Self {
        Self { line_no, line, tokens: tokenize(line), pos: 0 }
    }

    pub fn error_at(&self, token: Token<'_>, message: impl Into<String>) -> ParseError {
        ParseError::new(self.line_no, token.column, message)
    }

    fn end_column(&self) -> usize {
        self.line.chars().count() + 1
    }

    pub fn next(&mut self, what: &str) -> Result<Token<'a>, ParseError> {
        match self.tokens.get(self.pos) {
            Some(&t) => {
                self.pos += 1;
                Ok(t)
            }
            None => Err(ParseError::new(self.line_no, self.end_column(), format!("expected {what}, found end of line"))),
        }
    }

    pub fn keyword(&mut self, kw: &str) -> Result<Token<'a>, ParseError> {
        let t = self.next(&format!("`{kw}`"))?;
        if t.text != kw {
            return Err(self.error_at(t, format!("expected `{kw}`, found `{}`", t.text)));
        }
        Ok(t)
    }

    pub fn scalar(&mut self) -> Result<Scalar, ParseError> {
        let t = self.next("a number")?;
        parse_scalar(t.text)
            .ok_or_else(|| self.error_at(t, format!("`{}` is not an integer or fraction n/d", t.text)))
    }

    pub fn count(&mut self, what: &str) -> Result<u64, ParseError> {
        let t = self.next(what)?;
        if t.text.starts_with('-') && t.text[1..].bytes().all(|b| b.is_ascii_digit()) && t.text.len() > 1 {
            return Err(self.error_at(t, format!("{what} must not be negative, found `{}`", t.text)));
        }
        t.text.parse().map_err(|_| self.error_at(t, format!("expected {what} (a non-negative integer), found `{}`", t.text)))
    }

    /// Everything from the next token to the end of the line, trimmed.
    pub fn rest(&mut self, what: &str) -> Result<&'a str, ParseError> {
        let t = self.next(what)?;
        self.pos = self.tokens.len();
        let byte = self.line.char_indices().nth(t.column - 1).map(|(b, _)| b).unwrap_or(0);
        Ok(self.line[byte..].trim_end())
    }

    pub fn finish(&self) -> Result<(), ParseError> {
        match self.tokens.get(self.pos) {
            Some(&t) => Err(self.error_at(t, format!("unexpected `{}`", t.text))),
            None => Ok(()),
        }
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.tokens.len()
    }
}

use crate::dl::{is_ident_continue, is_ident_start, PropertyValue};
use crate::span::Span;

use super::ParseError;

/// Character-level scanner shared by the `.tdl`, `.tyml` and key/value
/// readers. Tokens are pulled on demand because property values are lexed
/// differently from the rest of the input.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Cursor<'s> {
    src: &'s str,
    pos: usize,
    line: u32,
    column: u32,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Mark {
    pos: usize,
    line: u32,
    column: u32,
}

impl<'s> Cursor<'s> {
    pub fn new(src: &'s str) -> Self {
        Cursor {
            src,
            pos: 0,
            line: 1,
            column: 1,
        }
    }

    fn rest(&self) -> &'s str {
        &self.src[self.pos..]
    }

    pub fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    pub fn at_eof(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    pub fn mark(&self) -> Mark {
        Mark {
            pos: self.pos,
            line: self.line,
            column: self.column,
        }
    }

    pub fn span_from(&self, mark: Mark) -> Span {
        Span::new(mark.pos, self.pos, mark.line, mark.column)
    }

    /// Skips whitespace, newlines and `//` comments.
    pub fn skip_trivia(&mut self) {
        loop {
            match self.peek() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('/') if self.rest().starts_with("//") => {
                    while !matches!(self.peek(), None | Some('\n')) {
                        self.bump();
                    }
                }
                _ => break,
            }
        }
    }

    /// Skips spaces and tabs only.
    pub fn skip_inline_space(&mut self) {
        while matches!(self.peek(), Some(' ' | '\t')) {
            self.bump();
        }
    }

    pub fn peek_ident(&self) -> Option<(&'s str, Span)> {
        let mut probe = *self;
        probe.ident()
    }

    pub fn ident(&mut self) -> Option<(&'s str, Span)> {
        if !self.peek().is_some_and(is_ident_start) {
            return None;
        }
        let mark = self.mark();
        while self.peek().is_some_and(is_ident_continue) {
            self.bump();
        }
        Some((&self.src[mark.pos..self.pos], self.span_from(mark)))
    }

    pub fn expect_ident(&mut self, expected: &str) -> Result<(String, Span), ParseError> {
        self.skip_trivia();
        match self.ident() {
            Some((word, span)) => Ok((word.to_string(), span)),
            None => Err(self.unexpected(expected)),
        }
    }

    pub fn expect_keyword(&mut self, keyword: &str) -> Result<Span, ParseError> {
        self.skip_trivia();
        match self.peek_ident() {
            Some((word, _)) if word == keyword => Ok(self.ident().expect("peeked").1),
            _ => Err(self.unexpected(&format!("`{keyword}`"))),
        }
    }

    pub fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn expect_char(&mut self, c: char) -> Result<(), ParseError> {
        self.skip_trivia();
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{c}`")))
        }
    }

    /// Consumes the remainder of the current line, excluding the newline.
    pub fn rest_of_line(&mut self) -> (&'s str, Span) {
        let mark = self.mark();
        while !matches!(self.peek(), None | Some('\n')) {
            self.bump();
        }
        (&self.src[mark.pos..self.pos], self.span_from(mark))
    }

    /// The lexeme at the current position, for diagnostics.
    fn lexeme(&self) -> (Option<String>, Span) {
        if let Some((word, span)) = self.peek_ident() {
            return (Some(word.to_string()), span);
        }
        match self.peek() {
            None => (None, Span::new(self.pos, self.pos, self.line, self.column)),
            Some(c) => (
                Some(c.to_string()),
                Span::new(self.pos, self.pos + c.len_utf8(), self.line, self.column),
            ),
        }
    }

    /// Error for the token at the current position.
    pub fn unexpected(&self, expected: &str) -> ParseError {
        let (found, span) = self.lexeme();
        ParseError {
            span,
            expected: expected.to_string(),
            found,
        }
    }

    /// Reads `= value` where `value` runs to the end of the line.
    pub fn property_value(&mut self) -> Result<(PropertyValue, Span), ParseError> {
        self.expect_char('=')?;
        self.skip_inline_space();
        let (raw, span) = self.rest_of_line();
        if raw.trim().is_empty() {
            return Err(self.unexpected("property value"));
        }
        parse_value(raw, span).map(|v| (v, span))
    }
}

/// Interprets the text after `=`: `[a, b]` is an array, `a, b` a list and
/// anything else a scalar.
pub(crate) fn parse_value(raw: &str, span: Span) -> Result<PropertyValue, ParseError> {
    let text = raw.trim();
    let fail = |expected: &str| ParseError {
        span,
        expected: expected.to_string(),
        found: (!text.is_empty()).then(|| raw.to_string()),
    };
    if text.is_empty() {
        return Err(ParseError {
            span,
            expected: "property value".into(),
            found: None,
        });
    }
    let split = |inner: &str, what: &str| -> Result<Vec<String>, ParseError> {
        inner
            .split(',')
            .map(|item| {
                let item = item.trim();
                if item.is_empty() {
                    Err(fail(what))
                } else {
                    Ok(item.to_string())
                }
            })
            .collect()
    };
    if let Some(body) = text.strip_prefix('[') {
        let Some(inner) = body.strip_suffix(']') else {
            return Err(fail("`]` closing the array"));
        };
        if inner.trim().is_empty() {
            return Ok(PropertyValue::Array(Vec::new()));
        }
        return split(inner, "non-empty array item").map(PropertyValue::Array);
    }
    if text.contains(',') {
        return split(text, "non-empty list item").map(PropertyValue::List);
    }
    Ok(PropertyValue::Scalar(text.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn value(s: &str) -> Result<PropertyValue, ParseError> {
        parse_value(s, Span::new(0, s.len(), 1, 1))
    }

    #[test]
    fn value_forms() {
        assert_eq!(
            value(" /opt/db:/var/lib ").unwrap(),
            PropertyValue::Scalar("/opt/db:/var/lib".into())
        );
        assert_eq!(
            value("a, b ,c").unwrap(),
            PropertyValue::List(vec!["a".into(), "b".into(), "c".into()])
        );
        assert_eq!(value("[ ]").unwrap(), PropertyValue::Array(vec![]));
        assert_eq!(
            value("[x=1, y]").unwrap(),
            PropertyValue::Array(vec!["x=1".into(), "y".into()])
        );
        assert_eq!(
            value("http://host//path=1").unwrap(),
            PropertyValue::Scalar("http://host//path=1".into())
        );
    }

    #[test]
    fn value_errors() {
        assert!(value("").is_err());
        assert!(value("[a, b").is_err());
        assert!(value("a,,b").is_err());
        assert!(value("[a, ]").is_err());
    }

    #[test]
    fn tracks_lines_and_columns() {
        let mut c = Cursor::new("  // note\n\tfoo bar");
        c.skip_trivia();
        let (word, span) = c.ident().unwrap();
        assert_eq!(word, "foo");
        assert_eq!(
            (span.line, span.column, span.start, span.end),
            (2, 2, 11, 14)
        );
    }
}

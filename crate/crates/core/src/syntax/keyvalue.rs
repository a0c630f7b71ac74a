use crate::dl::Property;

use super::{Cursor, ParseError};

/// Reads line-oriented `key = value` text (answers and catalog files).
///
/// Blank lines and lines starting with `#` or `//` are ignored. Values use
/// the same scalar/list/array forms as model properties.
pub fn parse_key_values(text: &str) -> Result<Vec<Property>, ParseError> {
    let mut cur = Cursor::new(text);
    let mut entries = Vec::new();
    loop {
        skip_blank_and_comments(&mut cur);
        if cur.at_eof() {
            return Ok(entries);
        }
        let start = cur.mark();
        let Some((key, _)) = cur.ident() else {
            return Err(cur.unexpected("key"));
        };
        cur.skip_inline_space();
        if cur.peek() != Some('=') {
            return Err(cur.unexpected("`=`"));
        }
        let (value, _) = cur.property_value()?;
        entries.push(Property {
            key: key.to_string(),
            value,
            span: cur.span_from(start),
        });
    }
}

fn skip_blank_and_comments(cur: &mut Cursor<'_>) {
    loop {
        cur.skip_trivia();
        if cur.peek() == Some('#') {
            cur.rest_of_line();
        } else {
            return;
        }
    }
}

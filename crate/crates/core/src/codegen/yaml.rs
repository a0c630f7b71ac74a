//! Minimal block-style YAML writer with a fixed layout: two-space indent,
//! sequence items indented under their key, and plain scalars wherever a
//! plain scalar reads back as the same string.

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Yaml {
    /// String, plain when safe, quoted otherwise.
    Str(String),
    /// String that is always single-quoted.
    Quoted(String),
    Int(i64),
    Seq(Vec<Yaml>),
    Map(Vec<(String, Yaml)>),
}

impl Yaml {
    pub fn str(s: impl Into<String>) -> Yaml {
        Yaml::Str(s.into())
    }

    pub fn seq<I, S>(items: I) -> Yaml
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Yaml::Seq(items.into_iter().map(|s| Yaml::Str(s.into())).collect())
    }

    pub fn map<K: Into<String>>(entries: impl IntoIterator<Item = (K, Yaml)>) -> Yaml {
        Yaml::Map(entries.into_iter().map(|(k, v)| (k.into(), v)).collect())
    }
}

/// Renders a document. The root is expected to be a mapping.
pub fn render(doc: &Yaml) -> String {
    let mut out = String::new();
    match doc {
        Yaml::Map(entries) => write_map(&mut out, entries, 0, false),
        other => {
            write_inline(&mut out, other);
            out.push('\n');
        }
    }
    out
}

fn pad(out: &mut String, indent: usize) {
    out.extend(std::iter::repeat_n(' ', indent));
}

fn write_map(out: &mut String, entries: &[(String, Yaml)], indent: usize, first_inline: bool) {
    for (i, (key, value)) in entries.iter().enumerate() {
        if !(first_inline && i == 0) {
            pad(out, indent);
        }
        out.push_str(&scalar(key));
        out.push(':');
        match value {
            Yaml::Map(m) if !m.is_empty() => {
                out.push('\n');
                write_map(out, m, indent + 2, false);
            }
            Yaml::Seq(s) if !s.is_empty() => {
                out.push('\n');
                write_seq(out, s, indent + 2);
            }
            other => {
                out.push(' ');
                write_inline(out, other);
                out.push('\n');
            }
        }
    }
}

fn write_seq(out: &mut String, items: &[Yaml], indent: usize) {
    for item in items {
        pad(out, indent);
        out.push('-');
        match item {
            Yaml::Map(m) if !m.is_empty() => {
                out.push(' ');
                write_map(out, m, indent + 2, true);
            }
            Yaml::Seq(s) if !s.is_empty() => {
                out.push('\n');
                write_seq(out, s, indent + 2);
            }
            other => {
                out.push(' ');
                write_inline(out, other);
                out.push('\n');
            }
        }
    }
}

fn write_inline(out: &mut String, value: &Yaml) {
    match value {
        Yaml::Str(s) => out.push_str(&scalar(s)),
        Yaml::Quoted(s) => out.push_str(&single_quoted(s)),
        Yaml::Int(n) => out.push_str(&n.to_string()),
        Yaml::Seq(_) => out.push_str("[]"),
        Yaml::Map(_) => out.push_str("{}"),
    }
}

fn scalar(s: &str) -> String {
    if s.chars().any(char::is_control) {
        double_quoted(s)
    } else if is_plain_safe(s) {
        s.to_string()
    } else {
        single_quoted(s)
    }
}

fn single_quoted(s: &str) -> String {
    format!("'{}'", s.replace('\'', "''"))
}

fn double_quoted(s: &str) -> String {
    let mut out = String::from("\"");
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            c if c.is_control() => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Words that YAML 1.1 or 1.2 resolvers turn into booleans or null.
const RESERVED_WORDS: &[&str] = &[
    "null", "Null", "NULL", "~", "true", "True", "TRUE", "false", "False", "FALSE", "y", "Y",
    "yes", "Yes", "YES", "n", "N", "no", "No", "NO", "on", "On", "ON", "off", "Off", "OFF",
];

/// True when `s` can be written as a plain scalar and still read back as
/// the string `s`.
pub fn is_plain_safe(s: &str) -> bool {
    let Some(first) = s.chars().next() else {
        return false;
    };
    if s.trim() != s || RESERVED_WORDS.contains(&s) || looks_numeric(s) {
        return false;
    }
    let second = s.chars().nth(1);
    let leading_ok = match first {
        '-' | '?' | ':' => second.is_some_and(|c| !c.is_whitespace()),
        ',' | '[' | ']' | '{' | '}' | '#' | '&' | '*' | '!' | '|' | '>' | '\'' | '"' | '%'
        | '@' | '`' => false,
        _ => true,
    };
    if !leading_ok || s == "---" || s == "..." {
        return false;
    }
    !(s.contains(": ") || s.contains(" #") || s.ends_with(':'))
}

fn looks_numeric(s: &str) -> bool {
    let body = s.strip_prefix(['+', '-']).unwrap_or(s);
    let lower = body.to_ascii_lowercase();
    if matches!(lower.as_str(), ".inf" | ".nan" | "inf" | "nan" | "infinity") {
        return true;
    }
    if let Some(digits) = lower
        .strip_prefix("0x")
        .or_else(|| lower.strip_prefix("0o"))
    {
        return !digits.is_empty() && digits.chars().all(|c| c.is_ascii_hexdigit() || c == '_');
    }
    if body.parse::<f64>().is_ok() {
        return true;
    }
    // YAML 1.1 integers with separators (1_000) and base-60 numbers (1:30)
    let mut saw_digit = false;
    for c in body.chars() {
        match c {
            '0'..='9' => saw_digit = true,
            '_' | '.' => {}
            ':' => {}
            _ => return false,
        }
    }
    saw_digit && !body.contains(':') || is_sexagesimal(body)
}

fn is_sexagesimal(s: &str) -> bool {
    let mut parts = s.split(':');
    let Some(head) = parts.next() else {
        return false;
    };
    if head.is_empty() || !head.chars().all(|c| c.is_ascii_digit() || c == '_') {
        return false;
    }
    let rest: Vec<&str> = parts.collect();
    !rest.is_empty()
        && rest.iter().all(|p| {
            let int = p.split('.').next().unwrap_or("");
            (1..=2).contains(&int.len())
                && int.chars().all(|c| c.is_ascii_digit())
                && int.parse::<u32>().is_ok_and(|v| v < 60)
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout() {
        let doc = Yaml::map([
            ("version", Yaml::Quoted("3.7".into())),
            (
                "services",
                Yaml::map([(
                    "db",
                    Yaml::map([
                        ("image", Yaml::str("mariadb:10")),
                        ("networks", Yaml::seq(["net"])),
                    ]),
                )]),
            ),
            (
                "items",
                Yaml::Seq(vec![Yaml::map([
                    ("name", Yaml::str("a")),
                    ("value", Yaml::Int(1)),
                ])]),
            ),
            ("empty", Yaml::Map(vec![])),
        ]);
        assert_eq!(
            render(&doc),
            "version: '3.7'\nservices:\n  db:\n    image: mariadb:10\n    networks:\n      - net\n\
             items:\n  - name: a\n    value: 1\nempty: {}\n"
        );
    }

    #[test]
    fn quoting_decisions() {
        for plain in [
            "mariadb:10.3.7-utf8",
            "/opt/locman-staging/db:/var/lib",
            "MYSQL_ROOT_PASSWORD=geheim",
            "8086:8086",
            "-Xmx1g",
            "a b",
            "gitlab.dummy.de:5555/atb/x",
        ] {
            assert!(is_plain_safe(plain), "{plain}");
        }
        for quoted in [
            "", " x", "3306", "1.5", "1e3", "true", "yes", "off", "~", "null", "0x1F", "- x",
            "a: b", "a #b", "x:", "[a]", "*ref", "'q'", "1:30", "1_000", ".inf",
        ] {
            assert!(!is_plain_safe(quoted), "{quoted:?}");
        }
        assert_eq!(scalar("it's: x"), "'it''s: x'");
        assert_eq!(scalar("a\tb"), "\"a\\tb\"");
    }
}

/// Source location of a syntax node.
///
/// `start`/`end` are byte offsets into the source text, `line` and `column`
/// are 1-based and refer to `start`. Nodes built programmatically carry
/// [`Span::default`], whose line and column are 0.
#[derive(Debug, Clone, Copy, Default, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
    pub line: u32,
    pub column: u32,
}

impl Span {
    pub fn new(start: usize, end: usize, line: u32, column: u32) -> Self {
        debug_assert!(start <= end);
        Span {
            start,
            end,
            line,
            column,
        }
    }

    /// True for spans that point into real source text.
    pub fn is_known(&self) -> bool {
        self.line > 0
    }
}

/// Spans never take part in structural comparison of syntax trees, so a
/// parsed model equals the same model built by hand.
impl PartialEq for Span {
    fn eq(&self, _other: &Self) -> bool {
        true
    }
}

impl std::fmt::Display for Span {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

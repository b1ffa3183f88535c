//! Positioned error reports shared by the parser, checker and driver.

use std::fmt;

/// A source region. Lines and columns are 1-based; columns count characters.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Span {
    pub start: usize,
    pub end: usize,
    pub line: usize,
    pub col: usize,
}

impl Span {
    pub fn new(start: usize, end: usize, line: usize, col: usize) -> Self {
        Span {
            start,
            end,
            line,
            col,
        }
    }

    /// Smallest span covering both.
    pub fn join(self, other: Span) -> Span {
        let (first, _) = if self.start <= other.start {
            (self, other)
        } else {
            (other, self)
        };
        Span {
            start: first.start,
            end: self.end.max(other.end),
            line: first.line,
            col: first.col,
        }
    }

    pub fn contains(&self, inner: &Span) -> bool {
        self.start <= inner.start && inner.end <= self.end
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Severity {
    Warning,
    Error,
}

/// What stage produced a diagnostic. Ordered by how severe the failure is
/// for the command-line exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DiagnosticKind {
    Type,
    Parse,
    Budget,
    Io,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub kind: DiagnosticKind,
    pub file: String,
    pub span: Span,
    pub message: String,
    /// Pretty-printed expected and actual terms, when the error is a mismatch.
    pub expected_actual: Option<(String, String)>,
}

impl Diagnostic {
    pub fn error(kind: DiagnosticKind, span: Span, message: impl Into<String>) -> Self {
        let mut message = message.into();
        if message.is_empty() {
            message.push_str("error");
        }
        Diagnostic {
            severity: Severity::Error,
            kind,
            file: String::new(),
            span: Span {
                line: span.line.max(1),
                col: span.col.max(1),
                ..span
            },
            message,
            expected_actual: None,
        }
    }

    pub fn parse(span: Span, message: impl Into<String>) -> Self {
        Self::error(DiagnosticKind::Parse, span, message)
    }

    pub fn type_error(span: Span, message: impl Into<String>) -> Self {
        Self::error(DiagnosticKind::Type, span, message)
    }

    pub fn with_file(mut self, file: impl Into<String>) -> Self {
        self.file = file.into();
        self
    }

    pub fn with_expected_actual(mut self, expected: String, actual: String) -> Self {
        self.expected_actual = Some((expected, actual));
        self
    }

    pub fn line(&self) -> usize {
        self.span.line
    }

    pub fn col(&self) -> usize {
        self.span.col
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let severity = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        let file = if self.file.is_empty() {
            "<input>"
        } else {
            &self.file
        };
        write!(
            f,
            "{}:{}:{}: {}: {}",
            file, self.span.line, self.span.col, severity, self.message
        )?;
        if let Some((expected, actual)) = &self.expected_actual {
            write!(f, "\n    expected: {expected}\n    actual:   {actual}")?;
        }
        Ok(())
    }
}

impl std::error::Error for Diagnostic {}

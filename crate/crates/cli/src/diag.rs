//! Located diagnostics for definition files.

use std::fmt;

use thiserror::Error;

/// A 1-based line and column (in characters).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl Pos {
    pub fn new(line: usize, col: usize) -> Self {
        Pos { line, col }
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagKind {
    Syntax,
    Duplicate,
    Dangling,
    Invalid,
}

impl fmt::Display for DiagKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DiagKind::Syntax => "syntax error",
            DiagKind::Duplicate => "duplicate name",
            DiagKind::Dangling => "unknown name",
            DiagKind::Invalid => "invalid definition",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{}{pos}: {kind}: {message}", file.as_deref().map(|f| format!("{f}:")).unwrap_or_default())]
pub struct Diagnostic {
    pub file: Option<String>,
    pub pos: Pos,
    pub kind: DiagKind,
    pub message: String,
}

impl Diagnostic {
    pub fn new(kind: DiagKind, pos: Pos, message: impl Into<String>) -> Self {
        Diagnostic {
            file: None,
            pos,
            kind,
            message: message.into(),
        }
    }

    pub fn syntax(pos: Pos, message: impl Into<String>) -> Self {
        Diagnostic::new(DiagKind::Syntax, pos, message)
    }

    pub fn invalid(pos: Pos, message: impl Into<String>) -> Self {
        Diagnostic::new(DiagKind::Invalid, pos, message)
    }

    pub fn in_file(mut self, file: impl Into<String>) -> Self {
        self.file.get_or_insert_with(|| file.into());
        self
    }
}

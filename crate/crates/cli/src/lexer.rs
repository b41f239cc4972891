//! Tokens of the definition language.

use std::fmt;

use crate::diag::{Diagnostic, Pos};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(i64),
    Str(String),
    Punct(&'static str),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Str(s) => write!(f, "{s:?}"),
            Tok::Punct(p) => write!(f, "`{p}`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

// longest first
const PUNCTS: &[&str] = &[
    "..", "->", "=>", "==", "!=", "<=", ">=", "&&", "||", "↦", "∧", "∨", "¬", "∈", "∉", "·", "≠",
    "≤", "≥", ";", "=", "<", ">", "+", "-", "*", "/", "%", "(", ")", "{", "}", "[", "]", ",", "?",
    ":", "!",
];

/// On-demand tokenizer with one token of lookahead. Machine bodies are read
/// as raw text through [`Lexer::raw_block`].
pub struct Lexer {
    chars: Vec<char>,
    at: usize,
    line: usize,
    col: usize,
    peeked: Option<Token>,
}

impl Lexer {
    pub fn new(src: &str) -> Self {
        Lexer {
            chars: src.chars().collect(),
            at: 0,
            line: 1,
            col: 1,
            peeked: None,
        }
    }

    fn pos(&self) -> Pos {
        Pos::new(self.line, self.col)
    }

    fn bump(&mut self) -> Option<char> {
        let c = *self.chars.get(self.at)?;
        self.at += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn look(&self, ahead: usize) -> Option<char> {
        self.chars.get(self.at + ahead).copied()
    }

    fn skip_trivia(&mut self) {
        loop {
            match self.look(0) {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('#') => self.skip_line(),
                Some('/') if self.look(1) == Some('/') => self.skip_line(),
                _ => return,
            }
        }
    }

    fn skip_line(&mut self) {
        while let Some(c) = self.bump() {
            if c == '\n' {
                break;
            }
        }
    }

    pub fn peek(&mut self) -> Result<&Token, Diagnostic> {
        if self.peeked.is_none() {
            let t = self.lex()?;
            self.peeked = Some(t);
        }
        Ok(self.peeked.as_ref().expect("just filled"))
    }

    pub fn next_token(&mut self) -> Result<Token, Diagnostic> {
        match self.peeked.take() {
            Some(t) => Ok(t),
            None => self.lex(),
        }
    }

    /// Position of the next token.
    pub fn here(&mut self) -> Result<Pos, Diagnostic> {
        Ok(self.peek()?.pos)
    }

    /// Text up to the next `}` (which is consumed), and where it starts.
    /// Must be called right after the opening `{` was taken.
    pub fn raw_block(&mut self) -> Result<(String, Pos), Diagnostic> {
        debug_assert!(self.peeked.is_none(), "raw block after a peek");
        let start = self.pos();
        let mut text = String::new();
        loop {
            match self.bump() {
                Some('}') => return Ok((text, start)),
                Some(c) => text.push(c),
                None => return Err(Diagnostic::syntax(start, "unclosed `{`")),
            }
        }
    }

    fn lex(&mut self) -> Result<Token, Diagnostic> {
        self.skip_trivia();
        let pos = self.pos();
        let Some(c) = self.look(0) else {
            return Ok(Token { tok: Tok::Eof, pos });
        };
        let tok =
            if c.is_ascii_digit() {
                let mut digits = String::new();
                while let Some(d) = self.look(0).filter(char::is_ascii_digit) {
                    digits.push(d);
                    self.bump();
                }
                Tok::Int(digits.parse().map_err(|_| {
                    Diagnostic::syntax(pos, format!("integer {digits} is too large"))
                })?)
            } else if c.is_alphabetic() || c == '_' {
                let mut word = String::new();
                while let Some(d) = self
                    .look(0)
                    .filter(|d| d.is_alphanumeric() || *d == '_' || *d == '\'')
                {
                    word.push(d);
                    self.bump();
                }
                Tok::Ident(word)
            } else if c == '"' {
                self.bump();
                let mut s = String::new();
                loop {
                    match self.bump() {
                        Some('"') => break,
                        Some('\\') => match self.bump() {
                            Some('n') => s.push('\n'),
                            Some(e @ ('"' | '\\')) => s.push(e),
                            _ => return Err(Diagnostic::syntax(pos, "bad escape in string")),
                        },
                        Some('\n') | None => {
                            return Err(Diagnostic::syntax(pos, "unterminated string"))
                        }
                        Some(ch) => s.push(ch),
                    }
                }
                Tok::Str(s)
            } else {
                let rest: String = self.chars[self.at..].iter().take(2).collect();
                let Some(p) = PUNCTS.iter().find(|p| rest.starts_with(**p)) else {
                    return Err(Diagnostic::syntax(
                        pos,
                        format!("unexpected character {c:?}"),
                    ));
                };
                for _ in 0..p.chars().count() {
                    self.bump();
                }
                Tok::Punct(p)
            };
        Ok(Token { tok, pos })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all(src: &str) -> Vec<Tok> {
        let mut lx = Lexer::new(src);
        let mut out = Vec::new();
        loop {
            let t = lx.next_token().unwrap();
            if t.tok == Tok::Eof {
                return out;
            }
            out.push(t.tok);
        }
    }

    #[test]
    fn tokens_and_positions() {
        let toks = all("universe U = 0..10; # comment\nproblem p = x ? 2*x == x·x ∧ ¬(x ∈ {1});");
        assert_eq!(toks[3], Tok::Int(0));
        assert_eq!(toks[4], Tok::Punct(".."));
        assert!(toks.contains(&Tok::Punct("·")));
        assert!(toks.contains(&Tok::Punct("∧")));
        let mut lx = Lexer::new("a\n  \"s\\\"q\"");
        lx.next_token().unwrap();
        let t = lx.next_token().unwrap();
        assert_eq!((t.tok, t.pos), (Tok::Str("s\"q".into()), Pos::new(2, 3)));
    }

    #[test]
    fn raw_blocks_and_errors() {
        let mut lx = Lexer::new("{ q0 _ -> q0 ⊤ h\n} ;");
        assert_eq!(lx.next_token().unwrap().tok, Tok::Punct("{"));
        let (text, at) = lx.raw_block().unwrap();
        assert_eq!((text.trim(), at), ("q0 _ -> q0 ⊤ h", Pos::new(1, 2)));
        assert_eq!(lx.next_token().unwrap().tok, Tok::Punct(";"));
        let err = Lexer::new("\n  @").next_token().unwrap_err();
        assert_eq!(err.pos, Pos::new(2, 3));
    }
}

//! Tokenizer shared by the polynomial syntax and the diagram language.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

/// 1-based line/column position in the source text.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl Pos {
    pub const fn new(line: usize, column: usize) -> Self {
        Pos { line, column }
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TokenKind {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Semi,
    Eof,
}

impl TokenKind {
    /// Human-readable name used in "expected ..." lists.
    pub fn describe(&self) -> String {
        match self {
            TokenKind::Ident(s) => alloc::format!("identifier `{}`", s),
            TokenKind::Int(n) => alloc::format!("integer `{}`", n),
            TokenKind::Plus => "`+`".to_string(),
            TokenKind::Minus => "`-`".to_string(),
            TokenKind::Star => "`*`".to_string(),
            TokenKind::Caret => "`^`".to_string(),
            TokenKind::LParen => "`(`".to_string(),
            TokenKind::RParen => "`)`".to_string(),
            TokenKind::Semi => "`;`".to_string(),
            TokenKind::Eof => "end of input".to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub pos: Pos,
}

/// Error produced anywhere in the textual front end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub pos: Pos,
    pub message: String,
    pub expected: Vec<String>,
}

impl ParseError {
    pub fn new(pos: Pos, message: impl Into<String>) -> Self {
        ParseError {
            pos,
            message: message.into(),
            expected: Vec::new(),
        }
    }

    pub fn expecting(pos: Pos, message: impl Into<String>, expected: &[&str]) -> Self {
        ParseError {
            pos,
            message: message.into(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at {}: {}", self.pos, self.message)?;
        match self.expected.as_slice() {
            [] => {}
            [one] => write!(f, " (expected {})", one)?,
            many => write!(f, " (expected one of: {})", many.join(", "))?,
        }
        Ok(())
    }
}

impl core::error::Error for ParseError {}

pub fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut column = 1;
    let mut chars = src.chars().peekable();

    while let Some(&ch) = chars.peek() {
        let pos = Pos::new(line, column);
        if ch == '\n' {
            chars.next();
            line += 1;
            column = 1;
            continue;
        }
        if ch.is_whitespace() {
            chars.next();
            column += 1;
            continue;
        }
        if ch.is_ascii_digit() {
            let mut digits = String::new();
            while let Some(&d) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                digits.push(d);
                chars.next();
                column += 1;
            }
            let n: BigInt = digits
                .parse()
                .map_err(|_| ParseError::new(pos, "malformed integer literal"))?;
            out.push(Token {
                kind: TokenKind::Int(n),
                pos,
            });
            continue;
        }
        if ch.is_ascii_alphabetic() || ch == '_' {
            let mut name = String::new();
            while let Some(&c) = chars.peek() {
                if !(c.is_ascii_alphanumeric() || c == '_') {
                    break;
                }
                name.push(c);
                chars.next();
                column += 1;
            }
            out.push(Token {
                kind: TokenKind::Ident(name),
                pos,
            });
            continue;
        }
        let kind = match ch {
            '+' => TokenKind::Plus,
            '-' => TokenKind::Minus,
            '*' => TokenKind::Star,
            '^' => TokenKind::Caret,
            '(' => TokenKind::LParen,
            ')' => TokenKind::RParen,
            ';' => TokenKind::Semi,
            other => {
                return Err(ParseError::new(
                    pos,
                    alloc::format!("unexpected character `{}`", other),
                ))
            }
        };
        chars.next();
        column += 1;
        out.push(Token { kind, pos });
    }
    out.push(Token {
        kind: TokenKind::Eof,
        pos: Pos::new(line, column),
    });
    Ok(out)
}

/// Cursor over a token vector; always ends in `Eof`.
pub struct Cursor {
    tokens: Vec<Token>,
    at: usize,
}

impl Cursor {
    pub fn new(src: &str) -> Result<Self, ParseError> {
        Ok(Cursor {
            tokens: tokenize(src)?,
            at: 0,
        })
    }

    pub fn peek(&self) -> &Token {
        &self.tokens[self.at]
    }

    pub fn bump(&mut self) -> Token {
        let t = self.tokens[self.at].clone();
        if self.at + 1 < self.tokens.len() {
            self.at += 1;
        }
        t
    }

    pub fn eat(&mut self, kind: &TokenKind) -> bool {
        if &self.peek().kind == kind {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, kind: TokenKind, what: &str) -> Result<Token, ParseError> {
        if self.peek().kind == kind {
            Ok(self.bump())
        } else {
            let t = self.peek();
            Err(ParseError::expecting(
                t.pos,
                alloc::format!("found {}", t.kind.describe()),
                &[what],
            ))
        }
    }

    pub fn expect_eof(&mut self) -> Result<(), ParseError> {
        let t = self.peek();
        if t.kind == TokenKind::Eof {
            Ok(())
        } else {
            Err(ParseError::expecting(
                t.pos,
                alloc::format!("unexpected {}", t.kind.describe()),
                &["end of input"],
            ))
        }
    }
}

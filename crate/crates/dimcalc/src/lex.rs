//! Shared tokenizer for unit expressions, dimension expressions, and
//! equations. Columns are 1-based and refer to the input slice handed in.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    /// Digit-led token; may contain dots (decimals are recombined by callers
    /// that expect them).
    Number(String),
    Caret,
    Star,
    Slash,
    Plus,
    Minus,
    Eq,
    Colon,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Spanned {
    pub tok: Tok,
    pub col: usize,
}

pub(crate) fn tokenize(text: &str, line: usize) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            '^' => Tok::Caret,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '=' => Tok::Eq,
            ':' => Tok::Colon,
            _ if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                    i += 1;
                }
                out.push(Spanned {
                    tok: Tok::Number(chars[start..i].iter().collect()),
                    col,
                });
                continue;
            }
            _ if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_ascii_alphanumeric() || chars[i] == '_')
                {
                    i += 1;
                }
                out.push(Spanned {
                    tok: Tok::Ident(chars[start..i].iter().collect()),
                    col,
                });
                continue;
            }
            _ => {
                return Err(Error::ParseError {
                    line,
                    col,
                    msg: format!("unexpected character `{c}`"),
                })
            }
        };
        out.push(Spanned { tok, col });
        i += 1;
    }
    Ok(out)
}

/// Cursor over a token stream with positioned error helpers.
pub(crate) struct Cursor {
    toks: Vec<Spanned>,
    pos: usize,
    line: usize,
    end_col: usize,
}

impl Cursor {
    pub fn new(text: &str, line: usize) -> Result<Self> {
        Ok(Self {
            toks: tokenize(text, line)?,
            pos: 0,
            line,
            end_col: text.chars().count() + 1,
        })
    }

    pub fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    pub fn next(&mut self) -> Option<Spanned> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    pub fn col(&self) -> usize {
        self.toks
            .get(self.pos)
            .map_or(self.end_col, |s| s.col)
    }

    pub fn error(&self, msg: impl Into<String>) -> Error {
        Error::ParseError {
            line: self.line,
            col: self.col(),
            msg: msg.into(),
        }
    }

    /// Consumes `^` followed by an optionally signed integer.
    pub fn parse_exponent(&mut self) -> Result<i64> {
        // Caller has consumed the caret.
        let mut negative = false;
        match self.peek() {
            Some(Tok::Minus) => {
                negative = true;
                self.next();
            }
            Some(Tok::Plus) => {
                self.next();
            }
            _ => {}
        }
        match self.next() {
            Some(Spanned {
                tok: Tok::Number(n),
                col,
            }) => {
                let value: i64 = n.parse().map_err(|_| Error::ParseError {
                    line: self.line,
                    col,
                    msg: format!("invalid integer exponent `{n}`"),
                })?;
                Ok(if negative { -value } else { value })
            }
            _ => Err(self.error("expected integer exponent after `^`")),
        }
    }
}

//! Tokenizer shared by the process, resource-literal and assertion parsers.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    /// `#name`
    Const(String),
    /// identifier starting with a lowercase letter
    Lower(String),
    /// identifier starting with an uppercase letter
    Upper(String),
    Zero,
    New,
    Rec,
    Bang,
    Quest,
    Dot,
    LParen,
    RParen,
    Plus,
    /// `(+)`
    IPlus,
    Bar,
    LBrace,
    RBrace,
    Colon,
    Comma,
    At,
    /// `/\`
    And,
    /// `\/`
    Or,
    Star,
    Eq,
    /// `!=`
    Neq,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Const(c) => format!("constant #{c}"),
            Tok::Lower(s) | Tok::Upper(s) => format!("identifier `{s}`"),
            Tok::Zero => "`0`".into(),
            Tok::New => "`new`".into(),
            Tok::Rec => "`rec`".into(),
            Tok::Bang => "`!`".into(),
            Tok::Quest => "`?`".into(),
            Tok::Dot => "`.`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Plus => "`+`".into(),
            Tok::IPlus => "`(+)`".into(),
            Tok::Bar => "`|`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Comma => "`,`".into(),
            Tok::At => "`@`".into(),
            Tok::And => "`/\\`".into(),
            Tok::Or => "`\\/`".into(),
            Tok::Star => "`*`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Neq => "`!=`".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Spanned {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

/// Splits `text` into tokens. `--` starts a comment running to end of line.
pub(crate) fn tokenize(text: &str) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let lex_err = |line, col, message: String| Error::Lexical { line, col, message };

    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        let advance = |n: usize, i: &mut usize, col: &mut usize| {
            *i += n;
            *col += n;
        };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            advance(1, &mut i, &mut col);
            continue;
        }
        if c == '-' && chars.get(i + 1) == Some(&'-') {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let peek = chars.get(i + 1).copied();
        let tok = match c {
            '#' => {
                let start = i + 1;
                let mut j = start;
                while j < chars.len() && is_ident_char(chars[j]) {
                    j += 1;
                }
                if j == start {
                    return Err(lex_err(tl, tc, "`#` must be followed by a channel name".into()));
                }
                let name: String = chars[start..j].iter().collect();
                advance(j - i, &mut i, &mut col);
                out.push(Spanned { tok: Tok::Const(name), line: tl, col: tc });
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                let mut j = i;
                while j < chars.len() && is_ident_char(chars[j]) {
                    j += 1;
                }
                let word: String = chars[i..j].iter().collect();
                advance(j - i, &mut i, &mut col);
                let tok = match word.as_str() {
                    "new" => Tok::New,
                    "rec" => Tok::Rec,
                    _ if c.is_ascii_lowercase() => Tok::Lower(word),
                    _ => Tok::Upper(word),
                };
                out.push(Spanned { tok, line: tl, col: tc });
                continue;
            }
            c if c.is_ascii_digit() => {
                let mut j = i;
                while j < chars.len() && is_ident_char(chars[j]) {
                    j += 1;
                }
                let word: String = chars[i..j].iter().collect();
                if word != "0" {
                    return Err(lex_err(tl, tc, format!("malformed token `{word}`")));
                }
                advance(1, &mut i, &mut col);
                out.push(Spanned { tok: Tok::Zero, line: tl, col: tc });
                continue;
            }
            '(' if peek == Some('+') && chars.get(i + 2) == Some(&')') => {
                advance(3, &mut i, &mut col);
                out.push(Spanned { tok: Tok::IPlus, line: tl, col: tc });
                continue;
            }
            '/' if peek == Some('\\') => {
                advance(2, &mut i, &mut col);
                out.push(Spanned { tok: Tok::And, line: tl, col: tc });
                continue;
            }
            '\\' if peek == Some('/') => {
                advance(2, &mut i, &mut col);
                out.push(Spanned { tok: Tok::Or, line: tl, col: tc });
                continue;
            }
            '!' if peek == Some('=') => {
                advance(2, &mut i, &mut col);
                out.push(Spanned { tok: Tok::Neq, line: tl, col: tc });
                continue;
            }
            '!' => Tok::Bang,
            '?' => Tok::Quest,
            '.' => Tok::Dot,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '+' => Tok::Plus,
            '|' => Tok::Bar,
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            ':' => Tok::Colon,
            ',' => Tok::Comma,
            '@' => Tok::At,
            '*' => Tok::Star,
            '=' => Tok::Eq,
            other => {
                return Err(lex_err(tl, tc, format!("unexpected character {other:?}")));
            }
        };
        advance(1, &mut i, &mut col);
        out.push(Spanned { tok, line: tl, col: tc });
    }
    Ok(out)
}

/// Cursor over a token stream with position-aware error reporting.
pub(crate) struct Cursor {
    toks: Vec<Spanned>,
    pos: usize,
    end: (usize, usize),
}

impl Cursor {
    pub(crate) fn new(text: &str) -> Result<Self> {
        let toks = tokenize(text)?;
        let last_line = text.split('\n').count().max(1);
        let last_col = text.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        Ok(Cursor { toks, pos: 0, end: (last_line, last_col) })
    }

    pub(crate) fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    pub(crate) fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|s| s.tok.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    pub(crate) fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map_or(self.end, |s| (s.line, s.col))
    }

    pub(crate) fn error(&self, message: impl Into<String>) -> Error {
        let (line, col) = self.here();
        Error::Syntax { line, col, message: message.into() }
    }

    /// Error positioned at the token just consumed.
    pub(crate) fn error_prev(&self, message: impl Into<String>) -> Error {
        let (line, col) = self
            .toks
            .get(self.pos.saturating_sub(1))
            .map_or(self.end, |s| (s.line, s.col));
        Error::Syntax { line, col, message: message.into() }
    }

    pub(crate) fn unexpected(&self, wanted: &str) -> Error {
        match self.peek() {
            Some(t) => self.error(format!("expected {wanted}, found {}", t.describe())),
            None => self.error(format!("expected {wanted}, found end of input")),
        }
    }

    pub(crate) fn expect(&mut self, tok: Tok) -> Result<()> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.unexpected(&tok.describe()))
        }
    }

    pub(crate) fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn finish(&self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.unexpected("end of input"))
        }
    }
}

use std::fmt;

use super::diag::Diagnostic;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Keyword {
    Bench,
    Param,
    Node,
    Link,
    Detector,
    On,
}

impl Keyword {
    fn from_ident(s: &str) -> Option<Keyword> {
        Some(match s {
            "bench" => Keyword::Bench,
            "param" => Keyword::Param,
            "node" => Keyword::Node,
            "link" => Keyword::Link,
            "detector" => Keyword::Detector,
            "on" => Keyword::On,
            _ => return None,
        })
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Keyword::Bench => "bench",
            Keyword::Param => "param",
            Keyword::Node => "node",
            Keyword::Link => "link",
            Keyword::Detector => "detector",
            Keyword::On => "on",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum TokenKind {
    Keyword(Keyword),
    Ident(String),
    Number(f64),
    Colon,
    LParen,
    RParen,
    Eq,
    Comma,
    Dot,
    Arrow,
    Eof,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenKind::Keyword(k) => write!(f, "`{}`", k.as_str()),
            TokenKind::Ident(s) => write!(f, "identifier `{s}`"),
            TokenKind::Number(x) => write!(f, "number `{x}`"),
            TokenKind::Colon => f.write_str("`:`"),
            TokenKind::LParen => f.write_str("`(`"),
            TokenKind::RParen => f.write_str("`)`"),
            TokenKind::Eq => f.write_str("`=`"),
            TokenKind::Comma => f.write_str("`,`"),
            TokenKind::Dot => f.write_str("`.`"),
            TokenKind::Arrow => f.write_str("`->`"),
            TokenKind::Eof => f.write_str("end of file"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub kind: TokenKind,
    pub line: usize,
    pub column: usize,
}

/// A bench description and the name it is reported under.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchSource {
    pub name: String,
    pub text: String,
}

impl BenchSource {
    pub fn new(name: impl Into<String>, text: impl Into<String>) -> BenchSource {
        BenchSource { name: name.into(), text: text.into() }
    }
}

/// Splits source text into tokens terminated by [`TokenKind::Eof`].
pub fn tokenize(src: &BenchSource) -> Result<Vec<Token>, Vec<Diagnostic>> {
    let (tokens, diags) = tokenize_lenient(&src.text);
    if diags.is_empty() {
        Ok(tokens)
    } else {
        Err(diags)
    }
}

/// Like [`tokenize`], but skips illegal characters and keeps going.
pub fn tokenize_lenient(text: &str) -> (Vec<Token>, Vec<Diagnostic>) {
    let mut tokens = Vec::new();
    let mut diags = Vec::new();
    let mut last_line = 1;
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let ch = chars[i];
            let col = i + 1;
            let tok = |kind| Token { kind, line: line_no, column: col };
            match ch {
                '#' => break,
                c if c.is_whitespace() => i += 1,
                ':' | '(' | ')' | '=' | ',' | '.' => {
                    let kind = match ch {
                        ':' => TokenKind::Colon,
                        '(' => TokenKind::LParen,
                        ')' => TokenKind::RParen,
                        '=' => TokenKind::Eq,
                        ',' => TokenKind::Comma,
                        _ => TokenKind::Dot,
                    };
                    // `.5` is a number, not a dot
                    if ch == '.' && chars.get(i + 1).is_some_and(|c| c.is_ascii_digit()) {
                        let (len, value) = lex_number(&chars[i..]);
                        push_number(&mut tokens, &mut diags, value, line_no, col);
                        i += len;
                    } else {
                        tokens.push(tok(kind));
                        i += 1;
                    }
                }
                '-' if chars.get(i + 1) == Some(&'>') => {
                    tokens.push(tok(TokenKind::Arrow));
                    i += 2;
                }
                '-' | '+' if chars.get(i + 1).is_some_and(|c| c.is_ascii_digit() || *c == '.') => {
                    let (len, value) = lex_number(&chars[i..]);
                    push_number(&mut tokens, &mut diags, value, line_no, col);
                    i += len;
                }
                c if c.is_ascii_digit() => {
                    let (len, value) = lex_number(&chars[i..]);
                    push_number(&mut tokens, &mut diags, value, line_no, col);
                    i += len;
                }
                c if c.is_ascii_alphabetic() || c == '_' => {
                    let start = i;
                    while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                        i += 1;
                    }
                    let word: String = chars[start..i].iter().collect();
                    let kind = match Keyword::from_ident(&word) {
                        Some(k) => TokenKind::Keyword(k),
                        None => TokenKind::Ident(word),
                    };
                    tokens.push(tok(kind));
                }
                other => {
                    diags.push(Diagnostic::error(
                        line_no,
                        col,
                        format!("illegal character `{}`", other.escape_default()),
                    ));
                    i += 1;
                }
            }
        }
    }
    // Eof stays on the last source line so diagnostics never point past it
    tokens.push(Token { kind: TokenKind::Eof, line: last_line, column: 1 });
    (tokens, diags)
}

fn push_number(tokens: &mut Vec<Token>, diags: &mut Vec<Diagnostic>, value: Option<f64>, line: usize, column: usize) {
    match value {
        Some(x) => tokens.push(Token { kind: TokenKind::Number(x), line, column }),
        None => diags.push(Diagnostic::error(line, column, "malformed number")),
    }
}

/// `[+-]? digits? ('.' digits?)? ([eE] [+-]? digits)?` with at least one
/// mantissa digit. Returns the consumed length and the value.
fn lex_number(chars: &[char]) -> (usize, Option<f64>) {
    let mut i = 0;
    if matches!(chars.first(), Some('-' | '+')) {
        i += 1;
    }
    let mut digits = 0;
    while i < chars.len() && chars[i].is_ascii_digit() {
        i += 1;
        digits += 1;
    }
    if chars.get(i) == Some(&'.') {
        i += 1;
        while i < chars.len() && chars[i].is_ascii_digit() {
            i += 1;
            digits += 1;
        }
    }
    if matches!(chars.get(i), Some('e' | 'E')) {
        let mut j = i + 1;
        if matches!(chars.get(j), Some('-' | '+')) {
            j += 1;
        }
        if chars.get(j).is_some_and(|c| c.is_ascii_digit()) {
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            i = j;
        }
    }
    let text: String = chars[..i].iter().collect();
    let value = if digits > 0 { text.parse::<f64>().ok().filter(|x| x.is_finite()) } else { None };
    (i.max(1), value)
}

//! Tokenizer for the TPTP surface syntax.
//!
//! Whitespace is skipped; comments are kept as [`TokenKind::Comment`] tokens so
//! that the token stream plus the skipped whitespace reproduces the input
//! exactly. The parser filters comments out.

use std::fmt;

use thiserror::Error;

/// A line/column position (both 1-based) plus the byte offset into the input.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
    pub offset: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TokenKind {
    /// `tff`, `thf`, `fof`, `cnf`, `include`.
    Keyword,
    LowerWord,
    UpperWord,
    /// `$`-prefixed.
    DefinedWord,
    /// `$$`-prefixed.
    SystemWord,
    SingleQuoted,
    /// `#`-prefixed index constant.
    HashWord,
    /// Brackets, comma, period and colon.
    Punct,
    /// Logical connectives and other operator symbols.
    Connective,
    Integer,
    Comment,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub lexeme: String,
    pub pos: Pos,
}

impl Token {
    pub fn is(&self, lexeme: &str) -> bool {
        self.lexeme == lexeme && !matches!(self.kind, TokenKind::SingleQuoted | TokenKind::Comment)
    }

    /// Byte range of the lexeme within the original input.
    pub fn span(&self) -> std::ops::Range<usize> {
        self.pos.offset..self.pos.offset + self.lexeme.len()
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("lexical error at {pos}: {message}")]
pub struct LexError {
    pub pos: Pos,
    pub message: String,
}

const KEYWORDS: &[&str] = &["tff", "thf", "fof", "cnf", "include"];

/// Operator symbols, longest first so that maximal munch is a linear scan.
const OPERATORS: &[&str] = &[
    "<=>", "<~>", "[.]", "<.>", "=>", "<=", "!=", "~|", "~&", ":=", "==", "!>", "?*", "@+", "@-",
    "!", "?", "~", "|", "&", "=", "@", ">", "*", "^", "-", "+",
];

const PUNCT: &[char] = &['(', ')', '[', ']', '{', '}', ',', '.', ':'];

fn is_alnum(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

struct Cursor<'a> {
    src: &'a str,
    offset: usize,
    line: usize,
    column: usize,
}

impl<'a> Cursor<'a> {
    fn pos(&self) -> Pos {
        Pos { line: self.line, column: self.column, offset: self.offset }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.offset..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn peek_at(&self, n: usize) -> Option<char> {
        self.rest().chars().nth(n)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.offset += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn bump_while(&mut self, pred: impl Fn(char) -> bool) {
        while let Some(c) = self.peek() {
            if !pred(c) {
                break;
            }
            self.bump();
        }
    }
}

/// Splits `input` into tokens. Comments are returned as tokens, whitespace is not.
pub fn tokenize(input: &str) -> Result<Vec<Token>, LexError> {
    let mut cur = Cursor { src: input, offset: 0, line: 1, column: 1 };
    let mut tokens = Vec::new();
    while let Some(c) = cur.peek() {
        if c.is_whitespace() {
            cur.bump();
            continue;
        }
        let start = cur.pos();
        let kind = match c {
            '%' => {
                cur.bump_while(|c| c != '\n');
                TokenKind::Comment
            }
            '/' if cur.peek_at(1) == Some('*') => {
                cur.bump();
                cur.bump();
                loop {
                    match cur.bump() {
                        None => {
                            return Err(LexError {
                                pos: start,
                                message: "unterminated block comment".into(),
                            })
                        }
                        Some('*') if cur.peek() == Some('/') => {
                            cur.bump();
                            break;
                        }
                        Some(_) => {}
                    }
                }
                TokenKind::Comment
            }
            '\'' => {
                cur.bump();
                loop {
                    match cur.bump() {
                        None | Some('\n') => {
                            return Err(LexError {
                                pos: start,
                                message: "unterminated quoted atom".into(),
                            })
                        }
                        Some('\\') => {
                            if cur.bump().is_none() {
                                return Err(LexError {
                                    pos: start,
                                    message: "unterminated quoted atom".into(),
                                });
                            }
                        }
                        Some('\'') => break,
                        Some(_) => {}
                    }
                }
                if cur.offset - start.offset == 2 {
                    return Err(LexError { pos: start, message: "empty quoted atom".into() });
                }
                TokenKind::SingleQuoted
            }
            '"' => {
                return Err(LexError {
                    pos: start,
                    message: "distinct objects (double-quoted) are not supported".into(),
                })
            }
            '$' => {
                cur.bump();
                let system = cur.peek() == Some('$');
                if system {
                    cur.bump();
                }
                if !cur.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
                    return Err(LexError { pos: start, message: "expected a word after `$`".into() });
                }
                cur.bump_while(is_alnum);
                if system {
                    TokenKind::SystemWord
                } else {
                    TokenKind::DefinedWord
                }
            }
            '#' => {
                cur.bump();
                if !cur.peek().is_some_and(|c| is_alnum(c) || c == '$') {
                    return Err(LexError { pos: start, message: "expected an index after `#`".into() });
                }
                cur.bump_while(|c| is_alnum(c) || c == '$');
                TokenKind::HashWord
            }
            c if c.is_ascii_lowercase() => {
                cur.bump_while(is_alnum);
                if KEYWORDS.contains(&&input[start.offset..cur.offset]) {
                    TokenKind::Keyword
                } else {
                    TokenKind::LowerWord
                }
            }
            c if c.is_ascii_uppercase() => {
                cur.bump_while(is_alnum);
                TokenKind::UpperWord
            }
            c if c.is_ascii_digit() => {
                cur.bump_while(|c| c.is_ascii_digit());
                if cur.peek().is_some_and(|c| c == '/' || c == 'E' || c == 'e')
                    || (cur.peek() == Some('.') && cur.peek_at(1).is_some_and(|c| c.is_ascii_digit()))
                {
                    return Err(LexError {
                        pos: start,
                        message: "only integer numbers are supported".into(),
                    });
                }
                TokenKind::Integer
            }
            c if PUNCT.contains(&c) && !cur.rest().starts_with(":=") => {
                // `[.]` is an operator, not three punctuation tokens.
                if c == '[' && cur.rest().starts_with("[.]") {
                    for _ in 0..3 {
                        cur.bump();
                    }
                    TokenKind::Connective
                } else {
                    cur.bump();
                    TokenKind::Punct
                }
            }
            _ => match OPERATORS.iter().find(|op| cur.rest().starts_with(**op)) {
                Some(op) => {
                    for _ in 0..op.chars().count() {
                        cur.bump();
                    }
                    TokenKind::Connective
                }
                None => {
                    return Err(LexError { pos: start, message: format!("unexpected character `{c}`") })
                }
            },
        };
        tokens.push(Token { kind, lexeme: input[start.offset..cur.offset].to_string(), pos: start });
    }
    Ok(tokens)
}

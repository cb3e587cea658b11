//! Position-tracking scanner.
//!
//! Input is a byte sequence; letters and digits are ASCII only, any byte
//! outside the recognized classes is a lexical error. Rules are matched
//! with maximal munch; when two rules match the same length the earlier
//! rule wins, so an all-digit lexeme is always an integer, never a float.
//!
//! Line starts record the offset of the character *after* each line
//! break, so a column is the 0-based offset from the first character of
//! its line.

use crate::syntax::Pos;
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum TokenKind {
    Num(i64),
    Float(f64),
    Ident(String),
    If,
    Then,
    Else,
    And,
    Or,
    Not,
    Eq,
    Plus,
    Minus,
    Times,
    Divide,
    LPar,
    RPar,
    Eof,
    // extension mode only
    While,
    Do,
    End,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub kind: TokenKind,
    pub pos: Pos,
}

impl Token {
    /// One line of `--dump-tokens` output: `<line>:<col>\t<KIND>` with the
    /// attribute in parentheses for NUM/FLOAT/ID.
    pub fn dump_line(&self) -> String {
        use TokenKind::*;
        let kind = match &self.kind {
            Num(n) => return format!("{}:{}\tNUM({})", self.pos.line, self.pos.col, n),
            Float(x) => return format!("{}:{}\tFLOAT({})", self.pos.line, self.pos.col, x),
            Ident(s) => return format!("{}:{}\tID({})", self.pos.line, self.pos.col, s),
            If => "IF",
            Then => "THEN",
            Else => "ELSE",
            And => "AND",
            Or => "OR",
            Not => "NOT",
            Eq => "EQ",
            Plus => "PLUS",
            Minus => "MINUS",
            Times => "TIMES",
            Divide => "DIVIDE",
            LPar => "LPAR",
            RPar => "RPAR",
            Eof => "EOF",
            While => "WHILE",
            Do => "DO",
            End => "END",
        };
        format!("{}:{}\t{}", self.pos.line, self.pos.col, kind)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LexicalError {
    pub message: String,
    pub pos: Pos,
}

impl fmt::Display for LexicalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lexical error: {} at {}", self.message, self.pos)
    }
}

impl std::error::Error for LexicalError {}

/// Resolve an absolute offset to (line, column) against a strictly
/// increasing table of line-start offsets. The table always begins with 0;
/// an offset beyond the last start resolves to the last line.
pub fn get_line_col(offset: usize, line_starts: &[usize]) -> Pos {
    debug_assert!(!line_starts.is_empty() && line_starts[0] == 0);
    for (i, &start) in line_starts.iter().enumerate().rev() {
        if offset >= start {
            return Pos::new((i + 1) as u32, (offset - start) as u32);
        }
    }
    unreachable!("line_starts starts at 0")
}

/// Map an identifier lexeme to its keyword token, or `Ident`. The loop
/// keywords exist only in extension mode.
pub fn classify_word(lexeme: &str, pos: Pos, ext: bool) -> Token {
    let kind = match lexeme {
        "if" => TokenKind::If,
        "then" => TokenKind::Then,
        "else" => TokenKind::Else,
        "and" => TokenKind::And,
        "or" => TokenKind::Or,
        "not" => TokenKind::Not,
        "while" if ext => TokenKind::While,
        "do" if ext => TokenKind::Do,
        "end" if ext => TokenKind::End,
        _ => TokenKind::Ident(lexeme.to_string()),
    };
    Token { kind, pos }
}

pub struct Scanner<'a> {
    source: &'a [u8],
    cursor: usize,
    line_starts: Vec<usize>,
    ext: bool,
}

impl<'a> Scanner<'a> {
    pub fn new(source: &'a [u8], ext: bool) -> Self {
        Scanner {
            source,
            cursor: 0,
            line_starts: vec![0],
            ext,
        }
    }

    pub fn pos_at(&self, offset: usize) -> Pos {
        get_line_col(offset, &self.line_starts)
    }

    fn err(&self, message: &str, offset: usize) -> LexicalError {
        LexicalError {
            message: message.to_string(),
            pos: self.pos_at(offset),
        }
    }

    fn byte(&self, i: usize) -> Option<u8> {
        self.source.get(i).copied()
    }

    /// Skip whitespace, line breaks and comments up to the start of the
    /// next lexeme.
    fn skip_ignorable(&mut self) {
        while let Some(b) = self.byte(self.cursor) {
            match b {
                b' ' | b'\t' | b'\r' => self.cursor += 1,
                b'\n' | 0x0c => {
                    self.cursor += 1;
                    self.line_starts.push(self.cursor);
                }
                b'\\' => {
                    // comment runs to the next LF, exclusive
                    self.cursor += 1;
                    while let Some(c) = self.byte(self.cursor) {
                        if c == b'\n' {
                            break;
                        }
                        self.cursor += 1;
                    }
                }
                _ => break,
            }
        }
    }

    /// Length of an integer match at `start`: `~?[0-9]+`.
    fn match_int(&self, start: usize) -> Option<usize> {
        let mut i = start;
        if self.byte(i) == Some(b'~') {
            i += 1;
        }
        let digits = self.digit_run(i);
        if digits == 0 {
            return None;
        }
        Some(i + digits - start)
    }

    /// Length of a float match at `start`:
    /// `~? ( [0-9]+ ('.' [0-9]*)? | '.' [0-9]+ ) ( [eE] [+~]? [0-9]+ )?`.
    fn match_float(&self, start: usize) -> Option<usize> {
        let mut i = start;
        if self.byte(i) == Some(b'~') {
            i += 1;
        }
        let leading = self.digit_run(i);
        if leading > 0 {
            i += leading;
            if self.byte(i) == Some(b'.') {
                i += 1;
                i += self.digit_run(i);
            }
        } else if self.byte(i) == Some(b'.') {
            let frac = self.digit_run(i + 1);
            if frac == 0 {
                return None;
            }
            i += 1 + frac;
        } else {
            return None;
        }
        // optional exponent; only consumed when complete
        if matches!(self.byte(i), Some(b'e') | Some(b'E')) {
            let mut j = i + 1;
            if matches!(self.byte(j), Some(b'+') | Some(b'~')) {
                j += 1;
            }
            let ed = self.digit_run(j);
            if ed > 0 {
                i = j + ed;
            }
        }
        Some(i - start)
    }

    fn digit_run(&self, start: usize) -> usize {
        let mut i = start;
        while matches!(self.byte(i), Some(b) if b.is_ascii_digit()) {
            i += 1;
        }
        i - start
    }

    pub fn next_token(&mut self) -> Result<Token, LexicalError> {
        self.skip_ignorable();
        let start = self.cursor;
        let pos = self.pos_at(start);

        let b = match self.byte(start) {
            None => return Ok(Token { kind: TokenKind::Eof, pos }),
            Some(b) => b,
        };

        if b.is_ascii_digit() || b == b'~' || b == b'.' {
            let int_len = self.match_int(start);
            let float_len = self.match_float(start);
            // longest match wins; on a tie the integer rule comes first
            match (int_len, float_len) {
                (Some(il), Some(fl)) if fl > il => return self.float_token(start, fl),
                (Some(il), _) => return self.int_token(start, il),
                (None, Some(fl)) => return self.float_token(start, fl),
                (None, None) => {
                    return Err(self.err("Illegal symbol in input", start));
                }
            }
        }

        if b.is_ascii_alphabetic() {
            let mut i = start + 1;
            while matches!(self.byte(i), Some(c) if c.is_ascii_alphanumeric()) {
                i += 1;
            }
            self.cursor = i;
            let lexeme = std::str::from_utf8(&self.source[start..i]).unwrap();
            return Ok(classify_word(lexeme, pos, self.ext));
        }

        let kind = match b {
            b'+' => TokenKind::Plus,
            b'-' => TokenKind::Minus,
            b'*' => TokenKind::Times,
            b'/' => TokenKind::Divide,
            b'(' => TokenKind::LPar,
            b')' => TokenKind::RPar,
            b'=' => TokenKind::Eq,
            _ => return Err(self.err("Illegal symbol in input", start)),
        };
        self.cursor = start + 1;
        Ok(Token { kind, pos })
    }

    fn int_token(&mut self, start: usize, len: usize) -> Result<Token, LexicalError> {
        let lexeme = std::str::from_utf8(&self.source[start..start + len]).unwrap();
        let digits = lexeme.replace('~', "-");
        let value: i64 = digits
            .parse()
            .map_err(|_| self.err("Bad integer", start))?;
        self.cursor = start + len;
        Ok(Token {
            kind: TokenKind::Num(value),
            pos: self.pos_at(start),
        })
    }

    fn float_token(&mut self, start: usize, len: usize) -> Result<Token, LexicalError> {
        let lexeme = std::str::from_utf8(&self.source[start..start + len]).unwrap();
        let mut normalized = lexeme.replace('~', "-");
        // "1.e5" style lexemes need a digit after the point for f64::parse
        if let Some(i) = normalized.find('.') {
            if !normalized
                .as_bytes()
                .get(i + 1)
                .is_some_and(u8::is_ascii_digit)
            {
                normalized.insert(i + 1, '0');
            }
        }
        let value: f64 = normalized
            .parse()
            .map_err(|_| self.err("Bad float", start))?;
        if !value.is_finite() {
            return Err(self.err("Bad float", start));
        }
        self.cursor = start + len;
        Ok(Token {
            kind: TokenKind::Float(value),
            pos: self.pos_at(start),
        })
    }
}

/// Tokenize a whole source; the result always ends with exactly one Eof.
pub fn scan_all(source: &[u8], ext: bool) -> Result<Vec<Token>, LexicalError> {
    let mut scanner = Scanner::new(source, ext);
    let mut tokens = Vec::new();
    loop {
        let tok = scanner.next_token()?;
        let done = tok.kind == TokenKind::Eof;
        tokens.push(tok);
        if done {
            return Ok(tokens);
        }
    }
}

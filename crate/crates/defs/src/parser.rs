//! Precedence-climbing parser.
//!
//! The observable contract is the grouping an LR parser would produce
//! under this ladder (level ascending = binds tighter):
//!
//! ```text
//! 1  else        (nonassoc)
//! 2  or          (right)
//! 3  and         (right)
//! 4  not         (nonassoc, unary)
//! 5  =           (nonassoc)
//! 6  + -         (left)
//! 7  * /         (left)
//! 8  unary minus (nonassoc)
//! ```
//!
//! Nonassoc operators forbid chaining: `x=1=2=3` fails at the second `=`
//! inside the expression, `--x` and `not not x` fail at the inner unary.
//! A unary operator may only start an operand whose minimum binding level
//! does not exceed its own, so `a = not b` is rejected unless the `not`
//! is parenthesized.

use crate::lexer::{Token, TokenKind};
use crate::syntax::{Def, Exp, Pgm, Pos};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Assoc {
    Left,
    Right,
    NonAssoc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrecEntry {
    pub level: u8,
    pub assoc: Assoc,
}

pub const LEVEL_ELSE: u8 = 1;
pub const LEVEL_NOT: u8 = 4;
pub const LEVEL_UMINUS: u8 = 8;
const LOWEST: u8 = 1;

/// Precedence table entry for binary operators and `else`; `None` for
/// every other token.
pub fn binding_of(kind: &TokenKind) -> Option<PrecEntry> {
    use Assoc::*;
    let (level, assoc) = match kind {
        TokenKind::Else => (LEVEL_ELSE, NonAssoc),
        TokenKind::Or => (2, Right),
        TokenKind::And => (3, Right),
        TokenKind::Eq => (5, NonAssoc),
        TokenKind::Plus | TokenKind::Minus => (6, Left),
        TokenKind::Times | TokenKind::Divide => (7, Left),
        _ => return None,
    };
    Some(PrecEntry { level, assoc })
}

/// Table entry for tokens that act as infix operators in an expression.
/// `else` is in the precedence table but is never infix; it only
/// terminates a then-branch.
fn infix_binding(kind: &TokenKind) -> Option<PrecEntry> {
    match kind {
        TokenKind::Else => None,
        _ => binding_of(kind),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParseError {
    pub pos: Pos,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Parse-error at {}", self.pos)
    }
}

impl std::error::Error for ParseError {}

struct Cursor<'a> {
    tokens: &'a [Token],
    index: usize,
    ext: bool,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> &Token {
        // the stream is Eof-terminated, so index never runs off the end
        &self.tokens[self.index.min(self.tokens.len() - 1)]
    }

    fn advance(&mut self) -> &Token {
        let tok = &self.tokens[self.index.min(self.tokens.len() - 1)];
        if self.index < self.tokens.len() {
            self.index += 1;
        }
        tok
    }

    fn error<T>(&self) -> Result<T, ParseError> {
        Err(ParseError {
            pos: self.peek().pos,
        })
    }

    fn expect(&mut self, kind: &TokenKind) -> Result<Pos, ParseError> {
        if &self.peek().kind == kind {
            Ok(self.advance().pos)
        } else {
            self.error()
        }
    }
}

/// Parse a whole token stream (which must end with Eof) into a program.
pub fn parse_program(tokens: &[Token], ext: bool) -> Result<Pgm, ParseError> {
    assert!(
        matches!(tokens.last(), Some(t) if t.kind == TokenKind::Eof),
        "token stream must end with Eof"
    );
    let mut cur = Cursor {
        tokens,
        index: 0,
        ext,
    };
    let mut defs = Vec::new();
    while cur.peek().kind != TokenKind::Eof {
        defs.push(parse_def(&mut cur)?);
    }
    cur.advance(); // Eof
    Ok(Pgm { defs })
}

/// Parse a single complete expression, requiring that the stream holds
/// nothing else before Eof.
pub fn parse_expression(tokens: &[Token], ext: bool) -> Result<Exp, ParseError> {
    let mut cur = Cursor {
        tokens,
        index: 0,
        ext,
    };
    let exp = parse_exp(&mut cur, LOWEST)?;
    cur.expect(&TokenKind::Eof)?;
    Ok(exp)
}

fn parse_def(cur: &mut Cursor) -> Result<Def, ParseError> {
    if cur.ext {
        match cur.peek().kind {
            TokenKind::If => {
                // Def -> if Exp then Def else Def
                let pos = cur.advance().pos;
                let cond = parse_exp(cur, LOWEST)?;
                cur.expect(&TokenKind::Then)?;
                let then_def = parse_def(cur)?;
                cur.expect(&TokenKind::Else)?;
                let else_def = parse_def(cur)?;
                return Ok(Def::CondDef(cond, Box::new(then_def), Box::new(else_def), pos));
            }
            TokenKind::While => {
                // Def -> while Exp do Def+ end
                let pos = cur.advance().pos;
                let cond = parse_exp(cur, LOWEST)?;
                cur.expect(&TokenKind::Do)?;
                let mut body = vec![parse_def(cur)?];
                while cur.peek().kind != TokenKind::End {
                    body.push(parse_def(cur)?);
                }
                cur.expect(&TokenKind::End)?;
                return Ok(Def::WhileDef(cond, body, pos));
            }
            _ => {}
        }
    }
    let name = match &cur.peek().kind {
        TokenKind::Ident(name) => name.clone(),
        _ => return cur.error(),
    };
    cur.advance();
    cur.expect(&TokenKind::Eq)?;
    let body = parse_exp(cur, LOWEST)?;
    Ok(Def::Bind(name, body))
}

fn parse_exp(cur: &mut Cursor, min_level: u8) -> Result<Exp, ParseError> {
    let mut lhs = parse_prefix(cur, min_level)?;
    let mut prev: Option<PrecEntry> = None;

    loop {
        let tok = cur.peek();
        let entry = match infix_binding(&tok.kind) {
            Some(e) if e.level >= min_level => e,
            _ => break,
        };
        // a nonassoc operator cannot follow one of the same level
        if let Some(p) = prev {
            if p.assoc == Assoc::NonAssoc && p.level == entry.level {
                return cur.error();
            }
        }
        let op = cur.advance();
        let (kind, pos) = (op.kind.clone(), op.pos);
        let next_min = match entry.assoc {
            Assoc::Right => entry.level,
            Assoc::Left | Assoc::NonAssoc => entry.level + 1,
        };
        let rhs = parse_exp(cur, next_min)?;
        lhs = build_binary(&kind, lhs, rhs, pos);
        prev = Some(entry);
    }
    Ok(lhs)
}

fn parse_prefix(cur: &mut Cursor, min_level: u8) -> Result<Exp, ParseError> {
    let tok = cur.peek();
    let pos = tok.pos;
    match &tok.kind {
        TokenKind::Num(n) => {
            let n = *n;
            cur.advance();
            Ok(Exp::IConst(n, pos))
        }
        TokenKind::Float(x) => {
            let x = *x;
            cur.advance();
            Ok(Exp::FConst(x, pos))
        }
        TokenKind::Ident(name) => {
            let name = name.clone();
            cur.advance();
            Ok(Exp::Id(name, pos))
        }
        TokenKind::LPar => {
            cur.advance();
            let inner = parse_exp(cur, LOWEST)?;
            cur.expect(&TokenKind::RPar)?;
            Ok(inner)
        }
        TokenKind::Minus => {
            if min_level > LEVEL_UMINUS {
                return cur.error();
            }
            cur.advance();
            // nonassoc: the operand cannot itself start with unary minus
            let operand = parse_exp(cur, LEVEL_UMINUS + 1)?;
            Ok(Exp::UMinus(Box::new(operand), pos))
        }
        TokenKind::Not => {
            if min_level > LEVEL_NOT {
                return cur.error();
            }
            cur.advance();
            let operand = parse_exp(cur, LEVEL_NOT + 1)?;
            Ok(Exp::Not(Box::new(operand), pos))
        }
        TokenKind::If => {
            cur.advance();
            let cond = parse_exp(cur, LOWEST)?;
            cur.expect(&TokenKind::Then)?;
            let then_e = parse_exp(cur, LOWEST)?;
            cur.expect(&TokenKind::Else)?;
            // else binds lowest: the branch extends as far right as possible
            let else_e = parse_exp(cur, LOWEST)?;
            Ok(Exp::If(Box::new(cond), Box::new(then_e), Box::new(else_e), pos))
        }
        _ => cur.error(),
    }
}

fn build_binary(kind: &TokenKind, lhs: Exp, rhs: Exp, pos: Pos) -> Exp {
    let (l, r) = (Box::new(lhs), Box::new(rhs));
    match kind {
        TokenKind::Plus => Exp::Plus(l, r, pos),
        TokenKind::Minus => Exp::Minus(l, r, pos),
        TokenKind::Times => Exp::Times(l, r, pos),
        TokenKind::Divide => Exp::Divide(l, r, pos),
        TokenKind::Eq => Exp::Eq(l, r, pos),
        TokenKind::And => Exp::And(l, r, pos),
        TokenKind::Or => Exp::Or(l, r, pos),
        _ => unreachable!("not an infix operator"),
    }
}

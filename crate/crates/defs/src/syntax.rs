//! Abstract syntax for the definition-list calculator language.
//!
//! A program is an ordered list of definitions; every expression node
//! carries the source position of the token that introduced it (the
//! operator for binary nodes, the keyword for `if`, the literal or
//! identifier itself for atoms).

use std::fmt;

/// Source coordinate: 1-based line, 0-based column offset within the line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Pos {
    pub line: u32,
    pub col: u32,
}

impl Pos {
    pub fn new(line: u32, col: u32) -> Self {
        Pos { line, col }
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.col)
    }
}

/// Expression forms. The variant set is closed: there is no expression
/// besides these thirteen.
#[derive(Debug, Clone, PartialEq)]
pub enum Exp {
    IConst(i64, Pos),
    FConst(f64, Pos),
    Id(String, Pos),
    Plus(Box<Exp>, Box<Exp>, Pos),
    Minus(Box<Exp>, Box<Exp>, Pos),
    Times(Box<Exp>, Box<Exp>, Pos),
    Divide(Box<Exp>, Box<Exp>, Pos),
    UMinus(Box<Exp>, Pos),
    Eq(Box<Exp>, Box<Exp>, Pos),
    And(Box<Exp>, Box<Exp>, Pos),
    Or(Box<Exp>, Box<Exp>, Pos),
    Not(Box<Exp>, Pos),
    If(Box<Exp>, Box<Exp>, Box<Exp>, Pos),
}

impl Exp {
    /// Position of the token this node was built from.
    pub fn pos(&self) -> Pos {
        match *self {
            Exp::IConst(_, p)
            | Exp::FConst(_, p)
            | Exp::Id(_, p)
            | Exp::Plus(_, _, p)
            | Exp::Minus(_, _, p)
            | Exp::Times(_, _, p)
            | Exp::Divide(_, _, p)
            | Exp::UMinus(_, p)
            | Exp::Eq(_, _, p)
            | Exp::And(_, _, p)
            | Exp::Or(_, _, p)
            | Exp::Not(_, p)
            | Exp::If(_, _, _, p) => p,
        }
    }

    /// Structural equality ignoring positions.
    pub fn same_shape(&self, other: &Exp) -> bool {
        use Exp::*;
        match (self, other) {
            (IConst(a, _), IConst(b, _)) => a == b,
            (FConst(a, _), FConst(b, _)) => a == b,
            (Id(a, _), Id(b, _)) => a == b,
            (Plus(a1, a2, _), Plus(b1, b2, _))
            | (Minus(a1, a2, _), Minus(b1, b2, _))
            | (Times(a1, a2, _), Times(b1, b2, _))
            | (Divide(a1, a2, _), Divide(b1, b2, _))
            | (Eq(a1, a2, _), Eq(b1, b2, _))
            | (And(a1, a2, _), And(b1, b2, _))
            | (Or(a1, a2, _), Or(b1, b2, _)) => a1.same_shape(b1) && a2.same_shape(b2),
            (UMinus(a, _), UMinus(b, _)) | (Not(a, _), Not(b, _)) => a.same_shape(b),
            (If(a1, a2, a3, _), If(b1, b2, b3, _)) => {
                a1.same_shape(b1) && a2.same_shape(b2) && a3.same_shape(b3)
            }
            _ => false,
        }
    }
}

/// Definition forms. `CondDef` and `WhileDef` only exist when the
/// grammar extension is enabled.
#[derive(Debug, Clone, PartialEq)]
pub enum Def {
    Bind(String, Exp),
    CondDef(Exp, Box<Def>, Box<Def>, Pos),
    WhileDef(Exp, Vec<Def>, Pos),
}

impl Def {
    pub fn same_shape(&self, other: &Def) -> bool {
        match (self, other) {
            (Def::Bind(n1, e1), Def::Bind(n2, e2)) => n1 == n2 && e1.same_shape(e2),
            (Def::CondDef(c1, t1, f1, _), Def::CondDef(c2, t2, f2, _)) => {
                c1.same_shape(c2) && t1.same_shape(t2) && f1.same_shape(f2)
            }
            (Def::WhileDef(c1, b1, _), Def::WhileDef(c2, b2, _)) => {
                c1.same_shape(c2)
                    && b1.len() == b2.len()
                    && b1.iter().zip(b2).all(|(x, y)| x.same_shape(y))
            }
            _ => false,
        }
    }
}

/// A program: an ordered sequence of definitions.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Pgm {
    pub defs: Vec<Def>,
}

impl Pgm {
    pub fn same_shape(&self, other: &Pgm) -> bool {
        self.defs.len() == other.defs.len()
            && self.defs.iter().zip(&other.defs).all(|(a, b)| a.same_shape(b))
    }
}

/// Deterministic parenthesized prefix dump of a program, one definition
/// per line, positions omitted. This is the `--dump-ast` output format.
pub fn ast_to_text(p: &Pgm) -> String {
    let mut out = String::new();
    for d in &p.defs {
        dump_def(d, &mut out);
        out.push('\n');
    }
    out
}

fn dump_def(d: &Def, out: &mut String) {
    match d {
        Def::Bind(name, e) => {
            out.push_str("(def ");
            out.push_str(name);
            out.push(' ');
            dump_exp(e, out);
            out.push(')');
        }
        Def::CondDef(c, t, f, _) => {
            out.push_str("(if ");
            dump_exp(c, out);
            out.push(' ');
            dump_def(t, out);
            out.push(' ');
            dump_def(f, out);
            out.push(')');
        }
        Def::WhileDef(c, body, _) => {
            out.push_str("(while ");
            dump_exp(c, out);
            for d in body {
                out.push(' ');
                dump_def(d, out);
            }
            out.push(')');
        }
    }
}

fn dump_exp(e: &Exp, out: &mut String) {
    match e {
        Exp::IConst(n, _) => {
            out.push_str("(int ");
            out.push_str(&n.to_string());
            out.push(')');
        }
        Exp::FConst(x, _) => {
            out.push_str("(float ");
            out.push_str(&x.to_string());
            out.push(')');
        }
        Exp::Id(name, _) => {
            out.push_str("(id ");
            out.push_str(name);
            out.push(')');
        }
        Exp::Plus(a, b, _) => dump_bin("+", a, b, out),
        Exp::Minus(a, b, _) => dump_bin("-", a, b, out),
        Exp::Times(a, b, _) => dump_bin("*", a, b, out),
        Exp::Divide(a, b, _) => dump_bin("/", a, b, out),
        Exp::Eq(a, b, _) => dump_bin("=", a, b, out),
        Exp::And(a, b, _) => dump_bin("and", a, b, out),
        Exp::Or(a, b, _) => dump_bin("or", a, b, out),
        Exp::UMinus(a, _) => dump_un("-", a, out),
        Exp::Not(a, _) => dump_un("not", a, out),
        Exp::If(c, t, f, _) => {
            out.push_str("(if ");
            dump_exp(c, out);
            out.push(' ');
            dump_exp(t, out);
            out.push(' ');
            dump_exp(f, out);
            out.push(')');
        }
    }
}

fn dump_bin(op: &str, a: &Exp, b: &Exp, out: &mut String) {
    out.push('(');
    out.push_str(op);
    out.push(' ');
    dump_exp(a, out);
    out.push(' ');
    dump_exp(b, out);
    out.push(')');
}

fn dump_un(op: &str, a: &Exp, out: &mut String) {
    out.push('(');
    out.push_str(op);
    out.push(' ');
    dump_exp(a, out);
    out.push(')');
}

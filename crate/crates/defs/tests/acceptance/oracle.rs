//! Independent oracles for the acceptance suite.
//!
//! The parser oracle enumerates every parse tree of the ambiguous
//! expression grammar over a restricted alphabet, keeps the trees allowed
//! by the precedence/associativity contract, and demands the parser agree
//! string by string. It shares no code with the parser.

use defs::lexer::scan_all;
use defs::parser::parse_expression;
use defs::syntax::Exp;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::collections::HashMap;

const MAX_TOKENS: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tok {
    A,
    B,
    One,
    Two,
    Plus,
    Minus,
    Star,
    Eq,
    And,
    Or,
    Not,
    LP,
    RP,
}

impl Tok {
    fn text(self) -> &'static str {
        match self {
            Tok::A => "a",
            Tok::B => "b",
            Tok::One => "1",
            Tok::Two => "2",
            Tok::Plus => "+",
            Tok::Minus => "-",
            Tok::Star => "*",
            Tok::Eq => "=",
            Tok::And => "and",
            Tok::Or => "or",
            Tok::Not => "not",
            Tok::LP => "(",
            Tok::RP => ")",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tree {
    Atom(Tok),
    Un(Tok, Box<Tree>), // Not or Minus
    Bin(Tok, Box<Tree>, Box<Tree>),
    Paren(Box<Tree>),
}

#[derive(Clone, Copy, PartialEq)]
#[allow(clippy::enum_variant_names)]
enum Assoc {
    Left,
    Right,
    NonAssoc,
}

fn bin_level(op: Tok) -> (u8, Assoc) {
    match op {
        Tok::Or => (2, Assoc::Right),
        Tok::And => (3, Assoc::Right),
        Tok::Eq => (5, Assoc::NonAssoc),
        Tok::Plus | Tok::Minus => (6, Assoc::Left),
        Tok::Star => (7, Assoc::Left),
        other => panic!("not a binary operator: {other:?}"),
    }
}

/// Binding level a node exposes to its parent; atoms and parenthesized
/// subtrees bind tightest.
fn level(t: &Tree) -> u8 {
    match t {
        Tree::Atom(_) | Tree::Paren(_) => u8::MAX,
        Tree::Un(Tok::Not, _) => 4,
        Tree::Un(Tok::Minus, _) => 8,
        Tree::Un(op, _) => panic!("not a unary operator: {op:?}"),
        Tree::Bin(op, _, _) => bin_level(*op).0,
    }
}

/// The precedence contract as a local check on every node.
fn valid(t: &Tree) -> bool {
    match t {
        Tree::Atom(_) => true,
        Tree::Paren(inner) => valid(inner),
        Tree::Un(_, inner) => {
            // a unary operand binds strictly tighter than the operator
            valid(inner) && level(inner) > level(t)
        }
        Tree::Bin(op, l, r) => {
            let (lv, assoc) = bin_level(*op);
            let left_ok = level(l) > lv || (level(l) == lv && assoc == Assoc::Left);
            let right_ok = level(r) > lv || (level(r) == lv && assoc == Assoc::Right);
            left_ok && right_ok && valid(l) && valid(r)
        }
    }
}

/// Drop the paren wrappers so trees can be compared with the parser's AST.
fn erase(t: &Tree) -> Tree {
    match t {
        Tree::Atom(tok) => Tree::Atom(*tok),
        Tree::Paren(inner) => erase(inner),
        Tree::Un(op, inner) => Tree::Un(*op, Box::new(erase(inner))),
        Tree::Bin(op, l, r) => Tree::Bin(*op, Box::new(erase(l)), Box::new(erase(r))),
    }
}

fn exp_to_tree(e: &Exp) -> Tree {
    match e {
        Exp::IConst(1, _) => Tree::Atom(Tok::One),
        Exp::IConst(2, _) => Tree::Atom(Tok::Two),
        Exp::Id(name, _) if name == "a" => Tree::Atom(Tok::A),
        Exp::Id(name, _) if name == "b" => Tree::Atom(Tok::B),
        Exp::Plus(l, r, _) => Tree::Bin(Tok::Plus, Box::new(exp_to_tree(l)), Box::new(exp_to_tree(r))),
        Exp::Minus(l, r, _) => Tree::Bin(Tok::Minus, Box::new(exp_to_tree(l)), Box::new(exp_to_tree(r))),
        Exp::Times(l, r, _) => Tree::Bin(Tok::Star, Box::new(exp_to_tree(l)), Box::new(exp_to_tree(r))),
        Exp::Eq(l, r, _) => Tree::Bin(Tok::Eq, Box::new(exp_to_tree(l)), Box::new(exp_to_tree(r))),
        Exp::And(l, r, _) => Tree::Bin(Tok::And, Box::new(exp_to_tree(l)), Box::new(exp_to_tree(r))),
        Exp::Or(l, r, _) => Tree::Bin(Tok::Or, Box::new(exp_to_tree(l)), Box::new(exp_to_tree(r))),
        Exp::UMinus(inner, _) => Tree::Un(Tok::Minus, Box::new(exp_to_tree(inner))),
        Exp::Not(inner, _) => Tree::Un(Tok::Not, Box::new(exp_to_tree(inner))),
        other => panic!("node outside the restricted alphabet: {other:?}"),
    }
}

/// All parse trees of the ambiguous grammar, grouped by frontier.
fn enumerate() -> HashMap<Vec<Tok>, Vec<Tree>> {
    const ATOMS: [Tok; 4] = [Tok::A, Tok::B, Tok::One, Tok::Two];
    const BINOPS: [Tok; 6] = [Tok::Plus, Tok::Minus, Tok::Star, Tok::Eq, Tok::And, Tok::Or];

    // by_len[n] = all (tree, frontier) with n tokens
    let mut by_len: Vec<Vec<(Tree, Vec<Tok>)>> = vec![Vec::new(); MAX_TOKENS + 1];
    by_len[1] = ATOMS.iter().map(|&t| (Tree::Atom(t), vec![t])).collect();

    for n in 2..=MAX_TOKENS {
        let mut out = Vec::new();
        for (inner, toks) in &by_len[n - 1] {
            for op in [Tok::Not, Tok::Minus] {
                let mut frontier = vec![op];
                frontier.extend(toks);
                out.push((Tree::Un(op, Box::new(inner.clone())), frontier));
            }
        }
        if n >= 3 {
            for (inner, toks) in &by_len[n - 2] {
                let mut frontier = vec![Tok::LP];
                frontier.extend(toks);
                frontier.push(Tok::RP);
                out.push((Tree::Paren(Box::new(inner.clone())), frontier));
            }
            for left_len in 1..=(n - 2) {
                let right_len = n - 1 - left_len;
                for (l, lt) in &by_len[left_len] {
                    for (r, rt) in &by_len[right_len] {
                        for op in BINOPS {
                            let mut frontier = lt.clone();
                            frontier.push(op);
                            frontier.extend(rt);
                            out.push((
                                Tree::Bin(op, Box::new(l.clone()), Box::new(r.clone())),
                                frontier,
                            ));
                        }
                    }
                }
            }
        }
        by_len[n] = out;
    }

    let mut map: HashMap<Vec<Tok>, Vec<Tree>> = HashMap::new();
    for bucket in by_len {
        for (tree, frontier) in bucket {
            map.entry(frontier).or_default().push(tree);
        }
    }
    map
}

fn parse_with_impl(toks: &[Tok]) -> Option<Tree> {
    let src: Vec<&str> = toks.iter().map(|t| t.text()).collect();
    let src = src.join(" ");
    let tokens = scan_all(src.as_bytes(), false).expect("restricted alphabet always lexes");
    parse_expression(&tokens, false).ok().map(|e| exp_to_tree(&e))
}

pub struct OracleStats {
    pub grammar_strings: usize,
    pub accepted: usize,
    pub exhaustive_strings: usize,
}

pub fn check_against_enumeration() -> OracleStats {
    let map = enumerate();
    let mut accepted = 0;

    for (frontier, trees) in &map {
        let mut survivors: Vec<Tree> = trees.iter().filter(|t| valid(t)).map(erase).collect();
        survivors.dedup();
        assert!(
            survivors.len() <= 1,
            "precedence contract is ambiguous on {frontier:?}: {survivors:?}"
        );
        let got = parse_with_impl(frontier);
        match survivors.pop() {
            Some(expected) => {
                accepted += 1;
                assert_eq!(
                    got.as_ref(),
                    Some(&expected),
                    "grouping mismatch on {frontier:?}"
                );
            }
            None => assert!(got.is_none(), "parser accepted contract-rejected {frontier:?}"),
        }
    }

    // exhaustive short strings: the parser accepts exactly the strings the
    // contract accepts, including token sequences outside the grammar
    const ALPHABET: [Tok; 13] = [
        Tok::A,
        Tok::B,
        Tok::One,
        Tok::Two,
        Tok::Plus,
        Tok::Minus,
        Tok::Star,
        Tok::Eq,
        Tok::And,
        Tok::Or,
        Tok::Not,
        Tok::LP,
        Tok::RP,
    ];
    let mut exhaustive = 0;
    let mut stack: Vec<Vec<Tok>> = ALPHABET.iter().map(|&t| vec![t]).collect();
    while let Some(s) = stack.pop() {
        exhaustive += 1;
        let contract_accepts = map
            .get(&s)
            .map(|trees| trees.iter().filter(|t| valid(t)).count() == 1)
            .unwrap_or(false);
        assert_eq!(
            parse_with_impl(&s).is_some(),
            contract_accepts,
            "accept/reject mismatch on {s:?}"
        );
        if s.len() < 4 {
            for &t in &ALPHABET {
                let mut next = s.clone();
                next.push(t);
                stack.push(next);
            }
        }
    }

    OracleStats {
        grammar_strings: map.len(),
        accepted,
        exhaustive_strings: exhaustive,
    }
}

// ---------------------------------------------------------------------------
// randomized lexer round-trip (criterion 8)

struct GenLexeme {
    text: &'static str,
    /// coarse kind tag used to compare streams
    kind: &'static str,
}

const LEXEMES: &[GenLexeme] = &[
    GenLexeme { text: "abc", kind: "ID" },
    GenLexeme { text: "x1", kind: "ID" },
    GenLexeme { text: "quux123", kind: "ID" },
    GenLexeme { text: "iffy", kind: "ID" },
    GenLexeme { text: "if", kind: "IF" },
    GenLexeme { text: "then", kind: "THEN" },
    GenLexeme { text: "else", kind: "ELSE" },
    GenLexeme { text: "and", kind: "AND" },
    GenLexeme { text: "or", kind: "OR" },
    GenLexeme { text: "not", kind: "NOT" },
    GenLexeme { text: "0", kind: "NUM" },
    GenLexeme { text: "42", kind: "NUM" },
    GenLexeme { text: "~17", kind: "NUM" },
    GenLexeme { text: "123456789", kind: "NUM" },
    GenLexeme { text: "1.5", kind: "FLOAT" },
    GenLexeme { text: "~3.75", kind: "FLOAT" },
    GenLexeme { text: ".5", kind: "FLOAT" },
    GenLexeme { text: "7.", kind: "FLOAT" },
    GenLexeme { text: "2e3", kind: "FLOAT" },
    GenLexeme { text: "1.5e~2", kind: "FLOAT" },
    GenLexeme { text: "+", kind: "PLUS" },
    GenLexeme { text: "-", kind: "MINUS" },
    GenLexeme { text: "*", kind: "TIMES" },
    GenLexeme { text: "/", kind: "DIVIDE" },
    GenLexeme { text: "(", kind: "LPAR" },
    GenLexeme { text: ")", kind: "RPAR" },
    GenLexeme { text: "=", kind: "EQ" },
];

fn kind_tag(kind: &defs::TokenKind) -> &'static str {
    use defs::TokenKind::*;
    match kind {
        Num(_) => "NUM",
        Float(_) => "FLOAT",
        Ident(_) => "ID",
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
    }
}

/// Offsets at which lines start, derived from the raw text alone.
fn line_starts_of(source: &[u8]) -> Vec<usize> {
    let mut starts = vec![0];
    for (i, &b) in source.iter().enumerate() {
        if b == b'\n' || b == 0x0c {
            starts.push(i + 1);
        }
    }
    starts
}

pub fn lexer_random_round_trip(cases: usize) {
    let mut rng = StdRng::seed_from_u64(0x5eed_def5);

    for _ in 0..cases {
        // build a source from known lexemes separated by random blanks
        let count = rng.gen_range(1..30);
        let mut source = String::new();
        let mut expected: Vec<(&'static str, String)> = Vec::new();
        for i in 0..count {
            if i > 0 || rng.gen_bool(0.3) {
                let seps = rng.gen_range(1..4);
                for _ in 0..seps {
                    source.push(*[' ', '\t', '\r', '\n', '\x0c'].get(rng.gen_range(0..5)).unwrap());
                }
            }
            let lx = &LEXEMES[rng.gen_range(0..LEXEMES.len())];
            source.push_str(lx.text);
            expected.push((lx.kind, lx.text.to_string()));
        }

        let tokens = scan_all(source.as_bytes(), false).unwrap_or_else(|e| {
            panic!("generated source failed to lex: {e}\nsource: {source:?}")
        });
        assert_eq!(tokens.len(), expected.len() + 1, "source: {source:?}");
        assert_eq!(kind_tag(&tokens.last().unwrap().kind), "EOF");

        // token kinds survive, and every position maps back to the first
        // character of its lexeme
        let starts = line_starts_of(source.as_bytes());
        for (tok, (kind, text)) in tokens.iter().zip(&expected) {
            assert_eq!(kind_tag(&tok.kind), *kind, "source: {source:?}");
            let line = tok.pos.line as usize;
            assert!(line <= starts.len(), "line out of range in {source:?}");
            let abs = starts[line - 1] + tok.pos.col as usize;
            assert!(
                source.as_bytes()[abs..].starts_with(text.as_bytes()),
                "position {:?} of {kind} does not point at {text:?} in {source:?}",
                tok.pos
            );
        }

        // inserting a comment before a line break never changes the kinds
        let mut with_comment = source.clone();
        let insert_at = with_comment.find('\n').unwrap_or(with_comment.len());
        with_comment.insert_str(insert_at, " \\ noise 123 ~~ ((");
        let commented = scan_all(with_comment.as_bytes(), false)
            .unwrap_or_else(|e| panic!("commented source failed to lex: {e}"));
        let kinds_a: Vec<_> = tokens.iter().map(|t| kind_tag(&t.kind)).collect();
        let kinds_b: Vec<_> = commented.iter().map(|t| kind_tag(&t.kind)).collect();
        assert_eq!(kinds_a, kinds_b, "comment changed tokens in {source:?}");
    }

    // any all-digit text is a single Num, never a Float
    for _ in 0..cases {
        let len = rng.gen_range(1..18);
        let digits: String = (0..len)
            .map(|_| char::from(b'0' + rng.gen_range(0..10)))
            .collect();
        let tokens = scan_all(digits.as_bytes(), false).unwrap();
        assert_eq!(tokens.len(), 2);
        assert!(
            matches!(tokens[0].kind, defs::TokenKind::Num(_)),
            "{digits} did not lex as an integer"
        );
    }
}

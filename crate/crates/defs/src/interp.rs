//! Tree-walking evaluator.
//!
//! Values are dynamically typed: 64-bit integers, IEEE doubles and
//! booleans. Arithmetic and comparison never coerce between integer and
//! real; mixing them is a runtime error. `and`/`or` are strict (both
//! sides evaluated before the type check), `if` evaluates only the
//! selected branch. Integer `/` is floor division.
//!
//! Every executed binding is appended to the environment (shadowing, not
//! replacing, older entries) and reported through an [`OutputSink`] as
//! `name=value`.

use crate::syntax::{Def, Exp, Pgm, Pos};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Value {
    IntV(i64),
    RealV(f64),
    BoolV(bool),
}

/// Ordered association list; the most recent binding for a name wins,
/// older ones stay in the table.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Env {
    bindings: Vec<(String, Value)>,
}

impl Env {
    pub fn empty() -> Self {
        Env::default()
    }

    pub fn bind(&mut self, name: impl Into<String>, value: Value) {
        self.bindings.push((name.into(), value));
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    /// All entries for a name, newest first.
    pub fn entries(&self, name: &str) -> Vec<&Value> {
        self.bindings
            .iter()
            .rev()
            .filter(|(n, _)| n == name)
            .map(|(_, v)| v)
            .collect()
    }
}

/// First match scanning newest-to-oldest.
pub fn lookup<'e>(name: &str, env: &'e Env) -> Option<&'e Value> {
    env.bindings
        .iter()
        .rev()
        .find(|(n, _)| n == name)
        .map(|(_, v)| v)
}

/// The prelude: pi, e and one. The constants are fixed at these 12-digit
/// values; they are part of the output contract, not stand-ins for the
/// full-precision library constants.
#[allow(clippy::approx_constant)]
pub fn initial_env() -> Env {
    let mut env = Env::empty();
    env.bind("pi", Value::RealV(3.14159265359));
    env.bind("e", Value::RealV(2.71828182846));
    env.bind("one", Value::IntV(1));
    env
}

pub trait OutputSink {
    fn line(&mut self, line: &str);
}

impl OutputSink for Vec<String> {
    fn line(&mut self, line: &str) {
        self.push(line.to_string());
    }
}

/// Sink that writes each line to an `io::Write`, e.g. stdout.
pub struct WriteSink<W: std::io::Write>(pub W);

impl<W: std::io::Write> OutputSink for WriteSink<W> {
    fn line(&mut self, line: &str) {
        // an unwritable sink is fatal for a batch run
        writeln!(self.0, "{line}").expect("write output line");
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunError {
    pub message: String,
    pub pos: Pos,
}

impl RunError {
    fn new(message: impl Into<String>, pos: Pos) -> Self {
        RunError {
            message: message.into(),
            pos,
        }
    }
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Runtime error: {} at {}", self.message, self.pos)
    }
}

impl std::error::Error for RunError {}

pub fn eval_exp(e: &Exp, env: &Env) -> Result<Value, RunError> {
    use Value::*;
    match e {
        Exp::IConst(n, _) => Ok(IntV(*n)),
        Exp::FConst(x, _) => Ok(RealV(*x)),
        Exp::Id(name, pos) => match lookup(name, env) {
            Some(v) => Ok(*v),
            None => Err(RunError::new(format!("Unknown variable {name}"), *pos)),
        },
        Exp::Plus(e1, e2, pos) => {
            match (eval_exp(e1, env)?, eval_exp(e2, env)?) {
                (IntV(m), IntV(n)) => m
                    .checked_add(n)
                    .map(IntV)
                    .ok_or_else(|| RunError::new("Integer overflow", *pos)),
                (RealV(m), RealV(n)) => Ok(RealV(m + n)),
                _ => Err(RunError::new("Non-number argument to +", *pos)),
            }
        }
        Exp::Minus(e1, e2, pos) => {
            match (eval_exp(e1, env)?, eval_exp(e2, env)?) {
                (IntV(m), IntV(n)) => m
                    .checked_sub(n)
                    .map(IntV)
                    .ok_or_else(|| RunError::new("Integer overflow", *pos)),
                (RealV(m), RealV(n)) => Ok(RealV(m - n)),
                _ => Err(RunError::new("Non-number argument to -", *pos)),
            }
        }
        Exp::Times(e1, e2, pos) => {
            match (eval_exp(e1, env)?, eval_exp(e2, env)?) {
                (IntV(m), IntV(n)) => m
                    .checked_mul(n)
                    .map(IntV)
                    .ok_or_else(|| RunError::new("Integer overflow", *pos)),
                (RealV(m), RealV(n)) => Ok(RealV(m * n)),
                _ => Err(RunError::new("Non-number argument to *", *pos)),
            }
        }
        Exp::Divide(e1, e2, pos) => {
            match (eval_exp(e1, env)?, eval_exp(e2, env)?) {
                (IntV(_), IntV(0)) => Err(RunError::new("Division by zero", *pos)),
                (IntV(m), IntV(n)) => floor_div(m, n)
                    .map(IntV)
                    .ok_or_else(|| RunError::new("Integer overflow", *pos)),
                (RealV(m), RealV(n)) => Ok(RealV(m / n)),
                _ => Err(RunError::new("Non-number argument to /", *pos)),
            }
        }
        Exp::UMinus(e, pos) => match eval_exp(e, env)? {
            IntV(m) => m
                .checked_neg()
                .map(IntV)
                .ok_or_else(|| RunError::new("Integer overflow", *pos)),
            RealV(m) => Ok(RealV(-m)),
            BoolV(_) => Err(RunError::new("Non-number argument to unary -", *pos)),
        },
        Exp::Eq(e1, e2, pos) => {
            match (eval_exp(e1, env)?, eval_exp(e2, env)?) {
                (IntV(m), IntV(n)) => Ok(BoolV(m == n)),
                (RealV(m), RealV(n)) => Ok(BoolV(m == n)),
                (BoolV(m), BoolV(n)) => Ok(BoolV(m == n)),
                _ => Err(RunError::new("Non-comparable argument to =", *pos)),
            }
        }
        Exp::And(e1, e2, pos) => {
            // strict: both sides evaluated before the type check
            match (eval_exp(e1, env)?, eval_exp(e2, env)?) {
                (BoolV(m), BoolV(n)) => Ok(BoolV(m && n)),
                _ => Err(RunError::new("Non-logical argument to and", *pos)),
            }
        }
        Exp::Or(e1, e2, pos) => {
            match (eval_exp(e1, env)?, eval_exp(e2, env)?) {
                (BoolV(m), BoolV(n)) => Ok(BoolV(m || n)),
                _ => Err(RunError::new("Non-logical argument to or", *pos)),
            }
        }
        Exp::Not(e, pos) => match eval_exp(e, env)? {
            BoolV(m) => Ok(BoolV(!m)),
            _ => Err(RunError::new("Non-logical argument to not", *pos)),
        },
        Exp::If(cond, then_e, else_e, pos) => match eval_exp(cond, env)? {
            BoolV(true) => eval_exp(then_e, env),
            BoolV(false) => eval_exp(else_e, env),
            _ => Err(RunError::new("Non-logical argument to if", *pos)),
        },
    }
}

/// Integer division rounding toward negative infinity; `None` on the one
/// overflowing case (MIN / -1).
fn floor_div(a: i64, b: i64) -> Option<i64> {
    let q = a.checked_div(b)?;
    if a % b != 0 && (a < 0) != (b < 0) {
        Some(q - 1)
    } else {
        Some(q)
    }
}

/// Render a value the way the reference runtime prints it: `~` for the
/// minus sign, reals in 12-significant-digit general format with trailing
/// zeros trimmed but at least one fractional digit kept.
pub fn format_value(v: &Value) -> String {
    match v {
        Value::IntV(n) => {
            if *n < 0 {
                format!("~{}", n.unsigned_abs())
            } else {
                n.to_string()
            }
        }
        Value::RealV(x) => format_real(*x),
        Value::BoolV(b) => b.to_string(),
    }
}

fn format_real(x: f64) -> String {
    if x.is_nan() {
        return "nan".to_string();
    }
    let neg = x.is_sign_negative();
    let sign = if neg { "~" } else { "" };
    if x.is_infinite() {
        return format!("{sign}inf");
    }
    let m = x.abs();
    if m == 0.0 {
        return format!("{sign}0.0");
    }

    // 12 significant digits, then place the point
    let sci = format!("{:.11e}", m);
    let (mantissa, exp) = sci.split_once('e').expect("exponent in {:e} output");
    let exp: i32 = exp.parse().expect("numeric exponent");
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();
    debug_assert_eq!(digits.len(), 12);

    if !(-4..12).contains(&exp) {
        // scientific notation, `~` for a negative exponent
        let frac = digits[1..].trim_end_matches('0');
        let frac = if frac.is_empty() { "0" } else { frac };
        let exp_str = if exp < 0 {
            format!("~{}", -exp)
        } else {
            exp.to_string()
        };
        return format!("{sign}{}.{frac}E{exp_str}", &digits[..1]);
    }

    if exp >= 0 {
        let split = (exp + 1) as usize;
        let int_part = &digits[..split];
        let frac = digits[split..].trim_end_matches('0');
        let frac = if frac.is_empty() { "0" } else { frac };
        format!("{sign}{int_part}.{frac}")
    } else {
        let zeros = "0".repeat((-exp - 1) as usize);
        let frac = digits.trim_end_matches('0');
        format!("{sign}0.{zeros}{frac}")
    }
}

/// Execute one definition, returning the extended environment and
/// reporting each executed binding through the sink.
pub fn eval_def(d: &Def, mut env: Env, sink: &mut dyn OutputSink) -> Result<Env, RunError> {
    match d {
        Def::Bind(name, e) => {
            let v = eval_exp(e, &env)?;
            sink.line(&format!("{name}={}", format_value(&v)));
            env.bind(name.clone(), v);
            Ok(env)
        }
        Def::CondDef(cond, then_d, else_d, pos) => match eval_exp(cond, &env)? {
            Value::BoolV(true) => eval_def(then_d, env, sink),
            Value::BoolV(false) => eval_def(else_d, env, sink),
            _ => Err(RunError::new("Non-logical argument to if", *pos)),
        },
        Def::WhileDef(cond, body, pos) => loop {
            match eval_exp(cond, &env)? {
                Value::BoolV(true) => {
                    for d in body {
                        env = eval_def(d, env, sink)?;
                    }
                }
                Value::BoolV(false) => return Ok(env),
                _ => return Err(RunError::new("Non-logical argument to if", *pos)),
            }
        },
    }
}

/// Execute a program in order; the first error aborts the remainder, with
/// everything already printed staying printed.
pub fn eval_program(p: &Pgm, mut env: Env, sink: &mut dyn OutputSink) -> Result<Env, RunError> {
    for d in &p.defs {
        env = eval_def(d, env, sink)?;
    }
    Ok(env)
}

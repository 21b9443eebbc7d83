//! Rational expressions in named parameters, and chained comparisons.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! constraint := expr (relop expr)+
//! relop      := "<" | "<=" | ">" | ">=" | "=" | "==" | "!=" | "≤" | "≥" | "≠"
//! expr       := ["+"|"-"] product (("+"|"-") product)*
//! product    := power (["*"|"/"] power)*        juxtaposition means "*"
//! power      := atom ["^" digits]
//! atom       := digits | ident | "(" expr ")" | "|" expr "|"
//! ident      := letter digits*
//! ```
//!
//! Identifiers are a single letter plus optional digits, so `ab^2` is
//! `a * b^2` and `k1` is one symbol.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, ParseError, Result};
use crate::scalar::Rational;

pub type Env = BTreeMap<String, Rational>;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Expr {
    Num(Rational),
    Sym(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Abs(Box<Expr>),
}

impl Expr {
    pub fn num(q: Rational) -> Self {
        Expr::Num(q)
    }

    pub fn one() -> Self {
        Expr::Num(Rational::one())
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut p = Parser::new(text);
        let e = p.expr()?;
        p.skip_ws();
        if !p.at_end() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(e)
    }

    pub fn eval(&self, env: &Env) -> Result<Rational> {
        Ok(match self {
            Expr::Num(q) => q.clone(),
            Expr::Sym(s) => env
                .get(s)
                .cloned()
                .ok_or_else(|| Error::MissingSymbol(s.clone()))?,
            Expr::Neg(a) => -a.eval(env)?,
            Expr::Add(a, b) => a.eval(env)? + b.eval(env)?,
            Expr::Sub(a, b) => a.eval(env)? - b.eval(env)?,
            Expr::Mul(a, b) => a.eval(env)? * b.eval(env)?,
            Expr::Div(a, b) => {
                let d = b.eval(env)?;
                if d.is_zero() {
                    return Err(Error::Format(format!("division by zero in {self}")));
                }
                a.eval(env)? / d
            }
            Expr::Pow(a, n) => num_traits::pow(a.eval(env)?, *n as usize),
            Expr::Abs(a) => a.eval(env)?.abs(),
        })
    }

    pub fn symbols(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_symbols(&mut out);
        out
    }

    /// Replaces the symbols bound in `env` by their values.
    pub fn substitute(&self, env: &Env) -> Expr {
        let sub = |a: &Expr| Box::new(a.substitute(env));
        match self {
            Expr::Num(_) => self.clone(),
            Expr::Sym(s) => env.get(s).map_or_else(|| self.clone(), |q| Expr::Num(q.clone())),
            Expr::Neg(a) => Expr::Neg(sub(a)),
            Expr::Add(a, b) => Expr::Add(sub(a), sub(b)),
            Expr::Sub(a, b) => Expr::Sub(sub(a), sub(b)),
            Expr::Mul(a, b) => Expr::Mul(sub(a), sub(b)),
            Expr::Div(a, b) => Expr::Div(sub(a), sub(b)),
            Expr::Pow(a, n) => Expr::Pow(sub(a), *n),
            Expr::Abs(a) => Expr::Abs(sub(a)),
        }
    }

    fn collect_symbols(&self, out: &mut BTreeSet<String>) {
        match self {
            Expr::Num(_) => {}
            Expr::Sym(s) => {
                out.insert(s.clone());
            }
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Abs(a) => a.collect_symbols(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.collect_symbols(out);
                b.collect_symbols(out);
            }
        }
    }

    /// True for `1`, a symbol, or a product of powers of symbols.
    pub fn is_monomial(&self) -> bool {
        match self {
            Expr::Num(q) => q.is_one(),
            Expr::Sym(_) => true,
            Expr::Pow(a, _) => matches!(**a, Expr::Sym(_)),
            Expr::Mul(a, b) => a.is_monomial() && b.is_monomial(),
            _ => false,
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Neg(_) => 2,
            Expr::Mul(..) | Expr::Div(..) => 3,
            Expr::Pow(..) => 4,
            Expr::Num(q) if !q.is_integer() || q.is_negative() => 3,
            _ => 5,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "(")?;
            self.fmt_prec(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Expr::Num(q) => write!(f, "{q}"),
            Expr::Sym(s) => write!(f, "{s}"),
            Expr::Neg(a) => {
                write!(f, "-")?;
                a.fmt_prec(f, 3)
            }
            Expr::Add(a, b) => {
                a.fmt_prec(f, 1)?;
                write!(f, "+")?;
                b.fmt_prec(f, 3)
            }
            Expr::Sub(a, b) => {
                a.fmt_prec(f, 1)?;
                write!(f, "-")?;
                b.fmt_prec(f, 3)
            }
            Expr::Mul(a, b) => {
                a.fmt_prec(f, 3)?;
                let juxtapose = match &**b {
                    Expr::Sym(_) => true,
                    Expr::Pow(x, _) => matches!(**x, Expr::Sym(_)),
                    _ => false,
                };
                if !juxtapose {
                    write!(f, "*")?;
                }
                b.fmt_prec(f, 4)
            }
            Expr::Div(a, b) => {
                a.fmt_prec(f, 3)?;
                write!(f, "/")?;
                b.fmt_prec(f, 4)
            }
            Expr::Pow(a, n) => {
                a.fmt_prec(f, 5)?;
                write!(f, "^{n}")
            }
            Expr::Abs(a) => {
                write!(f, "|")?;
                a.fmt_prec(f, 0)?;
                write!(f, "|")
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RelOp {
    Lt,
    Le,
    Gt,
    Ge,
    Eq,
    Ne,
}

impl RelOp {
    fn holds(self, a: &Rational, b: &Rational) -> bool {
        match self {
            RelOp::Lt => a < b,
            RelOp::Le => a <= b,
            RelOp::Gt => a > b,
            RelOp::Ge => a >= b,
            RelOp::Eq => a == b,
            RelOp::Ne => a != b,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            RelOp::Lt => "<",
            RelOp::Le => "<=",
            RelOp::Gt => ">",
            RelOp::Ge => ">=",
            RelOp::Eq => "=",
            RelOp::Ne => "!=",
        }
    }
}

/// A chained comparison such as `-1 <= u < v < 1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Constraint {
    pub operands: Vec<Expr>,
    pub ops: Vec<RelOp>,
}

impl Constraint {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut p = Parser::new(text);
        let mut operands = vec![p.expr()?];
        let mut ops = Vec::new();
        loop {
            p.skip_ws();
            if p.at_end() {
                break;
            }
            ops.push(p.relop()?);
            operands.push(p.expr()?);
        }
        if ops.is_empty() {
            return Err(p.error("expected a comparison operator"));
        }
        Ok(Constraint { operands, ops })
    }

    pub fn holds(&self, env: &Env) -> Result<bool> {
        let vals = self
            .operands
            .iter()
            .map(|e| e.eval(env))
            .collect::<Result<Vec<_>>>()?;
        Ok(self
            .ops
            .iter()
            .enumerate()
            .all(|(i, op)| op.holds(&vals[i], &vals[i + 1])))
    }

    pub fn symbols(&self) -> BTreeSet<String> {
        self.operands.iter().flat_map(Expr::symbols).collect()
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.operands[0])?;
        for (op, e) in self.ops.iter().zip(&self.operands[1..]) {
            write!(f, " {} {e}", op.symbol())?;
        }
        Ok(())
    }
}

pub(crate) struct Parser<'a> {
    text: &'a str,
    chars: Vec<(usize, char)>,
    pos: usize,
}

impl<'a> Parser<'a> {
    pub(crate) fn new(text: &'a str) -> Self {
        Parser {
            text,
            chars: text.char_indices().collect(),
            pos: 0,
        }
    }

    pub(crate) fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.text.len(), |c| c.0)
    }

    pub(crate) fn error(&self, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.text, self.offset(), msg)
    }

    pub(crate) fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    pub(crate) fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|c| normalize(c.1))
    }

    pub(crate) fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        self.pos += 1;
        c
    }

    pub(crate) fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    pub(crate) fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected {c:?}")))
        }
    }

    pub(crate) fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().map(|c| c.1).collect())
    }

    pub(crate) fn expr(&mut self) -> Result<Expr, ParseError> {
        self.skip_ws();
        let mut lhs = if self.eat('-') {
            Expr::Neg(Box::new(self.product()?))
        } else {
            self.eat('+');
            self.product()?
        };
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.product()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.product()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn product(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.power()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.power()?));
            } else {
                self.skip_ws();
                match self.peek() {
                    Some(c) if c.is_ascii_alphabetic() || c == '(' || c.is_ascii_digit() => {
                        lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
                    }
                    _ => return Ok(lhs),
                }
            }
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.eat('^') {
            self.skip_ws();
            let exp = if self.eat('{') {
                let d = self.digits().ok_or_else(|| self.error("expected exponent"))?;
                self.expect('}')?;
                d
            } else {
                self.digits().ok_or_else(|| self.error("expected exponent"))?
            };
            let n: u32 = exp.parse().map_err(|_| self.error("exponent too large"))?;
            return Ok(Expr::Pow(Box::new(base), n));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits().expect("digit present");
                Ok(Expr::Num(Rational::from_integer(
                    d.parse::<BigInt>().expect("decimal digits"),
                )))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                self.bump();
                let mut name = c.to_string();
                if let Some(d) = self.digits() {
                    name.push_str(&d);
                }
                Ok(Expr::Sym(name))
            }
            Some('(') => {
                self.bump();
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some('|') => {
                self.bump();
                let e = self.expr()?;
                self.expect('|')?;
                Ok(Expr::Abs(Box::new(e)))
            }
            _ => Err(self.error("expected a number, symbol, or parenthesis")),
        }
    }

    fn relop(&mut self) -> Result<RelOp, ParseError> {
        self.skip_ws();
        let op = match self.bump() {
            Some('<') => {
                if self.peek() == Some('=') {
                    self.bump();
                    RelOp::Le
                } else {
                    RelOp::Lt
                }
            }
            Some('>') => {
                if self.peek() == Some('=') {
                    self.bump();
                    RelOp::Ge
                } else {
                    RelOp::Gt
                }
            }
            Some('=') => {
                if self.peek() == Some('=') {
                    self.bump();
                }
                RelOp::Eq
            }
            Some('!') if self.peek() == Some('=') => {
                self.bump();
                RelOp::Ne
            }
            Some('≤') => RelOp::Le,
            Some('≥') => RelOp::Ge,
            Some('≠') => RelOp::Ne,
            _ => {
                self.pos = self.pos.saturating_sub(1);
                return Err(self.error("expected a comparison operator"));
            }
        };
        Ok(op)
    }
}

fn normalize(c: char) -> char {
    match c {
        '\u{2212}' => '-',
        '\u{00b7}' | '\u{22c5}' => '*',
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    fn env(pairs: &[(&str, Rational)]) -> Env {
        pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
    }

    #[test]
    fn arithmetic() {
        let e = Expr::parse("2u + 1").unwrap();
        assert_eq!(e.eval(&env(&[("u", frac(1, 2))])).unwrap(), int(2));
        let m = Expr::parse("ab^2").unwrap();
        assert!(m.is_monomial());
        assert_eq!(m.eval(&env(&[("a", int(3)), ("b", int(-2))])).unwrap(), int(12));
        assert_eq!(Expr::parse("-w").unwrap().eval(&env(&[("w", int(2))])).unwrap(), int(-2));
        assert_eq!(Expr::parse("k1*k2").unwrap().symbols().len(), 2);
        assert_eq!(Expr::parse("1/3").unwrap().eval(&Env::new()).unwrap(), frac(1, 3));
    }

    #[test]
    fn errors_carry_position() {
        let err = Expr::parse("2 + ").unwrap_err();
        assert_eq!(err.pos, 4);
        assert!(Expr::parse("(u").is_err());
        assert!(matches!(
            Expr::parse("u").unwrap().eval(&Env::new()),
            Err(Error::MissingSymbol(_))
        ));
    }

    #[test]
    fn chained_constraints() {
        let c = Constraint::parse("0 < |u| < 1").unwrap();
        assert!(c.holds(&env(&[("u", frac(-1, 2))])).unwrap());
        assert!(!c.holds(&env(&[("u", int(1))])).unwrap());
        assert!(!c.holds(&env(&[("u", int(0))])).unwrap());
        let c = Constraint::parse("-1 ≤ u < v < 1").unwrap();
        assert!(c.holds(&env(&[("u", int(-1)), ("v", frac(1, 2))])).unwrap());
        assert!(!c.holds(&env(&[("u", int(0)), ("v", int(0))])).unwrap());
        assert!(Constraint::parse("u v").is_err());
    }

    #[test]
    fn display_reparses() {
        for s in [
            "ab^2", "2u+1", "-w", "u-(v-1)", "|w|", "a^2", "k1k2", "(u+1)^2", "-1/2*u", "u-(-w)",
            "a^2b*|u|",
        ] {
            let e = Expr::parse(s).unwrap();
            let again = Expr::parse(&e.to_string()).unwrap();
            assert_eq!(e, again, "{s} printed as {e}");
        }
    }
}

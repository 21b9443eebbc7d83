//! Table notation for automorphism generators.
//!
//! ```text
//! pattern  := "(" entry ("," entry)* ")"
//! entry    := monomial | monomial? "S_" index
//! monomial := (symbol exponent?)+ | "1"
//! discrete := "p" index | "(" signed ("," signed)* ")" | "((" signed ("," signed)* "))"
//! signed   := ["-"|"+"] "X_" index
//! weyl     := combo | "[" combo "]_" symbol
//! combo    := term (("+"|"-") term)*
//! term     := [integer | "(" rational ")"] "E_" index "^" index
//! index    := digit | "{" digits "}" | "{" number ("," number)* "}"
//! ```
//!
//! Indices are 1-based. A braced run of digits such as `{123}` is a
//! multi-index of single digits; commas separate indices of 10 and above.

use crate::automorphisms::{
    signed_permutation, BlockEntry, BlockPattern, DiscreteGen, OuterDer, SignedBasis, WeylTerm,
};
use crate::error::{Error, ParseError, Result};
use crate::expr::{Expr, Parser};
use crate::scalar::{parse_rational, Rational};

fn err(text: &str, pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse(ParseError::new(text, pos, msg))
}

/// Reads an index at the parser position: one digit or a braced list.
fn index_list(p: &mut Parser<'_>) -> Result<Vec<usize>, ParseError> {
    p.skip_ws();
    if p.eat('{') {
        let mut out = Vec::new();
        let first = p.digits().ok_or_else(|| p.error("expected index digits"))?;
        if p.eat(',') {
            out.push(first.parse().map_err(|_| p.error("index too large"))?);
            loop {
                p.skip_ws();
                let d = p.digits().ok_or_else(|| p.error("expected index"))?;
                out.push(d.parse().map_err(|_| p.error("index too large"))?);
                if !p.eat(',') {
                    break;
                }
            }
        } else {
            out.extend(first.chars().map(|c| c.to_digit(10).expect("digit") as usize));
        }
        p.expect('}')?;
        Ok(out)
    } else {
        match p.peek() {
            Some(c) if c.is_ascii_digit() => {
                p.bump();
                Ok(vec![c.to_digit(10).expect("digit") as usize])
            }
            _ => Err(p.error("expected an index")),
        }
    }
}

fn single_index(p: &mut Parser<'_>, dim: usize) -> Result<usize, ParseError> {
    let at = p.offset();
    let v = index_list(p)?;
    match v.as_slice() {
        [i] if (1..=dim).contains(i) => Ok(i - 1),
        [i] => Err(ParseError::new("", at, format!("index {i} outside 1..{dim}"))),
        _ => Err(p.error("expected a single index")),
    }
}

fn with_input(e: ParseError, text: &str) -> ParseError {
    ParseError::new(text, e.pos, e.msg)
}

/// Splits at top-level commas, returning `(offset, piece)` pairs.
fn split_top(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' | '{' | '[' => depth += 1,
            ')' | '}' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push((start, &text[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push((start, &text[start..]));
    out
}

fn parenthesized(text: &str) -> Result<(usize, &str)> {
    let t = text.trim_end();
    let lead = t.len() - t.trim_start().len();
    let t = t.trim_start();
    if !t.starts_with('(') {
        return Err(err(text, lead, "expected '('"));
    }
    if !t.ends_with(')') {
        return Err(err(text, lead + t.len(), "expected ')'"));
    }
    Ok((lead + 1, &t[1..t.len() - 1]))
}

fn parse_monomial(text: &str, base: usize, piece: &str) -> Result<Expr> {
    let e = Expr::parse(piece).map_err(|e| err(text, base + e.pos, e.msg))?;
    if !e.is_monomial() {
        return Err(err(text, base, format!("{piece:?} is not a monomial")));
    }
    Ok(e)
}

pub fn parse_block_pattern(text: &str, dim: usize) -> Result<BlockPattern> {
    let (start, body) = parenthesized(text)?;
    let mut entries = Vec::new();
    for (off, piece) in split_top(body) {
        let base = start + off;
        let lead = piece.len() - piece.trim_start().len();
        let trimmed = piece.trim();
        if trimmed.is_empty() {
            return Err(err(text, base, "empty entry"));
        }
        let base = base + lead;
        match trimmed.find("S_") {
            Some(at) => {
                let coeff_text = trimmed[..at].trim();
                let coeff = if coeff_text.is_empty() {
                    Expr::one()
                } else {
                    parse_monomial(text, base, coeff_text)?
                };
                let mut p = Parser::new(&trimmed[at + 2..]);
                let block = index_list(&mut p).map_err(|e| err(text, base + at + 2 + e.pos, e.msg))?;
                p.skip_ws();
                if !p.at_end() {
                    return Err(err(text, base + at + 2 + p.offset(), "unexpected input after block index"));
                }
                entries.push(BlockEntry::Sl { coeff, block });
            }
            None => entries.push(BlockEntry::Scalar(parse_monomial(text, base, trimmed)?)),
        }
    }
    let pattern = BlockPattern { entries };
    pattern.validate(dim)?;
    Ok(pattern)
}

fn parse_signed(text: &str, base: usize, piece: &str, dim: usize) -> Result<SignedBasis> {
    let mut p = Parser::new(piece);
    let wrap = |e: ParseError| err(text, base + e.pos, e.msg);
    p.skip_ws();
    let negative = if p.eat('-') {
        true
    } else {
        p.eat('+');
        false
    };
    p.skip_ws();
    if p.bump() != Some('X') || p.bump() != Some('_') {
        return Err(err(text, base, format!("expected a signed basis symbol, got {piece:?}")));
    }
    let index = single_index(&mut p, dim).map_err(wrap)?;
    p.skip_ws();
    if !p.at_end() {
        return Err(wrap(p.error("unexpected input after basis symbol")));
    }
    Ok(SignedBasis { index, negative })
}

/// Parses a signed-basis tuple such as `["-X_1", "X_3"]` given as separate items.
pub fn parse_tuple_items(items: &[String], dim: usize) -> Result<Vec<SignedBasis>> {
    let tuple = items
        .iter()
        .map(|s| parse_signed(s, 0, s, dim))
        .collect::<Result<Vec<_>>>()?;
    if tuple.len() != dim {
        return Err(Error::BadTuple(format!("tuple has {} entries, expected {dim}", tuple.len())));
    }
    signed_permutation(&tuple)?;
    Ok(tuple)
}

pub fn parse_discrete(text: &str, dim: usize) -> Result<DiscreteGen> {
    let t = text.trim();
    let lead = text.len() - text.trim_start().len();
    if let Some(rest) = t.strip_prefix('p') {
        let rest = rest.strip_prefix('_').unwrap_or(rest);
        let mut p = Parser::new(rest);
        let base = lead + (t.len() - rest.len());
        let mut m = Vec::new();
        if rest.trim_start().starts_with('{') {
            m = index_list(&mut p).map_err(|e| err(text, base + e.pos, e.msg))?;
        } else {
            while let Some(c) = p.peek().filter(char::is_ascii_digit) {
                p.bump();
                m.push(c.to_digit(10).expect("digit") as usize);
            }
        }
        p.skip_ws();
        if m.is_empty() || !p.at_end() {
            return Err(err(text, base + p.offset(), "expected sign-mask digits"));
        }
        let mut zero_based = Vec::with_capacity(m.len());
        for i in m {
            if !(1..=dim).contains(&i) {
                return Err(Error::IndexOutOfRange { index: i, dim });
            }
            if zero_based.contains(&(i - 1)) {
                return Err(err(text, base, format!("index {i} repeated in sign mask")));
            }
            zero_based.push(i - 1);
        }
        return Ok(DiscreteGen::sign_mask(zero_based));
    }
    let (start, body) = parenthesized(text)?;
    let (weyl, start, body) = match parenthesized(body) {
        Ok((s, inner)) if body.trim().starts_with('(') => (true, start + s, inner),
        _ => (false, start, body),
    };
    let tuple = split_top(body)
        .into_iter()
        .map(|(off, piece)| parse_signed(text, start + off, piece, dim))
        .collect::<Result<Vec<_>>>()?;
    if tuple.len() != dim {
        return Err(Error::BadTuple(format!(
            "{t} has {} entries, expected {dim}",
            tuple.len()
        )));
    }
    signed_permutation(&tuple)?;
    let mut g = DiscreteGen::tuple(tuple);
    g.weyl_reflection = weyl;
    Ok(g)
}

fn coefficient(p: &mut Parser<'_>, text: &str) -> Result<Rational, ParseError> {
    p.skip_ws();
    if p.peek() == Some('(') {
        p.bump();
        let start = p.offset();
        while p.peek().is_some_and(|c| c != ')') {
            p.bump();
        }
        let inner = &text[start..p.offset()];
        p.expect(')')?;
        return parse_rational(inner).map_err(|m| ParseError::new(text, start, m));
    }
    match p.digits() {
        Some(n) => {
            let mut s = n;
            if p.eat('/') {
                p.skip_ws();
                let d = p.digits().ok_or_else(|| p.error("expected denominator"))?;
                s = format!("{s}/{d}");
            }
            p.eat('*');
            parse_rational(&s).map_err(|m| p.error(m))
        }
        None => Ok(Rational::from_integer(1.into())),
    }
}

fn weyl_terms(p: &mut Parser<'_>, text: &str, dim: usize) -> Result<Vec<WeylTerm>, ParseError> {
    let mut terms = Vec::new();
    loop {
        p.skip_ws();
        let negative = if p.eat('-') {
            true
        } else {
            if !terms.is_empty() && !p.eat('+') {
                break;
            }
            p.eat('+');
            false
        };
        let mut c = coefficient(p, text)?;
        if negative {
            c = -c;
        }
        p.skip_ws();
        if !(p.eat('E') && p.peek() == Some('_')) {
            return Err(p.error("expected E_i^j"));
        }
        p.bump();
        let i = single_index(p, dim).map_err(|e| with_input(e, text))?;
        p.expect('^')?;
        let j = single_index(p, dim).map_err(|e| with_input(e, text))?;
        terms.push(WeylTerm { i, j, c });
        p.skip_ws();
        if p.at_end() || p.peek() == Some(']') {
            break;
        }
    }
    Ok(terms)
}

pub fn parse_weyl(text: &str, dim: usize) -> Result<OuterDer> {
    let mut p = Parser::new(text);
    p.skip_ws();
    let bracketed = p.eat('[');
    let terms = weyl_terms(&mut p, text, dim)?;
    let range_param = if bracketed {
        p.expect(']')?;
        p.expect('_')?;
        p.skip_ws();
        let start = p.offset();
        match p.bump() {
            Some(c) if c.is_ascii_alphabetic() => {
                let mut name = c.to_string();
                if let Some(d) = p.digits() {
                    name.push_str(&d);
                }
                Some(name)
            }
            _ => return Err(err(text, start, "expected range symbol")),
        }
    } else {
        None
    };
    p.skip_ws();
    if !p.at_end() {
        return Err(Error::Parse(p.error("unexpected trailing input")));
    }
    Ok(OuterDer { terms, range_param })
}

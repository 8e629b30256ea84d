//! Text form for grammars and rule expressions.
//!
//! ```text
//! x -> c
//! c -> x(a+b)
//! a -> 2xc
//! ```
//!
//! Letters are one ASCII letter optionally followed by digits, so `xy` is a
//! product. Products are juxtaposition (an explicit `*` is accepted), `^`
//! takes a nonnegative integer exponent, and coefficients are nonnegative
//! integers.

use std::iter::Peekable;
use std::str::CharIndices;
use std::sync::Arc;

use num_bigint::BigInt;

use super::Grammar;
use crate::error::{Error, Result};
use crate::exactpoly::MultiPoly;

pub(super) fn parse_grammar(text: &str) -> Result<Grammar> {
    let mut lhs = Vec::new();
    let mut rhs = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| Error::Parse { line: lineno + 1, message };
        let (left, right) = line
            .split_once("->")
            .ok_or_else(|| err("expected `var -> expression`".into()))?;
        let var = left.trim();
        if !is_letter_name(var) {
            return Err(err(format!("`{var}` is not a letter name")));
        }
        if lhs.iter().any(|v: &String| v == var) {
            return Err(err(format!("second rule for `{var}`")));
        }
        lhs.push(var.to_string());
        rhs.push((lineno + 1, right.trim().to_string()));
    }
    if lhs.is_empty() {
        return Err(Error::Parse { line: 0, message: "grammar has no rules".into() });
    }
    let alphabet: Arc<[String]> = lhs.into();
    let rules = rhs
        .into_iter()
        .map(|(line, expr)| {
            parse_polynomial(&expr, alphabet.clone()).map_err(|e| match e {
                Error::Parse { message, .. } => Error::Parse { line, message },
                other => other,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Grammar::new(alphabet, rules)
}

fn is_letter_name(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic()) && chars.all(|c| c.is_ascii_digit())
}

/// Parses an expression over `alphabet`. Errors report line 0; grammar
/// parsing rewrites them with the real line.
pub fn parse_polynomial(expr: &str, alphabet: Arc<[String]>) -> Result<MultiPoly> {
    let mut p = Parser { src: expr, it: expr.char_indices().peekable(), alphabet };
    let out = p.expr()?;
    p.skip_ws();
    if let Some(&(pos, c)) = p.it.peek() {
        return Err(p.err(format!("unexpected `{c}` at column {}", pos + 1)));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a str,
    it: Peekable<CharIndices<'a>>,
    alphabet: Arc<[String]>,
}

impl Parser<'_> {
    fn err(&self, message: String) -> Error {
        Error::Parse { line: 0, message }
    }

    fn skip_ws(&mut self) {
        while self.it.peek().is_some_and(|(_, c)| c.is_whitespace()) {
            self.it.next();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.it.peek().map(|&(_, c)| c)
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = self.term()?;
        while self.peek() == Some('+') {
            self.it.next();
            acc = acc.add(&self.term()?)?;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.it.next();
                    acc = acc.mul(&self.factor()?)?;
                }
                Some(c) if c.is_ascii_alphanumeric() || c == '(' => {
                    acc = acc.mul(&self.factor()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.it.next();
            self.skip_ws();
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.err("expected an exponent after `^`".into()));
            }
            let k: u32 = digits.parse().map_err(|_| Error::ExponentOverflow)?;
            return base.pow(k);
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let mut s = String::new();
        while let Some(&(_, c)) = self.it.peek() {
            if !c.is_ascii_digit() {
                break;
            }
            s.push(c);
            self.it.next();
        }
        s
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Some('(') => {
                self.it.next();
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("unbalanced parenthesis".into()));
                }
                self.it.next();
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.digits();
                let n: BigInt = digits.parse().expect("ascii digits");
                Ok(MultiPoly::constant_on(self.alphabet.clone(), n))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                self.it.next();
                let name = format!("{c}{}", self.digits());
                MultiPoly::zero_on(self.alphabet.clone()).letter(&name)
            }
            Some(c @ ('-' | '/' | '.')) => Err(self.err(format!(
                "`{c}`: only nonnegative integer coefficients are allowed"
            ))),
            Some(c) => Err(self.err(format!("unexpected `{c}` in {:?}", self.src))),
            None => Err(self.err("unexpected end of expression".into())),
        }
    }
}

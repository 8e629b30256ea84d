//! Formal derivatives induced by substitution-rule grammars over
//! commutative alphabets.
//!
//! A grammar assigns a polynomial to every letter; its derivative acts on
//! polynomials as `D(F) = sum_v rule(v) * dF/dv`.

mod parse;

use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactpoly::multi::add_exps;
use crate::exactpoly::MultiPoly;

pub use parse::parse_polynomial;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grammar {
    alphabet: Arc<[String]>,
    rules: Vec<MultiPoly>,
}

impl Grammar {
    /// `rules[k]` is the substitution for `alphabet[k]`.
    pub fn new(alphabet: Arc<[String]>, rules: Vec<MultiPoly>) -> Result<Self> {
        if rules.len() != alphabet.len() {
            return Err(Error::InvalidArgument(format!(
                "{} rules for an alphabet of {}",
                rules.len(),
                alphabet.len()
            )));
        }
        for r in &rules {
            if r.alphabet() != &alphabet[..] {
                return Err(Error::AlphabetMismatch {
                    left: r.alphabet().to_vec(),
                    right: alphabet.to_vec(),
                });
            }
        }
        for (i, v) in alphabet.iter().enumerate() {
            if alphabet[..i].contains(v) {
                return Err(Error::InvalidArgument(format!("letter `{v}` has two rules")));
            }
        }
        Ok(Grammar { alphabet, rules })
    }

    /// Parses one `var -> expression` rule per line. Blank lines and lines
    /// starting with `#` are skipped; the alphabet is the left-hand sides in
    /// order of appearance.
    pub fn parse(text: &str) -> Result<Self> {
        parse::parse_grammar(text)
    }

    /// Builds from `(letter, expression)` pairs.
    pub fn from_rules(rules: &[(&str, &str)]) -> Result<Self> {
        let text: String = rules.iter().map(|(v, e)| format!("{v} -> {e}\n")).collect();
        Self::parse(&text)
    }

    /// `x -> yz, y -> xz, z -> xy`
    pub fn schett_dumont() -> Self {
        Self::from_rules(&[("x", "yz"), ("y", "xz"), ("z", "xy")]).expect("builtin grammar")
    }

    /// `x -> c, a -> 2xc, b -> 2xc, c -> x(a+b)`
    pub fn g1() -> Self {
        Self::from_rules(&[("x", "c"), ("a", "2xc"), ("b", "2xc"), ("c", "x(a+b)")])
            .expect("builtin grammar")
    }

    /// `x -> c, a -> x(g+h), b -> x(g+h), c -> x(a+b), g -> x(a+b), h -> x(a+b)`
    pub fn g2() -> Self {
        Self::from_rules(&[
            ("x", "c"),
            ("a", "x(g+h)"),
            ("b", "x(g+h)"),
            ("c", "x(a+b)"),
            ("g", "x(a+b)"),
            ("h", "x(a+b)"),
        ])
        .expect("builtin grammar")
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn alphabet_arc(&self) -> Arc<[String]> {
        self.alphabet.clone()
    }

    pub fn rule(&self, letter: &str) -> Result<&MultiPoly> {
        let idx = self
            .alphabet
            .iter()
            .position(|v| v == letter)
            .ok_or_else(|| Error::UnknownVariable(letter.to_string()))?;
        Ok(&self.rules[idx])
    }

    pub fn letter(&self, name: &str) -> Result<MultiPoly> {
        MultiPoly::zero_on(self.alphabet.clone()).letter(name)
    }

    /// Applies the derivative once.
    pub fn derive_once(&self, f: &MultiPoly) -> Result<MultiPoly> {
        if f.alphabet() != &self.alphabet[..] {
            return Err(Error::AlphabetMismatch {
                left: f.alphabet().to_vec(),
                right: self.alphabet.to_vec(),
            });
        }
        let mut out = MultiPoly::zero_on(self.alphabet.clone());
        for (exps, c) in f.terms() {
            for (idx, &k) in exps.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let mut lowered = exps.clone();
                lowered[idx] -= 1;
                let factor = c * BigInt::from(k);
                for (re, rc) in self.rules[idx].terms() {
                    out.add_term(add_exps(&lowered, re)?, &factor * rc);
                }
            }
        }
        Ok(out)
    }

    /// `D^n(seed)`.
    pub fn iterate(&self, seed: &MultiPoly, n: usize) -> Result<MultiPoly> {
        let mut cur = seed.clone();
        for _ in 0..n {
            cur = self.derive_once(&cur)?;
        }
        Ok(cur)
    }

    /// `[seed, D(seed), ..., D^n(seed)]`.
    pub fn iterates(&self, seed: &MultiPoly, n: usize) -> Result<Vec<MultiPoly>> {
        let mut out = Vec::with_capacity(n + 1);
        out.push(seed.clone());
        for k in 0..n {
            let next = self.derive_once(&out[k])?;
            out.push(next);
        }
        Ok(out)
    }
}

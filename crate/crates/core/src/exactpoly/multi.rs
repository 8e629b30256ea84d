use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::uni::{push_term, UniPoly};
use crate::error::{Error, Result};

/// Exponent vector, one entry per alphabet letter.
pub type Exponents = Vec<u32>;

/// Sparse multivariate polynomial over a fixed, ordered alphabet.
///
/// Terms are kept in a `BTreeMap`, so iteration is lexicographic in the
/// exponent vector and no zero coefficient is ever stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    alphabet: Arc<[String]>,
    terms: BTreeMap<Exponents, BigInt>,
}

impl MultiPoly {
    pub fn zero(alphabet: &[&str]) -> Self {
        Self::zero_on(alphabet.iter().map(|s| s.to_string()).collect())
    }

    pub fn zero_on(alphabet: Arc<[String]>) -> Self {
        MultiPoly { alphabet, terms: BTreeMap::new() }
    }

    pub fn constant_on(alphabet: Arc<[String]>, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero_on(alphabet);
        let zero = vec![0; p.alphabet.len()];
        p.add_term(zero, c.into());
        p
    }

    pub fn one(alphabet: &[&str]) -> Self {
        let z = Self::zero(alphabet);
        Self::constant_on(z.alphabet, 1)
    }

    /// The single letter `name` as a polynomial.
    pub fn var(alphabet: &[&str], name: &str) -> Result<Self> {
        Self::zero(alphabet).letter(name)
    }

    /// The letter `name` over this polynomial's alphabet.
    pub fn letter(&self, name: &str) -> Result<Self> {
        let idx = self.index_of(name)?;
        let mut exps = vec![0; self.alphabet.len()];
        exps[idx] = 1;
        let mut p = Self::zero_on(self.alphabet.clone());
        p.add_term(exps, BigInt::one());
        Ok(p)
    }

    /// Builds from raw terms; exponent vectors must match the alphabet length.
    pub fn from_terms<I>(alphabet: Arc<[String]>, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponents, BigInt)>,
    {
        let mut p = Self::zero_on(alphabet);
        for (e, c) in terms {
            if e.len() != p.alphabet.len() {
                return Err(Error::InvalidArgument(format!(
                    "exponent vector of length {} over an alphabet of {}",
                    e.len(),
                    p.alphabet.len()
                )));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn alphabet_arc(&self) -> Arc<[String]> {
        self.alphabet.clone()
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.alphabet
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    /// Adds `c * x^exps` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, exps: Exponents, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_alphabet(&self, other: &MultiPoly) -> Result<()> {
        if Arc::ptr_eq(&self.alphabet, &other.alphabet) || self.alphabet == other.alphabet {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch {
                left: self.alphabet.to_vec(),
                right: other.alphabet.to_vec(),
            })
        }
    }

    pub fn add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_alphabet(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_alphabet(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> MultiPoly {
        let mut out = Self::zero_on(self.alphabet.clone());
        for (e, a) in &self.terms {
            out.add_term(e.clone(), a * c);
        }
        out
    }

    pub fn mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_alphabet(other)?;
        let mut out = Self::zero_on(self.alphabet.clone());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(add_exps(ea, eb)?, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<MultiPoly> {
        let mut acc = Self::constant_on(self.alphabet.clone(), 1);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Formal partial derivative with respect to `var`.
    pub fn partial(&self, var: &str) -> Result<MultiPoly> {
        let idx = self.index_of(var)?;
        Ok(self.partial_at(idx))
    }

    pub(crate) fn partial_at(&self, idx: usize) -> MultiPoly {
        let mut out = Self::zero_on(self.alphabet.clone());
        for (e, c) in &self.terms {
            let k = e[idx];
            if k == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[idx] -= 1;
            out.add_term(e2, c * BigInt::from(k));
        }
        out
    }

    /// Total degree of every term, or `None` when terms disagree (or the
    /// polynomial is zero).
    pub fn homogeneous_degree(&self) -> Option<u64> {
        let mut degs = self.terms.keys().map(|e| e.iter().map(|&k| k as u64).sum::<u64>());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Substitutes a univariate polynomial (in a single output variable) for
    /// every letter; integer constants are passed as constant polynomials.
    pub fn substitute(&self, assignment: &BTreeMap<String, UniPoly>) -> Result<UniPoly> {
        let images = self
            .alphabet
            .iter()
            .map(|v| {
                assignment
                    .get(v)
                    .cloned()
                    .ok_or_else(|| Error::UnassignedVariable(v.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut powers: Vec<Vec<UniPoly>> = vec![vec![UniPoly::one()]; images.len()];
        let mut out = UniPoly::zero();
        for (e, c) in &self.terms {
            let mut term = UniPoly::constant(c.clone());
            for (idx, &k) in e.iter().enumerate() {
                let k = k as usize;
                while powers[idx].len() <= k {
                    let next = powers[idx].last().unwrap() * &images[idx];
                    powers[idx].push(next);
                }
                if k > 0 {
                    term = &term * &powers[idx][k];
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Substitutes a polynomial over `target` for every letter of this
    /// alphabet. Letters absent from `images` are an error.
    pub fn compose(
        &self,
        target: Arc<[String]>,
        images: &[(&str, MultiPoly)],
    ) -> Result<MultiPoly> {
        let map: HashMap<&str, &MultiPoly> = images.iter().map(|(k, v)| (*k, v)).collect();
        let mut per_letter = Vec::with_capacity(self.alphabet.len());
        for v in self.alphabet.iter() {
            let img = *map
                .get(v.as_str())
                .ok_or_else(|| Error::UnassignedVariable(v.clone()))?;
            if *img.alphabet != *target {
                return Err(Error::AlphabetMismatch {
                    left: img.alphabet.to_vec(),
                    right: target.to_vec(),
                });
            }
            per_letter.push(img);
        }
        let one = Self::constant_on(target.clone(), 1);
        let mut powers: Vec<Vec<MultiPoly>> = vec![vec![one]; per_letter.len()];
        let mut out = Self::zero_on(target.clone());
        for (e, c) in &self.terms {
            let mut term = Self::constant_on(target.clone(), c.clone());
            for (idx, &k) in e.iter().enumerate() {
                let k = k as usize;
                while powers[idx].len() <= k {
                    let next = powers[idx].last().unwrap().mul(per_letter[idx])?;
                    powers[idx].push(next);
                }
                if k > 0 {
                    term = term.mul(&powers[idx][k])?;
                }
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Renders terms in lexicographic exponent order, e.g. `1 + 14q + q^2 + 4p + 4pq`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (e, c) in &self.terms {
            let mut mono = String::new();
            for (v, &k) in self.alphabet.iter().zip(e) {
                match k {
                    0 => {}
                    1 => mono.push_str(v),
                    _ => mono.push_str(&format!("{v}^{k}")),
                }
            }
            push_term(&mut out, c, &mono);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

pub(crate) fn add_exps(a: &[u32], b: &[u32]) -> Result<Exponents> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.checked_add(*y).ok_or(Error::ExponentOverflow))
        .collect()
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

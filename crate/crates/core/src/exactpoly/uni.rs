use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense univariate polynomial with unbounded integer coefficients.
///
/// Coefficients are stored by exponent and the highest stored entry is
/// always nonzero, so the zero polynomial has no entries at all.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<BigInt>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::from_coeffs(vec![c.into()])
    }

    /// `c * x^k`
    pub fn monomial(c: impl Into<BigInt>, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c.into();
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `(1 + x)^k`
    pub fn one_plus_x_pow(k: usize) -> Self {
        let mut row = vec![BigInt::one()];
        for _ in 0..k {
            let mut next = vec![BigInt::zero(); row.len() + 1];
            for (e, c) in row.iter().enumerate() {
                next[e] += c;
                next[e + 1] += c;
            }
            row = next;
        }
        UniPoly { coeffs: row }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient at `x^e`; zero beyond the degree.
    pub fn coeff(&self, e: usize) -> BigInt {
        self.coeffs.get(e).cloned().unwrap_or_default()
    }

    pub fn coeff_ref(&self, e: usize) -> Option<&BigInt> {
        self.coeffs.get(e)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficients padded with zeros up to exponent `n`.
    pub fn padded(&self, n: usize) -> Vec<BigInt> {
        (0..=n).map(|e| self.coeff(e)).collect()
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    fn fits_center(&self, n: usize) -> Result<()> {
        match self.degree() {
            Some(d) if d > n => Err(Error::DegreeExceedsCenter { degree: d, center: n }),
            _ => Ok(()),
        }
    }

    /// `x^n f(1/x)`; requires `deg f <= n`.
    pub fn reverse(&self, n: usize) -> Result<UniPoly> {
        self.fits_center(n)?;
        Ok(Self::from_coeffs((0..=n).rev().map(|e| self.coeff(e)).collect()))
    }

    /// Horner evaluation at an integer point.
    pub fn eval(&self, v: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * v + c)
    }

    pub fn eval_i64(&self, v: i64) -> BigInt {
        self.eval(&BigInt::from(v))
    }

    /// `x^k f(x)`
    pub fn shift(&self, k: usize) -> UniPoly {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs }
    }

    pub fn scale(&self, c: &BigInt) -> UniPoly {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Divides every coefficient by `d`, failing unless all divisions are exact.
    pub fn div_exact_scalar(&self, d: &BigInt) -> Result<UniPoly> {
        if d.is_zero() {
            return Err(Error::InexactDivision("division by zero".into()));
        }
        let mut out = Vec::with_capacity(self.coeffs.len());
        for (e, c) in self.coeffs.iter().enumerate() {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return Err(Error::InexactDivision(format!(
                    "coefficient {c} at x^{e} is not divisible by {d}"
                )));
            }
            out.push(q);
        }
        Ok(Self::from_coeffs(out))
    }

    /// Exact quotient by `(1 - x)`.
    pub fn div_one_minus_x(&self) -> Result<UniPoly> {
        // f = (1 - x) q  =>  q_e = f_0 + ... + f_e, and the full sum must vanish.
        let mut acc = BigInt::zero();
        let mut q = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            acc += c;
            q.push(acc.clone());
        }
        if !acc.is_zero() {
            return Err(Error::InexactDivision(format!(
                "remainder {acc} on division by 1 - x"
            )));
        }
        q.pop();
        Ok(Self::from_coeffs(q))
    }

    /// Formal derivative.
    pub fn derivative(&self) -> UniPoly {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(e, c)| c * BigInt::from(e))
                .collect(),
        )
    }

    /// Renders as `1 + 408x + 912x^2 + 64x^3` in the variable `var`.
    pub fn to_text(&self, var: &str) -> String {
        let mut out = String::new();
        for (e, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = match e {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{e}"),
            };
            push_term(&mut out, c, &mono);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

pub(crate) fn push_term(out: &mut String, c: &BigInt, mono: &str) {
    let mag = c.abs();
    if out.is_empty() {
        if c.is_negative() {
            out.push('-');
        }
    } else if c.is_negative() {
        out.push_str(" - ");
    } else {
        out.push_str(" + ");
    }
    if mono.is_empty() || !mag.is_one() {
        out.push_str(&mag.to_string());
    }
    out.push_str(mono);
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text("x"))
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::from_coeffs((0..n).map(|e| self.coeff(e) + rhs.coeff(e)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::from_coeffs((0..n).map(|e| self.coeff(e) - rhs.coeff(e)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: UniPoly) -> UniPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        -&self
    }
}

impl std::iter::Sum for UniPoly {
    fn sum<I: Iterator<Item = UniPoly>>(iter: I) -> UniPoly {
        iter.fold(UniPoly::zero(), |acc, p| &acc + &p)
    }
}

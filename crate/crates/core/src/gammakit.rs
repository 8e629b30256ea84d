//! Symmetry, unimodality, gamma-vectors, symmetric decomposition and
//! bi-gamma-positivity of univariate integer polynomials.
//!
//! A polynomial `f` with declared center `n` is symmetric when
//! `f_i = f_{n-i}`; it then expands uniquely as
//! `sum_k gamma_k x^k (1+x)^(n-2k)`. Every polynomial of degree at most `n`
//! splits uniquely as `a + x b` with `a` symmetric about `n` and `b`
//! symmetric about `n - 1`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::ser::Serializer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactpoly::{UniPoly, UniPolyJson};

/// Coordinates of a symmetric polynomial in the basis `x^k (1+x)^(center-2k)`.
///
/// Nonzero vectors always carry `center / 2 + 1` entries. The zero
/// polynomial is the empty vector, whatever its nominal center.
#[derive(Clone, Debug, Eq)]
pub struct GammaVector {
    center: usize,
    gammas: Vec<BigInt>,
}

impl PartialEq for GammaVector {
    fn eq(&self, other: &Self) -> bool {
        (self.is_zero() && other.is_zero())
            || (self.center == other.center && self.gammas == other.gammas)
    }
}

impl GammaVector {
    pub fn new(center: usize, mut gammas: Vec<BigInt>) -> Result<Self> {
        let len = center / 2 + 1;
        if gammas.len() > len {
            if gammas[len..].iter().any(|g| !g.is_zero()) {
                return Err(Error::InvalidArgument(format!(
                    "{} gamma entries for center {center}",
                    gammas.len()
                )));
            }
            gammas.truncate(len);
        }
        if gammas.iter().all(Zero::is_zero) {
            gammas.clear();
        } else {
            gammas.resize(len, BigInt::zero());
        }
        Ok(GammaVector { center, gammas })
    }

    pub fn from_i64s(center: usize, gammas: &[i64]) -> Result<Self> {
        Self::new(center, gammas.iter().map(|&g| BigInt::from(g)).collect())
    }

    pub fn zero(center: usize) -> Self {
        GammaVector { center, gammas: Vec::new() }
    }

    pub fn center(&self) -> usize {
        self.center
    }

    pub fn gammas(&self) -> &[BigInt] {
        &self.gammas
    }

    pub fn is_zero(&self) -> bool {
        self.gammas.is_empty()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.gammas.iter().all(|g| !g.is_negative())
    }

    pub fn first_negative(&self) -> Option<usize> {
        self.gammas.iter().position(Signed::is_negative)
    }

    /// Expands back to coefficient form.
    pub fn reconstruct(&self) -> UniPoly {
        self.gammas
            .iter()
            .enumerate()
            .filter(|(_, g)| !g.is_zero())
            .map(|(k, g)| UniPoly::one_plus_x_pow(self.center - 2 * k).shift(k).scale(g))
            .sum()
    }

    /// Product of the underlying polynomials: centers add, entries convolve.
    pub fn mul(&self, other: &GammaVector) -> GammaVector {
        let center = self.center + other.center;
        if self.is_zero() || other.is_zero() {
            return GammaVector::zero(center);
        }
        let mut out = vec![BigInt::zero(); center / 2 + 1];
        for (i, a) in self.gammas.iter().enumerate() {
            for (j, b) in other.gammas.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        GammaVector::new(center, out).expect("convolution stays in range")
    }

    /// `x f(x)`, which is symmetric about `center + 2`.
    pub fn shift_x(&self) -> GammaVector {
        let center = self.center + 2;
        if self.is_zero() {
            return GammaVector::zero(center);
        }
        let mut out = Vec::with_capacity(self.gammas.len() + 1);
        out.push(BigInt::zero());
        out.extend(self.gammas.iter().cloned());
        GammaVector::new(center, out).expect("shift stays in range")
    }

    pub fn add(&self, other: &GammaVector) -> Result<GammaVector> {
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if self.center != other.center {
            return Err(Error::InvalidArgument(format!(
                "adding gamma vectors with centers {} and {}",
                self.center, other.center
            )));
        }
        let sum = self.gammas.iter().zip(&other.gammas).map(|(a, b)| a + b).collect();
        GammaVector::new(self.center, sum)
    }

    pub fn scale(&self, c: &BigInt) -> GammaVector {
        GammaVector::new(self.center, self.gammas.iter().map(|g| g * c).collect())
            .expect("scaling keeps length")
    }
}

impl Serialize for GammaVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            center: usize,
            gammas: Vec<String>,
        }
        Repr {
            center: self.center,
            gammas: self.gammas.iter().map(ToString::to_string).collect(),
        }
        .serialize(s)
    }
}

/// `f = a + x b` with `a = x^n a(1/x)` and `b = x^(n-1) b(1/x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymDecomp {
    pub a: UniPoly,
    pub b: UniPoly,
    pub n: usize,
}

impl SymDecomp {
    pub fn recombine(&self) -> UniPoly {
        &self.a + &self.b.shift(1)
    }
}

/// Which half of a symmetric decomposition a reason refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Part {
    Whole,
    A,
    B,
}

/// Machine-readable cause of a negative verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Reason {
    DegreeExceedsCenter { degree: usize, center: usize },
    NotSymmetric { index: usize },
    NegativeGamma { part: Part, index: usize },
}

pub fn is_symmetric(f: &UniPoly, n: usize) -> Result<bool> {
    Ok(asymmetry_index(f, n)?.is_none())
}

fn asymmetry_index(f: &UniPoly, n: usize) -> Result<Option<usize>> {
    if let Some(d) = f.degree() {
        if d > n {
            return Err(Error::DegreeExceedsCenter { degree: d, center: n });
        }
    }
    Ok((0..=n / 2).find(|&i| f.coeff(i) != f.coeff(n - i)))
}

/// Gamma-vector of a polynomial symmetric about `n`, by peeling
/// `gamma_k x^k (1+x)^(n-2k)` off from the lowest degree upward.
pub fn gamma_expand(f: &UniPoly, n: usize) -> Result<GammaVector> {
    if let Some(index) = asymmetry_index(f, n)? {
        return Err(Error::NotSymmetric { center: n, index });
    }
    if f.is_zero() {
        return Ok(GammaVector::zero(n));
    }
    let mut rest = f.padded(n);
    let mut gammas = Vec::with_capacity(n / 2 + 1);
    for k in 0..=n / 2 {
        let g = rest[k].clone();
        if !g.is_zero() {
            let basis = UniPoly::one_plus_x_pow(n - 2 * k);
            for (e, c) in basis.coeffs().iter().enumerate() {
                rest[k + e] -= &g * c;
            }
        }
        gammas.push(g);
    }
    if rest.iter().any(|c| !c.is_zero()) {
        return Err(Error::Defect(format!("gamma peel of {f} left a remainder")));
    }
    GammaVector::new(n, gammas)
}

/// Outcome of a gamma-positivity test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaVerdict {
    pub positive: bool,
    pub reason: Option<Reason>,
    /// Present whenever `f` is symmetric, positive or not.
    pub certificate: Option<GammaVector>,
}

pub fn is_gamma_positive(f: &UniPoly, n: usize) -> GammaVerdict {
    match gamma_expand(f, n) {
        Ok(g) => {
            let reason = g
                .first_negative()
                .map(|index| Reason::NegativeGamma { part: Part::Whole, index });
            GammaVerdict { positive: reason.is_none(), reason, certificate: Some(g) }
        }
        Err(Error::NotSymmetric { index, .. }) => GammaVerdict {
            positive: false,
            reason: Some(Reason::NotSymmetric { index }),
            certificate: None,
        },
        Err(Error::DegreeExceedsCenter { degree, center }) => GammaVerdict {
            positive: false,
            reason: Some(Reason::DegreeExceedsCenter { degree, center }),
            certificate: None,
        },
        Err(e) => unreachable!("gamma_expand only reports shape errors: {e}"),
    }
}

/// The unique symmetric decomposition of `f` about center `n`.
pub fn sym_decompose(f: &UniPoly, n: usize) -> Result<SymDecomp> {
    let rev_n = f.reverse(n)?;
    let rev_n1 = f.reverse(n + 1)?;
    let a = (f - &rev_n1).div_one_minus_x()?;
    let b = (&rev_n - f).div_one_minus_x()?;
    let d = SymDecomp { a, b, n };
    if d.recombine() != *f {
        return Err(Error::Defect(format!("a + x b != f for {f}")));
    }
    let b_ok = match n {
        0 => d.b.is_zero(),
        _ => d.b.reverse(n - 1).is_ok_and(|r| r == d.b),
    };
    if d.a.reverse(n)? != d.a || !b_ok {
        return Err(Error::Defect(format!("decomposition of {f} is not symmetric")));
    }
    Ok(d)
}

/// Outcome of a bi-gamma-positivity test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiGammaVerdict {
    pub holds: bool,
    pub reason: Option<Reason>,
    pub decomposition: Option<SymDecomp>,
    pub gamma_a: Option<GammaVector>,
    pub gamma_b: Option<GammaVector>,
}

pub fn is_bi_gamma_positive(f: &UniPoly, n: usize) -> BiGammaVerdict {
    let d = match sym_decompose(f, n) {
        Ok(d) => d,
        Err(Error::DegreeExceedsCenter { degree, center }) => {
            return BiGammaVerdict {
                holds: false,
                reason: Some(Reason::DegreeExceedsCenter { degree, center }),
                decomposition: None,
                gamma_a: None,
                gamma_b: None,
            }
        }
        Err(e) => panic!("symmetric decomposition failed: {e}"),
    };
    let ga = gamma_expand(&d.a, n).expect("a is symmetric about n");
    let gb = if d.b.is_zero() {
        GammaVector::zero(n.saturating_sub(1))
    } else {
        gamma_expand(&d.b, n - 1).expect("b is symmetric about n - 1")
    };
    let reason = ga
        .first_negative()
        .map(|index| Reason::NegativeGamma { part: Part::A, index })
        .or_else(|| gb.first_negative().map(|index| Reason::NegativeGamma { part: Part::B, index }));
    BiGammaVerdict {
        holds: reason.is_none(),
        reason,
        decomposition: Some(d),
        gamma_a: Some(ga),
        gamma_b: Some(gb),
    }
}

/// Weakly rising, then weakly falling.
pub fn is_unimodal(f: &UniPoly) -> bool {
    let c = f.coeffs();
    let mut i = 0;
    while i + 1 < c.len() && c[i] <= c[i + 1] {
        i += 1;
    }
    while i + 1 < c.len() && c[i] >= c[i + 1] {
        i += 1;
    }
    i + 1 >= c.len()
}

/// `f_0 <= f_n <= f_1 <= f_(n-1) <= ...`, reading absent coefficients as 0.
pub fn is_alternatingly_increasing(f: &UniPoly, n: usize) -> bool {
    if f.degree().is_some_and(|d| d > n) {
        return false;
    }
    let mut chain = Vec::with_capacity(n + 1);
    let (mut lo, mut hi) = (0usize, n);
    loop {
        chain.push(lo);
        if lo == hi {
            break;
        }
        chain.push(hi);
        lo += 1;
        if lo > hi - 1 {
            break;
        }
        hi -= 1;
    }
    chain.windows(2).all(|w| f.coeff(w[0]) <= f.coeff(w[1]))
}

/// Tri-state gamma-positivity verdict; serializes as `true`, `false` or
/// `"not-symmetric"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GammaStatus {
    Positive,
    NotPositive,
    NotSymmetric,
}

impl Serialize for GammaStatus {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            GammaStatus::Positive => s.serialize_bool(true),
            GammaStatus::NotPositive => s.serialize_bool(false),
            GammaStatus::NotSymmetric => s.serialize_str("not-symmetric"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificates {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<GammaVector>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<UniPolyJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<UniPolyJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma_a: Option<GammaVector>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma_b: Option<GammaVector>,
}

/// Every property of one polynomial at one declared center.
#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub polynomial: UniPolyJson,
    pub center: usize,
    pub symmetric: bool,
    pub unimodal: bool,
    pub alternatingly_increasing: bool,
    pub gamma_positive: GammaStatus,
    pub bi_gamma_positive: bool,
    pub reasons: Vec<Reason>,
    pub certificates: Certificates,
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }
}

pub fn analyze(f: &UniPoly, n: usize) -> AnalysisReport {
    let gv = is_gamma_positive(f, n);
    let bv = is_bi_gamma_positive(f, n);
    let symmetric = gv.certificate.is_some();
    let gamma_positive = match (&gv.reason, gv.positive) {
        (_, true) => GammaStatus::Positive,
        (Some(Reason::NotSymmetric { .. }), _) => GammaStatus::NotSymmetric,
        _ => GammaStatus::NotPositive,
    };
    let reasons = gv.reason.iter().chain(bv.reason.iter()).cloned().collect();
    let (a, b) = match &bv.decomposition {
        Some(d) => (Some(UniPolyJson::new(&d.a, "x")), Some(UniPolyJson::new(&d.b, "x"))),
        None => (None, None),
    };
    AnalysisReport {
        polynomial: UniPolyJson::new(f, "x"),
        center: n,
        symmetric,
        unimodal: is_unimodal(f),
        alternatingly_increasing: is_alternatingly_increasing(f, n),
        gamma_positive,
        bi_gamma_positive: bv.holds,
        reasons,
        certificates: Certificates {
            gamma: gv.certificate,
            a,
            b,
            gamma_a: bv.gamma_a,
            gamma_b: bv.gamma_b,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_i64s(c)
    }

    fn gv(center: usize, g: &[i64]) -> GammaVector {
        GammaVector::from_i64s(center, g).unwrap()
    }

    const J4: &[i64] = &[1, 4];
    const J5: &[i64] = &[1, 14, 1];
    const J6: &[i64] = &[1, 44, 16];
    const J7: &[i64] = &[1, 135, 135, 1];
    const J8: &[i64] = &[1, 408, 912, 64];

    #[test]
    fn symmetry() {
        assert!(is_symmetric(&p(J5), 2).unwrap());
        assert!(!is_symmetric(&p(J4), 1).unwrap());
        assert!(is_symmetric(&UniPoly::zero(), 5).unwrap());
        assert!(is_symmetric(&p(&[0, 1]), 2).unwrap());
        assert!(matches!(is_symmetric(&p(J8), 2), Err(Error::DegreeExceedsCenter { .. })));
    }

    #[test]
    fn gamma_vectors() {
        let g = gamma_expand(&p(&[1, 2, 1]), 2).unwrap();
        assert_eq!(g.gammas(), &[BigInt::from(1), BigInt::from(0)]);
        assert_eq!(gamma_expand(&p(J7), 3).unwrap(), gv(3, &[1, 132]));
        assert_eq!(gamma_expand(&p(J5), 2).unwrap(), gv(2, &[1, 12]));
        assert!(matches!(gamma_expand(&p(J4), 1), Err(Error::NotSymmetric { .. })));
        assert!(gamma_expand(&UniPoly::zero(), 4).unwrap().is_zero());
    }

    #[test]
    fn gamma_positivity() {
        let v = is_gamma_positive(&p(&[1, 3, 1]), 2);
        assert!(v.positive);
        assert_eq!(v.certificate, Some(gv(2, &[1, 1])));
        let v = is_gamma_positive(&p(&[1, 1, 1]), 2);
        assert!(!v.positive);
        assert_eq!(v.certificate, Some(gv(2, &[1, -1])));
        assert_eq!(v.reason, Some(Reason::NegativeGamma { part: Part::Whole, index: 1 }));
        assert!(is_gamma_positive(&p(J7), 3).positive);
        let v = is_gamma_positive(&p(J4), 1);
        assert_eq!(v.reason, Some(Reason::NotSymmetric { index: 0 }));
    }

    #[test]
    fn decompositions() {
        let d = sym_decompose(&p(J4), 1).unwrap();
        assert_eq!((d.a, d.b), (p(&[1, 1]), p(&[3])));

        let d = sym_decompose(&p(J8), 3).unwrap();
        assert_eq!(d.a, p(&[1, 345, 345, 1]));
        assert_eq!(d.b, p(&[63, 567, 63]));
        assert_eq!(gamma_expand(&d.a, 3).unwrap(), gv(3, &[1, 342]));
        assert_eq!(gamma_expand(&d.b, 2).unwrap(), gv(2, &[63, 441]));

        let d = sym_decompose(&p(J5), 2).unwrap();
        assert_eq!((d.a, d.b), (p(J5), UniPoly::zero()));

        let d = sym_decompose(&UniPoly::constant(5), 0).unwrap();
        assert_eq!((d.a, d.b), (UniPoly::constant(5), UniPoly::zero()));
    }

    #[test]
    fn bi_gamma() {
        let v = is_bi_gamma_positive(&p(J6), 2);
        assert!(v.holds);
        assert_eq!(v.gamma_a, Some(gv(2, &[1, 27])));
        assert_eq!(v.gamma_b, Some(gv(1, &[15])));

        let v = is_bi_gamma_positive(&p(&[1, 1]), 1);
        assert!(v.holds);
        assert!(v.gamma_b.unwrap().is_zero());

        // 2 + x about 1: a = 2 + 2x, b = -1.
        let v = is_bi_gamma_positive(&p(&[2, 1]), 1);
        assert!(!v.holds);
        let d = v.decomposition.unwrap();
        assert_eq!((d.a, d.b), (p(&[2, 2]), p(&[-1])));
        assert_eq!(v.reason, Some(Reason::NegativeGamma { part: Part::B, index: 0 }));
    }

    #[test]
    fn unimodality() {
        assert!(is_unimodal(&p(J8)));
        assert!(!is_unimodal(&p(&[1, 0, 1])));
        assert!(is_unimodal(&p(&[7])));
        assert!(is_unimodal(&UniPoly::zero()));
        assert!(is_unimodal(&p(&[1, 1, 3, 3, 2, 2])));
    }

    #[test]
    fn alternating_increase() {
        assert!(is_alternatingly_increasing(&p(J8), 3));
        assert!(is_alternatingly_increasing(&p(&[1, 1, 1]), 2));
        assert!(!is_alternatingly_increasing(&p(&[2, 1]), 1));
        assert!(is_alternatingly_increasing(&UniPoly::constant(3), 0));
        assert!(!is_alternatingly_increasing(&p(J8), 2));
        // declared center above the degree reads the missing top as 0
        assert!(!is_alternatingly_increasing(&p(&[1, 2]), 2));
    }

    #[test]
    fn gamma_arithmetic() {
        let a = gv(2, &[1, 12]);
        let b = gv(1, &[1]);
        assert_eq!(a.mul(&b).reconstruct(), &a.reconstruct() * &b.reconstruct());
        assert_eq!(a.shift_x().reconstruct(), a.reconstruct().shift(1));
        assert_eq!(gv(3, &[1, 0, 0]).gammas().len(), 2);
        assert!(GammaVector::from_i64s(1, &[1, 2]).is_err());
    }

    #[test]
    fn report_json() {
        let r = analyze(&p(J8), 3);
        assert!(r.unimodal && r.alternatingly_increasing && r.bi_gamma_positive);
        assert_eq!(r.gamma_positive, GammaStatus::NotSymmetric);
        let s = r.to_json();
        assert!(s.contains(r#""gamma_positive":"not-symmetric""#), "{s}");
        assert!(s.contains(r#""gamma_a":{"center":3,"gammas":["1","342"]}"#), "{s}");
    }
}

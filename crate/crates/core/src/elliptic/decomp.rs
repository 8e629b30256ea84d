//! Gamma certificates for odd `J` and bi-gamma certificates for even `J`,
//! assembled from gamma-vector convolutions, plus the generic closure that
//! builds bi-gamma-positive sequences from gamma-positive ones.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactpoly::{binomial, UniPoly};
use crate::gammakit::{is_alternatingly_increasing, sym_decompose, GammaVector, SymDecomp};
use crate::triangle::Triangle;

/// `(gamma(2n+1,0,j))_j`, the gamma-vector of `J_(2n+1)` about center `n`.
pub fn j_odd_gamma(gamma: &Triangle, n: usize) -> Result<GammaVector> {
    let row = 2 * n + 1;
    if gamma.row(row).is_none() {
        return Err(Error::InvalidArgument(format!("gamma triangle has no row {row}")));
    }
    let entries = (0..=n / 2).map(|j| gamma.get(row, 0, j as i64)).collect();
    GammaVector::new(n, entries)
}

/// `J_(2m+2) = A + x B` with gamma certificates for `A` (center `m`) and
/// `B` (center `m - 1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvenDecomposition {
    pub m: usize,
    pub a: GammaVector,
    pub b: GammaVector,
}

impl EvenDecomposition {
    pub fn polynomial(&self) -> UniPoly {
        &self.a.reconstruct() + &self.b.reconstruct().shift(1)
    }

    pub fn to_sym_decomp(&self) -> SymDecomp {
        SymDecomp { a: self.a.reconstruct(), b: self.b.reconstruct(), n: self.m }
    }
}

/// One application of the convolution step shared by the even-`J`
/// construction and the generic closure:
///
/// `A = w_0 g_top + sum_{i>=1} w_i g_(top-i) * x b_i`,
/// `B = sum_{i>=1} w_i g_(top-i) * a_i`,
///
/// where `(a_i, b_i)` is the certified decomposition of the `i`-th earlier
/// term and `g_k` has center `k`.
fn convolve_step(
    top: usize,
    weight: impl Fn(usize) -> BigInt,
    g: impl Fn(usize) -> Result<GammaVector>,
    earlier: &[(GammaVector, GammaVector)],
) -> Result<(GammaVector, GammaVector)> {
    let mut a = g(top)?.scale(&weight(0));
    let mut b = GammaVector::zero(top.saturating_sub(1));
    for i in 1..=top {
        let w = weight(i);
        if w.is_zero() {
            continue;
        }
        let gi = g(top - i)?.scale(&w);
        let (ai, bi) = &earlier[i];
        a = a.add(&gi.mul(&bi.shift_x()))?;
        b = b.add(&gi.mul(ai))?;
    }
    Ok((a, b))
}

/// Decompositions of `J_2, J_4, ..., J_(2 m_max + 2)`; index `m` holds
/// `J_(2m+2)`. Needs the gamma triangle through row `2 m_max + 1`.
pub fn j_even_decompositions(gamma: &Triangle, m_max: usize) -> Result<Vec<EvenDecomposition>> {
    // earlier[i] = certified (a, b) of J_2i; J_0 = 1 sits entirely in a.
    let mut earlier = vec![(GammaVector::from_i64s(0, &[1])?, GammaVector::zero(0))];
    let mut out = Vec::with_capacity(m_max + 1);
    for m in 0..=m_max {
        let (a, b) = convolve_step(
            m,
            |i| binomial(2 * m + 1, 2 * i),
            |k| j_odd_gamma(gamma, k),
            &earlier,
        )?;
        if let Some(k) = a.first_negative().or(b.first_negative()) {
            return Err(Error::Defect(format!("negative gamma entry {k} building J_{}", 2 * m + 2)));
        }
        earlier.push((a.clone(), b.clone()));
        out.push(EvenDecomposition { m, a, b });
    }
    Ok(out)
}

pub fn j_even_decomposition(gamma: &Triangle, m: usize) -> Result<EvenDecomposition> {
    Ok(j_even_decompositions(gamma, m)?.pop().expect("m + 1 entries"))
}

/// One member `f_n` of a closure sequence with its certificates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureTerm {
    pub n: usize,
    pub poly: UniPoly,
    /// Center `n - 1` (0 for `f_0`).
    pub decomposition: SymDecomp,
    pub gamma_a: GammaVector,
    pub gamma_b: GammaVector,
    pub degenerate: bool,
    pub alternatingly_increasing: bool,
}

/// `f_0 = 1`, `f_(n+1) = sum_{i<=n} M(n,i) g_(n-i)(x) x^i f_i(1/x)` for
/// gamma-positive `g_k` of degree `k` and nonnegative `M`, each term returned
/// with a bi-gamma certificate built by convolution and checked against the
/// direct expansion and the symmetric decomposition.
pub fn bi_gamma_closure(
    g: &[GammaVector],
    weights: &[Vec<BigInt>],
    n_max: usize,
) -> Result<Vec<ClosureTerm>> {
    if n_max >= 1 && g.len() < n_max {
        return Err(Error::Precondition(format!("need g_0..g_{}, got {}", n_max - 1, g.len())));
    }
    for (k, gk) in g.iter().enumerate() {
        if gk.center() != k || gk.gammas().first().is_none_or(Zero::is_zero) {
            return Err(Error::Precondition(format!("g_{k} must have degree {k}")));
        }
        if !gk.is_nonnegative() {
            return Err(Error::Precondition(format!("g_{k} is not gamma-positive")));
        }
    }
    for n in 0..n_max {
        let row = weights
            .get(n)
            .filter(|r| r.len() > n)
            .ok_or_else(|| Error::Precondition(format!("weights row {n} needs {} entries", n + 1)))?;
        if row.iter().any(Signed::is_negative) {
            return Err(Error::Precondition(format!("weights row {n} has a negative entry")));
        }
    }

    let one = UniPoly::one();
    let mut earlier = vec![(GammaVector::from_i64s(0, &[1])?, GammaVector::zero(0))];
    let mut terms = vec![ClosureTerm {
        n: 0,
        poly: one.clone(),
        decomposition: SymDecomp { a: one, b: UniPoly::zero(), n: 0 },
        gamma_a: earlier[0].0.clone(),
        gamma_b: earlier[0].1.clone(),
        degenerate: false,
        alternatingly_increasing: true,
    }];
    for n in 0..n_max {
        let w = &weights[n];
        let (a, b) = convolve_step(n, |i| w[i].clone(), |k| Ok(g[k].clone()), &earlier)?;
        if !a.is_nonnegative() || !b.is_nonnegative() {
            return Err(Error::Defect(format!("negative certificate for f_{}", n + 1)));
        }
        let direct: UniPoly = (0..=n)
            .map(|i| {
                let rev = terms[i].poly.reverse(i)?;
                Ok((&g[n - i].reconstruct() * &rev).scale(&w[i]))
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .sum();
        let certified = SymDecomp { a: a.reconstruct(), b: b.reconstruct(), n };
        if certified.recombine() != direct {
            return Err(Error::Defect(format!("certificate for f_{} does not reconstruct it", n + 1)));
        }
        if sym_decompose(&direct, n)? != certified {
            return Err(Error::Defect(format!(
                "certificate for f_{} is not the symmetric decomposition",
                n + 1
            )));
        }
        earlier.push((a.clone(), b.clone()));
        terms.push(ClosureTerm {
            n: n + 1,
            degenerate: direct.is_zero(),
            alternatingly_increasing: is_alternatingly_increasing(&direct, n),
            poly: direct,
            decomposition: certified,
            gamma_a: a,
            gamma_b: b,
        });
    }
    Ok(terms)
}

/// A reproducible random closure instance: gamma-vectors with entries in
/// `0..=5` (leading entry at least 1) and weights in `0..=3`.
pub fn random_closure_instance(seed: u64, n_max: usize) -> (Vec<GammaVector>, Vec<Vec<BigInt>>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = (0..n_max.max(1))
        .map(|k| {
            let entries = (0..=k / 2)
                .map(|j| BigInt::from(if j == 0 { rng.gen_range(1..=5) } else { rng.gen_range(0..=5) }))
                .collect();
            GammaVector::new(k, entries).expect("length fits center")
        })
        .collect();
    let w = (0..n_max)
        .map(|n| (0..=n).map(|_| BigInt::from(rng.gen_range(0..=3))).collect())
        .collect();
    (g, w)
}

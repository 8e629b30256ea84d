//! Independent routes to the coefficient polynomials `J_n(x)`:
//! triangle slices, specializations of `P_n`, Viennot's convolutions and
//! term-by-term integration of the differential system for sn, cn, dn.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use super::triangles::{p_poly, s_triangle_operator, s_triangle_recurrence};
use crate::error::{Error, Result};
use crate::exactpoly::{binomial, factorial, FormalSeries, UniPoly};
use crate::triangle::Triangle;

/// Where a sequence of `J_n` came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Route {
    /// Slices of the `s` triangle read off the Schett-Dumont operator.
    Operator,
    /// Specializations of `P_n` built from Dumont's recurrence.
    Recurrence,
    /// Viennot's convolution formulas.
    Viennot,
    /// Integration of the sn/cn/dn differential system.
    Series,
    /// Increasing-tree statistics.
    Trees,
    /// Brute force over permutations.
    Permutations,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::Operator => "operator",
            Route::Recurrence => "recurrence",
            Route::Viennot => "viennot",
            Route::Series => "series",
            Route::Trees => "trees",
            Route::Permutations => "perms",
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Route {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "operator" => Route::Operator,
            "recurrence" => Route::Recurrence,
            "viennot" => Route::Viennot,
            "series" => Route::Series,
            "trees" => Route::Trees,
            "perms" => Route::Permutations,
            _ => return Err(Error::InvalidArgument(format!("unknown route `{s}`"))),
        })
    }
}

/// `J_0, J_1, ..., J_(n_max)` produced by one route.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JSequence {
    pub route: Route,
    pub polys: Vec<UniPoly>,
}

impl JSequence {
    pub fn get(&self, n: usize) -> Option<&UniPoly> {
        self.polys.get(n)
    }

    pub fn max_n(&self) -> usize {
        self.polys.len().saturating_sub(1)
    }
}

/// `J_n` from `s(2k,i,0)` (even n) or `s(2k+1,0,j)` (odd n).
pub fn j_from_triangle(s: &Triangle, n: usize) -> Result<UniPoly> {
    if n == 0 {
        return Ok(UniPoly::one());
    }
    let row = s
        .row(n)
        .ok_or_else(|| Error::InvalidArgument(format!("s triangle has no row {n}")))?;
    let mut coeffs = vec![BigInt::zero(); n / 2 + 1];
    for ((i, j), v) in row {
        match (n % 2, i, j) {
            (0, i, 0) => coeffs[*i] = v.clone(),
            (1, 0, j) => coeffs[*j] = v.clone(),
            _ => {}
        }
    }
    Ok(UniPoly::from_coeffs(coeffs))
}

fn specialize_p(s: &Triangle, n: usize, p: &UniPoly, q: &UniPoly) -> Result<UniPoly> {
    let asg = BTreeMap::from([("p".to_string(), p.clone()), ("q".to_string(), q.clone())]);
    p_poly(s, n)?.substitute(&asg)
}

/// `J_2k = P_2k(x,0) = P_(2k-1)(x,0)` and `J_(2k+1) = P_(2k+1)(0,x) = P_2k(0,x)`;
/// both specializations are computed and must agree.
pub fn j_from_p(s: &Triangle, n: usize) -> Result<UniPoly> {
    if n == 0 {
        return Ok(UniPoly::one());
    }
    let x = UniPoly::monomial(1, 1);
    let zero = UniPoly::zero();
    let (p, q) = if n.is_multiple_of(2) { (&x, &zero) } else { (&zero, &x) };
    let here = specialize_p(s, n, p, q)?;
    let below = specialize_p(s, n - 1, p, q)?;
    if here != below {
        return Err(Error::Defect(format!(
            "J_{n}: P_{n} gives {here} but P_{} gives {below}",
            n - 1
        )));
    }
    Ok(here)
}

/// Sequences from the two triangle routes, each built to row `n_max`.
pub fn j_operator(n_max: usize) -> Result<JSequence> {
    let s = s_triangle_operator(n_max.max(1))?;
    Ok(JSequence {
        route: Route::Operator,
        polys: (0..=n_max).map(|n| j_from_triangle(&s, n)).collect::<Result<_>>()?,
    })
}

pub fn j_recurrence(n_max: usize) -> Result<JSequence> {
    let s = s_triangle_recurrence(n_max.max(1))?;
    Ok(JSequence {
        route: Route::Recurrence,
        polys: (0..=n_max).map(|n| j_from_p(&s, n)).collect::<Result<_>>()?,
    })
}

/// Viennot's convolutions, starting from `J_0 = 1`:
///
/// `J_2n = sum_{i<n} C(2n-1, 2i) J_(2n-1-2i)(x) x^i J_2i(1/x)`,
/// `J_(2n+1) = sum_{i<=n} C(2n, 2i) J_(2n-2i)(x) x^i J_2i(1/x)`.
pub fn j_viennot(n_max: usize) -> Result<JSequence> {
    let mut polys = vec![UniPoly::one()];
    // x^i J_2i(1/x), filled as even indices appear.
    let mut reversed = vec![UniPoly::one()];
    for n in 1..=n_max {
        let half = n / 2;
        let terms = if n % 2 == 0 { 0..half } else { 0..half + 1 };
        let mut acc = UniPoly::zero();
        for i in terms {
            let c = binomial(n - 1, 2 * i);
            acc = &acc + &(&polys[n - 1 - 2 * i] * &reversed[i]).scale(&c);
        }
        if n % 2 == 0 {
            reversed.push(acc.reverse(half)?);
        }
        polys.push(acc);
    }
    Ok(JSequence { route: Route::Viennot, polys })
}

/// The three expansions produced by integrating the differential system,
/// each stored as `scale * sum c_m u^m` with `scale = order!` so every
/// coefficient is an integer polynomial in `x = k^2`.
#[derive(Clone, Debug)]
pub struct EllipticSeries {
    pub scale: BigInt,
    pub sn: FormalSeries,
    pub cn: FormalSeries,
    pub dn: FormalSeries,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EllipticFn {
    Sn,
    Cn,
    Dn,
}

impl EllipticSeries {
    /// Integrates `sn' = cn dn`, `cn' = -sn dn`, `dn' = -x sn cn` with
    /// `sn(0) = 0`, `cn(0) = dn(0) = 1`, one power of `u` at a time.
    pub fn integrate(order: usize) -> Result<Self> {
        let scale = factorial(order);
        let x = UniPoly::monomial(1, 1);
        let mut sn = vec![UniPoly::zero()];
        let mut cn = vec![UniPoly::constant(scale.clone())];
        let mut dn = vec![UniPoly::constant(scale.clone())];
        let cauchy = |a: &[UniPoly], b: &[UniPoly], m: usize| -> UniPoly {
            (0..=m).map(|i| &a[i] * &b[m - i]).sum()
        };
        for m in 0..order {
            let step = |prod: UniPoly| -> Result<UniPoly> {
                prod.div_exact_scalar(&scale)?
                    .div_exact_scalar(&BigInt::from(m + 1))
                    .map_err(|e| Error::InexactDivision(format!("integrating u^{m}: {e}")))
            };
            let s_next = step(cauchy(&cn, &dn, m))?;
            let c_next = -step(cauchy(&sn, &dn, m))?;
            let d_next = -(&x * &step(cauchy(&sn, &cn, m))?);
            sn.push(s_next);
            cn.push(c_next);
            dn.push(d_next);
        }
        Ok(EllipticSeries {
            sn: FormalSeries::from_coeffs(order, sn)?,
            cn: FormalSeries::from_coeffs(order, cn)?,
            dn: FormalSeries::from_coeffs(order, dn)?,
            scale,
        })
    }

    pub fn order(&self) -> usize {
        self.sn.order()
    }

    fn series(&self, f: EllipticFn) -> &FormalSeries {
        match f {
            EllipticFn::Sn => &self.sn,
            EllipticFn::Cn => &self.cn,
            EllipticFn::Dn => &self.dn,
        }
    }

    /// Coefficient of `u^m / m!` in the unscaled function.
    pub fn egf_coeff(&self, f: EllipticFn, m: usize) -> Result<UniPoly> {
        let c = self
            .series(f)
            .coeff(m)
            .ok_or_else(|| Error::InvalidArgument(format!("u^{m} is past the truncation order")))?;
        c.scale(&factorial(m)).div_exact_scalar(&self.scale)
    }

    /// `sn^2 + cn^2` and `dn^2 + x sn^2`, unscaled. Both should be the
    /// constant series 1.
    pub fn pythagorean_sums(&self) -> Result<(FormalSeries, FormalSeries)> {
        let x = UniPoly::monomial(1, 1);
        let sn2 = self.sn.mul(&self.sn)?;
        let first = sn2.add(&self.cn.mul(&self.cn)?)?;
        let second = self.dn.mul(&self.dn)?.add(&sn2.scale_poly(&x))?;
        let square = &self.scale * &self.scale;
        Ok((first.div_exact_scalar(&square)?, second.div_exact_scalar(&square)?))
    }
}

/// Outcome of the series route beyond the sequence itself.
#[derive(Clone, Debug)]
pub struct SeriesReport {
    pub order: usize,
    /// Every dn coefficient matched `(-1)^k x^k J_2k(1/x)`.
    pub dn_checked: usize,
}

/// `J_n` for `n <= n_max` from the sn (odd n) and cn (even n) expansions,
/// after checking parity, signs and the dn reflection identity.
pub fn j_series(n_max: usize) -> Result<(JSequence, SeriesReport)> {
    let order = n_max.max(1);
    let es = EllipticSeries::integrate(order)?;
    let mut polys = Vec::with_capacity(n_max + 1);
    let mut dn_checked = 0;
    for m in 0..=n_max {
        let k = m / 2;
        let sign_flip = k % 2 == 1;
        let (carrier, vanishing) = if m % 2 == 1 {
            (EllipticFn::Sn, [EllipticFn::Cn, EllipticFn::Dn])
        } else {
            (EllipticFn::Cn, [EllipticFn::Sn, EllipticFn::Sn])
        };
        for f in vanishing {
            if !es.egf_coeff(f, m)?.is_zero() {
                return Err(Error::Defect(format!("{f:?} has a nonzero u^{m} coefficient")));
            }
        }
        let raw = es.egf_coeff(carrier, m)?;
        let j = if sign_flip { -raw } else { raw };
        if !j.has_nonnegative_coeffs() {
            return Err(Error::Defect(format!("sign pattern violated at u^{m}: J_{m} = {j}")));
        }
        if m % 2 == 0 {
            let d = es.egf_coeff(EllipticFn::Dn, m)?;
            let d = if sign_flip { -d } else { d };
            if d != j.reverse(k)? {
                return Err(Error::Defect(format!("dn coefficient at u^{m} is not x^k J_{m}(1/x)")));
            }
            dn_checked += 1;
        }
        polys.push(j);
    }
    Ok((JSequence { route: Route::Series, polys }, SeriesReport { order, dn_checked }))
}

/// Compares sequences pairwise against the first, reporting the first
/// mismatching coefficient.
pub fn compare_routes(seqs: &[&JSequence]) -> Result<()> {
    let Some((first, rest)) = seqs.split_first() else { return Ok(()) };
    for other in rest {
        let n_max = first.max_n().min(other.max_n());
        for n in 0..=n_max {
            let (a, b) = (&first.polys[n], &other.polys[n]);
            if a == b {
                continue;
            }
            let top = a.coeffs().len().max(b.coeffs().len());
            let e = (0..top).find(|&e| a.coeff(e) != b.coeff(e)).unwrap_or(0);
            return Err(Error::RouteMismatch {
                n,
                exponent: e,
                left: first.route.to_string(),
                right: other.route.to_string(),
                left_value: a.coeff(e).to_string(),
                right_value: b.coeff(e).to_string(),
            });
        }
    }
    Ok(())
}

/// Builds `J_0..J_(n_max)` by one route.
pub fn j_sequence(route: Route, n_max: usize) -> Result<JSequence> {
    match route {
        Route::Operator => j_operator(n_max),
        Route::Recurrence => j_recurrence(n_max),
        Route::Viennot => j_viennot(n_max),
        Route::Series => Ok(j_series(n_max)?.0),
        Route::Trees | Route::Permutations => Err(Error::InvalidArgument(format!(
            "route `{route}` does not produce J polynomials"
        ))),
    }
}

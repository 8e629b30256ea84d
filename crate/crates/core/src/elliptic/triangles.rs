//! The three integer triangles: cycle-peak counts `s`, gamma coefficients
//! and their quarter-powers `t`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactpoly::{MultiPoly, UniPoly};
use crate::gammakit::gamma_expand;
use crate::grammar::Grammar;
use crate::triangle::{Row, Triangle, TriangleKind};

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

/// Grows a triangle row by row from `seeds`.
fn grow<F, B>(kind: TriangleKind, n_max: usize, seeds: &[(usize, Row)], in_bounds: B, step: F) -> Result<Triangle>
where
    F: Fn(&Triangle, usize, i64, i64) -> BigInt,
    B: Fn(usize, usize, usize) -> bool,
{
    let mut tri = Triangle::new(kind);
    for (n, row) in seeds {
        if *n <= n_max {
            tri.insert_row(*n, row.clone());
        }
    }
    let start = seeds.iter().map(|(n, _)| n + 1).max().unwrap_or(0);
    for n in start..=n_max {
        let row = next_row(&tri, n, &in_bounds, &step)?;
        tri.insert_row(n, row);
    }
    Ok(tri)
}

/// Row `n` from row `n - 1` of `tri`. Every `(i, j)` in a margin around the
/// admissible region is evaluated; a nonzero value outside it is a defect.
fn next_row<F, B>(tri: &Triangle, n: usize, in_bounds: &B, step: &F) -> Result<Row>
where
    F: Fn(&Triangle, usize, i64, i64) -> BigInt,
    B: Fn(usize, usize, usize) -> bool,
{
    let kind = tri.kind();
    let reach = n / 2 + 1;
    let mut row = Row::new();
    for i in 0..=reach {
        for j in 0..=reach {
            let v = step(tri, n, i as i64, j as i64);
            if v.is_zero() {
                continue;
            }
            if !in_bounds(n, i, j) {
                return Err(Error::Defect(format!(
                    "{kind} recurrence produced {v} outside bounds at ({n},{i},{j})"
                )));
            }
            row.insert((i, j), v);
        }
    }
    Ok(row)
}

fn unit_row() -> Row {
    Row::from([((0, 0), BigInt::one())])
}

fn s_bounds(n: usize, i: usize, j: usize) -> bool {
    i + j <= n / 2
}

fn gamma_bounds(n: usize, i: usize, j: usize) -> bool {
    n >= 1 && i <= (n - 1) / 2 && 2 * i <= n && j <= (n - 2 * i) / 4
}

/// `s(n,i,j)` read off `D^n(x)` for the Schett-Dumont grammar. Even rows
/// carry monomials `x^(2i+1) y^(2j) z^(n-2i-2j)`, odd rows
/// `x^(2i) y^(2j+1) z^(n-2i-2j)`. Row 0 holds `s(0,0,0) = 1`.
pub fn s_triangle_operator(n_max: usize) -> Result<Triangle> {
    if n_max < 1 {
        return Err(Error::InvalidArgument("n_max must be at least 1".into()));
    }
    let g = Grammar::schett_dumont();
    let x = g.letter("x")?;
    let mut tri = Triangle::new(TriangleKind::S);
    for (n, d) in g.iterates(&x, n_max)?.iter().enumerate() {
        tri.insert_row(n, read_s_row(n, d)?);
    }
    Ok(tri)
}

fn read_s_row(n: usize, d: &MultiPoly) -> Result<Row> {
    let violation = |detail: String| Error::PatternViolation { row: n, detail };
    let mut row = Row::new();
    for (e, c) in d.terms() {
        let (a, b, z) = (e[0] as usize, e[1] as usize, e[2] as usize);
        let ok = if n.is_multiple_of(2) {
            a % 2 == 1 && b % 2 == 0 && z % 2 == 0
        } else {
            a % 2 == 0 && b % 2 == 1 && z % 2 == 1
        };
        if !ok || a + b + z != n + 1 || !c.is_positive() {
            return Err(violation(format!("term {c} x^{a} y^{b} z^{z}")));
        }
        row.insert((a / 2, b / 2), c.clone());
    }
    Ok(row)
}

/// `s(n,i,j)` from Dumont's recurrence system seeded with `s(1,0,0) = 1`.
pub fn s_triangle_recurrence(n_max: usize) -> Result<Triangle> {
    if n_max < 1 {
        return Err(Error::InvalidArgument("n_max must be at least 1".into()));
    }
    grow(TriangleKind::S, n_max, &s_seeds(), s_bounds, s_step)
}

fn s_seeds() -> Vec<(usize, Row)> {
    vec![(0, unit_row()), (1, unit_row())]
}

fn quarter_seeds() -> Vec<(usize, Row)> {
    vec![(1, unit_row()), (2, unit_row())]
}

fn s_step(t: &Triangle, n: usize, i: i64, j: i64) -> BigInt {
    let prev = n - 1;
    let h = (n / 2) as i64;
    if n.is_multiple_of(2) {
        big(2 * j + 1) * t.get(prev, i, j)
            + big(2 * i + 2) * t.get(prev, i + 1, j - 1)
            + big(2 * h - 2 * i - 2 * j + 1) * t.get(prev, i, j - 1)
    } else {
        big(2 * i + 1) * t.get(prev, i, j)
            + big(2 * j + 2) * t.get(prev, i - 1, j + 1)
            + big(2 * h - 2 * i - 2 * j + 2) * t.get(prev, i - 1, j)
    }
}

/// Gamma coefficients from their recurrence with `gamma(1,0,0) = gamma(2,0,0) = 1`.
pub fn gamma_triangle_recurrence(n_max: usize) -> Result<Triangle> {
    quarter_family(TriangleKind::Gamma, n_max, 4)
}

/// `t(n,i,j)` from its own recurrence with `t(1,0,0) = t(2,0,0) = 1`.
pub fn t_triangle_recurrence(n_max: usize) -> Result<Triangle> {
    quarter_family(TriangleKind::T, n_max, 1)
}

// The gamma and t recurrences differ only in the weight of the
// (a+b)-lowering term.
fn quarter_family(kind: TriangleKind, n_max: usize, w: i64) -> Result<Triangle> {
    if n_max < 1 {
        return Err(Error::InvalidArgument("n_max must be at least 1".into()));
    }
    grow(kind, n_max, &quarter_seeds(), gamma_bounds, quarter_step(w))
}

fn quarter_weight(kind: TriangleKind) -> i64 {
    if kind == TriangleKind::Gamma {
        4
    } else {
        1
    }
}

fn quarter_step(w: i64) -> impl Fn(&Triangle, usize, i64, i64) -> BigInt {
    move |t, n, i, j| {
        let prev = n - 1;
        let h = (n / 2) as i64;
        if n % 2 == 0 {
            big(2 * (i + 1)) * t.get(prev, i + 1, j - 1)
                + big(2 * j + 1) * t.get(prev, i, j)
                + big(w * (h - i - 2 * j + 1)) * t.get(prev, i, j - 1)
        } else {
            big(2 * i + 1) * t.get(prev, i, j)
                + big(2 * (j + 1)) * t.get(prev, i - 1, j + 1)
                + big(w * (h - i - 2 * j + 1)) * t.get(prev, i - 1, j)
        }
    }
}

/// Checks a stored `s`, `gamma` or `t` triangle: rows must run without gaps
/// from the seed rows, the seeds must be intact and every later row must be
/// the recurrence image of the stored row before it.
pub fn validate_triangle(tri: &Triangle) -> Result<()> {
    let kind = tri.kind();
    let seeds = match kind {
        TriangleKind::S => s_seeds(),
        TriangleKind::Gamma | TriangleKind::T => quarter_seeds(),
        TriangleKind::Theta => {
            return Err(Error::InvalidArgument("theta has no recurrence to check".into()))
        }
    };
    let first = seeds[0].0;
    let max = tri.max_row().unwrap_or(0);
    let expected: Vec<usize> = (first..=max.max(seeds[1].0)).collect();
    let present: Vec<usize> = tri.row_indices().collect();
    if present != expected {
        return Err(Error::PatternViolation {
            row: max,
            detail: format!("{kind} rows {present:?} are not {first}..={max} with both seeds"),
        });
    }
    for (n, row) in &seeds {
        if tri.row(*n) != Some(row) {
            return Err(Error::PatternViolation { row: *n, detail: format!("{kind} seed row altered") });
        }
    }
    for n in seeds[1].0 + 1..=max {
        let rebuilt = match kind {
            TriangleKind::S => next_row(tri, n, &s_bounds, &s_step)?,
            _ => next_row(tri, n, &gamma_bounds, &quarter_step(quarter_weight(kind)))?,
        };
        if tri.row(n) != Some(&rebuilt) {
            return Err(Error::PatternViolation {
                row: n,
                detail: format!("{kind} row does not follow from the row before"),
            });
        }
    }
    Ok(())
}

/// Checks `gamma(n,i,j) = 4^(i+j) t(n,i,j)` on every row present in both,
/// including exact divisibility of each gamma entry.
pub fn check_gamma_t(gamma: &Triangle, t: &Triangle) -> Result<()> {
    for (n, row) in gamma.rows() {
        let Some(trow) = t.row(n) else { continue };
        for ((i, j), g) in row {
            let four = BigInt::from(4).pow((i + j) as u32);
            let (q, r) = g.div_rem(&four);
            if !r.is_zero() {
                return Err(Error::Defect(format!(
                    "gamma({n},{i},{j}) = {g} is not divisible by 4^{}",
                    i + j
                )));
            }
            if trow.get(&(*i, *j)).cloned().unwrap_or_default() != q {
                return Err(Error::Defect(format!("gamma({n},{i},{j}) != 4^(i+j) t({n},{i},{j})")));
            }
        }
        if trow.len() != row.len() {
            return Err(Error::Defect(format!("row {n}: t has entries where gamma has none")));
        }
    }
    Ok(())
}

fn alphabet(names: &[&str]) -> Arc<[String]> {
    names.iter().map(|s| s.to_string()).collect()
}

/// `t_1, ..., t_(n_max)` as polynomials in `{x, y}` from the
/// differential-style recurrence; index 0 of the result is unused (zero).
pub fn t_polys(n_max: usize) -> Result<Vec<MultiPoly>> {
    let xy = alphabet(&["x", "y"]);
    let one = MultiPoly::constant_on(xy.clone(), 1);
    let two = MultiPoly::constant_on(xy.clone(), 2);
    let x = one.letter("x")?;
    let y = one.letter("y")?;
    let mut out = vec![MultiPoly::zero_on(xy.clone())];
    for n in 1..=n_max {
        let next = if n <= 2 {
            one.clone()
        } else {
            let prev = &out[n - 1];
            let dx = prev.partial("x")?;
            let dy = prev.partial("y")?;
            let two_minus_x = two.sub(&x)?;
            let one_minus_y = one.sub(&y)?;
            let h = BigInt::from(n / 2);
            if n % 2 == 0 {
                // (1 + (h-1) y) t + (2 - x) y dt/dx + 2 y (1 - y) dt/dy
                let lead = one.add(&y.scale(&(h - 1)))?;
                lead.mul(prev)?
                    .add(&two_minus_x.mul(&y)?.mul(&dx)?)?
                    .add(&y.mul(&one_minus_y)?.mul(&dy)?.scale(&BigInt::from(2)))?
            } else {
                // (1 + h x) t + (2 - x) x dt/dx + 2 x (1 - y) dt/dy
                let lead = one.add(&x.scale(&h))?;
                lead.mul(prev)?
                    .add(&two_minus_x.mul(&x)?.mul(&dx)?)?
                    .add(&x.mul(&one_minus_y)?.mul(&dy)?.scale(&BigInt::from(2)))?
            }
        };
        out.push(next);
    }
    Ok(out)
}

/// The `t` triangle row `n` as a polynomial `sum t(n,i,j) x^i y^j`.
pub fn t_row_poly(t: &Triangle, n: usize) -> MultiPoly {
    let xy = alphabet(&["x", "y"]);
    let terms = t
        .row(n)
        .into_iter()
        .flatten()
        .map(|((i, j), v)| (vec![*i as u32, *j as u32], v.clone()));
    MultiPoly::from_terms(xy, terms).expect("two-letter exponents")
}

/// `S_n(p,q,r) = sum s(n,i,j) p^i q^j r^(n/2 - i - j)`.
pub fn s_poly(s: &Triangle, n: usize) -> Result<MultiPoly> {
    let half = n / 2;
    let terms = s
        .row(n)
        .ok_or_else(|| Error::InvalidArgument(format!("s triangle has no row {n}")))?
        .iter()
        .map(|((i, j), v)| {
            let r = half.checked_sub(i + j).ok_or_else(|| {
                Error::Defect(format!("s({n},{i},{j}) outside i + j <= {half}"))
            })?;
            Ok((vec![*i as u32, *j as u32, r as u32], v.clone()))
        })
        .collect::<Result<Vec<_>>>()?;
    MultiPoly::from_terms(alphabet(&["p", "q", "r"]), terms)
}

/// `P_n(p,q) = S_n(p,q,1)`.
pub fn p_poly(s: &Triangle, n: usize) -> Result<MultiPoly> {
    let row = s
        .row(n)
        .ok_or_else(|| Error::InvalidArgument(format!("s triangle has no row {n}")))?;
    MultiPoly::from_terms(
        alphabet(&["p", "q"]),
        row.iter().map(|((i, j), v)| (vec![*i as u32, *j as u32], v.clone())),
    )
}

/// Row `n` of the gamma triangle obtained by expanding each `p^i` slice of
/// `P_n` in the basis `q^j (1+q)^(n/2 - i - 2j)`.
pub fn gamma_from_p(p: &MultiPoly, n: usize) -> Result<Row> {
    if p.alphabet() != ["p", "q"] {
        return Err(Error::AlphabetMismatch {
            left: p.alphabet().to_vec(),
            right: vec!["p".into(), "q".into()],
        });
    }
    let mut slices: BTreeMap<usize, Vec<BigInt>> = BTreeMap::new();
    for (e, c) in p.terms() {
        let (i, j) = (e[0] as usize, e[1] as usize);
        let slice = slices.entry(i).or_default();
        if slice.len() <= j {
            slice.resize(j + 1, BigInt::zero());
        }
        slice[j] = c.clone();
    }
    let mut row = Row::new();
    for (i, coeffs) in slices {
        let center = (n / 2).checked_sub(i).ok_or_else(|| {
            Error::Defect(format!("P_{n} has a p^{i} term beyond degree {}", n / 2))
        })?;
        let slice = UniPoly::from_coeffs(coeffs);
        let g = gamma_expand(&slice, center).map_err(|e| {
            Error::Defect(format!("p^{i} slice of P_{n} has no gamma expansion: {e}"))
        })?;
        for (j, v) in g.gammas().iter().enumerate() {
            if !v.is_zero() {
                row.insert((i, j), v.clone());
            }
        }
    }
    Ok(row)
}

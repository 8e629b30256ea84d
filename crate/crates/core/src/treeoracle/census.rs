use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigInt;
use serde::Serialize;

use super::tree::{
    pair_classes, phi_apply, phi_compose, phi_orbit_check, tree_enumerate, tree_matching,
    tree_stats, trees_with_last_parent, IncreasingTree, TreeStats,
};
use super::{check_cap, split_work};
use crate::error::{Error, Result};
use crate::exactpoly::MultiPoly;
use crate::triangle::{Row, Triangle, TriangleKind};

/// Number of trees in `T_n` with each statistics vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeCensus {
    pub n: usize,
    pub counts: BTreeMap<TreeStats, u64>,
}

/// Folds `tree_stats` over `T_n`, splitting the work by the parent of the
/// largest vertex. The result does not depend on `jobs`.
pub fn tree_census(n: usize, cap: usize, jobs: usize) -> Result<TreeCensus> {
    check_cap(n, cap)?;
    let mut counts = BTreeMap::new();
    if n == 0 {
        counts.insert(tree_stats(&IncreasingTree::from_parents(Vec::new())?), 1);
        return Ok(TreeCensus { n, counts });
    }
    let partials = split_work(0..n, jobs, |last| {
        let mut local: HashMap<TreeStats, u64> = HashMap::new();
        for t in trees_with_last_parent(n, last) {
            *local.entry(tree_stats(&t)).or_default() += 1;
        }
        local
    });
    for part in partials {
        for (k, c) in part {
            *counts.entry(k).or_default() += c;
        }
    }
    Ok(TreeCensus { n, counts })
}

impl TreeCensus {
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// The first statistics vector breaking the pair-count identities.
    pub fn inconsistent(&self) -> Option<TreeStats> {
        self.counts.keys().find(|s| !s.is_consistent(self.n)).copied()
    }

    fn fold<F>(&self, alphabet: &[&str], exps: F) -> Result<MultiPoly>
    where
        F: Fn(&TreeStats) -> Vec<u32>,
    {
        let mut out = MultiPoly::zero(alphabet);
        for (s, c) in &self.counts {
            out.add_term(exps(s), BigInt::from(*c));
        }
        Ok(out)
    }

    /// `sum x^singleton c^zerop a^des_o b^asc_o g^des_e h^asc_e` over the
    /// alphabet `x, a, b, c, g, h`.
    pub fn g2_distribution(&self) -> Result<MultiPoly> {
        self.fold(&["x", "a", "b", "c", "g", "h"], |s| {
            [s.singleton, s.des_o, s.asc_o, s.zerop, s.des_e, s.asc_e]
                .map(|e| e as u32)
                .to_vec()
        })
    }

    /// `sum x^singleton c^evenp a^des_o b^asc_o` over `x, a, b, c`.
    pub fn g1_distribution(&self) -> Result<MultiPoly> {
        self.fold(&["x", "a", "b", "c"], |s| {
            [s.singleton, s.des_o, s.asc_o, s.evenp].map(|e| e as u32).to_vec()
        })
    }

    /// `theta(n,i,j)`: trees with `evenp = i`, `des_o = j`, `asc_o = 0`.
    pub fn theta_row(&self) -> Row {
        let mut row = Row::new();
        for (s, c) in &self.counts {
            if s.asc_o == 0 {
                *row.entry((s.evenp, s.des_o)).or_default() += BigInt::from(*c);
            }
        }
        row
    }

    /// `sum theta(n,i,j) x^(n+1-2(i+j)) c^i (a+b)^j` over `x, a, b, c`.
    pub fn theta_expansion(&self) -> Result<MultiPoly> {
        let alphabet = ["x", "a", "b", "c"];
        let a_plus_b = MultiPoly::var(&alphabet, "a")?.add(&MultiPoly::var(&alphabet, "b")?)?;
        let mut out = MultiPoly::zero(&alphabet);
        for ((i, j), v) in self.theta_row() {
            let x_exp = (self.n + 1).checked_sub(2 * (i + j)).ok_or_else(|| {
                Error::Defect(format!("theta({},{i},{j}) is nonzero past the top degree", self.n))
            })?;
            let mono = MultiPoly::from_terms(
                out.alphabet_arc(),
                [(vec![x_exp as u32, 0, 0, i as u32], v)],
            )?;
            out = out.add(&mono.mul(&a_plus_b.pow(j as u32)?)?)?;
        }
        Ok(out)
    }

    /// The `s` row read off the trees: for even `n`, `singleton = 2i + 1`
    /// and `evenp + 2 des_o = 2j`; for odd `n`, `singleton = 2i` and
    /// `evenp + 2 des_o = 2j + 1`.
    pub fn s_row(&self) -> Result<Row> {
        let n = self.n;
        if n == 0 {
            return Err(Error::InvalidArgument("the tree reading of s needs n >= 1".into()));
        }
        let mut row = Row::new();
        let parity = n % 2;
        for (s, c) in &self.counts {
            let w = s.evenp + 2 * s.des_o;
            let (i2, j2) = if parity == 0 {
                (s.singleton.checked_sub(1), Some(w))
            } else {
                (Some(s.singleton), w.checked_sub(1))
            };
            match (i2, j2) {
                (Some(i2), Some(j2)) if i2 % 2 == 0 && j2 % 2 == 0 => {
                    *row.entry((i2 / 2, j2 / 2)).or_default() += BigInt::from(*c);
                }
                _ => {
                    return Err(Error::Defect(format!(
                        "tree statistics {s:?} have the wrong parity for n = {n}"
                    )))
                }
            }
        }
        Ok(row)
    }
}

/// `theta` rows `lo..=hi` as a triangle.
pub fn theta_triangle(lo: usize, hi: usize, cap: usize, jobs: usize) -> Result<Triangle> {
    let mut t = Triangle::new(TriangleKind::Theta);
    for n in lo..=hi {
        t.insert_row(n, tree_census(n, cap, jobs)?.theta_row());
    }
    Ok(t)
}

/// The `theta` entry carrying `gamma(n,i,j)`:
/// `theta(2m, 2j, m-i-2j)` for `n = 2m` and `theta(2m+1, 2j+1, m-i-2j)` for
/// `n = 2m+1`. `None` when the index falls below zero.
pub fn theta_index_for_gamma(n: usize, i: usize, j: usize) -> Option<(usize, usize)> {
    let m = n / 2;
    let second = m.checked_sub(i + 2 * j)?;
    Some((2 * j + n % 2, second))
}

/// Summary of the exhaustive involution sweep over `T_n`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PhiSweep {
    pub n: usize,
    pub trees: u64,
    pub orbits: u64,
    pub lemma_checks: u64,
}

fn defect(t: &IncreasingTree, what: &str) -> Error {
    Error::Defect(format!("{t}: {what}"))
}

/// For every tree: each `phi_k` is an involution that keeps the matching,
/// and any two commute. For every tree without odd ascent pairs: the
/// statistic transport holds for every subset of pairs, and flipping subsets
/// of odd pairs yields `2^#odd` distinct trees of which only the start has
/// no odd ascent pairs. These orbits must partition `T_n`.
pub fn phi_sweep(n: usize, cap: usize) -> Result<PhiSweep> {
    let mut sweep = PhiSweep { n, ..PhiSweep::default() };
    let mut seen: HashSet<IncreasingTree> = HashSet::new();
    for t in tree_enumerate(n, cap)? {
        sweep.trees += 1;
        let m = tree_matching(&t);
        let k = m.len();
        let images: Vec<IncreasingTree> =
            (1..=k).map(|i| phi_apply(&t, &m, i)).collect::<Result<_>>()?;
        for (i, img) in images.iter().enumerate() {
            if tree_matching(img) != m {
                return Err(defect(&t, &format!("phi_{} changes the matching", i + 1)));
            }
            if phi_apply(img, &m, i + 1)? != t {
                return Err(defect(&t, &format!("phi_{} is not an involution", i + 1)));
            }
            for (j, img_j) in images.iter().enumerate().skip(i + 1) {
                if phi_apply(img, &m, j + 1)? != phi_apply(img_j, &m, i + 1)? {
                    return Err(defect(&t, &format!("phi_{} and phi_{} do not commute", i + 1, j + 1)));
                }
            }
        }

        let st = tree_stats(&t);
        if st.asc_o != 0 {
            continue;
        }
        for mask in 0u32..(1 << k) {
            let s: Vec<usize> = (1..=k).filter(|i| mask & (1 << (i - 1)) != 0).collect();
            let check = phi_orbit_check(&t, &s)?;
            if !check.holds {
                return Err(defect(&t, &format!("statistic transport fails for S = {s:?}")));
            }
            sweep.lemma_checks += 1;
        }
        let odd: Vec<usize> = pair_classes(&t, &m)
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_odd())
            .map(|(i, _)| i + 1)
            .collect();
        for mask in 0u32..(1 << odd.len()) {
            let s: Vec<usize> =
                odd.iter().enumerate().filter(|(b, _)| mask & (1 << b) != 0).map(|(_, &i)| i).collect();
            let img = phi_compose(&t, &m, &s)?;
            if mask != 0 && tree_stats(&img).asc_o == 0 {
                return Err(defect(&t, "orbit holds two trees without odd ascent pairs"));
            }
            if !seen.insert(img) {
                return Err(defect(&t, "orbits overlap"));
            }
        }
        sweep.orbits += 1;
    }
    if seen.len() as u64 != sweep.trees {
        return Err(Error::Defect(format!(
            "orbits cover {} of {} trees",
            seen.len(),
            sweep.trees
        )));
    }
    Ok(sweep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::{parse_polynomial, Grammar};

    #[test]
    fn distributions_for_small_n() {
        let g2 = Grammar::g2();
        let c1 = tree_census(1, 9, 1).unwrap();
        assert_eq!(c1.g2_distribution().unwrap(), g2.letter("c").unwrap());
        let c2 = tree_census(2, 9, 1).unwrap();
        assert_eq!(c2.g2_distribution().unwrap(), parse_polynomial("xa + xb", g2.alphabet_arc()).unwrap());
        let c3 = tree_census(3, 9, 2).unwrap();
        assert_eq!(
            c3.g2_distribution().unwrap(),
            parse_polynomial("ca + cb + 2x^2g + 2x^2h", g2.alphabet_arc()).unwrap()
        );
    }

    #[test]
    fn theta_rows() {
        let r3 = tree_census(3, 9, 1).unwrap().theta_row();
        assert_eq!(r3, Row::from([((1, 0), 4.into()), ((1, 1), 1.into())]));
        let r1 = tree_census(1, 9, 1).unwrap().theta_row();
        assert_eq!(r1, Row::from([((1, 0), 1.into())]));
        assert_eq!(theta_index_for_gamma(3, 0, 0), Some((1, 1)));
        assert_eq!(theta_index_for_gamma(3, 1, 0), Some((1, 0)));
        assert_eq!(theta_index_for_gamma(4, 2, 1), None);
    }

    #[test]
    fn census_is_independent_of_jobs() {
        let one = tree_census(6, 9, 1).unwrap();
        assert_eq!(one.total(), 720);
        assert_eq!(tree_census(6, 9, 4).unwrap(), one);
        assert!(one.inconsistent().is_none());
    }

    #[test]
    fn sweep_small() {
        let s = phi_sweep(4, 9).unwrap();
        assert_eq!(s.trees, 24);
        assert!(s.orbits > 0 && s.lemma_checks >= s.orbits);
    }
}

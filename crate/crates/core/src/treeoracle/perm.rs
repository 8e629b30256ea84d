use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use super::{check_cap, split_work};
use crate::error::{Error, Result};
use crate::exactpoly::MultiPoly;

/// A permutation of `{1..n}` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    /// `images[i-1] = pi(i)`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidArgument(format!("{images:?} is not a permutation")));
            }
            seen[v] = true;
        }
        Ok(Perm { images })
    }

    /// Builds from disjoint cycles; points not mentioned are fixed.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (1..=n).collect();
        let mut touched = vec![false; n + 1];
        for cycle in cycles {
            for (k, &v) in cycle.iter().enumerate() {
                if v == 0 || v > n || touched[v] {
                    return Err(Error::InvalidArgument(format!("bad cycle {cycle:?}")));
                }
                touched[v] = true;
                images[v - 1] = cycle[(k + 1) % cycle.len()];
            }
        }
        Self::from_images(images)
    }

    pub fn identity(n: usize) -> Self {
        Perm { images: (1..=n).collect() }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Perm { images: inv }
    }

    /// Cycle peaks, values `i` with `pi^-1(i) < i > pi(i)`, in increasing order.
    pub fn cycle_peaks(&self) -> Vec<usize> {
        let inv = self.inverse();
        (1..=self.len())
            .filter(|&i| inv.apply(i) < i && i > self.apply(i))
            .collect()
    }

    /// `(odd cycle peaks, even cycle peaks)`.
    pub fn cpk_stats(&self) -> (usize, usize) {
        cpk_counts(&self.images, &mut vec![0; self.len()])
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

fn cpk_counts(images: &[usize], inv: &mut [usize]) -> (usize, usize) {
    for (i, &v) in images.iter().enumerate() {
        inv[v - 1] = i + 1;
    }
    let mut counts = (0, 0);
    for i in 1..=images.len() {
        if inv[i - 1] < i && i > images[i - 1] {
            if i % 2 == 1 {
                counts.0 += 1;
            } else {
                counts.1 += 1;
            }
        }
    }
    counts
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = v.windows(2).rposition(|w| w[0] < w[1]) else { return false };
    let j = v.iter().rposition(|&x| x > v[i]).expect("a larger element exists");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// `sum over S_n of p^cpk_o q^cpk_e`, by exhaustive enumeration split across
/// `jobs` threads by the value of `pi(1)`.
pub fn p_bruteforce(n: usize, cap: usize, jobs: usize) -> Result<MultiPoly> {
    check_cap(n, cap)?;
    let alphabet = ["p", "q"];
    if n == 0 {
        return Ok(MultiPoly::one(&alphabet));
    }
    let partials = split_work(1..=n, jobs, |first| {
        let mut counts: BTreeMap<(usize, usize), u64> = BTreeMap::new();
        let mut rest: Vec<usize> = (1..=n).filter(|&v| v != first).collect();
        let mut images = vec![0; n];
        let mut inv = vec![0; n];
        images[0] = first;
        loop {
            images[1..].copy_from_slice(&rest);
            *counts.entry(cpk_counts(&images, &mut inv)).or_default() += 1;
            if !next_permutation(&mut rest) {
                break;
            }
        }
        counts
    });
    let mut total: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    for part in partials {
        for (k, c) in part {
            *total.entry(k).or_default() += c;
        }
    }
    let alphabet = MultiPoly::zero(&alphabet).alphabet_arc();
    MultiPoly::from_terms(
        alphabet,
        total.into_iter().map(|((o, e), c)| (vec![o as u32, e as u32], BigInt::from(c))),
    )
}

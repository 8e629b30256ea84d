use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::Error;

/// One row of a triangle: `(i, j) -> value`, zeros omitted.
pub type Row = BTreeMap<(usize, usize), BigInt>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TriangleKind {
    /// Cycle-peak counts `s(n,i,j)`.
    S,
    /// Gamma coefficients of `P_n(p,q)`.
    Gamma,
    /// `gamma(n,i,j) / 4^(i+j)`.
    T,
    /// Tree counts by even pairs and odd descents.
    Theta,
}

impl TriangleKind {
    pub fn name(self) -> &'static str {
        match self {
            TriangleKind::S => "s",
            TriangleKind::Gamma => "gamma",
            TriangleKind::T => "t",
            TriangleKind::Theta => "theta",
        }
    }
}

impl fmt::Display for TriangleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TriangleKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "s" => Ok(TriangleKind::S),
            "gamma" => Ok(TriangleKind::Gamma),
            "t" => Ok(TriangleKind::T),
            "theta" => Ok(TriangleKind::Theta),
            _ => Err(Error::InvalidArgument(format!("unknown triangle `{s}`"))),
        }
    }
}

/// Integer array indexed by `(n, i, j)`; absent entries read as zero,
/// including negative indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangle {
    kind: TriangleKind,
    rows: BTreeMap<usize, Row>,
}

impl Triangle {
    pub fn new(kind: TriangleKind) -> Self {
        Triangle { kind, rows: BTreeMap::new() }
    }

    pub fn kind(&self) -> TriangleKind {
        self.kind
    }

    pub fn insert_row(&mut self, n: usize, mut row: Row) {
        row.retain(|_, v| !v.is_zero());
        self.rows.insert(n, row);
    }

    pub fn row(&self, n: usize) -> Option<&Row> {
        self.rows.get(&n)
    }

    pub fn rows(&self) -> impl Iterator<Item = (usize, &Row)> {
        self.rows.iter().map(|(n, r)| (*n, r))
    }

    pub fn row_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn max_row(&self) -> Option<usize> {
        self.rows.keys().next_back().copied()
    }

    pub fn get(&self, n: usize, i: i64, j: i64) -> BigInt {
        if i < 0 || j < 0 {
            return BigInt::zero();
        }
        self.rows
            .get(&n)
            .and_then(|r| r.get(&(i as usize, j as usize)))
            .cloned()
            .unwrap_or_default()
    }

    pub fn row_sum(&self, n: usize) -> BigInt {
        self.rows.get(&n).map(|r| r.values().sum()).unwrap_or_default()
    }

    /// All nonzero entries sorted by `(n, i, j)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, &BigInt)> {
        self.rows
            .iter()
            .flat_map(|(n, r)| r.iter().map(move |((i, j), v)| (*n, *i, *j, v)))
    }

    /// Keeps rows `lo..=hi` only.
    pub fn restricted(&self, lo: usize, hi: usize) -> Triangle {
        Triangle {
            kind: self.kind,
            rows: self.rows.range(lo..=hi).map(|(n, r)| (*n, r.clone())).collect(),
        }
    }

    /// CSV with header `n,i,j,value`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,i,j,value\n");
        for (n, i, j, v) in self.entries() {
            out.push_str(&format!("{n},{i},{j},{v}\n"));
        }
        out
    }
}

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::check_cap;
use crate::error::{Error, Result};

/// A rooted tree on `{0..n}` with root 0 and `parent(v) < v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IncreasingTree {
    /// `parents[v-1]` is the parent of `v`.
    parents: Vec<usize>,
}

impl IncreasingTree {
    pub fn from_parents(parents: Vec<usize>) -> Result<Self> {
        for (k, &p) in parents.iter().enumerate() {
            if p > k {
                return Err(Error::InvalidArgument(format!(
                    "vertex {} has parent {p}, which is not smaller",
                    k + 1
                )));
            }
        }
        Ok(IncreasingTree { parents })
    }

    /// Number of non-root vertices.
    pub fn n(&self) -> usize {
        self.parents.len()
    }

    pub fn parents(&self) -> &[usize] {
        &self.parents
    }

    pub fn parent(&self, v: usize) -> usize {
        self.parents[v - 1]
    }

    /// Children of every vertex, each list increasing.
    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.n() + 1];
        for (k, &p) in self.parents.iter().enumerate() {
            out[p].push(k + 1);
        }
        out
    }

    fn with_parent(&self, v: usize, p: usize) -> IncreasingTree {
        let mut parents = self.parents.clone();
        parents[v - 1] = p;
        IncreasingTree { parents }
    }
}

impl fmt::Display for IncreasingTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parents.iter().map(ToString::to_string).collect();
        write!(f, "parents: {}", parts.join(","))
    }
}

impl FromStr for IncreasingTree {
    type Err = Error;

    /// `parents: p1,p2,...,pn`; an empty list is the lone root.
    fn from_str(s: &str) -> Result<Self> {
        let body = s
            .trim()
            .strip_prefix("parents:")
            .ok_or_else(|| Error::InvalidArgument(format!("expected `parents: ...`, got `{s}`")))?
            .trim();
        if body.is_empty() {
            return Self::from_parents(Vec::new());
        }
        let parents = body
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidArgument(format!("bad parent `{}`", t.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_parents(parents)
    }
}

/// Streams the increasing trees on `{0..n}` in lexicographic order of
/// their parent sequences, optionally with the parent of `n` held fixed.
#[derive(Clone, Debug)]
pub struct TreeIter {
    current: Option<Vec<usize>>,
    fixed_last: bool,
}

impl TreeIter {
    fn new(n: usize, last_parent: Option<usize>) -> Self {
        let mut start = vec![0; n];
        if let (Some(p), Some(last)) = (last_parent, start.last_mut()) {
            *last = p;
        }
        TreeIter { current: Some(start), fixed_last: last_parent.is_some() && n > 0 }
    }
}

impl Iterator for TreeIter {
    type Item = IncreasingTree;

    fn next(&mut self) -> Option<IncreasingTree> {
        let cur = self.current.as_mut()?;
        let out = IncreasingTree { parents: cur.clone() };
        let free = cur.len() - usize::from(self.fixed_last);
        // Odometer: position k (vertex k+1) runs through 0..=k.
        let mut k = free;
        loop {
            if k == 0 {
                self.current = None;
                break;
            }
            k -= 1;
            if cur[k] < k {
                cur[k] += 1;
                break;
            }
            cur[k] = 0;
        }
        Some(out)
    }
}

/// All `n!` increasing trees with `n + 1` vertices.
pub fn tree_enumerate(n: usize, cap: usize) -> Result<TreeIter> {
    check_cap(n, cap)?;
    Ok(TreeIter::new(n, None))
}

/// The trees whose largest vertex `n >= 1` hangs from `last_parent`.
pub(crate) fn trees_with_last_parent(n: usize, last_parent: usize) -> TreeIter {
    TreeIter::new(n, Some(last_parent))
}

/// Pairs `(a_k, b_k)` in standard form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TreeMatching {
    pub pairs: Vec<(usize, usize)>,
}

impl TreeMatching {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// The greedy matching: `(0, 1)` first, then repeatedly the smallest
/// uncovered vertex with children, paired with its smallest child.
pub fn tree_matching(t: &IncreasingTree) -> TreeMatching {
    matching_with(t, &t.children())
}

fn matching_with(t: &IncreasingTree, children: &[Vec<usize>]) -> TreeMatching {
    let n = t.n();
    let mut pairs = Vec::new();
    if n == 0 {
        return TreeMatching { pairs };
    }
    let mut covered = vec![false; n + 1];
    pairs.push((0, 1));
    covered[0] = true;
    covered[1] = true;
    // Later a_k increase, so one forward scan finds them all.
    for a in 1..=n {
        if covered[a] || children[a].is_empty() {
            continue;
        }
        let b = children[a][0];
        covered[a] = true;
        covered[b] = true;
        pairs.push((a, b));
    }
    TreeMatching { pairs }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PairClass {
    Zero,
    EvenDescent,
    EvenAscent,
    OddDescent,
    OddAscent,
}

impl PairClass {
    pub fn is_odd(self) -> bool {
        matches!(self, PairClass::OddDescent | PairClass::OddAscent)
    }
}

/// `max(Child(a) u Child(b) \ {b})`, if that set is nonempty.
fn outside_max(children: &[Vec<usize>], (a, b): (usize, usize)) -> Option<usize> {
    let from_a = children[a].iter().copied().filter(|&v| v != b).max();
    let from_b = children[b].last().copied();
    from_a.max(from_b)
}

fn classify(t: &IncreasingTree, children: &[Vec<usize>], pair: (usize, usize)) -> PairClass {
    let (a, b) = pair;
    let s = children[a].len() + children[b].len() - 1;
    if s == 0 {
        return PairClass::Zero;
    }
    let v = outside_max(children, pair).expect("positive count");
    let descent = t.parent(v) == a;
    match (s.is_multiple_of(2), descent) {
        (true, true) => PairClass::EvenDescent,
        (true, false) => PairClass::EvenAscent,
        (false, true) => PairClass::OddDescent,
        (false, false) => PairClass::OddAscent,
    }
}

/// Classes of the pairs of the tree's own matching, in matching order.
pub fn pair_classes(t: &IncreasingTree, m: &TreeMatching) -> Vec<PairClass> {
    let children = t.children();
    m.pairs.iter().map(|&p| classify(t, &children, p)).collect()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TreeStats {
    pub singleton: usize,
    pub zerop: usize,
    pub evenp: usize,
    pub des_o: usize,
    pub des_e: usize,
    pub asc_o: usize,
    pub asc_e: usize,
}

impl TreeStats {
    /// `evenp = zerop + des_e + asc_e` and
    /// `2 (evenp + des_o + asc_o) + singleton = n + 1`.
    pub fn is_consistent(&self, n: usize) -> bool {
        self.evenp == self.zerop + self.des_e + self.asc_e
            && 2 * (self.evenp + self.des_o + self.asc_o) + self.singleton == n + 1
    }
}

pub fn tree_stats(t: &IncreasingTree) -> TreeStats {
    let children = t.children();
    let m = matching_with(t, &children);
    let mut st = TreeStats { singleton: t.n() + 1 - 2 * m.len(), ..TreeStats::default() };
    for &pair in &m.pairs {
        match classify(t, &children, pair) {
            PairClass::Zero => st.zerop += 1,
            PairClass::EvenDescent => st.des_e += 1,
            PairClass::EvenAscent => st.asc_e += 1,
            PairClass::OddDescent => st.des_o += 1,
            PairClass::OddAscent => st.asc_o += 1,
        }
    }
    st.evenp = st.zerop + st.des_e + st.asc_e;
    st
}

/// Vertices covered by no pair.
pub fn tree_singletons(t: &IncreasingTree, m: &TreeMatching) -> Vec<usize> {
    let mut covered = vec![false; t.n() + 1];
    for &(a, b) in &m.pairs {
        covered[a] = true;
        covered[b] = true;
    }
    (0..=t.n()).filter(|&v| !covered[v]).collect()
}

/// Moves the largest child of pair `k` (1-based) outside `b_k` between `a_k`
/// and `b_k`; identity when there is none. `m` must be the matching of `t`.
pub fn phi_apply(t: &IncreasingTree, m: &TreeMatching, k: usize) -> Result<IncreasingTree> {
    if tree_matching(t) != *m {
        return Err(Error::Precondition("matching is not the tree-matching of the tree".into()));
    }
    if k == 0 || k > m.len() {
        return Err(Error::Precondition(format!("pair index {k} outside 1..={}", m.len())));
    }
    Ok(phi_unchecked(t, &t.children(), m.pairs[k - 1]))
}

fn phi_unchecked(t: &IncreasingTree, children: &[Vec<usize>], pair: (usize, usize)) -> IncreasingTree {
    let (a, b) = pair;
    match outside_max(children, pair) {
        None => t.clone(),
        Some(v) if t.parent(v) == a => t.with_parent(v, b),
        Some(v) => t.with_parent(v, a),
    }
}

/// `phi` over every pair index in `s` (1-based), applied in increasing
/// order. Each step uses the matching of `t`, which every step preserves.
pub fn phi_compose(t: &IncreasingTree, m: &TreeMatching, s: &[usize]) -> Result<IncreasingTree> {
    let mut cur = t.clone();
    let mut idx = s.to_vec();
    idx.sort_unstable();
    idx.dedup();
    for k in idx {
        cur = phi_apply(&cur, m, k)?;
    }
    Ok(cur)
}

/// Outcome of transporting statistics along `phi_S` from a tree without
/// odd ascent pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitCheck {
    pub holds: bool,
    pub image: String,
    pub before: TreeStats,
    pub after: TreeStats,
    pub even_pairs: usize,
    pub flipped_odd: usize,
}

/// Checks `singleton`, `evenp`, `des_o` and `asc_o` of `phi_S(t)` against
/// the values predicted from `t` and the split of `S` into even and odd pairs.
pub fn phi_orbit_check(t: &IncreasingTree, s: &[usize]) -> Result<OrbitCheck> {
    let m = tree_matching(t);
    let before = tree_stats(t);
    if before.asc_o != 0 {
        return Err(Error::Precondition(format!("{t} has {} odd ascent pairs", before.asc_o)));
    }
    let classes = pair_classes(t, &m);
    let image = phi_compose(t, &m, s)?;
    let after = tree_stats(&image);
    let mut idx = s.to_vec();
    idx.sort_unstable();
    idx.dedup();
    let flipped_odd = idx.iter().filter(|&&k| classes[k - 1].is_odd()).count();
    let even_pairs = classes.iter().filter(|c| !c.is_odd()).count();
    let holds = after.singleton == before.singleton
        && after.evenp == even_pairs
        && after.des_o + flipped_odd == before.des_o
        && after.asc_o == flipped_odd
        && tree_matching(&image) == m;
    Ok(OrbitCheck { holds, image: image.to_string(), before, after, even_pairs, flipped_odd })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tree(s: &str) -> IncreasingTree {
        s.parse().unwrap()
    }

    #[test]
    fn enumeration_counts_and_order() {
        let counts: Vec<usize> = (0..=5).map(|n| tree_enumerate(n, 9).unwrap().count()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 24, 120]);
        let all: Vec<_> = tree_enumerate(3, 9).unwrap().collect();
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(all, sorted);
        assert_eq!(all[0], tree("parents: 0,0,0"));
        assert!(tree_enumerate(10, 9).is_err());
        let by_last: usize = (0..5).map(|p| trees_with_last_parent(5, p).count()).sum();
        assert_eq!(by_last, 120);
    }

    #[test]
    fn text_round_trip() {
        let t = tree("parents: 0,0,2");
        assert_eq!(t.to_string(), "parents: 0,0,2");
        assert_eq!(tree("parents:").n(), 0);
        assert!("parents: 0,2".parse::<IncreasingTree>().is_err());
        assert!("0,1".parse::<IncreasingTree>().is_err());
    }

    #[test]
    fn matchings() {
        assert_eq!(tree_matching(&tree("parents: 0,1")).pairs, vec![(0, 1)]);
        assert_eq!(tree_matching(&tree("parents: 0,0,2")).pairs, vec![(0, 1), (2, 3)]);
        assert_eq!(tree_matching(&tree("parents: 0")).pairs, vec![(0, 1)]);
    }

    #[test]
    fn statistics() {
        let path = tree_stats(&tree("parents: 0,1"));
        assert_eq!(path, TreeStats { singleton: 1, asc_o: 1, ..TreeStats::default() });
        let star = tree_stats(&tree("parents: 0,0"));
        assert_eq!(star, TreeStats { singleton: 1, des_o: 1, ..TreeStats::default() });
        let edge = tree_stats(&tree("parents: 0"));
        assert_eq!(edge, TreeStats { zerop: 1, evenp: 1, ..TreeStats::default() });
        assert!(path.is_consistent(2) && edge.is_consistent(1));
    }

    #[test]
    fn phi_examples() {
        let star = tree("parents: 0,0");
        let m = tree_matching(&star);
        let flipped = phi_apply(&star, &m, 1).unwrap();
        assert_eq!(flipped, tree("parents: 0,1"));
        assert_eq!(phi_apply(&flipped, &m, 1).unwrap(), star);
        let edge = tree("parents: 0");
        assert_eq!(phi_apply(&edge, &tree_matching(&edge), 1).unwrap(), edge);
        assert!(phi_apply(&star, &m, 2).is_err());
        assert!(phi_apply(&star, &TreeMatching { pairs: vec![(0, 2)] }, 1).is_err());
    }

    #[test]
    fn orbit_check_examples() {
        let star = tree("parents: 0,0");
        let same = phi_orbit_check(&star, &[]).unwrap();
        assert!(same.holds && same.after == same.before);
        let flip = phi_orbit_check(&star, &[1]).unwrap();
        assert!(flip.holds);
        assert_eq!((flip.after.asc_o, flip.after.des_o), (1, 0));
        assert!(phi_orbit_check(&tree("parents: 0,1"), &[]).is_err());
    }
}

//! Strictly increasing index sets and the sign combinatorics of the product.

use std::fmt;

use crate::StrataError;

/// A strictly increasing list of 0-based component indices. Displays 1-based.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    /// Sorts and deduplicates.
    pub fn new<I: IntoIterator<Item = usize>>(it: I) -> Self {
        let mut v: Vec<usize> = it.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        IndexSet(v)
    }

    /// Accepts only strictly increasing input.
    pub fn from_strict(v: Vec<usize>) -> Option<Self> {
        v.windows(2).all(|w| w[0] < w[1]).then_some(IndexSet(v))
    }

    /// From 1-based labels, as used when transcribing tables.
    pub fn one_based(v: &[usize]) -> Self {
        assert!(v.iter().all(|&i| i >= 1), "one_based: zero label");
        IndexSet::new(v.iter().map(|&i| i - 1))
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, k: usize) -> bool {
        self.0.binary_search(&k).is_ok()
    }

    pub fn max(&self) -> Option<usize> {
        self.0.last().copied()
    }

    pub fn position(&self, k: usize) -> Option<usize> {
        self.0.binary_search(&k).ok()
    }

    pub fn with(&self, k: usize) -> IndexSet {
        let mut v = self.0.clone();
        if let Err(p) = v.binary_search(&k) {
            v.insert(p, k);
        }
        IndexSet(v)
    }

    pub fn without(&self, k: usize) -> IndexSet {
        IndexSet(self.0.iter().copied().filter(|&i| i != k).collect())
    }

    pub fn union(&self, other: &IndexSet) -> IndexSet {
        IndexSet::new(self.0.iter().chain(&other.0).copied())
    }

    pub fn minus(&self, other: &IndexSet) -> IndexSet {
        IndexSet(
            self.0
                .iter()
                .copied()
                .filter(|&i| !other.contains(i))
                .collect(),
        )
    }

    pub fn is_subset(&self, other: &IndexSet) -> bool {
        self.0.iter().all(|&i| other.contains(i))
    }

    /// Concatenated 1-based digits, e.g. `{0,1,4}` gives `125`. Indices above 8 are comma separated.
    pub fn tag(&self) -> String {
        if self.0.iter().all(|&i| i < 9) {
            self.0.iter().map(|i| (i + 1).to_string()).collect()
        } else {
            self.0
                .iter()
                .map(|i| (i + 1).to_string())
                .collect::<Vec<_>>()
                .join(",")
        }
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Number of elements of `set` strictly below `k`.
pub fn sigma(set: &IndexSet, k: usize) -> usize {
    set.0.partition_point(|&i| i < k)
}

/// `(-1)^e` as an integer.
pub fn parity_sign(e: usize) -> i64 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// The splitting attached to an admissible pair `(I, J)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Admissible {
    /// Position in `J` of `max(I)`.
    pub p: usize,
    /// `b[r]` is the position in `I` of `J[r]`, for `r < p`.
    pub b: Vec<usize>,
    /// `J' = {j_0..j_p}`.
    pub j_head: IndexSet,
    /// `J'' = {j_p..j_n}`.
    pub j_tail: IndexSet,
    /// `I' = J'`.
    pub i_head: IndexSet,
    /// `I'' = (I - J') ∪ {max I}`.
    pub i_tail: IndexSet,
    /// Target stratum `I'' ∪ J''`.
    pub k: IndexSet,
    /// Indices removed by the Gysin maps, `j_0 .. j_{p-1}` in order.
    pub removed: Vec<usize>,
}

/// Returns the splitting when `max(I) = j_p` and `{j_0..j_p} ⊂ I`.
pub fn admissible(i: &IndexSet, j: &IndexSet) -> Option<Admissible> {
    let top = i.max()?;
    if j.is_empty() {
        return None;
    }
    let p = j.position(top)?;
    let js = j.indices();
    let mut b = Vec::with_capacity(p);
    for &jr in &js[..p] {
        b.push(i.position(jr)?);
    }
    let j_head = IndexSet(js[..=p].to_vec());
    let j_tail = IndexSet(js[p..].to_vec());
    let i_tail = i.minus(&j_head).with(top);
    let k = i_tail.union(&j_tail);
    Some(Admissible {
        p,
        b,
        i_head: j_head.clone(),
        removed: js[..p].to_vec(),
        j_head,
        j_tail,
        i_tail,
        k,
    })
}

/// `b_0 + ... + b_{p-1} + m p` with `m = |I| - 1`.
pub fn a_sign(i: &IndexSet, j: &IndexSet) -> Result<usize, StrataError> {
    let adm = admissible(i, j).ok_or_else(|| StrataError::NotAdmissible(i.clone(), j.clone()))?;
    Ok(adm.b.iter().sum::<usize>() + (i.len() - 1) * adm.p)
}

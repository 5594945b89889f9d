//! Graded stratum spaces and the restriction / Gysin / cup data between them.

use std::collections::BTreeMap;

use exactq::{vec_is_zero, Mat, Rat};
use num_traits::Zero;

use crate::index::IndexSet;
use crate::StrataError;

/// Dimensions of `H^d(Y_I)` per degree, with optional basis labels.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GradedSpace {
    pub dims: BTreeMap<u32, usize>,
    pub labels: BTreeMap<u32, Vec<String>>,
}

impl GradedSpace {
    pub fn new() -> Self {
        Self::default()
    }

    /// Shorthand: `[(degree, dim), ...]`.
    pub fn with_dims(dims: &[(u32, usize)]) -> Self {
        let mut g = GradedSpace::new();
        for &(d, n) in dims {
            if n > 0 {
                g.dims.insert(d, n);
            }
        }
        g
    }

    pub fn labelled(mut self, degree: u32, labels: &[&str]) -> Self {
        assert_eq!(
            self.dim(degree),
            labels.len(),
            "label count must match dimension"
        );
        self.labels
            .insert(degree, labels.iter().map(|s| s.to_string()).collect());
        self
    }

    pub fn dim(&self, degree: u32) -> usize {
        self.dims.get(&degree).copied().unwrap_or(0)
    }

    pub fn degrees(&self) -> impl Iterator<Item = u32> + '_ {
        self.dims.iter().filter(|(_, &n)| n > 0).map(|(&d, _)| d)
    }

    pub fn label(&self, degree: u32, slot: usize) -> Option<&str> {
        self.labels
            .get(&degree)
            .and_then(|v| v.get(slot))
            .map(String::as_str)
    }
}

/// A class in `H^degree(Y_stratum)(twist)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedClass {
    pub stratum: IndexSet,
    pub degree: u32,
    pub twist: i64,
    pub coords: Vec<Rat>,
}

impl GradedClass {
    pub fn is_zero(&self) -> bool {
        vec_is_zero(&self.coords)
    }
}

/// Key for a restriction or Gysin map: source stratum and the index added or removed.
pub type MapKey = (IndexSet, usize);

/// Bilinear product `H^{d1} x H^{d2} -> H^{d1+d2}` stored as a matrix of shape
/// `(dim d1+d2, dim d1 * dim d2)`; column `i * dim d2 + j` is the product of basis vectors `i`, `j`.
pub type CupKey = (IndexSet, u32, u32);

/// Cohomology of the strata of a normal-crossings fibre with its structure maps.
///
/// Absent strata are empty intersections. Absent maps between present strata are zero.
/// Matrices are assumed to already absorb the orientation signs of the strata.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrataComplex {
    pub n_components: usize,
    pub strata: BTreeMap<IndexSet, GradedSpace>,
    /// `(I, k)` with `k ∉ I`: per degree, `H^d(Y_I) -> H^d(Y_{I+k})`.
    pub rest: BTreeMap<MapKey, BTreeMap<u32, Mat>>,
    /// `(I, k)` with `k ∈ I`: per source degree, `H^d(Y_I) -> H^{d+2}(Y_{I-k})`.
    pub gysin: BTreeMap<MapKey, BTreeMap<u32, Mat>>,
    pub cup: Option<BTreeMap<CupKey, Mat>>,
    pub multiplicities: Option<Vec<u64>>,
}

impl StrataComplex {
    pub fn new(n_components: usize) -> Self {
        StrataComplex {
            n_components,
            strata: BTreeMap::new(),
            rest: BTreeMap::new(),
            gysin: BTreeMap::new(),
            cup: None,
            multiplicities: None,
        }
    }

    pub fn add_stratum(&mut self, i: IndexSet, space: GradedSpace) {
        self.strata.insert(i, space);
    }

    pub fn set_rest(&mut self, i: IndexSet, k: usize, degree: u32, m: Mat) {
        self.rest.entry((i, k)).or_default().insert(degree, m);
    }

    pub fn set_gysin(&mut self, i: IndexSet, k: usize, degree: u32, m: Mat) {
        self.gysin.entry((i, k)).or_default().insert(degree, m);
    }

    pub fn set_cup(&mut self, i: IndexSet, d1: u32, d2: u32, m: Mat) {
        self.cup
            .get_or_insert_with(BTreeMap::new)
            .insert((i, d1, d2), m);
    }

    pub fn has_products(&self) -> bool {
        self.cup.is_some()
    }

    pub fn space(&self, i: &IndexSet) -> Option<&GradedSpace> {
        self.strata.get(i)
    }

    pub fn dim(&self, i: &IndexSet, degree: u32) -> usize {
        self.strata.get(i).map_or(0, |g| g.dim(degree))
    }

    pub fn multiplicity(&self, k: usize) -> u64 {
        self.multiplicities
            .as_ref()
            .and_then(|m| m.get(k).copied())
            .unwrap_or(1)
    }

    /// Strata with exactly `size` indices, in lexicographic order.
    pub fn strata_of_size(&self, size: usize) -> Vec<&IndexSet> {
        self.strata.keys().filter(|i| i.len() == size).collect()
    }

    pub fn max_stratum_size(&self) -> usize {
        self.strata.keys().map(IndexSet::len).max().unwrap_or(0)
    }

    pub fn max_degree(&self) -> u32 {
        self.strata
            .values()
            .flat_map(|g| g.degrees())
            .max()
            .unwrap_or(0)
    }

    /// Restriction matrix `H^d(Y_I) -> H^d(Y_{I+k})`, zero when absent.
    pub fn rest_mat(&self, i: &IndexSet, k: usize, degree: u32) -> Mat {
        let target = i.with(k);
        let (r, c) = (self.dim(&target, degree), self.dim(i, degree));
        match self.rest.get(&(i.clone(), k)).and_then(|m| m.get(&degree)) {
            Some(m) if m.shape() == (r, c) => m.clone(),
            _ => Mat::zeros(r, c),
        }
    }

    /// Gysin matrix `H^d(Y_I) -> H^{d+2}(Y_{I-k})`, zero when absent or when `I = {k}`.
    pub fn gysin_mat(&self, i: &IndexSet, k: usize, degree: u32) -> Mat {
        let target = i.without(k);
        let (r, c) = (self.dim(&target, degree + 2), self.dim(i, degree));
        if target.is_empty() {
            return Mat::zeros(0, c);
        }
        match self.gysin.get(&(i.clone(), k)).and_then(|m| m.get(&degree)) {
            Some(m) if m.shape() == (r, c) => m.clone(),
            _ => Mat::zeros(r, c),
        }
    }

    pub fn restrict(&self, i: &IndexSet, k: usize, degree: u32, x: &[Rat]) -> Vec<Rat> {
        self.rest_mat(i, k, degree).mul_vec(x)
    }

    pub fn gysin_apply(&self, i: &IndexSet, k: usize, degree: u32, x: &[Rat]) -> Vec<Rat> {
        self.gysin_mat(i, k, degree).mul_vec(x)
    }

    /// Restricts from `Y_I` to `Y_target` (`I ⊂ target`), adding indices in ascending order.
    pub fn restrict_to(&self, i: &IndexSet, target: &IndexSet, degree: u32, x: &[Rat]) -> Vec<Rat> {
        debug_assert!(i.is_subset(target));
        let mut cur = i.clone();
        let mut v = x.to_vec();
        for &k in target.minus(i).indices() {
            v = self.restrict(&cur, k, degree, &v);
            cur = cur.with(k);
        }
        v
    }

    /// Cup product of `x ∈ H^{d1}(Y_I)` and `y ∈ H^{d2}(Y_I)`.
    pub fn cup_apply(
        &self,
        i: &IndexSet,
        d1: u32,
        x: &[Rat],
        d2: u32,
        y: &[Rat],
    ) -> Result<Vec<Rat>, StrataError> {
        let out_dim = self.dim(i, d1 + d2);
        if out_dim == 0 || vec_is_zero(x) || vec_is_zero(y) {
            return Ok(vec![Rat::zero(); out_dim]);
        }
        let t = self
            .cup
            .as_ref()
            .and_then(|c| c.get(&(i.clone(), d1, d2)))
            .ok_or_else(|| StrataError::MissingCup {
                stratum: i.clone(),
                d1,
                d2,
            })?;
        let n2 = y.len();
        let mut xy = vec![Rat::zero(); x.len() * n2];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if !yb.is_zero() {
                    xy[a * n2 + b] = xa * yb;
                }
            }
        }
        if t.shape() != (out_dim, xy.len()) {
            return Err(StrataError::Shape(format!(
                "cup tensor on {i} degrees ({d1},{d2}) has shape {:?}, expected {:?}",
                t.shape(),
                (out_dim, xy.len())
            )));
        }
        Ok(t.mul_vec(&xy))
    }

    /// All `(I, degree)` pairs with nonzero dimension, in stratum then degree order.
    pub fn graded_pieces(&self) -> Vec<(IndexSet, u32, usize)> {
        self.strata
            .iter()
            .flat_map(|(i, g)| g.degrees().map(move |d| (i.clone(), d, g.dim(d))))
            .collect()
    }
}

/// Unit vector of length `n` at position `i`.
pub fn basis_vec(n: usize, i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); n];
    v[i] = exactq::one();
    v
}

//! The E1 page: slot bases, the differential, N and its partial inverse.

use std::collections::BTreeMap;

use exactq::{rat, Mat};
use strata::{sigma, IndexSet, StrataComplex};

use crate::SteenbrinkError;

/// How the two halves of the differential are signed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SignProfile {
    /// `d1 = d' + d''` with `d' = Σ (-1)^σ rest`, `d'' = Σ (-1)^σ gysin`.
    #[default]
    Sigma,
    /// `d1 = (-1)^{r+k} ρ + (-1)^{k-r} (-γ)`, taken literally.
    OuterSigns,
}

/// One summand of an E1 slot: `H^degree(Y_stratum)(twist)` at summand index `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlotBlock {
    pub k: usize,
    pub stratum: IndexSet,
    pub degree: u32,
    pub twist: i64,
    pub offset: usize,
    pub dim: usize,
}

/// The summands of `E1` at `(r, n)` with their concatenated basis.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct E1Slot {
    pub r: i32,
    pub n: i32,
    pub blocks: Vec<SlotBlock>,
    pub dim: usize,
}

impl E1Slot {
    pub fn block(&self, k: usize, stratum: &IndexSet) -> Option<&SlotBlock> {
        self.blocks
            .iter()
            .find(|b| b.k == k && &b.stratum == stratum)
    }

    /// Weight of the slot, `n + r`.
    pub fn weight(&self) -> i32 {
        self.n + self.r
    }
}

/// Smallest admissible summand index at weight index `r`.
pub fn k_min(r: i32) -> usize {
    (-r).max(0) as usize
}

/// Stratum size `2k + r + 1` and degree `n - r - 2k` of summand `k`, when valid.
pub fn summand_shape(r: i32, n: i32, k: usize) -> Option<(usize, u32)> {
    let k = k as i32;
    let size = 2 * k + r + 1;
    let deg = n - r - 2 * k;
    (k >= (-r).max(0) && size >= 1 && deg >= 0).then_some((size as usize, deg as u32))
}

pub fn build_slot(c: &StrataComplex, r: i32, n: i32) -> E1Slot {
    let mut slot = E1Slot {
        r,
        n,
        blocks: Vec::new(),
        dim: 0,
    };
    let max_k = c.max_stratum_size();
    for k in k_min(r)..=max_k {
        let Some((size, deg)) = summand_shape(r, n, k) else {
            continue;
        };
        for i in c.strata_of_size(size) {
            let dim = c.dim(i, deg);
            if dim == 0 {
                continue;
            }
            slot.blocks.push(SlotBlock {
                k,
                stratum: i.clone(),
                degree: deg,
                twist: -(r as i64) - k as i64,
                offset: slot.dim,
                dim,
            });
            slot.dim += dim;
        }
    }
    slot
}

/// All `(r, n)` with a nonzero slot.
pub fn slot_keys(c: &StrataComplex) -> Vec<(i32, i32)> {
    let mut keys = std::collections::BTreeSet::new();
    for (i, g) in &c.strata {
        let s = i.len() as i32;
        for q in g.degrees() {
            for k in 0..s {
                let r = s - 1 - 2 * k;
                keys.insert((r, q as i32 + s - 1));
            }
        }
    }
    keys.into_iter().collect()
}

fn sgn(e: usize) -> exactq::Rat {
    rat(strata::parity_sign(e))
}

/// Outer sign factors `(ε', ε'')` applied to `d'` and `d''` for a source block.
fn outer_signs(profile: SignProfile, r: i32, k: usize) -> (exactq::Rat, exactq::Rat) {
    match profile {
        SignProfile::Sigma => (rat(1), rat(1)),
        SignProfile::OuterSigns => {
            let e = (r + k as i32).rem_euclid(2) as usize;
            let outer = sgn(e);
            (outer.clone(), -outer)
        }
    }
}

/// `d1: E1(r, n) -> E1(r-1, n+1)` between explicit slot bases.
pub fn d1_matrix(c: &StrataComplex, src: &E1Slot, dst: &E1Slot, profile: SignProfile) -> Mat {
    let mut m = Mat::zeros(dst.dim, src.dim);
    for b in &src.blocks {
        let (e1, e2) = outer_signs(profile, src.r, b.k);
        for l in (0..c.n_components).filter(|&l| !b.stratum.contains(l)) {
            let t = b.stratum.with(l);
            if let Some(tb) = dst.block(b.k + 1, &t) {
                let blk = c
                    .rest_mat(&b.stratum, l, b.degree)
                    .scale(&(sgn(sigma(&b.stratum, l)) * &e1));
                m.add_block(tb.offset, b.offset, &blk);
            }
        }
        for &u in b.stratum.indices() {
            let t = b.stratum.without(u);
            if let Some(tb) = dst.block(b.k, &t) {
                let blk = c
                    .gysin_mat(&b.stratum, u, b.degree)
                    .scale(&(sgn(sigma(&b.stratum, u)) * &e2));
                m.add_block(tb.offset, b.offset, &blk);
            }
        }
    }
    m
}

/// `N: E1(r, n) -> E1(r-2, n)`: identity from summand `k` onto summand `k+1` on the same stratum.
pub fn nu_between(src: &E1Slot, dst: &E1Slot) -> Mat {
    let mut m = Mat::zeros(dst.dim, src.dim);
    for b in &src.blocks {
        if let Some(tb) = dst.block(b.k + 1, &b.stratum) {
            m.add_block(tb.offset, b.offset, &Mat::identity(b.dim));
        }
    }
    m
}

/// `M: E1(r-2, n) -> E1(r, n)`: inverse of `N` on summands `k+1 -> k` where both exist.
pub fn m_between(src: &E1Slot, dst: &E1Slot) -> Mat {
    let mut m = Mat::zeros(dst.dim, src.dim);
    for b in &src.blocks {
        if b.k == 0 {
            continue;
        }
        if let Some(tb) = dst.block(b.k - 1, &b.stratum) {
            m.add_block(tb.offset, b.offset, &Mat::identity(b.dim));
        }
    }
    m
}

/// The assembled E1 page of a strata complex.
#[derive(Debug, Clone)]
pub struct E1Page {
    pub profile: SignProfile,
    pub slots: BTreeMap<(i32, i32), E1Slot>,
    /// Keyed by source `(r, n)`.
    pub d1: BTreeMap<(i32, i32), Mat>,
    /// Keyed by source `(r, n)`.
    pub nu: BTreeMap<(i32, i32), Mat>,
}

impl E1Page {
    /// Slot at `(r, n)`; an empty slot if nothing lives there.
    pub fn slot(&self, r: i32, n: i32) -> E1Slot {
        self.slots.get(&(r, n)).cloned().unwrap_or(E1Slot {
            r,
            n,
            blocks: Vec::new(),
            dim: 0,
        })
    }

    pub fn dim(&self, r: i32, n: i32) -> usize {
        self.slots.get(&(r, n)).map_or(0, |s| s.dim)
    }

    /// `d1` out of `(r, n)`, as a zero matrix of the right shape when absent.
    pub fn d1_at(&self, r: i32, n: i32) -> Mat {
        self.d1
            .get(&(r, n))
            .cloned()
            .unwrap_or_else(|| Mat::zeros(self.dim(r - 1, n + 1), self.dim(r, n)))
    }

    pub fn nu_at(&self, r: i32, n: i32) -> Mat {
        self.nu
            .get(&(r, n))
            .cloned()
            .unwrap_or_else(|| Mat::zeros(self.dim(r - 2, n), self.dim(r, n)))
    }

    /// Partial inverse `M: E1(r-2, n) -> E1(r, n)`.
    pub fn m_at(&self, r: i32, n: i32) -> Mat {
        m_between(&self.slot(r - 2, n), &self.slot(r, n))
    }

    pub fn keys(&self) -> impl Iterator<Item = &(i32, i32)> {
        self.slots.keys()
    }

    pub fn r_range(&self) -> (i32, i32) {
        let lo = self.slots.keys().map(|k| k.0).min().unwrap_or(0);
        let hi = self.slots.keys().map(|k| k.0).max().unwrap_or(0);
        (lo, hi)
    }

    pub fn n_range(&self) -> (i32, i32) {
        let lo = self.slots.keys().map(|k| k.1).min().unwrap_or(0);
        let hi = self.slots.keys().map(|k| k.1).max().unwrap_or(0);
        (lo, hi)
    }

    /// `d1 ∘ d1` out of `(r, n)`.
    pub fn d1_squared(&self, r: i32, n: i32) -> Mat {
        &self.d1_at(r - 1, n + 1) * &self.d1_at(r, n)
    }
}

/// Assembles the page without checking `d1² = 0`.
pub fn assemble_e1(c: &StrataComplex, profile: SignProfile) -> E1Page {
    let slots: BTreeMap<(i32, i32), E1Slot> = slot_keys(c)
        .into_iter()
        .map(|(r, n)| ((r, n), build_slot(c, r, n)))
        .filter(|(_, s)| s.dim > 0)
        .collect();
    let mut d1 = BTreeMap::new();
    let mut nu = BTreeMap::new();
    let empty = |r, n| E1Slot {
        r,
        n,
        blocks: Vec::new(),
        dim: 0,
    };
    for (&(r, n), s) in &slots {
        let dst = slots
            .get(&(r - 1, n + 1))
            .cloned()
            .unwrap_or_else(|| empty(r - 1, n + 1));
        d1.insert((r, n), d1_matrix(c, s, &dst, profile));
        let nd = slots
            .get(&(r - 2, n))
            .cloned()
            .unwrap_or_else(|| empty(r - 2, n));
        nu.insert((r, n), nu_between(s, &nd));
    }
    E1Page {
        profile,
        slots,
        d1,
        nu,
    }
}

/// Builds the page and rejects it if `d1² ≠ 0` anywhere.
pub fn build_e1(c: &StrataComplex, profile: SignProfile) -> Result<E1Page, SteenbrinkError> {
    let page = assemble_e1(c, profile);
    for &(r, n) in page.slots.keys() {
        let sq = page.d1_squared(r, n);
        if !sq.is_zero() {
            return Err(SteenbrinkError::SignInconsistency {
                r,
                n,
                block: sq.to_string(),
            });
        }
    }
    Ok(page)
}

/// `N` out of `(r, n)` on a built page.
pub fn nu_map(p: &E1Page, r: i32, n: i32) -> Mat {
    p.nu_at(r, n)
}

/// `M` into `(r, n)` from `(r-2, n)`.
pub fn m_partial_inverse(p: &E1Page, r: i32, n: i32) -> Mat {
    p.m_at(r, n)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use strata::GradedSpace;

    /// Two rational curves meeting in one point.
    pub(crate) fn two_lines() -> StrataComplex {
        let mut c = StrataComplex::new(2);
        for v in 0..2 {
            c.add_stratum(
                IndexSet::new([v]),
                GradedSpace::with_dims(&[(0, 1), (2, 1)]),
            );
        }
        let p = IndexSet::new([0, 1]);
        c.add_stratum(p.clone(), GradedSpace::with_dims(&[(0, 1)]));
        let one = Mat::from_i64(&[&[1]]);
        c.set_rest(IndexSet::new([0]), 1, 0, one.clone());
        c.set_rest(IndexSet::new([1]), 0, 0, one.clone());
        c.set_gysin(p.clone(), 0, 0, one.clone());
        c.set_gysin(p, 1, 0, one);
        c
    }

    #[test]
    fn summand_shapes() {
        assert_eq!(k_min(2), 0);
        assert_eq!(k_min(-3), 3);
        assert_eq!(summand_shape(1, 1, 0), Some((2, 0)));
        assert_eq!(summand_shape(-1, 1, 1), Some((2, 0)));
        assert_eq!(summand_shape(-1, 1, 0), None);
        assert_eq!(summand_shape(0, 2, 0), Some((1, 2)));
        assert_eq!(summand_shape(0, 1, 1), None);
    }

    #[test]
    fn slots_of_two_lines() {
        let c = two_lines();
        assert_eq!(slot_keys(&c), vec![(-1, 1), (0, 0), (0, 2), (1, 1)]);
        let s = build_slot(&c, 1, 1);
        assert_eq!(s.dim, 1);
        assert_eq!(s.blocks[0].twist, -1);
        assert_eq!(s.weight(), 2);
        assert_eq!(build_slot(&c, -1, 1).blocks[0].twist, 0);
    }

    #[test]
    fn differential_uses_sigma_signs() {
        let page = build_e1(&two_lines(), SignProfile::Sigma).unwrap();
        // σ({0}, 1) = 1 and σ({1}, 0) = 0.
        assert_eq!(page.d1_at(0, 0), Mat::from_i64(&[&[-1, 1]]));
        assert_eq!(page.d1_at(1, 1), Mat::from_i64(&[&[-1], &[1]]));
    }

    #[test]
    fn nu_and_its_partial_inverse() {
        let page = build_e1(&two_lines(), SignProfile::Sigma).unwrap();
        assert_eq!(nu_map(&page, 1, 1), Mat::from_i64(&[&[1]]));
        assert_eq!(m_partial_inverse(&page, 1, 1), Mat::from_i64(&[&[1]]));
        assert!(nu_map(&page, 0, 2).is_zero());
    }

    #[test]
    fn outer_sign_profile() {
        let c = two_lines();
        let a = assemble_e1(&c, SignProfile::Sigma);
        let b = assemble_e1(&c, SignProfile::OuterSigns);
        assert_eq!(b.d1_at(1, 1), a.d1_at(1, 1));
        assert_eq!(b.d1_at(0, 0), a.d1_at(0, 0));
        assert_eq!(
            outer_signs(SignProfile::OuterSigns, 0, 1),
            (rat(-1), rat(1))
        );
        assert_eq!(
            outer_signs(SignProfile::OuterSigns, 2, 0),
            (rat(1), rat(-1))
        );
        assert_eq!(outer_signs(SignProfile::Sigma, 3, 4), (rat(1), rat(1)));
    }
}

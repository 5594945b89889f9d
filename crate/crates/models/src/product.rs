//! Resolved fibre products `Z → X ×_S X` with their pullbacks and trace-dual pushforward.

use std::collections::{BTreeMap, BTreeSet};

use exactq::{Mat, Rat};
use num_traits::One;
use steenbrink::{build_e1, E1Page, SignProfile};
use strata::{IndexSet, StrataComplex};

use crate::ring::{face_monomial, poly_mul, IntersectionRing, Poly, RingBases};
use crate::ModelError;

/// Signed images of `1_{Y_I}` as combinations of `1_{T_K}`.
pub type PullbackTable = BTreeMap<IndexSet, Vec<(IndexSet, Rat)>>;

/// For a base stratum `Y_I`, the image of its point class under `p_2^*` as `[(T_K, cofactor)]`:
/// the class `Σ D_K · cofactor` in the total ring.
pub type DualTable = BTreeMap<IndexSet, Vec<(IndexSet, Poly)>>;

/// A labelled family of classes in one total slot: the span a cocycle is searched in.
#[derive(Debug, Clone)]
pub struct CandidateSpace {
    pub slot: (i32, i32),
    pub labels: Vec<String>,
    /// Slot coordinates of each unknown's class.
    pub columns: Vec<Vec<Rat>>,
    /// The leading unknowns that are eliminated when reporting reduced relations.
    pub n_eliminate: usize,
}

/// The special fibres of `f: X → S` (base) and of a resolution `Z → X ×_S X` (total),
/// with the two pullbacks on `H^0` summands and the pushforward along the second factor.
#[derive(Debug, Clone)]
pub struct ProductResolutionModel {
    pub name: String,
    pub base: StrataComplex,
    pub total: StrataComplex,
    pub base_page: E1Page,
    pub total_page: E1Page,
    pub total_ring: IntersectionRing,
    pub total_bases: RingBases,
    /// Dimension of the components of the base fibre.
    pub base_dim: usize,
    /// `dim T_i - dim Y_i`.
    pub rel_dim: usize,
    pub p1_table: PullbackTable,
    pub p2_table: PullbackTable,
    pub p2_dual: DualTable,
    /// Keyed by slot `(r, n)`; maps base `E1(r, n)` to total `E1(r, n)`.
    pub p1_star: BTreeMap<(i32, i32), Mat>,
    pub p2_star: BTreeMap<(i32, i32), Mat>,
    /// Keyed by the base slot `(r, n)`; maps total `E1(r, n + 2e)` to base `E1(r, n)`.
    pub p2_lower: BTreeMap<(i32, i32), Mat>,
    /// Strata of the total fibre that are compact in the geometric situation.
    pub proper: BTreeSet<IndexSet>,
    /// Candidate spaces by power of `N`.
    pub candidates: BTreeMap<usize, CandidateSpace>,
    /// Descriptive labels attached to strata (e.g. which diagonal a point lies over).
    pub stratum_notes: BTreeMap<IndexSet, String>,
    /// Discrepancies between the chart data and the global data, recorded verbatim.
    pub notes: Vec<String>,
}

/// Inputs shared by every product model constructor.
pub struct ModelParts {
    pub name: String,
    pub base: StrataComplex,
    pub total: StrataComplex,
    pub total_ring: IntersectionRing,
    pub total_bases: RingBases,
    pub base_dim: usize,
    pub rel_dim: usize,
    pub p1_table: PullbackTable,
    pub p2_table: PullbackTable,
    pub p2_dual: DualTable,
    pub proper: BTreeSet<IndexSet>,
    pub stratum_notes: BTreeMap<IndexSet, String>,
    pub notes: Vec<String>,
}

/// Coordinates of `1` in `H^0` of a stratum; `H^0` is spanned by the unit in every model here.
fn unit_coords(c: &StrataComplex, i: &IndexSet) -> Vec<Rat> {
    let mut v = vec![exactq::zero(); c.dim(i, 0)];
    if let Some(x) = v.first_mut() {
        *x = Rat::one();
    }
    v
}

fn pullback_at(
    base: &E1Page,
    total: &E1Page,
    tc: &StrataComplex,
    table: &PullbackTable,
    r: i32,
    n: i32,
) -> Mat {
    let src = base.slot(r, n);
    let dst = total.slot(r, n);
    let mut m = Mat::zeros(dst.dim, src.dim);
    for b in src.blocks.iter().filter(|b| b.degree == 0) {
        let Some(images) = table.get(&b.stratum) else {
            continue;
        };
        for (k, coeff) in images {
            if let Some(tb) = dst.block(b.k, k) {
                for (a, x) in unit_coords(tc, k).iter().enumerate() {
                    m.add_at(tb.offset + a, b.offset, &(coeff * x));
                }
            }
        }
    }
    m
}

impl ProductResolutionModel {
    /// Assembles pages, pullbacks on every slot and the pushforward on the slots the dual table covers.
    pub fn assemble(parts: ModelParts) -> Result<Self, ModelError> {
        let err = |e: steenbrink::SteenbrinkError| ModelError::Construction(e.to_string());
        let base_page = build_e1(&parts.base, SignProfile::Sigma).map_err(err)?;
        let total_page = build_e1(&parts.total, SignProfile::Sigma).map_err(err)?;
        let mut p1_star = BTreeMap::new();
        let mut p2_star = BTreeMap::new();
        for &(r, n) in base_page.keys() {
            p1_star.insert(
                (r, n),
                pullback_at(&base_page, &total_page, &parts.total, &parts.p1_table, r, n),
            );
            p2_star.insert(
                (r, n),
                pullback_at(&base_page, &total_page, &parts.total, &parts.p2_table, r, n),
            );
        }
        let mut m = ProductResolutionModel {
            name: parts.name,
            base: parts.base,
            total: parts.total,
            base_page,
            total_page,
            total_ring: parts.total_ring,
            total_bases: parts.total_bases,
            base_dim: parts.base_dim,
            rel_dim: parts.rel_dim,
            p1_table: parts.p1_table,
            p2_table: parts.p2_table,
            p2_dual: parts.p2_dual,
            p1_star,
            p2_star,
            p2_lower: BTreeMap::new(),
            proper: parts.proper,
            candidates: BTreeMap::new(),
            stratum_notes: parts.stratum_notes,
            notes: parts.notes,
        };
        let keys: Vec<(i32, i32)> = m.base_page.keys().copied().collect();
        for (r, n) in keys {
            if let Some(p) = m.trace_dual_at(r, n) {
                m.p2_lower.insert((r, n), p);
            }
        }
        Ok(m)
    }

    /// The pushforward into base slot `(r, n)`: the entry for a base `H^0` summand `Y_I` and a
    /// total basis class `α` on `T_K` (same summand index) is `∫_{T_K} α · p_2^*(pt_{Y_I})`.
    fn trace_dual_at(&self, r: i32, n: i32) -> Option<Mat> {
        let src = self.total_page.slot(r, n + 2 * self.rel_dim as i32);
        let dst = self.base_page.slot(r, n);
        if dst
            .blocks
            .iter()
            .all(|b| b.degree != 0 || !self.p2_dual.contains_key(&b.stratum))
        {
            return None;
        }
        let mut m = Mat::zeros(dst.dim, src.dim);
        for b in dst.blocks.iter().filter(|b| b.degree == 0) {
            let Some(images) = self.p2_dual.get(&b.stratum) else {
                continue;
            };
            for (k, cof) in images {
                let Some(tb) = src.block(b.k, k) else {
                    continue;
                };
                let j = tb.degree as usize / 2;
                let Some(basis) = self.total_bases.get(k).and_then(|p| p.get(&j)) else {
                    continue;
                };
                for (a, q) in basis.cofactors.iter().enumerate() {
                    let mut full = poly_mul(q, cof);
                    full = poly_mul(&full, &face_monomial(k));
                    m.add_at(b.offset, tb.offset + a, &self.total_ring.integrate(&full));
                }
            }
        }
        Some(m)
    }

    pub fn p1_at(&self, r: i32, n: i32) -> Mat {
        self.p1_star
            .get(&(r, n))
            .cloned()
            .unwrap_or_else(|| Mat::zeros(self.total_page.dim(r, n), self.base_page.dim(r, n)))
    }

    pub fn p2_at(&self, r: i32, n: i32) -> Mat {
        self.p2_star
            .get(&(r, n))
            .cloned()
            .unwrap_or_else(|| Mat::zeros(self.total_page.dim(r, n), self.base_page.dim(r, n)))
    }

    /// `d1 ∘ p^* - p^* ∘ d1` out of base slot `(r, n)` for the first (`which = 1`) or second pullback.
    pub fn pullback_d1_defect(&self, which: u8, r: i32, n: i32) -> Mat {
        let p = |r, n| {
            if which == 1 {
                self.p1_at(r, n)
            } else {
                self.p2_at(r, n)
            }
        };
        let lhs = &self.total_page.d1_at(r, n) * &p(r, n);
        let rhs = &p(r - 1, n + 1) * &self.base_page.d1_at(r, n);
        &lhs - &rhs
    }

    /// Slots whose pullback fails to commute with `d1`, with the defect matrices.
    pub fn pullback_d1_report(&self) -> Vec<(u8, (i32, i32), Mat)> {
        let mut out = Vec::new();
        for which in [1u8, 2] {
            for &(r, n) in self.base_page.keys() {
                let d = self.pullback_d1_defect(which, r, n);
                if !d.is_zero() {
                    out.push((which, (r, n), d));
                }
            }
        }
        out
    }

    /// Labels of the basis of total slot `(r, n)`, e.g. `T125:1`.
    pub fn total_slot_labels(&self, r: i32, n: i32) -> Vec<String> {
        slot_labels(&self.total, &self.total_page, "T", r, n)
    }

    pub fn base_slot_labels(&self, r: i32, n: i32) -> Vec<String> {
        slot_labels(&self.base, &self.base_page, "Y", r, n)
    }

    /// Unit vector of the basis class `index` of `H^*(T_stratum)` in total slot `(r, n)`.
    pub fn total_basis_vector(
        &self,
        r: i32,
        n: i32,
        stratum: &IndexSet,
        index: usize,
    ) -> Option<Vec<Rat>> {
        let slot = self.total_page.slot(r, n);
        let b = slot.blocks.iter().find(|b| &b.stratum == stratum)?;
        (index < b.dim).then(|| strata::basis_vec(slot.dim, b.offset + index))
    }
}

/// Labels `"<prefix><stratum>:<class>"` for the basis of slot `(r, n)`.
pub fn slot_labels(c: &StrataComplex, page: &E1Page, prefix: &str, r: i32, n: i32) -> Vec<String> {
    let slot = page.slot(r, n);
    let mut out = Vec::with_capacity(slot.dim);
    for b in &slot.blocks {
        for a in 0..b.dim {
            let l = c
                .space(&b.stratum)
                .and_then(|s| s.label(b.degree, a))
                .map_or_else(|| format!("e{a}"), str::to_string);
            out.push(format!("{prefix}{}:{}", b.stratum.tag(), l));
        }
    }
    out
}

/// Parses `"125"`-style one-based labels into index sets.
pub fn iset1(s: &str) -> IndexSet {
    IndexSet::new(
        s.chars()
            .map(|c| c.to_digit(10).expect("digit") as usize - 1),
    )
}

/// Builds a table from one-based labels.
pub fn table1(rows: &[(&str, &[(&str, i64)])]) -> PullbackTable {
    rows.iter()
        .map(|(y, ts)| {
            (
                iset1(y),
                ts.iter()
                    .map(|(t, c)| (iset1(t), exactq::rat(*c)))
                    .collect(),
            )
        })
        .collect()
}

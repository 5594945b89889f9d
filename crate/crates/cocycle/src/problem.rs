//! Assembling the constraint matrix.

use blochprod::{star, E1Element, LabeledChain};
use exactq::{solve_affine, vec_is_zero, AffineSolutionSet, Mat, Rat};
use models::product::ProductResolutionModel;
use strata::basis_vec;

use crate::CocycleError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ConstraintGroup {
    /// The candidate restricts to zero on the next stratum level.
    Kernel,
    /// The correspondence square commutes on one source basis class.
    Commutativity,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintRow {
    pub group: ConstraintGroup,
    /// Which coordinate of which image the row reads off.
    pub tag: String,
    pub coeffs: Vec<Rat>,
    pub rhs: Rat,
}

/// Unknowns, their classes, and the tagged rows over them.
#[derive(Debug, Clone)]
pub struct CorrespondenceProblem<'a> {
    pub model: &'a ProductResolutionModel,
    pub power: usize,
    pub unknowns: Vec<String>,
    pub columns: Vec<Vec<Rat>>,
    pub slot: (i32, i32),
    pub n_eliminate: usize,
    pub rows: Vec<ConstraintRow>,
}

impl CorrespondenceProblem<'_> {
    pub fn matrix(&self) -> Mat {
        Mat::from_rows(
            self.rows.iter().map(|r| r.coeffs.clone()).collect(),
            self.unknowns.len(),
        )
        .expect("rows have one entry per unknown")
    }

    pub fn rhs(&self) -> Vec<Rat> {
        self.rows.iter().map(|r| r.rhs.clone()).collect()
    }

    pub fn rows_in(&self, g: ConstraintGroup) -> impl Iterator<Item = &ConstraintRow> {
        self.rows.iter().filter(move |r| r.group == g)
    }

    /// Slot vector of the class with the given unknown values.
    pub fn class_of(&self, x: &[Rat]) -> Vec<Rat> {
        let dim = self.columns.first().map_or(0, Vec::len);
        let mut v = vec![exactq::zero(); dim];
        for (col, a) in self.columns.iter().zip(x) {
            for (e, c) in v.iter_mut().zip(col) {
                *e += a * c;
            }
        }
        v
    }

    /// A copy with the unknowns reordered by `perm` (new position `j` holds old unknown `perm[j]`).
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut p = self.clone();
        p.unknowns = perm.iter().map(|&j| self.unknowns[j].clone()).collect();
        p.columns = perm.iter().map(|&j| self.columns[j].clone()).collect();
        for r in &mut p.rows {
            r.coeffs = perm.iter().map(|&j| r.coeffs[j].clone()).collect();
        }
        p
    }
}

/// Left-column chain of a candidate class given by slot coordinates.
pub(crate) fn left_chain(m: &ProductResolutionModel, slot: (i32, i32), v: &[Rat]) -> LabeledChain {
    let e = E1Element::from_vector(&m.total_page, slot.0, slot.1, v);
    let mut ch = LabeledChain::new();
    for c in e.classes() {
        ch.add_class(&c);
    }
    ch
}

/// `(p_2)_*(c ∗ p_1^* v)` in base slot `(-i, i)`, for `c` given by total slot coordinates and
/// `v` the `src`-th basis class of base slot `(i, i)`.
pub fn correspondence_image(
    m: &ProductResolutionModel,
    power: usize,
    c: &[Rat],
    cand_slot: (i32, i32),
    src: usize,
) -> Result<Vec<Rat>, CocycleError> {
    let i = power as i32;
    let e = 2 * m.rel_dim as i32;
    let v = basis_vec(m.base_page.dim(i, i), src);
    let pv = m.p1_at(i, i).mul_vec(&v);
    let pv = E1Element::from_vector(&m.total_page, i, i, &pv);
    let prod = star(&m.total, &left_chain(m, cand_slot, c), &pv)?;
    let w = prod.to_vector(&m.total_page, -i, i + e);
    let lower = m
        .p2_lower
        .get(&(-i, i))
        .ok_or_else(|| CocycleError::MissingStrata {
            model: m.name.clone(),
            power,
        })?;
    Ok(lower.mul_vec(&w))
}

/// `N^i` applied to the `src`-th basis class of base slot `(i, i)`.
pub fn nu_power_image(m: &ProductResolutionModel, power: usize, src: usize) -> Vec<Rat> {
    let i = power as i32;
    let mut v = basis_vec(m.base_page.dim(i, i), src);
    let mut r = i;
    for _ in 0..power {
        v = m.base_page.nu_at(r, i).mul_vec(&v);
        r -= 2;
    }
    v
}

/// Builds kernel and commutativity rows for `[N^power]` over the model's candidate space.
pub fn build_problem(
    m: &ProductResolutionModel,
    power: usize,
) -> Result<CorrespondenceProblem<'_>, CocycleError> {
    let cand = m
        .candidates
        .get(&power)
        .ok_or_else(|| CocycleError::MissingStrata {
            model: m.name.clone(),
            power,
        })?;
    let (r, n) = cand.slot;
    let nu = cand.labels.len();
    let mut rows = Vec::new();

    let d = m.total_page.d1_at(r, n);
    let targets = m.total_slot_labels(r - 1, n + 1);
    let images: Vec<Vec<Rat>> = cand.columns.iter().map(|c| d.mul_vec(c)).collect();
    for (t, label) in targets.iter().enumerate() {
        let coeffs: Vec<Rat> = images.iter().map(|im| im[t].clone()).collect();
        if !vec_is_zero(&coeffs) {
            rows.push(ConstraintRow {
                group: ConstraintGroup::Kernel,
                tag: format!("d1 -> {label}"),
                coeffs,
                rhs: exactq::zero(),
            });
        }
    }

    let i = power as i32;
    let src_labels = m.base_slot_labels(i, i);
    let dst_labels = m.base_slot_labels(-i, i);
    for (s, sl) in src_labels.iter().enumerate() {
        let mut per_unknown = Vec::with_capacity(nu);
        for col in &cand.columns {
            per_unknown.push(correspondence_image(m, power, col, cand.slot, s)?);
        }
        let target = nu_power_image(m, power, s);
        for (b, bl) in dst_labels.iter().enumerate() {
            let coeffs: Vec<Rat> = per_unknown.iter().map(|w| w[b].clone()).collect();
            let rhs = target[b].clone();
            if vec_is_zero(&coeffs) && rhs == exactq::zero() {
                continue;
            }
            rows.push(ConstraintRow {
                group: ConstraintGroup::Commutativity,
                tag: format!("v = {sl}: coefficient of {bl}"),
                coeffs,
                rhs,
            });
        }
    }
    Ok(CorrespondenceProblem {
        model: m,
        power,
        unknowns: cand.labels.clone(),
        columns: cand.columns.clone(),
        slot: cand.slot,
        n_eliminate: cand.n_eliminate,
        rows,
    })
}

/// Exact affine solution set of the problem.
pub fn solve(p: &CorrespondenceProblem<'_>) -> Result<AffineSolutionSet, CocycleError> {
    let sol = solve_affine(&p.matrix(), &p.rhs());
    if !sol.is_feasible() {
        return Err(CocycleError::Infeasible);
    }
    Ok(sol)
}

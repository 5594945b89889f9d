//! Clemens–Schmid exactness for degenerations of curves.

use exactq::{kernel_basis, rank, rat, Mat};
use strata::{parity_sign, sigma, IndexSet, StrataComplex};

use crate::e2::E2Page;
use crate::nerve::cech_restriction;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClemensSchmidReport {
    /// `dim E2^{-1,2}` (weight 2 part of `H^1`).
    pub top_weight: usize,
    /// `dim ker(γ: H^0(Y^(2))(-1) -> H^2(Y^(1)))`.
    pub gysin_kernel: usize,
    /// `dim E2^{1,0}` (weight 0 part of `H^1`).
    pub bottom_weight: usize,
    /// `dim coker(ρ: H^0(Y^(1)) -> H^0(Y^(2)))`.
    pub restriction_cokernel: usize,
    /// `dim H^1(Y^(1))`.
    pub middle: usize,
    /// `dim E2^{0,1}`.
    pub middle_e2: usize,
    /// `dim H^1_lim` as the sum of the three graded pieces.
    pub h1_limit: usize,
    pub top_exact: bool,
    pub bottom_exact: bool,
    pub middle_ok: bool,
    pub curve_type: bool,
}

impl ClemensSchmidReport {
    pub fn pass(&self) -> bool {
        self.curve_type && self.top_exact && self.bottom_exact && self.middle_ok
    }
}

fn gysin_sum(c: &StrataComplex) -> Mat {
    let pts: Vec<&IndexSet> = c.strata_of_size(2);
    let comps: Vec<&IndexSet> = c.strata_of_size(1);
    let mut so = Vec::new();
    let mut acc = 0;
    for p in &pts {
        so.push(acc);
        acc += c.dim(p, 0);
    }
    let cols = acc;
    let mut to = Vec::new();
    acc = 0;
    for y in &comps {
        to.push(acc);
        acc += c.dim(y, 2);
    }
    let mut m = Mat::zeros(acc, cols);
    for (a, p) in pts.iter().enumerate() {
        for &u in p.indices() {
            let t = p.without(u);
            if let Some(b) = comps.iter().position(|y| **y == t) {
                let blk = c.gysin_mat(p, u, 0).scale(&rat(parity_sign(sigma(p, u))));
                m.add_block(to[b], so[a], &blk);
            }
        }
    }
    m
}

/// Checks the two exact sequences at their stated spots and the dimension of `H^1_lim`.
pub fn clemens_schmid_curve_check(e2: &E2Page, c: &StrataComplex) -> ClemensSchmidReport {
    let curve_type = c.max_degree() <= 2 && c.max_stratum_size() <= 2;
    let gk = kernel_basis(&gysin_sum(c)).len();
    let rho = cech_restriction(c, 1, 0);
    let coker = rho.rows() - rank(&rho);
    let middle: usize = c.strata_of_size(1).iter().map(|y| c.dim(y, 1)).sum();
    let (top, bottom, mid) = (e2.dim(1, 1), e2.dim(-1, 1), e2.dim(0, 1));
    ClemensSchmidReport {
        top_weight: top,
        gysin_kernel: gk,
        bottom_weight: bottom,
        restriction_cokernel: coker,
        middle,
        middle_e2: mid,
        h1_limit: middle + top + bottom,
        top_exact: top == gk,
        bottom_exact: bottom == coker,
        middle_ok: mid == middle && e2.total_dim(1) == middle + top + bottom,
        curve_type,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::e2::compute_e2;
    use crate::page::tests::two_lines;
    use crate::page::{build_e1, SignProfile};

    #[test]
    fn tree_of_two_lines_is_exact() {
        let c = two_lines();
        let e2 = compute_e2(&build_e1(&c, SignProfile::Sigma).unwrap());
        let rep = clemens_schmid_curve_check(&e2, &c);
        assert!(rep.pass());
        assert_eq!(
            (rep.gysin_kernel, rep.restriction_cokernel, rep.h1_limit),
            (0, 0, 0)
        );
    }
}

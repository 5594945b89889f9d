//! Cohomology of the dual complex and the monodromy criteria for surfaces.

use exactq::{rank, rat, Mat};
use strata::{parity_sign, sigma, IndexSet, StrataComplex};

use crate::SteenbrinkError;

/// Signed restriction `H^q(Y^(s)) -> H^q(Y^(s+1))`, strata in lexicographic order.
pub fn cech_restriction(c: &StrataComplex, size: usize, degree: u32) -> Mat {
    let src: Vec<&IndexSet> = c.strata_of_size(size);
    let dst: Vec<&IndexSet> = c.strata_of_size(size + 1);
    let offsets = |v: &[&IndexSet]| -> Vec<usize> {
        let mut acc = 0;
        v.iter()
            .map(|i| {
                let o = acc;
                acc += c.dim(i, degree);
                o
            })
            .collect()
    };
    let (so, to) = (offsets(&src), offsets(&dst));
    let rows: usize = dst.iter().map(|i| c.dim(i, degree)).sum();
    let cols: usize = src.iter().map(|i| c.dim(i, degree)).sum();
    let mut m = Mat::zeros(rows, cols);
    for (a, i) in src.iter().enumerate() {
        for (b, t) in dst.iter().enumerate() {
            if !i.is_subset(t) {
                continue;
            }
            let l = t.minus(i).indices()[0];
            let blk = c
                .rest_mat(i, l, degree)
                .scale(&rat(parity_sign(sigma(i, l))));
            m.add_block(to[b], so[a], &blk);
        }
    }
    m
}

/// Betti numbers `h^i(|Γ|)`, one simplex per basis vector of `H^0` of each stratum.
///
/// With `H^0` bases given by connected components and restrictions given by
/// incidence, this is the simplicial cochain complex of the dual complex.
pub fn dual_complex_cohomology(c: &StrataComplex) -> Vec<usize> {
    let top = c.max_stratum_size();
    let dims: Vec<usize> = (1..=top)
        .map(|s| c.strata_of_size(s).iter().map(|i| c.dim(i, 0)).sum())
        .collect();
    let ranks: Vec<usize> = (1..=top)
        .map(|s| rank(&cech_restriction(c, s, 0)))
        .collect();
    (0..top)
        .map(|i| {
            let incoming = if i == 0 { 0 } else { ranks[i - 1] };
            dims[i] - ranks[i] - incoming
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MonodromyCriteria {
    pub n_on_h1_zero: bool,
    pub n_on_h2_zero: bool,
    pub n2_on_h2_zero: bool,
}

/// Criteria for surface-type complexes, read off the dual complex and `ρ` on `H^1`.
pub fn monodromy_criteria(c: &StrataComplex) -> Result<MonodromyCriteria, SteenbrinkError> {
    let top = c.max_degree();
    if top > 4 {
        return Err(SteenbrinkError::DimensionError(top));
    }
    let h = dual_complex_cohomology(c);
    let h1 = h.get(1).copied().unwrap_or(0);
    let h2 = h.get(2).copied().unwrap_or(0);
    let rho = cech_restriction(c, 1, 1);
    let surjective = rank(&rho) == rho.rows();
    Ok(MonodromyCriteria {
        n_on_h1_zero: h1 == 0,
        n_on_h2_zero: h2 == 0 && surjective,
        n2_on_h2_zero: h2 == 0,
    })
}

//! E2 as kernel modulo image, with the induced monodromy.

use std::collections::BTreeMap;

use exactq::{image_basis, kernel_basis, rank, Mat, Quotient};

use crate::page::E1Page;

/// One E2 group: `ker d1(r,n) / im d1(r+1,n-1)` inside the E1 slot basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct E2Block {
    pub r: i32,
    pub n: i32,
    pub quotient: Quotient,
}

impl E2Block {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }
}

#[derive(Debug, Clone)]
pub struct E2Page {
    pub blocks: BTreeMap<(i32, i32), E2Block>,
}

impl E2Page {
    pub fn dim(&self, r: i32, n: i32) -> usize {
        self.blocks.get(&(r, n)).map_or(0, E2Block::dim)
    }

    /// `dim gr^W_{n+r} H^n` summed over the slots of total degree `n`.
    pub fn total_dim(&self, n: i32) -> usize {
        self.blocks
            .iter()
            .filter(|((_, m), _)| *m == n)
            .map(|(_, b)| b.dim())
            .sum()
    }

    /// Graded piece of weight `w` in `H^n`, i.e. the slot `r = w - n`.
    pub fn graded_dim(&self, n: i32, w: i32) -> usize {
        self.dim(w - n, n)
    }

    /// Induced `N: E2(r, n) -> E2(r-2, n)` in representative coordinates.
    pub fn induced_nu(&self, page: &E1Page, r: i32, n: i32) -> Mat {
        let (Some(src), Some(dst)) = (self.blocks.get(&(r, n)), self.blocks.get(&(r - 2, n)))
        else {
            return Mat::zeros(self.dim(r - 2, n), self.dim(r, n));
        };
        let nu = page.nu_at(r, n);
        let mut m = Mat::zeros(dst.dim(), src.dim());
        for (j, rep) in src.quotient.reps.iter().enumerate() {
            let img = nu.mul_vec(rep);
            let coords = dst.quotient.coords(&img).expect("N maps cycles to cycles");
            for (i, c) in coords.into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        m
    }
}

fn block_for(page: &E1Page, r: i32, n: i32) -> E2Block {
    let dim = page.dim(r, n);
    let ker = kernel_basis(&page.d1_at(r, n));
    let im = image_basis(&page.d1_at(r + 1, n - 1));
    E2Block {
        r,
        n,
        quotient: Quotient::new(&ker, &im, dim),
    }
}

/// Computes every E2 block; blocks are independent and run in parallel when enabled.
pub fn compute_e2(page: &E1Page) -> E2Page {
    let keys: Vec<(i32, i32)> = page.slots.keys().copied().collect();
    #[cfg(feature = "parallel")]
    let blocks: Vec<E2Block> = {
        use rayon::prelude::*;
        keys.par_iter()
            .map(|&(r, n)| block_for(page, r, n))
            .collect()
    };
    #[cfg(not(feature = "parallel"))]
    let blocks: Vec<E2Block> = keys.iter().map(|&(r, n)| block_for(page, r, n)).collect();
    E2Page {
        blocks: blocks.into_iter().map(|b| ((b.r, b.n), b)).collect(),
    }
}

/// Sequential reference path, always available for comparison.
pub fn compute_e2_sequential(page: &E1Page) -> E2Page {
    let blocks = page
        .slots
        .keys()
        .map(|&(r, n)| ((r, n), block_for(page, r, n)))
        .collect();
    E2Page { blocks }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightCheckEntry {
    pub n: i32,
    pub r: i32,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub iso: bool,
}

/// Checks that `N^r: gr_{n+r} -> gr_{n-r}` is an isomorphism; report only.
pub fn monodromy_weight_check(page: &E1Page, e2: &E2Page) -> Vec<WeightCheckEntry> {
    let mut out = Vec::new();
    let ns: std::collections::BTreeSet<i32> = e2.blocks.keys().map(|k| k.1).collect();
    for n in ns {
        let rmax = e2
            .blocks
            .keys()
            .filter(|k| k.1 == n)
            .map(|k| k.0.abs())
            .max()
            .unwrap_or(0);
        for r in 1..=rmax {
            let (sd, td) = (e2.dim(r, n), e2.dim(-r, n));
            if sd == 0 && td == 0 {
                continue;
            }
            let mut acc = Mat::identity(sd);
            let mut cur = r;
            for _ in 0..r {
                acc = &e2.induced_nu(page, cur, n) * &acc;
                cur -= 2;
            }
            let rk = rank(&acc);
            out.push(WeightCheckEntry {
                n,
                r,
                source_dim: sd,
                target_dim: td,
                rank: rk,
                iso: sd == td && rk == sd,
            });
        }
    }
    out
}

//! Oracle checks of the star action against the cap product.

use exactq::{rat, Rat};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use strata::{basis_vec, GradedClass, IndexSet, StrataComplex};

use crate::chain::LabeledChain;
use crate::star::{star, E1Element};
use crate::theta::theta_chain;
use crate::BlochError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CapReport {
    /// `1 ∗ b = b` for every bottom-row basis class.
    pub unit_acts_as_identity: bool,
    /// Point class on a component capping its fundamental class gives the point class.
    pub point_cap_ok: bool,
    pub point_cap_cases: usize,
    pub associativity_trials: usize,
    pub associativity_failures: usize,
}

impl CapReport {
    pub fn pass(&self) -> bool {
        self.unit_acts_as_identity && self.point_cap_ok && self.associativity_failures == 0
    }
}

/// The unit `Σ_i 1_{Y_i}`, assuming the first `H^0` basis vector of each component is its unit.
pub fn unit_chain(c: &StrataComplex) -> LabeledChain {
    let mut u = LabeledChain::new();
    for i in c.strata_of_size(1) {
        let n = c.dim(i, 0);
        if n > 0 {
            u.add(i.clone(), 0, 0, basis_vec(n, 0));
        }
    }
    u
}

/// Bottom-row basis classes: `H^q(Y_J)(-|J|+1)`.
fn bottom_row_basis(c: &StrataComplex) -> Vec<GradedClass> {
    let mut out = Vec::new();
    for (j, d, n) in c.graded_pieces() {
        for a in 0..n {
            out.push(GradedClass {
                stratum: j.clone(),
                degree: d,
                twist: -(j.len() as i64 - 1),
                coords: basis_vec(n, a),
            });
        }
    }
    out
}

/// Left-column product restricted to the left column.
fn left_product(
    c: &StrataComplex,
    a: &LabeledChain,
    b: &LabeledChain,
) -> Result<LabeledChain, BlochError> {
    let full = theta_chain(c, a, b)?;
    let mut out = LabeledChain::new();
    for cl in full.classes().filter(|cl| cl.twist == 0) {
        out.add_class(&cl);
    }
    Ok(out)
}

fn random_component_class(c: &StrataComplex, rng: &mut ChaCha8Rng) -> LabeledChain {
    let comps: Vec<(IndexSet, u32, usize)> = c
        .graded_pieces()
        .into_iter()
        .filter(|(i, _, _)| i.len() == 1)
        .collect();
    let mut ch = LabeledChain::new();
    if comps.is_empty() {
        return ch;
    }
    let (i, d, n) = comps[rng.gen_range(0..comps.len())].clone();
    let v: Vec<Rat> = (0..n).map(|_| rat(rng.gen_range(-3..=3))).collect();
    ch.add(i, d, 0, v);
    ch
}

/// Module axioms on the bottom row plus the tabulated point-class cap on `P^1`-like components.
///
/// Associativity is sampled with both left factors drawn from the cohomology of components.
pub fn cap_product_oracle_check(
    c: &StrataComplex,
    trials: usize,
    seed: u64,
) -> Result<CapReport, BlochError> {
    let unit = unit_chain(c);
    let mut unit_ok = true;
    for b in bottom_row_basis(c) {
        let mut e = E1Element::new();
        e.add_class(&b);
        if star(c, &unit, &e)? != e {
            unit_ok = false;
        }
    }
    let mut cases = 0;
    let mut point_ok = true;
    for i in c.strata_of_size(1) {
        if c.dim(i, 0) != 1 || c.dim(i, 2) != 1 {
            continue;
        }
        cases += 1;
        let a = LabeledChain::single(GradedClass {
            stratum: i.clone(),
            degree: 2,
            twist: 0,
            coords: vec![rat(1)],
        });
        let mut b = E1Element::new();
        b.add_class(&GradedClass {
            stratum: i.clone(),
            degree: 0,
            twist: 0,
            coords: vec![rat(1)],
        });
        let mut expected = E1Element::new();
        expected.add((0, 2, 0, i.clone()), vec![rat(1)]);
        if star(c, &a, &b)? != expected {
            point_ok = false;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let basis = bottom_row_basis(c);
    let mut failures = 0;
    for _ in 0..trials {
        if basis.is_empty() {
            break;
        }
        let a = random_component_class(c, &mut rng);
        let a2 = random_component_class(c, &mut rng);
        let mut b = E1Element::new();
        let pick = &basis[rng.gen_range(0..basis.len())];
        b.add_class(pick);
        let lhs = star(c, &left_product(c, &a, &a2)?, &b)?;
        let rhs = star(c, &a, &star(c, &a2, &b)?)?;
        if lhs != rhs {
            failures += 1;
        }
    }
    Ok(CapReport {
        unit_acts_as_identity: unit_ok,
        point_cap_ok: point_ok,
        point_cap_cases: cases,
        associativity_trials: trials,
        associativity_failures: failures,
    })
}

//! Configurations of rational curves and a surface toy with a spherical nerve.

use exactq::{rat, Mat};
use strata::{GradedSpace, IndexSet, StrataComplex};

use crate::ModelError;

fn ones_col(n: usize) -> Mat {
    let mut m = Mat::zeros(n, 1);
    (0..n).for_each(|a| m.set(a, 0, rat(1)));
    m
}

fn ones_row(n: usize) -> Mat {
    ones_col(n).transpose()
}

/// Product table of `H^0` of `m` points: `e_a e_b = δ_ab e_a`.
fn points_cup(m: usize) -> Mat {
    let mut c = Mat::zeros(m, m * m);
    for a in 0..m {
        c.set(a, a * m + a, rat(1));
    }
    c
}

fn add_p1(c: &mut StrataComplex, v: usize) {
    let i = IndexSet::new([v]);
    c.add_stratum(
        i.clone(),
        GradedSpace::with_dims(&[(0, 1), (2, 1)])
            .labelled(0, &["1"])
            .labelled(2, &["pt"]),
    );
    let one = Mat::from_i64(&[&[1]]);
    c.set_cup(i.clone(), 0, 0, one.clone());
    c.set_cup(i.clone(), 0, 2, one.clone());
    c.set_cup(i, 2, 0, one);
}

/// Two components `u < v` meeting transversally in `m` points.
fn add_node(c: &mut StrataComplex, u: usize, v: usize, m: usize) {
    let i = IndexSet::new([u, v]);
    let labels: Vec<String> = (0..m).map(|a| format!("p{a}")).collect();
    let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    c.add_stratum(
        i.clone(),
        GradedSpace::with_dims(&[(0, m)]).labelled(0, &refs),
    );
    for (k, rest_from) in [(v, u), (u, v)] {
        c.set_rest(IndexSet::new([rest_from]), k, 0, ones_col(m));
    }
    for k in [u, v] {
        c.set_gysin(i.clone(), k, 0, ones_row(m));
    }
    c.set_cup(i, 0, 0, points_cup(m));
}

/// `n ≥ 2` smooth rational curves in a cycle; for `n = 2` the two curves meet twice.
pub fn cycle_of_p1(n: usize) -> Result<StrataComplex, ModelError> {
    if n < 2 {
        return Err(ModelError::Construction(format!(
            "a cycle needs at least two curves, got {n}"
        )));
    }
    let mut c = StrataComplex::new(n);
    for v in 0..n {
        add_p1(&mut c, v);
    }
    if n == 2 {
        add_node(&mut c, 0, 1, 2);
    } else {
        for v in 0..n {
            let w = (v + 1) % n;
            add_node(&mut c, v.min(w), v.max(w), 1);
        }
    }
    Ok(c)
}

/// A chain of `n ≥ 1` rational curves, consecutive ones meeting once.
pub fn chain_of_p1(n: usize) -> Result<StrataComplex, ModelError> {
    if n == 0 {
        return Err(ModelError::Construction(
            "a chain needs at least one curve".into(),
        ));
    }
    let mut c = StrataComplex::new(n);
    for v in 0..n {
        add_p1(&mut c, v);
    }
    for v in 1..n {
        add_node(&mut c, v - 1, v, 1);
    }
    Ok(c)
}

/// Four surfaces whose nerve is the boundary of a tetrahedron, truncated to `H^0` on every
/// stratum. Every pair meets in a curve and every triple in a point.
pub fn sphere_nerve_toy() -> StrataComplex {
    let n = 4;
    let mut c = StrataComplex::new(n);
    let one = Mat::from_i64(&[&[1]]);
    for mask in 1u32..(1 << n) {
        let i = IndexSet::new((0..n).filter(|b| mask & (1 << b) != 0));
        if i.len() == n {
            continue;
        }
        c.add_stratum(
            i.clone(),
            GradedSpace::with_dims(&[(0, 1)]).labelled(0, &["1"]),
        );
        c.set_cup(i.clone(), 0, 0, one.clone());
        for k in 0..n {
            if !i.contains(k) && i.len() + 1 < n {
                c.set_rest(i.clone(), k, 0, one.clone());
            }
        }
    }
    c
}

/// [`cycle_of_p1`] with `n = 3` and the product `H^0 × H^2 -> H^2` on the first curve doubled
/// in both orders, which breaks the projection formula for the Gysin maps into it.
pub fn faulty_cycle_of_p1() -> StrataComplex {
    let mut c = cycle_of_p1(3).expect("n = 3 is valid");
    let i = IndexSet::new([0]);
    let two = Mat::from_i64(&[&[2]]);
    c.set_cup(i.clone(), 0, 2, two.clone());
    c.set_cup(i, 2, 0, two);
    c
}

//! The action of the left column on the E1 page, and projection of E2 cycles to the left column.

use std::collections::BTreeMap;

use exactq::{solve_affine, vec_add, vec_is_zero, vec_sub, Mat, Rat};
use steenbrink::E1Page;
use strata::{GradedClass, IndexSet, StrataComplex};

use crate::chain::LabeledChain;
use crate::theta::theta;
use crate::BlochError;

/// `(r, n, k, stratum)`.
pub type EntryKey = (i32, i32, usize, IndexSet);

/// An element of the E1 page, a coefficient vector per summand.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct E1Element {
    pub entries: BTreeMap<EntryKey, Vec<Rat>>,
}

/// Slot of a class with the given stratum size, degree and twist, if it lies on the page.
pub fn slot_of(size: usize, degree: u32, twist: i64) -> Option<(i32, i32, usize)> {
    let k = size as i64 - 1 + twist;
    let r = -twist - k;
    if twist > 0 || k < 0 {
        return None;
    }
    let n = degree as i64 + r + 2 * k;
    Some((r as i32, n as i32, k as usize))
}

impl E1Element {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, key: EntryKey, v: Vec<Rat>) {
        if vec_is_zero(&v) {
            return;
        }
        let merged = match self.entries.remove(&key) {
            Some(old) => vec_add(&old, &v),
            None => v,
        };
        if !vec_is_zero(&merged) {
            self.entries.insert(key, merged);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Places a class at the slot its twist dictates; classes off the page are dropped.
    pub fn add_class(&mut self, c: &GradedClass) -> bool {
        match slot_of(c.stratum.len(), c.degree, c.twist) {
            Some((r, n, k)) => {
                self.add((r, n, k, c.stratum.clone()), c.coords.clone());
                true
            }
            None => false,
        }
    }

    /// Degree of the class stored at `key`.
    pub fn degree_of(key: &EntryKey) -> u32 {
        let (r, n, k, _) = key;
        (n - r - 2 * *k as i32) as u32
    }

    pub fn classes(&self) -> impl Iterator<Item = GradedClass> + '_ {
        self.entries.iter().map(|(key, v)| GradedClass {
            stratum: key.3.clone(),
            degree: E1Element::degree_of(key),
            twist: -(key.0 as i64) - key.2 as i64,
            coords: v.clone(),
        })
    }

    pub fn from_chain(ch: &LabeledChain) -> E1Element {
        let mut e = E1Element::new();
        for c in ch.classes() {
            e.add_class(&c);
        }
        e
    }

    /// Coordinates in the basis of slot `(r, n)` of `page`.
    pub fn to_vector(&self, page: &E1Page, r: i32, n: i32) -> Vec<Rat> {
        let slot = page.slot(r, n);
        let mut v = vec![exactq::zero(); slot.dim];
        for ((er, en, k, i), coords) in &self.entries {
            if (*er, *en) != (r, n) {
                continue;
            }
            let b = slot
                .block(*k, i)
                .expect("entry lies in an existing summand");
            for (a, x) in coords.iter().enumerate() {
                v[b.offset + a] = x.clone();
            }
        }
        v
    }

    pub fn from_vector(page: &E1Page, r: i32, n: i32, v: &[Rat]) -> E1Element {
        let slot = page.slot(r, n);
        let mut e = E1Element::new();
        for b in &slot.blocks {
            e.add(
                (r, n, b.k, b.stratum.clone()),
                v[b.offset..b.offset + b.dim].to_vec(),
            );
        }
        e
    }

    /// `N` applied summand-wise: `(r, k) -> (r-2, k+1)`, zero when the target summand is off the page.
    pub fn nu(&self) -> E1Element {
        let mut e = E1Element::new();
        for ((r, n, k, i), v) in &self.entries {
            let (r2, k2) = (r - 2, k + 1);
            if (k2 as i32) >= (-r2).max(0) {
                e.add((r2, *n, k2, i.clone()), v.clone());
            }
        }
        e
    }
}

/// `a ∗ b`: θ on every pair of components, placed at the slot fixed by adding weights.
pub fn star(c: &StrataComplex, a: &LabeledChain, b: &E1Element) -> Result<E1Element, BlochError> {
    if let Some(((i, d, t), _)) = a.terms.iter().find(|((_, _, t), _)| *t != 0) {
        return Err(BlochError::NotLeftColumn {
            stratum: i.clone(),
            degree: *d,
            twist: *t,
        });
    }
    let mut out = E1Element::new();
    for x in a.classes() {
        for y in b.classes() {
            if let Some(z) = theta(c, &x, &y)? {
                out.add_class(&z);
            }
        }
    }
    Ok(out)
}

/// Checks `a ∗ N b = N (a ∗ b)`.
pub fn star_commutes_with_nu(
    c: &StrataComplex,
    a: &LabeledChain,
    b: &E1Element,
) -> Result<bool, BlochError> {
    Ok(star(c, a, &b.nu())? == star(c, a, b)?.nu())
}

/// Given an E2 cycle `x` at `(r, n)`, solves `N x = d1 y` and returns `x - d1 M y`.
///
/// Falls back to `x - d1 w` for any `w` with `N d1 w = N x`; `NotCocycle` when neither exists.
pub fn project_to_left_column(
    page: &E1Page,
    r: i32,
    n: i32,
    x: &[Rat],
) -> Result<Vec<Rat>, BlochError> {
    let nx = page.nu_at(r, n).mul_vec(x);
    let d = page.d1_at(r - 1, n - 1);
    let sol = solve_affine(&d, &nx);
    let base = sol
        .particular
        .clone()
        .ok_or(BlochError::NotCocycle { r, n })?;
    let m = page.m_at(r + 1, n - 1);
    let d_up = page.d1_at(r + 1, n - 1);
    let nu = page.nu_at(r, n);
    let attempt = |y: &[Rat]| -> Vec<Rat> { vec_sub(x, &d_up.mul_vec(&m.mul_vec(y))) };
    let z = attempt(&base);
    if vec_is_zero(&nu.mul_vec(&z)) {
        return Ok(z);
    }
    // Adjust y inside the solution family: need N d1 M (y0 + K t) = N x.
    let ker = sol.nullspace_basis;
    let ndm = &(&nu * &d_up) * &m;
    if !ker.is_empty() {
        let kmat = Mat::from_rows(ker.clone(), d.cols())
            .expect("kernel lengths agree")
            .transpose();
        let lhs = &ndm * &kmat;
        let rhs = vec_sub(&nx, &ndm.mul_vec(&base));
        if let Some(t) = solve_affine(&lhs, &rhs).particular {
            let z = attempt(&vec_add(&base, &kmat.mul_vec(&t)));
            debug_assert!(vec_is_zero(&nu.mul_vec(&z)));
            return Ok(z);
        }
    }
    // Any w with N d1 w = N x will do; none exists when the page lacks the Lefschetz symmetry.
    let w = solve_affine(&(&nu * &d_up), &nx)
        .particular
        .ok_or(BlochError::NotCocycle { r, n })?;
    Ok(vec_sub(x, &d_up.mul_vec(&w)))
}

/// `a` and `b` are d1-cycles at `(r, n)` differing by a boundary.
pub fn same_class(page: &E1Page, r: i32, n: i32, a: &[Rat], b: &[Rat]) -> bool {
    let diff = vec_sub(a, b);
    let d = page.d1_at(r + 1, n - 1);
    solve_affine(&d, &diff).is_feasible() && vec_is_zero(&page.d1_at(r, n).mul_vec(a))
}

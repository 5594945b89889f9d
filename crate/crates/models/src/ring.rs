//! Strata complexes generated by an intersection functional on the component divisors.
//!
//! A top-degree functional `∫` on monomials in the divisor variables `D_v` (and optional
//! extra degree-one generators) defines a commutative graded ring `W = Q[D] / Ann(∫)`.
//! Setting `H^{2j}(T_I) = (D_I · W)` in ring degree `|I| + j`, restriction multiplies by
//! `D_k`, Gysin is the inclusion `D_I W ⊂ D_{I-k} W`, and cup is the ring product. When
//! `Σ_v D_v` lies in `Ann(∫)`, every square, the projection formula, the excess formula
//! and the principal-fibre relation hold by construction.

use std::collections::{BTreeMap, BTreeSet};

use exactq::{rref, solve_sparse, zero, Mat, Rat, SparseRow};
use num_traits::{One, Zero};
use strata::{GradedSpace, IndexSet, StrataComplex};

use crate::ModelError;

/// Sorted multiset of variable indices.
pub type Monomial = Vec<usize>;

/// Finite linear combination of monomials.
pub type Poly = BTreeMap<Monomial, Rat>;

pub fn mono(vars: &[usize]) -> Monomial {
    let mut m = vars.to_vec();
    m.sort_unstable();
    m
}

pub fn poly_of(terms: &[(&[usize], i64)]) -> Poly {
    let mut p = Poly::new();
    for (m, c) in terms {
        poly_add_term(&mut p, mono(m), &exactq::rat(*c));
    }
    p
}

pub fn poly_add_term(p: &mut Poly, m: Monomial, c: &Rat) {
    if c.is_zero() {
        return;
    }
    let e = p.entry(m.clone()).or_insert_with(zero);
    *e += c;
    if e.is_zero() {
        p.remove(&m);
    }
}

/// The monomial `D_I` as a polynomial.
pub fn face_monomial(i: &IndexSet) -> Poly {
    let mut p = Poly::new();
    p.insert(i.indices().to_vec(), Rat::one());
    p
}

pub fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let mut m = ma.clone();
            m.extend_from_slice(mb);
            m.sort_unstable();
            poly_add_term(&mut out, m, &(ca * cb));
        }
    }
    out
}

pub fn poly_scale(a: &Poly, s: &Rat) -> Poly {
    let mut out = Poly::new();
    for (m, c) in a {
        poly_add_term(&mut out, m.clone(), &(c * s));
    }
    out
}

pub fn poly_add(a: &Poly, b: &Poly) -> Poly {
    let mut out = a.clone();
    for (m, c) in b {
        poly_add_term(&mut out, m.clone(), c);
    }
    out
}

fn poly_degree(p: &Poly) -> Option<usize> {
    p.keys().next().map(Vec::len)
}

/// Input to [`IntersectionRing::solve`].
#[derive(Debug, Clone)]
pub struct RingSpec {
    /// Number of divisor variables; these are the components.
    pub n_div: usize,
    /// Names of extra degree-one generators, indexed after the divisors. They square to
    /// zero and multiply to zero with each other.
    pub extra_names: Vec<String>,
    /// Maximal cells of the nerve; every subset is a stratum.
    pub cells: Vec<IndexSet>,
    /// Ring degree of the functional (the dimension of the total space).
    pub top: usize,
    /// Linear conditions `∫ poly = value` on top-degree polynomials.
    pub conditions: Vec<(Poly, Rat)>,
}

/// The solved functional together with its admissible monomials.
#[derive(Debug, Clone)]
pub struct IntersectionRing {
    pub n_div: usize,
    pub extra_names: Vec<String>,
    pub top: usize,
    pub faces: BTreeSet<IndexSet>,
    pub integrals: BTreeMap<Monomial, Rat>,
    monomials: Vec<Vec<Monomial>>,
}

/// Basis of one graded piece `D_I W` in a fixed ring degree, stored as cofactors of `D_I`.
#[derive(Debug, Clone)]
pub struct PieceBasis {
    pub cofactors: Vec<Poly>,
    pub labels: Vec<String>,
    cols: Vec<usize>,
    inv: Mat,
}

fn extra_of(m: &[usize], n_div: usize) -> Option<usize> {
    m.iter().copied().find(|&v| v >= n_div)
}

/// The block a condition lives in; conditions may not mix blocks or degrees.
fn block_of_condition(p: &Poly, n_div: usize) -> Result<Option<usize>, ModelError> {
    let mut blocks = p.keys().map(|m| extra_of(m, n_div));
    let first = blocks.next().unwrap_or(None);
    if blocks.any(|b| b != first) {
        return Err(ModelError::Construction(
            "condition mixes extra generators".into(),
        ));
    }
    Ok(first)
}

fn all_subsets(cell: &IndexSet) -> Vec<IndexSet> {
    let v = cell.indices();
    let mut out = Vec::new();
    for mask in 1u32..(1u32 << v.len()) {
        let s: Vec<usize> = (0..v.len())
            .filter(|b| mask & (1 << b) != 0)
            .map(|b| v[b])
            .collect();
        out.push(IndexSet::new(s));
    }
    out
}

impl IntersectionRing {
    fn n_vars(&self) -> usize {
        self.n_div + self.extra_names.len()
    }

    /// Divisor support is a face (or empty) and at most one extra factor occurs.
    pub fn admissible(&self, m: &[usize]) -> bool {
        let extras = m.iter().filter(|&&v| v >= self.n_div).count();
        if extras > 1 {
            return false;
        }
        let support: BTreeSet<usize> = m.iter().copied().filter(|&v| v < self.n_div).collect();
        support.is_empty() || self.faces.contains(&IndexSet::new(support))
    }

    fn enumerate(&mut self) {
        let n = self.n_vars();
        let mut by_deg: Vec<Vec<Monomial>> = vec![vec![Vec::new()]];
        for d in 1..=self.top {
            let mut next = Vec::new();
            for m in &by_deg[d - 1] {
                let start = m.last().copied().unwrap_or(0);
                for v in start..n {
                    let mut mm = m.clone();
                    mm.push(v);
                    if self.admissible(&mm) {
                        next.push(mm);
                    }
                }
            }
            by_deg.push(next);
        }
        self.monomials = by_deg;
    }

    /// Admissible monomials of ring degree `d`.
    pub fn monomials(&self, d: usize) -> &[Monomial] {
        self.monomials.get(d).map_or(&[], Vec::as_slice)
    }

    /// Solves for the functional: `∫ (Σ_v D_v) m = 0` for every admissible `m`, plus the
    /// given conditions. Unknowns split by their extra factor and each block is solved on
    /// its own; free values are zero.
    pub fn solve(spec: &RingSpec) -> Result<IntersectionRing, ModelError> {
        let mut faces = BTreeSet::new();
        for c in &spec.cells {
            faces.extend(all_subsets(c));
        }
        let mut ring = IntersectionRing {
            n_div: spec.n_div,
            extra_names: spec.extra_names.clone(),
            top: spec.top,
            faces,
            integrals: BTreeMap::new(),
            monomials: Vec::new(),
        };
        ring.enumerate();
        let block_of = |m: &[usize]| extra_of(m, spec.n_div);
        let mut blocks: BTreeMap<Option<usize>, Vec<Monomial>> = BTreeMap::new();
        for m in ring.monomials(spec.top) {
            blocks.entry(block_of(m)).or_default().push(m.clone());
        }
        for (p, _) in &spec.conditions {
            if p.keys().any(|m| m.len() != spec.top) {
                return Err(ModelError::Construction(
                    "condition is not of top degree".into(),
                ));
            }
        }
        for (block, unknowns) in blocks {
            let index: BTreeMap<&Monomial, usize> =
                unknowns.iter().enumerate().map(|(i, m)| (m, i)).collect();
            let mut rows = Vec::new();
            for (p, value) in &spec.conditions {
                if block_of_condition(p, spec.n_div)? != block {
                    continue;
                }
                let mut row = SparseRow::new(value.clone());
                for (m, c) in p {
                    if let Some(&i) = index.get(m) {
                        row.add(i, c);
                    }
                }
                rows.push(row);
            }
            for m in ring.monomials(spec.top - 1) {
                if block_of(m) != block {
                    continue;
                }
                let mut row = SparseRow::new(zero());
                for v in 0..spec.n_div {
                    let mut mm = m.clone();
                    mm.push(v);
                    mm.sort_unstable();
                    if let Some(&i) = index.get(&mm) {
                        row.add(i, &Rat::one());
                    }
                }
                if !row.coeffs.is_empty() {
                    rows.push(row);
                }
            }
            let sol = solve_sparse(&rows, unknowns.len()).ok_or_else(|| {
                ModelError::Construction("intersection functional is inconsistent".into())
            })?;
            for (m, v) in unknowns.into_iter().zip(sol.x) {
                if !v.is_zero() {
                    ring.integrals.insert(m, v);
                }
            }
        }
        Ok(ring)
    }

    pub fn integral(&self, m: &[usize]) -> Rat {
        self.integrals.get(m).cloned().unwrap_or_else(zero)
    }

    pub fn integrate(&self, p: &Poly) -> Rat {
        p.iter()
            .fold(zero(), |acc, (m, c)| acc + c * &self.integral(m))
    }

    /// Variable name, 1-based for divisors.
    pub fn var_name(&self, v: usize) -> String {
        if v < self.n_div {
            format!("D{}", v + 1)
        } else {
            self.extra_names[v - self.n_div].clone()
        }
    }

    pub fn mono_label(&self, m: &[usize]) -> String {
        if m.is_empty() {
            return "1".into();
        }
        m.iter()
            .map(|&v| self.var_name(v))
            .collect::<Vec<_>>()
            .join("·")
    }

    fn d_of(i: &IndexSet) -> Poly {
        let mut p = Poly::new();
        p.insert(i.indices().to_vec(), Rat::one());
        p
    }

    /// Pairing of `D_I q` against every admissible monomial of complementary degree.
    fn pairing_vector(&self, i: &IndexSet, q: &Poly) -> Vec<Rat> {
        let x = poly_mul(&Self::d_of(i), q);
        let Some(deg) = poly_degree(&x) else {
            let comp = self
                .top
                .saturating_sub(i.len() + poly_degree(q).unwrap_or(0));
            return vec![zero(); self.monomials(comp).len()];
        };
        if deg > self.top {
            return Vec::new();
        }
        self.monomials(self.top - deg)
            .iter()
            .map(|mm| {
                x.iter().fold(zero(), |acc, (m, c)| {
                    let mut full = m.clone();
                    full.extend_from_slice(mm);
                    full.sort_unstable();
                    acc + c * &self.integral(&full)
                })
            })
            .collect()
    }

    /// Basis of `D_I W` at cofactor degree `j`: preferred classes first, then monomials,
    /// keeping each generator that is numerically independent of the ones before it.
    pub fn piece_basis(
        &self,
        i: &IndexSet,
        j: usize,
        preferred: &[(String, Poly)],
        normalize_top: bool,
    ) -> PieceBasis {
        let comp_deg = self.top as i64 - (i.len() + j) as i64;
        if comp_deg < 0 {
            return PieceBasis {
                cofactors: Vec::new(),
                labels: Vec::new(),
                cols: Vec::new(),
                inv: Mat::zeros(0, 0),
            };
        }
        let width = self.monomials(comp_deg as usize).len();
        let mut gens: Vec<(String, Poly)> = preferred.to_vec();
        for m in self.monomials(j) {
            let mut full = i.indices().to_vec();
            full.extend_from_slice(m);
            full.sort_unstable();
            if self.admissible(&full) {
                let mut p = Poly::new();
                p.insert(m.clone(), Rat::one());
                gens.push((self.mono_label(m), p));
            }
        }
        let mut kept: Vec<(String, Poly)> = Vec::new();
        let mut rows: Vec<Vec<Rat>> = Vec::new();
        let mut span = exactq::Echelon::new();
        for (label, q) in gens {
            let v = self.pairing_vector(i, &q);
            if span.insert(&v) {
                rows.push(v);
                kept.push((label, q));
            }
        }
        if normalize_top && comp_deg == 0 && kept.len() == 1 {
            let s = rows[0][0].clone();
            let inv = Rat::one() / &s;
            kept[0].1 = poly_scale(&kept[0].1, &inv);
            kept[0].0 = "pt".into();
            rows[0] = vec![Rat::one()];
        }
        let (cofactors, labels): (Vec<Poly>, Vec<String>) =
            kept.into_iter().map(|(l, q)| (q, l)).unzip();
        let labels = labels
            .into_iter()
            .map(|l| if l.is_empty() { "1".into() } else { l })
            .collect();
        if rows.is_empty() {
            return PieceBasis {
                cofactors,
                labels,
                cols: Vec::new(),
                inv: Mat::zeros(0, 0),
            };
        }
        let b = Mat::from_rows(rows, width).expect("pairing vectors share a width");
        let (_, cols) = rref(&b);
        let n = cols.len();
        let mut sq = Mat::zeros(n, n);
        for r in 0..n {
            for (c, &col) in cols.iter().enumerate() {
                sq.set(r, c, b.get(r, col).clone());
            }
        }
        let inv = exactq::inverse(&sq).expect("pivot block is invertible");
        PieceBasis {
            cofactors,
            labels,
            cols,
            inv,
        }
    }

    /// Coordinates of `D_I q` in `basis`.
    pub fn coords(&self, i: &IndexSet, q: &Poly, basis: &PieceBasis) -> Vec<Rat> {
        if basis.cofactors.is_empty() {
            return Vec::new();
        }
        let v = self.pairing_vector(i, q);
        let picked: Vec<Rat> = basis.cols.iter().map(|&c| v[c].clone()).collect();
        // c^T B_P = v_P, so c = (B_P^{-1})^T v_P.
        basis.inv.transpose().mul_vec(&picked)
    }
}

/// Per-stratum cofactor bases by cofactor degree.
pub type RingBases = BTreeMap<IndexSet, BTreeMap<usize, PieceBasis>>;

/// Preferred basis classes: `(stratum, cofactor degree) -> [(label, cofactor)]`.
pub type Preferred = BTreeMap<(IndexSet, usize), Vec<(String, Poly)>>;

/// Builds the strata complex of `ring` with cup products, returning the bases used.
pub fn ring_complex(ring: &IntersectionRing, preferred: &Preferred) -> (StrataComplex, RingBases) {
    let mut c = StrataComplex::new(ring.n_div);
    let mut bases: RingBases = BTreeMap::new();
    for i in &ring.faces {
        let mut per = BTreeMap::new();
        let mut space = GradedSpace::new();
        for j in 0..=(ring.top - i.len()) {
            let pref = preferred.get(&(i.clone(), j)).cloned().unwrap_or_default();
            let b = ring.piece_basis(i, j, &pref, true);
            if !b.cofactors.is_empty() {
                let d = 2 * j as u32;
                space.dims.insert(d, b.cofactors.len());
                space.labels.insert(d, b.labels.clone());
                per.insert(j, b);
            }
        }
        c.add_stratum(i.clone(), space);
        bases.insert(i.clone(), per);
    }
    for (i, per) in &bases {
        for (&j, b) in per {
            let d = 2 * j as u32;
            for k in 0..ring.n_div {
                if i.contains(k) {
                    let t = i.without(k);
                    if let Some(tb) = bases.get(&t).and_then(|p| p.get(&(j + 1))) {
                        let dk = poly_of(&[(&[k], 1)]);
                        let cols: Vec<Vec<Rat>> = b
                            .cofactors
                            .iter()
                            .map(|q| ring.coords(&t, &poly_mul(&dk, q), tb))
                            .collect();
                        c.set_gysin(i.clone(), k, d, columns_to_mat(&cols, tb.cofactors.len()));
                    }
                } else {
                    let t = i.with(k);
                    if let Some(tb) = bases.get(&t).and_then(|p| p.get(&j)) {
                        let cols: Vec<Vec<Rat>> =
                            b.cofactors.iter().map(|q| ring.coords(&t, q, tb)).collect();
                        c.set_rest(i.clone(), k, d, columns_to_mat(&cols, tb.cofactors.len()));
                    }
                }
            }
        }
        for (&j1, b1) in per {
            for (&j2, b2) in per {
                let Some(tb) = per.get(&(j1 + j2)) else {
                    continue;
                };
                let mut cols = Vec::new();
                for q1 in &b1.cofactors {
                    for q2 in &b2.cofactors {
                        cols.push(ring.coords(i, &poly_mul(q1, q2), tb));
                    }
                }
                c.set_cup(
                    i.clone(),
                    2 * j1 as u32,
                    2 * j2 as u32,
                    columns_to_mat(&cols, tb.cofactors.len()),
                );
            }
        }
    }
    (c, bases)
}

pub fn columns_to_mat(cols: &[Vec<Rat>], rows: usize) -> Mat {
    let mut m = Mat::zeros(rows, cols.len());
    for (j, col) in cols.iter().enumerate() {
        for (r, v) in col.iter().enumerate() {
            m.set(r, j, v.clone());
        }
    }
    m
}

//! Row reduction and everything derived from it.

use num_traits::{One, Zero};

use crate::mat::{vec_is_zero, Mat};
use crate::rat::Rat;

/// Reduced row echelon form and the strictly increasing pivot columns.
pub fn rref(m: &Mat) -> (Mat, Vec<usize>) {
    let mut a = m.row_vecs();
    let cols = m.cols();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = Rat::one() / &a[r][c];
        if !inv.is_one() {
            for x in a[r].iter_mut() {
                *x *= &inv;
            }
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (
        Mat::from_rows(a, cols).expect("rows keep their width"),
        pivots,
    )
}

pub fn rank(m: &Mat) -> usize {
    rref(m).1.len()
}

/// Rank of a list of equal-length vectors (rows).
pub fn rank_of(vectors: &[Vec<Rat>], len: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    rank(&Mat::from_rows(vectors.to_vec(), len).expect("generator lengths must agree"))
}

/// A growing set of independent vectors kept in echelon form.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    rows: Vec<(usize, Vec<Rat>)>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[Rat]) -> Vec<Rat> {
        let mut w = v.to_vec();
        for (p, row) in &self.rows {
            if w[*p].is_zero() {
                continue;
            }
            let f = w[*p].clone();
            for (x, r) in w.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
        }
        w
    }

    /// True when `v` lies in the span.
    pub fn contains(&self, v: &[Rat]) -> bool {
        vec_is_zero(&self.reduce(v))
    }

    /// Adds `v` if it is independent of the span; returns whether it was added.
    pub fn insert(&mut self, v: &[Rat]) -> bool {
        let mut w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = Rat::one() / &w[p];
        for x in w.iter_mut() {
            *x *= &inv;
        }
        self.rows.push((p, w));
        true
    }
}

/// Inverse of a square matrix, `None` when singular.
pub fn inverse(m: &Mat) -> Option<Mat> {
    let n = m.rows();
    if m.cols() != n {
        return None;
    }
    let aug = m.hstack(&Mat::identity(n)).expect("square");
    let (r, pivots) = rref(&aug);
    if pivots.len() < n || pivots.iter().any(|&p| p >= n) {
        return None;
    }
    Some(r.block(0, n, n, n))
}

/// Basis of the right nullspace, one vector per free column, in reduced echelon form.
pub fn kernel_basis(m: &Mat) -> Vec<Vec<Rat>> {
    let (r, pivots) = rref(m);
    let n = m.cols();
    let mut basis = Vec::new();
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    for f in (0..n).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Rat::zero(); n];
        v[f] = Rat::one();
        for (row, &p) in pivots.iter().enumerate() {
            v[p] = -r.get(row, f).clone();
        }
        basis.push(v);
    }
    echelonize(&basis, n)
}

/// Reduced echelon basis of the span of `vectors`.
pub fn echelonize(vectors: &[Vec<Rat>], len: usize) -> Vec<Vec<Rat>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let (r, pivots) = rref(&Mat::from_rows(vectors.to_vec(), len).expect("lengths agree"));
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

/// Basis of the column space, as echelonized vectors.
pub fn image_basis(m: &Mat) -> Vec<Vec<Rat>> {
    echelonize(&m.transpose().row_vecs(), m.rows())
}

/// Solutions of `A x = b`: a particular solution (or infeasible) plus a nullspace basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSolutionSet {
    pub particular: Option<Vec<Rat>>,
    pub nullspace_basis: Vec<Vec<Rat>>,
}

impl AffineSolutionSet {
    pub fn is_feasible(&self) -> bool {
        self.particular.is_some()
    }

    /// Dimension of the affine family; `None` when infeasible.
    pub fn dim(&self) -> Option<usize> {
        self.particular.as_ref().map(|_| self.nullspace_basis.len())
    }

    /// Checks `A x = b` for the particular vector and `A v = 0` on the nullspace.
    pub fn satisfies(&self, a: &Mat, b: &[Rat]) -> bool {
        let Some(p) = &self.particular else {
            return false;
        };
        a.mul_vec(p).as_slice() == b
            && self
                .nullspace_basis
                .iter()
                .all(|v| vec_is_zero(&a.mul_vec(v)))
    }
}

/// Free variables are the non-pivot columns in column order, all set to zero.
pub fn solve_affine(a: &Mat, b: &[Rat]) -> AffineSolutionSet {
    assert_eq!(
        a.rows(),
        b.len(),
        "solve_affine: rows of A must equal length of b"
    );
    let n = a.cols();
    let aug = a.hstack(&Mat::column(b)).expect("row counts checked");
    let (r, pivots) = rref(&aug);
    let nullspace_basis = kernel_basis(a);
    if pivots.last() == Some(&n) {
        return AffineSolutionSet {
            particular: None,
            nullspace_basis,
        };
    }
    let mut x = vec![Rat::zero(); n];
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = r.get(row, n).clone();
    }
    AffineSolutionSet {
        particular: Some(x),
        nullspace_basis,
    }
}

/// `ambient - rank(generators)`.
pub fn quotient_dim(ambient: usize, subspace_gens: &[Vec<Rat>]) -> usize {
    for g in subspace_gens {
        assert_eq!(
            g.len(),
            ambient,
            "quotient_dim: generator length differs from ambient dimension"
        );
    }
    ambient - rank_of(subspace_gens, ambient)
}

/// A quotient `sup / sub` of subspaces of `Q^len` with explicit representatives.
///
/// Representatives are the echelon basis vectors of `sup` whose pivots are not
/// already spanned by `sub`, chosen greedily in echelon order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient {
    pub len: usize,
    pub sub_basis: Vec<Vec<Rat>>,
    pub reps: Vec<Vec<Rat>>,
}

impl Quotient {
    /// `sub` must lie inside `sup`; this is not rechecked here.
    pub fn new(sup: &[Vec<Rat>], sub: &[Vec<Rat>], len: usize) -> Quotient {
        let sub_basis = echelonize(sub, len);
        let sup_basis = echelonize(sup, len);
        let mut reps = Vec::new();
        let mut acc = sub_basis.clone();
        for v in sup_basis {
            let mut trial = acc.clone();
            trial.push(v.clone());
            if rank_of(&trial, len) > acc.len() {
                acc = echelonize(&trial, len);
                reps.push(v);
            }
        }
        Quotient {
            len,
            sub_basis,
            reps,
        }
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Coordinates of `v` with respect to the representatives, or `None` if `v` is
    /// outside `sub + span(reps)`.
    pub fn coords(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        let gens: Vec<Vec<Rat>> = self.sub_basis.iter().chain(&self.reps).cloned().collect();
        if gens.is_empty() {
            return vec_is_zero(v).then(Vec::new);
        }
        let a = Mat::from_rows(gens, self.len)
            .expect("lengths agree")
            .transpose();
        let sol = solve_affine(&a, v);
        let x = sol.particular?;
        Some(x[self.sub_basis.len()..].to_vec())
    }

    /// True when `v` lies in the subspace being divided out.
    pub fn is_trivial(&self, v: &[Rat]) -> bool {
        self.coords(v).is_some_and(|c| vec_is_zero(&c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{frac, rat};
    #[test]
    fn echelon_tracks_span() {
        let mut e = Echelon::new();
        let v = |a: &[i64]| a.iter().map(|&x| rat(x)).collect::<Vec<_>>();
        assert!(e.insert(&v(&[0, 2, 4])));
        assert!(e.insert(&v(&[1, 1, 0])));
        assert!(!e.insert(&v(&[2, 4, 4])));
        assert!(e.contains(&v(&[3, 5, 4])));
        assert!(!e.contains(&v(&[0, 0, 1])));
        assert!(!e.insert(&v(&[0, 0, 0])));
        assert_eq!(e.rank(), 2);
        assert!(e.insert(&v(&[0, 0, 1])));
        assert_eq!(e.rank(), 3);
    }

    #[test]
    fn inverse_of_small_matrices() {
        let m = Mat::from_i64(&[&[2, 1], &[1, 1]]);
        let inv = inverse(&m).unwrap();
        assert_eq!(inv, Mat::from_i64(&[&[1, -1], &[-1, 2]]));
        assert_eq!(&m * &inv, Mat::identity(2));
        let h = Mat::from_i64(&[&[2, 0], &[0, 4]]);
        assert_eq!(*inverse(&h).unwrap().get(1, 1), frac(1, 4));
        assert!(inverse(&Mat::from_i64(&[&[1, 2], &[2, 4]])).is_none());
        assert!(inverse(&Mat::zeros(2, 3)).is_none());
        assert_eq!(inverse(&Mat::zeros(0, 0)), Some(Mat::zeros(0, 0)));
    }

    #[test]
    fn rref_small_cases() {
        let (r, p) = rref(&Mat::identity(2));
        assert_eq!((r, p), (Mat::identity(2), vec![0, 1]));
        let (r, p) = rref(&Mat::from_i64(&[&[1, 1], &[1, 1]]));
        assert_eq!(r, Mat::from_i64(&[&[1, 1], &[0, 0]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn kernel_small_cases() {
        assert_eq!(kernel_basis(&Mat::zeros(3, 3)).len(), 3);
        let k = kernel_basis(&Mat::from_i64(&[&[1, 1], &[1, 1]]));
        assert_eq!(k, vec![vec![rat(1), rat(-1)]]);
    }

    #[test]
    fn solve_examples() {
        let s = solve_affine(&Mat::identity(2), &[rat(3), rat(5)]);
        assert_eq!(s.particular, Some(vec![rat(3), rat(5)]));
        assert!(s.nullspace_basis.is_empty());

        let a = Mat::from_i64(&[&[-2, 2, -2, 2]]);
        let s = solve_affine(&a, &[rat(1)]);
        assert_eq!(
            s.particular,
            Some(vec![frac(-1, 2), rat(0), rat(0), rat(0)])
        );
        assert_eq!(s.dim(), Some(3));
        assert!(s.satisfies(&a, &[rat(1)]));

        let s = solve_affine(&Mat::from_i64(&[&[1, 1], &[1, 1]]), &[rat(0), rat(1)]);
        assert!(!s.is_feasible());
    }

    #[test]
    fn quotient_examples() {
        assert_eq!(quotient_dim(4, &[]), 4);
        let g = vec![
            vec![rat(1), rat(1), rat(0), rat(0)],
            vec![rat(0), rat(1), rat(1), rat(0)],
            vec![rat(1), rat(2), rat(1), rat(0)],
            vec![rat(0), rat(0), rat(1), rat(1)],
        ];
        assert_eq!(quotient_dim(4, &g), 1);
    }

    #[test]
    fn quotient_coordinates() {
        let e = |i: usize| {
            let mut v = vec![rat(0); 3];
            v[i] = rat(1);
            v
        };
        let sup = vec![e(0), e(1), e(2)];
        let sub = vec![vec![rat(1), rat(1), rat(0)]];
        let q = Quotient::new(&sup, &sub, 3);
        assert_eq!(q.dim(), 2);
        assert!(q.is_trivial(&[rat(2), rat(2), rat(0)]));
        let c0 = q.coords(&e(0)).unwrap();
        let c1 = q.coords(&e(1)).unwrap();
        assert_eq!(c0, c1.iter().map(|x| -x).collect::<Vec<_>>());
    }
}

//! Cross-checks against a second, independently written elimination over i128 fractions.

use exactq::{kernel_basis, quotient_dim, rank, rat, rref, solve_affine, Mat, Rat};
use num_bigint::BigInt;
use proptest::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq)]
struct Frac(i128, i128);

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

impl Frac {
    fn new(n: i128, d: i128) -> Frac {
        let g = gcd(n, d).max(1);
        let s = if d < 0 { -1 } else { 1 };
        Frac(s * n / g, s * d / g)
    }
    fn sub(self, o: Frac) -> Frac {
        Frac::new(self.0 * o.1 - o.0 * self.1, self.1 * o.1)
    }
    fn mul(self, o: Frac) -> Frac {
        Frac::new(self.0 * o.0, self.1 * o.1)
    }
    fn div(self, o: Frac) -> Frac {
        Frac::new(self.0 * o.1, self.1 * o.0)
    }
}

/// Gauss-Jordan written column-by-column with a different pivot bookkeeping.
fn oracle_rref(a: &[Vec<i64>]) -> (Vec<Vec<Frac>>, Vec<usize>) {
    let mut m: Vec<Vec<Frac>> = a
        .iter()
        .map(|r| r.iter().map(|&x| Frac::new(x as i128, 1)).collect())
        .collect();
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut piv = vec![];
    let mut top = 0;
    for c in 0..cols {
        let mut found = None;
        for i in top..rows {
            if m[i][c].0 != 0 {
                found = Some(i);
                break;
            }
        }
        if let Some(i) = found {
            let tmp = m[i].clone();
            m[i] = m[top].clone();
            m[top] = tmp;
            let p = m[top][c];
            for j in 0..cols {
                m[top][j] = m[top][j].div(p);
            }
            for i in 0..rows {
                if i != top {
                    let f = m[i][c];
                    for j in 0..cols {
                        m[i][j] = m[i][j].sub(f.mul(m[top][j]));
                    }
                }
            }
            piv.push(c);
            top += 1;
        }
    }
    (m, piv)
}

fn to_mat(a: &[Vec<i64>], cols: usize) -> Mat {
    Mat::from_rows(
        a.iter()
            .map(|r| r.iter().map(|&x| rat(x)).collect())
            .collect(),
        cols,
    )
    .unwrap()
}

fn frac_to_rat(f: Frac) -> Rat {
    Rat::new(BigInt::from(f.0), BigInt::from(f.1))
}

fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, cols), rows)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rref_matches_oracle_5x7(a in small_matrix(5, 7)) {
        let (r, p) = rref(&to_mat(&a, 7));
        let (o, op) = oracle_rref(&a);
        prop_assert_eq!(&p, &op);
        for i in 0..5 {
            for j in 0..7 {
                prop_assert_eq!(r.get(i, j), &frac_to_rat(o[i][j]));
            }
        }
    }

    #[test]
    fn rank_is_transpose_invariant(a in small_matrix(4, 6)) {
        let m = to_mat(&a, 6);
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
    }

    #[test]
    fn kernel_annihilates_and_has_right_dim(a in small_matrix(3, 6)) {
        let m = to_mat(&a, 6);
        let k = kernel_basis(&m);
        prop_assert_eq!(k.len(), 6 - rank(&m));
        for v in &k {
            prop_assert!(m.mul_vec(v).iter().all(|x| *x == rat(0)));
        }
    }

    #[test]
    fn affine_solutions_satisfy_system(a in small_matrix(3, 5), b in prop::collection::vec(-4i64..=4, 3)) {
        let m = to_mat(&a, 5);
        let rhs: Vec<Rat> = b.iter().map(|&x| rat(x)).collect();
        let s = solve_affine(&m, &rhs);
        let aug = m.hstack(&Mat::column(&rhs)).unwrap();
        prop_assert_eq!(s.is_feasible(), rank(&m) == rank(&aug));
        if s.is_feasible() {
            prop_assert!(s.satisfies(&m, &rhs));
        }
    }

    #[test]
    fn deterministic_output(a in small_matrix(4, 4)) {
        let m = to_mat(&a, 4);
        prop_assert_eq!(format!("{:?}", rref(&m)), format!("{:?}", rref(&m.clone())));
    }
}

#[test]
fn four_cycle_incidence_kernel_is_one_dimensional() {
    // vertex-by-edge incidence of the 4-cycle with oriented edges (i, i+1)
    let mut a = vec![vec![0i64; 4]; 4];
    for e in 0..4 {
        a[e][e] = -1;
        a[(e + 1) % 4][e] = 1;
    }
    let m = to_mat(&a, 4);
    assert_eq!(kernel_basis(&m).len(), 1);
    // brute force over a small rational grid: only multiples of (1,1,1,1) vanish
    let grid = [-2i64, -1, 0, 1, 2];
    let mut hits = 0;
    for x in grid {
        for y in grid {
            for z in grid {
                for w in grid {
                    let v = [rat(x), rat(y), rat(z), rat(w)];
                    if m.mul_vec(&v).iter().all(|t| *t == rat(0)) {
                        hits += 1;
                        assert!(x == y && y == z && z == w);
                    }
                }
            }
        }
    }
    assert_eq!(hits, 5);
    let (_, p) = oracle_rref(&a);
    assert_eq!(p.len(), 3);
}

#[test]
fn restriction_image_quotient_matches_rank() {
    // signed restriction from four curve components to four points, cyclic incidence
    let rows: Vec<Vec<i64>> = vec![
        vec![-1, -1, 0, 0],
        vec![1, 0, -1, 0],
        vec![0, 1, 0, -1],
        vec![0, 0, 1, 1],
    ];
    let gens: Vec<Vec<Rat>> = (0..4)
        .map(|c| rows.iter().map(|r| rat(r[c])).collect())
        .collect();
    let (_, p) = oracle_rref(&rows);
    assert_eq!(quotient_dim(4, &gens), 4 - p.len());
    assert_eq!(quotient_dim(4, &gens), 1);
}

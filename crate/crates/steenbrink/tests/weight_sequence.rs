use models::curves::{chain_of_p1, cycle_of_p1, sphere_nerve_toy};
use models::double_point::double_point_product_model;
use models::random::{random_valid_complex, RandomParams};
use steenbrink::{
    build_e1, clemens_schmid_curve_check, compute_e2, compute_e2_sequential,
    dual_complex_cohomology, monodromy_criteria, monodromy_weight_check, E1Page, SignProfile,
    SteenbrinkError,
};
use strata::{IndexSet, StrataComplex};

const P: i128 = 2_147_483_647;

fn inv_mod(a: i128) -> i128 {
    let (mut r, mut e, mut b) = (1i128, P - 2, a.rem_euclid(P));
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    r
}

/// Rank over `F_p` by plain elimination.
fn rank_mod_p(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| (x as i128).rem_euclid(P)).collect())
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(rank, p);
        let iv = inv_mod(m[rank][c]);
        for i in 0..m.len() {
            if i != rank && m[i][c] != 0 {
                let f = m[i][c] * iv % P;
                for j in 0..cols {
                    m[i][j] = (m[i][j] - f * m[rank][j]).rem_euclid(P);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Oriented incidence of the `n`-cycle graph (edges `v -> v+1`), or of the doubled edge for `n = 2`.
fn cycle_incidence(n: usize) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0i64; n]; n];
    for e in 0..n {
        let (a, b) = if n == 2 { (0, 1) } else { (e, (e + 1) % n) };
        m[a][e] += 1;
        m[b][e] -= 1;
    }
    m
}

/// Betti numbers of the simplicial complex with one simplex per `H^0` basis vector of each
/// stratum; every proper face must be a single simplex.
fn simplicial_betti(c: &StrataComplex) -> Vec<usize> {
    let top = c.max_stratum_size();
    let mut simplices: Vec<Vec<IndexSet>> = vec![Vec::new(); top + 1];
    for i in c.strata.keys() {
        for _ in 0..c.dim(i, 0) {
            simplices[i.len()].push(i.clone());
        }
    }
    let boundary = |s: usize| -> Vec<Vec<i64>> {
        // coboundary C^{s-1} -> C^s with rows indexed by s-simplices
        simplices[s + 1]
            .iter()
            .map(|t| {
                simplices[s]
                    .iter()
                    .map(|f| {
                        if !f.is_subset(t) {
                            return 0;
                        }
                        let missing = t.indices().iter().position(|x| !f.contains(*x)).unwrap();
                        if missing % 2 == 0 {
                            1
                        } else {
                            -1
                        }
                    })
                    .collect()
            })
            .collect()
    };
    for s in 1..top {
        for f in &simplices[s] {
            assert_eq!(
                simplices[s].iter().filter(|g| *g == f).count(),
                1,
                "face {f} is not a single simplex"
            );
        }
    }
    let ranks: Vec<usize> = (1..top).map(|s| rank_mod_p(&boundary(s))).collect();
    (0..top)
        .map(|i| {
            let out = ranks.get(i).copied().unwrap_or(0);
            let inc = if i == 0 { 0 } else { ranks[i - 1] };
            simplices[i + 1].len() - out - inc
        })
        .collect()
}

fn page(c: &StrataComplex) -> E1Page {
    build_e1(c, SignProfile::Sigma).expect("d1 squares to zero")
}

fn test_complexes() -> Vec<(String, StrataComplex)> {
    let mut out = Vec::new();
    for n in 2..=6 {
        out.push((format!("cycle {n}"), cycle_of_p1(n).unwrap()));
    }
    for n in 1..=4 {
        out.push((format!("chain {n}"), chain_of_p1(n).unwrap()));
    }
    out.push(("sphere toy".into(), sphere_nerve_toy()));
    for seed in 0..25 {
        out.push((
            format!("random {seed}"),
            random_valid_complex(RandomParams::default(), seed),
        ));
    }
    out
}

fn check_identities(name: &str, p: &E1Page) {
    for &(r, n) in p.keys() {
        assert!(p.d1_squared(r, n).is_zero(), "{name}: d1² at ({r},{n})");
        let nd = &p.nu_at(r - 1, n + 1) * &p.d1_at(r, n);
        let dn = &p.d1_at(r - 2, n) * &p.nu_at(r, n);
        assert_eq!(nd, dn, "{name}: N d1 ≠ d1 N at ({r},{n})");
        let nu = p.nu_at(r, n);
        let m = p.m_at(r, n);
        assert_eq!(&(&nu * &m) * &nu, nu, "{name}: NMN ≠ N at ({r},{n})");
        assert_eq!(&(&m * &nu) * &m, m, "{name}: MNM ≠ M at ({r},{n})");
    }
}

#[test]
fn page_identities_on_curves_toys_and_random_complexes() {
    for (name, c) in test_complexes() {
        check_identities(&name, &page(&c));
    }
}

#[test]
fn page_identities_on_the_double_point_fibre() {
    let m = double_point_product_model().unwrap();
    check_identities("double point total", &m.total_page);
    check_identities("double point base", &m.base_page);
}

#[test]
fn cycle_e2_matches_incidence_ranks() {
    for n in 2..=7 {
        let c = cycle_of_p1(n).unwrap();
        let e2 = compute_e2(&page(&c));
        let rk = rank_mod_p(&cycle_incidence(n));
        assert_eq!(rk, n - 1);
        // Gysin from nodes to curves and restriction from curves to nodes are both incidence maps.
        assert_eq!(e2.dim(1, 1), n - rk, "weight 2 part of H^1");
        assert_eq!(e2.dim(-1, 1), n - rk, "weight 0 part of H^1");
        assert_eq!(e2.dim(0, 1), 0);
        assert_eq!(e2.dim(0, 0), n - rk);
        assert_eq!(e2.dim(0, 2), n - rk);
        assert_eq!(e2.total_dim(1), 2);
        assert_eq!(e2.graded_dim(1, 2), 1);
        assert_eq!(e2.graded_dim(1, 0), 1);
    }
}

#[test]
fn two_curves_meeting_once() {
    let c = chain_of_p1(2).unwrap();
    let p = page(&c);
    // One node, two curves: the Gysin map H^0(pt)(-1) -> H^2(Y0) ⊕ H^2(Y1) is injective.
    assert_eq!(p.dim(1, 1), 1);
    assert_eq!(p.dim(0, 2), 2);
    assert_eq!(exactq::rank(&p.d1_at(1, 1)), 1);
    let e2 = compute_e2(&p);
    assert_eq!(e2.total_dim(1), 0);
    assert_eq!(e2.dim(0, 0), 1);
    assert_eq!(e2.dim(0, 2), 1);
}

#[test]
fn e2_degree_zero_counts_connected_components() {
    let two = cycle_of_p1(3).unwrap();
    let chain = chain_of_p1(2).unwrap();
    let mut c = StrataComplex::new(5);
    let shift = |i: &IndexSet, s: usize| IndexSet::new(i.indices().iter().map(|x| x + s));
    for (src, s) in [(&two, 0usize), (&chain, 3)] {
        for (i, g) in &src.strata {
            c.add_stratum(shift(i, s), g.clone());
        }
        for ((i, k), per) in &src.rest {
            for (&d, m) in per {
                c.set_rest(shift(i, s), k + s, d, m.clone());
            }
        }
        for ((i, k), per) in &src.gysin {
            for (&d, m) in per {
                c.set_gysin(shift(i, s), k + s, d, m.clone());
            }
        }
    }
    let e2 = compute_e2(&page(&c));
    assert_eq!(e2.dim(0, 0), 2);
    assert_eq!(dual_complex_cohomology(&c)[0], 2);
    assert_eq!(simplicial_betti(&c)[0], 2);
}

#[test]
fn dual_complex_matches_simplicial_oracle() {
    for (name, c) in test_complexes()
        .into_iter()
        .filter(|(n, _)| !n.starts_with("random"))
    {
        assert_eq!(dual_complex_cohomology(&c), simplicial_betti(&c), "{name}");
    }
    assert_eq!(
        dual_complex_cohomology(&cycle_of_p1(4).unwrap()),
        vec![1, 1]
    );
    assert_eq!(
        dual_complex_cohomology(&chain_of_p1(4).unwrap()),
        vec![1, 0]
    );
    assert_eq!(dual_complex_cohomology(&sphere_nerve_toy()), vec![1, 0, 1]);
}

#[test]
fn euler_characteristic_is_preserved() {
    for (name, c) in test_complexes() {
        let p = page(&c);
        let e2 = compute_e2(&p);
        let sign = |n: i32| if n.rem_euclid(2) == 0 { 1i64 } else { -1 };
        let chi_e1: i64 = p.keys().map(|&(r, n)| sign(n) * p.dim(r, n) as i64).sum();
        let chi_e2: i64 = e2
            .blocks
            .iter()
            .map(|(&(_, n), b)| sign(n) * b.dim() as i64)
            .sum();
        // Each H^q(Y_I) appears |I| times, always in total degree q + |I| - 1.
        let chi_direct: i64 = c
            .graded_pieces()
            .into_iter()
            .map(|(i, q, d)| i.len() as i64 * sign(q as i32 + i.len() as i32 - 1) * d as i64)
            .sum();
        assert_eq!(chi_e1, chi_direct, "{name}");
        assert_eq!(chi_e2, chi_direct, "{name}");
    }
}

#[test]
fn parallel_and_sequential_e2_agree() {
    for (name, c) in test_complexes() {
        let p = page(&c);
        let a = compute_e2(&p);
        let b = compute_e2_sequential(&p);
        assert_eq!(a.blocks, b.blocks, "{name}");
    }
}

#[test]
fn clemens_schmid_on_curve_degenerations() {
    for n in 2..=6 {
        let c = cycle_of_p1(n).unwrap();
        let rep = clemens_schmid_curve_check(&compute_e2(&page(&c)), &c);
        assert!(rep.pass(), "cycle {n}: {rep:?}");
        assert_eq!(rep.h1_limit, 2);
        assert_eq!((rep.top_weight, rep.bottom_weight, rep.middle), (1, 1, 0));
    }
    for n in 1..=4 {
        let c = chain_of_p1(n).unwrap();
        let rep = clemens_schmid_curve_check(&compute_e2(&page(&c)), &c);
        assert!(rep.pass(), "chain {n}: {rep:?}");
        assert_eq!(rep.h1_limit, 0);
    }
    let toy = sphere_nerve_toy();
    let rep = clemens_schmid_curve_check(&compute_e2(&page(&toy)), &toy);
    assert!(!rep.curve_type);
    assert!(!rep.pass());
}

#[test]
fn monodromy_criteria_read_off_the_nerve() {
    let cyc = monodromy_criteria(&cycle_of_p1(3).unwrap()).unwrap();
    assert!(!cyc.n_on_h1_zero);
    assert!(cyc.n_on_h2_zero && cyc.n2_on_h2_zero);
    let tree = monodromy_criteria(&chain_of_p1(3).unwrap()).unwrap();
    assert!(tree.n_on_h1_zero && tree.n_on_h2_zero && tree.n2_on_h2_zero);
    let toy = monodromy_criteria(&sphere_nerve_toy()).unwrap();
    assert!(toy.n_on_h1_zero);
    assert!(!toy.n_on_h2_zero && !toy.n2_on_h2_zero);
}

#[test]
fn criteria_reject_high_dimensional_strata() {
    let mut c = StrataComplex::new(1);
    c.add_stratum(
        IndexSet::new([0]),
        strata::GradedSpace::with_dims(&[(0, 1), (6, 1)]),
    );
    assert_eq!(
        monodromy_criteria(&c),
        Err(SteenbrinkError::DimensionError(6))
    );
}

#[test]
fn monodromy_weight_filtration_on_cycles_and_the_toy() {
    for n in 2..=5 {
        let c = cycle_of_p1(n).unwrap();
        let p = page(&c);
        let report = monodromy_weight_check(&p, &compute_e2(&p));
        assert!(!report.is_empty());
        assert!(report.iter().all(|e| e.iso), "cycle {n}: {report:?}");
    }
    // The toy carries no H^2 on its components, so only the nerve part is meaningful: N^2 is
    // nonzero on the class of the sphere.
    let toy = sphere_nerve_toy();
    let p = page(&toy);
    let report = monodromy_weight_check(&p, &compute_e2(&p));
    let top = report.iter().find(|e| (e.n, e.r) == (2, 2)).unwrap();
    assert_eq!((top.target_dim, top.rank), (1, 1));
    let c = cycle_of_p1(3).unwrap();
    let p = page(&c);
    let e2 = compute_e2(&p);
    let n1 = e2.induced_nu(&p, 1, 1);
    assert_eq!(n1.shape(), (1, 1));
    assert!(!n1.is_zero());
}

#[test]
fn sign_profiles_agree_on_curves() {
    for n in 2..=5 {
        let c = cycle_of_p1(n).unwrap();
        let a = compute_e2(&page(&c));
        let b =
            compute_e2(&build_e1(&c, SignProfile::OuterSigns).expect("curves have no mixed terms"));
        for (&(r, m), blk) in &a.blocks {
            assert_eq!(blk.dim(), b.dim(r, m), "cycle {n} at ({r},{m})");
        }
    }
}

#[test]
fn outer_signs_break_d1_squared_on_surfaces() {
    let m = double_point_product_model().unwrap();
    match build_e1(&m.total, SignProfile::OuterSigns) {
        Err(SteenbrinkError::SignInconsistency { .. }) => {}
        Ok(_) => panic!("expected a sign inconsistency"),
        Err(e) => panic!("unexpected error {e}"),
    }
}

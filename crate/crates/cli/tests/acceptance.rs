//! The nine acceptance criteria, one line each, all checked with exact rationals.
//!
//! Runs without the libtest harness so the lines always print; exits nonzero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use blochprod::{
    check_leibniz_exhaustive, star_commutes_with_nu, unit_chain, E1Element, LabeledChain,
};
use cocycle::{
    build_problem, correspondence_action, e2_class, nu_power_matrix, reduced_relations, solve,
    symbolic_pushforward, verify_diagram, ConstraintGroup, Relation,
};
use exactq::{rat, Rat};
use models::curves::{chain_of_p1, cycle_of_p1, faulty_cycle_of_p1, sphere_nerve_toy};
use models::double_point::{double_point_variant, DoublePointVariant};
use models::product::ProductResolutionModel;
use models::random::{random_valid_complex, RandomParams};
use models::triple_point::triple_point_product_model;
use steenbrink::{
    build_e1, clemens_schmid_curve_check, compute_e2, monodromy_criteria, monodromy_weight_check,
    E1Page, SignProfile,
};
use strata::{basis_vec, IndexSet, StrataComplex};

type Check = Result<(), String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Check + 'a>);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rel(terms: &[(&str, i64)], rhs: i64) -> Relation {
    Relation {
        terms: terms
            .iter()
            .map(|(l, c)| (l.to_string(), rat(*c)))
            .collect(),
        rhs: rat(rhs),
    }
}

fn relation_of(labels: &[String], coeffs: &[Rat], rhs: &Rat) -> Relation {
    Relation {
        terms: labels
            .iter()
            .zip(coeffs)
            .filter(|(_, c)| **c != rat(0))
            .map(|(l, c)| (l.clone(), c.clone()))
            .collect(),
        rhs: rhs.clone(),
    }
}

/// Same terms in any order, same right-hand side.
fn same_relation(a: &Relation, b: &Relation) -> bool {
    let sorted = |r: &Relation| {
        let mut t = r.terms.clone();
        t.sort();
        t
    };
    sorted(a) == sorted(b) && a.rhs == b.rhs
}

fn page(c: &StrataComplex) -> E1Page {
    build_e1(c, SignProfile::Sigma).expect("page builds")
}

fn variant(v: DoublePointVariant) -> ProductResolutionModel {
    double_point_variant(v).expect("model builds")
}

/// Solves for `[N^power]` and returns the reduced relations and the ambiguity modulo boundaries.
fn solved(
    m: &ProductResolutionModel,
    power: usize,
) -> Result<(Vec<Relation>, usize, Vec<Rat>), String> {
    let p = build_problem(m, power).map_err(|e| e.to_string())?;
    let s = solve(&p).map_err(|e| e.to_string())?;
    let e = e2_class(&p, &s).map_err(|e| e.to_string())?;
    let x = s.particular.ok_or("infeasible")?;
    let diag = verify_diagram(m, power, &x).map_err(|e| e.to_string())?;
    ensure(diag.pass(), || {
        format!("{}: diagram fails: {diag:?}", m.name)
    })?;
    Ok((reduced_relations(&p), e.ambiguity, x))
}

fn double_point_relation() -> Check {
    let out = cli::run(["solve-n", "--model", "double-point", "--power", "1"]);
    ensure(out.code == 0, || {
        format!("exit {}: {}", out.code, out.stderr)
    })?;
    let row = "\u{2212}2\u{b7}a_T125 + 2\u{b7}a_T135 \u{2212} 2\u{b7}a_T245 + 2\u{b7}a_T345 = 1";
    ensure(
        out.stdout.contains(&format!("relations:\n  {row}\n")),
        || out.stdout.clone(),
    )?;
    ensure(
        out.stdout.contains("ambiguity modulo boundaries: 0\n"),
        || out.stdout.clone(),
    )?;
    let (r, amb, _) = solved(&variant(DoublePointVariant::Standard), 1)?;
    let want = vec![rel(
        &[("a_T125", -2), ("a_T135", 2), ("a_T245", -2), ("a_T345", 2)],
        1,
    )];
    ensure(r == want, || format!("relations {r:?}"))?;
    ensure(amb == 0, || format!("ambiguity {amb}"))
}

fn variant_relations() -> Check {
    let cases = [
        (
            DoublePointVariant::ExceptionalFirst,
            rel(
                &[("a_T123", -1), ("a_T124", 1), ("a_T135", -1), ("a_T145", 1)],
                1,
            ),
        ),
        (
            DoublePointVariant::SingleBlowup,
            rel(&[("a_T134", -1), ("a_T234", 1)], 1),
        ),
    ];
    for (v, want) in cases {
        let m = variant(v);
        let (r, amb, _) = solved(&m, 1)?;
        ensure(r.len() == 1 && same_relation(&r[0], &want), || {
            format!("{}: {r:?}", m.name)
        })?;
        ensure(amb == 0, || format!("{}: ambiguity {amb}", m.name))?;
    }
    let mut actions = Vec::new();
    for v in [
        DoublePointVariant::Standard,
        DoublePointVariant::ExceptionalFirst,
        DoublePointVariant::SingleBlowup,
    ] {
        let m = variant(v);
        let (_, _, x) = solved(&m, 1)?;
        let a = correspondence_action(&m, 1, &x).map_err(|e| e.to_string())?;
        ensure(a == nu_power_matrix(&m, 1), || {
            format!("{}: action is not N", m.name)
        })?;
        actions.push(a);
    }
    ensure(actions.windows(2).all(|w| w[0] == w[1]), || {
        "variant actions differ".into()
    })
}

fn triple_first_power(m: &ProductResolutionModel) -> Check {
    let p = build_problem(m, 1).map_err(|e| e.to_string())?;
    let kernel: Vec<Relation> = p
        .rows_in(ConstraintGroup::Kernel)
        .map(|r| relation_of(&p.unknowns, &r.coeffs, &r.rhs))
        .collect();
    let six = [
        rel(&[("a_T178", 1), ("w", 1)], 0),
        rel(&[("a_T279", 1), ("y", 1), ("w", 1)], 0),
        rel(&[("a_T378", 1), ("z", 1)], 0),
        rel(&[("a_T489", 1), ("x", -1), ("z", -1)], 0),
        rel(&[("a_T579", 1), ("y", 1), ("z", 1)], 0),
        rel(&[("a_T689", 1), ("x", -1), ("w", -1)], 0),
    ];
    ensure(kernel.len() == 6, || {
        format!("{} kernel rows", kernel.len())
    })?;
    for w in &six {
        let hits = kernel.iter().filter(|k| k.same_hyperplane(w)).count();
        ensure(hits == 1, || format!("kernel row {w} found {hits} times"))?;
    }
    let comm: Vec<Relation> = p
        .rows_in(ConstraintGroup::Commutativity)
        .map(|r| relation_of(&p.unknowns, &r.coeffs, &r.rhs))
        .collect();
    let want = vec![
        rel(&[("a_T178", 1), ("a_T378", -1)], 1),
        rel(&[("a_T279", 1), ("a_T579", -1)], 1),
        rel(&[("a_T489", 1), ("a_T689", -1)], 1),
    ];
    ensure(comm == want, || format!("commutativity rows {comm:?}"))?;
    let (r, _, _) = solved(m, 1)?;
    ensure(r == vec![rel(&[("z", 1), ("w", -1)], 1)], || {
        format!("relations {r:?}")
    })
}

fn triple_second_power(m: &ProductResolutionModel) -> Check {
    let (r, amb, _) = solved(m, 2)?;
    let want = rel(
        &[
            ("b_T12789", -1),
            ("b_T16789", 1),
            ("b_T24789", -1),
            ("b_T34789", 1),
            ("b_T35789", -1),
            ("b_T56789", -1),
        ],
        1,
    );
    ensure(r == vec![want], || format!("relations {r:?}"))?;
    ensure(amb == 0, || format!("ambiguity {amb}"))
}

fn leibniz_checks() -> Check {
    for n in 2..=4 {
        let r = check_leibniz_exhaustive(&cycle_of_p1(n).unwrap()).map_err(|e| e.to_string())?;
        ensure(r.pass(), || format!("cycle {n}: {:?}", r.witnesses.first()))?;
    }
    for seed in 0..100 {
        let c = random_valid_complex(RandomParams::default(), seed);
        let r = check_leibniz_exhaustive(&c).map_err(|e| e.to_string())?;
        ensure(r.pass(), || {
            format!("random {seed}: {:?}", r.witnesses.first())
        })?;
    }
    let r = check_leibniz_exhaustive(&faulty_cycle_of_p1()).map_err(|e| e.to_string())?;
    ensure(!r.pass() && !r.witnesses.is_empty(), || {
        "injected fault not detected".into()
    })
}

fn builtin_complexes(triple: &ProductResolutionModel) -> Vec<(String, StrataComplex)> {
    let mut out: Vec<(String, StrataComplex)> = Vec::new();
    for n in 2..=5 {
        out.push((format!("cycle {n}"), cycle_of_p1(n).unwrap()));
        out.push((format!("chain {n}"), chain_of_p1(n).unwrap()));
    }
    out.push(("sphere toy".into(), sphere_nerve_toy()));
    out.push(("faulty cycle".into(), faulty_cycle_of_p1()));
    for v in [
        DoublePointVariant::Standard,
        DoublePointVariant::ExceptionalFirst,
        DoublePointVariant::SingleBlowup,
    ] {
        let m = variant(v);
        out.push((format!("{} total", m.name), m.total));
        out.push((format!("{} base", m.name), m.base));
    }
    out.push(("triple-point total".into(), triple.total.clone()));
    out.push(("triple-point base".into(), triple.base.clone()));
    out
}

fn basis_chains(c: &StrataComplex) -> Vec<LabeledChain> {
    let mut out = Vec::new();
    for (i, d, n) in c.graded_pieces() {
        for a in 0..n {
            for t in (1 - i.len() as i64)..=0 {
                let mut ch = LabeledChain::new();
                ch.add(i.clone(), d, t, basis_vec(n, a));
                out.push(ch);
            }
        }
    }
    out
}

fn structural_identities(triple: &ProductResolutionModel) -> Check {
    let mut all = builtin_complexes(triple);
    for seed in 0..100 {
        all.push((
            format!("random {seed}"),
            random_valid_complex(RandomParams::default(), seed),
        ));
    }
    let mut pairs = 0usize;
    for (name, c) in &all {
        let p = page(c);
        for &(r, n) in p.keys() {
            ensure(p.d1_squared(r, n).is_zero(), || {
                format!("{name}: d1² at ({r},{n})")
            })?;
            let nd = &p.nu_at(r - 1, n + 1) * &p.d1_at(r, n);
            let dn = &p.d1_at(r - 2, n) * &p.nu_at(r, n);
            ensure(nd == dn, || format!("{name}: N d1 at ({r},{n})"))?;
            let nu = p.nu_at(r, n);
            let m = p.m_at(r, n);
            ensure(&(&nu * &m) * &nu == nu, || {
                format!("{name}: NMN at ({r},{n})")
            })?;
        }
        if !c.has_products() || name.starts_with("triple") {
            continue;
        }
        let basis = basis_chains(c);
        let unit = unit_chain(c);
        let left: Vec<&LabeledChain> = basis
            .iter()
            .filter(|a| a.terms.keys().all(|k| k.2 == 0))
            .collect();
        for b in &basis {
            let e = E1Element::from_chain(b);
            for a in std::iter::once(&unit).chain(left.iter().copied()) {
                let ok = star_commutes_with_nu(c, a, &e).map_err(|e| e.to_string())?;
                ensure(ok, || format!("{name}: {a} * N {b}"))?;
                pairs += 1;
            }
        }
    }
    ensure(pairs > 0, || "no product pairs tested".into())
}

/// Rank over `F_p`, `p = 2^31 - 1`, by plain elimination.
fn rank_mod_p(rows: &[Vec<i64>]) -> usize {
    const P: i128 = 2_147_483_647;
    let inv = |a: i128| {
        let (mut r, mut e, mut b) = (1i128, P - 2, a.rem_euclid(P));
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % P;
            }
            b = b * b % P;
            e >>= 1;
        }
        r
    };
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
        let iv = inv(m[rank][c]);
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

/// Vertex-by-edge incidence of the `n`-cycle; for `n = 2` the two edges join the same vertices.
fn cycle_incidence(n: usize) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0i64; n]; n];
    for e in 0..n {
        let (a, b) = if n == 2 { (0, 1) } else { (e, (e + 1) % n) };
        m[a][e] += 1;
        m[b][e] -= 1;
    }
    m
}

fn cycle_weights() -> Check {
    for n in [2, 3, 5] {
        let c = cycle_of_p1(n).unwrap();
        let e2 = compute_e2(&page(&c));
        let rk = rank_mod_p(&cycle_incidence(n));
        // Both the restriction to the nodes and the Gysin map back are incidence matrices.
        let (bottom, top) = (n - rk, n - rk);
        let got = (
            e2.graded_dim(1, 0),
            e2.graded_dim(1, 1),
            e2.graded_dim(1, 2),
        );
        ensure(got == (bottom, 0, top) && got == (1, 0, 1), || {
            format!("cycle {n}: gr H^1 = {got:?}")
        })?;
        let cs = clemens_schmid_curve_check(&e2, &c);
        ensure(cs.pass() && cs.h1_limit == 2, || {
            format!("cycle {n}: {cs:?}")
        })?;
        ensure(
            (cs.gysin_kernel, cs.restriction_cokernel, cs.middle) == (top, bottom, 0),
            || format!("cycle {n}: {cs:?}"),
        )?;
    }
    Ok(())
}

/// Betti numbers of the nerve, one simplex per connected piece (`H^0` basis vector) of each
/// stratum. Only complexes whose proper faces are connected are supported.
fn nerve_betti(c: &StrataComplex) -> Vec<usize> {
    let top = c.strata.keys().map(IndexSet::len).max().unwrap_or(0);
    let simplices: Vec<Vec<&IndexSet>> = (0..=top)
        .map(|s| {
            c.strata
                .keys()
                .filter(|i| i.len() == s)
                .flat_map(|i| std::iter::repeat_n(i, c.dim(i, 0)))
                .collect()
        })
        .collect();
    for s in 1..top {
        assert!(
            simplices[s].windows(2).all(|w| w[0] != w[1]),
            "disconnected face of size {s}"
        );
    }
    let coboundary = |s: usize| -> Vec<Vec<i64>> {
        simplices[s + 1]
            .iter()
            .map(|t| {
                simplices[s]
                    .iter()
                    .map(|f| match t.indices().iter().position(|x| !f.contains(*x)) {
                        Some(k) if f.is_subset(t) => {
                            if k % 2 == 0 {
                                1
                            } else {
                                -1
                            }
                        }
                        _ => 0,
                    })
                    .collect()
            })
            .collect()
    };
    let ranks: Vec<usize> = (0..=top)
        .map(|s| {
            if s >= 1 && s < top {
                rank_mod_p(&coboundary(s))
            } else {
                0
            }
        })
        .collect();
    (1..=top)
        .map(|s| simplices[s].len() - ranks[s] - ranks[s - 1])
        .collect()
}

fn monodromy_criteria_vs_nerve() -> Check {
    for n in [2, 3, 5] {
        let c = cycle_of_p1(n).unwrap();
        let m = monodromy_criteria(&c).map_err(|e| e.to_string())?;
        let b = nerve_betti(&c);
        ensure(b[1] == 1 && !m.n_on_h1_zero, || {
            format!("cycle {n}: {b:?} {m:?}")
        })?;
    }
    let tree = chain_of_p1(3).unwrap();
    let m = monodromy_criteria(&tree).map_err(|e| e.to_string())?;
    let b = nerve_betti(&tree);
    ensure(b == vec![1, 0] && m.n_on_h1_zero && m.n_on_h2_zero, || {
        format!("tree: {b:?} {m:?}")
    })?;
    let toy = sphere_nerve_toy();
    let m = monodromy_criteria(&toy).map_err(|e| e.to_string())?;
    let b = nerve_betti(&toy);
    ensure(b == vec![1, 0, 1] && !m.n2_on_h2_zero, || {
        format!("sphere toy: {b:?} {m:?}")
    })?;
    let p = page(&toy);
    let w = monodromy_weight_check(&p, &compute_e2(&p));
    let n2 = w
        .iter()
        .find(|e| (e.n, e.r) == (2, 2))
        .ok_or("no N² entry on H^2")?;
    ensure(n2.rank == 1, || format!("N² on H^2 has rank {}", n2.rank))
}

fn symbolic_row() -> Check {
    let m = variant(DoublePointVariant::Standard);
    let got = symbolic_pushforward(&m, 1, 0).map_err(|e| e.to_string())?;
    let want: Vec<(String, Vec<Rat>)> =
        [("a_T125", -2), ("a_T135", 2), ("a_T245", -2), ("a_T345", 2)]
            .iter()
            .map(|(l, c)| (l.to_string(), vec![rat(*c)]))
            .collect();
    ensure(got == want, || format!("{got:?}"))
}

fn main() -> ExitCode {
    let triple = triple_point_product_model().expect("triple-point model builds");
    let criteria: Vec<Criterion<'_>> = vec![
        (
            "double-point relation and unique class",
            Box::new(double_point_relation),
        ),
        (
            "alternate resolutions give their relations and the same class",
            Box::new(variant_relations),
        ),
        (
            "triple-point [N] constraint rows reduce to z - w = 1",
            Box::new(|| triple_first_power(&triple)),
        ),
        (
            "triple-point [N^2] relation with unique class",
            Box::new(|| triple_second_power(&triple)),
        ),
        (
            "Leibniz rule exhaustively, fault detected",
            Box::new(leibniz_checks),
        ),
        (
            "page identities and a * Nb = N(a * b)",
            Box::new(|| structural_identities(&triple)),
        ),
        (
            "weights of H^1 on cycles and Clemens-Schmid",
            Box::new(cycle_weights),
        ),
        (
            "monodromy criteria against the nerve",
            Box::new(monodromy_criteria_vs_nerve),
        ),
        (
            "symbolic pushforward row (-2, 2, -2, 2)",
            Box::new(symbolic_row),
        ),
    ];
    let mut failed = 0;
    for (k, (title, check)) in criteria.iter().enumerate() {
        let result =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match result {
            Ok(()) => println!("criterion {}: PASS {title}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {title}\n    {why}", k + 1);
            }
        }
    }
    println!(
        "acceptance: {}/{} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

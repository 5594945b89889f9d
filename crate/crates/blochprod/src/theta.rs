//! The product `θ(I, J)` and the Leibniz identity it satisfies.

use exactq::{rat, Rat};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use strata::{admissible, basis_vec, parity_sign, GradedClass, IndexSet, StrataComplex};

use crate::chain::{d_prime, d_total, LabeledChain};
use crate::BlochError;

/// `(-1)^{a(I,J)} g_{j_0} ∘ ... ∘ g_{j_{p-1}} (x · y)` on `Y_K`, or `None` when `(I, J)` is not admissible.
///
/// `x · y` is the cup product after restricting both factors to `Y_{I∪J}`.
/// The Gysin map for `j_0` is applied first.
pub fn theta(
    c: &StrataComplex,
    x: &GradedClass,
    y: &GradedClass,
) -> Result<Option<GradedClass>, BlochError> {
    let (i, j) = (&x.stratum, &y.stratum);
    let Some(adm) = admissible(i, j) else {
        return Ok(None);
    };
    let sign = rat(parity_sign(
        adm.b.iter().sum::<usize>() + (i.len() - 1) * adm.p,
    ));
    let u = i.union(j);
    let out_deg = x.degree + y.degree + 2 * adm.p as u32;
    let twist = x.twist + y.twist + adm.p as i64;
    let out_dim = c.dim(&adm.k, out_deg);
    let zero = GradedClass {
        stratum: adm.k.clone(),
        degree: out_deg,
        twist,
        coords: vec![exactq::zero(); out_dim],
    };
    if !c.strata.contains_key(&u) {
        return Ok(Some(zero));
    }
    let xr = c.restrict_to(i, &u, x.degree, &x.coords);
    let yr = c.restrict_to(j, &u, y.degree, &y.coords);
    let mut v = c.cup_apply(&u, x.degree, &xr, y.degree, &yr)?;
    let mut cur = u;
    let mut deg = x.degree + y.degree;
    for &jr in &adm.removed {
        v = c.gysin_apply(&cur, jr, deg, &v);
        cur = cur.without(jr);
        deg += 2;
    }
    debug_assert_eq!(cur, adm.k);
    let coords: Vec<Rat> = v.iter().map(|e| e * &sign).collect();
    Ok(Some(GradedClass { coords, ..zero }))
}

/// Bilinear extension of [`theta`] to chains.
pub fn theta_chain(
    c: &StrataComplex,
    a: &LabeledChain,
    b: &LabeledChain,
) -> Result<LabeledChain, BlochError> {
    let mut out = LabeledChain::new();
    for x in a.classes() {
        for y in b.classes() {
            if let Some(z) = theta(c, &x, &y)? {
                out.add_class(&z);
            }
        }
    }
    Ok(out)
}

/// A class of stratum size `size` and twist `t` lies on the E1 page when `t ≤ 0` and `size - 1 + t ≥ 0`.
pub fn on_page(size: usize, twist: i64) -> bool {
    twist <= 0 && size as i64 - 1 + twist >= 0
}

/// Drops the terms that lie off the E1 page.
pub fn truncate_to_page(ch: &LabeledChain) -> LabeledChain {
    let mut out = LabeledChain::new();
    for c in ch.classes().filter(|c| on_page(c.stratum.len(), c.twist)) {
        out.add_class(&c);
    }
    out
}

/// Both sides of `θ ∘ (d'⊗1 + (-1)^m 1⊗(d'+d'')) = (d'+d'') ∘ θ` on `x ⊗ y`, with `m = |I| - 1`,
/// read on the E1 page.
///
/// Terms of positive twist form a subcomplex that `θ(x, -)` preserves, so both sides are
/// compared after dropping them. Before truncation the identity can fail, e.g. for `x` on a
/// double point `{0,1}` and `y = 1` on `Y_0`, where the uncancelled term has twist 1.
pub fn leibniz_sides(
    c: &StrataComplex,
    x: &GradedClass,
    y: &GradedClass,
) -> Result<(LabeledChain, LabeledChain), BlochError> {
    let xc = LabeledChain::single(x.clone());
    let yc = LabeledChain::single(y.clone());
    let mut lhs = theta_chain(c, &d_prime(c, &xc), &yc)?;
    let m = x.stratum.len() - 1;
    lhs.add_chain(
        &theta_chain(c, &xc, &d_total(c, &yc))?,
        &rat(parity_sign(m)),
    );
    let rhs = d_total(c, &theta_chain(c, &xc, &yc)?);
    Ok((truncate_to_page(&lhs), truncate_to_page(&rhs)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeibnizWitness {
    pub trial: usize,
    pub i: IndexSet,
    pub j: IndexSet,
    pub deg_x: u32,
    pub deg_y: u32,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LeibnizReport {
    pub trials: usize,
    pub passed: usize,
    pub witnesses: Vec<LeibnizWitness>,
}

impl LeibnizReport {
    pub fn pass(&self) -> bool {
        self.passed == self.trials && self.witnesses.is_empty()
    }
}

fn one_case(
    c: &StrataComplex,
    trial: usize,
    x: &GradedClass,
    y: &GradedClass,
) -> Result<Option<LeibnizWitness>, BlochError> {
    let (lhs, rhs) = leibniz_sides(c, x, y)?;
    if lhs == rhs {
        return Ok(None);
    }
    Ok(Some(LeibnizWitness {
        trial,
        i: x.stratum.clone(),
        j: y.stratum.clone(),
        deg_x: x.degree,
        deg_y: y.degree,
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
    }))
}

fn pieces(c: &StrataComplex) -> Vec<(IndexSet, u32, usize)> {
    c.graded_pieces()
}

/// Left factors sit in the left column (twist 0); right factors carry an arbitrary twist label.
fn random_case(c: &StrataComplex, seed: u64, trial: usize) -> (GradedClass, GradedClass) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    let ps = pieces(c);
    let pick = |rng: &mut ChaCha8Rng, twist: i64| {
        let (i, d, n) = ps[rng.gen_range(0..ps.len())].clone();
        let coords = (0..n).map(|_| rat(rng.gen_range(-3..=3))).collect();
        GradedClass {
            stratum: i,
            degree: d,
            twist,
            coords,
        }
    };
    let x = pick(&mut rng, 0);
    let mut y = pick(&mut rng, 0);
    y.twist = -(rng.gen_range(0..y.stratum.len()) as i64);
    (x, y)
}

/// Randomised check over `trials` seeded pairs; trials are independent and merged by index.
pub fn check_leibniz(
    c: &StrataComplex,
    trials: usize,
    seed: u64,
) -> Result<LeibnizReport, BlochError> {
    if c.strata.is_empty() {
        return Ok(LeibnizReport {
            trials,
            passed: trials,
            witnesses: Vec::new(),
        });
    }
    let run = |t: usize| {
        let (x, y) = random_case(c, seed, t);
        one_case(c, t, &x, &y)
    };
    #[cfg(feature = "parallel")]
    let results: Vec<Result<Option<LeibnizWitness>, BlochError>> = {
        use rayon::prelude::*;
        (0..trials).into_par_iter().map(run).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let results: Vec<Result<Option<LeibnizWitness>, BlochError>> = (0..trials).map(run).collect();
    merge(trials, results)
}

/// Sequential reference path of [`check_leibniz`].
pub fn check_leibniz_sequential(
    c: &StrataComplex,
    trials: usize,
    seed: u64,
) -> Result<LeibnizReport, BlochError> {
    if c.strata.is_empty() {
        return Ok(LeibnizReport {
            trials,
            passed: trials,
            witnesses: Vec::new(),
        });
    }
    let results = (0..trials)
        .map(|t| {
            let (x, y) = random_case(c, seed, t);
            one_case(c, t, &x, &y)
        })
        .collect();
    merge(trials, results)
}

fn merge(
    trials: usize,
    results: Vec<Result<Option<LeibnizWitness>, BlochError>>,
) -> Result<LeibnizReport, BlochError> {
    let mut report = LeibnizReport {
        trials,
        passed: 0,
        witnesses: Vec::new(),
    };
    for r in results {
        match r? {
            None => report.passed += 1,
            Some(w) => report.witnesses.push(w),
        }
    }
    Ok(report)
}

/// Every basis pair over every pair of strata and degrees, right factor at every twist on the page.
pub fn check_leibniz_exhaustive(c: &StrataComplex) -> Result<LeibnizReport, BlochError> {
    let ps = pieces(c);
    let mut cases = Vec::new();
    for (i, di, ni) in &ps {
        for (j, dj, nj) in &ps {
            for a in 0..*ni {
                for b in 0..*nj {
                    for t in (1 - j.len() as i64)..=0 {
                        let x = GradedClass {
                            stratum: i.clone(),
                            degree: *di,
                            twist: 0,
                            coords: basis_vec(*ni, a),
                        };
                        let y = GradedClass {
                            stratum: j.clone(),
                            degree: *dj,
                            twist: t,
                            coords: basis_vec(*nj, b),
                        };
                        cases.push((x, y));
                    }
                }
            }
        }
    }
    let run = |(t, (x, y)): (usize, &(GradedClass, GradedClass))| one_case(c, t, x, y);
    #[cfg(feature = "parallel")]
    let results: Vec<_> = {
        use rayon::prelude::*;
        cases.par_iter().enumerate().map(run).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let results: Vec<_> = cases.iter().enumerate().map(run).collect();
    merge(cases.len(), results)
}

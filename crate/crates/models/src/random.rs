//! Random product-enabled complexes that satisfy every validation identity.
//!
//! A random simplicial configuration of at most four components is turned into an intersection
//! ring with random nonzero point and self-intersection values; the strata complex of that ring is
//! then conjugated by a random integral unimodular change of basis on every graded piece.

use exactq::{inverse, rat, Mat, Rat};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use strata::{GradedSpace, IndexSet, StrataComplex};

use crate::ring::{
    face_monomial, poly_mul, poly_of, ring_complex, IntersectionRing, Preferred, RingSpec,
};

/// Size bounds for [`random_valid_complex`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomParams {
    /// At most 4.
    pub max_components: usize,
    /// Largest cohomological degree, at most 4.
    pub max_degree: u32,
    /// Largest dimension of a graded piece, at most 3.
    pub max_dim: usize,
}

impl Default for RandomParams {
    fn default() -> Self {
        RandomParams {
            max_components: 4,
            max_degree: 4,
            max_dim: 3,
        }
    }
}

impl RandomParams {
    fn clamped(self) -> Self {
        RandomParams {
            max_components: self.max_components.clamp(1, 4),
            max_degree: self.max_degree.min(4),
            max_dim: self.max_dim.clamp(1, 3),
        }
    }
}

/// A deterministic function of `(params, seed)`.
pub fn random_valid_complex(params: RandomParams, seed: u64) -> StrataComplex {
    let p = params.clamped();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        if let Some(c) = attempt(&p, &mut rng) {
            return conjugate(&c, &mut rng);
        }
    }
}

fn attempt(p: &RandomParams, rng: &mut ChaCha8Rng) -> Option<StrataComplex> {
    let n = rng.gen_range(1..=p.max_components);
    let top = rng.gen_range(1..=(p.max_degree / 2 + 1) as usize);
    let mut cells: Vec<IndexSet> = Vec::new();
    let mut covered = vec![false; n];
    let mut vertices: Vec<usize> = (0..n).collect();
    for _ in 0..rng.gen_range(1..=3) {
        let size = rng.gen_range(1..=top.min(n));
        vertices.shuffle(rng);
        let cell = IndexSet::new(vertices[..size].to_vec());
        for &v in cell.indices() {
            covered[v] = true;
        }
        cells.push(cell);
    }
    for (v, c) in covered.iter().enumerate() {
        if !c {
            cells.push(IndexSet::new(vec![v]));
        }
    }
    let mut conditions = Vec::new();
    for cell in &cells {
        let extra = top - cell.len();
        let v = *cell.indices().choose(rng).expect("cells are nonempty");
        let cof = poly_of(&[(&vec![v; extra], 1)]);
        let value = *[-2i64, -1, 1, 2].choose(rng).expect("nonempty");
        conditions.push((poly_mul(&face_monomial(cell), &cof), rat(value)));
    }
    let spec = RingSpec {
        n_div: n,
        extra_names: vec![],
        cells,
        top,
        conditions,
    };
    let ring = IntersectionRing::solve(&spec).ok()?;
    let (c, _) = ring_complex(&ring, &Preferred::new());
    let ok = c.strata.iter().all(|(i, s)| {
        s.dims.values().all(|&d| d <= p.max_dim)
            && s.dim(2 * (top - i.len()) as u32) == 1
            && s.dim(0) == 1
    });
    ok.then_some(c)
}

/// Unimodular upper-triangular matrix with random signs on the diagonal.
fn random_unimodular(d: usize, rng: &mut ChaCha8Rng) -> Mat {
    let mut m = Mat::zeros(d, d);
    for i in 0..d {
        m.set(i, i, rat(if rng.gen_bool(0.5) { 1 } else { -1 }));
        for j in i + 1..d {
            m.set(i, j, rat(rng.gen_range(-1..=1)));
        }
    }
    m
}

/// Rewrites every map in a new basis `x_old = P x_new` of each graded piece.
fn conjugate(c: &StrataComplex, rng: &mut ChaCha8Rng) -> StrataComplex {
    let mut change: std::collections::BTreeMap<(IndexSet, u32), (Mat, Mat)> = Default::default();
    let mut out = StrataComplex::new(c.n_components);
    for (i, s) in &c.strata {
        let mut space = GradedSpace::new();
        for (&d, &n) in &s.dims {
            let p = random_unimodular(n, rng);
            let inv = inverse(&p).expect("unimodular");
            change.insert((i.clone(), d), (p, inv));
            space.dims.insert(d, n);
        }
        out.add_stratum(i.clone(), space);
    }
    let get = |i: &IndexSet, d: u32| {
        change
            .get(&(i.clone(), d))
            .expect("piece has a basis change")
    };
    for ((i, k), per) in &c.rest {
        let t = i.with(*k);
        for (&d, m) in per {
            out.set_rest(i.clone(), *k, d, &(&get(&t, d).1 * m) * &get(i, d).0);
        }
    }
    for ((i, k), per) in &c.gysin {
        let t = i.without(*k);
        for (&d, m) in per {
            out.set_gysin(i.clone(), *k, d, &(&get(&t, d + 2).1 * m) * &get(i, d).0);
        }
    }
    if let Some(cup) = &c.cup {
        for ((i, d1, d2), m) in cup {
            let (p1, _) = get(i, *d1);
            let (p2, _) = get(i, *d2);
            let (_, q) = get(i, d1 + d2);
            let (n1, n2) = (p1.rows(), p2.rows());
            let mut t = Mat::zeros(m.rows(), n1 * n2);
            for a in 0..n1 {
                for b in 0..n2 {
                    let x = p1.col_vec(a);
                    let y = p2.col_vec(b);
                    let mut col = vec![Rat::from_integer(0.into()); m.rows()];
                    for (u, xu) in x.iter().enumerate() {
                        for (v, yv) in y.iter().enumerate() {
                            let w = xu * yv;
                            if w == rat(0) {
                                continue;
                            }
                            for (r, e) in col.iter_mut().enumerate() {
                                *e += &w * m.get(r, u * n2 + v);
                            }
                        }
                    }
                    let col = q.mul_vec(&col);
                    for (r, e) in col.into_iter().enumerate() {
                        t.set(r, a * n2 + b, e);
                    }
                }
            }
            out.set_cup(i.clone(), *d1, *d2, t);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use strata::validate;

    #[test]
    fn seeded_and_valid() {
        for seed in 0..20 {
            let a = random_valid_complex(RandomParams::default(), seed);
            let b = random_valid_complex(RandomParams::default(), seed);
            assert_eq!(a, b);
            let rep = validate(&a, true);
            assert!(
                !rep.has_errors(),
                "seed {seed}: {:?}",
                rep.errors().collect::<Vec<_>>()
            );
        }
    }

    #[test]
    fn respects_bounds() {
        let p = RandomParams {
            max_components: 3,
            max_degree: 2,
            max_dim: 2,
        };
        for seed in 0..20 {
            let c = random_valid_complex(p, seed);
            assert!(c.n_components <= 3);
            assert!(c.max_degree() <= 2);
            assert!(c.strata.values().all(|s| s.dims.values().all(|&d| d <= 2)));
        }
    }
}

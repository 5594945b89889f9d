//! Labeled chains and the two halves of the differential in the σ convention.

use std::collections::BTreeMap;
use std::fmt;

use exactq::{fmt_vec, rat, vec_add, vec_is_zero, vec_scale, Rat};
use strata::{parity_sign, sigma, GradedClass, IndexSet, StrataComplex};

/// `(stratum, degree, twist)`.
pub type TermKey = (IndexSet, u32, i64);

/// A finite formal sum of classes on strata.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LabeledChain {
    pub terms: BTreeMap<TermKey, Vec<Rat>>,
}

impl LabeledChain {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(c: GradedClass) -> Self {
        let mut ch = LabeledChain::new();
        ch.add_class(&c);
        ch
    }

    pub fn add(&mut self, stratum: IndexSet, degree: u32, twist: i64, coords: Vec<Rat>) {
        if vec_is_zero(&coords) {
            return;
        }
        let key = (stratum, degree, twist);
        let merged = match self.terms.remove(&key) {
            Some(old) => vec_add(&old, &coords),
            None => coords,
        };
        if !vec_is_zero(&merged) {
            self.terms.insert(key, merged);
        }
    }

    pub fn add_class(&mut self, c: &GradedClass) {
        self.add(c.stratum.clone(), c.degree, c.twist, c.coords.clone());
    }

    pub fn add_chain(&mut self, other: &LabeledChain, scale: &Rat) {
        for ((i, d, t), v) in &other.terms {
            self.add(i.clone(), *d, *t, vec_scale(v, scale));
        }
    }

    pub fn scaled(&self, s: &Rat) -> LabeledChain {
        let mut out = LabeledChain::new();
        out.add_chain(self, s);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn classes(&self) -> impl Iterator<Item = GradedClass> + '_ {
        self.terms.iter().map(|((i, d, t), v)| GradedClass {
            stratum: i.clone(),
            degree: *d,
            twist: *t,
            coords: v.clone(),
        })
    }

    /// `self - other`.
    pub fn minus(&self, other: &LabeledChain) -> LabeledChain {
        let mut out = self.clone();
        out.add_chain(other, &rat(-1));
        out
    }
}

impl fmt::Display for LabeledChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((i, d, t), v)| format!("{i}[H{d}({t})]{}", fmt_vec(v)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn sgn(e: usize) -> Rat {
    rat(parity_sign(e))
}

/// `d' = Σ_{k∉I} (-1)^{σ(I,k)} rest_k`; absent targets contribute nothing.
pub fn d_prime(c: &StrataComplex, x: &LabeledChain) -> LabeledChain {
    let mut out = LabeledChain::new();
    for ((i, d, t), v) in &x.terms {
        for k in (0..c.n_components).filter(|&k| !i.contains(k)) {
            let target = i.with(k);
            if c.dim(&target, *d) == 0 {
                continue;
            }
            out.add(
                target,
                *d,
                *t,
                vec_scale(&c.restrict(i, k, *d, v), &sgn(sigma(i, k))),
            );
        }
    }
    out
}

/// `d'' = Σ_{k∈I} (-1)^{σ(I,k)} g_k`; raises degree by 2 and twist by 1.
pub fn d_double_prime(c: &StrataComplex, x: &LabeledChain) -> LabeledChain {
    let mut out = LabeledChain::new();
    for ((i, d, t), v) in &x.terms {
        for &k in i.indices() {
            let target = i.without(k);
            if target.is_empty() || c.dim(&target, d + 2) == 0 {
                continue;
            }
            out.add(
                target,
                d + 2,
                t + 1,
                vec_scale(&c.gysin_apply(i, k, *d, v), &sgn(sigma(i, k))),
            );
        }
    }
    out
}

/// `d' + d''`.
pub fn d_total(c: &StrataComplex, x: &LabeledChain) -> LabeledChain {
    let mut out = d_prime(c, x);
    out.add_chain(&d_double_prime(c, x), &rat(1));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use models::curves::cycle_of_p1;

    fn s(v: &[usize]) -> IndexSet {
        IndexSet::new(v.iter().copied())
    }

    #[test]
    fn restriction_signs_on_a_triangle_of_curves() {
        let c = cycle_of_p1(3).unwrap();
        let mut x = LabeledChain::new();
        x.add(s(&[0]), 0, 0, vec![rat(1)]);
        // σ({0}, 1) = σ({0}, 2) = 1
        let mut expected = LabeledChain::new();
        expected.add(s(&[0, 1]), 0, 0, vec![rat(-1)]);
        expected.add(s(&[0, 2]), 0, 0, vec![rat(-1)]);
        assert_eq!(d_prime(&c, &x), expected);
        // σ({2}, 0) = σ({2}, 1) = 0
        let mut y = LabeledChain::new();
        y.add(s(&[2]), 0, 0, vec![rat(1)]);
        let mut expected = LabeledChain::new();
        expected.add(s(&[0, 2]), 0, 0, vec![rat(1)]);
        expected.add(s(&[1, 2]), 0, 0, vec![rat(1)]);
        assert_eq!(d_prime(&c, &y), expected);
    }

    #[test]
    fn gysin_of_a_node() {
        let c = cycle_of_p1(3).unwrap();
        let mut x = LabeledChain::new();
        x.add(s(&[0, 1]), 0, -1, vec![rat(1)]);
        let mut expected = LabeledChain::new();
        expected.add(s(&[1]), 2, 0, vec![rat(1)]);
        expected.add(s(&[0]), 2, 0, vec![rat(-1)]);
        assert_eq!(d_double_prime(&c, &x), expected);
        assert_eq!(d_prime(&c, &x), LabeledChain::new());
    }

    #[test]
    fn chains_cancel_and_print() {
        let mut x = LabeledChain::new();
        x.add(s(&[0]), 2, 0, vec![rat(2)]);
        assert_eq!(x.to_string(), "{1}[H2(0)](2)");
        assert!(x.minus(&x).is_zero());
        assert_eq!(LabeledChain::new().to_string(), "0");
        assert_eq!(x.scaled(&rat(0)), LabeledChain::new());
    }
}

//! Structural checks on a [`StrataComplex`].

use std::fmt;

use crate::complex::{basis_vec, StrataComplex};
use crate::index::IndexSet;
use exactq::{vec_is_zero, vec_sub, Mat, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum FindingKind {
    Shape,
    RestRestSquare,
    GysinGysinSquare,
    MixedSquare,
    PrincipalFibre,
    MissingCup,
    GradedCommutativity,
    RestNotMultiplicative,
    ProjectionFormula,
    ExcessIntersection,
}

/// One violated identity with the data that locates it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Finding {
    pub severity: Severity,
    pub kind: FindingKind,
    pub stratum: IndexSet,
    pub k: Option<usize>,
    pub l: Option<usize>,
    pub degree: Option<u32>,
    pub detail: String,
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{sev} {:?} at I={}", self.kind, self.stratum)?;
        if let Some(k) = self.k {
            write!(f, " k={}", k + 1)?;
        }
        if let Some(l) = self.l {
            write!(f, " l={}", l + 1)?;
        }
        if let Some(d) = self.degree {
            write!(f, " degree={d}")?;
        }
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub findings: Vec<Finding>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.findings.is_empty()
    }

    pub fn errors(&self) -> impl Iterator<Item = &Finding> {
        self.findings
            .iter()
            .filter(|f| f.severity == Severity::Error)
    }

    pub fn warnings(&self) -> impl Iterator<Item = &Finding> {
        self.findings
            .iter()
            .filter(|f| f.severity == Severity::Warning)
    }

    pub fn has_errors(&self) -> bool {
        self.errors().next().is_some()
    }

    pub fn count(&self, kind: FindingKind) -> usize {
        self.findings.iter().filter(|f| f.kind == kind).count()
    }
}

struct Ctx<'a> {
    c: &'a StrataComplex,
    out: Vec<Finding>,
}

impl Ctx<'_> {
    fn push(
        &mut self,
        kind: FindingKind,
        i: &IndexSet,
        k: Option<usize>,
        l: Option<usize>,
        d: Option<u32>,
        detail: String,
    ) {
        let severity = if kind == FindingKind::PrincipalFibre {
            Severity::Warning
        } else {
            Severity::Error
        };
        self.out.push(Finding {
            severity,
            kind,
            stratum: i.clone(),
            k,
            l,
            degree: d,
            detail,
        });
    }
}

/// Runs every check; product identities only when `check_products` is set.
///
/// Squares that pass through the empty index set (the ambient space) are not
/// checked: that space is not part of the data.
pub fn validate(c: &StrataComplex, check_products: bool) -> ValidationReport {
    let mut ctx = Ctx { c, out: Vec::new() };
    check_shapes(&mut ctx);
    check_rest_squares(&mut ctx);
    check_gysin_squares(&mut ctx);
    check_mixed_squares(&mut ctx);
    check_principal_fibre(&mut ctx);
    if check_products {
        check_products_all(&mut ctx);
    }
    ValidationReport { findings: ctx.out }
}

fn check_shapes(ctx: &mut Ctx) {
    let c = ctx.c;
    for i in c.strata.keys() {
        if i.is_empty() || i.indices().iter().any(|&k| k >= c.n_components) {
            ctx.push(
                FindingKind::Shape,
                i,
                None,
                None,
                None,
                "stratum index out of range or empty".into(),
            );
        }
    }
    if let Some(m) = &c.multiplicities {
        if m.len() != c.n_components || m.contains(&0) {
            ctx.push(
                FindingKind::Shape,
                &IndexSet::default(),
                None,
                None,
                None,
                "multiplicities must be positive, one per component".into(),
            );
        }
    }
    for ((i, k), per_deg) in &c.rest {
        if i.contains(*k) || *k >= c.n_components {
            ctx.push(
                FindingKind::Shape,
                i,
                Some(*k),
                None,
                None,
                "restriction index must lie outside the stratum".into(),
            );
            continue;
        }
        let t = i.with(*k);
        for (&d, m) in per_deg {
            let want = (c.dim(&t, d), c.dim(i, d));
            if m.shape() != want {
                ctx.push(
                    FindingKind::Shape,
                    i,
                    Some(*k),
                    None,
                    Some(d),
                    format!("restriction has shape {:?}, expected {:?}", m.shape(), want),
                );
            }
        }
    }
    for ((i, k), per_deg) in &c.gysin {
        if !i.contains(*k) {
            ctx.push(
                FindingKind::Shape,
                i,
                Some(*k),
                None,
                None,
                "Gysin index must lie inside the stratum".into(),
            );
            continue;
        }
        let t = i.without(*k);
        for (&d, m) in per_deg {
            let want = (c.dim(&t, d + 2), c.dim(i, d));
            if m.shape() != want {
                ctx.push(
                    FindingKind::Shape,
                    i,
                    Some(*k),
                    None,
                    Some(d),
                    format!("Gysin map has shape {:?}, expected {:?}", m.shape(), want),
                );
            }
        }
    }
    if let Some(cup) = &c.cup {
        for ((i, d1, d2), m) in cup {
            let want = (c.dim(i, d1 + d2), c.dim(i, *d1) * c.dim(i, *d2));
            if m.shape() != want {
                ctx.push(
                    FindingKind::Shape,
                    i,
                    None,
                    None,
                    Some(d1 + d2),
                    format!(
                        "cup tensor ({d1},{d2}) has shape {:?}, expected {:?}",
                        m.shape(),
                        want
                    ),
                );
            }
        }
    }
}

fn outside(c: &StrataComplex, i: &IndexSet) -> Vec<usize> {
    (0..c.n_components).filter(|&k| !i.contains(k)).collect()
}

fn check_rest_squares(ctx: &mut Ctx) {
    let c = ctx.c;
    for (i, g) in &c.strata {
        let out = outside(c, i);
        for d in g.degrees() {
            for (a, &k) in out.iter().enumerate() {
                for &l in &out[a + 1..] {
                    let lhs = &c.rest_mat(&i.with(k), l, d) * &c.rest_mat(i, k, d);
                    let rhs = &c.rest_mat(&i.with(l), k, d) * &c.rest_mat(i, l, d);
                    if lhs != rhs {
                        ctx.push(
                            FindingKind::RestRestSquare,
                            i,
                            Some(k),
                            Some(l),
                            Some(d),
                            String::new(),
                        );
                    }
                }
            }
        }
    }
}

fn check_gysin_squares(ctx: &mut Ctx) {
    let c = ctx.c;
    for (i, g) in &c.strata {
        if i.len() < 3 {
            continue;
        }
        for d in g.degrees() {
            let idx = i.indices();
            for (a, &k) in idx.iter().enumerate() {
                for &l in &idx[a + 1..] {
                    let lhs = &c.gysin_mat(&i.without(k), l, d + 2) * &c.gysin_mat(i, k, d);
                    let rhs = &c.gysin_mat(&i.without(l), k, d + 2) * &c.gysin_mat(i, l, d);
                    if lhs != rhs {
                        ctx.push(
                            FindingKind::GysinGysinSquare,
                            i,
                            Some(k),
                            Some(l),
                            Some(d),
                            String::new(),
                        );
                    }
                }
            }
        }
    }
}

fn check_mixed_squares(ctx: &mut Ctx) {
    let c = ctx.c;
    for (i, g) in &c.strata {
        if i.len() < 2 {
            continue;
        }
        for d in g.degrees() {
            for &k in i.indices() {
                for l in outside(c, i) {
                    let lhs = &c.rest_mat(&i.without(k), l, d + 2) * &c.gysin_mat(i, k, d);
                    let rhs = &c.gysin_mat(&i.with(l), k, d) * &c.rest_mat(i, l, d);
                    if lhs != rhs {
                        ctx.push(
                            FindingKind::MixedSquare,
                            i,
                            Some(k),
                            Some(l),
                            Some(d),
                            String::new(),
                        );
                    }
                }
            }
        }
    }
}

/// The degree +2 endomorphism `Σ_{v∉I} e_v g_v rest_v + Σ_{u∈I} e_u rest_u g_u` of `H^*(Y_I)`.
pub fn principal_fibre_operator(c: &StrataComplex, i: &IndexSet, d: u32) -> Mat {
    let mut acc = Mat::zeros(c.dim(i, d + 2), c.dim(i, d));
    for v in outside(c, i) {
        let t = &c.gysin_mat(&i.with(v), v, d) * &c.rest_mat(i, v, d);
        acc = &acc + &t.scale(&exactq::rat(c.multiplicity(v) as i64));
    }
    for &u in i.indices() {
        let t = &c.rest_mat(&i.without(u), u, d + 2) * &c.gysin_mat(i, u, d);
        acc = &acc + &t.scale(&exactq::rat(c.multiplicity(u) as i64));
    }
    acc
}

fn check_principal_fibre(ctx: &mut Ctx) {
    let c = ctx.c;
    for (i, g) in &c.strata {
        if i.len() < 2 {
            continue;
        }
        for d in g.degrees() {
            let p = principal_fibre_operator(c, i, d);
            if !p.is_zero() {
                ctx.push(
                    FindingKind::PrincipalFibre,
                    i,
                    None,
                    None,
                    Some(d),
                    format!("operator {p}"),
                );
            }
        }
    }
}

fn check_products_all(ctx: &mut Ctx) {
    let c = ctx.c;
    let cup = |i: &IndexSet, d1: u32, x: &[Rat], d2: u32, y: &[Rat]| c.cup_apply(i, d1, x, d2, y);
    for (i, g) in &c.strata {
        let degs: Vec<u32> = g.degrees().collect();
        for &d1 in &degs {
            for &d2 in &degs {
                if c.dim(i, d1 + d2) == 0 {
                    continue;
                }
                let present = c
                    .cup
                    .as_ref()
                    .is_some_and(|t| t.contains_key(&(i.clone(), d1, d2)));
                if !present {
                    ctx.push(
                        FindingKind::MissingCup,
                        i,
                        None,
                        None,
                        Some(d1 + d2),
                        format!("degrees ({d1},{d2})"),
                    );
                }
            }
        }
    }
    if ctx
        .out
        .iter()
        .any(|f| f.kind == FindingKind::MissingCup || f.kind == FindingKind::Shape)
    {
        return;
    }
    for (i, g) in &c.strata {
        let degs: Vec<u32> = g.degrees().collect();
        for &d1 in &degs {
            for &d2 in &degs {
                let (n1, n2) = (c.dim(i, d1), c.dim(i, d2));
                let sign = if (d1 * d2) % 2 == 0 {
                    exactq::one()
                } else {
                    -exactq::one()
                };
                'pairs: for a in 0..n1 {
                    for b in 0..n2 {
                        let x = basis_vec(n1, a);
                        let y = basis_vec(n2, b);
                        let xy = cup(i, d1, &x, d2, &y).expect("presence checked");
                        let yx = cup(i, d2, &y, d1, &x).expect("presence checked");
                        if xy != exactq::vec_scale(&yx, &sign) {
                            ctx.push(
                                FindingKind::GradedCommutativity,
                                i,
                                None,
                                None,
                                Some(d1 + d2),
                                format!("degrees ({d1},{d2}) basis ({a},{b})"),
                            );
                            break 'pairs;
                        }
                    }
                }
                for k in outside(c, i) {
                    let t = i.with(k);
                    if !c.strata.contains_key(&t) {
                        continue;
                    }
                    'ring: for a in 0..n1 {
                        for b in 0..n2 {
                            let x = basis_vec(n1, a);
                            let y = basis_vec(n2, b);
                            let lhs = c.restrict(i, k, d1 + d2, &cup(i, d1, &x, d2, &y).unwrap());
                            let rhs = cup(
                                &t,
                                d1,
                                &c.restrict(i, k, d1, &x),
                                d2,
                                &c.restrict(i, k, d2, &y),
                            )
                            .unwrap();
                            if lhs != rhs {
                                ctx.push(
                                    FindingKind::RestNotMultiplicative,
                                    i,
                                    Some(k),
                                    None,
                                    Some(d1 + d2),
                                    format!("degrees ({d1},{d2}) basis ({a},{b})"),
                                );
                                break 'ring;
                            }
                        }
                    }
                }
                if i.len() < 2 {
                    continue;
                }
                for &k in i.indices() {
                    let base = i.without(k);
                    let nb = c.dim(&base, d2);
                    'proj: for a in 0..n1 {
                        for b in 0..nb {
                            let x = basis_vec(n1, a);
                            let y = basis_vec(nb, b);
                            let ry = c.restrict(&base, k, d2, &y);
                            let lhs =
                                c.gysin_apply(i, k, d1 + d2, &cup(i, d1, &x, d2, &ry).unwrap());
                            let rhs =
                                cup(&base, d1 + 2, &c.gysin_apply(i, k, d1, &x), d2, &y).unwrap();
                            if lhs != rhs {
                                ctx.push(
                                    FindingKind::ProjectionFormula,
                                    i,
                                    Some(k),
                                    None,
                                    Some(d1),
                                    format!(
                                        "degrees ({d1},{d2}) basis ({a},{b}) lhs {} rhs {}",
                                        exactq::fmt_vec(&lhs),
                                        exactq::fmt_vec(&rhs)
                                    ),
                                );
                                break 'proj;
                            }
                        }
                    }
                    'excess: for a in 0..n1 {
                        for b in 0..n2 {
                            let x = basis_vec(n1, a);
                            let y = basis_vec(n2, b);
                            let self_int = |deg: u32, v: &[Rat]| {
                                c.restrict(&base, k, deg + 2, &c.gysin_apply(i, k, deg, v))
                            };
                            let lhs = self_int(d1 + d2, &cup(i, d1, &x, d2, &y).unwrap());
                            let rhs = cup(i, d1, &x, d2 + 2, &self_int(d2, &y)).unwrap();
                            if !vec_is_zero(&vec_sub(&lhs, &rhs)) {
                                ctx.push(
                                    FindingKind::ExcessIntersection,
                                    i,
                                    Some(k),
                                    None,
                                    Some(d1 + d2),
                                    format!("degrees ({d1},{d2}) basis ({a},{b})"),
                                );
                                break 'excess;
                            }
                        }
                    }
                }
            }
        }
    }
}

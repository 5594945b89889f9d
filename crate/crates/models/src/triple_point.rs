//! The resolved self-product of a degeneration of surfaces acquiring one triple point.
//!
//! Nine components `T1..T9`; the six points of the total fibre are the quintuple strata
//! `T_{ab789}`, and `T789` is `P^1 × P^1` blown up in two points. The intersection functional
//! is pinned down by the point conditions and by the Néron–Severi pairing on `T789`, where the
//! curves `T_{k789}` carry fixed classes. Three extra degree-one generators `Φ12, Φ13, Φ23`
//! represent the pullbacks of point classes of the diagonal curves `Y_ij`; they pair to one
//! with the diagonal surfaces over `Y_ij` and to zero with everything supported on `T789`.

use std::collections::{BTreeMap, BTreeSet};

use exactq::{rat, solve_affine, Mat, Rat};
use strata::{IndexSet, StrataComplex};

use crate::product::{
    iset1, table1, CandidateSpace, DualTable, ModelParts, ProductResolutionModel, PullbackTable,
};
use crate::ring::{
    face_monomial, poly_add, poly_mul, poly_of, poly_scale, ring_complex, IntersectionRing, Poly,
    Preferred, RingSpec,
};
use crate::ModelError;

/// The lattice spanned by `F1, F2, E1, E2` on `T789`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NSLattice {
    pub labels: [&'static str; 4],
    pub gram: [[i64; 4]; 4],
}

impl Default for NSLattice {
    fn default() -> Self {
        NSLattice {
            labels: ["F1", "F2", "E1", "E2"],
            gram: [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]],
        }
    }
}

impl NSLattice {
    pub fn pair(&self, a: &[i64; 4], b: &[i64; 4]) -> i64 {
        (0..4)
            .map(|i| (0..4).map(|j| a[i] * self.gram[i][j] * b[j]).sum::<i64>())
            .sum()
    }

    pub fn gram_mat(&self) -> Mat {
        let rows: Vec<&[i64]> = self.gram.iter().map(|r| r.as_slice()).collect();
        Mat::from_i64(&rows)
    }

    /// Classes of the curves `T_{k789}`, `k = 1..6`.
    pub fn curve_classes(&self) -> [[i64; 4]; 6] {
        [
            [0, 0, 0, 1],
            [1, 0, 0, -1],
            [0, 0, 1, 0],
            [0, 1, -1, 0],
            [1, 0, -1, 0],
            [0, 1, 0, -1],
        ]
    }
}

/// The six points of the total fibre.
pub const POINTS: [&str; 6] = ["12789", "16789", "24789", "34789", "35789", "56789"];

/// Diagonal surfaces: label, surface, and the component they meet.
pub const DIAGONALS: [(&str, &str, &str, &str); 6] = [
    ("δ̃12", "178", "9", "12"),
    ("δ12", "378", "9", "12"),
    ("δ̃13", "279", "8", "13"),
    ("δ13", "579", "8", "13"),
    ("δ̃23", "489", "7", "23"),
    ("δ23", "689", "7", "23"),
];

const EXTRA: [&str; 3] = ["Φ12", "Φ13", "Φ23"];

fn p1_table() -> PullbackTable {
    table1(&[
        (
            "12",
            &[
                ("18", 1),
                ("28", 1),
                ("37", -1),
                ("47", -1),
                ("78", 1),
                ("24", 1),
            ],
        ),
        (
            "13",
            &[
                ("19", 1),
                ("29", 1),
                ("57", -1),
                ("67", -1),
                ("79", 1),
                ("16", 1),
            ],
        ),
        (
            "23",
            &[
                ("39", 1),
                ("49", 1),
                ("58", -1),
                ("68", -1),
                ("89", 1),
                ("35", 1),
            ],
        ),
        (
            "123",
            &[
                ("189", 1),
                ("249", 1),
                ("289", 1),
                ("379", -1),
                ("479", -1),
                ("789", 1),
                ("168", -1),
                ("357", 1),
                ("578", 1),
                ("678", 1),
            ],
        ),
    ])
}

fn p2_table() -> PullbackTable {
    table1(&[
        (
            "12",
            &[
                ("17", -1),
                ("38", 1),
                ("58", 1),
                ("67", -1),
                ("78", 1),
                ("56", 1),
            ],
        ),
        (
            "13",
            &[
                ("27", -1),
                ("39", 1),
                ("47", -1),
                ("59", 1),
                ("79", 1),
                ("34", 1),
            ],
        ),
        (
            "23",
            &[
                ("19", 1),
                ("28", -1),
                ("48", -1),
                ("69", 1),
                ("89", 1),
                ("12", 1),
            ],
        ),
        (
            "123",
            &[
                ("179", -1),
                ("389", 1),
                ("569", 1),
                ("589", 1),
                ("679", -1),
                ("789", 1),
                ("127", 1),
                ("278", 1),
                ("348", -1),
                ("478", 1),
            ],
        ),
    ])
}

/// Cofactors on `T789` for `F1, F2, E1, E2`.
fn ns_cofactors() -> [(&'static str, Poly); 4] {
    [
        ("F1", poly_of(&[(&[0], 1), (&[1], 1)])),
        ("F2", poly_of(&[(&[2], 1), (&[3], 1)])),
        ("E1", poly_of(&[(&[2], 1)])),
        ("E2", poly_of(&[(&[0], 1)])),
    ]
}

/// Point conditions and the pairing on `T789`. The normal classes of `T789` in `T7` and `T8`
/// are taken to be zero, so the one in `T9` is minus the sum of the six curves.
fn divisor_conditions(ns: &NSLattice) -> Vec<(Poly, Rat)> {
    let mut conds: Vec<(Poly, Rat)> = POINTS
        .iter()
        .map(|p| (face_monomial(&iset1(p)), rat(1)))
        .collect();
    let curves = ns.curve_classes();
    let mut cls: Vec<[i64; 4]> = curves.to_vec();
    let mut sum = [0i64; 4];
    for c in &curves {
        for t in 0..4 {
            sum[t] += c[t];
        }
    }
    cls.push([0; 4]);
    cls.push([0; 4]);
    cls.push(sum.map(|x| -x));
    for u in 0..9 {
        for v in u..9 {
            let mut m = vec![6, 7, 8, u, v];
            m.sort_unstable();
            let mut p = Poly::new();
            p.insert(m, Rat::from_integer(1.into()));
            conds.push((p, rat(ns.pair(&cls[u], &cls[v]))));
        }
    }
    conds
}

fn cells() -> Vec<IndexSet> {
    POINTS.iter().map(|p| iset1(p)).collect()
}

/// Solves for the diagonal surface class on `surface`: restriction one to the curve cut by
/// `meet`, zero on the other curves of the surface.
fn diagonal_cofactor(
    ring: &IntersectionRing,
    surface: &IndexSet,
    meet: usize,
) -> Result<Poly, ModelError> {
    let basis = ring.piece_basis(surface, 1, &[], false);
    let curves: Vec<usize> = (0..ring.n_div)
        .filter(|&v| !surface.contains(v) && ring.faces.contains(&surface.with(v)))
        .collect();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for &v in &curves {
        let dv = poly_of(&[(&[v], 1)]);
        rows.push(
            basis
                .cofactors
                .iter()
                .map(|q| ring.integrate(&poly_mul(&poly_mul(&face_monomial(surface), q), &dv)))
                .collect::<Vec<Rat>>(),
        );
        rhs.push(rat(i64::from(v == meet)));
    }
    let a = Mat::from_rows(rows, basis.cofactors.len())
        .map_err(|e| ModelError::Construction(e.to_string()))?;
    let x = solve_affine(&a, &rhs).particular.ok_or_else(|| {
        ModelError::Construction(format!("no diagonal class on T{}", surface.tag()))
    })?;
    let mut q = Poly::new();
    for (c, b) in x.iter().zip(&basis.cofactors) {
        q = poly_add(&q, &poly_scale(b, c));
    }
    Ok(q)
}

/// Two curve-meeting surfaces at a point: the base fibre.
fn surface_base() -> Result<StrataComplex, ModelError> {
    let spec = RingSpec {
        n_div: 3,
        extra_names: vec![],
        cells: vec![iset1("123")],
        top: 3,
        conditions: vec![(face_monomial(&iset1("123")), rat(1))],
    };
    let ring = IntersectionRing::solve(&spec)?;
    Ok(ring_complex(&ring, &Preferred::new()).0)
}

/// The triple-point model with its candidate spaces for `N` and `N^2`.
pub fn triple_point_product_model() -> Result<ProductResolutionModel, ModelError> {
    let ns = NSLattice::default();
    let conds = divisor_conditions(&ns);
    let divisor_ring = IntersectionRing::solve(&RingSpec {
        n_div: 9,
        extra_names: vec![],
        cells: cells(),
        top: 5,
        conditions: conds.clone(),
    })?;

    let mut diag: Vec<(&str, IndexSet, Poly, usize)> = Vec::new();
    for (label, s, meet, over) in DIAGONALS {
        let surface = iset1(s);
        let q = diagonal_cofactor(&divisor_ring, &surface, iset1(meet).indices()[0])?;
        let e = EXTRA
            .iter()
            .position(|x| x.trim_start_matches('Φ') == over)
            .expect("known diagonal");
        diag.push((label, surface, q, e));
    }

    let mut full = conds;
    for (_, surface, q, e) in &diag {
        let phi = poly_of(&[(&[9 + e], 1)]);
        full.push((
            poly_mul(&poly_mul(&face_monomial(surface), q), &phi),
            rat(1),
        ));
    }
    for e in 0..3 {
        for v in 0..9 {
            let mut m = vec![6, 7, 8, v, 9 + e];
            m.sort_unstable();
            let mut p = Poly::new();
            p.insert(m, rat(1));
            full.push((p, rat(0)));
        }
    }
    let ring = IntersectionRing::solve(&RingSpec {
        n_div: 9,
        extra_names: EXTRA.iter().map(|s| s.to_string()).collect(),
        cells: cells(),
        top: 5,
        conditions: full,
    })?;
    for (m, v) in &divisor_ring.integrals {
        if ring.integral(m) != *v {
            return Err(ModelError::Construction(
                "extra generators changed the divisor functional".into(),
            ));
        }
    }

    let t789 = iset1("789");
    let mut preferred = Preferred::new();
    preferred.insert(
        (t789.clone(), 1),
        ns_cofactors()
            .iter()
            .map(|(l, p)| (l.to_string(), p.clone()))
            .collect(),
    );
    for (label, surface, q, _) in &diag {
        preferred.insert((surface.clone(), 1), vec![(label.to_string(), q.clone())]);
    }
    let (total, bases) = ring_complex(&ring, &preferred);
    let base = surface_base()?;

    let p2 = p2_table();
    let mut p2_dual: DualTable = BTreeMap::new();
    for (y, ts) in &p2 {
        let cof = |c: &Rat| -> Poly {
            if y.len() == 2 {
                let e = EXTRA
                    .iter()
                    .position(|x| x.trim_start_matches('Φ') == y.tag())
                    .expect("diagonal label");
                poly_scale(&poly_of(&[(&[9 + e], 1)]), c)
            } else {
                poly_scale(&poly_of(&[(&[], 1)]), c)
            }
        };
        p2_dual.insert(
            y.clone(),
            ts.iter().map(|(t, c)| (t.clone(), cof(c))).collect(),
        );
    }

    let mut proper: BTreeSet<IndexSet> = POINTS.iter().map(|p| iset1(p)).collect();
    proper.insert(t789.clone());
    for k in 1..=6 {
        proper.insert(iset1(&format!("{k}789")));
    }
    let mut stratum_notes = BTreeMap::new();
    for (label, s, meet, over) in DIAGONALS {
        stratum_notes.insert(
            iset1(s),
            format!("carries {label}, lying over the diagonal of Y{over}, meeting T{meet}"),
        );
    }
    stratum_notes.insert(
        t789.clone(),
        "P1 x P1 blown up at two points; H^2 basis F1, F2, E1, E2".to_string(),
    );
    let notes = vec![
        "normal classes of T789: zero in T7 and T8, minus the sum of the six curves in T9".to_string(),
        "p2 pullback of the point class of Y_ij is represented by the extra generator of that diagonal".to_string(),
    ];

    let mut m = ProductResolutionModel::assemble(ModelParts {
        name: "triple-point".to_string(),
        base,
        total,
        total_ring: ring,
        total_bases: bases,
        base_dim: 2,
        rel_dim: 2,
        p1_table: p1_table(),
        p2_table: p2,
        p2_dual,
        proper,
        stratum_notes,
        notes,
    })?;

    let slot = (-2, 4);
    let order = ["178", "279", "378", "489", "579", "689"];
    let mut labels = Vec::new();
    let mut columns = Vec::new();
    for s in order {
        labels.push(format!("a_T{s}"));
        columns.push(basis_column(&m, slot, &iset1(s), 0)?);
    }
    for (k, l) in ["x", "y", "z", "w"].iter().enumerate() {
        labels.push(l.to_string());
        columns.push(basis_column(&m, slot, &t789, k)?);
    }
    m.candidates.insert(
        1,
        CandidateSpace {
            slot,
            labels,
            columns,
            n_eliminate: 6,
        },
    );

    let slot2 = (-4, 4);
    let mut labels = Vec::new();
    let mut columns = Vec::new();
    for p in POINTS {
        labels.push(format!("b_T{p}"));
        columns.push(basis_column(&m, slot2, &iset1(p), 0)?);
    }
    m.candidates.insert(
        2,
        CandidateSpace {
            slot: slot2,
            labels,
            columns,
            n_eliminate: 0,
        },
    );
    Ok(m)
}

fn basis_column(
    m: &ProductResolutionModel,
    slot: (i32, i32),
    s: &IndexSet,
    k: usize,
) -> Result<Vec<Rat>, ModelError> {
    m.total_basis_vector(slot.0, slot.1, s, k).ok_or_else(|| {
        ModelError::Construction(format!(
            "no basis class {k} on T{} in slot {slot:?}",
            s.tag()
        ))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ns_pairings_of_curves() {
        let ns = NSLattice::default();
        let c = ns.curve_classes();
        assert_eq!(ns.pair(&c[0], &c[0]), -1);
        assert_eq!(ns.pair(&c[1], &c[1]), -1);
        assert_eq!(ns.pair(&c[0], &c[1]), 1);
        assert_eq!(ns.pair(&c[1], &c[4]), 0);
    }
}

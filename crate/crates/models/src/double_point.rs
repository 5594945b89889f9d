//! The resolved self-product of a degeneration of curves acquiring one double point,
//! and two alternative resolutions.
//!
//! The total fibre is modelled by its compactified strata: every component, curve and point
//! is a smooth projective variety whose cohomology is generated by the divisor classes.
//! Only the strata listed in `proper` are compact in the geometric situation.

use std::collections::{BTreeMap, BTreeSet};

use exactq::rat;
use strata::IndexSet;

use crate::product::{
    iset1, table1, CandidateSpace, DualTable, ModelParts, ProductResolutionModel, PullbackTable,
};
use crate::ring::{face_monomial, ring_complex, IntersectionRing, Poly, Preferred, RingSpec};
use crate::ModelError;

/// Which resolution of the double point of `X ×_S X` is modelled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DoublePointVariant {
    /// Blow-up of both diagonal planes, exceptional divisor last (`T_5`).
    Standard,
    /// The same resolution with the exceptional divisor numbered first (`T_1`).
    ExceptionalFirst,
    /// A single blow-up along `z_1 = w_1 = 0`, exceptional divisor last (`T_4`).
    SingleBlowup,
}

impl DoublePointVariant {
    pub fn name(self) -> &'static str {
        match self {
            DoublePointVariant::Standard => "double-point",
            DoublePointVariant::ExceptionalFirst => "double-point:exceptional-first",
            DoublePointVariant::SingleBlowup => "double-point:single-blowup",
        }
    }
}

fn cells1(v: &[&str]) -> Vec<IndexSet> {
    v.iter().map(|s| iset1(s)).collect()
}

/// Two curves meeting in one point.
pub(crate) fn curve_base() -> Result<(strata::StrataComplex, IntersectionRing), ModelError> {
    let spec = RingSpec {
        n_div: 2,
        extra_names: vec![],
        cells: cells1(&["12"]),
        top: 2,
        conditions: vec![(face_monomial(&iset1("12")), rat(1))],
    };
    let ring = IntersectionRing::solve(&spec)?;
    let (c, _) = ring_complex(&ring, &Preferred::new());
    Ok((c, ring))
}

fn point_conditions(points: &[IndexSet]) -> Vec<(Poly, exactq::Rat)> {
    points.iter().map(|p| (face_monomial(p), rat(1))).collect()
}

struct VariantData {
    n: usize,
    cells: Vec<IndexSet>,
    proper: Vec<&'static str>,
    p1: PullbackTable,
    p2: PullbackTable,
    note: &'static str,
}

fn variant_data(v: DoublePointVariant) -> VariantData {
    match v {
        DoublePointVariant::Standard => VariantData {
            n: 5,
            cells: cells1(&["125", "135", "245", "345"]),
            proper: vec!["5", "15", "25", "35", "45"],
            p1: table1(&[("12", &[("15", 1), ("25", 1), ("35", -1), ("45", -1), ("13", 1), ("24", 1)])]),
            p2: table1(&[("12", &[("15", 1), ("25", -1), ("35", 1), ("45", -1), ("12", 1), ("34", 1)])]),
            note: "components T1 = (Y1xY1)~, T2 = (Y1xY2)~, T3 = (Y2xY1)~, T4 = (Y2xY2)~, T5 exceptional",
        },
        DoublePointVariant::ExceptionalFirst => VariantData {
            n: 5,
            cells: cells1(&["123", "124", "135", "145"]),
            proper: vec!["1", "12", "13", "14", "15"],
            p1: table1(&[("12", &[("12", -1), ("13", -1), ("14", 1), ("15", 1), ("24", 1), ("35", 1)])]),
            p2: table1(&[("12", &[("12", -1), ("13", 1), ("14", -1), ("15", 1), ("23", 1), ("45", 1)])]),
            note: "components T1 exceptional, T2 = (Y1xY1)~, T3 = (Y1xY2)~, T4 = (Y2xY1)~, T5 = (Y2xY2)~",
        },
        DoublePointVariant::SingleBlowup => VariantData {
            n: 4,
            cells: cells1(&["234", "134"]),
            proper: vec!["4", "34"],
            p1: table1(&[("12", &[("24", -1), ("34", -1), ("13", 1)])]),
            p2: table1(&[("12", &[("34", -1), ("23", 1), ("14", -1)])]),
            note: "components T1 = (Y1xY2)~, T2 = (Y2xY1)~, T3 = (Y2xY2)~, T4 = (Y1xY1)~ blown up along z1 = w1 = 0",
        },
    }
}

/// Builds the model for one resolution. The candidate space for `N` is `H^0` of the points.
pub fn double_point_variant(v: DoublePointVariant) -> Result<ProductResolutionModel, ModelError> {
    let data = variant_data(v);
    let points: Vec<IndexSet> = data.cells.clone();
    let spec = RingSpec {
        n_div: data.n,
        extra_names: vec![],
        cells: data.cells.clone(),
        top: 3,
        conditions: point_conditions(&points),
    };
    let ring = IntersectionRing::solve(&spec)?;
    let (total, bases) = ring_complex(&ring, &Preferred::new());
    let (base, _) = curve_base()?;
    let p2_dual: DualTable = data
        .p2
        .iter()
        .map(|(y, ts)| {
            (
                y.clone(),
                ts.iter()
                    .map(|(t, c)| (t.clone(), scalar_poly(c)))
                    .collect(),
            )
        })
        .collect();
    let mut proper: BTreeSet<IndexSet> = data.proper.iter().map(|s| iset1(s)).collect();
    proper.extend(points.iter().cloned());
    let stratum_notes: BTreeMap<IndexSet, String> = points
        .iter()
        .map(|p| {
            (
                p.clone(),
                "maps isomorphically onto the diagonal point of Y12 x Y12".to_string(),
            )
        })
        .collect();
    let mut m = ProductResolutionModel::assemble(ModelParts {
        name: v.name().to_string(),
        base,
        total,
        total_ring: ring,
        total_bases: bases,
        base_dim: 1,
        rel_dim: 1,
        p1_table: data.p1,
        p2_table: data.p2,
        p2_dual,
        proper,
        stratum_notes,
        notes: vec![data.note.to_string()],
    })?;
    let slot = (-2, 2);
    let mut labels = Vec::new();
    let mut columns = Vec::new();
    for p in &points {
        labels.push(format!("a_T{}", p.tag()));
        columns.push(
            m.total_basis_vector(slot.0, slot.1, p, 0)
                .ok_or_else(|| ModelError::Construction(format!("no H^0 on T{}", p.tag())))?,
        );
    }
    m.candidates.insert(
        1,
        CandidateSpace {
            slot,
            labels,
            columns,
            n_eliminate: 0,
        },
    );
    Ok(m)
}

/// The standard resolution.
pub fn double_point_product_model() -> Result<ProductResolutionModel, ModelError> {
    double_point_variant(DoublePointVariant::Standard)
}

fn scalar_poly(c: &exactq::Rat) -> Poly {
    let mut p = Poly::new();
    p.insert(vec![], c.clone());
    p
}

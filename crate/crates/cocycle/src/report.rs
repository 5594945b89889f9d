//! Reduced relations, the E2 class modulo boundaries, and re-verification of the diagram.

use std::fmt;

use exactq::{fmt_rat, rank_of, rref, vec_is_zero, AffineSolutionSet, Mat, Rat};
use models::product::ProductResolutionModel;
use num_traits::{One, Signed, Zero};

use crate::problem::{correspondence_image, nu_power_image, CorrespondenceProblem};
use crate::CocycleError;

/// `Σ coeff · unknown = rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(String, Rat)>,
    pub rhs: Rat,
}

impl Relation {
    fn from_row(labels: &[String], coeffs: &[Rat], rhs: &Rat) -> Relation {
        let terms = labels
            .iter()
            .zip(coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(l, c)| (l.clone(), c.clone()))
            .collect();
        Relation {
            terms,
            rhs: rhs.clone(),
        }
    }

    /// Coefficient of `label`, zero if absent.
    pub fn coeff(&self, label: &str) -> Rat {
        self.terms
            .iter()
            .find(|(l, _)| l == label)
            .map_or_else(Rat::zero, |(_, c)| c.clone())
    }

    /// True when `other` describes the same hyperplane, i.e. differs by a nonzero factor.
    pub fn same_hyperplane(&self, other: &Relation) -> bool {
        let Some((l, c)) = self.terms.first() else {
            return other.terms.is_empty() && self.rhs == other.rhs;
        };
        let oc = other.coeff(l);
        if oc.is_zero() {
            return false;
        }
        let f = oc / c;
        self.terms.len() == other.terms.len()
            && self.terms.iter().all(|(l, c)| other.coeff(l) == c * &f)
            && other.rhs == &self.rhs * &f
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0 = {}", fmt_rat(&self.rhs));
        }
        for (k, (l, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "\u{2212}")?,
                (0, false) => {}
                (_, true) => write!(f, " \u{2212} ")?,
                (_, false) => write!(f, " + ")?,
            }
            if a.is_one() {
                write!(f, "{l}")?;
            } else {
                write!(f, "{}\u{b7}{l}", fmt_rat(&a))?;
            }
        }
        let rhs = if self.rhs.is_negative() {
            format!("\u{2212}{}", fmt_rat(&self.rhs.abs()))
        } else {
            fmt_rat(&self.rhs)
        };
        write!(f, " = {rhs}")
    }
}

/// Relations left after eliminating the leading `n_eliminate` unknowns in label order.
///
/// With nothing to eliminate, these are the rows of the system that are independent of the
/// rows before them, unchanged.
pub fn reduced_relations(p: &CorrespondenceProblem<'_>) -> Vec<Relation> {
    let n = p.unknowns.len();
    let a = p.matrix();
    let b = p.rhs();
    if p.n_eliminate == 0 {
        let mut kept: Vec<Vec<Rat>> = Vec::new();
        let mut out = Vec::new();
        for (row, rhs) in p.rows.iter().zip(&b) {
            let mut aug = row.coeffs.clone();
            aug.push(rhs.clone());
            let mut trial = kept.clone();
            trial.push(aug.clone());
            if rank_of(&trial, n + 1) > kept.len() {
                kept.push(aug);
                out.push(Relation::from_row(&p.unknowns, &row.coeffs, rhs));
            }
        }
        return out;
    }
    let aug = a.hstack(&Mat::column(&b)).expect("row counts agree");
    let (r, pivots) = rref(&aug);
    pivots
        .iter()
        .enumerate()
        .filter(|(_, &c)| c >= p.n_eliminate && c < n)
        .map(|(row, _)| {
            let coeffs: Vec<Rat> = (0..n).map(|j| r.get(row, j).clone()).collect();
            Relation::from_row(&p.unknowns, &coeffs, r.get(row, n))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct E2ClassReport {
    /// Rank of the boundaries coming from proper strata.
    pub image_rank: usize,
    /// Dimension of the affine solution family.
    pub null_dim: usize,
    /// Dimension of the solution family modulo boundaries.
    pub ambiguity: usize,
    /// The particular solution as a slot vector.
    pub representative: Vec<Rat>,
    pub representative_is_boundary: bool,
}

/// Reduces the solution family modulo the image of `d1` from summands on proper strata.
pub fn e2_class(
    p: &CorrespondenceProblem<'_>,
    s: &AffineSolutionSet,
) -> Result<E2ClassReport, CocycleError> {
    let x = s.particular.as_ref().ok_or(CocycleError::Infeasible)?;
    let m = p.model;
    let (r, n) = p.slot;
    let d = m.total_page.d1_at(r + 1, n - 1);
    let src = m.total_page.slot(r + 1, n - 1);
    let mut image: Vec<Vec<Rat>> = Vec::new();
    for b in src.blocks.iter().filter(|b| m.proper.contains(&b.stratum)) {
        for a in 0..b.dim {
            let col: Vec<Rat> = (0..d.rows())
                .map(|row| d.get(row, b.offset + a).clone())
                .collect();
            image.push(col);
        }
    }
    let len = m.total_page.dim(r, n);
    let image_rank = rank_of(&image, len);
    let dirs: Vec<Vec<Rat>> = s.nullspace_basis.iter().map(|v| p.class_of(v)).collect();
    let mut both = image.clone();
    both.extend(dirs);
    let ambiguity = rank_of(&both, len) - image_rank;
    let representative = p.class_of(x);
    let mut with_rep = image.clone();
    with_rep.push(representative.clone());
    let representative_is_boundary = rank_of(&with_rep, len) == image_rank;
    Ok(E2ClassReport {
        image_rank,
        null_dim: s.nullspace_basis.len(),
        ambiguity,
        representative,
        representative_is_boundary,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareCheck {
    pub source: String,
    pub image: Vec<Rat>,
    pub expected: Vec<Rat>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramReport {
    pub squares: Vec<SquareCheck>,
    /// `d1` of the class vanishes.
    pub closed: bool,
    pub note: Option<String>,
}

impl DiagramReport {
    pub fn pass(&self) -> bool {
        self.note.is_none() && self.closed && self.squares.iter().all(|s| s.pass)
    }
}

/// Re-checks every square of the correspondence diagram and `d1`-closedness for unknown values `x`.
pub fn verify_diagram(
    m: &ProductResolutionModel,
    power: usize,
    x: &[Rat],
) -> Result<DiagramReport, CocycleError> {
    let Some(cand) = m.candidates.get(&power) else {
        return Ok(DiagramReport {
            squares: Vec::new(),
            closed: true,
            note: Some(format!(
                "MissingStrata: {} has no candidate space for power {power}",
                m.name
            )),
        });
    };
    let dim = m.total_page.dim(cand.slot.0, cand.slot.1);
    let mut class = vec![Rat::zero(); dim];
    for (col, a) in cand.columns.iter().zip(x) {
        for (e, c) in class.iter_mut().zip(col) {
            *e += a * c;
        }
    }
    let closed = vec_is_zero(&m.total_page.d1_at(cand.slot.0, cand.slot.1).mul_vec(&class));
    let i = power as i32;
    let mut squares = Vec::new();
    for (s, label) in m.base_slot_labels(i, i).iter().enumerate() {
        let image = correspondence_image(m, power, &class, cand.slot, s)?;
        let expected = nu_power_image(m, power, s);
        let pass = image == expected;
        squares.push(SquareCheck {
            source: label.clone(),
            image,
            expected,
            pass,
        });
    }
    Ok(DiagramReport {
        squares,
        closed,
        note: None,
    })
}

/// `(p_2)_*([N^i] · p_1^* v)` for the `src`-th source class with every unknown left indeterminate:
/// for each unknown, the image of its class.
pub fn symbolic_pushforward(
    m: &ProductResolutionModel,
    power: usize,
    src: usize,
) -> Result<Vec<(String, Vec<Rat>)>, CocycleError> {
    let cand = m
        .candidates
        .get(&power)
        .ok_or_else(|| CocycleError::MissingStrata {
            model: m.name.clone(),
            power,
        })?;
    cand.labels
        .iter()
        .zip(&cand.columns)
        .map(|(l, c)| {
            Ok((
                l.clone(),
                correspondence_image(m, power, c, cand.slot, src)?,
            ))
        })
        .collect()
}

/// Matrix of `v ↦ (p_2)_*(c ∗ p_1^* v)` from base slot `(i, i)` to `(-i, i)`, for the candidate
/// with unknown values `x`. Classes of different resolutions are identified when these agree.
pub fn correspondence_action(
    m: &ProductResolutionModel,
    power: usize,
    x: &[Rat],
) -> Result<Mat, CocycleError> {
    let cand = m
        .candidates
        .get(&power)
        .ok_or_else(|| CocycleError::MissingStrata {
            model: m.name.clone(),
            power,
        })?;
    let dim = m.total_page.dim(cand.slot.0, cand.slot.1);
    let mut class = vec![Rat::zero(); dim];
    for (col, a) in cand.columns.iter().zip(x) {
        for (e, c) in class.iter_mut().zip(col) {
            *e += a * c;
        }
    }
    let i = power as i32;
    let cols: Vec<Vec<Rat>> = (0..m.base_page.dim(i, i))
        .map(|s| correspondence_image(m, power, &class, cand.slot, s))
        .collect::<Result<_, _>>()?;
    let rows = m.base_page.dim(-i, i);
    let mut a = Mat::zeros(rows, cols.len());
    for (j, col) in cols.iter().enumerate() {
        for (r, v) in col.iter().enumerate() {
            a.set(r, j, v.clone());
        }
    }
    Ok(a)
}

/// Matrix of `N^i` from base slot `(i, i)` to `(-i, i)`.
pub fn nu_power_matrix(m: &ProductResolutionModel, power: usize) -> Mat {
    let i = power as i32;
    let cols: Vec<Vec<Rat>> = (0..m.base_page.dim(i, i))
        .map(|s| nu_power_image(m, power, s))
        .collect();
    let mut a = Mat::zeros(m.base_page.dim(-i, i), cols.len());
    for (j, col) in cols.iter().enumerate() {
        for (r, v) in col.iter().enumerate() {
            a.set(r, j, v.clone());
        }
    }
    a
}

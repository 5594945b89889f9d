//! The text form of a strata complex.
//!
//! A document is TOML. Component indices are one-based, as in printed labels; rationals are
//! strings `"p"` or `"p/q"`. The full grammar is in `docs/complex_document.md`.

use std::collections::BTreeMap;
use std::fmt::Write;
use std::ops::Range;

use exactq::{fmt_rat, parse_rat, Mat, Rat};
use serde::Deserialize;
use strata::{GradedSpace, IndexSet, StrataComplex};
use thiserror::Error;
use toml::Spanned;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocumentError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("schema error at line {line} in {field}: {message}")]
    Schema {
        line: usize,
        field: String,
        message: String,
    },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    schema_version: Spanned<String>,
    n_components: usize,
    #[serde(default)]
    multiplicities: Option<Spanned<Vec<u64>>>,
    #[serde(default)]
    strata: Vec<Spanned<StratumEntry>>,
    #[serde(default)]
    rest_maps: Vec<Spanned<MapEntry>>,
    #[serde(default)]
    gysin_maps: Vec<Spanned<MapEntry>>,
    #[serde(default)]
    cup: Option<Vec<Spanned<CupEntry>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct StratumEntry {
    indices: Vec<usize>,
    dims: BTreeMap<String, usize>,
    #[serde(default)]
    labels: BTreeMap<String, Vec<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MapEntry {
    stratum: Vec<usize>,
    index: usize,
    degree: u32,
    matrix: Vec<Vec<Spanned<String>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CupEntry {
    stratum: Vec<usize>,
    deg1: u32,
    deg2: u32,
    tensor: Vec<Vec<Spanned<String>>>,
}

/// One-based line and column of a byte offset.
fn position(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.chars().rev().take_while(|&c| c != '\n').count() + 1;
    (line, column)
}

struct Ctx<'a> {
    text: &'a str,
}

impl Ctx<'_> {
    fn schema(&self, span: Range<usize>, field: String, message: String) -> DocumentError {
        DocumentError::Schema {
            line: position(self.text, span.start).0,
            field,
            message,
        }
    }

    fn index_set(
        &self,
        span: &Range<usize>,
        field: &str,
        v: &[usize],
        n: usize,
    ) -> Result<IndexSet, DocumentError> {
        if v.is_empty() {
            return Err(self.schema(span.clone(), field.into(), "empty index set".into()));
        }
        if let Some(bad) = v.iter().find(|&&i| i == 0 || i > n) {
            return Err(self.schema(
                span.clone(),
                field.into(),
                format!("component {bad} is outside 1..={n}"),
            ));
        }
        let zero_based: Vec<usize> = v.iter().map(|i| i - 1).collect();
        IndexSet::from_strict(zero_based).ok_or_else(|| {
            self.schema(
                span.clone(),
                field.into(),
                "indices must be strictly increasing".into(),
            )
        })
    }

    fn degree(&self, span: &Range<usize>, field: &str, key: &str) -> Result<u32, DocumentError> {
        key.parse().map_err(|_| {
            self.schema(
                span.clone(),
                field.into(),
                format!("degree key `{key}` is not a non-negative integer"),
            )
        })
    }

    fn matrix(
        &self,
        span: &Range<usize>,
        field: &str,
        rows: &[Vec<Spanned<String>>],
        shape: (usize, usize),
    ) -> Result<Mat, DocumentError> {
        if rows.len() != shape.0 {
            return Err(self.schema(
                span.clone(),
                field.into(),
                format!("expected {} rows, found {}", shape.0, rows.len()),
            ));
        }
        let mut out: Vec<Vec<Rat>> = Vec::with_capacity(rows.len());
        for (r, row) in rows.iter().enumerate() {
            if row.len() != shape.1 {
                return Err(self.schema(
                    span.clone(),
                    field.into(),
                    format!(
                        "row {} has {} entries, expected {}",
                        r + 1,
                        row.len(),
                        shape.1
                    ),
                ));
            }
            let mut parsed = Vec::with_capacity(row.len());
            for e in row {
                let v = parse_rat(e.get_ref()).map_err(|err| {
                    let (line, column) = position(self.text, e.span().start);
                    DocumentError::Parse {
                        line,
                        column,
                        message: format!("{field}: {err}"),
                    }
                })?;
                parsed.push(v);
            }
            out.push(parsed);
        }
        Ok(Mat::from_rows(out, shape.1).expect("row lengths checked"))
    }
}

/// Parses and structurally checks a document.
pub fn parse(text: &str) -> Result<StrataComplex, DocumentError> {
    let doc: Document = toml::from_str(text).map_err(|e| {
        let (line, column) = e.span().map_or((0, 0), |s| position(text, s.start));
        DocumentError::Parse {
            line,
            column,
            message: e.message().to_string(),
        }
    })?;
    let ctx = Ctx { text };
    if doc.schema_version.get_ref() != SCHEMA_VERSION {
        return Err(ctx.schema(
            doc.schema_version.span(),
            "schema_version".into(),
            format!(
                "unsupported version `{}`, expected `{SCHEMA_VERSION}`",
                doc.schema_version.get_ref()
            ),
        ));
    }
    let n = doc.n_components;
    let mut c = StrataComplex::new(n);
    if let Some(m) = &doc.multiplicities {
        if m.get_ref().len() != n {
            return Err(ctx.schema(
                m.span(),
                "multiplicities".into(),
                format!("expected {n} entries, found {}", m.get_ref().len()),
            ));
        }
        c.multiplicities = Some(m.get_ref().clone());
    }
    for (a, s) in doc.strata.iter().enumerate() {
        let field = format!("strata[{a}]");
        let span = s.span();
        let e = s.get_ref();
        let i = ctx.index_set(&span, &field, &e.indices, n)?;
        if c.strata.contains_key(&i) {
            return Err(ctx.schema(span, field, format!("stratum {i} listed twice")));
        }
        let mut g = GradedSpace::new();
        for (k, &d) in &e.dims {
            let deg = ctx.degree(&span, &field, k)?;
            if d > 0 {
                g.dims.insert(deg, d);
            }
        }
        for (k, names) in &e.labels {
            let deg = ctx.degree(&span, &field, k)?;
            if names.len() != g.dim(deg) {
                return Err(ctx.schema(
                    span,
                    field,
                    format!(
                        "{} labels for degree {deg} of dimension {}",
                        names.len(),
                        g.dim(deg)
                    ),
                ));
            }
            g.labels.insert(deg, names.clone());
        }
        c.add_stratum(i, g);
    }
    let stratum =
        |span: &Range<usize>, field: &str, v: &[usize]| -> Result<IndexSet, DocumentError> {
            let i = ctx.index_set(span, field, v, n)?;
            if !c.strata.contains_key(&i) {
                return Err(ctx.schema(
                    span.clone(),
                    field.into(),
                    format!("stratum {i} is not listed"),
                ));
            }
            Ok(i)
        };
    let mut rest = Vec::new();
    for (a, m) in doc.rest_maps.iter().enumerate() {
        let span = m.span();
        let e = m.get_ref();
        let mut field = format!("rest_maps[{a}]");
        let i = stratum(&span, &field, &e.stratum)?;
        if e.index == 0 || e.index > n || i.contains(e.index - 1) {
            return Err(ctx.schema(
                span,
                field,
                format!("index {} cannot be added to {i}", e.index),
            ));
        }
        let k = e.index - 1;
        let t = i.with(k);
        let tgt = stratum(
            &span,
            &field,
            &t.indices().iter().map(|x| x + 1).collect::<Vec<_>>(),
        )?;
        field = format!("{field} (Y{i} -> Y{tgt}, degree {})", e.degree);
        let shape = (c.dim(&tgt, e.degree), c.dim(&i, e.degree));
        rest.push((i, k, e.degree, ctx.matrix(&span, &field, &e.matrix, shape)?));
    }
    let mut gysin = Vec::new();
    for (a, m) in doc.gysin_maps.iter().enumerate() {
        let span = m.span();
        let e = m.get_ref();
        let mut field = format!("gysin_maps[{a}]");
        let i = stratum(&span, &field, &e.stratum)?;
        if e.index == 0 || !i.contains(e.index - 1) || i.len() < 2 {
            return Err(ctx.schema(
                span,
                field,
                format!("index {} cannot be removed from {i}", e.index),
            ));
        }
        let k = e.index - 1;
        let t = i.without(k);
        let tgt = stratum(
            &span,
            &field,
            &t.indices().iter().map(|x| x + 1).collect::<Vec<_>>(),
        )?;
        field = format!("{field} (Y{i} -> Y{tgt}, degree {})", e.degree);
        let shape = (c.dim(&tgt, e.degree + 2), c.dim(&i, e.degree));
        gysin.push((i, k, e.degree, ctx.matrix(&span, &field, &e.matrix, shape)?));
    }
    let mut cups = Vec::new();
    for (a, m) in doc.cup.iter().flatten().enumerate() {
        let span = m.span();
        let e = m.get_ref();
        let mut field = format!("cup[{a}]");
        let i = stratum(&span, &field, &e.stratum)?;
        field = format!("{field} (Y{i}, degrees {} x {})", e.deg1, e.deg2);
        let shape = (
            c.dim(&i, e.deg1 + e.deg2),
            c.dim(&i, e.deg1) * c.dim(&i, e.deg2),
        );
        cups.push((
            i,
            e.deg1,
            e.deg2,
            ctx.matrix(&span, &field, &e.tensor, shape)?,
        ));
    }
    for (i, k, d, m) in rest {
        c.set_rest(i, k, d, m);
    }
    for (i, k, d, m) in gysin {
        c.set_gysin(i, k, d, m);
    }
    if doc.cup.is_some() {
        c.cup = Some(BTreeMap::new());
    }
    for (i, d1, d2, m) in cups {
        c.set_cup(i, d1, d2, m);
    }
    Ok(c)
}

fn quote(s: &str) -> String {
    toml::Value::String(s.to_string()).to_string()
}

fn one_based(i: &IndexSet) -> String {
    let v: Vec<String> = i.indices().iter().map(|x| (x + 1).to_string()).collect();
    format!("[{}]", v.join(", "))
}

fn matrix_text(m: &Mat) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|r| {
            let e: Vec<String> = m.row(r).iter().map(|x| quote(&fmt_rat(x))).collect();
            format!("[{}]", e.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

/// Renders a complex as a document; [`parse`] inverts it exactly.
pub fn to_document(c: &StrataComplex) -> String {
    let mut out = String::new();
    writeln!(out, "schema_version = {}", quote(SCHEMA_VERSION)).unwrap();
    writeln!(out, "n_components = {}", c.n_components).unwrap();
    if let Some(m) = &c.multiplicities {
        let v: Vec<String> = m.iter().map(u64::to_string).collect();
        writeln!(out, "multiplicities = [{}]", v.join(", ")).unwrap();
    }
    if c.cup.as_ref().is_some_and(|m| m.is_empty()) {
        writeln!(out, "cup = []").unwrap();
    }
    for (i, g) in &c.strata {
        writeln!(out, "\n[[strata]]\nindices = {}", one_based(i)).unwrap();
        let dims: Vec<String> = g.dims.iter().map(|(d, n)| format!("{d} = {n}")).collect();
        writeln!(out, "dims = {{ {} }}", dims.join(", ")).unwrap();
        if !g.labels.is_empty() {
            let labels: Vec<String> = g
                .labels
                .iter()
                .map(|(d, v)| {
                    let names: Vec<String> = v.iter().map(|s| quote(s)).collect();
                    format!("{d} = [{}]", names.join(", "))
                })
                .collect();
            writeln!(out, "labels = {{ {} }}", labels.join(", ")).unwrap();
        }
    }
    for (name, maps) in [("rest_maps", &c.rest), ("gysin_maps", &c.gysin)] {
        for ((i, k), per) in maps {
            for (d, m) in per {
                writeln!(
                    out,
                    "\n[[{name}]]\nstratum = {}\nindex = {}\ndegree = {d}\nmatrix = {}",
                    one_based(i),
                    k + 1,
                    matrix_text(m)
                )
                .unwrap();
            }
        }
    }
    if let Some(cup) = &c.cup {
        for ((i, d1, d2), m) in cup {
            writeln!(
                out,
                "\n[[cup]]\nstratum = {}\ndeg1 = {d1}\ndeg2 = {d2}\ntensor = {}",
                one_based(i),
                matrix_text(m)
            )
            .unwrap();
        }
    }
    out
}

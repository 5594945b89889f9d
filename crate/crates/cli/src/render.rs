//! Plain-text tables shared by the commands.

use std::collections::BTreeSet;
use std::fmt::Write;

use exactq::{fmt_rat, Rat};

/// Dimensions as a grid: one row per `r` (descending), one column per `n`.
pub fn grid(title: &str, cells: &[((i32, i32), usize)]) -> String {
    let mut out = String::new();
    writeln!(out, "{title} (rows r, columns n)").unwrap();
    if cells.is_empty() {
        writeln!(out, "  (empty)").unwrap();
        return out;
    }
    let rs: BTreeSet<i32> = cells.iter().map(|((r, _), _)| *r).collect();
    let ns: BTreeSet<i32> = cells.iter().map(|((_, n), _)| *n).collect();
    let (nlo, nhi) = (*ns.first().unwrap(), *ns.last().unwrap());
    let (rlo, rhi) = (*rs.first().unwrap(), *rs.last().unwrap());
    let get = |r: i32, n: i32| {
        cells
            .iter()
            .find(|(k, _)| *k == (r, n))
            .map_or(0, |(_, d)| *d)
    };
    let width = cells
        .iter()
        .map(|(_, d)| d.to_string().len())
        .chain((nlo..=nhi).map(|n| n.to_string().len()))
        .max()
        .unwrap_or(1)
        .max(2)
        + 1;
    let mut head = format!("{:>5}", "r\\n");
    for n in nlo..=nhi {
        write!(head, "{n:>width$}").unwrap();
    }
    writeln!(out, "{head}").unwrap();
    for r in (rlo..=rhi).rev() {
        let mut line = format!("{r:>5}");
        for n in nlo..=nhi {
            write!(line, "{:>width$}", get(r, n)).unwrap();
        }
        writeln!(out, "{line}").unwrap();
    }
    out
}

/// `label = value` rows.
pub fn labeled_rows(out: &mut String, indent: &str, labels: &[String], values: &[Rat]) {
    for (l, v) in labels.iter().zip(values) {
        writeln!(out, "{indent}{l} = {}", fmt_rat(v)).unwrap();
    }
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn pass_fail(b: bool) -> &'static str {
    if b {
        "PASS"
    } else {
        "FAIL"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_fills_missing_cells_with_zero() {
        let g = grid("E", &[((1, 1), 1), ((0, 0), 2)]);
        assert_eq!(
            g,
            "E (rows r, columns n)\n  r\\n  0  1\n    1  0  1\n    0  2  0\n"
        );
    }
}

//! Reference tables of the triangles, embedded for the campaign.
//!
//! Format: optional `r=<r>` headers, then lines `n: e0,e1,... | rowsum`.
//! Trailing zero entries of a row may be omitted.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use stirling_core::{Triangle, TriangleKind};

use crate::triangles::build_triangle;

pub const CYCLE: &str = include_str!("../../stirling-core/tests/golden/cycle.txt");
pub const SUBSET: &str = include_str!("../../stirling-core/tests/golden/subset.txt");
pub const QUASI_CYCLE: &str = include_str!("../../stirling-core/tests/golden/quasi_cycle.txt");
pub const QUASI_SUBSET: &str = include_str!("../../stirling-core/tests/golden/quasi_subset.txt");
pub const ORDERED_PHYLO: &str = include_str!("../../stirling-core/tests/golden/ordered_phylo.txt");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenRow {
    pub n: usize,
    pub entries: Vec<BigInt>,
    pub row_sum: BigInt,
}

/// Rows grouped by `r`; tables without headers use `r = 0`.
pub fn parse(text: &str) -> Result<BTreeMap<u32, Vec<GoldenRow>>, String> {
    let mut out: BTreeMap<u32, Vec<GoldenRow>> = BTreeMap::new();
    let mut r = 0;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let bad = |what: &str| format!("line {}: {what}", lineno + 1);
        if let Some(v) = line.strip_prefix("r=") {
            r = v.parse().map_err(|_| bad("bad r header"))?;
            continue;
        }
        let (n, rest) = line.split_once(':').ok_or_else(|| bad("missing `:`"))?;
        let (cells, sum) = rest.split_once('|').ok_or_else(|| bad("missing `|`"))?;
        let entries = cells
            .split(',')
            .map(|c| BigInt::from_str(c.trim()).map_err(|_| bad("bad entry")))
            .collect::<Result<Vec<_>, _>>()?;
        let n = n.trim().parse().map_err(|_| bad("bad row index"))?;
        let row_sum = BigInt::from_str(sum.trim()).map_err(|_| bad("bad row sum"))?;
        out.entry(r).or_default().push(GoldenRow { n, entries, row_sum });
    }
    Ok(out)
}

/// Embedded table for `kind`, if there is one.
pub fn table_for(kind: TriangleKind) -> Option<&'static str> {
    Some(match kind {
        TriangleKind::StirlingCycle => CYCLE,
        TriangleKind::StirlingSubset => SUBSET,
        TriangleKind::QuasiEulerianCycle => QUASI_CYCLE,
        TriangleKind::QuasiEulerianSubset => QUASI_SUBSET,
        TriangleKind::OrderedPhylo => ORDERED_PHYLO,
        _ => return None,
    })
}

/// First disagreement between the generated triangle and the reference
/// rows: an entry, a nonzero entry beyond the listed ones, or a row sum.
pub fn compare(t: &Triangle, rows: &[GoldenRow]) -> Option<String> {
    for g in rows {
        let Some(row) = t.row(g.n) else {
            return Some(format!("row {} not generated", g.n));
        };
        if g.entries.len() > row.len() {
            return Some(format!("row {} has {} entries, reference lists {}", g.n, row.len(), g.entries.len()));
        }
        for (k, v) in row.iter().enumerate() {
            let want = g.entries.get(k).cloned().unwrap_or_default();
            if *v != want {
                return Some(format!("entry ({},{}) = {v}, reference {want}", g.n, k));
            }
        }
        let sum: BigInt = g.entries.iter().sum();
        if sum != g.row_sum {
            return Some(format!("reference row {} entries sum to {sum}, listed sum {}", g.n, g.row_sum));
        }
        if t.row_sum(g.n) != g.row_sum {
            return Some(format!("row sum {} = {}, reference {}", g.n, t.row_sum(g.n), g.row_sum));
        }
    }
    None
}

/// Checks one `(kind, r)` table; `Ok(rows checked)` or the first mismatch.
pub fn check(kind: TriangleKind, r: u32) -> Result<usize, String> {
    let text = table_for(kind).ok_or_else(|| format!("no reference table for {}", kind.name()))?;
    let tables = parse(text)?;
    let key = if kind == TriangleKind::OrderedPhylo { 0 } else { r };
    let rows = tables.get(&key).ok_or_else(|| format!("no reference rows for r={r}"))?;
    let n_max = rows.iter().map(|g| g.n).max().unwrap_or(0);
    let t = build_triangle(kind, r.max(1), n_max).map_err(|e| e.to_string())?;
    match compare(&t, rows) {
        Some(m) => Err(m),
        None => Ok(rows.len()),
    }
}

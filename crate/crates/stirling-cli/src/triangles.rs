//! Name parsing and construction of the triangles the CLI can emit.

use stirling_core::triangle::{
    eulerian_r, ordered_phylo_triangle, quasi_eulerian, r_associated, reverse_rows, stirling_r,
};
use stirling_core::{Family, Triangle, TriangleKind};

use crate::CliError;

/// Kinds accepted on the command line.
pub const KIND_NAMES: [&str; 8] = [
    "cycle",
    "subset",
    "assoc-cycle",
    "assoc-subset",
    "eulerian",
    "quasi-cycle",
    "quasi-subset",
    "ordered-phylo",
];

pub fn parse_kind(s: &str) -> Result<TriangleKind, CliError> {
    match TriangleKind::from_name(s) {
        Some(TriangleKind::Generic) | None => {
            Err(CliError::Usage(format!("unknown kind `{s}`; expected one of {}", KIND_NAMES.join(", "))))
        }
        Some(k) => Ok(k),
    }
}

pub fn parse_family(s: &str) -> Result<Family, CliError> {
    match s {
        "cycle" => Ok(Family::Cycle),
        "subset" => Ok(Family::Subset),
        _ => Err(CliError::Usage(format!("unknown family `{s}`; expected cycle or subset"))),
    }
}

/// Rows `0..=n_max`; `r` is ignored for `ordered-phylo`.
pub fn build_triangle(kind: TriangleKind, r: u32, n_max: usize) -> Result<Triangle, CliError> {
    if r == 0 && kind != TriangleKind::OrderedPhylo {
        return Err(CliError::Usage("order r must be at least 1".into()));
    }
    Ok(match kind {
        TriangleKind::StirlingCycle => stirling_r(Family::Cycle, r, n_max),
        TriangleKind::StirlingSubset => stirling_r(Family::Subset, r, n_max),
        TriangleKind::AssocCycle => r_associated(Family::Cycle, r, n_max),
        TriangleKind::AssocSubset => r_associated(Family::Subset, r, n_max),
        TriangleKind::Eulerian => eulerian_r(r, n_max),
        TriangleKind::QuasiEulerianCycle => quasi_eulerian(Family::Cycle, r, n_max),
        TriangleKind::QuasiEulerianSubset => quasi_eulerian(Family::Subset, r, n_max),
        TriangleKind::OrderedPhylo => ordered_phylo_triangle(n_max),
        TriangleKind::Generic => return Err(CliError::Usage("kind `generic` cannot be generated".into())),
    })
}

/// The triangle, or its row reversal.
pub fn build_oriented(kind: TriangleKind, r: u32, n_max: usize, reversed: bool) -> Result<Triangle, CliError> {
    let t = build_triangle(kind, r, n_max)?;
    Ok(if reversed { reverse_rows(&t) } else { t })
}

/// One row per line, decimal integers separated by commas.
pub fn to_csv(t: &Triangle) -> String {
    let mut s = String::new();
    for row in t.rows() {
        let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
        s.push_str(&cells.join(","));
        s.push('\n');
    }
    s
}

/// `{"kind":..,"r":..,"rows":[[..],..]}` with exact integers.
pub fn to_json(t: &Triangle, kind: TriangleKind, r: u32) -> String {
    let rows: Vec<String> = t
        .rows()
        .iter()
        .map(|row| format!("[{}]", row.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")))
        .collect();
    format!("{{\"kind\":\"{}\",\"r\":{},\"rows\":[{}]}}\n", kind.name(), r, rows.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_cycle_csv() {
        let t = build_triangle(parse_kind("cycle").unwrap(), 1, 2).unwrap();
        assert_eq!(to_csv(&t), "1\n0,1\n0,1,1\n");
        assert_eq!(to_json(&t, TriangleKind::StirlingCycle, 1), "{\"kind\":\"cycle\",\"r\":1,\"rows\":[[1],[0,1],[0,1,1]]}\n");
    }

    #[test]
    fn rejects_unknown_kinds() {
        assert!(parse_kind("generic").is_err());
        assert!(parse_kind("bogus").is_err());
        assert!(parse_family("eulerian").is_err());
        assert!(build_triangle(TriangleKind::StirlingCycle, 0, 3).is_err());
    }
}

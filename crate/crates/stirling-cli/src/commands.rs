//! Subcommands other than `verify`, each producing report claims.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use stirling_core::analysis::CertKind;
use stirling_core::oracles::{
    edge_marked_ternary_counts, enumerate_phylo, for_each_phylo, marked_word_counts, marked_words, phi_pairs,
    vertex_marked_ordered_counts, LeafMarking, PhyloFlavor,
};
use stirling_core::triangle::{quasi_eulerian, stirling_r};
use stirling_core::{Family, IntPolynomial, TriangleKind};

use crate::campaign::{hankel_claim, tp_claim, Claim, Section};
use crate::checks::{self, derangement_row, phylo_triangle, row_text};
use crate::config::Guards;
use crate::report::{ClaimRecord, Outcome, Status, VerificationReport};
use crate::triangles::{build_triangle, parse_family, to_csv, to_json};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Json,
}

pub fn gen(kind: TriangleKind, r: u32, n_max: usize, format: TableFormat) -> Result<String, CliError> {
    let t = build_triangle(kind, r, n_max)?;
    Ok(match format {
        TableFormat::Csv => to_csv(&t),
        TableFormat::Json => to_json(&t, kind, r),
    })
}

fn run_one(claims: Vec<Claim>) -> Result<VerificationReport, CliError> {
    let mut report = VerificationReport::default();
    for c in claims {
        let (record, ms) = c.execute()?;
        report.push(record, ms);
    }
    Ok(report)
}

pub fn tp(kind: TriangleKind, r: u32, size: usize, reversed: bool, guards: &Guards) -> Result<VerificationReport, CliError> {
    guards.check("size", size, guards.tp_size)?;
    let cross = size.min(9);
    run_one(vec![tp_claim(kind, r, size, reversed, cross, Section::Tp)])
}

pub fn hankel(kind: TriangleKind, r: u32, size: usize, order: usize, guards: &Guards) -> Result<VerificationReport, CliError> {
    guards.check("size", size, guards.hankel_size)?;
    guards.check("minor order", order, guards.hankel_minor_order)?;
    match kind {
        TriangleKind::StirlingCycle
        | TriangleKind::StirlingSubset
        | TriangleKind::QuasiEulerianCycle
        | TriangleKind::QuasiEulerianSubset
        | TriangleKind::OrderedPhylo => {}
        _ => return Err(CliError::Usage(format!("no Hankel claim for kind {}", kind.name()))),
    }
    run_one(vec![hankel_claim(kind, r, size, order)])
}

/// Exact certificates for orders 1 and 2 and the ordered phylogenetic
/// polynomials; discriminants, nonreal zeros and a half-plane observation
/// for order 3 and above.
pub fn roots(kind: TriangleKind, r: u32, n_max: usize, bits: usize) -> Result<VerificationReport, CliError> {
    let v = Some(Status::VerifiedToCap);
    let mut claims = Vec::new();
    let family = match kind {
        TriangleKind::StirlingCycle => Family::Cycle,
        TriangleKind::StirlingSubset => Family::Subset,
        TriangleKind::OrderedPhylo => {
            claims.push(Claim::new(
                format!("roots/ordered-phylo/n<={n_max}"),
                Section::Roots,
                "d_n/x has simple real zeros in (-1,0) interlacing its predecessor",
                v,
                format!("n<={n_max}"),
                move || checks::root_certificates(CertKind::OrderedPhylo, n_max),
            ));
            return run_one(claims);
        }
        _ => return Err(CliError::Usage(format!("no root claims for kind {}", kind.name()))),
    };
    let name = if family == Family::Cycle { "cycle" } else { "subset" };
    match r {
        0 => return Err(CliError::Usage("order r must be at least 1".into())),
        1 => claims.push(Claim::new(
            format!("roots/{name}/r=1/real/n<={n_max}"),
            Section::Roots,
            "first-order row polynomials are real-rooted",
            v,
            format!("n<={n_max}"),
            move || checks::all_real(family, 1, n_max),
        )),
        2 => {
            let cert = if family == Family::Cycle { CertKind::Cycle2 } else { CertKind::Subset2 };
            claims.push(Claim::new(
                format!("roots/hat-{name}/n<={n_max}"),
                Section::Roots,
                format!("hat-{name} polynomials have simple real zeros in (-1,0) interlacing their predecessors"),
                v,
                format!("n<={n_max}"),
                move || checks::root_certificates(cert, n_max + 1),
            ));
            claims.push(Claim::new(
                format!("roots/hat-{name}/boundary/n<={n_max}"),
                Section::Roots,
                format!("hat-{name} polynomials take the closed-form values at 0 and -1"),
                v,
                format!("n<={n_max}"),
                move || checks::hat_boundary(family, n_max),
            ));
        }
        _ => {
            if n_max < 3 {
                return Err(CliError::Usage("order 3 and above needs n_max >= 3".into()));
            }
            let from = if family == Family::Subset && r == 3 { 4 } else { 3 };
            if family == Family::Cycle {
                claims.push(Claim::new(
                    format!("discriminant/cycle/r={r}"),
                    Section::Discriminant,
                    format!("D_{r}(n) < 0 for n >= 3"),
                    v,
                    format!("3<=n<={n_max}"),
                    move || checks::cycle_discriminant(r, n_max),
                ));
            } else {
                let asserted = r >= 4;
                claims.push(Claim::new(
                    format!("discriminant/subset/r={r}"),
                    Section::Discriminant,
                    format!("the quadratic derivative of s_{{{r},n}}/x has negative discriminant"),
                    Some(if asserted { Status::VerifiedToCap } else { Status::Observed }),
                    format!("3<=n<={n_max}"),
                    move || checks::subset_discriminant(r, n_max, asserted),
                ));
            }
            if from <= n_max {
                claims.push(Claim::new(
                    format!("nonreal/{name}/r={r}"),
                    Section::Discriminant,
                    format!("the {name} polynomials of order {r} have nonreal zeros for n >= {from}"),
                    v,
                    format!("{from}<=n<={n_max}"),
                    move || checks::nonreal_zeros(family, r, from, n_max, bits),
                ));
            }
            claims.push(Claim::new(
                format!("left-half-plane/{name}/r={r}"),
                Section::Discriminant,
                format!("zeros of the {name} polynomials of order {r} lie in the closed left half-plane"),
                Some(Status::Observed),
                format!("3<=n<={n_max}"),
                move || checks::left_half_plane(family, r, 3, n_max, bits),
            ));
        }
    }
    run_one(claims)
}

/// CSV text and one claim per `(r, n)` cloud.
pub fn plot(kind: &str, r_list: &[u32], n_list: &[usize], bits: usize) -> Result<(String, VerificationReport), CliError> {
    let family = parse_family(kind)?;
    if r_list.iter().any(|&r| r == 0) {
        return Err(CliError::Usage("order r must be at least 1".into()));
    }
    let clouds = crate::plot::clouds(family, r_list, n_list, bits)?;
    let mut report = VerificationReport::default();
    for c in &clouds {
        let record = ClaimRecord::new(
            format!("plot/{kind}/r={}/n={}", c.r, c.n),
            "normalized root cloud with certified residuals and exact real counts".into(),
            Some(Status::VerifiedToCap),
            format!("{} bits", c.precision_bits),
            None,
            crate::plot::check_cloud(c),
        );
        report.push(record, 0);
    }
    report.timings.clear();
    Ok((crate::plot::csv(kind, &clouds), report))
}

/// `key=value` parameters and bare words of the `oracle` subcommand.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OracleParams {
    pub values: BTreeMap<String, String>,
    pub words: Vec<String>,
}

impl OracleParams {
    pub fn parse(tokens: &[String]) -> Self {
        let mut p = OracleParams::default();
        for t in tokens {
            match t.split_once('=') {
                Some((k, v)) => {
                    p.values.insert(k.to_string(), v.to_string());
                }
                None => p.words.push(t.clone()),
            }
        }
        p
    }

    pub fn usize(&self, key: &str) -> Result<usize, CliError> {
        let v = self.values.get(key).ok_or_else(|| CliError::Usage(format!("missing parameter {key}=")))?;
        v.parse().map_err(|_| CliError::Usage(format!("parameter {key}={v} is not a nonnegative integer")))
    }
}

fn oracle_record(id: String, anchor: &str, cap: String, counts: Vec<BigInt>, expected_row: &[BigInt]) -> ClaimRecord {
    let outcome = match (0..counts.len().max(expected_row.len())).find(|&k| counts.get(k) != expected_row.get(k)) {
        None => Outcome::verified(),
        Some(k) => Outcome::falsified(format!("k={k}: enumeration {} vs triangle {}", row_text(&counts), row_text(expected_row))),
    }
    .with_value(row_text(&counts));
    ClaimRecord::new(id, anchor.into(), Some(Status::VerifiedToCap), cap, None, outcome)
}

fn padded(row: &[BigInt], len: usize) -> Vec<BigInt> {
    let mut v = row.to_vec();
    v.resize(len, BigInt::from(0));
    v
}

fn phylo_flavor(params: &OracleParams) -> Result<(PhyloFlavor, String), CliError> {
    let word = params.words.first().or(params.values.get("flavor")).cloned();
    let flavor = match word.as_deref() {
        Some("unordered") => PhyloFlavor::Unordered,
        Some("cyclic") => PhyloFlavor::Cyclic,
        Some("ordered") => PhyloFlavor::Ordered,
        other => return Err(CliError::Usage(format!("phylo flavor {other:?}; expected unordered, cyclic or ordered"))),
    };
    Ok((flavor, word.expect("flavor word")))
}

fn order_param(params: &OracleParams, default: Option<u32>) -> Result<u32, CliError> {
    let r = match (params.values.contains_key("r"), default) {
        (false, Some(d)) => d,
        _ => params.usize("r")? as u32,
    };
    if r == 0 {
        return Err(CliError::Usage("order r must be at least 1".into()));
    }
    Ok(r)
}

/// The enumerated objects, one per line, in the bracketed notation: marked
/// words for `II`, ternary trees with their ordered images for `III` and
/// `IV`, phylogenetic trees for `V`.
pub fn oracle_dump(interp: &str, params: &OracleParams, guards: &Guards) -> Result<String, CliError> {
    let n = params.usize("n")?;
    let mut out = String::new();
    match interp {
        "II" | "marked-words" => {
            let r = order_param(params, Some(2))?;
            guards.check("r*n", r as usize * n, guards.oracle_rn)?;
            for marks in 0..=n {
                for w in marked_words(r, n, marks)? {
                    out.push_str(&format!("{w}\n"));
                }
            }
        }
        "III" | "IV" | "edge-marked-ternary" | "vertex-marked-ordered" => {
            guards.check("2n", 2 * n, guards.oracle_rn)?;
            for (t, o) in phi_pairs(n)? {
                out.push_str(&format!("{t} -> {o}\n"));
            }
        }
        "V" | "phylo" => {
            guards.check("2n", 2 * n, guards.oracle_rn)?;
            let (flavor, _) = phylo_flavor(params)?;
            for_each_phylo(n, flavor, |t| out.push_str(&format!("{}\n", t.root)))?;
        }
        other => return Err(CliError::Usage(format!("no object dump for interpretation {other}"))),
    }
    Ok(out)
}

/// Interpretations: `I` derangements, `II` marked Stirling words, `III`
/// edge-marked ternary trees, `IV` vertex-marked ordered trees, `V`
/// phylogenetic trees, `r-general` words by consecutive ascents.
pub fn oracle(interp: &str, params: &OracleParams, guards: &Guards) -> Result<VerificationReport, CliError> {
    let n = params.usize("n")?;
    let big = |v: Vec<u64>| v.into_iter().map(BigInt::from).collect::<Vec<_>>();
    let record = match interp {
        "I" | "derangements" => {
            guards.check("2n", 2 * n, guards.oracle_rn)?;
            let c2 = stirling_r(Family::Cycle, 2, n);
            oracle_record(
                format!("oracle/derangements/n={n}"),
                "derangements of [n+k] with k cycles number [n k]^(2)",
                format!("n={n}"),
                derangement_row(n)?,
                c2.row(n).expect("row"),
            )
        }
        "II" | "marked-words" => {
            let r = order_param(params, Some(2))?;
            guards.check("r*n", r as usize * n, guards.oracle_rn)?;
            let counts = marked_word_counts(r, n)?;
            let row: Vec<BigInt> = counts.by_marks.iter().rev().map(|&v| BigInt::from(v)).collect();
            let c = stirling_r(Family::Cycle, r, n);
            oracle_record(
                format!("oracle/marked-words/r={r}/n={n}"),
                "ascent-marked Stirling words with n-k marks number [n k]^(r)",
                format!("n={n}"),
                row,
                c.row(n).expect("row"),
            )
        }
        "III" | "edge-marked-ternary" => {
            guards.check("2n", 2 * n, guards.oracle_rn)?;
            let c2 = stirling_r(Family::Cycle, 2, n);
            oracle_record(
                format!("oracle/edge-marked-ternary/n={n}"),
                "edge-marked increasing ternary trees with k unmarked edges number [n k]^(2)",
                format!("n={n}"),
                big(edge_marked_ternary_counts(n)?),
                c2.row(n).expect("row"),
            )
        }
        "IV" | "vertex-marked-ordered" => {
            guards.check("2n", 2 * n, guards.oracle_rn)?;
            let rule = match params.values.get("rule").map(String::as_str) {
                None | Some("max-leaf-forced") => LeafMarking::MaxLeafForced,
                Some("all-leaves") => LeafMarking::AllLeaves,
                Some(o) => return Err(CliError::Usage(format!("unknown rule {o}; expected max-leaf-forced or all-leaves"))),
            };
            let c2 = stirling_r(Family::Cycle, 2, n);
            let row = IntPolynomial::new(c2.row(n).expect("row").to_vec());
            let want = if rule == LeafMarking::AllLeaves && n > 0 {
                &row * &IntPolynomial::from_i64s(&[1, 1])
            } else {
                row
            };
            let counts = big(vertex_marked_ordered_counts(n, rule)?);
            let len = counts.len();
            oracle_record(
                format!("oracle/vertex-marked-ordered/n={n}"),
                "vertex-marked increasing ordered trees with k unmarked vertices number [n k]^(2)",
                format!("n={n}"),
                if rule == LeafMarking::MaxLeafForced { counts[..=n].to_vec() } else { counts },
                &padded(want.coeffs(), if rule == LeafMarking::MaxLeafForced { n + 1 } else { len }),
            )
        }
        "V" | "phylo" => {
            guards.check("2n", 2 * n, guards.oracle_rn)?;
            let (flavor, name) = phylo_flavor(params)?;
            let t = phylo_triangle(flavor, n);
            oracle_record(
                format!("oracle/phylo-{name}/n={n}"),
                "phylogenetic trees by internal vertices give their triangle",
                format!("n={n}"),
                big(enumerate_phylo(n, flavor)?),
                t.row(n).expect("row"),
            )
        }
        "r-general" | "b-counts" => {
            let r = order_param(params, None)?;
            guards.check("r*n", r as usize * n, guards.oracle_rn)?;
            let counts = big(marked_word_counts(r, n)?.by_ascents);
            let q = quasi_eulerian(Family::Cycle, r, n);
            // Row n of the quasi-Eulerian triangle has n nonzero entries.
            let len = n.max(1);
            oracle_record(
                format!("oracle/b-counts/r={r}/n={n}"),
                "Stirling words by consecutive ascents give the rows of Q_C^(r)",
                format!("n={n}"),
                counts[..len].to_vec(),
                &padded(q.row(n).expect("row"), counts.len())[..len],
            )
        }
        other => {
            return Err(CliError::Usage(format!(
                "unknown interpretation {other}; expected I, II, III, IV, V or r-general"
            )))
        }
    };
    let mut report = VerificationReport::default();
    report.push(record, 0);
    report.timings.clear();
    Ok(report)
}

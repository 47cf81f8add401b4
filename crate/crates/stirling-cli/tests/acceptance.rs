//! One PASS/FAIL line per acceptance criterion, run at desk scale.
//!
//! The process fails when any criterion fails, except for the single known
//! divergence below, which is printed as FAIL but does not fail the build.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use stirling_cli::campaign::{build, Campaign, Section};
use stirling_cli::config::{CampaignConfig, PlotSpec};
use stirling_cli::plot;
use stirling_cli::report::{ClaimRecord, Status, VerificationReport};
use stirling_core::Family;

/// Reversed S^(3) already has a negative 7x7 minor inside its leading 12x12
/// block (rows 5..=11, cols 0..=6), so "passes at 12x12" cannot be
/// reproduced. Every other claim of that criterion must hold.
const KNOWN_DIVERGENCE: &str = "tp/reversed-subset/r=3/size=12";

struct Line {
    number: usize,
    title: &'static str,
    pass: bool,
    detail: String,
    elapsed: Duration,
    budget: Option<Duration>,
    unexpected: BTreeSet<String>,
}

fn minutes(m: u64) -> Option<Duration> {
    Some(Duration::from_secs(60 * m))
}

fn section_line(
    number: usize,
    title: &'static str,
    section: Section,
    budget: Option<Duration>,
    campaign: &Campaign,
    report: &VerificationReport,
    ms: &BTreeMap<&str, u64>,
) -> Line {
    let claims: Vec<&ClaimRecord> =
        report.claims.iter().filter(|c| campaign.section_of(&c.id) == Some(section)).collect();
    let unexpected: BTreeSet<String> = claims.iter().filter(|c| !c.is_expected()).map(|c| c.id.clone()).collect();
    let falsified = claims.iter().filter(|c| c.status == Status::Falsified).count();
    let elapsed = Duration::from_millis(claims.iter().map(|c| ms[c.id.as_str()]).sum());
    let mut detail = format!("{} claims, {} falsified as expected", claims.len(), falsified);
    for c in claims.iter().filter(|c| !c.is_expected()) {
        detail.push_str(&format!("; unexpected {}", c.text_line()));
    }
    Line {
        number,
        title,
        pass: !claims.is_empty() && unexpected.is_empty() && budget.map_or(true, |b| elapsed < b),
        detail,
        elapsed,
        budget,
        unexpected,
    }
}

/// Clouds for `r = 3..=6`, `n` in {50, 100} through the campaign's plot
/// section, for both families, plus a byte-for-byte regeneration of one block.
fn plot_line(jobs: usize) -> Line {
    let start = Instant::now();
    let mut problems = Vec::new();
    let mut claims = 0;
    for kind in ["cycle", "subset"] {
        let cfg = CampaignConfig {
            plot: Some(PlotSpec { kind: kind.into(), r: vec![3, 4, 5, 6], n: vec![50, 100] }),
            ..CampaignConfig::default()
        };
        let campaign = build(&cfg).expect("plot campaign builds");
        let report = campaign
            .run_filtered(jobs, |c| c.section == Section::Plot)
            .expect("plot claims run");
        claims += report.claims.len();
        problems.extend(report.unexpected().iter().map(|c| c.text_line()));
        let csv = campaign.plot_csv().expect("plot csv");
        let mut lines = csv.lines();
        if lines.next() != Some(plot::CSV_HEADER) {
            problems.push(format!("{kind}: bad header"));
        }
        let mut per_block: BTreeMap<(String, String), (usize, usize)> = BTreeMap::new();
        for l in lines {
            let f: Vec<&str> = l.split(',').collect();
            if f.len() != 8 || f[0] != kind {
                problems.push(format!("{kind}: malformed row {l}"));
                continue;
            }
            let e = per_block.entry((f[1].into(), f[2].into())).or_default();
            if f[7] == "zero-root" {
                e.0 += 1;
            } else {
                e.1 += 1;
            }
        }
        for ((r, n), (zero, roots)) in &per_block {
            let n: usize = n.parse().expect("n");
            if *zero != 1 || *roots != n - 1 {
                problems.push(format!("{kind} r={r} n={n}: {zero} zero-root rows, {roots} roots"));
            }
        }
        if per_block.len() != 8 {
            problems.push(format!("{kind}: {} blocks", per_block.len()));
        }
        let family = if kind == "cycle" { Family::Cycle } else { Family::Subset };
        let again = plot::clouds(family, &[3], &[50], cfg.precision_bits).expect("regenerated cloud");
        let block = plot::cloud_rows(kind, &again[0]);
        if !csv.contains(&block) {
            problems.push(format!("{kind} r=3 n=50: regenerated rows differ"));
        }
    }
    let elapsed = start.elapsed();
    let budget = minutes(10);
    Line {
        number: 10,
        title: "plot data",
        pass: problems.is_empty() && claims == 16 && elapsed < budget.unwrap(),
        detail: if problems.is_empty() {
            format!("{claims} clouds certified, byte-stable regeneration")
        } else {
            problems.join("; ")
        },
        elapsed,
        budget,
        unexpected: BTreeSet::new(),
    }
}

fn main() {
    let jobs = std::thread::available_parallelism().map_or(1, |n| n.get());
    let cfg = CampaignConfig::default();
    let campaign = build(&cfg).expect("default campaign builds");
    let report = campaign.run(jobs).expect("default campaign runs");
    let ms: BTreeMap<&str, u64> = report.timings.iter().map(|t| (t.id.as_str(), t.elapsed_ms)).collect();

    let s = |n, t, sec, b| section_line(n, t, sec, b, &campaign, &report, &ms);
    let mut lines = vec![
        s(1, "golden tables", Section::Golden, Some(Duration::from_secs(1))),
        s(2, "total positivity", Section::Tp, minutes(5)),
        s(3, "reversed falsification witnesses", Section::ReversedFalsification, None),
        s(4, "reversed quasi-Eulerian total positivity", Section::QuasiReversedTp, minutes(5)),
        s(5, "coefficientwise Hankel total positivity", Section::Hankel, minutes(10)),
        s(6, "root certificates", Section::Roots, None),
        s(7, "discriminant criterion", Section::Discriminant, None),
        s(8, "oracle equivalences", Section::Oracles, minutes(15)),
        s(9, "identity suite", Section::Identities, None),
    ];
    lines.push(plot_line(jobs));
    lines.push(s(11, "log-concavity", Section::LogConcavity, minutes(2)));

    for l in &lines {
        let budget = l.budget.map_or(String::new(), |b| format!(" (budget {}s)", b.as_secs()));
        println!(
            "criterion {:>2} {} {}: {} [{:.1}s{}]",
            l.number,
            if l.pass { "PASS" } else { "FAIL" },
            l.title,
            l.detail,
            l.elapsed.as_secs_f64(),
            budget
        );
    }

    println!("desk caps next to full-scale caps:");
    for c in report.claims.iter().filter(|c| c.full_cap.is_some()) {
        println!("  {} desk {} full {}", c.id, c.cap, c.full_cap.as_deref().unwrap_or(""));
    }

    let failed: Vec<&Line> = lines.iter().filter(|l| !l.pass).collect();
    let known = failed.len() == 1
        && failed[0].number == 3
        && failed[0].unexpected.iter().map(String::as_str).eq([KNOWN_DIVERGENCE]);
    if failed.is_empty() {
        println!("all criteria pass");
    } else if known {
        println!("only the known divergence {KNOWN_DIVERGENCE} fails");
    } else {
        println!("{} criteria fail", failed.len());
        std::process::exit(1);
    }
}

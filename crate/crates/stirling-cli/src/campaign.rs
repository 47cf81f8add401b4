//! The verification campaign: an ordered list of claims, each with the status
//! it is expected to end in, run in parallel and merged in list order.

use std::sync::{Arc, Mutex};
use std::time::Instant;

use rayon::prelude::*;
use stirling_core::analysis::CertKind;
use stirling_core::oracles::{LeafMarking, PhyloFlavor};
use stirling_core::series::{CorrespondenceCase, WardSpecialization};
use stirling_core::{Family, TriangleKind};

use crate::checks;
use crate::config::CampaignConfig;
use crate::plot;
use crate::report::{ClaimRecord, Outcome, Status, VerificationReport};
use crate::triangles::{parse_family, parse_kind};
use crate::CliError;

/// Groups of claims; acceptance reports one line per section.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Section {
    Golden,
    Tp,
    ReversedFalsification,
    QuasiReversedTp,
    Hankel,
    Roots,
    Discriminant,
    Oracles,
    Identities,
    Plot,
    LogConcavity,
}

impl Section {
    pub const ALL: [Section; 11] = [
        Section::Golden,
        Section::Tp,
        Section::ReversedFalsification,
        Section::QuasiReversedTp,
        Section::Hankel,
        Section::Roots,
        Section::Discriminant,
        Section::Oracles,
        Section::Identities,
        Section::Plot,
        Section::LogConcavity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Section::Golden => "golden-tables",
            Section::Tp => "total-positivity",
            Section::ReversedFalsification => "reversed-falsification",
            Section::QuasiReversedTp => "reversed-quasi-eulerian",
            Section::Hankel => "hankel",
            Section::Roots => "root-certificates",
            Section::Discriminant => "discriminant",
            Section::Oracles => "oracles",
            Section::Identities => "identities",
            Section::Plot => "plot",
            Section::LogConcavity => "log-concavity",
        }
    }
}

type Runner = Box<dyn Fn() -> Result<Outcome, CliError> + Send + Sync>;

pub struct Claim {
    pub id: String,
    pub section: Section,
    pub anchor: String,
    pub expected: Option<Status>,
    pub cap: String,
    pub full_cap: Option<String>,
    pub run: Runner,
}

impl Claim {
    pub fn new(
        id: impl Into<String>,
        section: Section,
        anchor: impl Into<String>,
        expected: Option<Status>,
        cap: impl Into<String>,
        run: impl Fn() -> Result<Outcome, CliError> + Send + Sync + 'static,
    ) -> Self {
        Claim {
            id: id.into(),
            section,
            anchor: anchor.into(),
            expected,
            cap: cap.into(),
            full_cap: None,
            run: Box::new(run),
        }
    }

    pub fn full_cap(mut self, cap: impl Into<String>) -> Self {
        self.full_cap = Some(cap.into());
        self
    }

    pub fn execute(&self) -> Result<(ClaimRecord, u64), CliError> {
        let start = Instant::now();
        let outcome = (self.run)()?;
        let elapsed = start.elapsed().as_millis() as u64;
        let record = ClaimRecord::new(
            self.id.clone(),
            self.anchor.clone(),
            self.expected,
            self.cap.clone(),
            self.full_cap.clone(),
            outcome,
        );
        Ok((record, elapsed))
    }
}

/// Root-cloud CSV blocks keyed by `(r, n)`, filled by the plot claims.
pub type PlotSink = Arc<Mutex<Vec<((u32, usize), String)>>>;

pub struct Campaign {
    pub claims: Vec<Claim>,
    pub plot_sink: PlotSink,
    pub plot_kind: Option<String>,
}

impl Campaign {
    /// Runs every claim on a pool of `jobs` threads; records come back in
    /// campaign order.
    pub fn run(&self, jobs: usize) -> Result<VerificationReport, CliError> {
        self.run_filtered(jobs, |_| true)
    }

    pub fn run_filtered(&self, jobs: usize, keep: impl Fn(&Claim) -> bool + Sync) -> Result<VerificationReport, CliError> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build()
            .map_err(|e| CliError::Compute(e.to_string()))?;
        let selected: Vec<&Claim> = self.claims.iter().filter(|c| keep(c)).collect();
        let results: Vec<Result<(ClaimRecord, u64), CliError>> =
            pool.install(|| selected.par_iter().map(|c| c.execute()).collect());
        let mut report = VerificationReport::default();
        for r in results {
            let (record, ms) = r?;
            report.push(record, ms);
        }
        Ok(report)
    }

    /// Section of a claim id.
    pub fn section_of(&self, id: &str) -> Option<Section> {
        self.claims.iter().find(|c| c.id == id).map(|c| c.section)
    }

    /// The plot CSV assembled from the finished plot claims.
    pub fn plot_csv(&self) -> Option<String> {
        self.plot_kind.as_ref()?;
        let mut blocks = self.plot_sink.lock().expect("plot sink").clone();
        blocks.sort_by_key(|(k, _)| *k);
        let mut s = String::from(plot::CSV_HEADER);
        s.push('\n');
        for (_, b) in blocks {
            s.push_str(&b);
        }
        Some(s)
    }
}

const V: Option<Status> = Some(Status::VerifiedToCap);
const F: Option<Status> = Some(Status::Falsified);
const O: Option<Status> = Some(Status::Observed);

fn kind_symbol(kind: TriangleKind) -> &'static str {
    match kind {
        TriangleKind::StirlingCycle => "C",
        TriangleKind::StirlingSubset => "S",
        TriangleKind::QuasiEulerianCycle => "Q_C",
        TriangleKind::QuasiEulerianSubset => "Q_S",
        TriangleKind::OrderedPhylo => "D",
        TriangleKind::Eulerian => "E",
        TriangleKind::AssocCycle => "assoc C",
        TriangleKind::AssocSubset => "assoc S",
        TriangleKind::Generic => "T",
    }
}

/// Expected status of a total-positivity claim, when one is asserted.
pub fn expected_tp(kind: TriangleKind, r: u32, size: usize, reversed: bool) -> Option<Status> {
    use TriangleKind::*;
    match (kind, reversed) {
        (StirlingCycle | StirlingSubset, false) => V,
        (OrderedPhylo, _) => V,
        (QuasiEulerianCycle | QuasiEulerianSubset, true) if r >= 2 => V,
        (StirlingCycle | StirlingSubset, true) if r <= 2 => V,
        (StirlingCycle, true) if r == 3 => Some(if size >= 6 { Status::Falsified } else { Status::VerifiedToCap }),
        (StirlingSubset, true) if r == 3 => Some(if size >= 13 { Status::Falsified } else { Status::VerifiedToCap }),
        (StirlingCycle | StirlingSubset, true) if size >= 4 => F,
        _ => None,
    }
}

/// Expected status of a Hankel claim, when one is asserted.
pub fn expected_hankel(kind: TriangleKind, r: u32, size: usize, order: usize) -> Option<Status> {
    use TriangleKind::*;
    match kind {
        StirlingCycle if r >= 2 => V,
        QuasiEulerianCycle if r >= 3 => V,
        OrderedPhylo => V,
        StirlingSubset if r >= 3 && size >= 4 && order >= 3 => F,
        _ => None,
    }
}

pub fn tp_claim(kind: TriangleKind, r: u32, size: usize, reversed: bool, cross: usize, section: Section) -> Claim {
    let orient = if reversed { "reversed " } else { "" };
    let id = format!("tp/{}{}/r={r}/size={size}", if reversed { "reversed-" } else { "" }, kind.name());
    let anchor = format!("{orient}{}^({r}) is totally positive", kind_symbol(kind));
    let claim = Claim::new(id, section, anchor, expected_tp(kind, r, size, reversed), format!("{size}x{size}"), move || {
        checks::tp(kind, r, size, reversed, cross)
    });
    match (kind, reversed) {
        (TriangleKind::StirlingCycle | TriangleKind::StirlingSubset, false) => claim.full_cap("70x70"),
        (TriangleKind::StirlingCycle, true) if r == 2 => claim.full_cap("90x90"),
        (TriangleKind::StirlingSubset, true) if r == 2 => claim.full_cap("70x70"),
        (TriangleKind::QuasiEulerianCycle | TriangleKind::QuasiEulerianSubset, true) => claim.full_cap("50x50"),
        (TriangleKind::OrderedPhylo, false) => claim.full_cap("100x100"),
        (TriangleKind::OrderedPhylo, true) => claim.full_cap("80x80"),
        _ => claim,
    }
}

pub fn hankel_claim(kind: TriangleKind, r: u32, size: usize, order: usize) -> Claim {
    let id = format!("hankel/{}/r={r}/size={size}/order={order}", kind.name());
    let anchor = format!("row polynomials of {}^({r}) are coefficientwise Hankel-totally positive", kind_symbol(kind));
    let claim = Claim::new(id, Section::Hankel, anchor, expected_hankel(kind, r, size, order), format!("{size}x{size}"), move || {
        checks::hankel(kind, r, size, order)
    });
    match kind {
        TriangleKind::StirlingCycle if r >= 3 => claim.full_cap("11x11"),
        TriangleKind::QuasiEulerianCycle => claim.full_cap("9x9"),
        TriangleKind::OrderedPhylo => claim.full_cap("10x10"),
        _ => claim,
    }
}

/// The default desk-scale campaign, plus the optional plot section.
pub fn build(cfg: &CampaignConfig) -> Result<Campaign, CliError> {
    cfg.validate()?;
    cfg.check_guards()?;
    let caps = cfg.caps.clone();
    let bits = cfg.precision_bits;
    let mut claims = Vec::new();

    // Reference tables.
    let tables: [(TriangleKind, u32); 4] = [
        (TriangleKind::StirlingCycle, 4),
        (TriangleKind::StirlingSubset, 4),
        (TriangleKind::QuasiEulerianCycle, 5),
        (TriangleKind::QuasiEulerianSubset, 5),
    ];
    for (kind, r_max) in tables {
        for r in 1..=r_max {
            claims.push(Claim::new(
                format!("golden/{}/r={r}", kind.name()),
                Section::Golden,
                format!("{}^({r}) matches the reference table entries and row sums", kind_symbol(kind)),
                V,
                "all tabulated rows",
                move || checks::golden_table(kind, r),
            ));
        }
    }
    claims.push(Claim::new(
        "golden/ordered-phylo",
        Section::Golden,
        "D matches the closed form table entries and row sums",
        V,
        "all tabulated rows",
        || checks::golden_table(TriangleKind::OrderedPhylo, 0),
    ));

    // Total positivity of the configured triangles.
    for f in &cfg.families {
        let kind = parse_kind(&f.kind)?;
        claims.push(tp_claim(kind, f.r, caps.tp_size, false, caps.minor_cross_check, Section::Tp));
    }
    for kind in [TriangleKind::StirlingCycle, TriangleKind::StirlingSubset] {
        claims.push(tp_claim(kind, 2, caps.tp_size, true, caps.minor_cross_check, Section::Tp));
    }
    claims.push(tp_claim(TriangleKind::OrderedPhylo, 0, caps.tp_size, false, caps.minor_cross_check, Section::Tp));
    claims.push(tp_claim(TriangleKind::OrderedPhylo, 0, caps.tp_size, true, caps.minor_cross_check, Section::Tp));

    // Reversed triangles that fail.
    let fx = Section::ReversedFalsification;
    claims.push(tp_claim(TriangleKind::StirlingCycle, 3, 5, true, 5, fx));
    claims.push(tp_claim(TriangleKind::StirlingCycle, 3, 6, true, 6, fx));
    claims.push(tp_claim(TriangleKind::StirlingSubset, 3, 12, true, 9, fx));
    claims.push(tp_claim(TriangleKind::StirlingSubset, 3, 13, true, 9, fx));
    for family in [Family::Cycle, Family::Subset] {
        let name = if family == Family::Cycle { "cycle" } else { "subset" };
        for r in 4..=6 {
            claims.push(Claim::new(
                format!("tp/reversed-{name}/r={r}/stated-minor"),
                fx,
                format!("the 2x2 minor T(2,2)T(3,2) - T(2,1)T(3,3) of the reversed {name} triangle of order {r} is negative"),
                F,
                "rows {2,3} x cols {0,1}",
                move || checks::reversed_stated_minor(family, r),
            ));
        }
    }

    // Reversed quasi-Eulerian triangles.
    for kind in [TriangleKind::QuasiEulerianCycle, TriangleKind::QuasiEulerianSubset] {
        for r in 2..=6 {
            claims.push(tp_claim(kind, r, caps.tp_size, true, caps.minor_cross_check, Section::QuasiReversedTp));
        }
    }

    // Hankel matrices.
    let (hs, ho) = (caps.hankel_size, caps.hankel_minor_order);
    for r in 2..=5 {
        claims.push(hankel_claim(TriangleKind::StirlingCycle, r, hs, ho));
    }
    for r in 3..=5 {
        claims.push(hankel_claim(TriangleKind::QuasiEulerianCycle, r, hs, ho));
    }
    claims.push(hankel_claim(TriangleKind::OrderedPhylo, 0, hs, ho));
    for r in 3..=5 {
        claims.push(Claim::new(
            format!("hankel/subset/r={r}/witness"),
            Section::Hankel,
            format!("the 3x3 Hankel minor on rows 1..3, columns 0..2 of the subset polynomials of order {r} has a negative coefficient"),
            F,
            "rows {1,2,3} x cols {0,1,2}",
            move || checks::hankel_subset_witness(r),
        ));
    }

    // Zeros.
    let rn = caps.root_n_max;
    for (kind, label, shift) in [
        (CertKind::Cycle2, "hat-cycle", 1),
        (CertKind::Subset2, "hat-subset", 1),
        (CertKind::OrderedPhylo, "ordered-phylo", 0),
    ] {
        claims.push(Claim::new(
            format!("roots/{label}/n<={rn}"),
            Section::Roots,
            format!("{label} polynomials have simple real zeros in (-1,0) interlacing their predecessors"),
            V,
            format!("n<={rn}"),
            move || checks::root_certificates(kind, rn + shift),
        ));
    }
    let bn = caps.boundary_n_max;
    for family in [Family::Cycle, Family::Subset] {
        let name = if family == Family::Cycle { "hat-cycle" } else { "hat-subset" };
        claims.push(Claim::new(
            format!("roots/{name}/boundary/n<={bn}"),
            Section::Roots,
            format!("{name} polynomials take the closed-form values at 0 and -1"),
            V,
            format!("n<={bn}"),
            move || checks::hat_boundary(family, bn),
        ));
        claims.push(Claim::new(
            format!("roots/{}/r=1/real/n<={rn}", if family == Family::Cycle { "cycle" } else { "subset" }),
            Section::Roots,
            "first-order row polynomials are real-rooted",
            V,
            format!("n<={rn}"),
            move || checks::all_real(family, 1, rn),
        ));
    }

    // Discriminants and nonreal zeros.
    let dn = caps.discriminant_n_max;
    for r in 3..=6 {
        claims.push(Claim::new(
            format!("discriminant/cycle/r={r}"),
            Section::Discriminant,
            format!("D_{r}(n) < 0 for n >= 3"),
            V,
            format!("3<=n<={dn}"),
            move || checks::cycle_discriminant(r, dn),
        ));
        claims.push(Claim::new(
            format!("nonreal/cycle/r={r}"),
            Section::Discriminant,
            format!("c_{{{r},n}} has nonreal zeros for n >= 3"),
            V,
            format!("3<=n<={dn}"),
            move || checks::nonreal_zeros(Family::Cycle, r, 3, dn, bits),
        ));
        let (from, expect) = if r == 3 { (4, V) } else { (3, V) };
        claims.push(Claim::new(
            format!("nonreal/subset/r={r}"),
            Section::Discriminant,
            format!("s_{{{r},n}} has nonreal zeros for n >= {from}"),
            expect,
            format!("{from}<=n<={dn}"),
            move || checks::nonreal_zeros(Family::Subset, r, from, dn, bits),
        ));
        let asserted = r >= 4;
        claims.push(Claim::new(
            format!("discriminant/subset/r={r}"),
            Section::Discriminant,
            format!("the quadratic derivative of s_{{{r},n}}/x has negative discriminant"),
            if asserted { V } else { O },
            format!("3<=n<={dn}"),
            move || checks::subset_discriminant(r, dn, asserted),
        ));
    }
    for family in [Family::Cycle, Family::Subset] {
        let name = if family == Family::Cycle { "cycle" } else { "subset" };
        for r in 3..=6 {
            claims.push(Claim::new(
                format!("left-half-plane/{name}/r={r}"),
                Section::Discriminant,
                format!("zeros of the {name} polynomials of order {r} lie in the closed left half-plane"),
                O,
                format!("3<=n<={dn}"),
                move || checks::left_half_plane(family, r, 3, dn, bits),
            ));
        }
    }

    // Brute-force enumerations.
    let on = caps.oracle_n_max;
    let rn_cap = 2 * on;
    claims.push(Claim::new(
        format!("oracle/derangements/N<={}", on + 3),
        Section::Oracles,
        "derangements of [n+k] with k cycles number [n k]^(2)",
        V,
        format!("n+k<={}", on + 3),
        move || checks::derangements(on + 3),
    ));
    for r in 2..=4u32 {
        let n = rn_cap / r as usize;
        claims.push(Claim::new(
            format!("oracle/marked-words/r={r}/n<={n}"),
            Section::Oracles,
            format!("ascent-marked Stirling words of order {r} with n-k marks number [n k]^({r})"),
            V,
            format!("n<={n}"),
            move || checks::marked_words(r, n),
        ));
        claims.push(Claim::new(
            format!("oracle/b-counts/r={r}/n<={n}"),
            Section::Oracles,
            format!("Stirling words of order {r} by consecutive ascents give the rows of Q_C^({r})"),
            V,
            format!("n<={n}"),
            move || checks::ascent_counts(r, n),
        ));
    }
    claims.push(Claim::new(
        format!("oracle/edge-marked-ternary/n<={on}"),
        Section::Oracles,
        "edge-marked increasing ternary trees with k unmarked edges number [n k]^(2)",
        V,
        format!("n<={on}"),
        move || checks::edge_marked_ternary(on),
    ));
    claims.push(Claim::new(
        format!("oracle/vertex-marked-ordered/n<={on}"),
        Section::Oracles,
        "vertex-marked increasing ordered trees with k unmarked vertices number [n k]^(2)",
        V,
        format!("n<={on}"),
        move || checks::vertex_marked_ordered(on, LeafMarking::MaxLeafForced),
    ));
    claims.push(Claim::new(
        format!("oracle/vertex-marked-ordered/all-leaves/n<={on}"),
        Section::Oracles,
        "marking every leaf optionally gives (1+x) times the cycle row polynomial",
        V,
        format!("n<={on}"),
        move || checks::vertex_marked_ordered(on, LeafMarking::AllLeaves),
    ));
    claims.push(Claim::new(
        format!("oracle/phi-psi/n<={on}"),
        Section::Oracles,
        "Phi and Psi are inverse bijections sending left edges to internal vertices",
        V,
        format!("n<={on}"),
        move || checks::phi_psi(on),
    ));
    for (flavor, name) in [
        (PhyloFlavor::Unordered, "unordered"),
        (PhyloFlavor::Cyclic, "cyclic"),
        (PhyloFlavor::Ordered, "ordered"),
    ] {
        claims.push(Claim::new(
            format!("oracle/phylo-{name}/n<={on}"),
            Section::Oracles,
            format!("{name} phylogenetic trees by internal vertices give their triangle"),
            V,
            format!("n<={on}"),
            move || checks::phylo(flavor, on),
        ));
    }

    // Identities.
    let ir = caps.identity_rows;
    let so = caps.series_order;
    claims.push(Claim::new(
        format!("identity/matrix/rows<={ir}"),
        Section::Identities,
        "reversed second-order triangles factor through the second-order Eulerian triangle",
        V,
        format!("rows<={ir}"),
        move || checks::matrix_identities(ir),
    ));
    claims.push(Claim::new(
        "identity/eulerian-binomial/n<=8",
        Section::Identities,
        "[n n-k]^(2) = sum_i <<n i>> binom(i,k)",
        V,
        "n<=8",
        || checks::eulerian_binomial(8),
    ));
    claims.push(Claim::new(
        "identity/ternary/n<=8",
        Section::Identities,
        "multivariate Eulerian polynomials specialize to E^(2), C^(2), S^(2) rows",
        V,
        "n<=8",
        || checks::ternary_specializations(8),
    ));
    for (spec, name) in [
        (WardSpecialization::Subset, "subset"),
        (WardSpecialization::Cyclic, "cyclic"),
        (WardSpecialization::Ordered, "ordered"),
    ] {
        claims.push(Claim::new(
            format!("identity/ward-{name}/n<=7"),
            Section::Identities,
            format!("the {name} Ward specialization gives its triangle"),
            V,
            "n<=7",
            move || checks::ward_specialization(spec, 7),
        ));
    }
    claims.push(Claim::new(
        format!("identity/t-fraction/order={so}"),
        Section::Identities,
        "the T-fraction with alpha_n = n x, delta_n = n - 1 generates the subset Ward polynomials",
        V,
        format!("order {so}"),
        move || checks::t_fraction(so),
    ));
    for (case, name) in [
        (CorrespondenceCase::Power(2), "ternary"),
        (CorrespondenceCase::Linear, "binary-unordered"),
        (CorrespondenceCase::Power(3), "power-3"),
        (CorrespondenceCase::Exponential, "cyclic"),
    ] {
        claims.push(Claim::new(
            format!("identity/correspondence-{name}/order={so}"),
            Section::Identities,
            format!("the {name} tree correspondence satisfies its series identities"),
            V,
            format!("order {so}"),
            move || checks::correspondence(case, so),
        ));
    }

    // Log-concavity.
    let ln = caps.log_concavity_n_max;
    for family in [Family::Cycle, Family::Subset] {
        let name = if family == Family::Cycle { "cycle" } else { "subset" };
        for r in 1..=cfg.log_concavity_r_max {
            claims.push(
                Claim::new(
                    format!("log-concave/{name}/r={r}/n<={ln}"),
                    Section::LogConcavity,
                    format!("rows of the {name} triangle of order {r} are log-concave"),
                    V,
                    format!("n<={ln}"),
                    move || checks::log_concavity(family, r, ln),
                )
                .full_cap("n<=1000"),
            );
        }
    }

    // Root clouds.
    let sink: PlotSink = Arc::new(Mutex::new(Vec::new()));
    let mut plot_kind = None;
    if let Some(p) = &cfg.plot {
        let family = parse_family(&p.kind)?;
        plot_kind = Some(p.kind.clone());
        for &r in &p.r {
            for &n in &p.n {
                let sink = Arc::clone(&sink);
                let kind = p.kind.clone();
                claims.push(Claim::new(
                    format!("plot/{kind}/r={r}/n={n}"),
                    Section::Plot,
                    "normalized root cloud with certified residuals and exact real counts",
                    V,
                    format!("{bits} bits"),
                    move || {
                        let cl = plot::clouds(family, &[r], &[n], bits)?;
                        let out = plot::check_cloud(&cl[0]);
                        sink.lock().expect("plot sink").push(((r, n), plot::cloud_rows(&kind, &cl[0])));
                        Ok(out)
                    },
                ));
            }
        }
    }

    Ok(Campaign { claims, plot_sink: sink, plot_kind })
}

//! Individual claim checks. A falsified outcome always carries a witness; an
//! internal disagreement between two routes is an error, not an outcome.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use stirling_core::analysis::{
    certify_roots, discriminant, hat_boundary_values, hat_recurrence_step, log_concave_rows, numeric_roots,
    real_root_count_with_multiplicity, row_poly, AnalysisError, CertKind,
};
use stirling_core::arith::binomial;
use stirling_core::linalg::{
    all_minors_nonneg, coeffwise_hankel_tp, hankel_of_polys, neville_tp_test, poly_minor, ExactMatrix, MinorValue,
    Witness,
};
use stirling_core::oracles::{
    derangement_cycle_histogram, edge_marked_ternary_counts, enumerate_phylo, for_each_increasing_ordered,
    for_each_increasing_ternary, lanc, marked_word_counts, multivariate_eulerian, phi, psi,
    vertex_marked_ordered_counts, LeafMarking, PhyloFlavor, LEFT,
};
use stirling_core::series::{
    t_fraction_expand, to_univariate, ward_polynomials, ward_t_fraction_coefficients, CorrespondenceCase,
    WardSpecialization,
};
use stirling_core::triangle::{
    binomial_matrix_int, eulerian_r, matmul, ordered_phylo_triangle, quasi_eulerian, reverse_rows, reverse_shift,
    stirling_r,
};
use stirling_core::{Family, IntPolynomial, Triangle, TriangleKind};

use crate::golden;
use crate::report::Outcome;
use crate::triangles::{build_oriented, build_triangle};
use crate::CliError;

type Check = Result<Outcome, CliError>;

pub fn witness_text(w: &Witness) -> String {
    let value = match &w.value {
        MinorValue::Integer(v) => v.to_string(),
        MinorValue::Polynomial(p) => p.to_string(),
    };
    format!("rows={:?} cols={:?} minor={value}", w.rows, w.cols)
}

pub fn row_text<T: ToString>(row: &[T]) -> String {
    format!("[{}]", row.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
}

fn big(row: &[u64]) -> Vec<BigInt> {
    row.iter().map(|&v| BigInt::from(v)).collect()
}

fn family_name(f: Family) -> &'static str {
    match f {
        Family::Cycle => "cycle",
        Family::Subset => "subset",
    }
}

/// First index where two rows differ, zero-padded.
fn first_row_mismatch(a: &[BigInt], b: &[BigInt]) -> Option<usize> {
    let zero = BigInt::zero();
    (0..a.len().max(b.len())).find(|&k| a.get(k).unwrap_or(&zero) != b.get(k).unwrap_or(&zero))
}

fn row_check(what: &str, n: usize, got: &[BigInt], want: &[BigInt]) -> Option<String> {
    first_row_mismatch(got, want)
        .map(|k| format!("{what} n={n} k={k}: enumeration {} vs triangle {}", row_text(got), row_text(want)))
}

// ---------------------------------------------------------------------------
// Reference tables

pub fn golden_table(kind: TriangleKind, r: u32) -> Check {
    Ok(match golden::check(kind, r) {
        Ok(rows) => Outcome::verified().with_value(format!("{rows} rows with row sums")),
        Err(m) => Outcome::falsified(m),
    })
}

// ---------------------------------------------------------------------------
// Total positivity

/// Recomputes an integer witness minor by determinant and confirms it.
fn confirm_witness(m: &ExactMatrix, w: &Witness) -> Result<(), CliError> {
    if let MinorValue::Integer(v) = &w.value {
        let d = m.minor(&w.rows, &w.cols);
        if &d != v || !d.is_negative() {
            return Err(CliError::Compute(format!("witness {} does not recompute (got {d})", witness_text(w))));
        }
    }
    Ok(())
}

/// Neville elimination on the leading `size x size` block, cross-checked by
/// enumerating every minor of the leading `cross x cross` block.
pub fn tp(kind: TriangleKind, r: u32, size: usize, reversed: bool, cross: usize) -> Check {
    if size == 0 {
        return Err(CliError::Usage("matrix size must be positive".into()));
    }
    let t = build_oriented(kind, r, size - 1, reversed)?;
    let m = ExactMatrix::leading_of(&t, size);
    let report = neville_tp_test(&m);
    let c = cross.min(size);
    if c > 0 {
        let block = ExactMatrix::leading_of(&t, c);
        let minors = all_minors_nonneg(&block, c);
        let elim = neville_tp_test(&block);
        if minors.is_tp() != elim.is_tp() || (report.is_tp() && !minors.is_tp()) {
            return Err(CliError::Compute(format!(
                "elimination and minor enumeration disagree on the leading {c}x{c} block of {} r={r}",
                kind.name()
            )));
        }
    }
    match &report.witness {
        None => Ok(Outcome::verified().with_value(format!("elimination {size}x{size}; all minors of leading {c}x{c}"))),
        Some(w) => {
            confirm_witness(&m, w)?;
            Ok(Outcome::falsified(witness_text(w)).with_value(format!("first failure within {size}x{size}")))
        }
    }
}

/// The explicit minor `T(2,2)T(3,2) - T(2,1)T(3,3)` of the row-reversed
/// triangle, on rows `{2,3}` and columns `{0,1}`.
pub fn reversed_stated_minor(family: Family, r: u32) -> Check {
    let t = stirling_r(family, r, 3);
    let stated = t.get(2, 2) * t.get(3, 2) - t.get(2, 1) * t.get(3, 3);
    let m = ExactMatrix::leading_of(&reverse_rows(&t), 4);
    let minor = m.minor(&[2, 3], &[0, 1]);
    if minor != stated {
        return Err(CliError::Compute(format!("stated minor {stated} differs from the matrix minor {minor}")));
    }
    let elim = neville_tp_test(&m);
    if stated.is_negative() == elim.is_tp() {
        return Err(CliError::Compute("elimination disagrees with the explicit 2x2 minor".into()));
    }
    Ok(if stated.is_negative() {
        Outcome::falsified(format!("rows=[2, 3] cols=[0, 1] minor={stated}"))
    } else {
        Outcome::verified().with_value(format!("minor={stated}"))
    })
}

// ---------------------------------------------------------------------------
// Hankel matrices of row polynomials

/// Row polynomials `p_0..p_{count-1}` of the triangle.
pub fn row_polys(kind: TriangleKind, r: u32, count: usize) -> Result<Vec<IntPolynomial>, CliError> {
    let t = build_triangle(kind, r, count.saturating_sub(1))?;
    (0..count).map(|n| row_poly(&t, n).map_err(CliError::from)).collect()
}

/// Coefficientwise test of every minor of order at most `order` of the
/// `size x size` Hankel matrix.
pub fn hankel(kind: TriangleKind, r: u32, size: usize, order: usize) -> Check {
    if size == 0 || order == 0 {
        return Err(CliError::Usage("Hankel size and minor order must be positive".into()));
    }
    let polys = row_polys(kind, r, 2 * size - 1)?;
    let report = coeffwise_hankel_tp(&polys, size, order)?;
    Ok(match &report.witness {
        None => Outcome::verified().with_value(format!("{size}x{size}, minors of order <= {}", order.min(size))),
        Some(w) => Outcome::falsified(witness_text(w)),
    })
}

/// The `3 x 3` minor on rows `1..=3`, columns `0..=2` of the Hankel matrix
/// of the subset row polynomials, by two expansions.
pub fn hankel_subset_witness(r: u32) -> Check {
    let polys = row_polys(TriangleKind::StirlingSubset, r, 7)?;
    let h = hankel_of_polys(&polys, 4)?;
    let minor = poly_minor(&h, &[1, 2, 3], &[0, 1, 2]);
    let e = |i: usize, j: usize| &polys[i + j];
    let rule_of_sarrus = &(&(e(1, 0) * e(2, 1)) * e(3, 2)) + &(&(e(1, 1) * e(2, 2)) * e(3, 0));
    let rule_of_sarrus = &rule_of_sarrus + &(&(e(1, 2) * e(2, 0)) * e(3, 1));
    let negative = &(&(&(e(1, 2) * e(2, 1)) * e(3, 0)) + &(&(e(1, 0) * e(2, 2)) * e(3, 1))) + &(&(e(1, 1) * e(2, 0)) * e(3, 2));
    let direct = &rule_of_sarrus - &negative;
    if direct != minor {
        return Err(CliError::Compute("the two expansions of the 3x3 Hankel minor disagree".into()));
    }
    Ok(if minor.has_negative_coefficient() {
        Outcome::falsified(format!("rows=[1, 2, 3] cols=[0, 1, 2] minor={minor}"))
    } else {
        Outcome::verified().with_value(format!("minor={minor}"))
    })
}

// ---------------------------------------------------------------------------
// Zeros

/// Certificates for `q_n = p_n/x`, `1 <= n <= n_max` (row index of `p`).
pub fn root_certificates(kind: CertKind, n_max: usize) -> Check {
    match certify_roots(kind, n_max) {
        Ok(certs) => {
            let deg = certs.last().map_or(0, |c| c.degree);
            Ok(Outcome::verified().with_value(format!("{} polynomials, degree up to {deg}", certs.len())))
        }
        Err(AnalysisError::Certification { n, clause }) => Ok(Outcome::falsified(format!("n={n} clause={clause:?}"))),
        Err(e) => Err(e.into()),
    }
}

/// The hat polynomials from their recurrence agree with the triangle rows
/// divided by `x`, and take the closed-form values at `0` and `-1`.
pub fn hat_boundary(family: Family, n_max: usize) -> Check {
    let t = stirling_r(family, 2, n_max + 1);
    let mut hat = IntPolynomial::one();
    for n in 0..=n_max {
        if n > 0 {
            hat = hat_recurrence_step(&hat, n, family);
        }
        let from_row = row_poly(&t, n + 1)?.div_x();
        if from_row.as_ref() != Some(&hat) {
            return Ok(Outcome::falsified(format!("n={n}: recurrence gives {hat}, row gives {from_row:?}")));
        }
        let (at0, at_m1) = hat_boundary_values(family, n);
        let got0 = hat.eval(&BigInt::zero());
        let got_m1 = hat.eval(&-BigInt::one());
        if got0 != at0 || got_m1 != at_m1 {
            return Ok(Outcome::falsified(format!("n={n}: values ({got0}, {got_m1}), expected ({at0}, {at_m1})")));
        }
    }
    Ok(Outcome::verified())
}

/// Real-rootedness of `p_n/x` for `1 <= n <= n_max`, counted with
/// multiplicity by Sturm sequences.
pub fn all_real(family: Family, r: u32, n_max: usize) -> Check {
    let t = stirling_r(family, r, n_max);
    for n in 1..=n_max {
        let q = row_poly(&t, n)?.div_x().ok_or_else(|| CliError::Compute(format!("p_{n}(0) != 0")))?;
        let real = real_root_count_with_multiplicity(&q)?;
        let deg = q.degree().unwrap_or(0);
        if real != deg {
            return Ok(Outcome::falsified(format!("n={n}: {real} real roots of {deg}")));
        }
    }
    Ok(Outcome::verified())
}

/// Discriminant of the quadratic `d^{n-3}/dx^{n-3} (p_n/x)`, from the row.
pub fn derivative_discriminant(p: &IntPolynomial, n: usize) -> Result<BigInt, CliError> {
    let mut q = p.div_x().ok_or_else(|| CliError::Compute(format!("p_{n}(0) != 0")))?;
    for _ in 0..n - 3 {
        q = q.derivative();
    }
    if q.degree() != Some(2) {
        return Err(CliError::Compute(format!("derivative of row {n} is not quadratic")));
    }
    let (c, b, a) = (q.coeff(0), q.coeff(1), q.coeff(2));
    Ok(&b * &b - BigInt::from(4) * a * c)
}

/// Closed form `D_r(n) < 0` for `3 <= n <= n_max`, each value also
/// recomputed from the derivative of the row polynomial.
pub fn cycle_discriminant(r: u32, n_max: usize) -> Check {
    let t = stirling_r(Family::Cycle, r, n_max);
    for n in 3..=n_max {
        let d = discriminant(r, n)?;
        let direct = derivative_discriminant(&row_poly(&t, n)?, n)?;
        if d != direct {
            return Err(CliError::Compute(format!("r={r} n={n}: closed form {d} differs from {direct}")));
        }
        if !d.is_negative() {
            return Ok(Outcome::falsified(format!("n={n}: D={d}")));
        }
    }
    Ok(Outcome::verified().with_value(format!("n=3..={n_max}")))
}

/// Signs of the derivative discriminants of `s_{r,n}/x`.
pub fn subset_discriminant(r: u32, n_max: usize, assert_negative: bool) -> Check {
    let t = stirling_r(Family::Subset, r, n_max);
    let mut signs = Vec::new();
    for n in 3..=n_max {
        let d = derivative_discriminant(&row_poly(&t, n)?, n)?;
        if assert_negative && !d.is_negative() {
            return Ok(Outcome::falsified(format!("n={n}: D={d}")));
        }
        signs.push(match d.sign() {
            num_bigint::Sign::Minus => '-',
            num_bigint::Sign::NoSign => '0',
            num_bigint::Sign::Plus => '+',
        });
    }
    let text = format!("signs n=3..={n_max}: {}", signs.into_iter().collect::<String>());
    Ok(if assert_negative { Outcome::verified().with_value(text) } else { Outcome::observed(text) })
}

/// `p_n/x` has nonreal zeros for `n_from <= n <= n_max`: the exact Sturm
/// count with multiplicity falls short of the degree, and the numeric roots
/// show exactly the complementary number of nonreal zeros.
pub fn nonreal_zeros(family: Family, r: u32, n_from: usize, n_max: usize, bits: usize) -> Check {
    let t = stirling_r(family, r, n_max);
    for n in n_from..=n_max {
        let q = row_poly(&t, n)?.div_x().ok_or_else(|| CliError::Compute(format!("p_{n}(0) != 0")))?;
        let deg = q.degree().unwrap_or(0);
        let exact = real_root_count_with_multiplicity(&q)?;
        let numeric = numeric_roots(&q, bits)?;
        let nonreal = numeric.roots.len() - numeric.real_count;
        if nonreal != deg - exact {
            return Err(CliError::Compute(format!("{} r={r} n={n}: numeric and exact counts disagree", family_name(family))));
        }
        if exact == deg {
            return Ok(Outcome::falsified(format!("n={n}: all {deg} roots real")));
        }
    }
    Ok(Outcome::verified().with_value(format!("n={n_from}..={n_max}")))
}

/// Observation only: number of computed roots with positive real part.
pub fn left_half_plane(family: Family, r: u32, n_from: usize, n_max: usize, bits: usize) -> Check {
    let t = stirling_r(family, r, n_max);
    let mut right = Vec::new();
    let mut total = 0;
    for n in n_from..=n_max {
        let q = row_poly(&t, n)?.div_x().ok_or_else(|| CliError::Compute(format!("p_{n}(0) != 0")))?;
        let roots = numeric_roots(&q, bits)?;
        total += roots.roots.len();
        let count = roots
            .roots
            .iter()
            .filter(|z| z.has_positive_real_part())
            .count();
        if count > 0 {
            right.push(format!("n={n}:{count}"));
        }
    }
    Ok(Outcome::observed(if right.is_empty() {
        format!("all {total} roots have nonpositive real part")
    } else {
        format!("roots with positive real part at {}", right.join(","))
    }))
}

// ---------------------------------------------------------------------------
// Log-concavity

pub fn log_concavity(family: Family, r: u32, n_max: usize) -> Check {
    let t = stirling_r(family, r, n_max);
    let rep = log_concave_rows(&t, n_max);
    Ok(match (rep.violation, rep.gap) {
        (None, None) => Outcome::verified().with_value(format!("{} rows", rep.rows_checked)),
        (Some((n, k)), _) => Outcome::falsified(format!("T({n},{k})^2 < T({n},{})T({n},{})", k - 1, k + 1)),
        (None, Some(n)) => Outcome::falsified(format!("row {n} has an internal zero")),
    })
}

// ---------------------------------------------------------------------------
// Brute-force enumerations

/// Fixed-point-free permutations of `[N]` with `k` cycles, `N <= big_n_max`.
pub fn derangements(big_n_max: usize) -> Check {
    let c2 = stirling_r(Family::Cycle, 2, big_n_max);
    for big_n in 0..=big_n_max {
        let hist = derangement_cycle_histogram(big_n)?;
        for (k, &count) in hist.iter().enumerate() {
            if k <= big_n - k && BigInt::from(count) != c2.get(big_n - k, k as isize) {
                return Ok(Outcome::falsified(format!("N={big_n} k={k}: {count} vs {}", c2.get(big_n - k, k as isize))));
            }
        }
    }
    Ok(Outcome::verified())
}

/// Row `n` of `C^(2)` from derangements of `[n+k]` with `k` cycles.
pub fn derangement_row(n: usize) -> Result<Vec<BigInt>, CliError> {
    (0..=n)
        .map(|k| Ok(BigInt::from(derangement_cycle_histogram(n + k)?.get(k).copied().unwrap_or(0))))
        .collect()
}

/// Marked Stirling words: by marks reversed they give `C^(r)` rows, and the
/// binomial refinement of the ascent histogram gives the mark histogram.
pub fn marked_words(r: u32, n_max: usize) -> Check {
    let c = stirling_r(Family::Cycle, r, n_max);
    for n in 0..=n_max {
        let counts = marked_word_counts(r, n)?;
        let by_k: Vec<BigInt> = counts.by_marks.iter().rev().map(|&v| BigInt::from(v)).collect();
        if let Some(m) = row_check("marked words", n, &by_k, c.row(n).expect("row")) {
            return Ok(Outcome::falsified(m));
        }
        let refined: Vec<BigInt> = (0..counts.by_ascents.len())
            .map(|j| (0..counts.by_ascents.len()).map(|i| BigInt::from(counts.by_ascents[i]) * binomial(i, j)).sum())
            .collect();
        if let Some(m) = row_check("binomial refinement", n, &refined, &big(&counts.by_marks)) {
            return Ok(Outcome::falsified(m));
        }
    }
    Ok(Outcome::verified())
}

/// Words by consecutive ascents give the rows of `Q_C^(r)`.
pub fn ascent_counts(r: u32, n_max: usize) -> Check {
    let q = quasi_eulerian(Family::Cycle, r, n_max);
    for n in 0..=n_max {
        let counts = marked_word_counts(r, n)?;
        if let Some(m) = row_check("ascent counts", n, &big(&counts.by_ascents), q.row(n).expect("row")) {
            return Ok(Outcome::falsified(m));
        }
    }
    Ok(Outcome::verified())
}

pub fn edge_marked_ternary(n_max: usize) -> Check {
    let c2 = stirling_r(Family::Cycle, 2, n_max);
    for n in 0..=n_max {
        if let Some(m) = row_check("edge-marked", n, &big(&edge_marked_ternary_counts(n)?), c2.row(n).expect("row")) {
            return Ok(Outcome::falsified(m));
        }
    }
    Ok(Outcome::verified())
}

/// With the largest leaf always marked the histogram is `C^(2)`; with every
/// leaf optional it is `(1+x)` times it.
pub fn vertex_marked_ordered(n_max: usize, rule: LeafMarking) -> Check {
    let c2 = stirling_r(Family::Cycle, 2, n_max);
    for n in 0..=n_max {
        let got = big(&vertex_marked_ordered_counts(n, rule)?);
        let row = IntPolynomial::new(c2.row(n).expect("row").to_vec());
        let want = match rule {
            LeafMarking::MaxLeafForced => row,
            LeafMarking::AllLeaves if n == 0 => row,
            LeafMarking::AllLeaves => &row * &IntPolynomial::from_i64s(&[1, 1]),
        };
        if let Some(m) = row_check("vertex-marked", n, &got, want.coeffs()) {
            return Ok(Outcome::falsified(m));
        }
    }
    Ok(Outcome::verified())
}

/// `Psi(Phi(T)) = T` on every tree, left edges go to internal vertices,
/// parents are the left ancestors, and the images are distinct and number
/// as many as the increasing ordered trees.
pub fn phi_psi(n_max: usize) -> Check {
    for n in 0..=n_max {
        let mut images = std::collections::BTreeSet::new();
        let mut count = 0usize;
        let mut failure: Option<String> = None;
        let mut error: Option<CliError> = None;
        for_each_increasing_ternary(n, true, |t| {
            if failure.is_some() || error.is_some() {
                return;
            }
            let s = match phi(t) {
                Ok(s) => s,
                Err(e) => return error = Some(e.into()),
            };
            match psi(&s) {
                Ok(back) if &back == t => {}
                Ok(_) => return failure = Some(format!("Psi(Phi(T)) != T for T={t}")),
                Err(e) => return error = Some(e.into()),
            }
            if t.edge_count(LEFT) != s.internal_count() {
                return failure = Some(format!("left edges of {t} differ from internal vertices of {s}"));
            }
            if let Some(j) = (1..=n as u32).find(|&j| s.parent(j) != lanc(t, j)) {
                return failure = Some(format!("parent of {j} in {s} is not its left ancestor in {t}"));
            }
            images.insert(s.to_string());
            count += 1;
        })?;
        if let Some(e) = error {
            return Err(e);
        }
        if let Some(f) = failure {
            return Ok(Outcome::falsified(f));
        }
        let mut ordered = 0usize;
        for_each_increasing_ordered(n, |_| ordered += 1)?;
        if images.len() != count || ordered != count {
            return Ok(Outcome::falsified(format!("n={n}: {} images of {count} trees, {ordered} ordered trees", images.len())));
        }
    }
    Ok(Outcome::verified())
}

pub fn phylo(flavor: PhyloFlavor, n_max: usize) -> Check {
    let t = phylo_triangle(flavor, n_max);
    for n in 0..=n_max {
        if let Some(m) = row_check("phylogenetic", n, &big(&enumerate_phylo(n, flavor)?), t.row(n).expect("row")) {
            return Ok(Outcome::falsified(m));
        }
    }
    Ok(Outcome::verified())
}

pub fn phylo_triangle(flavor: PhyloFlavor, n_max: usize) -> Triangle {
    match flavor {
        PhyloFlavor::Unordered => stirling_r(Family::Subset, 2, n_max),
        PhyloFlavor::Cyclic => stirling_r(Family::Cycle, 2, n_max),
        PhyloFlavor::Ordered => ordered_phylo_triangle(n_max),
    }
}

// ---------------------------------------------------------------------------
// Identities

fn same_rows(a: &Triangle, b: &Triangle, rows: usize) -> Option<usize> {
    (0..=rows).find(|&n| first_row_mismatch(a.row(n).unwrap_or(&[]), b.row(n).unwrap_or(&[])).is_some())
}

/// `rev C^(2) = E^(2) B_1`, `rev S^(2) = Ě^(2) B_1`, `Q_C^(2) = E^(2)` and
/// `Q_S^(2) = Ě^(2)` with `Ě^(2)(n,k) = E^(2)(n,n-k-1)`.
pub fn matrix_identities(rows: usize) -> Check {
    let e = eulerian_r(2, rows);
    let e_check = reverse_shift(&e);
    let b1 = binomial_matrix_int(1, rows);
    let mm = |a: &Triangle| matmul(a, &b1).map_err(|err| CliError::Compute(err.to_string()));
    let pairs = [
        ("rev C = E B", reverse_rows(&stirling_r(Family::Cycle, 2, rows)), mm(&e)?),
        ("rev S = E' B", reverse_rows(&stirling_r(Family::Subset, 2, rows)), mm(&e_check)?),
        ("Q_C = E", quasi_eulerian(Family::Cycle, 2, rows), e.clone()),
        ("Q_S = E'", quasi_eulerian(Family::Subset, 2, rows), e_check),
    ];
    for (name, a, b) in &pairs {
        if let Some(n) = same_rows(a, b, rows) {
            return Ok(Outcome::falsified(format!("{name}: row {n} {} vs {}", row_text(a.row(n).unwrap_or(&[])), row_text(b.row(n).unwrap_or(&[])))));
        }
    }
    Ok(Outcome::verified())
}

/// `[n, n-k]^(2) = sum_i <<n, i>> binom(i, k)`.
pub fn eulerian_binomial(n_max: usize) -> Check {
    let c2 = stirling_r(Family::Cycle, 2, n_max);
    let e2 = eulerian_r(2, n_max);
    for n in 0..=n_max {
        for k in 0..=n {
            let s: BigInt = (0..=n).map(|i| e2.get(n, i as isize) * binomial(i, k)).sum();
            if c2.get(n, (n - k) as isize) != s {
                return Ok(Outcome::falsified(format!("n={n} k={k}: {} vs {s}", c2.get(n, (n - k) as isize))));
            }
        }
    }
    Ok(Outcome::verified())
}

/// Specializations of the multivariate Eulerian polynomials over increasing
/// ternary trees: `(1,x,x)`, `(x,1+x,1+x)` and `(x,x,1+x)`.
pub fn ternary_specializations(n_max: usize) -> Check {
    let e2 = eulerian_r(2, n_max);
    let c2 = stirling_r(Family::Cycle, 2, n_max);
    let s2 = stirling_r(Family::Subset, 2, n_max);
    let one = IntPolynomial::one();
    let x = IntPolynomial::from_i64s(&[0, 1]);
    let one_x = IntPolynomial::from_i64s(&[1, 1]);
    for n in 0..=n_max {
        let p = multivariate_eulerian(2, n)?;
        let cases = [
            ("(1,x,x)", [one.clone(), x.clone(), x.clone()], &e2),
            ("(x,1+x,1+x)", [x.clone(), one_x.clone(), one_x.clone()], &c2),
            ("(x,x,1+x)", [x.clone(), x.clone(), one_x.clone()], &s2),
        ];
        for (name, img, t) in cases {
            let got = p.eval_univariate(&img).ok_or_else(|| CliError::Compute("non-integral evaluation".into()))?;
            if let Some(m) = row_check(name, n, got.coeffs(), t.row(n).expect("row")) {
                return Ok(Outcome::falsified(m));
            }
        }
    }
    Ok(Outcome::verified())
}

pub fn ward_specialization(spec: WardSpecialization, n_max: usize) -> Check {
    let t = match spec {
        WardSpecialization::Subset => stirling_r(Family::Subset, 2, n_max),
        WardSpecialization::Cyclic => stirling_r(Family::Cycle, 2, n_max),
        WardSpecialization::Ordered => ordered_phylo_triangle(n_max),
        WardSpecialization::Multivariate => return Err(CliError::Usage("choose a univariate specialization".into())),
    };
    let w = ward_polynomials(n_max, spec)?;
    for n in 0..=n_max {
        let got = to_univariate(&w[n]).ok_or_else(|| CliError::Compute("non-integral Ward polynomial".into()))?;
        if let Some(m) = row_check("Ward", n, got.coeffs(), t.row(n).expect("row")) {
            return Ok(Outcome::falsified(m));
        }
    }
    Ok(Outcome::verified())
}

/// The T-fraction with `alpha_n = n x`, `delta_n = n - 1` expands to the
/// subset Ward polynomials.
pub fn t_fraction(order: usize) -> Check {
    let (a, d) = ward_t_fraction_coefficients(order);
    let f = t_fraction_expand(&a, &d, order)?;
    let w = ward_polynomials(order, WardSpecialization::Subset)?;
    for n in 0..=order {
        if f.coeff(n) != &w[n] {
            return Ok(Outcome::falsified(format!("t^{n}: {} vs {}", f.coeff(n), w[n])));
        }
    }
    Ok(Outcome::verified())
}

pub fn correspondence(case: CorrespondenceCase, order: usize) -> Check {
    let rep = case.verify(order)?;
    Ok(if rep.holds() {
        Outcome::verified()
    } else {
        let at = |o: Option<usize>| o.map_or("-".to_string(), |v| v.to_string());
        Outcome::falsified(format!(
            "first failures: precondition {}, composition {}, derivative {}",
            at(rep.precondition_failure),
            at(rep.composition_failure),
            at(rep.derivative_failure)
        ))
    })
}

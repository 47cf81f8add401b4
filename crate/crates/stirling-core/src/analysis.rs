//! Row-generating polynomials and their root structure: exact Sturm-sequence
//! certificates of real-rootedness and interlacing, the hat-polynomial
//! recurrences, subdiagonal closed forms, the discriminant criterion,
//! log-concavity, and multiprecision root clouds.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use dashu_base::BitTest;
use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::IBig;
use num_bigint::{BigInt, Sign};
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{factorial, rat};
use crate::poly::{to_ibig, IntPolynomial};
use crate::triangle::{ordered_phylo_triangle, stirling_r, Family, Triangle};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum AnalysisError {
    #[error("row {0} is out of range")]
    RowOutOfRange(usize),
    #[error("the zero polynomial has no Sturm count")]
    ZeroPolynomial,
    #[error("empty interval")]
    EmptyInterval,
    #[error("argument {name} = {value} is below the minimum {min}")]
    ArgumentTooSmall { name: &'static str, value: usize, min: usize },
    #[error("root finder did not converge at {precision_bits} bits")]
    NoConvergence { precision_bits: usize },
    #[error("numeric real-root count {numeric} differs from exact count {exact}")]
    RealCountMismatch { numeric: usize, exact: usize },
    #[error("certificate failed at n = {n}: {clause:?}")]
    Certification { n: usize, clause: Clause },
}

/// `sum_k T(n,k) x^k`.
pub fn row_poly(t: &Triangle, n: usize) -> Result<IntPolynomial, AnalysisError> {
    t.row(n)
        .map(|row| IntPolynomial::new(row.to_vec()))
        .ok_or(AnalysisError::RowOutOfRange(n))
}

/// Evaluation point for sign-variation counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Point {
    NegInf,
    At(BigRational),
    PosInf,
}

/// Sturm sequence `p, p', -rem, ...`, each term a positive multiple of the
/// classical one. The last term is a scalar multiple of `gcd(p, p')`.
pub fn sturm_sequence(p: &IntPolynomial) -> Vec<IntPolynomial> {
    p.sturm_chain()
}

fn sign_at_point(p: &IntPolynomial, x: &Point) -> i8 {
    match x {
        Point::NegInf => p.sign_at_neg_inf(),
        Point::At(v) => p.sign_at(v),
        Point::PosInf => p.sign_at_pos_inf(),
    }
}

pub fn sign_variations(seq: &[IntPolynomial], x: &Point) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for p in seq {
        let s = sign_at_point(p, x);
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Removes every factor `(den·x - num)` of the rational root `a`.
fn deflate_at(p: &IntPolynomial, a: &BigRational) -> IntPolynomial {
    let factor = IntPolynomial::linear(-a.numer().clone(), a.denom().clone());
    let mut q = p.clone();
    while !q.is_zero() && q.sign_at(a) == 0 {
        q = q.div_exact(&factor).expect("rational root factor divides exactly");
    }
    q
}

/// Number of distinct real roots in the open interval `(a, b)`. Endpoints that
/// are roots are deflated away first.
pub fn sturm_count(p: &IntPolynomial, a: &BigRational, b: &BigRational) -> Result<usize, AnalysisError> {
    if p.is_zero() {
        return Err(AnalysisError::ZeroPolynomial);
    }
    if a >= b {
        return Err(AnalysisError::EmptyInterval);
    }
    let q = deflate_at(&deflate_at(p, a), b);
    let seq = sturm_sequence(&q);
    Ok(count_between(&seq, &Point::At(a.clone()), &Point::At(b.clone())))
}

fn count_between(seq: &[IntPolynomial], a: &Point, b: &Point) -> usize {
    sign_variations(seq, a) - sign_variations(seq, b)
}

/// Number of distinct real roots.
pub fn real_root_count(p: &IntPolynomial) -> Result<usize, AnalysisError> {
    if p.is_zero() {
        return Err(AnalysisError::ZeroPolynomial);
    }
    let seq = sturm_sequence(p);
    Ok(count_between(&seq, &Point::NegInf, &Point::PosInf))
}

/// Number of real roots counted with multiplicity: a root of multiplicity
/// `m` is a root of each of `p, gcd(p,p'), gcd(gcd(p,p'), ...)` up to `m` terms.
pub fn real_root_count_with_multiplicity(p: &IntPolynomial) -> Result<usize, AnalysisError> {
    if p.is_zero() {
        return Err(AnalysisError::ZeroPolynomial);
    }
    let mut g = p.clone();
    let mut total = 0;
    while g.degree().is_some_and(|d| d > 0) {
        let seq = sturm_sequence(&g);
        total += count_between(&seq, &Point::NegInf, &Point::PosInf);
        g = seq.last().unwrap().clone();
    }
    Ok(total)
}

/// Cauchy bound: every root has modulus below `1 + max |a_i / a_d|`.
pub fn cauchy_bound(p: &IntPolynomial) -> BigRational {
    let lead = p.leading().expect("nonzero polynomial").abs();
    let max = p.coeffs().iter().map(Signed::abs).max().unwrap_or_default();
    BigRational::new(max, lead) + rat(1)
}

/// Disjoint open intervals with non-root endpoints, each holding exactly one
/// distinct root of `p` in `(lo, hi)`, in increasing order.
pub fn isolate_real_roots(
    p: &IntPolynomial,
    lo: &BigRational,
    hi: &BigRational,
) -> Vec<(BigRational, BigRational)> {
    let seq = sturm_sequence(p);
    let mut out = Vec::new();
    let lo = nudge_off_root(p, lo.clone(), hi, true);
    let hi = nudge_off_root(p, hi.clone(), &lo, false);
    let mut stack = vec![(lo, hi)];
    while let Some((a, b)) = stack.pop() {
        let c = count_between(&seq, &Point::At(a.clone()), &Point::At(b.clone()));
        match c {
            0 => {}
            1 => out.push((a, b)),
            _ => {
                let m = split_point(p, &a, &b);
                // Push the right half first so the left half is processed first.
                stack.push((m.clone(), b));
                stack.push((a, m));
            }
        }
    }
    out
}

/// Moves an endpoint slightly inward when it is a root.
fn nudge_off_root(p: &IntPolynomial, x: BigRational, other: &BigRational, upward: bool) -> BigRational {
    if p.sign_at(&x) != 0 {
        return x;
    }
    let mut step = (other - &x).abs() / rat(1024);
    loop {
        let y = if upward { &x + &step } else { &x - &step };
        if p.sign_at(&y) != 0 && sturm_count(p, if upward { &x } else { &y }, if upward { &y } else { &x }) == Ok(0) {
            return y;
        }
        step /= rat(2);
    }
}

/// A point strictly inside `(a, b)` that is not a root of `p`.
fn split_point(p: &IntPolynomial, a: &BigRational, b: &BigRational) -> BigRational {
    for (u, v) in [(1, 1), (1, 2), (2, 1), (1, 3), (3, 1), (2, 3), (3, 2), (3, 4), (4, 3)] {
        let m = (a * rat(v) + b * rat(u)) / rat(u + v);
        if p.sign_at(&m) != 0 {
            return m;
        }
    }
    unreachable!("a polynomial has finitely many roots")
}

/// Which clause of a root certificate failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Clause {
    NonzeroAtOrigin,
    NotAllReal,
    OutsideInterval,
    NotSimple,
    NoInterlacing,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CertKind {
    Cycle2,
    Subset2,
    OrderedPhylo,
}

impl CertKind {
    pub fn name(self) -> &'static str {
        match self {
            CertKind::Cycle2 => "cycle2",
            CertKind::Subset2 => "subset2",
            CertKind::OrderedPhylo => "ordered-phylo",
        }
    }
}

/// Real-rootedness certificate of `q_n = p_n / x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootCertificate {
    pub n: usize,
    pub degree: usize,
    pub all_real: bool,
    pub interval: (BigRational, BigRational),
    pub in_interval: bool,
    pub simple: bool,
    pub interlaces_previous: bool,
    /// Distinct roots on the whole line, then inside `interval`.
    pub sturm_counts: Vec<usize>,
}

impl RootCertificate {
    pub fn failed_clause(&self) -> Option<Clause> {
        if !self.all_real {
            Some(Clause::NotAllReal)
        } else if !self.in_interval {
            Some(Clause::OutsideInterval)
        } else if !self.simple {
            Some(Clause::NotSimple)
        } else if !self.interlaces_previous {
            Some(Clause::NoInterlacing)
        } else {
            None
        }
    }

    pub fn passes(&self) -> bool {
        self.failed_clause().is_none()
    }
}

/// `p_n` for `n = 0..=n_max` of the chosen family.
pub fn family_row_polys(kind: CertKind, n_max: usize) -> Vec<IntPolynomial> {
    let t = match kind {
        CertKind::Cycle2 => stirling_r(Family::Cycle, 2, n_max),
        CertKind::Subset2 => stirling_r(Family::Subset, 2, n_max),
        CertKind::OrderedPhylo => ordered_phylo_triangle(n_max),
    };
    (0..=n_max).map(|n| row_poly(&t, n).expect("row in range")).collect()
}

/// Certifies, for `1 <= n <= n_max`, that `p_n(0) = 0` and `q_n = p_n / x` has
/// only simple real roots, all in `(-1, 0)`, interlaced by those of
/// `q_{n-1}`.
pub fn certify_roots(kind: CertKind, n_max: usize) -> Result<Vec<RootCertificate>, AnalysisError> {
    if n_max < 1 {
        return Err(AnalysisError::ArgumentTooSmall { name: "n_max", value: n_max, min: 1 });
    }
    let polys = family_row_polys(kind, n_max);
    let mut out = Vec::with_capacity(n_max);
    let mut prev: Option<IntPolynomial> = None;
    for (n, p) in polys.iter().enumerate().skip(1) {
        let q = p
            .div_x()
            .ok_or(AnalysisError::Certification { n, clause: Clause::NonzeroAtOrigin })?;
        let cert = certify_one(n, &q, prev.as_ref());
        if let Some(clause) = cert.failed_clause() {
            return Err(AnalysisError::Certification { n, clause });
        }
        out.push(cert);
        prev = Some(q);
    }
    Ok(out)
}

/// Certificate for a single polynomial against its predecessor.
pub fn certify_one(n: usize, q: &IntPolynomial, prev: Option<&IntPolynomial>) -> RootCertificate {
    let lo = rat(-1);
    let hi = rat(0);
    let degree = q.degree().unwrap_or(0);
    let seq = sturm_sequence(q);
    let total = count_between(&seq, &Point::NegInf, &Point::PosInf);
    let inside = if q.sign_at(&lo) != 0 && q.sign_at(&hi) != 0 {
        sturm_count(q, &lo, &hi).unwrap_or(0)
    } else {
        usize::MAX
    };
    let simple = seq.last().and_then(IntPolynomial::degree).unwrap_or(0) == 0;
    let interlaces_previous = match prev {
        Some(pr) => interlaces(pr, q),
        None => true,
    };
    RootCertificate {
        n,
        degree,
        all_real: total == degree,
        interval: (lo, hi),
        in_interval: inside == degree,
        simple,
        interlaces_previous,
        sturm_counts: vec![total, if inside == usize::MAX { 0 } else { inside }],
    }
}

/// True when `deg cur = deg prev + 1` and exactly one root of `cur` lies in
/// each gap of the real roots of `prev`, including the two unbounded gaps.
/// Vacuous when `prev` is constant.
pub fn interlaces(prev: &IntPolynomial, cur: &IntPolynomial) -> bool {
    let (Some(dp), Some(dc)) = (prev.degree(), cur.degree()) else {
        return false;
    };
    if dc != dp + 1 {
        return false;
    }
    if dp == 0 {
        return true;
    }
    let bound = cauchy_bound(prev);
    let intervals = isolate_real_roots(prev, &-bound.clone(), &bound);
    if intervals.len() != dp {
        return false;
    }
    let cur_seq = sturm_sequence(cur);
    let mut signs = Vec::with_capacity(dp);
    for (a, b) in intervals {
        match shrink_away_from(prev, cur, &cur_seq, a, b) {
            Some(s) => signs.push(s),
            None => return false,
        }
    }
    let first_ok = signs[0] == -cur.sign_at_neg_inf();
    let last_ok = signs[dp - 1] == -cur.sign_at_pos_inf();
    first_ok && last_ok && signs.windows(2).all(|w| w[0] == -w[1])
}

/// Bisects `(a, b)`, which holds one simple root of `prev`, until `cur` has no
/// root in the closed interval; returns the sign of `cur` there.
fn shrink_away_from(
    prev: &IntPolynomial,
    cur: &IntPolynomial,
    cur_seq: &[IntPolynomial],
    mut a: BigRational,
    mut b: BigRational,
) -> Option<i8> {
    for _ in 0..4096 {
        let (sa, sb) = (cur.sign_at(&a), cur.sign_at(&b));
        if sa != 0 && sa == sb && count_between(cur_seq, &Point::At(a.clone()), &Point::At(b.clone())) == 0 {
            return Some(sa);
        }
        let m = split_point(prev, &a, &b);
        if prev.sign_at(&a) != prev.sign_at(&m) {
            b = m;
        } else {
            a = m;
        }
    }
    None
}

/// One step of the hat-polynomial recurrence, mapping `ĉ_{n-1}` to `ĉ_n`
/// (resp. `ŝ`): cycle `[(n+2)x + n+1] prev + x(x+1) prev'`, subset
/// `[(n+2)x + 1] prev + x(x+1) prev'`.
pub fn hat_recurrence_step(prev: &IntPolynomial, n: usize, family: Family) -> IntPolynomial {
    let c0 = match family {
        Family::Cycle => BigInt::from(n + 1),
        Family::Subset => BigInt::one(),
    };
    let lin = IntPolynomial::linear(c0, BigInt::from(n + 2));
    let xx1 = IntPolynomial::from_i64s(&[0, 1, 1]);
    &lin * prev + &xx1 * &prev.derivative()
}

/// Expected `(q(0), q(-1))` for the hat polynomial of index `n`.
pub fn hat_boundary_values(family: Family, n: usize) -> (BigInt, BigInt) {
    let sign = if n % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    match family {
        Family::Cycle => (factorial(n + 1), sign),
        Family::Subset => (BigInt::one(), sign * factorial(n + 1)),
    }
}

/// `[n, n-1]^(r) = (r(n-1)+1)! / ((r+1) r^{n-2} (n-2)!)` for `n >= 2`.
pub fn subdiagonal_first(r: u32, n: usize) -> Result<BigInt, AnalysisError> {
    if n < 2 {
        return Err(AnalysisError::ArgumentTooSmall { name: "n", value: n, min: 2 });
    }
    let r = r as usize;
    let num = factorial(r * (n - 1) + 1);
    let den = BigInt::from(r + 1) * num_traits::pow(BigInt::from(r), n - 2) * factorial(n - 2);
    Ok(crate::arith::exact_div(&num, &den))
}

/// `[n, n-2]^(r) = (r(n-2)+2)! (r(r+2)(n-1)+2) / (2 (r+1)^2 (r+2) r^{n-3} (n-3)!)`
/// for `n >= 3`.
pub fn subdiagonal_second(r: u32, n: usize) -> Result<BigInt, AnalysisError> {
    if n < 3 {
        return Err(AnalysisError::ArgumentTooSmall { name: "n", value: n, min: 3 });
    }
    let r = r as usize;
    let num = factorial(r * (n - 2) + 2) * BigInt::from(r * (r + 2) * (n - 1) + 2);
    let den = BigInt::from(2 * (r + 1) * (r + 1) * (r + 2))
        * num_traits::pow(BigInt::from(r), n - 3)
        * factorial(n - 3);
    Ok(crate::arith::exact_div(&num, &den))
}

pub fn subdiagonal_closed_forms(r: u32, n: usize) -> Result<(BigInt, BigInt), AnalysisError> {
    Ok((subdiagonal_first(r, n)?, subdiagonal_second(r, n)?))
}

/// `D_r(n) = ((n-2)! [n,n-1])^2 - 2 (n-1)! (n-3)! [n,n] [n,n-2]`, the
/// discriminant of the quadratic left by differentiating `c_{r,n}/x` down to
/// degree two.
pub fn discriminant(r: u32, n: usize) -> Result<BigInt, AnalysisError> {
    if n < 3 {
        return Err(AnalysisError::ArgumentTooSmall { name: "n", value: n, min: 3 });
    }
    if r < 1 {
        return Err(AnalysisError::ArgumentTooSmall { name: "r", value: r as usize, min: 1 });
    }
    let diag = crate::triangle::diagonal_formula(Family::Cycle, r, n);
    let a = factorial(n - 2) * subdiagonal_first(r, n)?;
    Ok(&a * &a - BigInt::from(2) * factorial(n - 1) * factorial(n - 3) * diag * subdiagonal_second(r, n)?)
}

pub fn discriminant_sign(r: u32, n: usize) -> Result<Ordering, AnalysisError> {
    Ok(discriminant(r, n)?.sign().cmp_zero())
}

trait CmpZero {
    fn cmp_zero(self) -> Ordering;
}

impl CmpZero for Sign {
    fn cmp_zero(self) -> Ordering {
        match self {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogConcavityReport {
    pub rows_checked: usize,
    /// First `(n, k)` with `T(n,k)^2 < T(n,k-1) T(n,k+1)`.
    pub violation: Option<(usize, usize)>,
    /// First row whose nonzero entries are not contiguous.
    pub gap: Option<usize>,
}

impl LogConcavityReport {
    pub fn passes(&self) -> bool {
        self.violation.is_none() && self.gap.is_none()
    }
}

/// Checks log-concavity of rows `0..=n_max` over each row's support.
pub fn log_concave_rows(t: &Triangle, n_max: usize) -> LogConcavityReport {
    let mut report = LogConcavityReport { rows_checked: 0, violation: None, gap: None };
    for n in 0..=n_max.min(t.len().saturating_sub(1)) {
        let row = t.row(n).expect("row in range");
        report.rows_checked += 1;
        let Some(first) = row.iter().position(|x| !x.is_zero()) else { continue };
        let last = row.iter().rposition(|x| !x.is_zero()).expect("nonzero entry exists");
        if report.gap.is_none() && row[first..=last].iter().any(Zero::is_zero) {
            report.gap = Some(n);
        }
        if report.violation.is_none() {
            for k in first + 1..last {
                if &row[k] * &row[k] < &row[k - 1] * &row[k + 1] {
                    report.violation = Some((n, k));
                    break;
                }
            }
        }
    }
    report
}

/// Binary multiprecision float used by the root finder.
pub type Float = FBig<HalfEven, 2>;
type Cx = Complex<Float>;

pub const DEFAULT_PRECISION_BITS: usize = 256;
/// Accepted roots satisfy `|p(z)| < 2^-64 · sum |a_k| max(1,|z|)^k`.
pub const RESIDUAL_LOG2_THRESHOLD: f64 = -64.0;

fn float_of_int(x: &BigInt, bits: usize) -> Float {
    Float::from_parts(to_ibig(x), 0).with_precision(bits).value()
}

fn float_of_f64(x: f64, bits: usize) -> Float {
    <Float as num_traits::FromPrimitive>::from_f64(x)
        .expect("finite value")
        .with_precision(bits)
        .value()
}

fn float_pow2(e: isize, bits: usize) -> Float {
    Float::from_parts(IBig::one(), e).with_precision(bits).value()
}

fn to_f64(x: &Float) -> f64 {
    x.to_f64().value()
}

/// `log2 |x|`, or negative infinity at zero.
pub fn float_log2(x: &Float) -> f64 {
    if x.repr().is_zero() {
        return f64::NEG_INFINITY;
    }
    let (_, mag) = x.repr().significand().clone().into_parts();
    let bits = mag.bit_len();
    let shift = bits.saturating_sub(60);
    let top = (mag >> shift).to_f64().value();
    libm::log2(top) + (shift as f64) + x.repr().exponent() as f64
}

fn bigint_log2(x: &BigInt) -> f64 {
    let bits = x.bits();
    let shift = bits.saturating_sub(60);
    let top = (x.abs() >> shift).to_f64().unwrap_or(0.0);
    libm::log2(top) + shift as f64
}

/// A computed root with its scaled residual.
#[derive(Clone, Debug)]
pub struct NumericRoot {
    pub re: Float,
    pub im: Float,
    /// `log2` of `|p(z)| / sum |a_k| max(1,|z|)^k`.
    pub residual_log2: f64,
    /// `log2` of the radius `d |p(z)/p'(z)|` of a disk about `z` holding a root.
    pub inclusion_log2: f64,
}

impl NumericRoot {
    pub fn has_positive_real_part(&self) -> bool {
        !self.re.repr().is_zero() && self.re.repr().sign() == dashu_int::Sign::Positive
    }

    /// Real unless the imaginary part exceeds both the inclusion radius and
    /// the rounding level of the working precision.
    pub fn is_real(&self, precision_bits: usize) -> bool {
        if self.im.repr().is_zero() {
            return true;
        }
        let modulus = float_log2(&self.re).max(float_log2(&self.im));
        let tol = self.inclusion_log2.max(modulus - precision_bits as f64 + 16.0);
        float_log2(&self.im) <= tol
    }
}

#[derive(Clone, Debug)]
pub struct NumericRoots {
    pub roots: Vec<NumericRoot>,
    pub precision_bits: usize,
    pub real_count: usize,
    pub sturm_real_count: usize,
    /// Aberth sweeps used at the accepted precision.
    pub sweeps: usize,
}

/// All roots of `p` with multiplicity by Aberth iteration at
/// `precision_bits`, retried once at twice the precision. The count of real
/// roots must agree with the exact Sturm count.
pub fn numeric_roots(p: &IntPolynomial, precision_bits: usize) -> Result<NumericRoots, AnalysisError> {
    if p.is_zero() {
        return Err(AnalysisError::ZeroPolynomial);
    }
    let exact = match crate::modular::normal_chain_real_count(p) {
        Some(c) => c,
        None => real_root_count_with_multiplicity(p)?,
    };
    let mut last_err = AnalysisError::NoConvergence { precision_bits };
    for bits in [precision_bits, 2 * precision_bits] {
        match aberth(p, bits) {
            Some((roots, sweeps)) => {
                let real_count = roots.iter().filter(|z| z.is_real(bits)).count();
                if real_count == exact {
                    return Ok(NumericRoots { roots, precision_bits: bits, real_count, sturm_real_count: exact, sweeps });
                }
                last_err = AnalysisError::RealCountMismatch { numeric: real_count, exact };
            }
            None => last_err = AnalysisError::NoConvergence { precision_bits: bits },
        }
    }
    Err(last_err)
}

/// Upper convex hull of `(k, log2 |a_k|)` as edges `(i, j, log2 radius)`.
fn newton_polygon(log_a: &[f64]) -> Vec<(usize, usize, f64)> {
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for (k, &y) in log_a.iter().enumerate() {
        if y == f64::NEG_INFINITY {
            continue;
        }
        while hull.len() >= 2 {
            let (x1, y1) = hull[hull.len() - 2];
            let (x2, y2) = hull[hull.len() - 1];
            let cross = (x2 as f64 - x1 as f64) * (y - y1) - (y2 - y1) * (k as f64 - x1 as f64);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push((k, y));
    }
    hull.windows(2)
        .map(|w| {
            let ((i, yi), (j, yj)) = (w[0], w[1]);
            (i, j, (yi - yj) / (j - i) as f64)
        })
        .collect()
}

/// Starting points in log-polar form `(log2 modulus, angle)`.
fn polygon_starts(edges: &[(usize, usize, f64)], d: usize) -> Vec<(f64, f64)> {
    let two_pi = 2.0 * core::f64::consts::PI;
    let mut out = Vec::with_capacity(d);
    for &(i, j, log_r) in edges {
        let m = j - i;
        for t in 0..m {
            let theta = two_pi * t as f64 / m as f64 + two_pi * i as f64 / d as f64 + 0.4;
            out.push((log_r, theta));
        }
    }
    out
}

type C64 = Complex<f64>;

/// Double-precision Aberth on `p(2^e w)` rescaled to unit size; used only to
/// produce starting points. `None` when the root moduli span too wide a range
/// for doubles.
fn double_stage(log_a: &[f64], signs: &[i8]) -> Option<(Vec<C64>, i32)> {
    let d = log_a.len() - 1;
    let edges = newton_polygon(log_a);
    let lo = edges.iter().map(|e| e.2).fold(f64::INFINITY, f64::min);
    let hi = edges.iter().map(|e| e.2).fold(f64::NEG_INFINITY, f64::max);
    if !(hi - lo < 400.0) {
        return None;
    }
    let e = libm::round((lo + hi) / 2.0) as i32;
    let b: Vec<f64> = log_a.iter().enumerate().map(|(k, la)| la + k as f64 * e as f64).collect();
    let top = b.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let c: Vec<f64> = b
        .iter()
        .zip(signs)
        .map(|(bk, &sg)| if *bk == f64::NEG_INFINITY { 0.0 } else { sg as f64 * libm::exp2(bk - top) })
        .collect();
    let abs_c: Vec<f64> = c.iter().map(|x| x.abs()).collect();
    let mut w: Vec<C64> = polygon_starts(&edges, d)
        .into_iter()
        .map(|(lr, th)| C64::from_polar(libm::exp2(lr - e as f64), th))
        .collect();
    let mut done = vec![false; d];
    for _ in 0..(200 + 20 * d) {
        if done.iter().all(|&x| x) {
            break;
        }
        for k in 0..d {
            if done[k] {
                continue;
            }
            let z = w[k];
            let (mut pv, mut dv) = (C64::new(c[d], 0.0), C64::new(0.0, 0.0));
            let mut bound = abs_c[d];
            let az = z.norm();
            for i in (0..d).rev() {
                dv = dv * z + pv;
                pv = pv * z + c[i];
                bound = bound * az + abs_c[i];
            }
            if pv.norm() <= bound * 1e-14 {
                done[k] = true;
                continue;
            }
            let newton = pv / dv;
            let s: C64 = (0..d).filter(|&j| j != k).map(|j| C64::new(1.0, 0.0) / (z - w[j])).sum();
            let corr = newton / (C64::new(1.0, 0.0) - newton * s);
            if !corr.re.is_finite() || !corr.im.is_finite() {
                return None;
            }
            w[k] = z - corr;
        }
    }
    Some((w, e))
}

fn horner(a: &[Float], z: &Cx) -> (Cx, Cx) {
    let d = a.len() - 1;
    let zero = Float::zero().with_precision(a[d].precision()).value();
    let mut b = Complex::new(a[d].clone(), zero.clone());
    let mut c = Complex::new(zero.clone(), zero);
    for k in (0..d).rev() {
        c = &c * z + &b;
        b = &b * z;
        b.re += &a[k];
    }
    (b, c)
}

fn aberth(p: &IntPolynomial, bits: usize) -> Option<(Vec<NumericRoot>, usize)> {
    let zeros = p.coeffs().iter().take_while(|c| c.is_zero()).count();
    let core = &p.coeffs()[zeros..];
    let d = core.len() - 1;
    let zero = Float::zero().with_precision(bits).value();
    let mut roots: Vec<NumericRoot> = (0..zeros)
        .map(|_| NumericRoot {
            re: zero.clone(),
            im: zero.clone(),
            residual_log2: f64::NEG_INFINITY,
            inclusion_log2: f64::NEG_INFINITY,
        })
        .collect();
    if d == 0 {
        return Some((roots, 0));
    }
    let a: Vec<Float> = core.iter().map(|c| float_of_int(c, bits)).collect();
    let abs_a: Vec<Float> = a.iter().map(|x| num_traits::Signed::abs(x)).collect();
    let log_a: Vec<f64> = core.iter().map(|c| if c.is_zero() { f64::NEG_INFINITY } else { bigint_log2(c) }).collect();
    let signs: Vec<i8> = core.iter().map(|c| if c.is_negative() { -1 } else { 1 }).collect();
    let mut z: Vec<Cx> = match double_stage(&log_a, &signs) {
        Some((w, e)) => {
            let scale = float_pow2(e as isize, bits);
            w.into_iter()
                .map(|x| Complex::new(float_of_f64(x.re, bits) * &scale, float_of_f64(x.im, bits) * &scale))
                .collect()
        }
        None => polygon_starts(&newton_polygon(&log_a), d)
            .into_iter()
            .map(|(lr, th)| {
                let e = libm::floor(lr);
                let frac = libm::exp2(lr - e);
                let scale = float_pow2(e as isize, bits);
                Complex::new(
                    float_of_f64(frac * libm::cos(th), bits) * &scale,
                    float_of_f64(frac * libm::sin(th), bits) * &scale,
                )
            })
            .collect(),
    };
    let mut done = vec![false; d];
    // A root is accepted once |p(z)| is at the rounding level of Horner's rule.
    let stop_log2 = -(bits as f64) + 8.0 + libm::log2(d as f64 + 1.0);
    let one = Complex::new(Float::one().with_precision(bits).value(), zero.clone());
    let max_iter = 100 + 10 * d;
    let mut sweeps = 0;
    for _ in 0..max_iter {
        if done.iter().all(|&x| x) {
            break;
        }
        sweeps += 1;
        for k in 0..d {
            if done[k] {
                continue;
            }
            let (pv, dv) = horner(&a, &z[k]);
            let pl = float_log2(&pv.norm_sqr()) / 2.0;
            let zl = float_log2(&z[k].norm_sqr()) / 2.0;
            let scale = log_a
                .iter()
                .enumerate()
                .map(|(i, la)| la + i as f64 * zl)
                .fold(f64::NEG_INFINITY, f64::max);
            if pl - scale < stop_log2 {
                done[k] = true;
                continue;
            }
            let newton = &pv / &dv;
            let mut s = Complex::new(zero.clone(), zero.clone());
            for j in 0..d {
                if j != k {
                    s = s + &one / &(&z[k] - &z[j]);
                }
            }
            let w = &newton / &(&one - &newton * &s);
            z[k] = &z[k] - &w;
        }
    }
    if !done.iter().all(|&x| x) {
        return None;
    }
    for zk in z {
        let (pv, dv) = horner(&a, &zk);
        let mod2 = zk.norm_sqr();
        let rho = if to_f64(&mod2) > 1.0 { mod2.nth_root(2) } else { Float::one().with_precision(bits).value() };
        let mut scale = zero.clone();
        for c in abs_a.iter().rev() {
            scale = scale * &rho + c;
        }
        let pl = float_log2(&pv.norm_sqr()) / 2.0;
        let res = pl - float_log2(&scale);
        if res >= RESIDUAL_LOG2_THRESHOLD {
            return None;
        }
        // A disk of radius d |p(z)/p'(z)| about z contains a root.
        let inclusion = libm::log2(d as f64) + pl - float_log2(&dv.norm_sqr()) / 2.0;
        roots.push(NumericRoot { re: zk.re, im: zk.im, residual_log2: res, inclusion_log2: inclusion });
    }
    Some((roots, sweeps))
}

/// One root of a normalized cloud.
#[derive(Clone, Debug)]
pub struct RootCloudRecord {
    pub r: u32,
    pub n: usize,
    pub re: Float,
    pub im: Float,
    pub norm_re: Float,
    pub norm_im: Float,
    pub residual_log2: f64,
}

#[derive(Clone, Debug)]
pub struct RootCloud {
    pub family: Family,
    pub r: u32,
    pub n: usize,
    /// `p(0) = 0`; the root is divided out and not listed.
    pub zero_root: bool,
    pub records: Vec<RootCloudRecord>,
    pub real_count: usize,
    pub sturm_real_count: usize,
    pub precision_bits: usize,
}

impl RootCloud {
    /// Observation only: every root has nonpositive real part.
    pub fn in_closed_left_half_plane(&self) -> bool {
        self.records.iter().all(|x| !x.re.repr().sign().eq(&dashu_int::Sign::Positive) || x.re.repr().is_zero())
    }
}

/// Roots of `c_{r,n}/x` (resp. `s_{r,n}/x`) scaled by `n^{r-2}`, one cloud per
/// `n`, ordered by argument then modulus.
pub fn normalized_root_cloud(
    family: Family,
    r: u32,
    n_list: &[usize],
    precision_bits: usize,
) -> Result<Vec<RootCloud>, AnalysisError> {
    let n_max = n_list.iter().copied().max().unwrap_or(0);
    let t = stirling_r(family, r, n_max);
    let mut out = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let p = row_poly(&t, n)?;
        let (q, zero_root) = match p.div_x() {
            Some(q) => (q, true),
            None => (p, false),
        };
        let found = numeric_roots(&q, precision_bits)?;
        let bits = found.precision_bits;
        let (factor, divide) = if r >= 2 {
            (float_of_int(&num_traits::pow(BigInt::from(n), (r - 2) as usize), bits), false)
        } else {
            (float_of_int(&BigInt::from(n), bits), true)
        };
        let mut records: Vec<RootCloudRecord> = found
            .roots
            .into_iter()
            .map(|z| {
                let (norm_re, norm_im) = if divide {
                    (z.re.clone() / &factor, z.im.clone() / &factor)
                } else {
                    (z.re.clone() * &factor, z.im.clone() * &factor)
                };
                RootCloudRecord { r, n, re: z.re, im: z.im, norm_re, norm_im, residual_log2: z.residual_log2 }
            })
            .collect();
        records.sort_by(|x, y| {
            let ax = libm::atan2(to_f64(&x.im), to_f64(&x.re));
            let ay = libm::atan2(to_f64(&y.im), to_f64(&y.re));
            let mx = (x.re.clone() * &x.re) + (x.im.clone() * &x.im);
            let my = (y.re.clone() * &y.re) + (y.im.clone() * &y.im);
            ax.total_cmp(&ay).then_with(|| mx.cmp(&my))
        });
        out.push(RootCloud {
            family,
            r,
            n,
            zero_root,
            records,
            real_count: found.real_count,
            sturm_real_count: found.sturm_real_count,
            precision_bits: bits,
        });
    }
    Ok(out)
}

/// Decimal scientific rendering with `digits` significant digits.
pub fn format_float(x: &Float, digits: usize) -> alloc::string::String {
    if x.repr().is_zero() {
        return alloc::string::String::from("0");
    }
    let d = x.clone().with_base_and_precision::<10>(digits).value();
    alloc::format!("{:e}", d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(cs)
    }

    #[test]
    fn row_polys() {
        let c = stirling_r(Family::Cycle, 2, 3);
        assert_eq!(row_poly(&c, 2).unwrap(), p(&[0, 2, 3]));
        assert_eq!(row_poly(&c, 0).unwrap(), p(&[1]));
        assert_eq!(row_poly(&stirling_r(Family::Subset, 2, 3), 3).unwrap(), p(&[0, 1, 10, 15]));
        assert_eq!(row_poly(&c, 4), Err(AnalysisError::RowOutOfRange(4)));
    }

    #[test]
    fn sturm_counts() {
        assert_eq!(sturm_count(&p(&[-1, 0, 1]), &rat(-2), &rat(0)), Ok(1));
        assert_eq!(sturm_count(&p(&[1, 0, 1]), &rat(-10), &rat(10)), Ok(0));
        assert_eq!(sturm_count(&p(&[-1, 0, 1]), &rat(-1), &rat(1)), Ok(0));
        assert_eq!(sturm_count(&p(&[-1, 0, 1]), &rat(-1), &rat(2)), Ok(1));
        let c4 = row_poly(&stirling_r(Family::Cycle, 2, 4), 4).unwrap().div_x().unwrap();
        assert_eq!(sturm_count(&c4, &rat(-1), &rat(0)), Ok(3));
        assert_eq!(sturm_count(&p(&[]), &rat(0), &rat(1)), Err(AnalysisError::ZeroPolynomial));
        // (x+1)^2 (x-2): distinct roots only
        assert_eq!(real_root_count(&p(&[-2, -3, 0, 1])), Ok(2));
    }

    #[test]
    fn isolation() {
        let q = p(&[0, -1, 0, 1]);
        let iv = isolate_real_roots(&q, &rat(-2), &rat(2));
        assert_eq!(iv.len(), 3);
        assert!(iv.windows(2).all(|w| w[0].1 <= w[1].0));
    }

    #[test]
    fn interlacing() {
        assert!(interlaces(&p(&[0, 1]), &p(&[-1, 0, 1])));
        assert!(!interlaces(&p(&[-4, 1]), &p(&[-1, 0, 1])));
        assert!(interlaces(&p(&[3]), &p(&[1, 1])));
    }

    #[test]
    fn hat_steps() {
        assert_eq!(hat_recurrence_step(&p(&[1]), 1, Family::Cycle), p(&[2, 3]));
        assert_eq!(hat_recurrence_step(&p(&[1]), 1, Family::Subset), p(&[1, 3]));
        assert_eq!(hat_recurrence_step(&p(&[2, 3]), 2, Family::Cycle), p(&[6, 20, 15]));
    }

    #[test]
    fn subdiagonals() {
        assert_eq!(subdiagonal_first(2, 3), Ok(BigInt::from(20)));
        assert_eq!(subdiagonal_first(3, 3), Ok(BigInt::from(420)));
        assert_eq!(subdiagonal_second(2, 4), Ok(BigInt::from(130)));
        assert!(subdiagonal_closed_forms(2, 2).is_err());
    }

    #[test]
    fn discriminants() {
        assert_eq!(discriminant(3, 3), Ok(BigInt::from(-38640)));
        assert_eq!(discriminant_sign(4, 5), Ok(Ordering::Less));
        assert_eq!(discriminant_sign(2, 5), Ok(Ordering::Greater));
        assert!(discriminant(3, 2).is_err());
    }

    #[test]
    fn log_concavity() {
        let t = Triangle::new(
            crate::TriangleKind::Generic,
            0,
            vec![vec![BigInt::one()], vec![BigInt::zero(), BigInt::one()], vec![0.into(), 6.into(), 40.into()]],
        )
        .unwrap();
        assert!(log_concave_rows(&t, 2).passes());
        let bad = Triangle::new(
            crate::TriangleKind::Generic,
            0,
            vec![vec![1.into()], vec![1.into(), 1.into()], vec![4.into(), 1.into(), 4.into()]],
        )
        .unwrap();
        assert_eq!(log_concave_rows(&bad, 2).violation, Some((2, 1)));
    }

    #[test]
    fn numeric_simple_cases() {
        let r = numeric_roots(&p(&[-1, 0, 1]), 128).unwrap();
        assert_eq!(r.real_count, 2);
        let mut vals: Vec<f64> = r.roots.iter().map(|z| to_f64(&z.re)).collect();
        vals.sort_by(f64::total_cmp);
        assert!((vals[0] + 1.0).abs() < 1e-30 && (vals[1] - 1.0).abs() < 1e-30);
        let r = numeric_roots(&p(&[1, 0, 1]), 128).unwrap();
        assert_eq!(r.real_count, 0);
        let r = numeric_roots(&p(&[0, 0, 2]), 128).unwrap();
        assert_eq!((r.roots.len(), r.real_count), (2, 2));
        assert_eq!(real_root_count_with_multiplicity(&p(&[-2, -3, 0, 1])), Ok(3));
    }

    #[test]
    fn formatting() {
        let x = float_of_f64(-0.375, 64);
        assert_eq!(format_float(&x, 5), "-3.75e-1");
    }
}

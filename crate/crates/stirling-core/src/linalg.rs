//! Exact total-positivity testing.
//!
//! Integer matrices are tested by a generalized Neville elimination that
//! tolerates singular inputs, backed by an exhaustive Laplace-expansion minor
//! oracle. Polynomial matrices are tested coefficientwise by fraction-free
//! determinants over `Z[x]`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::IntPolynomial;
use crate::triangle::Triangle;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("expected {expected} entries for the given dimensions, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("need at least {needed} polynomials, found {found}")]
    InsufficientPolynomials { needed: usize, found: usize },
}

/// Row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch { expected: rows * cols, found: data.len() });
        }
        Ok(ExactMatrix { rows, cols, data })
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        ExactMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Leading `size x size` block of a triangle, zero above the diagonal.
    pub fn leading_of(t: &Triangle, size: usize) -> Self {
        Self::from_rows(t.leading_block(size))
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        ExactMatrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self.get(i, j).clone());
            }
        }
        ExactMatrix { rows: rows.len(), cols: cols.len(), data }
    }

    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> BigInt {
        determinant(&self.submatrix(rows, cols))
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", x)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Fraction-free (Bareiss) determinant of a square matrix.
pub fn determinant(m: &ExactMatrix) -> BigInt {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    let n = m.rows;
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.to_rows();
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    sign = !sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = crate::arith::exact_div(&v, &prev);
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    TotallyPositive,
    NotTp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Neville,
    Minors,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MinorValue {
    Integer(BigInt),
    Polynomial(IntPolynomial),
}

impl MinorValue {
    /// Negative integer, or polynomial with a negative coefficient.
    pub fn is_violation(&self) -> bool {
        match self {
            MinorValue::Integer(v) => v.is_negative(),
            MinorValue::Polynomial(p) => p.has_negative_coefficient(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Witness {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub value: MinorValue,
}

impl Witness {
    pub fn order(&self) -> usize {
        self.rows.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TpReport {
    pub verdict: Verdict,
    pub method: Method,
    pub witness: Option<Witness>,
    pub max_order_checked: usize,
}

impl TpReport {
    pub fn pass(method: Method, max_order_checked: usize) -> Self {
        TpReport { verdict: Verdict::TotallyPositive, method, witness: None, max_order_checked }
    }

    /// Panics unless the witness really violates positivity.
    pub fn fail(method: Method, witness: Witness, max_order_checked: usize) -> Self {
        assert!(witness.value.is_violation(), "witness minor is not a violation");
        TpReport { verdict: Verdict::NotTp, method, witness: Some(witness), max_order_checked }
    }

    pub fn is_tp(&self) -> bool {
        self.verdict == Verdict::TotallyPositive
    }
}

/// Default number of minors the canonical search may evaluate before the
/// Neville test falls back to initial-minor witnesses.
pub const WITNESS_SEARCH_BUDGET: usize = 200_000;

/// Total-positivity (all minors nonnegative) test.
///
/// A pass is always sound: every elimination step factors the matrix as a
/// product of nonnegative bidiagonal and diagonal factors times the remaining
/// block. A failure of the elimination is confirmed by producing a negative
/// minor; if none exists the report passes with method `Minors`.
pub fn neville_tp_test(m: &ExactMatrix) -> TpReport {
    let full = m.rows.min(m.cols);
    if let Some(w) = first_negative_entry(m) {
        return TpReport::fail(Method::Neville, w, 1);
    }
    if neville_decide(m.to_rows()) {
        return TpReport::pass(Method::Neville, full);
    }
    match minor_search(m, full, Some(WITNESS_SEARCH_BUDGET)) {
        SearchOutcome::Found(w) => {
            let k = w.order();
            return TpReport::fail(Method::Minors, w, k);
        }
        SearchOutcome::Clean => return TpReport::pass(Method::Minors, full),
        SearchOutcome::BudgetExhausted => {}
    }
    if let Some(w) = initial_minor_witness(m) {
        let k = w.order();
        return TpReport::fail(Method::Neville, w, k);
    }
    match minor_search(m, full, None) {
        SearchOutcome::Found(w) => {
            let k = w.order();
            TpReport::fail(Method::Minors, w, k)
        }
        _ => TpReport::pass(Method::Minors, full),
    }
}

fn first_negative_entry(m: &ExactMatrix) -> Option<Witness> {
    (0..m.rows).flat_map(|i| (0..m.cols).map(move |j| (i, j))).find_map(|(i, j)| {
        let v = m.get(i, j);
        v.is_negative().then(|| Witness {
            rows: vec![i],
            cols: vec![j],
            value: MinorValue::Integer(v.clone()),
        })
    })
}

/// Rows and columns that survive reduction, as original indices.
#[derive(Clone, Debug)]
struct Reduced {
    a: Vec<Vec<BigInt>>,
    row_ids: Vec<usize>,
    col_ids: Vec<usize>,
}

impl Reduced {
    fn new(a: Vec<Vec<BigInt>>) -> Self {
        let r = a.len();
        let c = a.first().map_or(0, Vec::len);
        Reduced { a, row_ids: (0..r).collect(), col_ids: (0..c).collect() }
    }

    fn ncols(&self) -> usize {
        self.col_ids.len()
    }

    fn drop_row(&mut self, i: usize) {
        self.a.remove(i);
        self.row_ids.remove(i);
    }

    fn drop_col(&mut self, j: usize) {
        for row in &mut self.a {
            row.remove(j);
        }
        self.col_ids.remove(j);
    }

    fn row_support_is(&self, i: usize, j: usize) -> bool {
        self.a[i].iter().enumerate().all(|(c, x)| x.is_zero() != (c == j))
    }

    fn col_support_is(&self, j: usize, i: usize) -> bool {
        self.a.iter().enumerate().all(|(r, row)| row[j].is_zero() != (r == i))
    }

    /// Deletes zero lines and corner lines whose only nonzero entry is the
    /// corner. Each deletion preserves total nonnegativity in both directions
    /// for a matrix with nonnegative entries, and keeps the result a
    /// submatrix of the input.
    fn reduce(&mut self) {
        loop {
            let before = (self.a.len(), self.ncols());
            let mut i = 0;
            while i < self.a.len() {
                if self.a[i].iter().all(Zero::is_zero) {
                    self.drop_row(i);
                } else {
                    i += 1;
                }
            }
            let mut j = 0;
            while j < self.ncols() {
                if self.a.iter().all(|row| row[j].is_zero()) {
                    self.drop_col(j);
                } else {
                    j += 1;
                }
            }
            if self.a.is_empty() || self.ncols() == 0 {
                self.a.clear();
                self.row_ids.clear();
                self.col_ids.clear();
                return;
            }
            let (r, c) = (self.a.len(), self.ncols());
            if self.row_support_is(0, 0) {
                self.drop_row(0);
            } else if self.row_support_is(r - 1, c - 1) {
                self.drop_row(r - 1);
            } else if self.col_support_is(0, 0) {
                self.drop_col(0);
            } else if self.col_support_is(c - 1, r - 1) {
                self.drop_col(c - 1);
            }
            if (self.a.len(), self.ncols()) == before {
                return;
            }
        }
    }
}

/// True only if the matrix is proven totally nonnegative.
fn neville_decide(a: Vec<Vec<BigInt>>) -> bool {
    let mut a = a;
    loop {
        if a.iter().flatten().any(Signed::is_negative) {
            return false;
        }
        let mut red = Reduced::new(a);
        red.reduce();
        let mut a_red = red.a;
        if a_red.is_empty() {
            return true;
        }
        let r = a_red.len();
        let c = a_red[0].len();

        // Column 0 must be supported on a top segment.
        let s = match (0..r).rev().find(|&i| !a_red[i][0].is_zero()) {
            Some(s) => s,
            None => return false,
        };
        if (0..s).any(|i| a_red[i][0].is_zero()) {
            return false;
        }
        for i in (1..=s).rev() {
            let (head, tail) = a_red.split_at_mut(i);
            let above = &head[i - 1];
            let row = &mut tail[0];
            let p = above[0].clone();
            let q = row[0].clone();
            for j in 0..c {
                row[j] = &p * &row[j] - &q * &above[j];
            }
        }

        // Row 0 must be supported on a left segment.
        let t = match (0..c).rev().find(|&j| !a_red[0][j].is_zero()) {
            Some(t) => t,
            None => return false,
        };
        if (0..t).any(|j| a_red[0][j].is_zero()) {
            return false;
        }
        for j in (1..=t).rev() {
            let p = a_red[0][j - 1].clone();
            let q = a_red[0][j].clone();
            for row in a_red.iter_mut() {
                let v = &p * &row[j] - &q * &row[j - 1];
                row[j] = v;
            }
        }

        a = a_red.into_iter().skip(1).map(|row| row.into_iter().skip(1).collect()).collect();
        normalize_lines(&mut a);
    }
}

/// Divides every row and column by the gcd of its entries. Positive scaling
/// does not change the sign pattern of any minor.
fn normalize_lines(a: &mut [Vec<BigInt>]) {
    for row in a.iter_mut() {
        let g = row.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        if !g.is_zero() && !g.is_one() {
            for x in row.iter_mut() {
                *x = &*x / &g;
            }
        }
    }
    let c = a.first().map_or(0, Vec::len);
    for j in 0..c {
        let g = a.iter().fold(BigInt::zero(), |g, row| g.gcd(&row[j]));
        if !g.is_zero() && !g.is_one() {
            for row in a.iter_mut() {
                row[j] = &row[j] / &g;
            }
        }
    }
}

/// For a reduced block that is square and nonsingular, total nonnegativity is
/// equivalent to nonnegativity of the minors on consecutive rows with initial
/// columns and on consecutive columns with initial rows, together with
/// positive leading principal minors. Returns the first negative such minor,
/// in original indices.
fn initial_minor_witness(m: &ExactMatrix) -> Option<Witness> {
    let mut red = Reduced::new(m.to_rows());
    red.reduce();
    let n = red.a.len();
    if n == 0 || n != red.ncols() {
        return None;
    }
    let block = ExactMatrix::from_rows(red.a.clone());
    if determinant(&block).is_zero() {
        return None;
    }
    for k in 1..=n {
        let initial: Vec<usize> = (0..k).collect();
        for start in 0..=n - k {
            let run: Vec<usize> = (start..start + k).collect();
            for (rows, cols) in [(&run, &initial), (&initial, &run)] {
                let v = block.minor(rows, cols);
                if v.is_negative() {
                    return Some(Witness {
                        rows: rows.iter().map(|&i| red.row_ids[i]).collect(),
                        cols: cols.iter().map(|&j| red.col_ids[j]).collect(),
                        value: MinorValue::Integer(v),
                    });
                }
            }
        }
    }
    None
}

/// Result of a canonical minor search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    /// Smallest order, then lexicographically first `(rows, cols)`.
    Found(Witness),
    /// Every minor up to the requested order is nonnegative.
    Clean,
    BudgetExhausted,
}

/// `binom(n, k)` as `usize`, saturating.
fn choose(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > usize::MAX as u128 {
            return usize::MAX;
        }
    }
    acc as usize
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets_lex(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - k + i {
                cur[i] += 1;
                for t in i + 1..k {
                    cur[t] = cur[t - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Combinatorial-number-system rank, `sum binom(s_i, i+1)`.
fn colex_rank(s: &[usize], table: &[Vec<usize>]) -> usize {
    s.iter().enumerate().map(|(i, &x)| table[x][i + 1]).sum()
}

fn choose_table(n: usize) -> Vec<Vec<usize>> {
    (0..=n).map(|x| (0..=n + 1).map(|k| choose(x, k)).collect()).collect()
}

/// Laplace-expansion dynamic program: order-`k` minors are computed from the
/// stored order-`k-1` minors by expanding along the last chosen row.
pub fn minor_search(m: &ExactMatrix, max_order: usize, budget: Option<usize>) -> SearchOutcome {
    let max_order = max_order.min(m.rows).min(m.cols);
    let table = choose_table(m.rows.max(m.cols));
    let mut spent = 0usize;
    let mut prev: Vec<BigInt> = vec![BigInt::one()];
    let mut prev_cols = 1usize;
    for k in 1..=max_order {
        let row_sets = subsets_lex(m.rows, k);
        let col_sets = subsets_lex(m.cols, k);
        let ncol_sets = col_sets.len();
        let level_size = row_sets.len().saturating_mul(ncol_sets);
        let store = k < max_order
            && budget.map_or(true, |b| spent.saturating_add(level_size) <= b);
        let mut cur: Vec<BigInt> = if store { vec![BigInt::zero(); level_size] } else { Vec::new() };
        // Colex ranks of each column set with one element removed.
        let col_drops: Vec<Vec<usize>> = col_sets
            .iter()
            .map(|cs| {
                (0..k)
                    .map(|j| {
                        let mut r = 0;
                        for (i, &x) in cs.iter().enumerate() {
                            if i < j {
                                r += table[x][i + 1];
                            } else if i > j {
                                r += table[x][i];
                            }
                        }
                        r
                    })
                    .collect()
            })
            .collect();
        for rs in &row_sets {
            let last = rs[k - 1];
            let head_rank = colex_rank(&rs[..k - 1], &table);
            let rank_r = head_rank + table[last][k];
            for (ci, cs) in col_sets.iter().enumerate() {
                if let Some(b) = budget {
                    if spent >= b {
                        return SearchOutcome::BudgetExhausted;
                    }
                }
                spent += 1;
                let mut det = BigInt::zero();
                for j in 0..k {
                    let e = m.get(last, cs[j]);
                    if e.is_zero() {
                        continue;
                    }
                    let sub = &prev[head_rank * prev_cols + col_drops[ci][j]];
                    if sub.is_zero() {
                        continue;
                    }
                    if (k - 1 + j) % 2 == 0 {
                        det += e * sub;
                    } else {
                        det -= e * sub;
                    }
                }
                if det.is_negative() {
                    return SearchOutcome::Found(Witness {
                        rows: rs.clone(),
                        cols: cs.clone(),
                        value: MinorValue::Integer(det),
                    });
                }
                if store {
                    let rank_c = colex_rank(cs, &table);
                    cur[rank_r * ncol_sets + rank_c] = det;
                }
            }
        }
        if k < max_order && !store {
            return SearchOutcome::BudgetExhausted;
        }
        prev = cur;
        prev_cols = ncol_sets;
    }
    SearchOutcome::Clean
}

/// Checks every square minor of order at most `max_order`.
pub fn all_minors_nonneg(m: &ExactMatrix, max_order: usize) -> TpReport {
    let max_order = max_order.min(m.rows).min(m.cols);
    match minor_search(m, max_order, None) {
        SearchOutcome::Found(w) => {
            let k = w.order();
            TpReport::fail(Method::Minors, w, k)
        }
        _ => TpReport::pass(Method::Minors, max_order),
    }
}

/// Smallest-order negative minor, lexicographically first.
pub fn find_negative_minor(m: &ExactMatrix, max_order: usize) -> Option<Witness> {
    match minor_search(m, max_order, None) {
        SearchOutcome::Found(w) => Some(w),
        _ => None,
    }
}

/// `out(i,j) = T(n, i-j)`, zero outside `0 <= i-j <= n`.
pub fn toeplitz_of_row(t: &Triangle, n: usize, size: usize) -> ExactMatrix {
    toeplitz_of_sequence(t.row(n).unwrap_or(&[]), size)
}

pub fn toeplitz_of_sequence(seq: &[BigInt], size: usize) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(size, size);
    for i in 0..size {
        for j in 0..=i {
            if let Some(v) = seq.get(i - j) {
                m.set(i, j, v.clone());
            }
        }
    }
    m
}

/// Row-major matrix over `Z[x]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    data: Vec<IntPolynomial>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<IntPolynomial>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch { expected: rows * cols, found: data.len() });
        }
        Ok(PolyMatrix { rows, cols, data })
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &IntPolynomial {
        &self.data[i * self.cols + j]
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn eval(&self, x: &BigInt) -> ExactMatrix {
        ExactMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|p| p.eval(x)).collect() }
    }
}

/// `out(i,j) = polys[i+j]`.
pub fn hankel_of_polys(polys: &[IntPolynomial], size: usize) -> Result<PolyMatrix, LinalgError> {
    let needed = (2 * size).saturating_sub(1);
    if polys.len() < needed {
        return Err(LinalgError::InsufficientPolynomials { needed, found: polys.len() });
    }
    let mut data = Vec::with_capacity(size * size);
    for i in 0..size {
        for j in 0..size {
            data.push(polys[i + j].clone());
        }
    }
    Ok(PolyMatrix { rows: size, cols: size, data })
}

/// Determinant of the submatrix on `rows x cols`: cofactor expansion up to
/// order 4, fraction-free elimination above. Inexact division aborts.
pub fn poly_minor(m: &PolyMatrix, rows: &[usize], cols: &[usize]) -> IntPolynomial {
    assert_eq!(rows.len(), cols.len(), "minor needs equally many rows and columns");
    let a: Vec<Vec<IntPolynomial>> =
        rows.iter().map(|&i| cols.iter().map(|&j| m.get(i, j).clone()).collect()).collect();
    if a.len() <= 4 {
        cofactor_det(&a)
    } else {
        bareiss_poly_det(a)
    }
}

fn cofactor_det(a: &[Vec<IntPolynomial>]) -> IntPolynomial {
    let n = a.len();
    match n {
        0 => IntPolynomial::one(),
        1 => a[0][0].clone(),
        2 => &a[0][0] * &a[1][1] - &a[0][1] * &a[1][0],
        _ => {
            let mut acc = IntPolynomial::zero();
            for j in 0..n {
                if a[0][j].is_zero() {
                    continue;
                }
                let sub: Vec<Vec<IntPolynomial>> = a[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, p)| p.clone()).collect())
                    .collect();
                let term = &a[0][j] * &cofactor_det(&sub);
                acc = if j % 2 == 0 { acc + term } else { acc - term };
            }
            acc
        }
    }
}

fn bareiss_poly_det(mut a: Vec<Vec<IntPolynomial>>) -> IntPolynomial {
    let n = a.len();
    let mut negate = false;
    let mut prev = IntPolynomial::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    negate = !negate;
                }
                None => return IntPolynomial::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = v.div_exact(&prev).expect("fraction-free elimination divides exactly");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// First minor of order at most `max_order` with a negative coefficient, in
/// canonical order.
pub fn find_negative_poly_minor(m: &PolyMatrix, max_order: usize) -> Option<Witness> {
    let max_order = max_order.min(m.rows).min(m.cols);
    for k in 1..=max_order {
        for rs in subsets_lex(m.rows, k) {
            for cs in subsets_lex(m.cols, k) {
                let p = poly_minor(m, &rs, &cs);
                if p.has_negative_coefficient() {
                    return Some(Witness { rows: rs, cols: cs.clone(), value: MinorValue::Polynomial(p) });
                }
            }
        }
    }
    None
}

/// Coefficientwise test of the `size x size` Hankel matrix of `polys`,
/// restricted to minors of order at most `max_minor_order`.
pub fn coeffwise_hankel_tp(
    polys: &[IntPolynomial],
    size: usize,
    max_minor_order: usize,
) -> Result<TpReport, LinalgError> {
    let h = hankel_of_polys(polys, size)?;
    let cap = max_minor_order.min(size);
    Ok(match find_negative_poly_minor(&h, cap) {
        Some(w) => {
            let k = w.order();
            TpReport::fail(Method::Minors, w, k)
        }
        None => TpReport::pass(Method::Minors, cap),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangle::{reverse_rows, stirling_cycle_r, stirling_subset_r};

    fn p(cs: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(cs)
    }

    #[test]
    fn bareiss_determinants() {
        let m = ExactMatrix::from_i64_rows(&[&[0, 2, 1], &[1, 1, 1], &[3, 0, 2]]);
        assert_eq!(determinant(&m), BigInt::from(-1));
        assert_eq!(determinant(&ExactMatrix::identity(5)), BigInt::one());
        let s = ExactMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]);
        assert!(determinant(&s).is_zero());
    }

    #[test]
    fn lex_subsets() {
        assert_eq!(subsets_lex(4, 2), vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(subsets_lex(3, 0), vec![Vec::<usize>::new()]);
        assert!(subsets_lex(2, 3).is_empty());
    }

    #[test]
    fn identity_and_singleton() {
        assert!(neville_tp_test(&ExactMatrix::identity(6)).is_tp());
        let one = ExactMatrix::from_i64_rows(&[&[5]]);
        assert!(all_minors_nonneg(&one, 1).is_tp());
        assert!(neville_tp_test(&one).is_tp());
    }

    #[test]
    fn singular_tn_with_zero_pivots() {
        let m = ExactMatrix::from_i64_rows(&[&[1, 0, 0], &[1, 0, 0], &[1, 1, 0]]);
        let r = neville_tp_test(&m);
        assert!(r.is_tp());
        assert_eq!(r.method, Method::Neville);
    }

    #[test]
    fn negative_entry_witness() {
        let m = ExactMatrix::from_i64_rows(&[&[1, 2], &[-3, 4]]);
        let r = neville_tp_test(&m);
        assert_eq!(r.verdict, Verdict::NotTp);
        assert_eq!(r.witness.unwrap().rows, vec![1]);
    }

    #[test]
    fn reversed_cycle_witness() {
        let rev = reverse_rows(&stirling_cycle_r(4, 3));
        let m = ExactMatrix::leading_of(&rev, 4);
        let w = find_negative_minor(&m, 4).unwrap();
        assert_eq!((w.rows.clone(), w.cols.clone()), (vec![2, 3], vec![0, 1]));
        assert_eq!(w.value, MinorValue::Integer(BigInt::from(-7_076_160)));
        assert_eq!(neville_tp_test(&m).verdict, Verdict::NotTp);
    }

    #[test]
    fn reversed_subset_witness() {
        let rev = reverse_rows(&stirling_subset_r(4, 3));
        let w = find_negative_minor(&ExactMatrix::leading_of(&rev, 4), 4).unwrap();
        assert_eq!(w.value, MinorValue::Integer(BigInt::from(-1365)));
    }

    #[test]
    fn toeplitz_placement() {
        let c = stirling_cycle_r(2, 2);
        assert_eq!(toeplitz_of_row(&c, 2, 3), ExactMatrix::from_i64_rows(&[&[0, 0, 0], &[2, 0, 0], &[3, 2, 0]]));
        let m = toeplitz_of_row(&c, 0, 3);
        assert_eq!(m, ExactMatrix::identity(3));
    }

    #[test]
    fn hankel_and_minors() {
        let polys = [p(&[1]), p(&[0, 1]), p(&[0, 2, 3])];
        let h = hankel_of_polys(&polys, 2).unwrap();
        assert_eq!(h.get(1, 1), &p(&[0, 2, 3]));
        assert_eq!(poly_minor(&h, &[0, 1], &[0, 1]), p(&[0, 2, 2]));
        assert_eq!(poly_minor(&h, &[1], &[0]), p(&[0, 1]));
        assert_eq!(hankel_of_polys(&polys[..1], 1).unwrap().get(0, 0), &p(&[1]));
        assert!(hankel_of_polys(&polys, 3).is_err());
    }

    #[test]
    fn binomial_power_hankel() {
        let polys: Vec<IntPolynomial> = (0..5).map(|n| num_traits::pow(p(&[1, 1]), n)).collect();
        assert!(coeffwise_hankel_tp(&polys, 3, 3).unwrap().is_tp());
        let h = hankel_of_polys(&polys, 3).unwrap();
        assert!(poly_minor(&h, &[0, 1], &[0, 1]).is_zero());
    }

    #[test]
    fn bareiss_matches_cofactor() {
        let polys: Vec<IntPolynomial> = (0..9).map(|n| p(&[n as i64 - 3, 1, (n * n) as i64 % 5])).collect();
        let h = hankel_of_polys(&polys, 5).unwrap();
        let a: Vec<Vec<IntPolynomial>> = (0..5).map(|i| (0..5).map(|j| h.get(i, j).clone()).collect()).collect();
        assert_eq!(bareiss_poly_det(a.clone()), cofactor_det(&a));
    }
}

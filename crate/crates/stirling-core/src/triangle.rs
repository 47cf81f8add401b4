//! Exact generation of the triangular arrays: higher-order Stirling cycle and
//! subset numbers, their r-associated forms, r-th order Eulerian numbers,
//! quasi-Eulerian triangles, the ordered-phylogenetic triangle, and the matrix
//! plumbing (reversal, weighted binomial matrices, products) that relates them.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{binomial, factorial, rat, rat_to_int};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TriangleKind {
    StirlingCycle,
    StirlingSubset,
    AssocCycle,
    AssocSubset,
    Eulerian,
    QuasiEulerianCycle,
    QuasiEulerianSubset,
    OrderedPhylo,
    Generic,
}

impl TriangleKind {
    pub fn name(self) -> &'static str {
        match self {
            TriangleKind::StirlingCycle => "cycle",
            TriangleKind::StirlingSubset => "subset",
            TriangleKind::AssocCycle => "assoc-cycle",
            TriangleKind::AssocSubset => "assoc-subset",
            TriangleKind::Eulerian => "eulerian",
            TriangleKind::QuasiEulerianCycle => "quasi-cycle",
            TriangleKind::QuasiEulerianSubset => "quasi-subset",
            TriangleKind::OrderedPhylo => "ordered-phylo",
            TriangleKind::Generic => "generic",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Some(match s {
            "cycle" => TriangleKind::StirlingCycle,
            "subset" => TriangleKind::StirlingSubset,
            "assoc-cycle" => TriangleKind::AssocCycle,
            "assoc-subset" => TriangleKind::AssocSubset,
            "eulerian" => TriangleKind::Eulerian,
            "quasi-cycle" => TriangleKind::QuasiEulerianCycle,
            "quasi-subset" => TriangleKind::QuasiEulerianSubset,
            "ordered-phylo" => TriangleKind::OrderedPhylo,
            "generic" => TriangleKind::Generic,
            _ => return None,
        })
    }
}

/// Cycle/subset selector shared by several generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Cycle,
    Subset,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TriangleError {
    #[error("entry ({n},{k}) is not an integer")]
    NonIntegralEntry { n: usize, k: usize },
    #[error("size mismatch: {left} rows vs {right} rows")]
    SizeMismatch { left: usize, right: usize },
    #[error("beta' = 0, so no xi eliminates the third term")]
    NoEliminatingXi,
    #[error("row {0} is out of range")]
    RowOutOfRange(usize),
    #[error("row {n} has {len} entries, expected {}", n + 1)]
    MalformedRow { n: usize, len: usize },
}

/// Lower-triangular array stored as jagged rows: row `n` holds `T(n,0..=n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Triangle {
    rows: Vec<Vec<BigInt>>,
    kind: TriangleKind,
    order: u32,
}

impl Triangle {
    pub fn new(kind: TriangleKind, order: u32, rows: Vec<Vec<BigInt>>) -> Result<Self, TriangleError> {
        for (n, row) in rows.iter().enumerate() {
            if row.len() != n + 1 {
                return Err(TriangleError::MalformedRow { n, len: row.len() });
            }
        }
        Ok(Triangle { rows, kind, order })
    }

    fn from_rows_unchecked(kind: TriangleKind, order: u32, rows: Vec<Vec<BigInt>>) -> Self {
        debug_assert!(rows.iter().enumerate().all(|(n, r)| r.len() == n + 1));
        Triangle { rows, kind, order }
    }

    pub fn kind(&self) -> TriangleKind {
        self.kind
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn row(&self, n: usize) -> Option<&[BigInt]> {
        self.rows.get(n).map(Vec::as_slice)
    }

    /// Number of rows, i.e. `n_max + 1`.
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// `T(n,k)`, zero outside `0 <= k <= n`.
    pub fn get(&self, n: usize, k: isize) -> BigInt {
        if k < 0 {
            return BigInt::zero();
        }
        self.rows
            .get(n)
            .and_then(|r| r.get(k as usize))
            .cloned()
            .unwrap_or_default()
    }

    pub fn row_sum(&self, n: usize) -> BigInt {
        self.rows[n].iter().sum()
    }

    /// Leading `size x size` block as a dense row-major square.
    pub fn leading_block(&self, size: usize) -> Vec<Vec<BigInt>> {
        (0..size)
            .map(|i| (0..size).map(|j| self.get(i, j as isize)).collect())
            .collect()
    }

    pub fn truncated(&self, rows: usize) -> Triangle {
        Triangle::from_rows_unchecked(self.kind, self.order, self.rows[..rows.min(self.len())].to_vec())
    }

    pub fn with_kind(mut self, kind: TriangleKind, order: u32) -> Triangle {
        self.kind = kind;
        self.order = order;
        self
    }
}

/// Coefficients of `A(n,k) = (αn+βk+γ)A(n-1,k) + (α'n+β'k+γ')A(n-1,k-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GkpCoefficients {
    pub alpha: BigRational,
    pub beta: BigRational,
    pub gamma: BigRational,
    pub alpha1: BigRational,
    pub beta1: BigRational,
    pub gamma1: BigRational,
}

impl GkpCoefficients {
    pub fn from_ints(a: i64, b: i64, c: i64, a1: i64, b1: i64, c1: i64) -> Self {
        GkpCoefficients {
            alpha: rat(a),
            beta: rat(b),
            gamma: rat(c),
            alpha1: rat(a1),
            beta1: rat(b1),
            gamma1: rat(c1),
        }
    }
}

/// Row-polynomial form of a three-term recurrence:
/// `c_n(x) = [(p0 + p1 n) + (q0 + q1 n) x] c_{n-1}(x) + (u + v x + w x^2) c'_{n-1}(x)`,
/// i.e. `C(n,k) = (p0 + p1 n + v k) C(n-1,k) + (q0 + q1 n + w (k-1)) C(n-1,k-1)
/// + u (k+1) C(n-1,k+1)`. The class is closed under `x -> x + ξ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ThreeTermRecurrence {
    pub p0: BigRational,
    pub p1: BigRational,
    pub v: BigRational,
    pub q0: BigRational,
    pub q1: BigRational,
    pub w: BigRational,
    pub u: BigRational,
}

impl ThreeTermRecurrence {
    pub fn from_gkp(c: &GkpCoefficients) -> Self {
        ThreeTermRecurrence {
            p0: c.gamma.clone(),
            p1: c.alpha.clone(),
            v: c.beta.clone(),
            q0: &c.gamma1 + &c.beta1,
            q1: c.alpha1.clone(),
            w: c.beta1.clone(),
            u: BigRational::zero(),
        }
    }

    /// Back to two-term form when the `C(n-1,k+1)` term vanishes.
    pub fn to_gkp(&self) -> Option<GkpCoefficients> {
        if !self.u.is_zero() {
            return None;
        }
        Some(GkpCoefficients {
            alpha: self.p1.clone(),
            beta: self.v.clone(),
            gamma: self.p0.clone(),
            alpha1: self.q1.clone(),
            beta1: self.w.clone(),
            gamma1: &self.q0 - &self.w,
        })
    }

    /// Recurrence satisfied by `A·B_ξ` when `A` satisfies `self`.
    pub fn binomial_transform(&self, xi: &BigRational) -> Self {
        ThreeTermRecurrence {
            p0: &self.p0 + &self.q0 * xi,
            p1: &self.p1 + &self.q1 * xi,
            v: &self.v + &self.w * xi * rat(2),
            q0: self.q0.clone(),
            q1: self.q1.clone(),
            w: self.w.clone(),
            u: &self.u + &self.v * xi + &self.w * xi * xi,
        }
    }

    /// Coefficients `(same, lower, upper)` multiplying `C(n-1,k)`,
    /// `C(n-1,k-1)` and `C(n-1,k+1)`.
    pub fn weights(&self, n: usize, k: usize) -> (BigRational, BigRational, BigRational) {
        let (n, k) = (rat(n as i64), rat(k as i64));
        let same = &self.p0 + &self.p1 * &n + &self.v * &k;
        let lower = &self.q0 + &self.q1 * &n + &self.w * (&k - rat(1));
        let upper = &self.u * (&k + rat(1));
        (same, lower, upper)
    }

    pub fn generate(&self, n_max: usize) -> Result<Triangle, TriangleError> {
        let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
        for n in 1..=n_max {
            let prev = &rows[n - 1];
            let at = |k: isize| -> BigRational {
                if k < 0 || k as usize >= prev.len() {
                    BigRational::zero()
                } else {
                    BigRational::from_integer(prev[k as usize].clone())
                }
            };
            let mut row = Vec::with_capacity(n + 1);
            for k in 0..=n {
                let (s, l, up) = self.weights(n, k);
                let ki = k as isize;
                let val = s * at(ki) + l * at(ki - 1) + up * at(ki + 1);
                row.push(rat_to_int(&val).ok_or(TriangleError::NonIntegralEntry { n, k })?);
            }
            rows.push(row);
        }
        Ok(Triangle::from_rows_unchecked(TriangleKind::Generic, 0, rows))
    }
}

/// Generates rows `0..=n_max` of the two-term recurrence with
/// `A(0,k) = δ_{k0}` and `A(n,-1) = 0`.
pub fn gkp_generate(coeffs: &GkpCoefficients, n_max: usize) -> Result<Triangle, TriangleError> {
    let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for n in 1..=n_max {
        let prev = &rows[n - 1];
        let nn = rat(n as i64);
        let mut row = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let kk = rat(k as i64);
            let mut val = BigRational::zero();
            if k < prev.len() {
                let w = &coeffs.alpha * &nn + &coeffs.beta * &kk + &coeffs.gamma;
                val += w * BigRational::from_integer(prev[k].clone());
            }
            if k >= 1 {
                let w = &coeffs.alpha1 * &nn + &coeffs.beta1 * &kk + &coeffs.gamma1;
                val += w * BigRational::from_integer(prev[k - 1].clone());
            }
            row.push(rat_to_int(&val).ok_or(TriangleError::NonIntegralEntry { n, k })?);
        }
        rows.push(row);
    }
    Ok(Triangle::from_rows_unchecked(TriangleKind::Generic, 0, rows))
}

/// Three-term coefficients of `A·B_ξ` for a two-term `A`.
pub fn gkp_binomial_transform(coeffs: &GkpCoefficients, xi: &BigRational) -> ThreeTermRecurrence {
    ThreeTermRecurrence::from_gkp(coeffs).binomial_transform(xi)
}

/// The `ξ = -β/β'` that removes the `C(n-1,k+1)` term.
pub fn gkp_eliminating_xi(coeffs: &GkpCoefficients) -> Result<BigRational, TriangleError> {
    if coeffs.beta1.is_zero() {
        return Err(TriangleError::NoEliminatingXi);
    }
    Ok(-(&coeffs.beta / &coeffs.beta1))
}

/// `[n k]^(r)` for `0 <= k <= n <= n_max`.
pub fn stirling_cycle_r(r: u32, n_max: usize) -> Triangle {
    assert!(r >= 1, "order must be at least 1");
    let rm1 = (r - 1) as usize;
    let fact = factorial(rm1);
    let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for n in 1..=n_max {
        let prev = &rows[n - 1];
        let mut row = Vec::with_capacity(n + 1);
        for k in 0..=n {
            // n + (r-1)k - 1 >= 0 since n >= 1
            let m = n + rm1 * k - 1;
            let mut val = BigInt::zero();
            if k >= 1 {
                val += &fact * binomial(m, rm1) * &prev[k - 1];
            }
            if k < prev.len() {
                val += BigInt::from(m) * &prev[k];
            }
            row.push(val);
        }
        rows.push(row);
    }
    Triangle::from_rows_unchecked(TriangleKind::StirlingCycle, r, rows)
}

/// `{n k}^(r)` for `0 <= k <= n <= n_max`.
pub fn stirling_subset_r(r: u32, n_max: usize) -> Triangle {
    assert!(r >= 1, "order must be at least 1");
    let rm1 = (r - 1) as usize;
    let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for n in 1..=n_max {
        let prev = &rows[n - 1];
        let mut row = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let m = n + rm1 * k - 1;
            let mut val = BigInt::zero();
            if k >= 1 {
                val += binomial(m, rm1) * &prev[k - 1];
            }
            if k < prev.len() {
                val += BigInt::from(k) * &prev[k];
            }
            row.push(val);
        }
        rows.push(row);
    }
    Triangle::from_rows_unchecked(TriangleKind::StirlingSubset, r, rows)
}

/// Generates by family.
pub fn stirling_r(family: Family, r: u32, n_max: usize) -> Triangle {
    match family {
        Family::Cycle => stirling_cycle_r(r, n_max),
        Family::Subset => stirling_subset_r(r, n_max),
    }
}

/// r-associated numbers `[N k]_r` / `{N k}_r`, rows `0..=n_max`; entries vanish
/// unless `N >= r k`.
pub fn r_associated(family: Family, r: u32, n_max: usize) -> Triangle {
    assert!(r >= 1, "order must be at least 1");
    let r = r as usize;
    let fact = factorial(r - 1);
    let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for big_n in 1..=n_max {
        let mut row = Vec::with_capacity(big_n + 1);
        for k in 0..=big_n {
            let mut val = BigInt::zero();
            if k >= 1 && big_n >= r {
                let down = &rows[big_n - r];
                if k - 1 < down.len() {
                    let b = binomial(big_n - 1, r - 1) * &down[k - 1];
                    val += match family {
                        Family::Cycle => &fact * b,
                        Family::Subset => b,
                    };
                }
            }
            let prev = &rows[big_n - 1];
            if k < prev.len() {
                let w = match family {
                    Family::Cycle => BigInt::from(big_n - 1),
                    Family::Subset => BigInt::from(k),
                };
                val += w * &prev[k];
            }
            row.push(val);
        }
        rows.push(row);
    }
    let kind = match family {
        Family::Cycle => TriangleKind::AssocCycle,
        Family::Subset => TriangleKind::AssocSubset,
    };
    Triangle::from_rows_unchecked(kind, r as u32, rows)
}

/// r-th order Eulerian numbers `<n k>^(r)`, rows `0..=n_max`.
pub fn eulerian_r(r: u32, n_max: usize) -> Triangle {
    assert!(r >= 1, "order must be at least 1");
    let r = r as i64;
    let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for n in 1..=n_max {
        let prev = &rows[n - 1];
        let mut row = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut val = BigInt::zero();
            if k >= 1 && k - 1 < prev.len() {
                let w = r * n as i64 - k as i64 - (r - 1);
                val += BigInt::from(w) * &prev[k - 1];
            }
            if k < prev.len() {
                val += BigInt::from(k + 1) * &prev[k];
            }
            row.push(val);
        }
        rows.push(row);
    }
    Triangle::from_rows_unchecked(TriangleKind::Eulerian, r as u32, rows)
}

/// `out(n,k) = T(n,n-k)`.
pub fn reverse_rows(t: &Triangle) -> Triangle {
    let rows = t
        .rows
        .iter()
        .map(|row| row.iter().rev().cloned().collect())
        .collect();
    Triangle::from_rows_unchecked(TriangleKind::Generic, t.order, rows)
}

/// `out(n,k) = T(n,n-k-1)` with row 0 fixed at `[1]`: the reverse-shift that
/// carries the second-order Eulerian triangle to its subset counterpart.
pub fn reverse_shift(t: &Triangle) -> Triangle {
    let rows = t
        .rows
        .iter()
        .enumerate()
        .map(|(n, _)| {
            if n == 0 {
                return vec![BigInt::one()];
            }
            (0..=n)
                .map(|k| t.get(n, n as isize - k as isize - 1))
                .collect()
        })
        .collect();
    Triangle::from_rows_unchecked(TriangleKind::Generic, t.order, rows)
}

/// `B_ξ(n,k) = binom(n,k) ξ^{n-k}`.
pub fn binomial_matrix(xi: &BigRational, n_max: usize) -> Result<Triangle, TriangleError> {
    let mut rows = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut row = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let val = BigRational::from_integer(binomial(n, k)) * num_traits::pow(xi.clone(), n - k);
            row.push(rat_to_int(&val).ok_or(TriangleError::NonIntegralEntry { n, k })?);
        }
        rows.push(row);
    }
    Ok(Triangle::from_rows_unchecked(TriangleKind::Generic, 0, rows))
}

/// Integer-weight shortcut for `binomial_matrix`.
pub fn binomial_matrix_int(xi: i64, n_max: usize) -> Triangle {
    binomial_matrix(&rat(xi), n_max).expect("integer weights give integer entries")
}

/// Exact product of two lower-triangular arrays with the same number of rows.
pub fn matmul(a: &Triangle, b: &Triangle) -> Result<Triangle, TriangleError> {
    if a.len() != b.len() {
        return Err(TriangleError::SizeMismatch { left: a.len(), right: b.len() });
    }
    let rows = (0..a.len())
        .map(|n| {
            (0..=n)
                .map(|k| {
                    let mut s = BigInt::zero();
                    for i in k..=n {
                        let x = &a.rows[n][i];
                        if !x.is_zero() {
                            s += x * &b.rows[i][k];
                        }
                    }
                    s
                })
                .collect()
        })
        .collect();
    Ok(Triangle::from_rows_unchecked(TriangleKind::Generic, 0, rows))
}

/// `Q_C^(r) = rev(C^(r)) B_{-1}` and `Q_S^(r) = rev(S^(r)) B_{-1}`.
pub fn quasi_eulerian(family: Family, r: u32, n_max: usize) -> Triangle {
    let base = stirling_r(family, r, n_max);
    let q = matmul(&reverse_rows(&base), &binomial_matrix_int(-1, n_max)).expect("same size");
    let kind = match family {
        Family::Cycle => TriangleKind::QuasiEulerianCycle,
        Family::Subset => TriangleKind::QuasiEulerianSubset,
    };
    q.with_kind(kind, r)
}

/// Diagonal entry: `(rn)!/(r^n n!)` for cycle, `(rn)!/((r!)^n n!)` for subset.
pub fn diagonal_formula(family: Family, r: u32, n: usize) -> BigInt {
    let r = r as usize;
    let num = factorial(r * n);
    let base = match family {
        Family::Cycle => BigInt::from(r),
        Family::Subset => factorial(r),
    };
    let den = num_traits::pow(base, n) * factorial(n);
    let (q, rem) = num.div_rem(&den);
    debug_assert!(rem.is_zero());
    q
}

/// Phylogenetic trees with linearly ordered children: entry
/// `(n+k)!/k! * binom(n-1,k-1)`, with the `(0,0)` entry equal to 1.
pub fn ordered_phylo_triangle(n_max: usize) -> Triangle {
    let mut rows = vec![vec![BigInt::one()]];
    for n in 1..=n_max {
        let mut row = vec![BigInt::zero()];
        for k in 1..=n {
            row.push(factorial(n + k) / factorial(k) * binomial(n - 1, k - 1));
        }
        rows.push(row);
    }
    Triangle::from_rows_unchecked(TriangleKind::OrderedPhylo, 0, rows)
}

impl fmt::Display for Triangle {
    /// One row per line, entries comma separated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            for (i, x) in row.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", x)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// True when every entry is nonnegative.
pub fn is_nonnegative(t: &Triangle) -> bool {
    t.rows.iter().flatten().all(|x| !x.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn gkp_second_order_eulerian_row() {
        let t = gkp_generate(&GkpCoefficients::from_ints(0, 1, 1, 2, -1, -1), 3).unwrap();
        assert_eq!(t.row(3).unwrap(), &ints(&[1, 8, 6, 0])[..]);
        assert_eq!(t.row(0).unwrap(), &ints(&[1])[..]);
    }

    #[test]
    fn gkp_shifted_reversed_row() {
        let t = gkp_generate(&GkpCoefficients::from_ints(1, 1, 0, 1, -1, 0), 3).unwrap();
        assert_eq!(t.row(3).unwrap(), &ints(&[6, 8, 1, 0])[..]);
    }

    #[test]
    fn gkp_rejects_fractional_weights() {
        let mut c = GkpCoefficients::from_ints(0, 1, 0, 0, 0, 1);
        c.gamma = BigRational::new(1.into(), 2.into());
        assert_eq!(gkp_generate(&c, 2), Err(TriangleError::NonIntegralEntry { n: 1, k: 0 }));
    }

    #[test]
    fn cycle_rows() {
        assert_eq!(stirling_cycle_r(2, 3).row(3).unwrap(), &ints(&[0, 6, 20, 15])[..]);
        assert_eq!(stirling_cycle_r(3, 2).row(2).unwrap(), &ints(&[0, 6, 40])[..]);
        assert_eq!(stirling_cycle_r(4, 1).row(1).unwrap(), &ints(&[0, 6])[..]);
        assert_eq!(stirling_cycle_r(2, 4).get(4, 4), BigInt::from(105));
        assert_eq!(stirling_cycle_r(2, 3).row_sum(3), BigInt::from(41));
    }

    #[test]
    fn subset_rows() {
        assert_eq!(stirling_subset_r(2, 4).row(4).unwrap(), &ints(&[0, 1, 25, 105, 105])[..]);
        assert_eq!(stirling_subset_r(3, 3).row(3).unwrap(), &ints(&[0, 1, 35, 280])[..]);
        assert_eq!(stirling_subset_r(4, 2).row(2).unwrap(), &ints(&[0, 1, 35])[..]);
    }

    #[test]
    fn associated_values() {
        let a = r_associated(Family::Cycle, 2, 4);
        assert_eq!(a.get(4, 2), BigInt::from(3));
        assert_eq!(a.row(0).unwrap(), &ints(&[1])[..]);
        assert_eq!(stirling_cycle_r(2, 2).get(2, 2), a.get(4, 2));
    }

    #[test]
    fn eulerian_rows() {
        assert_eq!(eulerian_r(2, 4).row(4).unwrap(), &ints(&[1, 22, 58, 24, 0])[..]);
        assert_eq!(eulerian_r(1, 3).row(3).unwrap(), &ints(&[1, 4, 1, 0])[..]);
        assert_eq!(eulerian_r(5, 1).row(1).unwrap(), &ints(&[1, 0])[..]);
    }

    #[test]
    fn reversal() {
        let c = stirling_cycle_r(2, 2);
        assert_eq!(reverse_rows(&c).row(2).unwrap(), &ints(&[3, 2, 0])[..]);
        assert_eq!(reverse_rows(&c).row(0).unwrap(), &ints(&[1])[..]);
        let c3 = stirling_cycle_r(3, 6);
        assert_eq!(reverse_rows(&reverse_rows(&c3)).rows(), c3.rows());
    }

    #[test]
    fn binomial_matrices() {
        assert_eq!(binomial_matrix_int(1, 4).row(4).unwrap(), &ints(&[1, 4, 6, 4, 1])[..]);
        assert_eq!(binomial_matrix_int(-1, 2).row(2).unwrap(), &ints(&[1, -2, 1])[..]);
        let id = matmul(&binomial_matrix_int(1, 3), &binomial_matrix_int(-1, 3)).unwrap();
        assert_eq!(id.row(3).unwrap(), &ints(&[0, 0, 0, 1])[..]);
        let half = BigRational::new(1.into(), 2.into());
        assert!(binomial_matrix(&half, 2).is_err());
    }

    #[test]
    fn products() {
        let e = eulerian_r(2, 3);
        let b = binomial_matrix_int(1, 3);
        assert_eq!(matmul(&e, &b).unwrap().row(2).unwrap(), &ints(&[3, 2, 0])[..]);
        let es = reverse_shift(&e);
        assert_eq!(matmul(&es, &b).unwrap().row(3).unwrap(), &ints(&[15, 10, 1, 0])[..]);
        let id = binomial_matrix_int(0, 3);
        assert_eq!(matmul(&e, &id).unwrap().rows(), e.rows());
        assert!(matmul(&e, &binomial_matrix_int(1, 2)).is_err());
    }

    #[test]
    fn quasi_eulerian_rows() {
        assert_eq!(quasi_eulerian(Family::Cycle, 3, 2).row(2).unwrap(), &ints(&[34, 6, 0])[..]);
        assert_eq!(quasi_eulerian(Family::Subset, 1, 3).row(3).unwrap(), &ints(&[-1, 1, 1, 0])[..]);
        assert_eq!(
            quasi_eulerian(Family::Cycle, 2, 5).row(5).unwrap(),
            &ints(&[1, 52, 328, 444, 120, 0])[..]
        );
    }

    #[test]
    fn transform_examples() {
        let t = gkp_binomial_transform(&GkpCoefficients::from_ints(0, 1, 1, 2, -1, -1), &rat(1));
        assert_eq!(t.to_gkp(), Some(GkpCoefficients::from_ints(2, -1, -1, 2, -1, -1)));
        let t = gkp_binomial_transform(&GkpCoefficients::from_ints(1, 1, 0, 1, -1, 0), &rat(1));
        assert_eq!(t.to_gkp(), Some(GkpCoefficients::from_ints(2, -1, -1, 1, -1, 0)));
        let c = GkpCoefficients::from_ints(3, 2, 1, 1, 4, 5);
        assert_eq!(gkp_binomial_transform(&c, &rat(0)).to_gkp(), Some(c));
    }

    #[test]
    fn eliminating_xi() {
        let c = GkpCoefficients::from_ints(0, 1, 1, 2, -1, -1);
        assert_eq!(gkp_eliminating_xi(&c), Ok(rat(1)));
        assert!(gkp_binomial_transform(&c, &rat(1)).u.is_zero());
        let flat = GkpCoefficients::from_ints(0, 1, 1, 2, 0, -1);
        assert_eq!(gkp_eliminating_xi(&flat), Err(TriangleError::NoEliminatingXi));
    }

    #[test]
    fn diagonals() {
        assert_eq!(diagonal_formula(Family::Cycle, 3, 3), BigInt::from(2240));
        assert_eq!(diagonal_formula(Family::Subset, 4, 2), BigInt::from(35));
        assert_eq!(diagonal_formula(Family::Cycle, 5, 0), BigInt::one());
    }

    #[test]
    fn ordered_phylo_rows() {
        let d = ordered_phylo_triangle(4);
        assert_eq!(d.row(3).unwrap(), &ints(&[0, 24, 120, 120])[..]);
        assert_eq!(d.row_sum(3), BigInt::from(264));
        assert_eq!(d.get(4, 2), BigInt::from(1080));
        assert_eq!(d.row(0).unwrap(), &ints(&[1])[..]);
    }

    #[test]
    fn malformed_rows_rejected() {
        assert!(Triangle::new(TriangleKind::Generic, 0, vec![ints(&[1]), ints(&[1])]).is_err());
    }
}

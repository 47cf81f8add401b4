//! Truncated power series in one variable whose coefficients are exact
//! multivariate polynomials, with the tree-counting differential equation
//! `F' = Phi(F)`, the Ward functional equation, and Thron-type continued
//! fractions built on top.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{binomial_rational, factorial, rat};
use crate::mpoly::MPoly;
use crate::poly::IntPolynomial;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("inner series has a nonzero constant term")]
    NonzeroConstantTerm,
    #[error("constant term is not a nonzero rational")]
    NotInvertible,
    #[error("order {0} is below the minimum 1")]
    OrderTooSmall(usize),
    #[error("coefficient {0} times its factorial is not integral")]
    NonIntegral(usize),
    #[error("needs depth or order {needed}, got {got}")]
    InsufficientDepth { needed: usize, got: usize },
}

/// `a_0 + a_1 t + ... + a_N t^N + O(t^{N+1})`; no operation reads beyond
/// `N`, and results carry the least order their inputs determine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    nvars: usize,
    coeffs: Vec<MPoly>,
}

impl TruncatedSeries {
    pub fn zero(nvars: usize, order: usize) -> Self {
        Self { nvars, coeffs: vec![MPoly::zero(nvars); order + 1] }
    }

    pub fn constant(c: MPoly, order: usize) -> Self {
        let mut s = Self::zero(c.nvars(), order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(nvars: usize, order: usize) -> Self {
        Self::constant(MPoly::one(nvars), order)
    }

    /// The series variable `t`.
    pub fn variable(nvars: usize, order: usize) -> Self {
        let mut s = Self::zero(nvars, order);
        if order >= 1 {
            s.coeffs[1] = MPoly::one(nvars);
        }
        s
    }

    /// Series with the given coefficients; the order is `coeffs.len() - 1`.
    pub fn from_coeffs(nvars: usize, coeffs: Vec<MPoly>) -> Self {
        assert!(!coeffs.is_empty(), "at least one coefficient");
        assert!(coeffs.iter().all(|c| c.nvars() == nvars), "same ring");
        Self { nvars, coeffs }
    }

    /// `Σ f(k) t^k` for `k = 0..=order`.
    pub fn from_fn(nvars: usize, order: usize, f: impl Fn(usize) -> MPoly) -> Self {
        Self::from_coeffs(nvars, (0..=order).map(f).collect())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &MPoly {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[MPoly] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a truncated series");
        Self { nvars: self.nvars, coeffs: self.coeffs[..=order].to_vec() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::from_fn(self.nvars, n, |k| &self.coeffs[k] + &other.coeffs[k])
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::from_fn(self.nvars, n, |k| &self.coeffs[k] - &other.coeffs[k])
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut out = Self::zero(self.nvars, n);
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    out.coeffs[i + j] = &out.coeffs[i + j] + &(a * b);
                }
            }
        }
        out
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &MPoly) -> Self {
        Self::from_fn(self.nvars, self.order(), |k| &self.coeffs[k] * c)
    }

    /// `d/dt`; the order drops by one (floor 0).
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(self.nvars, 0);
        }
        Self::from_fn(self.nvars, self.order() - 1, |k| self.coeffs[k + 1].scale(&rat(k as i64 + 1)))
    }

    /// Antiderivative with zero constant term; the order rises by one.
    pub fn integrate(&self) -> Self {
        Self::from_fn(self.nvars, self.order() + 1, |k| {
            if k == 0 {
                MPoly::zero(self.nvars)
            } else {
                self.coeffs[k - 1].scale(&(BigRational::one() / rat(k as i64)))
            }
        })
    }

    /// `self(inner(t))`, defined when `inner` has zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self, SeriesError> {
        if !inner.coeffs[0].is_zero() {
            return Err(SeriesError::NonzeroConstantTerm);
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncate(n);
        // Horner: a_0 + g (a_1 + g (a_2 + ...)).
        let mut acc = Self::constant(self.coeffs[n].clone(), n);
        for k in (0..n).rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] = &acc.coeffs[0] + &self.coeffs[k];
        }
        Ok(acc)
    }

    /// `Σ c_k self^k` for a zero-constant-term series.
    fn apply_coefficients(&self, c: impl Fn(usize) -> BigRational) -> Result<Self, SeriesError> {
        let outer = Self::from_fn(self.nvars, self.order(), |k| MPoly::constant(self.nvars, c(k)));
        outer.compose(self)
    }

    /// `exp(self)` for zero constant term.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        self.apply_coefficients(|k| BigRational::new(BigInt::one(), factorial(k)))
    }

    /// `log(1 - self)` for zero constant term.
    pub fn log_one_minus(&self) -> Result<Self, SeriesError> {
        self.apply_coefficients(|k| if k == 0 { BigRational::zero() } else { -(BigRational::one() / rat(k as i64)) })
    }

    /// `(1 + self)^a` for zero constant term and rational `a`.
    pub fn one_plus_pow(&self, a: &BigRational) -> Result<Self, SeriesError> {
        self.apply_coefficients(|k| binomial_rational(a, k))
    }

    /// `1 / self` when the constant term is a nonzero rational.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let a0 = &self.coeffs[0];
        if !a0.is_constant() || a0.is_zero() {
            return Err(SeriesError::NotInvertible);
        }
        let inv0 = BigRational::one() / a0.constant_term();
        let mut b = vec![MPoly::constant(self.nvars, inv0.clone())];
        for n in 1..=self.order() {
            let mut s = MPoly::zero(self.nvars);
            for k in 1..=n {
                s = &s + &(&self.coeffs[k] * &b[n - k]);
            }
            b.push(s.scale(&-inv0.clone()));
        }
        Ok(Self::from_coeffs(self.nvars, b))
    }

    /// `1 / (1 - self)` for zero constant term.
    pub fn geometric(&self) -> Result<Self, SeriesError> {
        self.apply_coefficients(|_| BigRational::one())
    }

    /// `n! a_n` for every `n`, which must all be integral.
    pub fn egf_coefficients(&self) -> Result<Vec<MPoly>, SeriesError> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| {
                let v = c.scale(&BigRational::from_integer(factorial(n)));
                if v.is_integral() { Ok(v) } else { Err(SeriesError::NonIntegral(n)) }
            })
            .collect()
    }

    /// First index `k <= order` where the two series differ.
    pub fn first_mismatch(&self, other: &Self, order: usize) -> Option<usize> {
        (0..=order).find(|&k| self.coeffs.get(k) != other.coeffs.get(k))
    }
}

/// Solves `F' = Phi(F)`, `F(0) = 0` to order `order` by exactly `order`
/// fixed-point steps, each fixing one more coefficient.
pub fn solve_autonomous_ode(phi: &TruncatedSeries, order: usize) -> Result<TruncatedSeries, SeriesError> {
    if order < 1 {
        return Err(SeriesError::OrderTooSmall(order));
    }
    if phi.order() < order - 1 {
        return Err(SeriesError::InsufficientDepth { needed: order - 1, got: phi.order() });
    }
    let phi = phi.truncate(order - 1);
    let mut f = TruncatedSeries::zero(phi.nvars(), order);
    for _ in 0..order {
        f = phi.compose(&f.truncate(order - 1))?.integrate();
    }
    Ok(f)
}

/// Outcome of checking `B = PhiHat(A)` and `A' = 1 + x B`, where `A` and
/// `B` solve the tree equation for `Phi = 1 + x PhiHat` and
/// `Psi = (1 + x u) Chi(u)`. Indices are first failing orders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrespondenceReport {
    pub order: usize,
    /// `PhiHat' = Chi(PhiHat)`, checked rather than assumed.
    pub precondition_failure: Option<usize>,
    pub composition_failure: Option<usize>,
    pub derivative_failure: Option<usize>,
}

impl CorrespondenceReport {
    pub fn holds(&self) -> bool {
        self.precondition_failure.is_none() && self.composition_failure.is_none() && self.derivative_failure.is_none()
    }
}

/// Variable indices in the two-variable ring used by the correspondence.
pub const VAR_X: usize = 0;
pub const VAR_Y: usize = 1;

/// Checks the correspondence for series in the ring `Q[x, y]`, both given to
/// at least `order`.
pub fn verify_tree_correspondence(phi_hat: &TruncatedSeries, chi: &TruncatedSeries, order: usize) -> Result<CorrespondenceReport, SeriesError> {
    if order < 1 {
        return Err(SeriesError::OrderTooSmall(order));
    }
    let nv = phi_hat.nvars();
    let phi_hat = phi_hat.truncate(order);
    let chi = chi.truncate(order);
    if !phi_hat.coeff(0).is_zero() {
        return Err(SeriesError::NonzeroConstantTerm);
    }
    let lhs = phi_hat.derivative();
    let rhs = chi.compose(&phi_hat)?;
    let precondition_failure = lhs.first_mismatch(&rhs, order - 1);

    let x = MPoly::var(nv, VAR_X);
    let phi = TruncatedSeries::one(nv, order).add(&phi_hat.scale(&x));
    let one_xu = TruncatedSeries::one(nv, order).add(&TruncatedSeries::variable(nv, order).scale(&x));
    let psi = one_xu.mul(&chi);
    let a = solve_autonomous_ode(&phi, order)?;
    let b = solve_autonomous_ode(&psi, order)?;
    let composition_failure = b.first_mismatch(&phi_hat.compose(&a)?, order);
    let rhs = TruncatedSeries::one(nv, order).add(&b.scale(&x));
    let derivative_failure = a.derivative().first_mismatch(&rhs, order - 1);
    Ok(CorrespondenceReport { order, precondition_failure, composition_failure, derivative_failure })
}

/// Known `(PhiHat, Chi)` pairs over `Q[x, y]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CorrespondenceCase {
    /// `Chi = (1 + ys)^k`, `PhiHat = ([1 - (k-1) y u]^{-1/(k-1)} - 1) / y`,
    /// for `k >= 2`; `k = 2` gives `PhiHat = u / (1 - yu)`.
    Power(u32),
    /// `Chi = 1 + ys`, `PhiHat = (e^{yu} - 1) / y`.
    Linear,
    /// `Chi = e^{ys}`, `PhiHat = -log(1 - yu) / y`.
    Exponential,
}

impl CorrespondenceCase {
    /// `PhiHat` from its closed form, expanded coefficientwise.
    pub fn phi_hat(self, order: usize) -> TruncatedSeries {
        let y_pow = |j: usize, c: BigRational| {
            let mut e = vec![0; 2];
            e[VAR_Y] = j as u32;
            MPoly::monomial(2, e, c)
        };
        TruncatedSeries::from_fn(2, order, |j| {
            if j == 0 {
                return MPoly::zero(2);
            }
            let c = match self {
                CorrespondenceCase::Power(k) => {
                    assert!(k >= 2, "exponent at least 2");
                    let km1 = rat(k as i64 - 1);
                    let a = -(BigRational::one() / &km1);
                    binomial_rational(&a, j) * num_traits::pow(-km1, j)
                }
                CorrespondenceCase::Linear => BigRational::new(BigInt::one(), factorial(j)),
                CorrespondenceCase::Exponential => BigRational::one() / rat(j as i64),
            };
            y_pow(j - 1, c)
        })
    }

    /// `Chi(s)`.
    pub fn chi(self, order: usize) -> TruncatedSeries {
        let ys = TruncatedSeries::variable(2, order).scale(&MPoly::var(2, VAR_Y));
        match self {
            CorrespondenceCase::Power(k) => {
                let base = TruncatedSeries::one(2, order).add(&ys);
                (1..k).fold(base.clone(), |acc, _| acc.mul(&base))
            }
            CorrespondenceCase::Linear => TruncatedSeries::one(2, order).add(&ys),
            CorrespondenceCase::Exponential => ys.exp().expect("zero constant term"),
        }
    }

    pub fn verify(self, order: usize) -> Result<CorrespondenceReport, SeriesError> {
        verify_tree_correspondence(&self.phi_hat(order), &self.chi(order), order)
    }
}

/// How the variables of the Ward functional equation are specialized.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WardSpecialization {
    /// Independent `x_1, ..., x_{N-1}`, variable `i - 1` being `x_i`.
    Multivariate,
    /// `x_i = x`.
    Subset,
    /// `x_i = i! x`.
    Cyclic,
    /// `x_i = (i+1)! x`.
    Ordered,
}

/// Solves `W = t + Σ_{j>=2} x_{j-1} W^j / j!` to order `order` by exactly
/// `order` fixed-point steps.
pub fn ward_egf(order: usize, spec: WardSpecialization) -> TruncatedSeries {
    let nv = match spec {
        WardSpecialization::Multivariate => order.saturating_sub(1).max(1),
        _ => 1,
    };
    let weight = |j: usize| -> MPoly {
        let c = BigRational::new(BigInt::one(), factorial(j));
        match spec {
            WardSpecialization::Multivariate => MPoly::var(nv, j - 2).scale(&c),
            WardSpecialization::Subset => MPoly::var(1, 0).scale(&c),
            WardSpecialization::Cyclic => MPoly::var(1, 0).scale(&(c * BigRational::from_integer(factorial(j - 1)))),
            WardSpecialization::Ordered => MPoly::var(1, 0).scale(&(c * BigRational::from_integer(factorial(j)))),
        }
    };
    let t = TruncatedSeries::variable(nv, order);
    let mut w = TruncatedSeries::zero(nv, order);
    for _ in 0..order {
        let mut next = t.clone();
        let mut pow = w.mul(&w);
        for j in 2..=order {
            next = next.add(&pow.scale(&weight(j)));
            pow = pow.mul(&w);
        }
        w = next;
    }
    w
}

/// `W_n = (n+1)! [t^{n+1}] W` for `n = 0..order`.
pub fn ward_polynomials(order: usize, spec: WardSpecialization) -> Result<Vec<MPoly>, SeriesError> {
    let w = ward_egf(order + 1, spec);
    Ok(w.egf_coefficients()?.into_iter().skip(1).collect())
}

/// Expands `1/(1 - δ_1 t - α_1 t/(1 - δ_2 t - α_2 t/(1 - ...)))` to order
/// `order`; `alpha[k]` and `delta[k]` belong to level `k + 1`. A tail cut at
/// depth `D` changes only coefficients above `D`, so depth `order` suffices.
pub fn t_fraction_expand(alpha: &[IntPolynomial], delta: &[IntPolynomial], order: usize) -> Result<TruncatedSeries, SeriesError> {
    let depth = alpha.len().min(delta.len());
    if depth < order {
        return Err(SeriesError::InsufficientDepth { needed: order, got: depth });
    }
    let t = TruncatedSeries::variable(1, order);
    let mut g = TruncatedSeries::one(1, order);
    for k in (0..order).rev() {
        let a = MPoly::from_univariate(1, 0, &alpha[k]);
        let d = MPoly::from_univariate(1, 0, &delta[k]);
        let denom = TruncatedSeries::one(1, order).sub(&t.scale(&d)).sub(&t.mul(&g).scale(&a));
        g = denom.inverse()?;
    }
    Ok(g)
}

/// `α_n = n x`, `δ_n = n - 1` for levels `1..=depth`.
pub fn ward_t_fraction_coefficients(depth: usize) -> (Vec<IntPolynomial>, Vec<IntPolynomial>) {
    let alpha = (1..=depth).map(|n| IntPolynomial::from_i64s(&[0, n as i64])).collect();
    let delta = (1..=depth).map(|n| IntPolynomial::from_i64s(&[n as i64 - 1])).collect();
    (alpha, delta)
}

/// Univariate view of a one-variable coefficient.
pub fn to_univariate(p: &MPoly) -> Option<IntPolynomial> {
    assert_eq!(p.nvars(), 1, "one variable");
    p.eval_univariate(&[IntPolynomial::from_i64s(&[0, 1])])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(order: usize) -> TruncatedSeries {
        TruncatedSeries::variable(0, order)
    }

    fn rats(s: &TruncatedSeries) -> Vec<BigRational> {
        s.coeffs().iter().map(MPoly::constant_term).collect()
    }

    #[test]
    fn basic_operations() {
        let t2 = t(4).mul(&t(4));
        assert_eq!(rats(&t2.derivative()), vec![rat(0), rat(2), rat(0), rat(0)]);
        let log1p = t(10).scale(&MPoly::from_int(0, -1)).log_one_minus().unwrap();
        let e = log1p.exp().unwrap();
        let mut expected = vec![rat(0); 11];
        expected[0] = rat(1);
        expected[1] = rat(1);
        assert_eq!(rats(&e), expected);
        let u = t(3);
        let outer = u.geometric().unwrap().mul(&u);
        let inner = u.add(&u.mul(&u));
        assert_eq!(rats(&outer.compose(&inner).unwrap()), vec![rat(0), rat(1), rat(2), rat(3)]);
        assert_eq!(outer.compose(&TruncatedSeries::one(0, 3)), Err(SeriesError::NonzeroConstantTerm));
    }

    #[test]
    fn inverse_and_powers() {
        let one_plus = TruncatedSeries::one(0, 6).add(&t(6));
        let inv = one_plus.inverse().unwrap();
        assert_eq!(rats(&inv.mul(&one_plus)), rats(&TruncatedSeries::one(0, 6)));
        let half = BigRational::new(1.into(), 2.into());
        let root = t(6).one_plus_pow(&half).unwrap();
        assert_eq!(rats(&root.mul(&root)), rats(&one_plus));
    }

    #[test]
    fn ode_examples() {
        let f = solve_autonomous_ode(&TruncatedSeries::one(0, 5), 5).unwrap();
        assert_eq!(rats(&f), rats(&t(5)));
        assert_eq!(solve_autonomous_ode(&TruncatedSeries::one(0, 5), 0), Err(SeriesError::OrderTooSmall(0)));
        // F' = (1 + F)^3: n! [t^n] F = (2n-1)!!.
        let u = t(8);
        let one_u = TruncatedSeries::one(0, 8).add(&u);
        let cube = one_u.mul(&one_u).mul(&one_u);
        let f = solve_autonomous_ode(&cube, 8).unwrap();
        let egf = f.egf_coefficients().unwrap();
        for n in 1..=8 {
            let df: i64 = (1..=n as i64).map(|j| 2 * j - 1).product();
            assert_eq!(egf[n].constant_term(), rat(df));
        }
    }

    #[test]
    fn t_fraction_second_coefficient() {
        let (a, d) = ward_t_fraction_coefficients(4);
        let f = t_fraction_expand(&a, &d, 4).unwrap();
        assert_eq!(to_univariate(f.coeff(2)).unwrap(), IntPolynomial::from_i64s(&[0, 1, 3]));
        let zeros = vec![IntPolynomial::zero(); 5];
        let f = t_fraction_expand(&zeros, &zeros, 5).unwrap();
        assert_eq!(f, TruncatedSeries::one(1, 5));
        assert!(t_fraction_expand(&a, &d, 5).is_err());
    }
}

//! Sparse multivariate polynomials with exact rational coefficients.

use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::poly::IntPolynomial;

/// Polynomial in `nvars` variables as a map from exponent vectors to nonzero
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, BigRational::from_integer(BigInt::from(c)))
    }

    /// The variable with index `i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, BigRational::one())
    }

    pub fn monomial(nvars: usize, exps: Vec<u32>, c: BigRational) -> Self {
        assert_eq!(exps.len(), nvars, "exponent vector length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Self { nvars, terms }
    }

    /// Univariate embedding of an integer polynomial in variable `i`.
    pub fn from_univariate(nvars: usize, i: usize, p: &IntPolynomial) -> Self {
        let mut out = Self::zero(nvars);
        for (k, c) in p.coeffs().iter().enumerate() {
            let mut e = vec![0; nvars];
            e[i] = k as u32;
            out.add_term(e, BigRational::from_integer(c.clone()));
        }
        out
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> BigRational {
        self.terms.get(exps).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Constant term.
    pub fn constant_term(&self) -> BigRational {
        self.coeff(&vec![0; self.nvars])
    }

    /// True when the polynomial is a constant.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&d| d == 0))
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self { nvars: self.nvars, terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.nvars);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// All coefficients are integers.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Weighted degree of every term, when all terms agree.
    pub fn weighted_degree(&self, weights: &[u32]) -> Option<u32> {
        let mut degs = self.terms.keys().map(|e| e.iter().zip(weights).map(|(a, w)| a * w).sum::<u32>());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Substitutes the univariate integer polynomial `images[i]` for variable
    /// `i`; `None` when a coefficient of the result is not an integer.
    pub fn eval_univariate(&self, images: &[IntPolynomial]) -> Option<IntPolynomial> {
        assert_eq!(images.len(), self.nvars, "one image per variable");
        let mut num = IntPolynomial::zero();
        let denom = self.terms.values().fold(BigInt::one(), |l, c| num_integer::Integer::lcm(&l, c.denom()));
        for (e, c) in &self.terms {
            let scaled = c * BigRational::from_integer(denom.clone());
            let mut term = IntPolynomial::constant(scaled.to_integer());
            for (img, &d) in images.iter().zip(e) {
                for _ in 0..d {
                    term = &term * img;
                }
            }
            num = &num + &term;
        }
        let coeffs: Option<Vec<BigInt>> = num
            .coeffs()
            .iter()
            .map(|c| {
                let (q, r) = num_integer::Integer::div_rem(c, &denom);
                r.is_zero().then_some(q)
            })
            .collect();
        coeffs.map(IntPolynomial::new)
    }

    /// Replaces variable `i` by `q`.
    pub fn substitute(&self, i: usize, q: &MPoly) -> Self {
        assert_eq!(q.nvars, self.nvars, "same ring");
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut rest = e.clone();
            rest[i] = 0;
            let mono = Self::monomial(self.nvars, rest, c.clone());
            out = &out + &(&mono * &q.pow(e[i]));
        }
        out
    }

    /// Formats with the given variable names.
    pub fn format_with(&self, names: &[&str]) -> String {
        use core::fmt::Write;
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        // Highest total degree first for readability.
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        for (idx, (e, c)) in terms.into_iter().enumerate() {
            let neg = c < &BigRational::zero();
            if idx > 0 {
                s.push_str(if neg { " - " } else { " + " });
            } else if neg {
                s.push('-');
            }
            let a = if neg { -c.clone() } else { c.clone() };
            let is_const = e.iter().all(|&d| d == 0);
            if !a.is_one() || is_const {
                let _ = write!(s, "{a}");
                if !is_const {
                    s.push('*');
                }
            }
            let mut first = true;
            for (v, &d) in e.iter().enumerate() {
                if d == 0 {
                    continue;
                }
                if !first {
                    s.push('*');
                }
                first = false;
                s.push_str(names[v]);
                if d > 1 {
                    let _ = write!(s, "^{d}");
                }
            }
        }
        s
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| alloc::format!("x{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        f.write_str(&self.format_with(&refs))
    }
}

impl<'a> Add<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn add(self, rhs: &'a MPoly) -> MPoly {
        assert_eq!(self.nvars, rhs.nvars, "same ring");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &'a MPoly) -> MPoly {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &'a MPoly) -> MPoly {
        assert_eq!(self.nvars, rhs.nvars, "same ring");
        let mut terms: BTreeMap<Vec<u32>, BigRational> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                *terms.entry(e).or_insert_with(BigRational::zero) += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        MPoly { nvars: self.nvars, terms }
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn arithmetic() {
        let x = MPoly::var(2, 0);
        let y = MPoly::var(2, 1);
        let s = &x + &y;
        let sq = &s * &s;
        assert_eq!(sq.coeff(&[1, 1]), rat(2));
        assert_eq!(sq.len(), 3);
        assert!((&sq - &sq).is_zero());
        assert_eq!(sq.weighted_degree(&[1, 1]), Some(2));
        assert_eq!(sq.format_with(&["x", "y"]), "x^2 + 2*x*y + y^2");
    }

    #[test]
    fn univariate_evaluation() {
        let x = MPoly::var(2, 0);
        let y = MPoly::var(2, 1);
        let p = &(&x * &y) + &MPoly::from_int(2, 3);
        let img = [IntPolynomial::from_i64s(&[1, 1]), IntPolynomial::from_i64s(&[0, 2])];
        assert_eq!(p.eval_univariate(&img).unwrap(), IntPolynomial::from_i64s(&[3, 2, 2]));
        let half = x.scale(&(rat(1) / rat(2)));
        assert!(half.eval_univariate(&img).is_none());
        let sub = p.substitute(1, &x);
        assert_eq!(sub.coeff(&[2, 0]), rat(1));
    }
}

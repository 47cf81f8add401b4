//! Dense univariate polynomials with arbitrary-precision integer coefficients.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use dashu_int::{IBig, UBig};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Coefficients are stored constant term first; trailing zeros are trimmed,
/// so the zero polynomial has an empty coefficient vector.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^d`
    pub fn monomial(c: BigInt, d: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); d + 1];
        coeffs[d] = c;
        Self::new(coeffs)
    }

    /// `a + b x`
    pub fn linear(a: BigInt, b: BigInt) -> Self {
        Self::new(vec![a, b])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        // Homogenized Horner keeps everything in integers until the final division.
        let (p, q) = (x.numer(), x.denom());
        let d = match self.degree() {
            Some(d) => d,
            None => return BigRational::zero(),
        };
        let mut acc = BigInt::zero();
        let mut qpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * p + c * &qpow;
            qpow *= q;
        }
        BigRational::new(acc, num_traits::pow(q.clone(), d))
    }

    /// Sign of the value at `x`: -1, 0 or 1.
    pub fn sign_at(&self, x: &BigRational) -> i8 {
        sign_of(&self.eval_rational(x).numer().clone())
    }

    /// Sign of the polynomial as `x -> +inf` (0 for the zero polynomial).
    pub fn sign_at_pos_inf(&self) -> i8 {
        self.leading().map_or(0, sign_of)
    }

    /// Sign of the polynomial as `x -> -inf`.
    pub fn sign_at_neg_inf(&self) -> i8 {
        match self.degree() {
            None => 0,
            Some(d) => {
                let s = self.sign_at_pos_inf();
                if d % 2 == 0 {
                    s
                } else {
                    -s
                }
            }
        }
    }

    /// Divides by `x`; `None` unless the constant term vanishes.
    pub fn div_x(&self) -> Option<Self> {
        match self.coeffs.first() {
            None => Some(Self::zero()),
            Some(c) if c.is_zero() => Some(Self::new(self.coeffs[1..].to_vec())),
            Some(_) => None,
        }
    }

    pub fn mul_x_pow(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(coeffs)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Gcd of the coefficients, nonnegative.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content, keeping the sign of the leading coefficient.
    pub fn primitive(&self) -> Self {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Exact division in Z[x]; `None` when the quotient is not integral or a
    /// remainder is left.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let dd = d.degree()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        let n = self.degree()?;
        if n < dd {
            return None;
        }
        let lead = d.leading()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); n - dd + 1];
        for i in (0..=n - dd).rev() {
            let top = &rem[i + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, c) in d.coeffs.iter().enumerate() {
                rem[i + j] -= &q * c;
            }
            quot[i] = q;
        }
        if rem.iter().all(Zero::is_zero) {
            Some(Self::new(quot))
        } else {
            None
        }
    }

    /// Remainder of division over Q, scaled by a positive rational to be a
    /// primitive integer polynomial. Positive scaling keeps sign information,
    /// which is all a Sturm chain needs.
    pub fn rem_positive_scaled(&self, d: &Self) -> Self {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.leading().unwrap().clone();
        let mut rem: Vec<BigInt> = self.coeffs.clone();
        // Multiply through by |lead| before each step to stay in Z; |lead| > 0.
        let abs_lead = lead.abs();
        let lead_sign = sign_of(&lead);
        while rem.len() > dd && !rem.is_empty() {
            let top = rem.last().unwrap().clone();
            if top.is_zero() {
                rem.pop();
                continue;
            }
            let shift = rem.len() - 1 - dd;
            for c in rem.iter_mut() {
                *c *= &abs_lead;
            }
            // top * |lead| - q * lead = 0  with  q = top * sign(lead)
            let q = if lead_sign < 0 { -top } else { top };
            for (j, c) in d.coeffs.iter().enumerate() {
                rem[shift + j] -= &q * c;
            }
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        let r = Self::new(rem);
        let g = r.content();
        if g.is_zero() || g.is_one() {
            r
        } else {
            Self::new(r.coeffs.iter().map(|c| c / &g).collect())
        }
    }

    /// Pseudo-remainder `lc(d)^(deg self - deg d + 1) * self mod d`.
    pub fn prem(&self, d: &Self) -> Self {
        let dd = d.degree().expect("division by the zero polynomial");
        let Some(n) = self.degree() else {
            return Self::zero();
        };
        if n < dd {
            return self.clone();
        }
        let lead = d.leading().unwrap();
        let mut rem = self.coeffs.clone();
        for i in (0..=n - dd).rev() {
            let top = core::mem::take(&mut rem[i + dd]);
            for c in rem[..i + dd].iter_mut() {
                *c *= lead;
            }
            if !top.is_zero() {
                for (j, c) in d.coeffs[..dd].iter().enumerate() {
                    rem[i + j] -= &top * c;
                }
            }
            rem.truncate(i + dd);
        }
        Self::new(rem)
    }

    /// Sturm chain `p, p', ...` from the subresultant PRS, every term a
    /// positive multiple of the classical Sturm remainder. Exact divisions
    /// keep coefficient growth polynomial without content extraction. The
    /// last term is a scalar multiple of `gcd(p, p')`.
    pub fn sturm_chain(&self) -> Vec<Self> {
        let mut seq = vec![self.clone()];
        let d = self.derivative();
        if self.is_zero() || d.is_zero() {
            return seq;
        }
        seq.push(d);
        // Raw subresultant terms s with Sturm signs eps; beta and psi as in
        // the classical subresultant PRS.
        let mut s: Vec<Self> = seq.clone();
        let mut eps: Vec<i8> = vec![1, 1];
        let mut delta = self.degree().unwrap() - s[1].degree().unwrap();
        let mut psi = -BigInt::one();
        let mut beta = if delta % 2 == 0 { -BigInt::one() } else { BigInt::one() };
        loop {
            let k = s.len();
            let r = s[k - 2].prem(&s[k - 1]);
            if r.is_zero() {
                return seq;
            }
            let next = Self::new(r.coeffs.iter().map(|c| exact_div_int(c, &beta)).collect());
            let lc = s[k - 1].leading().unwrap().clone();
            // rem = prem / lc^(delta+1), so its sign flips with lc^(delta+1).
            let lc_sign = if sign_of(&lc) < 0 && delta % 2 == 0 { -1 } else { 1 };
            let e = -eps[k - 2] * sign_of(&beta) * lc_sign;
            seq.push(if e < 0 { -next.clone() } else { next.clone() });
            let next_delta = s[k - 1].degree().unwrap() - next.degree().unwrap();
            psi = exact_div_int(&num_traits::pow(-lc.clone(), delta), &num_traits::pow(psi, delta - 1));
            beta = -lc * num_traits::pow(psi.clone(), next_delta);
            delta = next_delta;
            eps.push(e);
            s.push(next);
        }
    }

    /// Monic-up-to-content gcd over Q, returned primitive with positive leading
    /// coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.primitive(), other.primitive());
        if a.degree() < b.degree() {
            core::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.rem_positive_scaled(&b);
            a = b;
            b = r;
        }
        if a.leading().is_some_and(|c| c.is_negative()) {
            -a
        } else {
            a
        }
    }

    pub fn has_negative_coefficient(&self) -> bool {
        self.coeffs.iter().any(Signed::is_negative)
    }

    /// Sum of absolute values of the coefficients.
    pub fn norm1(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }

    /// Substitutes `x -> c x`.
    pub fn scale_variable(&self, c: &BigInt) -> Self {
        let mut pow = BigInt::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &pow);
            pow *= c;
        }
        Self::new(out)
    }
}

fn exact_div_int(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    assert!(r.is_zero(), "subresultant division is exact");
    q
}

pub(crate) fn to_ibig(x: &BigInt) -> IBig {
    let (sign, bytes) = x.to_bytes_le();
    let mag = IBig::from(UBig::from_le_bytes(&bytes));
    if sign == num_bigint::Sign::Minus { -mag } else { mag }
}

pub(crate) fn sign_of(x: &BigInt) -> i8 {
    match x.cmp(&BigInt::zero()) {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

impl fmt::Display for IntPolynomial {
    /// Coefficients separated by `;`, constant term first; the zero
    /// polynomial prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            write!(f, "{}", c)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsePolynomialError(pub String);

impl fmt::Display for ParsePolynomialError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid polynomial coefficient {:?}", self.0)
    }
}

impl FromStr for IntPolynomial {
    type Err = ParsePolynomialError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut coeffs = Vec::new();
        for part in s.trim().split(';') {
            let part = part.trim();
            let c = BigInt::from_str(part).map_err(|_| ParsePolynomialError(part.into()))?;
            coeffs.push(c);
        }
        Ok(Self::new(coeffs))
    }
}

impl<'a> Add<&'a IntPolynomial> for &'a IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a IntPolynomial> for &'a IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a IntPolynomial> for &'a IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        -(self.clone())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<IntPolynomial> for IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: IntPolynomial) -> IntPolynomial {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a IntPolynomial> for IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: &IntPolynomial) -> IntPolynomial {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Zero for IntPolynomial {
    fn zero() -> Self {
        IntPolynomial::zero()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for IntPolynomial {
    fn one() -> Self {
        IntPolynomial::one()
    }
}

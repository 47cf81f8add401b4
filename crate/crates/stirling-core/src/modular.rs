//! Multimodular signs of Sturm chain leading coefficients.
//!
//! When the subresultant chain of `(p, p')` is normal (degrees drop by one at
//! every step) its leading coefficients are the principal subresultant
//! coefficients, integers bounded by Hadamard's inequality. Their residues
//! modulo enough 32-bit primes fix them through the Chinese remainder
//! theorem, and their signs are all the Sturm count over the whole line needs.

use alloc::vec;
use alloc::vec::Vec;

use dashu_int::UBig;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::poly::IntPolynomial;

/// Bits guaranteed per prime; every prime used lies in `(2^31, 2^32)`, so
/// products of residues fit in a `u64`.
const PRIME_BITS: u64 = 31;

/// Non-normal images tolerated before the chain itself is presumed
/// non-normal over `Z`.
const MAX_BAD_PRIMES: usize = 4;

/// `a * b mod m` for operands below `2^32`.
fn mul_small(a: u64, b: u64, m: u64) -> u64 {
    a * b % m
}

fn sub_small(a: u64, b: u64, m: u64) -> u64 {
    if a >= b { a - b } else { a + m - b }
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_small(r, a, m);
        }
        a = mul_small(a, a, m);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, m: u64) -> u64 {
    pow_mod(a, m - 2, m)
}

/// Deterministic Miller-Rabin below `4_759_123_141` with bases 2, 7, 61.
pub fn is_prime_u32(n: u64) -> bool {
    assert!(n < 4_759_123_141, "bases certify only below 4759123141");
    if n < 2 {
        return false;
    }
    for p in [2, 3, 5, 7, 11, 13, 61] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 7, 61] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_small(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes below `2^32`, descending; all exceed `2^PRIME_BITS`.
fn primes() -> impl Iterator<Item = u64> {
    ((1u64 << PRIME_BITS) + 1..(1u64 << 32)).rev().step_by(2).filter(|&n| is_prime_u32(n))
}

fn reduce(x: &BigInt, m: u64) -> u64 {
    let r = (x % BigInt::from(m)).to_i64().expect("residue fits");
    if r < 0 { (r + m as i64) as u64 } else { r as u64 }
}

/// Leading coefficients of the chain `p, p', ...` modulo `m`, or `None`
/// when the image is not normal down to a nonzero constant.
fn chain_leads_mod(p: &[u64], m: u64) -> Option<Vec<u64>> {
    let d = p.len() - 1;
    let dp: Vec<u64> = (1..=d).map(|k| mul_small(p[k], k as u64 % m, m)).collect();
    if p[d] == 0 || dp[d - 1] == 0 {
        return None;
    }
    let mut leads = vec![p[d], dp[d - 1]];
    let mut prev = p.to_vec();
    let mut cur = dp;
    // beta_1 = 1 and beta_i = lc(r_{i-1})^2 for a normal chain.
    let mut beta_inv = 1u64;
    while cur.len() > 1 {
        let lc = *cur.last().unwrap();
        // prem(prev, cur) = lc^2 prev mod cur for a degree drop of one.
        let lc2 = mul_small(lc, lc, m);
        let mut rem: Vec<u64> = prev.iter().map(|&c| mul_small(c, lc2, m)).collect();
        let lc_inv = inv_mod(lc, m);
        let dc = cur.len() - 1;
        for i in (0..rem.len() - dc).rev() {
            let top = rem[i + dc];
            if top != 0 {
                let q = mul_small(top, lc_inv, m);
                for (j, &c) in cur.iter().enumerate() {
                    rem[i + j] = sub_small(rem[i + j], mul_small(q, c, m), m);
                }
            }
        }
        rem.truncate(dc);
        for c in rem.iter_mut() {
            *c = mul_small(*c, beta_inv, m);
        }
        if rem.last().is_none_or(|&c| c == 0) {
            return None;
        }
        leads.push(*rem.last().unwrap());
        beta_inv = inv_mod(lc2, m);
        prev = cur;
        cur = rem;
    }
    Some(leads)
}

/// Product tree: level 0 holds the moduli, each level above the products
/// of adjacent pairs, an odd last node carried up unchanged.
fn product_tree(leaves: Vec<UBig>) -> Vec<Vec<UBig>> {
    let mut tree = vec![leaves];
    while tree.last().unwrap().len() > 1 {
        let up = tree.last().unwrap().chunks(2).map(|c| c.iter().product()).collect();
        tree.push(up);
    }
    tree
}

/// Chinese remaindering for fixed primes by subproduct trees.
struct Crt {
    tree: Vec<Vec<UBig>>,
    primes: Vec<u64>,
    /// `(M / m_i)^{-1} mod m_i`.
    cofactor_inv: Vec<u64>,
}

impl Crt {
    fn new(ms: &[u64]) -> Self {
        let tree = product_tree(ms.iter().map(|&m| UBig::from(m)).collect());
        let modulus = tree.last().unwrap()[0].clone();
        // M mod m_i^2 = m_i ((M / m_i) mod m_i), by a remainder tree.
        let squares = product_tree(ms.iter().map(|&m| UBig::from(m * m)).collect());
        let mut rems = vec![modulus];
        for level in squares.iter().rev().skip(1) {
            rems = level.iter().enumerate().map(|(i, q)| &rems[i / 2] % q).collect();
        }
        let cofactor_inv = ms
            .iter()
            .zip(&rems)
            .map(|(&m, r)| {
                let c = u64::try_from(r / UBig::from(m)).expect("below m");
                inv_mod(c, m)
            })
            .collect();
        Self { tree, primes: ms.to_vec(), cofactor_inv }
    }

    fn modulus(&self) -> &UBig {
        &self.tree.last().unwrap()[0]
    }

    /// The representative in `[0, M)` of the residues `res`.
    fn combine(&self, res: &[u64]) -> UBig {
        let mut acc: Vec<UBig> = res
            .iter()
            .zip(&self.cofactor_inv)
            .zip(&self.primes)
            .map(|((&r, &c), &m)| UBig::from(mul_small(r, c, m)))
            .collect();
        // acc[i] = sum over leaves l below node i of y_l * (node product / m_l).
        for level in &self.tree[..self.tree.len() - 1] {
            acc = acc
                .chunks(2)
                .zip(level.chunks(2))
                .map(|(a, p)| if a.len() == 2 { &a[0] * &p[1] + &a[1] * &p[0] } else { a[0].clone() })
                .collect();
        }
        &acc[0] % self.modulus()
    }

    /// Sign of the integer `x` with `|x| < M/2` from its residues.
    fn sign(&self, res: &[u64]) -> i8 {
        let x = self.combine(res);
        if x == UBig::ZERO {
            0
        } else if &x + &x > *self.modulus() {
            -1
        } else {
            1
        }
    }
}

fn log2_norm(p: &IntPolynomial) -> u64 {
    let n2: BigInt = p.coeffs().iter().map(|c| c * c).sum();
    n2.bits().div_ceil(2) + 1
}

/// Signs of the leading coefficients of the subresultant chain of `(p, p')`
/// when it is normal down to a nonzero constant, which also proves `p`
/// squarefree. `None` means non-normal or degree below 2.
pub fn normal_chain_lead_signs(p: &IntPolynomial) -> Option<Vec<i8>> {
    let d = p.degree()?;
    if d < 2 {
        return None;
    }
    let dp = p.derivative();
    let (bp, bq) = (log2_norm(p), log2_norm(&dp));
    // The term of degree j is an order 2d-1-2j determinant with d-1-j rows
    // from p and d-j rows from p'.
    let bits: Vec<u64> = (0..=d)
        .map(|i| if i < 2 { 0 } else { let j = (d - i) as u64; (d as u64 - 1 - j) * bp + (d as u64 - j) * bq })
        .collect();
    let need = (*bits.iter().max().unwrap() + 2).div_ceil(PRIME_BITS) as usize;
    let lead = p.leading().unwrap();
    let mut ms: Vec<u64> = Vec::with_capacity(need);
    let mut residues: Vec<Vec<u64>> = Vec::with_capacity(need);
    let mut bad = 0;
    for m in primes() {
        if ms.len() == need {
            break;
        }
        if reduce(lead, m) == 0 || (d as u64) % m == 0 {
            continue;
        }
        let pm: Vec<u64> = p.coeffs().iter().map(|c| reduce(c, m)).collect();
        match chain_leads_mod(&pm, m) {
            Some(l) => {
                ms.push(m);
                residues.push(l);
            }
            None => {
                bad += 1;
                if ms.is_empty() && bad >= MAX_BAD_PRIMES {
                    return None;
                }
            }
        }
    }
    let crt = Crt::new(&ms);
    let mut signs = Vec::with_capacity(d + 1);
    signs.push(if lead.is_negative() { -1 } else { 1 });
    signs.push(signs[0]);
    for i in 2..=d {
        let res: Vec<u64> = residues.iter().map(|l| l[i]).collect();
        let s = crt.sign(&res);
        debug_assert!(s != 0, "normal chain has nonzero leading coefficients");
        signs.push(s);
    }
    Some(signs)
}

/// Number of distinct real roots from a normal chain, or `None`. Each Sturm
/// term is `(-1)^floor(i/2)` times a positive multiple of the subresultant of
/// degree `d - i`.
pub fn normal_chain_real_count(p: &IntPolynomial) -> Option<usize> {
    let signs = normal_chain_lead_signs(p)?;
    let d = signs.len() - 1;
    let mut at_pos = Vec::with_capacity(d + 1);
    let mut at_neg = Vec::with_capacity(d + 1);
    for (i, &s) in signs.iter().enumerate() {
        let e = if (i / 2) % 2 == 0 { s } else { -s };
        at_pos.push(e);
        at_neg.push(if (d - i) % 2 == 0 { e } else { -e });
    }
    let var = |v: &[i8]| v.windows(2).filter(|w| w[0] != w[1]).count();
    Some(var(&at_neg) - var(&at_pos))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::real_root_count;
    use num_traits::Zero;

    #[test]
    fn primality() {
        assert!(is_prime_u32(4_294_967_291));
        assert!(!is_prime_u32(4_294_967_293));
        assert!(!is_prime_u32(25_326_001));
        assert!(primes().take(3).all(|p| p > 1 << PRIME_BITS));
    }

    #[test]
    fn residue_signs() {
        let ms: Vec<u64> = primes().take(6).collect();
        let crt = Crt::new(&ms);
        for x in [BigInt::from(0), BigInt::from(-5), BigInt::from(7), -(BigInt::from(1) << 150u32), BigInt::from(1) << 150u32] {
            let res: Vec<u64> = ms.iter().map(|&m| reduce(&x, m)).collect();
            let expected = if x.is_zero() { 0 } else if x.is_negative() { -1 } else { 1 };
            assert_eq!(crt.sign(&res), expected, "{x}");
        }
    }

    #[test]
    fn counts_agree_with_exact_chain() {
        let cases: [&[i64]; 5] = [&[-2, 0, 1], &[1, 0, 1], &[0, -1, 0, 1], &[6, -5, 1, 3, -7, 2], &[1, 3, 3, 1, 5]];
        for cs in cases {
            let p = IntPolynomial::from_i64s(cs);
            if let Some(c) = normal_chain_real_count(&p) {
                assert_eq!(c, real_root_count(&p).unwrap(), "{cs:?}");
            }
        }
        assert_eq!(normal_chain_real_count(&IntPolynomial::from_i64s(&[1, 2, 1])), None);
    }
}

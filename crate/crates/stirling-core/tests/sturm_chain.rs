use num_bigint::BigInt;
use proptest::prelude::*;
use stirling_core::analysis::{real_root_count, real_root_count_with_multiplicity, sign_variations, Point};
use stirling_core::modular::normal_chain_real_count;
use stirling_core::IntPolynomial;

/// Classical Sturm chain with primitive remainders, as an independent route.
fn classical_count(p: &IntPolynomial) -> usize {
    let mut seq = vec![p.clone(), p.derivative()];
    while !seq.last().unwrap().is_zero() {
        let n = seq.len();
        let r = seq[n - 2].rem_positive_scaled(&seq[n - 1]);
        seq.push(-r);
    }
    seq.pop();
    sign_variations(&seq, &Point::NegInf) - sign_variations(&seq, &Point::PosInf)
}

fn poly_strategy() -> impl Strategy<Value = IntPolynomial> {
    prop::collection::vec(-6i64..=6, 2..9)
        .prop_filter("degree at least one", |cs| cs.iter().skip(1).any(|&c| c != 0))
        .prop_map(|cs| IntPolynomial::from_i64s(&cs))
}

/// Products of random linear and quadratic factors, so real roots, repeated
/// roots and defective chains all occur.
fn factored_strategy() -> impl Strategy<Value = IntPolynomial> {
    prop::collection::vec((-4i64..=4, 1i64..=3, 0i64..=4, any::<bool>()), 1..6).prop_map(|fs| {
        fs.into_iter().fold(IntPolynomial::one(), |acc, (a, b, c, quad)| {
            let f = if quad {
                IntPolynomial::from_i64s(&[c + 1, a, b])
            } else {
                IntPolynomial::from_i64s(&[a, b])
            };
            acc * f
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn subresultant_chain_matches_classical(p in poly_strategy()) {
        prop_assert_eq!(real_root_count(&p).unwrap(), classical_count(&p));
    }

    #[test]
    fn factored_counts_agree(p in factored_strategy()) {
        let exact = real_root_count(&p).unwrap();
        prop_assert_eq!(exact, classical_count(&p));
        if let Some(c) = normal_chain_real_count(&p) {
            prop_assert_eq!(c, exact);
            prop_assert_eq!(real_root_count_with_multiplicity(&p).unwrap(), exact);
        }
    }

    #[test]
    fn modular_count_matches_on_large_coefficients(cs in prop::collection::vec(-(1i64 << 40)..(1i64 << 40), 3..12)) {
        let p = IntPolynomial::new(cs.iter().map(|&c| BigInt::from(c) * BigInt::from(c)).collect::<Vec<_>>());
        let q = IntPolynomial::new(cs.iter().map(|&c| BigInt::from(c)).collect());
        for f in [p, q] {
            if f.degree().unwrap_or(0) < 1 {
                continue;
            }
            if let Some(c) = normal_chain_real_count(&f) {
                prop_assert_eq!(c, classical_count(&f));
            }
        }
    }
}

//! Agreement between the elimination-based positivity test and the
//! exhaustive minor oracle.

use num_bigint::BigInt;
use proptest::prelude::*;
use stirling_core::linalg::{all_minors_nonneg, neville_tp_test, ExactMatrix, MinorValue, Verdict};

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let m = b[0].len();
    (0..n)
        .map(|i| (0..m).map(|j| (0..b.len()).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

/// Product of elementary nonnegative bidiagonal factors, a diagonal, and
/// coordinate projections; always totally nonnegative, often singular.
fn tn_strategy(max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (2..=max).prop_flat_map(|n| {
        (
            Just(n),
            prop::collection::vec((0..n - 1, 0..3i64, any::<bool>()), 0..2 * n),
            prop::collection::vec(0..3i64, n),
        )
            .prop_map(|(n, steps, diag)| {
                let mut acc: Vec<Vec<i64>> =
                    (0..n).map(|i| (0..n).map(|j| if i == j { diag[i] } else { 0 }).collect()).collect();
                for (i, w, lower) in steps {
                    let mut e: Vec<Vec<i64>> =
                        (0..n).map(|r| (0..n).map(|c| i64::from(r == c)).collect()).collect();
                    if lower {
                        e[i + 1][i] = w;
                        acc = mat_mul(&e, &acc);
                    } else {
                        e[i][i + 1] = w;
                        acc = mat_mul(&acc, &e);
                    }
                }
                acc
            })
    })
}

fn to_matrix(rows: &[Vec<i64>]) -> ExactMatrix {
    ExactMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
}

fn check_agreement(m: &ExactMatrix) {
    let fast = neville_tp_test(m);
    let full = m.nrows().min(m.ncols());
    let oracle = all_minors_nonneg(m, full);
    assert_eq!(fast.verdict, oracle.verdict, "disagreement on\n{}", m);
    if let Some(w) = &fast.witness {
        assert_eq!(MinorValue::Integer(m.minor(&w.rows, &w.cols)), w.value);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn totally_nonnegative_products_pass(rows in tn_strategy(6)) {
        let m = to_matrix(&rows);
        let r = neville_tp_test(&m);
        prop_assert_eq!(r.verdict, Verdict::TotallyPositive);
        prop_assert_eq!(r.method, stirling_core::linalg::Method::Neville);
        check_agreement(&m);
    }

    #[test]
    fn small_nonnegative_matrices_agree(
        (r, c, data) in (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            (Just(r), Just(c), prop::collection::vec(prop::sample::select(vec![0i64, 0, 1, 1, 2, 3]), r * c))
        })
    ) {
        let rows: Vec<Vec<i64>> = data.chunks(c).map(<[i64]>::to_vec).collect();
        prop_assert_eq!(rows.len(), r);
        check_agreement(&to_matrix(&rows));
    }

    #[test]
    fn perturbed_tn_matrices_agree(rows in tn_strategy(5), i in 0usize..5, j in 0usize..5, d in -2i64..3) {
        let mut rows = rows;
        let n = rows.len();
        rows[i % n][j % n] = (rows[i % n][j % n] + d).max(0);
        check_agreement(&to_matrix(&rows));
    }

    #[test]
    fn row_swap_flips_minor_sign(rows in tn_strategy(5), a in 0usize..5, off in 0usize..4) {
        let n = rows.len();
        let a = a % n;
        let b = (a + 1 + off % (n - 1)) % n;
        let m = to_matrix(&rows);
        let mut swapped = rows.clone();
        swapped.swap(a, b);
        let all: Vec<usize> = (0..n).collect();
        prop_assert_eq!(m.minor(&all, &all), -to_matrix(&swapped).minor(&all, &all));
    }
}

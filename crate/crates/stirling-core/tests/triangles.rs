//! Generated triangles against the reference tables, and structural
//! invariants of the recurrences under random orders and sizes.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use stirling_core::triangle::{
    binomial_matrix_int, diagonal_formula, matmul, ordered_phylo_triangle, quasi_eulerian, r_associated, reverse_rows,
    stirling_r,
};
use stirling_core::{Family, Triangle};

/// Rows `n: e0,e1,.. | sum` grouped under `r=..` headers; headerless tables use `r = 0`.
fn parse_table(text: &str) -> Vec<(u32, usize, Vec<BigInt>, BigInt)> {
    let mut r = 0;
    let mut out = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
        if let Some(v) = line.strip_prefix("r=") {
            r = v.parse().unwrap();
            continue;
        }
        let (n, rest) = line.split_once(':').unwrap();
        let (entries, sum) = rest.split_once('|').unwrap();
        let entries = entries.trim().split(',').map(|e| e.trim().parse().unwrap()).collect();
        out.push((r, n.trim().parse().unwrap(), entries, sum.trim().parse().unwrap()));
    }
    out
}

fn check_table(text: &str, make: impl Fn(u32, usize) -> Triangle, orders: &[u32]) -> usize {
    let rows = parse_table(text);
    let mut seen = 0;
    for &r in orders {
        let mine: Vec<_> = rows.iter().filter(|x| x.0 == r).collect();
        assert!(!mine.is_empty(), "no reference rows for r={r}");
        let n_max = mine.iter().map(|x| x.1).max().unwrap();
        let t = make(r, n_max);
        for (_, n, entries, sum) in mine {
            let row = t.row(*n).unwrap();
            for (k, e) in entries.iter().enumerate() {
                assert_eq!(&t.get(*n, k as isize), e, "r={r} n={n} k={k}");
            }
            assert!(row[entries.len().min(row.len())..].iter().all(Zero::is_zero), "r={r} n={n} extra entries");
            assert_eq!(&t.row_sum(*n), sum, "row sum r={r} n={n}");
            assert_eq!(entries.iter().sum::<BigInt>(), *sum, "reference sum r={r} n={n}");
            seen += 1;
        }
    }
    seen
}

#[test]
fn cycle_and_subset_tables() {
    let c = check_table(include_str!("golden/cycle.txt"), |r, n| stirling_r(Family::Cycle, r, n), &[1, 2, 3, 4]);
    let s = check_table(include_str!("golden/subset.txt"), |r, n| stirling_r(Family::Subset, r, n), &[1, 2, 3, 4]);
    assert!(c > 0 && s > 0);
}

#[test]
fn quasi_eulerian_tables() {
    let orders = [1, 2, 3, 4, 5];
    check_table(include_str!("golden/quasi_cycle.txt"), |r, n| quasi_eulerian(Family::Cycle, r, n), &orders);
    check_table(include_str!("golden/quasi_subset.txt"), |r, n| quasi_eulerian(Family::Subset, r, n), &orders);
}

#[test]
fn ordered_phylo_table() {
    assert!(check_table(include_str!("golden/ordered_phylo.txt"), |_, n| ordered_phylo_triangle(n), &[0]) > 0);
}

fn family() -> impl Strategy<Value = Family> {
    prop_oneof![Just(Family::Cycle), Just(Family::Subset)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Entries are nonnegative, `T(n,0) = [n = 0]`, and the diagonal has its closed form.
    #[test]
    fn boundary_entries(f in family(), r in 1u32..7, n_max in 0usize..14) {
        let t = stirling_r(f, r, n_max);
        for n in 0..=n_max {
            let row = t.row(n).unwrap();
            prop_assert_eq!(row.len(), n + 1);
            prop_assert!(row.iter().all(|e| *e >= BigInt::zero()));
            prop_assert_eq!(row[0].is_one(), n == 0);
            prop_assert_eq!(&row[n], &diagonal_formula(f, r, n));
        }
    }

    /// A smaller run is a prefix of a larger one.
    #[test]
    fn prefix_stable(f in family(), r in 1u32..6, a in 0usize..10, extra in 0usize..6) {
        let small = stirling_r(f, r, a);
        let big = stirling_r(f, r, a + extra);
        for n in 0..=a {
            prop_assert_eq!(small.row(n), big.row(n));
        }
    }

    /// `T(n,k) = A(n + (r-1)k, k)` with `A` the r-associated numbers.
    #[test]
    fn column_shift_of_associated(f in family(), r in 1u32..5, n_max in 0usize..8) {
        let t = stirling_r(f, r, n_max);
        let a = r_associated(f, r, r as usize * n_max);
        for n in 0..=n_max {
            for k in 0..=n {
                prop_assert_eq!(t.get(n, k as isize), a.get(n + (r as usize - 1) * k, k as isize), "n={} k={}", n, k);
            }
        }
    }

    /// Multiplying the quasi-Eulerian triangle back by `B_1` returns the
    /// reversed triangle, and its row sums equal the diagonal. From order 2 on
    /// the entries are nonnegative; order 1 has signed entries.
    #[test]
    fn quasi_eulerian_inverts(f in family(), r in 1u32..6, n_max in 0usize..12) {
        let q = quasi_eulerian(f, r, n_max);
        let back = matmul(&q, &binomial_matrix_int(1, n_max)).unwrap();
        let rev = reverse_rows(&stirling_r(f, r, n_max));
        for n in 0..=n_max {
            for k in 0..=n {
                prop_assert_eq!(back.get(n, k as isize), rev.get(n, k as isize));
            }
            prop_assert_eq!(q.row_sum(n), diagonal_formula(f, r, n));
            prop_assert!(r == 1 || q.row(n).unwrap().iter().all(|e| *e >= BigInt::zero()));
        }
    }

    /// Row reversal is an involution.
    #[test]
    fn reversal_involution(f in family(), r in 1u32..6, n_max in 0usize..12) {
        let t = stirling_r(f, r, n_max);
        let twice = reverse_rows(&reverse_rows(&t));
        for n in 0..=n_max {
            prop_assert_eq!(t.row(n), twice.row(n));
        }
    }
}

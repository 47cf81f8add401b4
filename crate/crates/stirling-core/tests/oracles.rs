//! Brute-force enumerations against the triangle recurrences, and the tree
//! bijections checked exhaustively.

use num_bigint::BigInt;
use stirling_core::arith::binomial;
use stirling_core::oracles::*;
use stirling_core::triangle::{eulerian_r, ordered_phylo_triangle, quasi_eulerian, stirling_r};
use stirling_core::{Family, IntPolynomial, Triangle};

fn row(t: &Triangle, n: usize) -> Vec<BigInt> {
    t.row(n).unwrap().to_vec()
}

fn big(h: &[u64]) -> Vec<BigInt> {
    h.iter().map(|&x| BigInt::from(x)).collect()
}

fn reversed(h: &[u64]) -> Vec<BigInt> {
    big(&h.iter().rev().copied().collect::<Vec<_>>())
}

#[test]
fn derangements_by_cycles_give_cycle_numbers() {
    let c2 = stirling_r(Family::Cycle, 2, 9);
    for big_n in 0..=9 {
        let hist = derangement_cycle_histogram(big_n).unwrap();
        for (k, &count) in hist.iter().enumerate() {
            if k <= big_n - k {
                assert_eq!(BigInt::from(count), c2.get(big_n - k, k as isize), "N={big_n} k={k}");
            }
        }
    }
}

#[test]
fn stirling_perm_counts() {
    for (r, n_max) in [(2u32, 6usize), (3, 4), (4, 3)] {
        for n in 0..=n_max {
            let mut count = 0u64;
            for w in enumerate_stirling_perms(r, n).unwrap() {
                assert!(StirlingWord::new(w).is_stirling());
                count += 1;
            }
            let expected = stirling_core::triangle::diagonal_formula(Family::Cycle, r, n);
            assert_eq!(BigInt::from(count), expected, "r={r} n={n}");
        }
    }
}

#[test]
fn marked_words_give_cycle_numbers_and_ascents_give_quasi_eulerian() {
    for (r, n_max) in [(2u32, 6usize), (3, 4), (4, 3)] {
        let c = stirling_r(Family::Cycle, r, n_max);
        let q = quasi_eulerian(Family::Cycle, r, n_max);
        for n in 0..=n_max {
            let counts = marked_word_counts(r, n).unwrap();
            // v_{n,n-k} = [n k]^(r)
            assert_eq!(reversed(&counts.by_marks), row(&c, n), "r={r} n={n}");
            assert_eq!(big(&counts.by_ascents), row(&q, n), "r={r} n={n}");
            assert_eq!(binomial_refine(&counts.by_ascents), big(&counts.by_marks));
        }
    }
}

#[test]
fn marked_word_examples() {
    assert_eq!(count_marked_words(2, 2, 1).unwrap(), 2);
    assert_eq!(marked_word_counts(3, 2).unwrap().by_ascents, vec![34, 6, 0]);
    let v3: Vec<u64> = (0..=3).map(|k| count_marked_words(2, 3, 3 - k).unwrap()).collect();
    assert_eq!(v3, vec![0, 6, 20, 15]);
    assert_eq!(marked_word_counts(2, 4).unwrap().by_ascents, vec![1, 22, 58, 24, 0]);
    // Order 3, size 2, one marked consecutive ascent: six pairs, each carrying
    // two dots across its block.
    let words = marked_words(3, 2, 1).unwrap();
    assert_eq!(words.len(), 6);
    assert!(words.iter().all(|w| w.marks.len() == 2 && w.is_stirling()));
    assert!(words.iter().any(|w| w.to_string() == "1 2 2 . 3 . 4 4"));
}

#[test]
fn eulerian_binomial_identity() {
    let c2 = stirling_r(Family::Cycle, 2, 8);
    let e2 = eulerian_r(2, 8);
    for n in 0..=8 {
        for k in 0..=n {
            let s: BigInt = (0..=n).map(|i| e2.get(n, i as isize) * binomial(i, k)).sum();
            assert_eq!(c2.get(n, (n - k) as isize), s, "n={n} k={k}");
        }
    }
}

#[test]
fn ternary_word_bijection_is_exhaustive() {
    for n in 0..=5 {
        let mut seen = std::collections::BTreeSet::new();
        for w in enumerate_stirling_perms(2, n).unwrap() {
            let t = word_to_ternary(&w).unwrap();
            assert!(t.is_increasing());
            assert_eq!(ternary_to_word(&t), w);
            // First (second) copy of a starts an ascent iff a has a middle
            // (right) child.
            for a in 1..=n as u32 {
                let first = w.iter().position(|&b| b == a).unwrap();
                let second = w.iter().rposition(|&b| b == a).unwrap();
                let ascent = |p: usize| p + 1 < w.len() && w[p] < w[p + 1];
                assert_eq!(ascent(first), t.child(a, MIDDLE).is_some(), "{w:?}");
                assert_eq!(ascent(second), t.child(a, RIGHT).is_some(), "{w:?}");
            }
            seen.insert(t.to_string());
        }
        let mut count = 0;
        for_each_increasing_ternary(n, false, |_| count += 1).unwrap();
        assert_eq!(seen.len(), count);
    }
    assert_eq!(enumerate_stirling_perms(2, 5).unwrap().count(), 945);
}

#[test]
fn word_tree_round_trip() {
    for w in [vec![1u32, 2, 3], vec![1, 3, 2], vec![2, 1, 3], vec![2, 3, 1], vec![3, 1, 2], vec![3, 2, 1], vec![]] {
        let t = word_tree(&w).unwrap();
        assert_eq!(tree_word(&t).unwrap(), w);
    }
    assert!(word_tree(&[]).unwrap().is_empty());
}

#[test]
fn ternary_and_ordered_counts() {
    let e2 = eulerian_r(2, 6);
    let c2 = stirling_r(Family::Cycle, 2, 6);
    for n in 0..=6 {
        let unprimed: u64 = enumerate_increasing_ternary(n, false).unwrap().iter().sum();
        let double_fact: u64 = (1..=n as u64).map(|j| 2 * j - 1).product();
        assert_eq!(unprimed, double_fact);
        // |T'_{n,k}| = |I_{n,k}| = <<n, n-k>>, k counted by left edges and
        // internal vertices respectively.
        let primed = enumerate_increasing_ternary(n, true).unwrap();
        let ordered = enumerate_increasing_ordered(n).unwrap();
        assert_eq!(primed, ordered, "n={n}");
        assert_eq!(reversed(&primed), row(&e2, n), "n={n}");
        assert_eq!(big(&edge_marked_ternary_counts(n).unwrap()), row(&c2, n), "n={n}");
        let vm = vertex_marked_ordered_counts(n, LeafMarking::MaxLeafForced).unwrap();
        assert_eq!(big(&vm[..=n]), row(&c2, n), "n={n}");
        assert_eq!(vm[n + 1], 0);
    }
    assert_eq!(enumerate_increasing_ternary(3, true).unwrap(), vec![0, 6, 8, 1]);
    assert_eq!(edge_marked_ternary_counts(2).unwrap()[2], 3);
    assert_eq!(enumerate_increasing_ordered(0).unwrap(), vec![1]);
}

#[test]
fn every_leaf_optional_marking_overcounts_by_one_plus_x() {
    let c2 = stirling_r(Family::Cycle, 2, 6);
    for n in 1..=6 {
        let literal = vertex_marked_ordered_counts(n, LeafMarking::AllLeaves).unwrap();
        let c = IntPolynomial::new(row(&c2, n));
        let expected = &c * &IntPolynomial::from_i64s(&[1, 1]);
        assert_eq!(IntPolynomial::new(big(&literal)), expected, "n={n}");
    }
    assert_eq!(vertex_marked_ordered_counts(0, LeafMarking::AllLeaves).unwrap()[0], 1);
}

/// The worked example pair on `{0,...,10}`.
fn example_tree() -> TernaryTree {
    let mut t = TernaryTree::empty();
    t.root = Some(0);
    let edges = [(0, LEFT, 1), (1, LEFT, 3), (1, MIDDLE, 2), (1, RIGHT, 5), (2, LEFT, 4), (2, RIGHT, 10), (3, LEFT, 6), (4, MIDDLE, 8), (4, RIGHT, 9), (6, RIGHT, 7)];
    for v in 0..=10 {
        t.kids.insert(v, [None; 3]);
    }
    for (p, s, c) in edges {
        t.kids.get_mut(&p).unwrap()[s] = Some(c);
    }
    t
}

#[test]
fn phi_on_example() {
    let t = example_tree();
    let s = phi(&t).unwrap();
    assert_eq!(s.ch(0), &[2, 10, 1, 5]);
    assert_eq!(s.ch(1), &[3]);
    assert_eq!(s.ch(2), &[8, 4, 9]);
    assert_eq!(s.ch(3), &[6, 7]);
    for v in 4..=10 {
        assert!(s.ch(v).is_empty());
    }
    assert_eq!(psi(&s).unwrap(), t);
    assert_eq!(s.to_string(), "0(2(8,4,9),10,1(3(6,7)),5)");
    for j in 1..=10 {
        assert_eq!(s.parent(j), lanc(&t, j), "j={j}");
    }
}

#[test]
fn phi_psi_are_inverse_on_all_trees() {
    for n in 0..=6 {
        let mut images = std::collections::BTreeSet::new();
        let mut count = 0usize;
        for_each_increasing_ternary(n, true, |t| {
            let s = phi(t).unwrap();
            assert_eq!(&psi(&s).unwrap(), t);
            assert_eq!(t.edge_count(LEFT), s.internal_count());
            for j in 1..=n as u32 {
                assert_eq!(s.parent(j), lanc(t, j));
            }
            images.insert(s.to_string());
            count += 1;
        })
        .unwrap();
        // Injective on T'_n, and onto since both sides have (2n-1)!! trees.
        assert_eq!(images.len(), count);
        let mut ordered = 0usize;
        for_each_increasing_ordered(n, |s| {
            assert_eq!(&phi(&psi(s).unwrap()).unwrap(), s);
            ordered += 1;
        })
        .unwrap();
        assert_eq!(ordered, count);
        if n == 6 {
            assert_eq!(count, 10395);
        }
    }
}

#[test]
fn phylo_flavors_give_their_triangles() {
    let s2 = stirling_r(Family::Subset, 2, 6);
    let c2 = stirling_r(Family::Cycle, 2, 6);
    let d = ordered_phylo_triangle(6);
    for n in 0..=6 {
        assert_eq!(big(&enumerate_phylo(n, PhyloFlavor::Unordered).unwrap()), row(&s2, n), "n={n}");
        assert_eq!(big(&enumerate_phylo(n, PhyloFlavor::Cyclic).unwrap()), row(&c2, n), "n={n}");
        assert_eq!(big(&enumerate_phylo(n, PhyloFlavor::Ordered).unwrap()), row(&d, n), "n={n}");
    }
    assert_eq!(enumerate_phylo(4, PhyloFlavor::Unordered).unwrap(), vec![0, 1, 25, 105, 105]);
    assert_eq!(enumerate_phylo(3, PhyloFlavor::Cyclic).unwrap(), vec![0, 6, 20, 15]);
    assert_eq!(enumerate_phylo(2, PhyloFlavor::Ordered).unwrap(), vec![0, 6, 12]);
}

#[test]
fn phylo_trees_are_valid_and_canonical() {
    for flavor in [PhyloFlavor::Unordered, PhyloFlavor::Cyclic, PhyloFlavor::Ordered] {
        let mut seen = std::collections::BTreeSet::new();
        for_each_phylo(4, flavor, |t| {
            assert!(t.root.is_valid());
            assert_eq!(t.root.canonical(flavor), t.root);
            assert!(seen.insert(t.root.clone()));
        })
        .unwrap();
    }
}

fn univariate(cs: &[i64]) -> IntPolynomial {
    IntPolynomial::from_i64s(cs)
}

fn row_poly(t: &Triangle, n: usize) -> IntPolynomial {
    IntPolynomial::new(row(t, n))
}

#[test]
fn multivariate_ward_specializations() {
    let w2 = multivariate_ward(2).unwrap();
    assert_eq!(w2.format_with(&["x1", "x2"]), "3*x1^2 + x2");
    let w4 = multivariate_ward(4).unwrap();
    assert_eq!(w4.format_with(&["x1", "x2", "x3", "x4"]), "105*x1^4 + 105*x1^2*x2 + 15*x1*x3 + 10*x2^2 + x4");
    assert!(multivariate_ward(0).unwrap().is_constant());
    let s2 = stirling_r(Family::Subset, 2, 6);
    let c2 = stirling_r(Family::Cycle, 2, 6);
    let d = ordered_phylo_triangle(6);
    let fact = |i: usize| (1..=i as i64).product::<i64>();
    for n in 1..=6 {
        let w = multivariate_ward(n).unwrap();
        let weights: Vec<u32> = (1..=n as u32).collect();
        assert_eq!(w.weighted_degree(&weights), Some(n as u32));
        let same: Vec<IntPolynomial> = (1..=n).map(|_| univariate(&[0, 1])).collect();
        let cyc: Vec<IntPolynomial> = (1..=n).map(|i| univariate(&[0, fact(i)])).collect();
        let ord: Vec<IntPolynomial> = (1..=n).map(|i| univariate(&[0, fact(i + 1)])).collect();
        assert_eq!(w.eval_univariate(&same).unwrap(), row_poly(&s2, n));
        assert_eq!(w.eval_univariate(&cyc).unwrap(), row_poly(&c2, n));
        assert_eq!(w.eval_univariate(&ord).unwrap(), row_poly(&d, n));
    }
}

#[test]
fn multivariate_eulerian_specializations() {
    let p2 = multivariate_eulerian(2, 2).unwrap();
    assert_eq!(p2.format_with(&["x0", "x1", "x2"]), "x0^2 + x0*x1 + x0*x2");
    assert!(multivariate_eulerian(2, 0).unwrap().is_constant());
    let e2 = eulerian_r(2, 6);
    let c2 = stirling_r(Family::Cycle, 2, 6);
    let s2 = stirling_r(Family::Subset, 2, 6);
    for n in 1..=6 {
        let p = multivariate_eulerian(2, n).unwrap();
        assert_eq!(p.weighted_degree(&[1, 1, 1]), Some(n as u32));
        let x = univariate(&[0, 1]);
        let one_x = univariate(&[1, 1]);
        assert_eq!(p.eval_univariate(&[IntPolynomial::one(), x.clone(), x.clone()]).unwrap(), row_poly(&e2, n));
        assert_eq!(p.eval_univariate(&[x.clone(), one_x.clone(), one_x.clone()]).unwrap(), row_poly(&c2, n));
        assert_eq!(p.eval_univariate(&[x.clone(), x.clone(), one_x.clone()]).unwrap(), row_poly(&s2, n));
    }
    for m in 1..=3 {
        for n in 1..=5 {
            let p = multivariate_eulerian(m, n).unwrap();
            let q = multivariate_eulerian_unrestricted(m, n - 1).unwrap();
            let x0 = stirling_core::mpoly::MPoly::var(m + 1, 0);
            assert_eq!(p, &x0 * &q, "m={m} n={n}");
            // Symmetric in x_1..x_m.
            for i in 1..m {
                let mut swapped = stirling_core::mpoly::MPoly::zero(m + 1);
                for (e, c) in p.terms() {
                    let mut e = e.clone();
                    e.swap(i, i + 1);
                    swapped.add_term(e, c.clone());
                }
                assert_eq!(swapped, p);
            }
        }
    }
    let e4 = multivariate_eulerian(2, 4).unwrap();
    let x = univariate(&[0, 1]);
    assert_eq!(e4.eval_univariate(&[IntPolynomial::one(), x.clone(), x]).unwrap(), univariate(&[1, 22, 58, 24]));
}

#[test]
fn guards_are_enforced() {
    assert!(matches!(enumerate_increasing_ternary(10, true), Err(OracleError::GuardExceeded { .. })));
    assert!(enumerate_increasing_ordered(10).is_err());
    assert!(enumerate_phylo(8, PhyloFlavor::Unordered).is_err());
    assert!(multivariate_ward(8).is_err());
    assert!(multivariate_eulerian(4, 2).is_err());
    assert!(multivariate_eulerian(2, 9).is_err());
}

//! Generating-function identities, and agreement of the series, the tree
//! enumerations and the triangle recurrences.

use num_bigint::BigInt;
use num_rational::BigRational;
use stirling_core::mpoly::MPoly;
use stirling_core::oracles::{for_each_increasing_ordered, multivariate_ward};
use stirling_core::series::*;
use stirling_core::triangle::{ordered_phylo_triangle, stirling_r};
use stirling_core::{Family, IntPolynomial, Triangle};

fn row_poly(t: &Triangle, n: usize) -> IntPolynomial {
    IntPolynomial::new(t.row(n).unwrap().to_vec())
}

#[test]
fn correspondence_holds_for_all_cases() {
    for case in [CorrespondenceCase::Power(2), CorrespondenceCase::Linear, CorrespondenceCase::Exponential, CorrespondenceCase::Power(3)] {
        let report = case.verify(10).unwrap();
        assert!(report.holds(), "{case:?}: {report:?}");
    }
}

#[test]
fn power_two_is_the_geometric_case() {
    let phi_hat = CorrespondenceCase::Power(2).phi_hat(8);
    let u = TruncatedSeries::variable(2, 8);
    let yu = u.scale(&MPoly::var(2, VAR_Y));
    assert_eq!(phi_hat, u.mul(&yu.geometric().unwrap()));
}

#[test]
fn mismatched_pair_fails_precondition() {
    let report = verify_tree_correspondence(&CorrespondenceCase::Power(2).phi_hat(6), &CorrespondenceCase::Linear.chi(6), 6).unwrap();
    assert_eq!(report.precondition_failure, Some(1));
    assert!(!report.holds());
}

#[test]
fn ordered_tree_weights_from_the_tree_equation() {
    // Phi(u) = 1 + x u/(1 - y u): a vertex with i >= 1 children weighs
    // x y^{i-1}, so n! [t^n] A sums x^{int} y^{n-1-int} over trees on
    // {0,...,n-1}.
    let order = 8;
    let a = solve_autonomous_ode(&TruncatedSeries::one(2, order).add(&CorrespondenceCase::Power(2).phi_hat(order).scale(&MPoly::var(2, VAR_X))), order).unwrap();
    let egf = a.egf_coefficients().unwrap();
    for n in 1..=order {
        let mut expected = MPoly::zero(2);
        for_each_increasing_ordered(n - 1, |s| {
            let int = s.internal_count() as u32;
            expected.add_term(vec![int, n as u32 - 1 - int], BigRational::from_integer(BigInt::from(1)));
        })
        .unwrap();
        assert_eq!(egf[n], expected, "n={n}");
        let ones = [IntPolynomial::one(), IntPolynomial::one()];
        let double_fact: i64 = (1..n as i64).map(|j| 2 * j - 1).product();
        assert_eq!(egf[n].eval_univariate(&ones).unwrap(), IntPolynomial::from_i64s(&[double_fact]));
    }
}

#[test]
fn ternary_tree_equation_gives_double_factorials() {
    let u = TruncatedSeries::variable(2, 9);
    let x = MPoly::var(2, VAR_X);
    let y = MPoly::var(2, VAR_Y);
    let one = TruncatedSeries::one(2, 9);
    let yu = one.add(&u.scale(&y));
    let phi = one.add(&u.scale(&x)).mul(&yu).mul(&yu);
    let egf = solve_autonomous_ode(&phi, 9).unwrap().egf_coefficients().unwrap();
    let ones = [IntPolynomial::one(), IntPolynomial::one()];
    for n in 1..=9 {
        let double_fact: i64 = (1..=n as i64).map(|j| 2 * j - 1).product();
        assert_eq!(egf[n].eval_univariate(&ones).unwrap(), IntPolynomial::from_i64s(&[double_fact]), "n={n}");
    }
}

#[test]
fn ward_series_matches_enumeration() {
    let w = ward_polynomials(6, WardSpecialization::Multivariate).unwrap();
    let names = ["x1", "x2", "x3", "x4", "x5", "x6"];
    assert_eq!(w[4].format_with(&names), "105*x1^4 + 105*x1^2*x2 + 15*x1*x3 + 10*x2^2 + x4");
    for n in 1..=5 {
        let oracle = multivariate_ward(n).unwrap();
        // Pad the oracle to the series ring x_1..x_6.
        let mut padded = MPoly::zero(6);
        for (e, c) in oracle.terms() {
            let mut e = e.clone();
            e.resize(6, 0);
            padded.add_term(e, c.clone());
        }
        assert_eq!(w[n], padded, "n={n}");
    }
}

#[test]
fn ward_specializations_give_triangle_rows() {
    let s2 = stirling_r(Family::Subset, 2, 8);
    let c2 = stirling_r(Family::Cycle, 2, 8);
    let d = ordered_phylo_triangle(8);
    let sub = ward_polynomials(8, WardSpecialization::Subset).unwrap();
    let cyc = ward_polynomials(8, WardSpecialization::Cyclic).unwrap();
    let ord = ward_polynomials(8, WardSpecialization::Ordered).unwrap();
    for n in 0..=7 {
        assert_eq!(to_univariate(&sub[n]).unwrap(), row_poly(&s2, n), "n={n}");
        assert_eq!(to_univariate(&cyc[n]).unwrap(), row_poly(&c2, n), "n={n}");
        assert_eq!(to_univariate(&ord[n]).unwrap(), row_poly(&d, n), "n={n}");
    }
    let s8 = ward_polynomials(9, WardSpecialization::Subset).unwrap();
    assert_eq!(to_univariate(&s8[8]).unwrap(), row_poly(&s2, 8));
    let c8 = ward_polynomials(9, WardSpecialization::Cyclic).unwrap();
    assert_eq!(to_univariate(&c8[8]).unwrap(), row_poly(&c2, 8));
}

#[test]
fn cyclic_ward_series_differential_equation() {
    let order = 10;
    let w = ward_egf(order, WardSpecialization::Cyclic);
    let x = MPoly::var(1, 0);
    let one = TruncatedSeries::one(1, order);
    let one_plus_x = &MPoly::one(1) + &x;
    let rhs = one.add(&w.scale(&x).mul(&w.scale(&one_plus_x).geometric().unwrap()));
    assert_eq!(w.derivative().first_mismatch(&rhs, order - 1), None);
}

#[test]
fn t_fraction_matches_ward_subset() {
    let (a, d) = ward_t_fraction_coefficients(10);
    let f = t_fraction_expand(&a, &d, 10).unwrap();
    let sub = ward_polynomials(10, WardSpecialization::Subset).unwrap();
    for n in 0..=10 {
        assert_eq!(f.coeff(n), &sub[n], "n={n}");
    }
    assert_eq!(to_univariate(f.coeff(2)).unwrap(), IntPolynomial::from_i64s(&[0, 1, 3]));
}

#[test]
fn three_routes_agree() {
    let n_max = 7;
    let s2 = stirling_r(Family::Subset, 2, n_max);
    let c2 = stirling_r(Family::Cycle, 2, n_max);
    let d = ordered_phylo_triangle(n_max);
    // Series routes: the tree equation with y = 1 + x for the cycle numbers,
    // the Ward equation for the others.
    let order = n_max + 1;
    let x = MPoly::var(2, VAR_X);
    let y = MPoly::var(2, VAR_Y);
    let u = TruncatedSeries::variable(2, order);
    let phi = TruncatedSeries::one(2, order).add(&u.scale(&x).mul(&u.scale(&y).geometric().unwrap()));
    let a = solve_autonomous_ode(&phi, order).unwrap().egf_coefficients().unwrap();
    let sub = ward_polynomials(n_max, WardSpecialization::Subset).unwrap();
    let ord = ward_polynomials(n_max, WardSpecialization::Ordered).unwrap();
    let xp = IntPolynomial::from_i64s(&[0, 1]);
    let fact = |i: usize| (1..=i as i64).product::<i64>();
    for n in 0..=n_max {
        let cyc_series = a[n + 1].eval_univariate(&[xp.clone(), IntPolynomial::from_i64s(&[1, 1])]).unwrap();
        let w = multivariate_ward(n).unwrap();
        let img = |f: &dyn Fn(usize) -> i64| -> Vec<IntPolynomial> { (1..=n).map(|i| IntPolynomial::from_i64s(&[0, f(i)])).collect() };
        let trees_s = w.eval_univariate(&img(&|_| 1)).unwrap();
        let trees_c = w.eval_univariate(&img(&fact)).unwrap();
        let trees_d = w.eval_univariate(&img(&|i| fact(i + 1))).unwrap();
        assert_eq!(cyc_series, row_poly(&c2, n), "n={n}");
        assert_eq!(trees_c, row_poly(&c2, n), "n={n}");
        assert_eq!(to_univariate(&sub[n]).unwrap(), row_poly(&s2, n), "n={n}");
        assert_eq!(trees_s, row_poly(&s2, n), "n={n}");
        assert_eq!(to_univariate(&ord[n]).unwrap(), row_poly(&d, n), "n={n}");
        assert_eq!(trees_d, row_poly(&d, n), "n={n}");
    }
}

#[test]
fn integrality_is_enforced() {
    let half = MPoly::constant(0, BigRational::new(1.into(), 2.into()));
    let s = TruncatedSeries::variable(0, 3).scale(&half);
    assert_eq!(s.egf_coefficients(), Err(SeriesError::NonIntegral(1)));
}

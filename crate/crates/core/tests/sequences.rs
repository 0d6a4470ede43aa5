use hatcheck::bounds::{
    circ_bound, n_h_t_closed, n_h_t_recursive, sylvester, theta_estimate, two_guess_exact, two_guess_seq,
    two_guess_within_theta, BigBound,
};
use num_bigint::BigUint;
use proptest::prelude::*;

/// Independent recomputation of both products straight from their
/// recurrences.
fn products(n: usize, factor: u32) -> Vec<BigUint> {
    let mut out = vec![BigUint::from(1u32)];
    for _ in 0..n {
        let prod: BigUint = out.iter().product();
        out.push(prod * factor + 1u32);
    }
    out
}

#[test]
fn heads_match_recurrences() {
    let s = products(12, 1);
    let a = products(12, 2);
    for n in 0..12u32 {
        assert_eq!(sylvester(n).unwrap().as_integer().unwrap(), s[n as usize]);
        assert_eq!(two_guess_exact(n).unwrap(), a[n as usize]);
        assert_eq!(two_guess_seq(n).unwrap().as_integer().unwrap(), a[n as usize]);
    }
}

#[test]
fn two_guess_terms_are_shifted_sylvester_terms() {
    let s = products(14, 1);
    let a = products(13, 2);
    assert_ne!(a[0], s[1]);
    for n in 1..13 {
        assert_eq!(a[n], s[n + 1], "n = {n}");
    }
}

#[test]
fn theta_bracket_and_growth() {
    let theta = theta_estimate(128).unwrap();
    let hi = theta.hi.clone();
    for n in 1..=20 {
        assert!(two_guess_within_theta(n, &hi).unwrap(), "n = {n}");
    }
    // Doubling the exponent squares the bound, so the ratio log2(a_{n+1}) /
    // log2(a_n) tends to 2.
    let l = |n: u32| two_guess_seq(n).unwrap().log2().unwrap().mid();
    assert!((l(12) / l(11) - 2.0).abs() < 1e-3);
}

#[test]
fn circumference_bound_dominates_sequence() {
    for c in 3..=6u64 {
        let d = (c * c / 2) as u32;
        let bound = circ_bound(c).unwrap();
        let a = two_guess_seq(d).unwrap();
        assert!(a.certainly_le(&bound), "c = {c}");
    }
}

#[test]
fn tree_bounds_ordered() {
    for (h, t) in [(1, 2), (1, 5), (2, 2), (2, 3), (3, 2)] {
        let r = n_h_t_recursive(h, t).unwrap();
        let c = n_h_t_closed(h, t).unwrap();
        assert!(r.certainly_le(&c), "h={h} t={t}: {} vs {}", r.render(), c.render());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exact_values_compare_like_integers(x in 1u64..1_000_000, y in 1u64..1_000_000) {
        let a = BigBound::integer(x.into());
        let b = BigBound::integer(y.into());
        prop_assert_eq!(a.compare(&b), Some(x.cmp(&y)));
    }

    #[test]
    fn sequence_is_increasing(n in 0u32..40) {
        let a = two_guess_seq(n).unwrap();
        let b = two_guess_seq(n + 1).unwrap();
        prop_assert!(a.certainly_le(&b));
        prop_assert!(!b.certainly_le(&a));
    }
}

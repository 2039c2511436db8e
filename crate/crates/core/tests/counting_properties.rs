mod common;

use common::tower;
use num_bigint::BigInt;
use proptest::prelude::*;
use twisted_jacquet::counting::{
    identity_check, mat_count, mat_count_with, pochhammer, rank_recurrence_check, y_count,
    y_count_closed, y_diff, Method, TraceClass,
};
use twisted_jacquet::matq::Mat;

proptest! {
    #[test]
    fn rank_counts_partition_the_space(n in 0usize..7, m in 0usize..7, q in prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9])) {
        let total: BigInt = (0..=n.min(m) as i64).map(|r| mat_count(n, m, r, q)).sum();
        prop_assert_eq!(total, BigInt::from(q).pow((n * m) as u32));
        prop_assert_eq!(mat_count(n, m, 0, q), BigInt::from(1));
        prop_assert_eq!(mat_count(n, m, -1, q), BigInt::from(0));
        prop_assert_eq!(mat_count(n, m, n.min(m) as i64 + 1, q), BigInt::from(0));
        prop_assert_eq!(mat_count(n, m, 1, q), mat_count(m, n, 1, q));
    }

    #[test]
    fn rank_recurrence_holds(n in 1usize..8, r in 1usize..8, q in 2u64..10) {
        prop_assume!(r <= n);
        prop_assert!(rank_recurrence_check(n, r, q).unwrap());
    }

    #[test]
    fn trace_classes_partition_each_rank(n in 1usize..7, r in 0usize..7, q in prop::sample::select(vec![2u64, 3, 4, 5, 7])) {
        prop_assume!(r <= n);
        let z = y_count_closed(n, r, q, TraceClass::Zero).unwrap();
        let o = y_count_closed(n, r, q, TraceClass::Nonzero).unwrap();
        prop_assert_eq!(&z + &o * BigInt::from(q - 1), mat_count(n, n, r as i64, q));
        prop_assert_eq!(z - o, y_diff(n, r, q).unwrap());
    }

    #[test]
    fn rank_sum_identity(n in 0usize..7, extra in 0usize..7, q in prop::sample::select(vec![2u64, 3, 4, 5, 7])) {
        let r = identity_check(n, 2 * n + extra, q).unwrap();
        prop_assert!(r.holds, "{:?}", r);
    }
}

#[test]
fn pochhammer_sign_and_growth() {
    for q in 2..6u64 {
        for n in 0..8i64 {
            let v = pochhammer(q, n).unwrap();
            assert_eq!(v.sign() == num_bigint::Sign::Minus, n % 2 == 1);
        }
    }
}

#[test]
fn closed_forms_match_enumeration() {
    for (p, n) in [
        (2u32, 1usize),
        (2, 2),
        (2, 3),
        (3, 1),
        (3, 2),
        (3, 3),
        (2, 4),
    ] {
        let t = tower(p, 1, 1);
        let q = t.q();
        for cols in [n, n.saturating_sub(1).max(1)] {
            for r in 0..=n.min(cols) as i64 {
                assert_eq!(
                    mat_count_with(n, cols, r, q, Method::Closed).unwrap(),
                    mat_count_with(n, cols, r, q, Method::Oracle(t)).unwrap()
                );
            }
        }
        for a in [Mat::unit(n, 0, 0, 1), Mat::unit(n, 0, n - 1, 1)] {
            for r in 0..=n {
                for class in [TraceClass::Zero, TraceClass::Nonzero] {
                    assert_eq!(
                        y_count(t, &a, r, class, Method::Closed).unwrap(),
                        y_count(t, &a, r, class, Method::Oracle(t)).unwrap(),
                        "q={q} n={n} r={r} {class:?}"
                    );
                }
            }
        }
    }
}

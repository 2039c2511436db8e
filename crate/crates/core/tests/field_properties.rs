mod common;

use common::tower;
use num_bigint::BigInt;
use proptest::prelude::*;
use twisted_jacquet::cyclo::{zeta, CycNum, CycloRing};
use twisted_jacquet::ffield::FFElem;

const TOWERS: [(u32, u32, u32); 6] = [
    (2, 1, 6),
    (3, 1, 4),
    (2, 2, 2),
    (5, 1, 2),
    (7, 1, 2),
    (3, 2, 2),
];

#[test]
fn log_tables_are_complete_bijections() {
    for (p, e, m) in TOWERS {
        let t = tower(p, e, m);
        for d in t.levels().collect::<Vec<_>>() {
            let f = t.level(d).unwrap();
            let mut seen = vec![false; f.size() as usize];
            for k in 0..f.order() as u64 {
                let x = f.exp(k);
                assert_eq!(f.log(x), Some(k as u32));
                assert!(!seen[x as usize]);
                seen[x as usize] = true;
            }
            assert!(!seen[0]);
        }
    }
}

fn elem_strategy() -> impl Strategy<Value = ((u32, u32, u32), u32, u32, u32)> {
    (0..TOWERS.len(), any::<u32>(), any::<u32>(), any::<u32>())
        .prop_map(|(i, a, b, c)| (TOWERS[i], a, b, c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn embeddings_are_ring_maps((shape, a, b, _c) in elem_strategy()) {
        let t = tower(shape.0, shape.1, shape.2);
        let levels: Vec<u32> = t.levels().collect();
        for &d in &levels {
            let size = t.level(d).unwrap().size();
            let x = FFElem::new(d, a % size);
            let y = FFElem::new(d, b % size);
            for &d2 in levels.iter().filter(|&&d2| d2 % d == 0) {
                let up = |z| t.embed(z, d2).unwrap();
                prop_assert_eq!(up(t.add(x, y).unwrap()), t.add(up(x), up(y)).unwrap());
                prop_assert_eq!(up(t.mul(x, y).unwrap()), t.mul(up(x), up(y)).unwrap());
            }
        }
    }

    #[test]
    fn frobenius_is_additive_and_has_order_d((shape, a, b, _c) in elem_strategy()) {
        let t = tower(shape.0, shape.1, shape.2);
        for d in t.levels().collect::<Vec<_>>() {
            let size = t.level(d).unwrap().size();
            let x = FFElem::new(d, a % size);
            let y = FFElem::new(d, b % size);
            prop_assert_eq!(
                t.frobenius(t.add(x, y).unwrap()).unwrap(),
                t.add(t.frobenius(x).unwrap(), t.frobenius(y).unwrap()).unwrap()
            );
            let mut z = x;
            for _ in 0..d {
                z = t.frobenius(z).unwrap();
            }
            prop_assert_eq!(z, x);
        }
    }

    #[test]
    fn dlog_respects_multiplication((shape, a, b, _c) in elem_strategy()) {
        let t = tower(shape.0, shape.1, shape.2);
        let d = shape.2;
        let f = t.level(d).unwrap();
        let x = FFElem::new(d, 1 + a % f.order());
        let y = FFElem::new(d, 1 + b % f.order());
        let lhs = t.dlog(t.mul(x, y).unwrap()).unwrap();
        let rhs = (t.dlog(x).unwrap() + t.dlog(y).unwrap()) % f.order() as u64;
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn reduction_is_idempotent(l in prop::sample::select(vec![1u64, 2, 4, 6, 12, 15, 24, 63, 80, 126, 240]),
                               coeffs in prop::collection::vec(-50i64..50, 0..300)) {
        let ring = CycloRing::get(l).unwrap();
        let raw: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
        let once = ring.reduce(&raw);
        prop_assert!(once.len() <= ring.degree());
        prop_assert_eq!(ring.reduce(&once), once.clone());
    }

    #[test]
    fn cyclotomic_ring_axioms(l in prop::sample::select(vec![5u64, 8, 12, 24, 63, 240]),
                              a in prop::collection::vec(-9i128..9, 1..40),
                              b in prop::collection::vec(-9i128..9, 1..40),
                              k in 0i64..300) {
        let x = CycNum::from_exponent_counts(l, &a).unwrap();
        let y = CycNum::from_exponent_counts(l, &b).unwrap();
        let z = zeta(l, k).unwrap();
        prop_assert_eq!(&(&x + &y) * &z, &(&x * &z) + &(&y * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(x.conj().conj(), x.clone());
        prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
        prop_assert_eq!(x.lift(3 * l).unwrap(), x.clone());
        prop_assert!((&z * &z.conj()) == CycNum::one(l).unwrap());
    }
}

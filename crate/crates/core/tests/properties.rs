use std::cmp::Ordering;
use std::thread;

use betalattice::beta::{beta_of_type, format_decimal};
use betalattice::density::{approximate, ApproxLimits};
use betalattice::oracle::{counts_by_order, ExplicitGroup};
use betalattice::{
    alpha, beta, compare_preceq, count_report, lattice_size, partitions_of, AbelianGroupSpec,
    PGroupType, Partition, Rational,
};
use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::*;

const PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

fn partition(max_parts: usize, max_part: u32) -> impl Strategy<Value = Partition> {
    prop::collection::vec(1..=max_part, 0..=max_parts).prop_map(|v| Partition::new(v).unwrap())
}

fn p_type(max_parts: usize, max_part: u32) -> impl Strategy<Value = PGroupType> {
    (
        prop::sample::select(&PRIMES[..]),
        partition(max_parts, max_part),
    )
        .prop_map(|(p, d)| PGroupType::new(p, d).unwrap())
}

proptest! {
    #[test]
    fn conjugation_is_an_involution(d in partition(8, 9)) {
        let c = d.conjugate();
        prop_assert_eq!(c.weight(), d.weight());
        prop_assert_eq!(c.len() as u32, d.largest());
        prop_assert_eq!(c.conjugate(), d);
    }

    #[test]
    fn preceq_is_a_total_order(n in 1u32..=9, i in 0usize..30, j in 0usize..30, k in 0usize..30) {
        let all = partitions_of(n, None);
        let (a, b, c) = (&all[i % all.len()], &all[j % all.len()], &all[k % all.len()]);
        let ab = compare_preceq(a, b).unwrap();
        prop_assert_eq!(ab.reverse(), compare_preceq(b, a).unwrap());
        prop_assert_eq!(ab == Ordering::Equal, a == b);
        if ab != Ordering::Greater && compare_preceq(b, c).unwrap() != Ordering::Greater {
            prop_assert_ne!(compare_preceq(a, c).unwrap(), Ordering::Greater);
        }
    }

    #[test]
    fn lattice_size_is_layer_sum_and_deterministic(t in p_type(4, 4)) {
        let r = count_report(&t);
        let sum: BigInt = r.s.iter().sum();
        prop_assert_eq!(&r.total, &sum);
        prop_assert_eq!(lattice_size(&t), sum);
        prop_assert_eq!(count_report(&t), r);
    }

    #[test]
    fn beta_multiplies_over_coprime_parts(a in p_type(3, 3), b in p_type(3, 3)) {
        prop_assume!(a.p() != b.p());
        let g = AbelianGroupSpec::new(vec![a.clone(), b.clone()]).unwrap();
        prop_assert_eq!(beta(&g), beta_of_type(&a) * beta_of_type(&b));
        prop_assert!(alpha(&g) <= beta(&g));
    }

    #[test]
    fn spec_text_round_trips(a in p_type(3, 5), b in p_type(3, 5)) {
        let comps = if a.p() == b.p() { vec![a] } else { vec![a, b] };
        let g = AbelianGroupSpec::new(comps).unwrap();
        let back: AbelianGroupSpec = g.to_string().parse().unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn decimal_rendering_is_close(num in -1_000_000i64..1_000_000, den in 1i64..100_000) {
        let r = Rational::new(num.into(), den.into());
        let text = format_decimal(&r, 12);
        let parsed: f64 = text.parse().unwrap();
        let exact = num as f64 / den as f64;
        prop_assert!((parsed - exact).abs() <= exact.abs() * 1e-11 + 1e-300, "{} vs {}", text, exact);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn enumeration_multiplies_over_coprime_factors(
        a in p_type(2, 2), b in p_type(2, 2)
    ) {
        prop_assume!(a.p() != b.p());
        let ga = ExplicitGroup::from_type(&a).unwrap();
        let gb = ExplicitGroup::from_type(&b).unwrap();
        prop_assume!(ga.order() * gb.order() <= 512);
        let g = ExplicitGroup::from_spec(&AbelianGroupSpec::new(vec![a, b]).unwrap()).unwrap();
        let total = |g: &ExplicitGroup| -> u64 { counts_by_order(g, 512).unwrap().values().sum() };
        prop_assert_eq!(total(&g), total(&ga) * total(&gb));
    }

    #[test]
    fn approximation_meets_tolerance(num in 0i64..5000, den in 1i64..500, eps_den in 10i64..2000) {
        let x = Rational::new(num.into(), den.into());
        let eps = Rational::new(1.into(), eps_den.into());
        let r = approximate(&x, &eps, &ApproxLimits::default()).unwrap();
        prop_assert_eq!(&beta(&r.group), &r.achieved);
        prop_assert_eq!(&(&r.achieved - &x).abs(), &r.error);
        prop_assert!(r.error <= eps);
    }
}

#[test]
fn caches_agree_across_threads() {
    let types: Vec<PGroupType> = (1..=9)
        .flat_map(|n| partitions_of(n, None))
        .map(|d| PGroupType::new(3u64, d).unwrap())
        .collect();
    let serial: Vec<BigInt> = types.iter().map(lattice_size).collect();
    let handles: Vec<_> = (0..4)
        .map(|shift| {
            let mut ts = types.clone();
            ts.rotate_left(shift * 7 % types.len());
            thread::spawn(move || {
                ts.iter()
                    .map(|t| (t.clone(), lattice_size(t)))
                    .collect::<Vec<_>>()
            })
        })
        .collect();
    for h in handles {
        for (t, size) in h.join().unwrap() {
            let i = types.iter().position(|u| *u == t).unwrap();
            assert_eq!(size, serial[i], "{t}");
        }
    }
}

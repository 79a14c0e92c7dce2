use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tuttex::binomial::{self, BinomialFamily, CoeffSequence, Pivot};
use tuttex::identities::random_sequence;

fn sequence(seed: u64, cap: Vec<u32>) -> CoeffSequence {
    random_sequence(&mut ChaCha8Rng::seed_from_u64(seed), cap).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn round_trip_one_dimensional(seed in any::<u64>(), cap in 1u32..=6) {
        let c = sequence(seed, vec![cap]);
        let r = binomial::check_round_trip(&c, "random").unwrap();
        prop_assert!(r.passed(), "{}", r.to_line());
        let f = BinomialFamily::from_connected(&c);
        prop_assert_eq!(&binomial::connected_from_family(&f).unwrap(), &c);
    }

    #[test]
    fn round_trip_two_index(seed in any::<u64>()) {
        let c = sequence(seed, vec![3, 3]);
        let first = BinomialFamily::from_connected_pivot(&c, Pivot::First);
        let last = BinomialFamily::from_connected_pivot(&c, Pivot::Last);
        for n in first.indices(6) {
            prop_assert_eq!(first.a(&n), last.a(&n));
        }
        prop_assert_eq!(&binomial::connected_from_family(&first).unwrap(), &c);
    }

    #[test]
    fn random_families_are_binomial(seed in any::<u64>()) {
        let c = sequence(seed, vec![4]);
        let f = BinomialFamily::from_connected(&c);
        for r in [
            binomial::check_convolutions(&f, 4).unwrap(),
            binomial::check_generating_function(&f).unwrap(),
            binomial::check_power_expansion(&f, 4).unwrap(),
            binomial::check_knuth(&f, 4).unwrap(),
            binomial::check_abel(&f, 4).unwrap(),
        ] {
            prop_assert!(r.passed(), "{}", r.to_line());
        }
    }
}

#[test]
fn knuth_needs_one_index() {
    let f = binomial::bipartite_family((2, 2)).unwrap();
    assert!(binomial::knuth_transform(&f, &tuttex::Var::new("t"), 2).is_err());
}

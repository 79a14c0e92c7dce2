use proptest::prelude::*;
use tuttex::mobius::{classical_mu_matrix, identity_matrix, mu_q1q2_matrix, zeta_matrix};
use tuttex::partitions::standard_ground;
use tuttex::MultiPoly;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn composition_on_integer_triples(n in 1usize..=4, a in -4i64..=4, b in -4i64..=4, c in -4i64..=4) {
        let g = standard_ground(n);
        let (a, b, c) = (MultiPoly::int(a), MultiPoly::int(b), MultiPoly::int(c));
        let ab = mu_q1q2_matrix(g.clone(), &a, &b).unwrap();
        let bc = mu_q1q2_matrix(g.clone(), &b, &c).unwrap();
        prop_assert_eq!(ab.mul(&bc).unwrap(), mu_q1q2_matrix(g, &a, &c).unwrap());
    }

    #[test]
    fn supported_on_refinements(n in 1usize..=5, a in -3i64..=3, b in -3i64..=3) {
        let m = mu_q1q2_matrix(standard_ground(n), &MultiPoly::int(a), &MultiPoly::int(b)).unwrap();
        prop_assert!(m.is_upper_triangular());
        for i in 0..m.dim() {
            prop_assert!(m.get(i, i).is_one());
        }
    }
}

#[test]
fn specializations() {
    for n in 1..=5 {
        let g = standard_ground(n);
        let one = MultiPoly::one();
        let zero = MultiPoly::zero();
        assert_eq!(mu_q1q2_matrix(g.clone(), &one, &zero).unwrap(), classical_mu_matrix(g.clone()).unwrap());
        assert_eq!(mu_q1q2_matrix(g.clone(), &zero, &one).unwrap(), zeta_matrix(g.clone()).unwrap());
        assert_eq!(mu_q1q2_matrix(g.clone(), &one, &one).unwrap(), identity_matrix(g).unwrap());
    }
}

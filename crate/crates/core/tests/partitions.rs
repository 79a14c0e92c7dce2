use std::collections::HashSet;

use num_bigint::BigUint;
use proptest::prelude::*;
use tuttex::exactalg::falling_factorial;
use tuttex::partitions::{bell, enumerate_partitions, standard_ground, stirling2};
use tuttex::{MultiPoly, Rational, SetPartition};

/// Bell numbers from the Bell triangle.
fn bell_triangle(n: usize) -> BigUint {
    let mut row = vec![BigUint::from(1u32)];
    for _ in 0..n {
        let mut next = vec![row.last().unwrap().clone()];
        for x in &row {
            let y = next.last().unwrap() + x;
            next.push(y);
        }
        row = next;
    }
    row[0].clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn enumeration_counts(n in 0usize..=8) {
        let all: Vec<SetPartition> = enumerate_partitions(standard_ground(n)).collect();
        let distinct: HashSet<Vec<usize>> = all.iter().map(|p| p.rgs().to_vec()).collect();
        prop_assert_eq!(distinct.len(), all.len());
        prop_assert_eq!(BigUint::from(all.len()), bell_triangle(n));
        prop_assert_eq!(bell(n), bell_triangle(n));
        for p in &all {
            prop_assert_eq!(p.block_sizes().iter().sum::<usize>(), n);
            let pairs: u64 = p.block_sizes().iter().map(|&b| (b * b.saturating_sub(1) / 2) as u64).sum();
            prop_assert_eq!(p.cross_edges() + pairs, (n * n.saturating_sub(1) / 2) as u64);
        }
    }
}

#[test]
fn bell_up_to_ten() {
    for n in 0..=10 {
        assert_eq!(enumerate_partitions(standard_ground(n)).count(), 
            bell_triangle(n).to_string().parse::<usize>().unwrap());
    }
}

#[test]
fn refinement_is_a_partial_order() {
    let all: Vec<SetPartition> = enumerate_partitions(standard_ground(4)).collect();
    for a in &all {
        assert!(a.refines(a).unwrap());
        for b in &all {
            let ab = a.refines(b).unwrap();
            if ab && b.refines(a).unwrap() {
                assert_eq!(a, b);
            }
            for c in &all {
                if ab && b.refines(c).unwrap() {
                    assert!(a.refines(c).unwrap());
                }
            }
        }
    }
}

#[test]
fn stirling_expansion_of_powers() {
    let q = MultiPoly::var("q");
    for n in 0..=8usize {
        let sum: MultiPoly = (0..=n)
            .map(|k| falling_factorial(&q, k as u32).scale(&Rational::from_integer(stirling2(n, k).into())))
            .sum();
        assert_eq!(sum, q.pow(n as u32), "n={n}");
    }
}

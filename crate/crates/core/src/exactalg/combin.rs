use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::Rational;

pub fn factorial(n: u32) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * (n - j) / (j + 1);
    }
    acc
}

pub fn binomial_rat(n: u32, k: u32) -> Rational {
    Rational::from_integer(binomial(n, k))
}

/// `∏ n_i!` for a multi-index.
pub fn multi_factorial(n: &[u32]) -> BigInt {
    n.iter().map(|&k| factorial(k)).product()
}

/// `∏ C(n_i, k_i)`.
pub fn multi_binomial(n: &[u32], k: &[u32]) -> BigInt {
    n.iter().zip(k).map(|(&a, &b)| binomial(a, b)).product()
}

/// All multi-indices `0 <= k <= cap` componentwise, ordered by total degree then lexicographically.
pub fn multi_indices_upto(cap: &[u32]) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = vec![vec![]];
    for &c in cap {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=c).map(move |x| {
                    let mut p = p.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    out.sort_by(|a, b| {
        let sa: u32 = a.iter().sum();
        let sb: u32 = b.iter().sum();
        sa.cmp(&sb).then_with(|| a.cmp(b))
    });
    out
}

/// All multi-indices of length `dim` with total degree at most `total`, in the same order.
pub fn multi_indices_total(dim: usize, total: u32) -> Vec<Vec<u32>> {
    let mut out = multi_indices_upto(&vec![total; dim]);
    out.retain(|m| m.iter().sum::<u32>() <= total);
    out
}

pub fn leq(k: &[u32], n: &[u32]) -> bool {
    k.iter().zip(n).all(|(a, b)| a <= b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(binomial(6, 2), BigInt::from(15));
        assert_eq!(binomial(2, 3), BigInt::zero());
        assert_eq!(multi_indices_upto(&[1, 1]), vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(multi_indices_total(2, 1).len(), 3);
    }
}

//! Set partitions as restricted growth strings.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graphs::{MultiGraph, UnionFind};

/// A partition of an ordered ground set, stored canonically as a restricted
/// growth string. Blocks are numbered by their smallest element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    ground: Arc<Vec<String>>,
    rgs: Vec<usize>,
}

impl SetPartition {
    pub fn from_rgs(ground: Arc<Vec<String>>, rgs: Vec<usize>) -> Result<Self> {
        if rgs.len() != ground.len() {
            return Err(Error::Structural(format!(
                "rgs of length {} for a ground set of size {}",
                rgs.len(),
                ground.len()
            )));
        }
        let mut next = 0;
        for &b in &rgs {
            if b > next {
                return Err(Error::Domain(format!("not a restricted growth string: {rgs:?}")));
            }
            if b == next {
                next += 1;
            }
        }
        Ok(SetPartition { ground, rgs })
    }

    /// Canonicalizes an arbitrary block labelling.
    pub fn from_labels(ground: Arc<Vec<String>>, labels: &[usize]) -> Result<Self> {
        let mut relabel = std::collections::HashMap::new();
        let rgs = labels
            .iter()
            .map(|l| {
                let n = relabel.len();
                *relabel.entry(*l).or_insert(n)
            })
            .collect();
        SetPartition::from_rgs(ground, rgs)
    }

    pub fn ground(&self) -> &Arc<Vec<String>> {
        &self.ground
    }

    pub fn rgs(&self) -> &[usize] {
        &self.rgs
    }

    pub fn num_blocks(&self) -> usize {
        self.rgs.iter().max().map_or(0, |m| m + 1)
    }

    /// Blocks as lists of ground-set positions, ordered by smallest element.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_blocks()];
        for (i, &b) in self.rgs.iter().enumerate() {
            out[b].push(i);
        }
        out
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        let mut out = vec![0; self.num_blocks()];
        for &b in &self.rgs {
            out[b] += 1;
        }
        out
    }

    /// Blocks as bitmasks over ground-set positions.
    pub fn block_masks(&self) -> Vec<u64> {
        let mut out = vec![0u64; self.num_blocks()];
        for (i, &b) in self.rgs.iter().enumerate() {
            out[b] |= 1 << i;
        }
        out
    }

    /// True iff every block of `self` lies inside a block of `pi`.
    pub fn refines(&self, pi: &SetPartition) -> Result<bool> {
        if self.ground != pi.ground {
            return Err(Error::Structural("partitions of different ground sets".into()));
        }
        Ok(refines_rgs(&self.rgs, &pi.rgs))
    }

    /// Pairs of elements lying in different blocks.
    pub fn cross_edges(&self) -> u64 {
        let n = self.rgs.len() as u64;
        let inner: u64 = self.block_sizes().iter().map(|&s| (s * s) as u64).sum();
        (n * n - inner) / 2
    }

    pub fn singletons(ground: Arc<Vec<String>>) -> Self {
        let rgs = (0..ground.len()).collect();
        SetPartition { ground, rgs }
    }

    pub fn one_block(ground: Arc<Vec<String>>) -> Self {
        let rgs = vec![0; ground.len()];
        SetPartition { ground, rgs }
    }
}

pub(crate) fn refines_rgs(sigma: &[usize], pi: &[usize]) -> bool {
    let mut image = vec![usize::MAX; sigma.len()];
    for (s, p) in sigma.iter().zip(pi) {
        if image[*s] == usize::MAX {
            image[*s] = *p;
        } else if image[*s] != *p {
            return false;
        }
    }
    true
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .blocks()
            .iter()
            .map(|b| {
                b.iter()
                    .map(|&i| self.ground[i].as_str())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        write!(f, "{{{}}}", blocks.join("|"))
    }
}

/// Restricted growth strings of length `n` in lexicographic order.
#[derive(Clone, Debug)]
pub struct RgsIter {
    current: Option<Vec<usize>>,
}

impl RgsIter {
    pub fn new(n: usize) -> Self {
        RgsIter {
            current: Some(vec![0; n]),
        }
    }
}

impl Iterator for RgsIter {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let mut next = out.clone();
        // prefix maxima decide how far each position may grow
        let mut prefix_max = vec![0usize; next.len()];
        for i in 1..next.len() {
            prefix_max[i] = prefix_max[i - 1].max(next[i - 1]);
        }
        let mut i = next.len();
        while i > 1 {
            i -= 1;
            if next[i] <= prefix_max[i] {
                next[i] += 1;
                for x in &mut next[i + 1..] {
                    *x = 0;
                }
                self.current = Some(next);
                return Some(out);
            }
        }
        Some(out)
    }
}

/// Every partition of `ground`, exactly once, in lexicographic RGS order.
pub fn enumerate_partitions(ground: Arc<Vec<String>>) -> impl Iterator<Item = SetPartition> {
    RgsIter::new(ground.len()).map(move |rgs| SetPartition {
        ground: ground.clone(),
        rgs,
    })
}

/// Ground set `"1".."n"`.
pub fn standard_ground(n: usize) -> Arc<Vec<String>> {
    Arc::new((1..=n).map(|i| i.to_string()).collect())
}

/// Stirling numbers of the second kind from the triangle recurrence.
pub fn stirling2(n: usize, k: usize) -> BigUint {
    let mut row = vec![BigUint::one()];
    for m in 1..=n {
        let mut next = vec![BigUint::zero(); m + 1];
        for j in 1..=m {
            let mut v = if j < row.len() { &row[j] * j } else { BigUint::zero() };
            v += &row[j - 1];
            next[j] = v;
        }
        row = next;
    }
    row.get(k).cloned().unwrap_or_default()
}

/// Bell numbers from the Bell triangle.
pub fn bell(n: usize) -> BigUint {
    let mut row = vec![BigUint::one()];
    for _ in 0..n {
        let mut next = vec![row.last().cloned().unwrap_or_default()];
        for x in &row {
            let v = next.last().unwrap() + x;
            next.push(v);
        }
        row = next;
    }
    row[0].clone()
}

/// Partition of the vertex set into the components of `(V, A)`.
pub fn components_partition(g: &MultiGraph, a: &[usize]) -> Result<SetPartition> {
    let mut uf = UnionFind::new(g.num_vertices());
    for &e in a {
        let edge = g
            .edges()
            .get(e)
            .ok_or_else(|| Error::Range(format!("edge index {e} out of range")))?;
        uf.union(edge.a, edge.b);
    }
    let labels: Vec<usize> = (0..g.num_vertices()).map(|v| uf.find(v)).collect();
    SetPartition::from_labels(Arc::new(g.vertices().to_vec()), &labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::families::complete;

    #[test]
    fn counts() {
        assert_eq!(enumerate_partitions(standard_ground(0)).count(), 1);
        assert_eq!(enumerate_partitions(standard_ground(3)).count(), 5);
        assert_eq!(enumerate_partitions(standard_ground(4)).count(), 15);
        assert_eq!(bell(5), BigUint::from(52u32));
        assert_eq!(stirling2(3, 2), BigUint::from(3u32));
        assert_eq!(stirling2(4, 4), BigUint::one());
        assert_eq!(stirling2(3, 0), BigUint::zero());
        assert_eq!(stirling2(0, 0), BigUint::one());
    }

    #[test]
    fn order_and_text() {
        let parts: Vec<String> = enumerate_partitions(standard_ground(3)).map(|p| p.to_string()).collect();
        assert_eq!(parts, ["{1,2,3}", "{1,2|3}", "{1,3|2}", "{1|2,3}", "{1|2|3}"]);
    }

    #[test]
    fn refinement() {
        let g = standard_ground(3);
        let bottom = SetPartition::singletons(g.clone());
        let top = SetPartition::one_block(g.clone());
        let a = SetPartition::from_rgs(g.clone(), vec![0, 0, 1]).unwrap();
        let b = SetPartition::from_rgs(g.clone(), vec![0, 1, 0]).unwrap();
        assert!(bottom.refines(&a).unwrap());
        assert!(a.refines(&top).unwrap());
        assert!(!a.refines(&b).unwrap());
        assert!(!b.refines(&a).unwrap());
        let other = SetPartition::one_block(standard_ground(2));
        assert!(a.refines(&other).is_err());
        assert!(SetPartition::from_rgs(g, vec![1, 0, 0]).is_err());
    }

    #[test]
    fn cross() {
        let g = standard_ground(4);
        assert_eq!(SetPartition::singletons(standard_ground(3)).cross_edges(), 3);
        assert_eq!(SetPartition::one_block(g.clone()).cross_edges(), 0);
        assert_eq!(SetPartition::from_rgs(g, vec![0, 0, 1, 1]).unwrap().cross_edges(), 4);
    }

    #[test]
    fn components() {
        let k4 = complete(4);
        assert_eq!(components_partition(&k4, &[]).unwrap().to_string(), "{1|2|3|4}");
        assert_eq!(components_partition(&k4, &[0, 1, 2]).unwrap().to_string(), "{1,2,3,4}");
        assert_eq!(components_partition(&k4, &[0]).unwrap().to_string(), "{1,2|3|4}");
    }
}

//! Incidence matrices on the partition lattice `Π(S)` and the two-parameter
//! deformation `μ_{q1,q2}` of its Möbius function.

use std::sync::Arc;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactalg::combin::factorial;
use crate::exactalg::{falling_factorial, MultiPoly, Rational, Var};
use crate::graphs::MultiGraph;
use crate::partitions::{enumerate_partitions, refines_rgs, standard_ground, SetPartition};
use crate::report::{Check, CheckReport};
use crate::tutte::{self, InducedTables};

/// Largest ground set for dense matrices (`Bell(6) = 203`).
pub const MAX_MATRIX_N: usize = 6;

/// Largest `m` for the partition lemma.
pub const MAX_LEMMA_M: u32 = 9;

/// Dense square matrix indexed by `Π(S)` in RGS order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionMatrix {
    index: Vec<SetPartition>,
    entries: Vec<MultiPoly>,
}

impl PartitionMatrix {
    fn build(ground: Arc<Vec<String>>, f: impl Fn(&SetPartition, &SetPartition) -> MultiPoly + Sync) -> Result<Self> {
        if ground.len() > MAX_MATRIX_N {
            return Err(Error::Resource(format!(
                "partition matrices are capped at |S| = {MAX_MATRIX_N}, got {}",
                ground.len()
            )));
        }
        let index: Vec<SetPartition> = enumerate_partitions(ground).collect();
        let entries = index
            .par_iter()
            .flat_map_iter(|s| index.iter().map(|p| f(s, p)).collect::<Vec<_>>())
            .collect();
        Ok(PartitionMatrix { index, entries })
    }

    pub fn index(&self) -> &[SetPartition] {
        &self.index
    }

    pub fn dim(&self) -> usize {
        self.index.len()
    }

    pub fn get(&self, row: usize, col: usize) -> &MultiPoly {
        &self.entries[row * self.dim() + col]
    }

    /// Matrix product; zero entries are skipped.
    pub fn mul(&self, other: &PartitionMatrix) -> Result<PartitionMatrix> {
        if self.index != other.index {
            return Err(Error::Structural("matrices over different partition lattices".into()));
        }
        let d = self.dim();
        let entries = (0..d)
            .into_par_iter()
            .flat_map_iter(|i| {
                (0..d)
                    .map(|j| {
                        let mut acc = MultiPoly::zero();
                        for k in 0..d {
                            let a = self.get(i, k);
                            if a.is_zero() {
                                continue;
                            }
                            let b = other.get(k, j);
                            if !b.is_zero() {
                                acc += &(a * b);
                            }
                        }
                        acc
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
        Ok(PartitionMatrix { index: self.index.clone(), entries })
    }

    /// Entry `(σ, π)` is zero whenever `σ` does not refine `π`.
    pub fn is_upper_triangular(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| {
            (0..d).all(|j| self.get(i, j).is_zero() || refines_rgs(self.index[i].rgs(), self.index[j].rgs()))
        })
    }

    pub fn map(&self, f: impl Fn(&MultiPoly) -> MultiPoly + Sync + Send) -> PartitionMatrix {
        PartitionMatrix {
            index: self.index.clone(),
            entries: self.entries.par_iter().map(f).collect(),
        }
    }

    /// `{"index": [...], "rows": [[...], ...]}` with canonical polynomial text.
    pub fn to_json(&self) -> Value {
        let d = self.dim();
        let rows: Vec<Vec<String>> = (0..d)
            .map(|i| (0..d).map(|j| self.get(i, j).to_string()).collect())
            .collect();
        json!({
            "index": self.index.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "rows": rows,
        })
    }
}

/// For `σ <= π`, the number of blocks of `σ` inside each block of `π`.
fn lambdas(sigma: &SetPartition, pi: &SetPartition) -> Option<Vec<u32>> {
    if !refines_rgs(sigma.rgs(), pi.rgs()) {
        return None;
    }
    let mut counts = vec![0u32; pi.num_blocks()];
    let mut seen = vec![false; sigma.num_blocks()];
    for (s, p) in sigma.rgs().iter().zip(pi.rgs()) {
        if !seen[*s] {
            seen[*s] = true;
            counts[*p] += 1;
        }
    }
    Some(counts)
}

/// `∏_{j=1}^{λ-1} (q2 - j q1)`.
pub fn block_factor(q1: &MultiPoly, q2: &MultiPoly, lambda: u32) -> MultiPoly {
    (1..lambda)
        .map(|j| q2 - &q1.scale(&Rational::from_integer(BigInt::from(j))))
        .product()
}

/// `μ_{q1,q2}(σ, π)`.
pub fn mu_entry(sigma: &SetPartition, pi: &SetPartition, q1: &MultiPoly, q2: &MultiPoly) -> MultiPoly {
    match lambdas(sigma, pi) {
        None => MultiPoly::zero(),
        Some(ls) => ls.iter().map(|&l| block_factor(q1, q2, l)).product(),
    }
}

pub fn mu_q1q2_matrix(ground: Arc<Vec<String>>, q1: &MultiPoly, q2: &MultiPoly) -> Result<PartitionMatrix> {
    let max = ground.len() as u32;
    let factors: Vec<MultiPoly> = (0..=max).map(|l| block_factor(q1, q2, l)).collect();
    PartitionMatrix::build(ground, |s, p| match lambdas(s, p) {
        None => MultiPoly::zero(),
        Some(ls) => ls.iter().map(|&l| factors[l as usize].clone()).product(),
    })
}

pub fn zeta_matrix(ground: Arc<Vec<String>>) -> Result<PartitionMatrix> {
    PartitionMatrix::build(ground, |s, p| {
        if refines_rgs(s.rgs(), p.rgs()) {
            MultiPoly::one()
        } else {
            MultiPoly::zero()
        }
    })
}

/// The Möbius function from its closed form `∏ (-1)^{λ-1} (λ-1)!`.
pub fn classical_mu_matrix(ground: Arc<Vec<String>>) -> Result<PartitionMatrix> {
    PartitionMatrix::build(ground, |s, p| match lambdas(s, p) {
        None => MultiPoly::zero(),
        Some(ls) => {
            let v: BigInt = ls
                .iter()
                .map(|&l| {
                    let f = factorial(l - 1);
                    if l % 2 == 1 {
                        f
                    } else {
                        -f
                    }
                })
                .product();
            MultiPoly::constant(Rational::from_integer(v))
        }
    })
}

pub fn identity_matrix(ground: Arc<Vec<String>>) -> Result<PartitionMatrix> {
    PartitionMatrix::build(ground, |s, p| if s == p { MultiPoly::one() } else { MultiPoly::zero() })
}

fn compare(check: &mut Check, subject: &str, tag: &str, a: &PartitionMatrix, b: &PartitionMatrix) {
    let d = a.dim();
    for i in 0..d {
        for j in 0..d {
            check.equal(
                subject,
                || format!("{tag} ({}, {})", a.index[i], a.index[j]),
                a.get(i, j),
                b.get(i, j),
            );
        }
    }
}

fn qs(name: &str) -> MultiPoly {
    MultiPoly::var(name)
}

/// Integer triples used for the composition law on `Π_6`.
pub const SAMPLED_TRIPLES: [(i64, i64, i64); 4] = [(0, 1, 0), (1, 0, 1), (2, -3, 5), (-1, 4, 2)];

/// `μ_{q1,q2} μ_{q2,q3} = μ_{q1,q3}` on `Π_n`, symbolic for `n <= 5` and on
/// sampled integer triples for `n = 6`.
pub fn check_composition(n: usize) -> Result<CheckReport> {
    let mut check = Check::new("mobius.composition");
    let ground = standard_ground(n);
    let subject = format!("Pi_{n}");
    if n <= 5 {
        let (q1, q2, q3) = (qs("q1"), qs("q2"), qs("q3"));
        let a = mu_q1q2_matrix(ground.clone(), &q1, &q2)?;
        let b = mu_q1q2_matrix(ground.clone(), &q2, &q3)?;
        let c = mu_q1q2_matrix(ground, &q1, &q3)?;
        compare(&mut check, &subject, "symbolic", &a.mul(&b)?, &c);
    } else {
        for (x, y, z) in SAMPLED_TRIPLES {
            let (q1, q2, q3) = (MultiPoly::int(x), MultiPoly::int(y), MultiPoly::int(z));
            let a = mu_q1q2_matrix(ground.clone(), &q1, &q2)?;
            let b = mu_q1q2_matrix(ground.clone(), &q2, &q3)?;
            let c = mu_q1q2_matrix(ground.clone(), &q1, &q3)?;
            compare(&mut check, &subject, &format!("({x},{y},{z})"), &a.mul(&b)?, &c);
        }
    }
    Ok(check.finish())
}

/// `μ_{0,1} = ζ`, `μ_{1,0} = μ`, `μ_{q,q} = I`, `ζμ = μζ = I` and triangularity on `Π_n`.
pub fn check_specializations(n: usize) -> Result<CheckReport> {
    let mut check = Check::new("mobius.specializations");
    let ground = standard_ground(n);
    let subject = format!("Pi_{n}");
    let zeta = zeta_matrix(ground.clone())?;
    let mu = classical_mu_matrix(ground.clone())?;
    let id = identity_matrix(ground.clone())?;
    let (zero, one, q) = (MultiPoly::zero(), MultiPoly::one(), qs("q"));
    let sym = mu_q1q2_matrix(ground.clone(), &qs("q1"), &qs("q2"))?;
    if sym.is_upper_triangular() {
        check.pass_instance();
    } else {
        check.fail(&subject, "triangularity".into(), MultiPoly::one());
    }
    compare(&mut check, &subject, "mu(0,1)", &mu_q1q2_matrix(ground.clone(), &zero, &one)?, &zeta);
    compare(&mut check, &subject, "mu(1,0)", &mu_q1q2_matrix(ground.clone(), &one, &zero)?, &mu);
    compare(&mut check, &subject, "mu(q,q)", &mu_q1q2_matrix(ground, &q, &q)?, &id);
    compare(&mut check, &subject, "zeta*mu", &zeta.mul(&mu)?, &id);
    compare(&mut check, &subject, "mu*zeta", &mu.mul(&zeta)?, &id);
    Ok(check.finish())
}

/// `Σ_{ω ∈ Π_m} r^{(|ω|)} ∏_B s^{(|B|)} = (rs)^{(m)}` with falling factorials, `1 <= m <= m_max`.
pub fn check_lemma_partitions(m_max: u32) -> Result<CheckReport> {
    if m_max > MAX_LEMMA_M {
        return Err(Error::Resource(format!("the partition lemma is capped at m = {MAX_LEMMA_M}")));
    }
    let mut check = Check::new("mobius.lemma");
    let (r, s) = (qs("r"), qs("s"));
    let s_ff: Vec<MultiPoly> = (0..=m_max).map(|k| falling_factorial(&s, k)).collect();
    let r_ff: Vec<MultiPoly> = (0..=m_max).map(|k| falling_factorial(&r, k)).collect();
    for m in 1..=m_max {
        let lhs: MultiPoly = enumerate_partitions(standard_ground(m as usize))
            .map(|w| {
                let prod: MultiPoly = w.block_sizes().iter().map(|&b| s_ff[b].clone()).product();
                &r_ff[w.num_blocks()] * &prod
            })
            .sum();
        let rhs = falling_factorial(&(&r * &s), m);
        check.equal("Pi_m", || format!("m={m}"), &lhs, &rhs);
    }
    Ok(check.finish())
}

/// `Σ_{π ∈ Π_m} μ(0̂, π) q^{|π|} = q^{(m)}` falling, `1 <= m <= m_max`.
pub fn check_rota(m_max: u32) -> Result<CheckReport> {
    let mut check = Check::new("mobius.rota");
    let q = qs("q");
    let (one, zero) = (MultiPoly::one(), MultiPoly::zero());
    for m in 1..=m_max {
        let ground = standard_ground(m as usize);
        let bottom = SetPartition::singletons(ground.clone());
        let lhs: MultiPoly = enumerate_partitions(ground)
            .map(|p| &mu_entry(&bottom, &p, &one, &zero) * &q.pow(p.num_blocks() as u32))
            .sum();
        check.equal("Pi_m", || format!("m={m}"), &lhs, &falling_factorial(&q, m));
    }
    Ok(check.finish())
}

/// `r^{|σ|} μ_{q1,q2}(σ,π) = μ_{r q1, r q2}(σ,π) r^{|π|}` on `Π_n`.
pub fn check_diag_conjugation(n: usize, r: &Var) -> Result<CheckReport> {
    let mut check = Check::new("mobius.conjugation");
    let ground = standard_ground(n);
    let rp = MultiPoly::from_var(r);
    let (q1, q2) = (qs("q1"), qs("q2"));
    let a = mu_q1q2_matrix(ground.clone(), &q1, &q2)?;
    let b = mu_q1q2_matrix(ground, &(&rp * &q1), &(&rp * &q2))?;
    let d = a.dim();
    for i in 0..d {
        for j in 0..d {
            let left = &rp.pow(a.index[i].num_blocks() as u32) * a.get(i, j);
            let right = b.get(i, j) * &rp.pow(a.index[j].num_blocks() as u32);
            check.equal(&format!("Pi_{n}"), || format!("({}, {})", a.index[i], a.index[j]), &left, &right);
        }
    }
    Ok(check.finish())
}

/// `F_q(π) = ∏_B Ẑ_{G[B]}(q)` over all partitions of `V`, in the variable `q`.
fn coherent_row(g: &MultiGraph, tables: &InducedTables) -> Vec<MultiPoly> {
    enumerate_partitions(Arc::new(g.vertices().to_vec()))
        .map(|p| p.block_masks().iter().map(|&b| tables.zhat[b as usize].clone()).product())
        .collect()
}

/// `F_{q1} μ_{q1,q2} = F_{q2}` as row vectors, for `F_q(π) = ∏_B Ẑ_{G[B]}(q)`.
pub fn check_coherent_family(g: &MultiGraph) -> Result<CheckReport> {
    if !g.is_loopless() {
        return Err(Error::Domain(format!("{} has a loop", g.fingerprint())));
    }
    let mut check = Check::new("mobius.coherent");
    check.on_graph(g.fingerprint());
    let tables = InducedTables::new(g)?;
    let row = coherent_row(g, &tables);
    let (q1, q2) = (qs("q1"), qs("q2"));
    let qv = tutte::q();
    let f1: Vec<MultiPoly> = row.iter().map(|p| p.substitute(&qv, &q1)).collect();
    let f2: Vec<MultiPoly> = row.iter().map(|p| p.substitute(&qv, &q2)).collect();
    let mu = mu_q1q2_matrix(Arc::new(g.vertices().to_vec()), &q1, &q2)?;
    for j in 0..mu.dim() {
        let mut lhs = MultiPoly::zero();
        for (i, f) in f1.iter().enumerate() {
            let m = mu.get(i, j);
            if !m.is_zero() {
                lhs += &(f * m);
            }
        }
        check.equal(&g.fingerprint(), || format!("pi={}", mu.index[j]), &lhs, &f2[j]);
    }
    Ok(check.finish())
}

/// Graph-free Möbius checks up to `n_max` (composition symbolic to 5, Rota to 7).
pub fn mobius_suite(n_max: usize) -> Result<Vec<CheckReport>> {
    let mut comp = Check::new("mobius.composition").finish();
    let mut spec = Check::new("mobius.specializations").finish();
    for n in 1..=n_max.min(5) {
        comp.absorb(check_composition(n)?);
        spec.absorb(check_specializations(n)?);
    }
    Ok(vec![
        comp,
        spec,
        check_lemma_partitions((n_max as u32 + 1).min(6))?,
        check_rota((n_max as u32 + 2).min(7))?,
        check_diag_conjugation(n_max.min(4), &Var::new("r"))?,
    ])
}

/// `μ_{q1,q2}` with fresh symbols, for display.
pub fn symbolic_mu(n: usize) -> Result<PartitionMatrix> {
    mu_q1q2_matrix(standard_ground(n), &qs("q1"), &qs("q2"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::families::{complete, cycle};

    #[test]
    fn small_entries() {
        let m = symbolic_mu(2).unwrap();
        assert_eq!(m.get(1, 0).to_string(), "-q1 + q2");
        assert!(m.get(0, 1).is_zero());
        let m3 = symbolic_mu(3).unwrap();
        let top = m3.get(4, 0);
        let at = top
            .substitute(&Var::new("q1"), &MultiPoly::one())
            .substitute(&Var::new("q2"), &MultiPoly::zero());
        assert_eq!(at.to_string(), "2");
        for i in 0..m3.dim() {
            assert!(m3.get(i, i).is_one());
        }
        assert!(matches!(symbolic_mu(7), Err(Error::Resource(_))));
    }

    #[test]
    fn checks_pass() {
        for n in 1..=4 {
            assert!(check_composition(n).unwrap().passed());
            assert!(check_specializations(n).unwrap().passed());
        }
        assert!(check_lemma_partitions(5).unwrap().passed());
        assert!(check_rota(6).unwrap().passed());
        assert!(check_diag_conjugation(3, &Var::new("r")).unwrap().passed());
        assert!(check_coherent_family(&complete(2)).unwrap().passed());
        assert!(check_coherent_family(&cycle(4)).unwrap().passed());
    }
}

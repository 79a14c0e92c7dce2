//! Graph-level identity checks and the suite runner.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::binomial::{self, BinomialFamily, ClassicName, CoeffSequence};
use crate::complete;
use crate::error::{Error, Result};
use crate::exactalg::combin::factorial;
use crate::exactalg::{falling_factorial, rat, MultiPoly, Rational, TruncatedSeries, Truncation, Var};
use crate::graphs::{families, MultiGraph};
use crate::mobius;
use crate::partitions::{enumerate_partitions, SetPartition};
use crate::report::{Check, CheckReport};
use crate::tutte::{self, InducedTables};

/// Vertex limit for checks that sum over set partitions.
pub const MAX_PARTITION_VERTICES: usize = 7;

/// Seed for the sampled edge weights of the sign check.
pub const SIGN_SEED: u64 = 0x5eed_2008;

/// Suites in the order `all` runs them.
pub const SUITES: [&str; 12] = [
    "oracle",
    "partitions",
    "convolutions",
    "nonlinear",
    "genborgs",
    "blowup",
    "lass",
    "sign",
    "families",
    "abel",
    "mobius",
    "complete",
];

/// K_1..K_5, K_{1,3}, K_{2,3}, P_4, C_4, C_5, K_4 - e, a double edge and a
/// triangle with a loop.
pub fn default_corpus() -> Vec<MultiGraph> {
    use families::*;
    vec![
        complete(1),
        complete(2),
        complete(3),
        complete(4),
        complete(5),
        star(3),
        complete_bipartite(2, 3),
        path(4),
        cycle(4),
        cycle(5),
        k4_minus_edge(),
        double_edge(),
        triangle_with_loop(),
    ]
}

/// A graph with the polynomials of all its induced subgraphs.
#[derive(Clone, Debug)]
pub struct GraphData {
    pub graph: MultiGraph,
    pub tables: InducedTables,
}

impl GraphData {
    pub fn new(graph: &MultiGraph) -> Result<Self> {
        Ok(GraphData {
            graph: graph.clone(),
            tables: InducedTables::new(graph)?,
        })
    }

    fn full(&self) -> usize {
        self.graph.full_mask() as usize
    }

    fn fp(&self) -> String {
        self.graph.fingerprint()
    }

    fn partitions(&self) -> impl Iterator<Item = SetPartition> {
        enumerate_partitions(Arc::new(self.graph.vertices().to_vec()))
    }

    /// `∏_{e ∈ edges} (1 + v_e)` over the given edge indices.
    fn one_plus(&self, edges: &[usize]) -> MultiPoly {
        edges.iter().map(|&e| MultiPoly::one() + self.graph.weight_poly(e)).product()
    }

    /// Edges with both ends in `mask`.
    fn internal_edges(&self, mask: u64) -> Vec<usize> {
        self.graph
            .edges()
            .iter()
            .enumerate()
            .filter(|(_, e)| mask >> e.a & 1 == 1 && mask >> e.b & 1 == 1)
            .map(|(i, _)| i)
            .collect()
    }

    /// Every edge variable set to `-1`.
    fn at_minus_one(&self, p: &MultiPoly) -> MultiPoly {
        let values: BTreeMap<Var, MultiPoly> = self
            .graph
            .weight_vars()
            .into_iter()
            .map(|v| (v, MultiPoly::int(-1)))
            .collect();
        p.substitute_all(&values)
    }
}

fn qv() -> Var {
    tutte::q()
}

fn sym(name: &str) -> MultiPoly {
    MultiPoly::var(name)
}

fn at(p: &MultiPoly, value: &MultiPoly) -> MultiPoly {
    p.substitute(&qv(), value)
}

fn int_r(n: u64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn require_loopless(d: &GraphData, what: &str) -> Result<()> {
    if !d.graph.is_loopless() {
        return Err(Error::Domain(format!("{what} needs a loopless graph, got {}", d.fp())));
    }
    Ok(())
}

fn require_small(d: &GraphData, max: usize, what: &str) -> Result<()> {
    if d.graph.num_vertices() > max {
        return Err(Error::Resource(format!(
            "{what} is limited to {max} vertices, got {}",
            d.fp()
        )));
    }
    Ok(())
}

fn new_check(name: &str, d: &GraphData) -> Check {
    let mut c = Check::new(name);
    c.on_graph(d.fp());
    c
}

/// The partition formulas in `(q1, q2)` and their `q1 = 0` and `q1 = 1`
/// specializations, including the independent-partition counts.
pub fn check_partition_q1q2(d: &GraphData) -> Result<Vec<CheckReport>> {
    require_loopless(d, "partition formulas")?;
    require_small(d, MAX_PARTITION_VERTICES, "partition formulas")?;
    let t = &d.tables;
    let full = d.full();
    let fp = d.fp();
    let (q1, q2, q) = (sym("q1"), sym("q2"), sym("q"));
    let n = d.graph.num_vertices() as u32;
    let hat1: Vec<MultiPoly> = t.zhat.iter().map(|p| at(p, &q1)).collect();
    let mut alt2 = new_check("partitions.q1q2", d);
    let mut q0 = new_check("partitions.q1=0", d);
    let mut q1c = new_check("partitions.q1=1", d);
    let mut counts = new_check("partitions.independent", d);

    // ∏_{j=1}^{k-1} (q2 - j q1) for k = 0..=n
    let prefix: Vec<MultiPoly> = (0..=n).map(|k| mobius::block_factor(&q1, &q2, k)).collect();
    let (mut s_alt2, mut s_alt, mut s_q0, mut s_ff) = (MultiPoly::zero(), MultiPoly::zero(), MultiPoly::zero(), MultiPoly::zero());
    let (mut s_z1, mut s_c1, mut s_m1) = (MultiPoly::zero(), MultiPoly::zero(), MultiPoly::zero());
    let minus_one = MultiPoly::int(-1);
    for p in d.partitions() {
        let blocks = p.block_masks();
        let k = blocks.len() as u32;
        let hats: MultiPoly = blocks.iter().map(|&b| hat1[b as usize].clone()).product();
        s_alt2 += &(&prefix[k as usize] * &hats);
        s_alt += &(&(&prefix[k as usize] * &q2) * &hats);
        let cs: MultiPoly = blocks.iter().map(|&b| t.c[b as usize].clone()).product();
        s_q0 += &(&q.pow(k) * &cs);
        let z1: MultiPoly = blocks.iter().map(|&b| at(&t.z[b as usize], &MultiPoly::one())).product();
        s_ff += &(&falling_factorial(&q2, k) * &z1);
        let internal: MultiPoly = blocks.iter().map(|&b| d.one_plus(&d.internal_edges(b))).product();
        s_z1 += &(&falling_factorial(&q, k) * &internal);
        let sign = if k % 2 == 1 { Rational::one() } else { -Rational::one() };
        s_c1 += &internal.scale(&(sign * Rational::from_integer(factorial(k - 1))));
        s_m1 += &(&falling_factorial(&minus_one, k) * &internal);
    }
    alt2.equal(&fp, || "hat form".into(), &s_alt2, &at(&t.zhat[full], &q2));
    alt2.equal(&fp, || "full form".into(), &s_alt, &at(&t.z[full], &q2));
    q0.equal(&fp, || "connected sums".into(), &s_q0, &t.z[full]);
    q1c.equal(&fp, || "falling factorial at q1=1".into(), &s_ff, &at(&t.z[full], &q2));
    q1c.equal(&fp, || "internal edges".into(), &s_z1, &t.z[full]);
    q1c.equal(&fp, || "connected".into(), &s_c1, &t.c[full]);
    q1c.equal(&fp, || "q=-1".into(), &s_m1, &at(&t.z[full], &minus_one));

    // Q_G(k): partitions of V into k independent sets
    let qg = tutte::independent_partition_counts(&d.graph)?;
    let chrom = d.at_minus_one(&t.z[full]);
    let (mut p_sum, mut c_sum, mut m_sum) = (MultiPoly::zero(), Rational::from_integer(BigInt::from(0)), Rational::from_integer(BigInt::from(0)));
    for (i, count) in qg.iter().enumerate() {
        let k = i as u32 + 1;
        let c = Rational::from_integer(BigInt::from(count.clone()));
        p_sum += &falling_factorial(&q, k).scale(&c);
        let sign = if k % 2 == 1 { Rational::one() } else { -Rational::one() };
        c_sum += &sign * &Rational::from_integer(factorial(k - 1)) * &c;
        m_sum += -&sign * &Rational::from_integer(factorial(k)) * &c;
    }
    counts.equal(&fp, || "P(q)".into(), &p_sum, &chrom);
    let deriv0 = at(&chrom.derivative(&qv()), &MultiPoly::zero());
    counts.equal(&fp, || "P'(0)".into(), &MultiPoly::constant(c_sum.clone()), &deriv0);
    counts.equal(&fp, || "C(-1)".into(), &MultiPoly::constant(c_sum), &d.at_minus_one(&t.c[full]));
    counts.equal(&fp, || "P(-1)".into(), &MultiPoly::constant(m_sum), &at(&chrom, &minus_one));
    Ok(vec![alt2.finish(), q0.finish(), q1c.finish(), counts.finish()])
}

/// The subset convolutions over `W ⊆ V`, for every distinguished vertex.
pub fn check_convolution_props(d: &GraphData) -> Result<Vec<CheckReport>> {
    require_loopless(d, "convolution formulas")?;
    let t = &d.tables;
    let full = d.full();
    let fp = d.fp();
    let n = d.graph.num_vertices();
    let (q1, q2, q) = (sym("q1"), sym("q2"), sym("q"));
    let sum = &q1 + &q2;
    let z1: Vec<MultiPoly> = t.z.iter().map(|p| at(p, &q1)).collect();
    let z2: Vec<MultiPoly> = t.z.iter().map(|p| at(p, &q2)).collect();
    let h1: Vec<MultiPoly> = t.zhat.iter().map(|p| at(p, &q1)).collect();
    let mut c0 = new_check("convolutions.lin0", d);
    let mut c1 = new_check("convolutions.lin1", d);
    let mut c2 = new_check("convolutions.lin2", d);
    let mut c2a = new_check("convolutions.lin2a", d);

    let lin0: MultiPoly = (0..=full).map(|w| &z1[w] * &z2[full ^ w]).sum();
    c0.equal(&fp, String::new, &lin0, &at(&t.z[full], &sum));
    for i in 0..n {
        let with_i = || (0..=full).filter(move |w| w >> i & 1 == 1);
        let lin1: MultiPoly = with_i().map(|w| &h1[w] * &z2[full ^ w]).sum();
        c1.equal(&fp, || format!("i={}", d.graph.vertices()[i]), &lin1, &at(&t.zhat[full], &sum));
        let lin2: MultiPoly = with_i().map(|w| &q * &(&t.c[w] * &t.z[full ^ w])).sum();
        c2.equal(&fp, || format!("i={}", d.graph.vertices()[i]), &lin2, &t.z[full]);
    }
    let lin2a: MultiPoly = (1..=full)
        .map(|w| {
            let size = (w as u64).count_ones() as u64;
            let coef = sum.scale(&int_r(size)) - q1.scale(&int_r(n as u64));
            &coef * &(&h1[w] * &z2[full ^ w])
        })
        .sum();
    c2a.equal(&fp, String::new, &lin2a, &z2[full].scale(&int_r(n as u64)));
    Ok(vec![c0.finish(), c1.finish(), c2.finish(), c2a.finish()])
}

/// The nonlinear identity for one ordered pair `i != j`, and its `q = 0` case.
pub fn check_nonlinear(d: &GraphData, i: usize, j: usize) -> Result<CheckReport> {
    let n = d.graph.num_vertices();
    if i >= n || j >= n || i == j {
        return Err(Error::Domain(format!("need distinct vertices, got {i} and {j}")));
    }
    let t = &d.tables;
    let full = d.full();
    let fp = d.fp();
    let q = sym("q");
    let mut check = new_check("nonlinear", d);
    let (mut z, mut c) = (MultiPoly::zero(), MultiPoly::zero());
    for w in (0..=full).filter(|w| w >> i & 1 == 1 && w >> j & 1 == 0) {
        let boundary = d.one_plus(&d.graph.edge_boundary(w as u64, j)?);
        let weight = &(&q - &MultiPoly::one()) + &boundary;
        z += &(&weight * &(&t.c[w] * &t.z[full ^ w]));
        c += &(&(&boundary - &MultiPoly::one()) * &(&t.c[w] * &t.c[full ^ w]));
    }
    let names = d.graph.vertices();
    check.equal(&fp, || format!("i={} j={}", names[i], names[j]), &z, &t.z[full]);
    check.equal(&fp, || format!("q=0 i={} j={}", names[i], names[j]), &c, &t.c[full]);
    Ok(check.finish())
}

/// The expansion of `Ẑ_G` over partitions of `V \ {j}`, and its `q = 0` case.
pub fn check_genborgs(d: &GraphData, j: usize) -> Result<CheckReport> {
    if d.graph.has_loop_at(j) {
        return Err(Error::Domain(format!("loop at vertex {}", d.graph.vertices()[j])));
    }
    require_small(d, MAX_PARTITION_VERTICES, "the partition expansion")?;
    let t = &d.tables;
    let full = d.full();
    let fp = d.fp();
    let q = sym("q");
    let mut check = new_check("genborgs", d);
    let ground: Vec<String> = d
        .graph
        .vertices()
        .iter()
        .enumerate()
        .filter(|(k, _)| *k != j)
        .map(|(_, v)| v.clone())
        .collect();
    let (mut zh, mut c) = (MultiPoly::zero(), MultiPoly::zero());
    for p in enumerate_partitions(Arc::new(ground)) {
        let mut term_z = MultiPoly::one();
        let mut term_c = MultiPoly::one();
        for b in tutte::blocks_in(&d.graph, &p) {
            let boundary = d.one_plus(&d.graph.edge_boundary(b, j)?);
            let cb = &t.c[b as usize];
            term_z = &term_z * &(&(&(&q - &MultiPoly::one()) + &boundary) * cb);
            term_c = &term_c * &(&(&boundary - &MultiPoly::one()) * cb);
        }
        zh += &term_z;
        c += &term_c;
    }
    let name = &d.graph.vertices()[j];
    check.equal(&fp, || format!("j={name}"), &zh, &t.zhat[full]);
    check.equal(&fp, || format!("q=0 j={name}"), &c, &t.c[full]);
    Ok(check.finish())
}

/// `P_{G[W]}(q) = [x^{1_W}] I_G(x)^q` for every `W ⊆ V`.
pub fn check_lass(d: &GraphData) -> Result<CheckReport> {
    require_loopless(d, "the independent-set formula")?;
    let mut check = new_check("lass", d);
    let powered = tutte::independence_poly(&d.graph)?.pow_symbolic(&sym("q"))?;
    let fp = d.fp();
    for w in 0..=d.full() {
        let lhs = tutte::lass_coefficient(&d.graph, &powered, w as u64)?;
        let rhs = d.at_minus_one(&d.tables.z[w]);
        check.equal(&fp, || format!("W={w:b}"), &lhs, &rhs);
    }
    Ok(check.finish())
}

/// Coloring sums against the subset expansion at `q = 1..=4`, `Z(1) = ∏(1+v_e)`,
/// and the spanning-tree count at `λ = 0`, `v = 1`.
pub fn check_oracle(g: &MultiGraph) -> Result<CheckReport> {
    let mut check = Check::new("oracle");
    check.on_graph(g.fingerprint());
    let fp = g.fingerprint();
    let z = tutte::z_subset(g)?;
    for colors in 1..=4u32 {
        let lhs = tutte::z_coloring(g, colors)?;
        let rhs = at(&z, &MultiPoly::int(colors as i64));
        check.equal(&fp, || format!("q={colors}"), &lhs, &rhs);
    }
    let all: Vec<usize> = (0..g.num_edges()).collect();
    let prod: MultiPoly = all.iter().map(|&e| MultiPoly::one() + g.weight_poly(e)).product();
    check.equal(&fp, || "q=1".into(), &at(&z, &MultiPoly::one()), &prod);
    if g.num_vertices() > 0 {
        let ones: BTreeMap<Var, MultiPoly> = g
            .weight_vars()
            .into_iter()
            .map(|v| (v, MultiPoly::one()))
            .chain([(tutte::lambda(), MultiPoly::zero())])
            .collect();
        let trees = tutte::connected_lambda(g)?.substitute_all(&ones);
        if g.edges().iter().all(|e| matches!(e.weight, crate::graphs::Weight::Var(_))) {
            let kirchhoff = MultiPoly::constant(Rational::from_integer(tutte::spanning_tree_count(g)));
            check.equal(&fp, || "spanning trees".into(), &trees, &kirchhoff);
        }
    }
    Ok(check.finish())
}

/// Edge-weight values sampled by the sign check.
pub fn sign_weight_values() -> [Rational; 4] {
    [rat(-1, 1), rat(-3, 4), rat(-1, 2), rat(-1, 4)]
}

/// `λ ∈ {0, 1/4, 1/2, 3/4, 1}`.
pub fn sign_grid() -> Vec<Rational> {
    (0..=4).map(|k| rat(k, 4)).collect()
}

/// The sign pattern of `λ`-derivatives of `C_G(v, λ)` for `samples` weight
/// vectors drawn with a fixed seed, plus the all-equal vectors.
pub fn check_sign(g: &MultiGraph, samples: usize) -> Result<CheckReport> {
    let mut check = Check::new("sign");
    check.on_graph(g.fingerprint());
    if g.num_vertices() == 0 {
        return Ok(check.finish());
    }
    let values = sign_weight_values();
    let mut rng = ChaCha8Rng::seed_from_u64(SIGN_SEED ^ g.fingerprint().len() as u64);
    let mut vectors: Vec<Vec<Rational>> = values.iter().map(|x| vec![x.clone(); g.num_edges()]).collect();
    for _ in 0..samples {
        vectors.push((0..g.num_edges()).map(|_| values.choose(&mut rng).expect("nonempty").clone()).collect());
    }
    for v in vectors {
        check.absorb(tutte::check_sign_inequality(g, &v, 4, &sign_grid())?);
    }
    Ok(check.finish())
}

/// Coefficients of the lattice-gas series raised to `q` against brute-force
/// `Z` of `G[n]` and `G'[n]` for every `n <= caps`.
pub fn check_blowup_genfn(g: &MultiGraph, caps: &[u32]) -> Result<CheckReport> {
    if caps.len() != g.num_vertices() {
        return Err(Error::Structural(format!("{} caps for {} vertices", caps.len(), g.num_vertices())));
    }
    if !g.is_simple() {
        return Err(Error::Domain(format!("blow-ups need a simple graph, got {}", g.fingerprint())));
    }
    let mut check = Check::new("blowup");
    check.on_graph(g.fingerprint());
    let vars = tutte::vertex_series_vars(g);
    let trunc = Truncation::PerVar(caps.to_vec());
    let edge_part = |n: &[u32]| -> MultiPoly {
        g.edges()
            .iter()
            .enumerate()
            .map(|(e, edge)| (MultiPoly::one() + g.weight_poly(e)).pow(n[edge.a] * n[edge.b]))
            .product()
    };
    let w_part = |n: &[u32]| -> MultiPoly {
        g.vertices()
            .iter()
            .zip(n)
            .map(|(v, &k)| (MultiPoly::one() + sym(&format!("w:{v}"))).pow(k * k.saturating_sub(1) / 2))
            .product()
    };
    let plain = TruncatedSeries::from_egf(vars.clone(), trunc.clone(), edge_part)?.pow_symbolic(&sym("q"))?;
    let cliques = TruncatedSeries::from_egf(vars, trunc, |n| &edge_part(n) * &w_part(n))?.pow_symbolic(&sym("q"))?;
    let fp = g.fingerprint();
    for n in crate::exactalg::combin::multi_indices_upto(caps) {
        let tag = n.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        let gi = g.blowup_independent(&n)?;
        check.equal(&fp, || format!("G[{tag}]"), &plain.egf_coeff(&n)?, &tutte::z_subset(&gi)?);
        let gc = g.blowup_clique(&n)?;
        check.equal(&fp, || format!("G'[{tag}]"), &cliques.egf_coeff(&n)?, &tutte::z_subset(&gc)?);
    }
    Ok(check.finish())
}

/// Chromatic polynomials of `K_{n1,n2}` against `(e^x + e^y - 1)^q`.
pub fn check_bipartite_chromatic(caps: (u32, u32)) -> Result<CheckReport> {
    let mut check = Check::new("blowup.chromatic");
    let k2 = families::complete(2);
    check.on_graph(k2.fingerprint());
    let vars = vec![Var::new("x"), Var::new("y")];
    let trunc = Truncation::PerVar(vec![caps.0, caps.1]);
    let gen = |m: &[u32]| -> TruncatedSeries {
        let mut s = TruncatedSeries::zero(vars.clone(), trunc.clone()).expect("two variables");
        s.set(m.to_vec(), MultiPoly::one());
        s.exp().expect("zero constant term")
    };
    let base = gen(&[1, 0])
        .add(&gen(&[0, 1]))?
        .sub(&TruncatedSeries::constant(vars.clone(), trunc.clone(), MultiPoly::one())?)?;
    let powered = base.pow_symbolic(&sym("q"))?;
    for n1 in 0..=caps.0 {
        for n2 in 0..=caps.1 {
            let g = families::complete_bipartite(n1 as usize, n2 as usize);
            let rhs = tutte::chromatic(&g)?;
            check.equal("K_2", || format!("K_{{{n1},{n2}}}"), &powered.egf_coeff(&[n1, n2])?, &rhs);
        }
    }
    Ok(check.finish())
}

/// Options shared by the suites.
#[derive(Clone, Debug, Default)]
pub struct SuiteOptions {
    /// Overrides each suite's default size (families 6, mobius 5, complete 10).
    pub max_n: Option<u32>,
}

fn merge_by_name(parts: Vec<Vec<CheckReport>>) -> Vec<CheckReport> {
    let mut out: Vec<CheckReport> = Vec::new();
    for r in parts.into_iter().flatten() {
        match out.iter_mut().find(|o| o.check == r.check) {
            Some(o) => o.absorb(r),
            None => out.push(r),
        }
    }
    out
}

fn per_graph<F>(corpus: &[MultiGraph], keep: impl Fn(&MultiGraph) -> bool, f: F) -> Result<Vec<CheckReport>>
where
    F: Fn(&GraphData) -> Result<Vec<CheckReport>> + Sync,
{
    let chosen: Vec<&MultiGraph> = corpus.iter().filter(|g| keep(g)).collect();
    let parts = chosen
        .par_iter()
        .map(|g| f(&GraphData::new(g)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(merge_by_name(parts))
}

/// A random coefficient sequence with small integer-polynomial entries in `v`.
pub fn random_sequence(rng: &mut ChaCha8Rng, cap: Vec<u32>) -> Result<CoeffSequence> {
    use rand::Rng;
    let v = sym("v");
    let mut entries = BTreeMap::new();
    for n in crate::exactalg::combin::multi_indices_upto(&cap) {
        if n.iter().all(|&x| x == 0) {
            continue;
        }
        let a: i64 = rng.gen_range(-3..=3);
        let b: i64 = rng.gen_range(-2..=2);
        entries.insert(n, MultiPoly::int(a) + v.scale(&Rational::from_integer(BigInt::from(b))));
    }
    CoeffSequence::new(cap, entries)
}

/// Seed for the random coefficient sequences of the families suite.
pub const FAMILY_SEED: u64 = 0x0fa1_11e5;

/// The classical table, the complete-graph family and the `K_2` blow-up family.
pub fn named_families(cap: u32) -> Result<Vec<BinomialFamily>> {
    let mut out = Vec::new();
    for name in [
        ClassicName::Exp,
        ClassicName::Affine(Rational::one(), Rational::one()),
        ClassicName::Geometric,
        ClassicName::Affine(rat(2, 1), rat(-1, 3)),
        ClassicName::Bell,
        ClassicName::Laguerre,
    ] {
        out.push(binomial::classic_family(&name, cap)?);
    }
    out.push(binomial::complete_graph_family(cap)?);
    Ok(out)
}

fn families_suite(n: u32) -> Result<Vec<CheckReport>> {
    let mut parts = Vec::new();
    let fams = named_families(n)?;
    let bip = binomial::bipartite_family((n.min(3), n.min(3)))?;
    parts.push(
        fams.par_iter()
            .chain([&bip].into_par_iter())
            .map(|f| {
                Ok(vec![
                    binomial::check_convolutions(f, n)?,
                    binomial::check_power_expansion(f, n.min(5))?,
                    binomial::check_generating_function(f)?,
                ])
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect::<Vec<_>>(),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(FAMILY_SEED);
    let mut trips = Vec::new();
    for k in 0..3 {
        let c = random_sequence(&mut rng, vec![n])?;
        trips.push((c, format!("random1d#{k}")));
        let c2 = random_sequence(&mut rng, vec![n.min(3), n.min(3)])?;
        trips.push((c2, format!("random2d#{k}")));
    }
    parts.push(
        trips
            .par_iter()
            .map(|(c, name)| {
                let f = BinomialFamily::from_connected(c).named(name.clone());
                Ok(vec![
                    binomial::check_round_trip(c, name)?,
                    binomial::check_convolutions(&f, n)?,
                    binomial::check_generating_function(&f)?,
                ])
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect(),
    );
    Ok(merge_by_name(parts))
}

fn abel_suite(n: u32) -> Result<Vec<CheckReport>> {
    let fams = named_families(n)?;
    let bip = binomial::bipartite_family((n.min(3), n.min(3)))?;
    let mut parts: Vec<Vec<CheckReport>> = fams
        .par_iter()
        .map(|f| Ok(vec![binomial::check_abel(f, n)?, binomial::check_knuth(f, n)?]))
        .collect::<Result<_>>()?;
    parts.push(vec![binomial::check_abel(&bip, n)?]);
    Ok(merge_by_name(parts))
}

/// Runs one suite (or `all`) over a corpus. Reports come back in a fixed order.
pub fn run_suite(corpus: &[MultiGraph], suite: &str, opts: &SuiteOptions) -> Result<Vec<CheckReport>> {
    let loopless = |g: &MultiGraph| g.is_loopless();
    match suite {
        "all" => {
            let mut out = Vec::new();
            for s in SUITES {
                out.extend(run_suite(corpus, s, opts)?);
            }
            Ok(out)
        }
        "oracle" => per_graph(
            corpus,
            |g| g.is_loopless() && g.num_vertices() <= 5 && g.num_edges() <= 8,
            |d| Ok(vec![check_oracle(&d.graph)?]),
        ),
        "partitions" => per_graph(
            corpus,
            |g| g.is_loopless() && g.num_vertices() <= MAX_PARTITION_VERTICES,
            check_partition_q1q2,
        ),
        "convolutions" => per_graph(corpus, loopless, check_convolution_props),
        "nonlinear" => per_graph(
            corpus,
            |g| g.num_vertices() >= 2,
            |d| {
                let n = d.graph.num_vertices();
                let mut out = Vec::new();
                for i in 0..n {
                    for j in (0..n).filter(|&j| j != i) {
                        out.push(check_nonlinear(d, i, j)?);
                    }
                }
                Ok(merge_by_name(vec![out]))
            },
        ),
        "genborgs" => per_graph(
            corpus,
            |g| g.num_vertices() >= 1 && g.num_vertices() <= MAX_PARTITION_VERTICES,
            |d| {
                let mut out = Vec::new();
                for j in (0..d.graph.num_vertices()).filter(|&j| !d.graph.has_loop_at(j)) {
                    out.push(check_genborgs(d, j)?);
                }
                Ok(merge_by_name(vec![out]))
            },
        ),
        "blowup" => {
            let k1 = families::complete(1);
            let k2 = families::complete(2);
            let n = opts.max_n.unwrap_or(4).min(4);
            let mut a = check_blowup_genfn(&k1, &[n])?;
            a.absorb(check_blowup_genfn(&k2, &[n.min(2), n.min(2)])?);
            Ok(vec![a, check_bipartite_chromatic((n.min(3), n.min(3)))?])
        }
        "lass" => per_graph(
            corpus,
            |g| g.is_loopless() && g.num_vertices() <= 6,
            |d| Ok(vec![check_lass(d)?]),
        ),
        "sign" => {
            let parts = corpus
                .par_iter()
                .map(|g| Ok(vec![check_sign(g, 3)?]))
                .collect::<Result<Vec<_>>>()?;
            Ok(merge_by_name(parts))
        }
        "families" => families_suite(opts.max_n.unwrap_or(6).clamp(1, 6)),
        "abel" => abel_suite(opts.max_n.unwrap_or(6).clamp(1, 6)),
        "mobius" => {
            let mut out = mobius::mobius_suite(opts.max_n.unwrap_or(5).clamp(1, 5) as usize)?;
            out.extend(per_graph(
                corpus,
                |g| g.is_loopless() && g.num_vertices() <= 5,
                |d| Ok(vec![mobius::check_coherent_family(&d.graph)?]),
            )?);
            Ok(out)
        }
        "complete" => complete::complete_suite(opts.max_n.unwrap_or(10).clamp(1, 10)),
        other => Err(Error::Usage(format!(
            "unknown suite {other:?}; expected one of {} or all",
            SUITES.join(", ")
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::families::*;

    fn data(g: &MultiGraph) -> GraphData {
        GraphData::new(g).unwrap()
    }

    #[test]
    fn graph_checks_on_small_graphs() {
        for g in [complete(1), complete(2), complete(3), cycle(4), star(3), double_edge()] {
            let d = data(&g);
            for r in check_partition_q1q2(&d).unwrap() {
                assert!(r.passed(), "{}", r.to_line());
            }
            for r in check_convolution_props(&d).unwrap() {
                assert!(r.passed(), "{}", r.to_line());
            }
            assert!(check_lass(&d).unwrap().passed());
            assert!(check_oracle(&g).unwrap().passed());
        }
        let d = data(&triangle_with_loop());
        assert!(check_nonlinear(&d, 0, 1).unwrap().passed());
        assert!(check_nonlinear(&d, 1, 0).unwrap().passed());
        assert!(check_genborgs(&d, 1).unwrap().passed());
        assert!(check_genborgs(&d, 0).is_err());
        assert!(check_partition_q1q2(&d).is_err());
    }

    #[test]
    fn corrupted_table_is_caught() {
        let mut d = data(&complete(3));
        d.tables.z[0b011] = d.tables.z[0b011].clone() + MultiPoly::var("q");
        let reports = check_convolution_props(&d).unwrap();
        let failed: Vec<_> = reports.iter().filter(|r| !r.passed()).collect();
        assert!(!failed.is_empty());
        assert!(!failed[0].witness.as_ref().unwrap().residual.is_zero());
    }

    #[test]
    fn blowups() {
        assert!(check_blowup_genfn(&complete(1), &[3]).unwrap().passed());
        assert!(check_blowup_genfn(&complete(2), &[1, 2]).unwrap().passed());
        assert!(check_bipartite_chromatic((2, 2)).unwrap().passed());
        assert!(check_blowup_genfn(&double_edge(), &[1, 1]).is_err());
    }

    #[test]
    fn suite_runner() {
        assert!(matches!(run_suite(&[], "bogus", &SuiteOptions::default()), Err(Error::Usage(_))));
        assert!(run_suite(&[], "partitions", &SuiteOptions::default()).unwrap().is_empty());
        let corpus = vec![complete(3), triangle_with_loop()];
        let r = run_suite(&corpus, "genborgs", &SuiteOptions::default()).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].graphs.len(), 2);
        assert!(r[0].passed());
    }
}

//! Subset expansions of the multivariate Tutte polynomial and its relatives.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result, MAX_BRUTE_EDGES_ENV};
use crate::exactalg::{int, Monomial, MultiPoly, Rational, TruncatedSeries, Truncation, Var};
use crate::graphs::{MultiGraph, Weight};
use crate::partitions::{enumerate_partitions, SetPartition};
use crate::report::{Check, CheckReport};

pub const DEFAULT_MAX_BRUTE_EDGES: usize = 24;

/// Colorings beyond this many are refused by [`z_coloring`].
pub const MAX_COLORINGS: u64 = 1 << 24;

/// Subsets per parallel chunk.
const CHUNK: u64 = 1 << 12;

pub fn q() -> Var {
    Var::new("q")
}

pub fn lambda() -> Var {
    Var::new("lambda")
}

/// Current brute-force edge cap, from the environment or the default.
pub fn max_brute_edges() -> usize {
    std::env::var(MAX_BRUTE_EDGES_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_BRUTE_EDGES)
}

fn check_cap(g: &MultiGraph) -> Result<()> {
    let cap = max_brute_edges().min(63);
    if g.num_edges() > cap {
        return Err(Error::Resource(format!(
            "{} has {} edges, above the brute-force cap of {cap} (set {MAX_BRUTE_EDGES_ENV} to raise it)",
            g.fingerprint(),
            g.num_edges()
        )));
    }
    Ok(())
}

/// Sums `f(k(A), A)` as polynomial terms over all edge subsets `A`, where the
/// callback decides which subsets contribute and with what extra exponent.
fn subset_sum<F>(g: &MultiGraph, keep: F) -> Result<MultiPoly>
where
    F: Fn(usize, u32) -> Option<(Var, u32)> + Sync,
{
    check_cap(g)?;
    let m = g.num_edges();
    let total: u64 = 1 << m;
    let weights: Vec<&Weight> = g.edges().iter().map(|e| &e.weight).collect();
    let chunks = total.div_ceil(CHUNK);
    let partial = |lo: u64, hi: u64| {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for i in lo..hi {
            // Gray-code order
            let mask = i ^ (i >> 1);
            let k = g.components_of_mask(mask);
            let size = mask.count_ones();
            let Some(extra) = keep(k, size) else { continue };
            let mut coef = Rational::one();
            let mut pairs = vec![extra];
            let mut bits = mask;
            while bits != 0 {
                let e = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                match weights[e] {
                    Weight::Var(v) => pairs.push((v.clone(), 1)),
                    Weight::Const(c) => coef *= c,
                }
            }
            if coef.is_zero() {
                continue;
            }
            *acc.entry(Monomial::from_pairs(pairs)).or_insert_with(Rational::zero) += coef;
        }
        acc
    };
    let maps: Vec<HashMap<Monomial, Rational>> = if chunks > 1 {
        (0..chunks)
            .into_par_iter()
            .map(|c| partial(c * CHUNK, ((c + 1) * CHUNK).min(total)))
            .collect()
    } else {
        vec![partial(0, total)]
    };
    let mut merged: BTreeMap<Monomial, Rational> = BTreeMap::new();
    for map in maps {
        for (mono, c) in map {
            *merged.entry(mono).or_insert_with(Rational::zero) += c;
        }
    }
    let out = MultiPoly::from_terms(merged);
    // integer weights give integer coefficients
    debug_assert!(
        !weights.iter().all(|w| matches!(w, Weight::Var(_)) || matches!(w, Weight::Const(c) if c.is_integer()))
            || out.is_integral(),
        "non-integral subset sum for {}",
        g.fingerprint()
    );
    Ok(out)
}

/// `Z_G(q, v) = Σ_A q^{k(A)} ∏_{e∈A} v_e`.
pub fn z_subset(g: &MultiGraph) -> Result<MultiPoly> {
    let qv = q();
    subset_sum(g, |k, _| Some((qv.clone(), k as u32)))
}

/// `Z_G / q`.
pub fn zhat(g: &MultiGraph) -> Result<MultiPoly> {
    if g.num_vertices() == 0 {
        return Err(Error::Domain("Ẑ of the empty graph is undefined".into()));
    }
    z_subset(g)?.div_var_exact(&q())
}

/// Generating polynomial of connected spanning subgraphs, `Ẑ_G(0, v)`.
pub fn connected_poly(g: &MultiGraph) -> Result<MultiPoly> {
    if g.num_vertices() == 0 {
        return Err(Error::Domain("C of the empty graph is undefined".into()));
    }
    let qv = q();
    subset_sum(g, |k, _| (k == 1).then(|| (qv.clone(), 0)))
}

/// `Σ_{A connected} λ^{|A|-|V|+1} ∏ v_e`.
pub fn connected_lambda(g: &MultiGraph) -> Result<MultiPoly> {
    if g.num_vertices() == 0 {
        return Err(Error::Domain("C of the empty graph is undefined".into()));
    }
    let n = g.num_vertices() as u32;
    let l = lambda();
    subset_sum(g, |k, size| (k == 1).then(|| (l.clone(), size + 1 - n)))
}

/// Chromatic polynomial `Z_G(q, -1)`.
pub fn chromatic(g: &MultiGraph) -> Result<MultiPoly> {
    z_subset(&g.with_uniform_weight(Weight::Const(int(-1))))
}

/// Fortuin–Kasteleyn side: `Σ_σ ∏_{e=ij} (1 + v_e δ(σ_i, σ_j))` over all `q`-colorings.
pub fn z_coloring(g: &MultiGraph, colors: u32) -> Result<MultiPoly> {
    if colors == 0 {
        return Err(Error::Domain("the number of colors must be positive".into()));
    }
    check_cap(g)?;
    let n = g.num_vertices() as u32;
    let count = (colors as u64).checked_pow(n).filter(|&c| c <= MAX_COLORINGS).ok_or_else(|| {
        Error::Resource(format!(
            "{colors}^{n} colorings of {} exceed the enumeration limit {MAX_COLORINGS}",
            g.fingerprint()
        ))
    })?;
    // group colorings by the set of monochromatic edges
    let mut by_mask: BTreeMap<u64, u64> = BTreeMap::new();
    let mut sigma = vec![0u32; n as usize];
    for idx in 0..count {
        let mut x = idx;
        for s in sigma.iter_mut() {
            *s = (x % colors as u64) as u32;
            x /= colors as u64;
        }
        let mut mask = 0u64;
        for (i, e) in g.edges().iter().enumerate() {
            if sigma[e.a] == sigma[e.b] {
                mask |= 1 << i;
            }
        }
        *by_mask.entry(mask).or_insert(0) += 1;
    }
    let mut out = MultiPoly::zero();
    for (mask, c) in by_mask {
        let mut term = MultiPoly::constant(Rational::from_integer(BigInt::from(c)));
        for i in 0..g.num_edges() {
            if mask >> i & 1 == 1 {
                term = &term * &(MultiPoly::one() + g.weight_poly(i));
            }
        }
        out += &term;
    }
    Ok(out)
}

fn require_loopless(g: &MultiGraph, what: &str) -> Result<()> {
    if !g.is_loopless() {
        return Err(Error::Domain(format!("{what} needs a loopless graph, got {}", g.fingerprint())));
    }
    Ok(())
}

/// True if no edge joins two vertices of the bitmask.
pub fn is_independent(g: &MultiGraph, mask: u64) -> bool {
    g.edges().iter().all(|e| !(mask >> e.a & 1 == 1 && mask >> e.b & 1 == 1))
}

/// `Q_G(k)` for `k = 1..=|V|`: partitions of `V` into `k` independent blocks.
pub fn independent_partition_counts(g: &MultiGraph) -> Result<Vec<BigUint>> {
    require_loopless(g, "independent partitions")?;
    let n = g.num_vertices();
    let mut q = vec![BigUint::zero(); n];
    for p in enumerate_partitions(Arc::new(g.vertices().to_vec())) {
        if p.block_masks().iter().all(|&b| is_independent(g, b)) {
            q[p.num_blocks() - 1] += 1u32;
        }
    }
    Ok(q)
}

/// Series variable `x:<id>` for each vertex.
pub fn vertex_series_vars(g: &MultiGraph) -> Vec<Var> {
    g.vertices().iter().map(|v| Var::new(&format!("x:{v}"))).collect()
}

/// `I_G(x) = Σ_{U independent} ∏_{i∈U} x_i`, truncated at degree 1 in each variable.
pub fn independence_poly(g: &MultiGraph) -> Result<TruncatedSeries> {
    require_loopless(g, "independence polynomial")?;
    let n = g.num_vertices();
    let mut s = TruncatedSeries::zero(vertex_series_vars(g), Truncation::PerVar(vec![1; n]))?;
    for mask in 0..1u64 << n {
        if is_independent(g, mask) {
            s.set((0..n).map(|i| (mask >> i & 1) as u32).collect(), MultiPoly::one());
        }
    }
    Ok(s)
}

/// `[x^{1_W}] I_G(x)^q`.
pub fn lass_chromatic(g: &MultiGraph, w: u64) -> Result<MultiPoly> {
    let powered = independence_poly(g)?.pow_symbolic(&MultiPoly::from_var(&q()))?;
    lass_coefficient(g, &powered, w)
}

pub(crate) fn lass_coefficient(g: &MultiGraph, powered: &TruncatedSeries, w: u64) -> Result<MultiPoly> {
    let m: Vec<u32> = (0..g.num_vertices()).map(|i| (w >> i & 1) as u32).collect();
    powered.extract_coeff(&m)
}

/// Number of spanning trees by the matrix-tree theorem, over exact rationals.
pub fn spanning_tree_count(g: &MultiGraph) -> BigInt {
    let n = g.num_vertices();
    if n == 0 {
        return BigInt::zero();
    }
    let mut lap = vec![vec![Rational::zero(); n]; n];
    for e in g.edges().iter().filter(|e| !e.is_loop()) {
        lap[e.a][e.a] += Rational::one();
        lap[e.b][e.b] += Rational::one();
        lap[e.a][e.b] -= Rational::one();
        lap[e.b][e.a] -= Rational::one();
    }
    // determinant of the reduced Laplacian
    let mut m: Vec<Vec<Rational>> = lap.into_iter().skip(1).map(|r| r.into_iter().skip(1).collect()).collect();
    let size = n - 1;
    let mut det = Rational::one();
    for col in 0..size {
        let Some(p) = (col..size).find(|&r| !m[r][col].is_zero()) else {
            return BigInt::zero();
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        let pivot = m[col][col].clone();
        det *= &pivot;
        for r in col + 1..size {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &pivot;
            for c in col..size {
                let sub = &f * &m[col][c];
                m[r][c] -= sub;
            }
        }
    }
    det.to_integer()
}

/// Checks `(-1)^{ℓ+|V|-1} ∂_λ^ℓ C_G(v, λ) >= 0` on a grid, for fixed rational edge weights.
pub fn check_sign_inequality(
    g: &MultiGraph,
    v: &[Rational],
    lmax: u32,
    grid: &[Rational],
) -> Result<CheckReport> {
    let lo = -Rational::one();
    if v.iter().any(|x| *x < lo || x.is_positive()) {
        return Err(Error::Domain("edge weights must lie in [-1, 0]".into()));
    }
    if grid.iter().any(|x| x.is_negative() || *x > Rational::one()) {
        return Err(Error::Domain("grid points must lie in [0, 1]".into()));
    }
    let weights: Vec<Weight> = v.iter().cloned().map(Weight::Const).collect();
    let gv = g.with_weights(&weights)?;
    let mut poly = connected_lambda(&gv)?;
    let l = lambda();
    let mut check = Check::new("sign");
    check.on_graph(g.fingerprint());
    let base_sign = (g.num_vertices() - 1) % 2;
    for ell in 0..=lmax {
        let sign = if (ell as usize + base_sign) % 2 == 0 { Rational::one() } else { -Rational::one() };
        for x in grid {
            let val = poly
                .substitute(&l, &MultiPoly::constant(x.clone()))
                .as_constant()
                .ok_or_else(|| Error::Consistency("λ-evaluation left free variables".into()))?;
            let signed = &sign * &val;
            if signed.is_negative() {
                check.fail(
                    &g.fingerprint(),
                    format!("l={ell}, lambda={}", crate::exactalg::format_rational(x)),
                    MultiPoly::constant(signed),
                );
            } else {
                check.pass_instance();
            }
        }
        poly = poly.derivative(&l);
    }
    Ok(check.finish())
}

/// `Z`, `Ẑ` and `C` of every induced subgraph `G[W]`, indexed by vertex mask.
#[derive(Clone, Debug)]
pub struct InducedTables {
    pub z: Vec<MultiPoly>,
    /// Zero at the empty mask, where `Ẑ` is undefined.
    pub zhat: Vec<MultiPoly>,
    /// Zero at the empty mask.
    pub c: Vec<MultiPoly>,
}

impl InducedTables {
    pub fn new(g: &MultiGraph) -> Result<Self> {
        let n = g.num_vertices();
        if n > 16 {
            return Err(Error::Resource(format!("{} has too many vertices for subset tables", g.fingerprint())));
        }
        check_cap(g)?;
        let rows: Vec<(MultiPoly, MultiPoly, MultiPoly)> = (0..1u64 << n)
            .into_par_iter()
            .map(|mask| {
                let h = g.induced(mask);
                let z = z_subset(&h)?;
                if mask == 0 {
                    return Ok((z, MultiPoly::zero(), MultiPoly::zero()));
                }
                let zh = z.div_var_exact(&q())?;
                let c = zh.substitute(&q(), &MultiPoly::zero());
                Ok((z, zh, c))
            })
            .collect::<Result<_>>()?;
        let mut t = InducedTables { z: Vec::new(), zhat: Vec::new(), c: Vec::new() };
        for (z, zh, c) in rows {
            t.z.push(z);
            t.zhat.push(zh);
            t.c.push(c);
        }
        Ok(t)
    }
}

/// Blocks of `p` as vertex bitmasks of `g`, for partitions over a subset of `V`.
pub fn blocks_in(g: &MultiGraph, p: &SetPartition) -> Vec<u64> {
    p.blocks()
        .iter()
        .map(|b| {
            b.iter()
                .map(|&i| 1u64 << g.vertex_index(&p.ground()[i]).expect("ground set inside V"))
                .fold(0, |a, x| a | x)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{falling_factorial, rat};
    use crate::graphs::families::*;

    fn v(name: &str) -> MultiPoly {
        MultiPoly::var(name)
    }

    #[test]
    fn small_z() {
        let k1 = complete(1);
        assert_eq!(z_subset(&k1).unwrap(), v("q"));
        let k2 = complete(2);
        assert_eq!(z_subset(&k2).unwrap().to_string(), "q^2 + q*v:0");
        assert_eq!(z_subset(&MultiGraph::edgeless(0)).unwrap(), MultiPoly::one());
        let k3 = complete(3);
        let at1 = z_subset(&k3).unwrap().substitute(&q(), &MultiPoly::one());
        let prod: MultiPoly = (0..3).map(|i| MultiPoly::one() + v(&format!("v:{i}"))).product();
        assert_eq!(at1, prod);
        assert!(z_subset(&k3).unwrap().is_integral());
    }

    #[test]
    fn connected() {
        assert_eq!(connected_poly(&complete(2)).unwrap(), v("v:0"));
        let k3 = complete(3).with_uniform_weight(Weight::var("v"));
        assert_eq!(connected_poly(&k3).unwrap().to_string(), "v^3 + 3*v^2");
        let k4 = complete(4).with_uniform_weight(Weight::Const(int(1)));
        assert_eq!(connected_poly(&k4).unwrap(), MultiPoly::int(38));
        assert!(zhat(&MultiGraph::edgeless(0)).is_err());
    }

    #[test]
    fn colorings() {
        let k3 = complete(3).with_uniform_weight(Weight::Const(int(-1)));
        assert_eq!(z_coloring(&k3, 3).unwrap(), MultiPoly::int(6));
        assert_eq!(z_coloring(&k3, 2).unwrap(), MultiPoly::zero());
        let tl = triangle_with_loop().with_uniform_weight(Weight::Const(int(-1)));
        assert!(z_coloring(&tl, 4).unwrap().is_zero());
        assert!(z_coloring(&k3, 0).is_err());
    }

    #[test]
    fn chromatic_polys() {
        let qq = v("q");
        assert_eq!(chromatic(&MultiGraph::edgeless(3)).unwrap(), qq.pow(3));
        assert_eq!(chromatic(&complete(3)).unwrap(), falling_factorial(&qq, 3));
        assert!(chromatic(&triangle_with_loop()).unwrap().is_zero());
    }

    #[test]
    fn independent_counts() {
        let big = |v: &[u32]| v.iter().map(|&x| BigUint::from(x)).collect::<Vec<_>>();
        assert_eq!(independent_partition_counts(&complete(3)).unwrap(), big(&[0, 0, 1]));
        assert_eq!(independent_partition_counts(&MultiGraph::edgeless(3)).unwrap(), big(&[1, 3, 1]));
    }

    #[test]
    fn independence_and_lass() {
        let i = independence_poly(&complete(2)).unwrap();
        assert_eq!(i.coeff(&[1, 1]), MultiPoly::zero());
        assert_eq!(i.coeff(&[1, 0]), MultiPoly::one());
        let k2 = complete(2);
        assert_eq!(lass_chromatic(&k2, 0b11).unwrap().to_string(), "q^2 - q");
        assert_eq!(lass_chromatic(&k2, 0).unwrap(), MultiPoly::one());
        assert_eq!(lass_chromatic(&k2, 0b10).unwrap(), v("q"));
    }

    #[test]
    fn lambda_sums() {
        assert_eq!(connected_lambda(&complete(2)).unwrap(), v("v:0"));
        let de = double_edge();
        assert_eq!(connected_lambda(&de).unwrap().to_string(), "lambda*v:0*v:1 + v:0 + v:1");
        let k3 = complete(3).with_uniform_weight(Weight::var("v"));
        assert_eq!(connected_lambda(&k3).unwrap().to_string(), "lambda*v^3 + 3*v^2");
    }

    #[test]
    fn trees() {
        assert_eq!(spanning_tree_count(&complete(4)), BigInt::from(16));
        assert_eq!(spanning_tree_count(&double_edge()), BigInt::from(2));
        assert_eq!(spanning_tree_count(&MultiGraph::edgeless(2)), BigInt::zero());
    }

    #[test]
    fn sign_examples() {
        let grid: Vec<Rational> = (0..=4).map(|i| rat(i, 4)).collect();
        let half = rat(-1, 2);
        let r = check_sign_inequality(&double_edge(), &[half.clone(), half.clone()], 4, &grid).unwrap();
        assert!(r.passed());
        let r = check_sign_inequality(&complete(2), &[half], 4, &grid).unwrap();
        assert!(r.passed());
        assert!(check_sign_inequality(&complete(2), &[rat(1, 2)], 1, &grid).is_err());
    }

    #[test]
    fn edge_cap_is_enforced() {
        let k8 = complete(8);
        let err = z_subset(&k8).unwrap_err();
        assert!(matches!(&err, Error::Resource(m) if m.contains(MAX_BRUTE_EDGES_ENV)));
    }
}

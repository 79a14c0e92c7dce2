//! Sequences for complete graphs with equal edge weights, plus the
//! generalized families `Z_n(q; a)` and `Y_n(q; c)`.

use num_bigint::BigInt;
use num_traits::One;

use crate::binomial::{check_convolutions, BinomialFamily};
use crate::error::{Error, Result};
use crate::exactalg::combin::binomial;
use crate::exactalg::{falling_factorial, MultiPoly, Rational, TruncatedSeries, Truncation, Var};
use crate::graphs::families::complete;
use crate::graphs::Weight;
use crate::partitions::{enumerate_partitions, standard_ground};
use crate::report::{Check, CheckReport};
use crate::tutte;

/// Partition sums are enumerated up to this `n`; larger `n` go through series.
pub const MAX_PARTITION_N: u32 = 8;

/// Brute-force tree enumeration is limited to this many vertices.
pub const MAX_BRUTE_TREES_N: u32 = 8;

/// Entries `first..first+len` of a polynomial sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySequence {
    pub first: u32,
    pub entries: Vec<MultiPoly>,
    pub source: &'static str,
}

impl PolySequence {
    /// Entry with index `n`; panics outside the stored range.
    pub fn get(&self, n: u32) -> &MultiPoly {
        &self.entries[(n - self.first) as usize]
    }

    pub fn last_index(&self) -> u32 {
        self.first + self.entries.len() as u32 - 1
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.entries.iter().map(|p| p.to_string()).collect()
    }
}

fn v() -> MultiPoly {
    MultiPoly::var("v")
}

fn qp() -> MultiPoly {
    MultiPoly::var("q")
}

fn brat(n: u32, k: u32) -> Rational {
    Rational::from_integer(binomial(n, k))
}

/// `(1+v)^{n(n-1)/2}` for `n = 0..=max`.
fn internal_powers(max: u32) -> Vec<MultiPoly> {
    let one_v = MultiPoly::one() + v();
    (0..=max).map(|n| one_v.pow(n * n.saturating_sub(1) / 2)).collect()
}

fn need_positive(n: u32) -> Result<()> {
    if n < 1 {
        return Err(Error::Domain("sequence length must be at least 1".into()));
    }
    Ok(())
}

/// `C_1..C_N` by the linear recursion in `(1+v)^{n(n-1)/2}`.
pub fn cn_linear(n: u32) -> Result<PolySequence> {
    need_positive(n)?;
    let pw = internal_powers(n);
    let mut c: Vec<MultiPoly> = vec![MultiPoly::zero()];
    for m in 1..=n {
        let mut x = pw[m as usize].clone();
        for k in 1..m {
            x -= &(&c[k as usize] * &pw[(m - k) as usize]).scale(&brat(m - 1, k - 1));
        }
        c.push(x);
    }
    c.remove(0);
    Ok(PolySequence { first: 1, entries: c, source: "linear" })
}

/// `C_1..C_N` by the quadratic recursion with `[(1+v)^k - 1]` weights.
pub fn cn_nonlinear(n: u32) -> Result<PolySequence> {
    need_positive(n)?;
    let one_v = MultiPoly::one() + v();
    let mut c: Vec<MultiPoly> = vec![MultiPoly::zero(), MultiPoly::one()];
    for m in 2..=n {
        let mut x = MultiPoly::zero();
        for k in 1..m {
            let w = one_v.pow(k) - MultiPoly::one();
            x += &(&w * &(&c[k as usize] * &c[(m - k) as usize])).scale(&brat(m - 2, k - 1));
        }
        c.push(x);
    }
    c.remove(0);
    Ok(PolySequence { first: 1, entries: c, source: "nonlinear" })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZnMode {
    /// Through the connected sums `C_k`.
    FromCn,
    /// Straight from `Z_n(1, v) = (1+v)^{n(n-1)/2}`.
    DirectQ,
}

/// `Z_0..Z_N` for the complete graphs.
pub fn zn_sequence(n: u32, mode: ZnMode) -> Result<PolySequence> {
    let q = qp();
    let mut z = vec![MultiPoly::one()];
    match mode {
        ZnMode::FromCn => {
            let c = if n == 0 { None } else { Some(cn_linear(n)?) };
            for m in 1..=n {
                let c = c.as_ref().expect("n >= 1");
                let mut x = MultiPoly::zero();
                for k in 1..=m {
                    x += &(c.get(k) * &z[(m - k) as usize]).scale(&brat(m - 1, k - 1));
                }
                z.push(&q * &x);
            }
            Ok(PolySequence { first: 0, entries: z, source: "from_cn" })
        }
        ZnMode::DirectQ => {
            let pw = internal_powers(n);
            let mut hat = vec![MultiPoly::zero()];
            for m in 1..=n {
                let mut x = pw[m as usize].clone();
                for k in 1..m {
                    let w = q.scale(&brat(m - 1, k)) - MultiPoly::constant(brat(m - 1, k - 1));
                    x += &(&w * &(&pw[(m - k) as usize] * &hat[k as usize]));
                }
                z.push(&q * &x);
                hat.push(x);
            }
            Ok(PolySequence { first: 0, entries: z, source: "direct_q" })
        }
    }
}

/// Parses `from_cn` or `direct_q`.
pub fn parse_zn_mode(text: &str) -> Result<ZnMode> {
    match text {
        "from_cn" => Ok(ZnMode::FromCn),
        "direct_q" => Ok(ZnMode::DirectQ),
        _ => Err(Error::Usage(format!("unknown zn mode {text:?}"))),
    }
}

/// The partition forms of `Z_n(q,v)`, `C_n(v)` and `Z_n(-1,v)` over `Π_n`,
/// each weighted by `(1+v)^{internal edges}`, for `1 <= m <= n`.
pub fn zn_partition_forms(n: u32) -> Result<CheckReport> {
    if n > MAX_PARTITION_N {
        return Err(Error::Resource(format!("partition forms are capped at n = {MAX_PARTITION_N}")));
    }
    let mut check = Check::new("complete.partition_forms");
    if n == 0 {
        return Ok(check.finish());
    }
    let z = zn_sequence(n, ZnMode::DirectQ)?;
    let c = cn_nonlinear(n)?;
    let one_v = MultiPoly::one() + v();
    let q = qp();
    let minus_one = MultiPoly::int(-1);
    for m in 1..=n {
        let total = m * (m - 1) / 2;
        let (mut zs, mut cs, mut zm, mut z0) = (MultiPoly::zero(), MultiPoly::zero(), MultiPoly::zero(), MultiPoly::zero());
        for p in enumerate_partitions(standard_ground(m as usize)) {
            let b = p.num_blocks() as u32;
            let w = one_v.pow(total - p.cross_edges() as u32);
            zs += &(&falling_factorial(&q, b) * &w);
            let fact = Rational::from_integer(crate::exactalg::combin::factorial(b - 1));
            let sign = if b % 2 == 1 { Rational::one() } else { -Rational::one() };
            cs += &w.scale(&(&fact * &sign));
            zm += &(&falling_factorial(&minus_one, b) * &w);
            let prod: MultiPoly = p.block_sizes().iter().map(|&s| c.get(s as u32).clone()).product();
            z0 += &(&q.pow(b) * &prod);
        }
        let tag = || format!("n={m}");
        check.equal("K_n", tag, &zs, z.get(m));
        check.equal("K_n", || format!("C n={m}"), &cs, c.get(m));
        check.equal("K_n", || format!("q=-1 n={m}"), &zm, &z.get(m).substitute(&tutte::q(), &minus_one));
        check.equal("K_n", || format!("q1=0 n={m}"), &z0, z.get(m));
    }
    Ok(check.finish())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InvMode {
    Recursion,
    /// All labelled trees by Prüfer decoding.
    Brute,
}

pub fn parse_inv_mode(text: &str) -> Result<InvMode> {
    match text {
        "recursion" => Ok(InvMode::Recursion),
        "brute" => Ok(InvMode::Brute),
        _ => Err(Error::Usage(format!("unknown inversion mode {text:?}"))),
    }
}

/// Inversion enumerators `I_1..I_N` in the variable `y`.
pub fn inversion_enumerator(n: u32, mode: InvMode) -> Result<PolySequence> {
    need_positive(n)?;
    match mode {
        InvMode::Recursion => {
            let y = MultiPoly::var("y");
            let mut inv = vec![MultiPoly::zero(), MultiPoly::one()];
            for m in 2..=n {
                let mut x = MultiPoly::zero();
                for k in 1..m {
                    let geo: MultiPoly = (0..k).map(|j| y.pow(j)).sum();
                    x += &(&geo * &(&inv[k as usize] * &inv[(m - k) as usize])).scale(&brat(m - 2, k - 1));
                }
                inv.push(x);
            }
            inv.remove(0);
            Ok(PolySequence { first: 1, entries: inv, source: "recursion" })
        }
        InvMode::Brute => {
            if n > MAX_BRUTE_TREES_N {
                return Err(Error::Resource(format!(
                    "tree enumeration is capped at n = {MAX_BRUTE_TREES_N}"
                )));
            }
            let entries = (1..=n).map(brute_inversions).collect();
            Ok(PolySequence { first: 1, entries, source: "brute" })
        }
    }
}

/// Edges of the labelled tree with Prüfer code `code` on vertices `0..n`.
fn prufer_decode(code: &[usize], n: usize) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &c in code {
        degree[c] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &c in code {
        let leaf = (0..n).find(|&i| degree[i] == 1).expect("a leaf exists");
        edges.push((leaf, c));
        degree[leaf] -= 1;
        degree[c] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&i| degree[i] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// Inversions of a tree rooted at vertex 0 (label 1): pairs `j > k > 1`
/// with `j` on the path from the root to `k`.
fn count_inversions(edges: &[(usize, usize)], n: usize) -> u32 {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut parent = vec![usize::MAX; n];
    let mut order = vec![0];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut i = 0;
    while i < order.len() {
        let x = order[i];
        i += 1;
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                parent[y] = x;
                order.push(y);
            }
        }
    }
    let mut count = 0;
    for k in 1..n {
        let mut a = parent[k];
        while a != 0 {
            if a > k {
                count += 1;
            }
            a = parent[a];
        }
    }
    count
}

fn brute_inversions(n: u32) -> MultiPoly {
    let n = n as usize;
    if n <= 2 {
        return MultiPoly::one();
    }
    let mut counts = vec![0u64; n * n];
    let mut code = vec![0usize; n - 2];
    loop {
        let edges = prufer_decode(&code, n);
        counts[count_inversions(&edges, n) as usize] += 1;
        // next code in base n
        let mut i = 0;
        while i < code.len() && code[i] == n - 1 {
            code[i] = 0;
            i += 1;
        }
        if i == code.len() {
            break;
        }
        code[i] += 1;
    }
    let y = MultiPoly::var("y");
    counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(e, &c)| y.pow(e as u32).scale(&Rational::from_integer(BigInt::from(c))))
        .sum()
}

/// `C_n(v) = v^{n-1} I_n(1+v)` for `n <= N`, with both sides built independently,
/// plus positivity of every coefficient of `I_n`.
pub fn check_cn_in_relation(n: u32) -> Result<CheckReport> {
    let mut check = Check::new("complete.inversions");
    let c = cn_linear(n)?;
    let inv = inversion_enumerator(n, InvMode::Recursion)?;
    let y = Var::new("y");
    let one_v = MultiPoly::one() + v();
    for m in 1..=n {
        let rhs = &v().pow(m - 1) * &inv.get(m).substitute(&y, &one_v);
        check.equal("K_n", || format!("n={m}"), c.get(m), &rhs);
        let p = inv.get(m);
        let deg = p.degree_in(&y);
        for e in 0..=deg {
            let coef = p.coeff_of(&y, e).as_constant().unwrap_or_default();
            if coef < Rational::one() {
                check.fail("K_n", format!("coefficient of y^{e} in I_{m}"), MultiPoly::constant(coef));
            } else {
                check.pass_instance();
            }
        }
    }
    Ok(check.finish())
}

/// Recursion against brute force for `I_1..I_N`.
pub fn check_inversion_modes(n: u32) -> Result<CheckReport> {
    let mut check = Check::new("complete.inversion_modes");
    let a = inversion_enumerator(n, InvMode::Recursion)?;
    let b = inversion_enumerator(n, InvMode::Brute)?;
    for m in 1..=n {
        check.equal("trees", || format!("n={m}"), a.get(m), b.get(m));
    }
    Ok(check.finish())
}

/// `Z_n(q; a)` for `n = 0..=N` from `a_0 = 1, a_1, ..., a_N`.
pub fn zn_of_family(a: &[MultiPoly], n: u32) -> Result<PolySequence> {
    check_family_input(a, n, 0)?;
    if n <= MAX_PARTITION_N {
        let q = qp();
        let entries = (0..=n)
            .map(|m| {
                enumerate_partitions(standard_ground(m as usize))
                    .map(|p| {
                        let prod: MultiPoly = p.block_sizes().iter().map(|&s| a[s].clone()).product();
                        &falling_factorial(&q, p.num_blocks() as u32) * &prod
                    })
                    .sum()
            })
            .collect();
        Ok(PolySequence { first: 0, entries, source: "partitions" })
    } else {
        zn_of_family_egf(a, n)
    }
}

/// `Z_n(q; a)` through the series `(Σ a_n x^n/n!)^q`.
pub fn zn_of_family_egf(a: &[MultiPoly], n: u32) -> Result<PolySequence> {
    check_family_input(a, n, 0)?;
    let base = TruncatedSeries::from_egf(vec![Var::new("x")], Truncation::Total(n), |m| a[m[0] as usize].clone())?;
    let powered = base.pow_symbolic(&qp())?;
    let entries = (0..=n).map(|m| powered.egf_coeff(&[m])).collect::<Result<_>>()?;
    Ok(PolySequence { first: 0, entries, source: "series" })
}

/// `Y_n(q; c)` for `n = 0..=N` from `c_1, ..., c_N` (passed as `c[0] = c_1`).
pub fn yn_of_family(c: &[MultiPoly], n: u32) -> Result<PolySequence> {
    check_family_input(c, n, 1)?;
    if n <= MAX_PARTITION_N {
        let q = qp();
        let entries = (0..=n)
            .map(|m| {
                enumerate_partitions(standard_ground(m as usize))
                    .map(|p| {
                        let prod: MultiPoly = p.block_sizes().iter().map(|&s| c[s - 1].clone()).product();
                        &q.pow(p.num_blocks() as u32) * &prod
                    })
                    .sum()
            })
            .collect();
        Ok(PolySequence { first: 0, entries, source: "partitions" })
    } else {
        yn_of_family_egf(c, n)
    }
}

/// `Y_n(q; c)` through `exp(q Σ c_n x^n/n!)`.
pub fn yn_of_family_egf(c: &[MultiPoly], n: u32) -> Result<PolySequence> {
    check_family_input(c, n, 1)?;
    let inner = TruncatedSeries::from_egf(vec![Var::new("x")], Truncation::Total(n), |m| {
        if m[0] == 0 {
            MultiPoly::zero()
        } else {
            c[m[0] as usize - 1].clone()
        }
    })?;
    let powered = inner.scale(&qp()).exp()?;
    let entries = (0..=n).map(|m| powered.egf_coeff(&[m])).collect::<Result<_>>()?;
    Ok(PolySequence { first: 0, entries, source: "series" })
}

fn check_family_input(seq: &[MultiPoly], n: u32, first: u32) -> Result<()> {
    let need = (n + 1 - first) as usize;
    if seq.len() < need {
        return Err(Error::Range(format!("need {need} coefficients, got {}", seq.len())));
    }
    if first == 0 && !seq.is_empty() && !seq[0].is_one() {
        return Err(Error::Domain("a_0 must be 1".into()));
    }
    Ok(())
}

/// Recursions and specializations of `Z_n(q; a)` and `Y_n(q; c)`.
pub fn check_generalized_families(a: &[MultiPoly], c: &[MultiPoly], n: u32) -> Result<CheckReport> {
    let mut check = Check::new("complete.generalized");
    let q = qp();
    let qv = tutte::q();
    let z = zn_of_family(a, n)?;
    let ze = zn_of_family_egf(a, n)?;
    let y = yn_of_family(c, n)?;
    let ye = yn_of_family_egf(c, n)?;
    let q_minus_1 = &q - &MultiPoly::one();
    for m in 0..=n {
        check.equal("Z(q;a)", || format!("series n={m}"), z.get(m), ze.get(m));
        check.equal("Y(q;c)", || format!("series n={m}"), y.get(m), ye.get(m));
        check.equal("Z(q;a)", || format!("q=1 n={m}"), &z.get(m).substitute(&qv, &MultiPoly::one()), &a[m as usize]);
        if m == 0 {
            continue;
        }
        let rec_z: MultiPoly = (1..=m)
            .map(|k| (&a[k as usize] * &z.get(m - k).substitute(&qv, &q_minus_1)).scale(&brat(m - 1, k - 1)))
            .sum();
        check.equal("Z(q;a)", || format!("recursion n={m}"), z.get(m), &(&q * &rec_z));
        let rec_y: MultiPoly = (1..=m)
            .map(|k| (&c[k as usize - 1] * y.get(m - k)).scale(&brat(m - 1, k - 1)))
            .sum();
        check.equal("Y(q;c)", || format!("recursion n={m}"), y.get(m), &(&q * &rec_y));
    }
    Ok(check.finish())
}

/// Every complete-graph check up to `n_max` (partition sums capped at 8, tree
/// enumeration at 7, brute-force `Z_{K_n}` at 5).
pub fn complete_suite(n_max: u32) -> Result<Vec<CheckReport>> {
    let n = n_max.max(1);
    let mut out = Vec::new();

    let lin = cn_linear(n)?;
    let non = cn_nonlinear(n)?;
    let zc = zn_sequence(n, ZnMode::FromCn)?;
    let zd = zn_sequence(n, ZnMode::DirectQ)?;
    let mut check = Check::new("complete.sequences");
    for m in 1..=n {
        check.equal("K_n", || format!("C linear/nonlinear n={m}"), lin.get(m), non.get(m));
    }
    let one_v = MultiPoly::one() + v();
    for m in 0..=n {
        check.equal("K_n", || format!("Z from_cn/direct_q n={m}"), zc.get(m), zd.get(m));
        let at1 = zd.get(m).substitute(&tutte::q(), &MultiPoly::one());
        check.equal("K_n", || format!("Z(1) n={m}"), &at1, &one_v.pow(m * m.saturating_sub(1) / 2));
    }
    // the nonlinear recursion for Z_n itself
    for m in 2..=n {
        let rhs: MultiPoly = (1..m)
            .map(|k| {
                let w = qp() + one_v.pow(k) - MultiPoly::one();
                (&w * &(lin.get(k) * zd.get(m - k))).scale(&brat(m - 2, k - 1))
            })
            .sum();
        check.equal("K_n", || format!("Z nonlinear n={m}"), zd.get(m), &rhs);
    }
    // brute force on K_n with a single shared weight
    for m in 1..=n.min(5) {
        let g = complete(m as usize).with_uniform_weight(Weight::var("v"));
        check.on_graph(g.fingerprint());
        check.equal("K_n", || format!("C brute n={m}"), lin.get(m), &tutte::connected_poly(&g)?);
        check.equal("K_n", || format!("Z brute n={m}"), zd.get(m), &tutte::z_subset(&g)?);
    }
    out.push(check.finish());

    let fam = BinomialFamily::from_table("complete", vec![n], |k| zd.get(k[0]).clone())?;
    let mut conv = check_convolutions(&fam, n.min(8))?;
    conv.check = "complete.convolutions".into();
    out.push(conv);

    let mut egf = Check::new("complete.series");
    let gen = crate::binomial::complete_graph_family(n.min(8))?;
    for m in 0..=n.min(8) {
        egf.equal("K_n", || format!("n={m}"), gen.a(&[m]), zd.get(m));
    }
    out.push(egf.finish());

    out.push(zn_partition_forms(n.min(7))?);
    out.push(check_inversion_modes(n.min(7))?);
    out.push(check_cn_in_relation(n.min(8))?);

    let m = n.min(MAX_PARTITION_N);
    let a: Vec<MultiPoly> = internal_powers(m);
    let c: Vec<MultiPoly> = lin.entries.iter().take(m as usize).cloned().collect();
    let mut gen_check = check_generalized_families(&a, &c, m)?;
    let y = yn_of_family(&c, m)?;
    let mut extra = Check::new("complete.generalized");
    for k in 0..=m {
        extra.equal("Y(q;C)", || format!("n={k}"), y.get(k), zd.get(k));
    }
    gen_check.absorb(extra.finish());
    out.push(gen_check);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        let c = cn_linear(5).unwrap();
        assert_eq!(c.to_strings()[..3], ["1", "v", "v^3 + 3*v^2"]);
        let ones: Vec<String> = c
            .entries
            .iter()
            .map(|p| p.substitute(&Var::new("v"), &MultiPoly::one()).to_string())
            .collect();
        assert_eq!(ones, ["1", "1", "4", "38", "728"]);
        assert_eq!(zn_sequence(2, ZnMode::DirectQ).unwrap().to_strings(), ["1", "q", "q^2 + q*v"]);
        assert_eq!(inversion_enumerator(3, InvMode::Brute).unwrap().to_strings(), ["1", "1", "y + 2"]);
        let i4 = inversion_enumerator(4, InvMode::Brute).unwrap();
        assert_eq!(i4.get(4).substitute(&Var::new("y"), &MultiPoly::one()).to_string(), "16");
    }

    #[test]
    fn modes_agree() {
        assert_eq!(cn_linear(8).unwrap().entries, cn_nonlinear(8).unwrap().entries);
        assert_eq!(zn_sequence(7, ZnMode::FromCn).unwrap().entries, zn_sequence(7, ZnMode::DirectQ).unwrap().entries);
        assert!(check_inversion_modes(6).unwrap().passed());
        assert!(check_cn_in_relation(6).unwrap().passed());
        assert!(zn_partition_forms(5).unwrap().passed());
    }

    #[test]
    fn generalized_families() {
        let ones = vec![MultiPoly::one(); 6];
        let z = zn_of_family(&ones, 5).unwrap();
        assert_eq!(z.get(4).to_string(), "q^4");
        let y = yn_of_family(&ones, 5).unwrap();
        let bells: Vec<String> = y.entries.iter().map(|p| p.substitute(&tutte::q(), &MultiPoly::one()).to_string()).collect();
        assert_eq!(bells, ["1", "1", "2", "5", "15", "52"]);
        assert!(check_generalized_families(&ones, &ones[..5], 5).unwrap().passed());
        assert!(zn_of_family(&[MultiPoly::int(2)], 0).is_err());
    }

    #[test]
    fn suite_passes() {
        for r in complete_suite(6).unwrap() {
            assert!(r.passed(), "{}", r.to_line());
        }
    }
}

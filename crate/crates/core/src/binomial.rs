//! Families of binomial type: `Σ a_n(q) x^n/n! = exp[q C(x)]`, in one or
//! several index variables.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::combin::{binomial_rat, factorial, multi_binomial, multi_factorial, multi_indices_upto};
use crate::exactalg::{falling_factorial, rising_factorial, MultiPoly, Rational, TruncatedSeries, Truncation, Var};
use crate::report::{Check, CheckReport};

pub type MultiIndex = Vec<u32>;

fn q() -> Var {
    Var::new("q")
}

fn qv(name: &str) -> MultiPoly {
    MultiPoly::var(name)
}

fn is_zero_index(n: &[u32]) -> bool {
    n.iter().all(|&x| x == 0)
}

fn sub(n: &[u32], k: &[u32]) -> MultiIndex {
    n.iter().zip(k).map(|(a, b)| a - b).collect()
}

fn leq(k: &[u32], n: &[u32]) -> bool {
    k.iter().zip(n).all(|(a, b)| a <= b)
}

fn total(n: &[u32]) -> u32 {
    n.iter().sum()
}

fn index_text(n: &[u32]) -> String {
    n.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

fn intp(n: i64) -> MultiPoly {
    MultiPoly::int(n)
}

/// `C(n - δ_i, k - δ_i)`, zero when `k_i = 0`.
fn binom_minus_delta(n: &[u32], k: &[u32], i: usize) -> Rational {
    if k[i] == 0 {
        return Rational::zero();
    }
    let mut n2 = n.to_vec();
    let mut k2 = k.to_vec();
    n2[i] -= 1;
    k2[i] -= 1;
    Rational::from_integer(multi_binomial(&n2, &k2))
}

fn binom(n: &[u32], k: &[u32]) -> Rational {
    Rational::from_integer(multi_binomial(n, k))
}

/// Connected coefficients `c_n` for `0 < n <= cap`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffSequence {
    cap: MultiIndex,
    c: BTreeMap<MultiIndex, MultiPoly>,
}

impl CoeffSequence {
    /// Missing entries are zero; an entry at `0` or beyond the cap is rejected.
    pub fn new(cap: MultiIndex, entries: BTreeMap<MultiIndex, MultiPoly>) -> Result<Self> {
        for n in entries.keys() {
            if n.len() != cap.len() {
                return Err(Error::Structural(format!("index {n:?} for cap {cap:?}")));
            }
            if is_zero_index(n) {
                return Err(Error::Domain("c_0 is not part of a coefficient sequence".into()));
            }
            if !leq(n, &cap) {
                return Err(Error::Range(format!("index {n:?} beyond cap {cap:?}")));
            }
        }
        let c = entries.into_iter().filter(|(_, p)| !p.is_zero()).collect();
        Ok(CoeffSequence { cap, c })
    }

    /// One-dimensional sequence `c_1..c_N` from a closure.
    pub fn univariate(n: u32, mut f: impl FnMut(u32) -> MultiPoly) -> Self {
        let c = (1..=n).map(|k| (vec![k], f(k))).filter(|(_, p)| !p.is_zero()).collect();
        CoeffSequence { cap: vec![n], c }
    }

    pub fn cap(&self) -> &[u32] {
        &self.cap
    }

    pub fn get(&self, n: &[u32]) -> MultiPoly {
        self.c.get(n).cloned().unwrap_or_default()
    }

    pub fn entries(&self) -> &BTreeMap<MultiIndex, MultiPoly> {
        &self.c
    }
}

/// A table of `a_n(q)` and `â_n(q) = a_n(q)/q` up to a per-coordinate cap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinomialFamily {
    name: String,
    cap: MultiIndex,
    a: BTreeMap<MultiIndex, MultiPoly>,
    ahat: BTreeMap<MultiIndex, MultiPoly>,
}

/// Which coordinate the recursion expands along.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pivot {
    First,
    Last,
}

impl BinomialFamily {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn cap(&self) -> &[u32] {
        &self.cap
    }

    pub fn dim(&self) -> usize {
        self.cap.len()
    }

    /// `a_n(q)`; panics outside the cap.
    pub fn a(&self, n: &[u32]) -> &MultiPoly {
        &self.a[n]
    }

    /// `â_n(q)` for `n != 0`; panics outside the cap.
    pub fn ahat(&self, n: &[u32]) -> &MultiPoly {
        &self.ahat[n]
    }

    /// Indices `n <= cap` with `|n| <= n_max`, by total degree.
    pub fn indices(&self, n_max: u32) -> Vec<MultiIndex> {
        multi_indices_upto(&self.cap)
            .into_iter()
            .filter(|n| total(n) <= n_max)
            .collect()
    }

    fn max_total(&self) -> u32 {
        total(&self.cap)
    }

    /// Builds the table from `a_n(q)` for `n != 0`, checking `a_n(0) = 0`.
    pub fn from_table(name: &str, cap: MultiIndex, mut f: impl FnMut(&[u32]) -> MultiPoly) -> Result<Self> {
        let mut a = BTreeMap::new();
        let mut ahat = BTreeMap::new();
        for n in multi_indices_upto(&cap) {
            if is_zero_index(&n) {
                a.insert(n, MultiPoly::one());
                continue;
            }
            let an = f(&n);
            let h = an.div_var_exact(&q()).map_err(|_| {
                Error::Domain(format!("a_{{{}}}(0) != 0 in family {name}", index_text(&n)))
            })?;
            a.insert(n.clone(), an);
            ahat.insert(n, h);
        }
        Ok(BinomialFamily {
            name: name.to_string(),
            cap,
            a,
            ahat,
        })
    }

    /// Family generated by `exp[q C(x)]`, via the pivot recursion.
    pub fn from_connected(c: &CoeffSequence) -> Self {
        Self::from_connected_pivot(c, Pivot::First)
    }

    pub fn from_connected_pivot(c: &CoeffSequence, pivot: Pivot) -> Self {
        let cap = c.cap.clone();
        let qq = MultiPoly::from_var(&q());
        let mut a: BTreeMap<MultiIndex, MultiPoly> = BTreeMap::new();
        let mut ahat = BTreeMap::new();
        for n in multi_indices_upto(&cap) {
            if is_zero_index(&n) {
                a.insert(n, MultiPoly::one());
                continue;
            }
            let i = match pivot {
                Pivot::First => n.iter().position(|&x| x > 0),
                Pivot::Last => n.iter().rposition(|&x| x > 0),
            }
            .expect("nonzero index");
            // â_n = Σ_{k >= δ_i} C(n-δ_i, k-δ_i) c_k a_{n-k}
            let mut h = MultiPoly::zero();
            for (k, ck) in &c.c {
                if k[i] == 0 || !leq(k, &n) {
                    continue;
                }
                let coef = binom_minus_delta(&n, k, i);
                h += &(ck * &a[&sub(&n, k)]).scale(&coef);
            }
            a.insert(n.clone(), &qq * &h);
            ahat.insert(n, h);
        }
        BinomialFamily {
            name: "from_connected".into(),
            cap,
            a,
            ahat,
        }
    }

    /// Family `A(x)^q` for `A(x) = Σ a_n(1) x^n/n!`, via the symbolic power.
    pub fn from_unit_values(name: &str, cap: MultiIndex, mut unit: impl FnMut(&[u32]) -> MultiPoly) -> Result<Self> {
        let vars = series_vars(cap.len());
        let base = TruncatedSeries::from_egf(vars, Truncation::PerVar(cap.clone()), |n| {
            if is_zero_index(n) {
                MultiPoly::one()
            } else {
                unit(n)
            }
        })?;
        let powered = base.pow_symbolic(&MultiPoly::from_var(&q()))?;
        BinomialFamily::from_table(name, cap, |n| powered.egf_coeff(n).expect("index within cap"))
    }

    /// `Σ_{n} f(n) x^n/n!` over the family's index box, skipping `n = 0` if asked.
    fn egf(&self, skip_zero: bool, mut f: impl FnMut(&[u32]) -> MultiPoly) -> TruncatedSeries {
        TruncatedSeries::from_egf(series_vars(self.dim()), Truncation::PerVar(self.cap.clone()), |n| {
            if skip_zero && is_zero_index(n) {
                MultiPoly::zero()
            } else {
                f(n)
            }
        })
        .expect("caps match series variables")
    }

    /// Substitutes `q := value` into the whole `a` table.
    fn a_at(&self, value: &MultiPoly) -> BTreeMap<MultiIndex, MultiPoly> {
        self.a.iter().map(|(n, p)| (n.clone(), p.substitute(&q(), value))).collect()
    }

    fn ahat_at(&self, value: &MultiPoly) -> BTreeMap<MultiIndex, MultiPoly> {
        self.ahat.iter().map(|(n, p)| (n.clone(), p.substitute(&q(), value))).collect()
    }

    /// Dump as `{"n1,n2,...": "<polynomial>"}`.
    pub fn to_json(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .a
            .iter()
            .map(|(n, p)| (index_text(n), serde_json::Value::String(p.to_string())))
            .collect();
        serde_json::Value::Object(map)
    }
}

/// Series variables `x:0, x:1, ...`.
pub fn series_vars(d: usize) -> Vec<Var> {
    (0..d).map(|i| Var::new(&format!("x:{i}"))).collect()
}

/// `n! [x^n] S^ℓ` for `ℓ = 0..=l_max`, as a table indexed by `ℓ` then `n`.
fn power_table(s: &TruncatedSeries, l_max: u32) -> Result<Vec<TruncatedSeries>> {
    let one = TruncatedSeries::constant(s.vars().to_vec(), s.truncation().clone(), MultiPoly::one())?;
    let mut out = vec![one];
    for _ in 0..l_max {
        let next = out.last().expect("nonempty").mul(s)?;
        out.push(next);
    }
    Ok(out)
}

/// Inverse formula: `c_n = Σ_ℓ (-q)^{ℓ-1}/ℓ · n![x^n] Â(x)^ℓ`, which must not depend on `q`.
pub fn connected_from_family(f: &BinomialFamily) -> Result<CoeffSequence> {
    let qq = MultiPoly::from_var(&q());
    let s = f.egf(true, |n| f.ahat(n).clone());
    let powers = power_table(&s, f.max_total())?;
    let mut c = BTreeMap::new();
    for n in multi_indices_upto(&f.cap) {
        if is_zero_index(&n) {
            continue;
        }
        let mut acc = MultiPoly::zero();
        for l in 1..=total(&n) {
            let term = powers[l as usize].egf_coeff(&n)?;
            let w = (-&qq).pow(l - 1).scale(&Rational::new(BigInt::one(), BigInt::from(l)));
            acc += &(&w * &term);
        }
        if acc.contains_var(&q()) {
            return Err(Error::Consistency(format!(
                "c_{{{}}} of family {} still depends on q: {acc}",
                index_text(&n),
                f.name
            )));
        }
        c.insert(n, acc);
    }
    CoeffSequence::new(f.cap.clone(), c)
}

/// The `q1`/`q2` expansion of `a_n(q2)` in terms of `â(q1)`:
/// `Σ_ℓ (1/ℓ!) ∏_{j<ℓ} (q2 - j q1) · n![x^n] Â_{q1}(x)^ℓ`.
pub fn family_power_expand(f: &BinomialFamily, q1: &MultiPoly, q2: &MultiPoly) -> Result<BTreeMap<MultiIndex, MultiPoly>> {
    let hat = f.ahat_at(q1);
    let s = f.egf(true, |n| hat[n].clone());
    let powers = power_table(&s, f.max_total())?;
    let mut prefactor = vec![MultiPoly::one()];
    for l in 1..=f.max_total() {
        let prev = prefactor.last().expect("nonempty");
        let step = q2 - &q1.scale(&Rational::from_integer(BigInt::from(l - 1)));
        prefactor.push(prev * &step);
    }
    let mut out = BTreeMap::new();
    for n in multi_indices_upto(&f.cap) {
        let mut acc = MultiPoly::zero();
        for l in 0..=total(&n) {
            let term = powers[l as usize].egf_coeff(&n)?;
            let inv = Rational::new(BigInt::one(), factorial(l));
            acc += &(&prefactor[l as usize] * &term).scale(&inv);
        }
        out.insert(n, acc);
    }
    Ok(out)
}

/// Verifies the power expansions and their specializations.
pub fn check_power_expansion(f: &BinomialFamily, n_max: u32) -> Result<CheckReport> {
    let mut check = Check::new("power_expansion");
    check.on_graph(f.name.clone());
    let (q1, q2, r) = (qv("q1"), qv("q2"), qv("r"));
    let qq = MultiPoly::from_var(&q());
    let idx = f.indices(n_max);

    let symbolic = family_power_expand(f, &q1, &q2)?;
    for n in &idx {
        let want = f.a(n).substitute(&q(), &q2);
        check.equal(&f.name, || format!("q1,q2 n={}", index_text(n)), &symbolic[n], &want);
    }
    // the â form, with the j = 0 factor pulled out
    let hat = f.ahat_at(&q1);
    let s = f.egf(true, |n| hat[n].clone());
    let powers = power_table(&s, f.max_total())?;
    for n in idx.iter().filter(|n| !is_zero_index(n)) {
        let mut acc = MultiPoly::zero();
        for l in 1..=total(n) {
            let pre: MultiPoly = (1..l).map(|j| &q2 - &q1.scale(&Rational::from_integer(BigInt::from(j)))).product();
            let inv = Rational::new(BigInt::one(), factorial(l));
            acc += &(&pre * &powers[l as usize].egf_coeff(n)?).scale(&inv);
        }
        let want = f.ahat(n).substitute(&q(), &q2);
        check.equal(&f.name, || format!("hat q1,q2 n={}", index_text(n)), &acc, &want);
    }
    // q1 = 0: a_n(q) = Σ q^ℓ/ℓ! n![x^n] C^ℓ
    let at0 = family_power_expand(f, &MultiPoly::zero(), &qq)?;
    for n in &idx {
        check.equal(&f.name, || format!("q1=0 n={}", index_text(n)), &at0[n], f.a(n));
    }
    // q2 = 0 gives a_n(0)
    let at_q2_zero = family_power_expand(f, &q1, &MultiPoly::zero())?;
    for n in &idx {
        let want = if is_zero_index(n) { MultiPoly::one() } else { MultiPoly::zero() };
        check.equal(&f.name, || format!("q2=0 n={}", index_text(n)), &at_q2_zero[n], &want);
    }
    // r q and -q forms through powers of A_q - 1
    let am1 = f.egf(true, |n| f.a(n).clone());
    let apow = power_table(&am1, f.max_total())?;
    for n in &idx {
        let mut rq = MultiPoly::zero();
        let mut mq = MultiPoly::zero();
        for l in 0..=total(n) {
            let term = apow[l as usize].egf_coeff(n)?;
            let inv = Rational::new(BigInt::one(), factorial(l));
            rq += &(&falling_factorial(&r, l) * &term).scale(&inv);
            let sign = if l % 2 == 0 { 1 } else { -1 };
            mq += &term.scale(&Rational::from_integer(BigInt::from(sign)));
        }
        let want_rq = f.a(n).substitute(&q(), &(&r * &qq));
        check.equal(&f.name, || format!("rq n={}", index_text(n)), &rq, &want_rq);
        let want_mq = f.a(n).substitute(&q(), &(-&qq));
        check.equal(&f.name, || format!("-q n={}", index_text(n)), &mq, &want_mq);
        // rising-factorial version of the -rq expansion
        let mut mrq = MultiPoly::zero();
        for l in 0..=total(n) {
            let term = apow[l as usize].egf_coeff(n)?;
            let sign = Rational::from_integer(BigInt::from(if l % 2 == 0 { 1 } else { -1 }));
            let inv = sign / Rational::from_integer(factorial(l));
            mrq += &(&rising_factorial(&r, l) * &term).scale(&inv);
        }
        let want_mrq = f.a(n).substitute(&q(), &(-(&r * &qq)));
        check.equal(&f.name, || format!("-rq n={}", index_text(n)), &mrq, &want_mrq);
    }
    Ok(check.finish())
}

/// The convolution identities and recursions in `(q1, q2)`.
pub fn check_convolutions(f: &BinomialFamily, n_max: u32) -> Result<CheckReport> {
    let mut check = Check::new("convolutions");
    check.on_graph(f.name.clone());
    let (q1, q2) = (qv("q1"), qv("q2"));
    let sum = &q1 + &q2;
    let a1 = f.a_at(&q1);
    let a2 = f.a_at(&q2);
    let a12 = f.a_at(&sum);
    let h1 = f.ahat_at(&q1);
    let h12 = f.ahat_at(&sum);
    for n in f.indices(n_max) {
        let ks: Vec<MultiIndex> = multi_indices_upto(&n);
        // Σ C(n,k) a_k(q1) a_{n-k}(q2) = a_n(q1+q2)
        let lhs: MultiPoly = ks
            .iter()
            .map(|k| (&a1[k] * &a2[&sub(&n, k)]).scale(&binom(&n, k)))
            .sum();
        check.equal(&f.name, || format!("id1 n={}", index_text(&n)), &lhs, &a12[&n]);
        if is_zero_index(&n) {
            continue;
        }
        for i in (0..n.len()).filter(|&i| n[i] > 0) {
            let nz = || ks.iter().filter(|k| !is_zero_index(k));
            // Σ_{k≠0} C(n,k) k_i â_k(q1) a_{n-k}(q2) = n_i â_n(q1+q2)
            let lhs: MultiPoly = nz()
                .map(|k| {
                    let c = binom(&n, k) * Rational::from_integer(BigInt::from(k[i]));
                    (&h1[k] * &a2[&sub(&n, k)]).scale(&c)
                })
                .sum();
            let rhs = h12[&n].scale(&Rational::from_integer(BigInt::from(n[i])));
            check.equal(&f.name, || format!("id2 n={} i={i}", index_text(&n)), &lhs, &rhs);
            // a_n(q2) = Σ_{k≠0} [C(n-δ_i,k-δ_i)(q1+q2) - C(n,k) q1] â_k(q1) a_{n-k}(q2)
            let lhs: MultiPoly = nz()
                .map(|k| {
                    let w = sum.scale(&binom_minus_delta(&n, k, i)) - q1.scale(&binom(&n, k));
                    &w * &(&h1[k] * &a2[&sub(&n, k)])
                })
                .sum();
            check.equal(&f.name, || format!("recursion q1,q2 n={} i={i}", index_text(&n)), &lhs, &a2[&n]);
            // â_n(q1+q2) = Σ_{k>=δ_i} C(n-δ_i,k-δ_i) â_k(q1) a_{n-k}(q2)
            let lhs: MultiPoly = nz()
                .map(|k| (&h1[k] * &a2[&sub(&n, k)]).scale(&binom_minus_delta(&n, k, i)))
                .sum();
            check.equal(&f.name, || format!("id2.bis n={} i={i}", index_text(&n)), &lhs, &h12[&n]);
        }
    }
    Ok(check.finish())
}

/// `a_n(q; t)` for `n <= n_max`, from the solution of `A(x;t) = A(x A(x;t)^t)`.
pub fn knuth_transform(f: &BinomialFamily, t: &Var, n_max: u32) -> Result<Vec<MultiPoly>> {
    if f.dim() != 1 {
        return Err(Error::Domain("the Knuth transform is only defined for one-dimensional families".into()));
    }
    if n_max > f.cap[0] {
        return Err(Error::Range(format!("n_max {n_max} beyond cap {}", f.cap[0])));
    }
    let one = MultiPoly::one();
    let base = TruncatedSeries::from_egf(series_vars(1), Truncation::Total(n_max), |n| {
        f.a(n).substitute(&q(), &one)
    })?;
    let w = TruncatedSeries::implicit_knuth_solve(&base, &MultiPoly::from_var(t), n_max)?;
    let powered = w.pow_symbolic(&MultiPoly::from_var(&q()))?;
    (0..=n_max).map(|n| powered.egf_coeff(&[n])).collect()
}

/// Verifies `a_n(q; t) = q â_n(q + n t)` for `n <= n_max`.
pub fn check_knuth(f: &BinomialFamily, n_max: u32) -> Result<CheckReport> {
    let mut check = Check::new("knuth");
    check.on_graph(f.name.clone());
    let t = Var::new("t");
    let got = knuth_transform(f, &t, n_max)?;
    let qq = MultiPoly::from_var(&q());
    for n in 0..=n_max {
        let want = if n == 0 {
            MultiPoly::one()
        } else {
            let shift = &qq + &MultiPoly::from_var(&t).scale(&Rational::from_integer(BigInt::from(n)));
            &qq * &f.ahat(&[n]).substitute(&q(), &shift)
        };
        check.equal(&f.name, || format!("n={n}"), &got[n as usize], &want);
    }
    Ok(check.finish())
}

/// Abel-type identities in `(q1, q2, t)`; for several index variables the
/// shift is `k·t` with one `t:<i>` per coordinate.
pub fn check_abel(f: &BinomialFamily, n_max: u32) -> Result<CheckReport> {
    let mut check = Check::new("abel");
    check.on_graph(f.name.clone());
    let (q1, q2) = (qv("q1"), qv("q2"));
    let d = f.dim();
    let tvars: Vec<MultiPoly> = if d == 1 {
        vec![qv("t")]
    } else {
        (0..d).map(|i| qv(&format!("t:{i}"))).collect()
    };
    let dot = |k: &[u32]| -> MultiPoly {
        k.iter()
            .zip(&tvars)
            .map(|(&ki, t)| t.scale(&Rational::from_integer(BigInt::from(ki))))
            .sum()
    };
    let hat_at = |k: &[u32], at: &MultiPoly| f.ahat(k).substitute(&q(), at);
    // s â_k(s + k·t), with the convention q â_0(q) = 1
    let shifted = |k: &[u32], s: &MultiPoly| -> MultiPoly {
        if is_zero_index(k) {
            MultiPoly::one()
        } else {
            s * &hat_at(k, &(s + &dot(k)))
        }
    };
    let sum = &q1 + &q2;
    for n in f.indices(n_max) {
        let ks = multi_indices_upto(&n);
        let nt = dot(&n);
        let tag = index_text(&n);
        // id1.t
        let lhs: MultiPoly = ks
            .iter()
            .map(|k| (&shifted(k, &q1) * &shifted(&sub(&n, k), &q2)).scale(&binom(&n, k)))
            .sum();
        check.equal(&f.name, || format!("id1.t n={tag}"), &lhs, &shifted(&n, &sum));
        if !is_zero_index(&n) {
            // id2.t, for each coordinate
            for i in (0..d).filter(|&i| n[i] > 0) {
                let lhs: MultiPoly = ks
                    .iter()
                    .filter(|k| k[i] > 0)
                    .map(|k| {
                        let c = binom(&n, k) * Rational::from_integer(BigInt::from(k[i]));
                        (&hat_at(k, &(&q1 + &dot(k))) * &shifted(&sub(&n, k), &q2)).scale(&c)
                    })
                    .sum();
                let rhs = hat_at(&n, &(&sum + &nt)).scale(&Rational::from_integer(BigInt::from(n[i])));
                check.equal(&f.name, || format!("id2.t n={tag} i={i}"), &lhs, &rhs);
            }
        }
        if d == 1 {
            let a_at = |k: &[u32], at: &MultiPoly| f.a(k).substitute(&q(), at);
            // id3.t
            let lhs: MultiPoly = ks
                .iter()
                .map(|k| (&a_at(k, &(&q1 + &dot(k))) * &shifted(&sub(&n, k), &q2)).scale(&binom(&n, k)))
                .sum();
            check.equal(&f.name, || format!("id3.t n={tag}"), &lhs, &a_at(&n, &(&sum + &nt)));
            // id4.t
            let lhs: MultiPoly = ks
                .iter()
                .map(|k| (&shifted(k, &q1) * &a_at(&sub(&n, k), &(&q2 - &dot(k)))).scale(&binom(&n, k)))
                .sum();
            check.equal(&f.name, || format!("id4.t n={tag}"), &lhs, &a_at(&n, &sum));
        }
    }
    Ok(check.finish())
}

/// Round trip `c -> a -> c`, the pivot independence of the recursion, the
/// partition-sum formula and the q-independence of the inverse formula.
pub fn check_round_trip(c: &CoeffSequence, name: &str) -> Result<CheckReport> {
    let mut check = Check::new("round_trip");
    check.on_graph(name.to_string());
    let f = BinomialFamily::from_connected(c).named(name);
    let back = connected_from_family(&f)?;
    for n in multi_indices_upto(&c.cap).into_iter().filter(|n| !is_zero_index(n)) {
        check.equal(name, || format!("c n={}", index_text(&n)), &back.get(&n), &c.get(&n));
    }
    let g = BinomialFamily::from_connected_pivot(c, Pivot::Last);
    for n in multi_indices_upto(&c.cap) {
        check.equal(name, || format!("pivot n={}", index_text(&n)), f.a(&n), g.a(&n));
    }
    // direct formula Σ_ℓ q^ℓ/ℓ! n![x^n] C^ℓ
    let cs = f.egf(true, |n| c.get(n));
    let powers = power_table(&cs, f.max_total())?;
    let qq = MultiPoly::from_var(&q());
    for n in multi_indices_upto(&c.cap) {
        let mut acc = MultiPoly::zero();
        for l in 0..=total(&n) {
            let inv = Rational::new(BigInt::one(), factorial(l));
            acc += &(&qq.pow(l) * &powers[l as usize].egf_coeff(&n)?).scale(&inv);
        }
        check.equal(name, || format!("partition sum n={}", index_text(&n)), &acc, f.a(&n));
    }
    // the inverse formula evaluated at q = 0, 1, 2 gives the same c
    let s = f.egf(true, |n| f.ahat(n).clone());
    let hpow = power_table(&s, f.max_total())?;
    for qval in 0..=2i64 {
        for n in multi_indices_upto(&c.cap).into_iter().filter(|n| !is_zero_index(n)) {
            let mut acc = MultiPoly::zero();
            for l in 1..=total(&n) {
                let w = Rational::from_integer(BigInt::from(-qval).pow(l - 1)) / Rational::from_integer(BigInt::from(l));
                acc += &hpow[l as usize].egf_coeff(&n)?.scale(&w);
            }
            let acc = acc.substitute(&q(), &intp(qval));
            check.equal(name, || format!("inverse at q={qval} n={}", index_text(&n)), &acc, &c.get(&n));
        }
    }
    Ok(check.finish())
}

/// Verifies that `A(x)^q`, with `A = Σ a_n(1) x^n/n!`, reproduces the table.
pub fn check_generating_function(f: &BinomialFamily) -> Result<CheckReport> {
    let mut check = Check::new("generating_function");
    check.on_graph(f.name.clone());
    let g = BinomialFamily::from_unit_values(&f.name, f.cap.clone(), |n| f.a(n).substitute(&q(), &MultiPoly::one()))?;
    for n in multi_indices_upto(&f.cap) {
        check.equal(&f.name, || format!("n={}", index_text(&n)), g.a(&n), f.a(&n));
    }
    Ok(check.finish())
}

/// Named entries of the classical table.
#[derive(Clone, Debug, PartialEq)]
pub enum ClassicName {
    /// `A = e^x`, `a_n = q^n`.
    Exp,
    /// `A = (1-x)^{-1}`, `a_n = q^{(n)}` rising.
    Geometric,
    /// `A = (1+αx)^β`, `a_n = α^n (βq)_n` falling.
    Affine(Rational, Rational),
    /// `A = exp(e^x - 1)`.
    Bell,
    /// `A = exp[-x/(1-x)]`.
    Laguerre,
}

impl ClassicName {
    pub fn label(&self) -> String {
        match self {
            ClassicName::Exp => "exp".into(),
            ClassicName::Geometric => "geometric".into(),
            ClassicName::Affine(a, b) => format!(
                "affine({},{})",
                crate::exactalg::format_rational(a),
                crate::exactalg::format_rational(b)
            ),
            ClassicName::Bell => "bell".into(),
            ClassicName::Laguerre => "laguerre".into(),
        }
    }

    /// Parses `exp`, `geometric`, `one_plus_x`, `bell`, `laguerre` or `affine(α,β)`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        match t {
            "exp" => return Ok(ClassicName::Exp),
            "geometric" => return Ok(ClassicName::Geometric),
            "one_plus_x" | "1+x" => return Ok(ClassicName::Affine(Rational::one(), Rational::one())),
            "bell" => return Ok(ClassicName::Bell),
            "laguerre" => return Ok(ClassicName::Laguerre),
            _ => {}
        }
        let inner = t
            .strip_prefix("affine(")
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::Usage(format!("unknown family {t:?}")))?;
        let (a, b) = inner
            .split_once(',')
            .ok_or_else(|| Error::Usage("affine needs two parameters".into()))?;
        Ok(ClassicName::Affine(
            crate::exactalg::parse_rational(a)?,
            crate::exactalg::parse_rational(b)?,
        ))
    }
}

/// A classical family from its closed form.
pub fn classic_family(name: &ClassicName, cap: u32) -> Result<BinomialFamily> {
    if cap < 1 {
        return Err(Error::Domain("classical families need cap >= 1".into()));
    }
    let qq = MultiPoly::from_var(&q());
    let label = name.label();
    BinomialFamily::from_table(&label, vec![cap], |n| {
        let n = n[0];
        match name {
            ClassicName::Exp => qq.pow(n),
            ClassicName::Geometric => rising_factorial(&qq, n),
            ClassicName::Affine(alpha, beta) => {
                let alpha_n = (0..n).fold(Rational::one(), |acc, _| acc * alpha);
                falling_factorial(&qq.scale(beta), n).scale(&alpha_n)
            }
            ClassicName::Bell => (0..=n)
                .map(|k| {
                    let s = crate::partitions::stirling2(n as usize, k as usize);
                    qq.pow(k).scale(&Rational::from_integer(BigInt::from(s)))
                })
                .sum(),
            ClassicName::Laguerre => (1..=n)
                .map(|k| {
                    let c = Rational::from_integer(factorial(n) / factorial(k)) * binomial_rat(n - 1, n - k);
                    (-&qq).pow(k).scale(&c)
                })
                .sum(),
        }
    })
}

/// `a_n(1) = (1+v)^{n(n-1)/2}`: the complete-graph family, with `c_n = C_n(v)`.
pub fn complete_graph_family(cap: u32) -> Result<BinomialFamily> {
    let one_v = MultiPoly::one() + qv("v");
    BinomialFamily::from_unit_values("complete", vec![cap], |n| one_v.pow(n[0] * n[0].saturating_sub(1) / 2))
}

/// `a_{n1,n2}(1) = (1+v)^{n1 n2}`: the blow-up family of `K_2`.
pub fn bipartite_family(cap: (u32, u32)) -> Result<BinomialFamily> {
    let one_v = MultiPoly::one() + qv("v");
    BinomialFamily::from_unit_values("bipartite", vec![cap.0, cap.1], |n| one_v.pow(n[0] * n[1]))
}

/// Exponential generating function `Σ a_n x^n / n!` coefficient as a rational multiple.
pub fn egf_weight(n: &[u32]) -> Rational {
    Rational::new(BigInt::one(), multi_factorial(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q_() -> MultiPoly {
        MultiPoly::var("q")
    }

    #[test]
    fn bell_from_connected() {
        let c = CoeffSequence::univariate(5, |_| MultiPoly::one());
        let f = BinomialFamily::from_connected(&c);
        assert_eq!(f.a(&[3]).to_string(), "q^3 + 3*q^2 + q");
        let bell = classic_family(&ClassicName::Bell, 5).unwrap();
        for n in 0..=5 {
            assert_eq!(f.a(&[n]), bell.a(&[n]));
        }
    }

    #[test]
    fn exp_and_zero_sequences() {
        let c = CoeffSequence::univariate(4, |k| if k == 1 { MultiPoly::one() } else { MultiPoly::zero() });
        let f = BinomialFamily::from_connected(&c);
        for n in 0..=4 {
            assert_eq!(f.a(&[n]), &q_().pow(n));
        }
        let z = BinomialFamily::from_connected(&CoeffSequence::univariate(3, |_| MultiPoly::zero()));
        assert!(z.a(&[0]).is_one());
        assert!(z.a(&[2]).is_zero());
    }

    #[test]
    fn inverse_direction() {
        let bell = classic_family(&ClassicName::Bell, 5).unwrap();
        let c = connected_from_family(&bell).unwrap();
        for n in 1..=5 {
            assert!(c.get(&[n]).is_one());
        }
        let e = classic_family(&ClassicName::Exp, 4).unwrap();
        let c = connected_from_family(&e).unwrap();
        assert!(c.get(&[1]).is_one());
        assert!(c.get(&[3]).is_zero());
    }

    #[test]
    fn malformed_family_is_reported() {
        let f = BinomialFamily::from_table("bad", vec![3], |n| q_().pow(n[0]) + if n[0] == 2 { q_() } else { MultiPoly::zero() }).unwrap();
        assert!(matches!(connected_from_family(&f), Err(Error::Consistency(_))));
        assert!(BinomialFamily::from_table("bad", vec![2], |_| MultiPoly::one()).is_err());
    }

    #[test]
    fn closed_forms() {
        let g = classic_family(&ClassicName::Geometric, 3).unwrap();
        assert_eq!(g.a(&[3]).to_string(), "q^3 + 3*q^2 + 2*q");
        let l = classic_family(&ClassicName::Laguerre, 2).unwrap();
        assert_eq!(l.a(&[2]).to_string(), "q^2 - 2*q");
        assert_eq!(ClassicName::parse("affine(2,-1/3)").unwrap().label(), "affine(2,-1/3)");
        assert!(ClassicName::parse("nope").is_err());
    }

    #[test]
    fn power_expansion_values() {
        let bell = classic_family(&ClassicName::Bell, 3).unwrap();
        let t = family_power_expand(&bell, &MultiPoly::one(), &q_()).unwrap();
        assert_eq!(t[&vec![3]].to_string(), "q^3 + 3*q^2 + q");
        let same = family_power_expand(&bell, &q_(), &q_()).unwrap();
        assert_eq!(&same[&vec![3]], bell.a(&[3]));
    }

    #[test]
    fn knuth_examples() {
        let e = classic_family(&ClassicName::Exp, 4).unwrap();
        let t = Var::new("t");
        let a = knuth_transform(&e, &t, 2).unwrap();
        assert_eq!(a[2], &q_() * &(&q_() + &MultiPoly::var("t").scale(&Rational::from_integer(BigInt::from(2)))));
        assert!(knuth_transform(&bipartite_family((1, 1)).unwrap(), &t, 1).is_err());
    }

    #[test]
    fn checks_pass_on_small_families() {
        for name in [ClassicName::Exp, ClassicName::Bell, ClassicName::Laguerre] {
            let f = classic_family(&name, 4).unwrap();
            assert!(check_convolutions(&f, 4).unwrap().passed());
            assert!(check_abel(&f, 4).unwrap().passed());
            assert!(check_power_expansion(&f, 4).unwrap().passed());
            assert!(check_generating_function(&f).unwrap().passed());
        }
        let b = bipartite_family((2, 2)).unwrap();
        assert!(check_convolutions(&b, 4).unwrap().passed());
        assert!(check_abel(&b, 4).unwrap().passed());
    }

    #[test]
    fn complete_family_gives_connected_sums() {
        let f = complete_graph_family(4).unwrap();
        let c = connected_from_family(&f).unwrap();
        let v = MultiPoly::var("v");
        assert_eq!(c.get(&[2]), v);
        assert_eq!(c.get(&[3]), v.pow(3) + v.pow(2).scale(&Rational::from_integer(BigInt::from(3))));
    }
}

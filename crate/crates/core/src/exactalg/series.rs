use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use super::combin::{leq, multi_factorial, multi_indices_total, multi_indices_upto};
use super::poly::{MultiPoly, Rational};
use super::var::Var;
use crate::error::{Error, Result};

/// Which coefficients a series keeps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Truncation {
    /// Keep `x^m` with `|m| <= N`.
    Total(u32),
    /// Keep `x^m` with `m_i <= n_i` for every series variable.
    PerVar(Vec<u32>),
}

impl Truncation {
    pub fn admits(&self, m: &[u32]) -> bool {
        match self {
            Truncation::Total(n) => m.iter().sum::<u32>() <= *n,
            Truncation::PerVar(caps) => leq(m, caps),
        }
    }

    fn min(&self, other: &Truncation) -> Result<Truncation> {
        match (self, other) {
            (Truncation::Total(a), Truncation::Total(b)) => Ok(Truncation::Total(*a.min(b))),
            (Truncation::PerVar(a), Truncation::PerVar(b)) if a.len() == b.len() => Ok(
                Truncation::PerVar(a.iter().zip(b).map(|(x, y)| *x.min(y)).collect()),
            ),
            _ => Err(Error::Structural(format!(
                "incompatible truncations {self:?} and {other:?}"
            ))),
        }
    }
}

/// Truncated formal power series in one or more series variables with
/// polynomial coefficients. Coefficients are ordinary, not exponential.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    vars: Vec<Var>,
    trunc: Truncation,
    coeffs: BTreeMap<Vec<u32>, MultiPoly>,
}

impl TruncatedSeries {
    pub fn zero(vars: Vec<Var>, trunc: Truncation) -> Result<Self> {
        if let Truncation::PerVar(caps) = &trunc {
            if caps.len() != vars.len() {
                return Err(Error::Structural(format!(
                    "{} caps for {} series variables",
                    caps.len(),
                    vars.len()
                )));
            }
        }
        Ok(TruncatedSeries {
            vars,
            trunc,
            coeffs: BTreeMap::new(),
        })
    }

    /// Univariate zero series in `x` truncated at `x^n`.
    pub fn univariate(x: &str, n: u32) -> Self {
        TruncatedSeries {
            vars: vec![Var::new(x)],
            trunc: Truncation::Total(n),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(vars: Vec<Var>, trunc: Truncation, c: MultiPoly) -> Result<Self> {
        let mut s = TruncatedSeries::zero(vars, trunc)?;
        let zero = vec![0; s.vars.len()];
        s.set(zero, c);
        Ok(s)
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn truncation(&self) -> &Truncation {
        &self.trunc
    }

    /// Every exponent vector within the cap, by total degree then lexicographically.
    pub fn exponents(&self) -> Vec<Vec<u32>> {
        match &self.trunc {
            Truncation::Total(n) => multi_indices_total(self.vars.len(), *n),
            Truncation::PerVar(caps) => multi_indices_upto(caps),
        }
    }

    /// Stores a coefficient; silently drops exponents beyond the cap.
    pub fn set(&mut self, m: Vec<u32>, c: MultiPoly) {
        if !self.trunc.admits(&m) {
            return;
        }
        if c.is_zero() {
            self.coeffs.remove(&m);
        } else {
            self.coeffs.insert(m, c);
        }
    }

    /// Builds a series from exponential coefficients: `x^m` gets `f(m)/m!`.
    pub fn from_egf<F>(vars: Vec<Var>, trunc: Truncation, mut f: F) -> Result<Self>
    where
        F: FnMut(&[u32]) -> MultiPoly,
    {
        let mut s = TruncatedSeries::zero(vars, trunc)?;
        for m in s.exponents() {
            let c = f(&m);
            let fact = Rational::from_integer(multi_factorial(&m));
            s.set(m, c.scale(&fact.recip()));
        }
        Ok(s)
    }

    pub fn coeff(&self, m: &[u32]) -> MultiPoly {
        self.coeffs.get(m).cloned().unwrap_or_default()
    }

    /// Coefficient of `x^m`; fails if `m` lies beyond the cap.
    pub fn extract_coeff(&self, m: &[u32]) -> Result<MultiPoly> {
        if m.len() != self.vars.len() {
            return Err(Error::Structural(format!(
                "exponent vector of length {} for {} series variables",
                m.len(),
                self.vars.len()
            )));
        }
        if !self.trunc.admits(m) {
            return Err(Error::Range(format!(
                "exponent {m:?} beyond truncation {:?}",
                self.trunc
            )));
        }
        Ok(self.coeff(m))
    }

    /// `m! [x^m] S`, the exponential coefficient.
    pub fn egf_coeff(&self, m: &[u32]) -> Result<MultiPoly> {
        let c = self.extract_coeff(m)?;
        Ok(c.scale(&Rational::from_integer(multi_factorial(m))))
    }

    pub fn constant_term(&self) -> MultiPoly {
        self.coeff(&vec![0; self.vars.len()])
    }

    pub fn map_coeffs<F: FnMut(&MultiPoly) -> MultiPoly>(&self, mut f: F) -> TruncatedSeries {
        let mut out = TruncatedSeries {
            vars: self.vars.clone(),
            trunc: self.trunc.clone(),
            coeffs: BTreeMap::new(),
        };
        for (m, c) in &self.coeffs {
            out.set(m.clone(), f(c));
        }
        out
    }

    pub fn scale(&self, p: &MultiPoly) -> TruncatedSeries {
        self.map_coeffs(|c| c * p)
    }

    fn blank_like(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        if self.vars != other.vars {
            return Err(Error::Structural(format!(
                "series variables differ: {:?} vs {:?}",
                self.vars, other.vars
            )));
        }
        TruncatedSeries::zero(self.vars.clone(), self.trunc.min(&other.trunc)?)
    }

    pub fn add(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        let mut out = self.blank_like(other)?;
        for m in out.exponents() {
            let c = self.coeff(&m) + other.coeff(&m);
            out.set(m, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        let mut out = self.blank_like(other)?;
        for m in out.exponents() {
            let c = self.coeff(&m) - other.coeff(&m);
            out.set(m, c);
        }
        Ok(out)
    }

    pub fn mul(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        let mut out = self.blank_like(other)?;
        let mut acc: BTreeMap<Vec<u32>, MultiPoly> = BTreeMap::new();
        for (ma, ca) in &self.coeffs {
            if !out.trunc.admits(ma) {
                continue;
            }
            for (mb, cb) in &other.coeffs {
                let m: Vec<u32> = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                if out.trunc.admits(&m) {
                    *acc.entry(m).or_default() += &(ca * cb);
                }
            }
        }
        for (m, c) in acc {
            out.set(m, c);
        }
        Ok(out)
    }

    pub fn pow_int(&self, e: u32) -> Result<TruncatedSeries> {
        let mut out = TruncatedSeries::constant(self.vars.clone(), self.trunc.clone(), MultiPoly::one())?;
        for _ in 0..e {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Nonzero coefficients with their total degree, for the Euler-operator recurrences.
    fn graded_terms(&self) -> Vec<(&Vec<u32>, u32, &MultiPoly)> {
        self.coeffs
            .iter()
            .filter(|(m, _)| m.iter().any(|&e| e > 0))
            .map(|(m, c)| (m, m.iter().sum(), c))
            .collect()
    }

    /// `exp S` for a series with zero constant term.
    pub fn exp(&self) -> Result<TruncatedSeries> {
        if !self.constant_term().is_zero() {
            return Err(Error::Domain(
                "exp needs a series with zero constant term".into(),
            ));
        }
        let terms = self.graded_terms();
        let mut out = TruncatedSeries::zero(self.vars.clone(), self.trunc.clone())?;
        let order = out.exponents();
        let mut e: BTreeMap<Vec<u32>, MultiPoly> = BTreeMap::new();
        // |m| e_m = sum_{0 < k <= m} |k| s_k e_{m-k}
        for m in order {
            let deg: u32 = m.iter().sum();
            let value = if deg == 0 {
                MultiPoly::one()
            } else {
                let mut acc = MultiPoly::zero();
                for (k, dk, sk) in &terms {
                    if !leq(k, &m) {
                        continue;
                    }
                    let rest: Vec<u32> = m.iter().zip(k.iter()).map(|(a, b)| a - b).collect();
                    if let Some(er) = e.get(&rest) {
                        acc += &(*sk * er).scale(&Rational::from_integer(BigInt::from(*dk)));
                    }
                }
                acc.scale(&Rational::new(BigInt::one(), BigInt::from(deg)))
            };
            if !value.is_zero() {
                e.insert(m, value);
            }
        }
        for (m, c) in e {
            out.set(m, c);
        }
        Ok(out)
    }

    /// `log S` for a series with constant term 1.
    pub fn log(&self) -> Result<TruncatedSeries> {
        if !self.constant_term().is_one() {
            return Err(Error::Domain(format!(
                "log needs constant term 1, found {}",
                self.constant_term()
            )));
        }
        let terms = self.graded_terms();
        let mut out = TruncatedSeries::zero(self.vars.clone(), self.trunc.clone())?;
        let mut l: BTreeMap<Vec<u32>, MultiPoly> = BTreeMap::new();
        // |m| l_m = |m| s_m - sum_{0 < k < m} |k| l_k s_{m-k}
        for m in out.exponents() {
            let deg: u32 = m.iter().sum();
            if deg == 0 {
                continue;
            }
            let mut acc = self.coeff(&m).scale(&Rational::from_integer(BigInt::from(deg)));
            for (k, dk, sk) in &terms {
                if !leq(k, &m) || **k == m {
                    continue;
                }
                let rest: Vec<u32> = m.iter().zip(k.iter()).map(|(a, b)| a - b).collect();
                if let Some(lr) = l.get(&rest) {
                    let dr = deg - dk;
                    acc -= &(*sk * lr).scale(&Rational::from_integer(BigInt::from(dr)));
                }
            }
            let value = acc.scale(&Rational::new(BigInt::one(), BigInt::from(deg)));
            if !value.is_zero() {
                l.insert(m, value);
            }
        }
        for (m, c) in l {
            out.set(m, c);
        }
        Ok(out)
    }

    /// `S^e := exp(e log S)` for a polynomial exponent `e`.
    pub fn pow_symbolic(&self, e: &MultiPoly) -> Result<TruncatedSeries> {
        if !self.constant_term().is_one() {
            return Err(Error::Domain(format!(
                "symbolic power needs constant term 1, found {}",
                self.constant_term()
            )));
        }
        self.log()?.scale(e).exp()
    }

    /// Substitutes `inner` for the single series variable of `self`.
    ///
    /// `inner` must have zero constant term. The result lives in `inner`'s
    /// variables; its cap is lowered to `self`'s when that is smaller.
    pub fn compose(&self, inner: &TruncatedSeries) -> Result<TruncatedSeries> {
        let Truncation::Total(outer_cap) = self.trunc else {
            return Err(Error::Structural("outer series must be univariate".into()));
        };
        if self.vars.len() != 1 {
            return Err(Error::Structural("outer series must be univariate".into()));
        }
        if !inner.constant_term().is_zero() {
            return Err(Error::Domain(
                "substituted series must have zero constant term".into(),
            ));
        }
        let trunc = match &inner.trunc {
            Truncation::Total(n) => Truncation::Total((*n).min(outer_cap)),
            Truncation::PerVar(caps) => {
                if caps.iter().sum::<u32>() > outer_cap {
                    return Err(Error::Range(
                        "outer cap too small for the substituted series".into(),
                    ));
                }
                Truncation::PerVar(caps.clone())
            }
        };
        let mut inner = inner.clone();
        inner.restrict(trunc.clone());
        let mut out = TruncatedSeries::zero(inner.vars.clone(), trunc)?;
        // Horner from the top coefficient down
        for n in (0..=outer_cap).rev() {
            out = out.mul(&inner)?;
            let c = self.coeff(&[n]);
            let zero = vec![0; out.vars.len()];
            let c0 = out.coeff(&zero) + c;
            out.set(zero, c0);
        }
        Ok(out)
    }

    fn restrict(&mut self, trunc: Truncation) {
        self.coeffs.retain(|m, _| trunc.admits(m));
        self.trunc = trunc;
    }

    /// Solves `W = A(x W^t)` for univariate `A` with constant term 1.
    ///
    /// Runs exactly `cap + 1` rounds of `W <- A(x W^t)` starting from `W = A`.
    pub fn implicit_knuth_solve(a: &TruncatedSeries, t: &MultiPoly, cap: u32) -> Result<TruncatedSeries> {
        if a.vars.len() != 1 {
            return Err(Error::Structural("knuth transform needs a univariate series".into()));
        }
        if !a.constant_term().is_one() {
            return Err(Error::Domain(format!(
                "knuth transform needs constant term 1, found {}",
                a.constant_term()
            )));
        }
        let mut a = a.clone();
        let Truncation::Total(n) = a.trunc else {
            return Err(Error::Structural("knuth transform needs a total-degree cap".into()));
        };
        a.restrict(Truncation::Total(n.min(cap)));
        let mut x = TruncatedSeries::zero(a.vars.clone(), a.trunc.clone())?;
        x.set(vec![1], MultiPoly::one());
        let mut w = a.clone();
        for _ in 0..=cap {
            let inner = x.mul(&w.pow_symbolic(t)?)?;
            w = a.compose(&inner)?;
        }
        Ok(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::poly::{falling_factorial, rat};

    fn exp_series(n: u32) -> TruncatedSeries {
        TruncatedSeries::from_egf(vec![Var::new("x")], Truncation::Total(n), |_| MultiPoly::one()).unwrap()
    }

    fn one_plus_x(n: u32) -> TruncatedSeries {
        let mut s = TruncatedSeries::univariate("x", n);
        s.set(vec![0], MultiPoly::one());
        s.set(vec![1], MultiPoly::one());
        s
    }

    #[test]
    fn mercator() {
        let l = one_plus_x(3).log().unwrap();
        assert_eq!(l.coeff(&[1]), MultiPoly::one());
        assert_eq!(l.coeff(&[2]), MultiPoly::constant(rat(-1, 2)));
        assert_eq!(l.coeff(&[3]), MultiPoly::constant(rat(1, 3)));
        let unit = TruncatedSeries::constant(vec![Var::new("x")], Truncation::Total(3), MultiPoly::one()).unwrap();
        assert!(unit.log().unwrap().coeffs.is_empty());
    }

    #[test]
    fn log_of_exp_series() {
        let l = exp_series(4).log().unwrap();
        let mut x = TruncatedSeries::univariate("x", 4);
        x.set(vec![1], MultiPoly::one());
        assert_eq!(l, x);
    }

    #[test]
    fn log_rejects_bad_constant() {
        let mut s = one_plus_x(3);
        s.set(vec![0], MultiPoly::int(2));
        assert!(matches!(s.log(), Err(Error::Domain(_))));
        assert!(matches!(s.pow_symbolic(&MultiPoly::var("q")), Err(Error::Domain(_))));
    }

    #[test]
    fn symbolic_powers() {
        let q = MultiPoly::var("q");
        let p = one_plus_x(3).pow_symbolic(&q).unwrap();
        for n in 0..=3 {
            assert_eq!(p.egf_coeff(&[n]).unwrap(), falling_factorial(&q, n));
        }
        let e = exp_series(4).pow_symbolic(&q).unwrap();
        for n in 0..=4 {
            assert_eq!(e.egf_coeff(&[n]).unwrap(), q.pow(n));
        }
        let s = exp_series(4);
        assert_eq!(s.pow_symbolic(&MultiPoly::one()).unwrap(), s);
    }

    #[test]
    fn knuth_solutions() {
        let a = exp_series(4);
        let w0 = TruncatedSeries::implicit_knuth_solve(&a, &MultiPoly::zero(), 4).unwrap();
        assert_eq!(w0, a);
        let w1 = TruncatedSeries::implicit_knuth_solve(&a, &MultiPoly::one(), 4).unwrap();
        let got: Vec<MultiPoly> = (0..=4).map(|n| w1.egf_coeff(&[n]).unwrap()).collect();
        let want: Vec<MultiPoly> = [1, 1, 3, 16, 125].iter().map(|&k| MultiPoly::int(k)).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn extract_beyond_cap() {
        let x = [Var::new("x1"), Var::new("x2")];
        let mut s = TruncatedSeries::zero(x.to_vec(), Truncation::PerVar(vec![1, 1])).unwrap();
        s.set(vec![0, 0], MultiPoly::one());
        s.set(vec![1, 0], MultiPoly::one());
        s.set(vec![0, 1], MultiPoly::one());
        let q = MultiPoly::var("q");
        let p = s.pow_symbolic(&q).unwrap();
        assert_eq!(p.extract_coeff(&[1, 1]).unwrap(), q.pow(2) - q.clone());
        assert_eq!(p.extract_coeff(&[0, 0]).unwrap(), MultiPoly::one());
        assert!(matches!(p.extract_coeff(&[2, 0]), Err(Error::Range(_))));
        let z = TruncatedSeries::zero(x.to_vec(), Truncation::PerVar(vec![1, 1])).unwrap();
        assert!(z.extract_coeff(&[1, 1]).unwrap().is_zero());
    }
}

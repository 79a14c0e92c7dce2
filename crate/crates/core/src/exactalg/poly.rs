use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use super::var::Var;
use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p`, `-p` or `p/q` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("not an exact rational: {text:?}"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A power product of variables, stored sparsely and sorted by variable.
#[derive(Clone, Default)]
pub struct Monomial {
    degree: u32,
    factors: Vec<(Var, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: Var, exp: u32) -> Self {
        if exp == 0 {
            return Monomial::one();
        }
        Monomial {
            degree: exp,
            factors: vec![(v, exp)],
        }
    }

    /// Builds a monomial from arbitrary (variable, exponent) pairs.
    pub fn from_pairs<I: IntoIterator<Item = (Var, u32)>>(pairs: I) -> Self {
        let mut map: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v).or_insert(0) += e;
        }
        let factors: Vec<(Var, u32)> = map.into_iter().filter(|(_, e)| *e > 0).collect();
        let degree = factors.iter().map(|(_, e)| e).sum();
        Monomial { degree, factors }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.factors
    }

    pub fn exponent(&self, v: &Var) -> u32 {
        self.factors
            .binary_search_by(|(w, _)| w.cmp(v))
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    /// Returns the monomial with `v` removed, together with its exponent.
    pub fn split_off(&self, v: &Var) -> (u32, Monomial) {
        match self.factors.binary_search_by(|(w, _)| w.cmp(v)) {
            Ok(i) => {
                let e = self.factors[i].1;
                let mut factors = self.factors.clone();
                factors.remove(i);
                (
                    e,
                    Monomial {
                        degree: self.degree - e,
                        factors,
                    },
                )
            }
            Err(_) => (0, self.clone()),
        }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let mut factors = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() && j < other.factors.len() {
            let (a, ea) = &self.factors[i];
            let (b, eb) = &other.factors[j];
            match a.cmp(b) {
                Ordering::Less => {
                    factors.push((a.clone(), *ea));
                    i += 1;
                }
                Ordering::Greater => {
                    factors.push((b.clone(), *eb));
                    j += 1;
                }
                Ordering::Equal => {
                    factors.push((a.clone(), ea + eb));
                    i += 1;
                    j += 1;
                }
            }
        }
        factors.extend_from_slice(&self.factors[i..]);
        factors.extend_from_slice(&other.factors[j..]);
        Monomial {
            degree: self.degree + other.degree,
            factors,
        }
    }

    fn lex_cmp(&self, other: &Monomial) -> Ordering {
        let mut a = self.factors.iter();
        let mut b = other.factors.iter();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                    // the earlier variable is present only on the left
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(eb);
                        }
                    }
                },
            }
        }
    }
}

impl PartialEq for Monomial {
    fn eq(&self, other: &Self) -> bool {
        self.factors == other.factors
    }
}

impl Eq for Monomial {}

impl Hash for Monomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.factors.hash(state);
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Graded lexicographic order under the registry variable order.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.lex_cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (k, (v, e)) in self.factors.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Exact sparse multivariate polynomial with rational coefficients.
///
/// The term map never stores a zero coefficient, so structural equality is
/// mathematical equality.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn one() -> Self {
        MultiPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        MultiPoly::term(c, Monomial::one())
    }

    pub fn int(n: i64) -> Self {
        MultiPoly::constant(int(n))
    }

    pub fn var(name: &str) -> Self {
        MultiPoly::from_var(&Var::new(name))
    }

    pub fn from_var(v: &Var) -> Self {
        MultiPoly::term(Rational::one(), Monomial::var(v.clone(), 1))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    /// Builds a polynomial from terms, merging duplicates and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> Self {
        let mut p = MultiPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&Monomial::one())
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// The value if this polynomial is a constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: &Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    /// Smallest exponent of `v` over all terms (0 for the zero polynomial).
    pub fn min_degree_in(&self, v: &Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).min().unwrap_or(0)
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|(v, _)| v.clone()))
            .collect()
    }

    pub fn contains_var(&self, v: &Var) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    /// True if every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k * c))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> MultiPoly {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.mul(mono), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut exp: u32) -> MultiPoly {
        let mut result = MultiPoly::one();
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                result = &result * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Coefficient of `v^k`, as a polynomial in the remaining variables.
    pub fn coeff_of(&self, v: &Var, k: u32) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(v);
            if e == k {
                out.terms.insert(rest, c.clone());
            }
        }
        out
    }

    /// Divides by `v`; fails if some term does not contain `v`.
    pub fn div_var_exact(&self, v: &Var) -> Result<MultiPoly> {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(v);
            if e == 0 {
                return Err(Error::Consistency(format!(
                    "polynomial is not divisible by {v}: term {m}"
                )));
            }
            out.terms
                .insert(rest.mul(&Monomial::var(v.clone(), e - 1)), c.clone());
        }
        Ok(out)
    }

    pub fn derivative(&self, v: &Var) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(v);
            if e > 0 {
                out.add_term(
                    rest.mul(&Monomial::var(v.clone(), e - 1)),
                    c * Rational::from_integer(BigInt::from(e)),
                );
            }
        }
        out
    }

    /// Replaces `v` by `value` everywhere.
    pub fn substitute(&self, v: &Var, value: &MultiPoly) -> MultiPoly {
        // group terms by the exponent of v so each power of value is used once
        let mut by_exp: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(v);
            by_exp.entry(e).or_default().add_term(rest, c.clone());
        }
        let mut out = MultiPoly::zero();
        let mut power = MultiPoly::one();
        let mut at = 0;
        for (e, part) in by_exp {
            while at < e {
                power = &power * value;
                at += 1;
            }
            out += &(&part * &power);
        }
        out
    }

    /// Simultaneous substitution of several variables.
    pub fn substitute_all(&self, values: &BTreeMap<Var, MultiPoly>) -> MultiPoly {
        let mut powers: BTreeMap<(Var, u32), MultiPoly> = BTreeMap::new();
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut factor = MultiPoly::constant(c.clone());
            for (v, e) in m.factors() {
                match values.get(v) {
                    Some(val) => {
                        let p = powers
                            .entry((v.clone(), *e))
                            .or_insert_with(|| val.pow(*e));
                        factor = &factor * &*p;
                    }
                    None => kept.push((v.clone(), *e)),
                }
            }
            out += &factor.mul_monomial(&Monomial::from_pairs(kept));
        }
        out
    }

    /// Substitutes exact rational values for the given variables.
    pub fn evaluate(&self, values: &BTreeMap<Var, Rational>) -> MultiPoly {
        let polys: BTreeMap<Var, MultiPoly> = values
            .iter()
            .map(|(v, r)| (v.clone(), MultiPoly::constant(r.clone())))
            .collect();
        self.substitute_all(&polys)
    }

    pub fn rename(&self, from: &Var, to: &Var) -> MultiPoly {
        if from == to {
            return self.clone();
        }
        MultiPoly::from_terms(self.terms.iter().map(|(m, c)| {
            let (e, rest) = m.split_off(from);
            (rest.mul(&Monomial::var(to.clone(), e)), c.clone())
        }))
    }

    pub fn to_json(&self) -> Value {
        let vars: Vec<Var> = self.vars().into_iter().collect();
        let terms: Vec<Value> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                let e: Vec<u32> = vars.iter().map(|v| m.exponent(v)).collect();
                json!({"c": format_rational(c), "e": e})
            })
            .collect();
        json!({
            "vars": vars.iter().map(Var::name).collect::<Vec<_>>(),
            "terms": terms,
        })
    }

    pub fn from_json(value: &Value) -> Result<MultiPoly> {
        let bad = |msg: &str| Error::Parse(format!("polynomial JSON: {msg}"));
        let vars: Vec<Var> = value
            .get("vars")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing \"vars\""))?
            .iter()
            .map(|v| v.as_str().map(Var::new).ok_or_else(|| bad("variable names must be strings")))
            .collect::<Result<_>>()?;
        let mut p = MultiPoly::zero();
        for t in value
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing \"terms\""))?
        {
            let c = parse_rational(t.get("c").and_then(Value::as_str).ok_or_else(|| bad("term without \"c\""))?)?;
            let e = t
                .get("e")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("term without \"e\""))?;
            if e.len() != vars.len() {
                return Err(bad("exponent vector length differs from \"vars\""));
            }
            let mut pairs = Vec::with_capacity(e.len());
            for (v, x) in vars.iter().zip(e) {
                let x = x
                    .as_u64()
                    .and_then(|x| u32::try_from(x).ok())
                    .ok_or_else(|| bad("exponents must be nonnegative integers"))?;
                pairs.push((v.clone(), x));
            }
            p.add_term(Monomial::from_pairs(pairs), c);
        }
        Ok(p)
    }

    /// Evaluates to a floating value; only for diagnostics.
    pub fn approx_constant(&self) -> Option<f64> {
        self.as_constant().and_then(|c| c.to_f64())
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                f.write_str(&format_rational(&a))?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", format_rational(&a))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<Rational> for MultiPoly {
    fn from(c: Rational) -> Self {
        MultiPoly::constant(c)
    }
}

impl From<i64> for MultiPoly {
    fn from(n: i64) -> Self {
        MultiPoly::int(n)
    }
}

impl From<&Var> for MultiPoly {
    fn from(v: &Var) -> Self {
        MultiPoly::from_var(v)
    }
}

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl MulAssign<&MultiPoly> for MultiPoly {
    fn mul_assign(&mut self, rhs: &MultiPoly) {
        *self = &*self * rhs;
    }
}

impl Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        if self.is_zero() || rhs.is_zero() {
            return MultiPoly::zero();
        }
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$method(rhs)
            }
        }
        impl $trait<MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: MultiPoly) {
        *self += &rhs;
    }
}

impl SubAssign<MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, rhs: MultiPoly) {
        *self -= &rhs;
    }
}

impl Sum for MultiPoly {
    fn sum<I: Iterator<Item = MultiPoly>>(iter: I) -> Self {
        let mut out = MultiPoly::zero();
        for p in iter {
            out += &p;
        }
        out
    }
}

impl Product for MultiPoly {
    fn product<I: Iterator<Item = MultiPoly>>(iter: I) -> Self {
        let mut out = MultiPoly::one();
        for p in iter {
            out = &out * &p;
        }
        out
    }
}

/// `p (p-1) ... (p-k+1)`; the empty product for `k = 0`.
pub fn falling_factorial(p: &MultiPoly, k: u32) -> MultiPoly {
    (0..k)
        .map(|j| p - &MultiPoly::int(j as i64))
        .product()
}

/// `p (p+1) ... (p+k-1)`.
pub fn rising_factorial(p: &MultiPoly, k: u32) -> MultiPoly {
    (0..k)
        .map(|j| p + &MultiPoly::int(j as i64))
        .product()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> MultiPoly {
        MultiPoly::var("q")
    }

    #[test]
    fn difference_of_squares() {
        let p = (q() + MultiPoly::one()) * (q() - MultiPoly::one());
        assert_eq!(p, q().pow(2) - MultiPoly::one());
        assert_eq!(p.to_string(), "q^2 - 1");
    }

    #[test]
    fn times_zero_is_empty() {
        let p = q().pow(3) + MultiPoly::var("v:0");
        let z = &p * &MultiPoly::zero();
        assert!(z.is_zero());
        assert_eq!(z.len(), 0);
        assert_eq!(z.to_string(), "0");
    }

    #[test]
    fn two_variable_expansion() {
        let q1 = MultiPoly::var("q1");
        let q2 = MultiPoly::var("q2");
        let p = (&q2 - &q1) * (&q2 - &q1.scale(&int(2)));
        let expected = q2.pow(2) - (&q1 * &q2).scale(&int(3)) + q1.pow(2).scale(&int(2));
        assert_eq!(p, expected);
        assert_eq!(p.to_string(), "2*q1^2 - 3*q1*q2 + q2^2");
    }

    #[test]
    fn falling_factorials() {
        assert_eq!(falling_factorial(&q(), 3).to_string(), "q^3 - 3*q^2 + 2*q");
        assert!(falling_factorial(&q(), 0).is_one());
        let rs = MultiPoly::var("r") * MultiPoly::var("s");
        assert_eq!(falling_factorial(&rs, 2).to_string(), "r^2*s^2 - r*s");
        assert_eq!(rising_factorial(&q(), 3).to_string(), "q^3 + 3*q^2 + 2*q");
    }

    #[test]
    fn rendering() {
        let p = MultiPoly::var("q").pow(2) + MultiPoly::var("q") * MultiPoly::var("v:0");
        assert_eq!(p.to_string(), "q^2 + q*v:0");
        let r = MultiPoly::var("y") + MultiPoly::int(2);
        assert_eq!(r.to_string(), "y + 2");
        let h = MultiPoly::var("q").scale(&rat(-1, 2)) + MultiPoly::constant(rat(3, 4));
        assert_eq!(h.to_string(), "-1/2*q + 3/4");
    }

    #[test]
    fn json_round_trip() {
        let p = MultiPoly::var("q").pow(2).scale(&rat(5, 3)) - MultiPoly::var("v:1") + MultiPoly::int(7);
        let j = p.to_json();
        assert_eq!(j["vars"], json!(["q", "v:1"]));
        assert_eq!(j["terms"][0], json!({"c": "5/3", "e": [2, 0]}));
        assert_eq!(MultiPoly::from_json(&j).unwrap(), p);
    }

    #[test]
    fn substitution_and_calculus() {
        let q1 = Var::new("q1");
        let q2 = Var::new("q2");
        // simultaneous swap
        let p = MultiPoly::from_var(&q1).pow(2) + MultiPoly::from_var(&q2);
        let swapped = p.substitute_all(&BTreeMap::from([
            (q1.clone(), MultiPoly::from_var(&q2)),
            (q2.clone(), MultiPoly::from_var(&q1)),
        ]));
        assert_eq!(swapped, MultiPoly::from_var(&q2).pow(2) + MultiPoly::from_var(&q1));
        let d = p.derivative(&q1);
        assert_eq!(d, MultiPoly::from_var(&q1).scale(&int(2)));
        let v = p.substitute(&q1, &MultiPoly::int(3));
        assert_eq!(v, MultiPoly::from_var(&q2) + MultiPoly::int(9));
        assert!(p.div_var_exact(&q1).is_err());
        let qq = MultiPoly::var("q").pow(3) + MultiPoly::var("q");
        assert_eq!(
            qq.div_var_exact(&Var::new("q")).unwrap(),
            MultiPoly::var("q").pow(2) + MultiPoly::one()
        );
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("-3/6").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("42").unwrap(), int(42));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}

//! Sparse Laurent polynomials in `q` and `t`, and rational functions whose
//! denominators are products of factors `1 - q^a t^b`.
//!
//! A monomial `q^a t^b` stands for `p^{a - b s}`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::invalid;
use crate::{Error, Result};

/// Exponent pair `(eq, et)`.
pub type Exponent = (i64, i64);

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<Exponent, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, BigInt::one())
    }

    pub fn monomial(eq: i64, et: i64, coef: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term((eq, et), coef.into());
        p
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    /// `1 - q^a t^b`.
    pub fn one_minus(a: i64, b: i64) -> Self {
        Self::one() - Self::monomial(a, b, 1)
    }

    pub fn add_term(&mut self, e: Exponent, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, BigInt> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(One::is_one)
    }

    pub fn coefficient(&self, eq: i64, et: i64) -> BigInt {
        self.terms.get(&(eq, et)).cloned().unwrap_or_default()
    }

    pub fn min_t_degree(&self) -> Option<i64> {
        self.terms.keys().map(|&(_, t)| t).min()
    }

    pub fn max_t_degree(&self) -> Option<i64> {
        self.terms.keys().map(|&(_, t)| t).max()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, x)| (e, x * c)).collect(),
        }
    }

    pub fn shift(&self, dq: i64, dt: i64) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| ((a + dq, b + dt), c.clone()))
                .collect(),
        }
    }

    /// `q -> q^{-1}`, `t -> t^{-1}`.
    pub fn substitute_inverse(&self) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| ((-a, -b), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Exact quotient by `1 - q^a t^b`, if it exists.
    ///
    /// Terms are grouped by coset of `Z·(a,b)`; within a coset the quotient
    /// is the running sum of the coefficients, which must end at zero.
    pub fn div_one_minus(&self, a: i64, b: i64) -> Option<Self> {
        if (a, b) == (0, 0) {
            return None;
        }
        let mut cosets: BTreeMap<Exponent, BTreeMap<i64, BigInt>> = BTreeMap::new();
        for (&(eq, et), c) in &self.terms {
            let k = if b != 0 { et.div_euclid(b) } else { eq.div_euclid(a) };
            let rep = (eq - k * a, et - k * b);
            cosets.entry(rep).or_default().insert(k, c.clone());
        }
        let mut out = Self::zero();
        for (rep, line) in cosets {
            let (&lo, _) = line.first_key_value()?;
            let (&hi, _) = line.last_key_value()?;
            let mut acc = BigInt::zero();
            for k in lo..=hi {
                if let Some(c) = line.get(&k) {
                    acc += c;
                }
                if k == hi {
                    if !acc.is_zero() {
                        return None;
                    }
                } else if !acc.is_zero() {
                    out.terms.insert((rep.0 + k * a, rep.1 + k * b), acc.clone());
                }
            }
        }
        Some(out)
    }

    /// Value at `q = p` (coefficients only depend on `t`), as a map from
    /// `t`-degree to rational coefficient.
    pub fn specialize_q(&self, p: &BigInt) -> BTreeMap<i64, BigRational> {
        let mut out: BTreeMap<i64, BigRational> = BTreeMap::new();
        for (&(a, b), c) in &self.terms {
            let v = BigRational::from_integer(c.clone()) * rational_pow(p, a);
            let entry = out.entry(b).or_insert_with(BigRational::zero);
            *entry += v;
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    fn fmt_with(&self, f: &mut fmt::Formatter<'_>, latex: bool) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // ascending t-degree, then q-degree
        let mut keys: Vec<&Exponent> = self.terms.keys().collect();
        keys.sort_by_key(|&&(a, b)| (b, a));
        for (i, &&(a, b)) in keys.iter().enumerate() {
            let c = &self.terms[&(a, b)];
            let mono = if latex { latex_monomial(a, b) } else { text_monomial(a, b) };
            let mag = c.abs();
            let body = match (mono.is_empty(), mag.is_one()) {
                (true, _) => mag.to_string(),
                (false, true) => mono,
                (false, false) => format!("{mag} {mono}"),
            };
            match (i, c.is_negative()) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

pub(crate) fn rational_pow(p: &BigInt, e: i64) -> BigRational {
    let mag = num_traits::pow(p.clone(), e.unsigned_abs() as usize);
    if e >= 0 {
        BigRational::from_integer(mag)
    } else {
        BigRational::new(BigInt::one(), mag)
    }
}

fn power(var: &str, e: i64) -> String {
    match e {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{e}"),
    }
}

fn text_monomial(a: i64, b: i64) -> String {
    [power("q", a), power("t", b)]
        .into_iter()
        .filter(|s| !s.is_empty())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Exponent of `p` in `p^{a - b s}`.
fn latex_exponent(a: i64, b: i64) -> String {
    let s_coef = -b;
    let s_part = match s_coef {
        0 => String::new(),
        1 => "s".to_string(),
        -1 => "-s".to_string(),
        c => format!("{c}s"),
    };
    match (a, s_coef) {
        (_, 0) => a.to_string(),
        (0, _) => s_part,
        (_, c) if c > 0 => format!("{a}+{s_part}"),
        _ => format!("{a}{s_part}"),
    }
}

fn latex_monomial(a: i64, b: i64) -> String {
    if (a, b) == (0, 0) {
        return String::new();
    }
    let e = latex_exponent(a, b);
    if e == "1" {
        "p".into()
    } else {
        format!("p^{{{e}}}")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, false)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, -c);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term((a1 + a2, b1 + b2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&BigInt::from(-1))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

/// The denominator factor `1 - q^a t^b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factor {
    pub a: i64,
    pub b: i64,
}

impl Factor {
    pub fn new(a: i64, b: i64) -> Result<Self> {
        if (a, b) == (0, 0) {
            return Err(invalid("denominator factor (1 - q^0 t^0) is zero"));
        }
        Ok(Factor { a, b })
    }

    /// Canonical direction: `b > 0`, or `b = 0` and `a > 0`.
    pub fn is_normalized(&self) -> bool {
        self.b > 0 || (self.b == 0 && self.a > 0)
    }

    pub fn as_poly(&self) -> LaurentPoly {
        LaurentPoly::one_minus(self.a, self.b)
    }

    fn sort_key(&self) -> (i64, i64) {
        (self.b, self.a)
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(1-{})", text_monomial(self.a, self.b))
    }
}

/// `numerator / ∏ (1 - q^a t^b)`, kept in canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFnQT {
    numerator: LaurentPoly,
    factors: Vec<Factor>,
}

impl RationalFnQT {
    pub fn new(numerator: LaurentPoly, factors: Vec<Factor>) -> Self {
        let mut f = RationalFnQT { numerator, factors };
        f.canonicalize();
        f
    }

    pub fn from_pairs(numerator: LaurentPoly, pairs: &[(i64, i64)]) -> Result<Self> {
        let factors = pairs
            .iter()
            .map(|&(a, b)| Factor::new(a, b))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(numerator, factors))
    }

    pub fn polynomial(p: LaurentPoly) -> Self {
        Self::new(p, Vec::new())
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.numerator
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    /// Orients every factor, cancels factors dividing the numerator exactly,
    /// and sorts the multiset by `(b, a)`.
    fn canonicalize(&mut self) {
        if self.numerator.is_zero() {
            self.factors.clear();
            return;
        }
        for fac in &mut self.factors {
            if !fac.is_normalized() {
                // 1/(1 - x^{-1}) = -x/(1 - x)
                self.numerator = -&self.numerator.shift(-fac.a, -fac.b);
                *fac = Factor { a: -fac.a, b: -fac.b };
            }
        }
        self.factors.sort_by_key(Factor::sort_key);
        let mut kept = Vec::with_capacity(self.factors.len());
        for fac in std::mem::take(&mut self.factors) {
            match self.numerator.div_one_minus(fac.a, fac.b) {
                Some(q) => self.numerator = q,
                None => kept.push(fac),
            }
        }
        self.factors = kept;
    }

    pub fn mul(&self, other: &RationalFnQT) -> RationalFnQT {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        RationalFnQT::new(&self.numerator * &other.numerator, factors)
    }

    /// Sum over the least common multiple of the two factor multisets.
    pub fn add(&self, other: &RationalFnQT) -> RationalFnQT {
        let (only_self, only_other, common) = split_multisets(&self.factors, &other.factors);
        let num = &(&self.numerator * &product(&only_other))
            + &(&other.numerator * &product(&only_self));
        let mut factors = common;
        factors.extend(only_self);
        factors.extend(only_other);
        RationalFnQT::new(num, factors)
    }

    pub fn scale_monomial(&self, coef: impl Into<BigInt>, a: i64, b: i64) -> RationalFnQT {
        RationalFnQT::new(
            &self.numerator * &LaurentPoly::monomial(a, b, coef),
            self.factors.clone(),
        )
    }

    /// `q -> q^{-1}`, `t -> t^{-1}`, applied factor-wise.
    pub fn substitute_inverse(&self) -> RationalFnQT {
        RationalFnQT::new(
            self.numerator.substitute_inverse(),
            self.factors.iter().map(|f| Factor { a: -f.a, b: -f.b }).collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn to_latex(&self) -> String {
        let num = LatexPoly(&self.numerator).to_string();
        if self.factors.is_empty() {
            return num;
        }
        let den: String = self
            .factors
            .iter()
            .map(|f| format!("(1-{})", latex_monomial(f.a, f.b)))
            .collect();
        format!("\\frac{{{num}}}{{{den}}}")
    }

    pub fn to_json(&self) -> Value {
        let num: Vec<Value> = self
            .numerator
            .terms
            .iter()
            .map(|(&(a, b), c)| json!([a, b, bigint_to_json(c)]))
            .collect();
        let den: Vec<Value> = self.factors.iter().map(|f| json!([f.a, f.b])).collect();
        json!({ "num": num, "den": den })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("rational function JSON: {what}"));
        let num = v.get("num").and_then(Value::as_array).ok_or_else(|| bad("missing num"))?;
        let den = v.get("den").and_then(Value::as_array).ok_or_else(|| bad("missing den"))?;
        let mut p = LaurentPoly::zero();
        for term in num {
            let t = term.as_array().filter(|t| t.len() == 3).ok_or_else(|| bad("term"))?;
            let a = t[0].as_i64().ok_or_else(|| bad("eq"))?;
            let b = t[1].as_i64().ok_or_else(|| bad("et"))?;
            p.add_term((a, b), bigint_from_json(&t[2]).ok_or_else(|| bad("coef"))?);
        }
        let mut pairs = Vec::new();
        for f in den {
            let t = f.as_array().filter(|t| t.len() == 2).ok_or_else(|| bad("factor"))?;
            let a = t[0].as_i64().ok_or_else(|| bad("a"))?;
            let b = t[1].as_i64().ok_or_else(|| bad("b"))?;
            pairs.push((a, b));
        }
        Self::from_pairs(p, &pairs)
    }
}

pub(crate) fn bigint_to_json(c: &BigInt) -> Value {
    match c.to_i64() {
        Some(x) => json!(x),
        None => json!(c.to_string()),
    }
}

fn bigint_from_json(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from),
        Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

struct LatexPoly<'a>(&'a LaurentPoly);

impl fmt::Display for LatexPoly<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt_with(f, true)
    }
}

fn product(factors: &[Factor]) -> LaurentPoly {
    factors
        .iter()
        .fold(LaurentPoly::one(), |acc, f| &acc * &f.as_poly())
}

/// Splits two factor multisets into (left only, right only, common).
fn split_multisets(left: &[Factor], right: &[Factor]) -> (Vec<Factor>, Vec<Factor>, Vec<Factor>) {
    let mut remaining: Vec<Factor> = right.to_vec();
    let mut only_left = Vec::new();
    let mut common = Vec::new();
    for f in left {
        if let Some(pos) = remaining.iter().position(|g| g == f) {
            common.push(remaining.swap_remove(pos));
        } else {
            only_left.push(*f);
        }
    }
    (only_left, remaining, common)
}

impl fmt::Display for RationalFnQT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "{}", self.numerator);
        }
        write!(f, "({}) / (", self.numerator)?;
        for fac in &self.factors {
            write!(f, "{fac}")?;
        }
        write!(f, ")")
    }
}

/// Cross-multiplied comparison after cancelling shared factors.
pub fn rational_equal(f: &RationalFnQT, g: &RationalFnQT) -> bool {
    let (only_f, only_g, _) = split_multisets(&f.factors, &g.factors);
    &f.numerator * &product(&only_g) == &g.numerator * &product(&only_f)
}

/// Power series in `t` truncated after `t^max_t_degree`; coefficients are
/// Laurent polynomials in `q` alone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    pub max_t_degree: usize,
    pub coeffs: Vec<LaurentPoly>,
}

impl TruncatedSeries {
    /// Coefficient of `t^k` as a polynomial in `q` (stored with `et = 0`).
    pub fn coefficient(&self, k: usize) -> &LaurentPoly {
        &self.coeffs[k]
    }

    pub fn specialize(&self, p: &BigInt) -> Vec<BigRational> {
        self.coeffs
            .iter()
            .map(|c| c.specialize_q(p).remove(&0).unwrap_or_else(BigRational::zero))
            .collect()
    }

    /// Whether every coefficient of every `q`-polynomial is non-negative.
    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.coeffs
            .iter()
            .all(|c| c.terms.values().all(|x| !x.is_negative()))
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.coeffs.iter().enumerate() {
            writeln!(f, "t^{k}: {c}")?;
        }
        Ok(())
    }
}

/// Expands `f` as a power series in `t` up to degree `k`.
pub fn series_expand(f: &RationalFnQT, k: usize) -> Result<TruncatedSeries> {
    let mut numerator = f.numerator.clone();
    let mut geometric = Vec::new();
    for fac in &f.factors {
        if fac.b > 0 {
            geometric.push(*fac);
        } else {
            numerator = numerator.div_one_minus(fac.a, fac.b).ok_or_else(|| {
                Error::NotExpandable(format!("factor {fac} is constant in t"))
            })?;
        }
    }
    if numerator.min_t_degree().is_some_and(|d| d < 0) {
        return Err(Error::NotExpandable("numerator has negative t-degree".into()));
    }
    let mut coeffs = vec![LaurentPoly::zero(); k + 1];
    for (&(a, b), c) in &numerator.terms {
        if (b as usize) <= k {
            coeffs[b as usize].add_term((a, 0), c.clone());
        }
    }
    for fac in geometric {
        let step = fac.b as usize;
        for deg in step..=k {
            let add = coeffs[deg - step].shift(fac.a, 0);
            coeffs[deg] = &coeffs[deg] + &add;
        }
    }
    Ok(TruncatedSeries { max_t_degree: k, coeffs })
}

/// A rational function of `t` alone, `numerator / ∏ (1 - c t^b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnivariateRational {
    pub numerator: BTreeMap<i64, BigRational>,
    pub factors: Vec<(BigRational, i64)>,
}

impl UnivariateRational {
    pub fn series_expand(&self, k: usize) -> Result<Vec<BigRational>> {
        let mut num = self.numerator.clone();
        let mut geometric = Vec::new();
        for (c, b) in &self.factors {
            if *b > 0 {
                geometric.push((c.clone(), *b as usize));
            } else if *b == 0 {
                let d = BigRational::one() - c;
                if d.is_zero() {
                    return Err(Error::NotExpandable("zero denominator".into()));
                }
                for v in num.values_mut() {
                    *v /= &d;
                }
            } else {
                return Err(Error::NotExpandable("negative t-degree factor".into()));
            }
        }
        if num.keys().next().is_some_and(|&d| d < 0) {
            return Err(Error::NotExpandable("numerator has negative t-degree".into()));
        }
        let mut out = vec![BigRational::zero(); k + 1];
        for (&d, c) in &num {
            if (d as usize) <= k {
                out[d as usize] += c;
            }
        }
        for (c, step) in geometric {
            for deg in step..=k {
                let add = &out[deg - step] * &c;
                out[deg] += add;
            }
        }
        Ok(out)
    }
}

fn fmt_t_term(c: &BigRational, d: i64) -> String {
    let t = power("t", d);
    match (t.is_empty(), c.is_one()) {
        (true, _) => c.to_string(),
        (false, true) => t,
        (false, false) => format!("{c}{t}"),
    }
}

impl fmt::Display for UnivariateRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = if self.numerator.is_empty() {
            "0".to_string()
        } else {
            let mut s = String::new();
            for (i, (&d, c)) in self.numerator.iter().enumerate() {
                let body = fmt_t_term(&c.abs(), d);
                match (i, c.is_negative()) {
                    (0, false) => s.push_str(&body),
                    (0, true) => s.push_str(&format!("-{body}")),
                    (_, false) => s.push_str(&format!(" + {body}")),
                    (_, true) => s.push_str(&format!(" - {body}")),
                }
            }
            s
        };
        if self.factors.is_empty() {
            return write!(f, "{num}");
        }
        let den: String = self
            .factors
            .iter()
            .map(|(c, b)| format!("(1-{})", fmt_t_term(c, *b)))
            .collect();
        let num = if self.numerator.len() == 1 { num } else { format!("({num})") };
        if self.factors.len() == 1 {
            write!(f, "{num} / {den}")
        } else {
            write!(f, "{num} / ({den})")
        }
    }
}

/// Substitutes `q := p`.
pub fn specialize_prime(f: &RationalFnQT, p: i64) -> Result<UnivariateRational> {
    if p < 2 {
        return Err(invalid(format!("prime must be at least 2, got {p}")));
    }
    let p = BigInt::from(p);
    Ok(UnivariateRational {
        numerator: f.numerator.specialize_q(&p),
        factors: f
            .factors
            .iter()
            .map(|fac| (rational_pow(&p, fac.a), fac.b))
            .collect(),
    })
}

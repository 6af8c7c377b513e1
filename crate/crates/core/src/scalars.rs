//! Exact coefficients.
//!
//! A [`Scalar`] is a finite sum of terms `c * m * eps^k` where `c` is a
//! [`GaussianRational`], `m` a [`ParamMonomial`] in commuting formal
//! parameters (`q`, `lam`, ...) and `eps` the contraction parameter. Every
//! scalar carries a truncation order `N`; terms with `k > N` are dropped
//! after each operation.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Name of the deformation parameter of SU_q(2).
pub const Q: &str = "q";
/// Name of the parameter `1/kappa`.
pub const LAMBDA: &str = "lam";

pub const DEFAULT_ORDER: u32 = 1;
pub const MAX_ORDER: u32 = 4;

/// `re + im * i` with arbitrary-precision rational parts.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        Self::new(BigRational::from_integer(n.into()), BigRational::zero())
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::new(BigRational::new(num.into(), den.into()), BigRational::zero())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn i() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Self::new(&self.re / &n, -&self.im / &n))
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-&self.re, -&self.im)
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl GaussianRational {
    /// Splits into (negative, magnitude text). The text is `None` when the
    /// magnitude is exactly 1, so callers can suppress the factor.
    pub(crate) fn signed_parts(&self) -> (bool, Option<String>) {
        if self.im.is_zero() {
            let neg = self.re.is_negative();
            let a = self.re.abs();
            if a.is_one() {
                (neg, None)
            } else {
                (neg, Some(fmt_rational(&a)))
            }
        } else if self.re.is_zero() {
            let neg = self.im.is_negative();
            let a = self.im.abs();
            if a.is_one() {
                (neg, Some("i".to_string()))
            } else {
                (neg, Some(format!("{}*i", fmt_rational(&a))))
            }
        } else {
            let sign = if self.im.is_negative() { '-' } else { '+' };
            let a = self.im.abs();
            let im = if a.is_one() {
                "i".to_string()
            } else {
                format!("{}*i", fmt_rational(&a))
            };
            (false, Some(format!("({}{}{})", fmt_rational(&self.re), sign, im)))
        }
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (neg, body) = self.signed_parts();
        let body = body.unwrap_or_else(|| "1".to_string());
        if neg {
            write!(f, "-{body}")
        } else {
            write!(f, "{body}")
        }
    }
}

/// Product of commuting parameters with integer (possibly negative)
/// exponents. Zero exponents are never stored; factors are sorted by name.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct ParamMonomial(SmallVec<[(Arc<str>, i32); 2]>);

impl ParamMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(name: &str, exp: i32) -> Self {
        let mut m = Self::default();
        if exp != 0 {
            m.0.push((Arc::from(name), exp));
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, name: &str) -> i32 {
        self.0
            .iter()
            .find(|(n, _)| &**n == name)
            .map_or(0, |(_, e)| *e)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, i32)> {
        self.0.iter().map(|(n, e)| (&**n, *e))
    }

    pub fn without(&self, name: &str) -> Self {
        Self(self.0.iter().filter(|(n, _)| &**n != name).cloned().collect())
    }

    pub fn inv(&self) -> Self {
        Self(self.0.iter().map(|(n, e)| (n.clone(), -e)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out: SmallVec<[(Arc<str>, i32); 2]> = SmallVec::new();
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.0, &other.0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push(b[j].clone());
                j += 1;
            } else {
                let e = a[i].1 + b[j].1;
                if e != 0 {
                    out.push((a[i].0.clone(), e));
                }
                i += 1;
                j += 1;
            }
        }
        Self(out)
    }
}

impl fmt::Display for ParamMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .iter()
            .map(|(n, e)| if e == 1 { n.to_string() } else { format!("{n}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Key of one scalar term: power of `eps`, then the parameter monomial.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct TermKey {
    pub eps: u32,
    pub mono: ParamMonomial,
}

/// Truncated polynomial in `eps` with Laurent-monomial coefficients over the
/// Gaussian rationals.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Scalar {
    terms: BTreeMap<TermKey, GaussianRational>,
    order: u32,
}

impl Scalar {
    pub fn zero(order: u32) -> Self {
        Self { terms: BTreeMap::new(), order }
    }

    pub fn one(order: u32) -> Self {
        Self::constant(GaussianRational::one(), order)
    }

    pub fn from_int(n: i64, order: u32) -> Self {
        Self::constant(GaussianRational::from_int(n), order)
    }

    pub fn i(order: u32) -> Self {
        Self::constant(GaussianRational::i(), order)
    }

    pub fn constant(c: GaussianRational, order: u32) -> Self {
        Self::term(c, ParamMonomial::one(), 0, order)
    }

    pub fn param(name: &str, exp: i32, order: u32) -> Self {
        Self::term(GaussianRational::one(), ParamMonomial::var(name, exp), 0, order)
    }

    pub fn eps(order: u32) -> Self {
        Self::term(GaussianRational::one(), ParamMonomial::one(), 1, order)
    }

    pub fn term(c: GaussianRational, mono: ParamMonomial, eps: u32, order: u32) -> Self {
        let mut s = Self::zero(order);
        if !c.is_zero() && eps <= order {
            s.terms.insert(TermKey { eps, mono }, c);
        }
        s
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(k, c)| k.eps == 0 && k.mono.is_one() && c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TermKey, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the unit monomial at `eps^0`, if the scalar is such a
    /// pure constant.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        if self.is_zero() {
            return Some(GaussianRational::zero());
        }
        match self.terms.iter().next() {
            Some((k, c)) if self.terms.len() == 1 && k.eps == 0 && k.mono.is_one() => {
                Some(c.clone())
            }
            _ => None,
        }
    }

    pub fn max_eps_degree(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.eps).max()
    }

    fn add_term(&mut self, key: TermKey, c: GaussianRational) {
        if key.eps > self.order || c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order != other.order {
            Err(Error::OrderMismatch(self.order, other.order))
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let mut out = Self::zero(self.order);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let eps = ka.eps + kb.eps;
                if eps > self.order {
                    continue;
                }
                out.add_term(TermKey { eps, mono: ka.mono.mul(&kb.mono) }, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn add_assign_checked(&mut self, other: &Self) -> Result<()> {
        self.check_order(other)?;
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c.clone());
        }
        Ok(())
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        let mut out = Self::zero(self.order);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * c);
        }
        out
    }

    /// Complex conjugation of every coefficient; parameters and `eps` are real.
    pub fn conjugate(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c.conj())).collect(),
            order: self.order,
        }
    }

    /// Drops terms above `order` and re-labels the truncation order.
    pub fn with_order(&self, order: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.eps <= order)
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
            order,
        }
    }

    /// The `eps`-free coefficient of `eps^k`.
    pub fn eps_coefficient(&self, k: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(key, _)| key.eps == k)
                .map(|(key, c)| (TermKey { eps: 0, mono: key.mono.clone() }, c.clone()))
                .collect(),
            order: self.order,
        }
    }

    /// Replaces every power `name^m` by `f(m)`.
    pub fn substitute<F>(&self, name: &str, mut f: F) -> Result<Self>
    where
        F: FnMut(i32) -> Result<Self>,
    {
        let mut out = Self::zero(self.order);
        for (k, c) in &self.terms {
            let e = k.mono.exponent(name);
            let rest = Self::term(c.clone(), k.mono.without(name), k.eps, self.order);
            if e == 0 {
                out.add_assign_checked(&rest)?;
            } else {
                out.add_assign_checked(&rest.checked_mul(&f(e)?)?)?;
            }
        }
        Ok(out)
    }

    /// Sets parameter `name` to zero. Fails on negative powers of it.
    pub fn specialize_zero(&self, name: &str) -> Result<Self> {
        self.substitute(name, |e| {
            if e > 0 {
                Ok(Self::zero(self.order))
            } else {
                Err(Error::NotInvertible(format!("{name}^{e} at {name} = 0")))
            }
        })
    }

    /// Inverse of a single-term scalar without `eps`.
    pub fn try_inverse(&self) -> Result<Self> {
        let mut it = self.terms.iter();
        match (it.next(), it.next()) {
            (Some((k, c)), None) if k.eps == 0 => {
                let ci = c
                    .inv()
                    .ok_or_else(|| Error::NotInvertible(self.to_string()))?;
                Ok(Self::term(ci, k.mono.inv(), 0, self.order))
            }
            _ => Err(Error::NotInvertible(self.to_string())),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one(self.order);
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    pub fn mentions(&self, name: &str) -> bool {
        self.terms.keys().any(|k| k.mono.exponent(name) != 0)
    }
}

/// Truncated expansion of `q^m` under `q = exp(lam * eps)`:
/// `sum_{k=0..order} (m lam eps)^k / k!`.
pub fn q_power(m: i32, order: u32) -> Scalar {
    let mut out = Scalar::zero(order);
    let mut fact = BigInt::one();
    let mut mk = BigInt::one();
    for k in 0..=order {
        if k > 0 {
            fact *= BigInt::from(k);
            mk *= BigInt::from(m);
        }
        let c = BigRational::new(mk.clone(), fact.clone());
        out.add_term(
            TermKey { eps: k, mono: ParamMonomial::var(LAMBDA, k as i32) },
            GaussianRational::new(c, BigRational::zero()),
        );
    }
    out
}

macro_rules! scalar_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr for &Scalar {
            type Output = Scalar;
            fn $method(self, o: &Scalar) -> Scalar {
                self.$checked(o).expect("scalar truncation order mismatch")
            }
        }
        impl $tr for Scalar {
            type Output = Scalar;
            fn $method(self, o: Scalar) -> Scalar {
                (&self).$method(&o)
            }
        }
    };
}

scalar_binop!(Add, add, checked_add);
scalar_binop!(Sub, sub, checked_sub);
scalar_binop!(Mul, mul, checked_mul);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
            order: self.order,
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// One printed scalar term: `(negative, factors)` where `factors` are joined
/// with `*` by callers (coefficient, parameters, `eps`). An empty factor list
/// means the term is `+-1`.
pub(crate) fn term_factors(key: &TermKey, c: &GaussianRational) -> (bool, Vec<String>) {
    let (neg, coef) = c.signed_parts();
    let mut out = Vec::new();
    if let Some(coef) = coef {
        out.push(coef);
    }
    for (n, e) in key.mono.iter() {
        out.push(if e == 1 { n.to_string() } else { format!("{n}^{e}") });
    }
    match key.eps {
        0 => {}
        1 => out.push("eps".to_string()),
        k => out.push(format!("eps^{k}")),
    }
    (neg, out)
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (k, c)) in self.terms.iter().enumerate() {
            let (neg, factors) = term_factors(k, c);
            let body = if factors.is_empty() { "1".to_string() } else { factors.join("*") };
            match (idx, neg) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

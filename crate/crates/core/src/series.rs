//! Sparse truncated power series in `r >= 1` variables over [`MotivicClass`].
//!
//! Series are graded by exponent vectors in `Z^r_{>=0}` and truncated by
//! *total* degree: a series of order `D` stores exactly the coefficients
//! of total degree `<= D`. Binary operations truncate to the minimum of
//! the two orders and are exact below it.
//!
//! Invariants:
//! - no stored coefficient is zero
//! - every stored exponent vector has the series arity and total degree `<= D`

use std::collections::BTreeMap;
use std::fmt;

use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::motivic::MotivicClass;

/// An exponent vector: `r >= 1` nonnegative entries, one per variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(entries: Vec<u32>) -> Self {
        assert!(!entries.is_empty(), "exponent vector needs arity >= 1");
        Self(entries)
    }

    /// Single-variable exponent `(n)`.
    pub fn single(n: u32) -> Self {
        Self(vec![n])
    }

    /// The zero vector of the given arity.
    pub fn zeros(arity: usize) -> Self {
        Self::new(vec![0; arity])
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    /// Sum of the entries (the total degree of the monomial).
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn get(&self, v: usize) -> u32 {
        self.0[v]
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn add(&self, other: &Self) -> Self {
        Self(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    fn scale(&self, k: u32) -> Self {
        Self(self.0.iter().map(|e| e * k).collect())
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", e)?;
        }
        write!(f, ")")
    }
}

/// A truncated power series with motivic coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MotivicSeries {
    arity: usize,
    order: u32,
    coeffs: BTreeMap<ExponentVector, MotivicClass>,
}

impl MotivicSeries {
    /// The zero series.
    pub fn zero(arity: usize, order: u32) -> Self {
        assert!(arity >= 1, "arity must be >= 1");
        Self {
            arity,
            order,
            coeffs: BTreeMap::new(),
        }
    }

    /// The constant series `1`.
    pub fn one(arity: usize, order: u32) -> Self {
        let mut s = Self::zero(arity, order);
        s.set_coeff(ExponentVector::zeros(arity), MotivicClass::one());
        s
    }

    /// The series `c * t^e`.
    pub fn monomial(c: MotivicClass, e: ExponentVector, order: u32) -> Self {
        let mut s = Self::zero(e.arity(), order);
        s.set_coeff(e, c);
        s
    }

    /// Builds a series from `(exponents, class)` pairs.
    pub fn from_terms<I>(arity: usize, order: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (ExponentVector, MotivicClass)>,
    {
        let mut s = Self::zero(arity, order);
        for (e, c) in terms {
            let prev = s.coeff(&e);
            s.set_coeff(e, &prev + &c);
        }
        s
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Truncation order: coefficients are exact for total degree `<= order`.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Coefficient at `e` (zero when absent).
    pub fn coeff(&self, e: &ExponentVector) -> MotivicClass {
        self.coeffs.get(e).cloned().unwrap_or_else(MotivicClass::zero)
    }

    /// Single-variable convenience: coefficient of `t^n`.
    pub fn coeff1(&self, n: u32) -> MotivicClass {
        assert_eq!(self.arity, 1, "coeff1 needs an arity-1 series");
        self.coeff(&ExponentVector::single(n))
    }

    pub fn constant_term(&self) -> MotivicClass {
        self.coeff(&ExponentVector::zeros(self.arity))
    }

    /// Sets a coefficient, dropping zeros and anything beyond the order.
    pub fn set_coeff(&mut self, e: ExponentVector, c: MotivicClass) {
        assert_eq!(e.arity(), self.arity, "exponent arity mismatch");
        if e.total() > self.order {
            return;
        }
        if c.is_zero() {
            self.coeffs.remove(&e);
        } else {
            self.coeffs.insert(e, c);
        }
    }

    /// Iterates over nonzero coefficients in ascending lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (&ExponentVector, &MotivicClass)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.constant_term().is_one()
    }

    /// Re-truncates to a (smaller) order.
    pub fn truncated(&self, order: u32) -> Self {
        let mut out = Self::zero(self.arity, order);
        for (e, c) in &self.coeffs {
            if e.total() <= order {
                out.coeffs.insert(e.clone(), c.clone());
            }
        }
        out
    }

    /// Applies a map to every coefficient, dropping resulting zeros.
    pub fn map_coeffs(&self, mut f: impl FnMut(&ExponentVector, &MotivicClass) -> MotivicClass) -> Self {
        let mut out = Self::zero(self.arity, self.order);
        for (e, c) in &self.coeffs {
            out.set_coeff(e.clone(), f(e, c));
        }
        out
    }

    fn merged(&self, rhs: &Self, negate_rhs: bool) -> Self {
        assert_eq!(self.arity, rhs.arity, "series arity mismatch");
        let order = self.order.min(rhs.order);
        let mut out = self.truncated(order);
        for (e, c) in &rhs.coeffs {
            if e.total() > order {
                continue;
            }
            let prev = out.coeff(e);
            let next = if negate_rhs { &prev - c } else { &prev + c };
            out.set_coeff(e.clone(), next);
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.merged(rhs, false)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.merged(rhs, true)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.arity, rhs.arity, "series arity mismatch");
        let order = self.order.min(rhs.order);
        let mut out = Self::zero(self.arity, order);
        for (ea, ca) in &self.coeffs {
            let ta = ea.total();
            if ta > order {
                continue;
            }
            for (eb, cb) in &rhs.coeffs {
                if ta + eb.total() > order {
                    continue;
                }
                let e = ea.add(eb);
                let prev = out.coeff(&e);
                out.set_coeff(e, &prev + &(ca * cb));
            }
        }
        out
    }

    /// Scales every coefficient by a class.
    pub fn scale(&self, c: &MotivicClass) -> Self {
        self.map_coeffs(|_, v| v * c)
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|_, v| -v)
    }

    /// Multiplicative inverse up to the order.
    ///
    /// Panics unless the constant term is `1`: only such series are units
    /// that stay inside `Z[L, L^-1]` coefficients.
    pub fn invert(&self) -> Self {
        assert!(
            self.constant_term().is_one(),
            "cannot invert a series whose constant term is not 1"
        );
        // c[0] = 1, c[e] = -sum_{0 < d <= e} a[d] * c[e - d], filled in
        // ascending total degree.
        let mut inv = Self::one(self.arity, self.order);
        let mut keys: Vec<ExponentVector> = Vec::new();
        collect_exponents(self.arity, self.order, &mut keys);
        keys.sort_by_key(|e| (e.total(), e.clone()));
        for e in keys {
            if e.is_zero() {
                continue;
            }
            let mut sum = MotivicClass::zero();
            for (d, ad) in &self.coeffs {
                if d.is_zero() {
                    continue;
                }
                if let Some(rest) = sub_exponent(&e, d) {
                    let c = inv.coeff(&rest);
                    if !c.is_zero() {
                        sum = &sum + &(ad * &c);
                    }
                }
            }
            inv.set_coeff(e, -&sum);
        }
        inv
    }

    /// Substitutes `t_v -> t_v^k` (`k >= 1`); exponents beyond the order drop.
    pub fn substitute_power(&self, v: usize, k: u32) -> Self {
        assert!(v < self.arity, "variable index out of range");
        assert!(k >= 1, "substitution power must be positive");
        let mut out = Self::zero(self.arity, self.order);
        for (e, c) in &self.coeffs {
            let mut entries = e.entries().to_vec();
            entries[v] *= k;
            let e2 = ExponentVector::new(entries);
            if e2.total() <= self.order {
                out.set_coeff(e2, c.clone());
            }
        }
        out
    }

    /// Substitutes `t_v -> L^j * t_v`: the coefficient at exponent `k`
    /// in variable `v` picks up `L^(j*k)`.
    pub fn scale_variable(&self, v: usize, j: i64) -> Self {
        assert!(v < self.arity, "variable index out of range");
        self.map_coeffs(|e, c| c.shift(j * i64::from(e.get(v))))
    }

    /// Substitutes `t_v -> L^j` (a constant), dropping the variable.
    ///
    /// The result has arity `r - 1`; the series must have arity `>= 2`.
    pub fn eval_variable(&self, v: usize, j: i64) -> Self {
        assert!(v < self.arity, "variable index out of range");
        assert!(self.arity >= 2, "eval_variable needs arity >= 2");
        let mut out = Self::zero(self.arity - 1, self.order);
        for (e, c) in &self.coeffs {
            let k = e.get(v);
            let mut entries = e.entries().to_vec();
            entries.remove(v);
            let e2 = ExponentVector::new(entries);
            let prev = out.coeff(&e2);
            out.set_coeff(e2, &prev + &c.shift(j * i64::from(k)));
        }
        out
    }
}

/// The truncated expansion of `c*t^a / (1 - c*t^a)`, i.e.
/// `sum_{k>=1} c^k t^{k*a}`.
///
/// Panics if `a` is the zero vector (the expansion would not truncate).
pub fn expand_geometric_factor(c: &MotivicClass, a: &ExponentVector, order: u32) -> MotivicSeries {
    assert!(
        !a.is_zero(),
        "geometric factor needs a nonzero exponent vector"
    );
    let mut out = MotivicSeries::zero(a.arity(), order);
    let step = a.total();
    let mut power = c.clone();
    let mut k = 1u32;
    while k * step <= order {
        out.set_coeff(a.scale(k), power.clone());
        k += 1;
        power = &power * c;
    }
    out
}

fn collect_exponents(arity: usize, order: u32, out: &mut Vec<ExponentVector>) {
    fn rec(prefix: &mut Vec<u32>, left: u32, arity: usize, out: &mut Vec<ExponentVector>) {
        if prefix.len() == arity - 1 {
            for last in 0..=left {
                let mut v = prefix.clone();
                v.push(last);
                out.push(ExponentVector::new(v));
            }
            return;
        }
        for e in 0..=left {
            prefix.push(e);
            rec(prefix, left - e, arity, out);
            prefix.pop();
        }
    }
    rec(&mut Vec::new(), order, arity, out);
}

fn sub_exponent(a: &ExponentVector, b: &ExponentVector) -> Option<ExponentVector> {
    let mut out = Vec::with_capacity(a.arity());
    for (x, y) in a.entries().iter().zip(b.entries()) {
        if y > x {
            return None;
        }
        out.push(x - y);
    }
    Some(ExponentVector::new(out))
}

impl fmt::Display for MotivicSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            write!(f, "0")?;
        } else {
            let mut by_degree: Vec<(&ExponentVector, &MotivicClass)> = self.coeffs.iter().collect();
            by_degree.sort_by_key(|(e, _)| (e.total(), (*e).clone()));
            for (i, (e, c)) in by_degree.into_iter().enumerate() {
                if i > 0 {
                    write!(f, " + ")?;
                }
                let coeff_str = if c.is_one() && !e.is_zero() {
                    String::new()
                } else if c.num_terms() > 1 {
                    format!("({})", c)
                } else {
                    format!("{}", c)
                };
                let mono = monomial_string(self.arity, e);
                match (coeff_str.is_empty(), mono.is_empty()) {
                    (true, true) => write!(f, "1")?,
                    (true, false) => write!(f, "{}", mono)?,
                    (false, true) => write!(f, "{}", coeff_str)?,
                    (false, false) => write!(f, "{}*{}", coeff_str, mono)?,
                }
            }
        }
        write!(f, " + O(deg {})", self.order + 1)
    }
}

fn monomial_string(arity: usize, e: &ExponentVector) -> String {
    let mut parts = Vec::new();
    for (v, &k) in e.entries().iter().enumerate() {
        if k == 0 {
            continue;
        }
        let name = if arity == 1 {
            "t".to_string()
        } else {
            format!("t{}", v + 1)
        };
        if k == 1 {
            parts.push(name);
        } else {
            parts.push(format!("{}^{}", name, k));
        }
    }
    parts.join("*")
}

#[derive(Serialize, Deserialize)]
struct CoeffEntry {
    exp: Vec<u32>,
    class: MotivicClass,
}

// Interchange form: {"arity": r, "order": D, "coeffs": [{"exp": [...], "class": {...}}]}
impl Serialize for MotivicSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let entries: Vec<CoeffEntry> = self
            .coeffs
            .iter()
            .map(|(e, c)| CoeffEntry {
                exp: e.entries().to_vec(),
                class: c.clone(),
            })
            .collect();
        let mut s = serializer.serialize_struct("MotivicSeries", 3)?;
        s.serialize_field("arity", &self.arity)?;
        s.serialize_field("order", &self.order)?;
        s.serialize_field("coeffs", &entries)?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for MotivicSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            arity: usize,
            order: u32,
            coeffs: Vec<CoeffEntry>,
        }
        let raw = Raw::deserialize(deserializer)?;
        if raw.arity < 1 {
            return Err(D::Error::custom("series arity must be >= 1"));
        }
        let mut out = MotivicSeries::zero(raw.arity, raw.order);
        for entry in raw.coeffs {
            if entry.exp.len() != raw.arity {
                return Err(D::Error::custom(format!(
                    "exponent {:?} does not match arity {}",
                    entry.exp, raw.arity
                )));
            }
            let e = ExponentVector::new(entry.exp);
            if e.total() > raw.order {
                return Err(D::Error::custom(format!(
                    "exponent {} exceeds order {}",
                    e, raw.order
                )));
            }
            let prev = out.coeff(&e);
            out.set_coeff(e, &prev + &entry.class);
        }
        Ok(out)
    }
}

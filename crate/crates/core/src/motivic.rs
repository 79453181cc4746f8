//! Exact arithmetic in `Z[L, L^-1]`.
//!
//! A [`MotivicClass`] is a Laurent polynomial in the Lefschetz class `L`
//! (the class of the complex affine line) with arbitrary-precision integer
//! coefficients. This is the computable subring of the localized
//! Grothendieck ring of varieties in which every class consumed by the
//! resolution formulas lives: powers of `L`, `L - 1`, and the stratum
//! classes of curve and surface resolutions.
//!
//! Invariants:
//! - no stored coefficient is zero (canonical form)
//! - two values are equal iff their term maps are equal

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::{MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A Laurent polynomial in `L` with exact integer coefficients.
///
/// The term map sends an exponent of `L` (possibly negative) to its
/// nonzero coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct MotivicClass {
    terms: BTreeMap<i64, BigInt>,
}

impl MotivicClass {
    /// The zero class.
    pub fn zero() -> Self {
        Self::default()
    }

    /// The class of a point, `1 = L^0`.
    pub fn one() -> Self {
        Self::l_power(0)
    }

    /// The class `L` of the affine line.
    pub fn l() -> Self {
        Self::l_power(1)
    }

    /// The monomial `L^j`.
    pub fn l_power(j: i64) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(j, BigInt::one());
        Self { terms }
    }

    /// A constant class `c = c * L^0`.
    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// The monomial `c * L^j`.
    pub fn monomial(c: impl Into<BigInt>, j: i64) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(j, c);
        }
        Self { terms }
    }

    /// The class `L - 1` of the punctured affine line.
    pub fn l_minus_one() -> Self {
        Self::monomial(1, 1) - Self::one()
    }

    /// Builds a class from `(exponent, coefficient)` pairs, dropping zeros
    /// and combining repeats.
    pub fn from_terms<I, C>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut out = Self::zero();
        for (j, c) in pairs {
            out.add_term(j, c.into());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&0)
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    /// Coefficient of `L^j` (zero when absent).
    pub fn coeff(&self, j: i64) -> BigInt {
        self.terms.get(&j).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Iterates over `(exponent, coefficient)` pairs in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&i64, &BigInt)> {
        self.terms.iter()
    }

    /// Number of nonzero terms.
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// If this class is a pure power `L^j`, returns `j`.
    pub fn as_l_power(&self) -> Option<i64> {
        if self.terms.len() == 1 {
            let (j, c) = self.terms.iter().next().unwrap();
            if c.is_one() {
                return Some(*j);
            }
        }
        None
    }

    /// If this class is a constant `c * L^0` (or zero), returns `c`.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    fn add_term(&mut self, j: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(j).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&j);
        }
    }

    /// Multiplies by the monomial `L^j`.
    pub fn shift(&self, j: i64) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| (k + j, c.clone()))
            .collect();
        Self { terms }
    }

    /// Ordinary integer power.
    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// The Euler-characteristic ring morphism: evaluates at `L = 1`.
    pub fn euler_char(&self) -> BigInt {
        self.terms.values().sum()
    }
}

impl Add for &MotivicClass {
    type Output = MotivicClass;
    fn add(self, rhs: &MotivicClass) -> MotivicClass {
        let mut out = self.clone();
        for (j, c) in &rhs.terms {
            out.add_term(*j, c.clone());
        }
        out
    }
}

impl Sub for &MotivicClass {
    type Output = MotivicClass;
    fn sub(self, rhs: &MotivicClass) -> MotivicClass {
        let mut out = self.clone();
        for (j, c) in &rhs.terms {
            out.add_term(*j, -c.clone());
        }
        out
    }
}

impl Mul for &MotivicClass {
    type Output = MotivicClass;
    fn mul(self, rhs: &MotivicClass) -> MotivicClass {
        let mut out = MotivicClass::zero();
        for (j, c) in &self.terms {
            for (k, d) in &rhs.terms {
                out.add_term(j + k, c * d);
            }
        }
        out
    }
}

impl Neg for &MotivicClass {
    type Output = MotivicClass;
    fn neg(self) -> MotivicClass {
        let terms = self
            .terms
            .iter()
            .map(|(j, c)| (*j, -c.clone()))
            .collect();
        MotivicClass { terms }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for MotivicClass {
            type Output = MotivicClass;
            fn $method(self, rhs: MotivicClass) -> MotivicClass {
                $trait::$method(&self, &rhs)
            }
        }
        impl $trait<&MotivicClass> for MotivicClass {
            type Output = MotivicClass;
            fn $method(self, rhs: &MotivicClass) -> MotivicClass {
                $trait::$method(&self, rhs)
            }
        }
        impl $trait<MotivicClass> for &MotivicClass {
            type Output = MotivicClass;
            fn $method(self, rhs: MotivicClass) -> MotivicClass {
                $trait::$method(self, &rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for MotivicClass {
    type Output = MotivicClass;
    fn neg(self) -> MotivicClass {
        -&self
    }
}

impl fmt::Display for MotivicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Descending exponent order reads like a polynomial.
        for (idx, (j, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit_coeff = abs.is_one();
            match (*j, unit_coeff) {
                (0, _) => write!(f, "{}", abs)?,
                (1, true) => write!(f, "L")?,
                (1, false) => write!(f, "{}*L", abs)?,
                (_, true) => write!(f, "L^{}", j)?,
                (_, false) => write!(f, "{}*L^{}", abs, j)?,
            }
        }
        Ok(())
    }
}

// Interchange form: a JSON map from decimal exponent strings to integer
// coefficients, e.g. {"1": 1, "0": -1} for L - 1. Coefficients that do
// not fit a 64-bit integer are written as decimal strings instead; both
// forms are accepted on input.
impl Serialize for MotivicClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.terms.len()))?;
        for (j, c) in &self.terms {
            let key = j.to_string();
            match i64::try_from(c.clone()) {
                Ok(small) => map.serialize_entry(&key, &small)?,
                Err(_) => map.serialize_entry(&key, &c.to_string())?,
            }
        }
        map.end()
    }
}

struct ClassVisitor;

impl<'de> Visitor<'de> for ClassVisitor {
    type Value = MotivicClass;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a map from exponent strings to integer coefficients")
    }

    fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<MotivicClass, A::Error> {
        let mut out = MotivicClass::zero();
        while let Some((key, value)) = access.next_entry::<String, serde_json::Value>()? {
            let j: i64 = key
                .trim()
                .parse()
                .map_err(|_| serde::de::Error::custom(format!("bad exponent key {:?}", key)))?;
            let c = match &value {
                serde_json::Value::Number(n) => BigInt::from_str(&n.to_string())
                    .map_err(|_| serde::de::Error::custom(format!("bad coefficient {}", n))),
                serde_json::Value::String(s) => BigInt::from_str(s.trim())
                    .map_err(|_| serde::de::Error::custom(format!("bad coefficient {:?}", s))),
                other => Err(serde::de::Error::custom(format!(
                    "coefficient must be an integer or decimal string, got {}",
                    other
                ))),
            }?;
            out.add_term(j, c);
        }
        Ok(out)
    }
}

impl<'de> Deserialize<'de> for MotivicClass {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        deserializer.deserialize_map(ClassVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mc(pairs: &[(i64, i64)]) -> MotivicClass {
        MotivicClass::from_terms(pairs.iter().copied())
    }

    #[test]
    fn additive_cancellation() {
        let got = MotivicClass::l_minus_one() + MotivicClass::one();
        assert_eq!(got, MotivicClass::l());
    }

    #[test]
    fn difference_of_squares() {
        let got = MotivicClass::l_minus_one() * (MotivicClass::l() + MotivicClass::one());
        assert_eq!(got, mc(&[(2, 1), (0, -1)]));
    }

    #[test]
    fn unit_pair() {
        let got = MotivicClass::l() * MotivicClass::l_power(-1);
        assert!(got.is_one());
    }

    #[test]
    fn euler_char_examples() {
        assert_eq!(MotivicClass::l().euler_char(), BigInt::from(1));
        assert_eq!(MotivicClass::l_minus_one().euler_char(), BigInt::from(0));
        assert_eq!(mc(&[(2, 3), (-1, -1)]).euler_char(), BigInt::from(2));
    }

    #[test]
    fn canonical_form_drops_zeros() {
        let a = mc(&[(0, 1), (3, 2)]);
        let b = mc(&[(3, -2)]);
        let sum = &a + &b;
        assert_eq!(sum, MotivicClass::one());
        assert_eq!(sum.num_terms(), 1);
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(MotivicClass::l_minus_one().to_string(), "L - 1");
        assert_eq!(mc(&[(2, 3), (-1, -1)]).to_string(), "3*L^2 - L^-1");
        assert_eq!(MotivicClass::zero().to_string(), "0");
    }

    #[test]
    fn json_round_trip_and_shape() {
        let a = mc(&[(1, 1), (0, -1)]);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"0":-1,"1":1}"#);
        let back: MotivicClass = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
        // String coefficients are accepted too.
        let big: MotivicClass =
            serde_json::from_str(r#"{"2":"123456789012345678901234567890"}"#).unwrap();
        assert_eq!(
            big.coeff(2),
            BigInt::from_str("123456789012345678901234567890").unwrap()
        );
        let round = serde_json::to_string(&big).unwrap();
        assert_eq!(round, r#"{"2":"123456789012345678901234567890"}"#);
    }

    prop_compose! {
        fn arb_class()(pairs in proptest::collection::vec((-4i64..=4, -9i64..=9), 0..5)) -> MotivicClass {
            MotivicClass::from_terms(pairs)
        }
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_class(), b in arb_class(), c in arb_class()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &MotivicClass::one(), a.clone());
            prop_assert_eq!(&a + &MotivicClass::zero(), a.clone());
            prop_assert_eq!(&a - &a, MotivicClass::zero());
        }

        #[test]
        fn euler_char_is_a_ring_morphism(a in arb_class(), b in arb_class()) {
            prop_assert_eq!((&a + &b).euler_char(), a.euler_char() + b.euler_char());
            prop_assert_eq!((&a * &b).euler_char(), a.euler_char() * b.euler_char());
        }
    }
}

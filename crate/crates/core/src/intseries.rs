//! Dense truncated integer power series.
//!
//! The Euler-characteristic specialization of a motivic series lands in
//! `Z[[t]]`; this small dense representation carries those values and the
//! handful of exact operations the cross-checks need (products, integer
//! powers, substitution `t -> t^k`).

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A truncated series in one variable with integer coefficients, stored
/// densely for degrees `0..=order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntSeries {
    order: u32,
    coeffs: Vec<BigInt>,
}

impl IntSeries {
    pub fn zero(order: u32) -> Self {
        Self {
            order,
            coeffs: vec![BigInt::zero(); order as usize + 1],
        }
    }

    pub fn one(order: u32) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigInt::one();
        s
    }

    pub fn from_coeffs(order: u32, coeffs: impl IntoIterator<Item = impl Into<BigInt>>) -> Self {
        let mut s = Self::zero(order);
        for (n, c) in coeffs.into_iter().enumerate() {
            if n > order as usize {
                break;
            }
            s.coeffs[n] = c.into();
        }
        s
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeff(&self, n: u32) -> &BigInt {
        &self.coeffs[n as usize]
    }

    pub fn set_coeff(&mut self, n: u32, c: impl Into<BigInt>) {
        if n <= self.order {
            self.coeffs[n as usize] = c.into();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let order = self.order.min(rhs.order);
        let mut out = Self::zero(order);
        for n in 0..=order as usize {
            out.coeffs[n] = &self.coeffs[n] + &rhs.coeffs[n];
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let order = self.order.min(rhs.order);
        let mut out = Self::zero(order);
        for (i, a) in self.coeffs.iter().enumerate().take(order as usize + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order as usize + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }

    /// Inverse up to the order; requires constant term `1`.
    pub fn invert(&self) -> Self {
        assert!(
            self.coeffs[0].is_one(),
            "cannot invert an integer series whose constant term is not 1"
        );
        let mut inv = Self::zero(self.order);
        inv.coeffs[0] = BigInt::one();
        for n in 1..=self.order as usize {
            let mut sum = BigInt::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    sum += &self.coeffs[k] * &inv.coeffs[n - k];
                }
            }
            inv.coeffs[n] = -sum;
        }
        inv
    }

    /// Integer power, negative exponents via the inverse.
    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.invert() } else { self.clone() };
        let mut acc = Self::one(self.order);
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// Substitutes `t -> t^k` (`k >= 1`); overflowing degrees drop.
    pub fn substitute_power(&self, k: u32) -> Self {
        assert!(k >= 1, "substitution power must be positive");
        let mut out = Self::zero(self.order);
        for (n, c) in self.coeffs.iter().enumerate() {
            let m = n as u64 * u64::from(k);
            if m <= u64::from(self.order) {
                out.coeffs[m as usize] = c.clone();
            }
        }
        out
    }
}

impl fmt::Display for IntSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let abs = c.abs();
            match (n, abs.is_one()) {
                (0, _) => write!(f, "{}", abs)?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{}*t", abs)?,
                (_, true) => write!(f, "t^{}", n)?,
                (_, false) => write!(f, "{}*t^{}", abs, n)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.order + 1)
    }
}

impl Serialize for IntSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        #[serde(untagged)]
        enum IntOrString {
            Small(i64),
            Big(String),
        }
        let coeffs: Vec<IntOrString> = self
            .coeffs
            .iter()
            .map(|c| match i64::try_from(c.clone()) {
                Ok(v) => IntOrString::Small(v),
                Err(_) => IntOrString::Big(c.to_string()),
            })
            .collect();
        let mut s = serializer.serialize_struct("IntSeries", 2)?;
        s.serialize_field("order", &self.order)?;
        s.serialize_field("coeffs", &coeffs)?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for IntSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        struct Raw {
            order: u32,
            coeffs: Vec<serde_json::Value>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let mut out = IntSeries::zero(raw.order);
        for (n, v) in raw.coeffs.iter().enumerate() {
            if n > raw.order as usize {
                return Err(D::Error::custom("more coefficients than the order allows"));
            }
            let c = match v {
                serde_json::Value::Number(x) => x
                    .to_string()
                    .parse::<BigInt>()
                    .map_err(|_| D::Error::custom(format!("bad coefficient {}", x))),
                serde_json::Value::String(s) => s
                    .trim()
                    .parse::<BigInt>()
                    .map_err(|_| D::Error::custom(format!("bad coefficient {:?}", s))),
                other => Err(D::Error::custom(format!(
                    "coefficient must be an integer, got {}",
                    other
                ))),
            }?;
            out.coeffs[n] = c;
        }
        Ok(out)
    }
}

//! Topological zeta functions and the Monodromy-Conjecture checker.
//!
//! `z_top` is the local Denef-Loeser topological zeta function
//! `sum_I chi(E_I) prod_{i in I} 1/(N_i s + nu_i)`; `z_branch` is its
//! branch-space analogue with `nu_i + M_i` in place of `nu_i`. Both are
//! exact rational functions of `s` over `Q`, built from the same strata
//! that feed the motivic formulas (strata inside the strict transform
//! are excluded).
//!
//! The checker asks, for every pole `q` of the chosen zeta function,
//! whether `exp(-2*pi*i*q)` is an eigenvalue of the local monodromy at
//! some point of the zero set. With the monodromy zeta function in
//! cyclotomic product form, `q` with reduced denominator `d` passes iff
//! `d = 1` (the eigenvalue `1` always occurs at smooth points) or the
//! primitive `d`-th roots of unity survive in the product, i.e.
//! `sum_{d | m} e_m != 0`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::polynomial::RatPoly;
use crate::resolution::{ComponentKind, ResolutionData};
use crate::zeta::{CyclotomicFactorization, ZetaError};

/// A rational function of `s` over `Q` in canonical form: numerator and
/// denominator coprime, denominator monic. Zero is `0/1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunctionS {
    num: RatPoly,
    den: RatPoly,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PoleError {
    #[error("denominator has an irreducible factor of degree >= 2: {factor}")]
    NonlinearFactor { factor: String },
}

impl RationalFunctionS {
    /// Builds and canonicalizes; panics on a zero denominator.
    pub fn new(num: RatPoly, den: RatPoly) -> Self {
        assert!(!den.is_zero(), "denominator cannot be zero");
        let mut out = Self { num, den };
        out.normalize();
        out
    }

    pub fn zero() -> Self {
        Self {
            num: RatPoly::zero(),
            den: RatPoly::one(),
        }
    }

    pub fn from_poly(p: RatPoly) -> Self {
        Self::new(p, RatPoly::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_poly(RatPoly::constant(c))
    }

    pub fn numerator(&self) -> &RatPoly {
        &self.num
    }

    pub fn denominator(&self) -> &RatPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = RatPoly::one();
            return;
        }
        let g = self.num.gcd(&self.den);
        if g.degree().unwrap_or(0) > 0 {
            let (num, r1) = self.num.div_rem(&g);
            let (den, r2) = self.den.div_rem(&g);
            debug_assert!(r1.is_zero() && r2.is_zero());
            self.num = num;
            self.den = den;
        }
        let lead = self.den.leading_coeff();
        if !lead.is_one() {
            let inv = BigRational::one() / lead;
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self::new(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self::new(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }

    /// Exact evaluation; `None` at a pole.
    pub fn eval(&self, s: &BigRational) -> Option<BigRational> {
        let den = self.den.eval(s);
        if den.is_zero() {
            return None;
        }
        Some(self.num.eval(s) / den)
    }

    /// Poles with orders, ascending. The representation is canonical, so
    /// cancellation has already happened.
    pub fn poles(&self) -> Result<Vec<(BigRational, u32)>, PoleError> {
        if self.den.is_constant() {
            return Ok(Vec::new());
        }
        let (roots, leftover) = self.den.rational_roots();
        if leftover.degree().unwrap_or(0) >= 1 {
            return Err(PoleError::NonlinearFactor {
                factor: leftover.display_with("s"),
            });
        }
        Ok(roots)
    }

    /// Numerator, denominator and scale in integer-primitive form:
    /// the value equals `scale * num / den`.
    pub fn integer_parts(&self) -> (BigRational, Vec<BigInt>, Vec<BigInt>) {
        if self.is_zero() {
            return (BigRational::zero(), vec![BigInt::zero()], vec![BigInt::one()]);
        }
        let (sn, pn) = self.num.to_integer_primitive();
        let (sd, pd) = self.den.to_integer_primitive();
        (sn / sd, pn, pd)
    }
}

/// Factored display when the denominator splits into rational linear
/// factors: integer numerator over a product of primitive linear terms,
/// poles closest to zero first.
impl fmt::Display for RationalFunctionS {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.den.is_constant() {
            let (scale, num, _) = self.integer_parts();
            return write_scaled_poly(f, &scale, &num);
        }
        match self.poles() {
            Ok(poles) => {
                // den = prod (s + a/b)^k; with primitive factors
                // (b s + a) the value is num * prod b^k / prod (b s + a)^k.
                let mut numerator = self.num.clone();
                let mut factors: Vec<(RatPoly, u32)> = Vec::new();
                let mut ordered = poles;
                ordered.sort_by(|x, y| y.0.cmp(&x.0));
                for (root, mult) in &ordered {
                    let b = root.denom().clone();
                    let a = -root.numer().clone();
                    let linear = RatPoly::new(vec![
                        BigRational::from_integer(a),
                        BigRational::from_integer(b.clone()),
                    ]);
                    factors.push((linear, *mult));
                    for _ in 0..*mult {
                        numerator = numerator.scale(&BigRational::from_integer(b.clone()));
                    }
                }
                let (scale, num_int) = numerator.to_integer_primitive();
                write_scaled_poly(f, &scale, &num_int)?;
                write!(f, "/(")?;
                for (i, (linear, mult)) in factors.iter().enumerate() {
                    if i > 0 {
                        write!(f, "*")?;
                    }
                    write!(f, "({})", linear.display_with("s"))?;
                    if *mult > 1 {
                        write!(f, "^{}", mult)?;
                    }
                }
                write!(f, ")")
            }
            Err(_) => {
                let (scale, num, den) = self.integer_parts();
                write_scaled_poly(f, &scale, &num)?;
                write!(
                    f,
                    "/({})",
                    RatPoly::new(
                        den.iter()
                            .map(|c| BigRational::from_integer(c.clone()))
                            .collect()
                    )
                    .display_with("s")
                )
            }
        }
    }
}

fn write_scaled_poly(
    f: &mut fmt::Formatter<'_>,
    scale: &BigRational,
    coeffs: &[BigInt],
) -> fmt::Result {
    let poly = RatPoly::new(
        coeffs
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect(),
    );
    if scale.is_one() {
        return write!(f, "({})", poly.display_with("s"));
    }
    if scale.is_integer() {
        let folded = poly.scale(scale);
        return write!(f, "({})", folded.display_with("s"));
    }
    write!(
        f,
        "{}/{}*({})",
        scale.numer(),
        scale.denom(),
        poly.display_with("s")
    )
}

impl Serialize for RationalFunctionS {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let (scale, num, den) = self.integer_parts();
        let mut st = serializer.serialize_struct("RationalFunctionS", 3)?;
        st.serialize_field("numerator", &bigints_to_json(&num))?;
        st.serialize_field("denominator", &bigints_to_json(&den))?;
        st.serialize_field("scale", &scale.to_string())?;
        st.end()
    }
}

fn bigints_to_json(values: &[BigInt]) -> Vec<serde_json::Value> {
    values
        .iter()
        .map(|c| match i64::try_from(c.clone()) {
            Ok(v) => serde_json::Value::from(v),
            Err(_) => serde_json::Value::from(c.to_string()),
        })
        .collect()
}

fn bigints_from_json(values: &[serde_json::Value]) -> Result<Vec<BigInt>, String> {
    values
        .iter()
        .map(|v| match v {
            serde_json::Value::Number(n) => n
                .to_string()
                .parse::<BigInt>()
                .map_err(|_| format!("bad integer {}", n)),
            serde_json::Value::String(s) => s
                .trim()
                .parse::<BigInt>()
                .map_err(|_| format!("bad integer {:?}", s)),
            other => Err(format!("expected an integer, got {}", other)),
        })
        .collect()
}

impl<'de> Deserialize<'de> for RationalFunctionS {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            numerator: Vec<serde_json::Value>,
            denominator: Vec<serde_json::Value>,
            scale: String,
        }
        let raw = Raw::deserialize(deserializer)?;
        let num = bigints_from_json(&raw.numerator).map_err(D::Error::custom)?;
        let den = bigints_from_json(&raw.denominator).map_err(D::Error::custom)?;
        let scale: BigRational = raw
            .scale
            .trim()
            .parse()
            .map_err(|_| D::Error::custom(format!("bad scale {:?}", raw.scale)))?;
        let to_poly = |v: Vec<BigInt>| {
            RatPoly::new(v.into_iter().map(BigRational::from_integer).collect())
        };
        let den_poly = to_poly(den);
        if den_poly.is_zero() {
            return Err(D::Error::custom("denominator cannot be zero"));
        }
        Ok(RationalFunctionS::new(
            to_poly(num).scale(&scale),
            den_poly,
        ))
    }
}

fn stratum_factor_sum(
    res: &ResolutionData,
    weight_of: impl Fn(&crate::resolution::Component) -> Result<i64, ZetaError>,
) -> Result<RationalFunctionS, ZetaError> {
    let mut acc = RationalFunctionS::zero();
    for stratum in &res.strata {
        let comps: Result<Vec<_>, ZetaError> = stratum
            .members
            .iter()
            .map(|id| {
                res.component(id)
                    .ok_or_else(|| ZetaError::UnknownComponent(id.clone()))
            })
            .collect();
        let comps = comps?;
        if comps.iter().all(|c| c.kind == ComponentKind::Strict) {
            continue;
        }
        let chi = stratum.cls.euler_char();
        // Resolve the weights even when chi = 0 so that missing M is
        // always reported for branch data.
        let mut den = RatPoly::one();
        for c in &comps {
            let w = weight_of(c)?;
            den = den.mul(&RatPoly::new(vec![
                BigRational::from_integer(BigInt::from(w)),
                BigRational::from_integer(BigInt::from(c.n)),
            ]));
        }
        if chi.is_zero() {
            continue;
        }
        acc = acc.add(&RationalFunctionS::new(
            RatPoly::constant(BigRational::from_integer(chi)),
            den,
        ));
    }
    Ok(acc)
}

/// The local topological zeta function.
pub fn z_top(res: &ResolutionData) -> Result<RationalFunctionS, ZetaError> {
    stratum_factor_sum(res, |c| Ok(c.nu as i64))
}

/// The branch-space topological zeta function (weights `nu + M`).
pub fn z_branch(res: &ResolutionData) -> Result<RationalFunctionS, ZetaError> {
    stratum_factor_sum(res, |c| {
        let m = c.m.ok_or_else(|| ZetaError::MissingM(c.id.clone()))?;
        Ok((c.nu + m) as i64)
    })
}

/// Whether `exp(-2*pi*i*q)` is a monodromy eigenvalue at some point of
/// the zero set: the reduced denominator of `q` is `1`, or roots of unity
/// of that order survive in the monodromy zeta function.
pub fn eigenvalue_test(zf: &CyclotomicFactorization, q: &BigRational) -> bool {
    let d = q.denom().clone();
    if d.is_one() {
        return true; // eigenvalue 1 at smooth points
    }
    let mut sum = 0i64;
    for (&m, &e) in zf.factors() {
        if (BigInt::from(m) % &d).is_zero() {
            sum += e;
        }
    }
    sum != 0
}

/// One pole of the zeta function with the outcome of its eigenvalue test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoleVerdict {
    pub q: BigRational,
    pub order: u32,
    pub eigenvalue: bool,
}

/// The Monodromy-Conjecture report for one zeta function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoleReport {
    /// Poles ascending, each with its eigenvalue verdict.
    pub poles: Vec<PoleVerdict>,
    /// True when every pole passes.
    pub holds: bool,
}

impl PoleReport {
    /// The poles that fail the eigenvalue test.
    pub fn failures(&self) -> impl Iterator<Item = &PoleVerdict> {
        self.poles.iter().filter(|p| !p.eigenvalue)
    }
}

/// The convention recorded in every report: the eigenvalue `1` is always
/// accepted because local monodromy at smooth points of the zero set has
/// eigenvalue `1`.
pub const SMOOTH_POINT_CONVENTION: &str =
    "integer poles accepted: eigenvalue 1 occurs at smooth points of the zero set";

impl fmt::Display for PoleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.poles {
            writeln!(
                f,
                "pole s = {} (order {}): {}",
                p.q,
                p.order,
                if p.eigenvalue {
                    "monodromy eigenvalue found"
                } else {
                    "NOT a monodromy eigenvalue"
                }
            )?;
        }
        if self.holds {
            write!(f, "Monodromy Conjecture: holds")
        } else {
            let failures: Vec<String> = self.failures().map(|p| format!("s = {}", p.q)).collect();
            write!(f, "Monodromy Conjecture: FAILS at {}", failures.join(", "))
        }
    }
}

impl Serialize for PoleReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct P<'a> {
            q: String,
            order: u32,
            eigenvalue: bool,
            #[serde(skip_serializing_if = "Option::is_none")]
            _marker: Option<&'a ()>,
        }
        let poles: Vec<P> = self
            .poles
            .iter()
            .map(|p| P {
                q: p.q.to_string(),
                order: p.order,
                eigenvalue: p.eigenvalue,
                _marker: None,
            })
            .collect();
        let mut st = serializer.serialize_struct("PoleReport", 3)?;
        st.serialize_field("poles", &poles)?;
        st.serialize_field("holds", &self.holds)?;
        st.serialize_field("convention", SMOOTH_POINT_CONVENTION)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for PoleReport {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct P {
            q: String,
            order: u32,
            eigenvalue: bool,
        }
        #[derive(Deserialize)]
        struct Raw {
            poles: Vec<P>,
            holds: bool,
        }
        let raw = Raw::deserialize(deserializer)?;
        let poles: Result<Vec<PoleVerdict>, D::Error> = raw
            .poles
            .into_iter()
            .map(|p| {
                Ok(PoleVerdict {
                    q: p.q
                        .trim()
                        .parse()
                        .map_err(|_| D::Error::custom(format!("bad rational {:?}", p.q)))?,
                    order: p.order,
                    eigenvalue: p.eigenvalue,
                })
            })
            .collect();
        Ok(PoleReport {
            poles: poles?,
            holds: raw.holds,
        })
    }
}

/// Runs the eigenvalue test on every pole of `rf` against `zf`.
pub fn check_monodromy_conjecture(
    rf: &RationalFunctionS,
    zf: &CyclotomicFactorization,
) -> Result<PoleReport, PoleError> {
    let mut poles = Vec::new();
    for (q, order) in rf.poles()? {
        let eigenvalue = eigenvalue_test(zf, &q);
        poles.push(PoleVerdict {
            q,
            order,
            eigenvalue,
        });
    }
    let holds = poles.iter().all(|p| p.eigenvalue);
    Ok(PoleReport { poles, holds })
}

//! The power structure over `Z[L, L^-1]`.
//!
//! `A(t)^m` for a series `A` with constant term `1` and a class `m` is
//! defined through the unique factorization `A = prod (1 - t^e)^{-a_e}`:
//! take the factorization exponents (`Log`), multiply them by `m`, and
//! expand back (`Exp`). The primitive everything reduces to is
//! `(1 - L^j t^a)^{-m}`, evaluated one `L`-monomial of `m` at a time via
//! the scaling rule `(1 - t)^(a*L^k) = (1 - t)^a` with `t -> L^k t` and
//! ordinary binomial series for the integer parts.
//!
//! `(1 - t)^{-[Z]}` is the Kapranov zeta function of `Z`: its `t^k`
//! coefficient is the class of the `k`-th symmetric power.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::motivic::MotivicClass;
use crate::series::{ExponentVector, MotivicSeries};

/// The additive side of the Exp/Log isomorphism: a finite map from
/// nonzero exponent vectors (total degree `<= order`) to classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpCoefficients {
    arity: usize,
    order: u32,
    coeffs: BTreeMap<ExponentVector, MotivicClass>,
}

impl ExpCoefficients {
    pub fn new(arity: usize, order: u32) -> Self {
        assert!(arity >= 1, "arity must be >= 1");
        Self {
            arity,
            order,
            coeffs: BTreeMap::new(),
        }
    }

    /// Reads coefficients off a series with zero constant term.
    pub fn from_series(series: &MotivicSeries) -> Self {
        assert!(
            series.constant_term().is_zero(),
            "exp coefficients need a series with zero constant term"
        );
        let mut out = Self::new(series.arity(), series.order());
        for (e, c) in series.iter() {
            out.set(e.clone(), c.clone());
        }
        out
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn set(&mut self, e: ExponentVector, c: MotivicClass) {
        assert_eq!(e.arity(), self.arity, "exponent arity mismatch");
        assert!(!e.is_zero(), "exp coefficients have no constant slot");
        if e.total() > self.order {
            return;
        }
        if c.is_zero() {
            self.coeffs.remove(&e);
        } else {
            self.coeffs.insert(e, c);
        }
    }

    pub fn get(&self, e: &ExponentVector) -> MotivicClass {
        self.coeffs.get(e).cloned().unwrap_or_else(MotivicClass::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ExponentVector, &MotivicClass)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.arity, rhs.arity, "arity mismatch");
        let mut out = Self::new(self.arity, self.order.min(rhs.order));
        for (e, c) in self.coeffs.iter().chain(rhs.coeffs.iter()) {
            if e.total() > out.order {
                continue;
            }
            let prev = out.get(e);
            out.set(e.clone(), &prev + c);
        }
        out
    }

    /// Multiplies every coefficient by a class.
    pub fn scale(&self, m: &MotivicClass) -> Self {
        let mut out = Self::new(self.arity, self.order);
        for (e, c) in &self.coeffs {
            out.set(e.clone(), c * m);
        }
        out
    }
}

/// Exact binomial coefficient `C(top, n)` for arbitrary-precision `top`.
fn binomial(top: &BigInt, n: u64) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..n {
        num *= top - BigInt::from(i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// The power-structure value `(1 - L^j t^a)^{-m}`, truncated.
///
/// For `m = sum_k c_k L^k` this is `prod_k (1 - L^{j+k} t^a)^{-c_k}` with
/// ordinary integer powers of the binomial series.
pub fn pow_one_minus_monomial(
    j: i64,
    a: &ExponentVector,
    m: &MotivicClass,
    order: u32,
) -> MotivicSeries {
    assert!(!a.is_zero(), "monomial exponent must be nonzero");
    let arity = a.arity();
    let step = a.total();
    let max_n = u64::from(order / step);
    let mut acc = MotivicSeries::one(arity, order);
    for (k, c) in m.terms() {
        let shift = j + k;
        let mut factor = MotivicSeries::zero(arity, order);
        if c.is_positive() {
            // (1 - u)^{-c} = sum_n C(c + n - 1, n) u^n
            for n in 0..=max_n {
                let top = c + BigInt::from(n) - 1;
                let coeff = binomial(&top, n);
                factor.set_coeff(
                    scale_exponent(a, n as u32),
                    MotivicClass::monomial(coeff, shift * n as i64),
                );
            }
        } else {
            // (1 - u)^{p} = sum_{n<=p} (-1)^n C(p, n) u^n
            let p = -c;
            for n in 0..=max_n {
                if BigInt::from(n) > p {
                    break;
                }
                let mut coeff = binomial(&p, n);
                if n % 2 == 1 {
                    coeff = -coeff;
                }
                factor.set_coeff(
                    scale_exponent(a, n as u32),
                    MotivicClass::monomial(coeff, shift * n as i64),
                );
            }
        }
        acc = acc.mul(&factor);
    }
    acc
}

fn scale_exponent(a: &ExponentVector, k: u32) -> ExponentVector {
    ExponentVector::new(a.entries().iter().map(|e| e * k).collect())
}

/// `Exp`: turns additive coefficients into the product
/// `prod_e (1 - t^e)^{-a_e}`, truncated.
pub fn ps_exp(b: &ExpCoefficients) -> MotivicSeries {
    let mut acc = MotivicSeries::one(b.arity(), b.order());
    for (e, c) in b.iter() {
        acc = acc.mul(&pow_one_minus_monomial(0, e, c, b.order()));
    }
    acc
}

/// `Log`: the inverse of [`ps_exp`] on series with constant term `1`.
///
/// Coefficients are peeled in ascending total degree: at degree `n` the
/// residual's degree-`n` coefficients are exactly the factorization
/// exponents, because every unprocessed factor contributes only at
/// degrees `> n` there.
pub fn ps_log(series: &MotivicSeries) -> ExpCoefficients {
    assert!(
        series.constant_term().is_one(),
        "cannot take Log of a series whose constant term is not 1"
    );
    let order = series.order();
    let mut out = ExpCoefficients::new(series.arity(), order);
    let mut residual = series.clone();
    for n in 1..=order {
        let layer: Vec<(ExponentVector, MotivicClass)> = residual
            .iter()
            .filter(|(e, _)| e.total() == n)
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        for (e, c) in layer {
            out.set(e.clone(), c.clone());
            // Divide the factor off: multiply by (1 - t^e)^{+c}.
            residual = residual.mul(&pow_one_minus_monomial(0, &e, &(-&c), order));
        }
    }
    debug_assert!(residual.is_one(), "Log residual did not reduce to 1");
    out
}

/// The power structure `A(t)^m` for a series with constant term `1`.
pub fn ps_pow(series: &MotivicSeries, m: &MotivicClass) -> MotivicSeries {
    ps_exp(&ps_log(series).scale(m))
}

/// The Kapranov zeta function `(1 - t)^{-z}`; the `t^k` coefficient is
/// the class of the `k`-th symmetric power of `z`.
pub fn kapranov_zeta(z: &MotivicClass, order: u32) -> MotivicSeries {
    pow_one_minus_monomial(0, &ExponentVector::single(1), z, order)
}

impl Serialize for ExpCoefficients {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a> {
            exp: &'a [u32],
            class: &'a MotivicClass,
        }
        let entries: Vec<Entry> = self
            .coeffs
            .iter()
            .map(|(e, c)| Entry {
                exp: e.entries(),
                class: c,
            })
            .collect();
        let mut s = serializer.serialize_struct("ExpCoefficients", 3)?;
        s.serialize_field("arity", &self.arity)?;
        s.serialize_field("order", &self.order)?;
        s.serialize_field("coeffs", &entries)?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for ExpCoefficients {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Entry {
            exp: Vec<u32>,
            class: MotivicClass,
        }
        #[derive(Deserialize)]
        struct Raw {
            arity: usize,
            order: u32,
            coeffs: Vec<Entry>,
        }
        let raw = Raw::deserialize(deserializer)?;
        if raw.arity < 1 {
            return Err(D::Error::custom("arity must be >= 1"));
        }
        let mut out = ExpCoefficients::new(raw.arity, raw.order);
        for entry in raw.coeffs {
            if entry.exp.len() != raw.arity {
                return Err(D::Error::custom("exponent arity mismatch"));
            }
            let e = ExponentVector::new(entry.exp);
            if e.is_zero() {
                return Err(D::Error::custom("exp coefficients have no constant slot"));
            }
            let prev = out.get(&e);
            out.set(e, &prev + &entry.class);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intseries::IntSeries;
    use proptest::prelude::*;

    fn t() -> ExponentVector {
        ExponentVector::single(1)
    }

    fn geometric(order: u32) -> MotivicSeries {
        // 1/(1-t)
        MotivicSeries::one(1, order)
            .sub(&MotivicSeries::monomial(MotivicClass::one(), t(), order))
            .invert()
    }

    #[test]
    fn pow_with_exponent_l_matches_scaled_geometric() {
        // (1-t)^{-L} = 1/(1 - L t): the scaling rule applied to 1/(1-t).
        let got = pow_one_minus_monomial(0, &t(), &MotivicClass::l(), 3);
        let oracle = geometric(3).scale_variable(0, 1);
        assert_eq!(got, oracle);
        for n in 0..=3 {
            assert_eq!(got.coeff1(n), MotivicClass::l_power(i64::from(n)));
        }
    }

    #[test]
    fn pow_with_exponent_l_minus_one() {
        // (1-t)^{-(L-1)} = (1-t)/(1-Lt), multiplied out by hand.
        let got = pow_one_minus_monomial(0, &t(), &MotivicClass::l_minus_one(), 2);
        let one_minus_t = MotivicSeries::one(1, 2)
            .sub(&MotivicSeries::monomial(MotivicClass::one(), t(), 2));
        let inv_one_minus_lt = MotivicSeries::one(1, 2)
            .sub(&MotivicSeries::monomial(MotivicClass::l(), t(), 2))
            .invert();
        let oracle = one_minus_t.mul(&inv_one_minus_lt);
        assert_eq!(got, oracle);
        assert_eq!(got.coeff1(1), MotivicClass::l_minus_one());
        assert_eq!(
            got.coeff1(2),
            MotivicClass::from_terms([(2i64, 1i64), (1, -1)])
        );
    }

    #[test]
    fn pow_with_exponent_one_is_geometric() {
        let got = pow_one_minus_monomial(0, &t(), &MotivicClass::one(), 5);
        assert_eq!(got, geometric(5));
    }

    #[test]
    fn exp_of_single_unit_coefficient() {
        let mut b = ExpCoefficients::new(1, 5);
        b.set(t(), MotivicClass::one());
        assert_eq!(ps_exp(&b), geometric(5));
    }

    #[test]
    fn exp_of_l_coefficient() {
        let mut b = ExpCoefficients::new(1, 4);
        b.set(t(), MotivicClass::l());
        assert_eq!(ps_exp(&b), pow_one_minus_monomial(0, &t(), &MotivicClass::l(), 4));
    }

    #[test]
    fn exp_in_two_variables() {
        let mut b = ExpCoefficients::new(2, 3);
        b.set(ExponentVector::new(vec![1, 0]), MotivicClass::one());
        b.set(ExponentVector::new(vec![0, 1]), MotivicClass::one());
        let got = ps_exp(&b);
        // 1/((1-t1)(1-t2))
        let t1 = MotivicSeries::monomial(
            MotivicClass::one(),
            ExponentVector::new(vec![1, 0]),
            3,
        );
        let t2 = MotivicSeries::monomial(
            MotivicClass::one(),
            ExponentVector::new(vec![0, 1]),
            3,
        );
        let oracle = MotivicSeries::one(2, 3)
            .sub(&t1)
            .invert()
            .mul(&MotivicSeries::one(2, 3).sub(&t2).invert());
        assert_eq!(got, oracle);
    }

    #[test]
    fn log_examples() {
        let b = ps_log(&geometric(5));
        assert_eq!(b.get(&t()), MotivicClass::one());
        assert_eq!(b.iter().count(), 1);

        let lt = pow_one_minus_monomial(0, &t(), &MotivicClass::l(), 5);
        let b = ps_log(&lt);
        assert_eq!(b.get(&t()), MotivicClass::l());
        assert_eq!(b.iter().count(), 1);

        // 1 - t^2 = (1 - t^2)^{-(-1)}
        let a = MotivicSeries::one(1, 4).sub(&MotivicSeries::monomial(
            MotivicClass::one(),
            ExponentVector::single(2),
            4,
        ));
        let b = ps_log(&a);
        assert_eq!(b.get(&ExponentVector::single(2)), -MotivicClass::one());
        assert_eq!(b.iter().count(), 1);
    }

    #[test]
    #[should_panic(expected = "constant term")]
    fn log_requires_unit_constant_term() {
        let _ = ps_log(&MotivicSeries::zero(1, 3));
    }

    #[test]
    fn kapranov_zeta_of_a_point() {
        let z = kapranov_zeta(&MotivicClass::one(), 6);
        for n in 0..=6 {
            assert!(z.coeff1(n).is_one());
        }
    }

    #[test]
    fn kapranov_zeta_of_the_affine_line() {
        // S^k(A^1) = A^k.
        let z = kapranov_zeta(&MotivicClass::l(), 6);
        for n in 0..=6 {
            assert_eq!(z.coeff1(n), MotivicClass::l_power(i64::from(n)));
        }
    }

    #[test]
    fn kapranov_zeta_of_the_projective_line() {
        // S^k(P^1) = P^k, cross-checked against 1/((1-t)(1-Lt)).
        let z = kapranov_zeta(&(MotivicClass::l() + MotivicClass::one()), 6);
        let oracle = geometric(6).mul(&pow_one_minus_monomial(0, &t(), &MotivicClass::l(), 6));
        assert_eq!(z, oracle);
        for n in 0..=6 {
            let pk = MotivicClass::from_terms((0..=i64::from(n)).map(|j| (j, 1i64)));
            assert_eq!(z.coeff1(n), pk);
        }
    }

    #[test]
    fn pow_via_kapranov_of_projective_line() {
        let a = geometric(5);
        let got = ps_pow(&a, &(MotivicClass::l() + MotivicClass::one()));
        assert_eq!(got, kapranov_zeta(&(MotivicClass::l() + MotivicClass::one()), 5));
    }

    #[test]
    fn pow_zero_and_one() {
        let a = MotivicSeries::one(1, 4).sub(&MotivicSeries::monomial(
            MotivicClass::one(),
            t(),
            4,
        ));
        assert!(ps_pow(&a, &MotivicClass::zero()).is_one());
        assert_eq!(ps_pow(&a, &MotivicClass::one()), a);
    }

    fn arb_class() -> impl Strategy<Value = MotivicClass> {
        proptest::collection::vec((-2i64..=2, -4i64..=4), 0..3)
            .prop_map(MotivicClass::from_terms)
    }

    fn arb_unit_series(order: u32) -> impl Strategy<Value = MotivicSeries> {
        proptest::collection::vec((1u32..=order, arb_class()), 0..4).prop_map(move |terms| {
            let mut s = MotivicSeries::one(1, order);
            for (n, c) in terms {
                let e = ExponentVector::single(n);
                let prev = s.coeff(&e);
                s.set_coeff(e, &prev + &c);
            }
            s
        })
    }

    fn euler_specialized(series: &MotivicSeries) -> IntSeries {
        let mut out = IntSeries::zero(series.order());
        for (e, c) in series.iter() {
            out.set_coeff(e.total(), c.euler_char());
        }
        out
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn exp_and_log_are_mutually_inverse(a in arb_unit_series(6)) {
            let b = ps_log(&a);
            prop_assert_eq!(ps_exp(&b), a.clone());
        }

        #[test]
        fn exp_turns_sums_into_products(a in arb_unit_series(6), b in arb_unit_series(6)) {
            let ca = ps_log(&a);
            let cb = ps_log(&b);
            prop_assert_eq!(ps_exp(&ca.add(&cb)), a.mul(&b));
        }

        #[test]
        fn power_axioms(
            a in arb_unit_series(5),
            b in arb_unit_series(5),
            m in arb_class(),
            n in arb_class(),
        ) {
            prop_assert!(ps_pow(&a, &MotivicClass::zero()).is_one());
            prop_assert_eq!(ps_pow(&a, &MotivicClass::one()), a.clone());
            prop_assert_eq!(
                ps_pow(&a.mul(&b), &m),
                ps_pow(&a, &m).mul(&ps_pow(&b, &m))
            );
            prop_assert_eq!(
                ps_pow(&a, &(&m + &n)),
                ps_pow(&a, &m).mul(&ps_pow(&a, &n))
            );
            prop_assert_eq!(
                ps_pow(&a, &(&m * &n)),
                ps_pow(&ps_pow(&a, &n), &m)
            );
        }

        #[test]
        fn euler_char_compatibility(a in arb_unit_series(5), m in arb_class()) {
            // chi(A^m) = (chi A)^(chi m) as integer series.
            let chi_m = m.euler_char();
            let lhs = euler_specialized(&ps_pow(&a, &m));
            let chi_a = euler_specialized(&a);
            let e = i64::try_from(chi_m).unwrap();
            let rhs = chi_a.pow(e);
            prop_assert_eq!(lhs, rhs);
        }
    }
}

//! Motivic zeta functions from resolution data.
//!
//! The contact series is the generating series `sum chi_g(X_n) t^n` of
//! motivic measures of the sets of arcs (or arcs mod the circle action,
//! or branches) on which the germ has fixed order `n`. From resolution
//! data it is a finite sum over strata `I` not contained in the strict
//! transform:
//!
//! ```text
//! (L-1)^(|I|-1) [E_I] prod_{i in I} L^{-w_i} t^{N_i} / (1 - L^{-w_i} t^{N_i})
//! ```
//!
//! with `w = nu` for (classes of) arcs and `w = nu + M` for branches; the
//! full arc space carries an extra global factor `L - 1`.
//!
//! `Exp` of the contact series is the multiplicative integral
//! [`eta_series`]; folding it with the Moebius function gives the motivic
//! monodromy zeta function, whose Euler specialization is the Taylor
//! expansion of the classical monodromy zeta function (computable
//! directly by A'Campo's formula, [`classical_monodromy_zeta`]).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::intseries::IntSeries;
use crate::motivic::MotivicClass;
use crate::power::{pow_one_minus_monomial, ps_exp, ExpCoefficients};
use crate::resolution::{ComponentKind, ResolutionData};
use crate::series::{expand_geometric_factor, ExponentVector, MotivicSeries};

/// Which space the integration runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpaceKind {
    /// The full space of parametrized arcs.
    Arcs,
    /// Arcs modulo the scaling action on the parameter.
    ArcsModCstar,
    /// Branches: arcs modulo all reparametrizations.
    Branches,
}

impl fmt::Display for SpaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SpaceKind::Arcs => "arcs",
            SpaceKind::ArcsModCstar => "arcs-mod-cstar",
            SpaceKind::Branches => "branches",
        };
        write!(f, "{}", s)
    }
}

/// Exponent convention for the branch-space weights.
///
/// The default `NuPlusM` matches the printed branch formulas and the
/// published counterexample values; `NuMinusM` is the convention a direct
/// jet-count on branches suggests. All built-in cross-checks run under
/// the default.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BranchWeight {
    #[default]
    NuPlusM,
    NuMinusM,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ZetaError {
    #[error("component {0:?} has no M multiplicity; branch-space formulas need M")]
    MissingM(String),
    #[error("the motivic monodromy zeta function is defined over arcs mod C* or branches, not over the full arc space")]
    UnsupportedSpace,
    #[error("stratum references unknown component {0:?}")]
    UnknownComponent(String),
}

fn stratum_components<'a>(
    res: &'a ResolutionData,
    members: &[String],
) -> Result<Vec<&'a crate::resolution::Component>, ZetaError> {
    members
        .iter()
        .map(|id| {
            res.component(id)
                .ok_or_else(|| ZetaError::UnknownComponent(id.clone()))
        })
        .collect()
}

fn weight(
    c: &crate::resolution::Component,
    space: SpaceKind,
    bw: BranchWeight,
) -> Result<i64, ZetaError> {
    let nu = c.nu as i64;
    match space {
        SpaceKind::Arcs | SpaceKind::ArcsModCstar => Ok(nu),
        SpaceKind::Branches => {
            let m = c.m.ok_or_else(|| ZetaError::MissingM(c.id.clone()))? as i64;
            Ok(match bw {
                BranchWeight::NuPlusM => nu + m,
                BranchWeight::NuMinusM => nu - m,
            })
        }
    }
}

/// The contact series over the chosen space, truncated at `order`, under
/// the default branch-weight convention.
pub fn contact_series(
    res: &ResolutionData,
    space: SpaceKind,
    order: u32,
) -> Result<MotivicSeries, ZetaError> {
    contact_series_with(res, space, order, BranchWeight::default())
}

/// [`contact_series`] with an explicit branch-weight convention.
pub fn contact_series_with(
    res: &ResolutionData,
    space: SpaceKind,
    order: u32,
    bw: BranchWeight,
) -> Result<MotivicSeries, ZetaError> {
    let lmo = MotivicClass::l_minus_one();
    let mut sum = MotivicSeries::zero(1, order);
    for stratum in &res.strata {
        let comps = stratum_components(res, &stratum.members)?;
        if comps.iter().all(|c| c.kind == ComponentKind::Strict) {
            continue;
        }
        if comps.iter().any(|c| c.n > u64::from(order)) {
            continue; // every contribution starts beyond the truncation
        }
        let front = lmo.pow(comps.len() as u32 - 1) * &stratum.cls;
        let mut term = MotivicSeries::monomial(front, ExponentVector::zeros(1), order);
        for c in &comps {
            let w = weight(c, space, bw)?;
            let factor = expand_geometric_factor(
                &MotivicClass::l_power(-w),
                &ExponentVector::single(c.n as u32),
                order,
            );
            term = term.mul(&factor);
        }
        sum = sum.add(&term);
    }
    if space == SpaceKind::Arcs {
        sum = sum.scale(&lmo);
    }
    Ok(sum)
}

/// The two-variable contact series over the full arc space: `t` records
/// the order of the germ along the arc, the second variable records the
/// order of the arc itself (each contact unit with component `i`
/// contributes `t^{N_i} T^{M_i}`).
///
/// Setting `T = 1` recovers the arcs contact series; setting `T = L^-1`
/// gives `(L-1)` times the branch contact series under the default
/// weights. Both substitutions need headroom: compute at an inflated
/// order before truncating (total degree counts `t` and `T` together).
pub fn two_variable_contact_series(
    res: &ResolutionData,
    order: u32,
) -> Result<MotivicSeries, ZetaError> {
    let lmo = MotivicClass::l_minus_one();
    let mut sum = MotivicSeries::zero(2, order);
    for stratum in &res.strata {
        let comps = stratum_components(res, &stratum.members)?;
        if comps.iter().all(|c| c.kind == ComponentKind::Strict) {
            continue;
        }
        let mut fits = true;
        let mut factors = Vec::new();
        for c in &comps {
            let m = c.m.ok_or_else(|| ZetaError::MissingM(c.id.clone()))?;
            if c.n + m > u64::from(order) {
                fits = false;
                break;
            }
            factors.push(expand_geometric_factor(
                &MotivicClass::l_power(-(c.nu as i64)),
                &ExponentVector::new(vec![c.n as u32, m as u32]),
                order,
            ));
        }
        if !fits {
            continue;
        }
        let front = lmo.pow(comps.len() as u32 - 1) * &stratum.cls;
        let mut term = MotivicSeries::monomial(front, ExponentVector::zeros(2), order);
        for f in &factors {
            term = term.mul(f);
        }
        sum = sum.add(&term);
    }
    Ok(sum.scale(&lmo))
}

/// The Moebius function.
pub fn mobius(n: u64) -> i64 {
    assert!(n >= 1, "the Moebius function needs n >= 1");
    let mut n = n;
    let mut prime_count = 0u32;
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0; // repeated prime factor
            }
            prime_count += 1;
        }
        d += 1;
    }
    if n > 1 {
        prime_count += 1;
    }
    if prime_count % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `Exp` of the contact series: the multiplicative integral of
/// `(1 - t^{v_f})^{-1}` over the chosen space.
pub fn eta_series(
    res: &ResolutionData,
    space: SpaceKind,
    order: u32,
) -> Result<MotivicSeries, ZetaError> {
    eta_series_with(res, space, order, BranchWeight::default())
}

pub fn eta_series_with(
    res: &ResolutionData,
    space: SpaceKind,
    order: u32,
    bw: BranchWeight,
) -> Result<MotivicSeries, ZetaError> {
    let contact = contact_series_with(res, space, order, bw)?;
    Ok(ps_exp(&ExpCoefficients::from_series(&contact)))
}

/// The motivic monodromy zeta function: the Moebius fold of
/// [`eta_series`] over arcs mod C* or branches.
///
/// Two independent evaluation routes are computed and compared: the
/// product `prod_n (1 - t^n)^{-c_n}` with Moebius-folded contact
/// coefficients, and the literal product `prod_i eta(t^i)^{mu(i)}`.
pub fn motivic_monodromy_zeta(
    res: &ResolutionData,
    space: SpaceKind,
    order: u32,
) -> Result<MotivicSeries, ZetaError> {
    motivic_monodromy_zeta_with(res, space, order, BranchWeight::default())
}

pub fn motivic_monodromy_zeta_with(
    res: &ResolutionData,
    space: SpaceKind,
    order: u32,
    bw: BranchWeight,
) -> Result<MotivicSeries, ZetaError> {
    if space == SpaceKind::Arcs {
        return Err(ZetaError::UnsupportedSpace);
    }
    let contact = contact_series_with(res, space, order, bw)?;

    // Route one: fold the contact coefficients with the Moebius function.
    let mut folded = ExpCoefficients::new(1, order);
    for n in 1..=order {
        let mut c = MotivicClass::zero();
        for k in 1..=n {
            if n % k != 0 {
                continue;
            }
            let mu = mobius(u64::from(k));
            if mu == 0 {
                continue;
            }
            let base = contact.coeff1(n / k);
            c = c + base * MotivicClass::constant(mu);
        }
        folded.set(ExponentVector::single(n), c);
    }
    let zeta = ps_exp(&folded);

    // Route two: the literal product of eta(t^i)^{mu(i)}.
    let eta = ps_exp(&ExpCoefficients::from_series(&contact));
    let mut product = MotivicSeries::one(1, order);
    for i in 1..=order {
        match mobius(u64::from(i)) {
            0 => {}
            1 => product = product.mul(&eta.substitute_power(0, i)),
            _ => product = product.mul(&eta.substitute_power(0, i).invert()),
        }
    }
    assert_eq!(
        zeta, product,
        "the Moebius-fold and eta-product routes must agree"
    );
    Ok(zeta)
}

/// The motivic monodromy zeta function evaluated directly as a truncated
/// triple product over Moebius orders `m`, strata `I`, and contact
/// vectors `k`, each factor raised to `-mu(m) (L-1)^(|I|-1) [E_I]` by the
/// power structure. Cross-checks [`motivic_monodromy_zeta`].
pub fn motivic_monodromy_zeta_products(
    res: &ResolutionData,
    space: SpaceKind,
    order: u32,
) -> Result<MotivicSeries, ZetaError> {
    motivic_monodromy_zeta_products_with(res, space, order, BranchWeight::default())
}

pub fn motivic_monodromy_zeta_products_with(
    res: &ResolutionData,
    space: SpaceKind,
    order: u32,
    bw: BranchWeight,
) -> Result<MotivicSeries, ZetaError> {
    if space == SpaceKind::Arcs {
        return Err(ZetaError::UnsupportedSpace);
    }
    let lmo = MotivicClass::l_minus_one();
    let mut acc = MotivicSeries::one(1, order);
    for m in 1..=u64::from(order) {
        let mu = mobius(m);
        if mu == 0 {
            continue;
        }
        for stratum in &res.strata {
            let comps = stratum_components(res, &stratum.members)?;
            if comps.iter().all(|c| c.kind == ComponentKind::Strict) {
                continue;
            }
            let exponent = lmo.pow(comps.len() as u32 - 1)
                * &stratum.cls
                * MotivicClass::constant(mu);
            let ns: Vec<u64> = comps.iter().map(|c| c.n).collect();
            let ws: Vec<i64> = comps
                .iter()
                .map(|c| weight(c, space, bw))
                .collect::<Result<_, _>>()?;
            // Contact vectors k >= 1 with m * (k . N) <= order, ascending
            // lexicographically.
            let budget = u64::from(order) / m;
            let mut tuples = Vec::new();
            enumerate_contact_vectors(&ns, budget, &mut Vec::new(), &mut tuples);
            for k in tuples {
                let kn: u64 = k.iter().zip(&ns).map(|(a, b)| a * b).sum();
                let kw: i64 = k.iter().zip(&ws).map(|(a, b)| *a as i64 * b).sum();
                let a = ExponentVector::single((m * kn) as u32);
                acc = acc.mul(&pow_one_minus_monomial(-kw, &a, &exponent, order));
            }
        }
    }
    Ok(acc)
}

/// All tuples `k >= 1` with `k . ns <= budget`, lexicographically.
fn enumerate_contact_vectors(
    ns: &[u64],
    budget: u64,
    current: &mut Vec<u64>,
    out: &mut Vec<Vec<u64>>,
) {
    let idx = current.len();
    if idx == ns.len() {
        out.push(current.clone());
        return;
    }
    let used: u64 = current.iter().zip(ns).map(|(a, b)| a * b).sum();
    let tail_min: u64 = ns[idx + 1..].iter().sum();
    let mut k = 1u64;
    while used + k * ns[idx] + tail_min <= budget {
        current.push(k);
        enumerate_contact_vectors(ns, budget, current, out);
        current.pop();
        k += 1;
    }
}

/// `prod (1 - t^m)^{e_m}`: the cyclotomic product form that carries the
/// classical monodromy zeta function.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CyclotomicFactorization {
    factors: BTreeMap<u64, i64>,
}

impl CyclotomicFactorization {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (u64, i64)>) -> Self {
        let mut out = Self::new();
        for (m, e) in pairs {
            out.push(m, e);
        }
        out
    }

    /// Adds `(1 - t^m)^e`, combining exponents and dropping zeros.
    pub fn push(&mut self, m: u64, e: i64) {
        assert!(m >= 1, "cyclotomic factor exponent m must be >= 1");
        if e == 0 {
            return;
        }
        let entry = self.factors.entry(m).or_insert(0);
        *entry += e;
        if *entry == 0 {
            self.factors.remove(&m);
        }
    }

    pub fn factors(&self) -> &BTreeMap<u64, i64> {
        &self.factors
    }

    pub fn exponent(&self, m: u64) -> i64 {
        self.factors.get(&m).copied().unwrap_or(0)
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    /// Exact Taylor expansion up to `order`.
    pub fn taylor(&self, order: u32) -> IntSeries {
        let mut acc = IntSeries::one(order);
        for (&m, &e) in &self.factors {
            if m > u64::from(order) {
                continue;
            }
            let mut base = IntSeries::one(order);
            base.set_coeff(m as u32, BigInt::from(-1));
            acc = acc.mul(&base.pow(e));
        }
        acc
    }
}

impl fmt::Display for CyclotomicFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, (m, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            write!(f, "(1 - t^{})", m)?;
            if *e != 1 {
                write!(f, "^{}", e)?;
            }
        }
        Ok(())
    }
}

impl Serialize for CyclotomicFactorization {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wrapper<'a> {
            factors: FactorMap<'a>,
        }
        struct FactorMap<'a>(&'a BTreeMap<u64, i64>);
        impl Serialize for FactorMap<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                let mut map = serializer.serialize_map(Some(self.0.len()))?;
                for (m, e) in self.0 {
                    map.serialize_entry(&m.to_string(), e)?;
                }
                map.end()
            }
        }
        Wrapper {
            factors: FactorMap(&self.factors),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CyclotomicFactorization {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            factors: BTreeMap<String, i64>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let mut out = CyclotomicFactorization::new();
        for (key, e) in raw.factors {
            let m: u64 = key
                .trim()
                .parse()
                .map_err(|_| D::Error::custom(format!("bad factor key {:?}", key)))?;
            if m < 1 {
                return Err(D::Error::custom("factor key must be >= 1"));
            }
            out.push(m, e);
        }
        Ok(out)
    }
}

/// The classical monodromy zeta function by A'Campo's product over the
/// exceptional components: `prod_i (1 - t^{N_i})^{-chi(E_i)}` with the
/// open strata `E_i`.
pub fn classical_monodromy_zeta(res: &ResolutionData) -> CyclotomicFactorization {
    let mut out = CyclotomicFactorization::new();
    for stratum in &res.strata {
        if stratum.members.len() != 1 {
            continue;
        }
        let comp = match res.component(&stratum.members[0]) {
            Some(c) => c,
            None => continue,
        };
        if comp.kind != ComponentKind::Exceptional {
            continue;
        }
        let chi = stratum.cls.euler_char();
        let chi: i64 = i64::try_from(chi).expect("Euler characteristic fits a machine integer");
        out.push(comp.n, -chi);
    }
    out
}

/// Applies the Euler characteristic coefficientwise to a one-variable
/// motivic series.
pub fn euler_specialize_series(series: &MotivicSeries) -> IntSeries {
    assert_eq!(series.arity(), 1, "specialization expects one variable");
    let mut out = IntSeries::zero(series.order());
    for (e, c) in series.iter() {
        out.set_coeff(e.total(), c.euler_char());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{resolve_germ, DEFAULT_MAX_DEPTH};
    use crate::polynomial::parse_poly;
    use crate::resolution::DualGraph;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn resolve(text: &str) -> ResolutionData {
        resolve_germ(&parse_poly(text).unwrap(), DEFAULT_MAX_DEPTH)
            .unwrap()
            .data
    }

    fn lp(j: i64) -> MotivicClass {
        MotivicClass::l_power(j)
    }

    #[test]
    fn mobius_values() {
        assert_eq!(mobius(1), 1);
        assert_eq!(mobius(2), -1);
        assert_eq!(mobius(4), 0);
        assert_eq!(mobius(6), 1);
        assert_eq!(mobius(12), 0);
        assert_eq!(mobius(30), -1);
        assert_eq!(mobius(7), -1);
    }

    #[test]
    fn cusp_contact_series_over_arcs_mod_cstar() {
        let res = resolve("x^2+y^3");
        let s = contact_series(&res, SpaceKind::ArcsModCstar, 6).unwrap();
        assert_eq!(s.coeff1(0), MotivicClass::zero());
        assert_eq!(s.coeff1(1), MotivicClass::zero());
        assert_eq!(s.coeff1(2), lp(-1));
        assert_eq!(s.coeff1(3), lp(-2));
        assert_eq!(s.coeff1(6), lp(-4));
    }

    #[test]
    fn smooth_germ_arcs_contact_series_is_the_known_closed_form() {
        let res = resolve("x");
        let s = contact_series(&res, SpaceKind::Arcs, 8).unwrap();
        let lmo = MotivicClass::l_minus_one();
        for n in 1..=8 {
            assert_eq!(s.coeff1(n), &lmo * &lp(-i64::from(n)), "t^{}", n);
        }
    }

    #[test]
    fn arcs_equal_l_minus_one_times_arcs_mod_cstar() {
        for germ in ["x^2+y^3", "x*y", "x", "(x^2+y^3)*(y^2+x^3)"] {
            let res = resolve(germ);
            let arcs = contact_series(&res, SpaceKind::Arcs, 8).unwrap();
            let modc = contact_series(&res, SpaceKind::ArcsModCstar, 8).unwrap();
            assert_eq!(arcs, modc.scale(&MotivicClass::l_minus_one()), "{}", germ);
        }
    }

    #[test]
    fn arcs_identity_holds_on_randomized_data() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let res = random_resolution(&mut rng);
            let arcs = contact_series(&res, SpaceKind::Arcs, 10).unwrap();
            let modc = contact_series(&res, SpaceKind::ArcsModCstar, 10).unwrap();
            assert_eq!(arcs, modc.scale(&MotivicClass::l_minus_one()));
        }
    }

    fn random_resolution(rng: &mut ChaCha8Rng) -> ResolutionData {
        let mut g = DualGraph::default();
        let nv = rng.gen_range(1..=4);
        for i in 0..nv {
            g.add_vertex(
                format!("E{}", i + 1),
                rng.gen_range(1..=9),
                rng.gen_range(1..=9),
                Some(rng.gen_range(0..=9)),
            );
        }
        for b in 1..nv {
            let a = rng.gen_range(0..b);
            g.add_edge(format!("E{}", a + 1), format!("E{}", b + 1), 1);
        }
        let arrows = rng.gen_range(0..=2);
        for k in 0..arrows {
            let v = rng.gen_range(0..nv);
            g.add_arrow(format!("E{}", v + 1), format!("C{}", k + 1));
        }
        g.to_resolution().unwrap()
    }

    #[test]
    fn two_variable_series_specializes_both_ways() {
        for germ in ["x", "x^2+y^3", "x*y"] {
            let res = resolve(germ);
            let order = 6u32;
            let max_m = res
                .components
                .iter()
                .map(|c| c.m.unwrap())
                .max()
                .unwrap_or(0) as u32;
            let inflated = order * (1 + max_m);
            let two = two_variable_contact_series(&res, inflated).unwrap();

            // T -> 1 drops the arc-order grading: the arcs series.
            let at_one = two.eval_variable(1, 0).truncated(order);
            let arcs = contact_series(&res, SpaceKind::Arcs, order).unwrap();
            assert_eq!(at_one, arcs, "{} at T=1", germ);

            // T -> L^-1 lands on (L-1) times the branch series.
            let at_linv = two.eval_variable(1, -1).truncated(order);
            let branches = contact_series(&res, SpaceKind::Branches, order)
                .unwrap()
                .scale(&MotivicClass::l_minus_one());
            assert_eq!(at_linv, branches, "{} at T=L^-1", germ);
        }
    }

    #[test]
    fn two_variable_smooth_germ_first_coefficient() {
        let res = resolve("x");
        let two = two_variable_contact_series(&res, 4).unwrap();
        // Single contact unit with the first curve: (L-1)*[E1]*L^-2 at t*T.
        let e = ExponentVector::new(vec![1, 1]);
        assert_eq!(two.coeff(&e), MotivicClass::l_minus_one() * lp(-1));
    }

    #[test]
    fn eta_of_empty_contact_is_one() {
        let res = ResolutionData {
            ambient_dim: 2,
            components: vec![],
            strata: vec![],
        };
        assert!(eta_series(&res, SpaceKind::ArcsModCstar, 6).unwrap().is_one());
    }

    #[test]
    fn eta_of_the_cusp() {
        let res = resolve("x^2+y^3");
        let eta = eta_series(&res, SpaceKind::ArcsModCstar, 6).unwrap();
        assert!(eta.constant_term().is_one());
        assert_eq!(eta.coeff1(1), MotivicClass::zero());
        assert_eq!(eta.coeff1(2), lp(-1));
    }

    #[test]
    fn eta_over_arcs_specializes_to_one() {
        for germ in ["x^2+y^3", "x*y", "(x^2+y^3)*(y^2+x^3)"] {
            let res = resolve(germ);
            let eta = eta_series(&res, SpaceKind::Arcs, 8).unwrap();
            assert!(euler_specialize_series(&eta).is_one(), "{}", germ);
        }
    }

    #[test]
    fn monodromy_zeta_of_the_cusp() {
        let res = resolve("x^2+y^3");
        let z = motivic_monodromy_zeta(&res, SpaceKind::ArcsModCstar, 6).unwrap();
        assert_eq!(z.coeff1(2), lp(-1));
        assert_eq!(z.coeff1(3), lp(-2));
    }

    #[test]
    fn monodromy_zeta_rejects_the_full_arc_space() {
        let res = resolve("x^2+y^3");
        assert_eq!(
            motivic_monodromy_zeta(&res, SpaceKind::Arcs, 6).unwrap_err(),
            ZetaError::UnsupportedSpace
        );
    }

    #[test]
    fn monodromy_zeta_of_empty_data_is_one() {
        let res = ResolutionData {
            ambient_dim: 2,
            components: vec![],
            strata: vec![],
        };
        assert!(motivic_monodromy_zeta(&res, SpaceKind::Branches, 6)
            .unwrap()
            .is_one());
    }

    #[test]
    fn product_form_on_a_single_component_by_hand() {
        // One curve with N = 1, nu = 1, stratum class 1, order 2:
        // the four factors expanded by hand.
        let res = ResolutionData {
            ambient_dim: 2,
            components: vec![crate::resolution::Component {
                id: "E1".into(),
                kind: ComponentKind::Exceptional,
                n: 1,
                nu: 1,
                m: Some(1),
            }],
            strata: vec![crate::resolution::Stratum {
                members: vec!["E1".into()],
                cls: MotivicClass::one(),
            }],
        };
        let got = motivic_monodromy_zeta_products(&res, SpaceKind::ArcsModCstar, 2).unwrap();
        let one = MotivicClass::one();
        let t = ExponentVector::single(1);
        let hand = pow_one_minus_monomial(-1, &t, &one, 2)
            .mul(&pow_one_minus_monomial(-2, &ExponentVector::single(2), &one, 2))
            .mul(&pow_one_minus_monomial(-1, &ExponentVector::single(2), &(-&one), 2));
        assert_eq!(got, hand);
        // 1 + L^-1 t + (2 L^-2 - L^-1) t^2, expanded independently.
        assert_eq!(got.coeff1(1), lp(-1));
        assert_eq!(
            got.coeff1(2),
            MotivicClass::constant(2) * lp(-2) - lp(-1)
        );
        let mobius_route = motivic_monodromy_zeta(&res, SpaceKind::ArcsModCstar, 2).unwrap();
        assert_eq!(got, mobius_route);
    }

    #[test]
    fn product_form_agrees_with_the_mobius_route() {
        for germ in ["x^2+y^3", "x*y", "(x^2+y^3)*(y^2+x^3)"] {
            let res = resolve(germ);
            for space in [SpaceKind::ArcsModCstar, SpaceKind::Branches] {
                let a = motivic_monodromy_zeta(&res, space, 10).unwrap();
                let b = motivic_monodromy_zeta_products(&res, space, 10).unwrap();
                assert_eq!(a, b, "{} over {}", germ, space);
            }
        }
    }

    #[test]
    fn truncation_below_every_n_gives_one() {
        // All N >= 2 and order 1: no factor survives.
        let res = resolve("x^2+y^3");
        let z = motivic_monodromy_zeta_products(&res, SpaceKind::ArcsModCstar, 1).unwrap();
        assert!(z.is_one());
    }

    #[test]
    fn acampo_factorizations() {
        let cusp = classical_monodromy_zeta(&resolve("x^2+y^3"));
        assert_eq!(
            cusp,
            CyclotomicFactorization::from_pairs([(2, -1), (3, -1), (6, 1)])
        );
        let two_cusps = classical_monodromy_zeta(&resolve("(x^2+y^3)*(y^2+x^3)"));
        assert_eq!(
            two_cusps,
            CyclotomicFactorization::from_pairs([(5, -2), (10, 2)])
        );
        let node = classical_monodromy_zeta(&resolve("x*y"));
        assert!(node.is_trivial());
        let smooth = classical_monodromy_zeta(&resolve("x"));
        assert_eq!(smooth, CyclotomicFactorization::from_pairs([(1, -1)]));
    }

    #[test]
    fn euler_specialization_examples() {
        let geo = pow_one_minus_monomial(
            0,
            &ExponentVector::single(1),
            &MotivicClass::l(),
            5,
        );
        let spec = euler_specialize_series(&geo);
        assert!(spec.coeffs().iter().all(num_traits::One::is_one));

        let res = resolve("x^2+y^3");
        let killed = contact_series(&res, SpaceKind::Arcs, 6).unwrap();
        assert_eq!(euler_specialize_series(&killed), IntSeries::zero(6));

        let contact = contact_series(&res, SpaceKind::ArcsModCstar, 6).unwrap();
        assert_eq!(
            euler_specialize_series(&contact),
            IntSeries::from_coeffs(6, [0, 0, 1, 1, 1, 0, 1])
        );
    }

    #[test]
    fn euler_specialization_of_monodromy_zeta_is_the_classical_one() {
        for germ in ["x^2+y^3", "x*y", "(x^2+y^3)*(y^2+x^3)", "x"] {
            let res = resolve(germ);
            let zf = classical_monodromy_zeta(&res);
            for space in [SpaceKind::ArcsModCstar, SpaceKind::Branches] {
                let z = motivic_monodromy_zeta(&res, space, 10).unwrap();
                assert_eq!(
                    euler_specialize_series(&z),
                    zf.taylor(10),
                    "{} over {}",
                    germ,
                    space
                );
            }
        }
    }

    #[test]
    fn eta_specializes_to_the_product_over_scalings() {
        // chi(eta) = prod_k zeta_f(t^k) for both quotient spaces.
        for germ in ["x^2+y^3", "x*y", "(x^2+y^3)*(y^2+x^3)"] {
            let res = resolve(germ);
            let zf = classical_monodromy_zeta(&res);
            let order = 10;
            let mut expected = IntSeries::one(order);
            for k in 1..=order {
                expected = expected.mul(&zf.taylor(order).substitute_power(k));
            }
            for space in [SpaceKind::ArcsModCstar, SpaceKind::Branches] {
                let eta = eta_series(&res, space, order).unwrap();
                assert_eq!(euler_specialize_series(&eta), expected, "{}", germ);
            }
        }
    }

    #[test]
    fn classical_zeta_recovered_by_mobius_inversion_of_specialized_eta() {
        let res = resolve("x^2+y^3");
        let order = 10;
        let eta = euler_specialize_series(&eta_series(&res, SpaceKind::ArcsModCstar, order).unwrap());
        let mut recovered = IntSeries::one(order);
        for i in 1..=order {
            recovered = recovered.mul(&eta.substitute_power(i).pow(i64::from(mobius(u64::from(i)))));
        }
        let zf = classical_monodromy_zeta(&res);
        assert_eq!(recovered, zf.taylor(order));
    }

    #[test]
    fn acampo_sanity_for_resolver_outputs() {
        // The resolver's exceptional data reproduces the known zeta
        // functions of the worked germs.
        let known = [
            ("x^2+y^3", vec![(2i64, -1i64), (3, -1), (6, 1)]),
            ("x*y", vec![]),
            ("x", vec![(1, -1)]),
        ];
        for (germ, pairs) in known {
            let res = resolve(germ);
            let zf = classical_monodromy_zeta(&res);
            let expect = CyclotomicFactorization::from_pairs(
                pairs.iter().map(|&(m, e)| (m as u64, e)),
            );
            assert_eq!(zf, expect, "{}", germ);
        }
    }

    #[test]
    fn branch_weight_conventions_differ() {
        let res = resolve("x");
        let plus = contact_series_with(&res, SpaceKind::Branches, 4, BranchWeight::NuPlusM)
            .unwrap();
        let minus = contact_series_with(&res, SpaceKind::Branches, 4, BranchWeight::NuMinusM)
            .unwrap();
        // nu + M = 3 versus nu - M = 1 on the exceptional curve.
        assert_eq!(plus.coeff1(1), lp(-2));
        assert_ne!(plus, minus);
        // A direct jet count for a smooth germ gives coefficient 1 at t:
        // the nu-minus-M reading.
        assert_eq!(minus.coeff1(1), MotivicClass::one());
    }

    #[test]
    fn factorization_serde_and_display() {
        let zf = CyclotomicFactorization::from_pairs([(2, -1), (3, -1), (6, 1)]);
        let json = serde_json::to_string(&zf).unwrap();
        assert_eq!(json, r#"{"factors":{"2":-1,"3":-1,"6":1}}"#);
        let back: CyclotomicFactorization = serde_json::from_str(&json).unwrap();
        assert_eq!(back, zf);
        assert_eq!(zf.to_string(), "(1 - t^2)^-1 * (1 - t^3)^-1 * (1 - t^6)");
    }

    #[test]
    fn missing_m_is_reported_for_branches() {
        let mut res = resolve("x^2+y^3");
        res.components[0].m = None;
        let err = contact_series(&res, SpaceKind::Branches, 6).unwrap_err();
        assert!(matches!(err, ZetaError::MissingM(_)));
    }
}

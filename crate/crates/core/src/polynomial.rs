//! Exact polynomial arithmetic over the rationals.
//!
//! [`RatPoly`] is a dense univariate polynomial (used for restrictions to
//! coordinate axes, root extraction, and the `s`-polynomials of the
//! topological zeta functions). [`BiPoly`] is a sparse bivariate
//! polynomial, the local equation type of the curve resolver. Everything
//! is exact `BigRational` arithmetic.
//!
//! [`parse_poly`] reads the input grammar for plane-curve germs:
//! integer or rational coefficients, `+ - * ^`, parentheses, and the
//! variables `x` and `y`. Multiplication is always explicit.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Dense univariate polynomial over `Q`, coefficients in ascending degree.
///
/// Invariant: the last stored coefficient is nonzero (zero = empty vec).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn from_int_coeffs(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    /// The monomial `c * v^k`.
    pub fn monomial(c: BigRational, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = c;
        Self { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree of a nonzero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(len);
        for k in 0..len {
            out.push(self.coeff(k) + rhs.coeff(k));
        }
        Self::new(out)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    /// Exact division with remainder; panics on a zero divisor.
    pub fn div_rem(&self, rhs: &Self) -> (Self, Self) {
        assert!(!rhs.is_zero(), "polynomial division by zero");
        let dd = match self.degree() {
            None => return (Self::zero(), Self::zero()),
            Some(d) => d,
        };
        let dr = rhs.degree().unwrap();
        if dd < dr {
            return (Self::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); dd - dr + 1];
        let lead = rhs.leading_coeff();
        for k in (0..=dd - dr).rev() {
            let c = rem[k + dr].clone() / lead.clone();
            if c.is_zero() {
                continue;
            }
            quot[k] = c.clone();
            for (j, b) in rhs.coeffs.iter().enumerate() {
                rem[k + j] -= &c * b;
            }
        }
        (Self::new(quot), Self::new(rem))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let lead = self.leading_coeff();
        self.scale(&(BigRational::one() / lead))
    }

    /// Monic greatest common divisor (Euclid over `Q`).
    pub fn gcd(&self, rhs: &Self) -> Self {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Writes the polynomial as `scale * P` with `P` a primitive integer
    /// polynomial with positive leading coefficient. The zero polynomial
    /// returns `(0, [])`.
    pub fn to_integer_primitive(&self) -> (BigRational, Vec<BigInt>) {
        if self.is_zero() {
            return (BigRational::zero(), Vec::new());
        }
        let mut denom_lcm = BigInt::one();
        for c in &self.coeffs {
            denom_lcm = num_integer::lcm(denom_lcm, c.denom().clone());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&denom_lcm / c.denom()))
            .collect();
        let mut content = BigInt::zero();
        for c in &ints {
            content = num_integer::gcd(content, c.clone());
        }
        if ints.last().unwrap().is_negative() {
            content = -content;
        }
        let prim: Vec<BigInt> = ints.iter().map(|c| c / &content).collect();
        let scale = BigRational::new(content, denom_lcm);
        (scale, prim)
    }

    /// All rational roots with multiplicities (ascending), plus the
    /// root-free leftover factor.
    pub fn rational_roots(&self) -> (Vec<(BigRational, u32)>, RatPoly) {
        assert!(!self.is_zero(), "the zero polynomial has no root set");
        let mut roots: Vec<(BigRational, u32)> = Vec::new();
        let mut h = self.clone();

        // Root at zero first.
        let mut zero_mult = 0u32;
        while !h.is_zero() && h.coeff(0).is_zero() {
            h = Self::new(h.coeffs[1..].to_vec());
            zero_mult += 1;
        }
        if zero_mult > 0 {
            roots.push((BigRational::zero(), zero_mult));
        }
        if h.is_constant() {
            return (roots, h);
        }

        let (_, prim) = h.to_integer_primitive();
        let a0 = prim.first().unwrap().clone();
        let alead = prim.last().unwrap().clone();
        let mut candidates: Vec<BigRational> = Vec::new();
        for p in divisors(&a0) {
            for q in divisors(&alead) {
                let c = BigRational::new(p.clone(), q.clone());
                candidates.push(c.clone());
                candidates.push(-c);
            }
        }
        candidates.sort();
        candidates.dedup();

        for c in candidates {
            let mut mult = 0u32;
            loop {
                if h.is_constant() || !h.eval(&c).is_zero() {
                    break;
                }
                let linear = Self::new(vec![-c.clone(), BigRational::one()]);
                let (q, r) = h.div_rem(&linear);
                debug_assert!(r.is_zero());
                h = q;
                mult += 1;
            }
            if mult > 0 {
                roots.push((c, mult));
            }
        }
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        (roots, h)
    }

    /// Renders with a chosen variable name.
    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (k, c)) in self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .enumerate()
        {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let show_coeff = !abs.is_one() || k == 0;
            if show_coeff {
                if abs.is_integer() {
                    out.push_str(&abs.numer().to_string());
                } else {
                    out.push_str(&format!("{}/{}", abs.numer(), abs.denom()));
                }
            }
            if k > 0 {
                if show_coeff {
                    out.push('*');
                }
                out.push_str(var);
                if k > 1 {
                    out.push_str(&format!("^{}", k));
                }
            }
        }
        out
    }
}

/// Positive divisors of a nonzero integer, by trial division.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    assert!(!n.is_zero());
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    loop {
        let d_sq = &d * &d;
        if d_sq > n {
            break;
        }
        if (&n % &d).is_zero() {
            small.push(d.clone());
            if d_sq != n {
                large.push(&n / &d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Sparse bivariate polynomial over `Q`; keys are `(x-degree, y-degree)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), BigRational>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((0, 0), c);
        }
        Self { terms }
    }

    pub fn var_x() -> Self {
        Self::monomial(BigRational::one(), 1, 0)
    }

    pub fn var_y() -> Self {
        Self::monomial(BigRational::one(), 0, 1)
    }

    pub fn monomial(c: BigRational, i: u32, j: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        Self { terms }
    }

    pub fn from_terms<I>(pairs: I) -> Self
    where
        I: IntoIterator<Item = ((u32, u32), BigRational)>,
    {
        let mut out = Self::zero();
        for ((i, j), c) in pairs {
            out.add_term(i, j, c);
        }
        out
    }

    fn add_term(&mut self, i: u32, j: u32, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry((i, j))
            .or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&(i, j)| i == 0 && j == 0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigRational)> {
        self.terms.iter()
    }

    pub fn constant_term(&self) -> BigRational {
        self.terms
            .get(&(0, 0))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&k, c)| (k, -c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                out.add_term(i1 + i2, j1 + j2, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Order of vanishing at the origin: the least total degree of a
    /// monomial. `None` for the zero polynomial.
    pub fn multiplicity(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).min()
    }

    /// Total transform under the chart map `(x, y) -> (x, x*y)`.
    pub fn blowup_chart_x(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| ((i + j, j), c.clone()))
                .collect(),
        }
    }

    /// Total transform under the chart map `(x, y) -> (x*y, y)`.
    pub fn blowup_chart_y(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| ((i, i + j), c.clone()))
                .collect(),
        }
    }

    /// Exact division by `x^k`.
    pub fn divide_x_power(&self, k: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| {
                    assert!(i >= k, "not divisible by x^{}", k);
                    ((i - k, j), c.clone())
                })
                .collect(),
        }
    }

    /// Exact division by `y^k`.
    pub fn divide_y_power(&self, k: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| {
                    assert!(j >= k, "not divisible by y^{}", k);
                    ((i, j - k), c.clone())
                })
                .collect(),
        }
    }

    /// Substitutes `y -> y + c`.
    pub fn translate_y(&self, c: &BigRational) -> Self {
        let mut out = Self::zero();
        for (&(i, j), coeff) in &self.terms {
            // (y + c)^j expanded by binomials.
            let mut binom = BigRational::one();
            let mut c_pow = BigRational::one();
            for k in (0..=j).rev() {
                // coefficient of y^k in (y+c)^j is C(j, k) c^(j-k);
                // iterate k descending, maintaining the running values.
                out.add_term(i, k, coeff * &binom * &c_pow);
                if k > 0 {
                    binom = binom * rat(i64::from(k)) / rat(i64::from(j - k + 1));
                    c_pow *= c;
                }
            }
        }
        out
    }

    /// The restriction `f(0, y)` as a univariate polynomial in `y`.
    pub fn restrict_x0(&self) -> RatPoly {
        let mut coeffs: Vec<BigRational> = Vec::new();
        for (&(i, j), c) in &self.terms {
            if i != 0 {
                continue;
            }
            if coeffs.len() <= j as usize {
                coeffs.resize(j as usize + 1, BigRational::zero());
            }
            coeffs[j as usize] = c.clone();
        }
        RatPoly::new(coeffs)
    }

    /// The restriction `f(x, 0)` as a univariate polynomial in `x`.
    pub fn restrict_y0(&self) -> RatPoly {
        let mut coeffs: Vec<BigRational> = Vec::new();
        for (&(i, j), c) in &self.terms {
            if j != 0 {
                continue;
            }
            if coeffs.len() <= i as usize {
                coeffs.resize(i as usize + 1, BigRational::zero());
            }
            coeffs[i as usize] = c.clone();
        }
        RatPoly::new(coeffs)
    }

    pub fn partial_x(&self) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            if i > 0 {
                out.add_term(i - 1, j, c * rat(i64::from(i)));
            }
        }
        out
    }

    pub fn partial_y(&self) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            if j > 0 {
                out.add_term(i, j - 1, c * rat(i64::from(j)));
            }
        }
        out
    }

    pub fn degree_y(&self) -> u32 {
        self.terms.keys().map(|&(_, j)| j).max().unwrap_or(0)
    }

    /// Coefficients of powers of `y`, each a univariate polynomial in `x`.
    fn y_coefficients(&self) -> Vec<RatPoly> {
        let dy = self.degree_y() as usize;
        let mut out: Vec<Vec<BigRational>> = vec![Vec::new(); dy + 1];
        for (&(i, j), c) in &self.terms {
            let row = &mut out[j as usize];
            if row.len() <= i as usize {
                row.resize(i as usize + 1, BigRational::zero());
            }
            row[i as usize] = c.clone();
        }
        out.into_iter().map(RatPoly::new).collect()
    }

    fn from_y_coefficients(coeffs: &[RatPoly]) -> Self {
        let mut out = Self::zero();
        for (j, p) in coeffs.iter().enumerate() {
            for (i, c) in p.coeffs().iter().enumerate() {
                out.add_term(i as u32, j as u32, c.clone());
            }
        }
        out
    }

    /// Content with respect to `y`: the monic gcd in `Q[x]` of the
    /// `y`-coefficients.
    fn content_y(&self) -> RatPoly {
        let mut g = RatPoly::zero();
        for p in self.y_coefficients() {
            if p.is_zero() {
                continue;
            }
            g = if g.is_zero() { p.monic() } else { g.gcd(&p) };
        }
        g
    }

    /// Exact division of every `y`-coefficient by a univariate polynomial
    /// in `x`.
    fn divide_content_y(&self, content: &RatPoly) -> Self {
        let parts: Vec<RatPoly> = self
            .y_coefficients()
            .iter()
            .map(|p| {
                let (q, r) = p.div_rem(content);
                debug_assert!(r.is_zero(), "content division must be exact");
                q
            })
            .collect();
        Self::from_y_coefficients(&parts)
    }

    pub fn to_string_xy(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut items: Vec<(&(u32, u32), &BigRational)> = self.terms.iter().collect();
        items.sort_by_key(|(&(i, j), _)| (i + j, i, j));
        let mut out = String::new();
        for (idx, (&(i, j), c)) in items.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors = Vec::new();
            if !abs.is_one() || (i == 0 && j == 0) {
                if abs.is_integer() {
                    factors.push(abs.numer().to_string());
                } else {
                    factors.push(format!("{}/{}", abs.numer(), abs.denom()));
                }
            }
            for (var, e) in [("x", i), ("y", j)] {
                if e == 1 {
                    factors.push(var.to_string());
                } else if e > 1 {
                    factors.push(format!("{}^{}", var, e));
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_xy())
    }
}

/// Pseudo-remainder of `f` by `g` with respect to `y` (both with
/// `Q[x]`-coefficients); `g` must have positive `y`-degree.
fn pseudo_rem_y(f: &BiPoly, g: &BiPoly) -> BiPoly {
    let dg = g.degree_y();
    let g_coeffs = g.y_coefficients();
    let lc_g = BiPoly::from_y_coefficients(&[g_coeffs[dg as usize].clone()]);
    let mut r = f.clone();
    while !r.is_zero() {
        let dr = r.degree_y();
        if dr < dg {
            break;
        }
        let r_coeffs = r.y_coefficients();
        let lead_r = BiPoly::from_y_coefficients(&[r_coeffs[dr as usize].clone()]);
        // r := lc(g)*r - lead(r)*y^(dr-dg)*g
        let shift = BiPoly::monomial(BigRational::one(), 0, dr - dg);
        r = lc_g.mul(&r).sub(&lead_r.mul(&shift).mul(g));
    }
    r
}

/// Greatest common divisor in `Q[x, y]`, up to a rational unit.
pub fn gcd_bipoly(a: &BiPoly, b: &BiPoly) -> BiPoly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    let cont_a = a.content_y();
    let cont_b = b.content_y();
    let cont_gcd = cont_a.gcd(&cont_b);
    let pp_a = a.divide_content_y(&cont_a);
    let pp_b = b.divide_content_y(&cont_b);

    let (mut r0, mut r1) = if pp_a.degree_y() >= pp_b.degree_y() {
        (pp_a, pp_b)
    } else {
        (pp_b, pp_a)
    };
    while !r1.is_zero() && r1.degree_y() > 0 {
        let mut r2 = pseudo_rem_y(&r0, &r1);
        if !r2.is_zero() {
            let c = r2.content_y();
            r2 = r2.divide_content_y(&c);
        }
        r0 = r1;
        r1 = r2;
    }
    let pp_gcd = if r1.is_zero() {
        let c = r0.content_y();
        r0.divide_content_y(&c)
    } else {
        // Primitive parts share no factor of positive y-degree.
        BiPoly::one()
    };

    let cont_as_bipoly = {
        let mut out = BiPoly::zero();
        for (i, c) in cont_gcd.coeffs().iter().enumerate() {
            out.add_term(i as u32, 0, c.clone());
        }
        out
    };
    cont_as_bipoly.mul(&pp_gcd)
}

/// True when `f` has no repeated factor (characteristic zero: the gcd of
/// `f` with both partial derivatives is constant).
pub fn is_squarefree(f: &BiPoly) -> bool {
    if f.is_zero() {
        return false;
    }
    if f.is_constant() {
        return true;
    }
    let g1 = gcd_bipoly(f, &f.partial_x());
    let g = gcd_bipoly(&g1, &f.partial_y());
    g.is_constant()
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("parse error at byte {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            text: text.as_bytes(),
            pos: 0,
        }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            position: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn parse_expr(&mut self) -> Result<BiPoly, ParseError> {
        let mut acc = self.parse_term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.bump();
                    acc = acc.add(&self.parse_term()?);
                }
                b'-' => {
                    self.bump();
                    acc = acc.sub(&self.parse_term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn parse_term(&mut self) -> Result<BiPoly, ParseError> {
        let mut acc = self.parse_unary()?;
        while let Some(b'*') = self.peek() {
            self.bump();
            acc = acc.mul(&self.parse_unary()?);
        }
        Ok(acc)
    }

    fn parse_unary(&mut self) -> Result<BiPoly, ParseError> {
        if let Some(b'-') = self.peek() {
            self.bump();
            return Ok(self.parse_unary()?.neg());
        }
        self.parse_power()
    }

    fn parse_power(&mut self) -> Result<BiPoly, ParseError> {
        let base = self.parse_atom()?;
        if let Some(b'^') = self.peek() {
            self.bump();
            let e = self.parse_uint()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn parse_atom(&mut self) -> Result<BiPoly, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.bump();
                let inner = self.parse_expr()?;
                match self.peek() {
                    Some(b')') => {
                        self.bump();
                        Ok(inner)
                    }
                    _ => self.error("expected ')'"),
                }
            }
            Some(b'x') => {
                self.bump();
                Ok(BiPoly::var_x())
            }
            Some(b'y') => {
                self.bump();
                Ok(BiPoly::var_y())
            }
            Some(c) if c.is_ascii_digit() => {
                let numer = self.parse_uint_big()?;
                if let Some(b'/') = self.peek() {
                    self.bump();
                    match self.peek() {
                        Some(c) if c.is_ascii_digit() => {}
                        _ => return self.error("expected an integer denominator after '/'"),
                    }
                    let denom = self.parse_uint_big()?;
                    if denom.is_zero() {
                        return self.error("zero denominator");
                    }
                    Ok(BiPoly::constant(BigRational::new(numer, denom)))
                } else {
                    Ok(BiPoly::constant(BigRational::from_integer(numer)))
                }
            }
            Some(c) => self.error(format!(
                "unexpected character {:?} (variables are x and y; multiplication is explicit)",
                c as char
            )),
            None => self.error("unexpected end of input"),
        }
    }

    fn parse_uint(&mut self) -> Result<u32, ParseError> {
        let big = self.parse_uint_big()?;
        u32::try_from(big).or_else(|_| self.error("exponent too large"))
    }

    fn parse_uint_big(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error("expected a nonnegative integer");
        }
        let s = std::str::from_utf8(&self.text[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }
}

/// Parses a plane-curve polynomial in `x` and `y`.
pub fn parse_poly(text: &str) -> Result<BiPoly, ParseError> {
    let mut parser = Parser::new(text);
    let poly = parser.parse_expr()?;
    if parser.peek().is_some() {
        return parser.error("trailing input");
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str) -> BiPoly {
        parse_poly(text).unwrap()
    }

    #[test]
    fn parses_the_standard_germs() {
        assert_eq!(p("x^2+y^3"), p("y^3 + x^2"));
        assert_eq!(p("x*y - x*y"), BiPoly::zero());
        let g = p("(x^2+y^3)*(y^2+x^3)");
        assert_eq!(g.multiplicity(), Some(4));
        assert_eq!(p("3/2*x").constant_term(), BigRational::zero());
        assert_eq!(
            p("3/2*x"),
            BiPoly::monomial(BigRational::new(BigInt::from(3), BigInt::from(2)), 1, 0)
        );
        assert_eq!(p("-x^2"), p("0-x^2"));
        assert_eq!(p("2^3"), BiPoly::constant(rat(8)));
    }

    #[test]
    fn parse_errors_carry_positions() {
        assert!(parse_poly("z").is_err());
        assert!(parse_poly("x y").is_err());
        assert!(parse_poly("x^").is_err());
        assert!(parse_poly("1/0").is_err());
        assert!(parse_poly("(x+y").is_err());
        assert!(parse_poly("x/2").is_err());
    }

    #[test]
    fn multiplicity_examples() {
        assert_eq!(p("x^2+y^3").multiplicity(), Some(2));
        assert_eq!(p("x*y").multiplicity(), Some(2));
        assert_eq!(p("x").multiplicity(), Some(1));
        assert_eq!(BiPoly::zero().multiplicity(), None);
    }

    #[test]
    fn blowup_charts_transform_monomials() {
        let f = p("x^2+y^3");
        // x-chart: x^2 + x^3 y^3 = x^2 (1 + x y^3)
        let fx = f.blowup_chart_x();
        assert_eq!(fx, p("x^2 + x^3*y^3"));
        assert_eq!(fx.divide_x_power(2), p("1 + x*y^3"));
        // y-chart: x^2 y^2 + y^3 = y^2 (x^2 + y)
        let fy = f.blowup_chart_y();
        assert_eq!(fy.divide_y_power(2), p("x^2 + y"));
    }

    #[test]
    fn translate_y_shifts_roots() {
        let f = p("y^2 - x");
        let g = f.translate_y(&rat(3));
        assert_eq!(g, p("y^2 + 6*y + 9 - x"));
        let h = g.translate_y(&rat(-3));
        assert_eq!(h, f);
    }

    #[test]
    fn restrictions_are_exact() {
        let f = p("(1+x*y^3)*(y^2+x)");
        let h = f.restrict_x0();
        assert_eq!(h, RatPoly::from_int_coeffs(&[0, 0, 1]));
        let g = p("x^2 + y - 7");
        assert_eq!(g.restrict_y0(), RatPoly::from_int_coeffs(&[-7, 0, 1]));
    }

    #[test]
    fn div_rem_and_gcd() {
        let a = RatPoly::from_int_coeffs(&[-1, 0, 1]); // x^2 - 1
        let b = RatPoly::from_int_coeffs(&[-1, 1]); // x - 1
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, RatPoly::from_int_coeffs(&[1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&b), b.monic());

        let c = RatPoly::from_int_coeffs(&[2, 2]); // 2x + 2
        assert_eq!(a.gcd(&c), RatPoly::from_int_coeffs(&[1, 1]));
    }

    #[test]
    fn rational_roots_with_multiplicities() {
        // y^2 (y - 1/2) (y + 3)^2 * (y^2 + 1)
        let f = RatPoly::monomial(BigRational::one(), 2)
            .mul(&RatPoly::new(vec![
                BigRational::new(BigInt::from(-1), BigInt::from(2)),
                BigRational::one(),
            ]))
            .mul(&RatPoly::from_int_coeffs(&[3, 1]).pow(2))
            .mul(&RatPoly::from_int_coeffs(&[1, 0, 1]));
        let (roots, leftover) = f.rational_roots();
        let expect = vec![
            (rat(-3), 2u32),
            (BigRational::zero(), 2),
            (BigRational::new(BigInt::from(1), BigInt::from(2)), 1),
        ];
        assert_eq!(roots, expect);
        assert_eq!(leftover.monic(), RatPoly::from_int_coeffs(&[1, 0, 1]));
    }

    #[test]
    fn integer_primitive_form() {
        let f = RatPoly::new(vec![
            BigRational::new(BigInt::from(1), BigInt::from(2)),
            BigRational::new(BigInt::from(-3), BigInt::from(4)),
        ]);
        let (scale, prim) = f.to_integer_primitive();
        // 1/2 - 3/4 s = -1/4 * (3s - 2)
        assert_eq!(prim, vec![BigInt::from(-2), BigInt::from(3)]);
        assert_eq!(scale, BigRational::new(BigInt::from(-1), BigInt::from(4)));
    }

    #[test]
    fn squarefree_detection() {
        assert!(is_squarefree(&p("x^2+y^3")));
        assert!(is_squarefree(&p("(x^2+y^3)*(y^2+x^3)")));
        assert!(is_squarefree(&p("x*y")));
        assert!(!is_squarefree(&p("x^2*y - x*x*y"))); // zero polynomial
        assert!(!is_squarefree(&p("(x+y)^2")));
        assert!(!is_squarefree(&p("x^2 + 2*x*y + y^2")));
        assert!(!is_squarefree(&p("y^2*(x+1)")));
        assert!(is_squarefree(&p("y")));
        assert!(is_squarefree(&p("x")));
        assert!(!is_squarefree(&p("x^2")));
        // Repeated factor in x only: f = x^2 * (irrelevant in y).
        assert!(!is_squarefree(&p("x^2*y + x^2")));
    }

    #[test]
    fn bipoly_gcd_finds_common_factors() {
        let f = p("(x+y)*(x^2+y^3)");
        let g = p("(x+y)*(y^2+x^3)");
        let d = gcd_bipoly(&f, &g);
        // Up to a rational unit the gcd is x + y.
        let dy = d.degree_y();
        assert_eq!(dy, 1);
        let (q1, r1) = (f.clone(), d.clone());
        let _ = (q1, r1);
        assert!(!d.is_constant());
    }

    #[test]
    fn display_forms() {
        assert_eq!(p("x^2 - y + 1").to_string_xy(), "1 - y + x^2");
        assert_eq!(
            RatPoly::from_int_coeffs(&[5, 4]).display_with("s"),
            "4*s + 5"
        );
        assert_eq!(RatPoly::from_int_coeffs(&[-1, 1]).display_with("s"), "s - 1");
    }
}

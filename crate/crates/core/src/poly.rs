//! Sparse bivariate polynomials over [`FieldElement`], plus the univariate
//! polynomials used for centralizer expressions and elementary factors.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::field::{FieldElement, FieldError, FieldTower};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Exponent pair of `x^x * y^y`, ordered graded-lex: total degree first,
/// then the higher `x` exponent wins.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub x: u32,
    pub y: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { x: 0, y: 0 };

    pub fn new(x: u32, y: u32) -> Self {
        Monomial { x, y }
    }

    pub fn degree(self) -> u32 {
        self.x + self.y
    }

    pub fn weighted(self, w: Weight) -> i64 {
        w.0 * i64::from(self.x) + w.1 * i64::from(self.y)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then(self.x.cmp(&other.x))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree with a distinguished value for the zero polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    MinusInfinity,
    Finite(i64),
}

impl Degree {
    pub fn finite(self) -> Option<i64> {
        match self {
            Degree::Finite(d) => Some(d),
            Degree::MinusInfinity => None,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::MinusInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Weight vector `(w₁, w₂)`: the monomial `x^i y^j` has weight `w₁·i + w₂·j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Weight(pub i64, pub i64);

impl Weight {
    pub const TOTAL: Weight = Weight(1, 1);
    pub const Y_DEGREE: Weight = Weight(0, 1);
    pub const X_DEGREE: Weight = Weight(1, 0);
}

/// Axis for parity profiles: `Y` reads `(0,1)`-degrees, `X` reads `(1,0)`-degrees.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Y,
    X,
}

impl Axis {
    pub fn weight(self) -> Weight {
        match self {
            Axis::Y => Weight::Y_DEGREE,
            Axis::X => Weight::X_DEGREE,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Axis::Y => "(0,1)",
            Axis::X => "(1,0)",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    AllEven,
    AllOdd,
    Mixed,
}

/// A polynomial in `x, y`. No zero coefficient is ever stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, FieldElement>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(FieldElement::one())
    }

    pub fn x() -> Self {
        Poly::monomial(FieldElement::one(), 1, 0)
    }

    pub fn y() -> Self {
        Poly::monomial(FieldElement::one(), 0, 1)
    }

    pub fn constant(c: FieldElement) -> Self {
        Poly::monomial(c, 0, 0)
    }

    pub fn monomial(c: FieldElement, i: u32, j: u32) -> Self {
        let mut p = Poly::zero();
        p.add_term(Monomial::new(i, j), c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, FieldElement)>>(terms: I) -> Self {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Adds `c·m` in place.
    pub fn add_term(&mut self, m: Monomial, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut e) => {
                e.get_mut().add_assign_ref(&c);
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &FieldElement)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: u32, j: u32) -> FieldElement {
        self.terms.get(&Monomial::new(i, j)).cloned().unwrap_or_else(FieldElement::zero)
    }

    pub fn constant_term(&self) -> FieldElement {
        self.coeff(0, 0)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| *m == Monomial::ONE)
    }

    /// The constant value, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<FieldElement> {
        self.is_constant().then(|| self.constant_term())
    }

    pub fn total_degree(&self) -> Degree {
        self.weighted_degree(Weight::TOTAL)
    }

    /// Total degree as an integer, zero polynomial counted as 0.
    pub fn deg(&self) -> u32 {
        self.terms.keys().next_back().map_or(0, |m| m.degree())
    }

    pub fn weighted_degree(&self, w: Weight) -> Degree {
        self.terms
            .keys()
            .map(|m| m.weighted(w))
            .max()
            .map_or(Degree::MinusInfinity, Degree::Finite)
    }

    pub fn degree_in_x(&self) -> Degree {
        self.weighted_degree(Weight::X_DEGREE)
    }

    pub fn degree_in_y(&self) -> Degree {
        self.weighted_degree(Weight::Y_DEGREE)
    }

    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.terms.keys().next_back().copied()
    }

    pub fn leading_term(&self) -> Option<(Monomial, &FieldElement)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, c))
    }

    pub fn leading_coeff(&self) -> Option<&FieldElement> {
        self.terms.values().next_back()
    }

    /// Join of all coefficient towers.
    pub fn tower(&self) -> Result<FieldTower, FieldError> {
        let mut t = FieldTower::rationals();
        for c in self.terms.values() {
            t = t.join(c.tower())?;
        }
        Ok(t)
    }

    pub fn scale(&self, c: &FieldElement) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect() }
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut result = Poly::one();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn derivative_x(&self) -> Poly {
        Poly::from_terms(self.terms.iter().filter(|(m, _)| m.x > 0).map(|(m, c)| {
            (Monomial::new(m.x - 1, m.y), c * &FieldElement::from_i64(i64::from(m.x)))
        }))
    }

    pub fn derivative_y(&self) -> Poly {
        Poly::from_terms(self.terms.iter().filter(|(m, _)| m.y > 0).map(|(m, c)| {
            (Monomial::new(m.x, m.y - 1), c * &FieldElement::from_i64(i64::from(m.y)))
        }))
    }

    /// `self(p, q)`: substitutes `x ↦ p`, `y ↦ q`.
    pub fn substitute(&self, p: &Poly, q: &Poly) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let max_x = self.terms.keys().map(|m| m.x).max().unwrap_or(0);
        let max_y = self.terms.keys().map(|m| m.y).max().unwrap_or(0);
        let q_pows = powers(q, max_y);
        // group by x exponent: Σ_i p^i · (Σ_j c_ij q^j), evaluated by Horner in p
        let mut rows: Vec<Poly> = vec![Poly::zero(); max_x as usize + 1];
        for (m, c) in &self.terms {
            let row = &mut rows[m.x as usize];
            *row = &*row + &q_pows[m.y as usize].scale(c);
        }
        let mut acc = Poly::zero();
        for row in rows.into_iter().rev() {
            acc = &(&acc * p) + &row;
        }
        acc
    }

    /// Decomposition into `w`-homogeneous components, ascending in degree.
    pub fn graded_parts(&self, w: Weight) -> Vec<(i64, Poly)> {
        let mut parts: BTreeMap<i64, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            parts.entry(m.weighted(w)).or_default().terms.insert(*m, c.clone());
        }
        parts.into_iter().collect()
    }

    /// Highest `w`-homogeneous component (zero for the zero polynomial).
    pub fn leading_form(&self, w: Weight) -> Poly {
        self.graded_parts(w).pop().map(|(_, p)| p).unwrap_or_default()
    }

    /// Component of `w`-degree `d`.
    pub fn homogeneous_part(&self, w: Weight, d: i64) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.weighted(w) == d)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    pub fn parity_profile(&self, axis: Axis) -> Result<Parity, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let w = axis.weight();
        let (mut even, mut odd) = (false, false);
        for m in self.terms.keys() {
            if m.weighted(w) % 2 == 0 {
                even = true;
            } else {
                odd = true;
            }
        }
        Ok(match (even, odd) {
            (true, false) => Parity::AllEven,
            (false, true) => Parity::AllOdd,
            _ => Parity::Mixed,
        })
    }

    /// `self(y, x)`.
    pub fn swap_variables(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (Monomial::new(m.y, m.x), c.clone())).collect() }
    }

    /// The polynomial as a univariate in `y`, if `x` does not occur.
    pub fn as_univariate_in_y(&self) -> Option<UniPoly> {
        self.terms.keys().all(|m| m.x == 0).then(|| {
            UniPoly::from_pairs(self.terms.iter().map(|(m, c)| (m.y as usize, c.clone())))
        })
    }

    /// The polynomial as a univariate in `x`, if `y` does not occur.
    pub fn as_univariate_in_x(&self) -> Option<UniPoly> {
        self.terms.keys().all(|m| m.y == 0).then(|| {
            UniPoly::from_pairs(self.terms.iter().map(|(m, c)| (m.x as usize, c.clone())))
        })
    }

    /// Renders with custom variable names (used for formal `P, Q` expressions).
    pub fn render_with(&self, vx: &str, vy: &str) -> String {
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let mono = render_monomial(*m, vx, vy);
            let (neg, body) = render_coeff_term(c, &mono);
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

fn powers(p: &Poly, n: u32) -> Vec<Poly> {
    let mut out = Vec::with_capacity(n as usize + 1);
    out.push(Poly::one());
    for k in 1..=n as usize {
        let next = &out[k - 1] * p;
        out.push(next);
    }
    out
}

fn render_monomial(m: Monomial, vx: &str, vy: &str) -> String {
    let var = |v: &str, e: u32| if e == 1 { v.to_string() } else { format!("{v}^{e}") };
    match (m.x, m.y) {
        (0, 0) => String::new(),
        (i, 0) => var(vx, i),
        (0, j) => var(vy, j),
        (i, j) => format!("{}*{}", var(vx, i), var(vy, j)),
    }
}

/// Sign and body of `c * mono` for display; `mono` may be empty.
fn render_coeff_term(c: &FieldElement, mono: &str) -> (bool, String) {
    match c.single_term() {
        Some((k, basis)) => {
            let neg = k.is_negative();
            let mag = k.abs();
            let mut factors = Vec::new();
            if !mag.is_one() || (basis.is_empty() && mono.is_empty()) {
                factors.push(mag.to_string());
            }
            if !basis.is_empty() {
                factors.push(basis);
            }
            if !mono.is_empty() {
                factors.push(mono.to_string());
            }
            (neg, factors.join("*"))
        }
        None => {
            if mono.is_empty() {
                (false, format!("({c})"))
            } else {
                (false, format!("({c})*{mono}"))
            }
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_with("x", "y"))
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (big, small) = if self.len() >= rhs.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if let (Some(a), Some(b)) = (integral_form(self), integral_form(rhs)) {
            return mul_integral(a, b);
        }
        let mut acc: BTreeMap<Monomial, FieldElement> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = Monomial::new(ma.x + mb.x, ma.y + mb.y);
                let prod = ca * cb;
                match acc.entry(m) {
                    Entry::Occupied(mut e) => e.get_mut().add_assign_ref(&prod),
                    Entry::Vacant(e) => {
                        e.insert(prod);
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Poly { terms: acc }
    }
}

/// Coefficients over a common denominator, when all are rational.
fn integral_form(p: &Poly) -> Option<(Vec<(Monomial, BigInt)>, BigInt)> {
    let mut den = BigInt::one();
    for c in p.terms.values() {
        den = den.lcm(c.as_rational()?.denom());
    }
    let nums = p
        .terms
        .iter()
        .map(|(m, c)| {
            let r = c.as_rational().expect("checked");
            (*m, r.numer() * (&den / r.denom()))
        })
        .collect();
    Some((nums, den))
}

fn mul_integral((a, da): (Vec<(Monomial, BigInt)>, BigInt), (b, db): (Vec<(Monomial, BigInt)>, BigInt)) -> Poly {
    let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
    for (ma, ca) in &a {
        for (mb, cb) in &b {
            let prod = ca * cb;
            match acc.entry(Monomial::new(ma.x + mb.x, ma.y + mb.y)) {
                Entry::Occupied(mut e) => *e.get_mut() += prod,
                Entry::Vacant(e) => {
                    e.insert(prod);
                }
            }
        }
    }
    let den = da * db;
    let terms = acc
        .into_iter()
        .filter(|(_, n)| !n.is_zero())
        .map(|(m, n)| (m, FieldElement::from_rational(BigRational::new(n, den.clone()))))
        .collect();
    Poly { terms }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

macro_rules! owned_poly_ops {
    ($trait:ident, $method:ident) => {
        impl $trait<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
    };
}

owned_poly_ops!(Add, add);
owned_poly_ops!(Sub, sub);
owned_poly_ops!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl From<FieldElement> for Poly {
    fn from(c: FieldElement) -> Self {
        Poly::constant(c)
    }
}

/// `∂p/∂x · ∂q/∂y − ∂p/∂y · ∂q/∂x`.
pub fn jacobian(p: &Poly, q: &Poly) -> Poly {
    &(&p.derivative_x() * &q.derivative_y()) - &(&p.derivative_y() * &q.derivative_x())
}

/// Univariate polynomial `Σ cₖ tᵏ`; trailing zero coefficients are trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct UniPoly {
    coeffs: Vec<FieldElement>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly::default()
    }

    pub fn new(coeffs: Vec<FieldElement>) -> Self {
        let mut u = UniPoly { coeffs };
        u.trim();
        u
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, FieldElement)>>(pairs: I) -> Self {
        let mut coeffs = Vec::new();
        for (k, c) in pairs {
            if coeffs.len() <= k {
                coeffs.resize(k + 1, FieldElement::zero());
            }
            coeffs[k] = &coeffs[k] + &c;
        }
        UniPoly::new(coeffs)
    }

    /// `c·tᵏ`.
    pub fn monomial(c: FieldElement, k: usize) -> Self {
        UniPoly::from_pairs([(k, c)])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(FieldElement::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> FieldElement {
        self.coeffs.get(k).cloned().unwrap_or_else(FieldElement::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        if self.coeffs.is_empty() {
            Degree::MinusInfinity
        } else {
            Degree::Finite(self.coeffs.len() as i64 - 1)
        }
    }

    pub fn scale(&self, c: &FieldElement) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new((0..n).map(|k| &self.coeff(k) + &other.coeff(k)).collect())
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    /// `H(a)` for a polynomial argument, by Horner's rule.
    pub fn eval_poly(&self, a: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * a) + &Poly::constant(c.clone());
        }
        acc
    }

    /// `H(y)` as a bivariate polynomial.
    pub fn in_y(&self) -> Poly {
        Poly::from_terms(self.coeffs.iter().enumerate().map(|(k, c)| (Monomial::new(0, k as u32), c.clone())))
    }

    /// `H(x)` as a bivariate polynomial.
    pub fn in_x(&self) -> Poly {
        Poly::from_terms(self.coeffs.iter().enumerate().map(|(k, c)| (Monomial::new(k as u32, 0), c.clone())))
    }

    /// Renders ascending as `c0 + c1*t + c2*t^2`.
    pub fn render(&self, var: &str) -> String {
        let mut out = String::new();
        // highest degree first, like `Poly`
        for (k, c) in self.coeffs.iter().enumerate().rev().filter(|(_, c)| !c.is_zero()) {
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            let (neg, body) = render_coeff_term(c, &mono);
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("t"))
    }
}

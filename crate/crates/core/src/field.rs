//! Exact arithmetic in towers `Q(√d₁)(√d₂)…(√dₘ)`.
//!
//! A tower is a chain of quadratic extensions of `Q`. Each generator `gₖ`
//! satisfies `gₖ² = dₖ` where the radicand `dₖ` lives in the tower built from
//! the generators before it. The imaginary unit is simply a generator with
//! radicand `-1` and is rendered as `i`.
//!
//! Elements are stored as rational coordinates over the multiplicative basis
//! `∏_{k ∈ S} gₖ` indexed by bitmasks `S`. Every element is trimmed to the
//! shortest tower prefix that contains it, so two elements of compatible
//! towers are equal exactly when their towers and coordinates agree.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Maximum number of adjoined square roots, not counting `i`.
pub const MAX_GENERATORS: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("incompatible towers: neither embeds in the other")]
    IncompatibleTowers,
    #[error("square root of zero requested")]
    ZeroRadicand,
    #[error("tower already has {MAX_GENERATORS} real generators")]
    TowerLimit,
    #[error("radicand {0} already has a square root in the tower")]
    NotSquareFree(String),
    #[error("radicand {0} is not a positive real number")]
    NotRealPositive(String),
}

/// The four field operations accepted by [`FieldElement::arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Debug)]
struct Level {
    parent: FieldTower,
    radicand: FieldElement,
    depth: usize,
}

/// A chain of quadratic extensions of `Q`. Cloning is cheap.
#[derive(Debug, Clone, Default)]
pub struct FieldTower(Option<Arc<Level>>);

impl FieldTower {
    /// The base field `Q`.
    pub fn rationals() -> Self {
        FieldTower(None)
    }

    /// `Q(i)`.
    pub fn gaussian() -> Self {
        let (t, _) = Self::rationals()
            .sqrt(&FieldElement::from_i64(-1))
            .expect("-1 is not a rational square");
        t
    }

    /// Number of generators, including `i` when present.
    pub fn depth(&self) -> usize {
        self.0.as_ref().map_or(0, |l| l.depth)
    }

    /// Degree of the tower over `Q`.
    pub fn degree(&self) -> usize {
        1 << self.depth()
    }

    /// Radicands in adjunction order.
    pub fn radicands(&self) -> Vec<FieldElement> {
        let mut out = Vec::with_capacity(self.depth());
        let mut cur = self.0.as_ref();
        while let Some(level) = cur {
            out.push(level.radicand.clone());
            cur = level.parent.0.as_ref();
        }
        out.reverse();
        out
    }

    pub fn contains_i(&self) -> bool {
        self.radicands().iter().any(FieldElement::is_minus_one)
    }

    fn real_generator_count(&self) -> usize {
        self.radicands().iter().filter(|r| !r.is_minus_one()).count()
    }

    /// The tower made of the first `depth` generators.
    pub fn prefix(&self, depth: usize) -> FieldTower {
        let mut cur = self.clone();
        while cur.depth() > depth {
            cur = cur.0.as_ref().unwrap().parent.clone();
        }
        cur
    }

    /// True when `self` is an initial segment of `other`.
    pub fn embeds_in(&self, other: &FieldTower) -> bool {
        self.depth() <= other.depth() && other.prefix(self.depth()) == *self
    }

    /// The smaller of two towers lifted into the larger one.
    pub fn join(&self, other: &FieldTower) -> Result<FieldTower, FieldError> {
        if self.embeds_in(other) {
            Ok(other.clone())
        } else if other.embeds_in(self) {
            Ok(self.clone())
        } else {
            Err(FieldError::IncompatibleTowers)
        }
    }

    /// The `k`-th generator as an element.
    pub fn generator(&self, k: usize) -> FieldElement {
        assert!(k < self.depth(), "generator index out of range");
        let tower = self.prefix(k + 1);
        let mut coords = vec![BigRational::zero(); tower.degree()];
        coords[1 << k] = BigRational::one();
        FieldElement { tower, coords }
    }

    /// Radicand coordinate slices, one per level, each of length at most `2^k`.
    fn radicand_coords(&self) -> Vec<Vec<BigRational>> {
        self.radicands().into_iter().map(|r| r.coords).collect()
    }

    /// Adjoins `√radicand`, failing if the square root already exists here.
    pub fn adjoin(&self, radicand: &FieldElement) -> Result<FieldTower, FieldError> {
        if radicand.is_zero() {
            return Err(FieldError::ZeroRadicand);
        }
        let lifted = radicand.lift(self)?;
        if sqrt_coords(&lifted, &self.radicand_coords()).is_some() {
            return Err(FieldError::NotSquareFree(radicand.to_string()));
        }
        if !radicand.is_minus_one() && self.real_generator_count() >= MAX_GENERATORS {
            return Err(FieldError::TowerLimit);
        }
        Ok(FieldTower(Some(Arc::new(Level {
            parent: self.clone(),
            radicand: radicand.clone(),
            depth: self.depth() + 1,
        }))))
    }

    /// A square root of `d`, extending the tower by one generator when `d`
    /// is not already a square. The returned root is the canonical one: the
    /// new generator, or the root whose first nonzero coordinate is positive.
    pub fn sqrt(&self, d: &FieldElement) -> Result<(FieldTower, FieldElement), FieldError> {
        if d.is_zero() {
            return Err(FieldError::ZeroRadicand);
        }
        let lifted = d.lift(self)?;
        if let Some(root) = sqrt_coords(&lifted, &self.radicand_coords()) {
            let mut z = FieldElement::from_coords(self.clone(), root);
            if z.leading_sign_negative() {
                z = -z;
            }
            return Ok((self.clone(), z));
        }
        if let Some(r) = d.as_rational() {
            // √(n/m) = (k/m)·√c with n·m = k²·c
            let (k, c) = split_square(&(r.numer() * r.denom()));
            if !k.is_one() {
                let (tower, z) = self.sqrt(&FieldElement::from_rational(BigRational::from_integer(c)))?;
                let s = FieldElement::from_rational(BigRational::new(k, r.denom().clone()));
                return Ok((tower, &z * &s));
            }
        }
        let tower = self.adjoin(d)?;
        let z = tower.generator(tower.depth() - 1);
        Ok((tower, z))
    }

    /// Like [`FieldTower::sqrt`], restricted to positive real radicands in a
    /// tower whose generators are all real.
    pub fn sqrt_real(&self, d: &FieldElement) -> Result<(FieldTower, FieldElement), FieldError> {
        match d.approx_real() {
            Some(v) if v > 0.0 => self.sqrt(d),
            _ => Err(FieldError::NotRealPositive(d.to_string())),
        }
    }
}

impl PartialEq for FieldTower {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (None, None) => true,
            (Some(a), Some(b)) => {
                Arc::ptr_eq(a, b)
                    || (a.depth == b.depth && a.radicand == b.radicand && a.parent == b.parent)
            }
            _ => false,
        }
    }
}

impl Eq for FieldTower {}

impl fmt::Display for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q")?;
        for r in self.radicands() {
            if r.is_minus_one() {
                write!(f, "(i)")?;
            } else {
                write!(f, "(sqrt({r}))")?;
            }
        }
        Ok(())
    }
}

/// An exact element of a [`FieldTower`].
#[derive(Debug, Clone)]
pub struct FieldElement {
    tower: FieldTower,
    coords: Vec<BigRational>,
}

impl FieldElement {
    pub fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_i64(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(num.into(), den.into()))
    }

    pub fn from_rational(q: BigRational) -> Self {
        FieldElement { tower: FieldTower::rationals(), coords: vec![q] }
    }

    /// Builds an element from its coordinates in `tower` (length `2^depth`).
    pub fn from_coords(tower: FieldTower, coords: Vec<BigRational>) -> Self {
        assert_eq!(coords.len(), tower.degree(), "coordinate count must match tower degree");
        let mut e = FieldElement { tower, coords };
        e.trim();
        e
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.len() == 1 && self.coords[0].is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.coords.len() == 1 && self.coords[0].is_one()
    }

    fn is_minus_one(&self) -> bool {
        self.coords.len() == 1 && self.coords[0] == -BigRational::one()
    }

    /// The value as a rational, if it lies in `Q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        (self.coords.len() == 1).then(|| &self.coords[0])
    }

    /// Coordinates lifted into `tower`, which must extend this element's tower.
    pub fn lift(&self, tower: &FieldTower) -> Result<Vec<BigRational>, FieldError> {
        if !self.tower.embeds_in(tower) {
            return Err(FieldError::IncompatibleTowers);
        }
        let mut c = self.coords.clone();
        c.resize(tower.degree(), BigRational::zero());
        Ok(c)
    }

    fn trim(&mut self) {
        while self.coords.len() > 1 {
            let half = self.coords.len() / 2;
            if self.coords[half..].iter().all(Zero::is_zero) {
                self.coords.truncate(half);
                self.tower = self.tower.prefix(self.tower.depth() - 1);
            } else {
                break;
            }
        }
    }

    fn leading_sign_negative(&self) -> bool {
        self.coords.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative())
    }

    /// Exact field operation in the join of both towers.
    pub fn arith(op: ArithOp, u: &FieldElement, v: &FieldElement) -> Result<FieldElement, FieldError> {
        // trimmed elements of length one are rationals
        if let ([a], [b]) = (u.coords.as_slice(), v.coords.as_slice()) {
            let q = match op {
                ArithOp::Add => a + b,
                ArithOp::Sub => a - b,
                ArithOp::Mul => a * b,
                ArithOp::Div if b.is_zero() => return Err(FieldError::DivisionByZero),
                ArithOp::Div => a / b,
            };
            return Ok(Self::from_rational(q));
        }
        let tower = u.tower.join(&v.tower)?;
        let coords = match op {
            ArithOp::Add => add_coords(&u.coords, &v.coords),
            ArithOp::Sub => add_coords(&u.coords, &neg_coords(&v.coords)),
            ArithOp::Mul => mul_coords(&u.coords, &v.coords, &tower.radicand_coords()),
            ArithOp::Div => {
                if v.is_zero() {
                    return Err(FieldError::DivisionByZero);
                }
                let rads = tower.radicand_coords();
                let inv = inv_coords(&v.coords, &rads);
                mul_coords(&u.coords, &inv, &rads)
            }
        };
        Ok(Self::from_padded(tower, coords))
    }

    fn from_padded(tower: FieldTower, mut coords: Vec<BigRational>) -> Self {
        coords.resize(tower.degree(), BigRational::zero());
        Self::from_coords(tower, coords)
    }

    /// `self += v`, in place when both are rational.
    pub fn add_assign_ref(&mut self, v: &FieldElement) {
        if let ([a], [b]) = (self.coords.as_mut_slice(), v.coords.as_slice()) {
            *a += b;
        } else {
            *self = &*self + v;
        }
    }

    pub fn checked_add(&self, v: &Self) -> Result<Self, FieldError> {
        Self::arith(ArithOp::Add, self, v)
    }

    pub fn checked_sub(&self, v: &Self) -> Result<Self, FieldError> {
        Self::arith(ArithOp::Sub, self, v)
    }

    pub fn checked_mul(&self, v: &Self) -> Result<Self, FieldError> {
        Self::arith(ArithOp::Mul, self, v)
    }

    pub fn checked_div(&self, v: &Self) -> Result<Self, FieldError> {
        Self::arith(ArithOp::Div, self, v)
    }

    pub fn inverse(&self) -> Result<Self, FieldError> {
        Self::one().checked_div(self)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Numerical value under the embedding where every generator is the
    /// positive real root. `None` if some radicand is not a positive real.
    pub fn approx_real(&self) -> Option<f64> {
        let mut gens = Vec::new();
        for r in self.tower.radicands() {
            let v = r.approx_real()?;
            if v <= 0.0 {
                return None;
            }
            gens.push(v.sqrt());
        }
        let mut total = 0.0;
        for (idx, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut term = rational_to_f64(c);
            for (k, g) in gens.iter().enumerate() {
                if idx & (1 << k) != 0 {
                    term *= g;
                }
            }
            total += term;
        }
        Some(total)
    }

    /// Nonzero `(basis index, coefficient)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigRational)> {
        self.coords.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    /// `Some((coefficient, basis))` when the element is a single rational
    /// multiple of one basis product (`basis` is empty for rationals).
    pub fn single_term(&self) -> Option<(BigRational, String)> {
        let mut it = self.terms();
        match (it.next(), it.next()) {
            (None, _) => Some((BigRational::zero(), String::new())),
            (Some((idx, c)), None) => Some((c.clone(), self.basis_name(idx))),
            _ => None,
        }
    }

    fn basis_name(&self, idx: usize) -> String {
        let rads = self.tower.radicands();
        let mut parts = Vec::new();
        for (k, r) in rads.iter().enumerate() {
            if idx & (1 << k) != 0 {
                if r.is_minus_one() {
                    parts.push("i".to_string());
                } else {
                    parts.push(format!("sqrt({r})"));
                }
            }
        }
        parts.join("*")
    }
}

fn rational_to_f64(q: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && self.tower == other.tower
    }
}

impl Eq for FieldElement {}

impl From<i64> for FieldElement {
    fn from(n: i64) -> Self {
        Self::from_i64(n)
    }
}

impl From<BigRational> for FieldElement {
    fn from(q: BigRational) -> Self {
        Self::from_rational(q)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("field arithmetic failed: {e}"),
                }
            }
        }
        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { tower: self.tower.clone(), coords: neg_coords(&self.coords) }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (idx, c) in self.terms() {
            let basis = self.basis_name(idx);
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            if basis.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{basis}")?;
            } else {
                write!(f, "{mag}*{basis}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

// Coordinate kernels. A slice of length 2^n is an element of level n; shorter
// slices are elements of a lower level and are lifted implicitly.

fn add_coords(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|k| match (a.get(k), b.get(k)) {
            (Some(x), Some(y)) => x + y,
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        })
        .collect()
}

fn neg_coords(a: &[BigRational]) -> Vec<BigRational> {
    a.iter().map(|c| -c).collect()
}

fn sub_coords(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    add_coords(a, &neg_coords(b))
}

fn scale_coords(a: &[BigRational], s: &BigRational) -> Vec<BigRational> {
    a.iter().map(|c| c * s).collect()
}

fn is_zero_coords(a: &[BigRational]) -> bool {
    a.iter().all(Zero::is_zero)
}

fn mul_coords(a: &[BigRational], b: &[BigRational], rads: &[Vec<BigRational>]) -> Vec<BigRational> {
    let (a, b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    if a.len() == 1 {
        return vec![&a[0] * &b[0]];
    }
    if b.len() == 1 {
        return scale_coords(a, &b[0]);
    }
    let half = a.len() / 2;
    let (alo, ahi) = a.split_at(half);
    if b.len() < a.len() {
        let mut lo = mul_coords(alo, b, rads);
        let mut hi = mul_coords(ahi, b, rads);
        lo.resize(half, BigRational::zero());
        hi.resize(half, BigRational::zero());
        lo.extend(hi);
        return lo;
    }
    let level = half.trailing_zeros() as usize;
    let (blo, bhi) = b.split_at(half);
    let hh = mul_coords(ahi, bhi, rads);
    let mut lo = add_coords(&mul_coords(alo, blo, rads), &mul_coords(&hh, &rads[level], rads));
    let mut hi = add_coords(&mul_coords(alo, bhi, rads), &mul_coords(ahi, blo, rads));
    lo.resize(half, BigRational::zero());
    hi.resize(half, BigRational::zero());
    lo.extend(hi);
    lo
}

fn inv_coords(a: &[BigRational], rads: &[Vec<BigRational>]) -> Vec<BigRational> {
    if a.len() == 1 {
        return vec![a[0].recip()];
    }
    let half = a.len() / 2;
    let (lo, hi) = a.split_at(half);
    if is_zero_coords(hi) {
        let mut r = inv_coords(lo, rads);
        r.resize(a.len(), BigRational::zero());
        return r;
    }
    let level = half.trailing_zeros() as usize;
    // (lo + hi·g)⁻¹ = (lo − hi·g) / (lo² − r·hi²)
    let norm = sub_coords(
        &mul_coords(lo, lo, rads),
        &mul_coords(&rads[level], &mul_coords(hi, hi, rads), rads),
    );
    let ninv = inv_coords(&pad(norm, half), rads);
    let mut out = pad(mul_coords(lo, &ninv, rads), half);
    out.extend(pad(neg_coords(&mul_coords(hi, &ninv, rads)), half));
    out
}

fn pad(mut v: Vec<BigRational>, len: usize) -> Vec<BigRational> {
    v.resize(len, BigRational::zero());
    v
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let sq = |n: &BigInt| -> Option<BigInt> {
        let r = n.sqrt();
        (&r * &r == *n).then_some(r)
    };
    Some(BigRational::new(sq(q.numer())?, sq(q.denom())?))
}

/// A square root of `d` (full-length coordinates of level n) inside the
/// level-n tower, if one exists. Splits `d = lo + hi·g` and solves
/// `(c + e·g)² = d` through the norm `lo² − r·hi²`.
fn sqrt_coords(d: &[BigRational], rads: &[Vec<BigRational>]) -> Option<Vec<BigRational>> {
    if d.len() == 1 {
        return rational_sqrt(&d[0]).map(|r| vec![r]);
    }
    let half = d.len() / 2;
    let level = half.trailing_zeros() as usize;
    let r = pad(rads[level].clone(), half);
    let (lo, hi) = d.split_at(half);
    if is_zero_coords(hi) {
        if let Some(z) = sqrt_coords(lo, rads) {
            return Some(pad(z, d.len()));
        }
        let w = pad(mul_coords(lo, &inv_coords(&r, rads), rads), half);
        let c = sqrt_coords(&w, rads)?;
        let mut out = vec![BigRational::zero(); half];
        out.extend(pad(c, half));
        return Some(out);
    }
    let norm = pad(
        sub_coords(&mul_coords(lo, lo, rads), &mul_coords(&r, &mul_coords(hi, hi, rads), rads)),
        half,
    );
    let s = sqrt_coords(&norm, rads)?;
    let two = BigRational::from_integer(BigInt::from(2));
    for sign in [1, -1] {
        let signed = if sign == 1 { s.clone() } else { neg_coords(&s) };
        let c2 = pad(scale_coords(&add_coords(lo, &signed), &two.recip()), half);
        if is_zero_coords(&c2) {
            continue;
        }
        if let Some(c) = sqrt_coords(&c2, rads) {
            let c = pad(c, half);
            let two_c_inv = inv_coords(&scale_coords(&c, &two), rads);
            let e = pad(mul_coords(hi, &two_c_inv, rads), half);
            let mut out = c;
            out.extend(e);
            return Some(out);
        }
    }
    None
}

/// `n = k²·c` with `k > 0`, pulling out square factors of primes below
/// 10⁴ (all of them when `|n| < 10⁸`).
fn split_square(n: &BigInt) -> (BigInt, BigInt) {
    let mut k = BigInt::one();
    let mut c = n.clone();
    let mut p = BigInt::from(2);
    let limit = BigInt::from(10_000);
    while p < limit && &p * &p <= c.abs() {
        let p2 = &p * &p;
        while (&c % &p2).is_zero() {
            c /= &p2;
            k *= &p;
        }
        p += 1;
    }
    (k, c)
}

//! Tame decomposition certificates.
//!
//! Every automorphism of the plane factors into affine maps and elementary
//! (triangular) maps. [`decompose`] finds such a factorization by degree
//! reduction: while the larger image has degree above one, its leading form
//! must be a constant times a power of the other image's leading form, and
//! subtracting that power lowers the degree.
//!
//! A certificate lists factors `φ₁, …, φₙ` with `subject = φ₁ ∘ φ₂ ∘ … ∘ φₙ`
//! under the ring-map composition of [`Endo::compose`].

use std::fmt;

use crate::endo::Endo;
use crate::field::FieldElement;
use crate::poly::{Poly, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TameError {
    #[error("map is not Keller: Jacobian {0} is not a nonzero constant")]
    NotKeller(Poly),
    /// A Keller map whose degree reduction got stuck. In dimension two this
    /// would be a counterexample to the Jacobian conjecture.
    #[error("degree reduction stuck at ({p}, {q}); Keller map is a Jacobian conjecture counterexample candidate")]
    NotReducible { p: Poly, q: Poly },
    #[error("intermediate degree {degree} exceeds bound {bound}")]
    ResourceLimit { degree: u32, bound: u32 },
    #[error("certificate does not recompose to its subject")]
    CorruptCertificate,
}

/// One generator of the tame group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Factor {
    /// `x ↦ m₀₀x + m₀₁y + t₀`, `y ↦ m₁₀x + m₁₁y + t₁`.
    Affine { matrix: [[FieldElement; 2]; 2], translation: [FieldElement; 2] },
    /// `x ↦ scale·x + h(y)`, `y ↦ y`.
    ElementaryX { h: UniPoly, scale: FieldElement },
    /// `x ↦ x`, `y ↦ scale·y + h(x)`.
    ElementaryY { h: UniPoly, scale: FieldElement },
}

impl Factor {
    pub fn identity() -> Self {
        Factor::Affine {
            matrix: [
                [FieldElement::one(), FieldElement::zero()],
                [FieldElement::zero(), FieldElement::one()],
            ],
            translation: [FieldElement::zero(), FieldElement::zero()],
        }
    }

    pub fn exchange() -> Self {
        Factor::Affine {
            matrix: [
                [FieldElement::zero(), FieldElement::one()],
                [FieldElement::one(), FieldElement::zero()],
            ],
            translation: [FieldElement::zero(), FieldElement::zero()],
        }
    }

    /// Reads an affine factor off an endomorphism of degree at most one.
    pub fn affine_from_endo(f: &Endo) -> Option<Factor> {
        if f.p.deg() > 1 || f.q.deg() > 1 {
            return None;
        }
        let factor = Factor::Affine {
            matrix: [[f.p.coeff(1, 0), f.p.coeff(0, 1)], [f.q.coeff(1, 0), f.q.coeff(0, 1)]],
            translation: [f.p.constant_term(), f.q.constant_term()],
        };
        factor.is_valid().then_some(factor)
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Factor::Affine { .. } => "affine",
            Factor::ElementaryX { .. } => "elementary_x",
            Factor::ElementaryY { .. } => "elementary_y",
        }
    }

    /// Constant Jacobian of the factor.
    pub fn jacobian(&self) -> FieldElement {
        match self {
            Factor::Affine { matrix: m, .. } => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
            Factor::ElementaryX { scale, .. } | Factor::ElementaryY { scale, .. } => scale.clone(),
        }
    }

    pub fn is_valid(&self) -> bool {
        !self.jacobian().is_zero()
    }

    pub fn is_identity(&self) -> bool {
        self.to_endo().is_identity()
    }

    pub fn to_endo(&self) -> Endo {
        match self {
            Factor::Affine { matrix: m, translation: t } => Endo::new(
                linear(&m[0][0], &m[0][1], &t[0]),
                linear(&m[1][0], &m[1][1], &t[1]),
            ),
            Factor::ElementaryX { h, scale } => Endo::new(&Poly::x().scale(scale) + &h.in_y(), Poly::y()),
            Factor::ElementaryY { h, scale } => Endo::new(Poly::x(), &Poly::y().scale(scale) + &h.in_x()),
        }
    }

    pub fn inverse(&self) -> Factor {
        match self {
            Factor::Affine { matrix: m, translation: t } => {
                let det_inv = self.jacobian().inverse().expect("valid factor has nonzero determinant");
                let n = [
                    [&m[1][1] * &det_inv, -(&m[0][1] * &det_inv)],
                    [-(&m[1][0] * &det_inv), &m[0][0] * &det_inv],
                ];
                let s = [
                    -(&(&n[0][0] * &t[0]) + &(&n[0][1] * &t[1])),
                    -(&(&n[1][0] * &t[0]) + &(&n[1][1] * &t[1])),
                ];
                Factor::Affine { matrix: n, translation: s }
            }
            Factor::ElementaryX { h, scale } => {
                let inv = scale.inverse().expect("valid factor has nonzero scale");
                Factor::ElementaryX { h: h.scale(&-&inv), scale: inv }
            }
            Factor::ElementaryY { h, scale } => {
                let inv = scale.inverse().expect("valid factor has nonzero scale");
                Factor::ElementaryY { h: h.scale(&-&inv), scale: inv }
            }
        }
    }

    /// `acc ∘ self`. Only `acc`'s images are substituted into this factor's
    /// low-degree images, so folding a certificate this way stays cheap.
    pub fn compose_after(&self, acc: &Endo) -> Endo {
        match self {
            Factor::Affine { matrix: m, translation: t } => {
                let img = |a: &FieldElement, b: &FieldElement, c: &FieldElement| {
                    &(&acc.p.scale(a) + &acc.q.scale(b)) + &Poly::constant(c.clone())
                };
                Endo::new(img(&m[0][0], &m[0][1], &t[0]), img(&m[1][0], &m[1][1], &t[1]))
            }
            Factor::ElementaryX { h, scale } => {
                Endo::new(&acc.p.scale(scale) + &h.eval_poly(&acc.q), acc.q.clone())
            }
            Factor::ElementaryY { h, scale } => {
                Endo::new(acc.p.clone(), &acc.q.scale(scale) + &h.eval_poly(&acc.p))
            }
        }
    }
}

fn linear(a: &FieldElement, b: &FieldElement, c: &FieldElement) -> Poly {
    &(&Poly::x().scale(a) + &Poly::y().scale(b)) + &Poly::constant(c.clone())
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.kind(), self.to_endo())
    }
}

/// `base ∘ φ₁ ∘ … ∘ φₙ`.
pub fn compose_factors(base: &Endo, factors: &[Factor]) -> Endo {
    factors.iter().fold(base.clone(), |acc, phi| phi.compose_after(&acc))
}

/// Ordered factorization of `subject`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TameCertificate {
    pub factors: Vec<Factor>,
    pub subject: Endo,
}

impl TameCertificate {
    /// Certificate whose subject is the recomposition of `factors`.
    pub fn from_factors(factors: Vec<Factor>) -> Self {
        let subject = compose_factors(&Endo::identity(), &factors);
        TameCertificate { factors, subject }
    }

    pub fn recompose(&self) -> Endo {
        compose_factors(&Endo::identity(), &self.factors)
    }

    /// Factors of the inverse: reversed, each inverted.
    pub fn inverse_factors(&self) -> Vec<Factor> {
        self.factors.iter().rev().map(Factor::inverse).collect()
    }

    pub fn inverse_certificate(&self) -> TameCertificate {
        TameCertificate::from_factors(self.inverse_factors())
    }

    /// Product of the factor Jacobians.
    pub fn jacobian(&self) -> FieldElement {
        self.factors.iter().fold(FieldElement::one(), |acc, f| &acc * &f.jacobian())
    }
}

/// True iff every factor is invertible and the product equals the subject.
pub fn verify(c: &TameCertificate) -> bool {
    c.factors.iter().all(Factor::is_valid) && c.recompose() == c.subject
}

/// Inverse of the certified map; both `h∘f` and `f∘h` are checked against
/// the identity.
pub fn invert(c: &TameCertificate) -> Result<Endo, TameError> {
    if !verify(c) {
        return Err(TameError::CorruptCertificate);
    }
    let inv_factors = c.inverse_factors();
    let h = compose_factors(&Endo::identity(), &inv_factors);
    let left = compose_factors(&h, &c.factors);
    let right = compose_factors(&c.subject, &inv_factors);
    if !left.is_identity() || !right.is_identity() {
        return Err(TameError::CorruptCertificate);
    }
    Ok(h)
}

/// Which image a reduction step lowers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    P,
    Q,
}

/// Decomposes a Keller map into affine and elementary factors.
pub fn decompose(f: &Endo) -> Result<TameCertificate, TameError> {
    let jac = f.jacobian();
    if jac.as_constant().is_none_or(|c| c.is_zero()) {
        return Err(TameError::NotKeller(jac));
    }
    let bound = 10 * f.degree().max(1);
    let (mut p, mut q) = (f.p.clone(), f.q.clone());
    // reductions e₁, e₂, … with F_k = F_{k-1} ∘ e_k; merged when consecutive
    // steps lower the same side
    let mut reductions: Vec<(Side, UniPoly)> = Vec::new();
    let mut cache: Option<(Side, Vec<Poly>)> = None;

    while p.deg().max(q.deg()) > 1 {
        let side = if p.deg() >= q.deg() { Side::P } else { Side::Q };
        let (u, v) = match side {
            Side::P => (&p, &q),
            Side::Q => (&q, &p),
        };
        let (du, dv) = (u.deg(), v.deg());
        if v.is_zero() || dv == 0 || du % dv != 0 {
            return Err(TameError::NotReducible { p: p.clone(), q: q.clone() });
        }
        let m = du / dv;
        let powers = match &mut cache {
            Some((s, pows)) if *s == side && pows.get(1) == Some(v) => pows,
            _ => &mut cache.insert((side, vec![Poly::one(), v.clone()])).1,
        };
        while powers.len() <= m as usize {
            let next = &powers[powers.len() - 1] * v;
            powers.push(next);
        }
        let vm = &powers[m as usize];
        let lu = u.leading_form(crate::poly::Weight::TOTAL);
        let lvm = vm.leading_form(crate::poly::Weight::TOTAL);
        let ratio = lu.leading_coeff().unwrap() / lvm.leading_coeff().unwrap();
        if lu != lvm.scale(&ratio) {
            return Err(TameError::NotReducible { p: p.clone(), q: q.clone() });
        }
        let reduced = u - &vm.scale(&ratio);
        if reduced.deg() > bound {
            return Err(TameError::ResourceLimit { degree: reduced.deg(), bound });
        }
        let step = UniPoly::monomial(-&ratio, m as usize);
        match reductions.last_mut() {
            Some((s, h)) if *s == side => *h = h.add(&step),
            _ => reductions.push((side, step)),
        }
        match side {
            Side::P => p = reduced,
            Side::Q => q = reduced,
        }
    }

    let affine = Factor::affine_from_endo(&Endo::new(p.clone(), q.clone()))
        .ok_or_else(|| TameError::NotReducible { p: p.clone(), q: q.clone() })?;
    let mut factors = Vec::with_capacity(reductions.len() + 1);
    if !affine.is_identity() || reductions.is_empty() {
        factors.push(affine);
    }
    for (side, h) in reductions.into_iter().rev() {
        // inverse of x ↦ x + h(y) is x ↦ x − h(y)
        factors.push(match side {
            Side::P => Factor::ElementaryX { h: h.neg(), scale: FieldElement::one() },
            Side::Q => Factor::ElementaryY { h: h.neg(), scale: FieldElement::one() },
        });
    }
    let cert = TameCertificate { factors, subject: f.clone() };
    if !verify(&cert) {
        return Err(TameError::CorruptCertificate);
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> FieldElement {
        FieldElement::from_i64(n)
    }

    fn q(n: i64, d: i64) -> FieldElement {
        FieldElement::from_ratio(n, d)
    }

    fn x() -> Poly {
        Poly::x()
    }

    fn y() -> Poly {
        Poly::y()
    }

    #[test]
    fn exchange_is_one_affine_factor() {
        let cert = decompose(&Endo::exchange()).unwrap();
        assert_eq!(cert.factors, vec![Factor::exchange()]);
        assert!(verify(&cert));
    }

    #[test]
    fn cubic_shear_is_one_elementary_factor() {
        let f = Endo::new(&x() + &y().pow(3), y());
        let cert = decompose(&f).unwrap();
        assert_eq!(cert.factors.len(), 1);
        assert_eq!(
            cert.factors[0],
            Factor::ElementaryX { h: UniPoly::monomial(c(1), 3), scale: c(1) }
        );
        assert_eq!(invert(&cert).unwrap(), Endo::new(&x() - &y().pow(3), y()));
    }

    #[test]
    fn diagonal_inverse() {
        let f = Endo::new(x().scale(&c(2)), y().scale(&c(3)));
        let cert = decompose(&f).unwrap();
        assert_eq!(invert(&cert).unwrap(), Endo::new(x().scale(&q(1, 2)), y().scale(&q(1, 3))));
    }

    #[test]
    fn non_keller_is_rejected() {
        let f = Endo::new(x().pow(2), y());
        assert!(matches!(decompose(&f), Err(TameError::NotKeller(_))));
    }

    #[test]
    fn deleted_factor_breaks_verification() {
        let factors = vec![
            Factor::ElementaryX { h: UniPoly::monomial(c(2), 2), scale: c(1) },
            Factor::exchange(),
            Factor::ElementaryY { h: UniPoly::monomial(c(-1), 3), scale: c(5) },
        ];
        let mut cert = TameCertificate::from_factors(factors);
        assert!(verify(&cert));
        cert.factors.remove(1);
        assert!(!verify(&cert));
        assert_eq!(invert(&cert), Err(TameError::CorruptCertificate));
    }

    #[test]
    fn hand_built_triangular_certificate() {
        // (x + e, a y + H(x)) = (x, a y + H(x)) ∘ (x + e, y)
        let e = c(4);
        let a = c(-3);
        let hx = UniPoly::new(vec![c(1), c(0), c(2)]);
        let subject = Endo::new(&x() + &Poly::constant(e.clone()), &y().scale(&a) + &hx.in_x());
        let translate = Factor::Affine {
            matrix: [[c(1), c(0)], [c(0), c(1)]],
            translation: [e, c(0)],
        };
        let tri = Factor::ElementaryY { h: hx, scale: a };
        let cert = TameCertificate { factors: vec![tri, translate], subject };
        assert!(verify(&cert));
        assert!(invert(&cert).is_ok());
    }

    #[test]
    fn keller_quadratic_pair() {
        let f = Endo::new(&x() + &y().pow(2), &(&x() + &y()) + &y().pow(2));
        let cert = decompose(&f).unwrap();
        let h = invert(&cert).unwrap();
        assert_eq!(h.p, &x() - &(&y() - &x()).pow(2));
        assert_eq!(h.q, &y() - &x());
    }

    #[test]
    fn factor_inverses_compose_to_identity() {
        let factors = [
            Factor::Affine { matrix: [[c(1), c(2)], [c(3), c(4)]], translation: [c(5), q(-1, 2)] },
            Factor::ElementaryX { h: UniPoly::new(vec![c(1), c(-1), c(3)]), scale: q(2, 7) },
            Factor::ElementaryY { h: UniPoly::new(vec![c(0), c(0), c(0), c(1)]), scale: c(-1) },
        ];
        for f in &factors {
            let e = f.to_endo();
            let inv = f.inverse().to_endo();
            assert!(Endo::compose(&e, &inv).is_identity(), "{f}");
            assert!(Endo::compose(&inv, &e).is_identity(), "{f}");
            assert_eq!(f.compose_after(&e), Endo::compose(&e, &e));
        }
    }
}

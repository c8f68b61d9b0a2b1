//! Ring endomorphisms of `k[x,y]`, given by the images of `x` and `y`.
//!
//! Composition follows the convention `(g f)(x) = g(f(x))`: `compose(g, f)`
//! substitutes the images of `g` into the image polynomials of `f`.

use std::fmt;

use crate::field::FieldElement;
use crate::poly::{jacobian, Poly};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Endo {
    pub p: Poly,
    pub q: Poly,
}

impl Endo {
    pub fn new(p: Poly, q: Poly) -> Self {
        Endo { p, q }
    }

    pub fn identity() -> Self {
        Endo { p: Poly::x(), q: Poly::y() }
    }

    /// The exchange `x ↔ y`.
    pub fn exchange() -> Self {
        Endo { p: Poly::y(), q: Poly::x() }
    }

    pub fn is_identity(&self) -> bool {
        self.p == Poly::x() && self.q == Poly::y()
    }

    /// Image of `r`: substitutes `x ↦ p`, `y ↦ q`.
    pub fn apply(&self, r: &Poly) -> Poly {
        r.substitute(&self.p, &self.q)
    }

    /// `g ∘ f`, i.e. `(g f)(x) = g(f(x))`.
    pub fn compose(g: &Endo, f: &Endo) -> Endo {
        Endo { p: g.apply(&f.p), q: g.apply(&f.q) }
    }

    /// Images with `x` and `y` exchanged: `self ∘ α`.
    pub fn swapped(&self) -> Endo {
        Endo { p: self.q.clone(), q: self.p.clone() }
    }

    pub fn jacobian(&self) -> Poly {
        jacobian(&self.p, &self.q)
    }

    /// The Jacobian determinant, when it is a nonzero constant.
    pub fn jacobian_constant(&self) -> Option<FieldElement> {
        self.jacobian().as_constant().filter(|c| !c.is_zero())
    }

    pub fn is_keller(&self) -> bool {
        self.jacobian_constant().is_some()
    }

    pub fn degree(&self) -> u32 {
        self.p.deg().max(self.q.deg())
    }

    /// Least `n ≤ max` with `selfⁿ = id`.
    pub fn order(&self, max: u32) -> Option<u32> {
        assert!(max >= 1, "order bound must be positive");
        let mut acc = self.clone();
        for n in 1..=max {
            if acc.is_identity() {
                return Some(n);
            }
            if n < max {
                acc = Endo::compose(self, &acc);
            }
        }
        None
    }

    pub fn is_involution(&self) -> bool {
        !self.is_identity() && Endo::compose(self, self).is_identity()
    }
}

impl fmt::Display for Endo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x -> {}; y -> {}", self.p, self.q)
    }
}

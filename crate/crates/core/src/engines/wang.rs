use crate::endo::Endo;
use crate::field::FieldElement;
use crate::poly::{jacobian, Poly, Weight};

use super::{degree1_reduce, require_keller, Degree1Reduction, EngineError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WangBranch {
    /// Both images already had degree at most one.
    Affine,
    /// `q` had degree one (`μ = 0`).
    MuZero,
    /// `p` had degree one (`λ = 0`).
    LambdaZero,
    /// Both quadratic: the shear `x − (λ/μ) y` cancels the top forms.
    Shear,
}

/// Inversion of a Keller map whose images both have degree at most two.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WangReduction {
    pub branch: WangBranch,
    pub lambda: FieldElement,
    pub mu: FieldElement,
    /// Monic common factor of the quadratic forms: `p₂ = λ·R̃`.
    pub r_tilde: Poly,
    /// `R` with `R̃ = R²`, when the quadratic form is a perfect square.
    pub r: Option<Poly>,
    /// `g` with `f∘g` having a first image of degree one.
    pub shear: Endo,
    pub degree1: Degree1Reduction,
    pub inverse: Endo,
}

pub fn wang_special(f: &Endo) -> Result<WangReduction, EngineError> {
    require_keller(f)?;
    let (dp, dq) = (f.p.deg(), f.q.deg());
    if dp > 2 || dq > 2 {
        return Err(EngineError::DegreeTooHigh(dp.max(dq)));
    }
    let p2 = f.p.homogeneous_part(Weight::TOTAL, 2);
    let q2 = f.q.homogeneous_part(Weight::TOTAL, 2);
    if !jacobian(&p2, &q2).is_zero() {
        return Err(EngineError::Internal("leading forms do not Jacobian-commute".into()));
    }
    let lead = |r: &Poly| r.leading_coeff().cloned().unwrap_or_else(FieldElement::zero);
    let (lambda, mu) = (lead(&p2), lead(&q2));
    let top = if p2.is_zero() { &q2 } else { &p2 };
    let (r_tilde, r) = if top.is_zero() {
        (Poly::zero(), None)
    } else {
        let monic = top.scale(&lead(top).inverse()?);
        let r = square_root_linear(&monic);
        (monic, r)
    };

    let (branch, shear, inner) = if dp <= 1 && dq <= 1 {
        (WangBranch::Affine, Endo::identity(), degree1_reduce(f)?)
    } else if dq <= 1 {
        (WangBranch::MuZero, Endo::identity(), degree1_reduce(f)?)
    } else if dp <= 1 {
        (WangBranch::LambdaZero, Endo::identity(), degree1_reduce(f)?)
    } else {
        if q2.scale(&lambda) != p2.scale(&mu) {
            return Err(EngineError::Internal("quadratic forms are not proportional".into()));
        }
        let ratio = &lambda / &mu;
        let g = Endo::new(&Poly::x() - &Poly::y().scale(&ratio), Poly::y());
        // f∘g = (p − (λ/μ) q, q)
        let fg = Endo::compose(f, &g);
        (WangBranch::Shear, g, degree1_reduce(&fg)?)
    };
    // f = (f∘g)∘g⁻¹, so f⁻¹ = g∘(f∘g)⁻¹
    let inverse = Endo::compose(&shear, &inner.inverse);
    if !Endo::compose(f, &inverse).is_identity() || !Endo::compose(&inverse, f).is_identity() {
        return Err(EngineError::Internal("quadratic inverse does not compose to the identity".into()));
    }
    Ok(WangReduction { branch, lambda, mu, r_tilde, r, shear, degree1: inner, inverse })
}

/// `R` linear with `R² = monic`, if the discriminant vanishes.
fn square_root_linear(monic: &Poly) -> Option<Poly> {
    let (a, b, c) = (monic.coeff(2, 0), monic.coeff(1, 1), monic.coeff(0, 2));
    let disc = &(&b * &b) - &(&(&a * &c) * &FieldElement::from_i64(4));
    if !disc.is_zero() {
        return None;
    }
    // monic in graded lex: a = 1, or a = b = 0 and c = 1
    let r = if a.is_zero() {
        Poly::y()
    } else {
        &Poly::x() + &Poly::y().scale(&(&b / &FieldElement::from_i64(2)))
    };
    (r.pow(2) == *monic).then_some(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> FieldElement {
        FieldElement::from_i64(n)
    }

    fn x() -> Poly {
        Poly::x()
    }

    fn y() -> Poly {
        Poly::y()
    }

    #[test]
    fn quadratic_pair() {
        let f = Endo::new(&x() + &y().pow(2), &(&x() + &y()) + &y().pow(2));
        let w = wang_special(&f).unwrap();
        assert_eq!(w.branch, WangBranch::Shear);
        assert_eq!((w.lambda.clone(), w.mu.clone()), (c(1), c(1)));
        assert_eq!(w.r, Some(y()));
        assert_eq!(w.inverse, Endo::new(&x() - &(&y() - &x()).pow(2), &y() - &x()));
    }

    #[test]
    fn affine_passthrough() {
        let f = Endo::new(&x() + &y().scale(&c(2)), &y() - &Poly::one());
        let w = wang_special(&f).unwrap();
        assert_eq!(w.branch, WangBranch::Affine);
        assert!(Endo::compose(&f, &w.inverse).is_identity());
    }

    #[test]
    fn mu_zero_branch() {
        let f = Endo::new(&x() + &y().pow(2), &y() + &Poly::constant(c(3)));
        let w = wang_special(&f).unwrap();
        assert_eq!(w.branch, WangBranch::MuZero);
        assert!(w.mu.is_zero());
        assert!(Endo::compose(&w.inverse, &f).is_identity());
    }

    #[test]
    fn cubic_is_too_high() {
        let f = Endo::new(&x() + &y().pow(3), y());
        assert_eq!(wang_special(&f), Err(EngineError::DegreeTooHigh(3)));
    }
}

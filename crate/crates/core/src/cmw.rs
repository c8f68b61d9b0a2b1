//! Membership in `k[A]` for polynomials that Jacobian-commute with `A`, and
//! the α-restriction check built on it.
//!
//! If `A` has a Jacobian mate and `Jac(A, R) = 0`, then `R = H(A)` for a
//! univariate `H`. The recursion below finds `H` by matching leading terms:
//! `R`'s leading monomial must be that of `A^t`, and subtracting
//! `c·A^t` strictly lowers it.

use std::fmt;

use crate::endo::Endo;
use crate::involution::Builtin;
use crate::poly::{jacobian, Poly, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CmwError {
    #[error("Jac(A, R) is not zero")]
    NonzeroJacobian,
    #[error("A is constant")]
    ConstantA,
    #[error("R is not a polynomial in A (stuck at {0})")]
    NotInSubalgebra(Poly),
    #[error("map is not Keller: Jacobian {0}")]
    NotKeller(Poly),
    #[error("p is not {0} under alpha")]
    PreconditionSymmetry(RestrictionMode),
    #[error("Jac(p, q {0} alpha(q)) is not zero")]
    JacobianNotZero(&'static str),
    #[error("formal expression does not evaluate to alpha of the image")]
    EvaluationMismatch,
}

/// `H` with `H(A) = R`.
pub fn express_in(a: &Poly, r: &Poly) -> Result<UniPoly, CmwError> {
    if a.is_constant() {
        return Err(CmwError::ConstantA);
    }
    if !jacobian(a, r).is_zero() {
        return Err(CmwError::NonzeroJacobian);
    }
    let (lm_a, lc_a) = a.leading_term().expect("non-constant");
    let lc_a = lc_a.clone();
    let da = a.deg();
    let mut powers = vec![Poly::one()];
    let mut rest = r.clone();
    let mut h = Vec::new();
    while let Some((lm_r, lc_r)) = rest.leading_term() {
        let dr = lm_r.degree();
        if dr % da != 0 {
            return Err(CmwError::NotInSubalgebra(rest));
        }
        let t = (dr / da) as usize;
        // leading monomials multiply under a monomial order
        if lm_r.x != lm_a.x * t as u32 || lm_r.y != lm_a.y * t as u32 {
            return Err(CmwError::NotInSubalgebra(rest));
        }
        while powers.len() <= t {
            let next = &powers[powers.len() - 1] * a;
            powers.push(next);
        }
        let c = lc_r / &lc_a.pow(t as u32);
        rest = &rest - &powers[t].scale(&c);
        h.push((t, c));
    }
    Ok(UniPoly::from_pairs(h))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RestrictionMode {
    SymmetricP,
    SkewP,
}

impl fmt::Display for RestrictionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RestrictionMode::SymmetricP => "symmetric",
            RestrictionMode::SkewP => "skew",
        })
    }
}

/// A polynomial in the formal symbols `P`, `Q`, stored with `x ↦ P`, `y ↦ Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubalgebraExpr(pub Poly);

impl SubalgebraExpr {
    pub fn eval(&self, p: &Poly, q: &Poly) -> Poly {
        self.0.substitute(p, q)
    }
}

impl fmt::Display for SubalgebraExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.render_with("P", "Q"))
    }
}

/// α restricted to `k[p, q]`, written in the generators `P = p`, `Q = q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaRestriction {
    pub mode: RestrictionMode,
    pub alpha_p: SubalgebraExpr,
    pub alpha_q: SubalgebraExpr,
    pub h: UniPoly,
    /// Jacobian of `(alpha_p, alpha_q)` in the symbols `P, Q`; always −1.
    pub formal_jacobian: Poly,
}

/// Shows that α maps `k[p, q]` into itself when `p` is α-symmetric or
/// α-skew: then `q ± α(q)` Jacobian-commutes with `p`, hence equals `H(p)`.
pub fn alpha_restriction_check(f: &Endo, mode: RestrictionMode) -> Result<AlphaRestriction, CmwError> {
    let jac = f.jacobian();
    if jac.as_constant().is_none_or(|c| c.is_zero()) {
        return Err(CmwError::NotKeller(jac));
    }
    let alpha = Builtin::Alpha.endo();
    let ap = alpha.apply(&f.p);
    let aq = alpha.apply(&f.q);
    let (big_p, big_q) = (Poly::x(), Poly::y());
    let (alpha_p, alpha_q, h) = match mode {
        RestrictionMode::SymmetricP => {
            if ap != f.p {
                return Err(CmwError::PreconditionSymmetry(mode));
            }
            let r = &f.q + &aq;
            let h = express_in(&f.p, &r).map_err(|e| match e {
                CmwError::NonzeroJacobian => CmwError::JacobianNotZero("+"),
                other => other,
            })?;
            // α(q) = −Q + H(P)
            (big_p.clone(), &(-&big_q) + &h.in_x(), h)
        }
        RestrictionMode::SkewP => {
            if ap != -&f.p {
                return Err(CmwError::PreconditionSymmetry(mode));
            }
            let r = &f.q - &aq;
            let h = express_in(&f.p, &r).map_err(|e| match e {
                CmwError::NonzeroJacobian => CmwError::JacobianNotZero("-"),
                other => other,
            })?;
            // α(q) = Q − H(P)
            (-&big_p, &big_q - &h.in_x(), h)
        }
    };
    let alpha_p = SubalgebraExpr(alpha_p);
    let alpha_q = SubalgebraExpr(alpha_q);
    if alpha_p.eval(&f.p, &f.q) != ap || alpha_q.eval(&f.p, &f.q) != aq {
        return Err(CmwError::EvaluationMismatch);
    }
    let formal_jacobian = jacobian(&alpha_p.0, &alpha_q.0);
    Ok(AlphaRestriction { mode, alpha_p, alpha_q, h, formal_jacobian })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldElement;

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
    fn identity_substitution() {
        let r = &x().pow(3) + &x().scale(&c(2));
        assert_eq!(express_in(&x(), &r).unwrap(), UniPoly::new(vec![c(0), c(2), c(0), c(1)]));
    }

    #[test]
    fn cubic_shear_square() {
        let a = &x() + &y().pow(3);
        let r = &a.pow(2) + &Poly::constant(c(5));
        assert_eq!(express_in(&a, &r).unwrap(), UniPoly::new(vec![c(5), c(0), c(1)]));
    }

    #[test]
    fn translated_linear_form() {
        // Q_j = (x + e)^2 − 3(x + e) expanded
        let a = &x() + &Poly::constant(c(4));
        let r = &a.pow(2) - &a.scale(&c(3));
        assert_eq!(express_in(&a, &r).unwrap(), UniPoly::new(vec![c(0), c(-3), c(1)]));
    }

    #[test]
    fn failures() {
        assert_eq!(express_in(&Poly::constant(c(2)), &x()), Err(CmwError::ConstantA));
        assert_eq!(express_in(&x(), &y()), Err(CmwError::NonzeroJacobian));
        // Jac(x², x³) = 0 but x³ is not in k[x²]
        assert!(matches!(express_in(&x().pow(2), &x().pow(3)), Err(CmwError::NotInSubalgebra(_))));
    }

    #[test]
    fn symmetric_restriction() {
        let f = Endo::new(&x() + &y(), y());
        let res = alpha_restriction_check(&f, RestrictionMode::SymmetricP).unwrap();
        assert_eq!(res.h, UniPoly::monomial(c(1), 1));
        assert_eq!(res.alpha_q.to_string(), "P - Q");
        assert_eq!(res.formal_jacobian, Poly::constant(c(-1)));
    }

    #[test]
    fn skew_restriction() {
        let f = Endo::new(&x() - &y(), -&y());
        let res = alpha_restriction_check(&f, RestrictionMode::SkewP).unwrap();
        assert_eq!(res.h, UniPoly::monomial(c(1), 1));
        assert_eq!(res.alpha_q.to_string(), "-P + Q");
        assert_eq!(res.alpha_p.to_string(), "-P");
        assert_eq!(res.formal_jacobian, Poly::constant(c(-1)));
    }

    #[test]
    fn refuses_asymmetric_p() {
        let f = Endo::new(&x() + &y().pow(2), y());
        assert_eq!(
            alpha_restriction_check(&f, RestrictionMode::SymmetricP),
            Err(CmwError::PreconditionSymmetry(RestrictionMode::SymmetricP))
        );
        let g = Endo::new(x().pow(2), y());
        assert!(matches!(alpha_restriction_check(&g, RestrictionMode::SymmetricP), Err(CmwError::NotKeller(_))));
    }
}

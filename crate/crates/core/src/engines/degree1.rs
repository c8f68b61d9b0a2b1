use crate::endo::Endo;
use crate::field::FieldElement;
use crate::poly::{Poly, UniPoly};

use super::{require_keller, EngineError};

/// Inversion of a Keller map with an image of degree one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Degree1Reduction {
    /// True when the images were exchanged first because only `q` had degree one.
    pub swapped: bool,
    /// Affine `g` with `(g f)(x) = x + e`.
    pub normalizer: Endo,
    /// `g f = (x + e, a·y + H(x))`.
    pub reduced: Endo,
    pub e: FieldElement,
    pub a: FieldElement,
    pub h: UniPoly,
    pub inverse: Endo,
}

pub fn degree1_reduce(f: &Endo) -> Result<Degree1Reduction, EngineError> {
    require_keller(f)?;
    if f.p.deg() == 1 {
        reduce_p(f, false)
    } else if f.q.deg() == 1 {
        // f∘α has images (q, p); f⁻¹ = α∘(f∘α)⁻¹
        let mut out = reduce_p(&f.swapped(), true)?;
        out.inverse = Endo::new(out.inverse.p.swap_variables(), out.inverse.q.swap_variables());
        check_inverse(f, &out.inverse)?;
        Ok(out)
    } else {
        Err(EngineError::DegreeMismatch)
    }
}

fn reduce_p(f: &Endo, swapped: bool) -> Result<Degree1Reduction, EngineError> {
    let (x, y) = (Poly::x(), Poly::y());
    let a = f.p.coeff(1, 0);
    let b = f.p.coeff(0, 1);
    let e = f.p.constant_term();
    let g = match (a.is_zero(), b.is_zero()) {
        (false, false) => Endo::new((&x - &y).scale(&a.inverse()?), y.scale(&b.inverse()?)),
        (false, true) => Endo::new(x.scale(&a.inverse()?), y),
        (true, false) => Endo::new(y, x.scale(&b.inverse()?)),
        (true, true) => return Err(EngineError::DegreeMismatch),
    };
    let reduced = Endo::compose(&g, f);
    let shifted = &Poly::x() + &Poly::constant(e.clone());
    if reduced.p != shifted {
        return Err(EngineError::Internal(format!("normalized image is {}", reduced.p)));
    }
    // the Jacobian of (x + e, Q) is ∂Q/∂y, a nonzero constant
    let scale = reduced
        .q
        .derivative_y()
        .as_constant()
        .filter(|c| !c.is_zero())
        .ok_or_else(|| EngineError::Internal("second image is not linear in y".into()))?;
    let h = (&reduced.q - &Poly::y().scale(&scale))
        .as_univariate_in_x()
        .ok_or_else(|| EngineError::Internal("H depends on y".into()))?;
    let back = &Poly::x() - &Poly::constant(e.clone());
    let reduced_inv = Endo::new(
        back.clone(),
        (&Poly::y() - &h.eval_poly(&back)).scale(&scale.inverse()?),
    );
    let inverse = Endo::compose(&reduced_inv, &g);
    check_inverse(f, &inverse)?;
    Ok(Degree1Reduction { swapped, normalizer: g, reduced, e, a: scale, h, inverse })
}

fn check_inverse(f: &Endo, h: &Endo) -> Result<(), EngineError> {
    if Endo::compose(f, h).is_identity() && Endo::compose(h, f).is_identity() {
        Ok(())
    } else {
        Err(EngineError::Internal("degree-one inverse does not compose to the identity".into()))
    }
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
    fn normalizes_general_linear_image() {
        let p = &(&x().scale(&c(3)) + &y().scale(&c(-2))) + &Poly::constant(c(7));
        let f = Endo::new(p, y());
        let r = degree1_reduce(&f).unwrap();
        assert_eq!(r.reduced.p, &x() + &Poly::constant(c(7)));
    }

    #[test]
    fn elementary_map() {
        let f = Endo::new(x(), &y() + &x().pow(5));
        assert_eq!(degree1_reduce(&f).unwrap().inverse, Endo::new(x(), &y() - &x().pow(5)));
    }

    #[test]
    fn translated_triangular_map() {
        let f = Endo::new(&x() + &Poly::one(), &y().scale(&c(3)) + &x().pow(2));
        let back = &x() - &Poly::one();
        let expected = Endo::new(back.clone(), (&y() - &back.pow(2)).scale(&FieldElement::from_ratio(1, 3)));
        assert_eq!(degree1_reduce(&f).unwrap().inverse, expected);
    }

    #[test]
    fn uses_q_when_p_is_not_linear() {
        let f = Endo::new(&x() + &y().pow(2), &y() + &Poly::constant(c(2)));
        let r = degree1_reduce(&f).unwrap();
        assert!(r.swapped);
        assert!(Endo::compose(&f, &r.inverse).is_identity());
    }

    #[test]
    fn rejects_bad_input() {
        let f = Endo::new(&x() + &y().pow(2), &(&x() + &y()) + &y().pow(2));
        assert_eq!(degree1_reduce(&f), Err(EngineError::DegreeMismatch));
        assert!(matches!(degree1_reduce(&Endo::new(x(), x())), Err(EngineError::NotKeller(_))));
    }
}

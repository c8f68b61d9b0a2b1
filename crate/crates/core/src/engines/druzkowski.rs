use crate::endo::Endo;
use crate::field::FieldElement;
use crate::poly::Poly;

use super::{degree1_reduce, EngineError};

/// `a·x + b·y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearForm {
    pub a: FieldElement,
    pub b: FieldElement,
}

impl LinearForm {
    pub fn new(a: FieldElement, b: FieldElement) -> Self {
        LinearForm { a, b }
    }

    pub fn zero() -> Self {
        LinearForm::new(FieldElement::zero(), FieldElement::zero())
    }

    /// Reads a homogeneous linear polynomial.
    pub fn from_poly(p: &Poly) -> Option<Self> {
        let form = LinearForm::new(p.coeff(1, 0), p.coeff(0, 1));
        (form.poly() == *p).then_some(form)
    }

    pub fn poly(&self) -> Poly {
        &Poly::x().scale(&self.a) + &Poly::y().scale(&self.b)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Druzkowski {
    /// `(x + l₁³, y + l₂³)`.
    pub map: Endo,
    /// Linear `g` with `(g d)(x) = λx + μy³`.
    pub conjugator: Endo,
    pub lambda: FieldElement,
    pub mu: FieldElement,
    pub inverse: Endo,
}

/// Builds `d = (x + l₁³, y + l₂³)`, accepts it iff its Jacobian is constant
/// (hence 1), and inverts it through the normal form `x + y³`.
pub fn druzkowski2(l1: &LinearForm, l2: &LinearForm) -> Result<Druzkowski, EngineError> {
    let (x, y) = (Poly::x(), Poly::y());
    let map = Endo::new(&x + &l1.poly().pow(3), &y + &l2.poly().pow(3));
    let jac = map.jacobian();
    if !jac.is_constant() {
        return Err(EngineError::Rejected(jac));
    }
    let (conjugator, lambda, mu) = if l1.is_zero() {
        (Endo::identity(), FieldElement::one(), FieldElement::zero())
    } else if !l1.b.is_zero() {
        // l₁(x, (y − a₁x)/b₁) = y
        let g = Endo::new(x.clone(), (&y - &x.scale(&l1.a)).scale(&l1.b.inverse()?));
        (g, FieldElement::one(), FieldElement::one())
    } else {
        return Err(EngineError::Internal("constant Jacobian with l1 = a x, a != 0".into()));
    };
    let normal = Endo::compose(&conjugator, &map);
    // e kills the cubic: (e g d)(x) = x
    let e = Endo::new(&x - &y.pow(3).scale(&mu), y.clone());
    let reduced = Endo::compose(&e, &normal);
    let inner = degree1_reduce(&reduced)?;
    // d = g⁻¹ e⁻¹ (e g d), so d⁻¹ = (e g d)⁻¹ e g
    let inverse = Endo::compose(&inner.inverse, &Endo::compose(&e, &conjugator));
    if !Endo::compose(&map, &inverse).is_identity() || !Endo::compose(&inverse, &map).is_identity() {
        return Err(EngineError::Internal("Druzkowski inverse does not compose to the identity".into()));
    }
    Ok(Druzkowski { map, conjugator, lambda, mu, inverse })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> FieldElement {
        FieldElement::from_i64(n)
    }

    #[test]
    fn cubic_shear() {
        let d = druzkowski2(&LinearForm::new(c(0), c(1)), &LinearForm::zero()).unwrap();
        assert_eq!(d.map, Endo::new(&Poly::x() + &Poly::y().pow(3), Poly::y()));
        assert_eq!(d.inverse, Endo::new(&Poly::x() - &Poly::y().pow(3), Poly::y()));
    }

    #[test]
    fn zero_forms_give_identity() {
        let d = druzkowski2(&LinearForm::zero(), &LinearForm::zero()).unwrap();
        assert!(d.map.is_identity());
        assert!(d.inverse.is_identity());
    }

    #[test]
    fn rejected_pair() {
        let err = druzkowski2(&LinearForm::new(c(0), c(1)), &LinearForm::new(c(1), c(0))).unwrap_err();
        let expected = &Poly::one() - &(&Poly::x().pow(2) * &Poly::y().pow(2)).scale(&c(9));
        assert_eq!(err, EngineError::Rejected(expected));
    }

    #[test]
    fn nilpotent_pair() {
        // l₁ = l₂ = x − y: Jacobian matrix I + N with N nilpotent
        let l = LinearForm::new(c(1), c(-1));
        let d = druzkowski2(&l, &l).unwrap();
        assert_eq!(d.map.jacobian_constant(), Some(c(1)));
        assert!(Endo::compose(&d.inverse, &d.map).is_identity());
    }
}

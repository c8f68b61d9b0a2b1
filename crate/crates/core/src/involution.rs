//! Involutions of the plane: the named ones, classification by Jacobian
//! sign, conjugation checks, and (skew-)symmetry of polynomials.

use std::fmt;
use std::str::FromStr;

use crate::endo::Endo;
use crate::field::FieldElement;
use crate::poly::Poly;
use crate::tame::{decompose, TameCertificate};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InvolutionError {
    #[error("map is not an involution")]
    NotInvolution,
    #[error("involution has non-constant Jacobian {0}")]
    NonConstantJacobian(Poly),
    #[error("conjugator is not invertible")]
    NotInvertible,
    #[error("unknown involution name '{0}'")]
    UnknownName(String),
}

/// Conjugacy class of an involution, determined by its Jacobian sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConjClass {
    Cminus1,
    Cplus1,
}

impl fmt::Display for ConjClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConjClass::Cminus1 => "C-1",
            ConjClass::Cplus1 => "C+1",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Builtin {
    /// `(y, x)`
    Alpha,
    /// `(x, −y)`
    Beta,
    /// `(−x, y)`
    Gamma,
    /// `(−x, −y)`
    Epsilon,
    /// `(−x − y², y)`
    A,
    /// `(−x − y², −y)`
    B,
}

impl Builtin {
    pub const ALL: [Builtin; 6] =
        [Builtin::Alpha, Builtin::Beta, Builtin::Gamma, Builtin::Epsilon, Builtin::A, Builtin::B];

    /// The named involutions with Jacobian −1.
    pub const CLASS_MINUS_ONE: [Builtin; 4] = [Builtin::Alpha, Builtin::Beta, Builtin::Gamma, Builtin::A];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::Alpha => "alpha",
            Builtin::Beta => "beta",
            Builtin::Gamma => "gamma",
            Builtin::Epsilon => "epsilon",
            Builtin::A => "a",
            Builtin::B => "b",
        }
    }

    pub fn endo(self) -> Endo {
        let (x, y) = (Poly::x(), Poly::y());
        let minus_x_y2 = &(-&x) - &y.pow(2);
        match self {
            Builtin::Alpha => Endo::new(y, x),
            Builtin::Beta => Endo::new(x, -&y),
            Builtin::Gamma => Endo::new(-&x, y),
            Builtin::Epsilon => Endo::new(-&x, -&y),
            Builtin::A => Endo::new(minus_x_y2, y),
            Builtin::B => Endo::new(minus_x_y2, -&y),
        }
    }
}

impl FromStr for Builtin {
    type Err = InvolutionError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Builtin::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| InvolutionError::UnknownName(s.to_string()))
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A verified involution with its class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Involution {
    pub endo: Endo,
    pub class: ConjClass,
}

impl Involution {
    pub fn new(endo: Endo) -> Result<Self, InvolutionError> {
        let class = classify(&endo)?;
        Ok(Involution { endo, class })
    }
}

pub fn builtin(name: Builtin) -> Involution {
    Involution::new(name.endo()).expect("builtin involutions are involutions")
}

/// Class of an involution by the sign of its constant Jacobian.
pub fn classify(s: &Endo) -> Result<ConjClass, InvolutionError> {
    if !s.is_involution() {
        return Err(InvolutionError::NotInvolution);
    }
    class_by_jacobian(s)
}

/// The class of `s`, assuming `s ∘ s = id` has been checked elsewhere.
pub(crate) fn class_by_jacobian(s: &Endo) -> Result<ConjClass, InvolutionError> {
    let jac = s.jacobian();
    match jac.as_constant() {
        Some(c) if c == FieldElement::from_i64(-1) => Ok(ConjClass::Cminus1),
        Some(c) if c.is_one() => Ok(ConjClass::Cplus1),
        _ => Err(InvolutionError::NonConstantJacobian(jac)),
    }
}

/// True iff `t = g⁻¹ s g`, i.e. `s ∘ g = g ∘ t`. `g` must be invertible;
/// its certificate is computed here.
pub fn verify_conjugation(g: &Endo, s: &Endo, t: &Endo) -> Result<bool, InvolutionError> {
    let cert = decompose(g).map_err(|_| InvolutionError::NotInvertible)?;
    verify_conjugation_certified(&cert, s, t)
}

/// [`verify_conjugation`] with a caller-supplied certificate for `g`.
pub fn verify_conjugation_certified(
    g: &TameCertificate,
    s: &Endo,
    t: &Endo,
) -> Result<bool, InvolutionError> {
    if !crate::tame::verify(g) {
        return Err(InvolutionError::NotInvertible);
    }
    let g = &g.subject;
    Ok(Endo::compose(s, g) == Endo::compose(g, t))
}

/// `g⁻¹ s g` given `g` and its inverse.
pub fn conjugate(s: &Endo, g: &Endo, g_inv: &Endo) -> Endo {
    Endo::compose(g_inv, &Endo::compose(s, g))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SymmetryType {
    Symmetric,
    Skew,
    Neither,
}

impl fmt::Display for SymmetryType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SymmetryType::Symmetric => "symmetric",
            SymmetryType::Skew => "skew",
            SymmetryType::Neither => "neither",
        })
    }
}

/// Symmetric iff `s(p) = p`; skew iff `s(p) = −p`. The zero polynomial
/// counts as symmetric.
pub fn symmetry_type(p: &Poly, s: &Endo) -> SymmetryType {
    let image = s.apply(p);
    if image == *p {
        SymmetryType::Symmetric
    } else if image == -p {
        SymmetryType::Skew
    } else {
        SymmetryType::Neither
    }
}

/// `u` with `u⁻¹ α u = δ` for the named class −1 involutions, when known
/// in closed form.
pub fn conjugator_to_alpha(delta: Builtin) -> Option<Endo> {
    let (x, y) = (Poly::x(), Poly::y());
    let half = FieldElement::from_ratio(1, 2);
    // g⁻¹ α g = β with g = ((x + y)/2, y − x)
    let g_beta = Endo::new((&x + &y).scale(&half), &y - &x);
    match delta {
        Builtin::Alpha => Some(Endo::identity()),
        Builtin::Beta => Some(g_beta),
        // γ = α β α, so (g α)⁻¹ α (g α) = γ
        Builtin::Gamma => Some(Endo::compose(&g_beta, &Endo::exchange())),
        // β = h⁻¹ a h, so a = (g h⁻¹)⁻¹ α (g h⁻¹)
        Builtin::A => {
            let h = Endo::new(-&y, &(-&x) - &y.pow(2).scale(&half));
            let h_inv = crate::tame::invert(&decompose(&h).ok()?).ok()?;
            Some(Endo::compose(&g_beta, &h_inv))
        }
        Builtin::Epsilon | Builtin::B => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Poly {
        Poly::x()
    }

    fn y() -> Poly {
        Poly::y()
    }

    fn half() -> FieldElement {
        FieldElement::from_ratio(1, 2)
    }

    #[test]
    fn builtin_classes() {
        assert_eq!(builtin(Builtin::Alpha).endo, Endo::new(y(), x()));
        assert_eq!(builtin(Builtin::Alpha).class, ConjClass::Cminus1);
        assert_eq!(builtin(Builtin::Epsilon).endo, Endo::new(-&x(), -&y()));
        assert_eq!(builtin(Builtin::Epsilon).class, ConjClass::Cplus1);
        assert_eq!(builtin(Builtin::A).class, ConjClass::Cminus1);
        assert_eq!(classify(&Builtin::Gamma.endo()), Ok(ConjClass::Cminus1));
        assert_eq!(classify(&Builtin::B.endo()), Ok(ConjClass::Cplus1));
        for b in Builtin::ALL {
            assert!(Endo::compose(&b.endo(), &b.endo()).is_identity(), "{b}");
        }
    }

    #[test]
    fn non_involutions_are_rejected() {
        assert_eq!(classify(&Endo::identity()), Err(InvolutionError::NotInvolution));
        let shear = Endo::new(&x() + &y(), y());
        assert_eq!(classify(&shear), Err(InvolutionError::NotInvolution));
    }

    #[test]
    fn conjugation_identities() {
        let g = Endo::new((&x() + &y()).scale(&half()), &y() - &x());
        assert_eq!(verify_conjugation(&g, &Builtin::Alpha.endo(), &Builtin::Beta.endo()), Ok(true));
        let h = Endo::new(-&y(), &(-&x()) - &y().pow(2).scale(&half()));
        assert_eq!(verify_conjugation(&h, &Builtin::A.endo(), &Builtin::Beta.endo()), Ok(true));
        assert_eq!(
            verify_conjugation(&Endo::identity(), &Builtin::Alpha.endo(), &Builtin::Epsilon.endo()),
            Ok(false)
        );
        let singular = Endo::new(x(), x());
        assert_eq!(
            verify_conjugation(&singular, &Builtin::Alpha.endo(), &Builtin::Alpha.endo()),
            Err(InvolutionError::NotInvertible)
        );
    }

    #[test]
    fn closed_form_conjugators() {
        for delta in Builtin::CLASS_MINUS_ONE {
            let u = conjugator_to_alpha(delta).unwrap();
            assert_eq!(verify_conjugation(&u, &Builtin::Alpha.endo(), &delta.endo()), Ok(true), "{delta}");
        }
        assert!(conjugator_to_alpha(Builtin::Epsilon).is_none());
    }

    #[test]
    fn symmetry_examples() {
        let r = Poly::constant(FieldElement::from_i64(3));
        assert_eq!(symmetry_type(&(&(&x() * &y()) + &r), &Builtin::Alpha.endo()), SymmetryType::Symmetric);
        assert_eq!(symmetry_type(&(&x() + &y().pow(3)), &Builtin::Epsilon.endo()), SymmetryType::Skew);
        assert_eq!(symmetry_type(&(&x() + &y().pow(2)), &Builtin::Alpha.endo()), SymmetryType::Neither);
    }

    #[test]
    fn names_round_trip() {
        for b in Builtin::ALL {
            assert_eq!(b.name().parse::<Builtin>(), Ok(b));
        }
        assert!("delta".parse::<Builtin>().is_err());
    }
}

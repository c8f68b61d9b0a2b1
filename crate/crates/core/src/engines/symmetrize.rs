//! Affine moves making a polynomial of degree at most two symmetric under
//! an involution of class −1, and inversion through that symmetry.
//!
//! Write `p = a x² + b xy + c y² + d x + e y + r`. The case table:
//!
//! * degree one: `β`, `γ` or `(bx, ay)` then `α`;
//! * I (`a = c = 0`): four sub-cases ending at `b'xy + d'x + d'y + r` or `xy + r`;
//! * II (exactly one of `a, c` zero, mirrored so that `c = 0`): II(1) with
//!   `b = 0` has four bullets, II(2) with `b ≠ 0` uses `i` and `√a`;
//! * III (`a, c ≠ 0`): III(1) with `b = 0`, III(2) splitting on
//!   `t = 1 − B²/4` with `B = b/√(ac)`.

use crate::cmw::{alpha_restriction_check, AlphaRestriction, RestrictionMode};
use crate::endo::Endo;
use crate::field::{FieldElement, FieldTower};
use crate::involution::{conjugator_to_alpha, symmetry_type, Builtin, SymmetryType};
use crate::poly::Poly;
use crate::tame::{self, compose_factors, decompose, Factor, TameCertificate, TameError};

use super::{parity_classify, require_keller, EngineError, ParityOutcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SymmetrizeOptions {
    /// Stay inside real towers; Case III then needs `a, c` of equal sign.
    pub real: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranscriptStep {
    pub label: String,
    pub g: Endo,
    pub certificate: TameCertificate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetrizationTranscript {
    pub case: String,
    pub input: Poly,
    /// Real mode with `a, c < 0`: the moves were computed for `−p`.
    pub negated: bool,
    pub steps: Vec<TranscriptStep>,
    /// `(g_l ⋯ g_1 f)(x)`.
    pub witness: Poly,
    pub target: Builtin,
    pub symmetry: SymmetryType,
    pub tower: FieldTower,
}

impl SymmetrizationTranscript {
    /// `g_l ∘ ⋯ ∘ g_1 ∘ f`.
    pub fn apply_steps(&self, f: &Endo) -> Endo {
        self.steps.iter().fold(f.clone(), |acc, s| Endo::compose(&s.g, &acc))
    }
}

struct Builder {
    tower: FieldTower,
    real: bool,
    sign: FieldElement,
    current: Poly,
    steps: Vec<TranscriptStep>,
}

/// The non-constant coefficients `a, b, c, d, e`.
struct Quad {
    a: FieldElement,
    b: FieldElement,
    c: FieldElement,
    d: FieldElement,
    e: FieldElement,
}

fn x() -> Poly {
    Poly::x()
}

fn y() -> Poly {
    Poly::y()
}

fn k(v: &FieldElement) -> Poly {
    Poly::constant(v.clone())
}

fn half(v: &FieldElement) -> FieldElement {
    v * &FieldElement::from_ratio(1, 2)
}

impl Builder {
    fn quad(&self) -> Quad {
        let p = self.current.scale(&self.sign);
        Quad {
            a: p.coeff(2, 0),
            b: p.coeff(1, 1),
            c: p.coeff(0, 2),
            d: p.coeff(1, 0),
            e: p.coeff(0, 1),
        }
    }

    fn sqrt(&mut self, v: &FieldElement) -> Result<FieldElement, EngineError> {
        let (tower, root) = if self.real { self.tower.sqrt_real(v)? } else { self.tower.sqrt(v)? };
        self.tower = tower;
        Ok(root)
    }

    fn step(&mut self, label: &str, g: Endo) -> Result<(), EngineError> {
        if g.is_identity() {
            return Ok(());
        }
        let certificate = decompose(&g)?;
        self.current = g.apply(&self.current);
        self.steps.push(TranscriptStep { label: label.to_string(), g, certificate });
        Ok(())
    }

    fn translate(&mut self, label: &str) -> Result<(), EngineError> {
        let q = self.quad();
        self.step(label, Endo::new(&x() - &k(&half(&q.d)), &y() - &k(&half(&q.e))))
    }

    fn degree_one(&mut self) -> Result<(&'static str, Builtin), EngineError> {
        let (a, b) = (self.current.coeff(1, 0), self.current.coeff(0, 1));
        Ok(if b.is_zero() {
            ("deg1.I", Builtin::Beta)
        } else if a.is_zero() {
            ("deg1.II", Builtin::Gamma)
        } else {
            self.step("deg1.III", Endo::new(x().scale(&b), y().scale(&a)))?;
            ("deg1.III", Builtin::Alpha)
        })
    }

    fn case_one(&mut self) -> Result<(&'static str, Builtin), EngineError> {
        let q = self.quad();
        let label = match (q.d.is_zero(), q.e.is_zero()) {
            (true, true) => "I(1)",
            (false, true) => {
                let b_inv = q.b.inverse()?;
                self.step("I(2)", Endo::new(x(), (&y() - &k(&q.d)).scale(&b_inv)))?;
                "I(2)"
            }
            (true, false) => {
                let b_inv = q.b.inverse()?;
                self.step("I(3)", Endo::new((&x() - &k(&q.e)).scale(&b_inv), y()))?;
                "I(3)"
            }
            (false, false) => {
                self.step("I(4)", Endo::new(x().scale(&q.e), y().scale(&q.d)))?;
                "I(4)"
            }
        };
        Ok((label, Builtin::Alpha))
    }

    /// `a x² + d x + e y + r` with `a ≠ 0`.
    fn case_two_one(&mut self) -> Result<(&'static str, Builtin), EngineError> {
        let q = self.quad();
        Ok(match (q.d.is_zero(), q.e.is_zero()) {
            (true, true) => ("II(1).1", Builtin::Beta),
            (false, true) => ("II(1).2", Builtin::Beta),
            (true, false) => ("II(1).3", Builtin::Gamma),
            (false, false) => {
                self.step("II(1).4", Endo::new(x().scale(&q.e), y().scale(&q.d)))?;
                self.step("II(1).4", Endo::new(x(), &y() - &x()))?;
                ("II(1).4", Builtin::Gamma)
            }
        })
    }

    fn case_two(&mut self) -> Result<(&'static str, Builtin), EngineError> {
        if self.quad().a.is_zero() {
            self.step("II.mirror", Endo::exchange())?;
        }
        let q = self.quad();
        if q.b.is_zero() {
            return self.case_two_one();
        }
        if self.real {
            return Err(EngineError::NotReal("case II(2) needs the imaginary unit".into()));
        }
        let sa = self.sqrt(&q.a)?;
        let i = self.sqrt(&FieldElement::from_i64(-1))?;
        let sa_inv = sa.inverse()?;
        let g1 = Endo::new(
            (&x() - &y().scale(&i)).scale(&sa_inv),
            y().scale(&(&(&(&sa * &i) * &FieldElement::from_i64(2)) / &q.b)),
        );
        self.step("II(2)", g1)?;
        self.translate("II(2)")?;
        Ok(("II(2)", Builtin::Alpha))
    }

    fn case_three(&mut self) -> Result<(&'static str, Builtin), EngineError> {
        let q = self.quad();
        if self.real {
            let (sa, sc) = (sign_of(&q.a)?, sign_of(&q.c)?);
            if sa != sc {
                return Err(EngineError::NotReal("a and c have opposite signs".into()));
            }
            if sa < 0.0 {
                self.sign = FieldElement::from_i64(-1);
            }
        }
        let q = self.quad();
        let sa = self.sqrt(&q.a)?;
        let sc = self.sqrt(&q.c)?;
        self.step(
            if q.b.is_zero() { "III(1)" } else { "III(2)" },
            Endo::new(x().scale(&sa.inverse()?), y().scale(&sc.inverse()?)),
        )?;
        if q.b.is_zero() {
            self.translate("III(1)")?;
            return Ok(("III(1)", Builtin::Alpha));
        }
        // now x² + B xy + y² + D x + E y + r
        let big_b = self.quad().b;
        let t = &FieldElement::one() - &(&(&big_b * &big_b) / &FieldElement::from_i64(4));
        if !t.is_zero() {
            if self.real && sign_of(&t)? < 0.0 {
                return Err(EngineError::NotReal("t = 1 - B^2/4 is negative".into()));
            }
            let st_inv = self.sqrt(&t)?.inverse()?;
            let g2 = Endo::new(&x() - &y().scale(&half(&(&big_b * &st_inv))), y().scale(&st_inv));
            self.step("III(2).tnz", g2)?;
            self.translate("III(2).tnz")?;
            return Ok(("III(2).tnz", Builtin::Alpha));
        }
        let (label, g2) = if big_b == FieldElement::from_i64(2) {
            ("III(2).t0.B+2", Endo::new(&x() + &y(), -&y()))
        } else {
            ("III(2).t0.B-2", Endo::new(&x() + &y(), y()))
        };
        self.step(label, g2)?;
        let (_, target) = self.case_two_one()?;
        Ok((label, target))
    }
}

fn sign_of(v: &FieldElement) -> Result<f64, EngineError> {
    v.approx_real()
        .map(f64::signum)
        .ok_or_else(|| EngineError::NotReal(format!("{v} is not a real number")))
}

/// Runs the case table on `p` alone.
pub fn symmetrize_image(p: &Poly, opts: SymmetrizeOptions) -> Result<SymmetrizationTranscript, EngineError> {
    let deg = p.deg();
    if p.is_constant() {
        return Err(EngineError::DegreeMismatch);
    }
    if deg > 2 {
        return Err(EngineError::DegreeTooHigh(deg));
    }
    if opts.real && p.terms().any(|(_, c)| c.approx_real().is_none()) {
        return Err(EngineError::NotReal("input has non-real coefficients".into()));
    }
    let mut b = Builder {
        tower: p.tower()?,
        real: opts.real,
        sign: FieldElement::one(),
        current: p.clone(),
        steps: Vec::new(),
    };
    let (case, target) = if deg == 1 {
        b.degree_one()?
    } else {
        let q = b.quad();
        match (q.a.is_zero(), q.c.is_zero()) {
            (true, true) => b.case_one()?,
            (false, false) => b.case_three()?,
            _ => b.case_two()?,
        }
    };
    let symmetry = symmetry_type(&b.current, &target.endo());
    if symmetry != SymmetryType::Symmetric {
        return Err(EngineError::Internal(format!("{case}: witness {} is not {target}-symmetric", b.current)));
    }
    Ok(SymmetrizationTranscript {
        case: case.to_string(),
        input: p.clone(),
        negated: !b.sign.is_one(),
        steps: b.steps,
        witness: b.current,
        target,
        symmetry,
        tower: b.tower,
    })
}

/// The case table for a Keller map with `deg f(x) ≤ 2`.
pub fn symmetrize_deg2(f: &Endo, opts: SymmetrizeOptions) -> Result<SymmetrizationTranscript, EngineError> {
    require_keller(f)?;
    let t = symmetrize_image(&f.p, opts)?;
    if t.apply_steps(f).p != t.witness {
        return Err(EngineError::Internal("steps do not reproduce the witness".into()));
    }
    Ok(t)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InversionRoute {
    /// Case table on `f(x)`.
    Quadratic,
    /// Case table on `f(y)`, via `f∘α`.
    QuadraticSwapped,
    /// Parity of `f(x)` gives a `β`/`γ` symmetry directly.
    Parity,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryInversion {
    pub route: InversionRoute,
    pub transcript: Option<SymmetrizationTranscript>,
    pub parity: Option<ParityOutcome>,
    pub delta: Builtin,
    pub symmetry: SymmetryType,
    /// `u` with `u⁻¹ α u = δ`.
    pub conjugator: Endo,
    /// `u ∘ g_l ∘ ⋯ ∘ g_1 ∘ f`, whose first image is α-(skew-)symmetric.
    pub conjugated: Endo,
    pub restriction: AlphaRestriction,
    pub inverse: Endo,
}

/// Inverts `f` after exhibiting the α-restriction property: symmetrize the
/// first image, conjugate the symmetry to α, check that α preserves the
/// image algebra, then decompose.
pub fn invert_via_symmetry(f: &Endo, opts: SymmetrizeOptions) -> Result<SymmetryInversion, EngineError> {
    require_keller(f)?;
    if f.p.deg() > 2 && f.q.deg() <= 2 {
        let mut out = invert_via_symmetry(&f.swapped(), opts)?;
        out.route = InversionRoute::QuadraticSwapped;
        out.inverse = Endo::new(out.inverse.p.swap_variables(), out.inverse.q.swap_variables());
        return Ok(out);
    }
    let (route, transcript, parity, delta, symmetry) = if f.p.deg() <= 2 {
        let t = symmetrize_deg2(f, opts)?;
        let (delta, sym) = (t.target, t.symmetry);
        (InversionRoute::Quadratic, Some(t), None, delta, sym)
    } else {
        let outcome = parity_classify(f)?;
        let first = outcome.findings[0].clone();
        (InversionRoute::Parity, None, Some(outcome), first.involution, first.symmetry)
    };
    let steps: &[TranscriptStep] = transcript.as_ref().map_or(&[], |t| &t.steps);

    let u = conjugator_to_alpha(delta).ok_or_else(|| EngineError::Internal(format!("no conjugator for {delta}")))?;
    let u_cert = decompose(&u)?;
    let reduced = steps.iter().fold(f.clone(), |acc, s| Endo::compose(&s.g, &acc));
    let conjugated = Endo::compose(&u, &reduced);
    let mode = match symmetry {
        SymmetryType::Skew => RestrictionMode::SkewP,
        _ => RestrictionMode::SymmetricP,
    };
    let restriction = alpha_restriction_check(&conjugated, mode)?;
    let m_cert = decompose(&conjugated).map_err(|e| match e {
        TameError::NotReducible { .. } => {
            EngineError::Internal(format!("alpha-restricted map failed to decompose: {e}"))
        }
        other => other.into(),
    })?;
    let m_inv = tame::invert(&m_cert)?;

    // f⁻¹ = M⁻¹ ∘ u ∘ g_l ∘ ⋯ ∘ g_1
    let mut tail: Vec<Factor> = u_cert.factors.clone();
    for s in steps.iter().rev() {
        tail.extend(s.certificate.factors.iter().cloned());
    }
    let inverse = compose_factors(&m_inv, &tail);

    // f = g_1⁻¹ ∘ ⋯ ∘ g_l⁻¹ ∘ u⁻¹ ∘ M, checked from both sides
    let mut forward: Vec<Factor> = Vec::new();
    for s in steps {
        forward.extend(s.certificate.inverse_factors());
    }
    forward.extend(u_cert.inverse_factors());
    forward.extend(m_cert.factors.iter().cloned());
    let mut backward = m_cert.inverse_factors();
    backward.extend(tail);
    if !compose_factors(&inverse, &forward).is_identity() || !compose_factors(f, &backward).is_identity() {
        return Err(EngineError::Internal("inverse does not compose to the identity".into()));
    }
    Ok(SymmetryInversion {
        route,
        transcript,
        parity,
        delta,
        symmetry,
        conjugator: u,
        conjugated,
        restriction,
        inverse,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> FieldElement {
        FieldElement::from_i64(n)
    }

    fn quad(a: i64, b: i64, cc: i64, d: i64, e: i64, r: i64) -> Poly {
        Poly::from_terms([
            (crate::poly::Monomial::new(2, 0), c(a)),
            (crate::poly::Monomial::new(1, 1), c(b)),
            (crate::poly::Monomial::new(0, 2), c(cc)),
            (crate::poly::Monomial::new(1, 0), c(d)),
            (crate::poly::Monomial::new(0, 1), c(e)),
            (crate::poly::Monomial::ONE, c(r)),
        ])
    }

    fn run(p: &Poly) -> SymmetrizationTranscript {
        let t = symmetrize_image(p, SymmetrizeOptions::default()).unwrap();
        let w = t.steps.iter().fold(p.clone(), |acc, s| s.g.apply(&acc));
        assert_eq!(w, t.witness);
        t
    }

    #[test]
    fn case_i2() {
        let t = run(&quad(0, 2, 0, 3, 0, 0));
        assert_eq!(t.case, "I(2)");
        assert_eq!(t.steps.len(), 1);
        let half = FieldElement::from_ratio(1, 2);
        let expected = Endo::new(x(), &y().scale(&half) - &Poly::constant(FieldElement::from_ratio(3, 2)));
        assert_eq!(t.steps[0].g, expected);
        assert_eq!(t.witness, &x() * &y());
        assert_eq!(t.target, Builtin::Alpha);
    }

    #[test]
    fn case_i1_needs_no_steps() {
        let p = quad(0, 5, 0, 0, 0, 7);
        let t = run(&p);
        assert_eq!(t.case, "I(1)");
        assert!(t.steps.is_empty());
        assert_eq!(t.witness, p);
    }

    #[test]
    fn case_iii2_nonzero_t() {
        let t = run(&quad(1, 1, 1, 1, 0, 0));
        assert_eq!(t.case, "III(2).tnz");
        assert_eq!(t.target, Builtin::Alpha);
        assert_eq!(t.symmetry, SymmetryType::Symmetric);
    }

    #[test]
    fn every_label() {
        let cases = [
            (quad(0, 1, 0, 1, 1, 0), "I(4)"),
            (quad(0, 3, 0, 0, 2, 1), "I(3)"),
            (quad(2, 0, 0, 0, 0, 1), "II(1).1"),
            (quad(2, 0, 0, 1, 0, 0), "II(1).2"),
            (quad(2, 0, 0, 0, 1, 0), "II(1).3"),
            (quad(0, 0, 2, 1, 3, 0), "II(1).4"),
            (quad(2, 1, 0, 1, 1, 0), "II(2)"),
            (quad(0, 3, 5, 1, 0, 2), "II(2)"),
            (quad(2, 0, 3, 1, 1, 0), "III(1)"),
            (quad(1, 2, 1, 1, 3, 0), "III(2).t0.B+2"),
            (quad(4, -4, 1, 0, 1, 0), "III(2).t0.B-2"),
            (quad(0, 0, 0, 2, 0, 1), "deg1.I"),
            (quad(0, 0, 0, 0, 2, 1), "deg1.II"),
            (quad(0, 0, 0, 2, 3, 1), "deg1.III"),
        ];
        for (p, label) in cases {
            assert_eq!(run(&p).case, label, "{p}");
        }
    }

    #[test]
    fn real_mode() {
        let real = SymmetrizeOptions { real: true };
        let t = symmetrize_image(&quad(-2, 0, -3, 1, 1, 0), real).unwrap();
        assert!(t.negated);
        assert!(!t.tower.contains_i());
        assert!(matches!(symmetrize_image(&quad(2, 0, -3, 1, 1, 0), real), Err(EngineError::NotReal(_))));
        assert!(matches!(symmetrize_image(&quad(2, 1, 0, 1, 1, 0), real), Err(EngineError::NotReal(_))));
    }

    #[test]
    fn inversion_of_quadratic_pair() {
        let f = Endo::new(&x() + &y().pow(2), &(&x() + &y()) + &y().pow(2));
        let inv = invert_via_symmetry(&f, SymmetrizeOptions::default()).unwrap();
        assert_eq!(inv.inverse, Endo::new(&x() - &(&y() - &x()).pow(2), &y() - &x()));
        assert_eq!(inv.restriction.formal_jacobian, Poly::constant(c(-1)));
    }

    #[test]
    fn inversion_of_affine_map() {
        let f = Endo::new(&x().scale(&c(2)) + &y(), &x() + &Poly::one());
        let inv = invert_via_symmetry(&f, SymmetrizeOptions::default()).unwrap();
        assert!(Endo::compose(&f, &inv.inverse).is_identity());
    }

    #[test]
    fn inversion_via_swap_and_parity() {
        let f = Endo::new(&x() + &y().pow(3), y());
        let inv = invert_via_symmetry(&f, SymmetrizeOptions::default()).unwrap();
        assert_eq!(inv.route, InversionRoute::QuadraticSwapped);
        assert_eq!(inv.inverse, Endo::new(&x() - &y().pow(3), y()));
        // both images above degree two; x + y⁴ is even in y
        let p = &x() + &y().pow(4);
        let g = Endo::new(p.clone(), &y() + &p.pow(3));
        let inv = invert_via_symmetry(&g, SymmetrizeOptions::default()).unwrap();
        assert_eq!(inv.route, InversionRoute::Parity);
        assert_eq!(inv.delta, Builtin::Beta);
        assert!(Endo::compose(&g, &inv.inverse).is_identity());
    }
}

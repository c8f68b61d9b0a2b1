//! The worked examples, one test per operation.

use planemorph::cmw::{alpha_restriction_check, express_in, CmwError, RestrictionMode};
use planemorph::endo::Endo;
use planemorph::engines::{
    degree1_reduce, druzkowski2, invert_via_symmetry, parity_of, symmetrize_image, symmetrize_search, wang_special,
    EngineError, LinearForm, SearchLimits, SymmetrizeOptions, WangBranch,
};
use planemorph::field::{FieldElement, FieldTower};
use planemorph::harness::{random_involution, random_keller_with_quadratic_x, random_tame, GenSpec};
use planemorph::involution::{builtin, classify, symmetry_type, verify_conjugation, Builtin, ConjClass, SymmetryType};
use planemorph::parse::{parse_endo, parse_poly, ParseError};
use planemorph::poly::{jacobian, Axis, Degree, Parity, Poly, UniPoly, Weight};
use planemorph::tame::{self, decompose, Factor, TameCertificate};

fn p(s: &str) -> Poly {
    parse_poly(s).unwrap()
}

fn f(s: &str) -> Endo {
    parse_endo(s).unwrap().endo
}

fn c(n: i64) -> FieldElement {
    FieldElement::from_i64(n)
}

fn q(n: i64, d: i64) -> FieldElement {
    FieldElement::from_ratio(n, d)
}

#[test]
fn field_arith() {
    assert_eq!(&q(1, 2) + &q(1, 2), c(1));
    let i = FieldTower::gaussian().generator(0);
    assert_eq!(&i * &i, c(-1));
    let one_plus_i = &c(1) + &i;
    let inv = one_plus_i.inverse().unwrap();
    assert_eq!(inv, (&c(1) - &i).checked_div(&c(2)).unwrap());
    assert_eq!(&inv * &one_plus_i, c(1));
}

#[test]
fn field_sqrt() {
    let q_ = FieldTower::rationals();
    let (t, r) = q_.sqrt(&c(4)).unwrap();
    assert_eq!((t.depth(), r), (0, c(2)));
    let (t, r) = q_.sqrt(&c(2)).unwrap();
    assert_eq!(t.depth(), 1);
    assert_eq!(&r * &r, c(2));
    let g = FieldTower::gaussian();
    let (t, r) = g.sqrt(&c(-1)).unwrap();
    assert_eq!(t.depth(), 1);
    assert_eq!(r, g.generator(0));
}

#[test]
fn ring_ops() {
    assert_eq!(p("(x+y)^2"), p("x^2 + 2*x*y + y^2"));
    assert!((&p("x^3 + 7*y") * &Poly::zero()).is_zero());
    assert_eq!(&p("x+y^3") - &p("y^3"), Poly::x());
    assert_eq!(Poly::zero().total_degree(), Degree::MinusInfinity);
}

#[test]
fn jacobians() {
    assert_eq!(jacobian(&p("x"), &p("y")), p("1"));
    assert_eq!(jacobian(&p("y"), &p("x")), p("-1"));
    assert_eq!(jacobian(&p("x+y^3"), &p("y")), p("1"));
}

#[test]
fn graded_parts() {
    let circle = p("x^2 + y^2 + 3*x - 2*y + 5");
    let parts = circle.graded_parts(Weight::TOTAL);
    assert_eq!(parts.iter().map(|(d, _)| *d).collect::<Vec<_>>(), vec![0, 1, 2]);
    assert_eq!(circle.leading_form(Weight::TOTAL), p("x^2 + y^2"));
    assert!(Poly::zero().graded_parts(Weight::TOTAL).is_empty());
    let parts = p("2*x*y + 3*x + 1").graded_parts(Weight::Y_DEGREE);
    assert_eq!(parts, vec![(0, p("3*x + 1")), (1, p("2*x*y"))]);
}

#[test]
fn parity_profiles() {
    assert_eq!(p("x^2 + y^2 + 3").parity_profile(Axis::Y), Ok(Parity::AllEven));
    assert_eq!(p("x*y").parity_profile(Axis::X), Ok(Parity::AllOdd));
    assert_eq!(p("x + y^3").parity_profile(Axis::Y), Ok(Parity::Mixed));
}

#[test]
fn apply() {
    assert_eq!(f("x -> x - y^3; y -> y").apply(&p("x + y^3")), p("x"));
    assert_eq!(Endo::identity().apply(&p("x^2 - 7*y")), p("x^2 - 7*y"));
    assert_eq!(Endo::exchange().apply(&p("x*y + 4")), p("x*y + 4"));
}

#[test]
fn compose() {
    // a = 2, b = 3, e = 5
    let g = f("x -> (1/2)*(x - y); y -> (1/3)*y");
    let lin = f("x -> 2*x + 3*y + 5; y -> y");
    assert_eq!(Endo::compose(&g, &lin).p, p("x + 5"));
    let h = f("x -> x + y^2; y -> 3*y - x");
    assert_eq!(Endo::compose(&Endo::identity(), &h), h);
}

#[test]
fn jacobian_of_maps() {
    let alpha = Builtin::Alpha.endo();
    assert_eq!((alpha.jacobian(), alpha.is_keller()), (p("-1"), true));
    let sq = f("x -> x^2; y -> y");
    assert_eq!((sq.jacobian(), sq.is_keller()), (p("2*x"), false));
    let k = f("x -> x + y^2; y -> x + y + y^2");
    assert_eq!((k.jacobian(), k.is_keller()), (p("1"), true));
}

#[test]
fn orders() {
    assert_eq!(Builtin::Epsilon.endo().order(10), Some(2));
    assert_eq!(Endo::identity().order(10), Some(1));
    assert_eq!(Builtin::A.endo().order(10), Some(2));
}

#[test]
fn decompositions() {
    let cert = decompose(&Endo::exchange()).unwrap();
    assert_eq!(cert.factors.len(), 1);
    assert!(matches!(cert.factors[0], Factor::Affine { .. }));
    let cert = decompose(&f("x -> x + y^3; y -> y")).unwrap();
    assert_eq!(cert.factors.len(), 1);
    assert!(matches!(cert.factors[0], Factor::ElementaryX { .. }));
    let spec = GenSpec { seed: 11, factor_count: 5, max_elem_degree: 2, coeff_height: 3, ..GenSpec::default() };
    let (g, by_construction) = random_tame(&spec);
    assert_eq!(by_construction.recompose(), g);
    assert_eq!(decompose(&g).unwrap().recompose(), g);
}

#[test]
fn inversions() {
    let cert = decompose(&f("x -> 2*x; y -> 3*y")).unwrap();
    assert_eq!(tame::invert(&cert).unwrap(), f("x -> x/2; y -> y/3"));
    let cert = decompose(&f("x -> x + y^3; y -> y")).unwrap();
    assert_eq!(tame::invert(&cert).unwrap(), f("x -> x - y^3; y -> y"));

    // anti-homomorphism: (g∘h)⁻¹ = h⁻¹∘g⁻¹
    let g = f("x -> x + y^2; y -> y");
    let h = f("x -> x; y -> y + x^3 - x");
    let gh = Endo::compose(&g, &h);
    let inv = |e: &Endo| tame::invert(&decompose(e).unwrap()).unwrap();
    assert_eq!(inv(&gh), Endo::compose(&inv(&h), &inv(&g)));
}

#[test]
fn verification() {
    let cert = decompose(&f("x -> x + y^2; y -> x + y + y^2")).unwrap();
    assert!(tame::verify(&cert));
    let mut broken = cert.clone();
    broken.factors.remove(0);
    assert!(!tame::verify(&broken));
    // (x + e, a·y + H(x)) with e = 2, a = 3, H = x²
    let hand = TameCertificate {
        factors: vec![
            Factor::Affine { matrix: [[c(1), c(0)], [c(0), c(1)]], translation: [c(2), c(0)] },
            Factor::ElementaryY { h: UniPoly::new(vec![c(4), c(-4), c(1)]), scale: c(3) },
        ],
        subject: f("x -> x + 2; y -> 3*y + x^2"),
    };
    assert!(tame::verify(&hand));
}

#[test]
fn builtins() {
    let a = builtin(Builtin::Alpha);
    assert_eq!((a.endo, a.class), (f("x -> y; y -> x"), ConjClass::Cminus1));
    let e = builtin(Builtin::Epsilon);
    assert_eq!((e.endo, e.class), (f("x -> -x; y -> -y"), ConjClass::Cplus1));
    let s = builtin(Builtin::A);
    assert_eq!((s.endo, s.class), (f("x -> -x - y^2; y -> y"), ConjClass::Cminus1));
}

#[test]
fn classification() {
    assert_eq!(classify(&Builtin::Gamma.endo()), Ok(ConjClass::Cminus1));
    assert_eq!(classify(&Builtin::B.endo()), Ok(ConjClass::Cplus1));
    let spec = GenSpec { seed: 21, factor_count: 3, max_elem_degree: 2, coeff_height: 3, ..GenSpec::default() };
    assert_eq!(random_involution(&spec, Builtin::Alpha).unwrap().class, ConjClass::Cminus1);
}

#[test]
fn conjugations() {
    let g = f("x -> (1/2)*(x + y); y -> y - x");
    assert_eq!(verify_conjugation(&g, &Builtin::Alpha.endo(), &Builtin::Beta.endo()), Ok(true));
    let h = f("x -> -y; y -> -x - (1/2)*y^2");
    assert_eq!(verify_conjugation(&h, &Builtin::A.endo(), &Builtin::Beta.endo()), Ok(true));
    assert_eq!(verify_conjugation(&Endo::identity(), &Builtin::Alpha.endo(), &Builtin::Epsilon.endo()), Ok(false));
}

#[test]
fn symmetry_types() {
    assert_eq!(symmetry_type(&p("x*y + 7"), &Builtin::Alpha.endo()), SymmetryType::Symmetric);
    assert_eq!(symmetry_type(&p("x + y^3"), &Builtin::Epsilon.endo()), SymmetryType::Skew);
    assert_eq!(symmetry_type(&p("x + y^2"), &Builtin::Alpha.endo()), SymmetryType::Neither);
}

#[test]
fn cmw_express() {
    // Q = (x+e)² − 3(x+e) with e = 4
    assert_eq!(express_in(&p("x + 4"), &p("(x+4)^2 - 3*(x+4)")).unwrap(), UniPoly::new(vec![c(0), c(-3), c(1)]));
    assert_eq!(express_in(&p("x"), &p("x^3 + 2*x")).unwrap(), UniPoly::new(vec![c(0), c(2), c(0), c(1)]));
    assert_eq!(express_in(&p("x + y^3"), &p("(x + y^3)^2 + 5")).unwrap(), UniPoly::new(vec![c(5), c(0), c(1)]));
    assert_eq!(express_in(&p("x"), &p("y")), Err(CmwError::NonzeroJacobian));
}

#[test]
fn alpha_restrictions() {
    let sym = alpha_restriction_check(&f("x -> x + y; y -> y"), RestrictionMode::SymmetricP).unwrap();
    assert_eq!((sym.alpha_q.0.clone(), sym.h.clone()), (p("-y + x"), UniPoly::monomial(c(1), 1)));
    assert_eq!(sym.alpha_q.eval(&p("x + y"), &p("y")), p("x"));
    let skew = alpha_restriction_check(&f("x -> x - y; y -> -y"), RestrictionMode::SkewP).unwrap();
    assert_eq!((skew.alpha_q.0.clone(), skew.h.clone()), (p("y - x"), UniPoly::monomial(c(1), 1)));
    assert_eq!(skew.alpha_q.eval(&p("x - y"), &p("-y")), p("-x"));
    assert_eq!(sym.formal_jacobian, p("-1"));
    assert_eq!(skew.formal_jacobian, p("-1"));
}

#[test]
fn degree_one() {
    let r = degree1_reduce(&f("x -> 2*x + 3*y + 5; y -> x + 2*y")).unwrap();
    assert_eq!(r.reduced.p, p("x + 5"));
    assert_eq!(degree1_reduce(&f("x -> x; y -> y + x^5")).unwrap().inverse, f("x -> x; y -> y - x^5"));
    let r = degree1_reduce(&f("x -> x + 1; y -> 3*y + x^2")).unwrap();
    assert_eq!(r.inverse, f("x -> x - 1; y -> (y - (x - 1)^2)/3"));
    assert_eq!(degree1_reduce(&f("x -> x^2 + y; y -> x")).map(|_| ()), Ok(()));
    assert_eq!(degree1_reduce(&f("x -> x + y^2; y -> y + (x + y^2)^2")).map(|_| ()), Err(EngineError::DegreeMismatch));
}

#[test]
fn wang() {
    let w = wang_special(&f("x -> x + y^2; y -> x + y + y^2")).unwrap();
    assert_eq!((w.branch, w.lambda.clone(), w.mu.clone()), (WangBranch::Shear, c(1), c(1)));
    assert_eq!(w.r, Some(p("y")));
    let affine = wang_special(&f("x -> 2*x + y; y -> x + y")).unwrap();
    assert_eq!(affine.branch, WangBranch::Affine);
    let mu0 = wang_special(&f("x -> x + y^2; y -> y + 7")).unwrap();
    assert_eq!(mu0.branch, WangBranch::MuZero);
}

#[test]
fn symmetrize() {
    let opts = SymmetrizeOptions::default();
    let t = symmetrize_image(&p("2*x*y + 3*x"), opts).unwrap();
    assert_eq!(t.case, "I(2)");
    assert_eq!(t.steps.len(), 1);
    assert_eq!(t.steps[0].g, f("x -> x; y -> y/2 - 3/2"));
    assert_eq!((t.witness.clone(), t.target), (p("x*y"), Builtin::Alpha));

    let t = symmetrize_image(&p("5*x*y + 2"), opts).unwrap();
    assert_eq!(t.case, "I(1)");
    assert!(t.steps.is_empty());
    assert_eq!((t.witness.clone(), t.target), (p("5*x*y + 2"), Builtin::Alpha));

    let t = symmetrize_image(&p("x^2 + x*y + y^2 + x"), opts).unwrap();
    assert_eq!(t.case, "III(2).tnz");
    assert_eq!(symmetry_type(&t.witness, &t.target.endo()), SymmetryType::Symmetric);
    assert_eq!(t.target, Builtin::Alpha);
}

#[test]
fn invert_via_symmetry_examples() {
    let opts = SymmetrizeOptions::default();
    let inv = invert_via_symmetry(&f("x -> x + y^2; y -> x + y + y^2"), opts).unwrap();
    assert_eq!(inv.inverse, f("x -> x - (y - x)^2; y -> y - x"));
    let inv = invert_via_symmetry(&f("x -> 2*x + y + 1; y -> x + y"), opts).unwrap();
    assert_eq!(inv.inverse, f("x -> x - y - 1; y -> -x + 2*y + 1"));
    // no Keller map has f(x) = 2xy + 3x + 1 (it factors), so harness maps
    // with quadratic f(x) stand in for "harness-generated mate"
    for seed in 0..5 {
        let spec = GenSpec { seed, ..GenSpec::default() };
        let (g, _, _) = random_keller_with_quadratic_x(&spec).unwrap();
        let inv = invert_via_symmetry(&g, opts).unwrap();
        assert!(Endo::compose(&inv.inverse, &g).is_identity());
    }
}

#[test]
fn parity() {
    let both_even = parity_of(&p("x^2 + y^2")).unwrap();
    let cases: Vec<_> = both_even.findings.iter().map(|f| (f.involution, f.symmetry)).collect();
    assert_eq!(cases, vec![(Builtin::Beta, SymmetryType::Symmetric), (Builtin::Gamma, SymmetryType::Symmetric)]);
    let odd = parity_of(&p("x*y")).unwrap();
    let cases: Vec<_> = odd.findings.iter().map(|f| (f.involution, f.symmetry)).collect();
    assert_eq!(cases, vec![(Builtin::Beta, SymmetryType::Skew), (Builtin::Gamma, SymmetryType::Skew)]);
    assert_eq!(parity_of(&p("x + y^3")), Err(EngineError::NotApplicable));
}

#[test]
fn search() {
    let r = symmetrize_search(&p("x + y^3"), SearchLimits::new(1, 3, 1)).unwrap();
    assert_eq!(r.steps, vec![f("x -> x - y^3; y -> y")]);
    assert_eq!((r.witness, r.target, r.symmetry), (p("x"), Builtin::Beta, SymmetryType::Symmetric));
    assert!(symmetrize_search(&p("x*y"), SearchLimits::new(2, 3, 1)).unwrap().steps.is_empty());
    assert_eq!(symmetrize_search(&p("x + y^3"), SearchLimits::new(1, 2, 1)), Err(EngineError::NotFound));
}

#[test]
fn druzkowski() {
    let y = LinearForm::new(c(0), c(1));
    let x = LinearForm::new(c(1), c(0));
    let d = druzkowski2(&y, &LinearForm::zero()).unwrap();
    assert_eq!(d.map, f("x -> x + y^3; y -> y"));
    assert_eq!(d.inverse, f("x -> x - y^3; y -> y"));
    assert!(druzkowski2(&LinearForm::zero(), &LinearForm::zero()).unwrap().map.is_identity());
    assert_eq!(druzkowski2(&y, &x).map(|_| ()), Err(EngineError::Rejected(p("1 - 9*x^2*y^2"))));
}

#[test]
fn harness() {
    let spec = GenSpec { seed: 5, ..GenSpec::default() };
    assert_eq!(random_tame(&spec), random_tame(&spec));
    let (g, cert) = random_tame(&spec);
    assert!(g.is_keller());
    assert!(tame::verify(&decompose(&g).unwrap()));
    assert_eq!(g.jacobian_constant(), Some(cert.jacobian()));
    let (h, _, _) = random_keller_with_quadratic_x(&spec).unwrap();
    assert!(h.p.deg() <= 2);
    let eps = random_involution(&spec, Builtin::Epsilon).unwrap();
    assert_eq!(eps.class, ConjClass::Cplus1);
    let id = TameCertificate::from_factors(vec![Factor::identity()]);
    assert_eq!(planemorph::harness::conjugate_by(&Builtin::Gamma.endo(), &id).unwrap().endo, Builtin::Gamma.endo());
}

#[test]
fn parsing() {
    assert_eq!(p("x + 2*y^3"), &Poly::x() + &Poly::y().pow(3).scale(&c(2)));
    assert_eq!(p("(1/2)*(x+y)"), (&Poly::x() + &Poly::y()).scale(&q(1, 2)));
    assert_eq!(parse_poly("sqrt(x)"), Err(ParseError::SqrtOfNonConstant(0)));
    assert!(matches!(parse_poly("2xy"), Err(ParseError::SyntaxError { position: 1, .. })));
}

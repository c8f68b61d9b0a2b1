//! Deterministic random generation of tame maps, Keller maps with a
//! quadratic first image, conjugated involutions and α-(skew-)symmetric maps.
//!
//! Every generator draws from a ChaCha8 stream seeded by `GenSpec::seed` and
//! selected by a label, so different consumers never share a sequence.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::endo::Endo;
use crate::field::{FieldElement, FieldTower};
use crate::involution::{Builtin, Involution, InvolutionError};
use crate::poly::{Poly, UniPoly};
use crate::tame::{self, compose_factors, Factor, TameCertificate};

/// Rejections allowed before [`random_keller_with_quadratic_x`] gives up.
pub const MAX_REJECTIONS: u32 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HarnessError {
    #[error("no sample accepted after {0} attempts")]
    ResourceLimit(u32),
    #[error("unknown field mode '{0}' (expected rational, gaussian or real_radical)")]
    UnknownFieldMode(String),
    #[error(transparent)]
    Involution(#[from] InvolutionError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum FieldMode {
    #[default]
    Rational,
    /// Coefficients in `Q(i)`.
    Gaussian,
    /// Coefficients in `Q(√2)`.
    RealRadical,
}

impl FromStr for FieldMode {
    type Err = HarnessError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rational" => Ok(FieldMode::Rational),
            "gaussian" => Ok(FieldMode::Gaussian),
            "real_radical" => Ok(FieldMode::RealRadical),
            _ => Err(HarnessError::UnknownFieldMode(s.to_string())),
        }
    }
}

impl fmt::Display for FieldMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FieldMode::Rational => "rational",
            FieldMode::Gaussian => "gaussian",
            FieldMode::RealRadical => "real_radical",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GenSpec {
    pub seed: u64,
    pub factor_count: u32,
    pub max_elem_degree: u32,
    pub coeff_height: u32,
    pub field_mode: FieldMode,
}

impl Default for GenSpec {
    fn default() -> Self {
        GenSpec { seed: 0, factor_count: 3, max_elem_degree: 3, coeff_height: 5, field_mode: FieldMode::Rational }
    }
}

impl GenSpec {
    pub fn with_seed(self, seed: u64) -> Self {
        GenSpec { seed, ..self }
    }
}

fn fnv1a(label: &str) -> u64 {
    label.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3))
}

/// A labelled random stream over a [`GenSpec`].
pub struct Sampler {
    spec: GenSpec,
    rng: ChaCha8Rng,
    tower: FieldTower,
}

impl Sampler {
    pub fn new(spec: GenSpec, label: &str) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
        rng.set_stream(fnv1a(label));
        let tower = match spec.field_mode {
            FieldMode::Rational => FieldTower::rationals(),
            FieldMode::Gaussian => FieldTower::gaussian(),
            FieldMode::RealRadical => FieldTower::rationals().adjoin(&FieldElement::from_i64(2)).expect("√2 is irrational"),
        };
        Sampler { spec, rng, tower }
    }

    pub fn spec(&self) -> &GenSpec {
        &self.spec
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    fn rational(&mut self, nonzero: bool) -> BigRational {
        let h = i64::from(self.spec.coeff_height.max(1));
        let n = loop {
            let n = self.rng.random_range(-h..=h);
            if !nonzero || n != 0 {
                break n;
            }
        };
        let d = self.rng.random_range(1..=h);
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    /// A coefficient of the configured height; in the extension modes the
    /// irrational part is present about half the time.
    pub fn coeff(&mut self) -> FieldElement {
        self.element(false)
    }

    pub fn nonzero_coeff(&mut self) -> FieldElement {
        self.element(true)
    }

    fn element(&mut self, nonzero: bool) -> FieldElement {
        if self.tower.depth() == 0 || self.rng.random_bool(0.5) {
            return FieldElement::from_rational(self.rational(nonzero));
        }
        let re = self.rational(false);
        let im = self.rational(true);
        FieldElement::from_coords(self.tower.clone(), vec![re, im])
    }

    /// `h` with degree uniform in `[1, max_degree]` and nonzero leading coefficient.
    pub fn unipoly(&mut self, max_degree: u32) -> UniPoly {
        let deg = self.rng.random_range(1..=max_degree.max(1)) as usize;
        let mut coeffs: Vec<FieldElement> = (0..deg).map(|_| self.coeff()).collect();
        coeffs.push(self.nonzero_coeff());
        UniPoly::new(coeffs)
    }

    pub fn factor(&mut self) -> Factor {
        match self.rng.random_range(0..3) {
            0 => loop {
                let matrix = [[self.coeff(), self.coeff()], [self.coeff(), self.coeff()]];
                let f = Factor::Affine { matrix, translation: [self.coeff(), self.coeff()] };
                if f.is_valid() {
                    break f;
                }
            },
            1 => Factor::ElementaryX { h: self.unipoly(self.spec.max_elem_degree), scale: self.nonzero_coeff() },
            _ => Factor::ElementaryY { h: self.unipoly(self.spec.max_elem_degree), scale: self.nonzero_coeff() },
        }
    }

    /// A product of `factor_count` random factors and its certificate.
    pub fn tame(&mut self) -> (Endo, TameCertificate) {
        let factors: Vec<Factor> = (0..self.spec.factor_count.max(1)).map(|_| self.factor()).collect();
        let cert = TameCertificate::from_factors(factors);
        (cert.subject.clone(), cert)
    }
}

pub fn random_tame(spec: &GenSpec) -> (Endo, TameCertificate) {
    Sampler::new(*spec, "random_tame").tame()
}

/// Rejection-samples tame maps until `deg f(x) ≤ 2`. Returns the map, its
/// certificate and the number of draws.
pub fn random_keller_with_quadratic_x(spec: &GenSpec) -> Result<(Endo, TameCertificate, u32), HarnessError> {
    let mut s = Sampler::new(*spec, "keller_quadratic_x");
    for attempt in 1..=MAX_REJECTIONS {
        let (f, cert) = s.tame();
        if f.p.deg() <= 2 {
            return Ok((f, cert, attempt));
        }
    }
    Err(HarnessError::ResourceLimit(MAX_REJECTIONS))
}

/// `u⁻¹ ∘ base ∘ u` for a random tame `u`.
pub fn random_involution(spec: &GenSpec, base: Builtin) -> Result<Involution, HarnessError> {
    let (_, cert) = Sampler::new(*spec, "involution").tame();
    Ok(conjugate_by(&base.endo(), &cert)?)
}

/// `u⁻¹ ∘ s ∘ u` folded over `u`'s factors.
///
/// The involution check folds `t ∘ t = t ∘ u⁻¹ ∘ s ∘ u` the same way rather
/// than substituting `t` into itself.
pub fn conjugate_by(s: &Endo, u: &TameCertificate) -> Result<Involution, InvolutionError> {
    let u_inv = tame::invert(u).map_err(|_| InvolutionError::NotInvertible)?;
    let conj = compose_factors(&Endo::compose(&u_inv, s), &u.factors);
    let back = Endo::compose(&compose_factors(&conj, &u.inverse_factors()), s);
    let square = compose_factors(&back, &u.factors);
    if conj.is_identity() || !square.is_identity() {
        return Err(InvolutionError::NotInvolution);
    }
    let class = crate::involution::class_by_jacobian(&conj)?;
    Ok(Involution { endo: conj, class })
}

/// A Keller map whose first image is α-symmetric (or α-skew), built in the
/// coordinates `s = x + y`, `d = x − y` where α fixes `s` and negates `d`.
///
/// Symmetric: `(s + H(d²), d + K(s + H(d²)))`. Skew: `(c·d, s + K(d))`. Both
/// are then pushed through `σ = (x + G(d²)/2, y + G(d²)/2)`, which commutes
/// with α, and given a mate tweak `q ↦ q + L(p)`.
pub fn random_alpha_symmetric(spec: &GenSpec, skew: bool) -> Endo {
    let mut smp = Sampler::new(*spec, if skew { "alpha_skew" } else { "alpha_symmetric" });
    let (x, y) = (Poly::x(), Poly::y());
    let s = &x + &y;
    let d = &x - &y;
    let d2 = d.pow(2);
    let deg = smp.spec.max_elem_degree.clamp(1, 2);
    let base = if skew {
        let c = smp.nonzero_coeff();
        let k = smp.unipoly(deg);
        Endo::new(d.scale(&c), &s + &k.eval_poly(&d))
    } else {
        let h = smp.unipoly(deg);
        let p = &s + &h.eval_poly(&d2);
        let k = smp.unipoly(deg);
        let q = &d + &k.eval_poly(&p);
        Endo::new(p, q)
    };
    let half = FieldElement::from_ratio(1, 2);
    let g = smp.unipoly(deg).scale(&half).eval_poly(&d2);
    let sigma = Endo::new(&x + &g, &y + &g);
    let pushed = Endo::compose(&sigma, &base);
    let l = smp.unipoly(deg);
    Endo::new(pushed.p.clone(), &pushed.q + &l.eval_poly(&pushed.p))
}

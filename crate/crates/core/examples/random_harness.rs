//! Seeded generators for tame maps and conjugated involutions.

use planemorph::harness::{random_involution, random_keller_with_quadratic_x, random_tame, FieldMode, GenSpec};
use planemorph::involution::Builtin;
use planemorph::tame;

fn main() {
    let spec = GenSpec { seed: 7, factor_count: 3, max_elem_degree: 2, coeff_height: 3, field_mode: FieldMode::Gaussian };
    let (f, cert) = random_tame(&spec);
    println!("tame map: {f}\n  {} factors, verified {}", cert.factors.len(), tame::verify(&cert));

    let (k, _, draws) = random_keller_with_quadratic_x(&spec.with_seed(8)).unwrap();
    println!("first image of degree {} after {draws} draws: {}", k.p.deg(), k.p);

    let s = random_involution(&GenSpec { factor_count: 2, ..spec }, Builtin::Beta).unwrap();
    println!("conjugate of beta, class {}: {}", s.class, s.endo);
}

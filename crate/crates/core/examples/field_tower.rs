//! Exact arithmetic in towers of quadratic extensions.

use planemorph::field::{FieldElement, FieldTower};

fn main() {
    let q = FieldTower::rationals();
    // sqrt(8) reduces to 2*sqrt(2), so only sqrt(2) is adjoined
    let (t, r8) = q.sqrt(&FieldElement::from_i64(8)).unwrap();
    println!("sqrt(8) = {r8} in {t}");

    let (t, i) = t.sqrt(&FieldElement::from_i64(-1)).unwrap();
    println!("tower {t}, degree {}", t.degree());

    let z = &r8 + &i;
    let w = z.inverse().unwrap();
    println!("1/({z}) = {w}");
    assert!((&z * &w).is_one());

    // real mode refuses negative radicands
    println!("sqrt_real(-3): {:?}", q.sqrt_real(&FieldElement::from_i64(-3)).err());
}

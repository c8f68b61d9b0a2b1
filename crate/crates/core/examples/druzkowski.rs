//! Two-dimensional cubic-linear maps (x + l1^3, y + l2^3).

use planemorph::engines::{druzkowski2, LinearForm};
use planemorph::field::FieldElement;

fn form(a: i64, b: i64) -> LinearForm {
    LinearForm::new(FieldElement::from_i64(a), FieldElement::from_i64(b))
}

fn main() {
    for (l1, l2) in [(form(0, 1), LinearForm::zero()), (form(1, 1), form(-1, -1)), (form(0, 1), form(1, 0))] {
        match druzkowski2(&l1, &l2) {
            Ok(d) => println!("{}\n  lambda {}, mu {}\n  inverse {}", d.map, d.lambda, d.mu, d.inverse),
            Err(e) => println!("({}, {}): {e}", l1.poly(), l2.poly()),
        }
    }
}

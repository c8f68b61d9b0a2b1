//! Bounded search for symmetrizing moves.

use planemorph::engines::{symmetrize_search, SearchLimits};
use planemorph::parse::parse_poly;

fn main() {
    let a = parse_poly("x + y^3").unwrap();
    for limits in [SearchLimits::new(1, 3, 1), SearchLimits::new(1, 2, 1)] {
        match symmetrize_search(&a, limits) {
            Ok(r) => println!("{a}: {} steps, witness {} ({}-{}), {} nodes", r.steps.len(), r.witness, r.target, r.symmetry, r.nodes),
            Err(e) => println!("{a} with {limits:?}: {e}"),
        }
    }
}

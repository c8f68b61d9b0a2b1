//! Symmetries read off weighted parities.

use planemorph::engines::parity_classify;
use planemorph::parse::parse_endo;

fn main() {
    for src in ["x -> y; y -> x", "x -> x + y^2; y -> y", "x -> x + y^3; y -> y"] {
        let f = parse_endo(src).unwrap().endo;
        match parity_classify(&f) {
            Ok(out) => {
                for finding in out.findings {
                    println!("{f}: {} => {}-{}", finding.case(), finding.involution, finding.symmetry);
                }
            }
            Err(e) => println!("{f}: {e}"),
        }
    }
}

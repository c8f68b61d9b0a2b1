//! Parsing map text and round-tripping certificates through JSON.

use planemorph::json::CertificateJson;
use planemorph::parse::parse_endo;
use planemorph::tame::decompose;

fn main() {
    let named = parse_endo("f: x -> x + sqrt(2)*y^2; y -> y + i").unwrap();
    println!("{:?} = {}", named.name, named.endo);

    let cert = decompose(&named.endo).unwrap();
    let text = serde_json::to_string_pretty(&CertificateJson::from(&cert)).unwrap();
    println!("{text}");

    let back: CertificateJson = serde_json::from_str(&text).unwrap();
    assert_eq!(back.read().unwrap(), cert);

    if let Err(e) = parse_endo("x -> 2xy; y -> y") {
        println!("{e}");
    }
}

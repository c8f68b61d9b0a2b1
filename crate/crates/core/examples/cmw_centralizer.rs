//! Jacobian centralizers and the alpha-restriction check.

use planemorph::cmw::{alpha_restriction_check, express_in, RestrictionMode};
use planemorph::parse::{parse_endo, parse_poly};

fn main() {
    let a = parse_poly("x + y^3").unwrap();
    let r = parse_poly("(x + y^3)^2 + 5").unwrap();
    let h = express_in(&a, &r).unwrap();
    println!("{r} = H({a}) with H(t) = {}", h.render("t"));

    let f = parse_endo("x -> x - y; y -> -y").unwrap().endo;
    let res = alpha_restriction_check(&f, RestrictionMode::SkewP).unwrap();
    println!("alpha(p) = {}, alpha(q) = {}", res.alpha_p, res.alpha_q);
    println!("H = {}, formal Jacobian {}", res.h.render("t"), res.formal_jacobian);
}

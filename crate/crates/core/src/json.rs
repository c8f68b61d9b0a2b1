//! Serialized forms of maps and certificates.
//!
//! Coefficients travel as canonical text. Anything that may involve radicals
//! carries a `tower` list of radicands (outermost last), which the reader
//! rebuilds first so that `sqrt(2)` in two places names the same generator.
//! Writing, reading and writing again is byte-identical.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::endo::Endo;
use crate::field::{FieldElement, FieldTower};
use crate::parse::{parse_constant_in, parse_poly_in, parse_tower, ParseError};
use crate::poly::{Poly, UniPoly};
use crate::tame::{Factor, TameCertificate};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndoJson {
    pub p: String,
    pub q: String,
}

impl From<&Endo> for EndoJson {
    fn from(f: &Endo) -> Self {
        EndoJson { p: f.p.to_string(), q: f.q.to_string() }
    }
}

impl EndoJson {
    pub fn read(&self, tower: &mut FieldTower) -> Result<Endo, ParseError> {
        Ok(Endo::new(parse_poly_in(&self.p, tower)?, parse_poly_in(&self.q, tower)?))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FactorJson {
    Affine { matrix: [[String; 2]; 2], translation: [String; 2] },
    /// `h` lists coefficients from degree 0 up.
    ElementaryX { h: Vec<String>, scale: String },
    ElementaryY { h: Vec<String>, scale: String },
}

fn uni_strings(h: &UniPoly) -> Vec<String> {
    h.coeffs().iter().map(ToString::to_string).collect()
}

impl From<&Factor> for FactorJson {
    fn from(f: &Factor) -> Self {
        let s = |c: &FieldElement| c.to_string();
        match f {
            Factor::Affine { matrix: m, translation: t } => FactorJson::Affine {
                matrix: [[s(&m[0][0]), s(&m[0][1])], [s(&m[1][0]), s(&m[1][1])]],
                translation: [s(&t[0]), s(&t[1])],
            },
            Factor::ElementaryX { h, scale } => FactorJson::ElementaryX { h: uni_strings(h), scale: s(scale) },
            Factor::ElementaryY { h, scale } => FactorJson::ElementaryY { h: uni_strings(h), scale: s(scale) },
        }
    }
}

impl FactorJson {
    pub fn read(&self, tower: &mut FieldTower) -> Result<Factor, ParseError> {
        let uni = |h: &[String], tower: &mut FieldTower| -> Result<UniPoly, ParseError> {
            Ok(UniPoly::new(h.iter().map(|s| parse_constant_in(s, tower)).collect::<Result<_, _>>()?))
        };
        Ok(match self {
            FactorJson::Affine { matrix: m, translation: t } => {
                let mut c = |s: &String| parse_constant_in(s, tower);
                Factor::Affine {
                    matrix: [[c(&m[0][0])?, c(&m[0][1])?], [c(&m[1][0])?, c(&m[1][1])?]],
                    translation: [c(&t[0])?, c(&t[1])?],
                }
            }
            FactorJson::ElementaryX { h, scale } => {
                let scale = parse_constant_in(scale, tower)?;
                Factor::ElementaryX { h: uni(h, tower)?, scale }
            }
            FactorJson::ElementaryY { h, scale } => {
                let scale = parse_constant_in(scale, tower)?;
                Factor::ElementaryY { h: uni(h, tower)?, scale }
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub tower: Vec<String>,
    pub subject: EndoJson,
    pub factors: Vec<FactorJson>,
}

impl From<&TameCertificate> for CertificateJson {
    fn from(c: &TameCertificate) -> Self {
        let tower = c
            .factors
            .iter()
            .flat_map(|f| {
                let e = f.to_endo();
                [e.p, e.q]
            })
            .chain([c.subject.p.clone(), c.subject.q.clone()])
            .fold(FieldTower::rationals(), |t, p| join_poly(&t, &p));
        CertificateJson {
            tower: tower_strings(&tower),
            subject: (&c.subject).into(),
            factors: c.factors.iter().map(FactorJson::from).collect(),
        }
    }
}

impl CertificateJson {
    pub fn read(&self) -> Result<TameCertificate, ParseError> {
        let mut tower = parse_tower(&self.tower)?;
        let subject = self.subject.read(&mut tower)?;
        let factors = self.factors.iter().map(|f| f.read(&mut tower)).collect::<Result<_, _>>()?;
        Ok(TameCertificate { factors, subject })
    }
}

fn join_poly(t: &FieldTower, p: &Poly) -> FieldTower {
    p.tower().and_then(|pt| t.join(&pt)).unwrap_or_else(|_| t.clone())
}

pub fn tower_strings(t: &FieldTower) -> Vec<String> {
    t.radicands().iter().map(ToString::to_string).collect()
}

/// Smallest tower holding every coefficient of `polys`.
pub fn tower_of<'a>(polys: impl IntoIterator<Item = &'a Poly>) -> FieldTower {
    polys.into_iter().fold(FieldTower::rationals(), |t, p| join_poly(&t, p))
}

pub fn endo_value(f: &Endo) -> Value {
    json!({ "p": f.p.to_string(), "q": f.q.to_string() })
}

pub fn certificate_value(c: &TameCertificate) -> Value {
    serde_json::to_value(CertificateJson::from(c)).expect("certificate serializes")
}

pub fn factors_value(factors: &[Factor]) -> Value {
    serde_json::to_value(factors.iter().map(FactorJson::from).collect::<Vec<_>>()).expect("factors serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_endo;
    use crate::tame::decompose;

    #[test]
    fn certificate_round_trip() {
        for src in [
            "x -> x + y^2; y -> y",
            "x -> 2*x + y^3 + 1; y -> y + (2*x + y^3)^2",
            "x -> y + sqrt(2)*x^2; y -> x",
            "x -> i*x + (y + x^2)^2; y -> y + x^2",
        ] {
            let f = parse_endo(src).unwrap().endo;
            let cert = decompose(&f).unwrap();
            let text = serde_json::to_string(&CertificateJson::from(&cert)).unwrap();
            let back: CertificateJson = serde_json::from_str(&text).unwrap();
            let cert2 = back.read().unwrap();
            assert_eq!(cert2, cert);
            assert_eq!(serde_json::to_string(&CertificateJson::from(&cert2)).unwrap(), text);
        }
    }

    #[test]
    fn factor_tags() {
        let v = factors_value(&[Factor::exchange()]);
        assert_eq!(v[0]["kind"], "affine");
        assert_eq!(v[0]["matrix"][0][1], "1");
    }
}

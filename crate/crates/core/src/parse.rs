//! Polynomial expressions and the map text format.
//!
//! ```text
//! expr    = term { ("+" | "-") term } ;
//! term    = unary { ("*" | "/") unary } ;
//! unary   = "-" unary | power ;
//! power   = atom [ "^" natural ] ;
//! atom    = natural | "x" | "y" | "i" | "sqrt" "(" expr ")" | "(" expr ")" ;
//! map     = [ name ":" ] "x" "->" expr ";" "y" "->" expr ;
//! ```
//!
//! Multiplication is always explicit; `2xy` is a syntax error. Division and
//! `sqrt` only accept constant operands.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::endo::Endo;
use crate::field::{FieldElement, FieldError, FieldTower};
use crate::poly::Poly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at {position}: expected {expected}")]
    SyntaxError { position: usize, expected: String },
    #[error("sqrt at {0} applied to a non-constant expression")]
    SqrtOfNonConstant(usize),
    #[error("division at {0} by a non-constant expression")]
    DivisionByNonConstant(usize),
    #[error("exponent at {0} is too large")]
    ExponentTooLarge(usize),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Num(BigInt),
    X,
    Y,
    I,
    /// Position of the `sqrt` keyword and its argument.
    Sqrt(usize, Box<Expr>),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    /// Position of the `/` token.
    Div(usize, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Paren(Box<Expr>),
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(n) => write!(f, "{n}"),
            Expr::X => write!(f, "x"),
            Expr::Y => write!(f, "y"),
            Expr::I => write!(f, "i"),
            Expr::Sqrt(_, e) => write!(f, "sqrt({e})"),
            Expr::Neg(e) => write!(f, "-{e}"),
            Expr::Add(a, b) => write!(f, "{a} + {b}"),
            Expr::Sub(a, b) => write!(f, "{a} - {b}"),
            Expr::Mul(a, b) => write!(f, "{a}*{b}"),
            Expr::Div(_, a, b) => write!(f, "{a}/{b}"),
            Expr::Pow(a, n) => write!(f, "{a}^{n}"),
            Expr::Paren(e) => write!(f, "({e})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
    Arrow,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let (pos, ch) = chars[k];
        if ch.is_whitespace() {
            k += 1;
        } else if ch.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].1.is_ascii_digit() {
                k += 1;
            }
            let text: String = chars[start..k].iter().map(|c| c.1).collect();
            out.push((pos, Tok::Num(text.parse().expect("digits"))));
        } else if ch.is_ascii_alphabetic() || ch == '_' {
            let start = k;
            while k < chars.len() && (chars[k].1.is_ascii_alphanumeric() || chars[k].1 == '_') {
                k += 1;
            }
            out.push((pos, Tok::Ident(chars[start..k].iter().map(|c| c.1).collect())));
        } else if ch == '-' && chars.get(k + 1).map(|c| c.1) == Some('>') {
            out.push((pos, Tok::Arrow));
            k += 2;
        } else if "+-*/^();:".contains(ch) {
            out.push((pos, Tok::Sym(ch)));
            k += 1;
        } else {
            return Err(ParseError::SyntaxError { position: pos, expected: format!("a token, found '{ch}'") });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            Err(self.error(&format!("'{c}'")))
        }
    }

    fn error(&self, expected: &str) -> ParseError {
        let found = match self.peek() {
            None => "end of input".to_string(),
            Some(Tok::Num(n)) => format!("'{n}'"),
            Some(Tok::Ident(s)) => format!("'{s}'"),
            Some(Tok::Sym(c)) => format!("'{c}'"),
            Some(Tok::Arrow) => "'->'".to_string(),
        };
        ParseError::SyntaxError { position: self.pos(), expected: format!("{expected}, found {found}") }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat_sym('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat_sym('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat_sym('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.peek() == Some(&Tok::Sym('/')) {
                let pos = self.pos();
                self.at += 1;
                lhs = Expr::Div(pos, Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat_sym('-') {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if !self.eat_sym('^') {
            return Ok(base);
        }
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.at += 1;
                let e = u32::try_from(n).ok().filter(|&e| e <= 10_000).ok_or(ParseError::ExponentTooLarge(pos))?;
                Ok(Expr::Pow(Box::new(base), e))
            }
            _ => Err(self.error("a natural exponent")),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.at += 1;
                Ok(Expr::Num(n))
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                match name.as_str() {
                    "x" => Ok(Expr::X),
                    "y" => Ok(Expr::Y),
                    "i" => Ok(Expr::I),
                    "sqrt" => {
                        self.expect_sym('(')?;
                        let inner = self.expr()?;
                        self.expect_sym(')')?;
                        Ok(Expr::Sqrt(pos, Box::new(inner)))
                    }
                    _ => Err(ParseError::SyntaxError {
                        position: pos,
                        expected: format!("x, y, i, sqrt or a number, found '{name}'"),
                    }),
                }
            }
            Some(Tok::Sym('(')) => {
                self.at += 1;
                let inner = self.expr()?;
                self.expect_sym(')')?;
                Ok(Expr::Paren(Box::new(inner)))
            }
            _ => Err(self.error("an expression")),
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        if self.at == self.toks.len() {
            Ok(())
        } else {
            Err(self.error("an operator or end of input"))
        }
    }
}

pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { toks: lex(src)?, at: 0, end: src.len() };
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

/// Lowers an expression to a polynomial. Square roots extend `tower`, so
/// parsing several polynomials with one context keeps their coefficients
/// in compatible towers.
pub fn lower(e: &Expr, tower: &mut FieldTower) -> Result<Poly, ParseError> {
    Ok(match e {
        Expr::Num(n) => Poly::constant(FieldElement::from_rational(BigRational::from_integer(n.clone()))),
        Expr::X => Poly::x(),
        Expr::Y => Poly::y(),
        Expr::I => Poly::constant(sqrt_in(tower, &FieldElement::from_i64(-1))?),
        Expr::Sqrt(pos, inner) => {
            let d = lower(inner, tower)?.as_constant().ok_or(ParseError::SqrtOfNonConstant(*pos))?;
            Poly::constant(sqrt_in(tower, &d)?)
        }
        Expr::Neg(a) => -&lower(a, tower)?,
        Expr::Add(a, b) => &lower(a, tower)? + &lower(b, tower)?,
        Expr::Sub(a, b) => &lower(a, tower)? - &lower(b, tower)?,
        Expr::Mul(a, b) => &lower(a, tower)? * &lower(b, tower)?,
        Expr::Div(pos, a, b) => {
            let num = lower(a, tower)?;
            let den = lower(b, tower)?.as_constant().ok_or(ParseError::DivisionByNonConstant(*pos))?;
            num.scale(&den.inverse()?)
        }
        Expr::Pow(a, n) => lower(a, tower)?.pow(*n),
        Expr::Paren(a) => lower(a, tower)?,
    })
}

fn sqrt_in(tower: &mut FieldTower, d: &FieldElement) -> Result<FieldElement, ParseError> {
    if d.is_zero() {
        return Ok(FieldElement::zero());
    }
    let (t, root) = tower.join(d.tower())?.sqrt(d)?;
    *tower = t;
    Ok(root)
}

pub fn parse_poly_in(src: &str, tower: &mut FieldTower) -> Result<Poly, ParseError> {
    lower(&parse(src)?, tower)
}

pub fn parse_poly(src: &str) -> Result<Poly, ParseError> {
    parse_poly_in(src, &mut FieldTower::rationals())
}

/// A constant expression such as `3/4` or `1 + sqrt(2)`.
pub fn parse_constant_in(src: &str, tower: &mut FieldTower) -> Result<FieldElement, ParseError> {
    let e = parse(src)?;
    lower(&e, tower)?
        .as_constant()
        .ok_or_else(|| ParseError::SyntaxError { position: 0, expected: "a constant expression".into() })
}

/// A named map, as written in map text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedEndo {
    pub name: Option<String>,
    pub endo: Endo,
}

/// Parses `[name:] x -> P; y -> Q`.
pub fn parse_endo_in(src: &str, tower: &mut FieldTower) -> Result<NamedEndo, ParseError> {
    let mut p = Parser { toks: lex(src)?, at: 0, end: src.len() };
    let name = match (p.toks.first(), p.toks.get(1)) {
        (Some((_, Tok::Ident(n))), Some((_, Tok::Sym(':')))) => {
            p.at = 2;
            Some(n.clone())
        }
        _ => None,
    };
    let mut image = |p: &mut Parser, var: &str| -> Result<Poly, ParseError> {
        match p.peek() {
            Some(Tok::Ident(v)) if v == var => p.at += 1,
            _ => return Err(p.error(&format!("'{var}'"))),
        }
        if p.peek() != Some(&Tok::Arrow) {
            return Err(p.error("'->'"));
        }
        p.at += 1;
        let e = p.expr()?;
        lower(&e, tower)
    };
    let px = image(&mut p, "x")?;
    p.expect_sym(';')?;
    let qy = image(&mut p, "y")?;
    p.eat_sym(';');
    p.finish()?;
    Ok(NamedEndo { name, endo: Endo::new(px, qy) })
}

pub fn parse_endo(src: &str) -> Result<NamedEndo, ParseError> {
    parse_endo_in(src, &mut FieldTower::rationals())
}

/// Rebuilds a tower from its radicand texts, in order.
pub fn parse_tower(radicands: &[String]) -> Result<FieldTower, ParseError> {
    let mut tower = FieldTower::rationals();
    for r in radicands {
        let d = parse_constant_in(r, &mut tower)?;
        tower = tower.adjoin(&d)?;
    }
    Ok(tower)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> FieldElement {
        FieldElement::from_i64(n)
    }

    #[test]
    fn precedence() {
        let p = parse_poly("x + 2*y^3").unwrap();
        assert_eq!(p, &Poly::x() + &Poly::y().pow(3).scale(&c(2)));
        assert_eq!(parse_poly("-x^2").unwrap(), -&Poly::x().pow(2));
        assert_eq!(parse_poly("2 - 3 - 4").unwrap(), Poly::constant(c(-5)));
        assert_eq!(parse_poly("12/3/2").unwrap(), Poly::constant(c(2)));
    }

    #[test]
    fn half_sum() {
        let p = parse_poly("(1/2)*(x+y)").unwrap();
        assert_eq!(p, (&Poly::x() + &Poly::y()).scale(&FieldElement::from_ratio(1, 2)));
    }

    #[test]
    fn radicals() {
        assert_eq!(parse_poly("sqrt(x)"), Err(ParseError::SqrtOfNonConstant(0)));
        let mut t = FieldTower::rationals();
        let p = parse_poly_in("sqrt(8)*x + i", &mut t).unwrap();
        assert_eq!(t.to_string(), "Q(sqrt(2))(i)");
        assert_eq!(p.coeff(1, 0).to_string(), "2*sqrt(2)");
        assert_eq!(parse_poly("sqrt(4)").unwrap(), Poly::constant(c(2)));
        assert_eq!(parse_poly("i^2").unwrap(), Poly::constant(c(-1)));
    }

    #[test]
    fn rejects_implicit_multiplication() {
        match parse_poly("2xy") {
            Err(ParseError::SyntaxError { position, .. }) => assert_eq!(position, 1),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_poly("x / y"), Err(ParseError::DivisionByNonConstant(2))));
        assert!(matches!(parse_poly("x +"), Err(ParseError::SyntaxError { position: 3, .. })));
        assert!(matches!(parse_poly("z"), Err(ParseError::SyntaxError { position: 0, .. })));
        assert!(matches!(parse_poly("x^y"), Err(ParseError::SyntaxError { position: 2, .. })));
        assert!(matches!(parse_poly("1/0"), Err(ParseError::Field(FieldError::DivisionByZero))));
    }

    #[test]
    fn maps() {
        let m = parse_endo("g: x -> (1/2)*(x + y); y -> y - x").unwrap();
        assert_eq!(m.name.as_deref(), Some("g"));
        assert_eq!(m.endo.q, &Poly::y() - &Poly::x());
        let plain = parse_endo("x -> y; y -> x").unwrap();
        assert_eq!(plain.endo, Endo::exchange());
        assert_eq!(parse_endo(&plain.endo.to_string()).unwrap().endo, plain.endo);
        assert!(parse_endo("x -> y").is_err());
    }

    #[test]
    fn towers_round_trip() {
        let mut t = FieldTower::rationals();
        parse_poly_in("sqrt(3) + i + sqrt(1 + 2*i)", &mut t).unwrap();
        let texts: Vec<String> = t.radicands().iter().map(|r| r.to_string()).collect();
        assert_eq!(parse_tower(&texts).unwrap(), t);
    }
}

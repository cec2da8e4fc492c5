//! Polynomial expression syntax: signed sums of products of names, integers
//! and `^k` powers. Parsed into an AST that is evaluated against any target
//! that implements [`ExprTarget`] (plain polynomials, algebra elements).
//!
//! ```text
//! sum     = [ "+" | "-" ] product { ( "+" | "-" ) product }
//! product = power { "*" power }
//! power   = primary [ "^" integer ]
//! primary = integer | name | "(" sum ")"
//! ```

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::lexer::{Cursor, ParseError, Pos, TokenKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyExpr {
    Int(BigInt),
    Name(String),
    /// Signed terms; `true` marks a subtracted term.
    Sum(Vec<(bool, PolyExpr)>),
    Product(Vec<PolyExpr>),
    Pow(Box<PolyExpr>, u32),
}

/// Anything a [`PolyExpr`] can be evaluated into.
pub trait ExprTarget {
    type Value: Clone;
    type Error;

    fn int(&self, n: &BigInt) -> Self::Value;
    fn name(&self, name: &str, pos: Pos) -> Result<Self::Value, Self::Error>;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn neg(&self, a: &Self::Value) -> Self::Value;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
}

impl PolyExpr {
    pub fn parse(src: &str) -> Result<PolyExpr, ParseError> {
        let mut cur = Cursor::new(src)?;
        let e = parse_sum(&mut cur)?;
        cur.expect_eof()?;
        Ok(e)
    }

    /// Evaluates the expression. Name positions are not tracked in the AST,
    /// so `origin` is reported for unresolved names.
    pub fn eval<T: ExprTarget>(&self, target: &T, origin: Pos) -> Result<T::Value, T::Error> {
        match self {
            PolyExpr::Int(n) => Ok(target.int(n)),
            PolyExpr::Name(s) => target.name(s, origin),
            PolyExpr::Sum(terms) => {
                let mut acc = target.int(&BigInt::from(0));
                for (neg, t) in terms {
                    let v = t.eval(target, origin)?;
                    let v = if *neg { target.neg(&v) } else { v };
                    acc = target.add(&acc, &v);
                }
                Ok(acc)
            }
            PolyExpr::Product(fs) => {
                let mut acc = target.int(&BigInt::from(1));
                for f in fs {
                    let v = f.eval(target, origin)?;
                    acc = target.mul(&acc, &v);
                }
                Ok(acc)
            }
            PolyExpr::Pow(base, k) => {
                let b = base.eval(target, origin)?;
                let mut acc = target.int(&BigInt::from(1));
                for _ in 0..*k {
                    acc = target.mul(&acc, &b);
                }
                Ok(acc)
            }
        }
    }
}

pub(crate) fn parse_sum(cur: &mut Cursor) -> Result<PolyExpr, ParseError> {
    let mut terms = Vec::new();
    let mut neg = false;
    if cur.eat(&TokenKind::Minus) {
        neg = true;
    } else {
        cur.eat(&TokenKind::Plus);
    }
    terms.push((neg, parse_product(cur)?));
    loop {
        if cur.eat(&TokenKind::Plus) {
            terms.push((false, parse_product(cur)?));
        } else if cur.eat(&TokenKind::Minus) {
            terms.push((true, parse_product(cur)?));
        } else {
            break;
        }
    }
    if terms.len() == 1 && !terms[0].0 {
        return Ok(terms.pop().unwrap().1);
    }
    Ok(PolyExpr::Sum(terms))
}

fn parse_product(cur: &mut Cursor) -> Result<PolyExpr, ParseError> {
    let mut factors = alloc::vec![parse_power(cur)?];
    while cur.eat(&TokenKind::Star) {
        factors.push(parse_power(cur)?);
    }
    if factors.len() == 1 {
        Ok(factors.pop().unwrap())
    } else {
        Ok(PolyExpr::Product(factors))
    }
}

fn parse_power(cur: &mut Cursor) -> Result<PolyExpr, ParseError> {
    let base = parse_primary(cur)?;
    if cur.eat(&TokenKind::Caret) {
        let t = cur.bump();
        match t.kind {
            TokenKind::Int(n) => {
                let k = n
                    .to_u32()
                    .ok_or_else(|| ParseError::new(t.pos, "exponent out of range"))?;
                Ok(PolyExpr::Pow(Box::new(base), k))
            }
            other => Err(ParseError::expecting(
                t.pos,
                alloc::format!("found {}", other.describe()),
                &["exponent integer"],
            )),
        }
    } else {
        Ok(base)
    }
}

fn parse_primary(cur: &mut Cursor) -> Result<PolyExpr, ParseError> {
    let t = cur.bump();
    match t.kind {
        TokenKind::Int(n) => Ok(PolyExpr::Int(n)),
        TokenKind::Ident(s) => Ok(PolyExpr::Name(s)),
        TokenKind::LParen => {
            let inner = parse_sum(cur)?;
            cur.expect(TokenKind::RParen, "`)`")?;
            Ok(inner)
        }
        other => Err(ParseError::expecting(
            t.pos,
            alloc::format!("found {}", other.describe()),
            &["integer", "name", "`(`"],
        )),
    }
}

impl fmt::Display for PolyExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyExpr::Int(n) => write!(f, "{}", n),
            PolyExpr::Name(s) => f.write_str(s),
            PolyExpr::Sum(terms) => {
                for (idx, (neg, t)) in terms.iter().enumerate() {
                    match (idx, neg) {
                        (0, true) => f.write_str("-")?,
                        (0, false) => {}
                        (_, true) => f.write_str(" - ")?,
                        (_, false) => f.write_str(" + ")?,
                    }
                    if matches!(t, PolyExpr::Sum(_)) {
                        write!(f, "({})", t)?;
                    } else {
                        write!(f, "{}", t)?;
                    }
                }
                Ok(())
            }
            PolyExpr::Product(fs) => {
                for (idx, x) in fs.iter().enumerate() {
                    if idx > 0 {
                        f.write_str("*")?;
                    }
                    if matches!(x, PolyExpr::Sum(_) | PolyExpr::Product(_)) {
                        write!(f, "({})", x)?;
                    } else {
                        write!(f, "{}", x)?;
                    }
                }
                Ok(())
            }
            PolyExpr::Pow(base, k) => {
                if matches!(**base, PolyExpr::Int(_) | PolyExpr::Name(_)) {
                    write!(f, "{}^{}", base, k)
                } else {
                    write!(f, "({})^{}", base, k)
                }
            }
        }
    }
}

impl PolyExpr {
    pub fn to_source(&self) -> String {
        self.to_string()
    }
}

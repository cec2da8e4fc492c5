//! Exact arithmetic in `Z[g1, ..., gk]`.
//!
//! A [`MultiPoly`] is a sparse map from exponent vectors to nonzero
//! arbitrary-precision integers, tagged with the ordered generator list of
//! the ring it lives in. Every constructor returns the canonical form, so
//! structural equality is polynomial equality.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::lexer::{ParseError, Pos};
use crate::polyexpr::{ExprTarget, PolyExpr};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingError {
    GeneratorMismatch {
        left: Vec<String>,
        right: Vec<String>,
    },
    ExponentLength {
        expected: usize,
        found: usize,
    },
    DuplicateGenerator(String),
    UnknownGenerator(String),
    NotDivisible,
}

impl fmt::Display for RingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingError::GeneratorMismatch { left, right } => write!(
                f,
                "generator lists differ: [{}] vs [{}]",
                left.join(","),
                right.join(",")
            ),
            RingError::ExponentLength { expected, found } => write!(
                f,
                "exponent vector has length {}, ring has {} generators",
                found, expected
            ),
            RingError::DuplicateGenerator(g) => write!(f, "duplicate generator `{}`", g),
            RingError::UnknownGenerator(g) => write!(f, "unknown generator `{}`", g),
            RingError::NotDivisible => {
                f.write_str("coefficient not divisible by the given integer")
            }
        }
    }
}

impl core::error::Error for RingError {}

/// The ordered generator names of a coefficient ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generators(Arc<[String]>);

impl Generators {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self, RingError> {
        let mut seen: Vec<String> = Vec::with_capacity(names.len());
        for n in names {
            let n = n.as_ref().to_string();
            if seen.contains(&n) {
                return Err(RingError::DuplicateGenerator(n));
            }
            seen.push(n);
        }
        Ok(Generators(seen.into()))
    }

    /// The ring `Z` with no generators.
    pub fn integers() -> Self {
        Generators(Arc::from(Vec::<String>::new()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|g| g == name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    gens: Generators,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl MultiPoly {
    pub fn zero(gens: &Generators) -> Self {
        MultiPoly {
            gens: gens.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(gens: &Generators) -> Self {
        Self::constant(gens, 1)
    }

    pub fn constant(gens: &Generators, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; gens.len()], c);
        }
        MultiPoly {
            gens: gens.clone(),
            terms,
        }
    }

    pub fn generator(gens: &Generators, name: &str) -> Result<Self, RingError> {
        let idx = gens
            .index_of(name)
            .ok_or_else(|| RingError::UnknownGenerator(name.to_string()))?;
        let mut exps = vec![0; gens.len()];
        exps[idx] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(exps, BigInt::one());
        Ok(MultiPoly {
            gens: gens.clone(),
            terms,
        })
    }

    /// Builds the canonical polynomial from raw `(exponents, coefficient)`
    /// pairs: duplicates are summed, zero coefficients dropped.
    pub fn from_terms<I>(gens: &Generators, terms: I) -> Result<Self, RingError>
    where
        I: IntoIterator<Item = (Vec<u32>, BigInt)>,
    {
        let mut out = MultiPoly::zero(gens);
        for (exps, c) in terms {
            if exps.len() != gens.len() {
                return Err(RingError::ExponentLength {
                    expected: gens.len(),
                    found: exps.len(),
                });
            }
            out.add_term(exps, c);
        }
        Ok(out)
    }

    /// Parses the textual syntax (`a^2 + b`, `-3`, `2*a*b`).
    pub fn parse(gens: &Generators, src: &str) -> Result<Self, ParseError> {
        let expr = PolyExpr::parse(src)?;
        expr.eval(&PolyTarget(gens), Pos::new(1, 1))
    }

    fn add_term(&mut self, exps: Vec<u32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&exps);
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn generators(&self) -> &Generators {
        &self.gens
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigInt)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The integer value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// `Some(±1)` when the polynomial is a unit of `Z[g1..gk]`.
    pub fn unit_sign(&self) -> Option<i8> {
        let c = self.as_constant()?;
        if c.is_one() {
            Some(1)
        } else if c == BigInt::from(-1) {
            Some(-1)
        } else {
            None
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    fn check_same(&self, other: &Self) -> Result<(), RingError> {
        if self.gens == other.gens {
            Ok(())
        } else {
            Err(RingError::GeneratorMismatch {
                left: self.gens.names().to_vec(),
                right: other.gens.names().to_vec(),
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, RingError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, RingError> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, RingError> {
        self.check_same(other)?;
        let mut out = MultiPoly::zero(&self.gens);
        if self.is_zero() || other.is_zero() {
            return Ok(out);
        }
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return MultiPoly::zero(&self.gens);
        }
        MultiPoly {
            gens: self.gens.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    /// Coefficient-wise exact division by an integer.
    pub fn div_exact(&self, k: &BigInt) -> Result<Self, RingError> {
        if k.is_zero() {
            return Err(RingError::NotDivisible);
        }
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if !(c % k).is_zero() {
                return Err(RingError::NotDivisible);
            }
            terms.insert(e.clone(), c / k);
        }
        Ok(MultiPoly {
            gens: self.gens.clone(),
            terms,
        })
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = MultiPoly::one(&self.gens);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Re-expresses the polynomial over a larger generator list, matching
    /// generators by name.
    pub fn embed(&self, target: &Generators) -> Result<Self, RingError> {
        if &self.gens == target {
            return Ok(self.clone());
        }
        let map: Vec<usize> = self
            .gens
            .names()
            .iter()
            .map(|g| {
                target
                    .index_of(g)
                    .ok_or_else(|| RingError::UnknownGenerator(g.clone()))
            })
            .collect::<Result<_, _>>()?;
        let mut out = MultiPoly::zero(target);
        for (e, c) in &self.terms {
            let mut ne = vec![0; target.len()];
            for (src, &dst) in map.iter().enumerate() {
                ne[dst] = e[src];
            }
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }

    fn fmt_monomial(&self, exps: &[u32], f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (name, &k) in self.gens.names().iter().zip(exps) {
            if k == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if k == 1 {
                f.write_str(name)?;
            } else {
                write!(f, "{}^{}", name, k)?;
            }
        }
        Ok(())
    }
}

/// Terms are printed in descending exponent-vector order, constant last.
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (idx, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let constant = e.iter().all(|&x| x == 0);
            if constant {
                write!(f, "{}", abs)?;
            } else if abs.is_one() {
                self.fmt_monomial(e, f)?;
            } else {
                write!(f, "{}*", abs)?;
                self.fmt_monomial(e, f)?;
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl $tr<&MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            /// Panics if the operands live in different rings; use the
            /// `try_*` form when that is not guaranteed.
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                self.$inner(rhs).unwrap_or_else(|e| panic!("{}", e))
            }
        }
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            gens: self.gens.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

struct PolyTarget<'a>(&'a Generators);

impl ExprTarget for PolyTarget<'_> {
    type Value = MultiPoly;
    type Error = ParseError;

    fn int(&self, n: &BigInt) -> MultiPoly {
        MultiPoly::constant(self.0, n.clone())
    }

    fn name(&self, name: &str, pos: Pos) -> Result<MultiPoly, ParseError> {
        MultiPoly::generator(self.0, name)
            .map_err(|_| ParseError::new(pos, alloc::format!("unknown generator `{}`", name)))
    }

    fn add(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        a + b
    }

    fn neg(&self, a: &MultiPoly) -> MultiPoly {
        -a
    }

    fn mul(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        a * b
    }
}

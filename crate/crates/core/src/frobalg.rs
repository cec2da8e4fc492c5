//! Finite-rank commutative Frobenius algebras over `Z[g1..gk]`, presented by
//! a multiplication table on a chosen basis and a counit vector.
//!
//! Construction validates the table (commutative, associative, unital) and
//! eagerly derives the Gram matrix `gram[i][j] = ε(e_i e_j)`, the dual basis
//! `{y_i}` with `ε(e_i y_j) = δ_ij`, and `Δ(1) = Σ_i y_i ⊗ e_i`. The dual
//! basis comes from the adjugate of the Gram matrix, so the Gram determinant
//! must be `±1` for everything to stay inside the coefficient ring.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Signed;

use crate::coeffring::{Generators, MultiPoly, RingError};
use crate::lexer::{ParseError, Pos};
use crate::matrix::PolyMatrix;
use crate::polyexpr::{ExprTarget, PolyExpr};
use crate::tensor::TensorElement;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FrobError {
    RankMismatch {
        expected: usize,
        found: usize,
    },
    NotMonic,
    EmptyModulus,
    CounitLength {
        expected: usize,
        found: usize,
    },
    /// Gram determinant is not `±1`; the rendered determinant is attached.
    Degenerate {
        determinant: String,
    },
    NotCommutative {
        i: usize,
        j: usize,
    },
    NotAssociative {
        i: usize,
        j: usize,
        k: usize,
    },
    NoUnit,
    SymbolClash(String),
    Ring(RingError),
}

impl fmt::Display for FrobError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FrobError::RankMismatch { expected, found } => {
                write!(f, "rank mismatch: expected {}, found {}", expected, found)
            }
            FrobError::NotMonic => f.write_str("modulus is not monic"),
            FrobError::EmptyModulus => f.write_str("modulus must have degree at least 1"),
            FrobError::CounitLength { expected, found } => write!(
                f,
                "counit has {} entries, algebra has rank {}",
                found, expected
            ),
            FrobError::Degenerate { determinant } => write!(
                f,
                "degenerate or non-unimodular Frobenius form (Gram determinant {})",
                determinant
            ),
            FrobError::NotCommutative { i, j } => {
                write!(f, "multiplication table not commutative at ({}, {})", i, j)
            }
            FrobError::NotAssociative { i, j, k } => {
                write!(
                    f,
                    "multiplication table not associative at ({}, {}, {})",
                    i, j, k
                )
            }
            FrobError::NoUnit => f.write_str("declared unit is not a two-sided identity"),
            FrobError::SymbolClash(s) => {
                write!(
                    f,
                    "symbol `{}` is both a basis symbol and a coefficient generator",
                    s
                )
            }
            FrobError::Ring(e) => write!(f, "{}", e),
        }
    }
}

impl core::error::Error for FrobError {}

impl From<RingError> for FrobError {
    fn from(e: RingError) -> Self {
        FrobError::Ring(e)
    }
}

/// Coefficient vector of an element in the algebra basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    coeffs: Vec<MultiPoly>,
}

impl AlgebraElement {
    pub fn zero(gens: &Generators, rank: usize) -> Self {
        AlgebraElement {
            coeffs: alloc::vec![MultiPoly::zero(gens); rank],
        }
    }

    pub fn basis(gens: &Generators, rank: usize, i: usize) -> Self {
        let mut e = Self::zero(gens, rank);
        e.coeffs[i] = MultiPoly::one(gens);
        e
    }

    /// Panics on an empty vector: elements need a rank and a ring.
    pub fn from_coeffs(coeffs: Vec<MultiPoly>) -> Self {
        assert!(!coeffs.is_empty(), "algebra element needs rank >= 1");
        AlgebraElement { coeffs }
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn generators(&self) -> &Generators {
        self.coeffs[0].generators()
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &MultiPoly {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(MultiPoly::is_zero)
    }

    pub fn scale(&self, k: &MultiPoly) -> Self {
        AlgebraElement {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }
}

impl Add<&AlgebraElement> for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        assert_eq!(self.rank(), rhs.rank(), "rank mismatch");
        AlgebraElement {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub<&AlgebraElement> for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        assert_eq!(self.rank(), rhs.rank(), "rank mismatch");
        AlgebraElement {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        AlgebraElement {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// Appends `c * label` to a signed sum. With `keep_label == false` a label
/// of `"1"` is dropped and `c` is spread term by term.
pub(crate) fn push_scaled_term(out: &mut String, c: &MultiPoly, label: &str, keep_label: bool) {
    if c.is_zero() {
        return;
    }
    let gens = c.generators();
    if !keep_label && label == "1" {
        let mut terms: Vec<(Vec<u32>, BigInt)> =
            c.terms().map(|(e, k)| (e.to_vec(), k.clone())).collect();
        terms.reverse();
        for (e, k) in terms {
            let single = MultiPoly::from_terms(gens, [(e, k)]).unwrap();
            push_scaled_term(out, &single, "", false);
        }
        return;
    }
    let first = out.is_empty();
    if c.num_terms() == 1 {
        let (e, k) = c.terms().next().unwrap();
        let abs = MultiPoly::from_terms(gens, [(e.to_vec(), k.abs())]).unwrap();
        let neg = k.is_negative();
        match (first, neg) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        if label.is_empty() {
            out.push_str(&abs.to_string());
        } else if abs.is_one() {
            out.push_str(label);
        } else {
            out.push_str(&abs.to_string());
            out.push('*');
            out.push_str(label);
        }
    } else {
        if !first {
            out.push_str(" + ");
        }
        out.push('(');
        out.push_str(&c.to_string());
        out.push(')');
        if !label.is_empty() {
            out.push('*');
            out.push_str(label);
        }
    }
}

#[derive(Clone, Debug)]
pub struct FrobeniusAlgebra {
    gens: Generators,
    labels: Vec<String>,
    symbols: Vec<(String, AlgebraElement)>,
    /// Row-major `n × n` table of basis products.
    mult: Vec<AlgebraElement>,
    counit: Vec<MultiPoly>,
    unit: usize,
    gram: PolyMatrix,
    dual: Vec<AlgebraElement>,
    delta_one: TensorElement,
}

impl FrobeniusAlgebra {
    /// Builds an algebra from a basis multiplication table.
    ///
    /// `symbols` name algebra elements usable in element expressions (for
    /// example `X` or group generators); coefficient generators are always
    /// usable as scalars.
    pub fn from_table(
        gens: &Generators,
        labels: Vec<String>,
        symbols: Vec<(String, AlgebraElement)>,
        mult: Vec<Vec<AlgebraElement>>,
        counit: Vec<MultiPoly>,
        unit: usize,
    ) -> Result<Self, FrobError> {
        let n = labels.len();
        if n == 0 {
            return Err(FrobError::RankMismatch {
                expected: 1,
                found: 0,
            });
        }
        if mult.len() != n {
            return Err(FrobError::RankMismatch {
                expected: n,
                found: mult.len(),
            });
        }
        if counit.len() != n {
            return Err(FrobError::CounitLength {
                expected: n,
                found: counit.len(),
            });
        }
        for (name, e) in &symbols {
            if gens.index_of(name).is_some() {
                return Err(FrobError::SymbolClash(name.clone()));
            }
            if e.rank() != n {
                return Err(FrobError::RankMismatch {
                    expected: n,
                    found: e.rank(),
                });
            }
        }
        let mut flat = Vec::with_capacity(n * n);
        for row in mult {
            if row.len() != n {
                return Err(FrobError::RankMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            for e in row {
                if e.rank() != n {
                    return Err(FrobError::RankMismatch {
                        expected: n,
                        found: e.rank(),
                    });
                }
                flat.push(e);
            }
        }
        let counit = counit
            .into_iter()
            .map(|c| c.embed(gens))
            .collect::<Result<Vec<_>, _>>()?;
        let placeholder = PolyMatrix::zeros(gens, 0, 0);
        let mut alg = FrobeniusAlgebra {
            gens: gens.clone(),
            labels,
            symbols,
            mult: flat,
            counit,
            unit,
            gram: placeholder,
            dual: Vec::new(),
            delta_one: TensorElement::zero(gens, n, 2),
        };
        alg.validate_table()?;
        alg.derive()?;
        Ok(alg)
    }

    /// `R[X]/(m(X))` with the monomial basis `1, X, ..., X^(n−1)`.
    ///
    /// `modulus` lists the coefficients of `m` from degree 0 upward and must
    /// end in `1`.
    pub fn from_modulus(
        gens: &Generators,
        modulus: &[MultiPoly],
        counit: Vec<MultiPoly>,
    ) -> Result<Self, FrobError> {
        if modulus.len() < 2 {
            return Err(FrobError::EmptyModulus);
        }
        let modulus = modulus
            .iter()
            .map(|c| c.embed(gens))
            .collect::<Result<Vec<_>, _>>()?;
        let n = modulus.len() - 1;
        if !modulus[n].is_one() {
            return Err(FrobError::NotMonic);
        }
        if counit.len() != n {
            return Err(FrobError::CounitLength {
                expected: n,
                found: counit.len(),
            });
        }
        if gens.index_of("X").is_some() {
            return Err(FrobError::SymbolClash("X".to_string()));
        }
        let reduce = |mut coeffs: Vec<MultiPoly>| -> AlgebraElement {
            // X^d ↦ −(m_0 X^(d−n) + ... + m_(n−1) X^(d−1)) from the top down.
            while coeffs.len() > n {
                let d = coeffs.len() - 1;
                let top = coeffs.pop().unwrap();
                if !top.is_zero() {
                    for (k, mk) in modulus.iter().take(n).enumerate() {
                        let slot = d - n + k;
                        coeffs[slot] = &coeffs[slot] - &(&top * mk);
                    }
                }
            }
            coeffs.resize(n, MultiPoly::zero(gens));
            AlgebraElement::from_coeffs(coeffs)
        };
        let monomial = |d: usize| {
            let mut v = alloc::vec![MultiPoly::zero(gens); d + 1];
            v[d] = MultiPoly::one(gens);
            v
        };
        let mult = (0..n)
            .map(|i| (0..n).map(|j| reduce(monomial(i + j))).collect())
            .collect();
        let labels = (0..n)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "X".to_string(),
                _ => alloc::format!("X^{}", i),
            })
            .collect();
        let symbols = alloc::vec![("X".to_string(), reduce(monomial(1)))];
        Self::from_table(gens, labels, symbols, mult, counit, 0)
    }

    /// Truncated polynomial algebra `Z[X]/(X^N)` with `ε(X^(N−1)) = 1`.
    pub fn truncated(n: usize) -> Result<Self, FrobError> {
        let z = Generators::integers();
        if n == 0 {
            return Err(FrobError::EmptyModulus);
        }
        let mut modulus = alloc::vec![MultiPoly::zero(&z); n + 1];
        modulus[n] = MultiPoly::one(&z);
        let mut counit = alloc::vec![MultiPoly::zero(&z); n];
        counit[n - 1] = MultiPoly::one(&z);
        Self::from_modulus(&z, &modulus, counit)
    }

    /// `Z[a,b,c][X]/(X³ − aX² − bX − c)` with `ε(1) = ε(X) = 0`, `ε(X²) = −1`.
    pub fn mv() -> Self {
        let g = Generators::new(&["a", "b", "c"]).unwrap();
        let p = |s: &str| MultiPoly::parse(&g, s).unwrap();
        Self::from_modulus(
            &g,
            &[p("-c"), p("-b"), p("-a"), p("1")],
            alloc::vec![p("0"), p("0"), p("-1")],
        )
        .expect("built-in algebra is well formed")
    }

    fn validate_table(&self) -> Result<(), FrobError> {
        let n = self.rank();
        if self.unit >= n {
            return Err(FrobError::NoUnit);
        }
        for i in 0..n {
            if self.basis_product(self.unit, i) != &self.basis(i) {
                return Err(FrobError::NoUnit);
            }
            for j in (i + 1)..n {
                if self.basis_product(i, j) != self.basis_product(j, i) {
                    return Err(FrobError::NotCommutative { i, j });
                }
            }
        }
        // (e_i e_j) e_k = (e_j e_k) e_i; symmetric in i and k given commutativity
        let sparse: Vec<Vec<(usize, &MultiPoly)>> = self
            .mult
            .iter()
            .map(|e| {
                e.coeffs()
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .collect()
            })
            .collect();
        let times_basis = |ij: usize, k: usize| {
            let mut acc: BTreeMap<usize, MultiPoly> = BTreeMap::new();
            for &(m, c) in &sparse[ij] {
                for &(r, p) in &sparse[m * n + k] {
                    let v = c * p;
                    let slot = acc.entry(r).or_insert_with(|| MultiPoly::zero(&self.gens));
                    *slot = &*slot + &v;
                }
            }
            acc.retain(|_, v| !v.is_zero());
            acc
        };
        for i in 0..n {
            for j in 0..n {
                for k in i..n {
                    if times_basis(i * n + j, k) != times_basis(j * n + k, i) {
                        return Err(FrobError::NotAssociative { i, j, k });
                    }
                }
            }
        }
        Ok(())
    }

    fn derive(&mut self) -> Result<(), FrobError> {
        let n = self.rank();
        let gram = PolyMatrix::from_fn(&self.gens, n, n, |i, j| {
            self.counit(self.basis_product(i, j))
        });
        let (det, adj) = gram.det_and_adjugate();
        let sign = det.unit_sign().ok_or_else(|| FrobError::Degenerate {
            determinant: det.to_string(),
        })?;
        // inverse = adj / det = ±adj
        let inv = if sign == 1 {
            adj
        } else {
            adj.scale(&MultiPoly::constant(&self.gens, -1))
        };
        // y_j = Σ_k inv[k][j] e_k
        self.dual = (0..n)
            .map(|j| AlgebraElement::from_coeffs(inv.column(j)))
            .collect();
        let mut delta = TensorElement::zero(&self.gens, n, 2);
        for i in 0..n {
            delta = delta.add(&TensorElement::outer(&[&self.dual[i], &self.basis(i)]));
        }
        self.delta_one = delta;
        self.gram = gram;
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn generators(&self) -> &Generators {
        &self.gens
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit_index(&self) -> usize {
        self.unit
    }

    pub fn basis(&self, i: usize) -> AlgebraElement {
        AlgebraElement::basis(&self.gens, self.rank(), i)
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement::zero(&self.gens, self.rank())
    }

    pub fn one(&self) -> AlgebraElement {
        self.basis(self.unit)
    }

    pub fn scalar(&self, c: &MultiPoly) -> AlgebraElement {
        self.one().scale(c)
    }

    pub fn poly(&self, src: &str) -> Result<MultiPoly, ParseError> {
        MultiPoly::parse(&self.gens, src)
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &AlgebraElement {
        &self.mult[i * self.rank() + j]
    }

    fn check_rank(&self, u: &AlgebraElement) -> Result<(), FrobError> {
        if u.rank() == self.rank() {
            Ok(())
        } else {
            Err(FrobError::RankMismatch {
                expected: self.rank(),
                found: u.rank(),
            })
        }
    }

    pub fn try_mul(
        &self,
        u: &AlgebraElement,
        v: &AlgebraElement,
    ) -> Result<AlgebraElement, FrobError> {
        self.check_rank(u)?;
        self.check_rank(v)?;
        Ok(self.mul(u, v))
    }

    /// Bilinear extension of the table. Panics on a rank mismatch.
    pub fn mul(&self, u: &AlgebraElement, v: &AlgebraElement) -> AlgebraElement {
        let n = self.rank();
        assert!(u.rank() == n && v.rank() == n, "rank mismatch");
        let mut acc = self.zero();
        for (i, ui) in u.coeffs().iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.coeffs().iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                let k = ui * vj;
                let prod = self.basis_product(i, j);
                for (slot, p) in acc.coeffs.iter_mut().zip(prod.coeffs()) {
                    if !p.is_zero() {
                        *slot = &*slot + &(&k * p);
                    }
                }
            }
        }
        acc
    }

    pub fn try_counit(&self, u: &AlgebraElement) -> Result<MultiPoly, FrobError> {
        self.check_rank(u)?;
        Ok(self.counit(u))
    }

    pub fn counit(&self, u: &AlgebraElement) -> MultiPoly {
        assert_eq!(u.rank(), self.rank(), "rank mismatch");
        let mut acc = MultiPoly::zero(&self.gens);
        for (c, e) in u.coeffs().iter().zip(&self.counit) {
            if !c.is_zero() && !e.is_zero() {
                acc = &acc + &(c * e);
            }
        }
        acc
    }

    pub fn counit_vec(&self) -> &[MultiPoly] {
        &self.counit
    }

    pub fn gram(&self) -> &PolyMatrix {
        &self.gram
    }

    /// `{y_i}` with `ε(e_i · y_j) = δ_ij`.
    pub fn dual_basis(&self) -> &[AlgebraElement] {
        &self.dual
    }

    /// `Δ(1) = Σ_i y_i ⊗ e_i`.
    pub fn delta_one(&self) -> &TensorElement {
        &self.delta_one
    }

    /// `Δ(u) = Δ(1)·(1 ⊗ u) = Σ_i y_i ⊗ e_i u`.
    pub fn comul(&self, u: &AlgebraElement) -> TensorElement {
        let mut acc = TensorElement::zero(&self.gens, self.rank(), 2);
        for (i, y) in self.dual.iter().enumerate() {
            let right = self.mul(&self.basis(i), u);
            acc = acc.add(&TensorElement::outer(&[y, &right]));
        }
        acc
    }

    pub fn try_comul(&self, u: &AlgebraElement) -> Result<TensorElement, FrobError> {
        self.check_rank(u)?;
        Ok(self.comul(u))
    }

    /// `ε(μ(Δ(1))) = Σ_i ε(y_i e_i)`.
    pub fn handle_scalar(&self) -> MultiPoly {
        let mut acc = MultiPoly::zero(&self.gens);
        for (i, y) in self.dual.iter().enumerate() {
            acc = &acc + &self.counit(&self.mul(y, &self.basis(i)));
        }
        acc
    }

    /// Product in `A ⊗ A`: `(u1⊗u2)(v1⊗v2) = u1v1 ⊗ u2v2`.
    pub fn tensor_mul(&self, s: &TensorElement, t: &TensorElement) -> TensorElement {
        assert!(
            s.order() == 2 && t.order() == 2,
            "tensor_mul needs order-2 tensors"
        );
        let mut acc = TensorElement::zero(&self.gens, self.rank(), 2);
        for (ts, cs) in s.terms() {
            for (tt, ct) in t.terms() {
                let left = self.basis_product(ts[0], tt[0]);
                let right = self.basis_product(ts[1], tt[1]);
                acc = acc.add(&TensorElement::outer(&[left, right]).scale(&(cs * ct)));
            }
        }
        acc
    }

    /// Named elements usable in element expressions.
    pub fn symbols(&self) -> &[(String, AlgebraElement)] {
        &self.symbols
    }

    pub fn symbol(&self, name: &str) -> Option<&AlgebraElement> {
        self.symbols.iter().find(|(s, _)| s == name).map(|(_, e)| e)
    }

    pub fn eval_element(&self, expr: &PolyExpr, origin: Pos) -> Result<AlgebraElement, ParseError> {
        expr.eval(self, origin)
    }

    /// Parses an element such as `a*X^2 - X + b`.
    pub fn parse_element(&self, src: &str) -> Result<AlgebraElement, ParseError> {
        let expr = PolyExpr::parse(src)?;
        self.eval_element(&expr, Pos::new(1, 1))
    }

    /// Renders an element, highest basis index first.
    pub fn render(&self, u: &AlgebraElement) -> String {
        let mut out = String::new();
        for i in (0..self.rank()).rev() {
            push_scaled_term(&mut out, u.coeff(i), &self.labels[i], false);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    pub fn render_tensor(&self, t: &TensorElement) -> String {
        t.render(&self.labels)
    }
}

impl ExprTarget for FrobeniusAlgebra {
    type Value = AlgebraElement;
    type Error = ParseError;

    fn int(&self, n: &BigInt) -> AlgebraElement {
        self.scalar(&MultiPoly::constant(&self.gens, n.clone()))
    }

    fn name(&self, name: &str, pos: Pos) -> Result<AlgebraElement, ParseError> {
        if let Some(e) = self.symbol(name) {
            return Ok(e.clone());
        }
        if let Ok(g) = MultiPoly::generator(&self.gens, name) {
            return Ok(self.scalar(&g));
        }
        Err(ParseError::new(
            pos,
            alloc::format!(
                "`{}` is neither a basis symbol nor a coefficient generator",
                name
            ),
        ))
    }

    fn add(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        a + b
    }

    fn neg(&self, a: &AlgebraElement) -> AlgebraElement {
        -a
    }

    fn mul(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        FrobeniusAlgebra::mul(self, a, b)
    }
}

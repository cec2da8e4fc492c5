//! Group rings `Z[G]` of finite abelian groups `G = Z/o1 × ... × Z/ok` with
//! their Frobenius structure (`ε(1_G) = 1`, zero elsewhere), the Hopf
//! comultiplication `g ↦ g ⊗ g`, and the theta table that makes the branch
//! co-operation agree with it.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::branchops::BranchContext;
use crate::coeffring::{Generators, MultiPoly};
use crate::frobalg::{AlgebraElement, FrobError, FrobeniusAlgebra};
use crate::lawsuite::{Checker, LawReport};
use crate::tensor::TensorElement;
use crate::thetafoam::{ThetaError, ThetaTable};

/// Largest group handled.
pub const MAX_GROUP_ORDER: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupError {
    OrderTooSmall(usize),
    NoFactors,
    TooLarge(usize),
    /// Some element has order above two; carries its label.
    OrderAboveTwo(String),
    RankMismatch {
        expected: usize,
        found: usize,
    },
    Frob(FrobError),
    Theta(ThetaError),
}

impl fmt::Display for GroupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupError::OrderTooSmall(o) => write!(f, "cyclic order {} is below 2", o),
            GroupError::NoFactors => f.write_str("group needs at least one cyclic factor"),
            GroupError::TooLarge(n) => write!(
                f,
                "group of order {} exceeds the supported bound {}",
                n, MAX_GROUP_ORDER
            ),
            GroupError::OrderAboveTwo(g) => write!(
                f,
                "group has an element of order > 2 ({}); no cyclically-symmetric theta reproduces Δ(x) = x⊗x",
                g
            ),
            GroupError::RankMismatch { expected, found } => {
                write!(f, "context rank {} does not match group order {}", found, expected)
            }
            GroupError::Frob(e) => write!(f, "{}", e),
            GroupError::Theta(e) => write!(f, "{}", e),
        }
    }
}

impl core::error::Error for GroupError {}

/// `Z/o1 × ... × Z/ok`; element indices are mixed-radix with the first
/// factor most significant, so index 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAbelianGroup {
    orders: Vec<usize>,
}

impl FiniteAbelianGroup {
    pub fn new(orders: &[usize]) -> Result<Self, GroupError> {
        if orders.is_empty() {
            return Err(GroupError::NoFactors);
        }
        let mut size: usize = 1;
        for &o in orders {
            if o < 2 {
                return Err(GroupError::OrderTooSmall(o));
            }
            size = size.saturating_mul(o);
        }
        if size > MAX_GROUP_ORDER {
            return Err(GroupError::TooLarge(size));
        }
        Ok(FiniteAbelianGroup {
            orders: orders.to_vec(),
        })
    }

    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    pub fn size(&self) -> usize {
        self.orders.iter().product()
    }

    pub fn residues(&self, mut index: usize) -> Vec<usize> {
        let mut out = alloc::vec![0; self.orders.len()];
        for (slot, &o) in out.iter_mut().zip(&self.orders).rev() {
            *slot = index % o;
            index /= o;
        }
        out
    }

    pub fn index(&self, residues: &[usize]) -> usize {
        residues
            .iter()
            .zip(&self.orders)
            .fold(0, |acc, (&r, &o)| acc * o + r % o)
    }

    pub fn op(&self, g: usize, h: usize) -> usize {
        let (a, b) = (self.residues(g), self.residues(h));
        let sum: Vec<usize> = a
            .iter()
            .zip(&b)
            .zip(&self.orders)
            .map(|((x, y), o)| (x + y) % o)
            .collect();
        self.index(&sum)
    }

    pub fn inverse(&self, g: usize) -> usize {
        let r: Vec<usize> = self
            .residues(g)
            .iter()
            .zip(&self.orders)
            .map(|(&x, &o)| (o - x) % o)
            .collect();
        self.index(&r)
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut acc = g;
        let mut k = 1;
        while acc != 0 {
            acc = self.op(acc, g);
            k += 1;
        }
        k
    }

    /// Generator names: `x` for a cyclic group, else `x1, x2, ...`.
    pub fn generator_names(&self) -> Vec<String> {
        if self.orders.len() == 1 {
            alloc::vec!["x".to_string()]
        } else {
            (1..=self.orders.len())
                .map(|i| alloc::format!("x{}", i))
                .collect()
        }
    }

    pub fn label(&self, g: usize) -> String {
        let names = self.generator_names();
        let parts: Vec<String> = self
            .residues(g)
            .iter()
            .zip(&names)
            .filter(|(&r, _)| r > 0)
            .map(|(&r, n)| {
                if r == 1 {
                    n.clone()
                } else {
                    alloc::format!("{}^{}", n, r)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

#[derive(Clone, Debug)]
pub struct GroupRingAlgebra {
    algebra: FrobeniusAlgebra,
    group: FiniteAbelianGroup,
}

impl GroupRingAlgebra {
    pub fn new(orders: &[usize]) -> Result<Self, GroupError> {
        let group = FiniteAbelianGroup::new(orders)?;
        let z = Generators::integers();
        let n = group.size();
        let basis = |i| AlgebraElement::basis(&z, n, i);
        let labels = (0..n).map(|g| group.label(g)).collect();
        let symbols = group
            .generator_names()
            .into_iter()
            .enumerate()
            .map(|(f, name)| {
                let mut r = alloc::vec![0; orders.len()];
                r[f] = 1;
                (name, basis(group.index(&r)))
            })
            .collect();
        let mult = (0..n)
            .map(|g| (0..n).map(|h| basis(group.op(g, h))).collect())
            .collect();
        let counit = (0..n)
            .map(|g| MultiPoly::constant(&z, if g == 0 { 1 } else { 0 }))
            .collect();
        let algebra = FrobeniusAlgebra::from_table(&z, labels, symbols, mult, counit, 0)
            .map_err(GroupError::Frob)?;
        Ok(GroupRingAlgebra { algebra, group })
    }

    pub fn algebra(&self) -> &FrobeniusAlgebra {
        &self.algebra
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    /// Linear extension of `g ↦ g ⊗ g`.
    pub fn hopf_delta(&self, u: &AlgebraElement) -> Result<TensorElement, GroupError> {
        let n = self.algebra.rank();
        if u.rank() != n {
            return Err(GroupError::RankMismatch {
                expected: n,
                found: u.rank(),
            });
        }
        let mut t = TensorElement::zero(self.algebra.generators(), n, 2);
        for (g, c) in u.coeffs().iter().enumerate() {
            t.add_term(alloc::vec![g, g], c.clone());
        }
        Ok(t)
    }

    /// Augmentation `g ↦ 1`, the bialgebra counit.
    pub fn augmentation(&self, u: &AlgebraElement) -> MultiPoly {
        u.coeffs()
            .iter()
            .fold(MultiPoly::zero(self.algebra.generators()), |acc, c| {
                &acc + c
            })
    }

    /// `θ(g, g, g) = 1`, zero elsewhere; only cyclically symmetric when
    /// every element is its own inverse.
    pub fn derive_bialgebra_theta(&self) -> Result<ThetaTable, GroupError> {
        let n = self.group.size();
        if let Some(g) = (0..n).find(|&g| self.group.inverse(g) != g) {
            return Err(GroupError::OrderAboveTwo(self.group.label(g)));
        }
        let z = self.algebra.generators();
        ThetaTable::from_entries(z, n, (0..n).map(|g| ((g, g, g), MultiPoly::one(z))))
            .map_err(GroupError::Theta)
    }

    /// Checks that the branch co-operation of `ctx` is the Hopf
    /// comultiplication, is multiplicative, and satisfies the counit laws
    /// with the augmentation.
    pub fn check_bialgebra(&self, ctx: &BranchContext) -> Result<LawReport, GroupError> {
        let alg = &self.algebra;
        let n = alg.rank();
        if ctx.rank() != n {
            return Err(GroupError::RankMismatch {
                expected: n,
                found: ctx.rank(),
            });
        }
        let render = |t: &TensorElement| alg.render_tensor(t);
        let mut chk = Checker::new(alg);
        for g in 0..n {
            let b = alg.basis(g);
            chk.case(&[g], &ctx.cocomul(&b), &self.hopf_delta(&b)?, render);
        }
        for g in 0..n {
            for h in 0..n {
                let prod = alg.mul(&alg.basis(g), &alg.basis(h));
                let lhs = ctx.cocomul(&prod);
                let rhs = alg.tensor_mul(&ctx.cocomul(&alg.basis(g)), &ctx.cocomul(&alg.basis(h)));
                chk.case(&[g, h], &lhs, &rhs, render);
            }
        }
        for g in 0..n {
            let b = alg.basis(g);
            let d = ctx.cocomul(&b);
            let mut left = alg.zero();
            let mut right = alg.zero();
            for (t, c) in d.terms() {
                left = &left
                    + &alg
                        .basis(t[1])
                        .scale(&(c * &self.augmentation(&alg.basis(t[0]))));
                right = &right
                    + &alg
                        .basis(t[0])
                        .scale(&(c * &self.augmentation(&alg.basis(t[1]))));
            }
            chk.case(&[g], &left, &b, |e| alg.render(e));
            chk.case(&[g], &right, &b, |e| alg.render(e));
        }
        Ok(chk.finish("bialgebra"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lawsuite::check_delta_one_resolution;

    fn ctx_for(a: &GroupRingAlgebra, t: &ThetaTable) -> BranchContext {
        BranchContext::new(a.algebra().clone(), t).unwrap()
    }

    #[test]
    fn group_basics() {
        let g = FiniteAbelianGroup::new(&[2, 3]).unwrap();
        assert_eq!(g.size(), 6);
        assert_eq!(g.residues(5), [1, 2]);
        assert_eq!(g.label(5), "x1*x2^2");
        assert_eq!(g.label(0), "1");
        assert_eq!(g.inverse(g.index(&[1, 1])), g.index(&[1, 2]));
        assert_eq!(g.element_order(g.index(&[1, 1])), 6);
        assert_eq!(
            FiniteAbelianGroup::new(&[1]).unwrap_err(),
            GroupError::OrderTooSmall(1)
        );
        assert_eq!(
            FiniteAbelianGroup::new(&[8, 9]).unwrap_err(),
            GroupError::TooLarge(72)
        );
        assert!(FiniteAbelianGroup::new(&[4, 4, 4]).is_ok());
        assert_eq!(
            FiniteAbelianGroup::new(&[]).unwrap_err(),
            GroupError::NoFactors
        );
    }

    #[test]
    fn delta_one_is_sum_over_inverses() {
        for orders in [&[2][..], &[3], &[2, 2], &[4], &[2, 3], &[2, 2, 2]] {
            let a = GroupRingAlgebra::new(orders).unwrap();
            let n = a.group().size();
            let mut expected = TensorElement::zero(a.algebra().generators(), n, 2);
            for y in 0..n {
                expected.add_term(
                    alloc::vec![y, a.group().inverse(y)],
                    MultiPoly::one(a.algebra().generators()),
                );
            }
            assert_eq!(a.algebra().delta_one(), &expected);
            assert!(check_delta_one_resolution(a.algebra()).passed);
        }
        let z3 = GroupRingAlgebra::new(&[3]).unwrap();
        assert_eq!(
            z3.algebra().render_tensor(z3.algebra().delta_one()),
            "1⊗1 + x⊗x^2 + x^2⊗x"
        );
        let z2 = GroupRingAlgebra::new(&[2]).unwrap();
        assert_eq!(
            z2.algebra().render_tensor(z2.algebra().delta_one()),
            "1⊗1 + x⊗x"
        );
    }

    #[test]
    fn hopf_delta_examples() {
        let a = GroupRingAlgebra::new(&[2]).unwrap();
        let alg = a.algebra();
        let x = alg.parse_element("x").unwrap();
        assert_eq!(alg.render_tensor(&a.hopf_delta(&x).unwrap()), "x⊗x");
        let y = alg.parse_element("1 + x").unwrap();
        assert_eq!(alg.render_tensor(&a.hopf_delta(&y).unwrap()), "1⊗1 + x⊗x");
        assert!(a.hopf_delta(&alg.zero()).unwrap().is_zero());
        assert!(alg.parse_element("x*x").unwrap() == alg.one());
    }

    #[test]
    fn derived_theta_by_exponent() {
        let t = GroupRingAlgebra::new(&[2])
            .unwrap()
            .derive_bialgebra_theta()
            .unwrap();
        assert!(t.get(0, 0, 0).is_one() && t.get(1, 1, 1).is_one());
        assert_eq!(t.entries().count(), 2);
        let t = GroupRingAlgebra::new(&[2, 2, 2])
            .unwrap()
            .derive_bialgebra_theta()
            .unwrap();
        assert_eq!(t.entries().count(), 8);
        for orders in [&[3][..], &[4], &[6], &[2, 3], &[2, 4]] {
            let err = GroupRingAlgebra::new(orders)
                .unwrap()
                .derive_bialgebra_theta()
                .unwrap_err();
            assert!(matches!(err, GroupError::OrderAboveTwo(_)));
            assert!(err
                .to_string()
                .contains("group has an element of order > 2"));
        }
    }

    #[test]
    fn derivation_succeeds_iff_all_orders_two() {
        let choices = [2usize, 3, 4, 5];
        for a in choices {
            for b in choices {
                let orders = [a, b];
                let g = GroupRingAlgebra::new(&orders).unwrap();
                let ok = g.derive_bialgebra_theta().is_ok();
                assert_eq!(ok, a == 2 && b == 2, "{:?}", orders);
            }
            let g = GroupRingAlgebra::new(&[a]).unwrap();
            assert_eq!(g.derive_bialgebra_theta().is_ok(), a == 2);
        }
    }

    #[test]
    fn bialgebra_checks() {
        for orders in [&[2][..], &[2, 2]] {
            let a = GroupRingAlgebra::new(orders).unwrap();
            let t = a.derive_bialgebra_theta().unwrap();
            let ctx = ctx_for(&a, &t);
            for g in 0..a.group().size() {
                let b = a.algebra().basis(g);
                assert_eq!(ctx.cocomul(&b), a.hopf_delta(&b).unwrap());
            }
            let r = a.check_bialgebra(&ctx).unwrap();
            assert!(r.passed, "{:?}", r.counterexample);
        }
        let a = GroupRingAlgebra::new(&[2]).unwrap();
        let z = a.algebra().generators().clone();
        let t = ThetaTable::from_entries(&z, 2, [((0, 0, 0), MultiPoly::one(&z))]).unwrap();
        let r = a.check_bialgebra(&ctx_for(&a, &t)).unwrap();
        assert!(!r.passed);
        let cx = r.counterexample.unwrap();
        assert_eq!(cx.inputs, ["x"]);
        assert_eq!(cx.lhs, "0");
        assert_eq!(cx.rhs, "x⊗x");
    }
}

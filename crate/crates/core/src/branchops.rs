//! Branch-circle operations induced by a Frobenius algebra together with
//! a theta table.
//!
//! Cutting the neck next to a branch circle with `Δ(1) = Σ_i y_i ⊗ e_i`
//! turns the operation into a theta foam, which gives
//!
//! ```text
//! [u, v] = Σ_i θ(e_i, u, v) · y_i
//! Δ(u)   = Σ_i [u, y_i] ⊗ e_i          (cocomul)
//! ```
//!
//! `cocomul_skein` is the same operation with its two output legs swapped.

use alloc::vec::Vec;
use core::fmt;

use crate::frobalg::{AlgebraElement, FrobeniusAlgebra};
use crate::linmap::LinearMap;
use crate::tensor::TensorElement;
use crate::thetafoam::{ThetaError, ThetaTable};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BranchError {
    RankMismatch { expected: usize, found: usize },
    Theta(ThetaError),
}

impl fmt::Display for BranchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BranchError::RankMismatch { expected, found } => write!(
                f,
                "rank mismatch: algebra has rank {}, got {}",
                expected, found
            ),
            BranchError::Theta(e) => write!(f, "{}", e),
        }
    }
}

impl core::error::Error for BranchError {}

impl From<ThetaError> for BranchError {
    fn from(e: ThetaError) -> Self {
        BranchError::Theta(e)
    }
}

/// Which operation to turn into a matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MapKind {
    Bracket,
    Cocomul,
    CocomulSkein,
    Mul,
    Comul,
    Counit,
    Unit,
    Swap,
    Identity,
}

#[derive(Clone, Debug)]
pub struct BranchContext {
    algebra: FrobeniusAlgebra,
    theta: ThetaTable,
    /// `[e_j, e_k]`, row-major.
    brackets: Vec<AlgebraElement>,
}

impl BranchContext {
    pub fn new(algebra: FrobeniusAlgebra, theta: &ThetaTable) -> Result<Self, BranchError> {
        let n = algebra.rank();
        if theta.rank() != n {
            return Err(BranchError::RankMismatch {
                expected: n,
                found: theta.rank(),
            });
        }
        let theta = theta.embed(algebra.generators())?;
        let mut brackets = Vec::with_capacity(n * n);
        for j in 0..n {
            for k in 0..n {
                let mut acc = algebra.zero();
                for (i, y) in algebra.dual_basis().iter().enumerate() {
                    let t = theta.get(i, j, k);
                    if !t.is_zero() {
                        acc = &acc + &y.scale(&t);
                    }
                }
                brackets.push(acc);
            }
        }
        Ok(BranchContext {
            algebra,
            theta,
            brackets,
        })
    }

    pub fn algebra(&self) -> &FrobeniusAlgebra {
        &self.algebra
    }

    pub fn theta(&self) -> &ThetaTable {
        &self.theta
    }

    pub fn rank(&self) -> usize {
        self.algebra.rank()
    }

    fn check(&self, u: &AlgebraElement) -> Result<(), BranchError> {
        if u.rank() == self.rank() {
            Ok(())
        } else {
            Err(BranchError::RankMismatch {
                expected: self.rank(),
                found: u.rank(),
            })
        }
    }

    pub fn basis_bracket(&self, j: usize, k: usize) -> &AlgebraElement {
        &self.brackets[j * self.rank() + k]
    }

    pub fn try_bracket(
        &self,
        u: &AlgebraElement,
        v: &AlgebraElement,
    ) -> Result<AlgebraElement, BranchError> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.bracket(u, v))
    }

    /// Bilinear branch operation `m(u ⊗ v) = [u, v]`. Panics on a rank
    /// mismatch.
    pub fn bracket(&self, u: &AlgebraElement, v: &AlgebraElement) -> AlgebraElement {
        assert!(
            u.rank() == self.rank() && v.rank() == self.rank(),
            "rank mismatch"
        );
        let mut acc = self.algebra.zero();
        for (j, uj) in u.coeffs().iter().enumerate() {
            if uj.is_zero() {
                continue;
            }
            for (k, vk) in v.coeffs().iter().enumerate() {
                if vk.is_zero() {
                    continue;
                }
                let b = self.basis_bracket(j, k);
                if !b.is_zero() {
                    acc = &acc + &b.scale(&(uj * vk));
                }
            }
        }
        acc
    }

    /// `Σ_i [u, y_i] ⊗ e_i`.
    pub fn cocomul(&self, u: &AlgebraElement) -> TensorElement {
        let alg = &self.algebra;
        let mut acc = TensorElement::zero(alg.generators(), alg.rank(), 2);
        for (i, y) in alg.dual_basis().iter().enumerate() {
            let left = self.bracket(u, y);
            if !left.is_zero() {
                acc = acc.add(&TensorElement::outer(&[&left, &alg.basis(i)]));
            }
        }
        acc
    }

    pub fn try_cocomul(&self, u: &AlgebraElement) -> Result<TensorElement, BranchError> {
        self.check(u)?;
        Ok(self.cocomul(u))
    }

    /// `Σ_i y_i ⊗ [e_i, u]`, the right-handed form of [`Self::cocomul`].
    pub fn cocomul_right(&self, u: &AlgebraElement) -> TensorElement {
        let alg = &self.algebra;
        let mut acc = TensorElement::zero(alg.generators(), alg.rank(), 2);
        for (i, y) in alg.dual_basis().iter().enumerate() {
            let right = self.bracket(&alg.basis(i), u);
            if !right.is_zero() {
                acc = acc.add(&TensorElement::outer(&[y, &right]));
            }
        }
        acc
    }

    /// `τ ∘ cocomul`.
    pub fn cocomul_skein(&self, u: &AlgebraElement) -> TensorElement {
        self.cocomul(u).swap_legs()
    }

    pub fn try_cocomul_skein(&self, u: &AlgebraElement) -> Result<TensorElement, BranchError> {
        self.check(u)?;
        Ok(self.cocomul_skein(u))
    }

    pub fn as_linear_map(&self, which: MapKind) -> LinearMap {
        let alg = &self.algebra;
        let g = alg.generators();
        let n = alg.rank();
        match which {
            MapKind::Bracket => LinearMap::from_basis_images(g, n, 2, 1, |t| {
                self.basis_bracket(t[0], t[1]).coeffs().to_vec()
            }),
            MapKind::Cocomul => LinearMap::from_basis_images(g, n, 1, 2, |t| {
                self.cocomul(&alg.basis(t[0])).to_flat()
            }),
            MapKind::CocomulSkein => LinearMap::from_basis_images(g, n, 1, 2, |t| {
                self.cocomul_skein(&alg.basis(t[0])).to_flat()
            }),
            MapKind::Mul => alg.mul_map(),
            MapKind::Comul => alg.comul_map(),
            MapKind::Counit => alg.counit_map(),
            MapKind::Unit => alg.unit_map(),
            MapKind::Swap => alg.swap_map(),
            MapKind::Identity => alg.identity_map(1),
        }
    }
}

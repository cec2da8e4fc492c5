//! Exact linear maps `A^{⊗k} → A^{⊗l}` as `n^l × n^k` matrices over `R`.
//!
//! Column `c` holds the image of the basis tuple with flat index `c`.

use alloc::vec::Vec;

use crate::coeffring::{Generators, MultiPoly};
use crate::frobalg::{AlgebraElement, FrobeniusAlgebra};
use crate::matrix::PolyMatrix;
use crate::tensor::{index_tuple, tensor_dim, TensorElement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    rank: usize,
    inputs: usize,
    outputs: usize,
    matrix: PolyMatrix,
}

impl LinearMap {
    pub fn from_matrix(rank: usize, inputs: usize, outputs: usize, matrix: PolyMatrix) -> Self {
        assert_eq!(matrix.rows(), tensor_dim(rank, outputs), "row count");
        assert_eq!(matrix.cols(), tensor_dim(rank, inputs), "column count");
        LinearMap {
            rank,
            inputs,
            outputs,
            matrix,
        }
    }

    /// Builds a map from the images of basis tuples.
    pub fn from_basis_images(
        gens: &Generators,
        rank: usize,
        inputs: usize,
        outputs: usize,
        mut image: impl FnMut(&[usize]) -> Vec<MultiPoly>,
    ) -> Self {
        let rows = tensor_dim(rank, outputs);
        let cols = tensor_dim(rank, inputs);
        let mut m = PolyMatrix::zeros(gens, rows, cols);
        for c in 0..cols {
            let col = image(&index_tuple(c, rank, inputs));
            assert_eq!(col.len(), rows, "image has the wrong length");
            for (r, v) in col.into_iter().enumerate() {
                if !v.is_zero() {
                    m.set(r, c, v);
                }
            }
        }
        Self::from_matrix(rank, inputs, outputs, m)
    }

    pub fn identity(gens: &Generators, rank: usize, order: usize) -> Self {
        Self::from_matrix(
            rank,
            order,
            order,
            PolyMatrix::identity(gens, tensor_dim(rank, order)),
        )
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn outputs(&self) -> usize {
        self.outputs
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    /// `next ∘ self`: apply `self` first. Panics on an arity mismatch.
    pub fn then(&self, next: &LinearMap) -> LinearMap {
        assert_eq!(self.outputs, next.inputs, "composition arity mismatch");
        LinearMap {
            rank: self.rank,
            inputs: self.inputs,
            outputs: next.outputs,
            matrix: next.matrix.mul(&self.matrix),
        }
    }

    /// `self ⊗ other`, `self` acting on the leftmost factors.
    pub fn tensor(&self, other: &LinearMap) -> LinearMap {
        assert_eq!(self.rank, other.rank, "rank mismatch");
        LinearMap {
            rank: self.rank,
            inputs: self.inputs + other.inputs,
            outputs: self.outputs + other.outputs,
            matrix: self.matrix.kron(&other.matrix),
        }
    }

    pub fn add(&self, other: &LinearMap) -> LinearMap {
        assert_eq!(
            (self.inputs, self.outputs),
            (other.inputs, other.outputs),
            "shape mismatch"
        );
        LinearMap {
            matrix: self.matrix.add(&other.matrix),
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &LinearMap) -> LinearMap {
        assert_eq!(
            (self.inputs, self.outputs),
            (other.inputs, other.outputs),
            "shape mismatch"
        );
        LinearMap {
            matrix: self.matrix.sub(&other.matrix),
            ..self.clone()
        }
    }

    pub fn scale(&self, k: &MultiPoly) -> LinearMap {
        LinearMap {
            matrix: self.matrix.scale(k),
            ..self.clone()
        }
    }

    pub fn apply_flat(&self, v: &[MultiPoly]) -> Vec<MultiPoly> {
        self.matrix.mul_vec(v)
    }

    pub fn apply(&self, t: &TensorElement) -> TensorElement {
        assert_eq!(t.order(), self.inputs, "input order mismatch");
        let out = self.apply_flat(&t.to_flat());
        TensorElement::from_flat(self.matrix.generators(), self.rank, self.outputs, &out)
    }

    /// Applies a `1 → 1` map to an algebra element.
    pub fn apply_element(&self, u: &AlgebraElement) -> AlgebraElement {
        assert!(
            self.inputs == 1 && self.outputs == 1,
            "not an endomorphism of A"
        );
        AlgebraElement::from_coeffs(self.apply_flat(u.coeffs()))
    }

    /// The value of a closed (`0 → 0`) map.
    pub fn scalar(&self) -> Option<&MultiPoly> {
        (self.inputs == 0 && self.outputs == 0).then(|| self.matrix.get(0, 0))
    }

    /// First entry where the two maps differ, as `(row, col)`.
    pub fn first_difference(&self, other: &LinearMap) -> Option<(usize, usize)> {
        assert_eq!(
            (self.inputs, self.outputs),
            (other.inputs, other.outputs),
            "shape mismatch"
        );
        for c in 0..self.matrix.cols() {
            for r in 0..self.matrix.rows() {
                if self.matrix.get(r, c) != other.matrix.get(r, c) {
                    return Some((r, c));
                }
            }
        }
        None
    }
}

impl FrobeniusAlgebra {
    pub fn identity_map(&self, order: usize) -> LinearMap {
        LinearMap::identity(self.generators(), self.rank(), order)
    }

    /// `τ(x ⊗ y) = y ⊗ x`.
    pub fn swap_map(&self) -> LinearMap {
        let n = self.rank();
        let g = self.generators();
        LinearMap::from_basis_images(g, n, 2, 2, |t| {
            TensorElement::basis(g, n, &[t[1], t[0]]).to_flat()
        })
    }

    pub fn mul_map(&self) -> LinearMap {
        LinearMap::from_basis_images(self.generators(), self.rank(), 2, 1, |t| {
            self.basis_product(t[0], t[1]).coeffs().to_vec()
        })
    }

    pub fn comul_map(&self) -> LinearMap {
        LinearMap::from_basis_images(self.generators(), self.rank(), 1, 2, |t| {
            self.comul(&self.basis(t[0])).to_flat()
        })
    }

    pub fn unit_map(&self) -> LinearMap {
        LinearMap::from_basis_images(self.generators(), self.rank(), 0, 1, |_| {
            self.one().coeffs().to_vec()
        })
    }

    pub fn counit_map(&self) -> LinearMap {
        LinearMap::from_basis_images(self.generators(), self.rank(), 1, 0, |t| {
            alloc::vec![self.counit_vec()[t[0]].clone()]
        })
    }

    /// Multiplication by a fixed element.
    pub fn multiplication_by(&self, u: &AlgebraElement) -> LinearMap {
        LinearMap::from_basis_images(self.generators(), self.rank(), 1, 1, |t| {
            self.mul(u, &self.basis(t[0])).coeffs().to_vec()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn swap_is_a_permutation_involution() {
        let mv = FrobeniusAlgebra::mv();
        let s = mv.swap_map();
        assert_eq!(s.matrix().rows(), 9);
        for c in 0..9 {
            let ones: Vec<usize> = (0..9).filter(|&r| s.matrix().get(r, c).is_one()).collect();
            assert_eq!(ones, [(c % 3) * 3 + c / 3]);
        }
        assert_eq!(s.then(&s), mv.identity_map(2));
    }

    #[test]
    fn frobenius_maps_compose() {
        let mv = FrobeniusAlgebra::mv();
        // unit ; counit = ε(1) = 0
        assert!(mv
            .unit_map()
            .then(&mv.counit_map())
            .scalar()
            .unwrap()
            .is_zero());
        // unit ; comul ; mul ; counit = handle scalar
        let h = mv
            .unit_map()
            .then(&mv.comul_map())
            .then(&mv.mul_map())
            .then(&mv.counit_map());
        assert_eq!(h.scalar().unwrap(), &mv.handle_scalar());
        // coassociativity
        let id = mv.identity_map(1);
        let left = mv.comul_map().then(&mv.comul_map().tensor(&id));
        let right = mv.comul_map().then(&id.tensor(&mv.comul_map()));
        assert_eq!(left, right);
        // Frobenius condition: Δμ = (μ⊗id)(id⊗Δ)
        let lhs = mv.mul_map().then(&mv.comul_map());
        let rhs = id.tensor(&mv.comul_map()).then(&mv.mul_map().tensor(&id));
        assert_eq!(lhs, rhs);
    }
}

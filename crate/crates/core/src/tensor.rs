//! Elements of tensor powers `A^{⊗k}` in the product basis.
//!
//! A basis tuple `(i1, ..., ik)` has flat index `i1·n^(k−1) + ... + ik`:
//! the leftmost factor is the most significant digit. Matrices and
//! Kronecker products use the same convention.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::coeffring::{Generators, MultiPoly};
use crate::frobalg::AlgebraElement;

pub fn flat_index(tuple: &[usize], rank: usize) -> usize {
    tuple.iter().fold(0, |acc, &i| acc * rank + i)
}

pub fn index_tuple(mut flat: usize, rank: usize, order: usize) -> Vec<usize> {
    let mut out = alloc::vec![0; order];
    for slot in out.iter_mut().rev() {
        *slot = flat % rank;
        flat /= rank;
    }
    out
}

pub fn tensor_dim(rank: usize, order: usize) -> usize {
    rank.pow(order as u32)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    rank: usize,
    order: usize,
    gens: Generators,
    coeffs: BTreeMap<Vec<usize>, MultiPoly>,
}

impl TensorElement {
    pub fn zero(gens: &Generators, rank: usize, order: usize) -> Self {
        TensorElement {
            rank,
            order,
            gens: gens.clone(),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn basis(gens: &Generators, rank: usize, tuple: &[usize]) -> Self {
        let mut t = Self::zero(gens, rank, tuple.len());
        t.add_term(tuple.to_vec(), MultiPoly::one(gens));
        t
    }

    /// `u1 ⊗ u2 ⊗ ... ⊗ uk`.
    pub fn outer(factors: &[&AlgebraElement]) -> Self {
        assert!(!factors.is_empty(), "outer product of no factors");
        let gens = factors[0].generators().clone();
        let rank = factors[0].rank();
        let mut acc: Vec<(Vec<usize>, MultiPoly)> =
            alloc::vec![(Vec::new(), MultiPoly::one(&gens))];
        for f in factors {
            assert_eq!(f.rank(), rank, "outer product of mixed ranks");
            let mut next = Vec::new();
            for (tuple, c) in &acc {
                for (i, fi) in f.coeffs().iter().enumerate() {
                    if fi.is_zero() {
                        continue;
                    }
                    let mut t = tuple.clone();
                    t.push(i);
                    next.push((t, c * fi));
                }
            }
            acc = next;
        }
        let mut out = Self::zero(&gens, rank, factors.len());
        for (t, c) in acc {
            out.add_term(t, c);
        }
        out
    }

    pub fn from_flat(gens: &Generators, rank: usize, order: usize, flat: &[MultiPoly]) -> Self {
        assert_eq!(flat.len(), tensor_dim(rank, order), "flat vector length");
        let mut out = Self::zero(gens, rank, order);
        for (idx, c) in flat.iter().enumerate() {
            if !c.is_zero() {
                out.coeffs.insert(index_tuple(idx, rank, order), c.clone());
            }
        }
        out
    }

    pub fn to_flat(&self) -> Vec<MultiPoly> {
        let mut out = alloc::vec![MultiPoly::zero(&self.gens); tensor_dim(self.rank, self.order)];
        for (t, c) in &self.coeffs {
            out[flat_index(t, self.rank)] = c.clone();
        }
        out
    }

    pub fn add_term(&mut self, tuple: Vec<usize>, c: MultiPoly) {
        assert_eq!(tuple.len(), self.order, "tuple length != tensor order");
        assert!(
            tuple.iter().all(|&i| i < self.rank),
            "basis index out of range"
        );
        if c.is_zero() {
            return;
        }
        let sum = match self.coeffs.get(&tuple) {
            Some(old) => old + &c,
            None => c,
        };
        if sum.is_zero() {
            self.coeffs.remove(&tuple);
        } else {
            self.coeffs.insert(tuple, sum);
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn generators(&self) -> &Generators {
        &self.gens
    }

    pub fn get(&self, tuple: &[usize]) -> MultiPoly {
        self.coeffs
            .get(tuple)
            .cloned()
            .unwrap_or_else(|| MultiPoly::zero(&self.gens))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[usize], &MultiPoly)> {
        self.coeffs.iter().map(|(t, c)| (t.as_slice(), c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &TensorElement) -> TensorElement {
        assert_eq!(
            (self.rank, self.order),
            (other.rank, other.order),
            "tensor shape mismatch"
        );
        let mut out = self.clone();
        for (t, c) in &other.coeffs {
            out.add_term(t.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &TensorElement) -> TensorElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> TensorElement {
        self.scale(&MultiPoly::constant(&self.gens, -1))
    }

    pub fn scale(&self, k: &MultiPoly) -> TensorElement {
        let mut out = Self::zero(&self.gens, self.rank, self.order);
        for (t, c) in &self.coeffs {
            out.add_term(t.clone(), c * k);
        }
        out
    }

    /// Reverses the two legs of an order-2 tensor.
    pub fn swap_legs(&self) -> TensorElement {
        assert_eq!(self.order, 2, "swap_legs needs an order-2 tensor");
        let mut out = Self::zero(&self.gens, self.rank, 2);
        for (t, c) in &self.coeffs {
            out.add_term(alloc::vec![t[1], t[0]], c.clone());
        }
        out
    }

    /// Renders with the given basis labels, e.g. `-a*1⊗X + (a^2 + b)*X⊗1`.
    pub fn render(&self, labels: &[String]) -> String {
        let mut out = String::new();
        for (t, c) in &self.coeffs {
            let label: Vec<&str> = t.iter().map(|&i| labels[i].as_str()).collect();
            crate::frobalg::push_scaled_term(&mut out, c, &label.join("⊗"), self.order != 1);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_roundtrip() {
        for rank in 1..4 {
            for order in 0..4 {
                for flat in 0..tensor_dim(rank, order) {
                    let t = index_tuple(flat, rank, order);
                    assert_eq!(flat_index(&t, rank), flat);
                }
            }
        }
        assert_eq!(flat_index(&[1, 2], 3), 5);
        assert_eq!(index_tuple(5, 3, 2), alloc::vec![1, 2]);
    }
}

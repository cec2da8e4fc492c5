//! Dense matrices over [`MultiPoly`].
//!
//! Determinant and adjugate use Berkowitz's division-free characteristic
//! polynomial, so they are exact over any coefficient ring.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::coeffring::{Generators, MultiPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    gens: Generators,
    data: Vec<MultiPoly>,
}

impl PolyMatrix {
    pub fn zeros(gens: &Generators, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            gens: gens.clone(),
            data: alloc::vec![MultiPoly::zero(gens); rows * cols],
        }
    }

    pub fn identity(gens: &Generators, n: usize) -> Self {
        let mut m = Self::zeros(gens, n, n);
        for i in 0..n {
            m.set(i, i, MultiPoly::one(gens));
        }
        m
    }

    pub fn from_fn(
        gens: &Generators,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> MultiPoly,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        PolyMatrix {
            rows,
            cols,
            gens: gens.clone(),
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn generators(&self) -> &Generators {
        &self.gens
    }

    pub fn get(&self, r: usize, c: usize) -> &MultiPoly {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: MultiPoly) {
        self.data[r * self.cols + c] = v;
    }

    pub fn column(&self, c: usize) -> Vec<MultiPoly> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row(&self, r: usize) -> &[MultiPoly] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(MultiPoly::is_zero)
    }

    /// `self · rhs`. Panics on a shape mismatch.
    pub fn mul(&self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!(
            self.cols, rhs.rows,
            "matrix shape mismatch: {}x{} · {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = Self::zeros(&self.gens, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[MultiPoly]) -> Vec<MultiPoly> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = MultiPoly::zero(&self.gens);
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, rhs: &PolyMatrix) -> PolyMatrix {
        assert!(
            self.rows == rhs.rows && self.cols == rhs.cols,
            "shape mismatch"
        );
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            gens: self.gens.clone(),
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &PolyMatrix) -> PolyMatrix {
        assert!(
            self.rows == rhs.rows && self.cols == rhs.cols,
            "shape mismatch"
        );
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            gens: self.gens.clone(),
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, k: &MultiPoly) -> PolyMatrix {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            gens: self.gens.clone(),
            data: self.data.iter().map(|a| a * k).collect(),
        }
    }

    /// Kronecker product; the left factor's index is the more significant.
    pub fn kron(&self, rhs: &PolyMatrix) -> PolyMatrix {
        let rows = self.rows * rhs.rows;
        let cols = self.cols * rhs.cols;
        let mut out = Self::zeros(&self.gens, rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        let b = rhs.get(k, l);
                        if !b.is_zero() {
                            out.set(i * rhs.rows + k, j * rhs.cols + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    /// Coefficients `[1, c1, ..., cn]` of `det(λI − A)` in decreasing powers.
    pub fn charpoly(&self) -> Vec<MultiPoly> {
        assert_eq!(self.rows, self.cols, "charpoly of a non-square matrix");
        let n = self.rows;
        let g = &self.gens;
        let mut poly = alloc::vec![MultiPoly::one(g)];
        for r in 0..n {
            // Leading (r+1)x(r+1) block: [[M, S], [R, a]].
            let a = self.get(r, r);
            let mut toeplitz_col = Vec::with_capacity(r + 2);
            toeplitz_col.push(MultiPoly::one(g));
            toeplitz_col.push(-a);
            // v = S, then M·S, M²·S, ...
            let mut v: Vec<MultiPoly> = (0..r).map(|i| self.get(i, r).clone()).collect();
            for _ in 0..r {
                let mut rs = MultiPoly::zero(g);
                for (k, vk) in v.iter().enumerate() {
                    let rk = self.get(r, k);
                    if !rk.is_zero() && !vk.is_zero() {
                        rs = &rs + &(rk * vk);
                    }
                }
                toeplitz_col.push(-rs);
                let mut next = alloc::vec![MultiPoly::zero(g); r];
                for (i, slot) in next.iter_mut().enumerate() {
                    let mut acc = MultiPoly::zero(g);
                    for (k, vk) in v.iter().enumerate() {
                        let m = self.get(i, k);
                        if !m.is_zero() && !vk.is_zero() {
                            acc = &acc + &(m * vk);
                        }
                    }
                    *slot = acc;
                }
                v = next;
            }
            let mut next_poly = alloc::vec![MultiPoly::zero(g); r + 2];
            for (i, slot) in next_poly.iter_mut().enumerate() {
                let mut acc = MultiPoly::zero(g);
                for (j, pj) in poly.iter().enumerate() {
                    if i >= j {
                        let t = &toeplitz_col[i - j];
                        if !t.is_zero() && !pj.is_zero() {
                            acc = &acc + &(t * pj);
                        }
                    }
                }
                *slot = acc;
            }
            poly = next_poly;
        }
        poly
    }

    pub fn determinant(&self) -> MultiPoly {
        let n = self.rows;
        let cp = self.charpoly();
        if n.is_multiple_of(2) {
            cp[n].clone()
        } else {
            -&cp[n]
        }
    }

    /// Returns `(det, adj)` with `A · adj = det · I`.
    pub fn det_and_adjugate(&self) -> (MultiPoly, PolyMatrix) {
        let n = self.rows;
        let g = &self.gens;
        if let Some((det, adj)) = self.integer_entries().and_then(integer_det_and_adjugate) {
            let adj =
                PolyMatrix::from_fn(g, n, n, |r, c| MultiPoly::constant(g, adj[r][c].clone()));
            return (MultiPoly::constant(g, det), adj);
        }
        self.charpoly_adjugate()
    }

    fn charpoly_adjugate(&self) -> (MultiPoly, PolyMatrix) {
        let n = self.rows;
        let g = &self.gens;
        let cp = self.charpoly();
        let det = if n.is_multiple_of(2) {
            cp[n].clone()
        } else {
            -&cp[n]
        };
        if n == 0 {
            return (det, PolyMatrix::zeros(g, 0, 0));
        }
        // Cayley–Hamilton: adj(A) = (−1)^(n+1) (A^(n−1) + c1 A^(n−2) + ... + c_(n−1) I).
        let mut acc = PolyMatrix::identity(g, n);
        for c in cp.iter().take(n).skip(1) {
            acc = self.mul(&acc).add(&PolyMatrix::identity(g, n).scale(c));
        }
        let adj = if n % 2 == 1 {
            acc
        } else {
            acc.scale(&MultiPoly::constant(g, -1))
        };
        (det, adj)
    }
}

impl PolyMatrix {
    fn integer_entries(&self) -> Option<Vec<Vec<BigInt>>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(MultiPoly::as_constant).collect())
            .collect()
    }
}

/// Fraction-free Gauss–Jordan on `[A | I]`. `None` when `A` is singular.
fn integer_det_and_adjugate(a: Vec<Vec<BigInt>>) -> Option<(BigInt, Vec<Vec<BigInt>>)> {
    let n = a.len();
    let mut m: Vec<Vec<BigInt>> = a
        .into_iter()
        .enumerate()
        .map(|(r, mut row)| {
            row.extend((0..n).map(|c| BigInt::from((r == c) as u8)));
            row
        })
        .collect();
    let mut prev = BigInt::one();
    let mut negate = false;
    for k in 0..n {
        let p = (k..n).find(|&r| !m[r][k].is_zero())?;
        if p != k {
            m.swap(p, k);
            negate = !negate;
        }
        let pivot_row = m[k].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == k {
                continue;
            }
            let f = row[k].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = (&pivot_row[k] * &*x - &f * y) / &prev;
            }
        }
        prev = pivot_row[k].clone();
    }
    let fix = |x: BigInt| if negate { -x } else { x };
    let adj = m
        .into_iter()
        .map(|row| row[n..].iter().cloned().map(fix).collect())
        .collect();
    Some((fix(prev), adj))
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            f.write_str("[")?;
            for (c, v) in self.row(r).iter().enumerate() {
                if c > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", v)?;
            }
            f.write_str("]\n")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn abc() -> Generators {
        Generators::new(&["a", "b", "c"]).unwrap()
    }

    fn m(rows: &[&[&str]]) -> PolyMatrix {
        let g = abc();
        PolyMatrix::from_fn(&g, rows.len(), rows[0].len(), |r, c| {
            MultiPoly::parse(&g, rows[r][c]).unwrap()
        })
    }

    /// Cofactor expansion along the first row: independent of Berkowitz.
    fn laplace(a: &PolyMatrix) -> MultiPoly {
        let n = a.rows();
        let g = a.generators();
        if n == 0 {
            return MultiPoly::one(g);
        }
        let mut acc = MultiPoly::zero(g);
        for j in 0..n {
            let minor = PolyMatrix::from_fn(g, n - 1, n - 1, |r, c| {
                a.get(r + 1, if c < j { c } else { c + 1 }).clone()
            });
            let term = a.get(0, j) * &laplace(&minor);
            acc = if j % 2 == 0 {
                &acc + &term
            } else {
                &acc - &term
            };
        }
        acc
    }

    #[test]
    fn mv_gram_is_unimodular() {
        let gram = m(&[
            &["0", "0", "-1"],
            &["0", "-1", "-a"],
            &["-1", "-a", "-a^2 - b"],
        ]);
        assert_eq!(gram.determinant(), laplace(&gram));
        assert_eq!(gram.determinant().unit_sign(), Some(1));
        let (det, adj) = gram.det_and_adjugate();
        assert_eq!(gram.mul(&adj), PolyMatrix::identity(&abc(), 3).scale(&det));
    }

    #[test]
    fn small_shapes() {
        let g = abc();
        let one = m(&[&["a"]]);
        let (d, adj) = one.det_and_adjugate();
        assert_eq!(d, MultiPoly::parse(&g, "a").unwrap());
        assert_eq!(adj, PolyMatrix::identity(&g, 1));
        let two = m(&[&["a", "b"], &["c", "1"]]);
        let (d, adj) = two.det_and_adjugate();
        assert_eq!(d, MultiPoly::parse(&g, "a - b*c").unwrap());
        assert_eq!(adj, m(&[&["1", "-b"], &["-c", "a"]]));
        let singular = m(&[&["1", "0"], &["0", "0"]]);
        assert!(singular.determinant().is_zero());
    }

    #[test]
    fn kron_uses_left_major_indexing() {
        let a = m(&[&["a", "b"]]);
        let b = m(&[&["1"], &["c"]]);
        let k = a.kron(&b);
        assert_eq!(k, m(&[&["a", "b"], &["a*c", "b*c"]]));
    }

    fn arb_matrix(n: usize) -> impl Strategy<Value = PolyMatrix> {
        proptest::collection::vec((-3i64..=3, 0u32..2), n * n).prop_map(move |cells| {
            let g = abc();
            let a = MultiPoly::generator(&g, "a").unwrap();
            PolyMatrix::from_fn(&g, n, n, |r, c| {
                let (k, e) = cells[r * n + c];
                &MultiPoly::constant(&g, k) * &a.pow(e)
            })
        })
    }

    proptest! {
        #[test]
        fn berkowitz_matches_laplace(a in (1usize..5).prop_flat_map(arb_matrix)) {
            let (det, adj) = a.det_and_adjugate();
            prop_assert_eq!(&det, &laplace(&a));
            let n = a.rows();
            prop_assert_eq!(a.mul(&adj), PolyMatrix::identity(a.generators(), n).scale(&det));
        }

        #[test]
        fn integer_elimination_matches_charpoly(
            (n, cells) in (1usize..6).prop_flat_map(|n| (Just(n), proptest::collection::vec(-4i64..=4, n * n)))
        ) {
            let g = Generators::integers();
            let a = PolyMatrix::from_fn(&g, n, n, |r, c| MultiPoly::constant(&g, cells[r * n + c]));
            let fast = a.det_and_adjugate();
            let slow = a.charpoly_adjugate();
            prop_assert_eq!(&fast.0, &slow.0);
            if !fast.0.is_zero() {
                prop_assert_eq!(&fast.1, &slow.1);
            }
        }
    }
}

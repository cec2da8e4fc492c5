//! Theta-foam value tables `θ(i, j, k)` on basis index triples.
//!
//! Tables are sparse (absent triples are 0, which also covers out-of-range
//! arguments) and always closed under cyclic rotation of the triple.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::coeffring::{Generators, MultiPoly, RingError};
use crate::frobalg::AlgebraElement;

pub type Triple = (usize, usize, usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ThetaError {
    IndexOutOfRange {
        triple: Triple,
        rank: usize,
    },
    CyclicConflict {
        first: Triple,
        second: Triple,
    },
    /// The odd-N construction was asked for an even or too small N.
    InvalidLieRank(usize),
    RankMismatch {
        expected: usize,
        found: usize,
    },
    Ring(RingError),
}

impl fmt::Display for ThetaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ThetaError::IndexOutOfRange { triple, rank } => {
                write!(f, "theta index {:?} out of range for rank {}", triple, rank)
            }
            ThetaError::CyclicConflict { first, second } => write!(
                f,
                "cyclic symmetry conflict: {:?} and {:?} are rotations with different values",
                first, second
            ),
            ThetaError::InvalidLieRank(n) => {
                write!(f, "construction defined for odd N > 1 only (got N = {})", n)
            }
            ThetaError::RankMismatch { expected, found } => {
                write!(
                    f,
                    "theta rank {} does not match algebra rank {}",
                    found, expected
                )
            }
            ThetaError::Ring(e) => write!(f, "{}", e),
        }
    }
}

impl core::error::Error for ThetaError {}

fn rotations((i, j, k): Triple) -> [Triple; 3] {
    [(i, j, k), (j, k, i), (k, i, j)]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaTable {
    rank: usize,
    gens: Generators,
    entries: BTreeMap<Triple, MultiPoly>,
}

impl ThetaTable {
    pub fn zero(gens: &Generators, rank: usize) -> Self {
        ThetaTable {
            rank,
            gens: gens.clone(),
            entries: BTreeMap::new(),
        }
    }

    /// Closes `entries` under cyclic rotation. Two given rotations of the
    /// same triple must agree.
    pub fn from_entries<I>(gens: &Generators, rank: usize, entries: I) -> Result<Self, ThetaError>
    where
        I: IntoIterator<Item = (Triple, MultiPoly)>,
    {
        let mut table = Self::zero(gens, rank);
        let mut given: BTreeMap<Triple, (Triple, MultiPoly)> = BTreeMap::new();
        for (t, v) in entries {
            let (i, j, k) = t;
            if i >= rank || j >= rank || k >= rank {
                return Err(ThetaError::IndexOutOfRange { triple: t, rank });
            }
            let v = v.embed(gens).map_err(ThetaError::Ring)?;
            for r in rotations(t) {
                if let Some((src, old)) = given.get(&r) {
                    if old != &v {
                        return Err(ThetaError::CyclicConflict {
                            first: *src,
                            second: t,
                        });
                    }
                }
            }
            for r in rotations(t) {
                given.insert(r, (t, v.clone()));
                if !v.is_zero() {
                    table.entries.insert(r, v.clone());
                }
            }
        }
        Ok(table)
    }

    /// Theta values on `Z[X]/(X^N)` that make the branch bracket a Lie
    /// bracket: `θ(0, b, c) = 1` when `b + c = N` and `1 < b < c`,
    /// `−1` when `1 < c < b`, plus rotations; for `N = 3` the lower bound
    /// `1 <` is dropped.
    pub fn lie(n: usize) -> Result<Self, ThetaError> {
        if n <= 1 || n.is_multiple_of(2) {
            return Err(ThetaError::InvalidLieRank(n));
        }
        let z = Generators::integers();
        let lower = if n == 3 { 0 } else { 1 };
        let mut entries = Vec::new();
        for b in 1..n {
            let c = n - b;
            let value = if lower < b && b < c {
                1
            } else if lower < c && c < b {
                -1
            } else {
                continue;
            };
            entries.push(((0, b, c), MultiPoly::constant(&z, value)));
        }
        Self::from_entries(&z, n, entries)
    }

    /// Rank-3 table `θ(1, X, X²) = 1 = −θ(1, X², X)`, zero elsewhere.
    pub fn mv() -> Self {
        let z = Generators::integers();
        Self::from_entries(
            &z,
            3,
            [
                ((0, 1, 2), MultiPoly::constant(&z, 1)),
                ((0, 2, 1), MultiPoly::constant(&z, -1)),
            ],
        )
        .expect("built-in table is consistent")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &Generators {
        &self.gens
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> MultiPoly {
        self.entries
            .get(&(i, j, k))
            .cloned()
            .unwrap_or_else(|| MultiPoly::zero(&self.gens))
    }

    /// `θ` with possibly negative or oversized arguments, which give 0.
    pub fn get_signed(&self, i: i64, j: i64, k: i64) -> MultiPoly {
        let r = self.rank as i64;
        if [i, j, k].iter().any(|&x| x < 0 || x >= r) {
            MultiPoly::zero(&self.gens)
        } else {
            self.get(i as usize, j as usize, k as usize)
        }
    }

    /// Nonzero entries in index order.
    pub fn entries(&self) -> impl Iterator<Item = (&Triple, &MultiPoly)> {
        self.entries.iter()
    }

    /// Moves all values into a (larger) coefficient ring.
    pub fn embed(&self, gens: &Generators) -> Result<Self, ThetaError> {
        let entries = self
            .entries
            .iter()
            .map(|(t, v)| Ok((*t, v.embed(gens).map_err(ThetaError::Ring)?)))
            .collect::<Result<BTreeMap<_, _>, ThetaError>>()?;
        Ok(ThetaTable {
            rank: self.rank,
            gens: gens.clone(),
            entries,
        })
    }

    /// Trilinear extension to algebra elements.
    pub fn eval(
        &self,
        u: &AlgebraElement,
        v: &AlgebraElement,
        w: &AlgebraElement,
    ) -> Result<MultiPoly, ThetaError> {
        for e in [u, v, w] {
            if e.rank() != self.rank {
                return Err(ThetaError::RankMismatch {
                    expected: self.rank,
                    found: e.rank(),
                });
            }
        }
        let gens = u.generators();
        let mut acc = MultiPoly::zero(gens);
        for (&(i, j, k), t) in &self.entries {
            let c = u.coeff(i) * v.coeff(j);
            if c.is_zero() {
                continue;
            }
            let c = &c * w.coeff(k);
            if c.is_zero() {
                continue;
            }
            let t = t.embed(gens).map_err(ThetaError::Ring)?;
            acc = &acc + &(&c * &t);
        }
        Ok(acc)
    }

    /// True when `θ(i,j,k) = θ(j,k,i)` on all `n³` triples.
    pub fn is_cyclic(&self) -> bool {
        let n = self.rank;
        (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| self.get(i, j, k) == self.get(j, k, i))))
    }
}

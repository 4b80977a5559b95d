//! Walk counting with witness-count transfer matrices.
//!
//! Entry `(a, b)` of the matrix is the number of witnesses projecting onto
//! `{a, b}`, so `1ᵀ A^ℓ 1` counts witness-labelled walks of length `ℓ`,
//! which is exactly the number of homomorphisms from a path with `ℓ` edges.
//! The scalar is generic: exact big integers, machine integers, or floats.

use std::ops::{Add, Mul};

use num_traits::{One, Zero};

use crate::graph::{VertexId, WitnessedGraph};

/// Scalars closed under `+` and `*` with both identities.
pub trait Semiring: Zero + One + Clone + Add<Output = Self> + Mul<Output = Self> {
    /// `n · 1` by repeated addition, so no conversion trait is required.
    fn from_count(n: usize) -> Self {
        (0..n).fold(Self::zero(), |acc, _| acc + Self::one())
    }
}

impl<T> Semiring for T where T: Zero + One + Clone + Add<Output = T> + Mul<Output = T> {}

#[derive(Debug, Clone, PartialEq)]
pub struct TransferMatrix<T> {
    size: usize,
    entries: Vec<T>,
}

impl<T: Semiring> TransferMatrix<T> {
    pub fn identity(size: usize) -> Self {
        let mut entries = vec![T::zero(); size * size];
        for i in 0..size {
            entries[i * size + i] = T::one();
        }
        TransferMatrix { size, entries }
    }

    pub fn witness_counts(g: &WitnessedGraph) -> Self {
        let size = g.vertex_count();
        let mut counts = vec![0usize; size * size];
        for w in g.witnesses() {
            let (a, b) = g.ends(w);
            counts[a.0 * size + b.0] += 1;
            counts[b.0 * size + a.0] += 1;
        }
        TransferMatrix { size, entries: counts.into_iter().map(T::from_count).collect() }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, a: usize, b: usize) -> &T {
        &self.entries[a * self.size + b]
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.size, other.size, "matrix sizes differ");
        let n = self.size;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let cell = (0..n).fold(T::zero(), |acc, k| acc + self.get(i, k).clone() * other.get(k, j).clone());
                entries.push(cell);
            }
        }
        TransferMatrix { size: n, entries }
    }

    /// `self^exp` by repeated squaring.
    pub fn pow(&self, mut exp: u64) -> Self {
        let mut result = Self::identity(self.size);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.mul(&base);
            exp >>= 1;
        }
        result
    }

    /// Sum of all entries.
    pub fn total(&self) -> T {
        self.entries.iter().cloned().fold(T::zero(), |acc, x| acc + x)
    }
}

/// Number of witness-labelled walks of length `len` in `g`.
pub fn walk_count<T: Semiring>(g: &WitnessedGraph, len: u64) -> T {
    TransferMatrix::<T>::witness_counts(g).pow(len).total()
}

/// Number of witness-labelled walks of length `len` from `a` to `b`.
pub fn walks_between<T: Semiring>(g: &WitnessedGraph, a: VertexId, b: VertexId, len: u64) -> T {
    TransferMatrix::<T>::witness_counts(g).pow(len).get(a.0, b.0).clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    #[test]
    fn triangle_walks() {
        let k3 = WitnessedGraph::complete(3);
        assert_eq!(walk_count::<BigUint>(&k3, 3), BigUint::from(24u32));
        assert_eq!(walk_count::<u64>(&k3, 0), 3);
        assert_eq!(walk_count::<f64>(&k3, 3), 24.0);
    }

    #[test]
    fn parallel_witnesses_multiply() {
        let mut g = WitnessedGraph::edgeless(2);
        g.add_witness(VertexId(0), VertexId(1)).unwrap();
        g.add_witness(VertexId(0), VertexId(1)).unwrap();
        // two endpoints, two witness choices per step
        assert_eq!(walk_count::<u64>(&g, 3), 2 * 8);
    }

    #[test]
    fn closed_walks_on_five_cycle() {
        let c5 = WitnessedGraph::cycle(5);
        assert_eq!(walks_between::<u64>(&c5, VertexId(0), VertexId(0), 5), 2);
        assert_eq!(walks_between::<u64>(&c5, VertexId(0), VertexId(0), 3), 0);
    }

    #[test]
    fn single_edge_long_walks() {
        assert_eq!(walk_count::<BigUint>(&WitnessedGraph::path(2), 11), BigUint::from(2u32));
    }
}

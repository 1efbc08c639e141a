#![allow(dead_code)]

use bowtie_core::Graph;
use proptest::prelude::*;

/// Graphs on `lo..=hi` vertices, each pair present with probability 1/2.
pub fn graphs(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    (lo..=hi).prop_flat_map(|n| prop::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |bits| from_bits(n, &bits)))
}

/// Graphs with a chosen edge density, which reaches sparse and dense regimes.
pub fn graphs_dense(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    (lo..=hi, 0.05f64..0.95).prop_flat_map(|(n, p)| {
        prop::collection::vec(prop::bool::weighted(p), n * n.saturating_sub(1) / 2).prop_map(move |bits| from_bits(n, &bits))
    })
}

pub fn from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut it = bits.iter();
    Graph::from_fn(n, |_, _| *it.next().unwrap())
}

/// Every labelled graph on `n` vertices.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs = n * n.saturating_sub(1) / 2;
    (0u64..1 << pairs).map(move |mask| {
        let mut i = 0;
        Graph::from_fn(n, |_, _| {
            let bit = mask >> i & 1 == 1;
            i += 1;
            bit
        })
    })
}

/// Largest adjacency eigenvalue from a dense symmetric solver.
pub fn dense_lambda(g: &Graph) -> f64 {
    let n = g.vertex_count();
    let m = nalgebra::DMatrix::from_row_slice(n, n, &g.adjacency_matrix());
    m.symmetric_eigenvalues().max()
}

pub fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

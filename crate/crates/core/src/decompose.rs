//! The split of a graph around its largest Perron coordinate: `u`,
//! `A = N(u)`, `B = V − A − u`, with `A₊` the vertices of `A` having a
//! neighbour in `A` and `A₀ = A − A₊`.

use alloc::vec::Vec;

use crate::error::SpectralError;
use crate::graph::Graph;
use crate::spectral::SpectralEstimate;

/// Relative gap under which two Perron coordinates count as tied.
pub const TIE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct NeighborhoodDecomposition {
    pub u: usize,
    /// Every vertex whose coordinate ties with the maximum, `u` included.
    pub tied_with: Vec<usize>,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub a_plus: Vec<usize>,
    pub a_zero: Vec<usize>,
    pub e_a: usize,
    pub e_ab: usize,
    pub e_b: usize,
    /// `d_A(v)` for every vertex `v`.
    pub d_a: Vec<usize>,
    /// `|A| ≥` the certified lower bracket of `λ`.
    pub degree_at_least_lambda: bool,
    /// `|λ²x_u − (|A|x_u + Σ_{v∈A} d_A(v)x_v + Σ_{w∈B} d_A(w)x_w)|` with `λ`
    /// the bracket midpoint.
    pub identity_residual: f64,
}

impl NeighborhoodDecomposition {
    /// The walk-count identity holds within `10·tol`.
    pub fn identity_holds(&self, tol: f64) -> bool {
        self.identity_residual <= 10.0 * tol
    }
}

pub fn decompose_at_max_coordinate(
    g: &Graph,
    est: &SpectralEstimate,
) -> Result<NeighborhoodDecomposition, SpectralError> {
    let n = g.vertex_count();
    if n == 0 || est.vector.len() != n {
        return Err(SpectralError::InvalidInput("estimate does not match the graph".into()));
    }
    if !g.is_connected() {
        return Err(SpectralError::InvalidInput("decomposition needs a connected graph".into()));
    }
    let x = &est.vector;
    let xmax = x.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let tied_with: Vec<usize> = (0..n).filter(|&v| x[v] >= xmax * (1.0 - TIE_TOLERANCE)).collect();
    let u = tied_with[0];
    let a: Vec<usize> = g.neighbors(u).collect();
    let mut in_a = alloc::vec![false; n];
    for &v in &a {
        in_a[v] = true;
    }
    let b: Vec<usize> = (0..n).filter(|&v| v != u && !in_a[v]).collect();
    let d_a: Vec<usize> = (0..n).map(|v| g.neighbors(v).filter(|&w| in_a[w]).count()).collect();
    let (a_plus, a_zero): (Vec<usize>, Vec<usize>) = a.iter().partition(|&&v| d_a[v] >= 1);
    let e_a = a.iter().map(|&v| d_a[v]).sum::<usize>() / 2;
    let e_ab = b.iter().map(|&w| d_a[w]).sum();
    let e_b = g.edge_count() - e_a - e_ab - a.len();
    let lambda = est.midpoint();
    let rhs = a.len() as f64 * x[u]
        + a.iter().map(|&v| d_a[v] as f64 * x[v]).sum::<f64>()
        + b.iter().map(|&w| d_a[w] as f64 * x[w]).sum::<f64>();
    Ok(NeighborhoodDecomposition {
        u,
        tied_with,
        degree_at_least_lambda: a.len() as f64 >= est.lower,
        identity_residual: (lambda * lambda * x[u] - rhs).abs(),
        a,
        b,
        a_plus,
        a_zero,
        e_a,
        e_ab,
        e_b,
        d_a,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::spectral::spectral_radius;

    #[test]
    fn plus_graph_on_eight() {
        let g = families::make_balanced_plus(8).unwrap();
        let est = spectral_radius(&g, 1e-10).unwrap();
        let d = decompose_at_max_coordinate(&g, &est).unwrap();
        // the extra edge's endpoints carry the largest coordinate
        assert_eq!(d.u, 0);
        assert_eq!(d.tied_with, alloc::vec![0, 1]);
        assert_eq!(d.a.len(), 5);
        assert!(d.degree_at_least_lambda);
        assert!(d.identity_holds(1e-10), "{}", d.identity_residual);
        assert_eq!(d.a.len() + d.b.len() + 1, 8);
        assert_eq!(d.e_a + d.e_ab + d.e_b + d.a.len(), g.edge_count());
    }

    #[test]
    fn bowtie_centre() {
        let g = families::make_fan(2).unwrap();
        let est = spectral_radius(&g, 1e-10).unwrap();
        let d = decompose_at_max_coordinate(&g, &est).unwrap();
        assert_eq!(d.u, 0);
        assert_eq!(d.a, alloc::vec![1, 2, 3, 4]);
        assert_eq!(d.a_plus.len(), 4);
        assert!(d.a_zero.is_empty());
        assert_eq!(d.e_a, 2);
        assert!(d.b.is_empty());
        assert!((est.midpoint() - 2.5616).abs() < 1e-4);
    }

    #[test]
    fn regular_graph_identity() {
        let g = families::complete_bipartite(3, 3);
        let est = spectral_radius(&g, 1e-10).unwrap();
        let d = decompose_at_max_coordinate(&g, &est).unwrap();
        assert_eq!(d.tied_with.len(), 6);
        // λ² = |A| + Σ d_A(v) in units of the common coordinate
        let lhs = est.midpoint().powi(2);
        let rhs = d.a.len() + d.a.iter().chain(&d.b).map(|&v| d.d_a[v]).sum::<usize>();
        assert!((lhs - rhs as f64).abs() < 1e-8);
        assert!(d.identity_holds(1e-10));
    }

    #[test]
    fn rejects_disconnected() {
        let g = families::complete(3).disjoint_union(&families::complete(3));
        let est = spectral_radius(&g, 1e-10).unwrap();
        assert!(decompose_at_max_coordinate(&g, &est).is_err());
    }
}

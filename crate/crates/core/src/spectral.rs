//! Certified brackets for the largest adjacency eigenvalue.
//!
//! Each component is reduced to the quotient matrix `B` of its coarsest
//! equitable partition, which has the same Perron root. Shifted power
//! iteration on `B` drives a positive vector `y` towards the Perron vector.
//! For any positive `y` the Collatz–Wielandt ratios `(By)_i / y_i` bracket
//! the Perron root of a nonnegative matrix, so the reported `upper` is sound
//! regardless of convergence; `lower` is the larger of the minimum ratio and
//! the Rayleigh quotient of the lifted vector. Both are widened by a bound on
//! the floating-point error of their evaluation.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::canon::equitable_cells;
use crate::error::SpectralError;
use crate::graph::Graph;

/// Tolerance used for verification runs.
pub const VERIFY_TOL: f64 = 1e-10;
/// Tolerance used inside searches.
pub const SEARCH_TOL: f64 = 1e-6;

/// A bracket `lower ≤ λ ≤ upper` with the nonnegative unit vector it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralEstimate {
    pub lower: f64,
    pub upper: f64,
    pub vector: Vec<f64>,
    pub iterations: usize,
}

impl SpectralEstimate {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lower <= x && x <= self.upper
    }

    /// True when the two brackets overlap.
    pub fn overlaps(&self, other: &SpectralEstimate) -> bool {
        self.lower <= other.upper && other.lower <= self.upper
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralOptions {
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for SpectralOptions {
    fn default() -> Self {
        SpectralOptions {
            tol: VERIFY_TOL,
            max_iter: 100_000,
        }
    }
}

impl SpectralOptions {
    pub fn with_tol(tol: f64) -> Self {
        SpectralOptions {
            tol,
            ..Default::default()
        }
    }
}

pub fn spectral_radius(g: &Graph, tol: f64) -> Result<SpectralEstimate, SpectralError> {
    spectral_radius_with(g, &SpectralOptions::with_tol(tol))
}

/// Like [`spectral_radius`] with an explicit iteration budget. Disconnected
/// graphs get the maximum over their components.
pub fn spectral_radius_with(g: &Graph, opts: &SpectralOptions) -> Result<SpectralEstimate, SpectralError> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(SpectralError::InvalidInput("graph has no vertices".into()));
    }
    check_tol(opts.tol)?;
    if g.edge_count() == 0 {
        return Ok(SpectralEstimate {
            lower: 0.0,
            upper: 0.0,
            vector: vec![1.0 / libm::sqrt(n as f64); n],
            iterations: 0,
        });
    }
    let mut best: Option<SpectralEstimate> = None;
    let mut upper = 0.0f64;
    let mut iterations = 0;
    for comp in g.components() {
        if comp.len() < 2 {
            continue;
        }
        let sub = if comp.len() == n { g.clone() } else { g.induced(&comp) };
        let est = connected_estimate(&sub, opts)?;
        iterations += est.iterations;
        upper = upper.max(est.upper);
        if best.as_ref().is_none_or(|b| est.lower > b.lower) {
            let mut v = vec![0.0; n];
            for (i, &x) in comp.iter().zip(&est.vector) {
                v[*i] = x;
            }
            best = Some(SpectralEstimate { vector: v, ..est });
        }
    }
    let mut best = best.expect("a graph with edges has a nontrivial component");
    best.upper = upper;
    best.iterations = iterations;
    if best.width() > opts.tol {
        // another component's upper end keeps the bracket open
        return Err(SpectralError::NotConverged {
            iterations,
            lower: best.lower,
            upper: best.upper,
        });
    }
    Ok(best)
}

pub(crate) fn check_tol(tol: f64) -> Result<(), SpectralError> {
    if tol.is_finite() && tol > 0.0 {
        Ok(())
    } else {
        Err(SpectralError::InvalidInput(format!("tolerance must be positive and finite, got {tol}")))
    }
}

fn connected_estimate(g: &Graph, opts: &SpectralOptions) -> Result<SpectralEstimate, SpectralError> {
    let cells = equitable_cells(g);
    let mut cell_of = vec![0; g.vertex_count()];
    for (i, c) in cells.iter().enumerate() {
        for &v in c {
            cell_of[v] = i;
        }
    }
    let rows: Vec<Vec<(usize, f64)>> = cells
        .iter()
        .map(|c| {
            let mut counts = vec![0usize; cells.len()];
            for w in g.neighbors(c[0]) {
                counts[cell_of[w]] += 1;
            }
            counts
                .into_iter()
                .enumerate()
                .filter(|&(_, x)| x > 0)
                .map(|(j, x)| (j, x as f64))
                .collect()
        })
        .collect();
    let sizes: Vec<f64> = cells.iter().map(|c| c.len() as f64).collect();
    let r = perron_bracket(&rows, &sizes, opts)?;
    // lift to the graph and normalise in the 2-norm
    let norm = libm::sqrt(sizes.iter().zip(&r.y).map(|(s, y)| s * y * y).sum::<f64>());
    let vector = (0..g.vertex_count()).map(|v| r.y[cell_of[v]] / norm).collect();
    Ok(SpectralEstimate {
        lower: r.lower,
        upper: r.upper,
        vector,
        iterations: r.iterations,
    })
}

pub(crate) struct PerronBracket {
    pub lower: f64,
    pub upper: f64,
    pub y: Vec<f64>,
    pub iterations: usize,
}

// Iterations without a narrower bracket before giving up early.
const STALL_LIMIT: usize = 2_000;

/// Perron-root bracket of an irreducible nonnegative matrix given by sparse
/// rows. `weights` makes `diag(weights) * B` symmetric (cell sizes for an
/// equitable quotient), which turns the weighted Rayleigh quotient into a
/// lower bound.
pub(crate) fn perron_bracket(
    rows: &[Vec<(usize, f64)>],
    weights: &[f64],
    opts: &SpectralOptions,
) -> Result<PerronBracket, SpectralError> {
    let k = rows.len();
    let eps = f64::EPSILON;
    let row_sum_max = rows.iter().map(|r| r.iter().map(|e| e.1).sum::<f64>()).fold(0.0, f64::max);
    let row_nnz = rows.iter().map(Vec::len).max().unwrap_or(0) as f64;
    let shift = row_sum_max.max(1.0) / 2.0;
    let ratio_slack = (row_nnz + 4.0) * eps;
    let rq_slack = (2.0 * k as f64 + 8.0) * eps;

    let mut y: Vec<f64> = (0..k).map(|i| 1.0 + 1e-3 * (i + 1) as f64 / k as f64).collect();
    let mut z = vec![0.0; k];
    let mut lower = 0.0f64;
    let mut upper = f64::INFINITY;
    let mut best_y = y.clone();
    let mut best_width = f64::INFINITY;
    let mut last_improvement = 0;
    for it in 1..=opts.max_iter {
        for (zi, row) in z.iter_mut().zip(rows) {
            *zi = row.iter().map(|&(j, b)| b * y[j]).sum();
        }
        let mut lo = f64::INFINITY;
        let mut hi = 0.0f64;
        for (zi, yi) in z.iter().zip(&y) {
            let r = zi / yi;
            lo = lo.min(r);
            hi = hi.max(r);
        }
        let num: f64 = (0..k).map(|i| weights[i] * y[i] * z[i]).sum();
        let den: f64 = (0..k).map(|i| weights[i] * y[i] * y[i]).sum();
        let rq = num / den;
        let lo_cert = (lo * (1.0 - ratio_slack)).max(rq * (1.0 - rq_slack));
        let hi_cert = hi * (1.0 + ratio_slack);
        if lo_cert > lower {
            lower = lo_cert;
        }
        if hi_cert < upper {
            upper = hi_cert;
            best_y.copy_from_slice(&y);
        }
        let width = upper - lower;
        if width < best_width {
            best_width = width;
            last_improvement = it;
        }
        if width <= opts.tol || it - last_improvement > STALL_LIMIT {
            if width > opts.tol {
                return Err(SpectralError::NotConverged {
                    iterations: it,
                    lower,
                    upper,
                });
            }
            return Ok(PerronBracket {
                lower,
                upper,
                y: best_y,
                iterations: it,
            });
        }
        let mut norm = 0.0f64;
        for i in 0..k {
            y[i] = z[i] + shift * y[i];
            norm = norm.max(y[i]);
        }
        for yi in &mut y {
            *yi /= norm;
        }
    }
    Err(SpectralError::NotConverged {
        iterations: opts.max_iter,
        lower,
        upper,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use nalgebra::DMatrix;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn dense_lambda(g: &Graph) -> f64 {
        let n = g.vertex_count();
        let m = DMatrix::from_row_slice(n, n, &g.adjacency_matrix());
        m.symmetric_eigenvalues().iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    #[test]
    fn known_values() {
        let k34 = families::make_bipartite_plus(3, 4).unwrap();
        let e = spectral_radius(&k34, VERIFY_TOL).unwrap();
        assert!((e.midpoint() - 3.848).abs() < 1e-3);
        let kj = families::make_split_join(2, 5);
        let e = spectral_radius(&kj, VERIFY_TOL).unwrap();
        assert!((e.midpoint() - (1.0 + 41f64.sqrt()) / 2.0).abs() < 1e-10);
        let apex = families::apex_triangle(1);
        let e = spectral_radius(&apex, VERIFY_TOL).unwrap();
        assert!((e.midpoint() - 3.086).abs() < 1e-3);
        let diamond = families::make_balanced_plus(4).unwrap();
        let e = spectral_radius(&diamond, VERIFY_TOL).unwrap();
        assert!((e.midpoint() - (1.0 + 17f64.sqrt()) / 2.0).abs() < 1e-10);
        assert!(e.width() <= VERIFY_TOL);
    }

    #[test]
    fn brackets_contain_dense_eigenvalue() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..300 {
            let n = rng.gen_range(1..=10);
            let p = rng.gen_range(0.1..0.9);
            let g = Graph::from_fn(n, |_, _| rng.gen_bool(p));
            let e = spectral_radius(&g, 1e-9).unwrap();
            let exact = dense_lambda(&g);
            assert!(e.lower <= exact + 1e-12 && exact <= e.upper + 1e-12, "{g}: {exact} not in [{}, {}]", e.lower, e.upper);
            assert!(e.vector.iter().all(|&x| x >= 0.0));
            let norm: f64 = e.vector.iter().map(|x| x * x).sum();
            assert!((norm - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn disconnected_and_degenerate_inputs() {
        let g = families::complete(4).disjoint_union(&families::path(3)).disjoint_union(&Graph::empty(2));
        let e = spectral_radius(&g, 1e-10).unwrap();
        assert!((e.midpoint() - 3.0).abs() < 1e-10);
        assert!(e.vector[4..].iter().all(|&x| x == 0.0));
        let e = spectral_radius(&Graph::empty(3), 1e-10).unwrap();
        assert_eq!((e.lower, e.upper), (0.0, 0.0));
        assert!(matches!(spectral_radius(&Graph::empty(0), 1e-10), Err(SpectralError::InvalidInput(_))));
        assert!(matches!(spectral_radius(&families::complete(3), 0.0), Err(SpectralError::InvalidInput(_))));
        assert!(matches!(spectral_radius(&families::complete(3), f64::NAN), Err(SpectralError::InvalidInput(_))));
    }

    #[test]
    fn budget_exhaustion_is_distinct() {
        let g = families::path(9);
        let opts = SpectralOptions { tol: 1e-12, max_iter: 3 };
        assert!(matches!(spectral_radius_with(&g, &opts), Err(SpectralError::NotConverged { iterations: 3, .. })));
    }

    #[test]
    fn large_quotient_graph() {
        let g = families::make_balanced_plus(1000).unwrap();
        let e = spectral_radius(&g, VERIFY_TOL).unwrap();
        assert!(e.width() <= VERIFY_TOL);
        assert!(e.lower > 500.0);
    }
}

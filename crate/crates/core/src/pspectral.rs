//! Lower bounds on the p-spectral radius
//! `λ^(p)(G) = max { 2 Σ_{ij∈E} x_i x_j : x ≥ 0, ‖x‖_p = 1 }`.
//!
//! Each restart runs a monotone ascent on the unit p-sphere: a fixed-point
//! candidate from the stationarity condition is taken when it improves the
//! objective, otherwise a projected gradient step with backtracking. The
//! best value seen is a lower bound only.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::SpectralError;
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq)]
pub struct PSpectralEstimate {
    pub p: f64,
    /// `2 Σ_{ij∈E} x_i x_j` at `vector`.
    pub value: f64,
    /// Nonnegative with unit p-norm.
    pub vector: Vec<f64>,
    pub restarts: usize,
    /// Restarts whose ascent stalled at a stationary point within budget.
    pub converged: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PSpectralOptions {
    pub max_iter: usize,
    /// Relative objective gain under which an iteration counts as stalled.
    pub rel_tol: f64,
}

impl Default for PSpectralOptions {
    fn default() -> Self {
        PSpectralOptions {
            max_iter: 20_000,
            rel_tol: 1e-15,
        }
    }
}

pub fn p_spectral_radius(g: &Graph, p: f64, restarts: usize, seed: u64) -> Result<PSpectralEstimate, SpectralError> {
    p_spectral_radius_with(g, p, restarts, seed, &PSpectralOptions::default())
}

pub fn p_spectral_radius_with(
    g: &Graph,
    p: f64,
    restarts: usize,
    seed: u64,
    opts: &PSpectralOptions,
) -> Result<PSpectralEstimate, SpectralError> {
    if !(p.is_finite() && p >= 1.0) {
        return Err(SpectralError::InvalidInput(format!("p must be finite and >= 1, got {p}")));
    }
    if restarts == 0 {
        return Err(SpectralError::InvalidInput("need at least one restart".into()));
    }
    let n = g.vertex_count();
    if n == 0 {
        return Err(SpectralError::InvalidInput("graph has no vertices".into()));
    }
    let adj: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).collect()).collect();
    let ascent = Ascent {
        adj: &adj,
        p,
        shift: g.max_degree() as f64,
        opts,
    };
    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut converged = 0;
    for r in 0..restarts {
        let start = if r == 0 {
            vec![1.0; n]
        } else {
            // restart r depends only on (seed, r), so more restarts never lower the best
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (r as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
            (0..n).map(|_| rng.gen::<f64>() + 1e-3).collect()
        };
        let (x, ok) = ascent.run(normalize(start, p));
        converged += usize::from(ok);
        let f = objective(&adj, &x);
        if best.as_ref().is_none_or(|(bf, _)| f > *bf) {
            best = Some((f, x));
        }
    }
    let (value, vector) = best.expect("at least one restart");
    Ok(PSpectralEstimate {
        p,
        value,
        vector,
        restarts,
        converged,
    })
}

fn p_norm(x: &[f64], p: f64) -> f64 {
    libm::pow(x.iter().map(|&v| libm::pow(v, p)).sum::<f64>(), 1.0 / p)
}

fn normalize(mut x: Vec<f64>, p: f64) -> Vec<f64> {
    for v in &mut x {
        *v = v.max(0.0);
    }
    let norm = p_norm(&x, p);
    if norm > 0.0 {
        for v in &mut x {
            *v /= norm;
        }
    }
    x
}

fn objective(adj: &[Vec<usize>], x: &[f64]) -> f64 {
    adj.iter()
        .enumerate()
        .map(|(i, nb)| x[i] * nb.iter().map(|&j| x[j]).sum::<f64>())
        .sum()
}

fn times_adj(adj: &[Vec<usize>], x: &[f64]) -> Vec<f64> {
    adj.iter().map(|nb| nb.iter().map(|&j| x[j]).sum()).collect()
}

struct Ascent<'a> {
    adj: &'a [Vec<usize>],
    p: f64,
    shift: f64,
    opts: &'a PSpectralOptions,
}

const STALL_STREAK: usize = 50;

impl Ascent<'_> {
    /// Returns the final point and whether it stalled before the budget ran out.
    fn run(&self, mut x: Vec<f64>) -> (Vec<f64>, bool) {
        let mut f = objective(self.adj, &x);
        let mut step = 1.0;
        let mut streak = 0;
        for _ in 0..self.opts.max_iter {
            let ax = times_adj(self.adj, &x);
            let candidate = self.fixed_point(&x, &ax, f);
            let (next, fnext) = match candidate {
                Some(c) => c,
                None => match self.gradient_step(&x, &ax, f, &mut step) {
                    Some(c) => c,
                    None => return (x, true),
                },
            };
            let gain = fnext - f;
            x = next;
            f = fnext;
            if gain <= self.opts.rel_tol * f.abs().max(f64::MIN_POSITIVE) {
                streak += 1;
                if streak >= STALL_STREAK {
                    return (x, true);
                }
            } else {
                streak = 0;
            }
        }
        (x, false)
    }

    fn fixed_point(&self, x: &[f64], ax: &[f64], f: f64) -> Option<(Vec<f64>, f64)> {
        let p = self.p;
        let y: Vec<f64> = if p == 1.0 {
            // replicator dynamics on the simplex
            if f <= 0.0 {
                return None;
            }
            x.iter().zip(ax).map(|(xi, ai)| xi * 2.0 * ai / (2.0 * f)).collect()
        } else {
            // stationary points satisfy (Ax)_i ∝ x_i^{p-1}; the shift keeps
            // the map from oscillating on bipartite pieces
            x.iter()
                .zip(ax)
                .map(|(&xi, &ai)| libm::pow(ai + self.shift * libm::pow(xi, p - 1.0), 1.0 / (p - 1.0)))
                .collect()
        };
        let y = normalize(y, p);
        let fy = objective(self.adj, &y);
        (fy >= f && fy.is_finite()).then_some((y, fy))
    }

    fn gradient_step(&self, x: &[f64], ax: &[f64], f: f64, step: &mut f64) -> Option<(Vec<f64>, f64)> {
        *step = (*step * 2.0).min(1.0);
        while *step > 1e-12 {
            let y: Vec<f64> = x.iter().zip(ax).map(|(xi, ai)| xi + *step * 2.0 * ai).collect();
            let y = normalize(y, self.p);
            let fy = objective(self.adj, &y);
            if fy > f {
                return Some((y, fy));
            }
            *step /= 2.0;
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::spectral::spectral_radius;

    #[test]
    fn triangle_closed_form() {
        let k3 = families::complete(3);
        for p in [1.0, 2.0, 4.0, 8.0] {
            let e = p_spectral_radius(&k3, p, 4, 1).unwrap();
            let want = 6.0 * libm::pow(3.0, -2.0 / p);
            assert!((e.value - want).abs() < 1e-9, "p={p}: {} vs {want}", e.value);
            assert!((p_norm(&e.vector, p) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn two_norm_matches_spectral_radius() {
        for g in [families::path(5), families::make_fan(2).unwrap(), families::complete_bipartite(2, 5)] {
            let e = p_spectral_radius(&g, 2.0, 3, 9).unwrap();
            let s = spectral_radius(&g, 1e-10).unwrap();
            assert!((e.value - s.midpoint()).abs() < 1e-8, "{g}");
            assert!(e.value <= s.upper + 1e-12);
        }
    }

    #[test]
    fn value_matches_vector() {
        let g = families::make_balanced_plus(7).unwrap();
        let e = p_spectral_radius(&g, 3.0, 5, 2).unwrap();
        assert_eq!(e.value, objective(&(0..7).map(|v| g.neighbors(v).collect()).collect::<Vec<_>>(), &e.vector));
        assert!(e.vector.iter().all(|&v| v >= 0.0));
    }

    #[test]
    fn monotone_in_restarts() {
        let g = families::make_fan(3).unwrap();
        let mut last = 0.0;
        for r in 1..6 {
            let e = p_spectral_radius(&g, 1.5, r, 77).unwrap();
            assert!(e.value >= last);
            last = e.value;
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        let g = families::complete(3);
        assert!(p_spectral_radius(&g, 0.5, 1, 0).is_err());
        assert!(p_spectral_radius(&g, f64::INFINITY, 1, 0).is_err());
        assert!(p_spectral_radius(&g, 2.0, 0, 0).is_err());
    }
}

//! Quotient matrices of vertex partitions.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::cubic::RootBracket;
use crate::error::{GraphError, SpectralError};
use crate::exact::{self, RatPoly, RootIsolator};
use crate::graph::Graph;

/// Two vertices of `cell` with different neighbour counts into `target`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EquitabilityViolation {
    pub cell: usize,
    pub target: usize,
    pub u: usize,
    pub v: usize,
}

/// Entry `(i, j)` counts the neighbours in cell `j` of the least vertex of
/// cell `i`; when the partition is equitable every vertex of cell `i` agrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientMatrix {
    pub size: usize,
    pub entries: Vec<Vec<usize>>,
    pub equitable: bool,
    pub counterexample: Option<EquitabilityViolation>,
}

/// The coarsest equitable partition (colour refinement from the unit
/// partition), cells sorted internally.
pub fn coarsest_equitable_partition(g: &Graph) -> Vec<Vec<usize>> {
    crate::canon::equitable_cells(g)
}

pub fn quotient_matrix(g: &Graph, partition: &[Vec<usize>]) -> Result<QuotientMatrix, GraphError> {
    let n = g.vertex_count();
    let mut cell_of = vec![usize::MAX; n];
    for (i, cell) in partition.iter().enumerate() {
        if cell.is_empty() {
            return Err(GraphError::InvalidPartition(format!("cell {i} is empty")));
        }
        for &v in cell {
            if v >= n {
                return Err(GraphError::InvalidPartition(format!("vertex {v} out of range")));
            }
            if cell_of[v] != usize::MAX {
                return Err(GraphError::InvalidPartition(format!("vertex {v} appears twice")));
            }
            cell_of[v] = i;
        }
    }
    if let Some(v) = cell_of.iter().position(|&c| c == usize::MAX) {
        return Err(GraphError::InvalidPartition(format!("vertex {v} is not covered")));
    }
    let k = partition.len();
    let counts = |v: usize| {
        let mut c = vec![0usize; k];
        for w in g.neighbors(v) {
            c[cell_of[w]] += 1;
        }
        c
    };
    let mut entries = Vec::with_capacity(k);
    let mut counterexample = None;
    for (i, cell) in partition.iter().enumerate() {
        let rep = *cell.iter().min().expect("nonempty");
        let row = counts(rep);
        if counterexample.is_none() {
            for &v in cell {
                let other = counts(v);
                if let Some(j) = (0..k).find(|&j| other[j] != row[j]) {
                    counterexample = Some(EquitabilityViolation {
                        cell: i,
                        target: j,
                        u: rep,
                        v,
                    });
                    break;
                }
            }
        }
        entries.push(row);
    }
    Ok(QuotientMatrix {
        size: k,
        entries,
        equitable: counterexample.is_none(),
        counterexample,
    })
}

impl QuotientMatrix {
    pub fn charpoly(&self) -> RatPoly {
        let m: Vec<Vec<BigInt>> = self
            .entries
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        exact::charpoly(&m)
    }

    /// Bracket of width at most `tol` around the largest real eigenvalue,
    /// isolated exactly from the characteristic polynomial.
    pub fn largest_eigenvalue(&self, tol: f64) -> Result<RootBracket, SpectralError> {
        crate::spectral::check_tol(tol)?;
        let iso = RootIsolator::new(&self.charpoly());
        // a dyadic width at or below tol
        let mut width = exact::int(1);
        while exact::to_f64(&width) > tol {
            width /= exact::int(2);
        }
        let (lo, hi) = iso
            .largest_root_bracket(&width)
            .ok_or_else(|| SpectralError::InvalidInput("quotient has no real eigenvalue".into()))?;
        let (lo, hi) = (exact::to_f64(&lo), exact::to_f64(&hi));
        // f64 conversion may round inwards; step out by one ulp each side
        Ok(RootBracket {
            lower: lo - lo.abs() * f64::EPSILON,
            upper: hi + hi.abs() * f64::EPSILON,
        })
    }
}

/// `(X1, X2, Y)` for `K_{⌊n/2⌋,⌈n/2⌉}^+`: the extra edge's endpoints, the
/// rest of the smaller part, and the larger part.
pub fn balanced_plus_partition(n: usize) -> Result<Vec<Vec<usize>>, GraphError> {
    if n < 6 {
        return Err(GraphError::param("balanced_plus_partition", format!("need n >= 6, got {n}")));
    }
    let a = n / 2;
    Ok(vec![vec![0, 1], (2..a).collect(), (a..n).collect()])
}

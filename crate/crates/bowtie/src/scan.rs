//! Extremal scans: rank every enumerated class by certified spectral
//! radius and certify the argmax.
//!
//! All classes are bracketed at the search tolerance first. Only classes
//! whose upper end reaches the second-best lower end can be the argmax or
//! the runner-up; those are re-bracketed at the verification tolerance.
//! Overlapping leaders are tightened tenfold down to `1e-13` and then
//! compared exactly through their characteristic polynomials.

use std::cmp::Ordering;
use std::time::Instant;

use bowtie_core::exact::compare_spectral_radii;
use bowtie_core::spectral::{SEARCH_TOL, VERIFY_TOL};
use bowtie_core::{canonical_key, graph6, spectral_radius, Graph, SpectralError};
use rayon::prelude::*;
use schemars::JsonSchema;
use serde::{Deserialize, Serialize};

use crate::enumerate::{enumerate_classes, EnumConstraint, EnumError, RunStats};
use crate::DEFAULT_SEED;

pub const SCHEMA_VERSION: &str = "1";

/// Tolerances tried on overlapping leaders before exact comparison.
const TIGHTENING: [f64; 3] = [1e-11, 1e-12, 1e-13];

#[derive(Debug, thiserror::Error)]
pub enum ScanError {
    #[error(transparent)]
    Enumeration(#[from] EnumError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct Bracket {
    pub lower: f64,
    pub upper: f64,
}

impl Bracket {
    pub fn of(g: &Graph, tol: f64) -> Result<Bracket, SpectralError> {
        if g.vertex_count() == 0 {
            return Ok(Bracket { lower: 0.0, upper: 0.0 });
        }
        let e = spectral_radius(g, tol)?;
        Ok(Bracket {
            lower: e.lower,
            upper: e.upper,
        })
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lower <= x && x <= self.upper
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct RankedGraph {
    pub canonical_key: String,
    pub graph6: String,
    pub n: usize,
    pub m: usize,
    pub lambda: Bracket,
}

impl RankedGraph {
    pub fn new(g: &Graph, lambda: Bracket) -> Self {
        RankedGraph {
            canonical_key: canonical_key(g).as_str().to_owned(),
            graph6: graph6::encode(g),
            n: g.vertex_count(),
            m: g.edge_count(),
            lambda,
        }
    }

    pub fn graph(&self) -> Graph {
        graph6::decode(&self.graph6).expect("reports hold valid graph6")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct EnumerationReport {
    pub schema_version: String,
    pub constraint: EnumConstraint,
    pub total_graphs: u64,
    /// Children discarded for containing the forbidden fan.
    pub pruned: u64,
    /// Classes of maximum spectral radius; more than one only on an exact tie.
    pub argmax: Vec<RankedGraph>,
    /// The remaining class with the largest upper bracket.
    pub runner_up: Option<RankedGraph>,
    /// Least argmax lower bracket minus the runner-up's upper bracket.
    pub runner_up_gap: Option<f64>,
    pub tie: bool,
    /// Leaders overlapped at `1e-13` and were ordered exactly.
    pub exact_adjudication: bool,
    pub edge_max: usize,
    pub runtime_ms: u64,
    pub seed: u64,
}

impl EnumerationReport {
    /// One argmax class, separated from every other class either by
    /// disjoint brackets or by exact comparison.
    pub fn unique_argmax_certified(&self) -> bool {
        self.argmax.len() == 1
            && !self.tie
            && (self.exact_adjudication || self.runner_up_gap.is_none_or(|g| g > 0.0))
    }

    pub fn argmax_keys(&self) -> Vec<&str> {
        self.argmax.iter().map(|r| r.canonical_key.as_str()).collect()
    }
}

struct Ranking {
    argmax: Vec<usize>,
    runner_up: Option<usize>,
    brackets: Vec<Bracket>,
    exact: bool,
}

fn refine(graphs: &[Graph], brackets: &mut [Bracket], which: &[usize], tol: f64) -> Result<bool, SpectralError> {
    let fresh: Vec<Result<Bracket, SpectralError>> = which.par_iter().map(|&i| Bracket::of(&graphs[i], tol)).collect();
    for (&i, b) in which.iter().zip(fresh) {
        match b {
            Ok(b) => brackets[i] = b,
            Err(SpectralError::NotConverged { .. }) => return Ok(false),
            Err(e) => return Err(e),
        }
    }
    Ok(true)
}

fn rank(graphs: &[Graph]) -> Result<Ranking, SpectralError> {
    let mut brackets = graphs
        .par_iter()
        .map(|g| Bracket::of(g, SEARCH_TOL))
        .collect::<Result<Vec<_>, _>>()?;
    let mut by_lower: Vec<usize> = (0..graphs.len()).collect();
    by_lower.sort_by(|&i, &j| brackets[j].lower.total_cmp(&brackets[i].lower).then(i.cmp(&j)));
    let second = by_lower.get(1).map_or(f64::NEG_INFINITY, |&i| brackets[i].lower);
    let contenders: Vec<usize> = (0..graphs.len()).filter(|&i| brackets[i].upper >= second).collect();
    refine(graphs, &mut brackets, &contenders, VERIFY_TOL)?;
    let leaders = |brackets: &[Bracket]| {
        let best = contenders.iter().map(|&i| brackets[i].lower).fold(f64::NEG_INFINITY, f64::max);
        contenders.iter().copied().filter(|&i| brackets[i].upper >= best).collect::<Vec<_>>()
    };
    let mut tied = leaders(&brackets);
    for tol in TIGHTENING {
        if tied.len() <= 1 || !refine(graphs, &mut brackets, &tied, tol)? {
            break;
        }
        tied = leaders(&brackets);
    }
    let mut exact = false;
    if tied.len() > 1 {
        exact = true;
        tied.sort_by(|&i, &j| compare_spectral_radii(&graphs[j], &graphs[i]).then(i.cmp(&j)));
        let top = tied[0];
        tied.retain(|&i| compare_spectral_radii(&graphs[i], &graphs[top]) == Ordering::Equal);
    }
    let runner_up = (0..graphs.len()).filter(|i| !tied.contains(i)).max_by(|&i, &j| {
        brackets[i]
            .upper
            .total_cmp(&brackets[j].upper)
            .then(brackets[i].lower.total_cmp(&brackets[j].lower))
            .then(j.cmp(&i))
    });
    Ok(Ranking {
        argmax: tied,
        runner_up,
        brackets,
        exact,
    })
}

/// Ranks already enumerated classes (canonical sorted order expected).
pub fn rank_classes(
    constraint: &EnumConstraint,
    graphs: &[Graph],
    stats: &RunStats,
    seed: u64,
    started: Instant,
) -> Result<EnumerationReport, SpectralError> {
    let r = rank(graphs)?;
    let ranked = |i: usize| RankedGraph::new(&graphs[i], r.brackets[i]);
    let mut argmax: Vec<RankedGraph> = r.argmax.iter().map(|&i| ranked(i)).collect();
    argmax.sort_by(|a, b| a.canonical_key.cmp(&b.canonical_key));
    let runner_up = r.runner_up.map(ranked);
    let runner_up_gap = runner_up.as_ref().and_then(|ru| {
        let least = argmax.iter().map(|a| a.lambda.lower).reduce(f64::min)?;
        Some(least - ru.lambda.upper)
    });
    Ok(EnumerationReport {
        schema_version: SCHEMA_VERSION.into(),
        constraint: *constraint,
        total_graphs: graphs.len() as u64,
        pruned: stats.pruned,
        tie: argmax.len() > 1,
        argmax,
        runner_up,
        runner_up_gap,
        exact_adjudication: r.exact,
        edge_max: graphs.iter().map(Graph::edge_count).max().unwrap_or(0),
        runtime_ms: started.elapsed().as_millis() as u64,
        seed,
    })
}

pub fn extremal_scan(constraint: &EnumConstraint, seed: u64) -> Result<EnumerationReport, ScanError> {
    let started = Instant::now();
    let (graphs, stats) = enumerate_classes(constraint)?;
    Ok(rank_classes(constraint, &graphs, &stats, seed, started)?)
}

/// Argmax of `λ` over `F_k`-free graphs on `n` vertices.
pub fn extremal_scan_order(n: usize, k: usize) -> Result<EnumerationReport, ScanError> {
    extremal_scan(&EnumConstraint::order(n).forbidding(k), DEFAULT_SEED)
}

/// Argmax of `λ` over isolated-free `F_k`-free graphs with `m` edges.
pub fn extremal_scan_size(m: usize, k: usize) -> Result<EnumerationReport, ScanError> {
    extremal_scan(&EnumConstraint::size(m).forbidding(k), DEFAULT_SEED)
}

/// Largest edge count of an `F_k`-free graph on `n` vertices.
pub fn turan_check(n: usize, k: usize) -> Result<usize, EnumError> {
    let (graphs, _) = enumerate_classes(&EnumConstraint::order(n).forbidding(k))?;
    Ok(graphs.iter().map(Graph::edge_count).max().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use bowtie_core::families;

    fn key(g: &Graph) -> String {
        canonical_key(g).as_str().to_owned()
    }

    #[test]
    fn order_seven() {
        let r = extremal_scan_order(7, 2).unwrap();
        assert!(r.unique_argmax_certified(), "{r:?}");
        assert_eq!(r.argmax_keys(), [key(&families::make_balanced_plus(7).unwrap())]);
        let root = bowtie_core::cubic::bipartite_plus_cubic(3, 4).unwrap().largest_root().unwrap();
        let b = r.argmax[0].lambda;
        assert!(b.lower <= root.upper && root.lower <= b.upper);
        assert!(r.argmax[0].lambda.width() <= VERIFY_TOL);
        let ru = r.runner_up.as_ref().unwrap();
        assert!((ru.lambda.midpoint() - 3.764_369).abs() < 1e-5, "{ru:?}");
    }

    #[test]
    fn size_seven_and_nine() {
        let r = extremal_scan_size(7, 2).unwrap();
        let apex = families::apex_triangle(1);
        assert_eq!(r.argmax_keys(), [key(&apex)]);
        assert!(r.argmax[0].lambda.lower > 3.086 && r.argmax[0].lambda.upper < 3.087);
        let r = extremal_scan_size(9, 2).unwrap();
        assert!(r.unique_argmax_certified());
        assert_eq!(r.argmax_keys(), [key(&families::make_split_join(2, 4))]);
        assert!(r.argmax[0].lambda.contains((1.0 + 33f64.sqrt()) / 2.0));
    }

    #[test]
    fn exact_ties_are_reported() {
        // K4 and K_{3,3} both have spectral radius 3
        let graphs = vec![
            bowtie_core::canonical_form(&families::complete(4)),
            bowtie_core::canonical_form(&families::complete_bipartite(3, 3)),
            bowtie_core::canonical_form(&families::path(3)),
        ];
        let c = EnumConstraint::order(0);
        let r = rank_classes(&c, &graphs, &RunStats::default(), 1, Instant::now()).unwrap();
        assert!(r.tie && r.exact_adjudication);
        assert_eq!(r.argmax.len(), 2);
        assert!(!r.unique_argmax_certified());
        assert_eq!(r.runner_up.as_ref().unwrap().m, 2);
    }

    #[test]
    fn small_turan_numbers() {
        assert_eq!(turan_check(4, 2).unwrap(), 6);
        assert_eq!(turan_check(5, 2).unwrap(), 7);
        assert_eq!(turan_check(6, 2).unwrap(), 10);
        assert_eq!(turan_check(6, 1).unwrap(), 9);
    }

    #[test]
    fn deterministic_across_pools() {
        let run = |threads| {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
            let mut r = pool.install(|| extremal_scan_order(6, 2)).unwrap();
            r.runtime_ms = 0;
            serde_json::to_string(&r).unwrap()
        };
        assert_eq!(run(1), run(3));
    }
}

//! Tabu hill climbing for `F_k`-free graphs of large spectral radius, and
//! the fixed-size conjecture harness built on it.
//!
//! A step evaluates every edge addition and removal (fixed order only) plus
//! edge rotations, each kept only if the result stays
//! `F_k`-free, and takes the best move whose edges are not tabu. Rotations
//! are a uniform sample plus every pairing of the lightest edges with the
//! heaviest non-edges under the current Perron vector, the first-order
//! best guesses for `λ`. A tabu move
//! is still allowed when it beats the best graph of the restart. Fixed-size
//! runs work on `m + 1` labelled vertices, enough for every isolated-free
//! graph with `m` edges that can be extremal, and use rotations only so the
//! edge count never changes.

use std::cmp::Ordering;
use std::ops::RangeInclusive;

use bowtie_core::bounds::bound_fixed_size_surd;
use bowtie_core::cubic::balanced_plus_cubic;
use bowtie_core::detect::{contains_fan, fan_through_edge};
use bowtie_core::exact::{compare_largest_root_to_surd, compare_largest_roots, graph_charpoly};
use bowtie_core::spectral::{SEARCH_TOL, VERIFY_TOL};
use bowtie_core::{canonical_key, graph6, spectral_radius, Graph, SpectralError};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use schemars::JsonSchema;
use serde::{Deserialize, Serialize};

use crate::enumerate::min_order;
use crate::scan::{extremal_scan_size, Bracket, ScanError};
use crate::DEFAULT_SEED;

/// Lightest edges and heaviest non-edges paired into guided rotations.
const GUIDED: usize = 8;

/// Sizes up to this many edges are delegated to exhaustive scans.
pub const EXHAUSTIVE_SIZE: usize = 13;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum SearchMode {
    FixedOrder { n: usize },
    FixedSize { m: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct SearchConfig {
    pub mode: SearchMode,
    pub k: usize,
    /// Rotations sampled per step.
    pub moves_per_step: usize,
    pub restarts: usize,
    /// Steps during which a changed vertex pair may not change back.
    pub tabu: usize,
    /// Step budget per restart.
    pub steps: usize,
    /// Steps without a new best after which a restart stops.
    pub patience: usize,
    pub seed: u64,
    /// Bracket width used while searching.
    pub tol: f64,
}

impl SearchConfig {
    pub fn new(mode: SearchMode, k: usize) -> Self {
        SearchConfig {
            mode,
            k,
            moves_per_step: 96,
            restarts: 12,
            tabu: 7,
            steps: 600,
            patience: 150,
            seed: DEFAULT_SEED,
            tol: SEARCH_TOL,
        }
    }

    pub fn fixed_order(n: usize, k: usize) -> Self {
        SearchConfig::new(SearchMode::FixedOrder { n }, k)
    }

    pub fn fixed_size(m: usize, k: usize) -> Self {
        SearchConfig::new(SearchMode::FixedSize { m }, k)
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        let bad = |s: &str| Err(SearchError::InvalidConfig(s.into()));
        let size = match self.mode {
            SearchMode::FixedOrder { n } => n,
            SearchMode::FixedSize { m } => m,
        };
        if size < 2 {
            return bad("order or size must be at least 2");
        }
        if self.k == 0 || self.moves_per_step == 0 || self.restarts == 0 || self.steps == 0 || self.patience == 0 {
            return bad("k, moves, restarts, steps and patience must be positive");
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return bad("tolerance must be positive");
        }
        Ok(())
    }

    fn vertices(&self) -> usize {
        match self.mode {
            SearchMode::FixedOrder { n } => n,
            SearchMode::FixedSize { m } => m + 1,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SearchError {
    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Scan(#[from] ScanError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub enum Verdict {
    #[serde(rename = "matches_conjectured_extremal")]
    MatchesConjecturedExtremal,
    #[serde(rename = "below_bound")]
    BelowBound,
    /// A counterexample candidate; decided by exact comparison.
    #[serde(rename = "EXCEEDS_BOUND")]
    ExceedsBound,
}

impl Verdict {
    fn from_cmp(o: Ordering) -> Self {
        match o {
            Ordering::Less => Verdict::BelowBound,
            Ordering::Equal => Verdict::MatchesConjecturedExtremal,
            Ordering::Greater => Verdict::ExceedsBound,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct SearchResult {
    pub mode: SearchMode,
    pub k: usize,
    /// The best graph, isolated vertices dropped in fixed-size mode.
    pub graph6: String,
    pub canonical_key: String,
    pub n: usize,
    pub m: usize,
    pub lambda: Bracket,
    /// `(k − 1 + √(4m − k² + 1))/2` for fixed size; `λ(K⁺)` for fixed order with `k = 2`.
    pub bound: Option<f64>,
    pub verdict: Option<Verdict>,
    /// Whether the best graph comes from an exhaustive scan.
    pub exhaustive: bool,
    /// Restarts that ended for lack of progress rather than budget.
    pub stagnated_restarts: usize,
    pub restarts: usize,
    pub seed: u64,
}

impl SearchResult {
    pub fn graph(&self) -> Graph {
        graph6::decode(&self.graph6).expect("results hold valid graph6")
    }

    fn assess(mode: SearchMode, k: usize, g: &Graph, exhaustive: bool) -> Result<SearchResult, SearchError> {
        let g = match mode {
            SearchMode::FixedSize { .. } => g.without_isolated(),
            SearchMode::FixedOrder { .. } => g.clone(),
        };
        let lambda = Bracket::of(&g, VERIFY_TOL)?;
        let (bound, verdict) = match mode {
            SearchMode::FixedSize { m } => match bound_fixed_size_surd(m as u64, k as u64) {
                Ok(s) => {
                    let v = compare_largest_root_to_surd(&graph_charpoly(&g), &s).map(Verdict::from_cmp);
                    (Some(s.to_f64()), v)
                }
                Err(_) => (None, None),
            },
            SearchMode::FixedOrder { n } if k == 2 && n >= 4 => {
                let cubic = balanced_plus_cubic(n as u64)?;
                let root = cubic.largest_root()?.midpoint();
                let v = compare_largest_roots(&graph_charpoly(&g), &cubic.to_ratpoly()).map(Verdict::from_cmp);
                (Some(root), v)
            }
            SearchMode::FixedOrder { .. } => (None, None),
        };
        Ok(SearchResult {
            mode,
            k,
            graph6: graph6::encode(&g),
            canonical_key: canonical_key(&g).as_str().to_owned(),
            n: g.vertex_count(),
            m: g.edge_count(),
            lambda,
            bound,
            verdict,
            exhaustive,
            stagnated_restarts: 0,
            restarts: 0,
            seed: 0,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Move {
    Add(usize, usize),
    Remove(usize, usize),
    Rotate { out: (usize, usize), into: (usize, usize) },
}

struct Restart<'a> {
    cfg: &'a SearchConfig,
    rng: ChaCha8Rng,
    pairs: Vec<(usize, usize)>,
}

impl Restart<'_> {
    /// `λ` midpoint and Perron vector.
    fn objective(&self, g: &Graph) -> Result<(f64, Vec<f64>), SpectralError> {
        let e = spectral_radius(g, self.cfg.tol)?;
        Ok((e.midpoint(), e.vector))
    }

    /// A random maximal graph, or one with `m` edges, without `F_k`. In
    /// fixed-size mode the edges go on a random number of vertices, from
    /// the fewest that can hold them up to all, so restarts mix dense and
    /// sparse starts.
    fn start(&mut self) -> Graph {
        let n = self.cfg.vertices();
        let mut g = Graph::empty(n);
        let (target, span) = match self.cfg.mode {
            SearchMode::FixedOrder { .. } => (usize::MAX, n),
            SearchMode::FixedSize { m } => (m, self.rng.gen_range(min_order(m)..=n)),
        };
        let mut order: Vec<(usize, usize)> = self.pairs.iter().copied().filter(|&(_, b)| b < span).collect();
        order.shuffle(&mut self.rng);
        // a sparse span can saturate early; spill over onto the rest
        let mut rest: Vec<(usize, usize)> = self.pairs.iter().copied().filter(|&(_, b)| b >= span).collect();
        rest.shuffle(&mut self.rng);
        order.extend(rest);
        for (a, b) in order {
            if g.edge_count() == target {
                break;
            }
            let h = g.with_edge(a, b).expect("in range");
            if !fan_through_edge(&h, self.cfg.k, a, b) {
                g = h;
            }
        }
        g
    }

    fn apply(&self, g: &Graph, mv: Move) -> Option<Graph> {
        let k = self.cfg.k;
        match mv {
            Move::Add(a, b) => {
                let h = g.with_edge(a, b).ok()?;
                (!fan_through_edge(&h, k, a, b)).then_some(h)
            }
            Move::Remove(a, b) => g.without_edge(a, b).ok(),
            Move::Rotate { out, into } => {
                let h = g.without_edge(out.0, out.1).ok()?.with_edge(into.0, into.1).ok()?;
                (!fan_through_edge(&h, k, into.0, into.1)).then_some(h)
            }
        }
    }

    fn candidates(&mut self, g: &Graph, x: &[f64]) -> Vec<Move> {
        let (mut edges, mut non_edges): (Vec<_>, Vec<_>) = self.pairs.iter().partition(|&&(a, b)| g.has_edge(a, b));
        let weight = |&(a, b): &(usize, usize)| x[a] * x[b];
        edges.sort_by(|p, q| weight(p).total_cmp(&weight(q)));
        non_edges.sort_by(|p, q| weight(q).total_cmp(&weight(p)));
        let k = self.cfg.k;
        let open: Vec<(usize, usize)> = non_edges
            .iter()
            .copied()
            .filter(|&(a, b)| !fan_through_edge(&g.with_edge(a, b).expect("in range"), k, a, b))
            .take(GUIDED)
            .collect();
        let mut moves = Vec::new();
        for &out in edges.iter().take(GUIDED) {
            for &into in &open {
                moves.push(Move::Rotate { out, into });
            }
        }
        if let SearchMode::FixedOrder { .. } = self.cfg.mode {
            moves.extend(non_edges.iter().map(|&(a, b)| Move::Add(a, b)));
            moves.extend(edges.iter().map(|&(a, b)| Move::Remove(a, b)));
        }
        if !edges.is_empty() && !non_edges.is_empty() {
            for _ in 0..self.cfg.moves_per_step {
                let out = edges[self.rng.gen_range(0..edges.len())];
                let into = non_edges[self.rng.gen_range(0..non_edges.len())];
                moves.push(Move::Rotate { out, into });
            }
        }
        moves
    }

    /// Best graph of the restart, its objective, and whether it stagnated.
    fn run(mut self) -> Result<(Graph, f64, bool), SpectralError> {
        let n = self.cfg.vertices();
        let mut g = self.start();
        let (mut f, mut x) = self.objective(&g)?;
        let (mut best, mut best_f) = (g.clone(), f);
        let mut tabu_until = vec![0usize; n * n];
        let mut last_gain = 0;
        for step in 1..=self.cfg.steps {
            if step - last_gain > self.cfg.patience {
                return Ok((best, best_f, true));
            }
            let mut chosen: Option<(Move, Graph, f64, Vec<f64>)> = None;
            for mv in self.candidates(&g, &x) {
                let Some(h) = self.apply(&g, mv) else { continue };
                let (fh, xh) = self.objective(&h)?;
                let touched = match mv {
                    Move::Add(a, b) | Move::Remove(a, b) => [(a, b), (a, b)],
                    Move::Rotate { out, into } => [out, into],
                };
                let is_tabu = touched.iter().any(|&(a, b)| tabu_until[a * n + b] > step);
                if is_tabu && fh <= best_f + 1e-12 {
                    continue;
                }
                if chosen.as_ref().is_none_or(|c| fh > c.2) {
                    chosen = Some((mv, h, fh, xh));
                }
            }
            let Some((mv, h, fh, xh)) = chosen else {
                return Ok((best, best_f, true));
            };
            let touched = match mv {
                Move::Add(a, b) | Move::Remove(a, b) => vec![(a, b)],
                Move::Rotate { out, into } => vec![out, into],
            };
            for (a, b) in touched {
                tabu_until[a * n + b] = step + self.cfg.tabu + 1;
            }
            g = h;
            f = fh;
            x = xh;
            if f > best_f + 1e-12 {
                best = g.clone();
                best_f = f;
                last_gain = step;
            }
        }
        Ok((best, best_f, false))
    }
}

/// Best `F_k`-free graph found over all restarts. Restart `r` is seeded
/// from `(seed, r)` alone, so results do not depend on scheduling; ties
/// between restarts go to the smaller canonical key.
pub fn hill_climb(cfg: &SearchConfig) -> Result<SearchResult, SearchError> {
    cfg.validate()?;
    let n = cfg.vertices();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let runs = (0..cfg.restarts)
        .into_par_iter()
        .map(|r| {
            let rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ (r as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
            let (g, f, stalled) = Restart {
                cfg,
                rng,
                pairs: pairs.clone(),
            }
            .run()?;
            Ok((canonical_key(&g), g, f, stalled))
        })
        .collect::<Result<Vec<_>, SpectralError>>()?;
    let stagnated = runs.iter().filter(|r| r.3).count();
    let (_, best, _, _) = runs
        .into_iter()
        .reduce(|a, b| {
            let better = b.2 > a.2 + 1e-9 || ((b.2 - a.2).abs() <= 1e-9 && b.0 < a.0);
            if better {
                b
            } else {
                a
            }
        })
        .expect("at least one restart");
    debug_assert!(contains_fan(&best, cfg.k).is_none());
    let mut result = SearchResult::assess(cfg.mode, cfg.k, &best, false)?;
    result.stagnated_restarts = stagnated;
    result.restarts = cfg.restarts;
    result.seed = cfg.seed;
    Ok(result)
}

/// Per-size verdicts against `(k − 1 + √(4m − k² + 1))/2`: exhaustive up
/// to [`EXHAUSTIVE_SIZE`] edges, hill climbing beyond.
pub fn conjecture_scan(
    k: usize,
    sizes: RangeInclusive<usize>,
    cfg: &SearchConfig,
) -> Result<Vec<SearchResult>, SearchError> {
    if k < 2 {
        return Err(SearchError::InvalidConfig("the harness needs k >= 2".into()));
    }
    sizes
        .map(|m| {
            let mode = SearchMode::FixedSize { m };
            if m <= EXHAUSTIVE_SIZE {
                let report = extremal_scan_size(m, k)?;
                let top = report.argmax.first().expect("some graph has m edges").graph();
                let mut r = SearchResult::assess(mode, k, &top, true)?;
                r.seed = cfg.seed;
                Ok(r)
            } else {
                hill_climb(&SearchConfig { mode, k, ..*cfg })
            }
        })
        .collect()
}

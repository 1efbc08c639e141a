//! Isomorph-free generation, one level at a time.
//!
//! Fixed order grows graphs a vertex at a time (every neighbour set of the
//! new vertex). Fixed size grows isolated-free graphs an edge at a time: an
//! edge between existing vertices, a pendant edge to a new vertex, or a new
//! `K2` component. Every isolated-free graph with `e` edges has a parent
//! with `e − 1` edges under one of these moves (delete any edge together
//! with endpoints it leaves isolated), so each level is complete. Children
//! are reduced to canonical form and deduplicated by sorting, which makes
//! the output independent of the number of workers.
//!
//! Containing `F_k` is inherited by supergraphs, so a child whose new
//! vertex or edge creates an `F_k` is dropped, and its parent being
//! `F_k`-free means no other copy needs checking.

use bowtie_core::canon::canonical_form;
use bowtie_core::detect::{fan_through_edge, fan_through_vertex};
use bowtie_core::Graph;
use rayon::prelude::*;
use schemars::JsonSchema;
use serde::{Deserialize, Serialize};

/// Largest order accepted for fixed-order runs.
pub const MAX_ORDER: usize = 11;
/// Largest size accepted for fixed-size runs.
pub const MAX_SIZE: usize = 14;
/// Pruned roots kept per level for auditing.
pub const PRUNED_SAMPLE: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum EnumMode {
    FixedOrder { n: usize },
    FixedSize { m: usize, max_vertices: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct EnumConstraint {
    pub mode: EnumMode,
    /// Drop graphs containing `F_k`.
    pub forbid_fan: Option<usize>,
    pub no_isolated: bool,
    /// Cap on generated children over the whole run.
    pub budget: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EnumError {
    #[error("budget of {budget} children exceeded after completing level {level} ({classes} classes)")]
    BudgetExceeded { budget: u64, level: usize, classes: usize },
    #[error("invalid constraint: {0}")]
    InvalidConstraint(String),
}

impl EnumConstraint {
    pub fn order(n: usize) -> Self {
        EnumConstraint {
            mode: EnumMode::FixedOrder { n },
            forbid_fan: None,
            no_isolated: false,
            budget: None,
        }
    }

    /// Isolated-free graphs with `m` edges on at most `m + 1` vertices.
    pub fn size(m: usize) -> Self {
        EnumConstraint {
            mode: EnumMode::FixedSize { m, max_vertices: m + 1 },
            forbid_fan: None,
            no_isolated: true,
            budget: None,
        }
    }

    pub fn forbidding(mut self, k: usize) -> Self {
        self.forbid_fan = Some(k);
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = Some(budget);
        self
    }

    pub fn with_max_vertices(mut self, cap: usize) -> Self {
        if let EnumMode::FixedSize { max_vertices, .. } = &mut self.mode {
            *max_vertices = cap;
        }
        self
    }

    pub fn validate(&self) -> Result<(), EnumError> {
        let bad = |s: String| Err(EnumError::InvalidConstraint(s));
        if self.forbid_fan == Some(0) {
            return bad("forbidden fan size must be at least 1".into());
        }
        match self.mode {
            EnumMode::FixedOrder { n } if n > MAX_ORDER => bad(format!("order {n} exceeds {MAX_ORDER}")),
            EnumMode::FixedSize { m, .. } if m > MAX_SIZE => bad(format!("size {m} exceeds {MAX_SIZE}")),
            EnumMode::FixedSize { m: 0, .. } => bad("size must be at least 1".into()),
            EnumMode::FixedSize { m, max_vertices } if max_vertices < min_order(m) => bad(format!(
                "max_vertices {max_vertices} is below {}, the least order with {m} edges",
                min_order(m)
            )),
            EnumMode::FixedSize { .. } if !self.no_isolated => bad("fixed-size mode excludes isolated vertices".into()),
            _ => Ok(()),
        }
    }
}

/// Least `n` with `C(n, 2) ≥ m`.
pub fn min_order(m: usize) -> usize {
    (0usize..).find(|&n| n * n.saturating_sub(1) / 2 >= m).expect("unbounded")
}

/// One augmentation level.
#[derive(Debug, Clone, Default)]
pub struct LevelStep {
    /// Canonical forms, sorted and distinct.
    pub graphs: Vec<Graph>,
    /// Children discarded because they contain `F_k`.
    pub pruned_count: u64,
    /// The first pruned children in parent order, for auditing.
    pub pruned_sample: Vec<Graph>,
    /// Children generated before deduplication.
    pub generated: u64,
}

fn finish_level(per_parent: Vec<(Vec<Graph>, Vec<Graph>, u64)>) -> LevelStep {
    let mut step = LevelStep::default();
    let mut graphs = Vec::new();
    for (kept, pruned, pruned_count) in per_parent {
        step.generated += kept.len() as u64 + pruned_count;
        step.pruned_count += pruned_count;
        let room = PRUNED_SAMPLE - step.pruned_sample.len();
        step.pruned_sample.extend(pruned.into_iter().take(room));
        graphs.extend(kept);
    }
    graphs.par_sort_unstable();
    graphs.dedup();
    step.graphs = graphs;
    step
}

/// Every child of every parent obtained by adding one vertex.
pub fn extend_by_vertex(parents: &[Graph], forbid_fan: Option<usize>) -> LevelStep {
    let per_parent = parents
        .par_iter()
        .map(|g| {
            let v = g.vertex_count();
            assert!(v < 63, "vertex augmentation enumerates neighbour subsets");
            let mut kept = Vec::with_capacity(1 << v);
            let mut pruned = Vec::new();
            let mut pruned_count = 0;
            for mask in 0u64..(1 << v) {
                let nbrs: Vec<usize> = (0..v).filter(|&i| mask >> i & 1 == 1).collect();
                let child = g.with_vertex(&nbrs).expect("neighbours in range");
                if forbid_fan.is_some_and(|k| fan_through_vertex(&child, k, v)) {
                    pruned_count += 1;
                    if pruned.len() < PRUNED_SAMPLE {
                        pruned.push(child);
                    }
                    continue;
                }
                kept.push(canonical_form(&child));
            }
            (kept, pruned, pruned_count)
        })
        .collect();
    finish_level(per_parent)
}

/// Every child of every isolated-free parent obtained by adding one edge,
/// keeping at most `max_vertices` vertices.
pub fn extend_by_edge(parents: &[Graph], forbid_fan: Option<usize>, max_vertices: usize) -> LevelStep {
    let per_parent = parents
        .par_iter()
        .map(|g| {
            let v = g.vertex_count();
            let mut kept = Vec::new();
            let mut pruned = Vec::new();
            let mut pruned_count = 0;
            for a in 0..v {
                for b in a + 1..v {
                    if g.has_edge(a, b) {
                        continue;
                    }
                    let child = g.with_edge(a, b).expect("in range");
                    if forbid_fan.is_some_and(|k| fan_through_edge(&child, k, a, b)) {
                        pruned_count += 1;
                        if pruned.len() < PRUNED_SAMPLE {
                            pruned.push(child);
                        }
                        continue;
                    }
                    kept.push(canonical_form(&child));
                }
            }
            // pendant edges and new components close no triangle
            if v < max_vertices {
                for a in 0..v {
                    kept.push(canonical_form(&g.with_vertex(&[a]).expect("in range")));
                }
            }
            if v + 2 <= max_vertices {
                let k2 = Graph::from_edges(2, &[(0, 1)]).expect("valid");
                kept.push(canonical_form(&g.disjoint_union(&k2)));
            }
            (kept, pruned, pruned_count)
        })
        .collect();
    finish_level(per_parent)
}

/// Running totals over all levels of a run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RunStats {
    pub generated: u64,
    pub pruned: u64,
}

/// All classes meeting the constraint, in canonical sorted order.
pub fn enumerate_classes(constraint: &EnumConstraint) -> Result<(Vec<Graph>, RunStats), EnumError> {
    constraint.validate()?;
    let mut stats = RunStats::default();
    let mut charge = |step: &LevelStep, level: usize| {
        stats.generated += step.generated;
        stats.pruned += step.pruned_count;
        match constraint.budget {
            Some(budget) if stats.generated > budget => Err(EnumError::BudgetExceeded {
                budget,
                level,
                classes: step.graphs.len(),
            }),
            _ => Ok(()),
        }
    };
    let graphs = match constraint.mode {
        EnumMode::FixedOrder { n } => {
            let mut level = vec![Graph::empty(0)];
            for j in 1..=n {
                let step = extend_by_vertex(&level, constraint.forbid_fan);
                charge(&step, j)?;
                level = step.graphs;
            }
            if constraint.no_isolated {
                level.retain(|g| g.isolated_count() == 0);
            }
            level
        }
        EnumMode::FixedSize { m, max_vertices } => {
            let mut level = vec![Graph::from_edges(2, &[(0, 1)]).expect("valid")];
            for e in 2..=m {
                let step = extend_by_edge(&level, constraint.forbid_fan, max_vertices);
                charge(&step, e)?;
                level = step.graphs;
            }
            level
        }
    };
    Ok((graphs, stats))
}

/// Calls `visitor` once per class, in canonical sorted order, and returns
/// the number of classes.
pub fn enumerate_graphs(constraint: &EnumConstraint, mut visitor: impl FnMut(&Graph)) -> Result<u64, EnumError> {
    let (graphs, _) = enumerate_classes(constraint)?;
    graphs.iter().for_each(&mut visitor);
    Ok(graphs.len() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use bowtie_core::canonical_key;
    use bowtie_core::detect::oracle_contains_fan;
    use std::collections::HashSet;

    fn count(c: EnumConstraint) -> usize {
        enumerate_classes(&c).unwrap().0.len()
    }

    #[test]
    fn unrestricted_orders() {
        let want = [1, 1, 2, 4, 11, 34, 156, 1044];
        for (n, &w) in want.iter().enumerate() {
            assert_eq!(count(EnumConstraint::order(n)), w, "n={n}");
        }
    }

    #[test]
    fn classes_are_distinct() {
        let (graphs, _) = enumerate_classes(&EnumConstraint::order(7)).unwrap();
        let keys: HashSet<_> = graphs.iter().map(canonical_key).collect();
        assert_eq!(keys.len(), graphs.len());
    }

    #[test]
    fn size_levels() {
        // graphs with m edges and no isolated vertices
        let want = [1, 2, 5, 11, 26, 68, 177];
        for (i, &w) in want.iter().enumerate() {
            let m = i + 1;
            assert_eq!(count(EnumConstraint::size(m).with_max_vertices(2 * m)), w, "m={m}");
        }
        // the default cap of m + 1 vertices drops P3 ∪ K2 and 3K2
        assert_eq!(count(EnumConstraint::size(3)), 3);
    }

    #[test]
    fn fan_free_filter_matches_oracle() {
        let all = enumerate_classes(&EnumConstraint::order(6)).unwrap().0;
        let free = enumerate_classes(&EnumConstraint::order(6).forbidding(2)).unwrap().0;
        let want: Vec<_> = all.into_iter().filter(|g| !oracle_contains_fan(g, 2)).collect();
        assert_eq!(free, want);
    }

    #[test]
    fn pruned_roots_contain_fans() {
        let (_, stats) = enumerate_classes(&EnumConstraint::order(6).forbidding(2)).unwrap();
        assert!(stats.pruned > 0);
        let level = enumerate_classes(&EnumConstraint::order(6).forbidding(2)).unwrap().0;
        let step = extend_by_vertex(&level, Some(2));
        assert!(!step.pruned_sample.is_empty());
        assert!(step.pruned_sample.iter().all(|g| oracle_contains_fan(g, 2)));
    }

    #[test]
    fn budget_and_validation() {
        let err = enumerate_classes(&EnumConstraint::order(7).with_budget(100)).unwrap_err();
        assert!(matches!(err, EnumError::BudgetExceeded { budget: 100, .. }));
        assert!(EnumConstraint::order(12).validate().is_err());
        assert!(EnumConstraint::size(6).with_max_vertices(3).validate().is_err());
        assert!(EnumConstraint::size(6).with_max_vertices(4).validate().is_ok());
        assert!(EnumConstraint::order(5).forbidding(0).validate().is_err());
        assert_eq!(min_order(6), 4);
        assert_eq!(min_order(7), 5);
        assert_eq!(min_order(1), 2);
    }
}

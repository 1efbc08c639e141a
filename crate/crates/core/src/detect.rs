//! Fan containment and bowtie counting.
//!
//! `F_k` (k triangles sharing one vertex) sits at centre `v` exactly when the
//! graph induced on `N(v)` has a matching of size `k`, so detection reduces to
//! matchings in neighbourhood graphs.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::GraphError;
use crate::graph::Graph;

/// A copy of `F_k`: `k` vertex-disjoint edges inside `N(center)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct FanWitness {
    pub center: usize,
    pub edges: Vec<(usize, usize)>,
}

impl FanWitness {
    /// Checks that the witness really spans a fan in `g`.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        let mut used = vec![false; g.vertex_count()];
        if self.center >= g.vertex_count() {
            return false;
        }
        used[self.center] = true;
        for &(a, b) in &self.edges {
            if a >= g.vertex_count() || b >= g.vertex_count() || used[a] || used[b] || a == b {
                return false;
            }
            used[a] = true;
            used[b] = true;
            if !(g.has_edge(a, b) && g.has_edge(self.center, a) && g.has_edge(self.center, b)) {
                return false;
            }
        }
        true
    }
}

/// The subgraph induced on `N(v)`, with `labels[i]` the original vertex of
/// local vertex `i` (increasing).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Neighborhood {
    pub graph: Graph,
    pub labels: Vec<usize>,
}

pub fn neighborhood_graph(g: &Graph, v: usize) -> Result<Neighborhood, GraphError> {
    if v >= g.vertex_count() {
        return Err(GraphError::VertexOutOfRange {
            vertex: v,
            n: g.vertex_count(),
        });
    }
    let labels: Vec<usize> = g.neighbors(v).collect();
    Ok(Neighborhood {
        graph: g.induced(&labels),
        labels,
    })
}

/// Edge count at or below which [`matching_number`] searches exhaustively.
pub const EXHAUSTIVE_EDGE_LIMIT: usize = 20;

/// Size of a maximum matching.
pub fn matching_number(g: &Graph) -> usize {
    if g.edge_count() <= EXHAUSTIVE_EDGE_LIMIT {
        matching_number_exhaustive(g)
    } else {
        matching_number_blossom(g)
    }
}

/// Branching search: the lowest non-isolated vertex is either left
/// unmatched or matched to one of its neighbours. Practical up to a few
/// dozen edges.
pub fn matching_number_exhaustive(g: &Graph) -> usize {
    let active: Vec<usize> = (0..g.vertex_count()).filter(|&v| g.degree(v) > 0).collect();
    if active.is_empty() {
        return 0;
    }
    assert!(active.len() <= 128, "exhaustive matching limited to 128 non-isolated vertices");
    let local = g.induced(&active);
    let adj: Vec<u128> = (0..active.len())
        .map(|v| local.neighbors(v).fold(0u128, |acc, w| acc | 1 << w))
        .collect();
    let all = if active.len() == 128 { u128::MAX } else { (1u128 << active.len()) - 1 };
    best_matching(&adj, all)
}

fn best_matching(adj: &[u128], alive: u128) -> usize {
    // drop vertices with no live neighbour
    let mut alive = alive;
    loop {
        let mut changed = false;
        let mut rest = alive;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if adj[v] & alive == 0 {
                alive &= !(1 << v);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    if alive == 0 {
        return 0;
    }
    let upper = alive.count_ones() as usize / 2;
    let v = alive.trailing_zeros() as usize;
    let without_v = alive & !(1 << v);
    let mut best = 0;
    let mut nb = adj[v] & alive;
    while nb != 0 {
        let w = nb.trailing_zeros() as usize;
        nb &= nb - 1;
        best = best.max(1 + best_matching(adj, without_v & !(1 << w)));
        if best == upper {
            return best;
        }
    }
    best.max(best_matching(adj, without_v))
}

const NONE: usize = usize::MAX;

/// Edmonds' blossom algorithm, `O(n^3)`.
pub fn matching_number_blossom(g: &Graph) -> usize {
    let n = g.vertex_count();
    let adj: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).collect()).collect();
    let mut mate = vec![NONE; n];
    // greedy start
    for v in 0..n {
        if mate[v] == NONE {
            if let Some(&w) = adj[v].iter().find(|&&w| mate[w] == NONE) {
                mate[v] = w;
                mate[w] = v;
            }
        }
    }
    let mut b = Blossom {
        adj: &adj,
        mate,
        parent: vec![NONE; n],
        base: (0..n).collect(),
        used: vec![false; n],
        in_blossom: vec![false; n],
        queue: Vec::new(),
    };
    for root in 0..n {
        if b.mate[root] == NONE {
            if let Some(mut v) = b.find_path(root) {
                while v != NONE {
                    let pv = b.parent[v];
                    let ppv = b.mate[pv];
                    b.mate[v] = pv;
                    b.mate[pv] = v;
                    v = ppv;
                }
            }
        }
    }
    b.mate.iter().filter(|&&w| w != NONE).count() / 2
}

struct Blossom<'a> {
    adj: &'a [Vec<usize>],
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: Vec<usize>,
}

impl Blossom<'_> {
    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.mate.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.mate.len();
        self.used.fill(false);
        self.parent.fill(NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push(root);
        let mut head = 0;
        while head < self.queue.len() {
            let v = self.queue[head];
            head += 1;
            for &to in &self.adj[v] {
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.fill(false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let next = self.mate[to];
                    self.used[next] = true;
                    self.queue.push(next);
                }
            }
        }
        None
    }
}

/// Lexicographically least `F_k` witness: least centre, then the least
/// sorted edge list among `k`-matchings of its neighbourhood.
pub fn contains_fan(g: &Graph, k: usize) -> Option<FanWitness> {
    if k == 0 {
        return None;
    }
    (0..g.vertex_count()).find_map(|c| {
        if g.degree(c) < 2 * k {
            return None;
        }
        let nb = neighborhood_graph(g, c).expect("centre in range");
        least_matching(&nb.graph, k).map(|edges| FanWitness {
            center: c,
            edges: edges.into_iter().map(|(a, b)| (nb.labels[a], nb.labels[b])).collect(),
        })
    })
}

// The least edge lying in some k-matching is automatically the minimum of
// every k-matching through it, so greedy extension with a feasibility test
// on the remaining vertices yields the lexicographically least k-matching.
fn least_matching(h: &Graph, k: usize) -> Option<Vec<(usize, usize)>> {
    if matching_number(h) < k {
        return None;
    }
    let mut alive = vec![true; h.vertex_count()];
    let mut chosen = Vec::with_capacity(k);
    while chosen.len() < k {
        let need = k - chosen.len() - 1;
        let last = chosen.last().copied().unwrap_or((0, 0));
        let pick = h
            .edges()
            .filter(|&e| (chosen.is_empty() || e > last) && alive[e.0] && alive[e.1])
            .find(|&(a, b)| {
                if need == 0 {
                    return true;
                }
                let rest: Vec<usize> = (0..h.vertex_count()).filter(|&v| alive[v] && v != a && v != b).collect();
                matching_number(&h.induced(&rest)) >= need
            })?;
        alive[pick.0] = false;
        alive[pick.1] = false;
        chosen.push(pick);
    }
    Some(chosen)
}

fn has_fan_at(g: &Graph, k: usize, c: usize) -> bool {
    g.degree(c) >= 2 * k && matching_number(&neighborhood_graph(g, c).expect("in range").graph) >= k
}

/// Whether some `F_k` uses vertex `w`; its centre is `w` or a neighbour of `w`.
pub fn fan_through_vertex(g: &Graph, k: usize, w: usize) -> bool {
    k > 0 && (has_fan_at(g, k, w) || g.neighbors(w).any(|c| has_fan_at(g, k, c)))
}

/// Whether some `F_k` uses the edge `uv`; its centre is `u`, `v` or a common
/// neighbour.
pub fn fan_through_edge(g: &Graph, k: usize, u: usize, v: usize) -> bool {
    if k == 0 || !g.has_edge(u, v) {
        return false;
    }
    if has_fan_at(g, k, u) || has_fan_at(g, k, v) {
        return true;
    }
    let common: Vec<u64> = g.row(u).iter().zip(g.row(v)).map(|(a, b)| a & b).collect();
    crate::graph::BitIter::new(&common).any(|c| has_fan_at(g, k, c))
}

/// Backtracking ground truth for `F_k` containment, independent of the
/// matching code. Intended for small graphs.
pub fn oracle_contains_fan(g: &Graph, k: usize) -> bool {
    fn extend(g: &Graph, nb: &[usize], used: &mut Vec<usize>, from: usize, left: usize) -> bool {
        if left == 0 {
            return true;
        }
        for i in from..nb.len() {
            if used.contains(&nb[i]) {
                continue;
            }
            for j in i + 1..nb.len() {
                if used.contains(&nb[j]) || !g.has_edge(nb[i], nb[j]) {
                    continue;
                }
                used.push(nb[i]);
                used.push(nb[j]);
                let ok = extend(g, nb, used, i + 1, left - 1);
                used.truncate(used.len() - 2);
                if ok {
                    return true;
                }
            }
        }
        false
    }
    if k == 0 {
        return false;
    }
    (0..g.vertex_count()).any(|c| {
        let nb: Vec<usize> = (0..g.vertex_count()).filter(|&w| g.has_edge(c, w)).collect();
        extend(g, &nb, &mut Vec::new(), 0, k)
    })
}

/// Number of unordered pairs of triangles meeting in exactly one vertex.
///
/// At centre `v` this is the number of pairs of disjoint edges in `G[N(v)]`:
/// `C(e_v, 2) - Σ_w C(d_v(w), 2)`.
pub fn count_bowties(g: &Graph) -> u64 {
    let c2 = |x: u64| x * x.saturating_sub(1) / 2;
    (0..g.vertex_count())
        .map(|v| {
            let d: Vec<u64> = g.neighbors(v).map(|w| g.common_neighbors(v, w) as u64).collect();
            let e: u64 = d.iter().sum::<u64>() / 2;
            c2(e) - d.iter().map(|&x| c2(x)).sum::<u64>()
        })
        .sum()
}

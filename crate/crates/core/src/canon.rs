//! Canonical labelling by individualisation and refinement.
//!
//! The search tree is the usual one: refine the unit partition to an
//! equitable one, individualise each vertex of the first non-singleton cell,
//! refine again, and so on down to discrete partitions. Each leaf yields a
//! relabelled adjacency matrix; the lexicographically largest one is the
//! canonical form. Automorphisms found at equal leaves prune the tree through
//! orbit tests and, for leaves equivalent to the first one, by jumping back to
//! where the two paths diverged.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::Graph;
use crate::graph6;

/// An isomorphism-invariant key: the graph6 encoding of the canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn as_str(&self) -> &str {
        // graph6 bytes are printable ASCII by construction
        core::str::from_utf8(&self.0).expect("graph6 is ASCII")
    }

    /// Decodes the canonical representative.
    pub fn graph(&self) -> Graph {
        graph6::decode(self.as_str()).expect("canonical keys are valid graph6")
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({})", self.as_str())
    }
}

/// Largest vertex count handled by the labelling engine.
pub const MAX_VERTICES: usize = 64 * 64;

/// Returns `lab` with `lab[v]` the canonical label of vertex `v`.
///
/// Panics if the graph has more than [`MAX_VERTICES`] vertices.
pub fn canonical_labeling(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    match g.row_words() {
        0 | 1 => labeling::<1>(g),
        2 => labeling::<2>(g),
        3 | 4 => labeling::<4>(g),
        5..=16 => labeling::<16>(g),
        17..=64 => labeling::<64>(g),
        _ => panic!("canonical labelling supports at most {MAX_VERTICES} vertices, got {n}"),
    }
}

/// The graph relabelled by [`canonical_labeling`].
pub fn canonical_form(g: &Graph) -> Graph {
    g.relabel(&canonical_labeling(g)).expect("labelling is a permutation")
}

pub fn canonical_key(g: &Graph) -> CanonicalKey {
    CanonicalKey(graph6::encode_bytes(&canonical_form(g)))
}

/// Cells of the coarsest equitable partition, in refinement order.
///
/// The cell order is isomorphism-invariant: cells are split by neighbour
/// counts and sub-cells are ordered by increasing count.
pub fn equitable_cells(g: &Graph) -> Vec<Vec<usize>> {
    match g.row_words() {
        0 | 1 => cells::<1>(g),
        2 => cells::<2>(g),
        3 | 4 => cells::<4>(g),
        5..=16 => cells::<16>(g),
        17..=64 => cells::<64>(g),
        _ => {
            let mut p = DynRefiner::new(g);
            p.refine_all();
            p.cells()
        }
    }
}

fn rows<const W: usize>(g: &Graph) -> Vec<[u64; W]> {
    (0..g.vertex_count())
        .map(|v| {
            let mut r = [0u64; W];
            r[..g.row_words()].copy_from_slice(g.row(v));
            r
        })
        .collect()
}

fn cells<const W: usize>(g: &Graph) -> Vec<Vec<usize>> {
    let adj = rows::<W>(g);
    let mut p = Partition::unit(g.vertex_count());
    let mut scratch = Scratch::new(g.vertex_count());
    p.refine(&adj, &[0], &mut scratch);
    p.cells()
}

fn labeling<const W: usize>(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    if n == 0 {
        return Vec::new();
    }
    let adj = rows::<W>(g);
    let mut s = Search {
        n,
        adj: &adj,
        first: None,
        best: None,
        autos: Vec::new(),
        path: Vec::new(),
        first_path: Vec::new(),
        scratch: Scratch::new(n),
    };
    let mut root = Partition::unit(n);
    root.refine(&adj, &[0], &mut s.scratch);
    s.explore(root);
    let (order, _) = s.best.expect("search visits at least one leaf");
    let mut lab = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        lab[v] = i;
    }
    lab
}

/// Ordered partition: `order` lists vertices cell by cell.
#[derive(Clone)]
struct Partition {
    order: Vec<usize>,
    pos: Vec<usize>,
    /// For each position, the start of the cell containing it.
    start: Vec<usize>,
    /// Cell length, valid at cell starts.
    len: Vec<usize>,
    cells: usize,
}

struct Scratch {
    count: Vec<usize>,
    in_queue: Vec<bool>,
    queue: Vec<usize>,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Scratch {
            count: vec![0; n],
            in_queue: vec![false; n],
            queue: Vec::new(),
        }
    }
}

impl Partition {
    fn unit(n: usize) -> Self {
        let mut len = vec![0; n];
        if n > 0 {
            len[0] = n;
        }
        Partition {
            order: (0..n).collect(),
            pos: (0..n).collect(),
            start: vec![0; n],
            len,
            cells: usize::from(n > 0),
        }
    }

    fn n(&self) -> usize {
        self.order.len()
    }

    fn is_discrete(&self) -> bool {
        self.cells == self.n()
    }

    fn cells(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::with_capacity(self.cells);
        let mut s = 0;
        while s < self.n() {
            let l = self.len[s];
            let mut c = self.order[s..s + l].to_vec();
            c.sort_unstable();
            out.push(c);
            s += l;
        }
        out
    }

    fn first_nonsingleton(&self) -> Option<usize> {
        let mut s = 0;
        while s < self.n() {
            if self.len[s] > 1 {
                return Some(s);
            }
            s += self.len[s];
        }
        None
    }

    /// Moves `v` to the front of its cell and splits it off; returns the
    /// start of the new singleton cell.
    fn individualize(&mut self, v: usize) -> usize {
        let p = self.pos[v];
        let s = self.start[p];
        let l = self.len[s];
        let w = self.order[s];
        self.order.swap(s, p);
        self.pos[w] = p;
        self.pos[v] = s;
        self.len[s] = 1;
        self.len[s + 1] = l - 1;
        for q in s + 1..s + l {
            self.start[q] = s + 1;
        }
        self.cells += 1;
        s
    }

    fn refine<const W: usize>(&mut self, adj: &[[u64; W]], initial: &[usize], sc: &mut Scratch) {
        let n = self.n();
        sc.queue.clear();
        for &s in initial {
            sc.queue.push(s);
            sc.in_queue[s] = true;
        }
        let mut head = 0;
        while head < sc.queue.len() && !self.is_discrete() {
            let ws = sc.queue[head];
            head += 1;
            sc.in_queue[ws] = false;
            let mut wbits = [0u64; W];
            for &v in &self.order[ws..ws + self.len[ws]] {
                wbits[v / 64] |= 1 << (v % 64);
            }
            let mut s = 0;
            while s < n {
                let l = self.len[s];
                if l > 1 {
                    self.split_cell(s, l, |v| {
                        adj[v].iter().zip(&wbits).map(|(a, b)| (a & b).count_ones() as usize).sum()
                    }, sc);
                }
                s += l;
            }
        }
        for &s in &sc.queue[head..] {
            sc.in_queue[s] = false;
        }
        sc.queue.clear();
    }

    /// Splits cell `[s, s+l)` by `key`, sub-cells in increasing key order,
    /// queueing new cells Hopcroft-style.
    fn split_cell(&mut self, s: usize, l: usize, key: impl Fn(usize) -> usize, sc: &mut Scratch) {
        let mut uniform = true;
        let k0 = key(self.order[s]);
        sc.count[self.order[s]] = k0;
        for i in s + 1..s + l {
            let v = self.order[i];
            let k = key(v);
            sc.count[v] = k;
            uniform &= k == k0;
        }
        if uniform {
            return;
        }
        let count = &sc.count;
        self.order[s..s + l].sort_unstable_by_key(|&v| (count[v], v));
        let mut runs: Vec<(usize, usize)> = Vec::new();
        let mut i = s;
        while i < s + l {
            let k = sc.count[self.order[i]];
            let mut j = i + 1;
            while j < s + l && sc.count[self.order[j]] == k {
                j += 1;
            }
            runs.push((i, j - i));
            i = j;
        }
        for &(rs, rl) in &runs {
            self.len[rs] = rl;
            for q in rs..rs + rl {
                self.start[q] = rs;
                self.pos[self.order[q]] = q;
            }
        }
        self.cells += runs.len() - 1;
        let skip = if sc.in_queue[s] {
            None
        } else {
            // first largest run stays out of the queue
            let mut best = 0;
            for (idx, r) in runs.iter().enumerate() {
                if r.1 > runs[best].1 {
                    best = idx;
                }
            }
            Some(best)
        };
        for (idx, &(rs, _)) in runs.iter().enumerate() {
            if Some(idx) != skip && !sc.in_queue[rs] {
                sc.in_queue[rs] = true;
                sc.queue.push(rs);
            }
        }
    }
}

struct Search<'a, const W: usize> {
    n: usize,
    adj: &'a [[u64; W]],
    first: Option<(Vec<usize>, Vec<[u64; W]>)>,
    best: Option<(Vec<usize>, Vec<[u64; W]>)>,
    autos: Vec<Vec<usize>>,
    path: Vec<usize>,
    first_path: Vec<usize>,
    scratch: Scratch,
}

// Generators beyond this are dropped; pruning stays sound with fewer.
const MAX_GENERATORS: usize = 512;

impl<const W: usize> Search<'_, W> {
    /// Returns `Some(level)` to abandon every node deeper than `level`.
    fn explore(&mut self, p: Partition) -> Option<usize> {
        let Some(t) = p.first_nonsingleton() else {
            return self.leaf(&p);
        };
        let depth = self.path.len();
        let mut cell = p.order[t..t + p.len[t]].to_vec();
        cell.sort_unstable();
        let mut explored: Vec<usize> = Vec::new();
        for v in cell {
            if !explored.is_empty() && self.in_explored_orbit(v, &explored) {
                continue;
            }
            explored.push(v);
            let mut child = p.clone();
            let s = child.individualize(v);
            child.refine(self.adj, &[s], &mut self.scratch);
            self.path.push(v);
            let jump = self.explore(child);
            self.path.pop();
            if let Some(level) = jump {
                if level < depth {
                    return Some(level);
                }
            }
        }
        None
    }

    fn leaf(&mut self, p: &Partition) -> Option<usize> {
        let cert = self.certificate(p);
        let Some((first_order, first_cert)) = &self.first else {
            self.first = Some((p.order.clone(), cert.clone()));
            self.best = Some((p.order.clone(), cert));
            self.first_path = self.path.clone();
            return None;
        };
        if cert == *first_cert {
            let gamma = mapping(&p.order, first_order);
            self.record(gamma);
            let common = self.path.iter().zip(&self.first_path).take_while(|(a, b)| a == b).count();
            return Some(common);
        }
        let (best_order, best_cert) = self.best.as_ref().expect("best set with first");
        match cert.cmp(best_cert) {
            core::cmp::Ordering::Greater => self.best = Some((p.order.clone(), cert)),
            core::cmp::Ordering::Equal => {
                let gamma = mapping(&p.order, best_order);
                self.record(gamma);
            }
            core::cmp::Ordering::Less => {}
        }
        None
    }

    fn record(&mut self, gamma: Vec<usize>) {
        if self.autos.len() < MAX_GENERATORS && gamma.iter().enumerate().any(|(i, &g)| i != g) {
            self.autos.push(gamma);
        }
    }

    fn certificate(&self, p: &Partition) -> Vec<[u64; W]> {
        p.order
            .iter()
            .map(|&v| {
                let mut r = [0u64; W];
                for (w, &word) in self.adj[v].iter().enumerate() {
                    let mut bits = word;
                    while bits != 0 {
                        let u = w * 64 + bits.trailing_zeros() as usize;
                        bits &= bits - 1;
                        let q = p.pos[u];
                        r[q / 64] |= 1 << (q % 64);
                    }
                }
                r
            })
            .collect()
    }

    fn in_explored_orbit(&self, v: usize, explored: &[usize]) -> bool {
        let mut uf: Vec<usize> = (0..self.n).collect();
        let mut any = false;
        for gamma in &self.autos {
            if self.path.iter().all(|&x| gamma[x] == x) {
                any = true;
                for (i, &j) in gamma.iter().enumerate() {
                    union(&mut uf, i, j);
                }
            }
        }
        if !any {
            return false;
        }
        let rv = find(&mut uf, v);
        explored.iter().any(|&x| find(&mut uf, x) == rv)
    }
}

/// The vertex map sending `from[i]` to `to[i]`.
fn mapping(from: &[usize], to: &[usize]) -> Vec<usize> {
    let mut gamma = vec![0; from.len()];
    for (&a, &b) in from.iter().zip(to) {
        gamma[a] = b;
    }
    gamma
}

fn find(uf: &mut [usize], mut x: usize) -> usize {
    while uf[x] != x {
        uf[x] = uf[uf[x]];
        x = uf[x];
    }
    x
}

fn union(uf: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(uf, a), find(uf, b));
    if ra != rb {
        uf[ra.max(rb)] = ra.min(rb);
    }
}

/// Refinement over plain `Graph` rows for graphs too large for the
/// fixed-width engine. Only used for equitable partitions.
struct DynRefiner<'a> {
    g: &'a Graph,
    p: Partition,
    sc: Scratch,
}

impl<'a> DynRefiner<'a> {
    fn new(g: &'a Graph) -> Self {
        DynRefiner {
            g,
            p: Partition::unit(g.vertex_count()),
            sc: Scratch::new(g.vertex_count()),
        }
    }

    fn refine_all(&mut self) {
        let n = self.p.n();
        let words = self.g.row_words();
        if n == 0 {
            return;
        }
        self.sc.queue.push(0);
        self.sc.in_queue[0] = true;
        let mut head = 0;
        while head < self.sc.queue.len() && !self.p.is_discrete() {
            let ws = self.sc.queue[head];
            head += 1;
            self.sc.in_queue[ws] = false;
            let mut wbits = vec![0u64; words];
            for &v in &self.p.order[ws..ws + self.p.len[ws]] {
                wbits[v / 64] |= 1 << (v % 64);
            }
            let g = self.g;
            let mut s = 0;
            while s < n {
                let l = self.p.len[s];
                if l > 1 {
                    self.p.split_cell(s, l, |v| {
                        g.row(v).iter().zip(&wbits).map(|(a, b)| (a & b).count_ones() as usize).sum()
                    }, &mut self.sc);
                }
                s += l;
            }
        }
    }

    fn cells(&self) -> Vec<Vec<usize>> {
        self.p.cells()
    }
}

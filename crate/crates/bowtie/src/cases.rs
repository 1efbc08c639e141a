//! The small-size configurations left open when the neighbourhood of a
//! maximum-coordinate vertex `u` induces `K3` plus isolated vertices.
//!
//! With `A = N(u)`, `A₊` the triangle and `A₀ = A − A₊` nonempty, and
//! `B` the rest, the constraints are: `B` is independent, every `w ∈ B`
//! has at least two neighbours, at most one of them in `A₊` and at least
//! one in `A₀`, some vertex of `B` sees `A₊`, and the graph is `F_2`-free.
//! Such a graph has `m = |A| + 3 + e(A, B)` edges.
//!
//! Layout: `u = 0`, the triangle on `1..=3`, `A₀` next, then `B`.

use bowtie_core::{canonical_form, contains_fan, Graph};

/// Every graph meeting the constraints with exactly `m` edges, as sorted
/// canonical forms.
pub fn apex_triangle_cases(m: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for a in 4..=m.saturating_sub(5) {
        let masks = attachment_masks(a);
        let e_ab = m - a - 3;
        for b in 1..=e_ab / 2 {
            let mut chosen = Vec::with_capacity(b);
            choose(&masks, 0, b, e_ab, &mut chosen, &mut |picks| {
                if let Some(g) = build(a, picks) {
                    out.push(canonical_form(&g));
                }
            });
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Neighbour sets in `A` (bit `i` is vertex `1 + i`) allowed for a vertex of `B`.
fn attachment_masks(a: usize) -> Vec<u32> {
    (1u32..1 << a)
        .filter(|&s| {
            let plus = (s & 0b111).count_ones();
            let zero = (s >> 3).count_ones();
            plus <= 1 && zero >= 1 && plus + zero >= 2
        })
        .collect()
}

/// Multisets of `left` masks from `masks[from..]` with `budget` total bits.
fn choose(masks: &[u32], from: usize, left: usize, budget: usize, chosen: &mut Vec<u32>, emit: &mut impl FnMut(&[u32])) {
    if left == 0 {
        if budget == 0 {
            emit(chosen);
        }
        return;
    }
    for i in from..masks.len() {
        let bits = masks[i].count_ones() as usize;
        // every later pick needs at least two bits
        if bits + 2 * (left - 1) > budget {
            continue;
        }
        chosen.push(masks[i]);
        choose(masks, i, left - 1, budget - bits, chosen, emit);
        chosen.pop();
    }
}

fn build(a: usize, picks: &[u32]) -> Option<Graph> {
    if picks.iter().all(|&s| s & 0b111 == 0) {
        return None;
    }
    let mut edges = vec![(1, 2), (1, 3), (2, 3)];
    edges.extend((1..=a).map(|v| (0, v)));
    for (j, &s) in picks.iter().enumerate() {
        let w = a + 1 + j;
        edges.extend((0..a).filter(|i| s >> i & 1 == 1).map(|i| (1 + i, w)));
    }
    let g = Graph::from_edges(a + 1 + picks.len(), &edges).expect("valid layout");
    contains_fan(&g, 2).is_none().then_some(g)
}

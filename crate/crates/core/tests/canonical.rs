mod common;

use std::collections::HashSet;

use bowtie_core::{canonical_form, canonical_key, canonical_labeling, graph6, Graph};
use common::{all_graphs, graphs, permutation};
use proptest::prelude::*;

/// Isomorphism by trying every bijection; fine up to 7 vertices.
fn isomorphic(g: &Graph, h: &Graph) -> bool {
    fn extend(g: &Graph, h: &Graph, map: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let v = map.len();
        if v == g.vertex_count() {
            return true;
        }
        for w in 0..h.vertex_count() {
            if used[w] || g.degree(v) != h.degree(w) {
                continue;
            }
            if (0..v).all(|u| g.has_edge(u, v) == h.has_edge(map[u], w)) {
                map.push(w);
                used[w] = true;
                if extend(g, h, map, used) {
                    return true;
                }
                map.pop();
                used[w] = false;
            }
        }
        false
    }
    g.vertex_count() == h.vertex_count()
        && g.edge_count() == h.edge_count()
        && extend(g, h, &mut Vec::new(), &mut vec![false; g.vertex_count()])
}

#[test]
fn class_counts_up_to_six_vertices() {
    // unlabelled graphs on n vertices
    let known = [1, 1, 2, 4, 11, 34, 156];
    for (n, &want) in known.iter().enumerate() {
        let keys: HashSet<_> = all_graphs(n).map(|g| canonical_key(&g)).collect();
        assert_eq!(keys.len(), want, "n = {n}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn key_is_relabelling_invariant((g, perm) in graphs(1, 11).prop_flat_map(|g| {
        let n = g.vertex_count();
        (Just(g), permutation(n))
    })) {
        let h = g.relabel(&perm).unwrap();
        prop_assert_eq!(canonical_key(&g), canonical_key(&h));
        prop_assert_eq!(canonical_form(&g), canonical_form(&h));
    }

    #[test]
    fn labelling_produces_the_form(g in graphs(0, 11)) {
        let lab = canonical_labeling(&g);
        prop_assert_eq!(g.relabel(&lab).unwrap(), canonical_form(&g));
        let key = canonical_key(&g);
        prop_assert_eq!(key.as_str(), graph6::encode(&canonical_form(&g)));
    }

    #[test]
    fn equal_keys_mean_isomorphic(g in graphs(4, 7), h in graphs(4, 7)) {
        prop_assert_eq!(canonical_key(&g) == canonical_key(&h), isomorphic(&g, &h));
    }
}

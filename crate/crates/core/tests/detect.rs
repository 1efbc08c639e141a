mod common;

use bowtie_core::detect::{matching_number_blossom, matching_number_exhaustive, oracle_contains_fan};
use bowtie_core::{contains_fan, count_bowties, Graph};
use common::{graphs, graphs_dense};
use proptest::prelude::*;

/// Bowties by brute force: a centre and an unordered pair of disjoint
/// edges in its neighbourhood.
fn bowties_by_brute_force(g: &Graph) -> u64 {
    let mut count = 0;
    for c in 0..g.vertex_count() {
        let nb: Vec<usize> = g.neighbors(c).collect();
        let edges: Vec<(usize, usize)> = nb
            .iter()
            .flat_map(|&a| nb.iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
            .filter(|&(a, b)| g.has_edge(a, b))
            .collect();
        for (i, e) in edges.iter().enumerate() {
            for f in &edges[i + 1..] {
                if e.0 != f.0 && e.0 != f.1 && e.1 != f.0 && e.1 != f.1 {
                    count += 1;
                }
            }
        }
    }
    count
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn agrees_with_oracle(g in graphs_dense(1, 10), k in 1usize..=3) {
        let found = contains_fan(&g, k);
        prop_assert_eq!(found.is_some(), oracle_contains_fan(&g, k));
        if let Some(w) = found {
            prop_assert!(w.is_valid_in(&g));
            prop_assert_eq!(w.edges.len(), k);
        }
    }

    #[test]
    fn adding_edges_keeps_fans(g in graphs_dense(3, 12), k in 1usize..=3, pick in any::<prop::sample::Index>()) {
        let non_edges: Vec<(usize, usize)> = (0..g.vertex_count())
            .flat_map(|v| (0..v).map(move |u| (u, v)))
            .filter(|&(u, v)| !g.has_edge(u, v))
            .collect();
        prop_assume!(!non_edges.is_empty());
        let (u, v) = non_edges[pick.index(non_edges.len())];
        let h = g.with_edge(u, v).unwrap();
        if contains_fan(&g, k).is_some() {
            prop_assert!(contains_fan(&h, k).is_some());
        }
        prop_assert!(count_bowties(&h) >= count_bowties(&g));
    }

    #[test]
    fn larger_fans_contain_smaller(g in graphs_dense(1, 12), k in 2usize..=4) {
        if contains_fan(&g, k).is_some() {
            prop_assert!(contains_fan(&g, k - 1).is_some());
        }
    }

    #[test]
    fn bowtie_count_matches_brute_force(g in graphs(1, 10)) {
        prop_assert_eq!(count_bowties(&g), bowties_by_brute_force(&g));
        prop_assert_eq!(count_bowties(&g) > 0, contains_fan(&g, 2).is_some());
    }

    #[test]
    fn matching_algorithms_agree(g in graphs_dense(0, 14)) {
        prop_assert_eq!(matching_number_blossom(&g), matching_number_exhaustive(&g));
    }
}

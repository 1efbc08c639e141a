//! Constructors for the extremal graph families.
//!
//! Layouts are fixed: the part named first occupies the lowest labels and
//! edges embedded inside a part use its lowest labels. Isomorphism-level
//! comparisons should go through [`crate::canonical_key`].

use alloc::format;
use alloc::vec::Vec;

use crate::error::GraphError;
use crate::graph::Graph;

/// `K_{a,b}` with parts `X = 0..a` and `Y = a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    Graph::from_fn(a + b, |u, v| u < a && v >= a)
}

pub fn complete(n: usize) -> Graph {
    Graph::from_fn(n, |_, _| true)
}

pub fn path(n: usize) -> Graph {
    Graph::from_fn(n, |u, v| v == u + 1)
}

pub fn cycle(n: usize) -> Graph {
    Graph::from_fn(n, |u, v| v == u + 1 || (n >= 3 && u == 0 && v == n - 1))
}

/// `K_{1,s}` with centre 0.
pub fn star(s: usize) -> Graph {
    Graph::from_fn(s + 1, |u, _| u == 0)
}

/// `K_1 ∨ (K_3 ∪ I_s)`: apex 0, triangle on 1..4, then `s` pendant vertices.
pub fn apex_triangle(s: usize) -> Graph {
    Graph::from_fn(4 + s, |u, v| u == 0 || v <= 3)
}

/// `K_{a,b}` plus the edge `01` inside the size-`a` part.
pub fn make_bipartite_plus(a: usize, b: usize) -> Result<Graph, GraphError> {
    if a < 2 || b < 1 {
        return Err(GraphError::param("bipartite_plus", format!("need a >= 2 and b >= 1, got a={a}, b={b}")));
    }
    let mut g = complete_bipartite(a, b);
    g.set(0, 1);
    Ok(g)
}

/// `K_{⌊n/2⌋,⌈n/2⌉}` with one edge in the smaller part; `n = 3` gives `K_3`.
pub fn make_balanced_plus(n: usize) -> Result<Graph, GraphError> {
    match n {
        0..=2 => Err(GraphError::param("balanced_plus", format!("need n >= 3, got {n}"))),
        3 => make_bipartite_plus(2, 1),
        _ => make_bipartite_plus(n / 2, n.div_ceil(2)),
    }
}

/// `K_k ∨ I_s`: clique on `0..k`, independent set on `k..k+s`.
pub fn make_split_join(k: usize, s: usize) -> Graph {
    Graph::from_fn(k + s, |u, _| u < k)
}

/// The fan `F_k`: centre 0 and triangles `{0, 2i-1, 2i}`.
pub fn make_fan(k: usize) -> Result<Graph, GraphError> {
    if k < 1 {
        return Err(GraphError::param("fan", "need k >= 1"));
    }
    Ok(Graph::from_fn(2 * k + 1, |u, v| u == 0 || (u % 2 == 1 && v == u + 1)))
}

/// Part sizes of the balanced complete `r`-partite graph, larger parts first.
pub fn turan_parts(n: usize, r: usize) -> Vec<usize> {
    (0..r).map(|i| n / r + usize::from(i < n % r)).collect()
}

/// The Turán graph `T_r(n)`, larger parts on lower labels.
pub fn make_turan(n: usize, r: usize) -> Result<Graph, GraphError> {
    if r < 1 {
        return Err(GraphError::param("turan", "need r >= 1"));
    }
    let mut part = Vec::with_capacity(n);
    for (i, size) in turan_parts(n, r).into_iter().enumerate() {
        part.extend(core::iter::repeat_n(i, size));
    }
    Ok(Graph::from_fn(n, |u, v| part[u] != part[v]))
}

/// `K_{⌈n/2⌉,⌊n/2⌋}` with edges `01` and `23` inside the size-`⌈n/2⌉` part.
pub fn make_two_k2_bipartite(n: usize) -> Result<Graph, GraphError> {
    let a = n.div_ceil(2);
    if a < 4 {
        return Err(GraphError::param("two_k2", format!("need ceil(n/2) >= 4, got n={n}")));
    }
    let mut g = complete_bipartite(a, n / 2);
    g.set(0, 1);
    g.set(2, 3);
    Ok(g)
}

/// `K_{⌊n/2⌋,⌈n/2⌉}` with two disjoint `K_k` on `0..k` and `k..2k` inside
/// the size-`⌊n/2⌋` part.
pub fn make_efgg_odd(n: usize, k: usize) -> Result<Graph, GraphError> {
    if k.is_multiple_of(2) {
        return Err(GraphError::param("efgg_odd", format!("k must be odd, got {k}")));
    }
    if n / 2 < 2 * k {
        return Err(GraphError::param("efgg_odd", format!("floor(n/2) must be at least 2k, got n={n}, k={k}")));
    }
    let mut g = complete_bipartite(n / 2, n.div_ceil(2));
    for base in [0, k] {
        for v in base..base + k {
            for u in base..v {
                g.set(u, v);
            }
        }
    }
    Ok(g)
}

/// The gadget `H` on `2k - 1` vertices used by the even-`k` construction.
///
/// Labels: `w0 = 0`, `A1`, `A2`, `u0 = k - 1`, `B1`, `B2`, with
/// `|A1| = |A2| = |B2| = (k-2)/2` and `|B1| = k/2`. `N(w0) = A`, `u0` sees
/// `A1 ∪ B1`, `A2` is matched to `B2`, and `A` and `B1 ∪ B2` are cliques.
pub fn make_zlx_even_h(k: usize) -> Result<Graph, GraphError> {
    if k < 2 || k % 2 == 1 {
        return Err(GraphError::param("zlx_even", format!("k must be even and >= 2, got {k}")));
    }
    let h = (k - 2) / 2;
    let a = 1..k - 1;
    let a1 = 1..1 + h;
    let u0 = k - 1;
    let b1 = k..k + k / 2;
    let b12 = k..2 * k - 1;
    let b2_start = k + k / 2;
    let mut g = Graph::empty(2 * k - 1);
    for v in a.clone() {
        g.set(0, v);
        for u in a.start..v {
            g.set(u, v);
        }
    }
    for v in a1.chain(b1) {
        g.set(u0, v);
    }
    for i in 0..h {
        g.set(1 + h + i, b2_start + i);
    }
    for v in b12.clone() {
        for u in b12.start..v {
            g.set(u, v);
        }
    }
    Ok(g)
}

/// `K_{⌊n/2⌋,⌈n/2⌉}` with `H` (see [`make_zlx_even_h`]) embedded on the
/// lowest labels of the size-`⌊n/2⌋` part.
pub fn make_zlx_even_extremal(n: usize, k: usize) -> Result<Graph, GraphError> {
    let h = make_zlx_even_h(k)?;
    if n / 2 < 2 * k - 1 {
        return Err(GraphError::param("zlx_even", format!("floor(n/2) must be at least 2k-1, got n={n}, k={k}")));
    }
    let mut g = complete_bipartite(n / 2, n.div_ceil(2));
    for (u, v) in h.edges() {
        g.set(u, v);
    }
    Ok(g)
}

/// Two adjacent apexes `u = 0` and `v0 = 1` joined to `v_1..v_t`
/// (labels `2..t+2`), plus a bipartite graph between the `v_i` and
/// `w_1..w_s` (labels `t+2..t+s+2`). `cross` holds 1-based pairs `(i, j)`
/// meaning `v_i w_j`.
pub fn make_apex_pair(s: usize, t: usize, cross: &[(usize, usize)]) -> Result<Graph, GraphError> {
    if t < 1 {
        return Err(GraphError::param("apex_pair", "need t >= 1"));
    }
    let mut g = Graph::empty(t + s + 2);
    g.set(0, 1);
    for i in 1..=t {
        g.set(0, i + 1);
        g.set(1, i + 1);
    }
    for &(i, j) in cross {
        if !(1..=t).contains(&i) || !(1..=s).contains(&j) {
            return Err(GraphError::param("apex_pair", format!("cross pair ({i}, {j}) outside 1..={t} x 1..={s}")));
        }
        g.set(i + 1, t + 1 + j);
    }
    Ok(g)
}

/// A named family with its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    BalancedPlus { n: usize },
    BipartitePlus { a: usize, b: usize },
    SplitJoin { k: usize, s: usize },
    Fan { k: usize },
    Turan { n: usize, r: usize },
    TwoK2 { n: usize },
    EfggOdd { n: usize, k: usize },
    ZlxEven { n: usize, k: usize },
    ZlxEvenH { k: usize },
    ApexPair { s: usize, t: usize, cross: Vec<(usize, usize)> },
}

impl FamilySpec {
    pub const KINDS: [&'static str; 10] = [
        "balanced_plus",
        "bipartite_plus",
        "split_join",
        "fan",
        "turan",
        "two_k2",
        "efgg_odd",
        "zlx_even",
        "zlx_even_h",
        "apex_pair",
    ];

    pub fn kind(&self) -> &'static str {
        match self {
            FamilySpec::BalancedPlus { .. } => "balanced_plus",
            FamilySpec::BipartitePlus { .. } => "bipartite_plus",
            FamilySpec::SplitJoin { .. } => "split_join",
            FamilySpec::Fan { .. } => "fan",
            FamilySpec::Turan { .. } => "turan",
            FamilySpec::TwoK2 { .. } => "two_k2",
            FamilySpec::EfggOdd { .. } => "efgg_odd",
            FamilySpec::ZlxEven { .. } => "zlx_even",
            FamilySpec::ZlxEvenH { .. } => "zlx_even_h",
            FamilySpec::ApexPair { .. } => "apex_pair",
        }
    }

    pub fn build(&self) -> Result<Graph, GraphError> {
        match *self {
            FamilySpec::BalancedPlus { n } => make_balanced_plus(n),
            FamilySpec::BipartitePlus { a, b } => make_bipartite_plus(a, b),
            FamilySpec::SplitJoin { k, s } => Ok(make_split_join(k, s)),
            FamilySpec::Fan { k } => make_fan(k),
            FamilySpec::Turan { n, r } => make_turan(n, r),
            FamilySpec::TwoK2 { n } => make_two_k2_bipartite(n),
            FamilySpec::EfggOdd { n, k } => make_efgg_odd(n, k),
            FamilySpec::ZlxEven { n, k } => make_zlx_even_extremal(n, k),
            FamilySpec::ZlxEvenH { k } => make_zlx_even_h(k),
            FamilySpec::ApexPair { s, t, ref cross } => make_apex_pair(s, t, cross),
        }
    }

    /// Edge count predicted by the family's closed form.
    pub fn expected_edges(&self) -> usize {
        let c2 = |x: usize| x * x.saturating_sub(1) / 2;
        let zlx_h = |k: usize| k * k - 3 * k / 2;
        match *self {
            FamilySpec::BalancedPlus { n } => {
                if n == 3 {
                    3
                } else {
                    n * n / 4 + 1
                }
            }
            FamilySpec::BipartitePlus { a, b } => a * b + 1,
            FamilySpec::SplitJoin { k, s } => c2(k) + k * s,
            FamilySpec::Fan { k } => 3 * k,
            FamilySpec::Turan { n, r } => {
                c2(n) - turan_parts(n, r).into_iter().map(c2).sum::<usize>()
            }
            FamilySpec::TwoK2 { n } => n * n / 4 + 2,
            FamilySpec::EfggOdd { n, k } => n * n / 4 + k * k - k,
            FamilySpec::ZlxEven { n, k } => n * n / 4 + zlx_h(k),
            FamilySpec::ZlxEvenH { k } => zlx_h(k),
            FamilySpec::ApexPair { t, ref cross, .. } => {
                let mut c = cross.clone();
                c.sort_unstable();
                c.dedup();
                1 + 2 * t + c.len()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn sizes_match_closed_forms() {
        let cases = vec![
            FamilySpec::BipartitePlus { a: 2, b: 2 },
            FamilySpec::BipartitePlus { a: 3, b: 3 },
            FamilySpec::BalancedPlus { n: 3 },
            FamilySpec::BalancedPlus { n: 7 },
            FamilySpec::SplitJoin { k: 2, s: 4 },
            FamilySpec::Fan { k: 3 },
            FamilySpec::Turan { n: 7, r: 3 },
            FamilySpec::Turan { n: 5, r: 5 },
            FamilySpec::TwoK2 { n: 7 },
            FamilySpec::EfggOdd { n: 12, k: 3 },
            FamilySpec::ZlxEven { n: 16, k: 4 },
            FamilySpec::ZlxEvenH { k: 2 },
            FamilySpec::ZlxEvenH { k: 6 },
            FamilySpec::ApexPair { s: 2, t: 2, cross: vec![(1, 1), (1, 2), (2, 1), (2, 2)] },
        ];
        for spec in cases {
            let g = spec.build().unwrap();
            assert_eq!(g.edge_count(), spec.expected_edges(), "{spec:?}");
        }
    }

    #[test]
    fn spot_values() {
        assert_eq!(make_bipartite_plus(3, 3).unwrap().edge_count(), 10);
        assert_eq!(make_turan(7, 3).unwrap().edge_count(), 16);
        assert_eq!(make_turan(6, 2).unwrap(), complete_bipartite(3, 3));
        assert_eq!(make_turan(5, 5).unwrap(), complete(5));
        assert_eq!(make_split_join(1, 3), star(3));
        assert_eq!(make_balanced_plus(3).unwrap(), complete(3));
        assert_eq!(make_fan(1).unwrap(), complete(3));
        assert_eq!(make_efgg_odd(12, 3).unwrap().edge_count(), 42);
        assert_eq!(make_efgg_odd(6, 1).unwrap(), complete_bipartite(3, 3));
        assert_eq!(make_two_k2_bipartite(8).unwrap().edge_count(), 18);
        assert_eq!(make_apex_pair(0, 3, &[]).unwrap().edge_count(), 7);
    }

    #[test]
    fn zlx_gadget_shape() {
        let h2 = make_zlx_even_h(2).unwrap();
        assert_eq!((h2.vertex_count(), h2.edge_count(), h2.degree(0)), (3, 1, 0));
        let h4 = make_zlx_even_h(4).unwrap();
        assert_eq!(h4.vertex_count(), 7);
        assert_eq!(h4.edge_count(), 10);
        let mut d = h4.degrees();
        d.sort_unstable_by(|a, b| b.cmp(a));
        assert_eq!(d, vec![3, 3, 3, 3, 3, 3, 2]);
        for k in (2..=12).step_by(2) {
            let h = make_zlx_even_h(k).unwrap();
            assert_eq!(h.degree(0), k - 2);
            assert_eq!(h.max_degree(), k - 1);
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(make_bipartite_plus(1, 3).is_err());
        assert!(make_bipartite_plus(2, 0).is_err());
        assert!(make_balanced_plus(2).is_err());
        assert!(make_fan(0).is_err());
        assert!(make_turan(4, 0).is_err());
        assert!(make_two_k2_bipartite(6).is_err());
        assert!(make_efgg_odd(12, 2).is_err());
        assert!(make_efgg_odd(10, 3).is_err());
        assert!(make_zlx_even_h(3).is_err());
        assert!(make_zlx_even_extremal(12, 4).is_err());
        assert!(make_apex_pair(1, 1, &[(2, 1)]).is_err());
        assert!(make_apex_pair(1, 0, &[]).is_err());
    }
}

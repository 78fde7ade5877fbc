use crate::forest::{EdgeKind, ImageRank, PotentialForest};
use crate::graph::{ColoredGraph, EdgeSubset};

/// Counts of an edge-induced subgraph and the sparsity bounds they give.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CountReport {
    pub vertices: usize,
    pub edges: usize,
    pub components: usize,
    pub rank: u8,
    /// `n' + rk' - c'`.
    pub f: i64,
    /// `2f - 1`: the colored-Laman bound.
    pub bound232: i64,
    /// `2f`: the `(2,2,2)` bound.
    pub bound222: i64,
}

impl CountReport {
    fn new(vertices: usize, edges: usize, components: usize, rank: u8) -> Self {
        let f = vertices as i64 + rank as i64 - components as i64;
        CountReport { vertices, edges, components, rank, f, bound232: 2 * f - 1, bound222: 2 * f }
    }
}

/// Scans the edges with a potential union-find. `n'` is the number of
/// distinct endpoints; every forest edge lowers `n' - c'`'s deficit by one.
pub(crate) fn scan<I: IntoIterator<Item = usize>>(graph: &ColoredGraph, ids: I) -> CountReport {
    let mut pf = PotentialForest::new(graph.vertex_count());
    let mut seen = alloc::vec![false; graph.vertex_count()];
    let mut rank = ImageRank::new();
    let (mut vertices, mut edges, mut forest) = (0usize, 0usize, 0usize);
    for id in ids {
        let e = graph.edge(id);
        edges += 1;
        for v in [e.tail, e.head] {
            if !seen[v] {
                seen[v] = true;
                vertices += 1;
            }
        }
        match pf.add_edge(e.tail, e.head, e.color) {
            EdgeKind::Forest => forest += 1,
            EdgeKind::Cycle(img) => {
                rank.push(img);
            }
        }
    }
    CountReport::new(vertices, edges, vertices - forest, rank.rank())
}

/// Whether `f(ids) == |ids|`, i.e. every cycle closed by the scan raises the rank.
pub(crate) fn independent_ids<I: IntoIterator<Item = usize>>(graph: &ColoredGraph, ids: I) -> bool {
    let mut pf = PotentialForest::new(graph.vertex_count());
    let mut rank = ImageRank::new();
    for id in ids {
        let e = graph.edge(id);
        if let EdgeKind::Cycle(img) = pf.add_edge(e.tail, e.head, e.color) {
            if !rank.push(img) {
                return false;
            }
        }
    }
    true
}

pub fn count_report(subset: &EdgeSubset<'_>) -> CountReport {
    scan(subset.graph(), subset.ids().iter().copied())
}

/// `f(E') = n' + rk' - c'`; zero on the empty set.
pub fn f_value(subset: &EdgeSubset<'_>) -> i64 {
    count_report(subset).f
}

/// Independence in the matroid with rank function `f`.
pub fn is_f_independent(subset: &EdgeSubset<'_>) -> bool {
    independent_ids(subset.graph(), subset.ids().iter().copied())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_vertex(colors: &[(i64, i64)]) -> ColoredGraph {
        ColoredGraph::from_edges(1, colors.iter().map(|&c| (0, 0, c))).unwrap()
    }

    #[test]
    fn f_examples() {
        let g = ColoredGraph::new(1);
        assert_eq!(f_value(&g.all_edges()), 0);
        assert_eq!(f_value(&one_vertex(&[(1, 0)]).all_edges()), 1);
        assert_eq!(f_value(&one_vertex(&[(1, 0), (0, 1), (1, 1)]).all_edges()), 2);
    }

    #[test]
    fn f_independence_examples() {
        let tree = ColoredGraph::from_edges(4, [(0, 1, (3, 3)), (2, 1, (0, 1)), (3, 2, (-1, 0))]).unwrap();
        assert!(is_f_independent(&tree.all_edges()));
        assert!(!is_f_independent(&one_vertex(&[(1, 0), (2, 0)]).all_edges()));
        assert!(is_f_independent(&one_vertex(&[(1, 0), (0, 1)]).all_edges()));
    }

    #[test]
    fn report_bounds() {
        let g = ColoredGraph::from_edges(2, [(0, 0, (1, 0)), (1, 1, (1, 0))]).unwrap();
        let r = count_report(&g.all_edges());
        assert_eq!((r.vertices, r.edges, r.components, r.rank), (2, 2, 2, 1));
        assert_eq!((r.f, r.bound232, r.bound222), (1, 1, 2));
    }
}

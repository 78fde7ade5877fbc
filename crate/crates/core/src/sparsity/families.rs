use alloc::vec::Vec;

use super::brute::{brute_force_sparsity, Family, BRUTE_FORCE_LIMIT};
use super::counts::{independent_ids, scan, CountReport};
use super::structure::is_11k;
use super::union::MatroidPartition;
use crate::forest::z2_rank;
use crate::graph::{ColorVector, ColoredGraph, EdgeSubset};
use crate::{Error, Result};

fn partition_of(graph: &ColoredGraph, ids: &[usize]) -> Option<MatroidPartition> {
    let mut p = MatroidPartition::new(2);
    for &id in ids {
        if !p.insert(id, |s| independent_ids(graph, s.iter().copied())) {
            return None;
        }
    }
    Some(p)
}

/// Independence in the union of two copies of the `f` matroid, i.e.
/// `(2,2,2)`-sparsity of the subset. On success returns the two
/// `f`-independent parts.
pub fn union_independent(subset: &EdgeSubset<'_>) -> Option<[Vec<usize>; 2]> {
    let p = partition_of(subset.graph(), subset.ids())?;
    let mut parts = p.into_parts().into_iter().map(|mut v| {
        v.sort_unstable();
        v
    });
    Some([parts.next().unwrap_or_default(), parts.next().unwrap_or_default()])
}

/// Rank of the subset in the union matroid `M_f v M_f`.
pub fn union_rank(subset: &EdgeSubset<'_>) -> usize {
    let g = subset.graph();
    let mut p = MatroidPartition::new(2);
    subset
        .ids()
        .iter()
        .filter(|&&id| p.insert(id, |s| independent_ids(g, s.iter().copied())))
        .count()
}

pub fn is_222_sparse(graph: &ColoredGraph) -> bool {
    union_independent(&graph.all_edges()).is_some()
}

/// `(2,2,2)`-sparse with `m = 2n - 2 + 2k`, `k` the `Z^2`-rank.
pub fn is_222_graph(graph: &ColoredGraph) -> bool {
    let all = graph.all_edges();
    let k = z2_rank(&all) as usize;
    graph.edge_count() + 2 == 2 * graph.vertex_count() + 2 * k && is_222_sparse(graph)
}

/// Two edge-disjoint spanning `(1,1,k)`-graphs covering a `(2,2,2)`-graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub parts: [Vec<usize>; 2],
    pub k: u8,
}

pub fn decompose_two_11k(graph: &ColoredGraph) -> Result<Decomposition> {
    if !is_222_graph(graph) {
        return Err(Error::domain("graph is not a (2,2,2)-graph"));
    }
    let parts = union_independent(&graph.all_edges()).ok_or_else(|| Error::internal("lost independence"))?;
    let k = z2_rank(&graph.all_edges());
    for p in &parts {
        if is_11k(&graph.subset(p.iter().copied())?) != Some(k) {
            return Err(Error::internal("decomposition part is not a (1,1,k)-graph"));
        }
    }
    Ok(Decomposition { parts, k })
}

// Colored-Laman sparsity of `ids` given a partition of them: each edge can be
// doubled without leaving the union matroid.
fn laman_given_partition(graph: &ColoredGraph, ids: &[usize], p: &MatroidPartition) -> bool {
    ids.iter().all(|&e| doubling_fits(graph, p, e))
}

fn doubling_fits(graph: &ColoredGraph, p: &MatroidPartition, e: usize) -> bool {
    let doubled = graph.with_doubled(e);
    let copy = graph.edge_count();
    let mut q = p.clone();
    q.insert(copy, |s| independent_ids(&doubled, s.iter().copied()))
}

/// `m' <= 2f - 1` for every nonempty subset of `ids`.
pub fn is_laman_sparse_subset(graph: &ColoredGraph, ids: &[usize]) -> bool {
    match partition_of(graph, ids) {
        Some(p) => laman_given_partition(graph, ids, &p),
        None => false,
    }
}

pub fn is_colored_laman_sparse(graph: &ColoredGraph) -> bool {
    is_laman_sparse_subset(graph, graph.all_edges().ids())
}

/// Colored-Laman-sparse with `m = 2n + 1`.
pub fn is_colored_laman(graph: &ColoredGraph) -> bool {
    graph.edge_count() == 2 * graph.vertex_count() + 1 && is_colored_laman_sparse(graph)
}

/// Greedy maximal colored-Laman-sparse subset, scanning edges by id.
pub fn max_laman_sparse_subset(graph: &ColoredGraph) -> Vec<usize> {
    let mut grow = LamanGrowth::new(graph.vertex_count());
    let mut kept = Vec::new();
    for (e, edge) in graph.edges().iter().enumerate() {
        if grow.try_add(edge.tail, edge.head, edge.color) {
            kept.push(e);
        }
    }
    kept
}

/// Builds a colored-Laman-sparse graph edge by edge. If `B` is sparse then
/// `B + e` is sparse iff `B + e + e_c` is independent in `M_f v M_f`, so each
/// step costs two augmentations.
#[derive(Clone, Debug)]
pub struct LamanGrowth {
    graph: ColoredGraph,
    partition: MatroidPartition,
}

impl LamanGrowth {
    pub fn new(n: usize) -> Self {
        LamanGrowth { graph: ColoredGraph::new(n), partition: MatroidPartition::new(2) }
    }

    pub fn graph(&self) -> &ColoredGraph {
        &self.graph
    }

    pub fn into_graph(self) -> ColoredGraph {
        self.graph
    }

    /// Adds the edge when the result stays sparse; returns whether it did.
    pub fn try_add(&mut self, tail: usize, head: usize, color: ColorVector) -> bool {
        let mut g = self.graph.clone();
        let Ok(e) = g.add_edge(tail, head, color) else {
            return false;
        };
        let mut q = self.partition.clone();
        if q.insert(e, |s| independent_ids(&g, s.iter().copied())) && doubling_fits(&g, &q, e) {
            self.graph = g;
            self.partition = q;
            true
        } else {
            false
        }
    }
}

/// Rank of the colored-Laman matroid on the whole edge set.
pub fn laman_rank(graph: &ColoredGraph) -> usize {
    max_laman_sparse_subset(graph).len()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircuitReport {
    /// Edge ids of the circuit, ascending.
    pub edges: Vec<usize>,
    pub counts: CountReport,
}

/// The colored-Laman circuit created by the first edge (by id) that the
/// greedy scan rejects.
pub fn find_laman_circuit(graph: &ColoredGraph) -> Result<CircuitReport> {
    let base = max_laman_sparse_subset(graph);
    let Some(extra) = (0..graph.edge_count()).find(|e| base.binary_search(e).is_err()) else {
        return Err(Error::domain("graph is colored-Laman-sparse; it has no circuit"));
    };
    let mut with: Vec<usize> = base.clone();
    with.push(extra);
    with.sort_unstable();
    let circuit: Vec<usize> = with
        .iter()
        .copied()
        .filter(|&e| {
            let rest: Vec<usize> = with.iter().copied().filter(|&x| x != e).collect();
            is_laman_sparse_subset(graph, &rest)
        })
        .collect();
    if is_laman_sparse_subset(graph, &circuit) {
        return Err(Error::internal("circuit candidate is sparse"));
    }
    for &e in &circuit {
        let rest: Vec<usize> = circuit.iter().copied().filter(|&x| x != e).collect();
        if !is_laman_sparse_subset(graph, &rest) {
            return Err(Error::internal("circuit candidate is not minimal"));
        }
    }
    let counts = scan(graph, circuit.iter().copied());
    Ok(CircuitReport { edges: circuit, counts })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RossVerdict {
    pub is_ross: bool,
    /// Whether the direct count check also ran (it enumerates subsets, so it
    /// is skipped above the brute-force limit).
    pub cross_checked: bool,
}

/// The loops whose addition at a vertex turns a Ross graph into a
/// colored-Laman graph.
pub const ROSS_LOOPS: [ColorVector; 3] =
    [ColorVector { g1: 1, g2: 0 }, ColorVector { g1: 0, g2: 1 }, ColorVector { g1: 1, g2: 1 }];

/// Ross graph: `m = 2n - 2`, every subgraph has `m' <= 2n' - 2` and every
/// `Z^2`-rank-0 subgraph `m' <= 2n' - 3`. Decided by adding three loops and
/// testing colored-Laman, and when small enough also by direct counts.
pub fn is_ross(graph: &ColoredGraph) -> Result<RossVerdict> {
    let n = graph.vertex_count();
    if n == 0 {
        return Err(Error::domain("graph has no vertices"));
    }
    let m = graph.edge_count();
    let augmented = graph.with_loops(0, &ROSS_LOOPS)?;
    let via_loops = is_colored_laman(&augmented);
    if m > BRUTE_FORCE_LIMIT {
        return Ok(RossVerdict { is_ross: via_loops, cross_checked: false });
    }
    let direct = m + 2 == 2 * n && brute_force_sparsity(graph, Family::Ross)?.sparse;
    if direct != via_loops {
        return Err(Error::internal("Ross routes disagree"));
    }
    Ok(RossVerdict { is_ross: direct, cross_checked: true })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, e: &[(usize, usize, (i64, i64))]) -> ColoredGraph {
        ColoredGraph::from_edges(n, e.iter().copied()).unwrap()
    }

    #[test]
    fn single_vertex_loops() {
        let three = g(1, &[(0, 0, (1, 0)), (0, 0, (0, 1)), (0, 0, (1, 1))]);
        assert!(is_colored_laman(&three));
        let collinear = g(1, &[(0, 0, (1, 0)), (0, 0, (2, 0)), (0, 0, (0, 1))]);
        assert!(!is_colored_laman_sparse(&collinear));
        assert!(is_222_sparse(&collinear));
        let c = find_laman_circuit(&collinear).unwrap();
        assert_eq!(c.edges, [0, 1]);
        assert_eq!(c.counts.edges as i64, 2 * c.counts.f);
    }

    #[test]
    fn zero_loop_is_a_circuit() {
        let z = g(2, &[(0, 1, (0, 0)), (1, 1, (0, 0))]);
        let c = find_laman_circuit(&z).unwrap();
        assert_eq!(c.edges, [1]);
        assert_eq!((c.counts.edges, c.counts.f), (1, 0));
    }

    #[test]
    fn decomposition_of_222_graph() {
        let d = g(1, &[(0, 0, (1, 0)), (0, 0, (0, 1)), (0, 0, (1, 1)), (0, 0, (1, -1))]);
        assert!(is_222_graph(&d));
        let dec = decompose_two_11k(&d).unwrap();
        assert_eq!(dec.k, 2);
        assert_eq!(dec.parts[0].len() + dec.parts[1].len(), 4);
    }

    #[test]
    fn ross_single_vertex() {
        let r = g(1, &[]);
        assert_eq!(is_ross(&r).unwrap(), RossVerdict { is_ross: true, cross_checked: true });
        let two = g(2, &[(0, 1, (0, 0)), (0, 1, (1, 0))]);
        assert!(is_ross(&two).unwrap().is_ross);
        let flat = g(2, &[(0, 1, (0, 0)), (0, 1, (0, 0))]);
        assert!(!is_ross(&flat).unwrap().is_ross);
    }
}

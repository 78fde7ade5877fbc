use alloc::format;
use alloc::vec::Vec;

use super::counts::independent_ids;
use crate::forest::{z2_rank, UnionFind};
use crate::graph::{rho_of_walk, ClosedWalk, EdgeSubset, Step};
use crate::{Error, Result};

/// `Some(k)` when the subset is a `(1,1,k)`-graph spanning every vertex of
/// its graph: connected, `f`-independent, with `n - 1 + k` edges, `k` its
/// `Z^2`-rank.
pub fn is_11k(subset: &EdgeSubset<'_>) -> Option<u8> {
    let g = subset.graph();
    let n = g.vertex_count();
    if n == 0 {
        return None;
    }
    let mut uf = UnionFind::new(n);
    let mut comps = n;
    for (_, e) in subset.edges() {
        if uf.union(e.tail, e.head) {
            comps -= 1;
        }
    }
    if comps != 1 || !independent_ids(g, subset.ids().iter().copied()) {
        return None;
    }
    let k = z2_rank(subset);
    (subset.len() == n - 1 + k as usize).then_some(k)
}

/// The three shapes of the cycle part of a `(1,1,2)`-graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElevenShape {
    /// Two cycles sharing exactly one vertex.
    Figure8,
    /// Two vertex-disjoint cycles joined by a path.
    Dumbbell,
    /// Two vertices joined by three internally disjoint paths.
    Theta,
}

#[derive(Clone, Debug)]
pub struct ShapeReport {
    pub shape: ElevenShape,
    /// Two cycles with linearly independent images.
    pub cycles: [ClosedWalk; 2],
    /// An edge on the first cycle and not the second; removing it leaves a
    /// `(1,1,1)`-graph.
    pub removable_edge: usize,
}

struct Path {
    start: usize,
    end: usize,
    steps: Vec<Step>,
}

/// Finds the shape of a `(1,1,2)`-graph together with two witness cycles.
pub fn classify_11k_shape(subset: &EdgeSubset<'_>) -> Result<ShapeReport> {
    if is_11k(subset) != Some(2) {
        return Err(Error::domain("edge set is not a (1,1,2)-graph"));
    }
    let g = subset.graph();
    let n = g.vertex_count();
    let mut alive: Vec<bool> = alloc::vec![false; g.edge_count()];
    let mut deg = alloc::vec![0usize; n];
    for (id, e) in subset.edges() {
        alive[id] = true;
        deg[e.tail] += 1;
        deg[e.head] += 1;
    }
    // strip pendant trees
    let mut stack: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
    while let Some(v) = stack.pop() {
        if deg[v] != 1 {
            continue;
        }
        let Some((id, e)) = subset.edges().find(|&(id, e)| alive[id] && (e.tail == v || e.head == v))
        else {
            continue;
        };
        alive[id] = false;
        let w = if e.tail == v { e.head } else { e.tail };
        deg[v] -= 1;
        deg[w] -= 1;
        if deg[w] == 1 {
            stack.push(w);
        }
    }
    let mut ends: Vec<Vec<(Step, usize)>> = alloc::vec![Vec::new(); n];
    for (id, e) in subset.edges() {
        if alive[id] {
            ends[e.tail].push((Step::forward(id), e.head));
            ends[e.head].push((Step::backward(id), e.tail));
        }
    }
    let branch: Vec<usize> = (0..n).filter(|&v| deg[v] >= 3).collect();

    let mut paths: Vec<Path> = Vec::new();
    let mut seen_first: Vec<Vec<usize>> = Vec::new();
    for &b in &branch {
        for &(first, next) in &ends[b] {
            let mut steps = alloc::vec![first];
            let mut cur = next;
            let mut via = first.edge;
            while deg[cur] == 2 {
                let &(s, to) = ends[cur]
                    .iter()
                    .find(|(s, _)| s.edge != via)
                    .ok_or_else(|| Error::internal("broken path in cycle core"))?;
                steps.push(s);
                via = s.edge;
                cur = to;
            }
            let mut key: Vec<usize> = steps.iter().map(|s| s.edge).collect();
            key.sort_unstable();
            if !seen_first.contains(&key) {
                seen_first.push(key);
                paths.push(Path { start: b, end: cur, steps });
            }
        }
    }

    let join = |a: &Path, b: &Path| {
        let mut steps = a.steps.clone();
        steps.extend(b.steps.iter().rev().map(|s| Step { edge: s.edge, dir: s.dir.flipped() }));
        ClosedWalk::new(steps)
    };
    let closed = |p: &Path| ClosedWalk::new(p.steps.clone());
    let (shape, c1, c2, removable) = match (branch.len(), paths.len()) {
        (1, 2) => (ElevenShape::Figure8, closed(&paths[0]), closed(&paths[1]), paths[0].steps[0].edge),
        (2, 3) => {
            let loops: Vec<&Path> = paths.iter().filter(|p| p.start == p.end).collect();
            if loops.len() == 2 {
                (ElevenShape::Dumbbell, closed(loops[0]), closed(loops[1]), loops[0].steps[0].edge)
            } else if loops.is_empty() {
                let (a, b, c) = (&paths[0], &paths[1], &paths[2]);
                let b = if b.start == a.start { b } else { return Err(theta_err()) };
                let c = if c.start == a.start { c } else { return Err(theta_err()) };
                (ElevenShape::Theta, join(a, b), join(a, c), b.steps[0].edge)
            } else {
                return Err(Error::internal("unexpected cycle core"));
            }
        }
        _ => return Err(Error::internal(format!("unexpected cycle core: {} branch vertices", branch.len()))),
    };
    let r1 = rho_of_walk(g, &c1)?;
    let r2 = rho_of_walk(g, &c2)?;
    if r1.det(r2) == 0 {
        return Err(Error::internal("witness cycles have dependent images"));
    }
    Ok(ShapeReport { shape, cycles: [c1, c2], removable_edge: removable })
}

fn theta_err() -> Error {
    Error::internal("theta paths do not share an endpoint")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::ColoredGraph;

    #[test]
    fn is_11k_examples() {
        let g = ColoredGraph::from_edges(1, []).unwrap();
        assert_eq!(is_11k(&g.all_edges()), Some(0));
        let g = ColoredGraph::from_edges(2, [(0, 1, (0, 0)), (0, 1, (1, 0))]).unwrap();
        assert_eq!(is_11k(&g.all_edges()), Some(1));
        let g = ColoredGraph::from_edges(2, [(0, 1, (0, 0)), (0, 1, (1, 0)), (0, 1, (2, 0))]).unwrap();
        assert_eq!(is_11k(&g.all_edges()), None);
        let g = ColoredGraph::from_edges(3, [(0, 1, (0, 0)), (0, 1, (1, 0))]).unwrap();
        assert_eq!(is_11k(&g.all_edges()), None);
    }

    fn shape_of(n: usize, edges: &[(usize, usize, (i64, i64))]) -> ShapeReport {
        let g = ColoredGraph::from_edges(n, edges.iter().copied()).unwrap();
        let r = classify_11k_shape(&g.all_edges()).unwrap();
        let rest = g.all_edges().without(r.removable_edge);
        assert_eq!(is_11k(&rest), Some(1));
        assert!(r.cycles[0].steps.iter().any(|s| s.edge == r.removable_edge));
        assert!(r.cycles[1].steps.iter().all(|s| s.edge != r.removable_edge));
        r
    }

    #[test]
    fn three_shapes() {
        let r = shape_of(2, &[(0, 0, (1, 0)), (0, 0, (0, 1)), (0, 1, (5, 5))]);
        assert_eq!(r.shape, ElevenShape::Figure8);
        let r = shape_of(3, &[(0, 0, (1, 0)), (0, 1, (0, 0)), (1, 1, (0, 1)), (2, 1, (3, 0))]);
        assert_eq!(r.shape, ElevenShape::Dumbbell);
        let r = shape_of(3, &[(0, 1, (0, 0)), (0, 1, (1, 0)), (0, 2, (0, 1)), (2, 1, (0, 0))]);
        assert_eq!(r.shape, ElevenShape::Theta);
    }

    #[test]
    fn non_112_is_rejected() {
        let g = ColoredGraph::from_edges(2, [(0, 1, (0, 0)), (0, 1, (1, 0))]).unwrap();
        assert!(classify_11k_shape(&g.all_edges()).is_err());
    }
}

//! Spanning forests, fundamental cycles and the `Z^2`-rank.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{ClosedWalk, ColorVector, ColoredGraph, Direction, EdgeSubset, Step};

/// Disjoint sets with path halving and union by size.
#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), size: vec![1; n] }
    }

    pub(crate) fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    /// Returns false if `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            core::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }
}

/// Rank over `Q` of a growing set of integer vectors in `Z^2`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ImageRank {
    first: Option<ColorVector>,
    rank: u8,
}

impl ImageRank {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `v`; returns true if the rank went up.
    pub fn push(&mut self, v: ColorVector) -> bool {
        match (self.rank, self.first) {
            (0, _) if !v.is_zero() => {
                self.first = Some(v);
                self.rank = 1;
                true
            }
            (1, Some(u)) if u.det(v) != 0 => {
                self.rank = 2;
                true
            }
            _ => false,
        }
    }

    /// Whether `v` would raise the rank.
    pub fn would_increase(&self, v: ColorVector) -> bool {
        match (self.rank, self.first) {
            (0, _) => !v.is_zero(),
            (1, Some(u)) => u.det(v) != 0,
            _ => false,
        }
    }

    pub fn rank(&self) -> u8 {
        self.rank
    }

    /// A nonzero vector spanning the image when the rank is 1.
    pub fn generator(&self) -> Option<ColorVector> {
        self.first
    }
}

impl FromIterator<ColorVector> for ImageRank {
    fn from_iter<I: IntoIterator<Item = ColorVector>>(iter: I) -> Self {
        let mut r = ImageRank::new();
        for v in iter {
            r.push(v);
            if r.rank == 2 {
                break;
            }
        }
        r
    }
}

/// Union-find that also tracks, for every vertex, the color sum along a tree
/// path from its root. Feeding it edges one by one classifies each edge as a
/// forest edge or as closing a cycle with a known image.
#[derive(Clone, Debug)]
pub(crate) struct PotentialForest {
    parent: Vec<usize>,
    /// Color sum from `parent[v]` to `v` along the forest.
    offset: Vec<ColorVector>,
    size: Vec<usize>,
}

pub(crate) enum EdgeKind {
    Forest,
    Cycle(ColorVector),
}

impl PotentialForest {
    pub(crate) fn new(n: usize) -> Self {
        PotentialForest { parent: (0..n).collect(), offset: vec![ColorVector::ZERO; n], size: vec![1; n] }
    }

    /// Root of `v` and the color sum from the root to `v`.
    fn find(&mut self, v: usize) -> (usize, ColorVector) {
        let mut path = Vec::new();
        let mut r = v;
        while self.parent[r] != r {
            path.push(r);
            r = self.parent[r];
        }
        // compress: offsets accumulated from the top of the path down
        let mut acc = ColorVector::ZERO;
        for &u in path.iter().rev() {
            acc += self.offset[u];
            self.offset[u] = acc;
            self.parent[u] = r;
        }
        (r, if path.is_empty() { ColorVector::ZERO } else { self.offset[v] })
    }

    pub(crate) fn add_edge(&mut self, tail: usize, head: usize, color: ColorVector) -> EdgeKind {
        let (rt, pt) = self.find(tail);
        let (rh, ph) = self.find(head);
        if rt == rh {
            return EdgeKind::Cycle(pt + color - ph);
        }
        // want pot(head) = pot(tail) + color after the merge
        if self.size[rt] >= self.size[rh] {
            self.parent[rh] = rt;
            self.offset[rh] = pt + color - ph;
            self.size[rt] += self.size[rh];
        } else {
            self.parent[rt] = rh;
            self.offset[rt] = ph - color - pt;
            self.size[rh] += self.size[rt];
        }
        EdgeKind::Forest
    }
}

/// A depth-first spanning forest with root potentials. For a vertex `v`,
/// `potential[v]` is `sigma_{rv}`, the signed color sum along the tree path
/// from its root `r` to `v`.
#[derive(Clone, Debug)]
pub struct SpanningForest {
    /// Vertices covered by the forest, in discovery order.
    pub vertices: Vec<usize>,
    /// `(edge, parent vertex)` for non-root covered vertices.
    pub parent: Vec<Option<(usize, usize)>>,
    pub root: Vec<usize>,
    pub depth: Vec<usize>,
    pub potential: Vec<ColorVector>,
    pub tree_edges: Vec<usize>,
    pub non_tree_edges: Vec<usize>,
    /// Roots in discovery order; one per component.
    pub roots: Vec<usize>,
    covered: Vec<bool>,
}

impl SpanningForest {
    /// Forest of the edge-induced subgraph of `subset`.
    pub fn of_subset(subset: &EdgeSubset<'_>) -> Self {
        Self::build(subset.graph(), subset.ids(), &subset.spanned_vertices())
    }

    /// Forest of the whole graph over all of its vertices (isolated vertices
    /// become single-vertex trees).
    pub fn of_graph(graph: &ColoredGraph) -> Self {
        let ids: Vec<usize> = (0..graph.edge_count()).collect();
        let vs: Vec<usize> = (0..graph.vertex_count()).collect();
        Self::build(graph, &ids, &vs)
    }

    fn build(graph: &ColoredGraph, ids: &[usize], vertices: &[usize]) -> Self {
        let n = graph.vertex_count();
        let mut adj: Vec<Vec<(usize, usize, Direction)>> = vec![Vec::new(); n];
        for &id in ids {
            let e = graph.edge(id);
            adj[e.tail].push((id, e.head, Direction::Forward));
            if !e.is_loop() {
                adj[e.head].push((id, e.tail, Direction::Backward));
            }
        }
        let mut f = SpanningForest {
            vertices: Vec::new(),
            parent: vec![None; n],
            root: vec![usize::MAX; n],
            depth: vec![0; n],
            potential: vec![ColorVector::ZERO; n],
            tree_edges: Vec::new(),
            non_tree_edges: Vec::new(),
            roots: Vec::new(),
            covered: vec![false; n],
        };
        let mut used = vec![false; graph.edge_count()];
        for &r in vertices {
            if f.covered[r] {
                continue;
            }
            f.covered[r] = true;
            f.root[r] = r;
            f.roots.push(r);
            f.vertices.push(r);
            let mut stack = vec![(r, 0usize)];
            while let Some(&mut (v, ref mut next)) = stack.last_mut() {
                if *next == adj[v].len() {
                    stack.pop();
                    continue;
                }
                let (id, w, dir) = adj[v][*next];
                *next += 1;
                if f.covered[w] {
                    continue;
                }
                used[id] = true;
                f.covered[w] = true;
                f.root[w] = r;
                f.parent[w] = Some((id, v));
                f.depth[w] = f.depth[v] + 1;
                let step = Step { edge: id, dir };
                f.potential[w] = f.potential[v] + step.signed_color(graph);
                f.tree_edges.push(id);
                f.vertices.push(w);
                stack.push((w, 0));
            }
        }
        f.non_tree_edges = ids.iter().copied().filter(|&id| !used[id]).collect();
        f
    }

    pub fn covers(&self, v: usize) -> bool {
        self.covered[v]
    }

    pub fn component_count(&self) -> usize {
        self.roots.len()
    }

    /// `rho` of the fundamental cycle of a non-tree edge, traversed forward
    /// along that edge.
    pub fn fundamental_image(&self, graph: &ColoredGraph, edge: usize) -> ColorVector {
        let e = graph.edge(edge);
        self.potential[e.tail] + e.color - self.potential[e.head]
    }

    /// Images of all fundamental cycles, in `non_tree_edges` order.
    pub fn fundamental_images(&self, graph: &ColoredGraph) -> Vec<ColorVector> {
        self.non_tree_edges.iter().map(|&e| self.fundamental_image(graph, e)).collect()
    }

    /// Tree path from `u` to `v` (same component).
    pub fn tree_path(&self, graph: &ColoredGraph, u: usize, v: usize) -> Vec<Step> {
        debug_assert_eq!(self.root[u], self.root[v]);
        let up = |mut x: usize, target_depth: usize, out: &mut Vec<Step>| {
            while self.depth[x] > target_depth {
                let (id, p) = self.parent[x].expect("non-root vertex has a parent");
                let dir = if graph.edge(id).tail == x { Direction::Forward } else { Direction::Backward };
                out.push(Step { edge: id, dir });
                x = p;
            }
            x
        };
        let mut from_u = Vec::new();
        let mut from_v = Vec::new();
        let d = self.depth[u].min(self.depth[v]);
        let mut a = up(u, d, &mut from_u);
        let mut b = up(v, d, &mut from_v);
        while a != b {
            let da = self.depth[a];
            a = up(a, da - 1, &mut from_u);
            b = up(b, da - 1, &mut from_v);
        }
        from_u.extend(from_v.into_iter().rev().map(|s| Step { edge: s.edge, dir: s.dir.flipped() }));
        from_u
    }

    /// The fundamental cycle of a non-tree edge, starting with that edge forward.
    pub fn fundamental_cycle(&self, graph: &ColoredGraph, edge: usize) -> ClosedWalk {
        let e = graph.edge(edge);
        let mut steps = vec![Step::forward(edge)];
        steps.extend(self.tree_path(graph, e.head, e.tail));
        ClosedWalk::new(steps)
    }
}

/// `Z^2`-rank of an edge-induced subgraph: the rank over `Q` of the images of
/// its fundamental cycles.
pub fn z2_rank(subset: &EdgeSubset<'_>) -> u8 {
    let forest = SpanningForest::of_subset(subset);
    forest.fundamental_images(subset.graph()).into_iter().collect::<ImageRank>().rank()
}

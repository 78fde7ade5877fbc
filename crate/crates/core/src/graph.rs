//! Colored quotient graphs and their edge subsets.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use crate::forest::UnionFind;
use crate::{Error, Result};

/// Largest number of parallel copies of one vertex pair in the ground set `K_n^{6,4}`.
pub const MAX_PARALLEL: usize = 6;
/// Largest number of loops at one vertex in the ground set `K_n^{6,4}`.
pub const MAX_LOOPS: usize = 4;

/// An element of `Z^2`: an edge color, a cycle image or a vertex potential.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColorVector {
    pub g1: i64,
    pub g2: i64,
}

impl ColorVector {
    pub const ZERO: ColorVector = ColorVector { g1: 0, g2: 0 };

    pub const fn new(g1: i64, g2: i64) -> Self {
        ColorVector { g1, g2 }
    }

    pub fn is_zero(self) -> bool {
        self.g1 == 0 && self.g2 == 0
    }

    /// `self.g1 * other.g2 - self.g2 * other.g1`, widened so it cannot overflow.
    pub fn det(self, other: ColorVector) -> i128 {
        self.g1 as i128 * other.g2 as i128 - self.g2 as i128 * other.g1 as i128
    }

    pub fn scale(self, k: i64) -> Self {
        ColorVector::new(self.g1 * k, self.g2 * k)
    }
}

impl From<(i64, i64)> for ColorVector {
    fn from((g1, g2): (i64, i64)) -> Self {
        ColorVector::new(g1, g2)
    }
}

impl fmt::Display for ColorVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.g1, self.g2)
    }
}

impl Add for ColorVector {
    type Output = ColorVector;
    fn add(self, rhs: ColorVector) -> ColorVector {
        ColorVector::new(self.g1 + rhs.g1, self.g2 + rhs.g2)
    }
}

impl Sub for ColorVector {
    type Output = ColorVector;
    fn sub(self, rhs: ColorVector) -> ColorVector {
        ColorVector::new(self.g1 - rhs.g1, self.g2 - rhs.g2)
    }
}

impl Neg for ColorVector {
    type Output = ColorVector;
    fn neg(self) -> ColorVector {
        ColorVector::new(-self.g1, -self.g2)
    }
}

impl AddAssign for ColorVector {
    fn add_assign(&mut self, rhs: ColorVector) {
        *self = *self + rhs;
    }
}

impl SubAssign for ColorVector {
    fn sub_assign(&mut self, rhs: ColorVector) {
        *self = *self - rhs;
    }
}

/// A directed edge `tail -> head` with its color. Its id is its position in
/// [`ColoredGraph::edges`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ColoredEdge {
    pub tail: usize,
    pub head: usize,
    pub color: ColorVector,
}

impl ColoredEdge {
    pub fn new(tail: usize, head: usize, color: ColorVector) -> Self {
        ColoredEdge { tail, head, color }
    }

    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }
}

/// Reported when a graph exceeds the `K_n^{6,4}` multiplicities. Operations
/// stay correct; the excess copies are simply dependent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MultiplicityWarning {
    TooManyParallel { u: usize, v: usize, count: usize },
    TooManyLoops { vertex: usize, count: usize },
}

impl fmt::Display for MultiplicityWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            MultiplicityWarning::TooManyParallel { u, v, count } => write!(
                f,
                "{count} parallel edges between {u} and {v} (ground set allows {MAX_PARALLEL})"
            ),
            MultiplicityWarning::TooManyLoops { vertex, count } => write!(
                f,
                "{count} loops at vertex {vertex} (ground set allows {MAX_LOOPS})"
            ),
        }
    }
}

/// A finite `Z^2`-colored directed multigraph on vertices `0..n`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ColoredGraph {
    n: usize,
    edges: Vec<ColoredEdge>,
}

impl ColoredGraph {
    pub fn new(n: usize) -> Self {
        ColoredGraph { n, edges: Vec::new() }
    }

    /// Builds a graph from `(tail, head, (g1, g2))` triples.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, (i64, i64))>,
    {
        let mut g = ColoredGraph::new(n);
        for (t, h, c) in edges {
            g.add_edge(t, h, c.into())?;
        }
        Ok(g)
    }

    /// Appends an edge and returns its id.
    pub fn add_edge(&mut self, tail: usize, head: usize, color: ColorVector) -> Result<usize> {
        if tail >= self.n || head >= self.n {
            return Err(Error::structural(format!(
                "edge {tail}->{head} has an endpoint outside 0..{}",
                self.n
            )));
        }
        self.edges.push(ColoredEdge::new(tail, head, color));
        Ok(self.edges.len() - 1)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[ColoredEdge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> &ColoredEdge {
        &self.edges[id]
    }

    /// The subset of all edges.
    pub fn all_edges(&self) -> EdgeSubset<'_> {
        EdgeSubset { graph: self, ids: (0..self.edges.len()).collect() }
    }

    pub fn subset<I: IntoIterator<Item = usize>>(&self, ids: I) -> Result<EdgeSubset<'_>> {
        EdgeSubset::new(self, ids)
    }

    /// Multiplicities beyond the ground set `K_n^{6,4}`.
    pub fn multiplicity_warnings(&self) -> Vec<MultiplicityWarning> {
        let mut pairs: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for e in &self.edges {
            let key = (e.tail.min(e.head), e.tail.max(e.head));
            *pairs.entry(key).or_default() += 1;
        }
        pairs
            .into_iter()
            .filter_map(|((u, v), count)| {
                if u == v && count > MAX_LOOPS {
                    Some(MultiplicityWarning::TooManyLoops { vertex: u, count })
                } else if u != v && count > MAX_PARALLEL {
                    Some(MultiplicityWarning::TooManyParallel { u, v, count })
                } else {
                    None
                }
            })
            .collect()
    }

    /// Reverses edge `id` and negates its color. Describes the same periodic graph.
    pub fn with_edge_reversed(&self, id: usize) -> Self {
        let mut g = self.clone();
        let e = &mut g.edges[id];
        core::mem::swap(&mut e.tail, &mut e.head);
        e.color = -e.color;
        g
    }

    /// Recolors by a vertex potential: `gamma'_ij = gamma_ij + mu_j - mu_i`.
    /// This is a change of orbit representatives and describes the same periodic graph.
    pub fn recolored(&self, potential: &[ColorVector]) -> Result<Self> {
        if potential.len() != self.n {
            return Err(Error::structural(format!(
                "potential has {} entries for {} vertices",
                potential.len(),
                self.n
            )));
        }
        let mut g = self.clone();
        for e in &mut g.edges {
            e.color = e.color + potential[e.head] - potential[e.tail];
        }
        Ok(g)
    }

    /// Renames vertex `v` to `perm[v]`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Self> {
        let mut seen = alloc::vec![false; self.n];
        if perm.len() != self.n {
            return Err(Error::structural("permutation length differs from vertex count"));
        }
        for &p in perm {
            if p >= self.n || seen[p] {
                return Err(Error::structural("not a permutation of the vertices"));
            }
            seen[p] = true;
        }
        let mut g = self.clone();
        for e in &mut g.edges {
            e.tail = perm[e.tail];
            e.head = perm[e.head];
        }
        Ok(g)
    }

    /// `G + (ij)_c`: appends a parallel copy of edge `id` with the same color.
    pub fn with_doubled(&self, id: usize) -> Self {
        let mut g = self.clone();
        g.edges.push(self.edges[id]);
        g
    }

    /// Appends loops with the given colors at `vertex`.
    pub fn with_loops(&self, vertex: usize, colors: &[ColorVector]) -> Result<Self> {
        let mut g = self.clone();
        for &c in colors {
            g.add_edge(vertex, vertex, c)?;
        }
        Ok(g)
    }

    /// The edge-induced subgraph on `ids`, with its spanned vertices renumbered
    /// in increasing order. Returns the subgraph and, for each new vertex, the
    /// original vertex. Edge `k` of the result is `ids[k]` (after sorting).
    pub fn induced(&self, ids: &[usize]) -> (ColoredGraph, Vec<usize>) {
        let mut ids: Vec<usize> = ids.to_vec();
        ids.sort_unstable();
        ids.dedup();
        let mut new_id = alloc::vec![usize::MAX; self.n];
        for &id in &ids {
            let e = self.edges[id];
            new_id[e.tail] = 0;
            new_id[e.head] = 0;
        }
        let mut old = Vec::new();
        for (v, slot) in new_id.iter_mut().enumerate() {
            if *slot == 0 {
                *slot = old.len();
                old.push(v);
            }
        }
        let mut g = ColoredGraph::new(old.len());
        for &id in &ids {
            let e = self.edges[id];
            g.edges.push(ColoredEdge::new(new_id[e.tail], new_id[e.head], e.color));
        }
        (g, old)
    }

    /// Connected components of the spanning subgraph `(V, E)`, isolated
    /// vertices included.
    pub fn vertex_components(&self) -> Components {
        let mut uf = UnionFind::new(self.n);
        for e in &self.edges {
            uf.union(e.tail, e.head);
        }
        Components::from_union_find(&mut uf, (0..self.n).collect())
    }
}

/// Partition of a vertex set into connected components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Components {
    pub count: usize,
    /// Each part is sorted; parts are ordered by their smallest vertex.
    pub parts: Vec<Vec<usize>>,
}

impl Components {
    fn from_union_find(uf: &mut UnionFind, vertices: Vec<usize>) -> Self {
        let mut by_root: BTreeMap<usize, usize> = BTreeMap::new();
        let mut parts: Vec<Vec<usize>> = Vec::new();
        for v in vertices {
            let r = uf.find(v);
            let idx = *by_root.entry(r).or_insert_with(|| {
                parts.push(Vec::new());
                parts.len() - 1
            });
            parts[idx].push(v);
        }
        Components { count: parts.len(), parts }
    }

    /// Index of the part containing `v`, if any.
    pub fn part_of(&self, v: usize) -> Option<usize> {
        self.parts.iter().position(|p| p.binary_search(&v).is_ok())
    }
}

/// A set of edge ids of one graph. The induced subgraph is edge-induced: its
/// vertices are exactly the endpoints of the selected edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeSubset<'g> {
    graph: &'g ColoredGraph,
    ids: Vec<usize>,
}

impl<'g> EdgeSubset<'g> {
    pub fn new<I: IntoIterator<Item = usize>>(graph: &'g ColoredGraph, ids: I) -> Result<Self> {
        let mut ids: Vec<usize> = ids.into_iter().collect();
        ids.sort_unstable();
        ids.dedup();
        if let Some(&bad) = ids.iter().find(|&&id| id >= graph.edge_count()) {
            return Err(Error::structural(format!("edge id {bad} out of range")));
        }
        Ok(EdgeSubset { graph, ids })
    }

    pub fn empty(graph: &'g ColoredGraph) -> Self {
        EdgeSubset { graph, ids: Vec::new() }
    }

    pub fn graph(&self) -> &'g ColoredGraph {
        self.graph
    }

    /// Sorted edge ids.
    pub fn ids(&self) -> &[usize] {
        &self.ids
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn contains(&self, id: usize) -> bool {
        self.ids.binary_search(&id).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, &'g ColoredEdge)> + '_ {
        let g = self.graph;
        self.ids.iter().map(move |&id| (id, g.edge(id)))
    }

    /// Sorted endpoints of the selected edges.
    pub fn spanned_vertices(&self) -> Vec<usize> {
        let mut vs: Vec<usize> = self.edges().flat_map(|(_, e)| [e.tail, e.head]).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// Connected components of the edge-induced subgraph. The empty subset
    /// has no vertices and no components.
    pub fn components(&self) -> Components {
        let mut uf = UnionFind::new(self.graph.vertex_count());
        for (_, e) in self.edges() {
            uf.union(e.tail, e.head);
        }
        Components::from_union_find(&mut uf, self.spanned_vertices())
    }

    pub fn with(&self, id: usize) -> Result<Self> {
        EdgeSubset::new(self.graph, self.ids.iter().copied().chain(core::iter::once(id)))
    }

    pub fn without(&self, id: usize) -> Self {
        EdgeSubset {
            graph: self.graph,
            ids: self.ids.iter().copied().filter(|&e| e != id).collect(),
        }
    }
}

/// Orientation in which a walk traverses an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    pub fn flipped(self) -> Self {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Step {
    pub edge: usize,
    pub dir: Direction,
}

impl Step {
    pub fn forward(edge: usize) -> Self {
        Step { edge, dir: Direction::Forward }
    }

    pub fn backward(edge: usize) -> Self {
        Step { edge, dir: Direction::Backward }
    }

    /// `(from, to)` of this step in `graph`.
    pub fn endpoints(&self, graph: &ColoredGraph) -> (usize, usize) {
        let e = graph.edge(self.edge);
        match self.dir {
            Direction::Forward => (e.tail, e.head),
            Direction::Backward => (e.head, e.tail),
        }
    }

    /// Signed color contribution of this step.
    pub fn signed_color(&self, graph: &ColoredGraph) -> ColorVector {
        let c = graph.edge(self.edge).color;
        match self.dir {
            Direction::Forward => c,
            Direction::Backward => -c,
        }
    }
}

/// A closed walk given as a sequence of oriented edge traversals.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ClosedWalk {
    pub steps: Vec<Step>,
}

impl ClosedWalk {
    pub fn new(steps: Vec<Step>) -> Self {
        ClosedWalk { steps }
    }

    /// The same cycle traversed the other way round.
    pub fn reversed(&self) -> Self {
        ClosedWalk {
            steps: self
                .steps
                .iter()
                .rev()
                .map(|s| Step { edge: s.edge, dir: s.dir.flipped() })
                .collect(),
        }
    }

    /// Checks that consecutive steps share endpoints and the walk returns to
    /// its start.
    pub fn validate(&self, graph: &ColoredGraph) -> Result<()> {
        let Some(first) = self.steps.first() else {
            return Ok(());
        };
        if let Some(bad) = self.steps.iter().find(|s| s.edge >= graph.edge_count()) {
            return Err(Error::structural(format!("walk uses unknown edge {}", bad.edge)));
        }
        let start = first.endpoints(graph).0;
        let mut at = start;
        for (k, s) in self.steps.iter().enumerate() {
            let (from, to) = s.endpoints(graph);
            if from != at {
                return Err(Error::structural(format!(
                    "walk step {k} leaves from {from} but the walk is at {at}"
                )));
            }
            at = to;
        }
        if at != start {
            return Err(Error::structural(format!("walk ends at {at}, not at its start {start}")));
        }
        Ok(())
    }
}

/// `rho(C)`: forward colors minus backward colors along a closed walk.
pub fn rho_of_walk(graph: &ColoredGraph, walk: &ClosedWalk) -> Result<ColorVector> {
    walk.validate(graph)?;
    Ok(walk
        .steps
        .iter()
        .fold(ColorVector::ZERO, |acc, s| acc + s.signed_color(graph)))
}

//! Finite windows of the development (the periodic graph `V x Z^2`).

use alloc::format;
use alloc::vec::Vec;

use crate::forest::{SpanningForest, UnionFind};
use crate::graph::{ColorVector, ColoredGraph};
use crate::lattice::Sublattice;
use crate::{Error, Result};

/// An inclusive rectangle of translates `[x0, x1] x [y0, y1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub x0: i64,
    pub x1: i64,
    pub y0: i64,
    pub y1: i64,
}

impl Window {
    pub fn new(x0: i64, x1: i64, y0: i64, y1: i64) -> Self {
        Window { x0, x1, y0, y1 }
    }

    /// `[-r, r]^2`.
    pub fn square(r: i64) -> Self {
        Window::new(-r, r, -r, r)
    }

    pub fn is_empty(&self) -> bool {
        self.x0 > self.x1 || self.y0 > self.y1
    }

    pub fn width(&self) -> usize {
        (self.x1 - self.x0 + 1).max(0) as usize
    }

    pub fn height(&self) -> usize {
        (self.y1 - self.y0 + 1).max(0) as usize
    }

    pub fn contains(&self, g: ColorVector) -> bool {
        (self.x0..=self.x1).contains(&g.g1) && (self.y0..=self.y1).contains(&g.g2)
    }

    /// The window with a margin of `m` cells removed on every side.
    pub fn shrunk(&self, m: i64) -> Window {
        Window::new(self.x0 + m, self.x1 - m, self.y0 + m, self.y1 - m)
    }

    fn cell_index(&self, g: ColorVector) -> usize {
        (g.g1 - self.x0) as usize * self.height() + (g.g2 - self.y0) as usize
    }

    fn cells(&self) -> impl Iterator<Item = ColorVector> + '_ {
        (self.x0..=self.x1).flat_map(move |x| (self.y0..=self.y1).map(move |y| ColorVector::new(x, y)))
    }
}

/// Predicted component structure of the development of one connected
/// component of the quotient graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComponentPrediction {
    /// `Z^2`-rank 2: as many infinite components as the index of the image.
    Infinite(u64),
    /// `Z^2`-rank 1.
    InfinitelyManyInfinite,
    /// `Z^2`-rank 0.
    InfinitelyManyFinite,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentClass {
    pub vertices: Vec<usize>,
    pub rank: u8,
    /// Index of the subgroup generated by the cycle images; `None` when infinite.
    pub index: Option<u64>,
    pub prediction: ComponentPrediction,
}

/// A window of the development together with the predicted and the observed
/// component structure.
#[derive(Clone, Debug)]
pub struct Development {
    pub window: Window,
    /// `(quotient vertex, translate)`.
    pub vertices: Vec<(usize, ColorVector)>,
    /// `(quotient edge, translate of the tail, tail index, head index)`.
    pub edges: Vec<(usize, ColorVector, usize, usize)>,
    /// Component label (dense, in order of first appearance) of every window vertex.
    pub component: Vec<usize>,
    /// `Z^2`-rank of the whole quotient graph.
    pub rank: u8,
    /// Index of `Gamma(G)` in `Z^2` for the whole quotient graph.
    pub index: Option<u64>,
    /// One entry per connected component of the quotient (isolated vertices included).
    pub classes: Vec<ComponentClass>,
    /// [`Development::core_components`] with a 1-cell margin.
    pub observed_core_components: usize,
}

impl Development {
    /// Distinct components among window vertices whose translate lies in the
    /// window shrunk by `margin` cells. Components are those of the window
    /// graph, so the margin has to absorb paths that leave the window.
    pub fn core_components(&self, margin: i64) -> usize {
        let core = self.window.shrunk(margin);
        let mut labels: Vec<usize> = self
            .vertices
            .iter()
            .zip(&self.component)
            .filter(|((_, g), _)| core.contains(*g))
            .map(|(_, &l)| l)
            .collect();
        labels.sort_unstable();
        labels.dedup();
        labels.len()
    }

    /// Total number of components the development has, when finite.
    pub fn predicted_components(&self) -> Option<u64> {
        self.classes
            .iter()
            .map(|c| match c.prediction {
                ComponentPrediction::Infinite(l) => Some(l),
                _ => None,
            })
            .sum()
    }
}

pub fn develop_window(graph: &ColoredGraph, window: Window) -> Result<Development> {
    if window.is_empty() {
        return Err(Error::structural(format!("empty development window {window:?}")));
    }
    let cells = window.width() * window.height();
    let n = graph.vertex_count();
    let vid = |i: usize, g: ColorVector| i * cells + window.cell_index(g);

    let mut vertices = Vec::with_capacity(n * cells);
    for i in 0..n {
        for g in window.cells() {
            vertices.push((i, g));
        }
    }
    let mut uf = UnionFind::new(vertices.len());
    let mut edges = Vec::new();
    for (id, e) in graph.edges().iter().enumerate() {
        for g in window.cells() {
            let to = g + e.color;
            if window.contains(to) {
                let (a, b) = (vid(e.tail, g), vid(e.head, to));
                uf.union(a, b);
                edges.push((id, g, a, b));
            }
        }
    }
    let mut by_root = alloc::collections::BTreeMap::new();
    let component: Vec<usize> = (0..vertices.len())
        .map(|v| {
            let next = by_root.len();
            *by_root.entry(uf.find(v)).or_insert(next)
        })
        .collect();

    let forest = SpanningForest::of_graph(graph);
    let images = forest.fundamental_images(graph);
    let whole = Sublattice::generated_by(images.iter().copied());

    let parts = graph.vertex_components().parts;
    let classes = parts
        .into_iter()
        .map(|vs| {
            let gens = forest
                .non_tree_edges
                .iter()
                .zip(&images)
                .filter(|(&e, _)| vs.binary_search(&graph.edge(e).tail).is_ok())
                .map(|(_, &img)| img);
            let lat = Sublattice::generated_by(gens);
            let prediction = match (lat.rank(), lat.index()) {
                (2, Some(l)) => ComponentPrediction::Infinite(l),
                (1, _) => ComponentPrediction::InfinitelyManyInfinite,
                _ => ComponentPrediction::InfinitelyManyFinite,
            };
            ComponentClass { vertices: vs, rank: lat.rank(), index: lat.index(), prediction }
        })
        .collect();

    let mut dev = Development {
        window,
        vertices,
        edges,
        component,
        rank: whole.rank(),
        index: whole.index(),
        classes,
        observed_core_components: 0,
    };
    dev.observed_core_components = dev.core_components(1);
    Ok(dev)
}

//! Seeded random colored graphs for experiments and tests.

use alloc::vec::Vec;

use rand::Rng;

use crate::forest::{ImageRank, SpanningForest};
use crate::graph::{ColorVector, ColoredGraph};
use crate::sparsity::{find_laman_circuit, is_11k, LamanGrowth};

/// Uniform color with both coordinates in `[-r, r]`.
pub fn random_color<R: Rng + ?Sized>(rng: &mut R, r: i64) -> ColorVector {
    ColorVector::new(rng.gen_range(-r..=r), rng.gen_range(-r..=r))
}

/// `m` edges with uniform endpoints (loops allowed) and colors in `[-r, r]^2`.
pub fn random_colored_graph<R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize, r: i64) -> ColoredGraph {
    let mut g = ColoredGraph::new(n);
    for _ in 0..m {
        let (t, h) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let c = random_color(rng, r);
        g.add_edge(t, h, c).expect("endpoints in range");
    }
    g
}

/// As [`random_colored_graph`] with colors `(c, 0)`, `c` in `[-r, r]`.
pub fn random_z_colored_graph<R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize, r: i64) -> ColoredGraph {
    let mut g = ColoredGraph::new(n);
    for _ in 0..m {
        let (t, h) = (rng.gen_range(0..n), rng.gen_range(0..n));
        g.add_edge(t, h, ColorVector::new(rng.gen_range(-r..=r), 0)).expect("endpoints in range");
    }
    g
}

/// A colored-Laman graph on `n` vertices grown from random candidate edges.
/// Colors come from `[-r, r]^2` with `r >= 1`.
pub fn random_colored_laman<R: Rng + ?Sized>(rng: &mut R, n: usize, r: i64) -> ColoredGraph {
    assert!(n > 0 && r >= 1);
    loop {
        let mut grow = LamanGrowth::new(n);
        let mut misses = 0;
        while grow.graph().edge_count() < 2 * n + 1 && misses < 64 * (n + 4) {
            let (t, h) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if !grow.try_add(t, h, random_color(rng, r)) {
                misses += 1;
            }
        }
        if grow.graph().edge_count() == 2 * n + 1 {
            let g = grow.into_graph();
            return shuffled(rng, &g);
        }
    }
}

/// The same graph with edges in random order and random orientations
/// (colors negated accordingly).
pub fn shuffled<R: Rng + ?Sized>(rng: &mut R, g: &ColoredGraph) -> ColoredGraph {
    let mut edges: Vec<_> = g.edges().to_vec();
    for i in (1..edges.len()).rev() {
        edges.swap(i, rng.gen_range(0..=i));
    }
    let mut out = ColoredGraph::new(g.vertex_count());
    for e in edges {
        if rng.gen_bool(0.5) {
            out.add_edge(e.head, e.tail, -e.color).expect("endpoints in range");
        } else {
            out.add_edge(e.tail, e.head, e.color).expect("endpoints in range");
        }
    }
    out
}

/// A colored-Laman circuit as a graph of its own: random graphs on up to
/// `n_max` vertices are drawn until one is dependent, and its circuit's
/// edge-induced subgraph is returned.
pub fn random_laman_circuit<R: Rng + ?Sized>(rng: &mut R, n_max: usize, r: i64) -> ColoredGraph {
    loop {
        let n = rng.gen_range(1..=n_max);
        let m = rng.gen_range(1..=2 * n + 2);
        let g = random_colored_graph(rng, n, m, r);
        if let Ok(c) = find_laman_circuit(&g) {
            return g.induced(&c.edges).0;
        }
    }
}

/// A spanning `(1,1,k)`-graph: a random spanning tree plus `k` edges whose
/// fundamental images are independent.
pub fn random_11k<R: Rng + ?Sized>(rng: &mut R, n: usize, k: u8, r: i64) -> ColoredGraph {
    assert!(n > 0 && k <= 2 && r >= 1);
    loop {
        let mut g = ColoredGraph::new(n);
        for v in 1..n {
            let u = rng.gen_range(0..v);
            let c = random_color(rng, r);
            if rng.gen_bool(0.5) {
                g.add_edge(u, v, c).expect("endpoints in range");
            } else {
                g.add_edge(v, u, c).expect("endpoints in range");
            }
        }
        let forest = SpanningForest::of_graph(&g);
        let mut images = ImageRank::new();
        let mut tries = 0;
        while images.rank() < k && tries < 100 {
            tries += 1;
            let (t, h) = (rng.gen_range(0..n), rng.gen_range(0..n));
            let c = random_color(rng, r);
            let img = forest.potential[t] + c - forest.potential[h];
            if images.push(img) {
                g.add_edge(t, h, c).expect("endpoints in range");
            }
        }
        if is_11k(&g.all_edges()) == Some(k) {
            return shuffled(rng, &g);
        }
    }
}

//! Colored direction networks: the linear system `P(G, gamma, d)`, collapsed
//! edges, collapsed realizations and faithful realizations.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::forest::{ImageRank, SpanningForest};
use crate::graph::{ColorVector, ColoredGraph};
use crate::linear_rep::{build_natural_matrix, GenericAssignment, MatrixKind, NaturalMatrix, DEFAULT_TOLERANCE};
use crate::matrix::Matrix;
use crate::sparsity::is_colored_laman;
use crate::{Error, Result};

/// Edges whose displacement is at most this fraction of the realization's
/// scale count as collapsed.
pub const COLLAPSE_TOLERANCE: f64 = 1e-6;
/// Default number of direction samples tried by [`faithful_realization`].
pub const DEFAULT_RETRY_CAP: u32 = 16;

fn hypot(v: [f64; 2]) -> f64 {
    libm::hypot(v[0], v[1])
}

fn dot(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

/// A unit direction per edge.
#[derive(Clone, Debug, PartialEq)]
pub struct DirectionAssignment {
    pub d: Vec<[f64; 2]>,
}

impl DirectionAssignment {
    /// Normalizes the given vectors; a zero vector is a domain error.
    pub fn new(d: Vec<[f64; 2]>) -> Result<Self> {
        let d = d
            .into_iter()
            .enumerate()
            .map(|(k, v)| {
                let r = hypot(v);
                if !(r > 0.0) || !r.is_finite() {
                    return Err(Error::domain(alloc::format!("direction of edge {k} is zero or not finite")));
                }
                Ok([v[0] / r, v[1] / r])
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DirectionAssignment { d })
    }

    pub fn from_angles(angles: &[f64]) -> Self {
        DirectionAssignment { d: angles.iter().map(|&t| [libm::cos(t), libm::sin(t)]).collect() }
    }

    /// Independent uniform angles in `[0, 2 pi)`.
    pub fn random<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Self {
        let angles: Vec<f64> = (0..m).map(|_| rng.gen_range(0.0..core::f64::consts::TAU)).collect();
        Self::from_angles(&angles)
    }

    pub fn len(&self) -> usize {
        self.d.len()
    }

    pub fn is_empty(&self) -> bool {
        self.d.is_empty()
    }

    /// `d^perp = (-d_y, d_x)`.
    pub fn perp(&self, e: usize) -> [f64; 2] {
        [-self.d[e][1], self.d[e][0]]
    }
}

/// Points `p` and the lattice matrix `L` (row-major; its columns `L1`, `L2`
/// represent the period lattice).
#[derive(Clone, Debug, PartialEq)]
pub struct Realization {
    pub p: Vec<[f64; 2]>,
    pub l: [[f64; 2]; 2],
}

impl Realization {
    pub fn zero(n: usize) -> Self {
        Realization { p: vec![[0.0; 2]; n], l: [[0.0; 2]; 2] }
    }

    /// From the unknown vector `(x_1, y_1, .., x_n, y_n, L1x, L1y, L2x, L2y)`.
    pub fn from_flat(n: usize, v: &[f64]) -> Self {
        debug_assert_eq!(v.len(), 2 * n + 4);
        let p = (0..n).map(|i| [v[2 * i], v[2 * i + 1]]).collect();
        let o = 2 * n;
        Realization { p, l: [[v[o], v[o + 2]], [v[o + 1], v[o + 3]]] }
    }

    pub fn to_flat(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self.p.iter().flat_map(|q| *q).collect();
        v.extend([self.l[0][0], self.l[1][0], self.l[0][1], self.l[1][1]]);
        v
    }

    pub fn n(&self) -> usize {
        self.p.len()
    }

    /// `L gamma`.
    pub fn lattice_image(&self, g: ColorVector) -> [f64; 2] {
        let (a, b) = (g.g1 as f64, g.g2 as f64);
        [self.l[0][0] * a + self.l[0][1] * b, self.l[1][0] * a + self.l[1][1] * b]
    }

    /// `eta_ij = p_j + L gamma_ij - p_i`.
    pub fn displacement(&self, graph: &ColoredGraph, edge: usize) -> [f64; 2] {
        let e = graph.edge(edge);
        let lg = self.lattice_image(e.color);
        [self.p[e.head][0] + lg[0] - self.p[e.tail][0], self.p[e.head][1] + lg[1] - self.p[e.tail][1]]
    }

    /// Reference length for relative thresholds: the largest of the point
    /// spread around `p_0`, the Frobenius norm of `L` and the largest point norm.
    pub fn scale(&self) -> f64 {
        let p0 = self.p.first().copied().unwrap_or([0.0; 2]);
        let spread = self.p.iter().map(|q| hypot([q[0] - p0[0], q[1] - p0[1]])).fold(0.0, f64::max);
        let lnorm = libm::sqrt(self.l.iter().flatten().map(|x| x * x).sum());
        let reach = self.p.iter().map(|&q| hypot(q)).fold(0.0, f64::max);
        spread.max(lnorm).max(reach)
    }

    pub fn translated(&self, t: [f64; 2]) -> Self {
        Realization { p: self.p.iter().map(|q| [q[0] + t[0], q[1] + t[1]]).collect(), l: self.l }
    }

    pub fn scaled(&self, s: f64) -> Self {
        Realization {
            p: self.p.iter().map(|q| [q[0] * s, q[1] * s]).collect(),
            l: [[self.l[0][0] * s, self.l[0][1] * s], [self.l[1][0] * s, self.l[1][1] * s]],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EdgeStatus {
    pub eta: [f64; 2],
    /// `<eta, d>`: the signed length along the prescribed direction.
    pub alpha: f64,
    /// `<eta, d^perp>`: zero when the edge equation holds.
    pub residual: f64,
    pub collapsed: bool,
}

/// The `M222` pattern with `(a, b) = d^perp` on every edge.
pub fn build_p_system(graph: &ColoredGraph, directions: &DirectionAssignment) -> Result<NaturalMatrix<f64>> {
    if directions.len() < graph.edge_count() {
        return Err(Error::structural(alloc::format!(
            "{} directions for {} edges",
            directions.len(),
            graph.edge_count()
        )));
    }
    for (k, d) in directions.d.iter().enumerate() {
        if !(hypot(*d) > 0.0) {
            return Err(Error::domain(alloc::format!("direction of edge {k} is zero")));
        }
    }
    let a = (0..graph.edge_count()).map(|e| directions.perp(e)[0]).collect();
    let b = (0..graph.edge_count()).map(|e| directions.perp(e)[1]).collect();
    build_natural_matrix(graph, MatrixKind::M222, &GenericAssignment::new(a, b))
}

#[derive(Clone, Debug, PartialEq)]
pub struct RealizationKernel {
    pub rank: usize,
    pub basis: Vec<Realization>,
}

impl RealizationKernel {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

pub fn realization_kernel(
    graph: &ColoredGraph,
    directions: &DirectionAssignment,
    tolerance: f64,
) -> Result<RealizationKernel> {
    let sys = build_p_system(graph, directions)?;
    kernel_of(&sys.matrix, graph.vertex_count(), tolerance)
}

fn kernel_of(m: &Matrix<f64>, n: usize, tolerance: f64) -> Result<RealizationKernel> {
    let k = m.kernel(tolerance)?;
    Ok(RealizationKernel { rank: k.rank, basis: k.basis.iter().map(|v| Realization::from_flat(n, v)).collect() })
}

/// Per-edge displacement, `alpha`, residual and collapse flag.
/// `tolerance` is relative to [`Realization::scale`].
pub fn edge_status(
    graph: &ColoredGraph,
    directions: &DirectionAssignment,
    realization: &Realization,
    tolerance: f64,
) -> Vec<EdgeStatus> {
    let scale = realization.scale();
    (0..graph.edge_count())
        .map(|e| {
            let eta = realization.displacement(graph, e);
            EdgeStatus {
                eta,
                alpha: dot(eta, directions.d[e]),
                residual: dot(eta, directions.perp(e)),
                collapsed: hypot(eta) <= tolerance * scale,
            }
        })
        .collect()
}

/// Lattice matrices `L` with `L rho = 0` for every cycle: a basis of that
/// space, which has dimension `4 - 2k`.
pub fn collapsed_lattice_basis(graph: &ColoredGraph) -> Vec<[[f64; 2]; 2]> {
    let forest = SpanningForest::of_graph(graph);
    let rank: ImageRank = forest.fundamental_images(graph).into_iter().collect();
    match (rank.rank(), rank.generator()) {
        (0, _) => vec![
            [[1.0, 0.0], [0.0, 0.0]],
            [[0.0, 1.0], [0.0, 0.0]],
            [[0.0, 0.0], [1.0, 0.0]],
            [[0.0, 0.0], [0.0, 1.0]],
        ],
        (1, Some(t)) => {
            let (a, b) = (t.g2 as f64, -t.g1 as f64);
            vec![[[a, b], [0.0, 0.0]], [[0.0, 0.0], [a, b]]]
        }
        _ => vec![],
    }
}

/// The canonical collapsed lattice matrix: identity for `Z^2`-rank 0,
/// `u (t^perp)^T` with `u = (1, 1)` for rank 1 with generator `t`, zero for rank 2.
pub fn canonical_collapsed_lattice(graph: &ColoredGraph) -> [[f64; 2]; 2] {
    let forest = SpanningForest::of_graph(graph);
    let rank: ImageRank = forest.fundamental_images(graph).into_iter().collect();
    match (rank.rank(), rank.generator()) {
        (0, _) => [[1.0, 0.0], [0.0, 1.0]],
        (1, Some(t)) => {
            let (a, b) = (t.g2 as f64, -t.g1 as f64);
            [[a, b], [a, b]]
        }
        _ => [[0.0; 2]; 2],
    }
}

/// `p_i = anchor - L sigma_{ri}` for the canonical `L`; one anchor per
/// connected component in the order of [`ColoredGraph::vertex_components`].
pub fn collapsed_realization(graph: &ColoredGraph, anchors: &[[f64; 2]]) -> Result<Realization> {
    collapsed_realization_with(graph, canonical_collapsed_lattice(graph), anchors)
}

/// As [`collapsed_realization`] with a given `L`, which must kill every cycle image.
pub fn collapsed_realization_with(
    graph: &ColoredGraph,
    l: [[f64; 2]; 2],
    anchors: &[[f64; 2]],
) -> Result<Realization> {
    let comps = graph.vertex_components();
    if anchors.len() != comps.count {
        return Err(Error::structural(alloc::format!(
            "{} anchors for {} components",
            anchors.len(),
            comps.count
        )));
    }
    let forest = SpanningForest::of_graph(graph);
    let mut r = Realization { p: vec![[0.0; 2]; graph.vertex_count()], l };
    for i in 0..graph.vertex_count() {
        let c = comps.part_of(i).expect("every vertex lies in a component");
        let ls = r.lattice_image(forest.potential[i]);
        r.p[i] = [anchors[c][0] - ls[0], anchors[c][1] - ls[1]];
    }
    let scale = r.scale().max(1.0);
    for e in 0..graph.edge_count() {
        if hypot(r.displacement(graph, e)) > 1e-9 * scale {
            return Err(Error::internal(alloc::format!("edge {e} is not collapsed in a collapsed realization")));
        }
    }
    Ok(r)
}

/// A spanning set of the collapsed realizations: the lattice basis with
/// anchors at the origin, and the two unit translations of each component
/// with `L = 0`. Its rank is `4 - 2k + 2c`.
pub fn collapsed_spanning_set(graph: &ColoredGraph) -> Result<Vec<Realization>> {
    let c = graph.vertex_components().count;
    let mut out = Vec::new();
    for l in collapsed_lattice_basis(graph) {
        out.push(collapsed_realization_with(graph, l, &vec![[0.0; 2]; c])?);
    }
    for k in 0..c {
        for axis in 0..2 {
            let mut anchors = vec![[0.0; 2]; c];
            anchors[k][axis] = 1.0;
            out.push(collapsed_realization_with(graph, [[0.0; 2]; 2], &anchors)?);
        }
    }
    Ok(out)
}

/// Picks the kernel element orthogonal to the translations and normalizes
/// it: `p_1` at the origin, unit norm, first nonzero coordinate positive.
/// `None` when the kernel holds no such element.
pub fn normalized_solution(kernel: &RealizationKernel, n: usize) -> Option<Realization> {
    let len = 2 * n + 4;
    let tr: Vec<Vec<f64>> = (0..2)
        .map(|axis| {
            let mut v = vec![0.0; len];
            for i in 0..n {
                v[2 * i + axis] = 1.0 / libm::sqrt(n as f64);
            }
            v
        })
        .collect();
    let residual = |v: &[f64]| {
        let mut r = v.to_vec();
        for t in &tr {
            let d: f64 = r.iter().zip(t).map(|(a, b)| a * b).sum();
            for (x, y) in r.iter_mut().zip(t) {
                *x -= d * y;
            }
        }
        r
    };
    let best = kernel
        .basis
        .iter()
        .map(|b| residual(&b.to_flat()))
        .max_by(|a, b| norm(a).total_cmp(&norm(b)))?;
    if norm(&best) < 1e-6 {
        return None;
    }
    let r = Realization::from_flat(n, &best);
    let r = match r.p.first() {
        Some(&p0) => r.translated([-p0[0], -p0[1]]),
        None => r,
    };
    let mut flat = r.to_flat();
    let s = norm(&flat);
    let lead = flat.iter().copied().find(|x| x.abs() > 1e-12 * s).unwrap_or(1.0);
    let f = if lead < 0.0 { -1.0 / s } else { 1.0 / s };
    for x in &mut flat {
        *x *= f;
    }
    Some(Realization::from_flat(n, &flat))
}

fn norm(v: &[f64]) -> f64 {
    libm::sqrt(v.iter().map(|x| x * x).sum())
}

#[derive(Clone, Debug, PartialEq)]
pub struct FaithfulRealization {
    pub realization: Realization,
    pub directions: DirectionAssignment,
    pub statuses: Vec<EdgeStatus>,
    /// Direction samples drawn, counting the accepted one.
    pub attempts: u32,
    pub seed: u64,
}

/// Both rank conditions of genericity for a colored-Laman graph: `P` has
/// rank `2n + 1`, and for every edge the system with a parallel copy under a
/// fresh direction has rank `2n + 2`.
pub fn directions_are_generic<R: Rng + ?Sized>(
    graph: &ColoredGraph,
    directions: &DirectionAssignment,
    rng: &mut R,
) -> Result<bool> {
    let n = graph.vertex_count();
    let sys = build_p_system(graph, directions)?;
    if sys.matrix.rank(DEFAULT_TOLERANCE)? != 2 * n + 1 {
        return Ok(false);
    }
    for e in 0..graph.edge_count() {
        let doubled = graph.with_doubled(e);
        let mut d = directions.d.clone();
        d.extend(DirectionAssignment::random(1, rng).d);
        let sys = build_p_system(&doubled, &DirectionAssignment { d })?;
        if sys.matrix.rank(DEFAULT_TOLERANCE)? != 2 * n + 2 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The faithful realization of a colored-Laman graph for seeded random
/// directions, normalized as in [`normalized_solution`].
pub fn faithful_realization(graph: &ColoredGraph, seed: u64, retry_cap: u32) -> Result<FaithfulRealization> {
    if !is_colored_laman(graph) {
        return Err(Error::domain("faithful realizations need a colored-Laman graph"));
    }
    let n = graph.vertex_count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=retry_cap {
        let directions = DirectionAssignment::random(graph.edge_count(), &mut rng);
        if !directions_are_generic(graph, &directions, &mut rng)? {
            continue;
        }
        let kernel = realization_kernel(graph, &directions, DEFAULT_TOLERANCE)?;
        if kernel.dim() != 3 {
            continue;
        }
        let Some(realization) = normalized_solution(&kernel, n) else {
            continue;
        };
        let statuses = edge_status(graph, &directions, &realization, COLLAPSE_TOLERANCE);
        if statuses.iter().any(|s| s.collapsed) {
            continue;
        }
        let scale = realization.scale();
        if statuses.iter().any(|s| s.residual.abs() > DEFAULT_TOLERANCE * scale) {
            return Err(Error::internal("faithful realization violates its direction equations"));
        }
        return Ok(FaithfulRealization { realization, directions, statuses, attempts: attempt, seed });
    }
    Err(Error::GenericitySampling { attempts: retry_cap as usize, seed })
}

//! Sublattices of `Z^2` in Hermite normal form, and sublattice covers.

use alloc::format;
use alloc::vec::Vec;

use crate::graph::{ColorVector, ColoredGraph};
use crate::{Error, Result};

/// A subgroup of `Z^2` in lower-triangular Hermite normal form, generated by
/// the columns `(a, b)` and `(0, d)` with `a >= 0`, `d >= 0` and `0 <= b < d`
/// whenever `d > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sublattice {
    pub a: i64,
    pub b: i64,
    pub d: i64,
}

fn ext_gcd_step(u: ColorVector, v: ColorVector) -> (ColorVector, ColorVector) {
    // Euclid on the first coordinates; returns (g, w) with w.g1 == 0
    let (mut p, mut q) = (u, v);
    while q.g1 != 0 {
        let t = p.g1.div_euclid(q.g1);
        let r = p - q.scale(t);
        p = q;
        q = r;
    }
    (p, q)
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

impl Sublattice {
    /// The subgroup generated by `gens`.
    pub fn generated_by<I: IntoIterator<Item = ColorVector>>(gens: I) -> Self {
        let mut pivot = ColorVector::ZERO;
        let mut d = 0i64;
        for v in gens {
            let (p, rest) = ext_gcd_step(pivot, v);
            pivot = p;
            d = gcd(d, rest.g2);
        }
        if pivot.g1 < 0 {
            pivot = -pivot;
        }
        if pivot.g1 == 0 {
            // everything lies on the second axis
            d = gcd(d, pivot.g2);
            return Sublattice { a: 0, b: 0, d };
        }
        let b = if d > 0 { pivot.g2.rem_euclid(d) } else { pivot.g2 };
        Sublattice { a: pivot.g1, b, d }
    }

    /// Rank of the subgroup (0, 1 or 2).
    pub fn rank(&self) -> u8 {
        (self.a != 0) as u8 + (self.d != 0) as u8
    }

    /// Index in `Z^2`; `None` when infinite.
    pub fn index(&self) -> Option<u64> {
        (self.rank() == 2).then(|| (self.a * self.d) as u64)
    }

    pub fn contains(&self, v: ColorVector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Canonical coset representative of `v` modulo a full-rank sublattice:
    /// `0 <= g1 < a`, `0 <= g2 < d`.
    pub fn reduce(&self, v: ColorVector) -> ColorVector {
        debug_assert_eq!(self.rank(), 2);
        let q = v.g1.div_euclid(self.a);
        let w = v - ColorVector::new(self.a, self.b).scale(q);
        ColorVector::new(w.g1, w.g2.rem_euclid(self.d))
    }

    /// All coset representatives, ordered by `(g1, g2)`.
    pub fn coset_representatives(&self) -> Vec<ColorVector> {
        debug_assert_eq!(self.rank(), 2);
        (0..self.a)
            .flat_map(|x| (0..self.d).map(move |y| ColorVector::new(x, y)))
            .collect()
    }
}

/// A 2x2 integer matrix whose columns generate a sublattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    /// Row-major entries; the basis vectors are the columns.
    pub m: [[i64; 2]; 2],
}

impl LatticeBasis {
    pub fn new(m: [[i64; 2]; 2]) -> Self {
        LatticeBasis { m }
    }

    pub fn diag(x: i64, y: i64) -> Self {
        LatticeBasis { m: [[x, 0], [0, y]] }
    }

    pub fn column(&self, k: usize) -> ColorVector {
        ColorVector::new(self.m[0][k], self.m[1][k])
    }

    pub fn det(&self) -> i64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    /// Coordinates of a lattice vector in this basis.
    fn coordinates(&self, v: ColorVector) -> ColorVector {
        let det = self.det();
        let x = self.m[1][1] * v.g1 - self.m[0][1] * v.g2;
        let y = -self.m[1][0] * v.g1 + self.m[0][0] * v.g2;
        debug_assert!(x % det == 0 && y % det == 0);
        ColorVector::new(x / det, y / det)
    }
}

/// The `l`-sheeted cover of a colored graph associated with a sublattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    pub graph: ColoredGraph,
    /// `(original vertex, coset representative)` per cover vertex.
    pub vertex_origin: Vec<(usize, ColorVector)>,
    /// `(original edge, coset representative of its tail)` per cover edge.
    pub edge_origin: Vec<(usize, ColorVector)>,
    pub sheets: usize,
}

/// Passes to the sublattice spanned by the columns of `basis`: vertices
/// `(i, r)` for coset representatives `r` of `Z^2 / basis`, and for each edge
/// `ij` and each `r` an edge `(i, r) -> (j, r')` where
/// `r + gamma_ij = r' + lambda`, colored by the coordinates of `lambda` in `basis`.
pub fn sublattice_cover(graph: &ColoredGraph, basis: LatticeBasis) -> Result<Cover> {
    let det = basis.det();
    if det == 0 {
        return Err(Error::structural(format!("singular sublattice basis {:?}", basis.m)));
    }
    let lattice = Sublattice::generated_by([basis.column(0), basis.column(1)]);
    let reps = lattice.coset_representatives();
    let sheets = reps.len();
    debug_assert_eq!(sheets as i64, det.abs());
    let rep_index = |r: ColorVector| (r.g1 * lattice.d + r.g2) as usize;

    let n = graph.vertex_count();
    let mut cover = ColoredGraph::new(n * sheets);
    let mut vertex_origin = Vec::with_capacity(n * sheets);
    for i in 0..n {
        for &r in &reps {
            vertex_origin.push((i, r));
        }
    }
    let mut edge_origin = Vec::with_capacity(graph.edge_count() * sheets);
    for (id, e) in graph.edges().iter().enumerate() {
        for &r in &reps {
            let target = r + e.color;
            let r2 = lattice.reduce(target);
            let lambda = target - r2;
            cover.add_edge(
                e.tail * sheets + rep_index(r),
                e.head * sheets + rep_index(r2),
                basis.coordinates(lambda),
            )?;
            edge_origin.push((id, r));
        }
    }
    Ok(Cover { graph: cover, vertex_origin, edge_origin, sheets })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(a: i64, b: i64) -> ColorVector {
        ColorVector::new(a, b)
    }

    #[test]
    fn hermite_form_and_index() {
        let l = Sublattice::generated_by([v(1, 0), v(0, 2), v(1, 2)]);
        assert_eq!(l, Sublattice { a: 1, b: 0, d: 2 });
        assert_eq!(l.index(), Some(2));

        let l = Sublattice::generated_by([v(2, 1), v(1, 3)]);
        assert_eq!(l.index(), Some(5));
        assert!(l.contains(v(3, 4)));
        assert!(!l.contains(v(1, 0)));

        assert_eq!(Sublattice::generated_by([v(2, 0), v(3, 0)]).rank(), 1);
        assert_eq!(Sublattice::generated_by([v(0, 4), v(0, 6)]), Sublattice { a: 0, b: 0, d: 2 });
        assert_eq!(Sublattice::generated_by([]).rank(), 0);
        assert_eq!(Sublattice::generated_by([v(-3, 5), v(6, -10)]).index(), None);
    }

    #[test]
    fn reduction_is_canonical() {
        let l = Sublattice::generated_by([v(2, 1), v(1, 3)]);
        let reps = l.coset_representatives();
        assert_eq!(reps.len(), 5);
        for x in -6..6 {
            for y in -6..6 {
                let r = l.reduce(v(x, y));
                assert!(reps.contains(&r));
                assert!(l.contains(v(x, y) - r));
            }
        }
    }

    #[test]
    fn identity_cover_is_the_same_graph() {
        let g = ColoredGraph::from_edges(2, [(0, 1, (2, -1)), (1, 1, (0, 3))]).unwrap();
        let c = sublattice_cover(&g, LatticeBasis::diag(1, 1)).unwrap();
        assert_eq!(c.graph, g);
    }

    #[test]
    fn singular_basis_is_rejected() {
        let g = ColoredGraph::new(1);
        let err = sublattice_cover(&g, LatticeBasis::new([[1, 2], [2, 4]])).unwrap_err();
        assert!(matches!(err, Error::Structural(_)));
    }

    #[test]
    fn finite_index_example_cover_splits() {
        let g = ColoredGraph::from_edges(1, [(0, 0, (1, 0)), (0, 0, (0, 2)), (0, 0, (1, 2))]).unwrap();
        let c = sublattice_cover(&g, LatticeBasis::diag(1, 2)).unwrap();
        assert_eq!(c.graph.vertex_count(), 2);
        assert_eq!(c.graph.edge_count(), 6);
        assert_eq!(c.graph.vertex_components().count, 2);
    }
}

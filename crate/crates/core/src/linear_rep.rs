//! The natural linear representations `M_{1,1,2}`, `M_{2,2,2}` and the
//! rigidity-shaped `M_{2,3,2}`, their randomized ranks, and checks of the
//! closed-form determinants of their square minors.
//!
//! Column layout: `M112` has one column per vertex followed by `L1, L2`.
//! `M222` and `M232` have the pair `(x_i, y_i)` per vertex followed by
//! `L1x, L1y, L2x, L2y`. Row `k` always belongs to edge `k`.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::Fp;
use crate::forest::SpanningForest;
use crate::graph::{ClosedWalk, ColorVector, ColoredGraph, Direction};
use crate::matrix::{Kernel, Matrix, Scalar};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MatrixKind {
    M112,
    M222,
    M232,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Prime,
    Float,
}

/// Default number of independent trials for randomized ranks.
pub const DEFAULT_TRIALS: u32 = 3;
/// Default relative tolerance of the floating kernel.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Per-edge entries `a_ij` (and `b_ij` for the two-column layouts).
#[derive(Clone, Debug, PartialEq)]
pub struct GenericAssignment<T> {
    pub a: Vec<T>,
    pub b: Vec<T>,
    pub seed: Option<u64>,
}

impl<T: Scalar> GenericAssignment<T> {
    pub fn new(a: Vec<T>, b: Vec<T>) -> Self {
        GenericAssignment { a, b, seed: None }
    }
}

impl GenericAssignment<Fp> {
    /// Independent uniform nonzero residues for `m` edges.
    pub fn random_fp<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Self {
        let a = (0..m).map(|_| Fp::random_nonzero(rng)).collect();
        let b = (0..m).map(|_| Fp::random_nonzero(rng)).collect();
        GenericAssignment { a, b, seed: None }
    }
}

impl GenericAssignment<f64> {
    /// Independent uniform reals in `[-1, 1]` for `m` edges.
    pub fn random_f64<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Self {
        let a = (0..m).map(|_| rng.gen_range(-1.0..=1.0)).collect();
        let b = (0..m).map(|_| rng.gen_range(-1.0..=1.0)).collect();
        GenericAssignment { a, b, seed: None }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NaturalMatrix<T> {
    pub kind: MatrixKind,
    pub n: usize,
    pub matrix: Matrix<T>,
}

impl<T: Scalar> NaturalMatrix<T> {
    /// Column of coordinate `axis` of vertex `v`.
    pub fn vertex_col(&self, v: usize, axis: usize) -> usize {
        match self.kind {
            MatrixKind::M112 => v,
            _ => 2 * v + axis,
        }
    }

    /// Column of coordinate `axis` of lattice vector `L_{q+1}`.
    pub fn lattice_col(&self, q: usize, axis: usize) -> usize {
        match self.kind {
            MatrixKind::M112 => self.n + q,
            _ => 2 * self.n + 2 * q + axis,
        }
    }
}

pub fn column_count(kind: MatrixKind, n: usize) -> usize {
    match kind {
        MatrixKind::M112 => n + 2,
        _ => 2 * n + 4,
    }
}

/// Adds one edge row of the two-column pattern:
/// `(-a,-b)` at the tail, `(a,b)` at the head, `g1 (a,b)` and `g2 (a,b)` in the lattice block.
pub(crate) fn two_column_row<T: Scalar>(n: usize, tail: usize, head: usize, g: ColorVector, a: T, b: T) -> Vec<T> {
    let mut row = vec![T::zero(); 2 * n + 4];
    row[2 * tail] = row[2 * tail] - a;
    row[2 * tail + 1] = row[2 * tail + 1] - b;
    row[2 * head] = row[2 * head] + a;
    row[2 * head + 1] = row[2 * head + 1] + b;
    let (g1, g2) = (T::from_i64(g.g1), T::from_i64(g.g2));
    row[2 * n] = g1 * a;
    row[2 * n + 1] = g1 * b;
    row[2 * n + 2] = g2 * a;
    row[2 * n + 3] = g2 * b;
    row
}

fn one_column_row<T: Scalar>(n: usize, tail: usize, head: usize, g: ColorVector, a: T) -> Vec<T> {
    let mut row = vec![T::zero(); n + 2];
    row[tail] = row[tail] - a;
    row[head] = row[head] + a;
    row[n] = T::from_i64(g.g1) * a;
    row[n + 1] = T::from_i64(g.g2) * a;
    row
}

/// Fills the natural matrix of `kind`. For `M232` the assignment holds the
/// edge displacements `eta_ij` as `(a, b)`.
pub fn build_natural_matrix<T: Scalar>(
    graph: &ColoredGraph,
    kind: MatrixKind,
    assignment: &GenericAssignment<T>,
) -> Result<NaturalMatrix<T>> {
    let (n, m) = (graph.vertex_count(), graph.edge_count());
    let needs_b = kind != MatrixKind::M112;
    if assignment.a.len() < m || (needs_b && assignment.b.len() < m) {
        return Err(Error::structural(alloc::format!(
            "assignment covers {} of {} edges",
            if needs_b { assignment.a.len().min(assignment.b.len()) } else { assignment.a.len() },
            m
        )));
    }
    let rows: Vec<Vec<T>> = graph
        .edges()
        .iter()
        .enumerate()
        .map(|(k, e)| match kind {
            MatrixKind::M112 => one_column_row(n, e.tail, e.head, e.color, assignment.a[k]),
            _ => two_column_row(n, e.tail, e.head, e.color, assignment.a[k], assignment.b[k]),
        })
        .collect();
    Ok(NaturalMatrix { kind, n, matrix: Matrix::from_rows(column_count(kind, n), &rows) })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankReport {
    pub kind: MatrixKind,
    pub rank: usize,
    pub mode: Mode,
    pub trials: u32,
    pub seed: u64,
}

/// Largest magnitude of the integer samples used for generic points.
pub const SAMPLE_BOUND: i64 = 1 << 20;

/// A point `(p, L)` with integer coordinates in `[-2^20, 2^20]`, as residues.
pub(crate) fn random_point_fp<R: Rng + ?Sized>(n: usize, rng: &mut R) -> (Vec<[Fp; 2]>, [[Fp; 2]; 2]) {
    let mut s = || Fp::from_i64(rng.gen_range(-SAMPLE_BOUND..=SAMPLE_BOUND));
    let p = (0..n).map(|_| [s(), s()]).collect();
    let l = [[s(), s()], [s(), s()]];
    (p, l)
}

/// `eta_ij = p_j + L gamma_ij - p_i` over any scalar type; `l` is row-major.
pub(crate) fn displacement<T: Scalar>(p: &[[T; 2]], l: &[[T; 2]; 2], tail: usize, head: usize, g: ColorVector) -> [T; 2] {
    let (g1, g2) = (T::from_i64(g.g1), T::from_i64(g.g2));
    [
        p[head][0] + l[0][0] * g1 + l[0][1] * g2 - p[tail][0],
        p[head][1] + l[1][0] * g1 + l[1][1] * g2 - p[tail][1],
    ]
}

/// The `M232` matrix over `F_p` at the point `(p, L)`.
pub fn m232_fp(graph: &ColoredGraph, p: &[[Fp; 2]], l: &[[Fp; 2]; 2]) -> NaturalMatrix<Fp> {
    let n = graph.vertex_count();
    let rows: Vec<Vec<Fp>> = graph
        .edges()
        .iter()
        .map(|e| {
            let eta = displacement(p, l, e.tail, e.head, e.color);
            two_column_row(n, e.tail, e.head, e.color, eta[0], eta[1])
        })
        .collect();
    NaturalMatrix { kind: MatrixKind::M232, n, matrix: Matrix::from_rows(2 * n + 4, &rows) }
}

/// Maximum rank over `trials` random prime-field instances of the matrix.
pub fn rank_mod_p(graph: &ColoredGraph, kind: MatrixKind, trials: u32, seed: u64) -> Result<RankReport> {
    if trials == 0 {
        return Err(Error::domain("at least one trial is required"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = graph.edge_count();
    let mut best = 0;
    for _ in 0..trials {
        let r = match kind {
            MatrixKind::M232 => {
                let (p, l) = random_point_fp(graph.vertex_count(), &mut rng);
                m232_fp(graph, &p, &l).matrix.rank()
            }
            _ => {
                let asg = GenericAssignment::random_fp(m, &mut rng);
                build_natural_matrix(graph, kind, &asg)?.matrix.rank()
            }
        };
        best = best.max(r);
        if best == m.min(column_count(kind, graph.vertex_count())) {
            break;
        }
    }
    Ok(RankReport { kind, rank: best, mode: Mode::Prime, trials, seed })
}

/// Numerical rank and orthonormal kernel of a real matrix.
pub fn kernel_float(matrix: &Matrix<f64>, tolerance: f64) -> Result<Kernel> {
    matrix.kernel(tolerance)
}

/// Sum over the walk of `+-row_e / a_e` for an `M112` matrix: the vertex
/// columns telescope away and the lattice block becomes `rho(C)`.
pub fn cycle_row<T: Scalar>(nat: &NaturalMatrix<T>, assignment: &GenericAssignment<T>, walk: &ClosedWalk) -> Vec<T> {
    let mut acc = vec![T::zero(); nat.matrix.cols()];
    for s in &walk.steps {
        let inv = T::one() / assignment.a[s.edge];
        let sign = match s.dir {
            Direction::Forward => T::one(),
            Direction::Backward => -T::one(),
        };
        for (x, &r) in acc.iter_mut().zip(nat.matrix.row(s.edge)) {
            *x = *x + sign * inv * r;
        }
    }
    acc
}

/// Which determinant formula applies, by edge count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeterminantCase {
    /// `m = n - 1`: drop both lattice columns.
    Tree,
    /// `m = n`: keep one lattice column.
    OneCycle,
    /// `m = n + 1`: keep both lattice columns.
    TwoCycles,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MinorCheck<T> {
    /// Columns of the minor.
    pub columns: Vec<usize>,
    pub determinant: T,
    pub formula: T,
    pub agrees: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DeterminantReport<T> {
    pub case: DeterminantCase,
    /// Whether the graph is connected on all its vertices; the formula is zero otherwise.
    pub connected: bool,
    pub minors: Vec<MinorCheck<T>>,
}

impl<T> DeterminantReport<T> {
    pub fn agrees(&self) -> bool {
        self.minors.iter().all(|m| m.agrees)
    }
}

/// Comparison of a computed determinant with its closed form up to sign.
pub trait DeterminantCompare: Scalar {
    fn determinant_of(minor: &Matrix<Self>) -> Self;
    fn agrees_up_to_sign(det: Self, formula: Self, minor: &Matrix<Self>) -> bool;
}

impl DeterminantCompare for Fp {
    fn determinant_of(minor: &Matrix<Fp>) -> Fp {
        minor.determinant()
    }
    fn agrees_up_to_sign(det: Fp, formula: Fp, _: &Matrix<Fp>) -> bool {
        det == formula || det == -formula
    }
}

/// Relative error below `1e-10`; a zero formula needs `|det|` below `1e-10`
/// times the Hadamard bound of the minor.
impl DeterminantCompare for f64 {
    fn determinant_of(minor: &Matrix<f64>) -> f64 {
        minor.determinant()
    }
    fn agrees_up_to_sign(det: f64, formula: f64, minor: &Matrix<f64>) -> bool {
        if formula == 0.0 {
            return det.abs() <= 1e-10 * minor.hadamard_bound().max(f64::MIN_POSITIVE);
        }
        (det.abs() - formula.abs()).abs() < 1e-10 * formula.abs()
    }
}

/// Evaluates the square minors of `M112` that have closed-form determinants
/// (vertex column 0 always dropped) and compares them with
/// `prod a_ij` times `1`, `t_q` or `det(t_1, t_2)`, where `t` are the images
/// of the fundamental cycles.
pub fn verify_determinant_formulas<T: DeterminantCompare>(
    graph: &ColoredGraph,
    assignment: &GenericAssignment<T>,
) -> Result<DeterminantReport<T>> {
    let (n, m) = (graph.vertex_count(), graph.edge_count());
    if n == 0 {
        return Err(Error::domain("graph has no vertices"));
    }
    let case = if m + 1 == n {
        DeterminantCase::Tree
    } else if m == n {
        DeterminantCase::OneCycle
    } else if m == n + 1 {
        DeterminantCase::TwoCycles
    } else {
        return Err(Error::domain(alloc::format!("no determinant formula for n = {n}, m = {m}")));
    };
    let nat = build_natural_matrix(graph, MatrixKind::M112, assignment)?;
    let forest = SpanningForest::of_graph(graph);
    let connected = forest.component_count() == 1;
    let images = forest.fundamental_images(graph);
    let prod = assignment.a[..m].iter().fold(T::one(), |acc, &a| acc * a);
    let vertex_cols: Vec<usize> = (1..n).collect();
    let rows: Vec<usize> = (0..m).collect();

    let lattice_sets: Vec<(Vec<usize>, T)> = match case {
        DeterminantCase::Tree => vec![(vec![], T::one())],
        DeterminantCase::OneCycle => (0..2)
            .map(|q| {
                let t = images.first().copied().unwrap_or(ColorVector::ZERO);
                (vec![n + q], T::from_i64(if q == 0 { t.g1 } else { t.g2 }))
            })
            .collect(),
        DeterminantCase::TwoCycles => {
            let d = match images.as_slice() {
                [t1, t2] => t1.det(*t2),
                _ => 0,
            };
            vec![(vec![n, n + 1], T::from_i64(d as i64))]
        }
    };
    let minors = lattice_sets
        .into_iter()
        .map(|(lat, factor)| {
            let mut columns = vertex_cols.clone();
            columns.extend(lat);
            let minor = nat.matrix.select(&rows, &columns);
            let determinant = T::determinant_of(&minor);
            let formula = if connected { factor * prod } else { T::zero() };
            let agrees = T::agrees_up_to_sign(determinant, formula, &minor);
            MinorCheck { columns, determinant, formula, agrees }
        })
        .collect();
    Ok(DeterminantReport { case, connected, minors })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, e: &[(usize, usize, (i64, i64))]) -> ColoredGraph {
        ColoredGraph::from_edges(n, e.iter().copied()).unwrap()
    }

    fn fp(v: &[i64]) -> Vec<Fp> {
        v.iter().map(|&x| Fp::from_i64(x)).collect()
    }

    #[test]
    fn row_patterns() {
        let lp = g(1, &[(0, 0, (1, 0))]);
        let nat = build_natural_matrix(&lp, MatrixKind::M112, &GenericAssignment::new(fp(&[7]), vec![])).unwrap();
        assert_eq!(nat.matrix.row(0), fp(&[0, 7, 0]).as_slice());

        let tree = g(2, &[(0, 1, (0, 0))]);
        let nat = build_natural_matrix(&tree, MatrixKind::M112, &GenericAssignment::new(fp(&[3]), vec![])).unwrap();
        assert_eq!(nat.matrix.row(0), fp(&[-3, 3, 0, 0]).as_slice());

        let e = g(2, &[(0, 1, (2, 3))]);
        let nat = build_natural_matrix(&e, MatrixKind::M222, &GenericAssignment::new(fp(&[5]), fp(&[11]))).unwrap();
        assert_eq!(nat.matrix.row(0), fp(&[-5, -11, 5, 11, 10, 22, 15, 33]).as_slice());
    }

    #[test]
    fn missing_entries_are_structural() {
        let e = g(2, &[(0, 1, (0, 0))]);
        let r = build_natural_matrix(&e, MatrixKind::M222, &GenericAssignment::new(fp(&[1]), vec![]));
        assert!(matches!(r, Err(Error::Structural(_))));
    }

    #[test]
    fn rank_examples() {
        let four = g(1, &[(0, 0, (1, 0)), (0, 0, (0, 1)), (0, 0, (1, 0)), (0, 0, (0, 1))]);
        assert_eq!(rank_mod_p(&four, MatrixKind::M222, 3, 1).unwrap().rank, 4);
        let collinear = g(1, &[(0, 0, (1, 0)), (0, 0, (2, 0)), (0, 0, (3, 0))]);
        assert_eq!(rank_mod_p(&collinear, MatrixKind::M112, 3, 1).unwrap().rank, 1);
        let tree = g(3, &[(0, 1, (0, 0)), (1, 2, (0, 0))]);
        assert_eq!(rank_mod_p(&tree, MatrixKind::M112, 3, 1).unwrap().rank, 2);
        assert!(rank_mod_p(&tree, MatrixKind::M112, 0, 1).is_err());
    }

    #[test]
    fn determinant_examples() {
        let path = g(3, &[(0, 1, (0, 0)), (1, 2, (0, 0))]);
        let r = verify_determinant_formulas(&path, &GenericAssignment::new(fp(&[4, 9]), vec![])).unwrap();
        assert_eq!(r.case, DeterminantCase::Tree);
        assert!(r.agrees());
        assert_eq!(r.minors[0].formula, Fp::from_i64(36));

        let lp = g(1, &[(0, 0, (5, 7))]);
        let r = verify_determinant_formulas(&lp, &GenericAssignment::new(vec![2.0], vec![])).unwrap();
        assert!(r.agrees());
        assert_eq!(r.minors[0].determinant.abs(), 10.0);

        let two = g(1, &[(0, 0, (1, 0)), (0, 0, (0, 1))]);
        let r = verify_determinant_formulas(&two, &GenericAssignment::new(fp(&[3, 5]), vec![])).unwrap();
        assert_eq!(r.case, DeterminantCase::TwoCycles);
        assert!(r.agrees());
        assert_eq!(r.minors[0].formula, Fp::from_i64(15));
    }

    #[test]
    fn size_mismatch_is_domain_error() {
        let lp = g(1, &[(0, 0, (1, 0)), (0, 0, (0, 1)), (0, 0, (1, 1))]);
        let r = verify_determinant_formulas(&lp, &GenericAssignment::new(fp(&[1, 1, 1]), vec![]));
        assert!(matches!(r, Err(Error::Domain(_))));
    }

    #[test]
    fn cycle_row_is_rho() {
        let tri = g(3, &[(0, 1, (1, 0)), (1, 2, (0, 2)), (2, 0, (3, -1))]);
        let asg = GenericAssignment::new(vec![0.3, -1.7, 2.5], vec![]);
        let nat = build_natural_matrix(&tri, MatrixKind::M112, &asg).unwrap();
        let walk = ClosedWalk::new(vec![
            crate::Step::forward(0),
            crate::Step::forward(1),
            crate::Step::forward(2),
        ]);
        let row = cycle_row(&nat, &asg, &walk);
        let expect = [0.0, 0.0, 0.0, 4.0, 1.0];
        for (a, b) in row.iter().zip(expect) {
            assert!((a - b).abs() < 1e-12);
        }
    }
}

//! The rigidity matrix `M_{2,3,2}` of a periodic framework, generic rank,
//! rigidity verdicts with certificates, and the one-dimensional analogue.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::direction::{faithful_realization, DirectionAssignment, Realization, DEFAULT_RETRY_CAP};
use crate::field::Fp;
use crate::forest::z2_rank;
use crate::graph::ColoredGraph;
use crate::linear_rep::{
    m232_fp, random_point_fp, two_column_row, MatrixKind, Mode, NaturalMatrix, RankReport, DEFAULT_TOLERANCE,
    DEFAULT_TRIALS, SAMPLE_BOUND,
};
use crate::matrix::Matrix;
use crate::sparsity::{find_laman_circuit, is_colored_laman, laman_rank, CircuitReport};
use crate::{Error, Result};

/// Rows `(-eta at i, +eta at j, g1 eta, g2 eta)` with `eta_ij = p_j + L gamma_ij - p_i`.
pub fn rigidity_matrix(graph: &ColoredGraph, realization: &Realization) -> NaturalMatrix<f64> {
    let n = graph.vertex_count();
    let rows: Vec<Vec<f64>> = (0..graph.edge_count())
        .map(|k| {
            let e = graph.edge(k);
            let eta = realization.displacement(graph, k);
            two_column_row(n, e.tail, e.head, e.color, eta[0], eta[1])
        })
        .collect();
    NaturalMatrix { kind: MatrixKind::M232, n, matrix: Matrix::from_rows(2 * n + 4, &rows) }
}

/// Maximum rank of the rigidity matrix over `trials` random points.
pub fn generic_rigidity_rank(graph: &ColoredGraph, trials: u32, seed: u64, mode: Mode) -> Result<RankReport> {
    if trials == 0 {
        return Err(Error::domain("at least one trial is required"));
    }
    let n = graph.vertex_count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = 0;
    for _ in 0..trials {
        let r = match mode {
            Mode::Prime => {
                let (p, l) = random_point_fp(n, &mut rng);
                m232_fp(graph, &p, &l).matrix.rank()
            }
            Mode::Float => {
                let mut s = || rng.gen_range(-1.0..=1.0);
                let p = (0..n).map(|_| [s(), s()]).collect();
                let l = [[s(), s()], [s(), s()]];
                rigidity_matrix(graph, &Realization { p, l }).matrix.rank(DEFAULT_TOLERANCE)?
            }
        };
        best = best.max(r);
    }
    Ok(RankReport { kind: MatrixKind::M232, rank: best, mode, trials, seed })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RigidityStatus {
    MinimallyRigid,
    RigidOverconstrained,
    Flexible,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RigidityVerdict {
    pub status: RigidityStatus,
    /// Generic rank of the rigidity matrix.
    pub rank: usize,
    /// Size of a maximal colored-Laman-sparse subset.
    pub sparse_rank: usize,
    /// `2n + 1 - rank`: non-trivial infinitesimal motions.
    pub dof: usize,
    pub witness: Option<Certificate>,
    pub circuit: Option<CircuitReport>,
}

/// Decides generic rigidity combinatorially (maximal colored-Laman-sparse
/// subset) and by the generic rank, which must agree. Minimally rigid
/// graphs come with a realization certificate, dependent ones with a circuit.
pub fn decide_rigidity(graph: &ColoredGraph, seed: u64) -> Result<RigidityVerdict> {
    let n = graph.vertex_count();
    let full = 2 * n + 1;
    let sparse_rank = laman_rank(graph);
    let rank = generic_rigidity_rank(graph, DEFAULT_TRIALS, seed, Mode::Prime)?.rank;
    if rank != sparse_rank {
        return Err(Error::internal(alloc::format!(
            "generic rank {rank} disagrees with the colored-Laman rank {sparse_rank}"
        )));
    }
    let m = graph.edge_count();
    let circuit = if sparse_rank < m { Some(find_laman_circuit(graph)?) } else { None };
    let status = match (rank == full, m == full) {
        (true, true) => RigidityStatus::MinimallyRigid,
        (true, false) => RigidityStatus::RigidOverconstrained,
        _ => RigidityStatus::Flexible,
    };
    let witness = match status {
        RigidityStatus::MinimallyRigid => Some(rigid_realization_certificate(graph, seed)?),
        _ => None,
    };
    Ok(RigidityVerdict { status, rank, sparse_rank, dof: full.saturating_sub(rank), witness, circuit })
}

/// A faithful realization whose rigidity matrix has full rank `2n + 1`,
/// together with the checks made on it.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub realization: Realization,
    pub directions: DirectionAssignment,
    /// Floating rank of the rigidity matrix at the realization.
    pub rank: usize,
    /// Rank over `F_p` after rounding the realization to a grid of `2^-30`.
    pub rank_mod_p: usize,
    /// Rank after deleting each row in turn.
    pub deletion_ranks: Vec<usize>,
}

/// Rounds coordinates to multiples of `2^-30` and reads the numerators as residues.
pub fn rationalized(r: &Realization) -> (Vec<[Fp; 2]>, [[Fp; 2]; 2]) {
    let q = |x: f64| Fp::from_i64(libm::round(x * (1u64 << 30) as f64) as i64);
    (r.p.iter().map(|v| [q(v[0]), q(v[1])]).collect(), [[q(r.l[0][0]), q(r.l[0][1])], [q(r.l[1][0]), q(r.l[1][1])]])
}

pub fn rigid_realization_certificate(graph: &ColoredGraph, seed: u64) -> Result<Certificate> {
    if !is_colored_laman(graph) {
        return Err(Error::domain("certificates need a colored-Laman graph"));
    }
    let n = graph.vertex_count();
    let f = faithful_realization(graph, seed, DEFAULT_RETRY_CAP)?;
    let rm = rigidity_matrix(graph, &f.realization).matrix;
    let rank = rm.rank(DEFAULT_TOLERANCE)?;
    let (p, l) = rationalized(&f.realization);
    let rank_mod_p = m232_fp(graph, &p, &l).matrix.rank();
    let deletion_ranks = (0..rm.rows())
        .map(|k| rm.without_row(k).rank(DEFAULT_TOLERANCE))
        .collect::<Result<Vec<_>>>()?;
    if rank != 2 * n + 1 || rank_mod_p != 2 * n + 1 || deletion_ranks.iter().any(|&r| r != 2 * n) {
        return Err(Error::internal("faithful realization is not an infinitesimally rigid witness"));
    }
    Ok(Certificate { realization: f.realization, directions: f.directions, rank, rank_mod_p, deletion_ranks })
}

/// Velocities `(p', L')` of the two translations and the rotation
/// `p' = J p`, `L' = J L` with `J` the quarter turn.
pub fn trivial_motions(r: &Realization) -> [Vec<f64>; 3] {
    let n = r.n();
    let tx = Realization { p: vec![[1.0, 0.0]; n], l: [[0.0; 2]; 2] }.to_flat();
    let ty = Realization { p: vec![[0.0, 1.0]; n], l: [[0.0; 2]; 2] }.to_flat();
    let j = |v: [f64; 2]| [-v[1], v[0]];
    let rot = Realization {
        p: r.p.iter().map(|&q| j(q)).collect(),
        l: [[-r.l[1][0], -r.l[1][1]], [r.l[0][0], r.l[0][1]]],
    }
    .to_flat();
    [tx, ty, rot]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OneDimVerdict {
    pub rigid: bool,
    pub minimally_rigid: bool,
    /// Generic rank of the `m x (n + 1)` one-dimensional rigidity matrix.
    pub rank: usize,
}

/// The one-dimensional rigidity matrix over `F_p`: row `-eta` at `i`,
/// `+eta` at `j`, `gamma eta` in the lattice column, `eta = x_j + gamma L - x_i`.
pub fn one_dim_matrix(graph: &ColoredGraph, x: &[Fp], l: Fp) -> Matrix<Fp> {
    let n = graph.vertex_count();
    let rows: Vec<Vec<Fp>> = graph
        .edges()
        .iter()
        .map(|e| {
            let g = Fp::from_i64(e.color.g1);
            let eta = x[e.head] + g * l - x[e.tail];
            let mut row = vec![Fp::ZERO; n + 1];
            row[e.tail] -= eta;
            row[e.head] += eta;
            row[n] = g * eta;
            row
        })
        .collect();
    Matrix::from_rows(n + 1, &rows)
}

/// Generic rigidity of a `Z`-colored graph (colors `(c, 0)`), decided by a
/// spanning `(1,1,1)`-subgraph and by the generic rank `n`; both must agree.
pub fn is_1d_rigid(graph: &ColoredGraph, seed: u64) -> Result<OneDimVerdict> {
    if let Some(k) = graph.edges().iter().position(|e| e.color.g2 != 0) {
        return Err(Error::domain(alloc::format!("edge {k} has a nonzero second color coordinate")));
    }
    let n = graph.vertex_count();
    let combinatorial = graph.vertex_components().count == 1 && z2_rank(&graph.all_edges()) >= 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rank = 0;
    for _ in 0..DEFAULT_TRIALS {
        let x: Vec<Fp> = (0..n).map(|_| Fp::from_i64(rng.gen_range(-SAMPLE_BOUND..=SAMPLE_BOUND))).collect();
        let l = Fp::from_i64(rng.gen_range(-SAMPLE_BOUND..=SAMPLE_BOUND));
        rank = rank.max(one_dim_matrix(graph, &x, l).rank());
    }
    let numeric = n > 0 && rank == n;
    if numeric != combinatorial {
        return Err(Error::internal("one-dimensional rigidity routes disagree"));
    }
    Ok(OneDimVerdict { rigid: numeric, minimally_rigid: numeric && graph.edge_count() == n, rank })
}

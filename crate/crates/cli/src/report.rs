//! JSON shapes of the reports. Field order is the declaration order.

use serde::Serialize;

use periodic_rigidity::direction::{EdgeStatus, Realization};
use periodic_rigidity::sparsity::{CircuitReport, CountReport};
use periodic_rigidity::ColoredGraph;

#[derive(Serialize)]
pub struct EdgeJson {
    pub id: usize,
    pub alpha: f64,
    pub collapsed: bool,
}

#[derive(Serialize)]
pub struct RealizationJson {
    pub n: usize,
    pub p: Vec<[f64; 2]>,
    #[serde(rename = "L")]
    pub l: [[f64; 2]; 2],
    pub edges: Vec<EdgeJson>,
    pub seed: u64,
}

impl RealizationJson {
    pub fn new(r: &Realization, statuses: &[EdgeStatus], seed: u64) -> Self {
        RealizationJson {
            n: r.n(),
            p: r.p.clone(),
            l: r.l,
            edges: statuses
                .iter()
                .enumerate()
                .map(|(id, s)| EdgeJson { id, alpha: s.alpha, collapsed: s.collapsed })
                .collect(),
            seed,
        }
    }
}

#[derive(Serialize)]
pub struct CountsJson {
    pub vertices: usize,
    pub edges: usize,
    pub components: usize,
    pub rank: u8,
    pub f: i64,
}

impl From<&CountReport> for CountsJson {
    fn from(c: &CountReport) -> Self {
        CountsJson { vertices: c.vertices, edges: c.edges, components: c.components, rank: c.rank, f: c.f }
    }
}

#[derive(Serialize)]
pub struct CircuitJson {
    pub edges: Vec<usize>,
    pub counts: CountsJson,
}

impl From<&CircuitReport> for CircuitJson {
    fn from(c: &CircuitReport) -> Self {
        CircuitJson { edges: c.edges.clone(), counts: (&c.counts).into() }
    }
}

#[derive(Serialize)]
pub struct CertificateJson {
    pub realization: RealizationJson,
    pub rank: usize,
    pub rank_mod_p: usize,
    pub deletion_ranks: Vec<usize>,
}

#[derive(Serialize)]
pub struct VerdictJson {
    pub status: &'static str,
    pub n: usize,
    pub m: usize,
    pub rank: usize,
    pub sparse_rank: usize,
    pub dof: usize,
    pub witness: Option<CertificateJson>,
    pub circuit: Option<CircuitJson>,
    pub seed: u64,
}

#[derive(Serialize)]
pub struct SparsityJson {
    pub counts: CountsJson,
    pub colored_laman_sparse: bool,
    pub colored_laman: bool,
    pub sparse_222: bool,
    pub graph_222: bool,
    pub laman_rank: usize,
    pub union_rank: usize,
    pub brute_force_checked: bool,
}

#[derive(Serialize)]
pub struct DecompositionJson {
    pub graph_222: bool,
    pub k: Option<u8>,
    pub parts: Option<[Vec<usize>; 2]>,
}

#[derive(Serialize)]
pub struct ClassJson {
    pub vertices: Vec<usize>,
    pub rank: u8,
    pub index: Option<u64>,
    pub prediction: String,
}

#[derive(Serialize)]
pub struct DevelopmentJson {
    pub window: [[i64; 2]; 2],
    pub rank: u8,
    pub index: Option<u64>,
    pub predicted_components: Option<u64>,
    pub observed_core_components: usize,
    pub window_vertices: usize,
    pub window_edges: usize,
    pub classes: Vec<ClassJson>,
}

#[derive(Serialize)]
pub struct GraphJson {
    pub n: usize,
    /// `[tail, head, g1, g2]`.
    pub edges: Vec<[i64; 4]>,
}

impl From<&ColoredGraph> for GraphJson {
    fn from(g: &ColoredGraph) -> Self {
        GraphJson {
            n: g.vertex_count(),
            edges: g.edges().iter().map(|e| [e.tail as i64, e.head as i64, e.color.g1, e.color.g2]).collect(),
        }
    }
}

#[derive(Serialize)]
pub struct CoverJson {
    pub basis: [[i64; 2]; 2],
    pub sheets: usize,
    pub graph: GraphJson,
    /// `[original vertex, r1, r2]` per cover vertex.
    pub vertex_origin: Vec<[i64; 3]>,
    pub max_laman_sparse: usize,
}

#[derive(Serialize)]
pub struct RossJson {
    pub is_ross: bool,
    pub cross_checked: bool,
}

#[derive(Serialize)]
pub struct OneDimJson {
    pub rigid: bool,
    pub minimally_rigid: bool,
    pub rank: usize,
    pub n: usize,
    pub seed: u64,
}

#[derive(Serialize)]
pub struct RankJson {
    pub kind: &'static str,
    pub mode: &'static str,
    pub rank: usize,
    pub columns: usize,
}

#[derive(Serialize)]
pub struct RanksJson {
    pub n: usize,
    pub m: usize,
    pub trials: u32,
    pub seed: u64,
    pub tolerance: f64,
    pub ranks: Vec<RankJson>,
}

#[derive(Serialize)]
pub struct ErrorJson {
    pub error: String,
    pub kind: &'static str,
}

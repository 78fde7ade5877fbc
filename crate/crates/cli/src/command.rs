//! Command dispatch and the exit-code contract.
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | rigid / sparse / success |
//! | 1 | flexible / not sparse / dependent |
//! | 2 | input error (unreadable file, parse error, unmet precondition) |
//! | 3 | internal consistency failure (two decision routes disagree) |

use std::fmt::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::ValueEnum;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use periodic_rigidity::development::{develop_window, ComponentPrediction, Window};
use periodic_rigidity::direction::{edge_status, faithful_realization, COLLAPSE_TOLERANCE, DEFAULT_RETRY_CAP};
use periodic_rigidity::lattice::{sublattice_cover, LatticeBasis};
use periodic_rigidity::linear_rep::{column_count, rank_mod_p, MatrixKind, DEFAULT_TOLERANCE, DEFAULT_TRIALS};
use periodic_rigidity::rigidity::{decide_rigidity, is_1d_rigid, rigidity_matrix, RigidityStatus};
use periodic_rigidity::sparsity::{
    brute_force_sparsity, count_report, decompose_two_11k, find_laman_circuit, is_222_graph, is_222_sparse,
    is_colored_laman, is_colored_laman_sparse, is_ross, laman_rank, union_rank, Family,
};
use periodic_rigidity::{ColoredGraph, Error};

use crate::cg::{parse_colored_graph, serialize_colored_graph};
use crate::report::*;
use crate::svg::{emit_development_svg, emit_realization_svg};

pub const EXIT_OK: u8 = 0;
pub const EXIT_NEGATIVE: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_INTERNAL: u8 = 3;

/// Sparsity verdicts are cross-checked by subset enumeration up to this many edges.
pub const CROSS_CHECK_EDGES: usize = 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Verb {
    /// Generic rigidity verdict with certificate or circuit.
    Check,
    /// Counts and sparsity in the colored-Laman and (2,2,2) matroids.
    Sparsity,
    /// Split a (2,2,2)-graph into two spanning (1,1,k)-graphs.
    Decompose,
    /// A colored-Laman circuit, if the graph is dependent.
    Circuit,
    /// Faithful realization of a colored-Laman direction network.
    Realize,
    /// Window of the development and its components.
    Develop,
    /// Sublattice cover.
    Cover,
    /// Ross graph test.
    Ross,
    /// Rigidity of a Z-colored graph on the line.
    Oned,
    /// Generic ranks of the natural matrices and the rigidity matrix.
    Rank,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Svg,
}

#[derive(Clone, Debug)]
pub struct Command {
    pub verb: Verb,
    pub input: PathBuf,
    pub seed: u64,
    /// Overrides the collapse threshold (`realize`) or the float rank tolerance (`rank`).
    pub tol: Option<f64>,
    pub trials: u32,
    pub format: Format,
    pub window: Window,
    pub basis: LatticeBasis,
}

impl Command {
    pub fn new(verb: Verb, input: impl Into<PathBuf>) -> Self {
        Command {
            verb,
            input: input.into(),
            seed: 0,
            tol: None,
            trials: DEFAULT_TRIALS,
            format: Format::Text,
            window: Window::square(2),
            basis: LatticeBasis::diag(1, 2),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub bytes: Vec<u8>,
    pub code: u8,
    /// Diagnostics for stderr; not part of the output bytes.
    pub warnings: Vec<String>,
}

/// Parses `x0:x1,y0:y1`.
pub fn parse_window(s: &str) -> Result<Window, String> {
    let bad = || format!("window `{s}` is not of the form x0:x1,y0:y1");
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    let range = |r: &str| -> Result<(i64, i64), String> {
        let (lo, hi) = r.split_once(':').ok_or_else(bad)?;
        Ok((lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?))
    };
    let ((x0, x1), (y0, y1)) = (range(a)?, range(b)?);
    Ok(Window::new(x0, x1, y0, y1))
}

/// Parses a row-major `a,b,c,d`; the basis vectors are the columns.
pub fn parse_basis(s: &str) -> Result<LatticeBasis, String> {
    let v: Vec<i64> = s
        .split(',')
        .map(|t| i64::from_str(t.trim()))
        .collect::<Result<_, _>>()
        .map_err(|_| format!("basis `{s}` is not four comma-separated integers"))?;
    match v[..] {
        [a, b, c, d] => Ok(LatticeBasis::new([[a, b], [c, d]])),
        _ => Err(format!("basis `{s}` is not four comma-separated integers")),
    }
}

pub fn exit_code_of(e: &Error) -> u8 {
    match e {
        Error::Internal(_) | Error::GenericitySampling { .. } => EXIT_INTERNAL,
        Error::Structural(_) | Error::Domain(_) | Error::Budget { .. } => EXIT_INPUT,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Structural(_) => "structural",
        Error::Domain(_) => "domain",
        Error::Budget { .. } => "budget",
        Error::GenericitySampling { .. } => "genericity_sampling",
        Error::Internal(_) => "internal",
    }
}

// Rendered result of one verb. `svg` is `None` when the verb has no drawing.
struct Report {
    text: String,
    json: String,
    svg: Option<String>,
    code: u8,
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

fn failure(format: Format, message: String, kind: &'static str) -> Vec<u8> {
    match format {
        Format::Json => json(&ErrorJson { error: message, kind }).into_bytes(),
        _ => format!("error: {message}\n").into_bytes(),
    }
}

/// Reads `cmd.input` and runs the verb on it.
pub fn run_command(cmd: &Command) -> Output {
    match std::fs::read(&cmd.input) {
        Ok(bytes) => run_on_bytes(cmd, &bytes),
        Err(e) => Output {
            bytes: failure(cmd.format, format!("{}: {e}", cmd.input.display()), "io"),
            code: EXIT_INPUT,
            warnings: Vec::new(),
        },
    }
}

/// Runs the verb on `.cg` contents; the output depends only on the command
/// (apart from its path) and the bytes.
pub fn run_on_bytes(cmd: &Command, bytes: &[u8]) -> Output {
    let parsed = match parse_colored_graph(bytes) {
        Ok(p) => p,
        Err(e) => {
            return Output {
                bytes: failure(cmd.format, format!("{}: {e}", cmd.input.display()), "parse"),
                code: EXIT_INPUT,
                warnings: Vec::new(),
            }
        }
    };
    let warnings = parsed.warnings.iter().map(|w| format!("warning: {w}")).collect();
    let graph = parsed.graph;
    let result = match cmd.verb {
        Verb::Check => check(&graph, cmd),
        Verb::Sparsity => sparsity(&graph),
        Verb::Decompose => decompose(&graph),
        Verb::Circuit => circuit(&graph),
        Verb::Realize => realize(&graph, cmd),
        Verb::Develop => develop(&graph, cmd),
        Verb::Cover => cover(&graph, cmd),
        Verb::Ross => ross(&graph),
        Verb::Oned => oned(&graph, cmd),
        Verb::Rank => rank(&graph, cmd),
    };
    let (bytes, code) = match result {
        Ok(r) => match cmd.format {
            Format::Text => (r.text.into_bytes(), r.code),
            Format::Json => (r.json.into_bytes(), r.code),
            Format::Svg => match r.svg {
                Some(s) => (s.into_bytes(), r.code),
                None => {
                    let msg = format!("no SVG rendering for `{}`", verb_name(cmd.verb));
                    (failure(cmd.format, msg, "usage"), EXIT_INPUT)
                }
            },
        },
        Err(e) => {
            let code = exit_code_of(&e);
            (failure(cmd.format, e.to_string(), error_kind(&e)), code)
        }
    };
    Output { bytes, code, warnings }
}

pub fn verb_name(v: Verb) -> String {
    v.to_possible_value().map(|p| p.get_name().to_string()).unwrap_or_default()
}

fn edge_line(graph: &ColoredGraph, e: usize) -> String {
    let x = graph.edge(e);
    format!("edge {e}: {} {} {} {}", x.tail, x.head, x.color.g1, x.color.g2)
}

fn ids(v: &[usize]) -> String {
    v.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" ")
}

fn check(graph: &ColoredGraph, cmd: &Command) -> Result<Report, Error> {
    let v = decide_rigidity(graph, cmd.seed)?;
    let (n, m) = (graph.vertex_count(), graph.edge_count());
    let (status, headline, code) = match v.status {
        RigidityStatus::MinimallyRigid => ("minimally_rigid", "generically minimally rigid", EXIT_OK),
        RigidityStatus::RigidOverconstrained => ("rigid_overconstrained", "generically rigid, overconstrained", EXIT_OK),
        RigidityStatus::Flexible => ("flexible", "generically flexible", EXIT_NEGATIVE),
    };
    let mut text = format!("{headline}\n");
    let _ = writeln!(text, "n {n}, m {m}, rank {} of {}, sparse rank {}, dof {}", v.rank, 2 * n + 1, v.sparse_rank, v.dof);
    if let Some(w) = &v.witness {
        let _ = writeln!(
            text,
            "certificate: faithful realization with rank {} (mod p {}), every row deletion leaves rank {}",
            w.rank,
            w.rank_mod_p,
            2 * n
        );
    }
    if let Some(c) = &v.circuit {
        let _ = writeln!(text, "circuit: edges {}", ids(&c.edges));
    }
    let witness = v.witness.as_ref().map(|w| {
        let st = edge_status(graph, &w.directions, &w.realization, COLLAPSE_TOLERANCE);
        CertificateJson {
            realization: RealizationJson::new(&w.realization, &st, cmd.seed),
            rank: w.rank,
            rank_mod_p: w.rank_mod_p,
            deletion_ranks: w.deletion_ranks.clone(),
        }
    });
    let svg = v.witness.as_ref().map(|w| emit_realization_svg(graph, &w.realization));
    let j = VerdictJson {
        status,
        n,
        m,
        rank: v.rank,
        sparse_rank: v.sparse_rank,
        dof: v.dof,
        witness,
        circuit: v.circuit.as_ref().map(Into::into),
        seed: cmd.seed,
    };
    Ok(Report { text, json: json(&j), svg, code })
}

fn sparsity(graph: &ColoredGraph) -> Result<Report, Error> {
    let counts = count_report(&graph.all_edges());
    let laman_sparse = is_colored_laman_sparse(graph);
    let sparse_222 = is_222_sparse(graph);
    let checked = graph.edge_count() <= CROSS_CHECK_EDGES;
    if checked {
        let laman = brute_force_sparsity(graph, Family::Laman)?.sparse;
        let two = brute_force_sparsity(graph, Family::TwoTwoTwo)?.sparse;
        if laman != laman_sparse || two != sparse_222 {
            return Err(Error::Internal("sparsity disagrees with subset enumeration".into()));
        }
    }
    let j = SparsityJson {
        counts: (&counts).into(),
        colored_laman_sparse: laman_sparse,
        colored_laman: is_colored_laman(graph),
        sparse_222,
        graph_222: is_222_graph(graph),
        laman_rank: laman_rank(graph),
        union_rank: union_rank(&graph.all_edges()),
        brute_force_checked: checked,
    };
    let yes = |b: bool| if b { "yes" } else { "no" };
    let mut text = format!(
        "n {}, m {}, components {}, Z^2-rank {}, f {}\n",
        counts.vertices, counts.edges, counts.components, counts.rank, counts.f
    );
    let _ = writeln!(text, "colored-Laman sparse: {}", yes(j.colored_laman_sparse));
    let _ = writeln!(text, "colored-Laman graph: {}", yes(j.colored_laman));
    let _ = writeln!(text, "(2,2,2) sparse: {}", yes(j.sparse_222));
    let _ = writeln!(text, "(2,2,2) graph: {}", yes(j.graph_222));
    let _ = writeln!(text, "colored-Laman rank {}, (2,2,2) rank {}", j.laman_rank, j.union_rank);
    if checked {
        text.push_str("cross-checked by subset enumeration\n");
    }
    let code = if laman_sparse { EXIT_OK } else { EXIT_NEGATIVE };
    Ok(Report { text, json: json(&j), svg: None, code })
}

fn decompose(graph: &ColoredGraph) -> Result<Report, Error> {
    if !is_222_graph(graph) {
        let j = DecompositionJson { graph_222: false, k: None, parts: None };
        return Ok(Report { text: "not a (2,2,2)-graph\n".into(), json: json(&j), svg: None, code: EXIT_NEGATIVE });
    }
    let d = decompose_two_11k(graph)?;
    let mut text = format!("two spanning (1,1,{})-graphs\n", d.k);
    for (k, p) in d.parts.iter().enumerate() {
        let _ = writeln!(text, "part {k}: edges {}", ids(p));
    }
    let j = DecompositionJson { graph_222: true, k: Some(d.k), parts: Some(d.parts) };
    Ok(Report { text, json: json(&j), svg: None, code: EXIT_OK })
}

fn circuit(graph: &ColoredGraph) -> Result<Report, Error> {
    if is_colored_laman_sparse(graph) {
        return Ok(Report {
            text: "colored-Laman sparse: no circuit\n".into(),
            json: json(&Option::<CircuitJson>::None),
            svg: None,
            code: EXIT_OK,
        });
    }
    let c = find_laman_circuit(graph)?;
    let mut text = format!(
        "colored-Laman circuit with {} edges (m' = {}, f = {})\n",
        c.edges.len(),
        c.counts.edges,
        c.counts.f
    );
    for &e in &c.edges {
        let _ = writeln!(text, "{}", edge_line(graph, e));
    }
    Ok(Report { text, json: json(&CircuitJson::from(&c)), svg: None, code: EXIT_NEGATIVE })
}

fn realize(graph: &ColoredGraph, cmd: &Command) -> Result<Report, Error> {
    if !is_colored_laman(graph) {
        let msg = "not a colored-Laman graph: no faithful realization\n";
        let j = ErrorJson { error: msg.trim_end().into(), kind: "verdict" };
        return Ok(Report { text: msg.into(), json: json(&j), svg: None, code: EXIT_NEGATIVE });
    }
    let f = faithful_realization(graph, cmd.seed, DEFAULT_RETRY_CAP)?;
    let statuses = match cmd.tol {
        Some(t) => edge_status(graph, &f.directions, &f.realization, t),
        None => f.statuses.clone(),
    };
    let r = &f.realization;
    let mut text = format!("faithful realization after {} direction samples\n", f.attempts);
    let _ = writeln!(text, "L = [[{:.9}, {:.9}], [{:.9}, {:.9}]]", r.l[0][0], r.l[0][1], r.l[1][0], r.l[1][1]);
    for (i, p) in r.p.iter().enumerate() {
        let _ = writeln!(text, "p{i} = ({:.9}, {:.9})", p[0], p[1]);
    }
    for (e, s) in statuses.iter().enumerate() {
        let _ = writeln!(text, "{}  alpha {:.9}{}", edge_line(graph, e), s.alpha, if s.collapsed { "  collapsed" } else { "" });
    }
    let code = if statuses.iter().any(|s| s.collapsed) { EXIT_NEGATIVE } else { EXIT_OK };
    let j = RealizationJson::new(r, &statuses, cmd.seed);
    Ok(Report { text, json: json(&j), svg: Some(emit_realization_svg(graph, r)), code })
}

fn prediction_name(p: ComponentPrediction) -> String {
    match p {
        ComponentPrediction::Infinite(l) => format!("{l} infinite"),
        ComponentPrediction::InfinitelyManyInfinite => "infinitely many infinite".into(),
        ComponentPrediction::InfinitelyManyFinite => "infinitely many finite".into(),
    }
}

fn develop(graph: &ColoredGraph, cmd: &Command) -> Result<Report, Error> {
    let d = develop_window(graph, cmd.window)?;
    let w = d.window;
    let idx = |i: Option<u64>| i.map_or("infinite".to_string(), |l| l.to_string());
    let mut text = format!("window [{}, {}] x [{}, {}]\n", w.x0, w.x1, w.y0, w.y1);
    let _ = writeln!(text, "Z^2-rank {}, index {}", d.rank, idx(d.index));
    let _ = writeln!(
        text,
        "predicted components: {}",
        d.predicted_components().map_or("infinitely many".to_string(), |c| c.to_string())
    );
    let _ = writeln!(text, "observed components in the window core: {}", d.observed_core_components);
    for (k, c) in d.classes.iter().enumerate() {
        let _ = writeln!(
            text,
            "class {k}: vertices {}, rank {}, index {}, {}",
            ids(&c.vertices),
            c.rank,
            idx(c.index),
            prediction_name(c.prediction)
        );
    }
    let j = DevelopmentJson {
        window: [[w.x0, w.x1], [w.y0, w.y1]],
        rank: d.rank,
        index: d.index,
        predicted_components: d.predicted_components(),
        observed_core_components: d.observed_core_components,
        window_vertices: d.vertices.len(),
        window_edges: d.edges.len(),
        classes: d
            .classes
            .iter()
            .map(|c| ClassJson {
                vertices: c.vertices.clone(),
                rank: c.rank,
                index: c.index,
                prediction: prediction_name(c.prediction),
            })
            .collect(),
    };
    Ok(Report { text, json: json(&j), svg: Some(emit_development_svg(graph, &d)), code: EXIT_OK })
}

fn cover(graph: &ColoredGraph, cmd: &Command) -> Result<Report, Error> {
    let c = sublattice_cover(graph, cmd.basis)?;
    let best = laman_rank(&c.graph);
    let b = cmd.basis.m;
    let mut text = format!("# {}-sheeted cover for basis [[{}, {}], [{}, {}]]\n", c.sheets, b[0][0], b[0][1], b[1][0], b[1][1]);
    let _ = writeln!(text, "# maximal colored-Laman-sparse subgraph: {best} edges");
    text.push_str(&serialize_colored_graph(&c.graph));
    let j = CoverJson {
        basis: b,
        sheets: c.sheets,
        graph: (&c.graph).into(),
        vertex_origin: c.vertex_origin.iter().map(|&(v, r)| [v as i64, r.g1, r.g2]).collect(),
        max_laman_sparse: best,
    };
    Ok(Report { text, json: json(&j), svg: None, code: EXIT_OK })
}

fn ross(graph: &ColoredGraph) -> Result<Report, Error> {
    let v = is_ross(graph)?;
    let mut text = String::from(if v.is_ross { "Ross graph\n" } else { "not a Ross graph\n" });
    text.push_str(if v.cross_checked {
        "cross-checked by subset counts\n"
    } else {
        "decided by the three-loop extension only\n"
    });
    let j = RossJson { is_ross: v.is_ross, cross_checked: v.cross_checked };
    Ok(Report { text, json: json(&j), svg: None, code: if v.is_ross { EXIT_OK } else { EXIT_NEGATIVE } })
}

fn oned(graph: &ColoredGraph, cmd: &Command) -> Result<Report, Error> {
    let v = is_1d_rigid(graph, cmd.seed)?;
    let headline = match (v.rigid, v.minimally_rigid) {
        (true, true) => "minimally rigid on the line",
        (true, false) => "rigid on the line",
        _ => "flexible on the line",
    };
    let n = graph.vertex_count();
    let text = format!("{headline}\nrank {} of {n}\n", v.rank);
    let j = OneDimJson { rigid: v.rigid, minimally_rigid: v.minimally_rigid, rank: v.rank, n, seed: cmd.seed };
    Ok(Report { text, json: json(&j), svg: None, code: if v.rigid { EXIT_OK } else { EXIT_NEGATIVE } })
}

fn rank(graph: &ColoredGraph, cmd: &Command) -> Result<Report, Error> {
    let n = graph.vertex_count();
    let tol = cmd.tol.unwrap_or(DEFAULT_TOLERANCE);
    let mut ranks = Vec::new();
    for (kind, name) in [(MatrixKind::M112, "M112"), (MatrixKind::M222, "M222"), (MatrixKind::M232, "M232")] {
        let r = rank_mod_p(graph, kind, cmd.trials, cmd.seed)?;
        ranks.push(RankJson { kind: name, mode: "prime", rank: r.rank, columns: column_count(kind, n) });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cmd.seed);
    let mut float = 0;
    for _ in 0..cmd.trials {
        use rand::Rng;
        let mut s = || rng.gen_range(-1.0..=1.0);
        let p = (0..n).map(|_| [s(), s()]).collect();
        let l = [[s(), s()], [s(), s()]];
        let r = periodic_rigidity::direction::Realization { p, l };
        float = float.max(rigidity_matrix(graph, &r).matrix.rank(tol)?);
    }
    ranks.push(RankJson { kind: "M232", mode: "float", rank: float, columns: column_count(MatrixKind::M232, n) });
    let mut text = format!("n {n}, m {}\n", graph.edge_count());
    for r in &ranks {
        let _ = writeln!(text, "{} ({}): rank {} of {} columns", r.kind, r.mode, r.rank, r.columns);
    }
    let j = RanksJson { n, m: graph.edge_count(), trials: cmd.trials, seed: cmd.seed, tolerance: tol, ranks };
    Ok(Report { text, json: json(&j), svg: None, code: EXIT_OK })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_and_basis_flags() {
        assert_eq!(parse_window("-2:2,-2:2").unwrap(), Window::square(2));
        assert_eq!(parse_window("0:3,1:1").unwrap(), Window::new(0, 3, 1, 1));
        assert!(parse_window("0:3").is_err());
        assert_eq!(parse_basis("1,0,0,2").unwrap(), LatticeBasis::diag(1, 2));
        assert!(parse_basis("1,0,0").is_err());
    }

    #[test]
    fn error_codes() {
        assert_eq!(exit_code_of(&Error::Internal("x".into())), EXIT_INTERNAL);
        assert_eq!(exit_code_of(&Error::Domain("x".into())), EXIT_INPUT);
    }
}

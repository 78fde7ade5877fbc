//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use periodic_rigidity::development::{develop_window, Window};
use periodic_rigidity::direction::{
    edge_status, faithful_realization, realization_kernel, DirectionAssignment, COLLAPSE_TOLERANCE,
    DEFAULT_RETRY_CAP,
};
use periodic_rigidity::forest::z2_rank;
use periodic_rigidity::lattice::{sublattice_cover, LatticeBasis};
use periodic_rigidity::linear_rep::{
    rank_mod_p, verify_determinant_formulas, GenericAssignment, MatrixKind, Mode, DEFAULT_TOLERANCE,
};
use periodic_rigidity::rigidity::{
    decide_rigidity, generic_rigidity_rank, is_1d_rigid, rationalized, rigidity_matrix,
};
use periodic_rigidity::sample::{
    random_11k, random_colored_graph, random_colored_laman, random_laman_circuit, random_z_colored_graph,
};
use periodic_rigidity::sparsity::{
    brute_force_sparsity, decompose_two_11k, f_value, is_11k, is_222_graph, is_222_sparse, is_colored_laman,
    is_colored_laman_sparse, is_ross, laman_rank, max_laman_sparse_subset, union_rank, Family,
};
use periodic_rigidity::{ColorVector, ColoredGraph, Fp};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(t: Duration, limit: Duration) -> Result<(), String> {
    check(t < limit, || format!("took {t:?}, limit {limit:?}"))
}

fn g(n: usize, e: &[(usize, usize, (i64, i64))]) -> ColoredGraph {
    ColoredGraph::from_edges(n, e.iter().copied()).unwrap()
}

fn one_vertex_laman() -> ColoredGraph {
    g(1, &[(0, 0, (1, 0)), (0, 0, (0, 1)), (0, 0, (1, 1))])
}

fn criterion_1() -> Outcome {
    let graph = one_vertex_laman();
    let start = Instant::now();
    let laman = is_colored_laman(&graph);
    let rank = generic_rigidity_rank(&graph, 3, 0, Mode::Prime).map_err(|e| e.to_string())?.rank;
    let f = faithful_realization(&graph, 0, DEFAULT_RETRY_CAP).map_err(|e| e.to_string())?;
    let t = start.elapsed();
    check(laman, || "not colored-Laman".into())?;
    check(rank == 3, || format!("rank {rank}"))?;
    check(f.statuses.iter().all(|s| !s.collapsed), || "a loop is collapsed".into())?;
    within(t, Duration::from_millis(10))?;
    Ok(format!("rank 3, faithful, {t:?}"))
}

fn exhaustive_small() -> Vec<ColoredGraph> {
    let colors: Vec<(i64, i64)> = (-1..=1).flat_map(|a| (-1..=1).map(move |b| (a, b))).collect();
    let mut out = Vec::new();
    // one vertex, multisets of up to four loops
    fn rec(colors: &[(i64, i64)], from: usize, left: usize, cur: &mut Vec<(i64, i64)>, out: &mut Vec<ColoredGraph>) {
        out.push(ColoredGraph::from_edges(1, cur.iter().map(|&c| (0, 0, c))).unwrap());
        if left == 0 {
            return;
        }
        for i in from..colors.len() {
            cur.push(colors[i]);
            rec(colors, i, left - 1, cur, out);
            cur.pop();
        }
    }
    rec(&colors, 0, 4, &mut Vec::new(), &mut out);
    // two vertices, up to three edges among {0->1, 0->0, 1->1} with colors in {0,1}^2
    let slots: Vec<(usize, usize, (i64, i64))> = [(0, 1), (0, 0), (1, 1)]
        .iter()
        .flat_map(|&(t, h)| [(0, 0), (1, 0), (0, 1), (1, 1)].map(|c| (t, h, c)))
        .collect();
    for a in 0..slots.len() {
        for b in a..slots.len() {
            for c in b..slots.len() {
                out.push(g(2, &[slots[a], slots[b], slots[c]]));
            }
        }
    }
    out
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut graphs = exhaustive_small();
    let exhaustive = graphs.len();
    for _ in 0..10_000 {
        let n = rng.gen_range(1..=3);
        let m = rng.gen_range(0..=7);
        graphs.push(random_colored_graph(&mut rng, n, m, 1));
    }
    let (mut sparse, mut laman) = (0, 0);
    for graph in &graphs {
        let fast = is_colored_laman_sparse(graph);
        let brute = brute_force_sparsity(graph, Family::Laman).map_err(|e| e.to_string())?.sparse;
        check(fast == brute, || format!("disagreement on {graph:?}"))?;
        let full = is_colored_laman(graph);
        check(full == (brute && graph.edge_count() == 2 * graph.vertex_count() + 1), || format!("{graph:?}"))?;
        sparse += fast as usize;
        laman += full as usize;
    }
    let t = start.elapsed();
    within(t, Duration::from_secs(60))?;
    Ok(format!(
        "{} graphs ({exhaustive} exhaustive), {sparse} sparse, {laman} colored-Laman, {t:.1?}",
        graphs.len()
    ))
}

fn criteria_3_and_4() -> (Outcome, Outcome) {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut found = Vec::new();
    let mut sparse = 0;
    let mut c3 = || -> Result<Duration, String> {
        for _ in 0..10_000 {
            let n = rng.gen_range(1..=6);
            let m = if rng.gen_bool(0.5) { 2 * n + 2 } else { rng.gen_range(0..=2 * n + 2) };
            let graph = random_colored_graph(&mut rng, n, m, 2);
            let fast = is_222_sparse(&graph);
            let brute = brute_force_sparsity(&graph, Family::TwoTwoTwo).map_err(|e| e.to_string())?.sparse;
            let seed = rng.gen();
            let rank = rank_mod_p(&graph, MatrixKind::M222, 3, seed).map_err(|e| e.to_string())?.rank;
            check(fast == brute && brute == (rank == m), || {
                format!("union {fast}, brute {brute}, rank {rank} of {m} on {graph:?}")
            })?;
            sparse += fast as usize;
            if is_222_graph(&graph) {
                found.push(graph);
            }
        }
        Ok(start.elapsed())
    };
    let r3 = c3().and_then(|t| {
        within(t, Duration::from_secs(120))?;
        Ok(format!("10000 graphs, {sparse} sparse, {} (2,2,k)-graphs, {t:.1?}", found.len()))
    });
    let r4 = (|| {
        let mut k2 = 0;
        for graph in &found {
            let d = decompose_two_11k(graph).map_err(|e| e.to_string())?;
            let k = z2_rank(&graph.all_edges());
            let mut all: Vec<usize> = d.parts.concat();
            all.sort_unstable();
            check(all == (0..graph.edge_count()).collect::<Vec<_>>(), || "parts do not partition E".into())?;
            for p in &d.parts {
                let s = graph.subset(p.iter().copied()).map_err(|e| e.to_string())?;
                check(is_11k(&s) == Some(k), || format!("part {p:?} of {graph:?}"))?;
            }
            k2 += (k == 2) as usize;
        }
        check(k2 > 0, || "no (2,2,2)-graph was found".into())?;
        Ok(format!("{} decompositions ({k2} with k = 2)", found.len()))
    })();
    (r3, r4)
}

fn criteria_5_and_6() -> (Outcome, Outcome) {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut realizations = Vec::new();
    let r5 = (|| {
        for i in 0..100u64 {
            let n = rng.gen_range(1..=8);
            let graph = random_colored_laman(&mut rng, n, 2);
            let f = faithful_realization(&graph, i, DEFAULT_RETRY_CAP).map_err(|e| format!("{e} on {graph:?}"))?;
            let k = realization_kernel(&graph, &f.directions, DEFAULT_TOLERANCE).map_err(|e| e.to_string())?;
            check(k.dim() == 3, || format!("kernel dim {}", k.dim()))?;
            let scale = f.realization.scale();
            for s in &f.statuses {
                check(s.residual.abs() <= 1e-9 * scale, || format!("residual {}", s.residual))?;
                check(s.eta[0].hypot(s.eta[1]) > 1e-6 * scale, || "collapsed edge".into())?;
            }
            realizations.push((graph, f));
        }
        let t = start.elapsed();
        within(t, Duration::from_secs(30))?;
        Ok(format!("100 faithful realizations, n <= 8, {t:.1?}"))
    })();
    let r6 = (|| {
        check(!realizations.is_empty(), || "no realizations from criterion 5".into())?;
        for (graph, f) in &realizations {
            let n = graph.vertex_count();
            let rm = rigidity_matrix(graph, &f.realization).matrix;
            let rank = rm.rank(1e-9).map_err(|e| e.to_string())?;
            check(rank == 2 * n + 1, || format!("rank {rank} for n = {n}"))?;
            let (p, l) = rationalized(&f.realization);
            let rp = periodic_rigidity::linear_rep::m232_fp(graph, &p, &l).matrix.rank();
            check(rp == 2 * n + 1, || format!("rank mod p {rp} for n = {n}"))?;
            for k in 0..rm.rows() {
                let r = rm.without_row(k).rank(1e-9).map_err(|e| e.to_string())?;
                check(r == 2 * n, || format!("deleting row {k} leaves rank {r}"))?;
            }
        }
        Ok(format!("{} rigidity matrices of rank 2n+1, every deletion 2n", realizations.len()))
    })();
    (r5, r6)
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut circuits = vec![g(2, &[(0, 0, (1, 0)), (1, 1, (1, 0))])];
    for _ in 0..50 {
        circuits.push(random_laman_circuit(&mut rng, 4, 1));
    }
    for c in &circuits {
        let k = z2_rank(&c.all_edges()) as usize;
        let comps = c.vertex_components().count;
        let d = DirectionAssignment::random(c.edge_count(), &mut rng);
        let ker = realization_kernel(c, &d, DEFAULT_TOLERANCE).map_err(|e| e.to_string())?;
        let expect = 4 - 2 * k + 2 * comps;
        check(ker.dim() == expect, || format!("kernel dim {} != {expect} on {c:?}", ker.dim()))?;
        for r in &ker.basis {
            let st = edge_status(c, &d, r, COLLAPSE_TOLERANCE);
            check(st.iter().all(|s| s.collapsed), || format!("non-collapsed kernel vector on {c:?}"))?;
        }
    }
    Ok(format!("{} circuits, kernels of dim 4-2k+2c, all collapsed", circuits.len()))
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut count = 0;
    for i in 0..1200 {
        let n = rng.gen_range(1..=8);
        let k = (i % 3) as u8;
        if k == 0 && n == 1 {
            continue;
        }
        let graph = random_11k(&mut rng, n, k, 3);
        let m = graph.edge_count();
        let fp = GenericAssignment::random_fp(m, &mut rng);
        let rep = verify_determinant_formulas(&graph, &fp).map_err(|e| e.to_string())?;
        check(rep.agrees(), || format!("F_p mismatch {rep:?} on {graph:?}"))?;
        let fl = GenericAssignment::random_f64(m, &mut rng);
        let rep = verify_determinant_formulas(&graph, &fl).map_err(|e| e.to_string())?;
        check(rep.agrees(), || format!("float mismatch {rep:?} on {graph:?}"))?;
        count += 1;
    }
    let mut zeros = 0;
    while zeros < 300 {
        let n = rng.gen_range(1..=8);
        let m = n - 1 + rng.gen_range(0..=2usize);
        if m == 0 {
            continue;
        }
        let graph = random_colored_graph(&mut rng, n, m, 1);
        if is_11k(&graph.all_edges()).is_some() {
            continue;
        }
        for _ in 0..3 {
            let fp = GenericAssignment::random_fp(m, &mut rng);
            let rep = verify_determinant_formulas(&graph, &fp).map_err(|e| e.to_string())?;
            check(rep.minors.iter().all(|mc| mc.determinant == Fp::ZERO), || format!("nonzero minor on {graph:?}"))?;
        }
        zeros += 1;
    }
    check(count >= 1000, || format!("only {count} instances"))?;
    Ok(format!("{count} (1,1,k) instances in F_p and floating point, {zeros} non-(1,1,k) zero minors"))
}

fn verdicts(graph: &ColoredGraph) -> Result<Vec<i64>, String> {
    let e = |x: periodic_rigidity::Error| x.to_string();
    let rig = decide_rigidity(graph, 9).map_err(e)?;
    Ok(vec![
        is_colored_laman_sparse(graph) as i64,
        is_colored_laman(graph) as i64,
        is_222_sparse(graph) as i64,
        is_222_graph(graph) as i64,
        laman_rank(graph) as i64,
        union_rank(&graph.all_edges()) as i64,
        f_value(&graph.all_edges()),
        z2_rank(&graph.all_edges()) as i64,
        rank_mod_p(graph, MatrixKind::M222, 3, 9).map_err(e)?.rank as i64,
        rank_mod_p(graph, MatrixKind::M112, 3, 9).map_err(e)?.rank as i64,
        rig.status as i64,
        rig.rank as i64,
    ])
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut pairs = 0;
    for i in 0..1000 {
        let n = rng.gen_range(1..=4);
        let m = if i % 2 == 0 { 2 * n + 1 } else { rng.gen_range(0..=2 * n + 2) };
        let graph = if i % 4 == 0 { random_colored_laman(&mut rng, n, 2) } else { random_colored_graph(&mut rng, n, m, 2) };
        let base = verdicts(&graph)?;
        let mut reversed = graph.clone();
        for e in 0..graph.edge_count() {
            if rng.gen_bool(0.5) {
                reversed = reversed.with_edge_reversed(e);
            }
        }
        let pot: Vec<ColorVector> = (0..n).map(|_| ColorVector::new(rng.gen_range(-3..=3), rng.gen_range(-3..=3))).collect();
        let recolored = graph.recolored(&pot).map_err(|e| e.to_string())?;
        let mut perm: Vec<usize> = (0..n).collect();
        for j in (1..n).rev() {
            perm.swap(j, rng.gen_range(0..=j));
        }
        let relabeled = graph.relabeled(&perm).map_err(|e| e.to_string())?;
        for (name, t) in [("reversal", reversed), ("recoloring", recolored), ("relabeling", relabeled)] {
            let v = verdicts(&t)?;
            check(v == base, || format!("{name} changed verdicts {base:?} -> {v:?} on {graph:?}"))?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} transformation pairs, identical verdicts"))
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut ross = 0;
    for _ in 0..5000 {
        let n = rng.gen_range(1..=5);
        let graph = random_colored_graph(&mut rng, n, 2 * n - 2, 1);
        let v = is_ross(&graph).map_err(|e| format!("{e} on {graph:?}"))?;
        check(v.cross_checked, || "direct route skipped".into())?;
        ross += v.is_ross as usize;
    }
    let mut rigid = 0;
    for i in 0..5000u64 {
        let n = rng.gen_range(1..=5);
        let m = rng.gen_range(0..=2 * n);
        let graph = random_z_colored_graph(&mut rng, n, m, 2);
        let v = is_1d_rigid(&graph, i).map_err(|e| format!("{e} on {graph:?}"))?;
        rigid += v.rigid as usize;
    }
    Ok(format!("5000 Ross checks ({ross} Ross graphs), 5000 1d checks ({rigid} rigid), routes agree"))
}

fn criterion_11() -> Outcome {
    let graph = g(1, &[(0, 0, (1, 0)), (0, 0, (0, 2)), (0, 0, (1, 2))]);
    let d = develop_window(&graph, Window::square(3)).map_err(|e| e.to_string())?;
    check(d.index == Some(2), || format!("index {:?}", d.index))?;
    check(d.observed_core_components == 2, || format!("{} core components", d.observed_core_components))?;
    let cover = sublattice_cover(&graph, LatticeBasis::diag(1, 2)).map_err(|e| e.to_string())?;
    let l = cover.sheets;
    let best = max_laman_sparse_subset(&cover.graph).len();
    check(best <= 2 * l * graph.vertex_count() - 1, || format!("sparse subgraph of {best} edges"))?;
    check(!is_colored_laman(&cover.graph.clone()), || "cover is colored-Laman".into())?;
    Ok(format!("index 2, 2 core components, cover max sparse {best} <= {}", 2 * l - 1))
}

fn main() -> ExitCode {
    let mut results: Vec<(u32, Outcome)> = Vec::new();
    results.push((1, criterion_1()));
    results.push((2, criterion_2()));
    let (r3, r4) = criteria_3_and_4();
    results.push((3, r3));
    results.push((4, r4));
    let (r5, r6) = criteria_5_and_6();
    results.push((5, r5));
    results.push((6, r6));
    results.push((7, criterion_7()));
    results.push((8, criterion_8()));
    results.push((9, criterion_9()));
    results.push((10, criterion_10()));
    results.push((11, criterion_11()));
    let mut failed = 0;
    for (k, r) in &results {
        match r {
            Ok(msg) => println!("criterion {k:>2}: PASS  {msg}"),
            Err(msg) => {
                failed += 1;
                println!("criterion {k:>2}: FAIL  {msg}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

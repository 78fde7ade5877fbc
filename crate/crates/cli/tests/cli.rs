use std::path::{Path, PathBuf};
use std::process::Command as Process;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use periodic_rigidity::development::Window;
use periodic_rigidity::sample::{random_colored_graph, random_colored_laman};
use periodic_rigidity::ColoredGraph;
use periodic_rigidity_cli::command::{EXIT_INPUT, EXIT_NEGATIVE, EXIT_OK};
use periodic_rigidity_cli::svg::PALETTE;
use periodic_rigidity_cli::{
    parse_colored_graph, run_command, run_on_bytes, serialize_colored_graph, Command, Format, Output, Verb,
};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn run(verb: Verb, name: &str, format: Format) -> Output {
    let mut c = Command::new(verb, fixture(name));
    c.format = format;
    run_command(&c)
}

fn text(o: &Output) -> String {
    String::from_utf8(o.bytes.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.bytes).unwrap()
}

#[test]
fn check_one_vertex_laman() {
    let o = run(Verb::Check, "one_vertex_laman.cg", Format::Text);
    assert_eq!(o.code, EXIT_OK);
    assert!(text(&o).starts_with("generically minimally rigid\n"), "{}", text(&o));
    let j = json(&run(Verb::Check, "one_vertex_laman.cg", Format::Json));
    assert_eq!(j["status"], "minimally_rigid");
    assert_eq!(j["rank"], 3);
    assert_eq!(j["witness"]["deletion_ranks"], serde_json::json!([2, 2, 2]));
}

#[test]
fn check_other_verdicts() {
    let o = run(Verb::Check, "four_loops.cg", Format::Text);
    assert_eq!(o.code, EXIT_OK);
    assert!(text(&o).starts_with("generically rigid, overconstrained"));
    let o = run(Verb::Check, "two_loops.cg", Format::Json);
    assert_eq!(o.code, EXIT_NEGATIVE);
    assert_eq!(json(&o)["dof"], 1);
    let o = run(Verb::Check, "two_loop_circuit.cg", Format::Json);
    assert_eq!(o.code, EXIT_NEGATIVE);
    assert_eq!(json(&o)["circuit"]["edges"], serde_json::json!([0, 1]));
}

#[test]
fn circuit_lists_both_loops() {
    let o = run(Verb::Circuit, "two_loop_circuit.cg", Format::Text);
    assert_eq!(o.code, EXIT_NEGATIVE);
    let t = text(&o);
    assert!(t.contains("edge 0: 0 0 1 0") && t.contains("edge 1: 1 1 1 0"), "{t}");
    assert!(t.contains("m' = 2, f = 1"));
    assert_eq!(run(Verb::Circuit, "one_vertex_laman.cg", Format::Text).code, EXIT_OK);
}

#[test]
fn develop_finite_index_has_two_component_colors() {
    let mut c = Command::new(Verb::Develop, fixture("finite_index.cg"));
    c.window = Window::square(2);
    c.format = Format::Svg;
    let o = run_command(&c);
    assert_eq!(o.code, EXIT_OK);
    let svg = text(&o);
    let used: Vec<&str> = PALETTE.iter().copied().filter(|p| svg.contains(&format!("fill=\"{p}\""))).collect();
    assert_eq!(used.len(), 2, "{used:?}");
    c.format = Format::Json;
    let j = json(&run_command(&c));
    assert_eq!(j["index"], 2);
    assert_eq!(j["predicted_components"], 2);
    assert_eq!(j["observed_core_components"], 2);
}

#[test]
fn develop_tree_window() {
    let mut c = Command::new(Verb::Develop, fixture("tree_edge.cg"));
    c.window = Window::square(1);
    c.format = Format::Svg;
    let svg = text(&run_command(&c));
    // 9 translates of the one edge, 2 x 9 vertices, 4 + 4 grid lines and 2 arrows.
    assert_eq!(svg.matches("<circle").count(), 18);
    assert_eq!(svg.matches("<line").count(), 9 + 8 + 2);
}

#[test]
fn realize_one_vertex_laman() {
    let o = run(Verb::Realize, "one_vertex_laman.cg", Format::Json);
    assert_eq!(o.code, EXIT_OK);
    let j = json(&o);
    let raw = text(&o);
    let at: Vec<usize> = ["\"n\"", "\"p\"", "\"L\"", "\"edges\"", "\"seed\""].iter().map(|k| raw.find(k).unwrap()).collect();
    assert!(at.windows(2).all(|w| w[0] < w[1]), "{raw}");
    assert_eq!(j["p"], serde_json::json!([[0.0, 0.0]]));
    assert_eq!(j["edges"].as_array().unwrap().len(), 3);
    assert!(j["edges"].as_array().unwrap().iter().all(|e| e["collapsed"] == false));

    let svg = text(&run(Verb::Realize, "one_vertex_laman.cg", Format::Svg));
    assert_eq!(svg.matches("<circle").count(), 1);
    assert!(svg.contains(r#"<circle cx="0" cy="0""#));
    // three edge segments plus the two lattice arrows
    assert_eq!(svg.matches("<line").count(), 5);

    assert_eq!(run(Verb::Realize, "two_loops.cg", Format::Text).code, EXIT_NEGATIVE);
}

#[test]
fn cover_output_parses_back() {
    let o = run(Verb::Cover, "finite_index.cg", Format::Text);
    assert_eq!(o.code, EXIT_OK);
    let cover = parse_colored_graph(&o.bytes).unwrap().graph;
    assert_eq!((cover.vertex_count(), cover.edge_count()), (2, 6));
    assert!(text(&o).contains("maximal colored-Laman-sparse subgraph: 3 edges"));
}

#[test]
fn ross_oned_rank_sparsity_decompose() {
    assert_eq!(run(Verb::Ross, "ross_two.cg", Format::Text).code, EXIT_OK);
    assert_eq!(run(Verb::Ross, "not_ross_two.cg", Format::Text).code, EXIT_NEGATIVE);

    let o = run(Verb::Oned, "oned_cycle.cg", Format::Json);
    assert_eq!(o.code, EXIT_OK);
    assert_eq!(json(&o)["minimally_rigid"], true);
    assert_eq!(run(Verb::Oned, "tree_edge.cg", Format::Text).code, EXIT_NEGATIVE);
    assert_eq!(run(Verb::Oned, "one_vertex_laman.cg", Format::Text).code, EXIT_INPUT);

    let j = json(&run(Verb::Rank, "one_vertex_laman.cg", Format::Json));
    let ranks: Vec<u64> = j["ranks"].as_array().unwrap().iter().map(|r| r["rank"].as_u64().unwrap()).collect();
    assert_eq!(ranks, [2, 3, 3, 3]);

    let o = run(Verb::Sparsity, "one_vertex_laman.cg", Format::Json);
    assert_eq!(o.code, EXIT_OK);
    assert_eq!(json(&o)["brute_force_checked"], true);
    assert_eq!(run(Verb::Sparsity, "two_loop_circuit.cg", Format::Text).code, EXIT_NEGATIVE);

    let o = run(Verb::Decompose, "four_loops.cg", Format::Json);
    assert_eq!(o.code, EXIT_OK);
    assert_eq!(json(&o)["k"], 2);
    assert_eq!(run(Verb::Decompose, "two_loops.cg", Format::Text).code, EXIT_NEGATIVE);
}

#[test]
fn input_errors_exit_2() {
    for name in ["dimension_three.cg", "vertex_out_of_range.cg", "bad_color.cg", "missing.cg"] {
        let o = run(Verb::Check, name, Format::Text);
        assert_eq!(o.code, EXIT_INPUT, "{name}");
    }
    let o = run(Verb::Check, "dimension_three.cg", Format::Text);
    assert!(text(&o).contains("line 1, column 4: unsupported dimension 3"));
    assert_eq!(run(Verb::Ross, "one_vertex_laman.cg", Format::Svg).code, EXIT_INPUT);
}

#[test]
fn exit_code_contract_over_the_corpus() {
    let expected: &[(&str, Verb, u8)] = &[
        ("one_vertex_laman.cg", Verb::Check, 0),
        ("four_loops.cg", Verb::Check, 0),
        ("two_loops.cg", Verb::Check, 1),
        ("two_loop_circuit.cg", Verb::Check, 1),
        ("tree_edge.cg", Verb::Check, 1),
        ("path_tree.cg", Verb::Sparsity, 0),
        ("two_loop_circuit.cg", Verb::Circuit, 1),
        ("finite_index.cg", Verb::Develop, 0),
        ("ross_two.cg", Verb::Ross, 0),
        ("dimension_three.cg", Verb::Sparsity, 2),
    ];
    for &(name, verb, code) in expected {
        assert_eq!(run(verb, name, Format::Text).code, code, "{name} {verb:?}");
        assert_eq!(run(verb, name, Format::Json).code, code, "{name} {verb:?} json");
    }
}

#[test]
fn binary_batch_and_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_prig");
    let out = Process::new(bin).arg("check").arg(fixture("one_vertex_laman.cg")).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("generically minimally rigid"));

    let out = Process::new(bin)
        .args(["develop", "--window", "-2:2,-2:2", "--format", "svg"])
        .arg(fixture("finite_index.cg"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.starts_with(b"<svg"));

    let files = [fixture("one_vertex_laman.cg"), fixture("two_loops.cg"), fixture("bad_color.cg")];
    let one = Process::new(bin).args(["check", "--jobs", "1"]).args(&files).output().unwrap();
    let three = Process::new(bin).args(["check", "--jobs", "3"]).args(&files).output().unwrap();
    assert_eq!(one.stdout, three.stdout);
    assert_eq!(one.status.code(), Some(2));
    assert_eq!(String::from_utf8_lossy(&one.stdout).matches("==> ").count(), 3);
}

#[test]
fn outputs_are_deterministic() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for n in 1..5 {
        let g = random_colored_laman(&mut rng, n, 2);
        let bytes = serialize_colored_graph(&g).into_bytes();
        for verb in [Verb::Check, Verb::Realize, Verb::Rank, Verb::Develop] {
            for format in [Format::Text, Format::Json] {
                let mut c = Command::new(verb, "mem.cg");
                c.seed = 5;
                c.format = format;
                let a = run_on_bytes(&c, &bytes);
                let b = run_on_bytes(&c, &bytes);
                assert_eq!(a, b);
                assert_eq!(a.code, EXIT_OK, "{verb:?} on {g:?}");
            }
        }
        let mut c = Command::new(Verb::Realize, "mem.cg");
        c.format = Format::Svg;
        assert_eq!(run_on_bytes(&c, &bytes), run_on_bytes(&c, &bytes));
    }
}

fn canonical(g: &ColoredGraph) -> String {
    serialize_colored_graph(g)
}

proptest! {
    #[test]
    fn round_trip(seed in any::<u64>(), n in 1usize..6, m in 0usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_colored_graph(&mut rng, n, m, 1000);
        let s = canonical(&g);
        let back = parse_colored_graph(s.as_bytes()).unwrap().graph;
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(canonical(&back), s);
    }

    #[test]
    fn comments_do_not_matter(seed in any::<u64>(), n in 1usize..5, m in 0usize..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_colored_graph(&mut rng, n, m, 3);
        let noisy: String = canonical(&g)
            .lines()
            .enumerate()
            .map(|(i, l)| format!("# line {i}\n  {l}   # trailing\n\n"))
            .collect();
        prop_assert_eq!(parse_colored_graph(noisy.as_bytes()).unwrap().graph, g);
    }
}

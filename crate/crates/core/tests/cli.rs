//! End-to-end runs of the command line and its file formats.

use std::path::{Path, PathBuf};

use cutlocus::cli::{graph_json, parse_graph, run_with_io, scheme_json};
use cutlocus::multigraph::catalog;
use cutlocus::{Dart, EmbeddingScheme, MultiGraph};
use proptest::prelude::*;
use serde_json::Value;

fn sample(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("samples")
        .join(name)
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_with_io(
        std::iter::once("cutlocus").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn run_json(args: &[&str]) -> Value {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

fn write_graph(dir: &Path, name: &str, g: &MultiGraph) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, serde_json::to_string(&graph_json(g)).unwrap()).unwrap();
    p
}

#[test]
fn analyze_petersen_is_a_stable_class() {
    let v = run_json(&["analyze", sample("petersen.json").to_str().unwrap()]);
    assert_eq!(v["generating_cycles"], 6);
    assert_eq!(v["cubic"], true);
    assert_eq!(v["stability"], "globally stable class");
}

#[test]
fn analyze_classifies_by_cubicity() {
    let v = run_json(&["analyze", sample("k4.json").to_str().unwrap()]);
    assert_eq!(v["stability"], "globally stable class");
    let v = run_json(&["analyze", sample("rose2.json").to_str().unwrap()]);
    assert_eq!(v["stability"], "not globally stable");
    assert_eq!(v["generating_cycles"], 2);
    // a pendant edge does not change the class of the cyclic part
    let v = run_json(&["analyze", sample("tadpole.json").to_str().unwrap()]);
    assert_eq!(v["cubic"], false);
    assert_eq!(v["cyclic_part"]["vertices"], 1);
    assert_eq!(v["stability"], "not globally stable");
}

#[test]
fn strip_on_a_cycle_is_a_mobius_band() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("scheme.json");
    let v = run_json(&[
        "strip",
        sample("cycle4.json").to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(v["surface"]["faces"], 1);
    assert_eq!(v["surface"]["orientable"], false);
    assert_eq!(v["surface"]["strip_euler_characteristic"], 0);
    // the boundary circle runs twice along the core
    assert_eq!(v["boundary_walk"].as_array().unwrap().len(), 8);
    let sig: u64 = v["signature"]
        .as_object()
        .unwrap()
        .values()
        .map(|b| b.as_u64().unwrap())
        .sum();
    assert_eq!(sig % 2, 1);
    let parsed = parse_graph(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let s = parsed.scheme.unwrap();
    assert!(s.is_cl_structure() && !s.is_orientable());
}

#[test]
fn realize_petersen_writes_a_thirty_gon() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("p.svg");
    let v = run_json(&[
        "realize",
        sample("petersen.json").to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(v["verification"]["passed"], true);
    assert_eq!(v["realization"]["geometry"], "hyperbolic");
    assert_eq!(
        v["realization"]["vertex_coords"].as_array().unwrap().len(),
        30
    );
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<svg") && text.trim_end().ends_with("</svg>"));
}

#[test]
fn realize_reads_a_scheme_file() {
    let dir = tempfile::tempdir().unwrap();
    // rose with two loops, walk a b a⁻¹ b⁻¹: the square torus
    let g = catalog::rose(2);
    let s = EmbeddingScheme::new(
        g,
        vec![vec![Dart(0), Dart(2), Dart(1), Dart(3)]],
        vec![false, false],
    )
    .unwrap();
    assert!(s.is_cl_structure() && s.is_orientable());
    let p = dir.path().join("torus.json");
    std::fs::write(&p, serde_json::to_string(&scheme_json(&s)).unwrap()).unwrap();
    let v = run_json(&["realize", p.to_str().unwrap()]);
    assert_eq!(v["realization"]["geometry"], "euclidean");
    assert_eq!(v["realization"]["euler_characteristic"], 0);
    assert_eq!(v["scheme"], serde_json::to_value(scheme_json(&s)).unwrap());
}

#[test]
fn impossible_tolerance_is_a_verification_failure() {
    let (code, _, err) = run(&[
        "realize",
        sample("petersen.json").to_str().unwrap(),
        "--tolerance",
        "0",
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("verification failed"));
}

#[test]
fn domain_and_parse_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _, err) = run(&["analyze", "--nope", sample("k4.json").to_str().unwrap()]);
    assert_eq!(code, 1, "{err}");
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"vertices\": [1], \"edges\": [{\"ends\": [1, 2]}]}").unwrap();
    let (code, _, err) = run(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("unknown vertex"));
    std::fs::write(&bad, "not json").unwrap();
    assert_eq!(run(&["strip", bad.to_str().unwrap()]).0, 1);
    // tadpole is not of constant order
    let (code, _, err) = run(&["realize", sample("tadpole.json").to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error:"));
    assert_eq!(
        run(&[
            "census",
            sample("petersen.json").to_str().unwrap(),
            "--limit",
            "10"
        ])
        .0,
        1
    );
    assert_eq!(
        run(&[
            "torus",
            "voronoi",
            sample("bump_torus.json").to_str().unwrap()
        ])
        .0,
        1
    );
    assert_eq!(run(&["torus", "scan", "--bump-demo", "--points", "1"]).0, 1);
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("resolve-cubic"));
}

#[test]
fn census_on_cycles_has_one_class() {
    let dir = tempfile::tempdir().unwrap();
    for n in 3..=5 {
        let p = write_graph(dir.path(), "c.json", &catalog::cycle(n));
        let v = run_json(&["census", p.to_str().unwrap(), "--members"]);
        assert_eq!(v["class_count"], 1);
        assert_eq!(
            v["classes"][0]["members"].as_array().unwrap().len(),
            v["cl_structures"].as_u64().unwrap() as usize
        );
    }
}

#[test]
fn resolve_cubic_on_a_rose() {
    let v = run_json(&["resolve-cubic", sample("rose2.json").to_str().unwrap()]);
    assert_eq!(v["cubic"], true);
    assert_eq!(v["inserted_edges"].as_array().unwrap().len(), 1);
    let g = parse_graph(&v["graph"].to_string()).unwrap().graph;
    assert!(g.is_isomorphic(&catalog::theta(3)));
}

#[test]
fn torus_commands() {
    let dir = tempfile::tempdir().unwrap();
    let v = run_json(&[
        "torus",
        "voronoi",
        sample("square_torus.json").to_str().unwrap(),
        "--x",
        "0.2,0.1",
    ]);
    assert_eq!(v["degree_profile"], serde_json::json!([4]));
    assert_eq!(v["total_length"], 2.0);
    let dump = dir.path().join("f.bin");
    let svg = dir.path().join("f.svg");
    let v = run_json(&[
        "torus",
        "field",
        sample("hex_torus.json").to_str().unwrap(),
        "--resolution",
        "64",
        "--dump",
        dump.to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(v["cut_locus"]["degree_profile"], serde_json::json!([3, 3]));
    assert_eq!(v["cut_locus"]["cycle_rank"], 2);
    let (rows, cols, values) =
        cutlocus::torus_lab::read_field_dump(&std::fs::read(&dump).unwrap()[..]).unwrap();
    assert_eq!((rows, cols, values.len()), (64, 64, 64 * 64));
    assert!(std::fs::read_to_string(&svg).unwrap().contains("<polyline"));
    let v = run_json(&[
        "torus",
        "scan",
        sample("hex_torus.json").to_str().unwrap(),
        "--from",
        "0,0",
        "--to",
        "0.1,0.05",
        "--points",
        "5",
    ]);
    assert_eq!(v["scan"]["cubic"], true);
    assert_eq!(v["scan"]["transitions"].as_array().unwrap().len(), 0);
}

fn arb_scheme() -> impl Strategy<Value = EmbeddingScheme> {
    (
        0usize..40,
        any::<u64>(),
        proptest::collection::vec(any::<bool>(), 12),
    )
        .prop_map(|(i, seed, bits)| {
            let corpus = catalog::connected_multigraphs(4);
            let g = corpus[i % corpus.len()].clone();
            let mut state = seed;
            let rotation = (0..g.vertex_count())
                .map(|v| {
                    let mut darts = g.darts_at(v).to_vec();
                    for k in (1..darts.len()).rev() {
                        state = state
                            .wrapping_mul(6364136223846793005)
                            .wrapping_add(1442695040888963407);
                        darts.swap(k, (state >> 33) as usize % (k + 1));
                    }
                    darts
                })
                .collect();
            let signature = bits[..g.edge_count()].to_vec();
            EmbeddingScheme::new(g, rotation, signature).unwrap()
        })
}

proptest! {
    #[test]
    fn scheme_json_round_trips_exactly(s in arb_scheme()) {
        let text = serde_json::to_string(&scheme_json(&s)).unwrap();
        let back = parse_graph(&text).unwrap().scheme.unwrap();
        prop_assert_eq!(back.rotations(), s.rotations());
        prop_assert_eq!(back.signatures(), s.signatures());
        prop_assert_eq!(&back, &s);
    }

    #[test]
    fn graph_json_round_trips(i in 0usize..200, lengths in proptest::collection::vec(0.01f64..10.0, 8)) {
        let corpus = catalog::connected_multigraphs(5);
        let mut g = corpus[i % corpus.len()].clone();
        // lengths live on edges, so a point is never metric in this format
        if i % 2 == 0 && g.edge_count() > 0 {
            let m = g.edge_count();
            g = g.with_lengths(lengths[..m].to_vec()).unwrap();
        }
        let once = parse_graph(&serde_json::to_string(&graph_json(&g)).unwrap()).unwrap().graph;
        let twice = parse_graph(&serde_json::to_string(&graph_json(&once)).unwrap()).unwrap().graph;
        prop_assert!(once.is_isomorphic(&g));
        prop_assert_eq!(&once, &twice);
        prop_assert_eq!(once.lengths(), g.lengths());
        prop_assert_eq!(once.all_ends(), g.all_ends());
    }
}

use std::path::PathBuf;
use std::process::Command;

use gainlap::prelude::*;
use gainlap::sample;
use gainlap_cli::document::{parse_graph, GraphDocument};
use gainlap_cli::format::parse_matrix_csv;
use proptest::prelude::*;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn gainlap(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_gainlap"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

/// Runs in-process through the library entry point.
fn run(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = gainlap_cli::run(
        std::iter::once("gainlap").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (code, String::from_utf8(out).unwrap())
}

fn write_doc(dir: &tempfile::TempDir, doc: &GraphDocument) -> String {
    let path = dir.path().join("g.json");
    std::fs::write(&path, doc.to_json()).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn example_graph_is_unbalanced() {
    let (code, out, _) = gainlap(&["balance", data("gfig.json").to_str().unwrap()]);
    assert_eq!((code, out.as_str()), (0, "unbalanced\n"));
}

#[test]
fn both_determinant_methods_give_two_on_the_triangle() {
    let file = data("c3i.json");
    for method in ["forests", "lu"] {
        let (code, out, _) = gainlap(&["det", "--method", method, file.to_str().unwrap()]);
        assert_eq!((code, out.as_str()), (0, "2\n"), "{method}");
    }
}

#[test]
fn rank_and_spectrum() {
    let file = data("gfig.json");
    let (_, rank, _) = gainlap(&["rank", file.to_str().unwrap()]);
    assert_eq!(rank, "5\n");
    let (code, spectrum, _) = gainlap(&[
        "spectrum",
        "--target",
        "lap",
        data("c3i.json").to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let values: Vec<f64> = spectrum.lines().map(|l| l.parse().unwrap()).collect();
    assert_eq!(values.len(), 3);
    assert!(values.windows(2).all(|w| w[0] <= w[1]));
    assert!((values.iter().product::<f64>() - 2.0).abs() < 1e-10);
}

#[test]
fn incidence_shapes() {
    let file = data("gfig.json");
    let (_, h, _) = gainlap(&["incidence", file.to_str().unwrap()]);
    let h = parse_matrix_csv(&h).unwrap();
    assert_eq!((h.rows(), h.cols()), (5, 5));
    let (_, dh, _) = gainlap(&[
        "incidence",
        "--distance",
        "--mode",
        "min",
        file.to_str().unwrap(),
    ]);
    let dh = parse_matrix_csv(&dh).unwrap();
    assert_eq!((dh.rows(), dh.cols()), (5, 10));
}

#[test]
fn exit_codes() {
    let file = data("gfig.json");
    let file = file.to_str().unwrap();
    assert_eq!(gainlap(&["dmatrix", file]).0, 1, "missing --mode");
    assert_eq!(gainlap(&["frobnicate", file]).0, 1);
    assert_eq!(gainlap(&["verify", "--theorem", "4", file]).0, 1);
    assert_eq!(gainlap(&["balance", "/nonexistent/graph.json"]).0, 1);
    assert_eq!(gainlap(&["--help"]).0, 0);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"n":2,"edges":[{"u":2,"v":1,"gain":{"theta":0}}]}"#,
    )
    .unwrap();
    let (code, _, err) = gainlap(&["balance", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("u < v"), "{err}");

    let (code, out, _) = gainlap(&["verify", "--theorem", "12", file]);
    assert_eq!(code, 0);
    assert!(out.starts_with("NOT-APPLICABLE"), "{out}");
    let (code, out, _) = gainlap(&["verify", "--theorem", "7", "--seed", "5", file]);
    assert_eq!(code, 0);
    assert!(out.starts_with("PASS"), "{out}");
}

#[test]
fn budget_overflow_exits_with_three() {
    let out = Command::new(env!("CARGO_BIN_EXE_gainlap"))
        .args([
            "det",
            "--method",
            "forests",
            data("gfig.json").to_str().unwrap(),
        ])
        .env("GAINLAP_BUDGET", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(!out.stderr.is_empty());

    let out = Command::new(env!("CARGO_BIN_EXE_gainlap"))
        .args([
            "verify",
            "--theorem",
            "3",
            data("gfig.json").to_str().unwrap(),
        ])
        .env("GAINLAP_BUDGET", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn disconnected_input_is_rejected_for_distance_commands() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("two.json");
    std::fs::write(
        &path,
        r#"{"n":3,"edges":[{"u":1,"v":2,"gain":{"theta":0}}]}"#,
    )
    .unwrap();
    let (code, _) = run(&["dmatrix", "--mode", "max", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    let (code, out) = run(&["verify", "--theorem", "7", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.starts_with("NOT-APPLICABLE"));
}

fn random_document(seed: u64, n: usize) -> GraphDocument {
    let mut rng = sample::rng(seed);
    let g = sample::random_connected_graph(&mut rng, n, 0.4);
    let wg = sample::with_random_weights(&mut rng, g);
    let ord = sample::random_ordering(&mut rng, n);
    GraphDocument::from_weighted(&wg, &ord)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn documents_round_trip(seed in any::<u64>(), n in 1usize..=9) {
        let doc = random_document(seed, n);
        let again = parse_graph(doc.to_json().as_bytes()).unwrap();
        prop_assert_eq!(&again, &doc);
        let third = parse_graph(again.to_json().as_bytes()).unwrap();
        prop_assert_eq!(third, again);
    }

    #[test]
    fn csv_reconstructs_matrices(seed in any::<u64>(), n in 1usize..=7, reverse in any::<bool>()) {
        let doc = random_document(seed, n);
        let dir = tempfile::tempdir().unwrap();
        let file = write_doc(&dir, &doc);
        let mut ord = doc.vertex_ordering();
        if reverse {
            ord = ord.reverse();
        }
        for mode in Mode::BOTH {
            let mut args = vec!["dmatrix", "--mode", if mode == Mode::Max { "max" } else { "min" }, &file];
            if reverse {
                args.push("--reverse");
            }
            let (code, csv) = run(&args);
            prop_assert_eq!(code, 0);
            let want = gain_distance_matrix(&doc.graph(), &ord, mode).unwrap();
            prop_assert!(parse_matrix_csv(&csv).unwrap().max_abs_diff(&want.matrix) <= 1e-12);

            args[0] = "dlaplacian";
            let (_, csv) = run(&args);
            let want = distance_laplacian(&doc.graph(), &ord, mode).unwrap();
            prop_assert!(parse_matrix_csv(&csv).unwrap().max_abs_diff(&want) <= 1e-12);
        }
    }

    #[test]
    fn determinant_methods_agree(seed in any::<u64>(), n in 1usize..=6) {
        let doc = random_document(seed, n);
        let dir = tempfile::tempdir().unwrap();
        let file = write_doc(&dir, &doc);
        let (c1, lu) = run(&["det", "--method", "lu", &file]);
        let (c2, forests) = run(&["det", "--method", "forests", &file]);
        prop_assert_eq!((c1, c2), (0, 0));
        let lu: f64 = lu.trim().parse().unwrap();
        let forests: f64 = forests.trim().parse().unwrap();
        // singular Laplacians leave roundoff in the LU value, so the relative
        // bound gets a floor proportional to the Hadamard scale
        let scale = gainlap::linalg::hadamard_scale(&weighted_laplacian(&doc.weighted()));
        prop_assert!((lu - forests).abs() <= 1e-7 * lu.abs() + 1e-12 * scale, "{} vs {}", lu, forests);
    }
}

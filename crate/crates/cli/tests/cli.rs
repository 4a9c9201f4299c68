//! Runs the built binary end to end.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use veronese::config::{AnyConfiguration, ConfigDocument};
use veronese::gale::{minor_vector, proportionality};
use veronese::higher::generator_set;
use veronese::bracket::BracketPolynomial;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_veronese-kit")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn sample_to(dir: &Path, name: &str, args: &[&str]) -> String {
    let out = run(&[&["sample"], args].concat());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let path = dir.join(name);
    std::fs::write(&path, &out.stdout).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn conic_sample_satisfies_every_equation() {
    let dir = tempfile::tempdir().unwrap();
    let path = sample_to(dir.path(), "conic.json", &["--kind", "rnc", "-d", "2", "-n", "9", "--seed", "5", "--field", "Q"]);
    // rational data reduce to residues without leaving the conic
    for field in [None, Some("Fp:65521")] {
        let mut args = vec!["eval", path.as_str()];
        if let Some(f) = field {
            args.extend(["--field", f]);
        }
        let out = run(&args);
        assert!(out.status.success());
        let v = json(&out);
        assert_eq!(v["schema"], "veronese-kit/1");
        assert_eq!(v["all_vanish"], true);
        assert_eq!(v["checked"], 84);
        assert_eq!(v["in_V"], true);
    }
}

#[test]
fn generic_space_configuration_has_a_witness() {
    let dir = tempfile::tempdir().unwrap();
    let path = sample_to(dir.path(), "generic.json", &["--kind", "generic", "-d", "3", "-n", "7", "--seed", "11"]);
    let v = json(&run(&["eval", &path]));
    assert_eq!(v["classification"], "NotInW");
    assert_eq!(v["in_V"], false);
    assert_eq!(v["witness"]["J"], serde_json::json!([1, 2, 3, 4, 5, 6, 7]));
    assert_eq!(v["witness"]["I"].as_array().unwrap().len(), 6);
}

#[test]
fn planar_points_in_space_are_flagged_degenerate() {
    let dir = tempfile::tempdir().unwrap();
    let path = sample_to(dir.path(), "planar.json", &["--kind", "degenerate", "-d", "3", "-n", "9", "--seed", "2"]);
    let v = json(&run(&["eval", &path]));
    assert_eq!(v["all_vanish"], true);
    assert_eq!(v["classification"], "InY");
    assert_eq!(v["in_V"], "unknown (n≥9)");
}

#[test]
fn curve_chain_sample_satisfies_the_equations() {
    let dir = tempfile::tempdir().unwrap();
    let path = sample_to(dir.path(), "chain.json", &["--kind", "chain:2,1", "-d", "3", "-n", "9", "--seed", "4"]);
    let v = json(&run(&["eval", &path]));
    assert_eq!(v["classification"], "InW_NotY");
    assert_eq!(v["in_V"], true);
}

#[test]
fn sample_output_reads_back_unchanged() {
    let dir = tempfile::tempdir().unwrap();
    for field in ["Q", "Fp:101"] {
        let path = sample_to(dir.path(), "s.json", &["--kind", "rnc", "-d", "3", "-n", "8", "--seed", "9", "--field", field]);
        let text = std::fs::read_to_string(&path).unwrap();
        let doc = ConfigDocument::from_json(&text).unwrap();
        assert_eq!(doc.seed, Some(9));
        assert_eq!(doc.read().unwrap().document(), ConfigDocument { source: None, seed: None, ..doc.clone() });
    }
}

#[test]
fn gale_round_trips_through_its_own_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = sample_to(dir.path(), "rnc.json", &["--kind", "rnc", "-d", "2", "-n", "7", "--seed", "1", "--field", "Q"]);
    let once = run(&["gale", &path]);
    assert!(once.status.success());
    let g1 = dir.path().join("g1.json");
    std::fs::write(&g1, &once.stdout).unwrap();
    let doc1 = ConfigDocument::from_json(&String::from_utf8(once.stdout).unwrap()).unwrap();
    assert_eq!((doc1.d, doc1.n), (3, 7));

    // points on a curve go to points on a curve
    assert_eq!(json(&run(&["eval", g1.to_str().unwrap()]))["classification"], "InW_NotY");

    let twice = run(&["gale", g1.to_str().unwrap()]);
    assert!(twice.status.success());
    let doc2 = ConfigDocument::from_json(&String::from_utf8(twice.stdout).unwrap()).unwrap();
    let original = ConfigDocument::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    match (original.read().unwrap(), doc2.read().unwrap()) {
        (AnyConfiguration::Rational(a), AnyConfiguration::Rational(b)) => {
            // the double transform is the original up to a change of coordinates
            let (ma, mb) = (minor_vector(&a).unwrap(), minor_vector(&b).unwrap());
            assert!(proportionality(a.field(), &ma, &mb).is_some());
        }
        _ => panic!("field changed"),
    }
}

#[test]
fn eqs_text_matches_the_library_generators() {
    let out = run(&["eqs", "-d", "3", "-n", "7"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 7);
    let gens = generator_set(3, 7).unwrap();
    for (line, g) in lines.iter().zip(gens.iter()) {
        let (label, body) = line.split_once(": ").unwrap();
        assert_eq!(label, g.label());
        assert_eq!(BracketPolynomial::parse(7, body).unwrap(), g.poly);
    }
    let first = BracketPolynomial::parse(7, "+|4567||2367||1357||1247| -|3567||2467||1457||1237|").unwrap();
    let labelled = lines.iter().find(|l| l.starts_with("[1 2 3 4 5 6] ")).unwrap();
    assert_eq!(BracketPolynomial::parse(7, labelled.split_once(": ").unwrap().1).unwrap(), first);

    assert_eq!(String::from_utf8(run(&["eqs", "-d", "2", "-n", "6"]).stdout).unwrap().lines().count(), 1);
    assert_eq!(json(&run(&["eqs", "-d", "2", "-n", "8", "--format", "json"]))["generators"].as_array().unwrap().len(), 28);
}

#[test]
fn failures_exit_nonzero_with_a_status() {
    let out = run(&["eqs", "-d", "3", "-n", "6"]);
    assert!(!out.status.success());
    assert_eq!(json(&out)["status"], "PreconditionFailed");

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"field\": \"Q\", \"d\": 2, \"n\": 1, \"columns\": [[1, 2]}").unwrap();
    let out = run(&["eval", bad.to_str().unwrap()]);
    assert!(!out.status.success());
    let v = json(&out);
    assert_eq!(v["status"], "PreconditionFailed");
    assert!(v["error"].as_str().unwrap().contains("line 1"), "{v}");

    let out = run(&["transversal", "-n", "10", "-k", "6", "--search", "exact"]);
    assert_eq!(json(&out)["status"], "BudgetExceeded");
    assert!(!out.status.success());
}

#[test]
fn transversal_reports_a_failing_partition() {
    let v = json(&run(&["transversal", "-n", "7", "-k", "6", "--edges", "[[1,2,3,4,5,6],[1,2,3,4,5,7]]"]));
    assert_eq!(v["transversal"], false);
    let blocks = v["failing_partition"].as_array().unwrap();
    assert_eq!(blocks.len(), 6);

    let v = json(&run(&["transversal", "-n", "5", "-k", "3", "--search", "exact"]));
    assert_eq!(v["smallest"]["size"], 5);
    let dir = tempfile::tempdir().unwrap();
    let edges = dir.path().join("e.json");
    std::fs::write(&edges, serde_json::to_string(&v["smallest"]["example"]).unwrap()).unwrap();
    let again = json(&run(&["transversal", "-n", "5", "-k", "3", "--edges-file", edges.to_str().unwrap()]));
    assert_eq!(again["transversal"], true);
}

#[test]
fn outputs_are_byte_stable() {
    for args in [
        vec!["sample", "--kind", "generic", "-d", "4", "-n", "9", "--seed", "3", "--field", "Q"],
        vec!["eqs", "-d", "4", "-n", "9", "--format", "json"],
        vec!["dim", "-d", "3", "-n", "8", "--seed", "5"],
    ] {
        assert_eq!(run(&args).stdout, run(&args).stdout, "{args:?}");
    }
}

#[test]
fn verify_echoes_seed_and_passes() {
    let out = run(&["verify", "--suite", "dimension", "--seed", "42"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let v = json(&out);
    assert_eq!(v["seed"], 42);
    assert_eq!(v["passed"], true);
    assert_eq!(v["checks"][0]["id"], 9);

    let out = run(&["verify", "--suite", "transversal", "--seed", "1"]);
    assert!(out.status.success());
    assert!(json(&out)["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

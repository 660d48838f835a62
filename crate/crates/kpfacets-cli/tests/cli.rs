//! End-to-end runs of the binary: frozen examples, exit codes, pipelines
//! between gen and solve/check, and byte-level determinism.

use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::Value;

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

/// Run the binary; returns (exit code, stdout, stderr).
fn run(args: &[&str], stdin: Option<&str>) -> (i32, String, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_kpfacets"));
    cmd.args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    let mut child = cmd.spawn().expect("binary spawns");
    if let Some(text) = stdin {
        child
            .stdin
            .as_mut()
            .unwrap()
            .write_all(text.as_bytes())
            .unwrap();
    }
    drop(child.stdin.take());
    let out = child.wait_with_output().expect("binary runs");
    (
        out.status.code().expect("no signal"),
        String::from_utf8(out.stdout).expect("utf-8 stdout"),
        String::from_utf8(out.stderr).expect("utf-8 stderr"),
    )
}

fn parse(stdout: &str) -> Value {
    serde_json::from_str(stdout).expect("output parses as JSON")
}

#[test]
fn facet_check_emits_a_full_certificate() {
    let (code, out, _) = run(
        &[
            "check",
            "--what",
            "facet",
            "--engine",
            "both",
            "--no-timing",
            &fixture("simplex_facet.json"),
        ],
        None,
    );
    assert_eq!(code, 0);
    let doc = parse(&out);
    assert_eq!(doc["is_facet"], Value::Bool(true));
    assert_eq!(doc["face_dim"], 2);
    assert_eq!(doc["certificate"].as_array().unwrap().len(), 3);
}

#[test]
fn validity_check_reports_the_violation() {
    let (code, out, _) = run(
        &[
            "check",
            "--what",
            "valid",
            "--engine",
            "both",
            "--no-timing",
            &fixture("violation.json"),
        ],
        None,
    );
    assert_eq!(code, 0, "evaluated fine even though the verdict is no");
    let doc = parse(&out);
    assert_eq!(doc["valid"], Value::Bool(false));
    assert_eq!(doc["violation"], serde_json::json!([1, 0, 1]));

    let (code, _, _) = run(
        &[
            "check",
            "--what",
            "valid",
            "--exit-verdict",
            &fixture("violation.json"),
        ],
        None,
    );
    assert_eq!(code, 1, "--exit-verdict maps no to 1");

    let (code, _, _) = run(
        &[
            "check",
            "--exit-verdict",
            &fixture("simplex_facet.json"),
        ],
        None,
    );
    assert_eq!(code, 0, "--exit-verdict maps yes to 0");
}

#[test]
fn unusable_input_exits_2() {
    for (args, hint) in [
        (vec!["check", &fixture("oversized_weight.json")], "full-dim"),
        (vec!["check", &fixture("bad_syntax.json")], "syntax"),
        (vec!["check", &fixture("unknown_field.json")], "unknown key"),
        (vec!["solve", "css", &fixture("simplex_facet.json")], "missing section"),
        (vec!["gu"], "no request"),
        (vec!["gu", "--r", "3"], "tau missing"),
    ] {
        let (code, out, err) = run(&args, None);
        assert_eq!(code, 2, "{hint}: {args:?} should be an input error");
        assert!(out.is_empty(), "{hint}: no document on stdout");
        assert!(!err.is_empty(), "{hint}: diagnostic on stderr");
    }
}

#[test]
fn facet_construction_is_deterministic_and_checkable() {
    let args = ["gen", "css2facets", &fixture("css_no.json")];
    let (code, first, _) = run(&args, None);
    assert_eq!(code, 0);
    let (_, second, _) = run(&args, None);
    assert_eq!(first, second, "identical inputs, identical bytes");

    let doc = parse(&first);
    assert_eq!(doc["params"]["L"], 2);
    assert_eq!(doc["params"]["r"], 6);
    assert_eq!(doc["params"]["N"], 18);
    assert_eq!(doc["instance"]["b"], 771);
    assert_eq!(doc["inequality"]["beta"], 384);
    assert_eq!(doc["instance"]["a"].as_array().unwrap().len(), 18);
    assert!(doc.get("notes").is_none(), "no repairs on a clean instance");

    // Generated documents feed straight back in; a no-instance of the
    // subset question maps to a non-facet.
    let (code, _, _) = run(
        &[
            "check",
            "--what",
            "facet",
            "--engine",
            "both",
            "--exit-verdict",
            "-",
        ],
        Some(&first),
    );
    assert_eq!(code, 1);

    // And the yes-instance maps to a facet (N = 20 here).
    let (_, gen_yes, _) = run(&["gen", "css2facets", &fixture("css_yes.json")], None);
    let (code, out, _) = run(
        &[
            "check",
            "--what",
            "facet",
            "--engine",
            "both",
            "--no-timing",
            "-",
        ],
        Some(&gen_yes),
    );
    assert_eq!(code, 0);
    let doc = parse(&out);
    assert_eq!(doc["is_facet"], Value::Bool(true));
    let n = doc["certificate"].as_array().unwrap().len();
    assert_eq!(n, parse(&gen_yes)["params"]["N"].as_u64().unwrap() as usize);
}

#[test]
fn cover_reduction_pipeline_matches_direct_solve() {
    let (code, out, _) = run(&["gen", "evc2css", &fixture("triangle_k2.json")], None);
    assert_eq!(code, 0);
    let doc = parse(&out);
    assert_eq!(doc["css"]["w"], serde_json::json!([21, 69, 81, 4, 16, 64]));
    assert_eq!(doc["css"]["t"], 86);

    let (code, solved, _) = run(&["solve", "css", "--no-timing", "-"], Some(&out));
    assert_eq!(code, 0);
    assert_eq!(parse(&solved)["answer"], Value::Bool(true));

    let (code, direct, _) = run(
        &["solve", "evc", "--no-timing", &fixture("triangle_k2.json")],
        None,
    );
    assert_eq!(code, 0);
    let direct = parse(&direct);
    assert_eq!(direct["answer"], Value::Bool(true));
    assert_eq!(direct["witness"].as_array().unwrap().len(), 2);
}

#[test]
fn membership_pipeline_decides_partition() {
    let (_, gen_out, _) = run(&["gen", "part2member", &fixture("partition_11.json")], None);
    let doc = parse(&gen_out);
    assert_eq!(doc["point"]["coords"], serde_json::json!(["1/2", "1/2"]));
    assert_eq!(doc["instance"]["a"], serde_json::json!([2, 2]));
    assert_eq!(doc["instance"]["b"], 2);

    let (code, out, _) = run(&["solve", "membership", "--no-timing", "-"], Some(&gen_out));
    assert_eq!(code, 0);
    let doc = parse(&out);
    assert_eq!(doc["answer"], Value::Bool(true));
    assert!(!doc["weights"].as_array().unwrap().is_empty());

    let (_, gen_out, _) = run(&["gen", "part2member", &fixture("partition_12.json")], None);
    let (code, out, _) = run(&["solve", "membership", "--no-timing", "-"], Some(&gen_out));
    assert_eq!(code, 0);
    assert_eq!(parse(&out)["answer"], Value::Bool(false));

    let (code, _, _) = run(
        &["solve", "membership", "--exit-verdict", "-"],
        Some(&gen_out),
    );
    assert_eq!(code, 1);
}

#[test]
fn exact_optimum_pipeline_decides_the_subset_question() {
    let (_, gen_yes, _) = run(&["gen", "css2ek", &fixture("css_yes.json")], None);
    let doc = parse(&gen_yes);
    assert!(doc["exact_knapsack"]["target"].is_number());
    let (code, out, _) = run(&["solve", "ek", "--no-timing", "-"], Some(&gen_yes));
    assert_eq!(code, 0);
    let doc = parse(&out);
    assert_eq!(doc["answer"], Value::Bool(true));
    assert!(doc["witness_point"].is_array());

    let (_, gen_no, _) = run(&["gen", "css2ek", &fixture("css_no.json")], None);
    let (code, out, _) = run(&["solve", "ek", "--no-timing", "-"], Some(&gen_no));
    assert_eq!(code, 0);
    assert_eq!(parse(&out)["answer"], Value::Bool(false));
}

#[test]
fn dimension_requests_fall_back_to_enumeration_on_zero_coefficients() {
    let (code, out, _) = run(
        &[
            "check",
            "--what",
            "dim",
            "--engine",
            "xp",
            "--no-timing",
            &fixture("tail_dim.json"),
        ],
        None,
    );
    assert_eq!(code, 0);
    let doc = parse(&out);
    assert_eq!(doc["face_dim"], 3);
    assert!(!doc["notes"].as_array().unwrap().is_empty());

    let (code, _, _) = run(
        &["check", "--what", "dim", "--engine", "both", &fixture("tail_dim.json")],
        None,
    );
    assert_eq!(code, 0, "engines agree through the fallback");
}

#[test]
fn engines_agree_across_the_corpus() {
    for file in [
        "simplex_facet.json",
        "violation.json",
        "tail_dim.json",
    ] {
        for what in ["valid", "facet"] {
            let (code, _, err) = run(
                &["check", "--what", what, "--engine", "both", &fixture(file)],
                None,
            );
            assert_eq!(code, 0, "{file}/{what}: {err}");
        }
    }
}

#[test]
fn sequence_command_prints_terms_and_decompositions() {
    let (code, out, _) = run(&["gu", "--terms", "6"], None);
    assert_eq!(code, 0);
    let doc = parse(&out);
    assert_eq!(doc["terms"], serde_json::json!([1, 1, 1, 2, 3, 5]));
    assert_eq!(doc["prefix_sums"], serde_json::json!([1, 2, 3, 5, 8, 13]));

    let (code, out, _) = run(&["gu", "--r", "3", "--tau", "17"], None);
    assert_eq!(code, 0);
    let doc = parse(&out);
    assert_eq!(doc["sum"], 17);
    let indices: Vec<u64> = doc["indices"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap())
        .collect();
    assert!(indices.windows(2).all(|p| p[0] > p[1]), "descending, distinct");

    let (code, _, err) = run(&["gu", "--r", "3", "--tau", "9999"], None);
    assert_eq!(code, 2, "unreachable target is an input error");
    assert!(!err.is_empty());
}

#[test]
fn timing_is_present_by_default_and_suppressed_on_request() {
    let args = |timing: bool| {
        let mut v = vec!["check", "--what", "valid"];
        if !timing {
            v.push("--no-timing");
        }
        v
    };
    let file = fixture("simplex_facet.json");

    let (_, out, _) = run(&[&args(true)[..], &[&file]].concat(), None);
    assert!(parse(&out)["timing_us"].is_number());

    let (_, first, _) = run(&[&args(false)[..], &[&file]].concat(), None);
    let (_, second, _) = run(&[&args(false)[..], &[&file]].concat(), None);
    assert!(parse(&first).get("timing_us").is_none());
    assert_eq!(first, second, "suppressed timing makes runs byte-identical");
}

//! End-to-end tests of the `trivalent` binary: pinned text output, JSON
//! record shapes, golden-file table rendering, and exit codes.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trivalent"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "`{}` failed:\n{}",
        args.join(" "),
        String::from_utf8_lossy(&out.stderr),
    );
    String::from_utf8(out.stdout).expect("output is UTF-8")
}

fn json_of(args: &[&str]) -> Value {
    let text = stdout_of(args);
    serde_json::from_str(&text).unwrap_or_else(|e| panic!("bad JSON ({e}):\n{text}"))
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("not killed by a signal")
}

fn fixture(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name);
    std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("cannot read golden file {}: {e}", path.display()))
}

#[test]
fn check_reports_the_pinned_counterexample() {
    assert_eq!(
        stdout_of(&[
            "check",
            "--scheme",
            "SK/SK",
            "--standard",
            "tt",
            "p | (q & ~q) => p",
        ]),
        "invalid\ncounterexample: p=0, q=1/2\n",
    );
}

#[test]
fn check_json_record_carries_the_counterexample() {
    let record = json_of(&[
        "--json",
        "check",
        "--scheme",
        "SK/SK",
        "--standard",
        "tt",
        "p | (q & ~q) => p",
    ]);
    assert_eq!(record["scheme"], "SK/SK");
    assert_eq!(record["standard"], "tt");
    assert_eq!(record["inference"], "p | (q & ~q) => p");
    assert_eq!(record["valid"], false);
    assert_eq!(record["counterexample"]["p"], "0");
    assert_eq!(record["counterexample"]["q"], "1/2");
}

#[test]
fn interpolate_prints_the_interpolant_and_both_legs() {
    assert_eq!(
        stdout_of(&[
            "interpolate",
            "--scheme",
            "SK/SK",
            "--std1",
            "ss",
            "--std2",
            "tt",
            "p | (q & ~q)",
            "p | q",
        ]),
        "interpolant: ~(~p & ~(p & q) & ~(p & ~q))\n\
         strategy: C\n\
         leg 1 (ss): valid\n\
         leg 2 (tt): valid\n",
    );
}

#[test]
fn interpolate_json_record_for_a_found_interpolant() {
    let record = json_of(&[
        "--json",
        "interpolate",
        "--scheme",
        "SK/SK",
        "--std1",
        "ss",
        "--std2",
        "tt",
        "p | (q & ~q)",
        "p | q",
    ]);
    assert_eq!(record["outcome"], "interpolant");
    assert_eq!(record["strategy"], "C");
    assert_eq!(record["chi"], "~(~p & ~(p & q) & ~(p & ~q))");
    assert_eq!(record["ss_leg"], true);
    assert_eq!(record["tt_leg"], true);
    let stats = &record["stats"];
    assert!(stats["valuations_scanned"].as_u64().unwrap() > 0);
    assert!(stats["clauses"].as_u64().unwrap() > 0);
    assert!(stats["dedup_count"].is_u64());
    assert!(record.get("certificate").is_none());
}

#[test]
fn interpolate_json_record_for_a_blocked_refusal() {
    let record = json_of(&[
        "--json",
        "interpolate",
        "--scheme",
        "SK/SK",
        "--std1",
        "ss",
        "--std2",
        "tt",
        "p | q",
        "q | ~q",
    ]);
    assert_eq!(record["outcome"], "no_interpolant");
    assert_eq!(record["strategy"], Value::Null);
    assert_eq!(record["chi"], Value::Null);
    assert_eq!(record["block"]["premise_witness"]["p"], "1");
    assert_eq!(record["block"]["premise_witness"]["q"], "1/2");
    assert_eq!(record["block"]["conclusion_witness"], Value::Null);
    assert_eq!(record["certificate"]["kind"], "blocked");
    assert_eq!(record["certificate"]["side"], "premise");
    assert_eq!(record["certificate"]["witness"]["q"], "1/2");
    assert_eq!(record["certificate"]["clone_elements_checked"], 4);
}

#[test]
fn interpolate_json_record_for_a_classically_invalid_pair() {
    let record = json_of(&[
        "--json",
        "interpolate",
        "--scheme",
        "SK/SK",
        "--std1",
        "ss",
        "--std2",
        "tt",
        "p | q",
        "p & q",
    ]);
    assert_eq!(record["outcome"], "not_classically_valid");
    assert!(record["counterexample"].is_object());
}

#[test]
fn eval_renders_values_in_fraction_notation() {
    assert_eq!(
        stdout_of(&[
            "eval",
            "--scheme",
            "WK/WK",
            "--valuation",
            "p=1, q=1/2",
            "p | q",
        ]),
        "1/2\n",
    );
    // The flag syntax without spaces parses too.
    assert_eq!(
        stdout_of(&["eval", "--scheme", "SK/SK", "--valuation", "p=1,q=1/2,r=0", "r"]),
        "0\n",
    );
}

#[test]
fn eval_json_record_echoes_the_inputs() {
    let record = json_of(&["--json", "eval", "--scheme", "SK/SK", "--valuation", "p=1/2", "~p"]);
    assert_eq!(record["scheme"], "SK/SK");
    assert_eq!(record["valuation"]["p"], "1/2");
    assert_eq!(record["formula"], "~p");
    assert_eq!(record["value"], "1/2");
}

#[test]
fn schemes_lists_all_sixteen_with_their_unsettled_cells() {
    let text = stdout_of(&["schemes"]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 16);
    assert_eq!(lines[0], "SK/SK: 0&1/2=0, 1/2&0=0, 1|1/2=1, 1/2|1=1");
    assert_eq!(lines[1], "SK/WK: 0&1/2=0, 1/2&0=0, 1|1/2=1/2, 1/2|1=1/2");
    assert_eq!(lines[15], "RMK/RMK: 0&1/2=1/2, 1/2&0=0, 1|1/2=1/2, 1/2|1=1");
    // Canonical order: conjunction choice varies slowest.
    let prefixes: Vec<&str> = lines
        .iter()
        .map(|l| l.split(':').next().unwrap())
        .collect();
    let conj_order: Vec<&str> = prefixes
        .iter()
        .map(|p| p.split('/').next().unwrap())
        .collect();
    assert_eq!(
        conj_order,
        ["SK"; 4]
            .into_iter()
            .chain(["WK"; 4])
            .chain(["LMK"; 4])
            .chain(["RMK"; 4])
            .collect::<Vec<_>>(),
    );
}

#[test]
fn schemes_json_is_an_array_of_sixteen_records() {
    let records = json_of(&["--json", "schemes"]);
    let records = records.as_array().expect("an array");
    assert_eq!(records.len(), 16);
    assert_eq!(records[0]["scheme"], "SK/SK");
    let unsettled = records[0]["unsettled"].as_array().expect("an array");
    assert_eq!(unsettled.len(), 4);
    assert_eq!(unsettled[0]["connective"], "&");
    assert_eq!(unsettled[0]["left"], "0");
    assert_eq!(unsettled[0]["right"], "1/2");
    assert_eq!(unsettled[0]["value"], "0");
}

#[test]
fn table_output_matches_the_golden_files() {
    for (kind, file) in [
        ("independent", "table_independent.txt"),
        ("schemes", "table_schemes.txt"),
        ("full", "table_full.txt"),
    ] {
        assert_eq!(
            stdout_of(&["table", "--kind", kind]),
            fixture(file),
            "table --kind {kind} diverges from its golden file",
        );
    }
}

#[test]
fn table_json_record_embeds_the_rendered_grid() {
    let record = json_of(&["--json", "--jobs", "2", "table", "--kind", "schemes"]);
    assert_eq!(record["kind"], "schemes");
    assert_eq!(record["format"], "text");
    assert_eq!(record["content"], fixture("table_schemes.txt"));
}

#[test]
fn classify_single_cell_prints_a_verdict_line() {
    assert_eq!(
        stdout_of(&["classify", "--scheme", "SK/SK", "--std1", "ss", "--std2", "tt"]),
        "SK/SK (ss, tt): holds (464703 pairs on 1179 formulas over p, q, r up to \
         depth 2; 430863 synthesized, 33840 blocked-confirmed)\n",
    );
    assert_eq!(
        stdout_of(&["classify", "--scheme", "WK/LMK", "--std1", "ss", "--std2", "tt"]),
        "WK/LMK (ss, tt): fails (p & q => (r | q) & (~r | p); no definable \
         interpolant over 2 shared atom(s); 56 functions checked)\n",
    );
}

#[test]
fn classify_json_is_an_array_of_cell_records() {
    let records = json_of(&[
        "--json",
        "classify",
        "--scheme",
        "SK/SK",
        "--std1",
        "ss",
        "--std2",
        "tt",
    ]);
    let records = records.as_array().expect("an array");
    assert_eq!(records.len(), 1);
    let record = &records[0];
    assert_eq!(record["cell"]["scheme"], "SK/SK");
    assert_eq!(record["cell"]["std1"], "ss");
    assert_eq!(record["cell"]["std2"], "tt");
    assert_eq!(record["status"], "holds");
    assert_eq!(
        record["pairs_checked"].as_u64().unwrap(),
        record["synthesized_verified"].as_u64().unwrap()
            + record["blocked_confirmed"].as_u64().unwrap(),
    );
}

#[test]
fn clone_prints_the_count_and_dumps_elements() {
    assert_eq!(
        stdout_of(&["clone", "--scheme", "SK/SK", "--arity", "1"]),
        "4 definable functions of arity 1 under SK/SK\n",
    );
    assert_eq!(
        stdout_of(&["clone", "--scheme", "SK/SK", "--arity", "1", "--dump"]),
        "4 definable functions of arity 1 under SK/SK\n\
         a : [0, 1/2, 1]\n\
         ~a : [1, 1/2, 0]\n\
         ~a & a : [0, 1/2, 0]\n\
         ~a | a : [1, 1/2, 1]\n",
    );
}

#[test]
fn clone_json_record_lists_elements_only_when_dumping() {
    let record = json_of(&["--json", "clone", "--scheme", "SK/SK", "--arity", "1"]);
    assert_eq!(record["scheme"], "SK/SK");
    assert_eq!(record["arity"], 1);
    assert_eq!(record["atoms"], serde_json::json!(["a"]));
    assert_eq!(record["count"], 4);
    assert!(record.get("elements").is_none());

    let record = json_of(&["--json", "clone", "--scheme", "SK/SK", "--arity", "1", "--dump"]);
    let elements = record["elements"].as_array().expect("an array");
    assert_eq!(elements.len(), 4);
    assert_eq!(elements[0]["witness"], "a");
    assert_eq!(elements[0]["outputs"], serde_json::json!(["0", "1/2", "1"]));
}

#[test]
fn clone_arity_cap_is_enforced_and_env_overridable() {
    let refused = run(&["clone", "--scheme", "WK/WK", "--arity", "3"]);
    assert_eq!(exit_code(&refused), 1);
    assert!(
        String::from_utf8_lossy(&refused.stderr).contains("TRIVALENT_ARITY_CAP"),
        "the refusal names the override knob",
    );

    let raised = Command::new(env!("CARGO_BIN_EXE_trivalent"))
        .args(["clone", "--scheme", "WK/WK", "--arity", "3"])
        .env("TRIVALENT_ARITY_CAP", "3")
        .output()
        .expect("binary runs");
    assert_eq!(exit_code(&raised), 0);
    assert!(String::from_utf8_lossy(&raised.stdout)
        .starts_with("316 definable functions of arity 3 under WK/WK"));
}

#[test]
fn exit_codes_separate_usage_errors_from_results() {
    // Computed outcomes — even negative verdicts — exit 0.
    assert_eq!(exit_code(&run(&["--help"])), 0);
    assert_eq!(exit_code(&run(&["--version"])), 0);
    assert_eq!(
        exit_code(&run(&[
            "check",
            "--scheme",
            "SK/SK",
            "--standard",
            "tt",
            "p | (q & ~q) => p",
        ])),
        0,
    );

    // Usage and parse errors exit 1.
    assert_eq!(exit_code(&run(&[])), 1);
    assert_eq!(exit_code(&run(&["frobnicate"])), 1);
    assert_eq!(exit_code(&run(&["eval", "--scheme", "XX/YY", "--valuation", "p=1", "p"])), 1);
    assert_eq!(
        exit_code(&run(&["eval", "--scheme", "SK/SK", "--valuation", "p=2", "p"])),
        1,
    );
    assert_eq!(
        exit_code(&run(&["check", "--scheme", "SK/SK", "--standard", "tt", "p | | q => p"])),
        1,
    );

    // Unsupported standard pairs are usage errors, not crashes.
    let unsupported = run(&[
        "interpolate",
        "--scheme",
        "SK/SK",
        "--std1",
        "tt",
        "--std2",
        "tt",
        "p",
        "p",
    ]);
    assert_eq!(exit_code(&unsupported), 1);
    assert!(String::from_utf8_lossy(&unsupported.stderr).contains("unsupported standard pair"));
}

#[test]
fn usage_errors_print_a_synopsis() {
    let out = run(&["eval", "--scheme", "SK/SK"]);
    assert_eq!(exit_code(&out), 1);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("Usage"), "missing synopsis:\n{stderr}");
}

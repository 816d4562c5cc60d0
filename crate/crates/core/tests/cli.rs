//! Runs the `gorenstein` binary on the fixture files: exit-code contract,
//! report contents and byte-identical golden output.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

/// Runs from inside the fixture directory so the command echo is stable.
fn run(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_gorenstein"))
        .args(args)
        .current_dir(fixtures())
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().expect("exit code"),
    )
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = args.to_vec();
    all.push("--json");
    let (out, err, _) = run(&all);
    serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out}{err}"))
}

#[test]
fn exit_codes() {
    let cases: &[(&[&str], i32)] = &[
        (&["analyze", "a_1.alg"], 0),
        (&["analyze", "x_only.alg"], 3),
        (&["analyze", "non_local.alg"], 4),
        (&["analyze", "bad_syntax.alg"], 2),
        (&["analyze", "unknown_key.alg"], 2),
        (&["analyze", "no_such_file.alg"], 2),
        (&["analyze", "a_2.alg"], 3),
        (&["nilpoly", "non_gorenstein.alg"], 5),
        (&["invsys", "non_gorenstein.alg"], 5),
        (&["invsys", "a_1.alg", "--complement", "x^2, y"], 6),
        (&["invsys", "x2.alg", "--verify", "y2.inv"], 1),
        (&["invsys", "x3.alg", "--verify", "y2.inv"], 0),
        (&["isocheck", "a_1.alg", "a_3.alg"], 1),
        (&["isocheck", "a_1.alg", "a_m1.alg"], 0),
        (&["isocheck", "a_1.alg", "a_1.alg"], 0),
        (&["isocheck", "x2y2.alg", "xy_diff.alg"], 7),
        (&["isocheck", "x3.alg", "non_gorenstein.alg"], 5),
        (&["--order", "sideways", "analyze", "x3.alg"], 2),
        (&["frobnicate"], 2),
    ];
    for (args, code) in cases {
        let (out, err, got) = run(args);
        assert_eq!(got, *code, "{args:?}\nstdout: {out}\nstderr: {err}");
        if (2..=6).contains(code) {
            assert!(!err.is_empty(), "{args:?} should explain the failure");
        }
    }
}

#[test]
fn analyze_reports() {
    let v = json(&["analyze", "a_1.alg"]);
    let s = &v["structure"][0];
    assert_eq!(s["dimension"], 15);
    assert_eq!(s["gorenstein"], true);
    assert_eq!(s["nil_index"], 7);
    assert_eq!(s["embedding_dimension"], 2);
    assert_eq!(s["grading"]["weights"], serde_json::json!([3, 2]));
    assert_eq!(s["grading"]["dims"]["6"], 2);
    assert_eq!(s["grading"]["dims"]["8"], 2);

    let v = json(&["analyze", "x2.alg"]);
    assert_eq!(v["structure"][0]["dimension"], 2);
    assert_eq!(v["structure"][0]["nil_index"], 1);

    // weighted order from the command line
    let v = json(&["--order", "weighted:3,2", "analyze", "a_1_plain.alg"]);
    assert_eq!(v["structure"][0]["dimension"], 15);
}

fn coefficient(v: &serde_json::Value, monomial: &str) -> String {
    v["nil_polynomial"]["coefficients"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["monomial"] == monomial)
        .map(|c| c["coefficient"].as_str().unwrap().to_string())
        .unwrap_or_else(|| panic!("no {monomial}"))
}

#[test]
fn nilpoly_reports() {
    let v = json(&["nilpoly", "a_1_plain.alg", "--basis-file", "at_basis.txt"]);
    assert_eq!(coefficient(&v, "a2^7"), "1/10080");
    assert_eq!(coefficient(&v, "a1^2*a2^4"), "-1/48");
    assert_eq!(v["nil_polynomial"]["degree_matches_nil_index"], true);
    assert_eq!(v["nil_polynomial"]["blaschke"]["normal_form"], true);

    let (out, _, code) = run(&["nilpoly", "x3.alg"]);
    assert_eq!(code, 0);
    let entries: Vec<&str> = out
        .lines()
        .skip_while(|l| *l != "coefficients:")
        .skip(1)
        .take_while(|l| l.starts_with("  "))
        .collect();
    assert_eq!(entries, ["  a1^2: -1/2"]);

    let v = json(&["nilpoly", "a_1.alg", "--translate", "x"]);
    let t = &v["nil_polynomial"]["translation"];
    assert_eq!(t["graph_translation_holds"], true);
    assert_eq!(t["element"], "x");
}

#[test]
fn invsys_reports() {
    let v = json(&["invsys", "a_1.alg"]);
    let inv = &v["inverse_system"];
    assert_eq!(inv["verdict"], true);
    assert_eq!(inv["span_dimension"], 15);
    assert_eq!(inv["negated"], "1/10080*y^7 - 1/48*x^2*y^4 + 1/48*x^4*y");

    let v = json(&["invsys", "a_1.alg", "--verify", "mu1.inv"]);
    assert_eq!(v["inverse_system"]["verdict"], true);

    let v = json(&["invsys", "a_1.alg", "--complement", "x + y^2, y + x*y"]);
    assert_eq!(v["inverse_system"]["verdict"], true);

    let v = json(&["invsys", "x2.alg", "--verify", "y2.inv"]);
    assert_eq!(v["inverse_system"]["verdict"], false);
    assert_eq!(v["inverse_system"]["failing_generator"], "x^2");
}

#[test]
fn isocheck_reports() {
    let v = json(&["isocheck", "a_1.alg", "a_3.alg"]);
    let i = &v["isomorphism"];
    assert_eq!(i["verdict"], "NOT_ISOMORPHIC");
    assert_eq!(i["refuting_degrees"], serde_json::json!([7, 6, 5]));

    let v = json(&["isocheck", "a_1.alg", "a_m1.alg"]);
    let i = &v["isomorphism"];
    assert_eq!(i["verdict"], "ISOMORPHIC");
    assert_eq!(i["witness"]["verified"], true);
    assert_eq!(i["witness"]["matrix"][1][1], "-1/1");

    let v = json(&["isocheck", "a_1.alg", "a_m1.alg", "--subst", "flip.subst"]);
    assert_eq!(v["isomorphism"]["mode"], "subst");
    assert_eq!(v["isomorphism"]["verdict"], "ISOMORPHIC");

    let (_, _, code) = run(&["isocheck", "a_1.alg", "a_1.alg", "--subst", "flip.subst"]);
    assert_eq!(code, 1);

    let v = json(&[
        "isocheck",
        "x2y2.alg",
        "x2y2.alg",
        "--candidate",
        "identity2.cand",
    ]);
    assert_eq!(v["isomorphism"]["verdict"], "ISOMORPHIC");

    let v = json(&["isocheck", "a_1.alg", "a_3.alg", "--degrees", "7"]);
    assert_eq!(v["isomorphism"]["degrees"], serde_json::json!([7]));
}

#[test]
fn rationals_are_fraction_strings() {
    let (out, _, _) = run(&["nilpoly", "a_1.alg", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    for c in v["nil_polynomial"]["coefficients"].as_array().unwrap() {
        let s = c["coefficient"].as_str().unwrap();
        let (p, q) = s.split_once('/').expect("p/q");
        p.parse::<i64>().unwrap();
        q.parse::<u64>().unwrap();
    }
}

const GOLDEN: &[(&str, &[&str])] = &[
    ("analyze_a1.txt", &["analyze", "a_1.alg"]),
    ("nilpoly_x3.json", &["nilpoly", "x3.alg", "--json"]),
    ("nilpoly_a1.txt", &["nilpoly", "a_1.alg"]),
    ("invsys_a1.json", &["invsys", "a_1.alg", "--json"]),
    ("isocheck_a1_a3.txt", &["isocheck", "a_1.alg", "a_3.alg"]),
    (
        "isocheck_a1_am1.json",
        &["isocheck", "a_1.alg", "a_m1.alg", "--json"],
    ),
];

#[test]
fn golden_reports_are_byte_identical() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for (name, args) in GOLDEN {
        let (first, _, _) = run(args);
        let (second, _, _) = run(args);
        assert_eq!(first, second, "{name}: two runs differ");
        let path = dir.join(name);
        if update {
            fs::create_dir_all(&dir).unwrap();
            fs::write(&path, &first).unwrap();
        }
        let want = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(first, want, "{name} drifted from its golden file");
    }
}

use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn glrack(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_glrack"))
        .args(args)
        .env_remove("GLRACK_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

#[test]
fn unknot_under_permutation_rack_has_no_colorings() {
    let o = glrack(&["color", &data("permutation3.glrack"), &data("unknot.front")]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "total 0\nmethod perm\n");
}

#[test]
fn block_table_for_trefoil() {
    let o = glrack(&["color", &data("mixed6.glrack"), &data("trefoil.front"), "--method", "blocks"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "total 2\nmethod blocks\nblocks\n  B_1 {1, 2} c=1 block: 2 (backtrack)\n  B_2 {3, 4, 5, 6} c=2 block: 0 (backtrack)\n"
    );
}

#[test]
fn trefoil_invariants() {
    let o = glrack(&["invariants", &data("trefoil.front")]);
    assert_eq!(stdout(&o), "arcs 3\ntb 1\nrot 0\nwrithe 3\nup cusps 2\ndown cusps 2\n");
    let j = json(&glrack(&["--format", "json", "invariants", &data("trefoil.front")]));
    assert_eq!(j["format"], "glrack/1");
    assert_eq!(j["tb"], 1);
    assert_eq!(j["rot"], 0);
}

#[test]
fn lift_table_in_json() {
    let o = glrack(&["--format", "json", "color", &data("block6.glrack"), &data("trefoil.front"), "--method", "lifts"]);
    assert!(o.status.success());
    let j = json(&o);
    assert_eq!(j["kind"], "coloring");
    assert_eq!(j["total"], 0);
    assert_eq!(j["lifts"]["block_size"], 2);
    let counts: Vec<u64> = j["lifts"]["lifts"]
        .as_array()
        .unwrap()
        .iter()
        .map(|l| l["count"].as_u64().unwrap())
        .collect();
    assert_eq!(counts, [0, 0, 0]);
    assert_eq!(j["lifts"]["points"], serde_json::json!([[1, 2], [3, 5], [4, 6]]));
}

#[test]
fn every_method_agrees_with_auto() {
    for rack in ["permutation3.glrack", "block6.glrack", "mixed6.glrack", "quotient3.glrack"] {
        for knot in ["unknot.front", "trefoil.front"] {
            let total = |m: &str| {
                let o = glrack(&["--format", "json", "color", &data(rack), &data(knot), "--method", m]);
                o.status.success().then(|| json(&o)["total"].as_u64().unwrap())
            };
            let auto = total("auto").unwrap();
            for m in ["brute", "backtrack", "blocks", "lifts", "perm"] {
                if let Some(t) = total(m) {
                    assert_eq!(t, auto, "{rack} {knot} {m}");
                }
            }
        }
    }
}

#[test]
fn method_mismatch_is_a_clear_error() {
    let o = glrack(&["color", &data("mixed6.glrack"), &data("trefoil.front"), "--method", "perm"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not a permutation GL-rack"));
    let o = glrack(&["color", &data("mixed6.glrack"), &data("trefoil.front"), "--method", "lifts"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not a block GL-rack"));
}

#[test]
fn budget_refusal_is_surfaced() {
    let o = Command::new(env!("CARGO_BIN_EXE_glrack"))
        .args(["color", &data("mixed6.glrack"), &data("trefoil.front"), "--method", "brute"])
        .env("GLRACK_BUDGET", "100")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("brute force needs 216 evaluations, budget is 100"));
}

#[test]
fn validation_exit_codes() {
    let o = glrack(&["validate", &data("block6.glrack")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "valid\n");

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.glrack");
    std::fs::write(&bad, "glrack\nn 3\nstar\n2 2 2\n3 3 3\n1 1 1\nu 1 2 3\nd 1 2 3\n").unwrap();
    let o = glrack(&["validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("invalid\n"));

    let broken = dir.path().join("broken.glrack");
    std::fs::write(&broken, "glrack\nn 3\nstar\n2 2 2\n3 9 3\n1 1 1\nu 1 2 3\nd 3 1 2\n").unwrap();
    let o = glrack(&["validate", broken.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 5, column 3"), "{}", stderr(&o));
}

#[test]
fn unknown_flags_are_rejected() {
    let o = glrack(&["color", "--frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn stabilize_writes_a_code() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.front");
    let o = glrack(&[
        "stabilize",
        &data("trefoil.front"),
        "--plus",
        "2",
        "--minus",
        "1",
        "--at",
        "2",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let written = std::fs::read_to_string(&out).unwrap();
    assert_eq!(written, "front\narcs 3\nrel 1 1 + 3\nrel 2 4 + 1\nrel 1 1 + 2\n");
    let inv = glrack(&["invariants", out.to_str().unwrap()]);
    assert!(stdout(&inv).contains("tb -2\nrot 1\n"));
    let o = glrack(&["stabilize", &data("trefoil.front"), "--at", "4"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn decompose_mirrors_the_support_layout() {
    let o = glrack(&["decompose", &data("mixed6.glrack")]);
    let s = stdout(&o);
    assert!(s.contains("delta (3 5)(4 6)\n"));
    assert!(s.contains("A_3 = {3, 5}\nA_4 = {4, 6}\n"));
    assert!(s.contains("B_2 = {3, 4, 5, 6}  cycle length 2, block\n  quotient points: {3, 5} {4, 6}\n"));
    let j = json(&glrack(&["--format", "json", "decompose", &data("block6.glrack")]));
    assert_eq!(j["classification"], "block GL-rack");
    assert_eq!(j["groups"][0]["quotient"]["table"], serde_json::json!([[1, 1, 1], [3, 2, 2], [2, 3, 3]]));
}

#[test]
fn census_dump_and_summary() {
    let o = glrack(&["census", "--order", "2"]);
    assert!(o.status.success());
    assert!(stdout(&o).ends_with("order 2: 2 racks, 4 gl-racks, 4 classes\n"));
    let o = glrack(&["census", "--order", "3", "--up-to-iso"]);
    let s = stdout(&o);
    let records = s.matches("---").count();
    assert!(s.ends_with(&format!("{records} classes\n")));
    let o = glrack(&["census", "--order", "6"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn check_runs_suites_and_dumps_failures() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("corpus");
    std::fs::create_dir(&corpus).unwrap();
    std::fs::copy(data("trefoil.front"), corpus.join("trefoil.front")).unwrap();
    let o = glrack(&[
        "check",
        "--suite",
        "block-sum",
        "--racks",
        &data("mixed6.glrack"),
        "--corpus",
        corpus.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "block-sum: pass (1 cases, 0 failures)\n");

    let o = glrack(&["check", "--suite", "glquandle-stabilization", "--racks", &data("quotient3.glrack")]);
    assert!(o.status.success(), "{}", stdout(&o));

    let o = glrack(&["check", "--suite", "nonsense"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn exploratory_mode_reports_without_failing() {
    let o = glrack(&[
        "--format",
        "json",
        "check",
        "--suite",
        "block-sum",
        "--racks",
        &data("block6.glrack"),
        "--explore",
    ]);
    assert!(o.status.success());
    assert!(json(&o)["exploratory"].is_array());
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = ["--format", "json", "color", &data("block6.glrack"), &data("trefoil.front"), "--method", "auto"];
    let a = glrack(&args);
    let b = glrack(&args);
    assert_eq!(a.stdout, b.stdout);
    let a = glrack(&["census", "--order", "3", "--up-to-iso"]);
    let b = glrack(&["census", "--order", "3", "--up-to-iso"]);
    assert_eq!(a.stdout, b.stdout);
}

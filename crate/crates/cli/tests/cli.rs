use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_twistbench"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn fixture_path(name: &str) -> String {
    fixtures_dir().join(name).to_string_lossy().into_owned()
}

#[test]
fn verify_rank22_fixture() {
    let o = run(&["verify", &fixture_path("double_c2x3_rank22.json")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().next().unwrap(), "22 simples, N=4, ξ=1, D=64, all checks pass");
    assert!(text.contains("twist spectrum {1: 8, z4: 28, z4^3: 28}"));
}

#[test]
fn verify_empty_input_is_a_usage_error() {
    assert_eq!(run(&["verify", "/dev/null"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "/no/such/file.json"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["classify", "--twists", "4"]).status.code(), Some(2));
}

#[test]
fn verify_failing_data_exits_one() {
    let dir = std::env::temp_dir().join(format!("twistbench-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    // semion S with the wrong twist on the nontrivial simple
    let path = dir.join("bad.json");
    let text = std::fs::read_to_string(fixtures_dir().join("semion.json")).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["T"][1] = serde_json::json!([1, 2]);
    std::fs::write(&path, v.to_string()).unwrap();
    let o = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert!(stdout(&o).contains("FAIL"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn verify_json_reports_the_checks() {
    let o = run(&["--json", "verify", &fixture_path("fibonacci.json")]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["report"]["rank"], 2);
    assert_eq!(v["report"]["fs_exponent"], 5);
}

#[test]
fn classify_two_twists_json() {
    let o = run(&["--json", "classify", "--twists", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v["rows"].as_array().unwrap();
    let names: Vec<&str> = rows.iter().map(|r| r["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["C(C2,q)", "C(C3,q)", "C(sl2,5,q)_ad"]);
    let counts: Vec<u64> = rows.iter().map(|r| r["classes"].as_u64().unwrap()).collect();
    assert_eq!(counts, [2, 2, 4]);
    let n2 = v["cases"].as_array().unwrap().iter().find(|c| c["n"] == 2).unwrap();
    assert_eq!(n2["status"], "infinite_family");
}

#[test]
fn classify_two_twists_csv_has_family_marker_and_certificates() {
    let o = run(&["classify", "--twists", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("name,classes,fpdim,twists,N,listed\n"));
    assert!(text.contains("\"(5 + √5)/2\""));
    assert!(text.contains("family: twists {1, −1}, D = 2^(2m)"));
    assert!(text.contains("N=120 Empty"));
    assert!(text.contains("[computed]"));
    assert!(text.contains("[cited]"));
}

#[test]
fn classify_three_twists_compare_exits_one_on_the_extra_row() {
    let o = run(&["classify", "--twists", "3", "--compare", "--no-certs"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("\"C(sl2,5,q)_ad⊠C(sl2,5,q)_ad\",-,4,false,false,false"));
    assert!(text.contains("family: twists {1, ζ3, ζ3²}"));
    assert!(text.contains("\n6,0,0\n"));
}

#[test]
fn classify_is_identical_across_runs_and_thread_counts() {
    let one = bin().env("TWISTBENCH_THREADS", "1").args(["--json", "classify", "--twists", "3"]).output().unwrap();
    let four = bin().env("TWISTBENCH_THREADS", "4").args(["--json", "classify", "--twists", "3"]).output().unwrap();
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    let again = run(&["classify", "--twists", "2"]);
    assert_eq!(again.stdout, run(&["classify", "--twists", "2"]).stdout);
}

#[test]
fn emitted_double_reverifies_byte_stable() {
    let dir = std::env::temp_dir().join(format!("twistbench-emit-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("c2x3.json");
    let p = path.to_str().unwrap();
    let o = run(&["double", "--group", "2,2,2", "--omega-index", "127", "--emit", p, "--traces"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("22 simples, N=4, ξ=1, D=64, all checks pass"));
    let first = std::fs::read(&path).unwrap();
    let o = run(&["verify", p]);
    assert_eq!(o.status.code(), Some(0));
    let md = twistbench::moddata::ModularData::from_json(std::str::from_utf8(&first).unwrap()).unwrap();
    assert_eq!(md.to_json_pretty() + "\n", String::from_utf8(first).unwrap());
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn double_scan_lists_one_three_twist_class_on_c2_cubed() {
    let o = run(&["double", "--scan", "--group", "2", "--group", "2,2", "--group", "4", "--group", "2,2,2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let three: Vec<&str> = text.lines().filter(|l| l.starts_with("C_2×C_2×C_2,") && l.matches(' ').count() == 2).collect();
    assert_eq!(three, ["C_2×C_2×C_2,127,22,4,\"1 z4 z4^3\""]);
}

#[test]
fn double_rejects_out_of_range_omega() {
    assert_eq!(run(&["double", "--group", "2", "--omega-index", "2"]).status.code(), Some(2));
}

#[test]
fn metric_counts_and_twist_filter() {
    let o = run(&["metric", "--group", "2", "--list"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("2 forms on C_2\n"));
    let o = run(&["metric", "--group", "4,4", "--classes", "--twists", "1,i,z4^3"]);
    assert!(stdout(&o).starts_with("1 forms on C_4×C_4"), "{}", stdout(&o));
    assert_eq!(run(&["metric", "--group", "0"]).status.code(), Some(2));
}

#[test]
fn dnumber_verbs() {
    let o = run(&["dnumber", "5/2", "1/2"]);
    assert!(stdout(&o).contains("d-number true"));
    let o = run(&["dnumber", "1", "2"]);
    assert!(stdout(&o).contains("d-number false"), "{}", stdout(&o));
    let o = run(&["dnumber", "--window", "1", "18"]);
    assert!(stdout(&o).starts_with("5 d-numbers"));
    let o = run(&["dnumber", "--sqrt2-scan", "12", "20"]);
    assert!(stdout(&o).contains(", 0 with α − 1 a d-number"));
}

#[test]
fn sl2_verbs() {
    let o = run(&["sl2", "--admissible", "z7,z7^2,z7^4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1);
    let o = run(&["sl2", "--regenerate"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("level 12: 18 rows, 0 mismatches"));
    let o = run(&["sl2", "--table", "2"]);
    assert!(stdout(&o).starts_with("name,level,dim,spectrum\n"));
    assert_eq!(run(&["sl2"]).status.code(), Some(2));
}

#[test]
fn galois_verb() {
    let o = run(&["galois", "--fixture", "fibonacci", "--k", "7"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("t relation holds: true"));
    assert_eq!(run(&["galois", "--fixture", "fibonacci", "--k", "2"]).status.code(), Some(2));
}

#[test]
fn fixture_directory_checks_out() {
    let o = run(&["fixtures", "--check", fixtures_dir().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = run(&["fixtures"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 9);
}

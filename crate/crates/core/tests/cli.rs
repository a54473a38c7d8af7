//! End-to-end checks of the command-line interface: output formats, exit
//! codes, environment knobs, and determinism across thread counts.

use std::io::Write as _;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_cochad"));
    c.env_remove("COCHAD_BUDGET");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn cochad")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf8 stdout")
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).expect("utf8 stderr")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn enumerate_count_matches_the_abelian_census() {
    let o = run(&["enumerate", "--group", "z", "--t", "3", "--count-only"]);
    assert_eq!(code(&o), 0, "stderr: {}", stderr(&o));
    assert_eq!(stdout(&o), "count=24\n");
}

#[test]
fn enumerate_without_count_only_lists_matrices() {
    let o = run(&["enumerate", "--group", "z", "--t", "1"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.ends_with("count=6\n"));
    // Six order-4 blocks, each four sign rows and a trailing blank line.
    let blocks = text.matches("\n\n").count();
    assert_eq!(blocks, 6);
    assert!(text.starts_with("++++\n"));
}

#[test]
fn verify_published_dihedral_row_is_hadamard() {
    let o = run(&[
        "verify", "--group", "d", "--t", "5", "--cob", "2,3,5,7,10,11,12,17",
    ]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.starts_with("HADAMARD order=20\n"));
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 20);
    assert!(rows.iter().all(|r| r.len() == 20));
}

#[test]
fn verify_single_coboundary_is_not_hadamard() {
    let o = run(&["verify", "--group", "z", "--t", "3", "--cob", "2"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).starts_with("NOT HADAMARD\n"));
}

#[test]
fn verify_json_reports_one_object() {
    let o = run(&[
        "verify", "--group", "z", "--t", "3", "--cob", "2,3,4", "--json",
    ]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 1);
    let v: serde_json::Value = serde_json::from_str(text.trim()).unwrap();
    assert_eq!(v["hadamard"], serde_json::json!(true));
    assert_eq!(v["order"], serde_json::json!(12));
    assert_eq!(v["family"], serde_json::json!("z"));
    assert_eq!(v["cob"], serde_json::json!([2, 3, 4]));
}

#[test]
fn search_plain_and_json_list_the_same_solutions() {
    let plain = run(&["search", "--group", "z", "--t", "3"]);
    assert_eq!(code(&plain), 0);
    assert!(stderr(&plain).contains("nodes="));
    let mut from_plain: Vec<String> = stdout(&plain)
        .lines()
        .map(|l| {
            let start = l.find('{').unwrap() + 1;
            let end = l.find('}').unwrap();
            l[start..end].to_string()
        })
        .collect();
    let json = run(&["search", "--group", "z", "--t", "3", "--json"]);
    assert_eq!(code(&json), 0);
    let mut from_json: Vec<String> = stdout(&json)
        .lines()
        .map(|l| {
            let v: serde_json::Value = serde_json::from_str(l).unwrap();
            assert_eq!(v["order"], serde_json::json!(12));
            let subs: Vec<String> = v["cob"]
                .as_array()
                .unwrap()
                .iter()
                .map(|x| x.as_u64().unwrap().to_string())
                .collect();
            subs.join(",")
        })
        .collect();
    assert_eq!(from_plain.len(), 24);
    from_plain.sort();
    from_json.sort();
    assert_eq!(from_plain, from_json);
}

#[test]
fn search_count_only_prints_count() {
    let o = run(&["search", "--group", "d", "--t", "3", "--count-only"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "count=72\n");
}

#[test]
fn search_with_unsatisfiable_filter_exits_one() {
    let o = run(&[
        "search", "--group", "z", "--t", "3", "--dist", "4,4,4,4", "--count-only",
    ]);
    assert_eq!(code(&o), 1);
    assert_eq!(stdout(&o), "count=0\n");
}

#[test]
fn fix_pins_variables() {
    let o = run(&[
        "search", "--group", "z", "--t", "3", "--fix", "2=1,3=1,4=1", "--count-only",
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "count=4\n");
}

#[test]
fn fix_recovers_the_published_dihedral_row() {
    let o = run(&[
        "search",
        "--group",
        "d",
        "--t",
        "5",
        "--fix",
        "2=1,3=1,5=1,7=1,10=1,11=1,12=1,17=1",
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o)
        .lines()
        .any(|l| l == "family=d t=5 cob={2,3,5,7,10,11,12,17}"));
}

#[test]
fn search_stdout_is_identical_across_thread_counts() {
    let one = run(&["search", "--group", "z", "--t", "5", "--threads", "1"]);
    let eight = run(&["search", "--group", "z", "--t", "5", "--threads", "8"]);
    assert_eq!(code(&one), 0);
    assert_eq!(code(&eight), 0);
    assert_eq!(one.stdout, eight.stdout);
    assert_eq!(stdout(&one).lines().count(), 120);
}

#[test]
fn budget_env_caps_and_releases_the_search() {
    let o = bin()
        .args(["search", "--group", "z", "--t", "5", "--count-only"])
        .env("COCHAD_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("resource limit"));
    let o = bin()
        .args(["search", "--group", "z", "--t", "5", "--count-only"])
        .env("COCHAD_BUDGET", "18")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "count=120\n");
    let o = bin()
        .args(["search", "--group", "z", "--t", "3", "--count-only"])
        .env("COCHAD_BUDGET", "nope")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).starts_with("error:"));
}

#[test]
fn enumerate_over_budget_exits_three() {
    let o = bin()
        .args(["enumerate", "--group", "z", "--t", "3", "--count-only"])
        .env("COCHAD_BUDGET", "4")
        .output()
        .unwrap();
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("resource limit"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["bogus"][..],
        &["search", "--group", "z"][..],
        &["verify", "--group", "z", "--t", "3"][..],
        &["enumerate", "--group", "z", "--t", "4", "--count-only"][..],
        &["verify", "--group", "z", "--t", "3", "--cob", "99"][..],
        &["verify", "--group", "z", "--t", "3", "--cob", "2", "--cob", "2"][..],
        &["enumerate", "--count-only"][..],
        &["emit-ideal", "--kind", "xx", "--group", "z", "--t", "1"][..],
        &["tables", "--which", "4"][..],
    ] {
        let o = run(args);
        assert_eq!(code(&o), 2, "args {:?} gave {}", args, code(&o));
    }
    let o = run(&["verify", "--group", "z", "--t", "3", "--cob", "99"]);
    assert!(stderr(&o).contains("must lie in 2..12"));
}

#[test]
fn group_file_and_family_flags_are_exclusive() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d3.txt");
    let g = cochad::make_group(cochad::Family::D, 3).unwrap();
    std::fs::File::create(&path)
        .unwrap()
        .write_all(cochad::render_group_table(&g).as_bytes())
        .unwrap();
    let p = path.to_str().unwrap();
    let o = run(&["enumerate", "--group-file", p, "--count-only"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "count=72\n");
    let o = run(&[
        "enumerate", "--group", "d", "--t", "3", "--group-file", p, "--count-only",
    ]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("mutually exclusive"));
}

#[test]
fn emit_ideal_out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("jg.txt");
    let to_file = run(&[
        "emit-ideal",
        "--kind",
        "jg",
        "--group",
        "z",
        "--t",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&to_file), 0);
    assert!(stdout(&to_file).is_empty());
    let direct = run(&["emit-ideal", "--kind", "jg", "--group", "z", "--t", "3"]);
    assert_eq!(code(&direct), 0);
    assert_eq!(std::fs::read(&path).unwrap(), direct.stdout);
}

#[test]
fn emit_ideal_jg_requires_a_family() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("z1.txt");
    let g = cochad::make_group(cochad::Family::Z, 1).unwrap();
    std::fs::write(&path, cochad::render_group_table(&g)).unwrap();
    let o = run(&["emit-ideal", "--kind", "jg", "--group-file", path.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("jg needs --group"));
    // ig accepts a custom table.
    let o = run(&["emit-ideal", "--kind", "ig", "--group-file", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("ring QQ vars "));
}

#[test]
fn emit_ideal_singular_dialect() {
    let o = run(&[
        "emit-ideal", "--kind", "jg", "--group", "d", "--t", "3", "--syntax", "singular",
    ]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.starts_with("ring R = 0, ("));
    assert!(text.trim_end().ends_with(';'));
}

#[test]
fn tables_three_passes_and_tables_two_reports_the_known_defect() {
    let o = run(&["tables", "--which", "3"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 17);
    assert!(text.lines().all(|l| l.ends_with(" pass")));
    let o = run(&["tables", "--which", "2"]);
    assert_eq!(code(&o), 1);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 15);
    assert!(text.contains("t=5 FAIL"));
    assert_eq!(text.lines().filter(|l| l.ends_with(" pass")).count(), 14);
}

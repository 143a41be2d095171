//! End-to-end tests of the CLI surface: subcommands, file formats and
//! exit codes (0 success, 1 verification failure, 2 input error,
//! 3 search exhausted).

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_kummer")
}

fn scratch_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("kummer-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .env("KUMMER_CACHE", dir.join("cache.json"))
        .output()
        .expect("binary runs")
}

#[test]
fn scan_json_has_expected_records() {
    let dir = scratch_dir("scan");
    let out = run_in(&dir, &["scan", "--n-max", "10", "--json"]);
    assert!(out.status.success());
    let records: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let arr = records.as_array().unwrap();
    assert_eq!(arr[0]["n"], 1);
    assert_eq!(arr[0]["d"], 5);
    assert_eq!(arr[0]["p"], 1);
    assert_eq!(arr[0]["unit"]["norm_sign"], -1);
    // n = 9 (D = 325 = 5^2 * 13) must be skipped and logged on stderr
    assert!(arr.iter().all(|r| r["n"] != 9));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("skipped n = 9"), "{stderr}");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn scan_csv_shape() {
    let dir = scratch_dir("scancsv");
    let out = run_in(&dir, &["scan", "--n-max", "5", "--csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "n,D,p,q,h_plus,genus_sizes,gl2_per_genus,unit_t,unit_u,norm_sign,epsilon,sb_ratio"
    );
    assert!(lines.next().unwrap().starts_with("1,5,1,5,1,"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn classgroup_json_matches_interface() {
    let dir = scratch_dir("cg");
    let out = run_in(&dir, &["classgroup", "--disc", "65"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["D"], 65);
    assert_eq!(v["h_plus"], 2);
    assert_eq!(v["reps"].as_array().unwrap().len(), 2);
    assert_eq!(v["genera"].as_array().unwrap().len(), 2);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn classgroup_even_discriminant_omits_genera() {
    let dir = scratch_dir("cgeven");
    let out = run_in(&dir, &["classgroup", "--disc", "60"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["h_plus"], 4);
    assert!(v["genera"].is_null());
    assert!(v["genera_note"].as_str().unwrap().contains("mod-8"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn classgroup_rejects_non_fundamental() {
    let dir = scratch_dir("cgbad");
    let out = run_in(&dir, &["classgroup", "--disc", "45"]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("not fundamental"), "{stderr}");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn fmcount_reads_gram_file() {
    let dir = scratch_dir("fm");
    let gram = dir.join("gram.json");
    std::fs::write(&gram, "[[2, 1], [1, -2]]").unwrap();
    let out = run_in(&dir, &["fmcount", "--gram", gram.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["p_count"], 1);
    assert_eq!(v["fm_bound_high"], 2);
    assert_eq!(v["g_units"], serde_json::json!([1, 4]));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn fmcount_with_explicit_g_units() {
    let dir = scratch_dir("fmg");
    let gram = dir.join("gram.json");
    std::fs::write(&gram, "[[2, 1], [1, -2]]").unwrap();
    let ok = run_in(
        &dir,
        &[
            "fmcount",
            "--gram",
            gram.to_str().unwrap(),
            "--g-units",
            "1,4",
        ],
    );
    assert!(ok.status.success());
    // 2 is a unit mod 5 but not an isometry of the discriminant form
    let bad = run_in(
        &dir,
        &[
            "fmcount",
            "--gram",
            gram.to_str().unwrap(),
            "--g-units",
            "2",
        ],
    );
    assert_eq!(bad.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn fmcount_bad_file_is_input_error() {
    let dir = scratch_dir("fmbad");
    let gram = dir.join("gram.json");
    std::fs::write(&gram, "[[2, 1], [1, -2]").unwrap(); // malformed
    let out = run_in(&dir, &["fmcount", "--gram", gram.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let missing = run_in(&dir, &["fmcount", "--gram", "/nonexistent/g.json"]);
    assert_eq!(missing.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn construct_verify_roundtrip_and_tamper_detection() {
    let dir = scratch_dir("roundtrip");
    let out_file = dir.join("family.json");
    let c = run_in(
        &dir,
        &[
            "construct",
            "--n",
            "2",
            "--n-max",
            "200",
            "--out",
            out_file.to_str().unwrap(),
        ],
    );
    assert!(c.status.success(), "{}", String::from_utf8_lossy(&c.stderr));

    let v = run_in(&dir, &["verify", "--in", out_file.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&v.stdout).unwrap();
    assert_eq!(report["ok"], true);

    // tamper with one Gram entry: exit code 1 and a named failing check
    let mut doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out_file).unwrap()).unwrap();
    doc["lattices"][0][0][0] = serde_json::json!(4);
    std::fs::write(&out_file, serde_json::to_string(&doc).unwrap()).unwrap();
    let bad = run_in(&dir, &["verify", "--in", out_file.to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&bad.stdout).unwrap();
    assert_eq!(report["ok"], false);
    assert!(report["first_failure"].is_string());
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn verify_survives_malformed_structures() {
    // structurally corrupt files must fail cleanly (exit 1), never crash
    let dir = scratch_dir("hostile");
    let out_file = dir.join("family.json");
    let c = run_in(
        &dir,
        &[
            "construct",
            "--n",
            "2",
            "--n-max",
            "200",
            "--out",
            out_file.to_str().unwrap(),
        ],
    );
    assert!(c.status.success());
    let pristine = std::fs::read_to_string(&out_file).unwrap();

    type Mutation = Box<dyn Fn(&mut serde_json::Value)>;
    let mutations: Vec<Mutation> = vec![
        Box::new(|v| {
            v["complement"][0] = serde_json::json!([1, 2]); // ragged row
        }),
        Box::new(|v| {
            v["embeddings"] = serde_json::json!([]);
        }),
        Box::new(|v| {
            v["certificates"]["q_gens"] = serde_json::json!([]);
        }),
        Box::new(|v| {
            v["certificates"]["cycles"][0] = serde_json::json!([]);
        }),
        Box::new(|v| {
            v["lattices"][0] = serde_json::json!([[2, 1]]); // not 2x2
        }),
        Box::new(|v| {
            v["d"] = serde_json::json!(0);
        }),
    ];
    for (i, mutate) in mutations.iter().enumerate() {
        let mut doc: serde_json::Value = serde_json::from_str(&pristine).unwrap();
        mutate(&mut doc);
        std::fs::write(&out_file, serde_json::to_string(&doc).unwrap()).unwrap();
        let v = run_in(&dir, &["verify", "--in", out_file.to_str().unwrap()]);
        assert_eq!(
            v.status.code(),
            Some(1),
            "mutation {i} must fail verification"
        );
    }
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn construct_exhaustion_exits_3() {
    let dir = scratch_dir("exhaust");
    let out = run_in(&dir, &["construct", "--n", "40", "--n-max", "5"]);
    assert_eq!(out.status.code(), Some(3));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("exhausted"), "{stderr}");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn sbtable_csv() {
    let dir = scratch_dir("sb");
    let out = run_in(&dir, &["sbtable", "--n-max", "6"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("D,h_plus,epsilon,sb_ratio\n"));
    assert!(text.contains("5,1,1.618033988749894848"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn cache_env_var_is_honored_and_reused() {
    let dir = scratch_dir("cache");
    let cache_path = dir.join("cache.json");
    assert!(!cache_path.exists());
    let first = run_in(&dir, &["scan", "--n-max", "12", "--json"]);
    assert!(first.status.success());
    assert!(cache_path.exists(), "cache file must be written");

    // a second run with the warm cache yields identical output
    let second = run_in(&dir, &["scan", "--n-max", "12", "--json"]);
    assert_eq!(first.stdout, second.stdout);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn construct_stdout_is_deterministic() {
    let dir = scratch_dir("det");
    let a = run_in(&dir, &["construct", "--n", "1", "--n-max", "50"]);
    let b = run_in(&dir, &["construct", "--n", "1", "--n-max", "50"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "byte-identical JSON required");
    std::fs::remove_dir_all(&dir).ok();
}

use std::process::{Command, Output};

use serde_json::Value;

fn massform(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_massform"))
        .args(args)
        .env_remove("MASSFORM_MAX_ORDER")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = massform(args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn coeffs(v: &Value) -> Vec<u64> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_u64().unwrap())
        .collect()
}

fn stratum<'a>(report: &'a Value, key: &str) -> &'a Value {
    report["results"][0]["strata"]
        .as_array()
        .unwrap()
        .iter()
        .find(|s| s["key"] == key)
        .unwrap_or_else(|| panic!("no stratum {key}"))
}

#[test]
fn d4_check() {
    let r = json(&[
        "check",
        "--group",
        "wr(S2,S2)",
        "--counting",
        "wreath(perm,perm)",
    ]);
    assert_eq!(r["formula_exists"], true);
    assert_eq!(coeffs(&r["polynomial"]), vec![8, 16, 16]);
    assert_eq!(r["modulus"], 8);
    let residues: Vec<u64> = r["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x["residue"].as_u64().unwrap())
        .collect();
    assert_eq!(residues, vec![1, 3, 5, 7]);
    assert_eq!(r["group"]["order"], 8);
    assert_eq!(r["group"]["degree"], 4);
}

#[test]
fn d4_discriminant_wild_warning() {
    let r = json(&["check", "--group", "D4", "--counting", "perm"]);
    assert_eq!(coeffs(&r["polynomial"]), vec![8, 8, 16, 8]);
    assert_eq!(r["warnings"][0]["tame_value"], "17");
    assert_eq!(r["warnings"][0]["known_wild_value"], "121/8");
}

#[test]
fn g18_split_type() {
    let g18 = "custom(6; (1 2 3), (4 5 6), (2 3)(5 6))";
    let r = json(&[
        "mass",
        "--group",
        g18,
        "--counting",
        "perm",
        "--residue",
        "5",
        "--by",
        "type",
    ]);
    assert_eq!(
        coeffs(&stratum(&r, "1^3 2^1 1^1")["coeffs"]),
        vec![0, 0, 36]
    );
    let r = json(&[
        "mass",
        "--group",
        g18,
        "--counting",
        "perm",
        "--residue",
        "1",
        "--by",
        "type",
    ]);
    assert_eq!(coeffs(&stratum(&r, "1^3 2^1 1^1")["coeffs"]), vec![0]);
    // 2 is not a unit mod 18
    let out = massform(&[
        "mass",
        "--group",
        g18,
        "--counting",
        "perm",
        "--residue",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn strata_sum_to_totals() {
    for (group, by) in [
        ("B3", "type"),
        ("B3", "wreath-type"),
        ("G2", "product-type"),
        ("D4", "image"),
    ] {
        let counting = if by == "product-type" {
            "sum(perm,perm)"
        } else {
            "perm"
        };
        let r = json(&[
            "check",
            "--group",
            group,
            "--counting",
            counting,
            "--by",
            by,
        ]);
        for res in r["results"].as_array().unwrap() {
            let total = coeffs(&res["total"]);
            let mut sum = vec![0u64; total.len()];
            for s in res["strata"].as_array().unwrap() {
                for (k, c) in coeffs(&s["coeffs"]).into_iter().enumerate() {
                    sum[k] += c;
                }
            }
            assert_eq!(sum, total, "{group} --by {by}");
        }
    }
}

#[test]
fn reference_sn() {
    let r = json(&["reference", "sn", "--n", "4"]);
    assert_eq!(coeffs(&r["coeffs"]), vec![1, 1, 2, 1]);
}

#[test]
fn ambient_counts() {
    let r = json(&[
        "ambient",
        "--group",
        "custom(4; (1 2 3 4))",
        "--target",
        "D4inS4",
        "--in",
        "S4",
    ]);
    assert_eq!((r["j"].as_u64(), r["k"].as_u64()), (Some(8), Some(4)));
    let out = massform(&[
        "ambient", "--group", "S4", "--target", "D4inS4", "--in", "D4inS4",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn rational_and_catalog() {
    assert_eq!(json(&["rational", "--group", "S5"])["rational"], true);
    let c3 = json(&["rational", "--group", "C3"]);
    assert_eq!(c3["rational"], false);
    assert_eq!(c3["witness"]["power"], 2);
    let names: Vec<String> = json(&["catalog"])
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["name"].as_str().unwrap().to_string())
        .collect();
    for n in ["S2", "D4", "G2", "G18", "C3", "C4", "A4"] {
        assert!(names.iter().any(|x| x == n), "{n}");
    }
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| massform(args).status.code();
    assert_eq!(
        code(&["mass", "--group", "wr(S2", "--counting", "perm"]),
        Some(2)
    );
    assert_eq!(
        code(&["mass", "--group", "S3", "--counting", "wreath(perm,perm)"]),
        Some(3)
    );
    assert_eq!(
        code(&["mass", "--group", "wr(S3,S2)", "--counting", "signed"]),
        Some(3)
    );
    assert_eq!(
        code(&["mass", "--group", "S8", "--counting", "perm"]),
        Some(4)
    );
    assert_eq!(
        code(&[
            "mass",
            "--group",
            "S3",
            "--counting",
            "perm",
            "--residue",
            "3"
        ]),
        Some(5)
    );
    let err = massform(&[
        "mass",
        "--group",
        "S3",
        "--counting",
        "perm",
        "--residue",
        "3",
    ])
    .stderr;
    assert_eq!(String::from_utf8_lossy(&err).lines().count(), 1);
}

#[test]
fn order_cap_from_env_and_flag() {
    let run = |env: Option<&str>, extra: &[&str]| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_massform"));
        cmd.args(extra)
            .args(["mass", "--group", "S5", "--counting", "perm"]);
        match env {
            Some(v) => cmd.env("MASSFORM_MAX_ORDER", v),
            None => cmd.env_remove("MASSFORM_MAX_ORDER"),
        };
        cmd.output().unwrap().status.code()
    };
    assert_eq!(run(None, &[]), Some(0));
    assert_eq!(run(Some("100"), &[]), Some(4));
    assert_eq!(run(Some("100"), &["--max-order", "120"]), Some(0));
}

#[test]
fn output_is_deterministic() {
    let args = [
        "check",
        "--group",
        "S2wrD4",
        "--counting",
        "wreath(perm,wreath(perm,perm))",
        "--by",
        "wreath-type",
    ];
    let a = massform(&args);
    let b = massform(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn text_format() {
    let out = massform(&[
        "--format",
        "text",
        "check",
        "--group",
        "S4",
        "--counting",
        "perm",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(
        text.contains("formula   24 + 24x + 48x^2 + 24x^3"),
        "{text}"
    );
}

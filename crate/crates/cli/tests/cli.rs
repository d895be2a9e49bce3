use std::process::{Command, Output};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::Value;

fn knotrho(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_knotrho"))
        .args(args)
        .env_remove("RHO_MODE")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Vec<Value> {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = knotrho(&full);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).expect("one JSON object per line"))
        .collect()
}

fn rational(v: &Value) -> BigRational {
    let s = v.as_str().expect("rationals are strings");
    assert!(s.contains('/'), "{s}");
    s.parse().expect("rational string parses")
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[test]
fn sig_examples() {
    let r = &json(&["sig", "torus2:1", "--omega", "1/2"])[0];
    assert_eq!(r["signature"], 2);
    assert_eq!(r["singular"], false);
    assert_eq!(
        json(&["sig", "unknot", "--omega", "1/3"])[0]["signature"],
        0
    );
    let r = &json(&["sig", "torus2:1", "--omega", "1/6"])[0];
    assert_eq!(r["signature"], 1);
    assert_eq!(r["singular"], true);
    assert_eq!(
        (
            r["positive"].clone(),
            r["zero"].clone(),
            r["negative"].clone()
        ),
        (1.into(), 1.into(), 0.into())
    );
}

#[test]
fn mode_from_environment_and_flag() {
    let run = |env: Option<&str>, extra: &[&str]| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_knotrho"));
        c.args(["sig", "torus2:2", "--omega", "1/3", "--format", "json"])
            .args(extra);
        match env {
            Some(v) => c.env("RHO_MODE", v),
            None => c.env_remove("RHO_MODE"),
        };
        let out = c.output().unwrap();
        (out.status.code(), String::from_utf8(out.stdout).unwrap())
    };
    assert!(run(None, &[]).1.contains("\"mode\":\"exact\""));
    assert!(run(Some("float"), &[]).1.contains("\"mode\":\"float\""));
    assert!(run(Some("float"), &["--mode", "exact"])
        .1
        .contains("\"mode\":\"exact\""));
    assert_eq!(run(Some("fuzzy"), &[]).0, Some(2));
}

#[test]
fn require_certified_fails_on_uncertain_float() {
    // the trefoil form is singular at 1/6, so float mode cannot certify it
    let out = knotrho(&[
        "sig",
        "torus2:1",
        "--omega",
        "1/6",
        "--mode",
        "float",
        "--require-certified",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let ok = knotrho(&[
        "sig",
        "torus2:1",
        "--omega",
        "1/2",
        "--mode",
        "float",
        "--require-certified",
    ]);
    assert_eq!(ok.status.code(), Some(0));
    let exact = knotrho(&["sig", "torus2:1", "--omega", "1/6", "--require-certified"]);
    assert_eq!(exact.status.code(), Some(0));
}

#[test]
fn rho_examples() {
    let r = &json(&["rho", "torus2:1", "--slope", "3"])[0];
    assert_eq!(rational(&r["rho"]), q(14, 9));
    assert_eq!(
        rational(&json(&["rho", "unknot", "--slope", "1"])[0]["rho"]),
        q(0, 1)
    );
    assert_eq!(
        rational(&json(&["rho", "jn:1", "--slope", "2"])[0]["rho"]),
        q(0, 1)
    );
    let r = &json(&["rho", "torus2:1", "--slope", "3", "--levels"])[0];
    assert_eq!(rational(&r["sigma_0"]), q(0, 1));
    assert_eq!(rational(&r["sigma_1"]), q(7, 3));
    assert_eq!(rational(&r["sigma_2"]), q(7, 3));
    let neg = &json(&["rho", "jn:2", "--slope", "-5", "--levels"])[0];
    let total: BigRational = (0..5).map(|k| rational(&neg[format!("sigma_{k}")])).sum();
    assert_eq!(total / BigInt::from(5), rational(&neg["rho"]));
    assert_eq!(
        knotrho(&["rho", "unknot", "--slope", "0"]).status.code(),
        Some(2)
    );
}

#[test]
fn rho_table_shows_decimal() {
    let out = knotrho(&["rho", "torus2:1", "--slope", "3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("14/9 ≈ 1.55555555556"), "{text}");
}

#[test]
fn bounds_examples() {
    let r = &json(&["bounds", "torus2:1", "--slope", "3", "--crossing", "3"])[0];
    assert_eq!(rational(&r["lower_signature"]), q(2, 627419520));
    assert_eq!(r["upper"], 672);
    assert_eq!(r["consistent"], true);
    let r = &json(&[
        "bounds",
        "unknot",
        "--slope",
        "627419524",
        "--crossing",
        "0",
    ])[0];
    assert!(rational(&r["best_lower"]) > q(1, 1));
    assert_eq!(r["upper"], 96 * 627419524i64);
    let r = &json(&["bounds", "unknot", "--slope", "5", "--g4", "1"])[0];
    assert_eq!(rational(&r["lower_slice_genus"]), q(-4, 627419520));
    assert!(r["upper"].is_null());
    assert!(r["vacuous"].as_str().unwrap().contains("lower_slice_genus"));
    assert_eq!(
        knotrho(&["bounds", "unknot", "--slope", "0"]).status.code(),
        Some(2)
    );
}

#[test]
fn gap_table_csv_and_json_agree() {
    let out = knotrho(&["gap-table", "--d", "2", "--n-max", "5", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,d,avg_sig,thmB_lower,gap_lower"));
    let csv_rows: Vec<Vec<String>> = lines
        .map(|l| l.split(',').map(String::from).collect())
        .collect();
    assert_eq!(csv_rows.len(), 3);

    let rows = json(&["gap-table", "--d", "2", "--n-max", "5"]);
    assert_eq!(rows.len(), 3);
    for (c, j) in csv_rows.iter().zip(&rows) {
        assert_eq!(c[0], j["n"].to_string());
        assert_eq!(c[1], j["d"].to_string());
        for (i, key) in ["avg_sig", "thmB_lower", "gap_lower"].iter().enumerate() {
            assert_eq!(c[i + 2], j[*key].as_str().unwrap());
        }
    }
    let gaps: Vec<BigRational> = rows.iter().map(|r| rational(&r["gap_lower"])).collect();
    assert!(gaps.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn gap_table_row_respects_estimate() {
    let rows = json(&["gap-table", "--d", "3", "--n-max", "10"]);
    let row = rows.iter().find(|r| r["n"] == 10).unwrap();
    assert!(rational(&row["avg_sig"]) >= q(8, 9) * BigInt::from(10) - q(14, 6));
}

#[test]
fn gap_table_rejects_bad_parameters() {
    assert_eq!(
        knotrho(&["gap-table", "--d", "1", "--n-max", "5"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        knotrho(&["gap-table", "--d", "2", "--n-max", "2"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn slope_lengths() {
    let r = &json(&["slope-length", "--p", "6", "--q", "1"])[0];
    assert!((r["length"].as_f64().unwrap() - 6.7271).abs() < 5e-4);
    assert_eq!(r["longer_than_2pi"], true);
    let r = &json(&["slope-length", "--p", "1", "--q", "1"])[0];
    assert_eq!(r["longer_than_2pi"], false);
    assert_eq!(
        knotrho(&["slope-length", "--p", "0", "--q", "0"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn avg_sig_trefoil() {
    let r = &json(&["avg-sig", "torus2:1", "--d", "3"])[0];
    assert_eq!(rational(&r["avg_sig"]), q(4, 3));
    assert_eq!(r["certified"], true);
}

#[test]
fn invalid_specs_exit_2_with_position() {
    let out = knotrho(&["sig", "torus2:x", "--omega", "1/2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("position 7"));
    assert_eq!(
        knotrho(&["sig", "trefoil", "--omega", "1/2"]).status.code(),
        Some(2)
    );
    assert_eq!(
        knotrho(&["sig", "unknot", "--omega", "1/0"]).status.code(),
        Some(2)
    );
    assert_eq!(
        knotrho(&["sig", "file:/nonexistent.json", "--omega", "1/2"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn file_specs() {
    let dir = std::env::temp_dir().join(format!("knotrho-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("trefoil.json");
    std::fs::write(
        &good,
        r#"{"kind":"knot","size":2,"entries":[[1,0],[-1,1]]}"#,
    )
    .unwrap();
    let spec = format!("file:{}", good.display());
    assert_eq!(json(&["sig", &spec, "--omega", "1/2"])[0]["signature"], 2);

    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"kind":"knot","size":2,"entries":[[1,0],[0,1]]}"#).unwrap();
    let out = knotrho(&["sig", &format!("file:{}", bad.display()), "--omega", "1/2"]);
    assert_eq!(out.status.code(), Some(2));
    let garbled = dir.join("garbled.json");
    std::fs::write(&garbled, "{not json").unwrap();
    let out = knotrho(&[
        "sig",
        &format!("file:{}", garbled.display()),
        "--omega",
        "1/2",
    ]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn verify_suites() {
    let out = knotrho(&["verify", "litherland", "--n-max", "20", "--d-max", "40"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(
        text.contains("singular point n=1 k/d=1/6: definition 1 closed form 0"),
        "{text}"
    );
    assert!(!text.contains("FAIL"));
    let out = knotrho(&["verify", "gilmer", "--n-max", "25"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let out = knotrho(&["verify", "all", "--n-max", "0", "--d-max", "0"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
}

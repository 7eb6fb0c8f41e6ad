use std::fs;

use ihall::cli::{run, GOLDEN_CONVENTIONS};

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv: Vec<String> = std::iter::once("ihall").chain(args.iter().copied()).map(String::from).collect();
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn serre_c2_passes() {
    let (code, out, _) = cli(&["verify", "serre", "--quiver", "cn:2", "--q", "2", "--k-norm", "plain"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("pass           s3 quiver=cn:2 q=2 k-norm=plain i=0 j=1"), "{out}");
}

#[test]
fn census_json() {
    let (code, out, _) = cli(&["census", "--q", "2", "--dmax", "3", "--report", "json"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), r#"{"1":3,"2":1,"3":2}"#);
}

#[test]
fn hall_product_example() {
    // v^{-1} [S1 + S0] + v^{-1} (q - 1) [1:2] with v^{-1} = v/2
    let (code, out, _) = cli(&["product", "--quiver", "cn:2", "--q", "2", "--a", "1:1", "--b", "0:1"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "product: (1/2*v) * [0:1+1:1] + (1/2*v) * [1:2]");
    let (code, out, _) = cli(&["product", "--quiver", "cn:2", "--q", "3", "--a", "1:1", "--b", "0:1"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "product: (1/3*v) * [0:1+1:1] + (2/3*v) * [1:2]");
}

#[test]
fn ihall_product_accepts_rendered_elements() {
    let (code, out, _) = cli(&["product", "--algebra", "ihall", "--quiver", "cn:2", "--q", "2", "--a", "(1) * [0:1] K[1,0]", "--b", "0:1"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("K[1,0]"), "{out}");
}

#[test]
fn rootvec_and_named() {
    let (code, out, _) = cli(&["rootvec", "--quiver", "qj:2:1", "--q", "2", "--j", "1", "--l", "1"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.starts_with("word: "));
    let (code, out, _) = cli(&["named", "--quiver", "cn:2", "--q", "2", "--name", "h0m", "--m", "1"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "element: (1) * [0:2] K[0,0]");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(cli(&["verify"]).0, 2);
    assert_eq!(cli(&["verify", "nosuch"]).0, 2);
    assert_eq!(cli(&["verify", "serre", "--quiver", "bogus"]).0, 2);
    assert_eq!(cli(&["product", "--quiver", "cn:2", "--q", "2", "--a", "5:1", "--b", "0:1"]).0, 2);
    assert_eq!(cli(&["--help"]).0, 0);
}

#[test]
fn budget_exhaustion_exits_3() {
    let (code, _, err) = cli(&["verify", "theta-central", "--quiver", "cn:2", "--q", "2", "--budget", "4"]);
    assert_eq!(code, 3, "{err}");
    assert!(err.contains("budget exhausted at: theta"), "{err}");
}

#[test]
fn json_reports_are_deterministic() {
    let args = ["verify", "oracle", "--quiver", "cn:2", "--q", "2", "--report", "json", "--seed", "5"];
    let (c1, a, _) = cli(&args);
    let (c2, b, _) = cli(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["params"]["seed"], "5");
}

#[test]
fn golden_drift_fails_and_bless_rewrites() {
    let dir = tempfile::tempdir().unwrap();
    let golden = dir.path().join("conventions.json");
    fs::write(&golden, r#"{"k-norm-winner": "signed", "braid-order": "sigma-outer"}"#).unwrap();
    let g = golden.to_str().unwrap();
    let base = ["verify", "serre", "--quiver", "cn:2", "--q", "2", "--golden", g];
    let (code, out, _) = cli(&[&base[..], &["--report", "json"]].concat());
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let drift = v["checks"].as_array().unwrap().iter().find(|c| c["id"] == "golden" && c["status"] == "fail").unwrap();
    assert_eq!(drift["residual"], "observed k-norm-winner=plain");

    assert_eq!(cli(&[&base[..], &["--bless"]].concat()).0, 0);
    let blessed: serde_json::Value = serde_json::from_str(&fs::read_to_string(&golden).unwrap()).unwrap();
    assert_eq!(blessed["k-norm-winner"], "plain");
    assert_eq!(cli(&base).0, 0);
}

#[test]
fn builtin_golden_pins_every_convention() {
    let pinned: serde_json::Value = serde_json::from_str(GOLDEN_CONVENTIONS).unwrap();
    for (suite, q) in [("drinfeld", "cn:2"), ("relS0", "cn:4")] {
        let (code, out, err) = cli(&["verify", suite, "--quiver", q, "--q", "2", "--report", "json"]);
        assert_eq!(code, 0, "{err}");
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        for (k, val) in v["conventions"].as_object().unwrap() {
            assert_eq!(&pinned[k], val, "{suite}: {k}");
        }
    }
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    assert_eq!(cli(&["verify", "theta-central", "--quiver", "cn:2", "--q", "2", "--cache-dir", d]).0, 0);
    let (code, out, _) = cli(&["cache", "stats", "--cache-dir", d, "--report", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let entries = v["stats"]["cn_2_q2.hall:entries"].as_u64().unwrap();
    assert!(entries > 0);
    assert_eq!(cli(&["cache", "gc", "--cache-dir", d]).0, 0);
    let (code, out, _) = cli(&["cache", "verify", "--cache-dir", d]);
    assert_eq!(code, 0, "{out}");
    // a second run reads the cache and reports the same result
    let again = cli(&["verify", "theta-central", "--quiver", "cn:2", "--q", "2", "--cache-dir", d, "--report", "json"]);
    let fresh = cli(&["verify", "theta-central", "--quiver", "cn:2", "--q", "2", "--report", "json"]);
    assert_eq!(again.1.replace(d, ""), fresh.1);

    let file = dir.path().join("cn_2_q2.hall");
    let text = fs::read_to_string(&file).unwrap();
    let tampered = text.replacen("1/1", "7/1", 1);
    assert_ne!(tampered, text);
    fs::write(&file, tampered).unwrap();
    let (code, out, _) = cli(&["cache", "verify", "--cache-dir", d]);
    assert_eq!(code, 1, "{out}");
}

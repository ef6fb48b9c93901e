use std::process::{Command, Output};

fn fnp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fnp"))
        .args(args)
        .env_remove("FN_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = fnp(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    fnp(args).status.code().unwrap()
}

#[test]
fn poly_closed_p2_k2() {
    assert_eq!(
        stdout(&["poly", "-p", "2", "-k", "2", "--closed"]),
        "{\"vars\":[\"d0\",\"d1\",\"d2\"],\"terms\":[{\"exponents\":[1,2,1],\"coeff\":\"1\"},\
         {\"exponents\":[1,1,2],\"coeff\":\"1\"},{\"exponents\":[0,2,2],\"coeff\":\"1\"}]}\n"
    );
}

#[test]
fn poly_all_methods_agree() {
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&["poly", "-p", "2", "-k", "3", "--all-methods"])).unwrap();
    assert_eq!(v["agree"], true);
    assert_eq!(v["closed"], v["enumerate"]);
    assert_eq!(v["closed"]["terms"].as_array().unwrap().len(), 6);
}

#[test]
fn poly_zero_order_is_one() {
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&["poly", "-p", "1", "-k", "0", "--closed"])).unwrap();
    assert_eq!(
        v["terms"],
        serde_json::json!([{"exponents": [0, 0], "coeff": "1"}])
    );
}

#[test]
fn poly_in_t_variables() {
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&["poly", "-p", "2", "-k", "2", "--vars", "t"])).unwrap();
    assert_eq!(v["vars"], serde_json::json!(["t1", "t2"]));
    assert_eq!(v["terms"].as_array().unwrap().len(), 3);
}

#[test]
fn poly_methods_are_exclusive() {
    assert_eq!(
        code(&["poly", "-p", "2", "-k", "2", "--closed", "--series"]),
        2
    );
}

#[test]
fn enumerate_modes() {
    assert_eq!(
        stdout(&["enumerate", "-p", "2", "-k", "3", "--count"]),
        "12\n"
    );
    assert_eq!(
        stdout(&["enumerate", "-p", "2", "-k", "2", "--profiles"]),
        "{\"(0,2,2)\":1,\"(1,1,2)\":1,\"(1,2,1)\":1}\n"
    );
    assert_eq!(
        stdout(&["enumerate", "-p", "1", "-k", "1", "--list"]),
        "(1,2)\n"
    );
    assert_eq!(
        stdout(&["enumerate", "-p", "2", "-k", "2", "--shift", "2", "--count"]),
        "3\n"
    );
}

#[test]
fn budget_from_environment() {
    assert_eq!(code(&["enumerate", "-p", "3", "-k", "3", "--count"]), 2);
    let out = Command::new(env!("CARGO_BIN_EXE_fnp"))
        .args(["enumerate", "-p", "3", "-k", "3", "--count"])
        .env("FN_BUDGET", "18")
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "22\n");
    let bad = Command::new(env!("CARGO_BIN_EXE_fnp"))
        .args(["enumerate", "-p", "1", "-k", "1"])
        .env("FN_BUDGET", "lots")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn verify_suites_pass() {
    for args in [
        &["verify", "--suite", "lemmas", "-p", "2", "--k-max", "2"][..],
        &["verify", "--suite", "oracle", "--pk-budget", "16"],
        &["verify", "--suite", "freeprob", "--k-max", "6"],
    ] {
        let v: serde_json::Value = serde_json::from_str(&stdout(args)).unwrap();
        assert_eq!(v["passed"], true, "{args:?}");
        assert!(v["checks"].as_u64().unwrap() > 0);
    }
}

#[test]
fn verify_over_budget_is_usage_error() {
    assert_eq!(
        code(&["verify", "--suite", "lemmas", "-p", "3", "--k-max", "3"]),
        2
    );
}

#[test]
fn moments_tables() {
    assert_eq!(
        stdout(&["moments", "-t", "1,1,1", "-K", "2"]),
        "k,moment\n1,1\n2,4\n"
    );
    assert_eq!(
        stdout(&["moments", "-t", "2", "-K", "3"]),
        "k,moment\n1,2\n2,6\n3,22\n"
    );
    assert_eq!(
        stdout(&["moments", "-t", "1", "-K", "4", "--exact"]),
        "k,moment\n1,1\n2,2\n3,5\n4,14\n"
    );
    assert_eq!(
        stdout(&["moments", "-t", "1/2", "-K", "2"]),
        "k,moment\n1,1/2\n2,3/4\n"
    );
}

#[test]
fn moments_quadrature() {
    let csv = stdout(&["moments", "-t", "0.5", "-K", "3", "--quadrature"]);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("k,moment,numeric,abs_diff"));
    for line in lines {
        let cols: Vec<&str> = line.split(',').collect();
        let diff: f64 = cols[3].parse().unwrap();
        assert!(diff < 1e-10, "{line}");
    }
    assert_eq!(
        code(&["moments", "-t", "1,2", "-K", "2", "--quadrature"]),
        2
    );
    assert_eq!(code(&["moments", "-t", "-1", "-K", "2"]), 2);
    assert_eq!(code(&["moments", "-t", "abc", "-K", "2"]), 2);
}

#[test]
fn mc_is_byte_stable() {
    let args = [
        "mc",
        "-d",
        "1,1.5,0.5",
        "-n",
        "20",
        "-K",
        "3",
        "--trials",
        "20",
        "--seed",
        "7",
    ];
    let a = stdout(&args);
    assert_eq!(a, stdout(&args));
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(
        v["config"]["profile"]["realized"],
        serde_json::json!([20, 30, 10])
    );
    assert_eq!(v["moments"][0]["target"], 0.75);
    let csv = stdout(&[&args[..], &["--format", "csv"]].concat());
    assert!(csv.starts_with("k,mean,se,target,z\n"));
}

#[test]
fn mc_catalan_means() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&[
        "mc", "-d", "1,1", "-n", "200", "-K", "2", "--trials", "200", "--seed", "1",
    ]))
    .unwrap();
    let mean = |i: usize| v["moments"][i]["mean"].as_f64().unwrap();
    assert!((mean(0) - 1.0).abs() < 0.01 && (mean(1) - 2.0).abs() < 0.02);
}

#[test]
fn mc_rejects_bad_dimensions() {
    assert_eq!(code(&["mc", "-d", "1", "-n", "10", "-K", "2"]), 2);
    assert_eq!(code(&["mc", "-d", "1,0", "-n", "10", "-K", "2"]), 2);
    assert_eq!(
        code(&["mc", "-d", "1,1", "-n", "10", "-K", "2", "--trials", "1"]),
        2
    );
}

#[test]
fn diagrams_are_well_formed_svg() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("nested.svg");
    let path_str = path.to_str().unwrap();
    stdout(&[
        "diagram", "-p", "2", "-k", "2", "--index", "2", "--svg", path_str,
    ]);
    let text = std::fs::read_to_string(&path).unwrap();
    let doc = roxmltree::Document::parse(&text).unwrap();
    let arches = doc.descendants().filter(|n| n.has_tag_name("path")).count();
    assert_eq!(arches, 4);
    let title = doc.descendants().find(|n| n.has_tag_name("title")).unwrap();
    assert_eq!(title.text(), Some("(1,8)(2,7)(3,6)(4,5)"));

    let single = stdout(&["diagram", "-p", "1", "-k", "1", "--index", "0"]);
    let doc = roxmltree::Document::parse(&single).unwrap();
    assert_eq!(
        doc.descendants().filter(|n| n.has_tag_name("path")).count(),
        1
    );

    assert_eq!(code(&["diagram", "-p", "2", "-k", "2", "--index", "3"]), 2);
}

use hecke::cli::run;
use hecke::golden::{run_suite, GOLDEN};

fn hecke(args: &[&str]) -> hecke::cli::Outcome {
    run(std::iter::once("hecke").chain(args.iter().copied()))
}

#[test]
fn golden_suite_succeeds() {
    for (args, out) in GOLDEN.iter().zip(run_suite(2)) {
        assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
        assert!(out.stderr.is_empty());
    }
}

#[test]
fn documented_invocations() {
    let out = hecke(&["heckepoly", "verify-factorization", "--n", "2", "--case", "split"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("\"ok\": true"));

    let out = hecke(&["oracle", "convolve", "--n", "2", "--p", "3", "--a", "0,1", "--b", "0,1"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["constants"], serde_json::json!({"(0,2)": "1", "(1,1)": "4"}));

    let out = hecke(&["weights", "lan-suh", "--a", "3,2,1,0", "--d", "1", "--p", "13"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!((v["ok"].clone(), v["bound"].clone()), (serde_json::json!(true), serde_json::json!("12")));
}

#[test]
fn not_nullhomotopic_exits_one() {
    let c = r#"{"p":"2","exponent":"2","ranks":["1","1"],"d":[[["2"]]]}"#;
    let out = hecke(&["complex", "nullhomotopy", "--complex", c, "--map", r#"[[["0"]],[["2"]]]"#]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("\"homotopy\": null"));
}

#[test]
fn incompatible_towers_are_reported() {
    let c = r#"{"p":"2","exponent":"2","ranks":["1"],"d":[]}"#;
    let out = hecke(&["complex", "glue", "--complex", c, "--tower", r#"[[[["1"]]],[[["0"]]]]"#]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("incompatible_at"));
}

use std::process::{Command, Output};

use serde_json::Value;

fn nil53(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nil53"))
        .args(args)
        .env_remove("NIL53_MAX_DIM")
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    serde_json::from_str(text.trim()).unwrap_or_else(|e| panic!("bad JSON {text:?}: {e}"))
}

fn ok(args: &[&str]) -> Value {
    let out = nil53(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stdout));
    let doc = json_of(&out);
    assert_eq!(doc["schema"], "nil53/1");
    assert_eq!(doc["ok"], true);
    doc["result"].clone()
}

fn tuple(v: &Value) -> String {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

#[test]
fn documented_examples() {
    assert_eq!(
        ok(&["mul", "-p", "2,1,3,4,1", "-x", "0,0,0,0,1", "-y", "0,0,0,1,0"]),
        serde_json::json!([1, 2, 0, 1, 1])
    );
    assert_eq!(ok(&["canon", "-p", "2,3,4,6,7"]), serde_json::json!([2, 0, 4, 6, 1]));
    let inv = ok(&["invariants", "-p", "1,0,1,1,0"]);
    assert_eq!(inv["k0"], serde_json::json!({"rank": 6, "torsion": []}));
    assert_eq!(inv["rho"], 1);
    assert_eq!(inv["gamma_delta"], 1);
}

#[test]
fn group_commands() {
    assert_eq!(
        ok(&["inv", "-p", "2,1,3,4,1", "-x", "1,-1,0,1,1"]),
        serde_json::json!([-9, 3, 0, -1, -1])
    );
    assert_eq!(
        ok(&["pow", "-p", "2,1,3,4,1", "-x", "0,0,0,1,1", "-n", "2"]),
        serde_json::json!([1, 2, 0, 2, 2])
    );
    assert_eq!(
        ok(&["comm", "-p", "2,1,3,4,1", "-x", "0,0,0,0,1", "-y", "0,0,0,1,0"]),
        serde_json::json!([1, 2, 0, 0, 0])
    );
    assert_eq!(ok(&["level", "-x", "3,-1,0,0,0"]), "K2");
    let iso = ok(&["iso", "-p", "1,0,5,5,4", "--p2", "1,0,5,5,1"]);
    assert_eq!(iso["isomorphic"], true);
    let w = ok(&["witness", "-p", "2,3,4,6,7"]);
    assert_eq!(w["canonical"], serde_json::json!([2, 0, 4, 6, 1]));
    assert!(w["chain"].as_array().unwrap().iter().all(|s| s["valid"] == true));
}

#[test]
fn embedding_commands() {
    assert_eq!(
        ok(&["embed", "-p", "1,0,2,2,1", "-x", "0,0,0,0,1"]),
        serde_json::json!([0, 0, 0, 0, 2])
    );
    let pre = ok(&["preimage", "-p", "1,0,2,2,1", "-x", "2,0,0,0,0"]);
    assert_eq!(pre["member"], false);
    assert!(pre["preimage"].is_null());
    let idx = ok(&["index", "-p", "1,0,1,2,0", "--enumerate", "100"]);
    assert_eq!((idx["index"].as_i64(), idx["enumerated"].as_i64()), (Some(16), Some(16)));
    assert_eq!(ok(&["index", "-p", "1,0,2,2,1"])["index"], 2048);
    assert_eq!(ok(&["normality", "-p", "1,0,1,1,0"])["normal"], true);
    assert_eq!(ok(&["normality", "-p", "1,0,2,2,1"])["normal"], false);
    let r = ok(&["reduce-coset", "-p", "1,0,1,1,0", "-x", "5,-3,2,7,1"]);
    assert_eq!(r, serde_json::json!([0, 0, 0, 0, 0]));
}

#[test]
fn representation_commands() {
    let r = ok(&["rep-check", "-p", "2,1,3,4,5", "--seed", "7"]);
    assert_eq!(r["all_hold"], true);
    let r = ok(&["rep-check", "-p", "2,1,3,4,0", "--family", "prime"]);
    assert_eq!(r["all_hold"], true);
    let r = ok(&["rep-check", "-p", "2,1,3,4,5", "--perturb", "UX=1"]);
    assert_eq!(r["all_hold"], false);
    let ux = r["relations"].as_array().unwrap().iter().find(|x| x["relation"] == "UX").unwrap();
    assert!(ux["counterexample"].is_object());
    let t = ok(&["transform-check", "-p", "2,1,3,4,5", "--b1", "1"]);
    assert_eq!(t["report"]["uw_exponent"], 9);
    assert_eq!(t["uw_matches"], true);
}

#[test]
fn quotient_command() {
    let r = ok(&["quotient", "-p", "1,0,3,4,6", "--q", "12", "--p-num", "1"]);
    assert_eq!(r["profile"]["q1"], 4);
    assert_eq!(r["profile"]["q2"], 6);
    assert_eq!(r["profile"]["cov1"], serde_json::json!([1, -1, -2, 3]));
    let b1 = r["b1"]["dimension"].as_u64().unwrap();
    assert_eq!(r["block"]["dimension"].as_u64().unwrap(), 6 * b1);
    for res in r["block"]["residuals"].as_array().unwrap() {
        assert!(res["residual"].as_f64().unwrap() <= 1e-10);
    }
    let rot = ok(&["quotient", "-p", "1,0,3,4,6", "--q", "12", "--mu-irrational"]);
    assert_eq!(rot["structure"]["case"], "MATRIX_OVER_ROTATION");
    assert!(rot.get("block").is_none());
    let m = ok(&["quotient", "-p", "1,0,1,1,0", "--q", "2", "--matrices"]);
    let u = &m["block"]["matrices"]["U'"];
    assert_eq!(u.as_array().unwrap().len() as u64, m["block"]["dimension"].as_u64().unwrap());
}

#[test]
fn invariant_commands() {
    let s = ok(&["screen", "-p", "1,0,1,1,0", "--p2", "2,0,1,1,0"]);
    assert_eq!((s["verdict"].as_str(), s["reason"].as_str()), (Some("NOT_ISOMORPHIC"), Some("k_groups")));
    let s = ok(&["screen", "-p", "2,1,3,4,5", "--p2", "2,1,3,4,5", "--theta2", "-1"]);
    assert_eq!(s["verdict"], "POSSIBLY_ISOMORPHIC");
    let r = ok(&["reduce-params", "-p", "2,1,4,6,2"]);
    assert_eq!(r["theta_multiple"], 2);
    assert_eq!(r["params"], serde_json::json!([2, 0, 2, 3, 1]));
}

#[test]
fn exit_codes() {
    for args in [
        &["bogus"][..],
        &["mul", "-p", "2,1,3,4,1", "-x", "0,0,0,0,1"],
        &["canon", "-p", "0,1,1,1,1"],
        &["canon", "-p", "1,2,3"],
        &["canon", "-p", "1,0,1,1,0", "--nope"],
    ] {
        let out = nil53(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert_eq!(json_of(&out)["ok"], false);
    }
    let out = nil53(&["embed", "-p", "1,0,3,3,-1", "-x", "0,0,0,0,1"]);
    assert_eq!(out.status.code(), Some(1));
    let doc = json_of(&out);
    assert_eq!(doc["ok"], false);
    assert_eq!(doc["error"]["kind"], "invalid_params");
    let out = nil53(&["rep-check", "-p", "1,0,1,1,1", "--family", "prime"]);
    assert_eq!(out.status.code(), Some(1));
    let out = Command::new(env!("CARGO_BIN_EXE_nil53"))
        .args(["quotient", "-p", "1,0,1,1,1", "--q", "12"])
        .env("NIL53_MAX_DIM", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["error"]["kind"], "dimension_too_large");
    let out = nil53(&["quotient", "-p", "1,0,1,1,0", "--q", "12", "--tol", "1e-300"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["error"]["kind"], "construction");
}

#[test]
fn seeded_output_is_deterministic() {
    let args = ["rep-check", "-p", "3,-2,2,5,4", "--seed", "42", "--samples", "30", "--pairs", "20"];
    assert_eq!(nil53(&args).stdout, nil53(&args).stdout);
    let t = ["transform-check", "-p", "3,-2,2,5,4", "--b1", "-2", "--c1", "3", "--sign", "-1", "--seed", "9"];
    assert_eq!(nil53(&t).stdout, nil53(&t).stdout);
}

#[test]
fn encodings_round_trip() {
    let x = ok(&["mul", "-p", "3,-2,2,5,4", "-x", "-7,3,1,-2,9", "-y", "4,4,-4,1,-3"]);
    let back = ok(&["mul", "-p", "3,-2,2,5,4", "-x", &tuple(&x), "-y", "0,0,0,0,0"]);
    assert_eq!(back, x);
    let inv = ok(&["inv", "-p", "3,-2,2,5,4", "-x", &tuple(&x)]);
    let id = ok(&["mul", "-p", "3,-2,2,5,4", "-x", &tuple(&x), "-y", &tuple(&inv)]);
    assert_eq!(id, serde_json::json!([0, 0, 0, 0, 0]));
    let c = ok(&["canon", "-p", "6,-11,4,10,-9"]);
    assert_eq!(ok(&["canon", "-p", &tuple(&c)]), c);
    let huge = ok(&["pow", "-p", "2,1,3,4,1", "-x", "0,0,0,1,1", "-n", "123456789012345678901234567890"]);
    let again = ok(&["mul", "-p", "2,1,3,4,1", "-x", &tuple(&huge), "-y", "0,0,0,0,0"]);
    assert_eq!(again.to_string(), huge.to_string());
}

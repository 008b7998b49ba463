use std::collections::BTreeMap;
use std::io::Write;
use std::process::{Command, Stdio};

use metastab_cli::{run, Options, REGISTRY};
use serde_json::{json, Value};

fn call(command: &str, input: Value) -> (Value, u8) {
    let out = run(command, &input.to_string(), &Options::default());
    (serde_json::from_str(&out.output).unwrap(), out.status)
}

fn result(command: &str, input: Value) -> Value {
    let (v, status) = call(command, input);
    assert_eq!(status, 0, "{command}: {v}");
    assert_eq!(v["ok"], true);
    v["result"].clone()
}

fn binary(args: &[&str], stdin: &str) -> (String, i32) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_metastab"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    (
        String::from_utf8(out.stdout).unwrap(),
        out.status.code().unwrap(),
    )
}

fn sp_i() -> Value {
    json!({"group": "Sp", "n": 2, "factors": [{"kind": "field", "poly": [1, 0, 1], "rank": 1}],
           "dim_plus": 0, "dim_minus": 2})
}

#[test]
fn documented_examples() {
    assert_eq!(
        result("endo-data", json!({"n": 2})),
        json!([[2, 0], [1, 1], [0, 2]])
    );
    assert_eq!(result("iota", json!({"datum": [1, 1]})), json!("1/4"));
    assert_eq!(result("lemma2n", json!({"n": 3})), json!(["1/8", "1/64"]));
}

#[test]
fn exact_byte_output() {
    let out = run("endo-data", r#"{"n": 2}"#, &Options::default());
    assert_eq!(
        out.output,
        r#"{"ok":true,"result":[[2,0],[1,1],[0,2]],"paper_ref":"endoscopic-data"}"#
    );
}

#[test]
fn coefficients_and_motives() {
    assert_eq!(result("iota", json!({"datum": [2, 0]})), json!("1/2"));
    assert_eq!(result("iota", json!({"datum": [0, 0]})), json!("1"));
    assert_eq!(result("tamagawa", json!({"datum": [1, 1]})), json!("4"));
    assert_eq!(
        result("point-count", json!({"kind": "Sp", "n": 1, "q": 3})),
        json!("24")
    );
    assert_eq!(
        result(
            "lfactor",
            json!({"shape": {"atoms": [{"kind": "Sp", "size": 2, "base": {"field": "rationals"}}]}, "q": 3})
        ),
        json!("9/8")
    );
    let sp4 = result(
        "motive",
        json!({"shape": {"atoms": [{"kind": "Sp", "size": 4, "base": {"field": "rationals"}}]}}),
    );
    let so5 = result(
        "motive",
        json!({"shape": {"atoms": [{"kind": "SO_odd", "size": 5, "base": {"field": "rationals"}}]}}),
    );
    assert_eq!(
        result("motive", json!({"op": "equal", "a": sp4, "b": so5})),
        json!(true)
    );
}

#[test]
fn endoscopy_round_trip_through_json() {
    let pair = result("bijection", json!({"delta": sp_i(), "isecond": [0]}));
    assert_eq!(pair["datum"], json!([0, 2]));
    let inverse = result(
        "bijection",
        json!({"op": "inverse", "datum": pair["datum"], "gamma": pair["gamma"]}),
    );
    assert_eq!(inverse["delta"], canonical_sp(sp_i()));
    assert_eq!(inverse["isecond"], json!([0]));
    assert_eq!(result("tvalue", json!({"pair": pair})), json!(1));
    let kappa = result("kappa", json!({"datum": [0, 2], "gamma": pair["gamma"]}));
    assert_eq!(kappa["second_block"], json!([0]));
    let pairing = result("commutants", json!({"delta": sp_i(), "isecond": [0]}));
    assert_eq!(pairing["unmatched_g"], json!([]));
    assert_eq!(pairing["unmatched_h"], json!([]));
    let verdict = result("equising", json!({"gamma": pair["gamma"]}));
    assert_eq!(verdict["equi_singular"], json!(true));
    let fiber = result("fiber", json!({"delta": sp_i(), "datum": [0, 2]}));
    assert!(fiber.as_array().unwrap().contains(&pair["gamma"]));
}

/// Re-serialize through the library type so the encoding matches.
fn canonical_sp(v: Value) -> Value {
    let p: metastab::classparam::SpClassParam = serde_json::from_value(v).unwrap();
    serde_json::to_value(p).unwrap()
}

#[test]
fn local_symbols() {
    assert_eq!(
        result("hilbert", json!({"a": -1, "b": -1, "place": 2})),
        json!(-1)
    );
    assert_eq!(
        result("hilbert", json!({"a": -1, "b": -1, "place": "inf"})),
        json!(-1)
    );
    assert_eq!(
        result("hilbert", json!({"a": "1/2", "b": 5, "place": 5})),
        json!(-1)
    );
    assert_eq!(
        result("hilbert", json!({"op": "legendre", "a": 14, "p": 7})),
        json!(0)
    );
    assert_eq!(
        result("hilbert", json!({"op": "product", "a": 15, "b": -7}))["product"],
        json!(1)
    );
    assert_eq!(result("theta", json!({"n": 3, "place": 2})), json!("8"));
    assert_eq!(
        result("theta", json!({"op": "two-power", "t": 5})),
        json!("1")
    );
    assert_eq!(
        result(
            "hilbert",
            json!({"op": "sign-ledger", "q1": 3, "q2": 1, "e1": -1, "e2": -1})
        ),
        json!(true)
    );
}

#[test]
fn root_systems() {
    let b3 = json!({"family": "B", "rank": 3});
    assert_eq!(
        result("rho", json!({"datum": b3})),
        json!(["5/2", "3/2", "1/2"])
    );
    assert_eq!(
        result("roots", json!({"op": "exponents", "datum": b3})),
        json!([1, 3, 5])
    );
    assert_eq!(
        result("roots", json!({"op": "weyl-order", "datum": b3})),
        json!("48")
    );
    let c3 = json!({"family": "C", "rank": 3});
    assert_eq!(
        result("steinberg", json!({"datum": c3})),
        result(
            "varpi",
            json!({"datum": c3, "lambda": result("rho", json!({"datum": c3}))})
        )
    );
    let ratio = result("discriminant", json!({"n": 2, "t": [2, "1/3"]}));
    assert_eq!(ratio["value"], json!("24"));
}

#[test]
fn error_classes() {
    let (v, status) = call("iota", json!({"datum": [1]}));
    assert_eq!((status, v["error"]["kind"].clone()), (2, json!("input")));
    let (v, status) = call("hilbert", json!({"a": 0, "b": 1, "place": 3}));
    assert_eq!((status, v["error"]["kind"].clone()), (1, json!("domain")));
    let (_, status) = call("hilbert", json!({"a": 1, "b": 1, "place": 4}));
    assert_eq!(status, 2);
    let (_, status) = call("poly", json!({"op": "no-such-op", "p": [1, 1]}));
    assert_eq!(status, 2);
    let (_, status) = call("point-count", json!({"kind": "Sp", "n": 1, "q": 6}));
    assert_eq!(status, 1);
}

#[test]
fn binary_exit_codes() {
    let (out, code) = binary(&["endo-data"], r#"{"n": 1}"#);
    assert_eq!(code, 0);
    assert!(out.contains("[[1,0],[0,1]]"));
    assert_eq!(binary(&["lemma2n"], "{not json").1, 2);
    assert_eq!(binary(&["lemma2n"], r#"{"n": 0}"#).1, 1);
    assert_eq!(binary(&["not-a-command"], "{}").1, 2);
    assert_eq!(
        binary(&["iota", "--input", "/nonexistent/input.json"], "").1,
        2
    );
}

#[test]
fn verify_reports() {
    let (out, code) = binary(
        &["verify", "--suite", "all", "--nmax", "4", "--seed", "7"],
        "",
    );
    assert_eq!(code, 0, "{out}");
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["passed"], json!(true));

    let rows = |suite: &str, nmax: u64| -> Vec<String> {
        let opts = Options {
            seed: Some(1),
            nmax: Some(nmax),
            suite: Some(suite.into()),
        };
        let out = run("verify", "", &opts);
        assert_eq!(out.status, 0, "{}", out.output);
        let v: Value = serde_json::from_str(&out.output).unwrap();
        v["result"]["rows"]
            .as_array()
            .unwrap()
            .iter()
            .map(|r| r["check"].as_str().unwrap().to_string())
            .collect()
    };
    let root_rows = rows("rootsys", 10);
    assert_eq!(
        root_rows
            .iter()
            .filter(|r| r.starts_with("lemma2n: 2^-n ratio"))
            .count(),
        10
    );
    assert!(rows("localsym", 2)
        .iter()
        .any(|r| r.starts_with("product formula")));
    assert_eq!(
        run("verify", r#"{"suite": "bogus"}"#, &Options::default()).status,
        2
    );
}

#[test]
fn deterministic_output() {
    let opts = Options {
        seed: Some(11),
        nmax: Some(3),
        suite: Some("localsym".into()),
    };
    assert_eq!(run("verify", "", &opts), run("verify", "", &opts));
    let input = json!({"delta": sp_i(), "datum": [1, 1]}).to_string();
    assert_eq!(
        run("fiber", &input, &Options::default()),
        run("fiber", &input, &Options::default())
    );
    assert_eq!(
        binary(&["lemma2n"], r#"{"n": 5}"#),
        binary(&["lemma2n"], r#"{"n": 5}"#)
    );
}

/// Library operations exposed through the command line.
const OPERATIONS: &[&str] = &[
    "poly_reciprocal",
    "is_self_reciprocal",
    "poly_neg_arg",
    "poly_eval",
    "is_irreducible_q",
    "positive_roots",
    "rho",
    "coroot_btr",
    "varpi_eval",
    "lemma_2n_ratios",
    "exponents",
    "steinberg_rho_value",
    "weyl_order",
    "dim_and_q",
    "weyl_discriminant",
    "discriminant_ratio",
    "germ_exponent",
    "validate_sp",
    "validate_so",
    "char_poly",
    "commutant_shape_sp",
    "commutant_shape_so",
    "enumerate_endo_data",
    "correspond",
    "is_equi_singular",
    "fiber",
    "commutant_pair",
    "t_value",
    "kappa_of",
    "bijection_forward",
    "bijection_inverse",
    "iota",
    "tamagawa",
    "nonramified_pair_check",
    "motive_of_shape",
    "motive_equal",
    "local_L_dual1",
    "point_count",
    "abs_norm",
    "two_power_product",
    "theta_minus_one",
    "legendre",
    "hilbert",
    "sgn_quadext",
    "delta_zero",
    "sign_ledger",
    "verify",
];

#[test]
fn every_operation_has_exactly_one_command() {
    let mut owners: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for c in REGISTRY {
        for o in c.ops {
            owners.entry(o.operation).or_default().push(c.name);
        }
    }
    for op in OPERATIONS {
        let cmds = owners.get(op).cloned().unwrap_or_default();
        assert_eq!(cmds.len(), 1, "{op} is reached by {cmds:?}");
    }
    for (op, cmds) in &owners {
        assert_eq!(cmds.len(), 1, "{op} is reached by {cmds:?}");
    }
}

#[test]
fn every_registered_op_is_wired() {
    for c in REGISTRY {
        for o in c.ops {
            // A stray field is rejected only after dispatch reached the handler.
            let (v, status) = call(c.name, json!({"op": o.op, "probe": true}));
            assert_eq!(status, 2, "{} {}: {v}", c.name, o.op);
            let msg = v["error"]["message"].as_str().unwrap();
            assert!(msg.contains("unknown field"), "{} {}: {msg}", c.name, o.op);
        }
    }
}

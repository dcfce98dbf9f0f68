use std::path::PathBuf;

use serde_json::Value;

use platycosm::cli::run;
use platycosm::euclid_group::Preset;

fn schema(name: &str) -> jsonschema::Validator {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "docs", "schemas", name].iter().collect();
    let text = std::fs::read_to_string(&path).unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn check(schema_name: &str, doc: &Value) {
    let v = schema(schema_name);
    let errors: Vec<String> = v.iter_errors(doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{schema_name}: {errors:?}");
}

fn cli_json(args: &[&str]) -> Value {
    let out = run(std::iter::once("platycosm").chain(args.iter().copied()));
    assert!(out.status <= 1, "{}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

#[test]
fn space_files_validate() {
    for p in Preset::ALL {
        check("space.schema.json", &serde_json::from_str(&p.presentation().to_json()).unwrap());
    }
}

#[test]
fn cli_outputs_validate() {
    check("spectrum.schema.json", &cli_json(&["spectrum", "--space", "didi", "--max-key", "20"]));
    check("spectrum.schema.json", &cli_json(&["spectrum", "--circle", "2", "--max-key", "20"]));
    check("geodesics.schema.json", &cli_json(&["geodesics", "--space", "tetra", "--max-length", "2"]));
    check("geodesics.schema.json", &cli_json(&["geodesics", "--space", "two_tall", "--max-length", "2"]));
    check("balance.schema.json", &cli_json(&["balance", "--left", "tetra", "--right", "didi", "--max-length", "9/2"]));
    check("heat_trace.schema.json", &cli_json(&["heat-trace", "--space", "tetra", "--t-grid", "0.1,1"]));
    check("verify.schema.json", &cli_json(&["verify", "--left", "tetra", "--right", "didi", "--max-key", "50"]));
    check("verify.schema.json", &cli_json(&["verify", "--left", "tetra", "--right", "two_tall", "--max-key", "50"]));
    check("exercise.schema.json", &cli_json(&["exercise", "--t-grid", "0.05,1"]));
}

#[test]
fn schemas_reject_malformed_output() {
    let mut doc = cli_json(&["verify", "--left", "tetra", "--right", "didi", "--max-key", "5"]);
    doc["verdict"] = Value::from("maybe");
    assert!(!schema("verify.schema.json").is_valid(&doc));
    let mut space: Value = serde_json::from_str(&Preset::Tetra.presentation().to_json()).unwrap();
    space["lattice"][0][0] = Value::from("1");
    assert!(!schema("space.schema.json").is_valid(&space));
}

//! Helpers for driving the `plexmesh` binary and checking its JSON.

#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

pub const SUBCOMMANDS: [&str; 6] = ["info", "partition", "distribute", "reorder", "spy", "bench"];

pub fn binary() -> &'static str {
    env!("CARGO_BIN_EXE_plexmesh")
}

pub fn workspace_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

pub fn corpus_files() -> Vec<PathBuf> {
    let dir = workspace_root().join("crates/core/tests/data");
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "msh"))
        .collect();
    files.sort();
    files
}

pub fn invoke<S: AsRef<std::ffi::OsStr>>(args: &[S]) -> Output {
    Command::new(binary())
        .args(args)
        .output()
        .expect("spawn plexmesh")
}

/// Runs the binary, insisting on exit status 0, and returns stdout.
pub fn stdout_of<S: AsRef<std::ffi::OsStr>>(args: &[S]) -> String {
    let out = invoke(args);
    assert!(
        out.status.success(),
        "plexmesh {:?} failed: {}",
        args.iter()
            .map(|a| a.as_ref().to_string_lossy().into_owned())
            .collect::<Vec<_>>(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

pub fn schema(name: &str) -> jsonschema::Validator {
    let path = workspace_root().join(format!("docs/schemas/{name}.schema.json"));
    let text = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    let value: Value = serde_json::from_str(&text).unwrap();
    jsonschema::validator_for(&value).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Schema violations of `doc`, one message per error.
pub fn violations(validator: &jsonschema::Validator, doc: &Value) -> Vec<String> {
    validator
        .iter_errors(doc)
        .map(|e| format!("{} at {}", e, e.instance_path()))
        .collect()
}

/// The document with every `timing` member removed, re-serialised.
pub fn data_section(text: &str) -> String {
    fn strip(v: &mut Value) {
        match v {
            Value::Object(map) => {
                map.remove("timing");
                map.values_mut().for_each(strip);
            }
            Value::Array(items) => items.iter_mut().for_each(strip),
            _ => {}
        }
    }
    let mut v: Value = serde_json::from_str(text).unwrap();
    strip(&mut v);
    serde_json::to_string_pretty(&v).unwrap()
}

pub fn num_cells(file: &Path) -> usize {
    let info: Value = serde_json::from_str(&stdout_of(&[Path::new("info"), file])).unwrap();
    info["cells"].as_u64().unwrap() as usize
}

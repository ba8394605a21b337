#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

pub fn gswf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gswf"))
        .args(args)
        .env("GSWF_THREADS", "2")
        .output()
        .expect("binary runs")
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

pub fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| {
        panic!("not JSON ({e}): {}", String::from_utf8_lossy(&o.stdout))
    })
}

fn schema_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas")
}

fn load(file: &str) -> Value {
    let text = std::fs::read_to_string(schema_dir().join(file)).unwrap();
    serde_json::from_str(&text).unwrap()
}

/// Validates against the subset of JSON Schema the bundled schemas use:
/// type, const, enum, required, properties, items, allOf, $ref,
/// minItems/maxItems, minimum/maximum, minLength. Other keywords are ignored.
pub fn validate(file: &str, doc: &Value) -> Result<(), String> {
    let root = load(file);
    Validator { file: file.to_owned() }.check(&root, doc, "$")
}

struct Validator {
    file: String,
}

impl Validator {
    fn resolve(&self, r: &str) -> (String, Value) {
        let (file, frag) = r.split_once('#').unwrap_or((r, ""));
        let file = if file.is_empty() { self.file.clone() } else { file.to_owned() };
        let mut v = load(&file);
        for part in frag.split('/').filter(|p| !p.is_empty()) {
            v = v[part].clone();
        }
        assert!(!v.is_null(), "unresolved $ref {r}");
        (file, v)
    }

    fn check(&self, s: &Value, d: &Value, at: &str) -> Result<(), String> {
        if let Some(r) = s.get("$ref").and_then(Value::as_str) {
            let (file, sub) = self.resolve(r);
            Validator { file }.check(&sub, d, at)?;
        }
        for sub in s.get("allOf").and_then(Value::as_array).into_iter().flatten() {
            self.check(sub, d, at)?;
        }
        if let Some(t) = s.get("type") {
            let types: Vec<&str> = match t {
                Value::String(x) => vec![x.as_str()],
                Value::Array(xs) => xs.iter().filter_map(Value::as_str).collect(),
                _ => vec![],
            };
            if !types.iter().any(|t| type_matches(t, d)) {
                return Err(format!("{at}: expected {types:?}, got {d}"));
            }
        }
        if let Some(c) = s.get("const") {
            if c != d {
                return Err(format!("{at}: expected {c}, got {d}"));
            }
        }
        if let Some(e) = s.get("enum").and_then(Value::as_array) {
            if !e.contains(d) {
                return Err(format!("{at}: {d} not in {e:?}"));
            }
        }
        if let Some(x) = d.as_f64() {
            if s.get("minimum").and_then(Value::as_f64).is_some_and(|m| x < m) {
                return Err(format!("{at}: {x} below minimum"));
            }
            if s.get("maximum").and_then(Value::as_f64).is_some_and(|m| x > m) {
                return Err(format!("{at}: {x} above maximum"));
            }
        }
        if let (Some(m), Some(x)) = (s.get("minLength").and_then(Value::as_u64), d.as_str()) {
            if (x.len() as u64) < m {
                return Err(format!("{at}: string too short"));
            }
        }
        if let Value::Object(obj) = d {
            for key in s.get("required").and_then(Value::as_array).into_iter().flatten() {
                let key = key.as_str().unwrap();
                if !obj.contains_key(key) {
                    return Err(format!("{at}: missing {key}"));
                }
            }
            let props = s.get("properties").and_then(Value::as_object);
            for (k, v) in obj {
                match props.and_then(|p| p.get(k)) {
                    Some(sub) => self.check(sub, v, &format!("{at}.{k}"))?,
                    None if s.get("additionalProperties") == Some(&Value::Bool(false)) => {
                        return Err(format!("{at}: unexpected key {k}"));
                    }
                    None => {}
                }
            }
        }
        if let Value::Array(items) = d {
            if s.get("minItems").and_then(Value::as_u64).is_some_and(|m| (items.len() as u64) < m) {
                return Err(format!("{at}: too few items"));
            }
            if s.get("maxItems").and_then(Value::as_u64).is_some_and(|m| (items.len() as u64) > m) {
                return Err(format!("{at}: too many items"));
            }
            if let Some(sub) = s.get("items") {
                for (i, v) in items.iter().enumerate() {
                    self.check(sub, v, &format!("{at}[{i}]"))?;
                }
            }
        }
        Ok(())
    }
}

fn type_matches(t: &str, d: &Value) -> bool {
    match t {
        "object" => d.is_object(),
        "array" => d.is_array(),
        "string" => d.is_string(),
        "number" => d.is_number(),
        "integer" => d.is_u64() || d.is_i64(),
        "boolean" => d.is_boolean(),
        "null" => d.is_null(),
        _ => false,
    }
}

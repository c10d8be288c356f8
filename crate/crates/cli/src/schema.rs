//! Validation of the CLI's JSON documents against the schemas in `schema/`.
//!
//! Only the subset of JSON Schema the shipped schemas use is understood:
//! `type` (a name or a list of names), `properties`, `required`,
//! `additionalProperties: false`, `items`, `enum`, `minimum` and local
//! `$ref`s of the form `#/...`.

use serde_json::Value;

pub const CENSUS: &str = include_str!("../schema/census.schema.json");
pub const PALINDROMES: &str = include_str!("../schema/palindromes.schema.json");
pub const IMAGE: &str = include_str!("../schema/image.schema.json");
pub const LOCATE: &str = include_str!("../schema/locate.schema.json");
pub const VERIFY: &str = include_str!("../schema/verify.schema.json");
pub const RETURNS: &str = include_str!("../schema/returns.schema.json");
pub const EXTEND: &str = include_str!("../schema/extend.schema.json");

/// Schema text for a document kind, as named by [`crate::Document::kind`].
pub fn schema_for(kind: &str) -> Option<&'static str> {
    Some(match kind {
        "census" => CENSUS,
        "palindromes" => PALINDROMES,
        "image" => IMAGE,
        "locate" => LOCATE,
        "verify" => VERIFY,
        "returns" => RETURNS,
        "extend" => EXTEND,
        _ => return None,
    })
}

fn type_matches(name: &str, v: &Value) -> bool {
    match name {
        "object" => v.is_object(),
        "array" => v.is_array(),
        "string" => v.is_string(),
        "boolean" => v.is_boolean(),
        "null" => v.is_null(),
        "number" => v.is_number(),
        "integer" => v.is_i64() || v.is_u64(),
        _ => false,
    }
}

/// Collects every violation of `schema` by `doc`, with JSON-pointer paths.
pub fn validate(schema: &Value, doc: &Value) -> Vec<String> {
    let mut errors = Vec::new();
    check(schema, schema, doc, "", &mut errors);
    errors
}

fn check(root: &Value, schema: &Value, v: &Value, path: &str, errors: &mut Vec<String>) {
    let here = if path.is_empty() { "/" } else { path };
    if let Some(reference) = schema.get("$ref").and_then(Value::as_str) {
        match reference.strip_prefix('#').and_then(|p| root.pointer(p)) {
            Some(target) => check(root, target, v, path, errors),
            None => errors.push(format!("{here}: unresolved reference {reference}")),
        }
        return;
    }
    match schema.get("type") {
        Some(Value::String(t)) if !type_matches(t, v) => {
            errors.push(format!("{here}: expected {t}"));
            return;
        }
        Some(Value::Array(ts)) if !ts.iter().any(|t| t.as_str().is_some_and(|t| type_matches(t, v))) => {
            errors.push(format!("{here}: expected one of {ts:?}"));
            return;
        }
        _ => {}
    }
    if let Some(Value::Array(allowed)) = schema.get("enum") {
        if !allowed.contains(v) {
            errors.push(format!("{here}: {v} not in enum"));
        }
    }
    if let (Some(min), Some(x)) = (schema.get("minimum").and_then(Value::as_f64), v.as_f64()) {
        if x < min {
            errors.push(format!("{here}: {x} below minimum {min}"));
        }
    }
    if let Value::Object(map) = v {
        let props = schema.get("properties").and_then(Value::as_object);
        if let Some(Value::Array(req)) = schema.get("required") {
            for key in req.iter().filter_map(Value::as_str) {
                if !map.contains_key(key) {
                    errors.push(format!("{here}: missing required field {key}"));
                }
            }
        }
        for (key, value) in map {
            let sub = format!("{path}/{key}");
            match props.and_then(|p| p.get(key)) {
                Some(s) => check(root, s, value, &sub, errors),
                None if schema.get("additionalProperties") == Some(&Value::Bool(false)) => {
                    errors.push(format!("{sub}: unexpected field"));
                }
                None => {}
            }
        }
    }
    if let (Value::Array(items), Some(item_schema)) = (v, schema.get("items")) {
        for (i, item) in items.iter().enumerate() {
            check(root, item_schema, item, &format!("{path}/{i}"), errors);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn shipped_schemas_parse() {
        for kind in ["census", "palindromes", "image", "locate", "verify", "returns", "extend"] {
            let text = schema_for(kind).unwrap();
            let v: Value = serde_json::from_str(text).unwrap();
            assert_eq!(v["type"], "object", "{kind}");
        }
    }

    #[test]
    fn reports_violations() {
        let schema = json!({
            "type": "object",
            "required": ["a", "b"],
            "additionalProperties": false,
            "properties": {
                "a": {"type": "integer", "minimum": 0},
                "b": {"type": "array", "items": {"type": "string", "enum": ["x", "y"]}},
                "c": {"type": ["string", "null"]}
            }
        });
        assert!(validate(&schema, &json!({"a": 1, "b": ["x"], "c": null})).is_empty());
        let errs = validate(&schema, &json!({"a": -1, "b": ["z", 3], "d": true}));
        assert_eq!(errs.len(), 4, "{errs:?}");
        assert_eq!(validate(&schema, &json!({"b": []})), vec!["/: missing required field a"]);
        assert_eq!(validate(&schema, &json!([1])), vec!["/: expected object"]);
    }

    #[test]
    fn follows_local_references() {
        let schema = json!({
            "type": "array",
            "items": {"$ref": "#/$defs/small"},
            "$defs": {"small": {"type": "integer", "minimum": 0}}
        });
        assert!(validate(&schema, &json!([0, 3])).is_empty());
        assert_eq!(validate(&schema, &json!([0, -3])), vec!["/1: -3 below minimum 0"]);
        let dangling = json!({"$ref": "#/$defs/none"});
        assert_eq!(validate(&dangling, &json!(1)).len(), 1);
    }
}

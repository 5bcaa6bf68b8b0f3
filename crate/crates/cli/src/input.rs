use std::io::Read;

use llab_core::limitseries::{ExplicitLimitSeries, SeriesDoc, FORMAT_TAG};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::verbs::{Failure, STATUS_INPUT};

/// A parsed input document and a label naming where it came from.
pub struct Document {
    pub value: Value,
    pub source: String,
}

fn input_error(message: String) -> Failure {
    Failure { status: STATUS_INPUT, message }
}

/// `-` reads standard input; text starting with `{` is an inline document;
/// anything else is a path.
pub fn read_document(arg: Option<&str>) -> Result<Option<Document>, Failure> {
    let Some(arg) = arg else { return Ok(None) };
    let (text, source) = if arg == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| input_error(format!("cannot read standard input: {e}")))?;
        (buf, "standard input".to_string())
    } else if arg.trim_start().starts_with('{') {
        (arg.to_string(), "inline document".to_string())
    } else {
        let text = std::fs::read_to_string(arg).map_err(|e| input_error(format!("cannot read {arg}: {e}")))?;
        (text, arg.to_string())
    };
    let value: Value =
        serde_json::from_str(&text).map_err(|e| input_error(format!("{source}: malformed JSON: {e}")))?;
    if !value.is_object() {
        return Err(input_error(format!("{source}: top level must be an object")));
    }
    Ok(Some(Document { value, source }))
}

/// Overlays the flags that were given on the document, then checks the
/// result against the verb's schema. Errors carry the offending field path.
pub fn merge<T: DeserializeOwned>(doc: Option<Document>, flags: &impl Serialize) -> Result<T, Failure> {
    let (mut fields, source) = match doc {
        Some(Document { value: Value::Object(map), source }) => (map, source),
        _ => (Map::new(), "flags".to_string()),
    };
    if let Some(tag) = fields.remove("format") {
        if tag.as_str() != Some(FORMAT_TAG) {
            return Err(input_error(format!("{source}: field format: expected {FORMAT_TAG:?}, got {tag}")));
        }
    }
    if let Value::Object(given) = serde_json::to_value(flags).expect("flags serialize") {
        fields.extend(given.into_iter().filter(|(_, v)| !v.is_null()));
    }
    typed(Value::Object(fields), &source)
}

fn typed<T: DeserializeOwned>(value: Value, source: &str) -> Result<T, Failure> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let path = e.path().to_string();
        if path == "." {
            input_error(format!("{source}: {}", e.inner()))
        } else {
            input_error(format!("{source}: field {path}: {}", e.inner()))
        }
    })
}

/// Series verbs need a full document; matrices do not fit in flags.
pub fn series(doc: Option<Document>) -> Result<(SeriesDoc, ExplicitLimitSeries), Failure> {
    let doc = doc.ok_or_else(|| input_error("this verb requires --input with a series document".into()))?;
    let parsed: SeriesDoc = typed(doc.value, &doc.source)?;
    let series = ExplicitLimitSeries::try_from(parsed.clone())
        .map_err(|e| input_error(format!("{}: {e}", doc.source)))?;
    Ok((parsed, series))
}

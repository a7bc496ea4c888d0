//! Line lists in solution JSON.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::geometry::{Line, Orientation};
use crate::rational;

pub fn line_json(l: &Line) -> Value {
    match l {
        Line::Axis { orientation, coord } => json!({"orient": orientation.letter(), "c": rational::format(coord)}),
        Line::General { a, b, c } => {
            json!({"a": rational::format(a), "b": rational::format(b), "c": rational::format(c)})
        }
    }
}

pub fn line_from_json(v: &Value) -> Result<Line> {
    let field = |k: &str| -> Result<rational::Rational> {
        let s = v
            .get(k)
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse(format!("line {v} lacks string field {k:?}")))?;
        rational::parse(s)
    };
    match v.get("orient").and_then(Value::as_str) {
        Some("H") => Ok(Line::axis(Orientation::Horizontal, field("c")?)),
        Some("V") => Ok(Line::axis(Orientation::Vertical, field("c")?)),
        Some(o) => Err(Error::Parse(format!("unknown orientation {o:?}"))),
        None => Line::general(field("a")?, field("b")?, field("c")?),
    }
}

/// Lines from a solution document, or from a bare array of line objects.
pub fn lines_from_json_str(s: &str) -> Result<Vec<Line>> {
    let doc: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    let arr = match &doc {
        Value::Array(a) => a,
        Value::Object(o) => o
            .get("lines")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("solution has no \"lines\" array".into()))?,
        _ => return Err(Error::Parse("expected a solution object or a line array".into())),
    };
    arr.iter().map(line_from_json).collect()
}

/// Solution document for a bare line list.
pub fn lines_document(variant: &str, lines: &[Line]) -> Value {
    json!({
        "variant": variant,
        "lines": lines.iter().map(line_json).collect::<Vec<_>>(),
        "size": lines.len(),
    })
}

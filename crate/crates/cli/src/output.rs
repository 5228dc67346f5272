use serde_json::{json, Value};

use nilpair::Error;

pub type Outcome = Result<Value, Error>;

fn kind(e: &Error) -> &'static str {
    match e {
        Error::DivisionByZero => "division_by_zero",
        Error::FieldMismatch { .. } => "field_mismatch",
        Error::InvalidField(_) => "invalid_field",
        Error::Unsupported(_) => "unsupported",
        Error::ParseScalar { .. } => "parse_scalar",
        Error::ShapeMismatch(_) => "shape_mismatch",
        Error::DimensionOutOfRange(_) => "dimension_out_of_range",
        Error::Singular => "singular",
        Error::NotNilpotent(_) => "not_nilpotent",
        Error::NotCommuting => "not_commuting",
        Error::NotInNilC => "not_in_nilc",
        Error::NotSplit(_) => "not_split",
        Error::Inconclusive(_) => "inconclusive",
        Error::Document(_) => "document",
        Error::Internal(_) => "internal",
    }
}

pub fn error_json(e: &Error) -> Value {
    let mut body = json!({ "kind": kind(e), "message": e.to_string() });
    if let Error::NotSplit(ns) = e {
        body["charpoly"] = json!(ns.charpoly);
        body["field"] = json!(ns.field.to_string());
    }
    json!({ "error": body })
}

/// 1 validation, 2 non-split, 3 internal.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NotSplit(_) => 2,
        e if e.is_validation() => 1,
        _ => 3,
    }
}

//! Small helpers for the JSON file formats.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::Value;

/// Integers that fit in `i64` are written as JSON numbers, larger ones as
/// decimal strings.
pub(crate) fn bigint_to_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(n.to_string()),
    }
}

pub(crate) fn bigint_from_json(v: &Value) -> Result<BigInt, String> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| format!("not an integer: {n}")),
        Value::String(s) => s.parse().map_err(|_| format!("not an integer: {s:?}")),
        other => Err(format!("expected integer, found {other}")),
    }
}

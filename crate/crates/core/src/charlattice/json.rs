use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

use super::{FormalCharacter, Lattice};
use crate::error::{Error, Result};
use crate::rootsys::Weight;

/// JSON number when it fits in 64 bits, otherwise a decimal string.
pub fn bigint_to_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => Value::String(x.to_string()),
    }
}

fn bigint_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .or_else(|| n.as_u64().map(BigInt::from))
            .ok_or_else(|| Error::Parse(format!("coefficient {} is not an integer", n))),
        Value::String(s) => s
            .parse()
            .map_err(|_| Error::Parse(format!("coefficient {:?} is not an integer", s))),
        other => Err(Error::Parse(format!("bad coefficient {}", other))),
    }
}

pub(crate) fn weight_to_json(w: &Weight) -> Value {
    Value::Array(w.iter().map(|x| json!(x)).collect())
}

pub(crate) fn weight_from_json(v: &Value) -> Result<Weight> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse(format!("weight must be an array, got {}", v)))?;
    arr.iter()
        .map(|x| {
            x.as_i64()
                .and_then(|y| i32::try_from(y).ok())
                .ok_or_else(|| Error::Parse(format!("bad label {}", x)))
        })
        .collect::<Result<Vec<i32>>>()
        .map(Weight::from)
}

/// `{"type":"C3","terms":[{"w":[2,0,1],"c":5},...]}` with terms sorted
/// lexicographically by exponent.
pub fn character_to_json(c: &FormalCharacter) -> Value {
    let terms: Vec<Value> = c
        .sorted_terms()
        .into_iter()
        .map(|(w, k)| json!({"w": weight_to_json(w), "c": bigint_to_json(k)}))
        .collect();
    json!({"type": c.lattice().to_string(), "terms": terms})
}

/// Parses the canonical format. Repeated exponents and zero coefficients
/// are rejected rather than merged.
pub fn character_from_json(v: &Value) -> Result<FormalCharacter> {
    let ty = v
        .get("type")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Parse("missing \"type\"".into()))?;
    let lattice: Lattice = ty.parse()?;
    let terms = v
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing \"terms\" array".into()))?;
    let mut out = FormalCharacter::zero(lattice.clone());
    for t in terms {
        let w = weight_from_json(t.get("w").ok_or_else(|| Error::Parse("term without \"w\"".into()))?)?;
        w.check_rank(lattice.rank())?;
        let c = bigint_from_json(t.get("c").ok_or_else(|| Error::Parse("term without \"c\"".into()))?)?;
        if c.is_zero() {
            return Err(Error::Parse(format!("zero coefficient at [{}]", w)));
        }
        if out.terms.contains_key(&w) {
            return Err(Error::Parse(format!("repeated exponent [{}]", w)));
        }
        out.terms.insert(w, c);
    }
    Ok(out)
}

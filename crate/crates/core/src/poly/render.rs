use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde_json::{json, Map, Value};

use super::{LaurentPoly, Rational, VarSet};
use crate::error::{Error, Result};

/// `U1^2*Q^-1`; empty string for the unit monomial.
pub(crate) fn monomial_text(vars: &VarSet, m: &[i32]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(vars.name(i).to_string()),
            _ => parts.push(format!("{}^{}", vars.name(i), e)),
        }
    }
    parts.join("*")
}

/// One signed term without its leading sign; returns (negative, body).
fn term_text(vars: &VarSet, m: &[i32], c: &Rational) -> (bool, String) {
    let neg = c.is_negative();
    let abs = c.abs();
    let mono = monomial_text(vars, m);
    let body = if mono.is_empty() {
        abs.to_string()
    } else if abs.is_one() {
        mono
    } else {
        format!("{abs}*{mono}")
    };
    (neg, body)
}

/// Canonical text: terms in descending lexicographic order of exponents.
pub(crate) fn to_text(p: &LaurentPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms.iter().rev().enumerate() {
        let (neg, body) = term_text(&p.vars, m, c);
        match (k, neg) {
            (0, false) => out.push_str(&body),
            (0, true) => {
                out.push('-');
                out.push_str(&body);
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(&body);
            }
            (_, true) => {
                out.push_str(" - ");
                out.push_str(&body);
            }
        }
    }
    out
}

pub(crate) fn rational_json(c: &Rational) -> Value {
    json!({"num": c.numer().to_string(), "den": c.denom().to_string()})
}

pub(crate) fn rational_from_json(v: &Value) -> Result<Rational> {
    let field = |k: &str| -> Result<BigInt> {
        v.get(k)
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse(format!("missing string field {k:?} in coefficient")))?
            .parse::<BigInt>()
            .map_err(|e| Error::Parse(e.to_string()))
    };
    let den = field("den")?;
    if den <= BigInt::from(0) {
        return Err(Error::Parse("denominator must be positive".into()));
    }
    Ok(Rational::new(field("num")?, den))
}

impl LaurentPoly {
    /// `{"vars":[..,"Q"], "terms":[{"coeff":{"num","den"},"exps":{..}}]}`,
    /// terms in the same order as the text rendering.
    pub fn to_json(&self) -> Value {
        let mut vars: Vec<Value> = self.vars.names.iter().map(|n| Value::from(n.as_str())).collect();
        vars.push(Value::from(super::Q_NAME));
        let terms: Vec<Value> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                let mut exps = Map::new();
                for (i, &e) in m.iter().enumerate() {
                    if e != 0 {
                        exps.insert(self.vars.name(i).to_string(), Value::from(e));
                    }
                }
                json!({"coeff": rational_json(c), "exps": Value::Object(exps)})
            })
            .collect();
        json!({"vars": vars, "terms": terms})
    }

    /// Parses the JSON rendering back over the given variable set.
    pub fn from_json(vars: &Arc<VarSet>, v: &Value) -> Result<LaurentPoly> {
        let listed: Vec<&str> = v
            .get("vars")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing vars".into()))?
            .iter()
            .map(|x| x.as_str().ok_or_else(|| Error::Parse("variable names must be strings".into())))
            .collect::<Result<_>>()?;
        let expected: Vec<&str> = (0..vars.arity()).map(|i| vars.name(i)).collect();
        if listed != expected {
            return Err(Error::VarSetMismatch(listed.join(","), expected.join(",")));
        }
        let mut p = LaurentPoly::zero(vars);
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing terms".into()))?;
        for t in terms {
            let c = rational_from_json(t.get("coeff").ok_or_else(|| Error::Parse("missing coeff".into()))?)?;
            let mut m = vec![0; vars.arity()];
            let exps = t
                .get("exps")
                .and_then(Value::as_object)
                .ok_or_else(|| Error::Parse("missing exps".into()))?;
            for (name, e) in exps {
                let idx = vars
                    .index_of(name)
                    .ok_or_else(|| Error::Parse(format!("unknown variable {name}")))?;
                m[idx] = e
                    .as_i64()
                    .and_then(|x| i32::try_from(x).ok())
                    .ok_or_else(|| Error::Parse(format!("bad exponent for {name}")))?;
            }
            p.add_term(m, &c);
        }
        Ok(p)
    }
}

//! JSON form of Burnside ring elements: an array of `[label, "p/q"]` pairs
//! over the nonzero coefficients, in class order.

use std::sync::Arc;

use burnside_core::{BurnsideElement, BurnsideRing, Rational};
use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};

/// Always `p/q`, so integers print as `3/1`.
pub fn rational_to_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts only the `p/q` form.
pub fn parse_rational(text: &str) -> CliResult<Rational> {
    let text = text.trim();
    if !text.contains('/') {
        return Err(CliError::Usage(format!("expected a rational \"p/q\", got {text:?}")));
    }
    text.parse()
        .map_err(|e| CliError::Usage(format!("bad rational {text:?}: {e}")))
}

pub fn element_to_json(x: &BurnsideElement) -> Value {
    let ring = x.ring();
    Value::Array(
        x.coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| json!([ring.class_label(i), rational_to_string(c)]))
            .collect(),
    )
}

pub fn element_from_json(ring: &Arc<BurnsideRing>, value: &Value) -> CliResult<BurnsideElement> {
    let shape = || CliError::Usage("an element is a JSON array of [label, \"p/q\"] pairs".into());
    let terms = value.as_array().ok_or_else(shape)?;
    let mut coeffs = vec![Rational::zero(); ring.rank()];
    let mut seen = vec![false; ring.rank()];
    for term in terms {
        let pair = term.as_array().filter(|p| p.len() == 2).ok_or_else(shape)?;
        let label = pair[0].as_str().ok_or_else(shape)?;
        let coeff = pair[1].as_str().ok_or_else(shape)?;
        let class = ring.class_by_label(label)?;
        if std::mem::replace(&mut seen[class], true) {
            return Err(CliError::Usage(format!("label {label:?} appears twice")));
        }
        coeffs[class] = parse_rational(coeff)?;
    }
    Ok(BurnsideElement::from_coeffs(ring, coeffs)?)
}

/// Parses inline JSON when `arg` looks like an array, otherwise reads the file it names.
pub fn read_element(ring: &Arc<BurnsideRing>, arg: &str) -> CliResult<BurnsideElement> {
    let text = if arg.trim_start().starts_with('[') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|source| CliError::Io {
            path: arg.to_string(),
            source,
        })?
    };
    element_from_json(ring, &serde_json::from_str(&text)?)
}

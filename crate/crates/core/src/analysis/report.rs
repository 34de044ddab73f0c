//! JSON forms of analysis results. Rationals are `"p/q"` strings; reals carry
//! 12 significant digits.

use serde_json::{json, Value};

use super::{PrecisionReport, RegularityPair, RegularityReport};
use crate::numeric::{LaurentPolynomial, Rational, SmallMatrix};

/// `x` rounded to 12 significant digits; `null` when not finite.
pub fn real(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float");
    json!(rounded)
}

fn rationals(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(|r| Value::String(r.to_string())).collect())
}

fn matrix(m: &SmallMatrix) -> Value {
    Value::Array(m.rows().map(rationals).collect())
}

fn laurent(p: &LaurentPolynomial) -> Value {
    json!({
        "lowest_degree": p.lowest_degree(),
        "coefficients": rationals(p.coefficients()),
    })
}

pub fn regularity_json(r: &RegularityReport) -> Value {
    json!({
        "scheme": r.scheme,
        "arity": r.arity,
        "smoothing_order": r.smoothing_order,
        "remainder": laurent(&r.remainder),
        "remainder_coeffs": rationals(&r.remainder_coeffs),
        "matrices": r.matrices.iter().map(matrix).collect::<Vec<_>>(),
        "spectral_radii": r.spectral_radii.iter().copied().map(real).collect::<Vec<_>>(),
        "inf_norms": rationals(&r.inf_norms),
        "spectral_norms": r.spectral_norms.iter().copied().map(real).collect::<Vec<_>>(),
        "upper_norm": r.upper_norm.label(),
        "depth": r.depth,
        "xi_lower": real(r.xi_lower),
        "xi_mid": real(r.xi_mid),
        "xi_upper": real(r.xi_upper),
        "xi_upper_exact": r.xi_upper_exact.as_ref().map(ToString::to_string),
        "r_lower": real(r.r_lower),
        "r_mid": real(r.r_mid),
        "r_upper": real(r.r_upper),
    })
}

pub fn precision_json(scheme: &str, r: &PrecisionReport) -> Value {
    json!({
        "scheme": scheme,
        "degree_of_precision": r.degree_of_precision,
        "degree_of_generation": r.degree_of_generation,
        "parameter_shift": r.parameter_shift.as_ref().map(ToString::to_string),
    })
}

pub fn pair_json(p: &RegularityPair) -> Value {
    json!({
        "binary": regularity_json(&p.binary),
        "quaternary": regularity_json(&p.quaternary),
        "delta_mid": real(p.delta_mid),
    })
}

/// Short human-readable summary of a regularity report.
pub fn regularity_text(r: &RegularityReport) -> String {
    let mut out = format!(
        "{}: arity {}, p = {}, t = {}, nu = {}\n",
        r.scheme,
        r.arity,
        r.smoothing_order,
        r.remainder_coeffs.len().saturating_sub(1),
        r.remainder
    );
    out.push_str(&format!(
        "  xi in [{:.10}, {:.10}] ({} norm), mid {:.10}\n",
        r.xi_lower,
        r.xi_upper,
        r.upper_norm.label(),
        r.xi_mid
    ));
    out.push_str(&format!(
        "  r_lower {:.9}  r_mid {:.9}  r_upper {:.9}\n",
        r.r_lower, r.r_mid, r.r_upper
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_digits() {
        assert_eq!(real(4.124809715123456).to_string(), "4.12480971512");
        assert_eq!(real(2.0).to_string(), "2.0");
        assert_eq!(real(f64::INFINITY), Value::Null);
        assert_eq!(real(1.0 / 3.0).to_string(), "0.333333333333");
    }
}

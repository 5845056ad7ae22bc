//! Ring entries at the JSON boundary.
//!
//! An entry is a JSON number (integral), a decimal string of arbitrary
//! precision, a fraction string `a/b`, a polynomial string in `t` like
//! `t^2 - 3/2*t + 1`, or (over `Qt`) an array of coefficients listed low
//! degree first. Rendering is canonical, so re-serializing a parsed job is
//! idempotent.

use homolog_core::corpus::SampleElement;
use homolog_core::ring::{EuclideanDomain, Integer, RatPoly, Rational};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::Value;

/// A ring that can move across the JSON boundary.
pub trait JsonRing: EuclideanDomain + SampleElement {
    /// Ring tag in job files.
    const TAG: &'static str;

    fn parse_entry(v: &Value) -> Result<Self, String>;

    fn render_entry(&self) -> String;
}

fn parse_bigint(text: &str) -> Result<BigInt, String> {
    text.trim()
        .parse::<BigInt>()
        .map_err(|_| format!("expected an integer, found {text:?}"))
}

fn parse_big_rational(text: &str) -> Result<BigRational, String> {
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let numer = parse_bigint(n)?;
            let denom = parse_bigint(d)?;
            if denom.is_zero() {
                return Err(format!("zero denominator in {text:?}"));
            }
            Ok(BigRational::new(numer, denom))
        }
        None => Ok(BigRational::from_integer(parse_bigint(text)?)),
    }
}

fn number_to_bigint(v: &Value) -> Option<BigInt> {
    let n = v.as_i64()?;
    Some(BigInt::from(n))
}

impl JsonRing for Integer {
    const TAG: &'static str = "Z";

    fn parse_entry(v: &Value) -> Result<Self, String> {
        match v {
            Value::Number(_) => number_to_bigint(v)
                .map(Integer)
                .ok_or_else(|| format!("expected an integer, found {v}")),
            Value::String(s) => parse_bigint(s).map(Integer),
            other => Err(format!("expected an integer entry, found {other}")),
        }
    }

    fn render_entry(&self) -> String {
        format!("{self}")
    }
}

impl JsonRing for Rational {
    const TAG: &'static str = "Q";

    fn parse_entry(v: &Value) -> Result<Self, String> {
        match v {
            Value::Number(_) => number_to_bigint(v)
                .map(|n| Rational(BigRational::from_integer(n)))
                .ok_or_else(|| format!("expected an integral number, found {v}")),
            Value::String(s) => parse_big_rational(s).map(Rational),
            other => Err(format!("expected a rational entry, found {other}")),
        }
    }

    fn render_entry(&self) -> String {
        format!("{self}")
    }
}

impl JsonRing for RatPoly {
    const TAG: &'static str = "Qt";

    fn parse_entry(v: &Value) -> Result<Self, String> {
        match v {
            Value::Number(_) => number_to_bigint(v)
                .map(|n| RatPoly::from_coeffs(vec![BigRational::from_integer(n)]))
                .ok_or_else(|| format!("expected an integral number, found {v}")),
            Value::String(s) => parse_polynomial(s),
            Value::Array(coeffs) => {
                let parsed: Result<Vec<BigRational>, String> = coeffs
                    .iter()
                    .map(|c| match c {
                        Value::Number(_) => number_to_bigint(c)
                            .map(BigRational::from_integer)
                            .ok_or_else(|| format!("expected an integral coefficient, found {c}")),
                        Value::String(s) => parse_big_rational(s),
                        other => Err(format!("expected a coefficient, found {other}")),
                    })
                    .collect();
                Ok(RatPoly::from_coeffs(parsed?))
            }
            other => Err(format!("expected a polynomial entry, found {other}")),
        }
    }

    fn render_entry(&self) -> String {
        format!("{self}")
    }
}

/// Parse a polynomial in `t` with rational coefficients: a sum of terms
/// `c`, `t`, `c*t`, `t^k`, or `c*t^k`, combined with `+` and `-`.
pub fn parse_polynomial(text: &str) -> Result<RatPoly, String> {
    let text: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if text.is_empty() {
        return Err("empty polynomial".into());
    }
    let mut coeffs: Vec<BigRational> = Vec::new();
    let mut add_term = |coeff: BigRational, power: usize| {
        if coeffs.len() <= power {
            coeffs.resize(power + 1, BigRational::zero());
        }
        coeffs[power] += coeff;
    };

    // split into signed terms at top level
    let bytes = text.as_bytes();
    let mut start = 0usize;
    let mut terms: Vec<(bool, &str)> = Vec::new();
    let mut negative = false;
    let mut i = 0usize;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if (c == '+' || c == '-') && i > start {
            terms.push((negative, &text[start..i]));
            negative = c == '-';
            start = i + 1;
        } else if (c == '+' || c == '-') && i == start {
            if i > 0 {
                return Err(format!("dangling sign in polynomial {text:?}"));
            }
            negative = c == '-';
            start = i + 1;
        }
        i += 1;
    }
    if start >= bytes.len() {
        return Err(format!("trailing sign in polynomial {text:?}"));
    }
    terms.push((negative, &text[start..]));

    for (neg, term) in terms {
        let (coeff_text, power) = match term.find('t') {
            None => (term, 0usize),
            Some(pos) => {
                let before = &term[..pos];
                let after = &term[pos + 1..];
                let power = if after.is_empty() {
                    1usize
                } else if let Some(exp) = after.strip_prefix('^') {
                    exp.parse::<usize>()
                        .map_err(|_| format!("bad exponent in term {term:?}"))?
                } else {
                    return Err(format!("unexpected text after variable in term {term:?}"));
                };
                let coeff_text = before.strip_suffix('*').unwrap_or(before);
                (coeff_text, power)
            }
        };
        let mut coeff = if coeff_text.is_empty() {
            BigRational::one()
        } else {
            parse_big_rational(coeff_text)?
        };
        if neg {
            coeff = -coeff;
        }
        add_term(coeff, power);
    }
    Ok(RatPoly::from_coeffs(coeffs))
}

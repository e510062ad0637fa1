//! Matrix text and JSON formats.
//!
//! Text: a header line `m n [symmetric]`, then `m` lines of `n`
//! whitespace-separated rationals (`p`, `p/q`, or an exact decimal such as
//! `0.5`, which parses to `1/2`). JSON:
//! `{"rows":m,"cols":n,"symmetric":bool,"entries":[[...],...]}` where each
//! entry is a JSON integer or a string in any of the text forms.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::matrix::TropMatrix;
use crate::scalar::Scalar;

/// Parses a single rational token: `p`, `p/q`, or an exact decimal.
pub fn parse_rational(token: &str) -> Option<BigRational> {
    let token = token.trim();
    if token.is_empty() {
        return None;
    }
    if let Some((num, den)) = token.split_once('/') {
        let num: BigInt = num.trim().parse().ok()?;
        let den: BigInt = den.trim().parse().ok()?;
        if den.is_zero() {
            return None;
        }
        return Some(BigRational::new(num, den));
    }
    if let Some((int_part, frac_part)) = token.split_once('.') {
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let negative = int_part.starts_with('-');
        let int_part = if int_part == "-" || int_part.is_empty() {
            BigInt::zero()
        } else {
            int_part.parse().ok()?
        };
        let scale = BigInt::from(10u8).pow(frac_part.len() as u32);
        let frac: BigInt = frac_part.parse().ok()?;
        let magnitude = int_part.magnitude() * &scale.magnitude().clone() + frac.magnitude();
        let mut value = BigRational::new(BigInt::from(magnitude), scale);
        if negative {
            value = -value;
        }
        return Some(value);
    }
    let int: BigInt = token.parse().ok()?;
    Some(BigRational::from_integer(int))
}

/// Canonical text for one rational: `p` when integral, else `p/q`.
pub fn format_rational<S: Scalar>(value: &S) -> String {
    let r = value.to_big_rational();
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn scalar_from_token<S: Scalar>(token: &str, line: usize) -> Result<S> {
    let r = parse_rational(token).ok_or_else(|| Error::Parse {
        line,
        message: format!("`{token}` is not a rational"),
    })?;
    S::from_big_rational(&r).ok_or_else(|| Error::Parse {
        line,
        message: format!("`{token}` does not fit the scalar type"),
    })
}

/// Parses the matrix text format.
pub fn parse_matrix<S: Scalar>(text: &str) -> Result<TropMatrix<S>> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let (header_line, header) = lines
        .next()
        .ok_or_else(|| Error::Parse { line: 0, message: "empty input".into() })?;
    let mut tokens = header.split_whitespace();
    let rows: usize = tokens
        .next()
        .and_then(|t| t.parse().ok())
        .filter(|&m| m >= 1)
        .ok_or_else(|| Error::Parse { line: header_line, message: "bad row count".into() })?;
    let cols: usize = tokens
        .next()
        .and_then(|t| t.parse().ok())
        .filter(|&n| n >= 1)
        .ok_or_else(|| Error::Parse { line: header_line, message: "bad column count".into() })?;
    let symmetric = match tokens.next() {
        None => false,
        Some("symmetric") => true,
        Some(other) => {
            return Err(Error::Parse {
                line: header_line,
                message: format!("unexpected header token `{other}`"),
            })
        }
    };
    if tokens.next().is_some() {
        return Err(Error::Parse { line: header_line, message: "trailing header tokens".into() });
    }

    let mut data = Vec::with_capacity(rows * cols);
    for _ in 0..rows {
        let (line_no, line) = lines.next().ok_or_else(|| Error::Parse {
            line: header_line,
            message: format!("expected {rows} data rows"),
        })?;
        let row: Vec<S> = line
            .split_whitespace()
            .map(|t| scalar_from_token(t, line_no))
            .collect::<Result<_>>()?;
        if row.len() != cols {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected {cols} entries, got {}", row.len()),
            });
        }
        data.extend(row);
    }
    if let Some((line_no, _)) = lines.next() {
        return Err(Error::Parse { line: line_no, message: "trailing data".into() });
    }

    let matrix = TropMatrix::new(rows, cols, data)?;
    if symmetric {
        matrix.with_symmetric_marker()
    } else {
        Ok(matrix)
    }
}

/// Emits the matrix text format; `parse_matrix(serialize_matrix(a)) == a`.
pub fn serialize_matrix<S: Scalar>(matrix: &TropMatrix<S>) -> String {
    let mut out = format!(
        "{} {}{}\n",
        matrix.rows(),
        matrix.cols(),
        if matrix.is_symmetric() { " symmetric" } else { "" }
    );
    for i in 1..=matrix.rows() {
        let row: Vec<String> = (1..=matrix.cols())
            .map(|j| format_rational(matrix.entry(i, j)))
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Parses the JSON matrix format.
pub fn parse_matrix_json<S: Scalar>(text: &str) -> Result<TropMatrix<S>> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| Error::Parse { line: e.line(), message: e.to_string() })?;
    let obj = value
        .as_object()
        .ok_or_else(|| Error::Parse { line: 0, message: "expected a JSON object".into() })?;
    let rows = obj
        .get("rows")
        .and_then(Value::as_u64)
        .filter(|&m| m >= 1)
        .ok_or_else(|| Error::Parse { line: 0, message: "bad `rows`".into() })? as usize;
    let cols = obj
        .get("cols")
        .and_then(Value::as_u64)
        .filter(|&n| n >= 1)
        .ok_or_else(|| Error::Parse { line: 0, message: "bad `cols`".into() })? as usize;
    let symmetric = obj.get("symmetric").and_then(Value::as_bool).unwrap_or(false);
    let entries = obj
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse { line: 0, message: "missing `entries`".into() })?;
    if entries.len() != rows {
        return Err(Error::Parse { line: 0, message: format!("expected {rows} entry rows") });
    }

    let mut data = Vec::with_capacity(rows * cols);
    for row in entries {
        let row = row
            .as_array()
            .ok_or_else(|| Error::Parse { line: 0, message: "entry rows must be arrays".into() })?;
        if row.len() != cols {
            return Err(Error::Parse {
                line: 0,
                message: format!("expected {cols} entries per row, got {}", row.len()),
            });
        }
        for cell in row {
            // serde_json's arbitrary-precision numbers keep the literal text,
            // so decimals stay exact.
            let token = match cell {
                Value::Number(n) => n.to_string(),
                Value::String(s) => s.clone(),
                other => {
                    return Err(Error::Parse {
                        line: 0,
                        message: format!("entry {other} is neither number nor string"),
                    })
                }
            };
            data.push(scalar_from_token(&token, 0)?);
        }
    }

    let matrix = TropMatrix::new(rows, cols, data)?;
    if symmetric {
        matrix.with_symmetric_marker()
    } else {
        Ok(matrix)
    }
}

/// Emits the JSON matrix format. Integer entries become JSON numbers,
/// non-integers become `"p/q"` strings.
pub fn matrix_to_json<S: Scalar>(matrix: &TropMatrix<S>) -> Value {
    let entries: Vec<Value> = (1..=matrix.rows())
        .map(|i| {
            (1..=matrix.cols())
                .map(|j| {
                    let r = matrix.entry(i, j).to_big_rational();
                    if r.denom().is_one() {
                        serde_json::Number::from_string_unchecked(r.numer().to_string()).into()
                    } else {
                        Value::String(format!("{}/{}", r.numer(), r.denom()))
                    }
                })
                .collect()
        })
        .collect();
    json!({
        "rows": matrix.rows(),
        "cols": matrix.cols(),
        "symmetric": matrix.is_symmetric(),
        "entries": entries,
    })
}

/// Parses either format, sniffing JSON by a leading `{`.
pub fn parse_matrix_any<S: Scalar>(text: &str) -> Result<TropMatrix<S>> {
    if text.trim_start().starts_with('{') {
        parse_matrix_json(text)
    } else {
        parse_matrix(text)
    }
}

//! Shorthand complex notation: `stalk(d,[n])`, `K(d)[k]`, `koszul(d)[k]`.
//! Shorthand is expanded to the full JSON form before parsing.

use regex::Regex;
use serde_json::Value;
use tlab::complex::{koszul, shift, Complex};
use tlab::json::{FromJson, ToJson};
use tlab::module::FinModule;
use tlab::ring::CyclicRing;
use tlab::{Error, Result};

fn bad(arg: &str, why: &str) -> Error {
    Error::Parse {
        pointer: "/".into(),
        message: format!("cannot read complex `{arg}`: {why}"),
    }
}

fn number<T: std::str::FromStr>(s: &str, arg: &str) -> Result<T> {
    s.trim().parse().map_err(|_| bad(arg, &format!("`{s}` is not an integer")))
}

/// Expand shorthand into the JSON complex literal.
pub fn expand(ring: &CyclicRing, arg: &str) -> Result<Value> {
    let s = arg.trim();
    let stalk = Regex::new(r"^stalk\(\s*(\d+)\s*,\s*\[?\s*(-?\d+)\s*\]?\s*\)$").expect("valid pattern");
    let kos = Regex::new(r"^(?:K|koszul)\(([\d\s,]*)\)(?:\[\s*(-?\d+)\s*\])?$").expect("valid pattern");
    if let Some(c) = stalk.captures(s) {
        let d: u64 = number(&c[1], arg)?;
        let n: i64 = number(&c[2], arg)?;
        let m = FinModule::cyclic(ring, d);
        return Ok(Complex::stalk(&m, n).to_json());
    }
    if let Some(c) = kos.captures(s) {
        let xs: Vec<u64> = c[1]
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| number(t, arg))
            .collect::<Result<_>>()?;
        let k: i64 = c.get(2).map_or(Ok(0), |m| number(m.as_str(), arg))?;
        return Ok(shift(&koszul(ring, &xs), k).to_json());
    }
    Err(bad(arg, "expected JSON, stalk(d,[n]) or K(d)[k]"))
}

/// A complex given as JSON or shorthand.
pub fn parse_complex(ring: &CyclicRing, arg: &str) -> Result<Complex> {
    let s = arg.trim();
    let value = if s.starts_with('{') {
        serde_json::from_str(s).map_err(|e| bad(arg, &e.to_string()))?
    } else {
        expand(ring, s)?
    };
    Complex::from_json(ring, &value)
}

/// Split on commas outside brackets and parentheses.
fn split_top(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out.into_iter().filter(|t| !t.trim().is_empty()).collect()
}

/// A list of complexes: `[K(2)[-1], K(3)[0]]`, or a JSON array.
pub fn parse_complex_list(ring: &CyclicRing, arg: &str) -> Result<Vec<Complex>> {
    let s = arg.trim();
    let inner = s
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| bad(arg, "expected a bracketed list"))?;
    split_top(inner).into_iter().map(|item| parse_complex(ring, item)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shorthand() {
        let r = CyclicRing::new(12).unwrap();
        let x = parse_complex(&r, "stalk(3,[1])").unwrap();
        assert_eq!(x, Complex::stalk(&FinModule::cyclic(&r, 3), 1));
        let k = parse_complex(&r, "K(2)[-1]").unwrap();
        assert_eq!(k, shift(&koszul(&r, &[2]), -1));
        assert_eq!(parse_complex(&r, "koszul(2)").unwrap(), koszul(&r, &[2]));
        let list = parse_complex_list(&r, "[K(2)[-1], K(3)[0]]").unwrap();
        assert_eq!(list.len(), 2);
        assert!(parse_complex(&r, "nonsense").is_err());
    }
}

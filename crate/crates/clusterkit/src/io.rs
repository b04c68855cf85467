//! Quiver and polynomial file formats.
//!
//! Quiver text: a header `n <count> frozen <comma-list-or-none>` followed by
//! one `i j` line per arrow `i -> j`; blank lines and `#` comments are
//! ignored. Quiver JSON: `{"n": 3, "arrows": [[1, 2]], "frozen": []}`.
//! Laurent JSON: `{"terms": [{"coef": 2, "exp": {"1": -1}}]}`.

use std::collections::BTreeMap;

use clusterkit_core::{Error, LaurentPoly, Monomial, Quiver, Result, Vertex};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Serialize, Deserialize)]
struct QuiverJson {
    n: usize,
    arrows: Vec<(Vertex, Vertex)>,
    #[serde(default)]
    frozen: Vec<Vertex>,
}

fn parse_err(line: usize, msg: &str) -> Error {
    Error::Parse(format!("line {line}: {msg}"))
}

/// Parses either quiver format, chosen by the first non-blank character.
pub fn parse_quiver(src: &str) -> Result<Quiver> {
    if src.trim_start().starts_with('{') {
        let j: QuiverJson = serde_json::from_str(src).map_err(|e| Error::Parse(e.to_string()))?;
        return Quiver::new(j.n, &j.arrows, &j.frozen);
    }
    let mut lines = src
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hl, header) = lines.next().ok_or_else(|| Error::Parse("empty quiver file".into()))?;
    let words: Vec<&str> = header.split_whitespace().collect();
    let (n, frozen) = match words.as_slice() {
        ["n", count, "frozen", list] => {
            let n: usize = count.parse().map_err(|_| parse_err(hl, "vertex count is not a number"))?;
            let frozen = if *list == "none" { Vec::new() } else { parse_list(list).map_err(|_| parse_err(hl, "bad frozen list"))? };
            (n, frozen)
        }
        ["n", count] => (count.parse().map_err(|_| parse_err(hl, "vertex count is not a number"))?, Vec::new()),
        _ => return Err(parse_err(hl, "expected `n <count> frozen <list|none>`")),
    };
    let mut arrows = Vec::new();
    for (k, l) in lines {
        let ends: Vec<&str> = l.split_whitespace().collect();
        let [i, j] = ends.as_slice() else { return Err(parse_err(k, "expected `i j`")) };
        let i: Vertex = i.parse().map_err(|_| parse_err(k, "bad tail"))?;
        let j: Vertex = j.parse().map_err(|_| parse_err(k, "bad head"))?;
        arrows.push((i, j));
    }
    Quiver::new(n, &arrows, &frozen)
}

/// Text form accepted by [`parse_quiver`].
pub fn quiver_to_text(q: &Quiver) -> String {
    let frozen: Vec<String> = q.frozen().iter().map(|v| v.to_string()).collect();
    let mut s = format!("n {} frozen {}\n", q.n(), if frozen.is_empty() { "none".into() } else { frozen.join(",") });
    for (i, j) in q.arrows() {
        s.push_str(&format!("{i} {j}\n"));
    }
    s
}

pub fn quiver_to_json(q: &Quiver) -> Value {
    json!({ "n": q.n(), "arrows": q.arrows(), "frozen": q.frozen().iter().collect::<Vec<_>>() })
}

/// Comma-separated integers; empty input gives an empty list.
pub fn parse_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| Error::Parse(format!("`{t}` is not an integer"))))
        .collect()
}

pub fn laurent_to_json(p: &LaurentPoly) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .map(|(m, c)| {
            let exp: BTreeMap<String, i32> = m.iter().map(|(v, e)| (v.to_string(), e)).collect();
            let coef = match LaurentPoly::coefficient_i64(c) {
                Some(x) => json!(x),
                None => json!(c.to_string()),
            };
            json!({ "coef": coef, "exp": exp })
        })
        .collect();
    json!({ "terms": terms })
}

pub fn laurent_from_json(v: &Value) -> Result<LaurentPoly> {
    let bad = |m: &str| Error::Parse(format!("Laurent JSON: {m}"));
    let terms = v.get("terms").and_then(Value::as_array).ok_or_else(|| bad("missing `terms`"))?;
    let mut out = LaurentPoly::zero();
    for t in terms {
        let coef: clusterkit_core::Coeff = match t.get("coef") {
            Some(Value::Number(n)) => n.as_i64().ok_or_else(|| bad("coefficient is not an integer"))?.into(),
            Some(Value::String(s)) => s.parse().map_err(|_| bad("coefficient is not an integer"))?,
            _ => return Err(bad("missing `coef`")),
        };
        let exp = t.get("exp").and_then(Value::as_object).ok_or_else(|| bad("missing `exp`"))?;
        let pairs = exp
            .iter()
            .map(|(k, e)| {
                let v: Vertex = k.parse().map_err(|_| bad("variable index is not an integer"))?;
                let e = e.as_i64().and_then(|e| i32::try_from(e).ok()).ok_or_else(|| bad("exponent is not an integer"))?;
                Ok((v, e))
            })
            .collect::<Result<Vec<_>>>()?;
        out.add_term(Monomial::from_pairs(pairs), coef);
    }
    Ok(out)
}

/// `(a,b,c)`.
pub fn tuple(a: &[i64]) -> String {
    let parts: Vec<String> = a.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_and_json_agree() {
        let text = "# three-cycle\nn 3 frozen none\n1 2\n2 3\n3 1\n";
        let json = r#"{"n":3,"arrows":[[1,2],[2,3],[3,1]],"frozen":[]}"#;
        let a = parse_quiver(text).unwrap();
        assert_eq!(a, parse_quiver(json).unwrap());
        assert_eq!(parse_quiver(&quiver_to_text(&a)).unwrap(), a);
        assert_eq!(parse_quiver(&quiver_to_json(&a).to_string()).unwrap(), a);
    }

    #[test]
    fn frozen_vertices_are_read() {
        let q = parse_quiver("n 3 frozen 2,3\n1 2\n1 3\n").unwrap();
        assert!(q.is_frozen(2) && q.is_frozen(3) && !q.is_frozen(1));
    }

    #[test]
    fn malformed_input_is_rejected() {
        assert!(parse_quiver("").is_err());
        assert!(parse_quiver("3 vertices\n").is_err());
        assert!(parse_quiver("n 2 frozen none\n1\n").is_err());
        assert!(parse_quiver("n 2 frozen none\n1 1\n").is_err());
        assert!(parse_quiver("{\"n\": 2}").is_err());
    }

    #[test]
    fn laurent_json_round_trip() {
        let p = LaurentPoly::parse("(x1 + 2 x2^3 - x3)/(x1^2 x4)").unwrap();
        let v = laurent_to_json(&p);
        assert_eq!(laurent_from_json(&v).unwrap(), p);
        let big = LaurentPoly::parse("123456789012345678901234567890 x1").unwrap();
        assert_eq!(laurent_from_json(&laurent_to_json(&big)).unwrap(), big);
    }
}

//! Line-oriented text format for algebras.
//!
//! ```text
//! # comment
//! n 3
//! unit 2
//! zero 0
//! labels 0 a 1
//! leq
//! 111
//! 011
//! 001
//! join
//! 0 1 2
//! ...
//! ```
//!
//! Sections `join`, `meet`, `mul`, `ldiv`, `rdiv` hold `n` rows of `n`
//! space-separated indices. `leq` rows are `n` bits, optionally spaced.
//! `ldiv`/`rdiv` (and `join`/`meet`) may be omitted and are then derived
//! from `leq` and `mul`. A leading `partial` line marks a partial algebra,
//! whose tables may use `-1` (undefined) and `-2` (strongly undefined).

use super::{residuals_from_mul, FiniteRL, Op, RawTables};
use crate::error::{Error, Result};
use std::collections::BTreeMap;

/// Tables as parsed, before interpretation as a total or partial algebra.
#[derive(Debug, Clone, Default)]
pub struct ParsedDoc {
    pub partial: bool,
    pub n: usize,
    pub unit: Option<usize>,
    pub zero: Option<usize>,
    pub labels: Option<Vec<String>>,
    pub leq: Option<Vec<Vec<bool>>>,
    pub tables: BTreeMap<&'static str, Vec<Vec<i64>>>,
}

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

const SECTIONS: [&str; 6] = ["leq", "join", "meet", "mul", "ldiv", "rdiv"];

/// Parses the text format without interpreting the tables.
pub fn parse_doc(text: &str) -> Result<ParsedDoc> {
    let mut doc = ParsedDoc::default();
    let mut n: Option<usize> = None;
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    let mut i = 0;
    while i < lines.len() {
        let (ln, line) = lines[i];
        let mut words = line.split_whitespace();
        let key = words.next().unwrap();
        let rest: Vec<&str> = words.collect();
        let need_n = |n: Option<usize>| n.ok_or_else(|| perr(ln, "`n` must come first"));
        let index = |s: &str, n: usize| -> Result<usize> {
            let v: usize = s
                .parse()
                .map_err(|_| perr(ln, format!("bad index `{s}`")))?;
            if v >= n {
                return Err(perr(ln, format!("index {v} out of range")));
            }
            Ok(v)
        };
        match key {
            "partial" => doc.partial = true,
            "n" => {
                if rest.len() != 1 {
                    return Err(perr(ln, "expected `n <size>`"));
                }
                let v: usize = rest[0].parse().map_err(|_| perr(ln, "bad size"))?;
                if v == 0 {
                    return Err(perr(ln, "size must be positive"));
                }
                n = Some(v);
            }
            "unit" | "zero" => {
                let nn = need_n(n)?;
                if rest.len() != 1 {
                    return Err(perr(ln, format!("expected `{key} <index>`")));
                }
                let v = index(rest[0], nn)?;
                if key == "unit" {
                    doc.unit = Some(v);
                } else {
                    doc.zero = Some(v);
                }
            }
            "labels" => {
                let nn = need_n(n)?;
                if rest.len() != nn {
                    return Err(perr(ln, format!("expected {nn} labels")));
                }
                doc.labels = Some(rest.iter().map(|s| s.to_string()).collect());
            }
            k if SECTIONS.contains(&k) => {
                let nn = need_n(n)?;
                if !rest.is_empty() {
                    return Err(perr(ln, format!("`{k}` takes no arguments")));
                }
                if i + 1 + nn > lines.len() {
                    return Err(perr(ln, format!("`{k}` needs {nn} rows")));
                }
                let rows = &lines[i + 1..i + 1 + nn];
                if k == "leq" {
                    let mut m = Vec::new();
                    for &(rl, row) in rows {
                        let bits: Vec<char> = row.chars().filter(|c| !c.is_whitespace()).collect();
                        if bits.len() != nn || bits.iter().any(|c| *c != '0' && *c != '1') {
                            return Err(perr(rl, format!("leq row must be {nn} bits")));
                        }
                        m.push(bits.iter().map(|&c| c == '1').collect());
                    }
                    doc.leq = Some(m);
                } else {
                    let mut m = Vec::new();
                    for &(rl, row) in rows {
                        let vals: Vec<i64> = row
                            .split_whitespace()
                            .map(|s| {
                                s.parse::<i64>()
                                    .map_err(|_| perr(rl, format!("bad entry `{s}`")))
                            })
                            .collect::<Result<_>>()?;
                        if vals.len() != nn {
                            return Err(perr(rl, format!("row must have {nn} entries")));
                        }
                        let lo = if doc.partial { -2 } else { 0 };
                        if let Some(v) = vals.iter().find(|&&v| v < lo || v >= nn as i64) {
                            return Err(perr(rl, format!("entry {v} out of range")));
                        }
                        m.push(vals);
                    }
                    let name = SECTIONS.iter().find(|s| **s == k).unwrap();
                    doc.tables.insert(name, m);
                }
                i += nn;
            }
            other => return Err(perr(ln, format!("unknown field `{other}`"))),
        }
        i += 1;
    }
    doc.n = n.ok_or_else(|| perr(0, "missing `n`"))?;
    if doc.leq.is_none() {
        return Err(perr(0, "missing `leq`"));
    }
    if !doc.tables.contains_key("mul") {
        return Err(perr(0, "missing `mul`"));
    }
    Ok(doc)
}

fn to_usize(rows: &[Vec<i64>]) -> Vec<Vec<usize>> {
    rows.iter()
        .map(|r| r.iter().map(|&v| v as usize).collect())
        .collect()
}

/// Parses a total algebra. Missing residual or lattice tables are derived.
pub fn from_text(text: &str) -> Result<FiniteRL> {
    let doc = parse_doc(text)?;
    if doc.partial {
        return Err(perr(1, "document describes a partial algebra"));
    }
    let n = doc.n;
    let leq = doc.leq.clone().unwrap();
    let unit = match doc.unit {
        Some(u) => u,
        None => (0..n)
            .find(|&x| (0..n).all(|y| leq[y][x]))
            .ok_or_else(|| perr(0, "no `unit` and the order has no top"))?,
    };
    let mul = to_usize(&doc.tables["mul"]);
    let complete = ["join", "meet", "ldiv", "rdiv"]
        .iter()
        .all(|k| doc.tables.contains_key(k));
    let a = if complete {
        FiniteRL::from_tables(RawTables {
            leq,
            join: to_usize(&doc.tables["join"]),
            meet: to_usize(&doc.tables["meet"]),
            mul,
            ldiv: to_usize(&doc.tables["ldiv"]),
            rdiv: to_usize(&doc.tables["rdiv"]),
            unit,
            zero: doc.zero,
            labels: None,
        })?
    } else {
        residuals_from_mul(&leq, &mul, unit, doc.zero)?
    };
    // labels follow the original indices, so attach before any unit swap
    let labels = doc.labels.map(|mut l| {
        if unit != n - 1 {
            l.swap(unit, n - 1);
        }
        l
    });
    Ok(a.with_labels(labels))
}

fn write_table(out: &mut String, name: &str, rows: impl Iterator<Item = Vec<String>>) {
    out.push_str(name);
    out.push('\n');
    for r in rows {
        out.push_str(&r.join(" "));
        out.push('\n');
    }
}

/// Serializes an algebra; `from_text(to_text(a)) == a` and the text of a
/// saved file is reproduced exactly by load then save.
pub fn to_text(a: &FiniteRL) -> String {
    let n = a.n();
    let mut out = format!("n {n}\nunit {}\n", a.unit());
    if let Some(z) = a.zero() {
        out.push_str(&format!("zero {z}\n"));
    }
    if let Some(l) = a.labels() {
        out.push_str(&format!("labels {}\n", l.join(" ")));
    }
    out.push_str("leq\n");
    for x in 0..n {
        let row: String = (0..n)
            .map(|y| if a.leq(x, y) { '1' } else { '0' })
            .collect();
        out.push_str(&row);
        out.push('\n');
    }
    for op in Op::ALL {
        write_table(
            &mut out,
            op.name(),
            (0..n).map(|x| (0..n).map(|y| a.op(op, x, y).to_string()).collect()),
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog;

    #[test]
    fn roundtrip_is_exact() {
        for a in [
            catalog::boolean(),
            catalog::lukasiewicz(4),
            catalog::boolean_square(),
            catalog::trivial(),
        ] {
            let t = to_text(&a);
            let b = from_text(&t).unwrap();
            assert_eq!(a, b);
            assert_eq!(to_text(&b), t);
        }
    }

    #[test]
    fn residuals_are_derived_when_omitted() {
        let t = "n 3\nunit 2\nzero 0\nleq\n111\n011\n001\nmul\n0 0 0\n0 1 1\n0 1 2\n";
        let a = from_text(t).unwrap();
        assert_eq!(a.ldiv(1, 0), 0);
        assert_eq!(a.ldiv(1, 1), 2);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let t = "n 2\nleq\n11\n0x\nmul\n0 0\n0 1\n";
        match from_text(t) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("unexpected {other:?}"),
        }
    }
}

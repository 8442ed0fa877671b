//! Text forms: basis-label element syntax and the ring presentation file.
//!
//! Elements are written as signed terms `c label`, e.g. `2e12+1e11` or
//! `3*v1-1v2`. A label that starts with an integer, such as `2e12`, names a
//! scaled unit: a coefficient `c` on it prints as `(2c)e12`, and `4e12` parses
//! back to coefficient 2 on `2e12`.
//!
//! Presentation files look like
//!
//! ```text
//! name: m2gf2
//! dim: 4
//! modulus: 2
//! labels: e11 e12 e21 e22
//! unity: 1 0 0 1
//! products:
//! 1 1 -> 1:1
//! 1 2 -> 2:1
//! ```
//!
//! Indices are 1-based, omitted pairs multiply to zero and `#` starts a comment.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::int::Int;
use crate::ring::{Coords, Modulus, Ring, RingPresentation};

/// Characters that may not appear in basis labels.
pub const RESERVED_LABEL_CHARS: &[char] = &['+', '-', ',', '*', ':', '#'];

pub fn check_label(label: &str) -> Result<()> {
    if label.is_empty()
        || label.chars().any(|c| c.is_whitespace() || RESERVED_LABEL_CHARS.contains(&c))
        || label.chars().all(|c| c.is_ascii_digit())
    {
        return Err(Error::BadParameter(format!("invalid basis label `{label}`")));
    }
    Ok(())
}

/// Splits `2e12` into `(2, "e12")`; `None` for labels without a numeric prefix.
fn scaled_label(label: &str) -> Option<(Int, &str)> {
    let digits = label.bytes().take_while(u8::is_ascii_digit).count();
    if digits == 0 || digits == label.len() {
        return None;
    }
    let scale: Int = label[..digits].parse().ok()?;
    Some((scale, &label[digits..]))
}

pub fn format_element(ring: &Ring, coords: &[Int]) -> String {
    let mut out = String::new();
    for (c, label) in coords.iter().zip(ring.labels()) {
        if c.is_zero() {
            continue;
        }
        let term = match scaled_label(label) {
            Some((k, unit)) => format!("{}{}", c * &k, unit),
            None if label.starts_with(|ch: char| ch.is_ascii_digit()) => format!("{c}*{label}"),
            None if c.is_one() => label.clone(),
            None if (-c).is_one() => format!("-{label}"),
            None => format!("{c}{label}"),
        };
        if !out.is_empty() && !term.starts_with('-') {
            out.push('+');
        }
        out.push_str(&term);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn parse_element(ring: &Ring, input: &str) -> Result<Coords> {
    let err = |message: &str| Error::ElementSyntax {
        input: input.to_string(),
        message: message.to_string(),
    };
    let text: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if text.is_empty() {
        return Err(err("empty element"));
    }
    let mut coords = ring.zero_coords();
    if text == "0" {
        return Ok(coords);
    }

    let mut terms: Vec<(bool, &str)> = Vec::new();
    let mut start = 0;
    let mut negative = false;
    for (idx, ch) in text.char_indices() {
        if ch == '+' || ch == '-' {
            if idx > start {
                terms.push((negative, &text[start..idx]));
            } else if idx != 0 {
                return Err(err("dangling sign"));
            }
            negative = ch == '-';
            start = idx + 1;
        }
    }
    if start >= text.len() {
        return Err(err("trailing sign"));
    }
    terms.push((negative, &text[start..]));

    for (negative, body) in terms {
        let (coeff, index) = parse_term(ring, body).ok_or_else(|| err(&format!("bad term `{body}`")))?;
        let coeff = if negative { -coeff } else { coeff };
        coords[index] = &coords[index] + &coeff;
    }
    ring.reduce(&mut coords);
    Ok(coords)
}

fn parse_term(ring: &Ring, body: &str) -> Option<(Int, usize)> {
    if let Some(i) = ring.label_index(body) {
        return Some((Int::ONE, i));
    }
    if let Some((c, label)) = body.split_once('*') {
        return Some((c.parse().ok()?, ring.label_index(label)?));
    }
    let digits = body.bytes().take_while(u8::is_ascii_digit).count();
    if digits == 0 {
        return None;
    }
    let c: Int = body[..digits].parse().ok()?;
    let rest = &body[digits..];
    if rest.is_empty() {
        return None;
    }
    if let Some(i) = ring.label_index(rest) {
        return Some((c, i));
    }
    ring.labels().iter().enumerate().find_map(|(i, label)| {
        let (k, unit) = scaled_label(label)?;
        (unit == rest && k.divides(&c)).then(|| (c.div_exact(&k), i))
    })
}

/// Comma-separated list of elements.
pub fn parse_elements(ring: &Ring, input: &str) -> Result<Vec<Coords>> {
    input
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| parse_element(ring, s))
        .collect()
}

pub fn format_presentation(p: &RingPresentation) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "name: {}", p.name);
    let _ = writeln!(out, "dim: {}", p.dim);
    let _ = writeln!(out, "modulus: {}", p.modulus.get());
    let _ = writeln!(out, "labels: {}", p.labels.join(" "));
    if let Some(u) = &p.unity {
        let parts: Vec<String> = u.iter().map(Int::to_string).collect();
        let _ = writeln!(out, "unity: {}", parts.join(" "));
    }
    out.push_str("products:\n");
    for (i, row) in p.constants.iter().enumerate() {
        for (j, prod) in row.iter().enumerate() {
            let terms: Vec<String> = prod
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| format!("{}:{}", k + 1, c))
                .collect();
            if !terms.is_empty() {
                let _ = writeln!(out, "{} {} -> {}", i + 1, j + 1, terms.join(" "));
            }
        }
    }
    out
}

pub fn parse_presentation(text: &str) -> Result<RingPresentation> {
    let mut fields: BTreeMap<&str, (usize, &str)> = BTreeMap::new();
    let mut product_lines: Vec<(usize, &str)> = Vec::new();
    let mut in_products = false;

    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if in_products {
            product_lines.push((line_no, line));
            continue;
        }
        let (key, value) = line.split_once(':').ok_or_else(|| Error::Parse {
            line: line_no,
            message: format!("expected `key: value`, got `{line}`"),
        })?;
        let key = key.trim();
        match key {
            "products" => in_products = true,
            "name" | "dim" | "modulus" | "labels" | "unity" => {
                if fields.insert(key, (line_no, value.trim())).is_some() {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("duplicate field `{key}`"),
                    });
                }
            }
            other => {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("unknown field `{other}`"),
                })
            }
        }
    }

    let last_line = text.lines().count().max(1);
    let required = |key: &str| {
        fields.get(key).copied().ok_or_else(|| Error::Parse {
            line: last_line,
            message: format!("missing field `{key}`"),
        })
    };
    let parse_err = |line: usize, message: String| Error::Parse { line, message };

    let (_, name) = required("name")?;
    let (dim_line, dim) = required("dim")?;
    let dim: usize = dim
        .parse()
        .map_err(|_| parse_err(dim_line, format!("bad dim `{dim}`")))?;
    if dim == 0 {
        return Err(parse_err(dim_line, "dim must be at least 1".into()));
    }
    let (mod_line, modulus) = required("modulus")?;
    let modulus = Modulus::new(
        modulus
            .parse()
            .map_err(|_| parse_err(mod_line, format!("bad modulus `{modulus}`")))?,
    );
    let (label_line, labels) = required("labels")?;
    let labels: Vec<String> = labels.split_whitespace().map(str::to_string).collect();
    if labels.len() != dim {
        return Err(parse_err(
            label_line,
            format!("expected {dim} labels, got {}", labels.len()),
        ));
    }
    for l in &labels {
        check_label(l).map_err(|e| parse_err(label_line, e.to_string()))?;
    }

    let parse_coeff = |line: usize, s: &str| -> Result<Int> {
        let c: Int = s
            .parse()
            .map_err(|_| parse_err(line, format!("bad coefficient `{s}`")))?;
        if !modulus.is_canonical(&c) {
            return Err(parse_err(
                line,
                format!("coefficient {c} is not a canonical residue mod {}", modulus.get()),
            ));
        }
        Ok(c)
    };
    let parse_index = |line: usize, s: &str| -> Result<usize> {
        let i: usize = s
            .parse()
            .map_err(|_| parse_err(line, format!("bad index `{s}`")))?;
        if i == 0 || i > dim {
            return Err(parse_err(line, format!("index {i} out of range 1..={dim}")));
        }
        Ok(i - 1)
    };

    let unity = match fields.get("unity") {
        None => None,
        Some(&(line, value)) => {
            let coords = value
                .split_whitespace()
                .map(|s| parse_coeff(line, s))
                .collect::<Result<Coords>>()?;
            if coords.len() != dim {
                return Err(parse_err(
                    line,
                    format!("unity has {} coordinates, expected {dim}", coords.len()),
                ));
            }
            Some(coords)
        }
    };

    let mut p = RingPresentation::zero_products(name, labels, modulus);
    p.unity = unity;
    let mut seen = vec![vec![false; dim]; dim];
    for (line, body) in product_lines {
        let (lhs, rhs) = body
            .split_once("->")
            .ok_or_else(|| parse_err(line, "expected `i j -> k:c ...`".into()))?;
        let idx: Vec<&str> = lhs.split_whitespace().collect();
        if idx.len() != 2 {
            return Err(parse_err(line, "expected two indices before `->`".into()));
        }
        let (i, j) = (parse_index(line, idx[0])?, parse_index(line, idx[1])?);
        if std::mem::replace(&mut seen[i][j], true) {
            return Err(parse_err(line, format!("duplicate product {} {}", i + 1, j + 1)));
        }
        let mut used = vec![false; dim];
        for term in rhs.split_whitespace() {
            let (k, c) = term
                .split_once(':')
                .ok_or_else(|| parse_err(line, format!("expected `k:c`, got `{term}`")))?;
            let k = parse_index(line, k)?;
            if std::mem::replace(&mut used[k], true) {
                return Err(parse_err(line, format!("basis index {} repeated", k + 1)));
            }
            p.constants[i][j][k] = parse_coeff(line, c)?;
        }
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::{self, RingFamily};

    #[test]
    fn scaled_labels_print_in_ambient_units() {
        let r = builtin::build(&RingFamily::Matrix { k: 2, scale: 2, modulus: 0 }).unwrap();
        let e12 = r.label_index("2e12").unwrap();
        let mut v = r.zero_coords();
        v[e12] = Int::from(2);
        assert_eq!(format_element(&r, &v), "4e12");
        assert_eq!(parse_element(&r, "4e12").unwrap(), v);
        assert_eq!(parse_element(&r, "2*2e12").unwrap(), v);
        // 3e12 is not in M2(2Z).
        assert!(parse_element(&r, "3e12").is_err());
    }

    #[test]
    fn signed_terms() {
        let r = builtin::build(&RingFamily::Matrix { k: 2, scale: 1, modulus: 0 }).unwrap();
        let v = parse_element(&r, "2e12 - 1e11 + e22").unwrap();
        assert_eq!(format_element(&r, &v), "-e11+2e12+e22");
        assert_eq!(parse_element(&r, "0").unwrap(), r.zero_coords());
        assert!(parse_element(&r, "2e12+").is_err());
        assert!(parse_element(&r, "e13").is_err());
    }

    #[test]
    fn modular_coefficients_reduce() {
        let r = builtin::build(&RingFamily::Matrix { k: 2, scale: 1, modulus: 3 }).unwrap();
        let v = parse_element(&r, "-1e11+4e22").unwrap();
        assert_eq!(format_element(&r, &v), "2e11+e22");
    }

    #[test]
    fn parser_rejects_bad_files() {
        let base = "name: t\ndim: 2\nmodulus: 4\nlabels: a b\nproducts:\n";
        assert!(parse_presentation(&format!("{base}1 3 -> 1:1\n")).is_err());
        assert!(parse_presentation(&format!("{base}1 1 -> 1:4\n")).is_err());
        assert!(parse_presentation(&format!("{base}1 1 -> 1:-1\n")).is_err());
        assert!(parse_presentation(&format!("{base}1 1 -> 1:1\n1 1 -> 2:1\n")).is_err());
        assert!(parse_presentation("name: t\ndim: 1\nlabels: a\nproducts:\n").is_err());
        let err = parse_presentation(&format!("{base}1 1 -> 3:1\n")).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 6, .. }), "{err:?}");
        let p = parse_presentation(&format!("{base}1 1 -> 1:1 2:3 # comment\n")).unwrap();
        assert_eq!(p.constants[0][0], vec![Int::ONE, Int::from(3)]);
    }

    #[test]
    fn builtin_presentations_round_trip() {
        for fam in [
            RingFamily::Matrix { k: 2, scale: 2, modulus: 0 },
            RingFamily::UpperTriangular { k: 3, modulus: 2 },
            RingFamily::IdempotentSpan { n: 3, p: 2 },
        ] {
            let r = builtin::build(&fam).unwrap();
            let text = format_presentation(r.presentation());
            let back = parse_presentation(&text).unwrap();
            assert_eq!(&back, r.presentation());
        }
    }
}

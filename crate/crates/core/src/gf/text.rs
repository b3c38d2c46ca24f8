//! Text forms of field elements.
//!
//! Prime fields: decimal residue `r`, `0 <= r < p`.
//! Extension fields: `g^k`, `0`, or `[c0,c1,...,c_{e-1}]`; a bare residue
//! `r < p` is also accepted and means `r * 1`.

use super::{construct, Field, FieldElement, GfError};

fn parse_err(text: &str, reason: impl Into<String>) -> GfError {
    GfError::Parse {
        text: text.to_string(),
        reason: reason.into(),
    }
}

pub(super) fn parse(field: &Field, raw: &str) -> Result<FieldElement, GfError> {
    let s = raw.trim();
    if s.is_empty() {
        return Err(parse_err(raw, "empty"));
    }
    if let Some(exp) = s.strip_prefix("g^") {
        let k: u64 = exp
            .trim()
            .parse()
            .map_err(|_| parse_err(raw, "exponent must be a non-negative integer"))?;
        return Ok(field.generator_pow(k));
    }
    if let Some(inner) = s.strip_prefix('[') {
        let inner = inner
            .strip_suffix(']')
            .ok_or_else(|| parse_err(raw, "missing closing ']'"))?;
        let coords = inner
            .split(',')
            .map(|c| c.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| parse_err(raw, "coordinates must be non-negative integers"))?;
        if coords.len() != field.e() as usize {
            return Err(parse_err(
                raw,
                format!("expected {} coordinates, got {}", field.e(), coords.len()),
            ));
        }
        return field
            .from_coords(&coords)
            .ok_or_else(|| parse_err(raw, format!("coordinate out of range [0, {})", field.p())));
    }
    let r: u64 = s
        .parse()
        .map_err(|_| parse_err(raw, "expected a residue, g^k or [c0,...]"))?;
    if r >= field.p() as u64 {
        return Err(parse_err(raw, format!("residue out of range [0, {})", field.p())));
    }
    Ok(field.from_int(r as i64))
}

pub(super) fn format_code(code: u32, p: u32, e: u32) -> String {
    if e == 1 {
        return code.to_string();
    }
    let coords = construct::digits(code, p, e);
    let body = coords
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(",");
    format!("[{body}]")
}

/// Splits on commas outside brackets. Blank input gives an empty list.
pub(crate) fn split_list(s: &str) -> Vec<&str> {
    if s.trim().is_empty() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out
}

//! Text forms for sequences, convolution profiles and weight functions.
//!
//! ```text
//! seq     := const:<c> | geom:<c> | periodic:<c>,<c>,... | file:<path>
//!          | shiftR:<k>(<seq>) | shiftL:<k>(<seq>) | scale:<c>(<seq>)
//!          | sum(<seq>;<seq>) | conv(<seq>;<profile>)
//! profile := finite:<c>,<c>,... | geomtail:c=<c>,ratio=<x> | ratiotel:L=<x>
//! weight  := pow:<x> | linear | poly:<p> | table:<path>
//! ```
//!
//! Every `Display` impl of these types prints this grammar, so parsing a
//! rendered value gives the value back.

use crate::convolution::WeightProfile;
use crate::error::{Error, Result};
use crate::numeric::{parse_complex, Real};
use crate::sequence::SequenceSpec;
use crate::weighted::WeightFunction;

pub fn parse_sequence<R: Real>(text: &str) -> Result<SequenceSpec<R>> {
    let s = text.trim();
    if let Some(rest) = s.strip_prefix("const:") {
        return Ok(SequenceSpec::constant(parse_complex(rest)?));
    }
    if let Some(rest) = s.strip_prefix("geom:") {
        return Ok(SequenceSpec::geometric(parse_complex(rest)?));
    }
    if let Some(rest) = s.strip_prefix("periodic:") {
        return SequenceSpec::periodic(parse_list(rest)?);
    }
    if let Some(rest) = s.strip_prefix("file:") {
        return SequenceSpec::from_file(rest);
    }
    if let Some(rest) = s.strip_prefix("shiftR:") {
        let (k, inner) = head_and_group(rest, s)?;
        return Ok(parse_sequence(inner)?.shift_right(parse_count(k)?));
    }
    if let Some(rest) = s.strip_prefix("shiftL:") {
        let (k, inner) = head_and_group(rest, s)?;
        return Ok(parse_sequence(inner)?.shift_left(parse_count(k)?));
    }
    if let Some(rest) = s.strip_prefix("scale:") {
        let (c, inner) = head_and_group(rest, s)?;
        return Ok(parse_sequence(inner)?.scale(parse_complex(c)?));
    }
    if let Some(rest) = s.strip_prefix("sum") {
        let (a, b) = pair(rest, s)?;
        return Ok(parse_sequence(a)?.plus(parse_sequence(b)?));
    }
    if let Some(rest) = s.strip_prefix("conv") {
        let (a, b) = pair(rest, s)?;
        return Ok(parse_sequence(a)?.convolved(parse_profile(b)?));
    }
    Err(Error::parse(format!("unknown sequence `{s}`")))
}

pub fn parse_profile<R: Real>(text: &str) -> Result<WeightProfile<R>> {
    let s = text.trim();
    if let Some(rest) = s.strip_prefix("finite:") {
        let values = parse_list(rest)?;
        return Ok(WeightProfile::finite(values));
    }
    if let Some(rest) = s.strip_prefix("geomtail:") {
        let mut c = None;
        let mut ratio = None;
        for part in rest.split(',') {
            match part.trim().split_once('=') {
                Some(("c", v)) => c = Some(parse_complex(v)?),
                Some(("ratio", v)) => ratio = Some(R::parse_real(v)?),
                _ => return Err(Error::parse(format!("bad geomtail field `{part}`"))),
            }
        }
        let (Some(c), Some(ratio)) = (c, ratio) else {
            return Err(Error::parse("geomtail needs c=<value>,ratio=<value>"));
        };
        return WeightProfile::geometric_tail(c, ratio);
    }
    if let Some(rest) = s.strip_prefix("ratiotel:") {
        let value = rest
            .trim()
            .strip_prefix("L=")
            .ok_or_else(|| Error::parse("ratiotel needs L=<value>"))?;
        return WeightProfile::ratio_telescoping(R::parse_real(value)?);
    }
    Err(Error::parse(format!("unknown profile `{s}`")))
}

pub fn parse_weight<R: Real>(text: &str) -> Result<WeightFunction<R>> {
    let s = text.trim();
    if s == "linear" {
        return Ok(WeightFunction::Linear);
    }
    if let Some(rest) = s.strip_prefix("pow:") {
        return WeightFunction::power(R::parse_real(rest)?);
    }
    if let Some(rest) = s.strip_prefix("poly:") {
        let p = rest
            .trim()
            .parse()
            .map_err(|_| Error::parse(format!("bad polynomial degree `{rest}`")))?;
        return WeightFunction::polynomial(p);
    }
    if let Some(rest) = s.strip_prefix("table:") {
        return WeightFunction::table_from_file(rest);
    }
    Err(Error::parse(format!("unknown weight function `{s}`")))
}

fn parse_list<R: Real>(text: &str) -> Result<Vec<num_complex::Complex<R>>> {
    text.split(',').map(parse_complex).collect()
}

fn parse_count(text: &str) -> Result<usize> {
    text.trim()
        .parse()
        .map_err(|_| Error::parse(format!("bad shift `{text}`")))
}

/// Splits `head(body)` into `head` and `body`, checking the parentheses match.
fn head_and_group<'a>(text: &'a str, whole: &str) -> Result<(&'a str, &'a str)> {
    let open = text
        .find('(')
        .ok_or_else(|| Error::parse(format!("missing `(` in `{whole}`")))?;
    let body = text[open..]
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| Error::parse(format!("missing `)` in `{whole}`")))?;
    if !balanced(body) {
        return Err(Error::parse(format!("unbalanced parentheses in `{whole}`")));
    }
    Ok((&text[..open], body))
}

/// Splits `(a;b)` at its single top-level `;`.
fn pair<'a>(text: &'a str, whole: &str) -> Result<(&'a str, &'a str)> {
    let (head, body) = head_and_group(text, whole)?;
    if !head.trim().is_empty() {
        return Err(Error::parse(format!("unexpected `{head}` in `{whole}`")));
    }
    let mut depth = 0i32;
    let mut split = None;
    for (i, ch) in body.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ';' if depth == 0 => {
                if split.is_some() {
                    return Err(Error::parse(format!("too many `;` in `{whole}`")));
                }
                split = Some(i);
            }
            _ => {}
        }
    }
    let i = split.ok_or_else(|| Error::parse(format!("expected `;` in `{whole}`")))?;
    Ok((&body[..i], &body[i + 1..]))
}

fn balanced(text: &str) -> bool {
    let mut depth = 0i32;
    for ch in text.chars() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return false;
                }
            }
            _ => {}
        }
    }
    depth == 0
}

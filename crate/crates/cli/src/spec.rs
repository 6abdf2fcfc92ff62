use std::f64::consts::PI;
use std::path::Path;

use cantorval::distribution::{gn_convolution_law_exact, multigeometric_law_exact};
use cantorval::rational::{parse_ratio, to_f64};
use cantorval::{DigitLaw, Error, Result};

/// Parses a law given as inline JSON, `gn:q0` or `multigeo:m:q0`.
///
/// Decimal `q0` values are read exactly, so the resulting law is exact.
pub fn parse_law(text: &str) -> Result<DigitLaw> {
    let t = text.trim();
    if t.starts_with('{') {
        return DigitLaw::from_json(t);
    }
    let parts: Vec<&str> = t.split(':').collect();
    match parts.as_slice() {
        ["gn", q0] => gn_convolution_law_exact(&parse_ratio(q0)?),
        ["multigeo", m, q0] => {
            let m: u32 = m
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad block length {m:?}")))?;
            multigeometric_law_exact(m, &parse_ratio(q0)?)
        }
        _ => Err(Error::Parse(format!(
            "unrecognized law {t:?}; expected JSON, gn:q0 or multigeo:m:q0"
        ))),
    }
}

pub fn read_law(inline: Option<&str>, file: Option<&Path>) -> Result<DigitLaw> {
    match (inline, file) {
        (Some(text), None) => parse_law(text),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
            parse_law(&text)
        }
        _ => Err(Error::InvalidArgument(
            "give exactly one of --law and --law-file".into(),
        )),
    }
}

/// `m:q0` for the block series.
pub fn parse_eta(text: &str) -> Result<(u32, f64)> {
    let (m, q0) = text
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("expected m:q0, got {text:?}")))?;
    let m = m
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad block length {m:?}")))?;
    Ok((m, to_f64(&parse_ratio(q0)?)))
}

/// A real number, optionally followed by `pi`: `2pi`, `-0.5pi`, `pi`.
pub fn parse_real(text: &str) -> Result<f64> {
    let t = text.trim();
    let bad = || Error::Parse(format!("bad number {t:?}"));
    if let Some(head) = t.strip_suffix("pi") {
        let head = head.trim_end_matches('*');
        let k = match head {
            "" => 1.0,
            "-" => -1.0,
            _ => head.parse::<f64>().map_err(|_| bad())?,
        };
        return Ok(k * PI);
    }
    let v: f64 = t.parse().map_err(|_| bad())?;
    if !v.is_finite() {
        return Err(bad());
    }
    Ok(v)
}

/// A comma list of reals, or `start:stop:count` for an evenly spaced grid.
pub fn parse_grid(text: &str) -> Result<Vec<f64>> {
    let t = text.trim();
    if t.contains(':') {
        let parts: Vec<&str> = t.split(':').collect();
        let [a, b, n] = parts.as_slice() else {
            return Err(Error::Parse(format!(
                "expected start:stop:count, got {t:?}"
            )));
        };
        let (a, b) = (parse_real(a)?, parse_real(b)?);
        let n: usize = n
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad count {n:?}")))?;
        return match n {
            0 => Err(Error::Parse("grid needs at least one point".into())),
            1 => Ok(vec![a]),
            _ => Ok((0..n)
                .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
                .collect()),
        };
    }
    t.split(',').map(parse_real).collect()
}

/// Comma-separated list of strictly positive depths, or `a..b` inclusive.
pub fn parse_depths(text: &str) -> Result<Vec<usize>> {
    let bad = || Error::Parse(format!("bad depth list {text:?}"));
    let t = text.trim();
    if let Some((a, b)) = t.split_once("..") {
        let b = b.strip_prefix('=').unwrap_or(b);
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b: usize = b.trim().parse().map_err(|_| bad())?;
        if a > b {
            return Err(bad());
        }
        return Ok((a..=b).collect());
    }
    t.split(',')
        .map(|d| d.trim().parse().map_err(|_| bad()))
        .collect()
}

//! Line-oriented text form of a [`Spectrum`]:
//!
//! ```text
//! n=3 kind=s2 K=2
//! 0,0 3.5449077018110318e0
//! 2,-2 0.0000000000000000e0
//! ...
//! ```
//!
//! Zonal spectra write `k value`. Blank lines and lines starting with `#`
//! are ignored when reading.

use std::fmt::Write as _;

use super::spectrum::{Kind, Spectrum};
use crate::error::{Error, Result};
use crate::numeric::fmt17;

pub fn to_text(s: &Spectrum) -> String {
    let mut out = format!("n={} kind={} K={}\n", s.n(), s.kind(), s.band_limit());
    for k in s.degrees() {
        match s.kind() {
            Kind::Zonal => {
                let _ = writeln!(out, "{k} {}", fmt17(s.zonal_coeff(k)));
            }
            Kind::FullS2 => {
                for (i, v) in s.block(k).iter().enumerate() {
                    let m = i as i64 - k as i64;
                    let _ = writeln!(out, "{k},{m} {}", fmt17(*v));
                }
            }
        }
    }
    out
}

fn header_field<'a>(fields: &[(&'a str, &'a str)], key: &str) -> Result<&'a str> {
    fields
        .iter()
        .find(|(k, _)| *k == key)
        .map(|(_, v)| *v)
        .ok_or_else(|| Error::parse(format!("spectrum header is missing '{key}'")))
}

fn parse_usize(s: &str, what: &str) -> Result<usize> {
    s.parse()
        .map_err(|_| Error::parse(format!("invalid {what} '{s}'")))
}

pub fn from_text(text: &str) -> Result<Spectrum> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::parse("empty spectrum file"))?;
    let fields: Vec<(&str, &str)> = header
        .split_whitespace()
        .map(|f| f.split_once('=').unwrap_or((f, "")))
        .collect();
    let n = parse_usize(header_field(&fields, "n")?, "dimension")?;
    let kind = Kind::from_tag(header_field(&fields, "kind")?)?;
    let band_limit = parse_usize(header_field(&fields, "K")?, "band limit")?;
    let mut s = Spectrum::zeros(n, kind, band_limit)?;

    for (lineno, line) in lines {
        let (index, value) = line
            .split_once(char::is_whitespace)
            .ok_or_else(|| Error::parse(format!("line {lineno}: expected 'index value'")))?;
        let value: f64 = value
            .trim()
            .parse()
            .map_err(|_| Error::parse(format!("line {lineno}: invalid value '{}'", value.trim())))?;
        let (k, m) = match index.split_once(',') {
            Some((k, m)) => {
                let m: i64 = m
                    .parse()
                    .map_err(|_| Error::parse(format!("line {lineno}: invalid order '{m}'")))?;
                (parse_usize(k, "degree")?, m)
            }
            None => (parse_usize(index, "degree")?, 0),
        };
        if k % 2 != 0 || k > band_limit {
            return Err(Error::parse(format!(
                "line {lineno}: degree {k} is not an even degree ≤ {band_limit}"
            )));
        }
        if m.unsigned_abs() as usize > k || (kind == Kind::Zonal && m != 0) {
            return Err(Error::parse(format!("line {lineno}: order {m} invalid for degree {k}")));
        }
        s.set(k, m, value);
    }
    Ok(s)
}

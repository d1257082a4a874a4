//! Text formats for signals, parameter literals and element chains.
//!
//! ```text
//! u := [0,2) [3,4) [7,9)
//! z := empty
//! h := [2,inf)
//! ```
//!
//! Parameters are written `bdc(mr,dr,mf,df)`, `ridc(ur,qr,uf,qf)` and
//! `bridc(mr,dr,mf,df;ur,qr,uf,qf)`; chains are `;`-separated element
//! literals in signal-flow order.

use std::fmt;
use std::str::FromStr;

use crate::conditions::{BdcParams, BridcParams, RidcParams};
use crate::elements::DelayElement;
use crate::error::{Error, Result};
use crate::signal::{Extended, Interval, IntervalSet, Signal};
use crate::time::TimePoint;

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn parse_endpoint(s: &str) -> Result<Extended> {
    match s.trim() {
        "inf" | "+inf" => Ok(Extended::PosInf),
        other => Ok(Extended::Finite(other.parse::<TimePoint>()?)),
    }
}

/// Interval list such as `[0,2) [3,4)`, or `empty`.
pub fn parse_intervals(body: &str) -> Result<IntervalSet> {
    let body = body.trim();
    if body == "empty" {
        return Ok(IntervalSet::empty());
    }
    if body.is_empty() {
        return Err(parse_err("missing interval list (write `empty` for the zero signal)"));
    }
    let mut rest = body;
    let mut intervals = Vec::new();
    while !rest.is_empty() {
        let Some(open) = rest.strip_prefix('[') else {
            return Err(parse_err(format!("expected `[` at `{rest}`")));
        };
        let close = open
            .find(')')
            .ok_or_else(|| parse_err(format!("unterminated interval `[{open}`")))?;
        let (a, b) = open[..close]
            .split_once(',')
            .ok_or_else(|| parse_err(format!("expected `a,b` in `[{}`", &open[..=close])))?;
        let start = parse_endpoint(a)?;
        if start == Extended::PosInf {
            return Err(parse_err("an interval cannot start at inf"));
        }
        intervals.push(Interval::new(start, parse_endpoint(b)?));
        rest = open[close + 1..].trim_start();
    }
    IntervalSet::new(intervals)
}

/// One `NAME := intervals` line.
pub fn parse_signal_line(line: &str) -> Result<(String, Signal)> {
    let (name, body) = line
        .split_once(":=")
        .ok_or_else(|| parse_err(format!("expected `NAME := ...`, got `{line}`")))?;
    let name = name.trim();
    if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
        return Err(parse_err(format!("invalid signal name `{name}`")));
    }
    let signal = crate::signal::make_signal(&parse_intervals(body)?)?;
    Ok((name.to_string(), signal))
}

/// Every signal of a file; blank lines and `#` comments (whole-line or
/// trailing) are skipped.
pub fn parse_signals(text: &str) -> Result<Vec<(String, Signal)>> {
    text.lines()
        .map(|l| l.split_once('#').map_or(l, |(code, _)| code).trim())
        .filter(|l| !l.is_empty())
        .map(parse_signal_line)
        .collect()
}

/// `NAME := ...` in the format accepted by [`parse_signal_line`].
pub fn format_signal(name: &str, s: &Signal) -> String {
    format!("{name} := {}", s.support())
}

/// Splits `name(args)` into the name and the argument text.
fn split_call(s: &str) -> Result<(&str, &str)> {
    let s = s.trim();
    let (name, rest) = s
        .split_once('(')
        .ok_or_else(|| parse_err(format!("expected `name(...)`, got `{s}`")))?;
    let inner = rest
        .strip_suffix(')')
        .ok_or_else(|| parse_err(format!("missing `)` in `{s}`")))?;
    Ok((name.trim(), inner))
}

fn parse_values<const N: usize>(inner: &str, what: &str) -> Result<[TimePoint; N]> {
    let values = inner
        .split(',')
        .map(str::parse::<TimePoint>)
        .collect::<Result<Vec<_>>>()?;
    values
        .try_into()
        .map_err(|v: Vec<_>| parse_err(format!("{what} takes {N} values, got {}", v.len())))
}

fn bdc_from(inner: &str, what: &str) -> Result<BdcParams> {
    let [a, b, c, d] = parse_values::<4>(inner, what)?;
    BdcParams::new(a, b, c, d)
}

fn ridc_from(inner: &str, what: &str) -> Result<RidcParams> {
    let [a, b, c, d] = parse_values::<4>(inner, what)?;
    RidcParams::new(a, b, c, d)
}

fn bridc_from(inner: &str, what: &str) -> Result<BridcParams> {
    let (b, r) = inner
        .split_once(';')
        .ok_or_else(|| parse_err(format!("{what} takes two `;`-separated groups")))?;
    Ok(BridcParams::new(bdc_from(b, what)?, ridc_from(r, what)?))
}

/// A parameter literal of one of the three families.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ParamLiteral {
    Bdc(BdcParams),
    Ridc(RidcParams),
    Bridc(Box<BridcParams>),
}

impl FromStr for ParamLiteral {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, inner) = split_call(s)?;
        match name {
            "bdc" => Ok(ParamLiteral::Bdc(bdc_from(inner, name)?)),
            "ridc" => Ok(ParamLiteral::Ridc(ridc_from(inner, name)?)),
            "bridc" => Ok(ParamLiteral::Bridc(Box::new(bridc_from(inner, name)?))),
            _ => Err(parse_err(format!("unknown parameter family `{name}`"))),
        }
    }
}

impl fmt::Display for ParamLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamLiteral::Bdc(p) => p.fmt(f),
            ParamLiteral::Ridc(p) => p.fmt(f),
            ParamLiteral::Bridc(p) => p.fmt(f),
        }
    }
}

/// One element literal: `wire`, `fixed(d)`, `bde(..)`, `ride(..)`,
/// `bride(..;..)` or `dride(..)`.
pub fn parse_element(s: &str) -> Result<DelayElement> {
    let s = s.trim();
    if s == "wire" {
        return Ok(DelayElement::wire());
    }
    let (name, inner) = split_call(s)?;
    match name {
        "fixed" => DelayElement::fixed(inner.parse::<TimePoint>()?),
        "bde" => DelayElement::full_bde(bdc_from(inner, name)?),
        "ride" => DelayElement::full_ride(ridc_from(inner, name)?),
        "bride" => DelayElement::full_bride(bridc_from(inner, name)?),
        "dride" => DelayElement::dride(bdc_from(inner, name)?),
        _ => Err(parse_err(format!("unknown element `{name}`"))),
    }
}

/// Elements joined by `;` at the top level (a `;` inside parentheses
/// belongs to a `bride` literal).
pub fn parse_chain(s: &str) -> Result<Vec<DelayElement>> {
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0usize, 0usize);
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ';' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    let parts: Vec<&str> = parts.into_iter().filter(|p| !p.trim().is_empty()).collect();
    if parts.is_empty() {
        return Err(parse_err("empty element chain"));
    }
    parts.into_iter().map(parse_element).collect()
}

pub fn format_chain(elements: &[DelayElement]) -> String {
    elements
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::time::tp;

    #[test]
    fn signal_lines() {
        let (name, s) = parse_signal_line("u := [0,2) [3,4) [7,9)").unwrap();
        assert_eq!(name, "u");
        assert_eq!(s, Signal::from_pairs([(0, 2), (3, 4), (7, 9)]).unwrap());
        let (_, z) = parse_signal_line("z := empty").unwrap();
        assert_eq!(z, Signal::zero());
        let (_, h) = parse_signal_line("h := [1/2, inf)").unwrap();
        assert_eq!(h, Signal::step_at(tp((1, 2))).unwrap());
        let (_, d) = parse_signal_line("d := [0.25,1.5)").unwrap();
        assert_eq!(format_signal("d", &d), "d := [1/4,3/2)");
    }

    #[test]
    fn signal_errors() {
        assert!(parse_signal_line("u := [3,1)").is_err());
        assert!(parse_signal_line("u := [0,2) [1,3)").is_err());
        assert!(parse_signal_line("u := [-1,2)").is_err());
        assert!(parse_signal_line("u := ").is_err());
        assert!(parse_signal_line("u = [0,1)").is_err());
        assert!(parse_signal_line("u := [0,1").is_err());
    }

    #[test]
    fn files_round_trip() {
        let text = "# input\nu := [0,2) [3,4)\n\nx := [2,6) [9,inf)  # output\n";
        let sigs = parse_signals(text).unwrap();
        assert_eq!(sigs.len(), 2);
        let printed: String = sigs.iter().map(|(n, s)| format_signal(n, s) + "\n").collect();
        assert_eq!(parse_signals(&printed).unwrap(), sigs);
    }

    #[test]
    fn parameter_literals() {
        let p: ParamLiteral = "bdc(1,2,1,2)".parse().unwrap();
        assert_eq!(p, ParamLiteral::Bdc(BdcParams::new(1, 2, 1, 2).unwrap()));
        let q: ParamLiteral = "bridc(3,6,3,6; 1,4,1,4)".parse().unwrap();
        assert_eq!(q.to_string(), "bridc(3,6,3,6;1,4,1,4)");
        assert!("bdc(1,2,1)".parse::<ParamLiteral>().is_err());
        assert!("xyz(1)".parse::<ParamLiteral>().is_err());
        assert!("bdc(3,2,0,1)".parse::<ParamLiteral>().is_err());
    }

    #[test]
    fn chains() {
        let c = parse_chain("dride(1,2,1,2); dride(2,3,2,3)").unwrap();
        assert_eq!(format_chain(&c), "dride(1,2,1,2); dride(2,3,2,3)");
        let c = parse_chain("wire;fixed(1/2);bride(1,2,1,2;1,2,1,2)").unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(c[2].to_string(), "bride(1,2,1,2;1,2,1,2)");
        assert!(parse_chain("").is_err());
        assert!(parse_chain("fixed(-1)").is_err());
        assert!(parse_chain("bde(0,3,0,1)").is_err());
    }
}

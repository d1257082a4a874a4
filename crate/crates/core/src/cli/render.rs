//! Waveform rasterisation: fixed-width ASCII strips and SVG.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::signal::Signal;
use crate::time::TimePoint;

/// One rendered signal.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Row {
    pub name: String,
    pub strip: String,
}

/// Fails unless every transition of every signal is a multiple of `step`;
/// the message suggests the largest step that works.
pub fn check_grid(signals: &[(String, Signal)], step: &TimePoint) -> Result<()> {
    if step.is_negative() || step.is_zero() {
        return Err(Error::InvalidParams(format!("step must be positive, got {step}")));
    }
    let all: Vec<&TimePoint> = signals.iter().flat_map(|(_, s)| s.transitions()).collect();
    if all.iter().all(|t| t.is_multiple_of(step)) {
        return Ok(());
    }
    let suggestion = all
        .iter()
        .filter(|t| !t.is_zero())
        .fold(None::<TimePoint>, |acc, t| Some(acc.map_or((*t).clone(), |g| g.gcd(t))))
        .expect("some transition is off the grid, hence nonzero");
    Err(Error::InvalidParams(format!(
        "step {step} does not divide every transition; try --step {suggestion}"
    )))
}

/// Column `k` shows the value at `k * step`; `/` and `\` mark rising and
/// falling edges at that instant.
pub fn ascii_strip(s: &Signal, step: &TimePoint, width: usize) -> String {
    let mut t = TimePoint::zero();
    let mut out = String::with_capacity(width * 3);
    for _ in 0..width {
        let c = if s.is_rising_at(&t) {
            '/'
        } else if s.is_falling_at(&t) {
            '\\'
        } else if s.eval_at(&t) {
            '▔'
        } else {
            '_'
        };
        out.push(c);
        t += step;
    }
    out
}

pub fn rows(signals: &[(String, Signal)], step: &TimePoint, width: usize) -> Vec<Row> {
    signals
        .iter()
        .map(|(name, s)| Row {
            name: name.clone(),
            strip: ascii_strip(s, step, width),
        })
        .collect()
}

/// Rows with right-aligned names, followed by a tick line every 5 columns.
pub fn ascii_block(rows: &[Row], step: &TimePoint, width: usize) -> String {
    let pad = rows.iter().map(|r| r.name.chars().count()).max().unwrap_or(0).max(1);
    let mut out = String::new();
    for r in rows {
        let _ = writeln!(out, "{:>pad$} {}", r.name, r.strip);
    }
    let ticks: String = (0..width).map(|k| if k % 5 == 0 { '|' } else { ' ' }).collect();
    let _ = writeln!(out, "{:>pad$} {}", "", ticks.trim_end());
    let mut labels = String::new();
    for k in (0..width).step_by(5) {
        let len = labels.chars().count();
        if len > k {
            continue;
        }
        labels.push_str(&" ".repeat(k - len));
        labels.push_str(&(TimePoint::from_integer(k as i64) * step).to_string());
    }
    let _ = writeln!(out, "{:>pad$} {}", "t", labels);
    out
}

fn to_f64(t: &TimePoint) -> f64 {
    use num_traits::ToPrimitive;
    t.as_ratio().to_f64().unwrap_or(f64::NAN)
}

/// SVG with one trace per signal; every transition carries a filled bullet
/// at the value taken at that instant and a hollow one at the left limit.
pub fn svg(signals: &[(String, Signal)], step: &TimePoint, width: usize) -> String {
    const COL: f64 = 16.0;
    const ROW: f64 = 48.0;
    const LEFT: f64 = 60.0;
    let horizon = TimePoint::from_integer(width as i64) * step;
    let scale = COL / to_f64(step);
    let w = LEFT + COL * width as f64 + 10.0;
    let h = ROW * signals.len() as f64 + 10.0;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    for (i, (name, s)) in signals.iter().enumerate() {
        let base = ROW * i as f64 + 38.0;
        let level = |v: bool| if v { base - 24.0 } else { base };
        let x_of = |t: &TimePoint| LEFT + to_f64(t) * scale;
        let _ = writeln!(
            out,
            r#"  <text x="4" y="{}" font-family="monospace" font-size="12">{name}</text>"#,
            base - 8.0
        );
        let mut points = vec![(LEFT, level(s.eval_at(&TimePoint::zero())))];
        let mut bullets = Vec::new();
        for t in s.transitions().iter().filter(|t| **t <= horizon) {
            let x = x_of(t);
            let (before, after) = (s.left_limit_at(t), s.eval_at(t));
            points.push((x, level(before)));
            points.push((x, level(after)));
            bullets.push((x, level(after), true));
            bullets.push((x, level(before), false));
        }
        points.push((x_of(&horizon), level(s.eval_at(&horizon))));
        let path: Vec<String> = points.iter().map(|(x, y)| format!("{x},{y}")).collect();
        let _ = writeln!(
            out,
            r#"  <polyline fill="none" stroke="black" stroke-width="1.5" points="{}"/>"#,
            path.join(" ")
        );
        for (x, y, closed) in bullets {
            let fill = if closed { "black" } else { "white" };
            let _ = writeln!(
                out,
                r#"  <circle cx="{x}" cy="{y}" r="3" fill="{fill}" stroke="black"/>"#
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

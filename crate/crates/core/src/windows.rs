//! Sliding closed-window infimum and supremum.
//!
//! For a window `(d, m)` with `0 <= m <= d`:
//!
//! * `erode(u)(t) = 1` iff `u = 1` on all of `[t-d, t-d+m]`
//! * `dilate(u)(t) = 1` iff `u = 1` somewhere in `[t-d, t-d+m]`
//!
//! Against half-open constancy intervals the closed window gives exact
//! contribution rules: a maximal 1-interval `[a, b)` of `u` contributes
//! `[a+d, b+d-m)` to the erosion (nothing when `b - a <= m`, so a pulse is
//! passed on only when strictly longer than `m`) and `[a+d-m, b+d)` to the
//! dilation.

use std::fmt;

use crate::error::{Error, Result};
use crate::signal::{Extended, Interval, Signal, StepFunction};
use crate::time::{IntoTimePoint, TimePoint};

/// Window offset `d` and width `m`, `0 <= m <= d`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WindowSpec {
    d: TimePoint,
    m: TimePoint,
}

impl WindowSpec {
    pub fn new(d: impl IntoTimePoint, m: impl IntoTimePoint) -> Result<Self> {
        let (d, m) = (d.into_time_point(), m.into_time_point());
        if m.is_negative() || d.is_negative() || m > d {
            return Err(Error::InvalidWindow { d: Box::new(d), m: Box::new(m) });
        }
        Ok(WindowSpec { d, m })
    }

    pub fn offset(&self) -> &TimePoint {
        &self.d
    }

    pub fn width(&self) -> &TimePoint {
        &self.m
    }
}

impl fmt::Display for WindowSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[t-{}, t-{}+{}]", self.d, self.d, self.m)
    }
}

/// Closed-window infimum `t -> AND_{xi in [t-d, t-d+m]} u(xi)`.
pub fn erode(u: &StepFunction, w: &WindowSpec) -> StepFunction {
    let shrink = &w.d - &w.m;
    let pieces = u
        .ones()
        .into_iter()
        .map(|iv| Interval::new(iv.start.shift(&w.d), iv.end.shift(&shrink)))
        .collect();
    StepFunction::union_of(pieces)
}

/// Closed-window supremum `t -> OR_{xi in [t-d, t-d+m]} u(xi)`.
pub fn dilate(u: &StepFunction, w: &WindowSpec) -> StepFunction {
    let lead = &w.d - &w.m;
    let pieces = u
        .ones()
        .into_iter()
        .map(|iv| Interval::new(iv.start.shift(&lead), iv.end.shift(&w.d)))
        .collect();
    StepFunction::union_of(pieces)
}

/// Erosion computed through the derivative instead of the interval rule:
/// `u(t-d+m)` and no transition of `u` inside `(t-d, t-d+m]`.
pub fn erode_via_derivative(u: &StepFunction, w: &WindowSpec) -> StepFunction {
    let lead = &w.d - &w.m;
    let at_right_end = u.translate(&lead);
    if w.m.is_zero() {
        return at_right_end;
    }
    // tau in (t-d, t-d+m]  <=>  t in [tau+d-m, tau+d)
    let disturbed = StepFunction::union_of(
        u.derivative_set()
            .into_iter()
            .map(|tau| Interval::new(&tau + &lead, &tau + &w.d))
            .collect(),
    );
    at_right_end.and(&disturbed.not())
}

/// Erosion of a signal is a signal.
pub fn erode_signal(u: &Signal, w: &WindowSpec) -> Signal {
    Signal::try_from(erode(u, w)).expect("erosion of a signal stays in [0, inf)")
}

/// Dilation of a signal is a signal.
pub fn dilate_signal(u: &Signal, w: &WindowSpec) -> Signal {
    Signal::try_from(dilate(u, w)).expect("dilation of a signal stays in [0, inf)")
}

/// Whether `u = 1` on the whole half-open window `[start, start+len)`;
/// vacuously true for `len = 0`.
pub fn all_ones_half_open(u: &StepFunction, start: &TimePoint, len: &TimePoint) -> bool {
    if len.is_zero() {
        return true;
    }
    let end = Extended::Finite(start + len);
    let start = Extended::Finite(start.clone());
    u.ones()
        .iter()
        .any(|iv| iv.start <= start && end <= iv.end)
}

/// Whether `u = 1` somewhere in the half-open window `[start, start+len)`;
/// false for `len = 0`.
pub fn any_one_half_open(u: &StepFunction, start: &TimePoint, len: &TimePoint) -> bool {
    if len.is_zero() {
        return false;
    }
    let end = Extended::Finite(start + len);
    let start = Extended::Finite(start.clone());
    u.ones().iter().any(|iv| iv.start < end && start < iv.end)
}

//! Bounded relative inertial delays: bounded and inertial at once.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::signal::{Extended, Signal};
use crate::time::TimePoint;

use super::{check_bdc, check_ridc, BridcParams, CheckReport};

fn chain(xs: &[&TimePoint]) -> bool {
    xs.windows(2).all(|w| w[0] <= w[1])
}

/// The four alternative inequality chains, each of which makes the
/// bounded relative inertial condition solvable for every input.
pub fn cc_bridc_disjuncts(p: &BridcParams) -> [bool; 4] {
    let b = &p.bdc;
    let r = &p.ridc;
    let (m_r, d_r, m_f, d_f) = (b.m_r(), b.d_r(), b.m_f(), b.d_f());
    let (mu_r, de_r, mu_f, de_f) = (r.mu_r(), r.delta_r(), r.mu_f(), r.delta_f());

    let lo_r = d_r - m_r; // falling lower bound
    let lo_f = d_f - m_f; // rising lower bound

    let a = chain(&[&lo_f, de_r, d_r, &(de_r - mu_r + m_r)])
        && chain(&[&lo_r, de_f, d_f, &(de_f - mu_f + m_f)]);
    let b = chain(&[&(&lo_r + mu_r), de_r, &lo_f, d_r])
        && chain(&[&(&lo_f + mu_f), de_f, &lo_r, d_f]);
    let c = chain(&[&lo_f, de_r, &(&lo_r + mu_r), d_r])
        && chain(&[&lo_r, de_f, &(&lo_f + mu_f), d_f]);
    let d = chain(&[de_r, &lo_f, &(de_r + m_r - mu_r), d_r])
        && chain(&[de_f, &lo_r, &(de_f + m_f - mu_f), d_f]);
    [a, b, c, d]
}

/// Consistency of the bounded relative inertial condition: any of the four
/// chains holds.
pub fn cc_bridc(p: &BridcParams) -> bool {
    cc_bridc_disjuncts(p).into_iter().any(|b| b)
}

/// Conjunction of the bounded and the relative inertial conditions.
pub fn check_bridc(u: &Signal, p: &BridcParams, x: &Signal) -> CheckReport {
    check_bdc(u, &p.bdc, x).and(check_ridc(u, &p.ridc, x))
}

/// One stretch of the timeline traced by a single long input pulse.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct TimelinePhase {
    #[serde(serialize_with = "ser_extended")]
    pub start: Extended,
    pub start_closed: bool,
    #[serde(serialize_with = "ser_extended")]
    pub end: Extended,
    pub end_closed: bool,
    pub label: &'static str,
}

fn ser_extended<S: serde::Serializer>(e: &Extended, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(e)
}

impl TimelinePhase {
    pub fn contains(&self, t: &TimePoint) -> bool {
        let t = Extended::Finite(t.clone());
        let after_start = if self.start_closed { self.start <= t } else { self.start < t };
        let before_end = if self.end_closed { t <= self.end } else { t < self.end };
        after_start && before_end
    }
}

/// Phases of the output for the input `chi_[0, tau)` under parameters with
/// `d_f - m_f <= delta_f - mu_f <= delta_r <= d_r` and
/// `d_r - m_r <= delta_r - mu_r <= delta_f <= d_f` (which imply the first
/// consistency chain), with `tau > m_r`.
pub fn bridc_timeline(p: &BridcParams, tau: &TimePoint) -> Result<Vec<TimelinePhase>> {
    let b = &p.bdc;
    let r = &p.ridc;
    let lo_f = b.d_f() - b.m_f();
    let lo_r = b.d_r() - b.m_r();
    let ok = chain(&[&lo_f, &(r.delta_f() - r.mu_f()), r.delta_r(), b.d_r()])
        && chain(&[&lo_r, &(r.delta_r() - r.mu_r()), r.delta_f(), b.d_f()]);
    if !ok {
        return Err(Error::PreconditionFailed(format!(
            "{p} does not satisfy the strengthened ordering of delays"
        )));
    }
    if tau <= b.m_r() {
        return Err(Error::PreconditionFailed(format!(
            "pulse length {tau} must exceed m_r = {}",
            b.m_r()
        )));
    }
    let fin = |t: TimePoint| Extended::Finite(t);
    let phase = |start, start_closed, end, end_closed, label| TimelinePhase {
        start,
        start_closed,
        end,
        end_closed,
        label,
    };
    Ok(vec![
        phase(Extended::NegInf, false, fin(lo_f.clone()), false, "x = 0 forced"),
        phase(
            fin(lo_f),
            true,
            fin(r.delta_f() - r.mu_f()),
            false,
            "x = 0; bound allows 1, only falls licensed",
        ),
        phase(
            fin(r.delta_f() - r.mu_f()),
            true,
            fin(r.delta_r().clone()),
            false,
            "x = 0; bound allows 1, no edge licensed",
        ),
        phase(
            fin(r.delta_r().clone()),
            true,
            fin(b.d_r().clone()),
            true,
            "exactly one rising edge",
        ),
        phase(
            fin(b.d_r().clone()),
            false,
            fin(b.d_r() + tau - b.m_r()),
            false,
            "x = 1 forced",
        ),
        phase(
            fin(b.d_r() + tau - b.m_r()),
            true,
            fin(r.delta_r() + tau - r.mu_r()),
            false,
            "x = 1; bound allows 0, only rises licensed",
        ),
        phase(
            fin(r.delta_r() + tau - r.mu_r()),
            true,
            fin(r.delta_f() + tau),
            false,
            "x = 1; bound allows 0, no edge licensed",
        ),
        phase(
            fin(r.delta_f() + tau),
            true,
            fin(b.d_f() + tau),
            true,
            "exactly one falling edge",
        ),
        phase(fin(b.d_f() + tau), false, Extended::PosInf, false, "x = 0 forced"),
    ])
}

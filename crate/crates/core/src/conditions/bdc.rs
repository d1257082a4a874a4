//! Stability, bounded delays, fixed delays and constant-delay bounds.

use crate::error::{Error, Result};
use crate::signal::Signal;
use crate::time::TimePoint;
use crate::windows::{dilate, erode};

use super::{BdcParams, CheckReport};

/// Stability: the limits at infinity of `u` and `x` agree. With finitely
/// many transitions both limits always exist.
pub fn check_sc(u: &Signal, x: &Signal) -> CheckReport {
    if u.final_value() == x.final_value() {
        return CheckReport::pass();
    }
    let settle = [u.transitions().last(), x.transitions().last()]
        .into_iter()
        .flatten()
        .max()
        .cloned()
        .unwrap_or_else(TimePoint::zero);
    CheckReport::fail(
        settle,
        format!(
            "limits differ: u settles to {}, x settles to {}",
            u8::from(u.final_value()),
            u8::from(x.final_value())
        ),
    )
}

fn cc_violation(p: &BdcParams) -> Option<String> {
    if p.d_r() - p.m_r() > *p.d_f() {
        return Some(format!(
            "d_r - m_r > d_f ({} - {} > {})",
            p.d_r(),
            p.m_r(),
            p.d_f()
        ));
    }
    if p.d_f() - p.m_f() > *p.d_r() {
        return Some(format!(
            "d_f - m_f > d_r ({} - {} > {})",
            p.d_f(),
            p.m_f(),
            p.d_r()
        ));
    }
    None
}

/// Consistency: `d_r - m_r <= d_f` and `d_f - m_f <= d_r`.
pub fn cc_bdc(p: &BdcParams) -> bool {
    cc_violation(p).is_none()
}

pub(crate) fn require_cc(p: &BdcParams) -> Result<()> {
    match cc_violation(p) {
        Some(msg) => Err(Error::ConsistencyViolated(msg)),
        None => Ok(()),
    }
}

/// An input whose bounded-delay solution set is empty, together with the
/// instant where the lower bound is 1 while the upper bound is 0.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CcWitness {
    pub input: Signal,
    pub time: TimePoint,
}

/// For inconsistent parameters the two windows at some instant are disjoint;
/// build `u` that is 1 on the rising window and 0 on the falling one.
pub fn cc_witness(p: &BdcParams) -> Option<CcWitness> {
    let one = TimePoint::one();
    let t = p.d_r().clone().max(p.d_f().clone()) + &one;
    let rise_start = &t - p.d_r();
    let rise_end = &rise_start + p.m_r();
    let fall_start = &t - p.d_f();
    let fall_end = &fall_start + p.m_f();
    let two = TimePoint::from_integer(2);
    let input = if rise_end < fall_start {
        // rising window first: stop halfway into the gap
        let gap = &fall_start - &rise_end;
        Signal::from_pairs([(rise_start, &rise_end + &gap / &two)])
    } else if fall_end < rise_start {
        // falling window first: start halfway into the gap
        let gap = &rise_start - &fall_end;
        Signal::from_pairs([(&rise_start - &gap / &two, &rise_end + &one)])
    } else {
        return None;
    };
    Some(CcWitness {
        input: input.expect("witness windows lie in [0, inf)"),
        time: t,
    })
}

/// `erode(u, rise) <= x <= dilate(u, fall)`.
pub fn check_bdc(u: &Signal, p: &BdcParams, x: &Signal) -> CheckReport {
    let lower = erode(u, &p.rise_window());
    let upper = dilate(u, &p.fall_window());
    let below = match lower.leq_witness(x) {
        Ok(()) => CheckReport::pass(),
        Err(t) => CheckReport::fail(
            t.expect("signals vanish near -inf"),
            format!(
                "x = 0 but u = 1 on the whole window [t-{}, t-{}+{}]",
                p.d_r(),
                p.d_r(),
                p.m_r()
            ),
        ),
    };
    let above = match x.leq_witness(&upper) {
        Ok(()) => CheckReport::pass(),
        Err(t) => CheckReport::fail(
            t.expect("signals vanish near -inf"),
            format!(
                "x = 1 but u = 0 on the whole window [t-{}, t-{}+{}]",
                p.d_f(),
                p.d_f(),
                p.m_f()
            ),
        ),
    };
    below.and_earliest(above)
}

/// `x = erode(u, rise) | (y & dilate(u, fall))`: every selector `y` gives a
/// solution, and every solution arises this way.
pub fn bdc_solution(u: &Signal, p: &BdcParams, y: &Signal) -> Result<Signal> {
    require_cc(p)?;
    let lower = erode(u, &p.rise_window());
    let upper = dilate(u, &p.fall_window());
    let x = lower.or(&y.as_step().and(&upper));
    Ok(Signal::try_from(x).expect("bounded by the dilation of a signal"))
}

/// `x(t) = u(t - d)`.
pub fn fdc_apply(u: &Signal, d: &TimePoint) -> Result<Signal> {
    u.delayed(d)
}

pub fn check_fdc(u: &Signal, d: &TimePoint, x: &Signal) -> Result<CheckReport> {
    let expected = fdc_apply(u, d)?;
    Ok(match expected.first_difference(x) {
        None => CheckReport::pass(),
        Some(t) => CheckReport::fail(
            t.expect("signals agree near -inf"),
            format!("x(t) != u(t - {d})"),
        ),
    })
}

/// Every rising edge of `x` at `t` has `u(t - d_r) = 1` and every falling
/// edge has `u(t - d_f) = 0`.
pub fn check_constant_bounds(
    u: &Signal,
    x: &Signal,
    d_r: &TimePoint,
    d_f: &TimePoint,
) -> Result<CheckReport> {
    for d in [d_r, d_f] {
        if d.is_negative() {
            return Err(Error::NegativeDelay(d.clone()));
        }
    }
    let rises = x
        .rising_edges()
        .find(|t| !u.eval_at(&(*t - d_r)))
        .map(|t| CheckReport::fail(t.clone(), format!("rising edge with u(t - {d_r}) = 0")))
        .unwrap_or_else(CheckReport::pass);
    let falls = x
        .falling_edges()
        .find(|t| u.eval_at(&(*t - d_f)))
        .map(|t| CheckReport::fail(t.clone(), format!("falling edge with u(t - {d_f}) = 1")))
        .unwrap_or_else(CheckReport::pass);
    Ok(rises.and_earliest(falls))
}

/// Lower and upper bounding functions of the bounded delay condition.
#[cfg(test)]
fn bounds(u: &crate::signal::StepFunction, p: &BdcParams) -> (crate::signal::StepFunction, crate::signal::StepFunction) {
    (erode(u, &p.rise_window()), dilate(u, &p.fall_window()))
}

//! Relative inertial delays: output edges must be licensed by a persistent
//! input level.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::signal::{Signal, StepFunction};
use crate::time::TimePoint;
use crate::windows::erode;

use super::{check_sc, probe_points, CheckReport, RidcParams};

/// Result of the non-zenoness predicate.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct NzcReport {
    pub holds: bool,
    /// Both inequalities hold with equality.
    pub trivial: bool,
}

/// `delta_r - mu_r <= delta_f` and `delta_f - mu_f <= delta_r`.
pub fn nzc(p: &RidcParams) -> NzcReport {
    let lhs_r = p.delta_r() - p.mu_r();
    let lhs_f = p.delta_f() - p.mu_f();
    NzcReport {
        holds: lhs_r <= *p.delta_f() && lhs_f <= *p.delta_r(),
        trivial: lhs_r == *p.delta_f() && lhs_f == *p.delta_r(),
    }
}

/// Licensing functions: `u = 1` on the rising window, `u = 0` on the
/// falling window.
pub(crate) fn licences(u: &StepFunction, p: &RidcParams) -> (StepFunction, StepFunction) {
    (erode(u, &p.rise_window()), erode(&u.not(), &p.fall_window()))
}

/// Stability plus: every rising edge of `x` falls where `u` has been 1
/// over the rising window, every falling edge where `u` has been 0 over the
/// falling window. Away from the edges of `x` the inequalities are vacuous,
/// so only edges are inspected.
pub fn check_ridc(u: &Signal, p: &RidcParams, x: &Signal) -> CheckReport {
    let (rise_ok, fall_ok) = licences(u, p);
    let rises = x
        .rising_edges()
        .find(|t| !rise_ok.eval_at(t))
        .map(|t| {
            CheckReport::fail(
                t.clone(),
                format!(
                    "rising edge not licensed: u is not 1 on [t-{}, t-{}+{}]",
                    p.delta_r(),
                    p.delta_r(),
                    p.mu_r()
                ),
            )
        })
        .unwrap_or_else(CheckReport::pass);
    let falls = x
        .falling_edges()
        .find(|t| !fall_ok.eval_at(t))
        .map(|t| {
            CheckReport::fail(
                t.clone(),
                format!(
                    "falling edge not licensed: u is not 0 on [t-{}, t-{}+{}]",
                    p.delta_f(),
                    p.delta_f(),
                    p.mu_f()
                ),
            )
        })
        .unwrap_or_else(CheckReport::pass);
    rises.and_earliest(falls).and(check_sc(u, x))
}

/// The two equivalent ways of writing the edge inequalities.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RidcForm {
    /// `!x(t-0) x(t) <= Phi_r(t)`
    Plain,
    /// `!x(t-0) x(t) <= !x(t-0) Phi_r(t)`
    Premultiplied,
}

/// Evaluates the edge inequalities (plus stability) at every instant
/// instead of only at edges.
pub fn check_ridc_pointwise(u: &Signal, p: &RidcParams, x: &Signal, form: RidcForm) -> CheckReport {
    let (rise_ok, fall_ok) = licences(u, p);
    for t in probe_points(&[x, &rise_ok, &fall_ok]) {
        let (prev, now) = (x.left_limit_at(&t), x.eval_at(&t));
        let (r, f) = (rise_ok.eval_at(&t), fall_ok.eval_at(&t));
        let (rise_bound, fall_bound) = match form {
            RidcForm::Plain => (r, f),
            RidcForm::Premultiplied => (!prev && r, prev && f),
        };
        if (!prev && now) && !rise_bound {
            return CheckReport::fail(t, "rising inequality violated");
        }
        if (prev && !now) && !fall_bound {
            return CheckReport::fail(t, "falling inequality violated");
        }
    }
    check_sc(u, x)
}

/// Minimum spacing of opposite edges of an accepted output: a rise at `d`
/// followed by a fall at `d'` has `d' - d > delta_f - delta_r + mu_r`, a fall
/// followed by a rise has `d' - d > delta_r - delta_f + mu_f`.
pub fn edge_separation_check(u: &Signal, p: &RidcParams, x: &Signal) -> Result<CheckReport> {
    if !nzc(p).holds {
        return Err(Error::PreconditionFailed(format!("NZC does not hold for {p}")));
    }
    let membership = check_ridc(u, p, x);
    if !membership.verdict {
        return Err(Error::PreconditionFailed(format!(
            "x is not an RIDC solution: {membership}"
        )));
    }
    let after_rise = p.delta_f() - p.delta_r() + p.mu_r();
    let after_fall = p.delta_r() - p.delta_f() + p.mu_f();
    for pair in x.transitions().windows(2) {
        let gap: TimePoint = &pair[1] - &pair[0];
        let (bound, what) = if x.is_rising_at(&pair[0]) {
            (&after_rise, "rise-to-fall")
        } else {
            (&after_fall, "fall-to-rise")
        };
        if gap <= *bound {
            return Ok(CheckReport::fail(
                pair[1].clone(),
                format!("{what} gap {gap} is not > {bound}"),
            ));
        }
    }
    Ok(CheckReport::pass())
}

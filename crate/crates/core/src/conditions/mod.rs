//! Delay conditions: membership checkers, consistency predicates, the
//! solution generator for bounded delays and the deterministic inertial
//! delay solver.
//!
//! Every checker takes an input signal `u` and a candidate output `x` and
//! returns a [`CheckReport`]. Failures carry the earliest instant at which a
//! defining inequality breaks, so callers can point at the offending edge.

mod bdc;
mod bridc;
mod dridc;
mod minmax;
mod params;
mod ridc;

use std::fmt;

use serde::Serialize;

pub(crate) use bdc::require_cc;
pub use bdc::{
    bdc_solution, cc_bdc, cc_witness, check_bdc, check_constant_bounds, check_fdc, check_sc,
    fdc_apply, CcWitness,
};
pub use bridc::{bridc_timeline, cc_bridc, cc_bridc_disjuncts, check_bridc, TimelinePhase};
pub use dridc::{check_dridc_form, solve_dridc, DridcForm};
pub use minmax::{check_min_max_edges, MinMaxParams};
pub use params::{BdcParams, BridcParams, RidcParams};
pub use ridc::{check_ridc, check_ridc_pointwise, edge_separation_check, nzc, NzcReport, RidcForm};

use crate::signal::StepFunction;
use crate::time::TimePoint;

/// Where and why a membership check failed.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Witness {
    pub time: TimePoint,
    pub description: String,
}

/// Verdict of a membership check; a failing verdict always has a witness.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CheckReport {
    pub verdict: bool,
    pub witness: Option<Witness>,
}

impl CheckReport {
    pub fn pass() -> Self {
        CheckReport {
            verdict: true,
            witness: None,
        }
    }

    pub fn fail(time: TimePoint, description: impl Into<String>) -> Self {
        CheckReport {
            verdict: false,
            witness: Some(Witness {
                time,
                description: description.into(),
            }),
        }
    }

    /// Conjunction: the first failing report wins.
    pub fn and(self, other: CheckReport) -> CheckReport {
        if self.verdict {
            other
        } else {
            self
        }
    }

    /// Conjunction that keeps the earlier of two failures.
    pub fn and_earliest(self, other: CheckReport) -> CheckReport {
        match (&self.witness, &other.witness) {
            (Some(a), Some(b)) if b.time < a.time => other,
            (Some(_), _) => self,
            (None, _) => other,
        }
    }

    pub fn witness_time(&self) -> Option<&TimePoint> {
        self.witness.as_ref().map(|w| &w.time)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.witness {
            None => f.write_str("member"),
            Some(w) => write!(f, "not a member: at t = {}: {}", w.time, w.description),
        }
    }
}

/// Instants that together pin down every function in `fs` on the whole
/// real line: all transition instants, one interior point of every gap
/// between consecutive instants, and one point on each unbounded side.
pub fn probe_points(fs: &[&StepFunction]) -> Vec<TimePoint> {
    let mut events: Vec<TimePoint> = fs.iter().flat_map(|f| f.transitions().iter().cloned()).collect();
    events.sort();
    events.dedup();
    let (Some(first), Some(last)) = (events.first(), events.last()) else {
        return vec![TimePoint::zero()];
    };
    let mut out = Vec::with_capacity(2 * events.len() + 1);
    out.push(first - TimePoint::one());
    for pair in events.windows(2) {
        out.push(pair[0].clone());
        out.push(pair[0].midpoint(&pair[1]));
    }
    out.push(last.clone());
    out.push(last + TimePoint::one());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::time::tp;

    #[test]
    fn probes_cover_gaps() {
        let f = StepFunction::new(false, vec![tp(0), tp(2)]).unwrap();
        let g = StepFunction::new(true, vec![tp(1)]).unwrap();
        assert_eq!(
            probe_points(&[&f, &g]),
            vec![tp(-1), tp(0), tp((1, 2)), tp(1), tp((3, 2)), tp(2), tp(3)]
        );
        assert_eq!(probe_points(&[&StepFunction::constant(true)]), vec![tp(0)]);
    }

    #[test]
    fn earliest_failure_wins() {
        let a = CheckReport::fail(tp(5), "a");
        let b = CheckReport::fail(tp(2), "b");
        assert_eq!(a.clone().and_earliest(b.clone()).witness_time(), Some(&tp(2)));
        assert_eq!(b.clone().and_earliest(a.clone()).witness_time(), Some(&tp(2)));
        assert!(CheckReport::pass().and_earliest(CheckReport::pass()).verdict);
        assert_eq!(CheckReport::pass().and(a.clone()), a);
    }
}

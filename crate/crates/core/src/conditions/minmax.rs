//! Edge-bounded formulation of bounded inertial delays: every edge of `x`
//! happens no earlier than a "min" window licence and no later than a "max"
//! one.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::signal::Signal;
use crate::time::TimePoint;
use crate::windows::{erode, WindowSpec};

use super::{probe_points, BdcParams, BridcParams, CheckReport, RidcParams};

/// Window pairs `(memory, delay)` for the slowest and fastest admissible
/// rising and falling edges.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct MinMaxParams {
    pub r_max: (TimePoint, TimePoint),
    pub r_min: (TimePoint, TimePoint),
    pub f_max: (TimePoint, TimePoint),
    pub f_min: (TimePoint, TimePoint),
}

fn ordered(name: &str, xs: &[&TimePoint]) -> Result<()> {
    for w in xs.windows(2) {
        if w[0] > w[1] {
            return Err(Error::PreconditionFailed(format!("{name}: {} > {}", w[0], w[1])));
        }
    }
    Ok(())
}

impl MinMaxParams {
    /// Renames bound parameters to max windows and inertia parameters to min
    /// windows. Requires `d_f - m_f <= delta_f - mu_f <= delta_r <= d_r` and
    /// `d_r - m_r <= delta_r - mu_r <= delta_f <= d_f`.
    pub fn from_bridc(p: &BridcParams) -> Result<Self> {
        let (b, r) = (&p.bdc, &p.ridc);
        ordered(
            "d_f - m_f <= delta_f - mu_f <= delta_r <= d_r",
            &[&(b.d_f() - b.m_f()), &(r.delta_f() - r.mu_f()), r.delta_r(), b.d_r()],
        )?;
        ordered(
            "d_r - m_r <= delta_r - mu_r <= delta_f <= d_f",
            &[&(b.d_r() - b.m_r()), &(r.delta_r() - r.mu_r()), r.delta_f(), b.d_f()],
        )?;
        Ok(MinMaxParams {
            r_max: (b.m_r().clone(), b.d_r().clone()),
            r_min: (r.mu_r().clone(), r.delta_r().clone()),
            f_max: (b.m_f().clone(), b.d_f().clone()),
            f_min: (r.mu_f().clone(), r.delta_f().clone()),
        })
    }

    /// Inverse renaming; the same ordering requirements in min/max terms.
    pub fn to_bridc(&self) -> Result<BridcParams> {
        let bdc = BdcParams::new(&self.r_max.0, &self.r_max.1, &self.f_max.0, &self.f_max.1)?;
        let ridc = RidcParams::new(&self.r_min.0, &self.r_min.1, &self.f_min.0, &self.f_min.1)?;
        let p = BridcParams::new(bdc, ridc);
        MinMaxParams::from_bridc(&p)?;
        Ok(p)
    }

    fn window(pair: &(TimePoint, TimePoint)) -> WindowSpec {
        WindowSpec::new(&pair.1, &pair.0).expect("validated at construction")
    }
}

/// Two-sided edge bounds:
/// `!x(t-0) Phi(r_max) <= !x(t-0) x(t) <= !x(t-0) Phi(r_min)` and
/// `x(t-0) Phi'(f_max) <= x(t-0) !x(t) <= x(t-0) Phi'(f_min)`,
/// with `Phi` the erosion of `u` and `Phi'` the erosion of `!u`.
pub fn check_min_max_edges(u: &Signal, p: &MinMaxParams, x: &Signal) -> CheckReport {
    let not_u = u.not();
    let rise_max = erode(u, &MinMaxParams::window(&p.r_max));
    let rise_min = erode(u, &MinMaxParams::window(&p.r_min));
    let fall_max = erode(&not_u, &MinMaxParams::window(&p.f_max));
    let fall_min = erode(&not_u, &MinMaxParams::window(&p.f_min));
    for t in probe_points(&[x.as_step(), &rise_max, &rise_min, &fall_max, &fall_min]) {
        let (xl, xv) = (x.left_limit_at(&t), x.eval_at(&t));
        if !xl {
            if rise_max.eval_at(&t) && !xv {
                return CheckReport::fail(t, "rise overdue: slow rising licence holds, x stays 0");
            }
            if xv && !rise_min.eval_at(&t) {
                return CheckReport::fail(t, "rise premature: fast rising licence does not hold");
            }
        } else {
            if fall_max.eval_at(&t) && xv {
                return CheckReport::fail(t, "fall overdue: slow falling licence holds, x stays 1");
            }
            if !xv && !fall_min.eval_at(&t) {
                return CheckReport::fail(t, "fall premature: fast falling licence does not hold");
            }
        }
    }
    CheckReport::pass()
}

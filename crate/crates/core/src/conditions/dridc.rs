//! Deterministic relative inertial delays: the inertial condition with equal
//! bound and inertia parameters has exactly one solution, computed by a
//! left-to-right sweep.

use crate::error::{Error, Result};
use crate::signal::{Signal, StepFunction};
use crate::windows::{dilate, erode};

use super::bdc::require_cc;
use super::{probe_points, BdcParams, CheckReport};

/// `(rise licence, fall licence)`: `u = 1` on `[t-d_r, t-d_r+m_r]`,
/// respectively `u = 0` on `[t-d_f, t-d_f+m_f]`.
fn licences(u: &StepFunction, p: &BdcParams) -> (StepFunction, StepFunction) {
    (erode(u, &p.rise_window()), erode(&u.not(), &p.fall_window()))
}

/// The unique `x` with `x = 1` wherever the rise licence holds, `x = 0`
/// wherever the fall licence holds, and `x(t) = x(t-0)` elsewhere.
pub fn solve_dridc(u: &Signal, p: &BdcParams) -> Result<Signal> {
    require_cc(p)?;
    let (a, b) = licences(u, p);
    let mut events: Vec<_> = a.transitions().iter().chain(b.transitions()).cloned().collect();
    events.sort();
    events.dedup();

    let mut state = false;
    let mut changes = Vec::new();
    for t in events {
        let (set, reset) = (a.eval_at(&t), b.eval_at(&t));
        if set && reset {
            return Err(Error::ConsistencyViolated(format!("both licences hold at t = {t}")));
        }
        let next = if set {
            true
        } else if reset {
            false
        } else {
            state
        };
        if next != state {
            changes.push((t, next));
            state = next;
        }
    }
    let x = StepFunction::from_changes(false, changes);
    Ok(Signal::try_from(x).expect("licences of a signal start at 0"))
}

/// The six equivalent systems characterising the deterministic solution.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum DridcForm {
    /// Rising and falling edges equal their licences.
    A,
    /// Three inequalities: licences force the value, otherwise hold.
    B,
    /// Three-branch case definition.
    C,
    /// `x(t) = rise(t) | x(t-0) & dilate(u, fall)(t)`.
    D,
    /// Derivative equation.
    E,
    /// Four-term tautology.
    F,
}

impl DridcForm {
    pub const ALL: [DridcForm; 6] = [
        DridcForm::A,
        DridcForm::B,
        DridcForm::C,
        DridcForm::D,
        DridcForm::E,
        DridcForm::F,
    ];

    pub fn letter(self) -> char {
        match self {
            DridcForm::A => 'a',
            DridcForm::B => 'b',
            DridcForm::C => 'c',
            DridcForm::D => 'd',
            DridcForm::E => 'e',
            DridcForm::F => 'f',
        }
    }
}

impl std::str::FromStr for DridcForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        DridcForm::ALL
            .into_iter()
            .find(|f| s.len() == 1 && s.starts_with(f.letter()))
            .ok_or_else(|| Error::Parse(format!("unknown form {s:?}, expected a..f")))
    }
}

/// Pointwise truth of one system at instant `t`, given the left limit and
/// value of `x` and the values of the window functions there.
fn holds(form: DridcForm, xl: bool, xv: bool, a: bool, b: bool, psi: bool) -> bool {
    match form {
        DridcForm::A => (!xl && xv) == (!xl && a) && (xl && !xv) == (xl && b),
        DridcForm::B => (!a || xv) && (!b || !xv) && (a || b || xl == xv),
        DridcForm::C => {
            if a && b {
                false
            } else if a {
                xv
            } else if b {
                !xv
            } else {
                xv == xl
            }
        }
        DridcForm::D => xv == (a || (xl && psi)),
        DridcForm::E => (xl ^ xv) == ((!xl && a) || (xl && b)),
        DridcForm::F => (!xl && xv && a) || (xl && !xv && b) || (!xl && !xv && !a) || (xl && xv && !b),
    }
}

/// Evaluates the chosen system at every instant.
pub fn check_dridc_form(u: &Signal, p: &BdcParams, x: &Signal, form: DridcForm) -> Result<CheckReport> {
    require_cc(p)?;
    let (a, b) = licences(u, p);
    let psi = dilate(u, &p.fall_window());
    for t in probe_points(&[x.as_step(), &a, &b, &psi]) {
        let (xl, xv) = (x.left_limit_at(&t), x.eval_at(&t));
        if !holds(form, xl, xv, a.eval_at(&t), b.eval_at(&t), psi.eval_at(&t)) {
            return Ok(CheckReport::fail(
                t,
                format!(
                    "form {} fails: x(t-0) = {}, x(t) = {}",
                    form.letter(),
                    u8::from(xl),
                    u8::from(xv)
                ),
            ));
        }
    }
    Ok(CheckReport::pass())
}

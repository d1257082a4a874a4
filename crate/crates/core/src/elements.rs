//! Delay elements: relations between input and output signals, with
//! membership, deterministic application, sampling and serial composition.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::conditions::{
    bdc_solution, cc_bridc, check_bdc, check_bridc, check_dridc_form, check_fdc, check_ridc, nzc,
    require_cc, solve_dridc, BdcParams, BridcParams, CheckReport, DridcForm, RidcParams,
};
use crate::error::{Error, Result};
use crate::signal::Signal;
use crate::time::{IntoTimePoint, TimePoint};
use crate::windows::{dilate, erode};

/// The kinds of delay element, each with its parameters.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum ElementKind {
    /// The identity relation.
    Wire,
    /// Translation by a fixed amount.
    Fixed(TimePoint),
    /// Every solution of the bounded delay condition.
    FullBde(BdcParams),
    /// Every solution of the relative inertial condition.
    FullRide(RidcParams),
    /// Every solution of the bounded relative inertial condition.
    FullBride(Box<BridcParams>),
    /// The deterministic inertial delay.
    Dride(BdcParams),
}

/// A delay element whose parameters satisfy the predicate of its kind.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DelayElement(ElementKind);

impl DelayElement {
    pub fn wire() -> Self {
        DelayElement(ElementKind::Wire)
    }

    pub fn fixed(d: impl IntoTimePoint) -> Result<Self> {
        let d = d.into_time_point();
        if d.is_negative() {
            return Err(Error::NegativeDelay(d));
        }
        Ok(DelayElement(ElementKind::Fixed(d)))
    }

    pub fn full_bde(p: BdcParams) -> Result<Self> {
        require_cc(&p)?;
        Ok(DelayElement(ElementKind::FullBde(p)))
    }

    pub fn full_ride(p: RidcParams) -> Result<Self> {
        if !nzc(&p).holds {
            return Err(Error::NonZenonessViolated(format!(
                "{p}: need delta_r - mu_r <= delta_f and delta_f - mu_f <= delta_r"
            )));
        }
        Ok(DelayElement(ElementKind::FullRide(p)))
    }

    pub fn full_bride(p: BridcParams) -> Result<Self> {
        if !cc_bridc(&p) {
            return Err(Error::ConsistencyViolated(format!(
                "{p} satisfies none of the four parameter chains"
            )));
        }
        Ok(DelayElement(ElementKind::FullBride(Box::new(p))))
    }

    pub fn dride(p: BdcParams) -> Result<Self> {
        require_cc(&p)?;
        Ok(DelayElement(ElementKind::Dride(p)))
    }

    pub fn from_kind(kind: ElementKind) -> Result<Self> {
        match kind {
            ElementKind::Wire => Ok(Self::wire()),
            ElementKind::Fixed(d) => Self::fixed(d),
            ElementKind::FullBde(p) => Self::full_bde(p),
            ElementKind::FullRide(p) => Self::full_ride(p),
            ElementKind::FullBride(p) => Self::full_bride(*p),
            ElementKind::Dride(p) => Self::dride(p),
        }
    }

    pub fn kind(&self) -> &ElementKind {
        &self.0
    }

    pub fn is_deterministic(&self) -> bool {
        matches!(
            self.0,
            ElementKind::Wire | ElementKind::Fixed(_) | ElementKind::Dride(_)
        )
    }

    /// Bounded delay parameters of the smallest full bounded element that
    /// contains this one, when the kind has them.
    pub fn bde_envelope(&self) -> Option<BdcParams> {
        match &self.0 {
            ElementKind::Wire => Some(BdcParams::fixed(0).expect("zero delay")),
            ElementKind::Fixed(d) => Some(BdcParams::fixed(d).expect("validated delay")),
            ElementKind::FullBde(p) | ElementKind::Dride(p) => Some(p.clone()),
            ElementKind::FullBride(p) => Some(p.bdc.clone()),
            ElementKind::FullRide(_) => None,
        }
    }

    fn is_inertial(&self) -> bool {
        matches!(
            self.0,
            ElementKind::FullRide(_) | ElementKind::FullBride(_) | ElementKind::Dride(_)
        )
    }
}

impl fmt::Display for DelayElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tail = |s: String| s.split_once('(').map(|(_, t)| t.to_string()).unwrap_or_default();
        match &self.0 {
            ElementKind::Wire => f.write_str("wire"),
            ElementKind::Fixed(d) => write!(f, "fixed({d})"),
            ElementKind::FullBde(p) => write!(f, "bde({}", tail(p.to_string())),
            ElementKind::FullRide(p) => write!(f, "ride({}", tail(p.to_string())),
            ElementKind::FullBride(p) => write!(f, "bride({}", tail(p.to_string())),
            ElementKind::Dride(p) => write!(f, "dride({}", tail(p.to_string())),
        }
    }
}

impl Serialize for DelayElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Whether `(u, x)` belongs to the element.
pub fn membership(e: &DelayElement, u: &Signal, x: &Signal) -> CheckReport {
    let equal_to = |expected: &Signal, what: &str| match expected.first_difference(x) {
        None => CheckReport::pass(),
        Some(t) => CheckReport::fail(t.expect("signals agree near -inf"), format!("x differs from {what}")),
    };
    match &e.0 {
        ElementKind::Wire => equal_to(u, "u"),
        ElementKind::Fixed(d) => check_fdc(u, d, x).expect("validated delay"),
        ElementKind::FullBde(p) => check_bdc(u, p, x),
        ElementKind::FullRide(p) => check_ridc(u, p, x),
        ElementKind::FullBride(p) => check_bridc(u, p, x),
        ElementKind::Dride(p) => {
            let expected = solve_dridc(u, p).expect("validated parameters");
            equal_to(&expected, "the deterministic solution")
        }
    }
}

/// The unique output of a deterministic element.
pub fn apply_deterministic(e: &DelayElement, u: &Signal) -> Result<Signal> {
    match &e.0 {
        ElementKind::Wire => Ok(u.clone()),
        ElementKind::Fixed(d) => u.delayed(d),
        ElementKind::Dride(p) => solve_dridc(u, p),
        _ => Err(Error::Nondeterministic(e.to_string())),
    }
}

/// One output of the element for input `u`. Full bounded elements pick a
/// random selector (seed `0` selects the minimum solution); deterministic
/// elements return their unique output.
pub fn sample(e: &DelayElement, u: &Signal, seed: u64) -> Result<Signal> {
    match &e.0 {
        ElementKind::FullBde(p) => {
            let y = random_selector(u, p, seed);
            bdc_solution(u, p, &y)
        }
        ElementKind::FullRide(_) | ElementKind::FullBride(_) => Err(Error::Unsupported(format!(
            "no solution generator for {e}"
        ))),
        _ => apply_deterministic(e, u),
    }
}

/// Toggles at a random subset of the transitions of the bounding functions
/// and the midpoints between them.
fn random_selector(u: &Signal, p: &BdcParams, seed: u64) -> Signal {
    if seed == 0 {
        return Signal::zero();
    }
    let lower = erode(u, &p.rise_window());
    let upper = dilate(u, &p.fall_window());
    let mut grid: Vec<TimePoint> = lower
        .transitions()
        .iter()
        .chain(upper.transitions())
        .cloned()
        .collect();
    grid.sort();
    grid.dedup();
    let mids: Vec<TimePoint> = grid.windows(2).map(|w| w[0].midpoint(&w[1])).collect();
    grid.extend(mids);
    grid.sort();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let toggles = grid.into_iter().filter(|_| rng.random_bool(0.5)).collect();
    let y = crate::signal::StepFunction::new(false, toggles).expect("sorted distinct grid");
    Signal::try_from(y).expect("grid lies in [0, inf)")
}

/// Single element equivalent to `first` followed by `second`, when a
/// parameter rule exists for the pair.
pub fn compose_params(first: &DelayElement, second: &DelayElement) -> Result<DelayElement> {
    use ElementKind::*;
    match (&first.0, &second.0) {
        (Wire, _) => Ok(second.clone()),
        (_, Wire) => Ok(first.clone()),
        (Fixed(a), Fixed(b)) => DelayElement::fixed(a + b),
        (FullBde(p), FullBde(q)) => DelayElement::full_bde(p.plus(q)),
        (FullBde(p), Fixed(d)) | (Fixed(d), FullBde(p)) => DelayElement::full_bde(p.shifted(d)?),
        (Dride(p), Fixed(d)) | (Fixed(d), Dride(p)) => DelayElement::dride(p.shifted(d)?),
        _ if first.is_inertial() && second.is_inertial() => {
            let envelope = match (first.bde_envelope(), second.bde_envelope()) {
                (Some(p), Some(q)) => Some(Box::new(p.plus(&q))),
                _ => None,
            };
            Err(Error::NotClosed { envelope })
        }
        _ => Err(Error::NotComposable(first.to_string(), second.to_string())),
    }
}

/// One stage of a serial connection.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct StageReport {
    pub element: DelayElement,
    pub input: Signal,
    pub output: Signal,
    pub membership: CheckReport,
}

/// A signal threaded through a chain of elements.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CompositionReport {
    pub input: Signal,
    pub stages: Vec<StageReport>,
    pub output: Signal,
}

impl CompositionReport {
    pub fn intermediates(&self) -> impl Iterator<Item = &Signal> {
        let n = self.stages.len().saturating_sub(1);
        self.stages[..n].iter().map(|s| &s.output)
    }

    pub fn all_members(&self) -> bool {
        self.stages.iter().all(|s| s.membership.verdict)
    }
}

fn stage_seed(seed: u64, stage: usize) -> u64 {
    if seed == 0 {
        0
    } else {
        seed.wrapping_add((stage as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }
}

/// Feeds `u` through `elements` in signal-flow order, sampling the
/// nondeterministic stages.
pub fn chain_apply(elements: &[DelayElement], u: &Signal, seed: u64) -> Result<CompositionReport> {
    let mut stages = Vec::with_capacity(elements.len());
    let mut current = u.clone();
    for (i, e) in elements.iter().enumerate() {
        let output = sample(e, &current, stage_seed(seed, i))?;
        let membership = membership(e, &current, &output);
        stages.push(StageReport {
            element: e.clone(),
            input: std::mem::replace(&mut current, output.clone()),
            output,
            membership,
        });
    }
    Ok(CompositionReport {
        input: u.clone(),
        stages,
        output: current,
    })
}

/// Folds [`compose_params`] over a chain.
pub fn compose_chain(elements: &[DelayElement]) -> Result<DelayElement> {
    elements
        .iter()
        .try_fold(DelayElement::wire(), |acc, e| compose_params(&acc, e))
}

/// An edge assertion on the two-stage output.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct EdgeAssertion {
    pub time: TimePoint,
    pub expected: &'static str,
    pub holds: bool,
}

/// A bound on the inertia `mu` of a symmetric single-stage model, forced by
/// the output behaviour at `time`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct MuBound {
    pub time: TimePoint,
    pub relation: &'static str,
    pub bound: TimePoint,
}

impl fmt::Display for MuBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "mu {} {} (from t = {})", self.relation, self.bound, self.time)
    }
}

/// Outcome of a finite sweep over candidate inertias.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SweepEntry {
    pub mu: TimePoint,
    pub reproduces: bool,
}

/// Mechanical check that two deterministic inertial stages in series are not
/// a single one.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CompositionCounterexample {
    pub input: Signal,
    pub first: DelayElement,
    pub second: DelayElement,
    pub intermediate: Signal,
    pub output: Signal,
    pub first_stage_member: bool,
    pub edges: Vec<EdgeAssertion>,
    pub model_delay: TimePoint,
    pub bounds: Vec<MuBound>,
    pub contradiction: bool,
    pub sweep: Vec<SweepEntry>,
    pub confirmed: bool,
    pub verdict: &'static str,
}

/// Length of the constancy run of `u` starting at `s`.
fn run_length(u: &Signal, s: &TimePoint) -> Option<TimePoint> {
    u.transitions().iter().find(|t| *t > s).map(|t| t - s)
}

/// Bound on `mu` for a symmetric model `dride(mu, delay, mu, delay)`
/// implied by the output edge (or its absence) at `t`.
fn mu_bound(u: &Signal, y: &Signal, delay: &TimePoint, t: &TimePoint) -> Option<MuBound> {
    let s = t - delay;
    let run = run_length(u, &s)?;
    let (before, now, level) = (y.left_limit_at(t), y.eval_at(t), u.eval_at(&s));
    // An edge needs the input window to stay at the new level, hence a window
    // shorter than the run. A held value needs the window to reach past it.
    let relation = if before != now && level == now {
        "<"
    } else if before == now && level != now {
        ">="
    } else {
        return None;
    };
    Some(MuBound {
        time: t.clone(),
        relation,
        bound: run,
    })
}

/// Two deterministic inertial stages `(1,2,1,2)` then `(2,3,2,3)` on
/// `chi_[0,2) + chi_[3,4) + chi_[7,9)`, and the proof that no symmetric
/// single stage `(mu,5,mu,5)` reproduces the result.
pub fn ride_composition_counterexample() -> CompositionCounterexample {
    let u = Signal::from_pairs([(0, 2), (3, 4), (7, 9)]).expect("valid pulses");
    let p1 = BdcParams::new(1, 2, 1, 2).expect("valid");
    let p2 = BdcParams::new(2, 3, 2, 3).expect("valid");
    let first = DelayElement::dride(p1.clone()).expect("consistent");
    let second = DelayElement::dride(p2.clone()).expect("consistent");
    let x = solve_dridc(&u, &p1).expect("consistent");
    let y = solve_dridc(&x, &p2).expect("consistent");

    let t = TimePoint::from_integer;
    let edges = vec![
        EdgeAssertion {
            time: t(5),
            expected: "rising edge",
            holds: y.is_rising_at(&t(5)),
        },
        EdgeAssertion {
            time: t(9),
            expected: "falling edge",
            holds: y.is_falling_at(&t(9)),
        },
        EdgeAssertion {
            time: t(12),
            expected: "no rising edge",
            holds: !y.is_rising_at(&t(12)),
        },
    ];

    let delay = t(5);
    let bounds: Vec<MuBound> = [t(5), t(9), t(12)]
        .iter()
        .filter_map(|at| mu_bound(&u, &y, &delay, at))
        .collect();
    let upper = bounds.iter().filter(|b| b.relation == "<").map(|b| &b.bound).min();
    let lower = bounds.iter().filter(|b| b.relation == ">=").map(|b| &b.bound).max();
    let contradiction = matches!((lower, upper), (Some(lo), Some(hi)) if lo >= hi);

    let sweep = [TimePoint::zero(), t(1), TimePoint::new(3, 2)]
        .into_iter()
        .map(|mu| {
            let p = BdcParams::new(&mu, &delay, &mu, &delay).expect("mu <= delay");
            let reproduces = check_dridc_form(&u, &p, &y, DridcForm::A)
                .expect("symmetric parameters are consistent")
                .verdict;
            SweepEntry { mu, reproduces }
        })
        .collect::<Vec<_>>();

    let first_stage_member = membership(&first, &u, &x).verdict;
    let confirmed = first_stage_member
        && edges.iter().all(|e| e.holds)
        && contradiction
        && sweep.iter().all(|s| !s.reproduces);
    CompositionCounterexample {
        input: u,
        first,
        second,
        intermediate: x,
        output: y,
        first_stage_member,
        edges,
        model_delay: delay,
        bounds,
        contradiction,
        sweep,
        confirmed,
        verdict: if confirmed {
            "no single RIDE reproduces y"
        } else {
            "contradiction not reached"
        },
    }
}

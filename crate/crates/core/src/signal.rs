//! Right-continuous piecewise-constant binary functions of real time.
//!
//! A [`StepFunction`] is stored as the value it takes on `(-inf, t0)` plus the
//! strictly increasing list of instants `t0 < t1 < ...` at which it toggles.
//! The value *at* a transition instant is the new value, so every constancy
//! interval is half-open `[tk, tk+1)`. Because each listed instant is a genuine
//! toggle, the representation is canonical and structural equality is
//! function equality.
//!
//! A [`Signal`] is a step function that is `0` before time `0`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};
use crate::time::{IntoTimePoint, TimePoint};

/// A time value extended with the two infinities, used for interval endpoints.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Extended {
    NegInf,
    Finite(TimePoint),
    PosInf,
}

impl Extended {
    pub fn finite(&self) -> Option<&TimePoint> {
        match self {
            Extended::Finite(t) => Some(t),
            _ => None,
        }
    }

    /// Translate by a finite amount; infinities are fixed points.
    pub fn shift(&self, d: &TimePoint) -> Extended {
        match self {
            Extended::Finite(t) => Extended::Finite(t + d),
            other => other.clone(),
        }
    }
}

impl From<TimePoint> for Extended {
    fn from(t: TimePoint) -> Self {
        Extended::Finite(t)
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::NegInf => f.write_str("-inf"),
            Extended::Finite(t) => write!(f, "{t}"),
            Extended::PosInf => f.write_str("inf"),
        }
    }
}

/// Half-open interval `[start, end)`; `start < end`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Interval {
    pub start: Extended,
    pub end: Extended,
}

impl Interval {
    pub fn new(start: impl Into<Extended>, end: impl Into<Extended>) -> Self {
        Interval {
            start: start.into(),
            end: end.into(),
        }
    }

    pub fn contains(&self, t: &TimePoint) -> bool {
        let t = Extended::Finite(t.clone());
        self.start <= t && t < self.end
    }

    /// Length of a bounded interval.
    pub fn length(&self) -> Option<TimePoint> {
        match (&self.start, &self.end) {
            (Extended::Finite(a), Extended::Finite(b)) => Some(b - a),
            _ => None,
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let open = if self.start == Extended::NegInf { '(' } else { '[' };
        write!(f, "{open}{},{})", self.start, self.end)
    }
}

/// Sorted, disjoint, maximal list of half-open intervals.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct IntervalSet(Vec<Interval>);

impl IntervalSet {
    /// Validates that the intervals are non-empty, sorted and disjoint
    /// (touching is allowed), then merges touching neighbours.
    pub fn new(intervals: Vec<Interval>) -> Result<Self> {
        for iv in &intervals {
            if iv.start >= iv.end {
                return Err(Error::Parse(format!("empty or reversed interval {iv}")));
            }
        }
        for pair in intervals.windows(2) {
            if pair[1].start < pair[0].end {
                return Err(Error::Parse(format!(
                    "intervals {} and {} overlap or are out of order",
                    pair[0], pair[1]
                )));
            }
        }
        let mut merged: Vec<Interval> = Vec::with_capacity(intervals.len());
        for iv in intervals {
            match merged.last_mut() {
                Some(last) if last.end == iv.start => last.end = iv.end,
                _ => merged.push(iv),
            }
        }
        Ok(IntervalSet(merged))
    }

    pub fn empty() -> Self {
        IntervalSet(Vec::new())
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, t: &TimePoint) -> bool {
        self.0.iter().any(|iv| iv.contains(t))
    }

    /// Every finite endpoint, in increasing order.
    pub fn endpoints(&self) -> Vec<TimePoint> {
        self.0
            .iter()
            .flat_map(|iv| [iv.start.finite().cloned(), iv.end.finite().cloned()])
            .flatten()
            .collect()
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("empty");
        }
        for (i, iv) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{iv}")?;
        }
        Ok(())
    }
}

/// Pointwise Boolean operators on binary functions.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BoolOp {
    Not,
    And,
    Or,
    Xor,
}

/// Right-continuous `R -> {0,1}` function with finitely many transitions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StepFunction {
    initial: bool,
    transitions: Vec<TimePoint>,
}

impl StepFunction {
    /// Builds from a value on `(-inf, t0)` and the toggle instants, which must
    /// be strictly increasing.
    pub fn new(initial: bool, transitions: Vec<TimePoint>) -> Result<Self> {
        if transitions.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parse(
                "transition instants must be strictly increasing".into(),
            ));
        }
        Ok(StepFunction {
            initial,
            transitions,
        })
    }

    pub fn constant(value: bool) -> Self {
        StepFunction {
            initial: value,
            transitions: Vec::new(),
        }
    }

    /// Canonicalizes a list of `(instant, new value)` changes sorted by
    /// instant. Repeated instants keep the last value; non-changes vanish.
    pub fn from_changes(initial: bool, changes: impl IntoIterator<Item = (TimePoint, bool)>) -> Self {
        let mut transitions: Vec<TimePoint> = Vec::new();
        // value in force just before the pending instant
        let mut before = initial;
        let mut pending: Option<(TimePoint, bool)> = None;
        for (t, v) in changes {
            match &mut pending {
                Some((pt, pv)) if *pt == t => *pv = v,
                _ => {
                    if let Some((pt, pv)) = pending.take() {
                        debug_assert!(transitions.last().is_none_or(|l| *l < pt));
                        if pv != before {
                            transitions.push(pt);
                            before = pv;
                        }
                    }
                    pending = Some((t, v));
                }
            }
        }
        if let Some((pt, pv)) = pending {
            if pv != before {
                transitions.push(pt);
            }
        }
        StepFunction {
            initial,
            transitions,
        }
    }

    /// Characteristic function of a union of half-open intervals, which may
    /// overlap and come in any order.
    pub fn union_of(mut intervals: Vec<Interval>) -> Self {
        intervals.retain(|iv| iv.start < iv.end);
        intervals.sort_by(|a, b| a.start.cmp(&b.start));
        let mut merged: Vec<Interval> = Vec::with_capacity(intervals.len());
        for iv in intervals {
            match merged.last_mut() {
                Some(last) if iv.start <= last.end => {
                    if iv.end > last.end {
                        last.end = iv.end;
                    }
                }
                _ => merged.push(iv),
            }
        }
        Self::from_disjoint(&merged)
    }

    fn from_disjoint(intervals: &[Interval]) -> Self {
        let initial = intervals.first().is_some_and(|iv| iv.start == Extended::NegInf);
        let transitions = intervals
            .iter()
            .flat_map(|iv| [iv.start.finite().cloned(), iv.end.finite().cloned()])
            .flatten()
            .collect();
        StepFunction {
            initial,
            transitions,
        }
    }

    pub fn from_interval_set(set: &IntervalSet) -> Self {
        Self::from_disjoint(set.intervals())
    }

    pub fn initial_value(&self) -> bool {
        self.initial
    }

    pub fn transitions(&self) -> &[TimePoint] {
        &self.transitions
    }

    /// Instants where `Dw(t) = w(t-0) xor w(t)` is 1: exactly the transitions.
    pub fn derivative_set(&self) -> Vec<TimePoint> {
        self.transitions.clone()
    }

    pub fn is_constant(&self) -> bool {
        self.transitions.is_empty()
    }

    fn parity_value(&self, toggles: usize) -> bool {
        self.initial ^ (toggles % 2 == 1)
    }

    /// `f(t)`; right-continuous.
    pub fn eval_at(&self, t: &TimePoint) -> bool {
        self.parity_value(self.transitions.partition_point(|x| x <= t))
    }

    /// `f(t - 0)`.
    pub fn left_limit_at(&self, t: &TimePoint) -> bool {
        self.parity_value(self.transitions.partition_point(|x| x < t))
    }

    /// `lim f(t)` as `t -> inf`.
    pub fn final_value(&self) -> bool {
        self.parity_value(self.transitions.len())
    }

    pub fn is_rising_at(&self, t: &TimePoint) -> bool {
        !self.left_limit_at(t) && self.eval_at(t)
    }

    pub fn is_falling_at(&self, t: &TimePoint) -> bool {
        self.left_limit_at(t) && !self.eval_at(t)
    }

    /// Rising transitions, in increasing order.
    pub fn rising_edges(&self) -> impl Iterator<Item = &TimePoint> {
        let skip = usize::from(self.initial);
        self.transitions.iter().skip(skip).step_by(2)
    }

    /// Falling transitions, in increasing order.
    pub fn falling_edges(&self) -> impl Iterator<Item = &TimePoint> {
        let skip = usize::from(!self.initial);
        self.transitions.iter().skip(skip).step_by(2)
    }

    /// Maximal intervals on which the function is 1.
    pub fn ones(&self) -> Vec<Interval> {
        let mut out = Vec::new();
        let mut start = if self.initial {
            Some(Extended::NegInf)
        } else {
            None
        };
        for t in &self.transitions {
            match start.take() {
                Some(s) => out.push(Interval::new(s, t.clone())),
                None => start = Some(Extended::Finite(t.clone())),
            }
        }
        if let Some(s) = start {
            out.push(Interval::new(s, Extended::PosInf));
        }
        out
    }

    /// `supp f` as an interval set.
    pub fn support(&self) -> IntervalSet {
        IntervalSet(self.ones())
    }

    pub fn not(&self) -> StepFunction {
        StepFunction {
            initial: !self.initial,
            transitions: self.transitions.clone(),
        }
    }

    pub fn and(&self, other: &StepFunction) -> StepFunction {
        self.zip_with(other, |a, b| a && b)
    }

    pub fn or(&self, other: &StepFunction) -> StepFunction {
        self.zip_with(other, |a, b| a || b)
    }

    pub fn xor(&self, other: &StepFunction) -> StepFunction {
        // the toggle sets simply cancel pairwise
        self.zip_with(other, |a, b| a ^ b)
    }

    /// Pointwise combination by a merged sweep over both transition lists.
    pub fn zip_with(&self, other: &StepFunction, op: impl Fn(bool, bool) -> bool) -> StepFunction {
        let initial = op(self.initial, other.initial);
        let (mut a, mut b) = (self.initial, other.initial);
        let mut current = initial;
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        let (xs, ys) = (&self.transitions, &other.transitions);
        while i < xs.len() || j < ys.len() {
            let t = match (xs.get(i), ys.get(j)) {
                (Some(x), Some(y)) => match x.cmp(y) {
                    Ordering::Less => {
                        i += 1;
                        a = !a;
                        x
                    }
                    Ordering::Greater => {
                        j += 1;
                        b = !b;
                        y
                    }
                    Ordering::Equal => {
                        i += 1;
                        j += 1;
                        a = !a;
                        b = !b;
                        x
                    }
                },
                (Some(x), None) => {
                    i += 1;
                    a = !a;
                    x
                }
                (None, Some(y)) => {
                    j += 1;
                    b = !b;
                    y
                }
                (None, None) => unreachable!(),
            };
            let v = op(a, b);
            if v != current {
                out.push(t.clone());
                current = v;
            }
        }
        StepFunction {
            initial,
            transitions: out,
        }
    }

    /// `f(t) <= g(t)` for every real `t`.
    pub fn leq(&self, other: &StepFunction) -> bool {
        self.leq_witness(other).is_ok()
    }

    /// Like [`leq`](Self::leq), but on failure returns the earliest instant at
    /// which `f = 1` and `g = 0` (`None` when that set is unbounded below).
    pub fn leq_witness(&self, other: &StepFunction) -> std::result::Result<(), Option<TimePoint>> {
        let bad = self.zip_with(other, |a, b| a && !b);
        if bad.initial {
            return Err(None);
        }
        match bad.transitions.first() {
            Some(t) => Err(Some(t.clone())),
            None => Ok(()),
        }
    }

    /// `t -> f(t - d)`.
    pub fn translate(&self, d: &TimePoint) -> StepFunction {
        StepFunction {
            initial: self.initial,
            transitions: self.transitions.iter().map(|t| t + d).collect(),
        }
    }

    /// Earliest instant at which `self` and `other` differ (`None` if equal;
    /// `Some(None)` if they already differ on `(-inf, t0)`).
    pub fn first_difference(&self, other: &StepFunction) -> Option<Option<TimePoint>> {
        let diff = self.xor(other);
        if diff.initial {
            Some(None)
        } else {
            diff.transitions.first().cloned().map(Some)
        }
    }
}

/// Pointwise Boolean combination; `Not` ignores `g`.
pub fn combine(op: BoolOp, f: &StepFunction, g: Option<&StepFunction>) -> Result<StepFunction> {
    let need = || g.ok_or_else(|| Error::InvalidParams(format!("{op:?} needs two operands")));
    Ok(match op {
        BoolOp::Not => {
            if g.is_some() {
                return Err(Error::InvalidParams("Not takes a single operand".into()));
            }
            f.not()
        }
        BoolOp::And => f.and(need()?),
        BoolOp::Or => f.or(need()?),
        BoolOp::Xor => f.xor(need()?),
    })
}

impl fmt::Display for StepFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.support())
    }
}

impl fmt::Debug for StepFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StepFunction({})", self.support())
    }
}

/// A step function that is 0 on `(-inf, 0)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Signal(StepFunction);

impl Signal {
    pub fn zero() -> Self {
        Signal(StepFunction::constant(false))
    }

    /// The signal whose support is `ones`.
    pub fn from_support(ones: &IntervalSet) -> Result<Self> {
        Signal::try_from(StepFunction::from_interval_set(ones))
    }

    /// Union of `[a, b)` pulses given as finite endpoint pairs (any order,
    /// overlaps allowed).
    pub fn from_pairs<T: IntoTimePoint>(pairs: impl IntoIterator<Item = (T, T)>) -> Result<Self> {
        let intervals = pairs
            .into_iter()
            .map(|(a, b)| Interval::new(a.into_time_point(), b.into_time_point()))
            .collect();
        Signal::try_from(StepFunction::union_of(intervals))
    }

    /// `chi_[start, inf)`.
    pub fn step_at(start: impl IntoTimePoint) -> Result<Self> {
        Signal::try_from(StepFunction::union_of(vec![Interval::new(
            start.into_time_point(),
            Extended::PosInf,
        )]))
    }

    pub fn as_step(&self) -> &StepFunction {
        &self.0
    }

    pub fn into_step(self) -> StepFunction {
        self.0
    }

    /// `t -> self(t - d)` for `d >= 0`.
    pub fn delayed(&self, d: &TimePoint) -> Result<Signal> {
        if d.is_negative() {
            return Err(Error::NegativeDelay(d.clone()));
        }
        Ok(Signal(self.0.translate(d)))
    }

    /// Combination of two signals that is again a signal.
    pub fn and(&self, other: &Signal) -> Signal {
        Signal(self.0.and(&other.0))
    }

    pub fn or(&self, other: &Signal) -> Signal {
        Signal(self.0.or(&other.0))
    }

    pub fn xor(&self, other: &Signal) -> Signal {
        Signal(self.0.xor(&other.0))
    }
}

impl Deref for Signal {
    type Target = StepFunction;
    fn deref(&self) -> &StepFunction {
        &self.0
    }
}

impl AsRef<StepFunction> for Signal {
    fn as_ref(&self) -> &StepFunction {
        &self.0
    }
}

impl TryFrom<StepFunction> for Signal {
    type Error = Error;

    fn try_from(f: StepFunction) -> Result<Signal> {
        if f.initial {
            return Err(Error::NegativeSupport("function is 1 near -inf".into()));
        }
        if let Some(t) = f.transitions.first() {
            if t.is_negative() {
                return Err(Error::NegativeSupport(format!("transition at {t}")));
            }
        }
        Ok(Signal(f))
    }
}

impl From<Signal> for StepFunction {
    fn from(s: Signal) -> StepFunction {
        s.0
    }
}

impl fmt::Display for Signal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// Serialized as the list of `[start, end]` pulses, endpoints as strings.
impl serde::Serialize for Signal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let ones = self.0.ones();
        let mut seq = s.serialize_seq(Some(ones.len()))?;
        for iv in &ones {
            seq.serialize_element(&[iv.start.to_string(), iv.end.to_string()])?;
        }
        seq.end()
    }
}

impl fmt::Debug for Signal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Signal({})", self.0.support())
    }
}

/// The signal whose support is `ones`; every endpoint must be `>= 0`.
pub fn make_signal(ones: &IntervalSet) -> Result<Signal> {
    if let Some(iv) = ones.intervals().first() {
        match &iv.start {
            Extended::Finite(t) if !t.is_negative() => {}
            other => return Err(Error::NegativeSupport(format!("interval starts at {other}"))),
        }
    }
    Signal::from_support(ones)
}

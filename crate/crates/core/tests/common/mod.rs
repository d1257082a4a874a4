//! Shared generators and brute-force oracles for the integration suites.
//!
//! The oracles never call the library's window operators or solver. They
//! work on integer ticks: a signal whose endpoints are multiples of `1/scale`
//! becomes a list of toggle ticks, and windows are evaluated by scanning
//! every tick inside them.

#![allow(dead_code)]

use delaycalc::conditions::{cc_bdc, BdcParams};
use delaycalc::{Signal, StepFunction, TimePoint};
use num_traits::ToPrimitive;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn frac(num: i64, den: i64) -> TimePoint {
    TimePoint::new(num, den)
}

/// Random signal with toggles on the `1/den` grid inside `[0, horizon]`.
/// An odd number of toggles leaves the signal high at the end.
pub fn random_signal(rng: &mut ChaCha8Rng, den: i64, horizon: i64, max_toggles: usize) -> Signal {
    let n = rng.random_range(0..=max_toggles);
    let mut ticks: Vec<i64> = (0..n).map(|_| rng.random_range(0..=horizon * den)).collect();
    ticks.sort_unstable();
    ticks.dedup();
    let toggles = ticks.into_iter().map(|k| frac(k, den)).collect();
    Signal::try_from(StepFunction::new(false, toggles).unwrap()).unwrap()
}

/// Same as [`random_signal`] but ending low.
pub fn random_pulses(rng: &mut ChaCha8Rng, den: i64, horizon: i64, max_toggles: usize) -> Signal {
    let s = random_signal(rng, den, horizon, max_toggles);
    if s.final_value() {
        let mut t = s.transitions().to_vec();
        t.pop();
        Signal::try_from(StepFunction::new(false, t).unwrap()).unwrap()
    } else {
        s
    }
}

fn grid_value(rng: &mut ChaCha8Rng, den: i64, max: i64) -> i64 {
    rng.random_range(0..=max * den)
}

/// Bounded-delay parameters on the `1/den` grid with delays up to `max_d`,
/// not necessarily consistent.
pub fn random_bdc(rng: &mut ChaCha8Rng, den: i64, max_d: i64) -> BdcParams {
    let d_r = grid_value(rng, den, max_d);
    let d_f = grid_value(rng, den, max_d);
    let m_r = rng.random_range(0..=d_r);
    let m_f = rng.random_range(0..=d_f);
    BdcParams::new(frac(m_r, den), frac(d_r, den), frac(m_f, den), frac(d_f, den)).unwrap()
}

pub fn random_bdc_cc(rng: &mut ChaCha8Rng, den: i64, max_d: i64) -> BdcParams {
    loop {
        let p = random_bdc(rng, den, max_d);
        if cc_bdc(&p) {
            return p;
        }
    }
}

pub fn random_bdc_not_cc(rng: &mut ChaCha8Rng, den: i64, max_d: i64) -> BdcParams {
    loop {
        let p = random_bdc(rng, den, max_d);
        if !cc_bdc(&p) {
            return p;
        }
    }
}

/// `t * scale` as an integer; panics if `t` is off the grid.
pub fn to_tick(t: &TimePoint, scale: i64) -> i64 {
    let v = t * &TimePoint::from_integer(scale);
    assert!(v.is_integer(), "{t} is not on the 1/{scale} grid");
    v.numer().to_i64().unwrap()
}

pub fn from_tick(k: i64, scale: i64) -> TimePoint {
    frac(k, scale)
}

/// A step function sampled on integer ticks.
#[derive(Clone, Debug)]
pub struct Ticks {
    pub initial: bool,
    pub toggles: Vec<i64>,
}

impl Ticks {
    pub fn of(f: &StepFunction, scale: i64) -> Ticks {
        Ticks {
            initial: f.initial_value(),
            toggles: f.transitions().iter().map(|t| to_tick(t, scale)).collect(),
        }
    }

    pub fn at(&self, k: i64) -> bool {
        let passed = self.toggles.iter().take_while(|&&t| t <= k).count();
        self.initial ^ (passed % 2 == 1)
    }

    pub fn not(&self) -> Ticks {
        Ticks {
            initial: !self.initial,
            toggles: self.toggles.clone(),
        }
    }
}

/// Values of `f` on ticks `lo..=hi`, with a prefix count of ones for O(1)
/// window queries.
pub struct Table {
    lo: i64,
    prefix: Vec<i64>,
}

impl Table {
    pub fn new(f: &Ticks, lo: i64, hi: i64) -> Table {
        let mut prefix = Vec::with_capacity((hi - lo + 2) as usize);
        prefix.push(0);
        let mut acc = 0;
        for k in lo..=hi {
            acc += i64::from(f.at(k));
            prefix.push(acc);
        }
        Table { lo, prefix }
    }

    fn ones(&self, a: i64, b: i64) -> i64 {
        let i = (a - self.lo) as usize;
        let j = (b - self.lo) as usize;
        self.prefix[j + 1] - self.prefix[i]
    }

    /// `f = 1` on every tick of `[a, b]`.
    pub fn all(&self, a: i64, b: i64) -> bool {
        self.ones(a, b) == b - a + 1
    }

    /// `f = 1` on some tick of `[a, b]`.
    pub fn any(&self, a: i64, b: i64) -> bool {
        self.ones(a, b) > 0
    }
}

/// Closed-window minimum and maximum at tick `t` for window `(d, m)` in
/// ticks. Exact whenever every endpoint of `f` and every window bound lies
/// on the tick grid, because each constancy piece then contains a tick of
/// any closed window it meets.
pub fn oracle_erode(table: &Table, t: i64, d: i64, m: i64) -> bool {
    table.all(t - d, t - d + m)
}

pub fn oracle_dilate(table: &Table, t: i64, d: i64, m: i64) -> bool {
    table.any(t - d, t - d + m)
}

/// Deterministic inertial output computed cell by cell on the `1/2` grid
/// through exhaustive search: every cell value is tried, and a branch
/// survives only if the edge equations hold at every `1/4` instant of the
/// cell. Returns all complete solutions up to `max_solutions`.
///
/// `u` must have integer endpoints in `[0, 10]` and the parameters integer
/// values with delays at most 5, so every licence is constant from 16 on.
pub fn enumerate_dridc(u: &Signal, p: &BdcParams, max_solutions: usize) -> Vec<Signal> {
    const SCALE: i64 = 4;
    const CELLS: i64 = 32; // [k/2, (k+1)/2) for k < 32, then [16, inf)
    let lo = -40 * SCALE;
    let hi = 40 * SCALE;
    let ut = Ticks::of(u.as_step(), SCALE);
    let up = Table::new(&ut, lo, hi);
    let down = Table::new(&ut.not(), lo, hi);
    let w = |t: &TimePoint| to_tick(t, SCALE);
    let (dr, mr, df, mf) = (w(p.d_r()), w(p.m_r()), w(p.d_f()), w(p.m_f()));
    let a = |t: i64| oracle_erode(&up, t, dr, mr);
    let b = |t: i64| oracle_erode(&down, t, df, mf);
    let form_a = |t: i64, xl: bool, xv: bool| {
        (!xl && xv) == (!xl && a(t)) && (xl && !xv) == (xl && b(t))
    };

    // x = 0 before time 0
    if !(-4 * SCALE..0).all(|t| form_a(t, false, false)) {
        return Vec::new();
    }

    let mut out = Vec::new();
    let mut cells = Vec::with_capacity(CELLS as usize + 1);
    fn dfs(
        k: i64,
        prev: bool,
        cells: &mut Vec<bool>,
        out: &mut Vec<Signal>,
        max: usize,
        ok: &dyn Fn(i64, bool, bool) -> bool,
    ) {
        if out.len() >= max {
            return;
        }
        if k > CELLS {
            let mut toggles = Vec::new();
            let mut level = false;
            for (i, &v) in cells.iter().enumerate() {
                if v != level {
                    toggles.push(frac(i as i64, 2));
                    level = v;
                }
            }
            out.push(Signal::try_from(StepFunction::new(false, toggles).unwrap()).unwrap());
            return;
        }
        let start = k * SCALE / 2;
        let end = if k == CELLS { 20 * SCALE } else { start + SCALE / 2 };
        for v in [false, true] {
            let fine = ok(start, prev, v) && (start + 1..end).all(|t| ok(t, v, v));
            if fine {
                cells.push(v);
                dfs(k + 1, v, cells, out, max, ok);
                cells.pop();
            }
        }
    }
    dfs(0, false, &mut cells, &mut out, max_solutions, &form_a);
    out
}

/// Step function with either initial value and toggles on the `1/den` grid
/// inside `[lo, hi]`.
pub fn random_step(rng: &mut ChaCha8Rng, den: i64, lo: i64, hi: i64, max_toggles: usize) -> StepFunction {
    let n = rng.random_range(0..=max_toggles);
    let mut ticks: Vec<i64> = (0..n).map(|_| rng.random_range(lo * den..=hi * den)).collect();
    ticks.sort_unstable();
    ticks.dedup();
    StepFunction::new(rng.random_bool(0.5), ticks.into_iter().map(|k| frac(k, den)).collect()).unwrap()
}

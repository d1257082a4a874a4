//! Exact calculus of delays for binary signals in continuous time.
//!
//! Signals are right-continuous step functions with rational transition
//! instants. On top of them the crate provides sliding-window operators,
//! the bounded, fixed and inertial delay conditions, a deterministic
//! inertial delay solver and serial composition of delay elements.

pub mod cli;
pub mod conditions;
pub mod elements;
pub mod error;
pub mod signal;
pub mod syntax;
pub mod time;
pub mod windows;

pub use error::{Error, Result};
pub use signal::{make_signal, Interval, IntervalSet, Signal, StepFunction};
pub use time::{tp, TimePoint};
pub use windows::{dilate, erode, erode_via_derivative, WindowSpec};

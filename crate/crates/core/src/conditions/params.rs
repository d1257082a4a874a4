use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::time::{IntoTimePoint, TimePoint};
use crate::windows::WindowSpec;

fn check_pair(name: &str, mem: &TimePoint, delay: &TimePoint) -> Result<()> {
    if mem.is_negative() || mem > delay {
        return Err(Error::InvalidParams(format!(
            "{name}: need 0 <= {mem} <= {delay}"
        )));
    }
    Ok(())
}

/// Bounded delay parameters: rising memory/upper bound `(m_r, d_r)` and
/// falling memory/upper bound `(m_f, d_f)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct BdcParams {
    m_r: TimePoint,
    d_r: TimePoint,
    m_f: TimePoint,
    d_f: TimePoint,
}

impl BdcParams {
    pub fn new(
        m_r: impl IntoTimePoint,
        d_r: impl IntoTimePoint,
        m_f: impl IntoTimePoint,
        d_f: impl IntoTimePoint,
    ) -> Result<Self> {
        let p = BdcParams {
            m_r: m_r.into_time_point(),
            d_r: d_r.into_time_point(),
            m_f: m_f.into_time_point(),
            d_f: d_f.into_time_point(),
        };
        check_pair("rising (m_r, d_r)", &p.m_r, &p.d_r)?;
        check_pair("falling (m_f, d_f)", &p.m_f, &p.d_f)?;
        Ok(p)
    }

    /// `(0, d, 0, d)`: the pure delay by `d`.
    pub fn fixed(d: impl IntoTimePoint) -> Result<Self> {
        let d = d.into_time_point();
        Self::new(TimePoint::zero(), d.clone(), TimePoint::zero(), d)
    }

    pub fn m_r(&self) -> &TimePoint {
        &self.m_r
    }
    pub fn d_r(&self) -> &TimePoint {
        &self.d_r
    }
    pub fn m_f(&self) -> &TimePoint {
        &self.m_f
    }
    pub fn d_f(&self) -> &TimePoint {
        &self.d_f
    }

    /// Window `[t-d_r, t-d_r+m_r]`.
    pub fn rise_window(&self) -> WindowSpec {
        WindowSpec::new(&self.d_r, &self.m_r).expect("validated at construction")
    }

    /// Window `[t-d_f, t-d_f+m_f]`.
    pub fn fall_window(&self) -> WindowSpec {
        WindowSpec::new(&self.d_f, &self.m_f).expect("validated at construction")
    }

    /// Memberwise sum; the parameters of a serial connection.
    pub fn plus(&self, other: &BdcParams) -> BdcParams {
        BdcParams {
            m_r: &self.m_r + &other.m_r,
            d_r: &self.d_r + &other.d_r,
            m_f: &self.m_f + &other.m_f,
            d_f: &self.d_f + &other.d_f,
        }
    }

    /// Delays increased by `d`, memories unchanged.
    pub fn shifted(&self, d: &TimePoint) -> Result<BdcParams> {
        BdcParams::new(
            self.m_r.clone(),
            &self.d_r + d,
            self.m_f.clone(),
            &self.d_f + d,
        )
    }

    /// Reinterpret as inertia parameters `(mu_r, delta_r, mu_f, delta_f)`.
    pub fn as_ridc(&self) -> RidcParams {
        RidcParams {
            mu_r: self.m_r.clone(),
            delta_r: self.d_r.clone(),
            mu_f: self.m_f.clone(),
            delta_f: self.d_f.clone(),
        }
    }
}

impl fmt::Display for BdcParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "bdc({},{},{},{})", self.m_r, self.d_r, self.m_f, self.d_f)
    }
}

/// Relative inertial delay parameters `(mu_r, delta_r, mu_f, delta_f)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct RidcParams {
    mu_r: TimePoint,
    delta_r: TimePoint,
    mu_f: TimePoint,
    delta_f: TimePoint,
}

impl RidcParams {
    pub fn new(
        mu_r: impl IntoTimePoint,
        delta_r: impl IntoTimePoint,
        mu_f: impl IntoTimePoint,
        delta_f: impl IntoTimePoint,
    ) -> Result<Self> {
        let p = RidcParams {
            mu_r: mu_r.into_time_point(),
            delta_r: delta_r.into_time_point(),
            mu_f: mu_f.into_time_point(),
            delta_f: delta_f.into_time_point(),
        };
        check_pair("rising (mu_r, delta_r)", &p.mu_r, &p.delta_r)?;
        check_pair("falling (mu_f, delta_f)", &p.mu_f, &p.delta_f)?;
        Ok(p)
    }

    pub fn mu_r(&self) -> &TimePoint {
        &self.mu_r
    }
    pub fn delta_r(&self) -> &TimePoint {
        &self.delta_r
    }
    pub fn mu_f(&self) -> &TimePoint {
        &self.mu_f
    }
    pub fn delta_f(&self) -> &TimePoint {
        &self.delta_f
    }

    pub fn rise_window(&self) -> WindowSpec {
        WindowSpec::new(&self.delta_r, &self.mu_r).expect("validated at construction")
    }

    pub fn fall_window(&self) -> WindowSpec {
        WindowSpec::new(&self.delta_f, &self.mu_f).expect("validated at construction")
    }

    pub fn as_bdc(&self) -> BdcParams {
        BdcParams {
            m_r: self.mu_r.clone(),
            d_r: self.delta_r.clone(),
            m_f: self.mu_f.clone(),
            d_f: self.delta_f.clone(),
        }
    }
}

impl fmt::Display for RidcParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ridc({},{},{},{})",
            self.mu_r, self.delta_r, self.mu_f, self.delta_f
        )
    }
}

/// Bounded relative inertial delay parameters.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct BridcParams {
    pub bdc: BdcParams,
    pub ridc: RidcParams,
}

impl BridcParams {
    pub fn new(bdc: BdcParams, ridc: RidcParams) -> Self {
        BridcParams { bdc, ridc }
    }

    /// Both parameter quadruples equal to `p`.
    pub fn duplicated(p: &BdcParams) -> Self {
        BridcParams {
            bdc: p.clone(),
            ridc: p.as_ridc(),
        }
    }
}

impl fmt::Display for BridcParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (b, r) = (&self.bdc, &self.ridc);
        write!(
            f,
            "bridc({},{},{},{};{},{},{},{})",
            b.m_r, b.d_r, b.m_f, b.d_f, r.mu_r, r.delta_r, r.mu_f, r.delta_f
        )
    }
}

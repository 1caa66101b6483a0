//! Triangular and trapezoidal membership functions.
//!
//! Breakpoints are allowed to sit outside the universe of the variable that
//! owns the function; evaluation never looks at the universe.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MfError {
    #[error("breakpoint {0} is not finite")]
    NonFinite(f64),
    #[error("breakpoints must be non-decreasing, got {0:?}")]
    Unordered(Vec<f64>),
    #[error("membership function has zero width, got {0:?}")]
    ZeroWidth(Vec<f64>),
}

/// A piecewise-linear membership function.
///
/// `Triangular([a, b, c])` rises on `[a, b]` and falls on `[b, c]`;
/// `Trapezoidal([a, b, c, d])` additionally holds 1 on the plateau `[b, c]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", content = "params", rename_all = "snake_case")]
pub enum MembershipFunction {
    Triangular([f64; 3]),
    Trapezoidal([f64; 4]),
}

impl MembershipFunction {
    pub fn triangular(a: f64, b: f64, c: f64) -> Result<Self, MfError> {
        let mf = MembershipFunction::Triangular([a, b, c]);
        mf.validate()?;
        Ok(mf)
    }

    pub fn trapezoidal(a: f64, b: f64, c: f64, d: f64) -> Result<Self, MfError> {
        let mf = MembershipFunction::Trapezoidal([a, b, c, d]);
        mf.validate()?;
        Ok(mf)
    }

    pub fn breakpoints(&self) -> &[f64] {
        match self {
            MembershipFunction::Triangular(p) => p,
            MembershipFunction::Trapezoidal(p) => p,
        }
    }

    /// Checks ordering (`a <= b <= ...`) and non-zero total width.
    pub fn validate(&self) -> Result<(), MfError> {
        let p = self.breakpoints();
        if let Some(&bad) = p.iter().find(|v| !v.is_finite()) {
            return Err(MfError::NonFinite(bad));
        }
        if p.windows(2).any(|w| w[0] > w[1]) {
            return Err(MfError::Unordered(p.to_vec()));
        }
        if p[0] >= p[p.len() - 1] {
            return Err(MfError::ZeroWidth(p.to_vec()));
        }
        Ok(())
    }

    /// Closed interval outside of which the degree is zero.
    pub fn support(&self) -> (f64, f64) {
        let p = self.breakpoints();
        (p[0], p[p.len() - 1])
    }

    /// Membership degree of `x`, in `[0, 1]`.
    ///
    /// A coincident pair of breakpoints is a vertical edge: the degree jumps
    /// to 1 on the plateau side of the shared point.
    ///
    /// Panics if `x` is NaN or infinite.
    pub fn eval(&self, x: f64) -> f64 {
        assert!(x.is_finite(), "membership evaluated at non-finite x = {x}");
        let degree = match *self {
            MembershipFunction::Triangular([a, b, c]) => rising(x, a, b).min(falling(x, b, c)),
            MembershipFunction::Trapezoidal([a, b, c, d]) => {
                rising(x, a, b).min(1.0).min(falling(x, c, d))
            }
        };
        degree.clamp(0.0, 1.0)
    }
}

fn rising(x: f64, a: f64, b: f64) -> f64 {
    if b > a {
        (x - a) / (b - a)
    } else if x >= b {
        1.0
    } else {
        0.0
    }
}

fn falling(x: f64, c: f64, d: f64) -> f64 {
    if d > c {
        (d - x) / (d - c)
    } else if x <= c {
        1.0
    } else {
        0.0
    }
}
